//! Parity projection, double-line elimination and essential double lines.

use serde::{Deserialize, Serialize};

use crate::diagram::{DlDiagram, Role, Sign, Token};
use crate::error::{Error, Result};
use crate::moves::{ChangeVariant, Move, MoveTrace};

/// Normalizes every crossing of a degree-0 diagram to winding parity 0.
///
/// A crossing of parity `i >= 0` gets `i` positive double lines right before
/// its under passage and `i` negative ones right after it. A crossing of
/// negative parity is first changed, which turns its parity into `-i-1`.
pub fn pr_wp(d: &DlDiagram) -> Result<DlDiagram> {
    let deg = d.degree();
    if deg != 0 {
        return Err(Error::NonzeroDegree(deg));
    }
    let mut cur = d.clone();
    for (c, parity) in d.parities() {
        let mut i = parity.value;
        if i < 0 {
            cur = Move::CrossingChange { crossing: c, variant: ChangeVariant::Under }.apply(&cur)?;
            i = -i - 1;
        }
        if i > 0 {
            let mut tokens = Vec::with_capacity(cur.len() + 2 * i as usize);
            for &t in cur.tokens() {
                if matches!(t, Token::Passage { id, role: Role::Under, .. } if id == c) {
                    tokens.extend(std::iter::repeat_n(Token::DoubleLine(Sign::Plus), i as usize));
                    tokens.push(t);
                    tokens.extend(std::iter::repeat_n(Token::DoubleLine(Sign::Minus), i as usize));
                } else {
                    tokens.push(t);
                }
            }
            cur = DlDiagram::from_tokens_unchecked(tokens);
        }
    }
    Ok(cur)
}

/// Deletes every double line.
pub fn proj(d: &DlDiagram) -> DlDiagram {
    d.proj()
}

/// A replayable proof that a diagram reduces to `result`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationCertificate {
    pub trace: MoveTrace,
    pub result: DlDiagram,
}

impl EliminationCertificate {
    /// Replays the trace and checks that it ends at `result`.
    pub fn verify(&self) -> Result<()> {
        let end = self.trace.replay()?;
        if end != self.result {
            return Err(Error::Internal(format!("trace ends at `{end}`, certificate claims `{}`", self.result)));
        }
        Ok(())
    }
}

/// Working state for double-line elimination. Double lines flagged in `keep`
/// are left alone; all others are removed.
struct Eliminator {
    diagram: DlDiagram,
    keep: Vec<bool>,
    steps: Vec<Move>,
}

impl Eliminator {
    fn new(diagram: DlDiagram, keep: Vec<bool>) -> Eliminator {
        Eliminator { diagram, keep, steps: Vec::new() }
    }

    fn n(&self) -> usize {
        self.diagram.len()
    }

    fn sign_at(&self, i: usize) -> Sign {
        match self.diagram.tokens()[i] {
            Token::DoubleLine(s) => s,
            Token::Passage { .. } => unreachable!("position {i} is a passage"),
        }
    }

    fn apply(&mut self, m: Move) -> Result<()> {
        let next = m.apply(&self.diagram)?;
        let n = self.n();
        self.keep = match m {
            Move::DlPairCancel5 { pos } => {
                let j = (pos + 1) % n;
                self.keep.iter().enumerate().filter(|(i, _)| *i != pos && *i != j).map(|(_, k)| *k).collect()
            }
            Move::DlPairAdd5 { gap, .. } => {
                let mut k = self.keep.clone();
                k.splice(gap..gap, [false, false]);
                k
            }
            Move::CrossingChange { crossing, .. } | Move::CrossingSliding { crossing, .. } => {
                // inserted tokens are never kept
                let mut k = Vec::with_capacity(next.len());
                let (mut i, mut j) = (0, 0);
                let old = self.diagram.tokens();
                let new = next.tokens();
                while j < new.len() {
                    if i < old.len() && same_slot(old[i], new[j], crossing) {
                        k.push(self.keep[i]);
                        i += 1;
                    } else {
                        k.push(false);
                    }
                    j += 1;
                }
                k
            }
            _ => return Err(Error::Internal(format!("eliminator does not track {m}"))),
        };
        self.diagram = next;
        self.steps.push(m);
        Ok(())
    }

    /// The diagram formed by the removable double lines only.
    fn residual(&self) -> DlDiagram {
        let tokens = self.diagram.tokens().iter().zip(&self.keep).filter(|(_, k)| !**k).map(|(t, _)| *t).collect();
        DlDiagram::from_tokens_unchecked(tokens)
    }

    /// Cyclic positions of the double lines right before passage `(id, role)`,
    /// in traversal order. Without passages this is every token.
    fn run_before(&self, at: Option<(u32, Role)>) -> Vec<usize> {
        let n = self.n();
        let Some((id, role)) = at else {
            return (0..n).collect();
        };
        let p = self.diagram.position(id, role).expect("passage exists");
        let mut run = Vec::new();
        let mut i = (p + n - 1) % n;
        while i != p && self.diagram.tokens()[i].is_double_line() {
            run.push(i);
            i = (i + n - 1) % n;
        }
        run.reverse();
        run
    }

    fn removable_sum(&self, run: &[usize]) -> i64 {
        run.iter().filter(|&&i| !self.keep[i]).map(|&i| self.sign_at(i).value()).sum()
    }

    /// Cancels every removable double line of the run before `at`; their sum
    /// must be 0. Kept double lines in between are stepped over with a
    /// cancel/re-add pair when their sign differs.
    fn clear_run(&mut self, at: Option<(u32, Role)>) -> Result<()> {
        loop {
            let run = self.run_before(at);
            if self.removable_sum(&run) != 0 {
                return Err(Error::Internal("run with nonzero removable sum".into()));
            }
            let free: Vec<usize> = run.iter().copied().filter(|&i| !self.keep[i]).collect();
            if free.is_empty() {
                return Ok(());
            }
            let (left, right) = free
                .windows(2)
                .map(|w| (w[0], w[1]))
                .find(|&(a, b)| self.sign_at(a) != self.sign_at(b))
                .ok_or_else(|| Error::Internal("no opposite pair in a zero-sum run".into()))?;
            let n = self.n();
            let before = (right + n - 1) % n;
            if before == left {
                self.apply(Move::DlPairCancel5 { pos: left })?;
                continue;
            }
            // a kept double line sits between the pair
            let s = self.sign_at(right);
            if self.sign_at(before) == s {
                self.keep.swap(before, right);
            } else {
                self.apply(Move::DlPairCancel5 { pos: before })?;
                let gap = if before + 1 < n { before } else { n - 2 };
                self.apply(Move::DlPairAdd5 { gap, first: s })?;
                self.keep[gap + 1] = true;
            }
        }
    }

    /// Removes all removable double lines. The removable part must have
    /// degree 0 and every crossing must have removable parity 0.
    ///
    /// Walks the knot once from the under passage of the first crossing. At
    /// the first visit of a crossing the sum carried on the incoming arc is
    /// pushed through it with crossing slidings; at the second visit the
    /// incoming arc already sums to zero.
    fn eliminate(&mut self) -> Result<()> {
        let order = traversal_from_first_under(&self.diagram);
        if order.is_empty() {
            return self.clear_run(None);
        }
        let mut visited = vec![order[0].0];
        for &(id, role) in &order[1..] {
            let run = self.run_before(Some((id, role)));
            let sum = self.removable_sum(&run);
            if !visited.contains(&id) {
                visited.push(id);
                if let Some(s) = Sign::of(sum) {
                    for _ in 0..sum.abs() {
                        self.apply(Move::CrossingSliding { crossing: id, direction: -s })?;
                    }
                }
            } else if sum != 0 {
                return Err(Error::Internal(format!("arc before crossing {id} carries {sum} on its second visit")));
            }
            self.clear_run(Some((id, role)))?;
        }
        self.clear_run(Some(order[0]))?;
        if self.residual().double_line_count() != 0 {
            return Err(Error::Internal("double lines left after elimination".into()));
        }
        Ok(())
    }
}

fn same_slot(old: Token, new: Token, crossing: u32) -> bool {
    match (old, new) {
        (Token::Passage { id: a, role: ra, .. }, Token::Passage { id: b, role: rb, .. }) => {
            a == b && (a == crossing || ra == rb)
        }
        (Token::DoubleLine(a), Token::DoubleLine(b)) => a == b,
        _ => false,
    }
}

/// Passages in traversal order, starting at the under passage of the crossing
/// that occurs first in the token word.
fn traversal_from_first_under(d: &DlDiagram) -> Vec<(u32, Role)> {
    let Some(&first) = d.crossings().first() else {
        return Vec::new();
    };
    let start = d.position(first, Role::Under).unwrap();
    let n = d.len();
    (0..n)
        .map(|k| d.tokens()[(start + k) % n])
        .filter_map(|t| match t {
            Token::Passage { id, role, .. } => Some((id, role)),
            Token::DoubleLine(_) => None,
        })
        .collect()
}

/// Removes all double lines from a degree-0 diagram whose crossings all have
/// winding parity 0 or -1, using crossing changes, crossing slidings and
/// double-line cancellations only.
pub fn remove_double_lines(d: &DlDiagram) -> Result<EliminationCertificate> {
    let deg = d.degree();
    if deg != 0 {
        return Err(Error::NonzeroDegree(deg));
    }
    let parities = d.parities();
    if let Some(&(crossing, p)) = parities.iter().find(|(_, p)| p.value != 0 && p.value != -1) {
        return Err(Error::ParityOutOfRange { crossing, parity: p.value });
    }
    let mut el = Eliminator::new(d.clone(), vec![false; d.len()]);
    for (c, p) in parities {
        if p.value == -1 {
            el.apply(Move::CrossingChange { crossing: c, variant: ChangeVariant::Under })?;
        }
    }
    el.eliminate()?;
    Ok(EliminationCertificate { trace: MoveTrace { start: d.clone(), steps: el.steps }, result: el.diagram })
}

/// A set of important double lines, by token position.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EssentialReport {
    pub subset: Vec<usize>,
    pub cardinality: usize,
    pub residual_parities: Vec<i64>,
    #[serde(rename = "essential")]
    pub is_essential: bool,
}

/// Parities after deleting `subset`, if the rest has degree 0 and every
/// parity is 0 or -1.
fn importance_check(d: &DlDiagram, subset: &[usize]) -> Option<Vec<i64>> {
    let rest = d.without_positions(subset);
    if rest.degree() != 0 {
        return None;
    }
    let ps: Vec<i64> = rest.parities().into_iter().map(|(_, p)| p.value).collect();
    ps.iter().all(|&v| v == 0 || v == -1).then_some(ps)
}

fn combinations(items: &[usize], k: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            go(items, k, i + 1, cur, f);
            cur.pop();
        }
    }
    go(items, k, 0, &mut Vec::with_capacity(k), f);
}

/// Enumerates important subsets by brute force, smallest first; within one
/// cardinality, in lexicographic order of positions.
pub fn important_subsets(d: &DlDiagram, limit: Option<usize>) -> Vec<EssentialReport> {
    let deg = d.degree();
    let plus: Vec<usize> = d.double_line_positions().into_iter().filter(|&i| d.tokens()[i].dl_value() > 0).collect();
    let minus: Vec<usize> = d.double_line_positions().into_iter().filter(|&i| d.tokens()[i].dl_value() < 0).collect();
    let limit = limit.unwrap_or(usize::MAX);
    let mut out: Vec<EssentialReport> = Vec::new();
    let mut minimum = None;
    for k in 0..=plus.len() + minus.len() {
        if out.len() >= limit {
            break;
        }
        // p - q = deg, p + q = k
        if (k as i64 + deg).rem_euclid(2) != 0 {
            continue;
        }
        let p = (k as i64 + deg) / 2;
        let q = k as i64 - p;
        if p < 0 || q < 0 || p as usize > plus.len() || q as usize > minus.len() {
            continue;
        }
        let mut found: Vec<(Vec<usize>, Vec<i64>)> = Vec::new();
        combinations(&plus, p as usize, &mut |ps| {
            combinations(&minus, q as usize, &mut |qs| {
                let mut s: Vec<usize> = ps.iter().chain(qs).copied().collect();
                s.sort_unstable();
                if let Some(res) = importance_check(d, &s) {
                    found.push((s, res));
                }
            })
        });
        found.sort();
        if !found.is_empty() && minimum.is_none() {
            minimum = Some(k);
        }
        for (subset, residual_parities) in found {
            if out.len() >= limit {
                break;
            }
            out.push(EssentialReport {
                cardinality: subset.len(),
                is_essential: Some(subset.len()) == minimum,
                subset,
                residual_parities,
            });
        }
    }
    out
}

/// Double lines between two consecutive passages. They lie on the same
/// halves, so only how many of each sign are chosen matters.
#[derive(Debug, Clone)]
struct Run {
    plus: Vec<usize>,
    minus: Vec<usize>,
    /// crossing indices whose half contains this run
    halves: Vec<usize>,
}

/// Integer program over runs: choose `p_r` positive and `q_r` negative double
/// lines per run, minimizing the total, so that the choice sums to the degree
/// and leaves every crossing with parity 0 or -1.
#[derive(Debug, Clone)]
struct RunModel {
    runs: Vec<Run>,
    raw: Vec<i64>,
    degree: i64,
}

#[derive(Debug, Clone, Copy)]
struct Bounds {
    plus: (usize, usize),
    minus: (usize, usize),
}

impl RunModel {
    fn build(d: &DlDiagram) -> RunModel {
        let n = d.len();
        let tokens = d.tokens();
        let crossings = d.crossings();
        let ends: Vec<(usize, usize)> = crossings
            .iter()
            .map(|&c| (d.position(c, Role::Under).unwrap(), d.position(c, Role::Over).unwrap()))
            .collect();
        let raw = crossings.iter().map(|&c| d.raw_parity(c).unwrap()).collect();
        let mut runs: Vec<Run> = Vec::new();
        let passages: Vec<usize> = (0..n).filter(|&i| !tokens[i].is_double_line()).collect();
        let mut push_run = |positions: Vec<usize>| {
            if positions.is_empty() {
                return;
            }
            let q = positions[0];
            let halves = ends
                .iter()
                .enumerate()
                .filter(|(_, &(u, o))| {
                    let off = (q + n - u) % n;
                    off >= 1 && off < (o + n - u) % n
                })
                .map(|(x, _)| x)
                .collect();
            let (plus, minus) = positions.into_iter().partition(|&i| tokens[i].dl_value() > 0);
            runs.push(Run { plus, minus, halves });
        };
        if passages.is_empty() {
            push_run((0..n).collect());
        } else {
            for (k, &p) in passages.iter().enumerate() {
                let end = passages[(k + 1) % passages.len()];
                let mut run = Vec::new();
                let mut i = (p + 1) % n;
                while i != end {
                    run.push(i);
                    i = (i + 1) % n;
                }
                push_run(run);
            }
        }
        RunModel { runs, raw, degree: d.degree() }
    }

    fn free_bounds(&self) -> Vec<Bounds> {
        self.runs.iter().map(|r| Bounds { plus: (0, r.plus.len()), minus: (0, r.minus.len()) }).collect()
    }

    /// Minimum cardinality under the given per-run count bounds, with one
    /// optimal choice of `(p_r, q_r)`.
    fn solve(&self, bounds: &[Bounds]) -> Option<(usize, Vec<(usize, usize)>)> {
        let r = self.runs.len();
        let c = self.raw.len();
        // Options per run: for each net contribution t, the cheapest (p, q).
        let options: Vec<Vec<(i64, usize, usize)>> = bounds
            .iter()
            .map(|b| {
                let (plo, phi) = b.plus;
                let (qlo, qhi) = b.minus;
                if plo > phi || qlo > qhi {
                    return Vec::new();
                }
                let mut opts = Vec::new();
                for t in plo as i64 - qhi as i64..=phi as i64 - qlo as i64 {
                    let p = (plo as i64).max(qlo as i64 + t);
                    let q = p - t;
                    if p <= phi as i64 && q >= qlo as i64 && q <= qhi as i64 {
                        opts.push((t, p as usize, q as usize));
                    }
                }
                opts.sort_by_key(|&(t, p, q)| (p + q, t.abs(), t));
                opts
            })
            .collect();
        if options.iter().any(Vec::is_empty) {
            return None;
        }
        // suffix ranges of contributions per crossing and for the total
        let mut lo = vec![vec![0i64; c + 1]; r + 1];
        let mut hi = vec![vec![0i64; c + 1]; r + 1];
        let mut min_cost = vec![0usize; r + 1];
        for k in (0..r).rev() {
            let tmin = options[k].iter().map(|o| o.0).min().unwrap();
            let tmax = options[k].iter().map(|o| o.0).max().unwrap();
            lo[k] = lo[k + 1].clone();
            hi[k] = hi[k + 1].clone();
            for &x in &self.runs[k].halves {
                lo[k][x] += tmin;
                hi[k][x] += tmax;
            }
            lo[k][c] += tmin;
            hi[k][c] += tmax;
            min_cost[k] = min_cost[k + 1] + options[k].iter().map(|o| o.1 + o.2).min().unwrap();
        }

        struct Search<'a> {
            model: &'a RunModel,
            options: &'a [Vec<(i64, usize, usize)>],
            lo: &'a [Vec<i64>],
            hi: &'a [Vec<i64>],
            min_cost: &'a [usize],
            sums: Vec<i64>,
            total: i64,
            picks: Vec<(usize, usize)>,
            best: Option<(usize, Vec<(usize, usize)>)>,
        }

        impl Search<'_> {
            fn feasible(&self, k: usize) -> bool {
                let need = self.model.degree - self.total;
                let c = self.model.raw.len();
                if need < self.lo[k][c] || need > self.hi[k][c] {
                    return false;
                }
                (0..c).all(|x| {
                    // residual = raw - sums - rest, must reach [-1, 0]
                    let base = self.model.raw[x] - self.sums[x];
                    base - self.hi[k][x] <= 0 && base - self.lo[k][x] >= -1
                })
            }

            fn go(&mut self, k: usize, cost: usize) {
                let bound = self.best.as_ref().map_or(usize::MAX, |b| b.0);
                let need = (self.model.degree - self.total).unsigned_abs() as usize;
                if cost + self.min_cost[k].max(need) >= bound || !self.feasible(k) {
                    return;
                }
                if k == self.options.len() {
                    self.best = Some((cost, self.picks.clone()));
                    return;
                }
                for oi in 0..self.options[k].len() {
                    let (t, p, q) = self.options[k][oi];
                    for &x in &self.model.runs[k].halves {
                        self.sums[x] += t;
                    }
                    self.total += t;
                    self.picks.push((p, q));
                    self.go(k + 1, cost + p + q);
                    self.picks.pop();
                    self.total -= t;
                    for &x in &self.model.runs[k].halves {
                        self.sums[x] -= t;
                    }
                }
            }
        }

        let mut s = Search {
            model: self,
            options: &options,
            lo: &lo,
            hi: &hi,
            min_cost: &min_cost,
            sums: vec![0; c],
            total: 0,
            picks: Vec::with_capacity(r),
            best: None,
        };
        s.go(0, 0);
        s.best
    }
}

/// Number of essential double lines: the minimum size of an important set.
pub fn essential_count(d: &DlDiagram) -> usize {
    let model = RunModel::build(d);
    model.solve(&model.free_bounds()).expect("the full double-line set is important").0
}

/// The lexicographically first essential set (positions ascending).
pub fn essential_subset(d: &DlDiagram) -> EssentialReport {
    let model = RunModel::build(d);
    let mut bounds = model.free_bounds();
    let target = model.solve(&bounds).expect("the full double-line set is important").0;
    let mut where_is = vec![None; d.len()];
    for (r, run) in model.runs.iter().enumerate() {
        for &i in &run.plus {
            where_is[i] = Some((r, true));
        }
        for &i in &run.minus {
            where_is[i] = Some((r, false));
        }
    }
    let mut subset = Vec::new();
    for i in d.double_line_positions() {
        let (r, plus) = where_is[i].unwrap();
        let mut trial = bounds.clone();
        fn side(b: &mut Bounds, plus: bool) -> &mut (usize, usize) {
            if plus {
                &mut b.plus
            } else {
                &mut b.minus
            }
        }
        side(&mut trial[r], plus).0 += 1;
        if model.solve(&trial).is_some_and(|(c, _)| c == target) {
            subset.push(i);
            bounds = trial;
        } else {
            side(&mut bounds[r], plus).1 -= 1;
        }
    }
    let residual_parities = importance_check(d, &subset).expect("solver returned an important set");
    EssentialReport { cardinality: subset.len(), subset, residual_parities, is_essential: true }
}

/// Deforms `d` into an essential diagram: only an essential set of double
/// lines survives, plus a `+1`/`-1` pair around the under passage of every
/// crossing whose residual parity is -1. The base diagram is unchanged.
pub fn essential_diagram(d: &DlDiagram) -> Result<(DlDiagram, MoveTrace)> {
    let report = essential_subset(d);
    let keep: Vec<bool> = (0..d.len()).map(|i| report.subset.contains(&i)).collect();
    let mut el = Eliminator::new(d.clone(), keep);
    let changed: Vec<u32> =
        el.residual().parities().into_iter().filter(|(_, p)| p.value == -1).map(|(c, _)| c).collect();
    for &c in &changed {
        el.apply(Move::CrossingChange { crossing: c, variant: ChangeVariant::Under })?;
    }
    el.eliminate()?;
    for &c in &changed {
        el.apply(Move::CrossingChange { crossing: c, variant: ChangeVariant::Under })?;
    }
    Ok((el.diagram, MoveTrace { start: d.clone(), steps: el.steps }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moves::MoveKind;

    fn p(s: &str) -> DlDiagram {
        DlDiagram::parse(s).unwrap()
    }

    fn block(k: i64) -> String {
        let t = if k >= 0 { "D+" } else { "D-" };
        vec![t; k.unsigned_abs() as usize].join(" ")
    }

    fn oc(m: i64, n: i64) -> DlDiagram {
        p(&format!("U1+ {} O1+ {}", block(m), block(n)))
    }

    #[test]
    fn pr_wp_examples() {
        let d = p("U1+ D+ D- O1+");
        assert_eq!(pr_wp(&d).unwrap(), d);
        assert!(pr_wp(&DlDiagram::trivial()).unwrap().is_empty());
        let out = pr_wp(&p("U1+ D- O1+ D+")).unwrap();
        assert_eq!(out.crossing_sign(1), Some(Sign::Minus));
        assert!(out.parities().iter().all(|(_, w)| w.value == 0));
        assert!(matches!(pr_wp(&p("D+")), Err(Error::NonzeroDegree(1))));
        let out = pr_wp(&p("U1+ D+ D+ O1+ D- D-")).unwrap();
        assert_eq!(out.serialize(), "D+ D+ U1+ D- D- D+ D+ O1+ D- D-");
    }

    #[test]
    fn proj_examples() {
        assert!(proj(&p("D+ D-")).is_empty());
        assert_eq!(proj(&oc(2, 1)), p("U1+ O1+"));
        let v = p("U1+ O2- U2- O1+");
        assert_eq!(proj(&pr_wp(&v).unwrap()), v);
    }

    #[test]
    fn remove_without_double_lines() {
        let d = p("U1+ O2- U2- O1+");
        let cert = remove_double_lines(&d).unwrap();
        assert!(cert.trace.steps.is_empty());
        assert_eq!(cert.result, d);
    }

    #[test]
    fn remove_parity_minus_one() {
        let cert = remove_double_lines(&p("U1+ D- O1+ D+")).unwrap();
        cert.verify().unwrap();
        assert_eq!(cert.result.crossing_count(), 1);
        assert_eq!(cert.result.double_line_count(), 0);
        assert!(cert.trace.steps.iter().all(|m| matches!(
            m.kind(),
            MoveKind::CrossingChange | MoveKind::CrossingSliding | MoveKind::DlPairCancel5
        )));
    }

    #[test]
    fn remove_needs_sliding() {
        // two crossings whose halves carry opposite sums
        let d = p("U1+ D+ U2- D- O1+ D+ O2- D-");
        assert_eq!(d.raw_parity(1).unwrap(), 0);
        let cert = remove_double_lines(&d).unwrap();
        cert.verify().unwrap();
        assert_eq!(cert.result, d.proj());
    }

    #[test]
    fn remove_preconditions() {
        assert!(matches!(remove_double_lines(&p("D+")), Err(Error::NonzeroDegree(1))));
        assert!(matches!(remove_double_lines(&oc(2, -2)), Err(Error::ParityOutOfRange { crossing: 1, parity: 2 })));
    }

    #[test]
    fn important_examples() {
        let d = oc(-3, 3);
        let all = important_subsets(&d, None);
        assert!(all.iter().any(|r| r.subset == d.double_line_positions()));
        assert_eq!(all[0].cardinality, 4);
        assert!(all[0].is_essential);
        let zero = important_subsets(&p("U1+ O1+ D+ D-"), Some(1));
        assert_eq!(zero.len(), 1);
        assert!(zero[0].subset.is_empty() && zero[0].is_essential);
    }

    #[test]
    fn essential_counts() {
        assert_eq!(essential_count(&oc(2, 3)), 5);
        assert_eq!(essential_count(&oc(-3, -1)), 4);
        assert_eq!(essential_count(&oc(-3, 3)), 4);
        assert_eq!(essential_count(&DlDiagram::trivial()), 0);
        assert_eq!(essential_count(&p("D+ D+ D-")), 1);
    }

    #[test]
    fn lexicographic_subset() {
        let d = oc(-3, 3);
        let r = essential_subset(&d);
        assert_eq!(r.subset, vec![1, 2, 5, 6]);
        assert_eq!(r.residual_parities, vec![-1]);
        let first = important_subsets(&d, Some(1));
        assert_eq!(first[0].subset, r.subset);
    }

    #[test]
    fn essential_diagram_examples() {
        let v = p("U1+ O2- U2- O1+");
        let (e, t) = essential_diagram(&v).unwrap();
        assert_eq!(e, v);
        assert!(t.steps.is_empty());
        for (m, n) in [(2, 1), (0, -2), (-3, 3), (-2, -1)] {
            let d = oc(m, n);
            let (e, t) = essential_diagram(&d).unwrap();
            assert!(e.canonically_eq(&d), "({m},{n}) -> {e}");
            assert_eq!(t.replay().unwrap(), e);
        }
        let (e, t) = essential_diagram(&p("U1+ D- O1+ D+")).unwrap();
        assert_eq!(t.replay().unwrap(), e);
        assert_eq!(essential_count(&e), 0);
        assert_eq!(e.proj(), p("U1+ O1+"));
    }
}
