//! The move calculus on token sequences.
//!
//! Positions are indices into the current token vector and pairs are read
//! cyclically: the pair at `pos` is `(pos, pos + 1 mod len)`. A gap `g` in
//! `0..=len` means "insert before token `g`".

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::diagram::{DlDiagram, Role, Sign, Token};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MoveKind {
    R1Add,
    R1Remove,
    R2Add,
    R2Remove,
    R3,
    DlSlide4,
    DlPairAdd5,
    DlPairCancel5,
    CrossingChange,
    CrossingSliding,
}

impl MoveKind {
    pub const ALL: [MoveKind; 10] = [
        MoveKind::R1Add,
        MoveKind::R1Remove,
        MoveKind::R2Add,
        MoveKind::R2Remove,
        MoveKind::R3,
        MoveKind::DlSlide4,
        MoveKind::DlPairAdd5,
        MoveKind::DlPairCancel5,
        MoveKind::CrossingChange,
        MoveKind::CrossingSliding,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MoveKind::R1Add => "R1Add",
            MoveKind::R1Remove => "R1Remove",
            MoveKind::R2Add => "R2Add",
            MoveKind::R2Remove => "R2Remove",
            MoveKind::R3 => "R3",
            MoveKind::DlSlide4 => "DlSlide4",
            MoveKind::DlPairAdd5 => "DlPairAdd5",
            MoveKind::DlPairCancel5 => "DlPairCancel5",
            MoveKind::CrossingChange => "CrossingChange",
            MoveKind::CrossingSliding => "CrossingSliding",
        }
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MoveKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<MoveKind> {
        MoveKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown move kind `{s}`")))
    }
}

/// Relative direction of the two strands of a second Reidemeister move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Parallel,
    Antiparallel,
}

/// Where a crossing change puts its two double lines.
///
/// `Under`: `+1` before and `-1` after the new under passage.
/// `Over`: `-1` before and `+1` after the new over passage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChangeVariant {
    Under,
    Over,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Move {
    R1Add {
        gap: usize,
        first: Role,
        sign: Sign,
    },
    R1Remove {
        pos: usize,
    },
    R2Add {
        over_gap: usize,
        under_gap: usize,
        orientation: Orientation,
        sign: Sign,
        /// Only meaningful when both blocks go into the same gap.
        over_first: bool,
    },
    R2Remove {
        over_pos: usize,
        under_pos: usize,
    },
    R3 {
        top: usize,
        middle: usize,
        bottom: usize,
    },
    DlSlide4 {
        pos: usize,
    },
    DlPairAdd5 {
        gap: usize,
        first: Sign,
    },
    DlPairCancel5 {
        pos: usize,
    },
    CrossingChange {
        crossing: u32,
        variant: ChangeVariant,
    },
    CrossingSliding {
        crossing: u32,
        direction: Sign,
    },
}

fn mismatch(kind: MoveKind, reason: impl Into<String>) -> Error {
    Error::PatternMismatch { kind: kind.name(), reason: reason.into() }
}

fn next(n: usize, i: usize) -> usize {
    (i + 1) % n
}

fn pair_at(tokens: &[Token], pos: usize, kind: MoveKind) -> Result<(usize, usize)> {
    let n = tokens.len();
    if n < 2 || pos >= n {
        return Err(mismatch(kind, format!("no token pair at position {pos}")));
    }
    Ok((pos, next(n, pos)))
}

fn check_gap(tokens: &[Token], gap: usize, kind: MoveKind) -> Result<()> {
    if gap > tokens.len() {
        return Err(mismatch(kind, format!("gap {gap} out of range")));
    }
    Ok(())
}

fn remove_positions(tokens: &[Token], positions: &[usize]) -> Vec<Token> {
    tokens.iter().enumerate().filter(|(i, _)| !positions.contains(i)).map(|(_, t)| *t).collect()
}

/// Swaps over/under at crossing `id` and flips its sign.
fn change_crossing(tokens: &mut [Token], id: u32) {
    for t in tokens.iter_mut() {
        if let Token::Passage { id: i, role, sign } = *t {
            if i == id {
                *t = Token::passage(i, role.flip(), -sign);
            }
        }
    }
}

fn passage(t: Token) -> Option<(u32, Role, Sign)> {
    match t {
        Token::Passage { id, role, sign } => Some((id, role, sign)),
        Token::DoubleLine(_) => None,
    }
}

fn ensure_crossing(d: &DlDiagram, id: u32) -> Result<()> {
    d.position(id, Role::Under).map(|_| ()).ok_or(Error::UnknownCrossing(id))
}

/// Classifies the site of a third Reidemeister move.
///
/// Returns the crossings `(a, b, c)`: `a` between top and middle strand,
/// `b` between top and bottom, `c` between middle and bottom.
fn r3_triangle(tokens: &[Token], top: usize, middle: usize, bottom: usize) -> Result<(u32, u32, u32)> {
    let k = MoveKind::R3;
    let n = tokens.len();
    let (t0, t1) = pair_at(tokens, top, k)?;
    let (m0, m1) = pair_at(tokens, middle, k)?;
    let (b0, b1) = pair_at(tokens, bottom, k)?;
    let mut all = [t0, t1, m0, m1, b0, b1];
    all.sort_unstable();
    if all.windows(2).any(|w| w[0] == w[1]) || n < 6 {
        return Err(mismatch(k, "the three strand pairs overlap"));
    }
    let get = |i: usize| passage(tokens[i]).ok_or_else(|| mismatch(k, "double line on a triangle arc"));
    let (tx, trx, _) = get(t0)?;
    let (ty, try_, _) = get(t1)?;
    let (mx, mrx, _) = get(m0)?;
    let (my, mry, _) = get(m1)?;
    let (bx, brx, _) = get(b0)?;
    let (by, bry, _) = get(b1)?;
    if trx != Role::Over || try_ != Role::Over {
        return Err(mismatch(k, "top strand must pass over both crossings"));
    }
    if brx != Role::Under || bry != Role::Under {
        return Err(mismatch(k, "bottom strand must pass under both crossings"));
    }
    // middle: under at a, over at c
    let (a, c, a_first_on_middle) = match (mrx, mry) {
        (Role::Under, Role::Over) => (mx, my, true),
        (Role::Over, Role::Under) => (my, mx, false),
        _ => return Err(mismatch(k, "middle strand must pass under one and over one crossing")),
    };
    let (b, a_first_on_top) = if tx == a {
        (ty, true)
    } else if ty == a {
        (tx, false)
    } else {
        return Err(mismatch(k, "top and middle strands do not share a crossing"));
    };
    let b_first_on_bottom = if (bx, by) == (b, c) {
        true
    } else if (bx, by) == (c, b) {
        false
    } else {
        return Err(mismatch(k, "bottom strand does not meet the other two strands"));
    };
    if a == c || b == c {
        return Err(mismatch(k, "degenerate triangle"));
    }
    let sign = |id: u32| {
        tokens
            .iter()
            .find_map(|t| match *t {
                Token::Passage { id: i, sign, .. } if i == id => Some(sign.value()),
                _ => None,
            })
            .unwrap()
    };
    let (sa, sb, sc) = (sign(a), sign(b), sign(c));
    // Three straight oriented strands: which side of the top/middle crossing
    // the bottom strand passes fixes all three orders at once.
    let side_top = if a_first_on_top { -sb } else { sb };
    let side_middle = if a_first_on_middle { -sc } else { sc };
    let side_bottom = if b_first_on_bottom { -sa * sb * sc } else { sa * sb * sc };
    if side_top != side_middle || side_top != side_bottom {
        return Err(mismatch(k, "orders and signs do not form a triangle"));
    }
    Ok((a, b, c))
}

impl Move {
    pub fn kind(&self) -> MoveKind {
        match self {
            Move::R1Add { .. } => MoveKind::R1Add,
            Move::R1Remove { .. } => MoveKind::R1Remove,
            Move::R2Add { .. } => MoveKind::R2Add,
            Move::R2Remove { .. } => MoveKind::R2Remove,
            Move::R3 { .. } => MoveKind::R3,
            Move::DlSlide4 { .. } => MoveKind::DlSlide4,
            Move::DlPairAdd5 { .. } => MoveKind::DlPairAdd5,
            Move::DlPairCancel5 { .. } => MoveKind::DlPairCancel5,
            Move::CrossingChange { .. } => MoveKind::CrossingChange,
            Move::CrossingSliding { .. } => MoveKind::CrossingSliding,
        }
    }

    /// For an R3 site, the crossings `(top/middle, top/bottom, middle/bottom)`.
    pub fn r3_crossings(&self, d: &DlDiagram) -> Option<(u32, u32, u32)> {
        match *self {
            Move::R3 { top, middle, bottom } => r3_triangle(d.tokens(), top, middle, bottom).ok(),
            _ => None,
        }
    }

    pub fn apply(&self, d: &DlDiagram) -> Result<DlDiagram> {
        let tokens = d.tokens();
        let n = tokens.len();
        let kind = self.kind();
        let out = match *self {
            Move::R1Add { gap, first, sign } => {
                check_gap(tokens, gap, kind)?;
                let id = d.max_crossing_id() + 1;
                let mut v = tokens.to_vec();
                v.insert(gap, Token::passage(id, first.flip(), sign));
                v.insert(gap, Token::passage(id, first, sign));
                v
            }
            Move::R1Remove { pos } => {
                let (i, j) = pair_at(tokens, pos, kind)?;
                match (tokens[i].crossing(), tokens[j].crossing()) {
                    (Some(x), Some(y)) if x == y => remove_positions(tokens, &[i, j]),
                    _ => return Err(mismatch(kind, "not two adjacent passages of one crossing")),
                }
            }
            Move::R2Add { over_gap, under_gap, orientation, sign, over_first } => {
                check_gap(tokens, over_gap, kind)?;
                check_gap(tokens, under_gap, kind)?;
                let i = d.max_crossing_id() + 1;
                let j = i + 1;
                let over = [Token::passage(i, Role::Over, sign), Token::passage(j, Role::Over, -sign)];
                let (ui, uj) = (Token::passage(i, Role::Under, sign), Token::passage(j, Role::Under, -sign));
                let under = match orientation {
                    Orientation::Parallel => [ui, uj],
                    Orientation::Antiparallel => [uj, ui],
                };
                let mut v = Vec::with_capacity(n + 4);
                #[allow(clippy::needless_range_loop)]
                for g in 0..=n {
                    let here_o = over_gap == g;
                    let here_u = under_gap == g;
                    if here_o && here_u && !over_first {
                        v.extend(under);
                        v.extend(over);
                    } else {
                        if here_o {
                            v.extend(over);
                        }
                        if here_u {
                            v.extend(under);
                        }
                    }
                    if g < n {
                        v.push(tokens[g]);
                    }
                }
                v
            }
            Move::R2Remove { over_pos, under_pos } => {
                let (o0, o1) = pair_at(tokens, over_pos, kind)?;
                let (u0, u1) = pair_at(tokens, under_pos, kind)?;
                let po = (passage(tokens[o0]), passage(tokens[o1]));
                let pu = (passage(tokens[u0]), passage(tokens[u1]));
                let ok = match (po, pu) {
                    (
                        (Some((i, Role::Over, si)), Some((j, Role::Over, sj))),
                        (Some((x, Role::Under, _)), Some((y, Role::Under, _))),
                    ) => i != j && si != sj && ((x, y) == (i, j) || (x, y) == (j, i)),
                    _ => false,
                };
                if !ok {
                    return Err(mismatch(kind, "no bigon between the two pairs"));
                }
                remove_positions(tokens, &[o0, o1, u0, u1])
            }
            Move::R3 { top, middle, bottom } => {
                r3_triangle(tokens, top, middle, bottom)?;
                let mut v = tokens.to_vec();
                for p in [top, middle, bottom] {
                    v.swap(p, next(n, p));
                }
                v
            }
            Move::DlSlide4 { pos } => {
                let (i, j) = pair_at(tokens, pos, kind)?;
                let (dl, id, role, dl_first) = match (tokens[i], tokens[j]) {
                    (Token::DoubleLine(s), Token::Passage { id, role, .. }) => (s, id, role, true),
                    (Token::Passage { id, role, .. }, Token::DoubleLine(s)) => (s, id, role, false),
                    _ => return Err(mismatch(kind, "needs one double line next to one passage")),
                };
                // A double line crosses the passage only together with the
                // crossing change it induces; the other four patterns would
                // need the opposite change and are not moves.
                let allowed = matches!(
                    (dl, role, dl_first),
                    (Sign::Plus, Role::Under, true)
                        | (Sign::Plus, Role::Over, false)
                        | (Sign::Minus, Role::Under, false)
                        | (Sign::Minus, Role::Over, true)
                );
                if !allowed {
                    return Err(mismatch(kind, "double line sign does not match the passage side"));
                }
                let mut v = tokens.to_vec();
                v.swap(i, j);
                change_crossing(&mut v, id);
                v
            }
            Move::DlPairAdd5 { gap, first } => {
                check_gap(tokens, gap, kind)?;
                let mut v = tokens.to_vec();
                v.insert(gap, Token::DoubleLine(-first));
                v.insert(gap, Token::DoubleLine(first));
                v
            }
            Move::DlPairCancel5 { pos } => {
                let (i, j) = pair_at(tokens, pos, kind)?;
                match (tokens[i], tokens[j]) {
                    (Token::DoubleLine(a), Token::DoubleLine(b)) if a != b => remove_positions(tokens, &[i, j]),
                    _ => return Err(mismatch(kind, "not two adjacent opposite double lines")),
                }
            }
            Move::CrossingChange { crossing, variant } => {
                ensure_crossing(d, crossing)?;
                let mut v = Vec::with_capacity(n + 2);
                for &t in tokens {
                    match passage(t) {
                        Some((id, role, sign)) if id == crossing => {
                            let changed = Token::passage(id, role.flip(), -sign);
                            match (variant, role.flip()) {
                                (ChangeVariant::Under, Role::Under) => {
                                    v.extend([Token::DoubleLine(Sign::Plus), changed, Token::DoubleLine(Sign::Minus)])
                                }
                                (ChangeVariant::Over, Role::Over) => {
                                    v.extend([Token::DoubleLine(Sign::Minus), changed, Token::DoubleLine(Sign::Plus)])
                                }
                                _ => v.push(changed),
                            }
                        }
                        _ => v.push(t),
                    }
                }
                v
            }
            Move::CrossingSliding { crossing, direction } => {
                ensure_crossing(d, crossing)?;
                let mut v = Vec::with_capacity(n + 4);
                for &t in tokens {
                    if t.crossing() == Some(crossing) {
                        v.extend([Token::DoubleLine(direction), t, Token::DoubleLine(-direction)]);
                    } else {
                        v.push(t);
                    }
                }
                v
            }
        };
        Ok(DlDiagram::from_tokens_unchecked(out))
    }

    /// Moves that undo `self` when applied in order to `self.apply(context)`.
    /// The restored diagram equals `context` up to rotation.
    pub fn invert(&self, context: &DlDiagram) -> Result<Vec<Move>> {
        let after = self.apply(context)?;
        let tokens = context.tokens();
        let n = tokens.len();
        let inv = match *self {
            Move::R1Add { gap, .. } => vec![Move::R1Remove { pos: gap }],
            Move::R1Remove { pos } => {
                let (first, sign) = match tokens[pos] {
                    Token::Passage { role, sign, .. } => (role, sign),
                    Token::DoubleLine(_) => unreachable!(),
                };
                let gap = if pos + 1 < n { pos } else { n - 2 };
                vec![Move::R1Add { gap, first, sign }]
            }
            Move::R2Add { .. } => {
                let i = context.max_crossing_id() + 1;
                let over_pos = after.position(i, Role::Over).unwrap();
                let ui = after.position(i, Role::Under).unwrap();
                let uj = after.position(i + 1, Role::Under).unwrap();
                let under_pos = if next(after.len(), ui) == uj { ui } else { uj };
                vec![Move::R2Remove { over_pos, under_pos }]
            }
            Move::R2Remove { over_pos, under_pos } => {
                let removed = [over_pos, next(n, over_pos), under_pos, next(n, under_pos)];
                let gap_of = |first: usize| {
                    if first + 1 < n {
                        (0..first).filter(|k| !removed.contains(k)).count()
                    } else {
                        n - 4
                    }
                };
                let (i, sign) = match tokens[over_pos] {
                    Token::Passage { id, sign, .. } => (id, sign),
                    Token::DoubleLine(_) => unreachable!(),
                };
                let orientation = if tokens[under_pos].crossing() == Some(i) {
                    Orientation::Parallel
                } else {
                    Orientation::Antiparallel
                };
                let over_first = (over_pos + 2) % n == under_pos;
                vec![Move::R2Add {
                    over_gap: gap_of(over_pos),
                    under_gap: gap_of(under_pos),
                    orientation,
                    sign,
                    over_first,
                }]
            }
            Move::R3 { .. } | Move::DlSlide4 { .. } => vec![*self],
            Move::DlPairAdd5 { gap, .. } => vec![Move::DlPairCancel5 { pos: gap }],
            Move::DlPairCancel5 { pos } => {
                let first = match tokens[pos] {
                    Token::DoubleLine(s) => s,
                    Token::Passage { .. } => unreachable!(),
                };
                let gap = if pos + 1 < n { pos } else { n - 2 };
                vec![Move::DlPairAdd5 { gap, first }]
            }
            Move::CrossingChange { crossing, variant } => {
                let undo = match variant {
                    ChangeVariant::Under => ChangeVariant::Over,
                    ChangeVariant::Over => ChangeVariant::Under,
                };
                let first = Move::CrossingChange { crossing, variant: undo };
                let mut steps = vec![first];
                let mid = first.apply(&after)?;
                let role = match undo {
                    ChangeVariant::Under => Role::Under,
                    ChangeVariant::Over => Role::Over,
                };
                steps.extend(cancel_around(&mid, crossing, &[role])?);
                steps
            }
            Move::CrossingSliding { crossing, direction } => {
                let first = Move::CrossingSliding { crossing, direction: -direction };
                let mid = first.apply(&after)?;
                let mut steps = vec![first];
                steps.extend(cancel_around(&mid, crossing, &[Role::Under, Role::Over])?);
                steps
            }
        };
        Ok(inv)
    }
}

/// Cancels the opposite pairs that sit immediately before and immediately
/// after the given passages of `crossing`.
fn cancel_around(d: &DlDiagram, crossing: u32, roles: &[Role]) -> Result<Vec<Move>> {
    let mut cur = d.clone();
    let mut steps = Vec::new();
    for &role in roles {
        for before in [true, false] {
            let p = cur.position(crossing, role).ok_or(Error::UnknownCrossing(crossing))?;
            let n = cur.len();
            let pos = if before { (p + n - 2) % n } else { (p + 1) % n };
            let m = Move::DlPairCancel5 { pos };
            cur = m.apply(&cur)?;
            steps.push(m);
        }
    }
    Ok(steps)
}

fn gaps(n: usize) -> std::ops::Range<usize> {
    0..n.max(1)
}

/// All applicable instances of the requested kinds, in a fixed order.
pub fn enumerate_moves(d: &DlDiagram, kinds: &[MoveKind]) -> Vec<Move> {
    let tokens = d.tokens();
    let n = tokens.len();
    let mut out = Vec::new();
    let signs = [Sign::Plus, Sign::Minus];
    let want = |k: MoveKind| kinds.contains(&k);
    let pair_positions = || if n >= 2 { 0..n } else { 0..0 };

    if want(MoveKind::R1Add) {
        for gap in gaps(n) {
            for first in [Role::Under, Role::Over] {
                for sign in signs {
                    out.push(Move::R1Add { gap, first, sign });
                }
            }
        }
    }
    if want(MoveKind::R1Remove) {
        let mut seen = Vec::new();
        for pos in pair_positions() {
            let m = Move::R1Remove { pos };
            let id = tokens[pos].crossing();
            if !seen.contains(&id) && m.apply(d).is_ok() {
                seen.push(id);
                out.push(m);
            }
        }
    }
    if want(MoveKind::R2Add) {
        for over_gap in gaps(n) {
            for under_gap in gaps(n) {
                for orientation in [Orientation::Parallel, Orientation::Antiparallel] {
                    for sign in signs {
                        let orders: &[bool] = if over_gap == under_gap { &[true, false] } else { &[true] };
                        for &over_first in orders {
                            out.push(Move::R2Add { over_gap, under_gap, orientation, sign, over_first });
                        }
                    }
                }
            }
        }
    }
    if want(MoveKind::R2Remove) {
        let mut seen = Vec::new();
        for over_pos in pair_positions() {
            for under_pos in pair_positions() {
                let m = Move::R2Remove { over_pos, under_pos };
                if m.apply(d).is_ok() {
                    let mut key = [tokens[over_pos].crossing(), tokens[(over_pos + 1) % n].crossing()];
                    key.sort();
                    if !seen.contains(&key) {
                        seen.push(key);
                        out.push(m);
                    }
                }
            }
        }
    }
    if want(MoveKind::R3) && n >= 6 {
        let pairs: Vec<usize> =
            (0..n).filter(|&p| !tokens[p].is_double_line() && !tokens[(p + 1) % n].is_double_line()).collect();
        for &top in &pairs {
            for &middle in &pairs {
                for &bottom in &pairs {
                    if r3_triangle(tokens, top, middle, bottom).is_ok() {
                        out.push(Move::R3 { top, middle, bottom });
                    }
                }
            }
        }
    }
    if want(MoveKind::DlSlide4) {
        for pos in pair_positions() {
            let m = Move::DlSlide4 { pos };
            if m.apply(d).is_ok() {
                out.push(m);
            }
        }
    }
    if want(MoveKind::DlPairAdd5) {
        for gap in gaps(n) {
            for first in signs {
                out.push(Move::DlPairAdd5 { gap, first });
            }
        }
    }
    if want(MoveKind::DlPairCancel5) {
        for pos in pair_positions() {
            let m = Move::DlPairCancel5 { pos };
            if m.apply(d).is_ok() {
                out.push(m);
            }
        }
    }
    let crossings = d.crossings();
    if want(MoveKind::CrossingChange) {
        for &crossing in &crossings {
            for variant in [ChangeVariant::Under, ChangeVariant::Over] {
                out.push(Move::CrossingChange { crossing, variant });
            }
        }
    }
    if want(MoveKind::CrossingSliding) {
        for &crossing in &crossings {
            for direction in signs {
                out.push(Move::CrossingSliding { crossing, direction });
            }
        }
    }
    out
}

fn role_name(r: Role) -> &'static str {
    match r {
        Role::Under => "U",
        Role::Over => "O",
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.kind();
        match *self {
            Move::R1Add { gap, first, sign } => write!(f, "{k} {gap} {} {sign}", role_name(first)),
            Move::R1Remove { pos } | Move::DlSlide4 { pos } | Move::DlPairCancel5 { pos } => {
                write!(f, "{k} {pos}")
            }
            Move::R2Add { over_gap, under_gap, orientation, sign, over_first } => {
                let o = match orientation {
                    Orientation::Parallel => "parallel",
                    Orientation::Antiparallel => "antiparallel",
                };
                let first = if over_first { "over-first" } else { "under-first" };
                write!(f, "{k} {over_gap} {under_gap} {o} {sign} {first}")
            }
            Move::R2Remove { over_pos, under_pos } => write!(f, "{k} {over_pos} {under_pos}"),
            Move::R3 { top, middle, bottom } => write!(f, "{k} {top} {middle} {bottom}"),
            Move::DlPairAdd5 { gap, first } => write!(f, "{k} {gap} {first}"),
            Move::CrossingChange { crossing, variant } => {
                let v = match variant {
                    ChangeVariant::Under => "under",
                    ChangeVariant::Over => "over",
                };
                write!(f, "{k} {crossing} {v}")
            }
            Move::CrossingSliding { crossing, direction } => write!(f, "{k} {crossing} {direction}"),
        }
    }
}

impl FromStr for Move {
    type Err = Error;

    fn from_str(line: &str) -> Result<Move> {
        let bad = |why: &str| Error::InvalidArgument(format!("`{line}`: {why}"));
        let fields: Vec<&str> = line.split_whitespace().collect();
        let kind: MoveKind = fields.first().ok_or_else(|| bad("empty move"))?.parse()?;
        let num = |i: usize| -> Result<usize> {
            fields.get(i).ok_or_else(|| bad("missing field"))?.parse().map_err(|_| bad("bad integer"))
        };
        let sign = |i: usize| -> Result<Sign> {
            match *fields.get(i).ok_or_else(|| bad("missing field"))? {
                "+" => Ok(Sign::Plus),
                "-" => Ok(Sign::Minus),
                _ => Err(bad("bad sign")),
            }
        };
        let word = |i: usize| -> Result<&str> { fields.get(i).copied().ok_or_else(|| bad("missing field")) };
        let arity = |k: usize| if fields.len() == k + 1 { Ok(()) } else { Err(bad("wrong number of fields")) };
        let m = match kind {
            MoveKind::R1Add => {
                arity(3)?;
                let first = match word(2)? {
                    "U" => Role::Under,
                    "O" => Role::Over,
                    _ => return Err(bad("role must be U or O")),
                };
                Move::R1Add { gap: num(1)?, first, sign: sign(3)? }
            }
            MoveKind::R1Remove => {
                arity(1)?;
                Move::R1Remove { pos: num(1)? }
            }
            MoveKind::R2Add => {
                arity(5)?;
                let orientation = match word(3)? {
                    "parallel" => Orientation::Parallel,
                    "antiparallel" => Orientation::Antiparallel,
                    _ => return Err(bad("orientation")),
                };
                let over_first = match word(5)? {
                    "over-first" => true,
                    "under-first" => false,
                    _ => return Err(bad("block order")),
                };
                Move::R2Add { over_gap: num(1)?, under_gap: num(2)?, orientation, sign: sign(4)?, over_first }
            }
            MoveKind::R2Remove => {
                arity(2)?;
                Move::R2Remove { over_pos: num(1)?, under_pos: num(2)? }
            }
            MoveKind::R3 => {
                arity(3)?;
                Move::R3 { top: num(1)?, middle: num(2)?, bottom: num(3)? }
            }
            MoveKind::DlSlide4 => {
                arity(1)?;
                Move::DlSlide4 { pos: num(1)? }
            }
            MoveKind::DlPairAdd5 => {
                arity(2)?;
                Move::DlPairAdd5 { gap: num(1)?, first: sign(2)? }
            }
            MoveKind::DlPairCancel5 => {
                arity(1)?;
                Move::DlPairCancel5 { pos: num(1)? }
            }
            MoveKind::CrossingChange => {
                arity(2)?;
                let variant = match word(2)? {
                    "under" => ChangeVariant::Under,
                    "over" => ChangeVariant::Over,
                    _ => return Err(bad("variant must be under or over")),
                };
                Move::CrossingChange { crossing: num(1)? as u32, variant }
            }
            MoveKind::CrossingSliding => {
                arity(2)?;
                Move::CrossingSliding { crossing: num(1)? as u32, direction: sign(2)? }
            }
        };
        Ok(m)
    }
}

/// A start diagram and a sequence of moves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveTrace {
    pub start: DlDiagram,
    pub steps: Vec<Move>,
}

#[derive(Serialize, Deserialize)]
struct TraceJson {
    start: String,
    steps: Vec<Move>,
}

impl MoveTrace {
    pub fn new(start: DlDiagram) -> MoveTrace {
        MoveTrace { start, steps: Vec::new() }
    }

    pub fn replay(&self) -> Result<DlDiagram> {
        let mut d = self.start.clone();
        for (index, m) in self.steps.iter().enumerate() {
            d = m.apply(&d).map_err(|e| Error::Replay { index, source: Box::new(e) })?;
        }
        Ok(d)
    }

    /// Line format: `start <diagram>` followed by one move per line.
    pub fn to_text(&self) -> String {
        let mut s = format!("start {}\n", self.start);
        for m in &self.steps {
            s.push_str(&m.to_string());
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<MoveTrace> {
        let mut start = None;
        let mut steps = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let malformed = |reason: String| Error::MalformedTrace { line: i + 1, reason };
            if start.is_none() {
                let rest = line.strip_prefix("start").ok_or_else(|| malformed("expected `start <diagram>`".into()))?;
                start = Some(DlDiagram::parse(rest).map_err(|e| malformed(e.to_string()))?);
            } else {
                steps.push(line.parse().map_err(|e: Error| malformed(e.to_string()))?);
            }
        }
        let start = start.ok_or(Error::MalformedTrace { line: 0, reason: "missing start line".into() })?;
        Ok(MoveTrace { start, steps })
    }

    pub fn to_json(&self) -> String {
        let j = TraceJson { start: self.start.serialize(), steps: self.steps.clone() };
        serde_json::to_string_pretty(&j).expect("trace serializes")
    }

    pub fn from_json(text: &str) -> Result<MoveTrace> {
        let j: TraceJson =
            serde_json::from_str(text).map_err(|e| Error::MalformedTrace { line: e.line(), reason: e.to_string() })?;
        Ok(MoveTrace { start: DlDiagram::parse(&j.start)?, steps: j.steps })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> DlDiagram {
        DlDiagram::parse(s).unwrap()
    }

    #[test]
    fn pair_add_then_cancel() {
        let d = p("U1+ D+ O1+ D-");
        let add = Move::DlPairAdd5 { gap: 2, first: Sign::Minus };
        let mid = add.apply(&d).unwrap();
        assert_eq!(mid.serialize(), "U1+ D+ D- D+ O1+ D-");
        assert_eq!(Move::DlPairCancel5 { pos: 2 }.apply(&mid).unwrap(), d);
    }

    #[test]
    fn cancel_sites() {
        assert!(enumerate_moves(&DlDiagram::trivial(), &[MoveKind::DlPairCancel5]).is_empty());
        let ms = enumerate_moves(&p("D+ D-"), &[MoveKind::DlPairCancel5]);
        assert_eq!(ms, vec![Move::DlPairCancel5 { pos: 0 }, Move::DlPairCancel5 { pos: 1 }]);
        for m in ms {
            assert!(m.apply(&p("D+ D-")).unwrap().is_empty());
        }
    }

    #[test]
    fn kink_has_one_r1_removal() {
        let ms = enumerate_moves(&p("U1+ O1+"), &[MoveKind::R1Remove]);
        assert_eq!(ms.len(), 1);
        assert!(ms[0].apply(&p("U1+ O1+")).unwrap().is_empty());
    }

    #[test]
    fn crossing_change_on_one_crossing() {
        // (1,-1)_+ becomes (-2,2)_- up to rotation
        let d = p("U1+ D+ O1+ D-");
        let m = Move::CrossingChange { crossing: 1, variant: ChangeVariant::Under };
        let out = m.apply(&d).unwrap();
        assert_eq!(out.serialize(), "O1- D+ D+ U1- D- D-");
        assert!(out.canonically_eq(&p("U1- D- D- O1- D+ D+")));
    }

    #[test]
    fn crossing_change_variants_agree_after_cancel() {
        let d = p("U1+ D+ O1+ D- D-");
        let under = Move::CrossingChange { crossing: 1, variant: ChangeVariant::Under }.apply(&d).unwrap();
        let over = Move::CrossingChange { crossing: 1, variant: ChangeVariant::Over }.apply(&d).unwrap();
        assert_eq!(under.raw_parity(1).unwrap(), over.raw_parity(1).unwrap());
        assert_eq!(under.degree(), over.degree());
    }

    #[test]
    fn sliding_on_kink() {
        let d = p("U1+ O1+");
        let out = Move::CrossingSliding { crossing: 1, direction: Sign::Plus }.apply(&d).unwrap();
        assert_eq!(out.serialize(), "D+ U1+ D- D+ O1+ D-");
        assert_eq!(out.double_line_count(), 4);
        assert_eq!(out.degree(), 0);
        assert_eq!(out.raw_parity(1).unwrap(), 0);
    }

    #[test]
    fn change_twice_is_sliding() {
        let d = p("U1+ D+ U2- D- O1+ O2-");
        let cc = Move::CrossingChange { crossing: 1, variant: ChangeVariant::Under };
        let twice = cc.apply(&cc.apply(&d).unwrap()).unwrap();
        let slide = Move::CrossingSliding { crossing: 1, direction: Sign::Plus }.apply(&d).unwrap();
        assert_eq!(twice, slide);
    }

    #[test]
    fn slide4_patterns() {
        let d = p("D+ U1+ O1+ D-");
        let out = Move::DlSlide4 { pos: 0 }.apply(&d).unwrap();
        assert_eq!(out.serialize(), "O1- D+ U1- D-");
        // the reverse pattern is forbidden: it would unknot (1,-1)_+
        assert!(Move::DlSlide4 { pos: 0 }.apply(&p("U1+ D+ O1+ D-")).is_err());
        assert!(Move::DlSlide4 { pos: 0 }.apply(&p("D+ D-")).is_err());
    }

    #[test]
    fn r1_and_r2_roundtrip() {
        let d = p("U1+ D+ O1+ D-");
        let m = Move::R1Add { gap: 2, first: Role::Over, sign: Sign::Minus };
        let out = m.apply(&d).unwrap();
        assert_eq!(out.serialize(), "U1+ D+ O2- U2- O1+ D-");
        assert_eq!(out.raw_parity(2).unwrap(), 0);
        let m = Move::R2Add {
            over_gap: 1,
            under_gap: 3,
            orientation: Orientation::Antiparallel,
            sign: Sign::Plus,
            over_first: true,
        };
        let out = m.apply(&d).unwrap();
        assert_eq!(out.serialize(), "U1+ O2+ O3- D+ O1+ U3- U2+ D-");
        let inv = m.invert(&d).unwrap();
        assert_eq!(inv, vec![Move::R2Remove { over_pos: 1, under_pos: 5 }]);
        assert_eq!(inv[0].apply(&out).unwrap(), d);
    }

    #[test]
    fn r2_requires_opposite_signs() {
        assert!(Move::R2Remove { over_pos: 0, under_pos: 2 }.apply(&p("O1+ O2+ U1+ U2+")).is_err());
        assert!(Move::R2Remove { over_pos: 0, under_pos: 2 }.apply(&p("O1+ O2- U1+ U2-")).unwrap().is_empty());
    }

    #[test]
    fn r3_site() {
        // top over a then b, middle under a then over c, bottom under b then c.
        // Signs a=+, b=+, c=+ with the bottom strand on the `a first` side.
        let d = p("O1+ O2+ U1+ O3+ U2+ U3+");
        let ms = enumerate_moves(&d, &[MoveKind::R3]);
        assert_eq!(ms.len(), 1);
        let out = ms[0].apply(&d).unwrap();
        assert_eq!(out.serialize(), "O2+ O1+ O3+ U1+ U3+ U2+");
        assert_eq!(ms[0].apply(&out).unwrap(), d);
        assert_eq!(ms[0].r3_crossings(&d), Some((1, 2, 3)));
        // mixed orders with these signs are not triangles
        assert!(enumerate_moves(&p("O1+ O2+ O3+ U1+ U2+ U3+"), &[MoveKind::R3]).is_empty());
    }

    #[test]
    fn inverses_restore() {
        let d = p("U1+ D+ D- O2- U2- D+ O1+ D-");
        for m in enumerate_moves(&d, &MoveKind::ALL) {
            let mut cur = m.apply(&d).unwrap();
            for s in m.invert(&d).unwrap() {
                cur = s.apply(&cur).unwrap_or_else(|e| panic!("{m}: {e}"));
            }
            assert!(cur.canonically_eq(&d), "{m}: {cur}");
        }
    }

    #[test]
    fn trace_text_and_json() {
        let d = p("U1+ D+ O1+ D-");
        let mut t = MoveTrace::new(d.clone());
        t.steps = vec![
            Move::DlPairAdd5 { gap: 0, first: Sign::Plus },
            Move::DlPairCancel5 { pos: 0 },
            Move::CrossingChange { crossing: 1, variant: ChangeVariant::Under },
            Move::R2Add {
                over_gap: 0,
                under_gap: 0,
                orientation: Orientation::Parallel,
                sign: Sign::Minus,
                over_first: false,
            },
        ];
        let txt = t.to_text();
        assert_eq!(MoveTrace::from_text(&txt).unwrap(), t);
        assert_eq!(MoveTrace::from_json(&t.to_json()).unwrap(), t);
        assert_eq!(MoveTrace::new(d.clone()).replay().unwrap(), d);
        let bad = MoveTrace { start: d, steps: vec![Move::DlPairCancel5 { pos: 0 }] };
        assert!(matches!(bad.replay(), Err(Error::Replay { index: 0, .. })));
    }
}
