//! One-crossing knots `(m, n)_eps`: the under-to-over half carries a block of
//! `m` double lines, the rest carries `n`.

use serde::{Deserialize, Serialize};

use crate::diagram::{DlDiagram, Role, Sign, Token, WindingParity};
use crate::error::{Error, Result};
use crate::projection::essential_count;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OneCrossing {
    pub m: i64,
    pub n: i64,
    pub eps: Sign,
}

fn block(k: i64) -> impl Iterator<Item = Token> {
    let s = if k >= 0 { Sign::Plus } else { Sign::Minus };
    std::iter::repeat_n(Token::DoubleLine(s), k.unsigned_abs() as usize)
}

impl OneCrossing {
    pub fn new(m: i64, n: i64, eps: Sign) -> OneCrossing {
        OneCrossing { m, n, eps }
    }

    pub fn diagram(&self) -> DlDiagram {
        let mut tokens = vec![Token::passage(1, Role::Under, self.eps)];
        tokens.extend(block(self.m));
        tokens.push(Token::passage(1, Role::Over, self.eps));
        tokens.extend(block(self.n));
        DlDiagram::from_tokens_unchecked(tokens)
    }

    /// The equivalent diagram obtained by one crossing change.
    pub fn partner(&self) -> OneCrossing {
        OneCrossing { m: self.n - 1, n: self.m + 1, eps: -self.eps }
    }

    pub fn degree(&self) -> i64 {
        self.m + self.n
    }

    pub fn record(&self) -> InvariantRecord {
        InvariantRecord::of(&self.diagram())
    }
}

pub fn one_crossing(m: i64, n: i64, eps: Sign) -> DlDiagram {
    OneCrossing::new(m, n, eps).diagram()
}

pub fn partner(m: i64, n: i64, eps: Sign) -> OneCrossing {
    OneCrossing::new(m, n, eps).partner()
}

/// Essential count of `(m, n)_eps` in closed form.
pub fn essential_count_closed_form(m: i64, n: i64) -> usize {
    let total = (m.abs() + n.abs()) as usize;
    if m <= -1 && n > 0 {
        total - 2
    } else {
        total
    }
}

/// Degree, parity orbits under `i -> -i-1`, and essential count.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct InvariantRecord {
    pub degree: i64,
    pub parity_orbits: Vec<WindingParity>,
    pub essential: usize,
}

impl InvariantRecord {
    pub fn of(d: &DlDiagram) -> InvariantRecord {
        let mut parity_orbits: Vec<_> = d.parity_profile().into_iter().map(WindingParity::orbit).collect();
        parity_orbits.sort();
        InvariantRecord { degree: d.degree(), parity_orbits, essential: essential_count(d) }
    }

    /// True when the record matches that of a crossingless diagram up to
    /// kinks: every orbit is that of parity 0 and the essential count equals
    /// `|degree|`.
    pub fn possibly_trivial(&self) -> bool {
        self.parity_orbits.iter().all(|p| p.value == 0) && self.essential == self.degree.unsigned_abs() as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyClass {
    pub representative: OneCrossing,
    pub members: Vec<OneCrossing>,
    pub record: InvariantRecord,
}

/// Groups `(m, k-m)_+`, `m = 0..k-1`, by invariant record and keeps the
/// classes that are certainly nontrivial.
pub fn degree_k_family(k: i64) -> Result<Vec<FamilyClass>> {
    if k < 3 {
        return Err(Error::InvalidArgument(format!("degree must be at least 3, got {k}")));
    }
    let mut classes: Vec<FamilyClass> = Vec::new();
    for m in 0..k {
        let knot = OneCrossing::new(m, k - m, Sign::Plus);
        let record = knot.record();
        debug_assert_eq!(record, knot.partner().record());
        match classes.iter_mut().find(|c| c.record == record) {
            Some(c) => c.members.push(knot),
            None => classes.push(FamilyClass { representative: knot, members: vec![knot], record }),
        }
    }
    classes.retain(|c| !c.record.possibly_trivial());
    Ok(classes)
}

/// Lower bound on the number of nontrivial degree-`k` one-crossing knots.
pub fn family_lower_bound(k: i64) -> usize {
    let base = ((k - 2) / 2) as usize;
    if k % 2 != 0 {
        base + 1
    } else {
        base
    }
}

/// `(m + s k, k - s k - m)_+` for `s = 0..=s_max` with essential counts.
pub fn stretch_family(m: i64, k: i64, s_max: i64) -> Result<Vec<(OneCrossing, usize)>> {
    if k < 3 {
        return Err(Error::InvalidArgument(format!("degree must be at least 3, got {k}")));
    }
    if m.rem_euclid(k) == 0 {
        return Err(Error::InvalidArgument(format!("m = {m} is divisible by k = {k}")));
    }
    if s_max < 1 {
        return Err(Error::InvalidArgument("s_max must be at least 1".into()));
    }
    Ok((0..=s_max)
        .map(|s| {
            let knot = OneCrossing::new(m + s * k, k - s * k - m, Sign::Plus);
            (knot, essential_count(&knot.diagram()))
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction() {
        assert_eq!(one_crossing(2, 1, Sign::Plus).serialize(), "U1+ D+ D+ O1+ D+");
        assert_eq!(one_crossing(2, 1, Sign::Plus).degree(), 3);
        assert_eq!(one_crossing(0, 0, Sign::Plus).serialize(), "U1+ O1+");
        assert_eq!(one_crossing(-1, 1, Sign::Minus).serialize(), "U1- D- O1- D+");
    }

    #[test]
    fn partners() {
        assert_eq!(partner(2, -2, Sign::Plus), OneCrossing::new(-3, 3, Sign::Minus));
        assert_eq!(partner(0, 0, Sign::Plus), OneCrossing::new(-1, 1, Sign::Minus));
        assert_eq!(partner(1, 2, Sign::Plus), OneCrossing::new(1, 2, Sign::Minus));
        let a = OneCrossing::new(2, -2, Sign::Plus);
        assert_eq!(essential_count(&a.diagram()), 4);
        assert_eq!(essential_count(&a.partner().diagram()), 4);
    }

    #[test]
    fn closed_form_cases() {
        assert_eq!(essential_count_closed_form(2, 3), 5);
        assert_eq!(essential_count_closed_form(-3, -1), 4);
        assert_eq!(essential_count_closed_form(-3, 3), 4);
        assert_eq!(essential_count_closed_form(0, 0), 0);
        assert_eq!(essential_count_closed_form(-1, 1), 0);
    }

    #[test]
    fn families() {
        assert!(degree_k_family(2).is_err());
        assert!(!degree_k_family(3).unwrap().is_empty());
        assert!(!degree_k_family(4).unwrap().is_empty());
        assert!(degree_k_family(5).unwrap().len() >= 2);
        assert_eq!(family_lower_bound(7), 3);
        assert_eq!(family_lower_bound(6), 2);
    }

    #[test]
    fn stretch() {
        let f = stretch_family(1, 3, 1).unwrap();
        assert_eq!(f[0], (OneCrossing::new(1, 2, Sign::Plus), 3));
        assert_eq!(f[1], (OneCrossing::new(4, -1, Sign::Plus), 5));
        let f = stretch_family(2, 3, 1).unwrap();
        assert_eq!(f[1].1, 7);
        assert!(stretch_family(3, 3, 1).is_err());
        assert!(stretch_family(1, 2, 1).is_err());
        assert!(stretch_family(1, 3, 0).is_err());
    }

    #[test]
    fn winding_parity_cannot_separate_stretch() {
        // (2, k-2)_+ and (2+mk, k-mk-2)_+ share their parity orbits
        for k in 3..7 {
            let a = OneCrossing::new(2, k - 2, Sign::Plus).record();
            let b = OneCrossing::new(2 + k, -2, Sign::Plus).record();
            assert_eq!(a.parity_orbits, b.parity_orbits);
            assert!(b.essential > a.essential);
        }
    }
}
