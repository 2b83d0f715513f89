//! Token-sequence representation of oriented knot diagrams with double lines.
//!
//! A diagram is a cyclic word over two kinds of tokens: passages through a
//! classical crossing (`O3+`, `U3+`) and signed double lines (`D+`, `D-`).
//! Virtual crossings are not recorded; two planar diagrams that differ only
//! by detour moves have the same word.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::Neg;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn of(v: i64) -> Option<Sign> {
        match v.signum() {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    fn parse(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Plus),
            '-' | '\u{2212}' => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Role {
    Over,
    Under,
}

impl Role {
    pub fn flip(self) -> Role {
        match self {
            Role::Over => Role::Under,
            Role::Under => Role::Over,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Role::Over => 'O',
            Role::Under => 'U',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Token {
    Passage { id: u32, role: Role, sign: Sign },
    DoubleLine(Sign),
}

impl Token {
    pub fn passage(id: u32, role: Role, sign: Sign) -> Token {
        Token::Passage { id, role, sign }
    }

    pub fn is_double_line(&self) -> bool {
        matches!(self, Token::DoubleLine(_))
    }

    pub fn dl_value(&self) -> i64 {
        match self {
            Token::DoubleLine(s) => s.value(),
            Token::Passage { .. } => 0,
        }
    }

    pub fn crossing(&self) -> Option<u32> {
        match self {
            Token::Passage { id, .. } => Some(*id),
            Token::DoubleLine(_) => None,
        }
    }

    /// Ordering key used by canonicalization: Under < Over < double line,
    /// then id, then `+` before `-`.
    fn key(&self) -> (u8, u32, u8) {
        let s = |s: Sign| if s == Sign::Plus { 0 } else { 1 };
        match *self {
            Token::Passage { id, role: Role::Under, sign } => (0, id, s(sign)),
            Token::Passage { id, role: Role::Over, sign } => (1, id, s(sign)),
            Token::DoubleLine(sign) => (2, 0, s(sign)),
        }
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Passage { id, role, sign } => write!(f, "{}{}{}", role.letter(), id, sign),
            Token::DoubleLine(sign) => write!(f, "D{}", sign),
        }
    }
}

impl FromStr for Token {
    type Err = Error;

    fn from_str(s: &str) -> Result<Token> {
        let bad = || Error::MalformedToken(s.to_string());
        let mut chars = s.chars();
        let head = chars.next().ok_or_else(bad)?;
        let last = s.chars().last().ok_or_else(bad)?;
        let sign = Sign::parse(last).ok_or_else(bad)?;
        let body = &s[head.len_utf8()..s.len() - last.len_utf8()];
        match head {
            'D' if body.is_empty() => Ok(Token::DoubleLine(sign)),
            'O' | 'U' => {
                if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(bad());
                }
                let id: u32 = body.parse().map_err(|_| bad())?;
                if id == 0 {
                    return Err(bad());
                }
                let role = if head == 'O' { Role::Over } else { Role::Under };
                Ok(Token::passage(id, role, sign))
            }
            _ => Err(bad()),
        }
    }
}

/// Winding parity of a crossing: an integer, or a residue when `modulus > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WindingParity {
    pub value: i64,
    pub modulus: u64,
}

impl WindingParity {
    pub fn reduce(raw: i64, degree: i64) -> WindingParity {
        if degree == 0 {
            WindingParity { value: raw, modulus: 0 }
        } else {
            let m = degree.unsigned_abs();
            WindingParity { value: raw.rem_euclid(m as i64), modulus: m }
        }
    }

    /// Representative of the orbit `{i, -i-1}`. A crossing change maps a
    /// parity `i` to `-i-1`, so only the orbit is a property of the crossing
    /// up to equivalence.
    pub fn orbit(self) -> WindingParity {
        let other = if self.modulus == 0 { -self.value - 1 } else { (-self.value - 1).rem_euclid(self.modulus as i64) };
        let value = if self.modulus == 0 {
            // pick the non-negative member
            if self.value >= 0 {
                self.value
            } else {
                other
            }
        } else {
            self.value.min(other)
        };
        WindingParity { value, modulus: self.modulus }
    }
}

impl fmt::Display for WindingParity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.modulus == 0 {
            write!(f, "{}", self.value)
        } else {
            write!(f, "{} mod {}", self.value, self.modulus)
        }
    }
}

type TokenKey = (u8, u32, u8);

/// An oriented knot diagram with double lines, read cyclically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DlDiagram {
    tokens: Vec<Token>,
}

impl DlDiagram {
    pub fn trivial() -> DlDiagram {
        DlDiagram { tokens: Vec::new() }
    }

    /// Validates the pairing invariant: each crossing id occurs exactly twice,
    /// once over and once under, with a single crossing sign.
    pub fn new(tokens: Vec<Token>) -> Result<DlDiagram> {
        let mut seen: BTreeMap<u32, Vec<(Role, Sign)>> = BTreeMap::new();
        for t in &tokens {
            if let Token::Passage { id, role, sign } = *t {
                seen.entry(id).or_default().push((role, sign));
            }
        }
        for (id, uses) in seen {
            if uses.len() != 2 {
                return Err(Error::Pairing { id, count: uses.len() });
            }
            if uses[0].0 == uses[1].0 {
                return Err(Error::Roles(id));
            }
            if uses[0].1 != uses[1].1 {
                return Err(Error::Signs(id));
            }
        }
        Ok(DlDiagram { tokens })
    }

    pub(crate) fn from_tokens_unchecked(tokens: Vec<Token>) -> DlDiagram {
        debug_assert!(DlDiagram::new(tokens.clone()).is_ok());
        DlDiagram { tokens }
    }

    pub fn parse(text: &str) -> Result<DlDiagram> {
        let tokens = text.split_whitespace().map(Token::from_str).collect::<Result<Vec<_>>>()?;
        DlDiagram::new(tokens)
    }

    pub fn serialize(&self) -> String {
        self.to_string()
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn crossing_count(&self) -> usize {
        self.tokens.iter().filter(|t| !t.is_double_line()).count() / 2
    }

    pub fn double_line_count(&self) -> usize {
        self.tokens.iter().filter(|t| t.is_double_line()).count()
    }

    /// Crossing ids in order of first occurrence.
    pub fn crossings(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for t in &self.tokens {
            if let Some(id) = t.crossing() {
                if !out.contains(&id) {
                    out.push(id);
                }
            }
        }
        out
    }

    pub fn max_crossing_id(&self) -> u32 {
        self.tokens.iter().filter_map(Token::crossing).max().unwrap_or(0)
    }

    pub fn crossing_sign(&self, id: u32) -> Option<Sign> {
        self.tokens.iter().find_map(|t| match *t {
            Token::Passage { id: i, sign, .. } if i == id => Some(sign),
            _ => None,
        })
    }

    pub fn position(&self, id: u32, role: Role) -> Option<usize> {
        self.tokens.iter().position(|t| matches!(*t, Token::Passage { id: i, role: r, .. } if i == id && r == role))
    }

    pub fn degree(&self) -> i64 {
        self.tokens.iter().map(Token::dl_value).sum()
    }

    /// Integer sum of double-line signs strictly between the under passage
    /// and the over passage of `id`, following the orientation.
    pub fn raw_parity(&self, id: u32) -> Result<i64> {
        let u = self.position(id, Role::Under).ok_or(Error::UnknownCrossing(id))?;
        let o = self.position(id, Role::Over).ok_or(Error::UnknownCrossing(id))?;
        let n = self.tokens.len();
        let mut sum = 0;
        let mut i = (u + 1) % n;
        while i != o {
            sum += self.tokens[i].dl_value();
            i = (i + 1) % n;
        }
        Ok(sum)
    }

    pub fn winding_parity(&self, id: u32) -> Result<WindingParity> {
        Ok(WindingParity::reduce(self.raw_parity(id)?, self.degree()))
    }

    /// Parities of all crossings, in order of first occurrence.
    pub fn parities(&self) -> Vec<(u32, WindingParity)> {
        let deg = self.degree();
        self.crossings().into_iter().map(|c| (c, WindingParity::reduce(self.raw_parity(c).unwrap(), deg))).collect()
    }

    /// The parity multiset, sorted.
    pub fn parity_profile(&self) -> Vec<WindingParity> {
        let mut v: Vec<_> = self.parities().into_iter().map(|(_, p)| p).collect();
        v.sort();
        v
    }

    pub fn rotated(&self, k: usize) -> DlDiagram {
        let mut tokens = self.tokens.clone();
        if !tokens.is_empty() {
            let k = k % tokens.len();
            tokens.rotate_left(k);
        }
        DlDiagram { tokens }
    }

    /// Renumbers crossings 1.. in order of first occurrence.
    pub fn relabeled(&self) -> DlDiagram {
        let mut map = HashMap::new();
        let tokens = self
            .tokens
            .iter()
            .map(|t| match *t {
                Token::Passage { id, role, sign } => {
                    let next = map.len() as u32 + 1;
                    let id = *map.entry(id).or_insert(next);
                    Token::passage(id, role, sign)
                }
                dl => dl,
            })
            .collect();
        DlDiagram { tokens }
    }

    /// Representative of the orbit under rotation and relabeling whose token
    /// keys are lexicographically smallest.
    pub fn canonicalize(&self) -> DlDiagram {
        let n = self.tokens.len();
        let mut best: Option<(Vec<TokenKey>, DlDiagram)> = None;
        for k in 0..n.max(1) {
            let cand = self.rotated(k).relabeled();
            let key: Vec<_> = cand.tokens.iter().map(Token::key).collect();
            if best.as_ref().is_none_or(|(b, _)| key < *b) {
                best = Some((key, cand));
            }
        }
        best.map(|(_, d)| d).unwrap_or_else(DlDiagram::trivial)
    }

    pub fn canonically_eq(&self, other: &DlDiagram) -> bool {
        self.len() == other.len() && self.canonicalize() == other.canonicalize()
    }

    /// Deletes all double lines.
    pub fn proj(&self) -> DlDiagram {
        DlDiagram { tokens: self.tokens.iter().filter(|t| !t.is_double_line()).copied().collect() }
    }

    /// Deletes the tokens at the given positions.
    pub fn without_positions(&self, positions: &[usize]) -> DlDiagram {
        let tokens = self.tokens.iter().enumerate().filter(|(i, _)| !positions.contains(i)).map(|(_, t)| *t).collect();
        DlDiagram::from_tokens_unchecked(tokens)
    }

    /// Positions of all double-line tokens.
    pub fn double_line_positions(&self) -> Vec<usize> {
        (0..self.tokens.len()).filter(|&i| self.tokens[i].is_double_line()).collect()
    }
}

impl fmt::Display for DlDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.tokens.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", t)?;
        }
        Ok(())
    }
}

impl FromStr for DlDiagram {
    type Err = Error;
    fn from_str(s: &str) -> Result<DlDiagram> {
        DlDiagram::parse(s)
    }
}

/// Invariant summary emitted by the `invariants` command.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub degree: i64,
    pub parities: Vec<WindingParity>,
    pub crossings: usize,
    pub double_lines: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub essential: Option<usize>,
}

impl InvariantReport {
    pub fn of(d: &DlDiagram) -> InvariantReport {
        InvariantReport {
            degree: d.degree(),
            parities: d.parity_profile(),
            crossings: d.crossing_count(),
            double_lines: d.double_line_count(),
            essential: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> DlDiagram {
        DlDiagram::parse(s).unwrap()
    }

    #[test]
    fn parse_counts() {
        let d = p("U1+ D+ D+ O1+ D+");
        assert_eq!(d.crossing_count(), 1);
        assert_eq!(d.double_line_count(), 3);
        assert!(p("").is_empty());
        assert!(p("  \n ").is_empty());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(DlDiagram::parse("U1+ O1+ U1+"), Err(Error::Pairing { id: 1, count: 3 })));
        assert!(matches!(DlDiagram::parse("U1+ U1+"), Err(Error::Roles(1))));
        assert!(matches!(DlDiagram::parse("U1+ O1-"), Err(Error::Signs(1))));
        assert!(matches!(DlDiagram::parse("U1+"), Err(Error::Pairing { .. })));
        for bad in ["X+", "D", "D*", "U+", "O0+", "Ua+", "D++", "U1"] {
            assert!(matches!(DlDiagram::parse(bad), Err(Error::MalformedToken(_))), "{bad}");
        }
    }

    #[test]
    fn unicode_minus() {
        assert_eq!(p("D\u{2212} D+").serialize(), "D- D+");
    }

    #[test]
    fn serialize_examples() {
        assert_eq!(DlDiagram::trivial().serialize(), "");
        assert_eq!(p("D+ D-").serialize(), "D+ D-");
        assert_eq!(p("U1+ O1+").serialize(), "U1+ O1+");
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(p("O1+ D+ U1+").canonicalize(), p("U3+ O3+ D+").canonicalize());
        assert_eq!(DlDiagram::trivial().canonicalize(), DlDiagram::trivial());
        assert_eq!(p("D+ D-").canonicalize(), p("D- D+").canonicalize());
        assert_ne!(p("U1+ O1+").canonicalize(), p("U1- O1-").canonicalize());
        assert_eq!(p("O7+ U7+").canonicalize().serialize(), "U1+ O1+");
    }

    #[test]
    fn degree_examples() {
        assert_eq!(p("D+ D+ D-").degree(), 1);
        assert_eq!(DlDiagram::trivial().degree(), 0);
        assert_eq!(p("U1+ D+ D+ O1+ D+").degree(), 3);
    }

    #[test]
    fn parity_examples() {
        let d = p("U1+ D+ D+ O1+ D+");
        assert_eq!(d.winding_parity(1).unwrap(), WindingParity { value: 2, modulus: 3 });
        assert_eq!(p("U1+ O1+").winding_parity(1).unwrap(), WindingParity { value: 0, modulus: 0 });
        assert_eq!(p("U1+ D- O1+ D+").winding_parity(1).unwrap(), WindingParity { value: -1, modulus: 0 });
        assert!(matches!(p("U1+ O1+").winding_parity(4), Err(Error::UnknownCrossing(4))));
        // the half wraps around the base point
        assert_eq!(p("O1+ D+ U1+ D- D-").raw_parity(1).unwrap(), -2);
    }

    #[test]
    fn profile_examples() {
        assert_eq!(p("U1+ D+ O1+ D+ D+").parity_profile(), vec![WindingParity { value: 1, modulus: 3 }]);
        assert!(DlDiagram::trivial().parity_profile().is_empty());
    }

    #[test]
    fn orbit_representatives() {
        let z = |v| WindingParity { value: v, modulus: 0 };
        assert_eq!(z(-1).orbit(), z(0));
        assert_eq!(z(-3).orbit(), z(2));
        assert_eq!(z(2).orbit(), z(2));
        let m = |v| WindingParity { value: v, modulus: 3 };
        assert_eq!(m(2).orbit(), m(0));
        assert_eq!(m(1).orbit(), m(1));
    }
}
