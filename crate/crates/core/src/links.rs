//! Two-component links `K ⊔ T`, `T` unknotted, given in sewed form: the word
//! of `K` where each clasp with `T` is a single signed token.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::catalog::{one_crossing, InvariantRecord};
use crate::diagram::{DlDiagram, Role, Sign, Token};
use crate::error::{Error, Result};
use crate::projection::{essential_count, remove_double_lines, EliminationCertificate};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SewedToken {
    Passage { id: u32, role: Role, sign: Sign },
    Clasp(Sign),
}

impl SewedToken {
    fn to_token(self) -> Token {
        match self {
            SewedToken::Passage { id, role, sign } => Token::Passage { id, role, sign },
            SewedToken::Clasp(s) => Token::DoubleLine(s),
        }
    }
}

impl fmt::Display for SewedToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SewedToken::Passage { id, role, sign } => write!(f, "{}", Token::Passage { id, role, sign }),
            SewedToken::Clasp(s) => write!(f, "C{}", s.symbol()),
        }
    }
}

impl FromStr for SewedToken {
    type Err = Error;

    fn from_str(s: &str) -> Result<SewedToken> {
        if let Some(rest) = s.strip_prefix('C') {
            return match rest {
                "+" => Ok(SewedToken::Clasp(Sign::Plus)),
                "-" | "\u{2212}" => Ok(SewedToken::Clasp(Sign::Minus)),
                _ => Err(Error::MalformedToken(s.to_string())),
            };
        }
        match s.parse::<Token>()? {
            Token::Passage { id, role, sign } => Ok(SewedToken::Passage { id, role, sign }),
            Token::DoubleLine(_) => Err(Error::MalformedToken(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SewedLink {
    tokens: Vec<SewedToken>,
}

impl SewedLink {
    pub fn new(tokens: Vec<SewedToken>) -> Result<SewedLink> {
        // pairing rules are those of the converted diagram
        DlDiagram::new(tokens.iter().map(|t| t.to_token()).collect())?;
        Ok(SewedLink { tokens })
    }

    pub fn tokens(&self) -> &[SewedToken] {
        &self.tokens
    }
}

impl fmt::Display for SewedLink {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.tokens.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl FromStr for SewedLink {
    type Err = Error;

    fn from_str(s: &str) -> Result<SewedLink> {
        parse_sewed(s)
    }
}

pub fn parse_sewed(text: &str) -> Result<SewedLink> {
    let tokens = text.split_whitespace().map(str::parse).collect::<Result<Vec<_>>>()?;
    SewedLink::new(tokens)
}

/// Replaces every clasp by a double line of the same sign; the result is a
/// diagram of `K` in `S² × S¹`.
pub fn to_dl_diagram(l: &SewedLink) -> DlDiagram {
    DlDiagram::from_tokens_unchecked(l.tokens.iter().map(|t| t.to_token()).collect())
}

pub fn linking_number(l: &SewedLink) -> i64 {
    l.tokens
        .iter()
        .map(|t| match t {
            SewedToken::Clasp(s) => s.value(),
            SewedToken::Passage { .. } => 0,
        })
        .sum()
}

/// The one-crossing link whose clasp blocks have linking numbers `m` and `n`.
#[allow(non_snake_case)]
pub fn make_L(m: i64, n: i64, eps: Sign) -> SewedLink {
    let tokens = one_crossing(m, n, eps)
        .tokens()
        .iter()
        .map(|&t| match t {
            Token::Passage { id, role, sign } => SewedToken::Passage { id, role, sign },
            Token::DoubleLine(s) => SewedToken::Clasp(s),
        })
        .collect();
    SewedLink { tokens }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Obstruction {
    LinkingNumber { linking_number: i64 },
    Parity { crossing: u32, parity: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparabilityVerdict {
    pub separable: bool,
    pub witness: Option<EliminationCertificate>,
    pub obstruction: Option<Obstruction>,
    /// Essential count of the converted diagram when the linking number is 0
    /// and the criterion fails.
    pub essential: Option<usize>,
}

impl SeparabilityVerdict {
    /// Whether a negative verdict cites an obstruction: a nonzero linking
    /// number, or a positive essential count. Only the first is a move
    /// invariant on all diagrams; R2 moves across double lines can change
    /// the second.
    pub fn cites_obstruction(&self) -> bool {
        match self.obstruction {
            Some(Obstruction::LinkingNumber { .. }) => true,
            _ => self.essential.is_some_and(|e| e > 0),
        }
    }
}

/// Sufficient criterion: linking number 0 and every crossing parity in
/// `{0, -1}`. On success the certificate removes all double lines.
pub fn separability_check(l: &SewedLink) -> Result<SeparabilityVerdict> {
    let d = to_dl_diagram(l);
    let lk = d.degree();
    if lk != 0 {
        return Ok(SeparabilityVerdict {
            separable: false,
            witness: None,
            obstruction: Some(Obstruction::LinkingNumber { linking_number: lk }),
            essential: None,
        });
    }
    if let Some((crossing, p)) = d.parities().into_iter().find(|(_, p)| p.value != 0 && p.value != -1) {
        return Ok(SeparabilityVerdict {
            separable: false,
            witness: None,
            obstruction: Some(Obstruction::Parity { crossing, parity: p.value }),
            essential: Some(essential_count(&d)),
        });
    }
    let cert = remove_double_lines(&d)?;
    cert.verify()?;
    Ok(SeparabilityVerdict { separable: true, witness: Some(cert), obstruction: None, essential: None })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyRow {
    pub m: i64,
    pub link: String,
    pub record: InvariantRecord,
}

/// Invariant records of `L_{(m,-m)_+}` for `m = 1..=m_max`.
pub fn distinguish_l_family(m_max: i64) -> Result<Vec<FamilyRow>> {
    if m_max < 1 {
        return Err(Error::InvalidArgument(format!("m_max must be at least 1, got {m_max}")));
    }
    Ok((1..=m_max)
        .map(|m| {
            let l = make_L(m, -m, Sign::Plus);
            FamilyRow { m, link: l.to_string(), record: InvariantRecord::of(&to_dl_diagram(&l)) }
        })
        .collect())
}
