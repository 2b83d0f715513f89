//! Knots in S_g x S^1 as virtual knot diagrams with signed double lines.
//!
//! Diagrams are cyclic token words ([`diagram`]); [`moves`] implements the
//! local moves, [`projection`] the parity projection, double-line
//! elimination and essential sets, [`catalog`] the one-crossing family and
//! [`links`] the conversion of sewed two-component links.

pub mod catalog;
pub mod diagram;
pub mod error;
pub mod generate;
pub mod links;
pub mod moves;
pub mod projection;
pub mod search;

pub use diagram::{DlDiagram, InvariantReport, Role, Sign, Token, WindingParity};
pub use error::{Error, Result};
pub use moves::{enumerate_moves, ChangeVariant, Move, MoveKind, MoveTrace, Orientation};
