//! Construction of hypercubes Q_n and folded hypercubes FQ_n, enumeration of
//! their perfect matchings, and certified decisions on whether FQ_n minus a
//! perfect matching is isomorphic to Q_n.
//!
//! Isomorphic outcomes carry an explicit labeling that is checked edge by
//! edge; non-isomorphic outcomes carry a small witness (a vertex pair with the
//! wrong number of common neighbors, or a 4-cycle meeting the matching once).

pub mod cli;
pub mod error;
pub mod isomorphism;
pub mod limits;
pub mod matching;
pub mod topology;
pub mod verify;

pub use error::{Error, Result};
pub use isomorphism::{IsoResult, Labeling, Witness};
pub use limits::Limits;
pub use matching::{Matching, MatchingClass};
pub use topology::{Edge, EdgeClass, Graph, GraphKind, VertexLabel};
