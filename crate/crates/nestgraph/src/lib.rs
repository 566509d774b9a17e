#![forbid(unsafe_code)]

//! Finite truncations of a nested family of k-edge-connected directed
//! multigraphs, together with exact connectivity machinery: local
//! edge-connectivity via max-flow, minimum cuts, edge-disjoint path witnesses,
//! quotient and subdivision transforms, and exhaustive structural checks
//! (cut shapes, deletion robustness, absence of edge-disjoint back-and-forth
//! path pairs) at desk scale.
//!
//! The family is parameterised by `k >= 2`. Each address over the digit
//! alphabet `{0, ..., 2k-1}` names a copy of the whole graph nested inside
//! itself; a *gadget* is the finite edge bundle one address contributes, and a
//! depth-`d` truncation materialises every gadget of address length `< d`.

pub mod error;
pub mod graphcore;

pub use error::{Error, Result};
