//! Exact arithmetic for linear codes in the Rosenbloom–Tsfasman metric and the
//! equivalent optimum point distributions and nets in the unit cube.
//!
//! Everything here is integer or finite-field arithmetic. Points of the cube are
//! never floats: a point with `s` base-`q` digits per coordinate is stored as its
//! `n × s` digit matrix, which is also its code word.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod codes;
pub mod construct;
pub mod error;
pub mod geometry;
pub mod gf;
pub mod linalg;
pub mod peano;
pub mod poly;
pub mod space;
pub mod spectra;

pub use codes::{LinearCode, Metric, ParityCheck};
pub use construct::NodeSet;
pub use error::{Error, Result};
pub use geometry::{Distribution, ElementaryBox};
pub use gf::{Elem, Field, FieldElement};
pub use poly::{HermiteProblem, Node, Poly};
pub use space::{CodeWord, Space};
pub use spectra::SpectrumVector;
