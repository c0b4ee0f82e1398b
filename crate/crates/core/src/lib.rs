//! Colored, vertex-oriented uni-trivalent diagrams and exact power series
//! over them.
//!
//! The crate is `no_std` and only needs `alloc`. It provides canonical forms
//! for diagrams, a commutative algebra of truncated series with rational
//! coefficients, the pairing operators that glue legs of diagrams together,
//! and the formulas computing the degree-bounded universal perturbative
//! invariant of a few families of rational homology spheres.

#![no_std]

extern crate alloc;

pub mod color;
pub mod diagram;
pub mod error;
pub mod glue;
pub mod naive;
pub mod graph;
pub mod lmo;
pub mod series;
pub mod shapes;

pub use color::{Color, ColorSet};
pub use diagram::{canonicalize, Diagram, Monomial, RawDiagram};
pub use error::Error;
pub use series::{int, rat, Rational, Series};
