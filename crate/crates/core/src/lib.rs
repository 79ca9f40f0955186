//! Schubert calculus on projective homogeneous varieties `G/P`.
//!
//! Chow rings are computed from Cartan data alone: Weyl group combinatorics,
//! the Chevalley formula for products with divisors, and Giambelli lifts via
//! divided differences for general products. On top of that sits an algebra
//! of correspondences and a verification pipeline for the motivic
//! decomposition of the two 15-dimensional F4 varieties `G/P1` and `G/P4`.

// Matrix and root-coordinate code reads best with explicit indices.
#![allow(clippy::needless_range_loop)]

pub mod correspondence;
pub mod error;
pub mod f4pipeline;
pub mod hasse;
pub mod linalg;
pub mod notation;
pub mod poly;
pub mod rootsystem;
pub mod schubert;
pub mod weyl;

pub use correspondence::Correspondence;
pub use error::{Error, Result};
pub use f4pipeline::{F4Pipeline, VerificationReport};
pub use hasse::{HasseDiagram, PieriDiagram};
pub use poly::{Monomial, RationalPolynomial, WeightPolynomials};
pub use rootsystem::{CartanMatrix, Root, RootSystem, Weight};
pub use schubert::{ChowElement, ChowRing, FlagVariety, SchubertClass};
pub use weyl::{ParabolicSubset, WeylElement, WeylGroup};
