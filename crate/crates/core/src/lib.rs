//! Exact evaluation of nested sums over Horadam sequences, by brute force
//! and by closed forms, with a harness that checks the two agree.

pub mod bench;
pub mod combinatorics;
pub mod error;
pub mod exactnum;
pub mod identities;
pub mod lemmas;
pub mod nested;
pub mod report;
pub mod scalar;
pub mod sequences;

pub use error::{Error, Result};
pub use exactnum::QuadExt;
pub use scalar::Scalar;

/// Exact rational scalar used by the identity layer.
pub type Rational = num_rational::BigRational;
/// `Q(√D)` over the rationals.
pub type Quad = QuadExt<Rational>;
