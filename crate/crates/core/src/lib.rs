//! Exact algebra of virtual motives of Hilbert schemes of points.
//!
//! Tate-type motivic weights are Laurent polynomials in the generator
//! `u = -L^(1/2)`. With this choice the power structure's sign rule
//! `sigma_n(-L^(1/2)) = (-L^(1/2))^n` turns Adams operations into the monomial
//! substitution `u -> u^k`, and the plethystic exponential of a monomial term
//! is a plain product factor.
//!
//! The crate is organized bottom-up:
//!
//! * [`ring`]: Laurent polynomials generic over a `num-traits` scalar,
//!   reduced rational functions, truncated Laurent expansions at infinity;
//! * [`series`]: truncated power series in `t` generic over the coefficient
//!   ring, with infinite-product expansion;
//! * [`plethysm`]: `Exp`, `Log` and powers by motivic classes;
//! * [`classes`]: named classes (`[GL_n]`, Grassmannians, virtual projective
//!   spaces) and the weight-polynomial and Euler realizations;
//! * [`dtgen`]: generating functions of Hilbert schemes of points, each by one
//!   or more independent routes;
//! * [`partitions`]: brute-force enumeration of d-dimensional partitions;
//! * [`verify`]: identity suites shared by the CLI and the tests.

pub mod classes;
pub mod dtgen;
mod error;
pub mod partitions;
pub mod plethysm;
pub mod ring;
pub mod series;
pub mod verify;

pub use error::{Error, Result};

use num_bigint::BigInt;
use num_rational::BigRational;

pub use classes::{BettiVector, HalfInt, WeightPoly};
pub use ring::{Laurent, RatWeight, TruncLaurent};
pub use series::TruncSeries;

/// Tate-type motivic weight: a Laurent polynomial in `u` with integer coefficients.
pub type MotWeight = Laurent<BigInt>;
/// Laurent polynomial in `u` with rational coefficients.
pub type QWeight = Laurent<BigRational>;

pub type MotSeries = TruncSeries<MotWeight>;
pub type RatSeries = TruncSeries<RatWeight>;
pub type QSeries = TruncSeries<QWeight>;
pub type WeightSeries = TruncSeries<WeightPoly>;
pub type IntSeries = TruncSeries<BigInt>;
pub type LaurentTailSeries = TruncSeries<TruncLaurent>;

/// Default truncation order for product expansions over [`MotWeight`].
pub const DEFAULT_PRODUCT_ORDER: usize = 14;
/// Default truncation order for work over [`RatWeight`].
pub const DEFAULT_RATIONAL_ORDER: usize = 8;
