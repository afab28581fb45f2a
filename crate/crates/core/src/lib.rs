//! Exact character theory for unitary groups of AF algebras.
//!
//! The crate is organised bottom-up:
//!
//! - [`combinatorics`]: partitions, signatures and Gelfand–Tsetlin patterns.
//! - [`symfunc`]: Schur polynomials, dimension formulas, power-sum expansions,
//!   symmetric-group dimensions and Littlewood–Richardson coefficients.
//! - [`ucharacters`]: irreducible characters of `U(d)` and their
//!   tensor/restriction decompositions.
//! - [`moments`]: weight distributions of `χ_Λ(e^{itF})`, closed-form moments
//!   through the Harish-Chandra–Itzykson–Zuber integral, Haar Monte Carlo.
//! - [`afalgebra`]: Bratteli diagrams, traces, `det_φ`, limit characters and
//!   ergodic approximation sequences.
//! - [`poisson`]: the Poisson-series machinery for stable AF algebras.
//!
//! Evaluation routines are generic over [`Scalar`], so the same code runs
//! over exact rationals, exact Gaussian rationals and `f32`/`f64` (real or
//! complex). The aliases below name the instantiations used throughout.

pub mod afalgebra;
pub mod combinatorics;
mod error;
mod linalg;
pub mod moments;
pub mod poisson;
mod scalar;
pub mod symfunc;
pub mod ucharacters;

pub use error::{Error, Result};
pub use linalg::determinant;
pub use scalar::Scalar;

/// Arbitrary-precision rational number.
pub type Rational = num_rational::BigRational;
/// Exact element of `Q(i)`.
pub type GaussianRational = num_complex::Complex<Rational>;
/// Double-precision complex number.
pub type C64 = num_complex::Complex<f64>;
/// Single-precision complex number.
pub type C32 = num_complex::Complex<f32>;
