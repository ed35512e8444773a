//! Exact q-series arithmetic for the level-p Hauptmoduln φ^(p), the U_p
//! operator, decomposition into polynomials in φ^(p), and drivers that check
//! the resulting p-adic congruences.
//!
//! The arithmetic is generic over the coefficient ring ([`Scalar`]); the
//! aliases below fix it to arbitrary-precision integers, which is what every
//! divisibility check uses.

pub mod digits;
pub mod error;
pub mod eta;
pub mod hecke;
pub mod phipoly;
pub mod scalar;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use phipoly::{PSetSpec, PhiPoly, PhiPowerCache, PhiPowerTable};
pub use scalar::{ExactInteger, Scalar};
pub use series::QSeries;

pub use num_bigint::BigInt;

/// q-series over ℤ.
pub type IntSeries = QSeries<BigInt>;
/// q-series over ℚ.
pub type RatSeries = QSeries<num_rational::BigRational>;
/// q-series with floating-point coefficients.
pub type F64Series = QSeries<f64>;
/// Polynomial in φ^(p) over ℤ.
pub type IntPhiPoly = PhiPoly<BigInt>;
/// Shared φ-power cache over ℤ.
pub type IntPhiCache = PhiPowerCache<BigInt>;
