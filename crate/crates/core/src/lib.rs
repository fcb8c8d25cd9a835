//! Sums of multiple t-values at even arguments.
//!
//! `t(s_1, ..., s_d)` is the nested sum of `1/((2n_1-1)^{s_1} ... (2n_d-1)^{s_d})`
//! over `n_1 > ... > n_d >= 1`, and `T(2n, d)` adds up every `t(2j_1, ..., 2j_d)`
//! with `j_1 + ... + j_d = n`. This crate computes `T(2n, d)` exactly as a
//! rational multiple of `pi^{2n}` along three independent routes, checks the
//! surrounding identities (Bernoulli/Euler numbers, symmetric functions), and
//! evaluates the defining series numerically as an oracle.
//!
//! Series, bivariate series and symmetric polynomials are generic over the
//! coefficient ring; the numeric oracle is generic over the real scalar. The
//! aliases below fix the exact instantiations used by the closed forms.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_traits::{Num, ToPrimitive};

pub mod error;
pub mod exact;
pub mod oracle;
pub mod series;
pub mod sums;
pub mod symmetric;

pub use error::{Error, Result};
pub use exact::{bernoulli, binomial, euler_number, t_even, zeta_even, PiPower};
pub use oracle::{BigFixed, PrecReal, Real, TruncationParams};

/// Exact rational with arbitrary-precision numerator and denominator.
pub type BigRat = num_rational::BigRational;

/// Univariate truncated series over the rationals.
pub type USeries = series::PowerSeries<BigRat>;

/// Bivariate truncated series over the rationals.
pub type BiSeries = series::BivariateSeries<BigRat>;

/// Symmetric polynomial over the rationals in finitely many variables.
pub type SymPoly = symmetric::Polynomial<BigRat>;

/// Fixed-point real with 192 fractional bits (about 57 decimal digits).
pub type Fixed192 = BigFixed<192>;

/// Default oracle value: about 50 significant digits plus guard bits.
pub type PrecReal50 = PrecReal<Fixed192>;

/// A coefficient ring for series and polynomials.
pub trait Coefficient: Num + Clone + Neg<Output = Self> + Debug {
    fn from_bigint(n: &BigInt) -> Self;
}

impl Coefficient for BigRat {
    fn from_bigint(n: &BigInt) -> Self {
        BigRat::from_integer(n.clone())
    }
}

impl Coefficient for BigInt {
    fn from_bigint(n: &BigInt) -> Self {
        n.clone()
    }
}

impl Coefficient for i64 {
    fn from_bigint(n: &BigInt) -> Self {
        n.to_i64().expect("integer coefficient overflows i64")
    }
}

impl Coefficient for f64 {
    fn from_bigint(n: &BigInt) -> Self {
        n.to_f64().unwrap_or(f64::NAN)
    }
}

impl Coefficient for f32 {
    fn from_bigint(n: &BigInt) -> Self {
        n.to_f32().unwrap_or(f32::NAN)
    }
}
