//! Brute-force evaluation of the defining series of multiple t-values.
//!
//! `t(s_1, ..., s_d)` is summed inside-out: with `A_0(n) = 1` and
//! `A_k(n) = sum_{m<n} A_{k-1}(m) / (2m-1)^{s_{d-k+1}}`, the value is
//! `sum_n A_{d-1}(n) / (2n-1)^{s_1}`. One pass over `n <= N` updates every
//! level, so the cost is `O(d N)`.
//!
//! The tail past `N` is estimated from `A_{d-1}(N+1)` times an integral of
//! `(2x-1)^{-s_1}`. For a decreasing convex summand `f`,
//! `int_{N+1}^inf f <= sum_{n>N} f(n) <= int_{N+1/2}^inf f`, and `A_{d-1}` is
//! nondecreasing with a limit bounded the same way level by level. These give
//! the reported error bound whenever every inner argument is at least 2.

mod real;

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::PiPower;

pub use real::{BigFixed, ParseFixedError, Real};

/// A real value with a bound on its absolute error.
#[derive(Clone, Debug, PartialEq)]
pub struct PrecReal<R> {
    pub value: R,
    pub err: f64,
}

impl<R: Real> PrecReal<R> {
    /// Panics if `err` is negative or not finite.
    pub fn new(value: R, err: f64) -> Self {
        assert!(err >= 0.0 && err.is_finite(), "error bound must be finite and >= 0, got {err}");
        PrecReal { value, err }
    }

    pub fn exact(value: R) -> Self {
        PrecReal { value, err: 0.0 }
    }

    pub fn zero() -> Self {
        Self::exact(R::zero())
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    /// `|self - other|` as an `f64`.
    pub fn distance(&self, other: &Self) -> f64 {
        (self.value.clone() - other.value.clone()).to_f64().abs()
    }

    /// Whether the two error intervals overlap.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.distance(other) <= self.err + other.err
    }

    /// Error bound relative to the magnitude of the value.
    pub fn relative_err(&self) -> f64 {
        self.err / self.to_f64().abs()
    }
}

impl<R: Real> Add for PrecReal<R> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let value = self.value + rhs.value;
        let round = R::rounding_error(value.to_f64());
        PrecReal::new(value, self.err + rhs.err + round)
    }
}

impl<R: Real> Sub for PrecReal<R> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        let value = self.value - rhs.value;
        let round = R::rounding_error(value.to_f64());
        PrecReal::new(value, self.err + rhs.err + round)
    }
}

impl<R: Real> Mul for PrecReal<R> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let (a, b) = (self.to_f64().abs(), rhs.to_f64().abs());
        let value = self.value * rhs.value;
        let round = R::rounding_error(value.to_f64());
        let err = a * rhs.err + b * self.err + self.err * rhs.err + round;
        PrecReal::new(value, err)
    }
}

impl<R: Real> fmt::Display for PrecReal<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} +/- {:.3e}", self.value.to_decimal(R::DIGITS as usize), self.err)
    }
}

/// Whether the first-order tail correction is added to the partial sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailOrder {
    None,
    FirstOrder,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TruncationParams {
    terms: u64,
    tail: TailOrder,
}

impl TruncationParams {
    /// `terms` is the cutoff on the outer index (`n_1 <= terms`).
    pub fn new(terms: u64, tail: TailOrder) -> Result<Self> {
        if terms == 0 {
            return Err(Error::InvalidTruncation("need at least one term".into()));
        }
        Ok(TruncationParams { terms, tail })
    }

    /// `tail_order` 0 or 1.
    pub fn with_tail_order(terms: u64, tail_order: u8) -> Result<Self> {
        let tail = match tail_order {
            0 => TailOrder::None,
            1 => TailOrder::FirstOrder,
            k => return Err(Error::InvalidTruncation(format!("tail order {k} is not 0 or 1"))),
        };
        Self::new(terms, tail)
    }

    pub fn terms(&self) -> u64 {
        self.terms
    }

    pub fn tail(&self) -> TailOrder {
        self.tail
    }
}

impl Default for TruncationParams {
    /// One million terms with the first-order tail.
    fn default() -> Self {
        TruncationParams {
            terms: 1_000_000,
            tail: TailOrder::FirstOrder,
        }
    }
}

/// `int_a^inf (2x-1)^{-s} dx = (2a-1)^{1-s} / (2(s-1))`, for `s >= 2`.
fn odd_power_tail(a: f64, s: u32) -> f64 {
    (2.0 * a - 1.0).powf(1.0 - s as f64) / (2.0 * (s as f64 - 1.0))
}

fn validate_args(args: &[u32]) -> Result<()> {
    let first = *args.first().ok_or(Error::EmptyArguments)?;
    if let Some(&s) = args.iter().find(|&&s| s == 0) {
        return Err(Error::NonPositiveArgument(s));
    }
    if first < 2 {
        return Err(Error::Divergent(first));
    }
    Ok(())
}

/// Numeric `t(s_1, ..., s_d)` with `s_1` the outermost (largest index).
///
/// The error bound covers truncation and rounding. It is rigorous when
/// `s_2, ..., s_d >= 2`. If an inner argument equals 1 the inner sums grow
/// like a power of `log n` and have no limit; the bound then adds twice a
/// log-growth correction term and is an estimate rather than a guarantee.
pub fn t_numeric<R: Real>(args: &[u32], params: &TruncationParams) -> Result<PrecReal<R>> {
    validate_args(args)?;
    let depth = args.len();
    let n_max = params.terms;

    // levels[k] holds A_k(n) for k = 1..depth-1; exponents[k] is its argument
    let exponents: Vec<u32> = (0..depth).map(|k| args[(depth - k) % depth]).collect();
    let mut levels: Vec<R> = vec![R::zero(); depth];
    levels[0] = R::one();
    let mut distinct: Vec<u32> = args.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let mut weights: Vec<R> = vec![R::zero(); distinct.len()];
    let weight_of = |s: u32| distinct.binary_search(&s).unwrap();

    let mut sum = R::zero();
    for n in 1..=n_max {
        let base = 2 * n - 1;
        for (w, &s) in weights.iter_mut().zip(&distinct) {
            *w = R::recip_pow(base, s);
        }
        sum = sum + levels[depth - 1].clone() * weights[weight_of(args[0])].clone();
        for k in (1..depth).rev() {
            let inc = levels[k - 1].clone() * weights[weight_of(exponents[k])].clone();
            levels[k] = levels[k].clone() + inc;
        }
    }

    let n = n_max as f64;
    let s1 = args[0];
    let outer = levels[depth - 1].to_f64();
    let lo = odd_power_tail(n + 1.0, s1);
    let hi = odd_power_tail(n + 0.5, s1);

    // upper bound on lim A_{d-1}(n), level by level
    let inner_ones = args[1..].iter().filter(|&&s| s == 1).count();
    let mut limit_upper = 1.0f64;
    for k in 1..depth {
        let s = exponents[k];
        limit_upper = if s >= 2 {
            levels[k].to_f64() + limit_upper * odd_power_tail(n + 0.5, s)
        } else {
            levels[k].to_f64()
        };
    }
    let log_growth = if inner_ones > 0 {
        2.0 * outer * hi * inner_ones as f64 / ((s1 as f64 - 1.0) * (2.0 * n + 1.0).ln())
    } else {
        0.0
    };
    limit_upper *= 1.0 + f64::EPSILON * 8.0;

    let (estimate, tail_err) = match params.tail {
        TailOrder::FirstOrder => {
            let est = outer * hi;
            let below = outer * (hi - lo);
            let above = (limit_upper - outer).max(0.0) * hi;
            (est, below.max(above) + log_growth)
        }
        TailOrder::None => (0.0, limit_upper * hi + log_growth),
    };

    let s_max = *args.iter().max().unwrap() as f64;
    let magnitude = limit_upper.max(1.0) + sum.to_f64().abs();
    let rounding = n * depth as f64 * (s_max + 3.0) * R::rounding_error(magnitude)
        + R::rounding_error(estimate);
    let value = sum + R::from_f64(estimate);
    // f64 evaluation of the bound itself
    let err = (tail_err + rounding) * (1.0 + 1e-9) + f64::EPSILON * estimate.abs();
    Ok(PrecReal::new(value, err))
}

/// Compositions of `n` into `d` positive parts, in colexicographic order.
pub fn compositions(n: u32, d: u32) -> Vec<Vec<u32>> {
    fn rec(left: u32, parts: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 1..=left - (parts - 1) {
            prefix.push(first);
            rec(left - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if d == 0 || d > n {
        return out;
    }
    rec(n, d, &mut Vec::with_capacity(d as usize), &mut out);
    out.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    out
}

/// Numeric `T(2n, d)`: sum of `t(2j_1, ..., 2j_d)` over compositions of `n`.
pub fn tsum_numeric<R: Real>(n: u32, d: u32, params: &TruncationParams) -> Result<PrecReal<R>> {
    if n == 0 || d == 0 {
        return Err(Error::ZeroIndex { what: "tsum_numeric" });
    }
    let mut total = PrecReal::zero();
    for comp in compositions(n, d) {
        let args: Vec<u32> = comp.iter().map(|j| 2 * j).collect();
        total = total + t_numeric::<R>(&args, params)?;
    }
    Ok(total)
}

/// `coeff * pi^pi_exp` evaluated in `R`.
pub fn pi_power_eval<R: Real>(x: &PiPower) -> PrecReal<R> {
    if x.is_zero() {
        return PrecReal::zero();
    }
    let e = x.pi_exp();
    let mut p = R::one();
    for _ in 0..e {
        p = p * R::pi();
    }
    let num: &BigInt = x.coeff().numer();
    let den: &BigInt = x.coeff().denom();
    let value = p.mul_ratio(num, den);
    let err = (e as f64 + 3.0) * R::rounding_error(value.to_f64()) * 1.01;
    PrecReal::new(value, err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, t_even};
    use crate::Fixed192;
    use num_traits::Zero;

    fn params(n: u64) -> TruncationParams {
        TruncationParams::new(n, TailOrder::FirstOrder).unwrap()
    }

    #[test]
    fn rejects_bad_arguments() {
        assert_eq!(t_numeric::<f64>(&[1], &params(10)), Err(Error::Divergent(1)));
        assert_eq!(t_numeric::<f64>(&[], &params(10)), Err(Error::EmptyArguments));
        assert_eq!(
            t_numeric::<f64>(&[2, 0], &params(10)),
            Err(Error::NonPositiveArgument(0))
        );
        assert!(TruncationParams::new(0, TailOrder::None).is_err());
        assert!(TruncationParams::with_tail_order(5, 2).is_err());
    }

    #[test]
    fn t2_close_to_pi_squared_over_8() {
        let v = t_numeric::<f64>(&[2], &params(100_000)).unwrap();
        let exact = std::f64::consts::PI.powi(2) / 8.0;
        assert!((v.value - exact).abs() <= v.err, "{v:?}");
        assert!(v.err < 1e-9);
    }

    #[test]
    fn t22_matches_all_twos() {
        let v = t_numeric::<Fixed192>(&[2, 2], &params(20_000)).unwrap();
        let exact = pi_power_eval::<Fixed192>(&PiPower::new(rat(1, 384), 4));
        assert!(v.agrees_with(&exact), "{v} vs {exact}");
        assert!((v.to_f64() - 0.2536695079).abs() < 1e-9);
    }

    #[test]
    fn t_numeric_without_tail_is_an_upper_bounded_partial_sum() {
        let p = TruncationParams::new(1000, TailOrder::None).unwrap();
        let v = t_numeric::<f64>(&[2], &p).unwrap();
        let exact = std::f64::consts::PI.powi(2) / 8.0;
        assert!(v.value < exact);
        assert!(exact - v.value <= v.err);
    }

    #[test]
    fn inner_one_gives_finite_estimate() {
        // t(2,1) = 7 zeta(3) / 16 - pi^2 log 2 / 8 ... only check finiteness and sanity
        let v = t_numeric::<f64>(&[2, 1], &params(50_000)).unwrap();
        assert!(v.err.is_finite() && v.err > 0.0);
        assert!(v.value > 0.0 && v.value < 1.0);
    }

    #[test]
    fn compositions_colex() {
        assert_eq!(
            compositions(4, 2),
            vec![vec![3, 1], vec![2, 2], vec![1, 3]]
        );
        assert_eq!(compositions(3, 3), vec![vec![1, 1, 1]]);
        assert!(compositions(2, 3).is_empty());
        for n in 1..=8 {
            for d in 1..=n {
                let c = compositions(n, d);
                assert_eq!(BigInt::from(c.len()), crate::exact::binomial(n as u64 - 1, d as i64 - 1));
                assert!(c.iter().all(|p| p.iter().sum::<u32>() == n));
            }
        }
    }

    #[test]
    fn tsum_numeric_small() {
        let v = tsum_numeric::<f64>(3, 2, &params(100_000)).unwrap();
        let exact = std::f64::consts::PI.powi(6) / 3840.0;
        assert!((v.value - exact).abs() <= v.err + 1e-15);
        let z = tsum_numeric::<f64>(2, 3, &params(10)).unwrap();
        assert_eq!(z.value, 0.0);
        assert_eq!(z.err, 0.0);
    }

    #[test]
    fn pi_power_eval_values() {
        let v = pi_power_eval::<f64>(&t_even(1).unwrap());
        assert!((v.value - 1.2337005501361698).abs() < 1e-15);
        let z = pi_power_eval::<Fixed192>(&PiPower::zero(4));
        assert_eq!(z.err, 0.0);
        assert_eq!(z.value, Fixed192::zero());
        let w = pi_power_eval::<Fixed192>(&PiPower::new(rat(1, 384), 4));
        assert_eq!(&w.value.to_decimal(10), "0.2536695079");
    }

    #[test]
    fn refinement_never_loosens_the_bound() {
        for args in [&[2u32][..], &[4, 2], &[2, 2, 2], &[6, 2, 4]] {
            let mut last = f64::INFINITY;
            for n in [10u64, 100, 1_000, 10_000, 100_000] {
                let v = t_numeric::<Fixed192>(args, &params(n)).unwrap();
                assert!(v.err <= last, "{args:?}, N = {n}: {} > {last}", v.err);
                last = v.err;
            }
        }
    }

    #[test]
    fn prec_real_arithmetic_accumulates_bounds() {
        let a = PrecReal::new(1.0f64, 1e-10);
        let b = PrecReal::new(2.0f64, 2e-10);
        assert!((a.clone() + b.clone()).err >= 3e-10);
        assert!((a.clone() - b.clone()).err >= 3e-10);
        assert!((a * b).err >= 4e-10);
    }

    #[test]
    #[should_panic]
    fn prec_real_rejects_negative_err() {
        PrecReal::new(1.0f64, -1.0);
    }
}
