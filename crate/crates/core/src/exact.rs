//! Exact arithmetic: binomials, factorials, Bernoulli and Euler numbers, and
//! the even zeta and t-values as rational multiples of even powers of pi.
//!
//! Bernoulli numbers follow the `x/(e^x - 1)` convention, so `B_1 = -1/2`.
//! Only even indices feed the closed forms, but the sign is fixed here.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::BigRat;

/// Binomial coefficient, zero when `b < 0` or `b > a`.
pub fn binomial(a: u64, b: i64) -> BigInt {
    if b < 0 || b as u64 > a {
        return BigInt::zero();
    }
    let b = (b as u64).min(a - b as u64);
    let mut acc = BigInt::one();
    for i in 0..b {
        // acc * (a - i) is always divisible by (i + 1) at this point
        acc = acc * BigInt::from(a - i) / BigInt::from(i + 1);
    }
    acc
}

/// `2^k` as a big integer.
pub fn pow2(k: u64) -> BigInt {
    BigInt::one() << k
}

/// `4^k` as a big integer.
pub fn pow4(k: u64) -> BigInt {
    BigInt::one() << (2 * k)
}

fn factorial_table() -> &'static RwLock<Vec<BigInt>> {
    static TABLE: OnceLock<RwLock<Vec<BigInt>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(vec![BigInt::one()]))
}

/// `m!`, memoized.
pub fn factorial(m: usize) -> BigInt {
    if let Some(v) = factorial_table().read().unwrap().get(m) {
        return v.clone();
    }
    let mut table = factorial_table().write().unwrap();
    while table.len() <= m {
        let k = table.len();
        let next = &table[k - 1] * BigInt::from(k);
        table.push(next);
    }
    table[m].clone()
}

/// Memo table for Bernoulli numbers, grown on demand.
///
/// Entries are appended under a write lock and never modified afterwards.
pub struct BernoulliCache {
    table: RwLock<Vec<BigRat>>,
}

impl BernoulliCache {
    pub fn new() -> Self {
        BernoulliCache {
            table: RwLock::new(vec![BigRat::one()]),
        }
    }

    pub fn get(&self, m: usize) -> BigRat {
        if let Some(v) = self.table.read().unwrap().get(m) {
            return v.clone();
        }
        let mut table = self.table.write().unwrap();
        // sum_{k=0}^{j} binom(j+1, k) B_k = 0 for j >= 1
        while table.len() <= m {
            let j = table.len();
            let mut acc = BigRat::zero();
            for (k, bk) in table.iter().enumerate() {
                if bk.is_zero() {
                    continue;
                }
                acc += BigRat::from_integer(binomial(j as u64 + 1, k as i64)) * bk;
            }
            let bj = -acc / BigRat::from_integer(BigInt::from(j + 1));
            table.push(bj);
        }
        table[m].clone()
    }

    pub fn len(&self) -> usize {
        self.table.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl Default for BernoulliCache {
    fn default() -> Self {
        Self::new()
    }
}

/// Memo table for Euler (secant) numbers, grown on demand.
///
/// Only even indices are stored; odd Euler numbers are zero.
pub struct EulerCache {
    even: RwLock<Vec<BigInt>>,
}

impl EulerCache {
    pub fn new() -> Self {
        EulerCache {
            even: RwLock::new(vec![BigInt::one()]),
        }
    }

    pub fn get(&self, m: usize) -> BigInt {
        if m % 2 == 1 {
            return BigInt::zero();
        }
        let half = m / 2;
        if let Some(v) = self.even.read().unwrap().get(half) {
            return v.clone();
        }
        let mut even = self.even.write().unwrap();
        // cos * sec = 1 gives E_{2j} = -sum_{k=1}^{j} binom(2j, 2k) E_{2j-2k}
        while even.len() <= half {
            let j = even.len();
            let mut acc = BigInt::zero();
            for k in 1..=j {
                acc += binomial(2 * j as u64, 2 * k as i64) * &even[j - k];
            }
            even.push(-acc);
        }
        even[half].clone()
    }
}

impl Default for EulerCache {
    fn default() -> Self {
        Self::new()
    }
}

fn bernoulli_cache() -> &'static BernoulliCache {
    static CACHE: OnceLock<BernoulliCache> = OnceLock::new();
    CACHE.get_or_init(BernoulliCache::new)
}

fn euler_cache() -> &'static EulerCache {
    static CACHE: OnceLock<EulerCache> = OnceLock::new();
    CACHE.get_or_init(EulerCache::new)
}

/// Bernoulli number `B_m` from `x/(e^x - 1) = sum B_j x^j / j!`.
pub fn bernoulli(m: usize) -> BigRat {
    bernoulli_cache().get(m)
}

/// Euler number `E_m` from `sec x = sum (-1)^j E_{2j} x^{2j} / (2j)!`.
pub fn euler_number(m: usize) -> BigInt {
    euler_cache().get(m)
}

/// A value `coeff * pi^pi_exp` with an even, non-negative exponent.
#[derive(Clone, Debug)]
pub struct PiPower {
    coeff: BigRat,
    pi_exp: u32,
}

impl PiPower {
    /// Panics if `pi_exp` is odd.
    pub fn new(coeff: BigRat, pi_exp: u32) -> Self {
        assert!(pi_exp.is_multiple_of(2), "pi exponent must be even, got {pi_exp}");
        PiPower { coeff, pi_exp }
    }

    pub fn zero(pi_exp: u32) -> Self {
        Self::new(BigRat::zero(), pi_exp)
    }

    pub fn rational(coeff: BigRat) -> Self {
        Self::new(coeff, 0)
    }

    pub fn coeff(&self) -> &BigRat {
        &self.coeff
    }

    pub fn pi_exp(&self) -> u32 {
        self.pi_exp
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn scale(&self, k: &BigRat) -> Self {
        PiPower::new(&self.coeff * k, self.pi_exp)
    }

    /// Multiplies by `pi^extra`.
    pub fn times_pi(&self, extra: u32) -> Self {
        PiPower::new(self.coeff.clone(), self.pi_exp + extra)
    }

    /// Sum of two values; `None` when both are nonzero with different
    /// exponents (the result would not be a single pi power).
    pub fn checked_add(&self, other: &PiPower) -> Option<PiPower> {
        if self.is_zero() {
            return Some(other.clone());
        }
        if other.is_zero() {
            return Some(self.clone());
        }
        if self.pi_exp != other.pi_exp {
            return None;
        }
        Some(PiPower::new(&self.coeff + &other.coeff, self.pi_exp))
    }
}

impl PartialEq for PiPower {
    fn eq(&self, other: &Self) -> bool {
        (self.coeff.is_zero() && other.coeff.is_zero())
            || (self.pi_exp == other.pi_exp && self.coeff == other.coeff)
    }
}

impl Eq for PiPower {}

impl Add for PiPower {
    type Output = PiPower;

    fn add(self, rhs: PiPower) -> PiPower {
        let (a, b) = (self.pi_exp, rhs.pi_exp);
        self.checked_add(&rhs)
            .unwrap_or_else(|| panic!("adding pi^{a} and pi^{b} terms"))
    }
}

impl Sub for PiPower {
    type Output = PiPower;

    fn sub(self, rhs: PiPower) -> PiPower {
        self + (-rhs)
    }
}

impl Neg for PiPower {
    type Output = PiPower;

    fn neg(self) -> PiPower {
        PiPower::new(-self.coeff, self.pi_exp)
    }
}

impl Mul for PiPower {
    type Output = PiPower;

    fn mul(self, rhs: PiPower) -> PiPower {
        PiPower::new(self.coeff * rhs.coeff, self.pi_exp + rhs.pi_exp)
    }
}

impl<'a> Mul<&'a PiPower> for &'a PiPower {
    type Output = PiPower;

    fn mul(self, rhs: &PiPower) -> PiPower {
        PiPower::new(&self.coeff * &rhs.coeff, self.pi_exp + rhs.pi_exp)
    }
}

impl fmt::Display for PiPower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pi_exp {
            _ if self.coeff.is_zero() => write!(f, "0"),
            0 => write!(f, "{}", self.coeff),
            e => write!(f, "{}*pi^{}", self.coeff, e),
        }
    }
}

/// `zeta(2n) = (-1)^{n+1} B_{2n} (2 pi)^{2n} / (2 (2n)!)`.
pub fn zeta_even(n: u32) -> Result<PiPower> {
    if n == 0 {
        return Err(Error::ZeroIndex { what: "zeta_even" });
    }
    let m = 2 * n as usize;
    let b = bernoulli(m);
    let scale = BigRat::new(pow2(m as u64), BigInt::from(2) * factorial(m));
    let mut coeff = b * scale;
    if n.is_multiple_of(2) {
        coeff = -coeff;
    }
    debug_assert!(coeff.is_positive());
    Ok(PiPower::new(coeff, 2 * n))
}

/// `t(2n) = (1 - 2^{-2n}) zeta(2n)`, the sum of `1/(2k-1)^{2n}`.
pub fn t_even(n: u32) -> Result<PiPower> {
    if n == 0 {
        return Err(Error::ZeroIndex { what: "t_even" });
    }
    let z = zeta_even(n)?;
    let p = pow4(n as u64);
    let factor = BigRat::new(&p - BigInt::one(), p);
    Ok(z.scale(&factor))
}

/// Reduces `num/den` and returns it as a `BigRat`; convenience for tests and
/// literal tables.
pub fn rat(num: i64, den: i64) -> BigRat {
    BigRat::new(BigInt::from(num), BigInt::from(den))
}

/// `gcd(|numer|, denom) == 1` and `denom > 0`.
pub fn is_normalized(q: &BigRat) -> bool {
    q.denom().is_positive() && q.numer().abs().gcd(q.denom()).is_one()
}
