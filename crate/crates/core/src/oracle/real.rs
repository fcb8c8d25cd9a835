use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, Sign};
use num_traits::{FloatConst, Num, One, ToPrimitive, Zero};

use crate::BigRat;

/// Real scalar used by the numeric oracle.
///
/// Implemented for `f32`, `f64` and [`BigFixed`]. Error bookkeeping goes
/// through [`Real::rounding_error`], which bounds the absolute error of one
/// rounded operation whose result has the given magnitude.
pub trait Real: Num + Clone + PartialOrd + Neg<Output = Self> + fmt::Debug {
    /// Decimal digits this scalar carries.
    const DIGITS: u32;

    fn from_u64(x: u64) -> Self;

    /// Nearest representable value to `x` (exact for dyadic scalars).
    fn from_f64(x: f64) -> Self;

    /// `num / den`, rounded once.
    fn from_ratio(num: &BigInt, den: &BigInt) -> Self;

    fn pi() -> Self;

    fn to_f64(&self) -> f64;

    fn rounding_error(magnitude: f64) -> f64;

    fn div_u64(&self, d: u64) -> Self;

    /// `self * num / den`; the default rounds the ratio first.
    fn mul_ratio(&self, num: &BigInt, den: &BigInt) -> Self {
        self.clone() * Self::from_ratio(num, den)
    }

    /// Fixed-point decimal rendering with `frac_digits` digits after the point.
    fn to_decimal(&self, frac_digits: usize) -> String;

    /// `1 / base^exp`, dividing in chunks that fit a `u64`.
    fn recip_pow(base: u64, exp: u32) -> Self {
        let mut v = Self::one();
        let mut left = exp;
        while left > 0 {
            let mut chunk = base;
            let mut k = 1;
            while k < left {
                match chunk.checked_mul(base) {
                    Some(c) => {
                        chunk = c;
                        k += 1;
                    }
                    None => break,
                }
            }
            v = v.div_u64(chunk);
            left -= k;
        }
        v
    }
}

macro_rules! impl_real_float {
    ($t:ty, $digits:expr) => {
        impl Real for $t {
            const DIGITS: u32 = $digits;

            fn from_u64(x: u64) -> Self {
                x as $t
            }

            fn from_f64(x: f64) -> Self {
                x as $t
            }

            fn from_ratio(num: &BigInt, den: &BigInt) -> Self {
                BigRat::new(num.clone(), den.clone())
                    .to_f64()
                    .unwrap_or(f64::NAN) as $t
            }

            fn pi() -> Self {
                <$t as FloatConst>::PI()
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }

            fn rounding_error(magnitude: f64) -> f64 {
                <$t>::EPSILON as f64 * magnitude.abs()
            }

            fn div_u64(&self, d: u64) -> Self {
                *self / d as $t
            }

            fn to_decimal(&self, frac_digits: usize) -> String {
                format!("{:.*}", frac_digits, self)
            }
        }
    };
}

impl_real_float!(f32, 7);
impl_real_float!(f64, 15);

/// Binary fixed-point real: the value is `mant / 2^BITS`.
///
/// Addition and subtraction are exact; multiplication and division truncate
/// to one unit in the last place (`2^-BITS`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BigFixed<const BITS: u32> {
    mant: BigInt,
}

impl<const BITS: u32> BigFixed<BITS> {
    pub fn from_mantissa(mant: BigInt) -> Self {
        BigFixed { mant }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    /// Exact rational value.
    pub fn to_rational(&self) -> BigRat {
        BigRat::new(self.mant.clone(), BigInt::one() << BITS)
    }

    pub fn ulp() -> f64 {
        2f64.powi(-(BITS as i32))
    }

    fn scale() -> BigInt {
        BigInt::one() << BITS
    }
}

impl<const BITS: u32> fmt::Debug for BigFixed<BITS> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigFixed<{BITS}>({})", self.to_decimal(Self::DIGITS as usize))
    }
}

impl<const BITS: u32> fmt::Display for BigFixed<BITS> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(Self::DIGITS as usize))
    }
}

impl<const BITS: u32> PartialOrd for BigFixed<BITS> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.mant.cmp(&other.mant))
    }
}

impl<const BITS: u32> Add for BigFixed<BITS> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        BigFixed { mant: self.mant + rhs.mant }
    }
}

impl<const BITS: u32> Sub for BigFixed<BITS> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        BigFixed { mant: self.mant - rhs.mant }
    }
}

impl<const BITS: u32> Mul for BigFixed<BITS> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        BigFixed { mant: (self.mant * rhs.mant) >> BITS }
    }
}

impl<const BITS: u32> Div for BigFixed<BITS> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        BigFixed { mant: (self.mant << BITS) / rhs.mant }
    }
}

impl<const BITS: u32> Rem for BigFixed<BITS> {
    type Output = Self;
    fn rem(self, rhs: Self) -> Self {
        BigFixed { mant: self.mant % rhs.mant }
    }
}

impl<const BITS: u32> Neg for BigFixed<BITS> {
    type Output = Self;
    fn neg(self) -> Self {
        BigFixed { mant: -self.mant }
    }
}

impl<const BITS: u32> Zero for BigFixed<BITS> {
    fn zero() -> Self {
        BigFixed { mant: BigInt::zero() }
    }
    fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }
}

impl<const BITS: u32> One for BigFixed<BITS> {
    fn one() -> Self {
        BigFixed { mant: Self::scale() }
    }
}

/// Error returned when a decimal literal cannot be parsed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseFixedError;

impl fmt::Display for ParseFixedError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("invalid fixed-point literal")
    }
}

impl std::error::Error for ParseFixedError {}

impl<const BITS: u32> Num for BigFixed<BITS> {
    type FromStrRadixErr = ParseFixedError;

    /// Accepts `[-]digits[.digits]` in the given radix.
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, ParseFixedError> {
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(ParseFixedError);
        }
        let digits = format!("{int_part}{frac_part}");
        let num = BigInt::parse_bytes(digits.as_bytes(), radix).ok_or(ParseFixedError)?;
        let den = BigInt::from(radix).pow(frac_part.len() as u32);
        let v = Self::from_ratio(&num, &den);
        Ok(if neg { -v } else { v })
    }
}

fn pi_cache() -> &'static Mutex<Vec<(u32, BigInt)>> {
    static CACHE: OnceLock<Mutex<Vec<(u32, BigInt)>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(Vec::new()))
}

/// `atan(1/x) * 2^bits`, truncated termwise.
fn atan_recip(x: u64, bits: u32) -> BigInt {
    let x2 = BigInt::from(x) * x;
    let mut power = (BigInt::one() << bits) / x;
    let mut sum = power.clone();
    let mut k: u64 = 1;
    loop {
        power /= &x2;
        if power.is_zero() {
            break;
        }
        let term = &power / (2 * k + 1);
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
    sum
}

/// `pi * 2^bits` to within one unit, from Machin's formula with guard bits.
fn pi_mantissa(bits: u32) -> BigInt {
    let mut cache = pi_cache().lock().unwrap();
    if let Some((_, m)) = cache.iter().find(|(b, _)| *b == bits) {
        return m.clone();
    }
    let guard = 32;
    let g = bits + guard;
    let pi = BigInt::from(16) * atan_recip(5, g) - BigInt::from(4) * atan_recip(239, g);
    let m = pi >> guard;
    cache.push((bits, m.clone()));
    m
}

impl<const BITS: u32> Real for BigFixed<BITS> {
    const DIGITS: u32 = (BITS as u64 * 30103 / 100000) as u32;

    fn from_u64(x: u64) -> Self {
        BigFixed { mant: BigInt::from(x) << BITS }
    }

    fn from_f64(x: f64) -> Self {
        if x == 0.0 || !x.is_finite() {
            return Self::zero();
        }
        let bits = x.abs().to_bits();
        let exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, e) = if exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), exp - 1075)
        };
        let shift = e + BITS as i64;
        let m = if shift >= 0 {
            BigInt::from(mant) << shift as u64
        } else {
            BigInt::from(mant) >> (-shift) as u64
        };
        BigFixed { mant: if x < 0.0 { -m } else { m } }
    }

    fn from_ratio(num: &BigInt, den: &BigInt) -> Self {
        BigFixed { mant: (num << BITS) / den }
    }

    fn pi() -> Self {
        BigFixed { mant: pi_mantissa(BITS) }
    }

    fn to_f64(&self) -> f64 {
        // shift into f64 range before converting
        let bits = self.mant.bits() as i64;
        let drop = (bits - 60).max(0);
        let top = (&self.mant >> drop as u64).to_f64().unwrap_or(0.0);
        top * 2f64.powi((drop - BITS as i64) as i32)
    }

    fn rounding_error(magnitude: f64) -> f64 {
        Self::ulp() * (1.0 + magnitude.abs())
    }

    fn div_u64(&self, d: u64) -> Self {
        BigFixed { mant: &self.mant / d }
    }

    fn mul_ratio(&self, num: &BigInt, den: &BigInt) -> Self {
        BigFixed { mant: &self.mant * num / den }
    }

    fn to_decimal(&self, frac_digits: usize) -> String {
        let scaled = (&self.mant * BigInt::from(10).pow(frac_digits as u32)) >> BITS;
        let negative = self.mant.sign() == Sign::Minus;
        let digits = scaled.magnitude().to_str_radix(10);
        let padded = if digits.len() <= frac_digits {
            format!("{}{}", "0".repeat(frac_digits + 1 - digits.len()), digits)
        } else {
            digits
        };
        let (ip, fp) = padded.split_at(padded.len() - frac_digits);
        let sign = if negative { "-" } else { "" };
        if frac_digits == 0 {
            format!("{sign}{ip}")
        } else {
            format!("{sign}{ip}.{fp}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type F = BigFixed<192>;

    const PI_60: &str = "3.141592653589793238462643383279502884197169399375105820974944";

    #[test]
    fn pi_digits() {
        let pi = F::pi().to_decimal(55);
        assert_eq!(pi, PI_60[..57]);
        let pi704 = BigFixed::<704>::pi().to_decimal(60);
        assert_eq!(&pi704, PI_60);
    }

    #[test]
    fn arithmetic() {
        let a = F::from_u64(3);
        let b = F::from_u64(4);
        assert_eq!((a.clone() * b.clone()).to_f64(), 12.0);
        assert_eq!((a.clone() / b.clone()).to_f64(), 0.75);
        assert_eq!((b.clone() % a.clone()).to_f64(), 1.0);
        assert!(a < b);
        assert_eq!(F::from_f64(-0.375).to_f64(), -0.375);
        assert_eq!(F::from_f64(1e-30).to_f64(), 1e-30);
    }

    #[test]
    fn parse_and_format() {
        let x = F::from_str_radix("-1.25", 10).unwrap();
        assert_eq!(x.to_f64(), -1.25);
        assert_eq!(x.to_decimal(3), "-1.250");
        assert_eq!(F::from_str_radix("0.5", 10).unwrap().to_decimal(0), "0");
        assert!(F::from_str_radix("abc", 10).is_err());
        assert_eq!(F::from_ratio(&1.into(), &8.into()).to_decimal(4), "0.1250");
    }

    #[test]
    fn recip_pow_matches_rational() {
        let v = F::recip_pow(3, 50);
        let exact = BigRat::new(BigInt::one(), BigInt::from(3).pow(50));
        let diff = (v.to_rational() - exact).to_f64().unwrap().abs();
        assert!(diff <= 50.0 * F::ulp());
        let w = f64::recip_pow(1_999_999, 4);
        assert!((w - 1.999_999f64.powi(-4) * 1e-24).abs() < 1e-36);
    }

    #[test]
    fn digits_constant() {
        assert_eq!(F::DIGITS, 57);
        assert_eq!(<f64 as Real>::DIGITS, 15);
    }
}
