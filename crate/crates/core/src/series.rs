//! Truncated formal power series in one variable and in two variables.
//!
//! The generating function of `T(2n,d)` is handled in the normalized variable
//! `y = pi^2 u / 4`, where `cos(pi sqrt(u) / 2) = c(y)` with
//! `c(y) = sum (-1)^n y^n / (2n)!`. Every coefficient stays rational and the
//! factor `pi^{2n} / 4^n` is reattached in [`crate::sums`].
//!
//! Binary operations truncate to the smaller of the two orders and never
//! extend the order of a series.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial, factorial};
use crate::{BigRat, Coefficient};

/// A power series `sum_{k=0}^{K} a_k y^k`, truncated at order `K`.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeries<T> {
    coeffs: Vec<T>,
}

impl<T: Coefficient> PowerSeries<T> {
    /// Builds a series of order `coeffs.len() - 1`. Panics on an empty vector.
    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least a constant term");
        PowerSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![T::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(T::one(), order)
    }

    pub fn constant(c: T, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `y^k`; zero beyond the truncation order.
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        PowerSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn scale(&self, k: &T) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| c.clone() * k.clone()).collect(),
        }
    }

    /// `f(lambda * y)`: multiplies the `k`-th coefficient by `lambda^k`.
    pub fn rescale_variable(&self, lambda: &T) -> Self {
        let mut p = T::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c.clone() * p.clone());
            p = p * lambda.clone();
        }
        PowerSeries { coeffs }
    }

    /// Multiplies by `y^shift`, keeping the order.
    pub fn shift(&self, shift: usize) -> Self {
        let mut out = Self::zero(self.order());
        for k in shift..=self.order() {
            out.coeffs[k] = self.coeffs[k - shift].clone();
        }
        out
    }

    /// `1/a` up to the order of `a`; requires a nonzero constant term.
    pub fn recip(&self) -> Result<Self> {
        let a0 = self.coeffs[0].clone();
        if a0.is_zero() {
            return Err(Error::NonUnitSeries);
        }
        let inv0 = T::one() / a0;
        let mut out: Vec<T> = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for n in 1..=self.order() {
            let mut acc = T::zero();
            for k in 1..=n {
                acc = acc + self.coeffs[k].clone() * out[n - k].clone();
            }
            out.push(-(acc * inv0.clone()));
        }
        Ok(PowerSeries { coeffs: out })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl<T: Coefficient> Add for &PowerSeries<T> {
    type Output = PowerSeries<T>;

    fn add(self, rhs: &PowerSeries<T>) -> PowerSeries<T> {
        let k = self.order().min(rhs.order());
        PowerSeries {
            coeffs: (0..=k)
                .map(|i| self.coeffs[i].clone() + rhs.coeffs[i].clone())
                .collect(),
        }
    }
}

impl<T: Coefficient> Sub for &PowerSeries<T> {
    type Output = PowerSeries<T>;

    fn sub(self, rhs: &PowerSeries<T>) -> PowerSeries<T> {
        let k = self.order().min(rhs.order());
        PowerSeries {
            coeffs: (0..=k)
                .map(|i| self.coeffs[i].clone() - rhs.coeffs[i].clone())
                .collect(),
        }
    }
}

impl<T: Coefficient> Mul for &PowerSeries<T> {
    type Output = PowerSeries<T>;

    fn mul(self, rhs: &PowerSeries<T>) -> PowerSeries<T> {
        let k = self.order().min(rhs.order());
        let mut out = vec![T::zero(); k + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(k + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(k + 1 - i) {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        PowerSeries { coeffs: out }
    }
}

impl<T: Coefficient> Neg for &PowerSeries<T> {
    type Output = PowerSeries<T>;

    fn neg(self) -> PowerSeries<T> {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Coefficient> $tr for PowerSeries<T> {
            type Output = PowerSeries<T>;
            fn $m(self, rhs: PowerSeries<T>) -> PowerSeries<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// A bivariate series `sum a_{k,d} y^k v^d` with `k <= K`, `d <= D`.
#[derive(Clone, Debug, PartialEq)]
pub struct BivariateSeries<T> {
    order_y: usize,
    order_v: usize,
    // row-major: index k * (order_v + 1) + d
    coeffs: Vec<T>,
}

impl<T: Coefficient> BivariateSeries<T> {
    pub fn zero(order_y: usize, order_v: usize) -> Self {
        BivariateSeries {
            order_y,
            order_v,
            coeffs: vec![T::zero(); (order_y + 1) * (order_v + 1)],
        }
    }

    pub fn order_y(&self) -> usize {
        self.order_y
    }

    pub fn order_v(&self) -> usize {
        self.order_v
    }

    fn index(&self, k: usize, d: usize) -> usize {
        k * (self.order_v + 1) + d
    }

    /// Coefficient of `y^k v^d`; zero outside the truncation box.
    pub fn coeff(&self, k: usize, d: usize) -> T {
        if k > self.order_y || d > self.order_v {
            return T::zero();
        }
        self.coeffs[self.index(k, d)].clone()
    }

    pub fn set(&mut self, k: usize, d: usize, value: T) {
        let i = self.index(k, d);
        self.coeffs[i] = value;
    }

    /// The series in `y` obtained by fixing the power `v^d`.
    pub fn column(&self, d: usize) -> PowerSeries<T> {
        PowerSeries::from_coeffs((0..=self.order_y).map(|k| self.coeff(k, d)).collect())
    }

    /// Multiplies by a series in `y` alone, truncating `y` to the smaller order.
    pub fn mul_univariate(&self, f: &PowerSeries<T>) -> Self {
        let order_y = self.order_y.min(f.order());
        let mut out = Self::zero(order_y, self.order_v);
        for k in 0..=order_y {
            for d in 0..=self.order_v {
                let mut acc = T::zero();
                for j in 0..=k {
                    let c = self.coeff(j, d);
                    if !c.is_zero() {
                        acc = acc + f.coeff(k - j) * c;
                    }
                }
                out.set(k, d, acc);
            }
        }
        out
    }

    /// `f((1 - v) y)`, expanding `(1 - v)^k` binomially row by row.
    pub fn substitute_one_minus_v(f: &PowerSeries<T>, order_v: usize) -> Self {
        let mut out = Self::zero(f.order(), order_v);
        for k in 0..=f.order() {
            let a = f.coeff(k);
            if a.is_zero() {
                continue;
            }
            for d in 0..=k.min(order_v) {
                let b = T::from_bigint(&binomial(k as u64, d as i64));
                let term = a.clone() * b;
                out.set(k, d, if d % 2 == 0 { term } else { -term });
            }
        }
        out
    }
}

/// `c(y) = sum_{n=0}^{K} (-1)^n y^n / (2n)!`, so that `cos(x) = c(x^2)`.
pub fn cos_sqrt_series(order: usize) -> PowerSeries<BigRat> {
    PowerSeries::from_coeffs(
        (0..=order)
            .map(|n| {
                let q = BigRat::new(BigInt::one(), factorial(2 * n));
                if n % 2 == 0 {
                    q
                } else {
                    -q
                }
            })
            .collect(),
    )
}

/// `s(y) = sum_{n=0}^{K} (-1)^n y^n / (2n+1)!`, so that `sin(x)/x = s(x^2)`.
pub fn sinc_sqrt_series(order: usize) -> PowerSeries<BigRat> {
    PowerSeries::from_coeffs(
        (0..=order)
            .map(|n| {
                let q = BigRat::new(BigInt::one(), factorial(2 * n + 1));
                if n % 2 == 0 {
                    q
                } else {
                    -q
                }
            })
            .collect(),
    )
}

/// Expansion of `c((1 - v) y) / c(y)` to order `K` in both `y` and `v`.
///
/// Under `y = pi^2 u / 4` this is the generating function
/// `1 + sum T(2n,d) u^n v^d`, so the `(n, d)` coefficient equals
/// `T(2n,d) * 4^n / pi^{2n}`.
pub fn phi_biseries(order: usize) -> Result<BivariateSeries<BigRat>> {
    if order == 0 {
        return Err(Error::Precondition("phi_biseries needs order >= 1".into()));
    }
    let c = cos_sqrt_series(order);
    let sec = c.recip()?;
    Ok(BivariateSeries::substitute_one_minus_v(&c, order).mul_univariate(&sec))
}

/// `(pi sqrt(u) / 2) tan(pi sqrt(u))` in the variable `w = pi^2 u`.
///
/// Equals `(w / 2) s(w) / c(w)`; the `w^m` coefficient is the rational
/// factor of `4^m t(2m)`, i.e. `4^m t(2m) / pi^{2m}`.
pub fn tan_link_series(order: usize) -> Result<PowerSeries<BigRat>> {
    if order == 0 {
        return Err(Error::Precondition("tan_link_series needs order >= 1".into()));
    }
    let ratio = &sinc_sqrt_series(order) * &cos_sqrt_series(order).recip()?;
    Ok(ratio.shift(1).scale(&BigRat::new(1.into(), 2.into())))
}
