//! Symmetric polynomials in finitely many variables `x_1..x_m`.
//!
//! Identities among symmetric functions of degree `n` hold in the full ring
//! as soon as they hold in `m >= n` variables, so the generating-function
//! identities are checked exactly in that truncation. The specialization
//! `x_j -> 1/(2j-1)^2`, which sends `e_n` to `t({2}^n)`, `p_n` to `t(2n)` and
//! `N_{n,d}` to `T(2n,d)`, acts on generator expressions ([`SymExpr`]) rather
//! than on truncated polynomials, since it needs infinitely many variables.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::binomial;
use crate::oracle::{PrecReal, Real};
use crate::{BigRat, Coefficient};

/// A polynomial in `num_vars` variables, stored as exponent vector -> coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<T> {
    num_vars: usize,
    terms: BTreeMap<Vec<u32>, T>,
}

impl<T: Coefficient> Polynomial<T> {
    pub fn zero(num_vars: usize) -> Self {
        Polynomial {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: T, num_vars: usize) -> Self {
        let mut p = Self::zero(num_vars);
        p.add_term(vec![0; num_vars], c);
        p
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(T::one(), num_vars)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &T)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn coeff(&self, exponents: &[u32]) -> T {
        self.terms.get(exponents).cloned().unwrap_or_else(T::zero)
    }

    /// Adds `c * x^exponents`, dropping the entry if it cancels.
    pub fn add_term(&mut self, exponents: Vec<u32>, c: T) {
        assert_eq!(exponents.len(), self.num_vars, "exponent vector length");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exponents) {
            Some(v) => {
                *v = v.clone() + c;
                if v.is_zero() {
                    self.terms.remove(&exponents);
                }
            }
            None => {
                self.terms.insert(exponents, c);
            }
        }
    }

    pub fn scale(&self, k: &T) -> Self {
        let mut out = Self::zero(self.num_vars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.clone() * k.clone());
        }
        out
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    fn permuted(&self, perm: impl Fn(&[u32]) -> Vec<u32>) -> Self {
        Polynomial {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, c)| (perm(e), c.clone())).collect(),
        }
    }

    /// Invariance under the transposition `x_1 <-> x_2` and the cyclic shift,
    /// which together generate the symmetric group.
    pub fn is_symmetric(&self) -> bool {
        if self.num_vars < 2 {
            return true;
        }
        let swap = self.permuted(|e| {
            let mut v = e.to_vec();
            v.swap(0, 1);
            v
        });
        let cycle = self.permuted(|e| {
            let mut v = e.to_vec();
            v.rotate_left(1);
            v
        });
        swap == *self && cycle == *self
    }
}

impl<T: Coefficient> Add for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn add(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        assert_eq!(self.num_vars, rhs.num_vars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<T: Coefficient> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn sub(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        self + &(-rhs)
    }
}

impl<T: Coefficient> Neg for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn neg(self) -> Polynomial<T> {
        Polynomial {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

impl<T: Coefficient> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn mul(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        assert_eq!(self.num_vars, rhs.num_vars);
        let mut out = Polynomial::zero(self.num_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        out
    }
}

/// Exponent vectors of length `parts` with entries summing to `total`.
fn weak_compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    fn rec(left: u32, slot: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slot + 1 == cur.len() {
            cur[slot] = left;
            out.push(cur.clone());
            return;
        }
        for a in (0..=left).rev() {
            cur[slot] = a;
            rec(left - a, slot + 1, cur, out);
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(total, 0, &mut vec![0; parts], &mut out);
    out
}

fn from_exponents<T: Coefficient>(m: usize, exps: impl IntoIterator<Item = Vec<u32>>) -> Polynomial<T> {
    let mut p = Polynomial::zero(m);
    for e in exps {
        p.add_term(e, T::one());
    }
    p
}

/// `e_j(x_1..x_m)`; zero for `j > m`.
pub fn elementary<T: Coefficient>(j: u32, m: usize) -> Polynomial<T> {
    from_exponents(
        m,
        weak_compositions(j, m)
            .into_iter()
            .filter(|e| e.iter().all(|&a| a <= 1)),
    )
}

/// `h_j(x_1..x_m)`, the sum of all monomials of degree `j`.
pub fn complete<T: Coefficient>(j: u32, m: usize) -> Polynomial<T> {
    from_exponents(m, weak_compositions(j, m))
}

/// `p_j(x_1..x_m) = x_1^j + ... + x_m^j`; `p_0 = m`.
pub fn power_sum<T: Coefficient>(j: u32, m: usize) -> Polynomial<T> {
    if j == 0 {
        return Polynomial::constant(T::from_bigint(&BigInt::from(m)), m);
    }
    from_exponents(
        m,
        (0..m).map(|i| {
            let mut e = vec![0; m];
            e[i] = j;
            e
        }),
    )
}

/// `N_{n,d}`: the sum of the monomial symmetric functions `m_lambda` over
/// partitions `lambda` of `n` with exactly `d` parts.
pub fn monomial_depth_sum<T: Coefficient>(n: u32, d: u32, m: usize) -> Polynomial<T> {
    from_exponents(
        m,
        weak_compositions(n, m)
            .into_iter()
            .filter(|e| e.iter().filter(|&&a| a > 0).count() == d as usize),
    )
}

/// Generators `e_j` and `h_j` for `j <= max_deg`, shared by the identity checks.
struct GeneratorTable<T> {
    e: Vec<Polynomial<T>>,
    h: Vec<Polynomial<T>>,
    products: BTreeMap<(u32, u32), Polynomial<T>>,
}

impl<T: Coefficient> GeneratorTable<T> {
    fn new(max_deg: u32, m: usize) -> Self {
        GeneratorTable {
            e: (0..=max_deg).map(|j| elementary(j, m)).collect(),
            h: (0..=max_deg).map(|j| complete(j, m)).collect(),
            products: BTreeMap::new(),
        }
    }

    /// `h_l * e_j`, memoized.
    fn he(&mut self, l: u32, j: u32) -> &Polynomial<T> {
        let (e, h) = (&self.e, &self.h);
        self.products
            .entry((l, j))
            .or_insert_with(|| &h[l as usize] * &e[j as usize])
    }
}

fn signed<T: Coefficient>(c: BigInt, negative: bool) -> T {
    let v = T::from_bigint(&c);
    if negative {
        -v
    } else {
        v
    }
}

/// Checks `1 + sum N_{n,d} u^n v^d = E((v-1)u) H(u)` coefficientwise for
/// `n, d <= n_max` in `m` variables.
///
/// The `u^n v^d` coefficient of the right side is
/// `sum_j binom(j, d) (-1)^{j-d} h_{n-j} e_j`.
pub fn verify_f_factorization<T: Coefficient>(n_max: u32, m: usize) -> Result<bool> {
    if (m as u32) < n_max {
        return Err(Error::Precondition(format!(
            "need at least {n_max} variables, got {m}"
        )));
    }
    let mut table = GeneratorTable::<T>::new(n_max, m);
    for n in 0..=n_max {
        for d in 0..=n_max {
            let mut rhs = Polynomial::zero(m);
            for j in d..=n {
                let c: T = signed(binomial(j as u64, d as i64), (j - d) % 2 == 1);
                rhs = &rhs + &table.he(n - j, j).scale(&c);
            }
            let lhs = match (n, d) {
                (0, 0) => Polynomial::one(m),
                (0, _) | (_, 0) => Polynomial::zero(m),
                _ => monomial_depth_sum(n, d, m),
            };
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Checks `N_{n,d} = sum_{l=0}^{n-d} binom(n-l, d) (-1)^{n-d-l} h_l e_{n-l}`
/// as an exact identity in `m` variables.
pub fn verify_ndn_expansion<T: Coefficient>(n: u32, d: u32, m: usize) -> Result<bool> {
    if d == 0 || d > n || n as usize > m {
        return Err(Error::Precondition(format!(
            "need 1 <= d <= n <= m, got d = {d}, n = {n}, m = {m}"
        )));
    }
    let rhs = SymExpr::depth_sum_expansion(n, d).to_polynomial::<T>(m);
    Ok(monomial_depth_sum::<T>(n, d, m) == rhs)
}

/// Checks `E(-u) H(u) = 1`, i.e. `sum_j (-1)^j e_j h_{n-j} = 0` for
/// `1 <= n <= max_deg`.
pub fn verify_e_h_inverse<T: Coefficient>(max_deg: u32, m: usize) -> bool {
    let mut table = GeneratorTable::<T>::new(max_deg, m);
    (1..=max_deg).all(|n| {
        let mut acc = Polynomial::zero(m);
        for j in 0..=n {
            let c: T = signed(BigInt::one(), j % 2 == 1);
            acc = &acc + &table.he(n - j, j).scale(&c);
        }
        acc.is_zero()
    })
}

/// A polynomial expression in the generators `e_j`, `h_j`, `p_j`.
#[derive(Clone, Debug, PartialEq)]
pub enum SymExpr {
    Const(BigRat),
    Elementary(u32),
    Complete(u32),
    PowerSum(u32),
    Sum(Vec<SymExpr>),
    Product(Vec<SymExpr>),
}

impl SymExpr {
    pub fn scaled(self, c: BigRat) -> SymExpr {
        SymExpr::Product(vec![SymExpr::Const(c), self])
    }

    /// `sum_{l=0}^{n-d} binom(n-l, d) (-1)^{n-d-l} h_l e_{n-l}`, an expression
    /// for `N_{n,d}`.
    pub fn depth_sum_expansion(n: u32, d: u32) -> SymExpr {
        let terms = (0..=n.saturating_sub(d))
            .map(|l| {
                let c = BigRat::from_integer(binomial((n - l) as u64, d as i64));
                let c = if (n - d - l) % 2 == 1 { -c } else { c };
                SymExpr::Product(vec![SymExpr::Complete(l), SymExpr::Elementary(n - l)]).scaled(c)
            })
            .collect();
        SymExpr::Sum(terms)
    }

    /// Highest generator index appearing in the expression.
    pub fn max_index(&self) -> u32 {
        match self {
            SymExpr::Const(_) => 0,
            SymExpr::Elementary(j) | SymExpr::Complete(j) | SymExpr::PowerSum(j) => *j,
            SymExpr::Sum(v) | SymExpr::Product(v) => v.iter().map(Self::max_index).max().unwrap_or(0),
        }
    }

    /// Expands the expression in `m` variables.
    pub fn to_polynomial<T: Coefficient>(&self, m: usize) -> Polynomial<T> {
        match self {
            SymExpr::Const(c) => {
                let v = T::from_bigint(c.numer()) / T::from_bigint(c.denom());
                Polynomial::constant(v, m)
            }
            SymExpr::Elementary(j) => elementary(*j, m),
            SymExpr::Complete(j) => complete(*j, m),
            SymExpr::PowerSum(j) => power_sum(*j, m),
            SymExpr::Sum(v) => v
                .iter()
                .fold(Polynomial::zero(m), |acc, x| &acc + &x.to_polynomial(m)),
            SymExpr::Product(v) => v
                .iter()
                .fold(Polynomial::one(m), |acc, x| &acc * &x.to_polynomial(m)),
        }
    }
}

/// `int_a^inf (2x-1)^{-2j} dx`.
fn odd_even_power_tail(a: f64, j: u32) -> f64 {
    let s = 2.0 * j as f64;
    (2.0 * a - 1.0).powf(1.0 - s) / (2.0 * (s - 1.0))
}

/// Values of `e_k`, `h_k`, `p_k` under `x_j -> 1/(2j-1)^2`, with bounds.
struct Specialized<R> {
    e: Vec<PrecReal<R>>,
    h: Vec<PrecReal<R>>,
    p: Vec<PrecReal<R>>,
}

impl<R: Real> Specialized<R> {
    /// Exact over `j <= vars`, plus a first-order correction for `j > vars`.
    fn compute(max_deg: u32, vars: u64) -> Self {
        let deg = max_deg as usize;
        let mut e = vec![R::zero(); deg + 1];
        let mut h = vec![R::zero(); deg + 1];
        let mut p = vec![R::zero(); deg + 1];
        e[0] = R::one();
        h[0] = R::one();
        for i in 1..=vars {
            let x = R::recip_pow(2 * i - 1, 2);
            for k in (1..=deg).rev() {
                e[k] = e[k].clone() + x.clone() * e[k - 1].clone();
            }
            for k in 1..=deg {
                h[k] = h[k].clone() + x.clone() * h[k - 1].clone();
            }
            let mut xp = x.clone();
            for pk in p.iter_mut().skip(1) {
                *pk = pk.clone() + xp.clone();
                xp = xp * x.clone();
            }
        }

        let m = vars as f64;
        let magnitude = e.iter().chain(&h).chain(&p).map(|v| v.to_f64().abs()).fold(1.0, f64::max);
        let rounding = m * (deg as f64 + 1.0) * 4.0 * R::rounding_error(magnitude);

        // tail power sums sum_{i>M} x_i^j lie in [lo_j, hi_j]
        let interval = |j: u32| (odd_even_power_tail(m + 1.0, j), odd_even_power_tail(m + 0.5, j));
        let (lo1, hi1) = interval(1);
        let mid1 = 0.5 * (lo1 + hi1);
        let half1 = 0.5 * (hi1 - lo1);

        let ef: Vec<f64> = e.iter().map(|v| v.to_f64().abs()).collect();
        let hf: Vec<f64> = h.iter().map(|v| v.to_f64().abs()).collect();
        let mut out_e = vec![PrecReal::exact(R::one())];
        let mut out_h = vec![PrecReal::exact(R::one())];
        let mut out_p = vec![PrecReal::exact(R::zero())];
        for k in 1..=deg {
            let mut higher_e = 0.0;
            let mut higher_h = 0.0;
            let mut fact = 1.0;
            for r in 2..=k {
                fact *= r as f64;
                higher_e += ef[k - r] * hi1.powi(r as i32) / fact;
                higher_h += hf[k - r] * hi1.powi(r as i32);
            }
            let ve = e[k].clone() + e[k - 1].clone() * R::from_f64(mid1);
            let vh = h[k].clone() + h[k - 1].clone() * R::from_f64(mid1);
            let err_e = ef[k - 1] * half1 + higher_e + rounding;
            let err_h = hf[k - 1] * half1 + higher_h + rounding;
            out_e.push(PrecReal::new(ve, err_e * (1.0 + 1e-9)));
            out_h.push(PrecReal::new(vh, err_h * (1.0 + 1e-9)));

            let (lo, hi) = interval(k as u32);
            let vp = p[k].clone() + R::from_f64(0.5 * (lo + hi));
            out_p.push(PrecReal::new(vp, (0.5 * (hi - lo) + rounding) * (1.0 + 1e-9)));
        }
        Specialized {
            e: out_e,
            h: out_h,
            p: out_p,
        }
    }

    fn eval(&self, expr: &SymExpr) -> PrecReal<R> {
        match expr {
            SymExpr::Const(c) => PrecReal::new(
                R::from_ratio(c.numer(), c.denom()),
                R::rounding_error(1.0) * c_magnitude(c),
            ),
            SymExpr::Elementary(j) => self.e[*j as usize].clone(),
            SymExpr::Complete(j) => self.h[*j as usize].clone(),
            SymExpr::PowerSum(0) => panic!("p_0 has no image under the specialization"),
            SymExpr::PowerSum(j) => self.p[*j as usize].clone(),
            SymExpr::Sum(v) => v.iter().fold(PrecReal::zero(), |acc, x| acc + self.eval(x)),
            SymExpr::Product(v) => v
                .iter()
                .fold(PrecReal::exact(R::one()), |acc, x| acc * self.eval(x)),
        }
    }
}

fn c_magnitude(c: &BigRat) -> f64 {
    use num_traits::ToPrimitive;
    c.to_f64().map(f64::abs).unwrap_or(f64::MAX).max(1.0)
}

/// Numeric image of `expr` under `x_j -> 1/(2j-1)^2`, keeping `j <= vars`
/// exactly and correcting for the rest to first order.
///
/// `e_n` maps to `t({2}^n)`, `h_n` to `sum_d T(2n, d)` and `p_n` to `t(2n)`.
/// `p_0` is rejected (it would count infinitely many variables).
pub fn frakt_numeric<R: Real>(expr: &SymExpr, vars: u64) -> Result<PrecReal<R>> {
    if vars == 0 {
        return Err(Error::InvalidTruncation("need at least one variable".into()));
    }
    if contains_p0(expr) {
        return Err(Error::Precondition("p_0 has no image under the specialization".into()));
    }
    Ok(Specialized::<R>::compute(expr.max_index(), vars).eval(expr))
}

fn contains_p0(expr: &SymExpr) -> bool {
    match expr {
        SymExpr::PowerSum(0) => true,
        SymExpr::Sum(v) | SymExpr::Product(v) => v.iter().any(contains_p0),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    type Q = BigRat;

    fn mono(exps: &[u32]) -> Polynomial<Q> {
        let mut p = Polynomial::zero(exps.len());
        p.add_term(exps.to_vec(), rat(1, 1));
        p
    }

    fn sum_of(ps: &[Polynomial<Q>]) -> Polynomial<Q> {
        ps.iter().fold(Polynomial::zero(ps[0].num_vars()), |a, b| &a + b)
    }

    #[test]
    fn generators_small() {
        let e2 = elementary::<Q>(2, 3);
        assert_eq!(e2, sum_of(&[mono(&[1, 1, 0]), mono(&[1, 0, 1]), mono(&[0, 1, 1])]));
        let h2 = complete::<Q>(2, 2);
        assert_eq!(h2, sum_of(&[mono(&[2, 0]), mono(&[1, 1]), mono(&[0, 2])]));
        let p3 = power_sum::<Q>(3, 2);
        assert_eq!(p3, sum_of(&[mono(&[3, 0]), mono(&[0, 3])]));
        assert!(elementary::<Q>(4, 3).is_zero());
        assert_eq!(complete::<Q>(8, 8).len(), 6435);
    }

    #[test]
    fn depth_sums() {
        assert_eq!(monomial_depth_sum::<Q>(2, 1, 3), power_sum(2, 3));
        assert_eq!(monomial_depth_sum::<Q>(2, 2, 3), elementary(2, 3));
        let n32 = monomial_depth_sum::<Q>(3, 2, 3);
        assert_eq!(n32.len(), 6);
        assert!(n32.terms().all(|(e, _)| {
            let mut v = e.to_vec();
            v.sort_unstable();
            v == [0, 1, 2]
        }));
        assert!(monomial_depth_sum::<Q>(2, 3, 4).is_zero());
    }

    #[test]
    fn symmetry_detection() {
        assert!(monomial_depth_sum::<Q>(5, 3, 5).is_symmetric());
        assert!(complete::<Q>(3, 4).is_symmetric());
        assert!(!mono(&[2, 1, 0]).is_symmetric());
        // swap-invariant but not cycle-invariant
        assert!(!(&mono(&[1, 1, 0]) + &mono(&[0, 0, 1])).is_symmetric());
    }

    #[test]
    fn f_factorization_small() {
        assert!(verify_f_factorization::<Q>(1, 1).unwrap());
        assert!(verify_f_factorization::<Q>(4, 4).unwrap());
        assert!(verify_f_factorization::<Q>(5, 3).is_err());
    }

    #[test]
    fn ndn_expansion_small() {
        for n in 1..=4 {
            assert!(verify_ndn_expansion::<Q>(n, n, n as usize).unwrap());
        }
        assert!(verify_ndn_expansion::<Q>(2, 1, 2).unwrap());
        let e2 = elementary::<Q>(2, 2);
        let e1 = elementary::<Q>(1, 2);
        let h1 = complete::<Q>(1, 2);
        let direct = &(&h1 * &e1) - &e2.scale(&rat(2, 1));
        assert_eq!(direct, power_sum(2, 2));
        assert!(verify_ndn_expansion::<Q>(3, 4, 5).is_err());
    }

    #[test]
    fn e_h_inverse() {
        assert!(verify_e_h_inverse::<Q>(6, 6));
        assert!(verify_e_h_inverse::<i64>(8, 8));
    }

    #[test]
    fn newton_degree_one_and_two() {
        let m = 4;
        let h1 = complete::<Q>(1, m);
        assert_eq!(h1, elementary(1, m));
        assert_eq!(h1, power_sum(1, m));
        let e1 = elementary::<Q>(1, m);
        assert_eq!(complete::<Q>(2, m), &(&e1 * &e1) - &elementary(2, m));
    }

    #[test]
    fn integer_and_rational_agree() {
        assert!(verify_f_factorization::<BigInt>(5, 5).unwrap());
    }

    #[test]
    fn frakt_degree_one_coincidence() {
        let vars = 10_000;
        let a = frakt_numeric::<f64>(&SymExpr::Elementary(1), vars).unwrap();
        let b = frakt_numeric::<f64>(&SymExpr::Complete(1), vars).unwrap();
        let c = frakt_numeric::<f64>(&SymExpr::PowerSum(1), vars).unwrap();
        assert_eq!(a.value, b.value);
        assert!((a.value - c.value).abs() <= a.err + c.err);
        assert!((a.value - std::f64::consts::PI.powi(2) / 8.0).abs() <= a.err);
    }

    #[test]
    fn frakt_e2() {
        let v = frakt_numeric::<f64>(&SymExpr::Elementary(2), 100_000).unwrap();
        let exact = std::f64::consts::PI.powi(4) / 384.0;
        assert!((v.value - exact).abs() <= v.err, "{v:?} vs {exact}");
        assert!(frakt_numeric::<f64>(&SymExpr::PowerSum(0), 10).is_err());
        assert!(frakt_numeric::<f64>(&SymExpr::Elementary(1), 0).is_err());
    }
}
