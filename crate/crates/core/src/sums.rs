//! Closed forms for `T(2n, d)`, the sum of all `t(2j_1, ..., 2j_d)` of weight
//! `2n` and depth `d`.
//!
//! Three routes are provided and must agree exactly:
//!
//! * [`tsum_pi_expansion`]: `sum_j (-1)^j pi^{2j} / (2^{2d-2} (2j)! d)
//!   binom(2d-2j-2, d-1) t(2n-2j)`;
//! * [`tsum_bernoulli_form`]: the same sum rewritten with products
//!   `t(2j) t(2n-2j)` divided by `(2^{2j}-1) B_{2j}`;
//! * [`tsum_euler_form`]: `(-1)^{n-d} pi^{2n} / (4^n (2n)!) sum_l
//!   binom(n-l, d) binom(2n, 2l) E_{2l}`;
//!
//! plus coefficient extraction from the generating function in
//! [`tsum_table_from_genfunc`]. `T(2n, d)` is zero for `d > n` (empty sum).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{bernoulli, binomial, euler_number, factorial, pow2, pow4, t_even, PiPower};
use crate::series::phi_biseries;
use crate::BigRat;

fn check_positive(n: u32, d: u32, what: &'static str) -> Result<()> {
    if n == 0 || d == 0 {
        Err(Error::ZeroIndex { what })
    } else {
        Ok(())
    }
}

fn signed(q: BigRat, negative: bool) -> BigRat {
    if negative {
        -q
    } else {
        q
    }
}

/// `t({2}^n) = pi^{2n} / (4^n (2n)!)`.
pub fn t_all_twos(n: u32) -> Result<PiPower> {
    if n == 0 {
        return Err(Error::ZeroIndex { what: "t_all_twos" });
    }
    let den = pow4(n as u64) * factorial(2 * n as usize);
    Ok(PiPower::new(BigRat::new(BigInt::one(), den), 2 * n))
}

/// `T(2n, d)` through the expansion in `pi^{2j} t(2n - 2j)`.
pub fn tsum_pi_expansion(n: u32, d: u32) -> Result<PiPower> {
    check_positive(n, d, "tsum_pi_expansion")?;
    if d > n {
        return Ok(PiPower::zero(2 * n));
    }
    let base = BigInt::from(d) * pow2(2 * d as u64 - 2);
    let mut total = PiPower::zero(2 * n);
    for j in 0..=(d - 1) / 2 {
        let b = binomial(2 * (d - j) as u64 - 2, d as i64 - 1);
        let scale = BigRat::new(b, &base * factorial(2 * j as usize));
        let term = t_even(n - j)?.scale(&signed(scale, j % 2 == 1)).times_pi(2 * j);
        total = total + term;
    }
    Ok(total)
}

/// Rational coefficients of `T(2n, d)` on `t(2n)` and on `t(2j) t(2n-2j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffRow {
    pub depth: u32,
    /// `(j, c_j)` for `j = 0..=(d-1)/2`; `j = 0` multiplies `t(2n)` alone.
    pub terms: Vec<(u32, BigRat)>,
}

impl CoeffRow {
    /// Evaluates the row at weight `2n`. Requires `d <= n`.
    pub fn evaluate(&self, n: u32) -> Result<PiPower> {
        if n < self.depth {
            return Err(Error::Precondition(format!(
                "row for depth {} evaluated at n = {n}",
                self.depth
            )));
        }
        let mut total = PiPower::zero(2 * n);
        for (j, c) in &self.terms {
            let t = if *j == 0 {
                t_even(n)?
            } else {
                &t_even(*j)? * &t_even(n - j)?
            };
            total = total + t.scale(c);
        }
        Ok(total)
    }
}

/// The coefficient row of depth `d`, independent of `n`.
pub fn coeff_row(d: u32) -> Result<CoeffRow> {
    if d == 0 {
        return Err(Error::ZeroIndex { what: "coeff_row" });
    }
    let mut terms = Vec::with_capacity(d as usize / 2 + 1);
    let lead = BigRat::new(
        binomial(2 * d as u64 - 2, d as i64 - 1),
        pow2(2 * d as u64 - 2) * BigInt::from(d),
    );
    terms.push((0, lead));
    for j in 1..=(d - 1) / 2 {
        let b = binomial(2 * (d - j) as u64 - 2, d as i64 - 1);
        let bern = bernoulli(2 * j as usize);
        let den = BigRat::from_integer(pow2(2 * d as u64 - 3) * (pow4(j as u64) - 1) * d) * bern;
        terms.push((j, -(BigRat::from_integer(b) / den)));
    }
    Ok(CoeffRow { depth: d, terms })
}

/// `T(2n, d)` through the Bernoulli-number form with products of t-values.
pub fn tsum_bernoulli_form(n: u32, d: u32) -> Result<PiPower> {
    check_positive(n, d, "tsum_bernoulli_form")?;
    if d > n {
        return Ok(PiPower::zero(2 * n));
    }
    coeff_row(d)?.evaluate(n)
}

/// `T(2n, d)` through Euler numbers.
pub fn tsum_euler_form(n: u32, d: u32) -> Result<PiPower> {
    check_positive(n, d, "tsum_euler_form")?;
    if d > n {
        return Ok(PiPower::zero(2 * n));
    }
    let sum = euler_inner_sum(n, d);
    let den = pow4(n as u64) * factorial(2 * n as usize);
    let coeff = signed(BigRat::new(sum, den), (n - d) % 2 == 1);
    Ok(PiPower::new(coeff, 2 * n))
}

/// `sum_{l=0}^{n-d} binom(n-l, d) binom(2n, 2l) E_{2l}`.
fn euler_inner_sum(n: u32, d: u32) -> BigInt {
    (0..=n - d)
        .map(|l| {
            binomial((n - l) as u64, d as i64)
                * binomial(2 * n as u64, 2 * l as i64)
                * euler_number(2 * l as usize)
        })
        .sum()
}

/// Exact values `T(2n, d)` for `1 <= d <= n <= max_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct TTable {
    max_n: u32,
    entries: BTreeMap<(u32, u32), PiPower>,
}

impl TTable {
    pub fn max_n(&self) -> u32 {
        self.max_n
    }

    /// `T(2n, d)`; zero for `d > n`, `None` outside the table.
    pub fn get(&self, n: u32, d: u32) -> Option<PiPower> {
        if n == 0 || d == 0 || n > self.max_n {
            return None;
        }
        if d > n {
            return Some(PiPower::zero(2 * n));
        }
        self.entries.get(&(n, d)).cloned()
    }

    /// Entries in `(n, d)` order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u32, &PiPower)> {
        self.entries.iter().map(|(&(n, d), v)| (n, d, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Reads `T(2n, d)` off the generating function `c((1-v)y) / c(y)`.
pub fn tsum_table_from_genfunc(max_n: u32) -> Result<TTable> {
    if max_n == 0 {
        return Err(Error::ZeroIndex { what: "tsum_table_from_genfunc" });
    }
    let phi = phi_biseries(max_n as usize)?;
    let mut entries = BTreeMap::new();
    for n in 1..=max_n {
        let unscale = BigRat::new(BigInt::one(), pow4(n as u64));
        for d in 1..=n {
            let c = phi.coeff(n as usize, d as usize) * &unscale;
            entries.insert((n, d), PiPower::new(c, 2 * n));
        }
    }
    Ok(TTable { max_n, entries })
}

/// Both sides of `sum_{d=1}^n T(2n, d) = (-1)^n E_{2n} pi^{2n} / (4^n (2n)!)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DepthSumCheck {
    pub lhs: PiPower,
    pub rhs: PiPower,
    pub equal: bool,
}

pub fn depth_sum_check(n: u32) -> Result<DepthSumCheck> {
    if n == 0 {
        return Err(Error::ZeroIndex { what: "depth_sum_check" });
    }
    let mut lhs = PiPower::zero(2 * n);
    for d in 1..=n {
        lhs = lhs + tsum_euler_form(n, d)?;
    }
    let den = pow4(n as u64) * factorial(2 * n as usize);
    let coeff = signed(BigRat::new(euler_number(2 * n as usize), den), n % 2 == 1);
    let rhs = PiPower::new(coeff, 2 * n);
    let equal = lhs == rhs;
    Ok(DepthSumCheck { lhs, rhs, equal })
}

/// `sum_{j=0}^{(d-1)/2} (2^{2n-2j} - 1) B_{2n-2j} / (2^{2d-1} d)
/// binom(2d-2j-2, d-1) binom(2n, 2j)`.
///
/// Terms with `j > n` vanish through `binom(2n, 2j)`, and the `j = n` term
/// through `2^0 - 1`; both are skipped.
pub fn be_identity_lhs(n: u32, d: u32) -> Result<BigRat> {
    check_positive(n, d, "be_identity_lhs")?;
    let den = BigInt::from(d) * pow2(2 * d as u64 - 1);
    let mut acc = BigRat::zero();
    for j in 0..=((d - 1) / 2).min(n.saturating_sub(1)) {
        let m = n - j;
        let num = (pow4(m as u64) - 1)
            * binomial(2 * (d - j) as u64 - 2, d as i64 - 1)
            * binomial(2 * n as u64, 2 * j as i64);
        acc += bernoulli(2 * m as usize) * BigRat::new(num, den.clone());
    }
    Ok(acc)
}

/// Which branch of the Bernoulli-Euler identity applies to `(n, d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BeCase {
    /// `d <= n`: the sum is a rescaled `T(2n, d)`.
    DepthAtMostN,
    /// `n < d < 2n`: the sum vanishes.
    Vanishing,
    /// `d >= 2n`: the sum is `n binom(2d-2n-1, d-1) / (2^{2d-1} d)`.
    LargeDepth,
}

impl BeCase {
    pub fn of(n: u32, d: u32) -> BeCase {
        if d <= n {
            BeCase::DepthAtMostN
        } else if d < 2 * n {
            BeCase::Vanishing
        } else {
            BeCase::LargeDepth
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            BeCase::DepthAtMostN => "d<=n",
            BeCase::Vanishing => "n<d<2n",
            BeCase::LargeDepth => "d>=2n",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BeReport {
    pub n: u32,
    pub d: u32,
    pub case: BeCase,
    pub lhs: BigRat,
    pub expected: BigRat,
    pub pass: bool,
}

/// Checks the Bernoulli-Euler identity at `(n, d)`.
///
/// For `d <= n` the left side satisfies
/// `T(2n, d) = (-1)^{n+1} pi^{2n} / (2n)! * lhs`, so the expected value is
/// `(-1)^{d+1} 4^{-n} sum_l binom(n-l, d) binom(2n, 2l) E_{2l}`, and the
/// rescaled left side must also equal [`tsum_euler_form`].
pub fn be_identity_check(n: u32, d: u32) -> Result<BeReport> {
    let lhs = be_identity_lhs(n, d)?;
    let case = BeCase::of(n, d);
    let (expected, pass) = match case {
        BeCase::DepthAtMostN => {
            let expected = signed(
                BigRat::new(euler_inner_sum(n, d), pow4(n as u64)),
                d.is_multiple_of(2),
            );
            let scale = signed(
                BigRat::new(BigInt::one(), factorial(2 * n as usize)),
                n.is_multiple_of(2),
            );
            let via_t = PiPower::new(&lhs * scale, 2 * n);
            let pass = lhs == expected && via_t == tsum_euler_form(n, d)?;
            (expected, pass)
        }
        BeCase::Vanishing => (BigRat::zero(), lhs.is_zero()),
        BeCase::LargeDepth => {
            let b = binomial(2 * (d - n) as u64 - 1, d as i64 - 1);
            let expected = BigRat::new(
                BigInt::from(n) * b,
                pow2(2 * d as u64 - 1) * BigInt::from(d),
            );
            let pass = lhs == expected;
            (expected, pass)
        }
    };
    Ok(BeReport {
        n,
        d,
        case,
        lhs,
        expected,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn pp(num: i64, den: i64, e: u32) -> PiPower {
        PiPower::new(rat(num, den), e)
    }

    #[test]
    fn all_twos() {
        assert_eq!(t_all_twos(1).unwrap(), pp(1, 8, 2));
        assert_eq!(t_all_twos(2).unwrap(), pp(1, 384, 4));
        assert_eq!(t_all_twos(3).unwrap(), pp(1, 46080, 6));
        assert!(t_all_twos(0).is_err());
    }

    #[test]
    fn pi_expansion_examples() {
        assert_eq!(tsum_pi_expansion(3, 1).unwrap(), pp(1, 960, 6));
        assert_eq!(tsum_pi_expansion(3, 2).unwrap(), pp(1, 3840, 6));
        assert_eq!(tsum_pi_expansion(4, 3).unwrap(), pp(1, 430080, 8));
        assert!(tsum_pi_expansion(0, 1).is_err());
        assert!(tsum_pi_expansion(2, 0).is_err());
    }

    #[test]
    fn euler_form_examples() {
        assert_eq!(tsum_euler_form(3, 2).unwrap(), pp(1, 3840, 6));
        assert_eq!(tsum_euler_form(4, 3).unwrap(), pp(1, 430080, 8));
        for n in 1..=8 {
            assert_eq!(tsum_euler_form(n, n).unwrap(), t_all_twos(n).unwrap());
        }
    }

    #[test]
    fn bernoulli_form_examples() {
        assert_eq!(tsum_bernoulli_form(2, 2).unwrap(), pp(1, 384, 4));
        assert_eq!(tsum_bernoulli_form(4, 3).unwrap(), pp(1, 430080, 8));
    }

    #[test]
    fn vanishing_beyond_weight() {
        for n in 1..=5 {
            for d in n + 1..=n + 3 {
                assert!(tsum_pi_expansion(n, d).unwrap().is_zero());
                assert!(tsum_bernoulli_form(n, d).unwrap().is_zero());
                assert!(tsum_euler_form(n, d).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn rows() {
        let r5 = coeff_row(5).unwrap();
        assert_eq!(
            r5.terms,
            vec![(0, rat(7, 128)), (1, rat(-3, 64)), (2, rat(1, 320))]
        );
        let r1 = coeff_row(1).unwrap();
        assert_eq!(r1.terms, vec![(0, rat(1, 1))]);
        assert!(coeff_row(0).is_err());
    }

    #[test]
    fn genfunc_table_entries() {
        let t = tsum_table_from_genfunc(5).unwrap();
        assert_eq!(t.len(), 15);
        assert_eq!(t.get(1, 1).unwrap(), pp(1, 8, 2));
        assert_eq!(t.get(2, 2).unwrap(), pp(1, 384, 4));
        assert!(t.get(2, 3).unwrap().is_zero());
        assert!(t.get(6, 1).is_none());
        for n in 5..=5 {
            assert_eq!(t.get(n, 5).unwrap(), tsum_bernoulli_form(n, 5).unwrap());
        }
    }

    #[test]
    fn depth_sums() {
        let c1 = depth_sum_check(1).unwrap();
        assert_eq!(c1.lhs, pp(1, 8, 2));
        assert!(c1.equal);
        let c2 = depth_sum_check(2).unwrap();
        assert_eq!(c2.rhs, pp(5, 384, 4));
        assert!(c2.equal);
        assert!(depth_sum_check(3).unwrap().equal);
    }

    #[test]
    fn be_lhs_examples() {
        assert_eq!(be_identity_lhs(1, 2).unwrap(), rat(1, 16));
        assert_eq!(be_identity_lhs(2, 3).unwrap(), rat(0, 1));
        assert_eq!(be_identity_lhs(1, 1).unwrap(), rat(1, 4));
    }

    #[test]
    fn be_checks() {
        let r = be_identity_check(2, 3).unwrap();
        assert_eq!(r.case, BeCase::Vanishing);
        assert!(r.pass);
        let r = be_identity_check(1, 2).unwrap();
        assert_eq!(r.case, BeCase::LargeDepth);
        assert_eq!(r.expected, rat(1, 16));
        assert!(r.pass);
        let r = be_identity_check(3, 3).unwrap();
        assert_eq!(r.case, BeCase::DepthAtMostN);
        assert!(r.pass);
    }
}
