//! Verification suites and the JSON report they produce.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use tvalues::exact::factorial;
use tvalues::oracle::{pi_power_eval, tsum_numeric, TailOrder};
use tvalues::series::{cos_sqrt_series, tan_link_series};
use tvalues::sums::{
    be_identity_check, depth_sum_check, tsum_bernoulli_form, tsum_euler_form, tsum_pi_expansion,
    tsum_table_from_genfunc,
};
use tvalues::symmetric::{verify_e_h_inverse, verify_f_factorization, verify_ndn_expansion};
use tvalues::{euler_number, t_even, BigRat, Fixed192, PiPower, PrecReal, Real, TruncationParams};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    ClosedForms,
    Genfunc,
    DepthSum,
    BernoulliEuler,
    Symmetric,
    Oracle,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] = [
        Suite::ClosedForms,
        Suite::Genfunc,
        Suite::DepthSum,
        Suite::BernoulliEuler,
        Suite::Symmetric,
        Suite::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::ClosedForms => "closed-forms",
            Suite::Genfunc => "genfunc",
            Suite::DepthSum => "depth-sum",
            Suite::BernoulliEuler => "bernoulli-euler",
            Suite::Symmetric => "symmetric",
            Suite::Oracle => "oracle",
            Suite::All => "all",
        }
    }

    pub fn parse(s: &str) -> Result<Suite, CliError> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| CliError::Usage(format!("unknown suite {s:?}")))
    }

    pub fn default_max_n(self) -> u32 {
        match self {
            Suite::BernoulliEuler => 15,
            Suite::Symmetric => 8,
            Suite::Oracle => 5,
            _ => 30,
        }
    }
}

/// Bounds shared by all suites. `None` means the suite's own default.
#[derive(Clone, Debug)]
pub struct Bounds {
    pub max_n: Option<u32>,
    pub max_d: Option<u32>,
    pub terms: u64,
    /// Case id whose expected value is perturbed before comparison.
    pub inject_failure: Option<String>,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_n: None,
            max_d: None,
            terms: 1_000_000,
            inject_failure: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Case {
    pub id: String,
    pub params: BTreeMap<String, u64>,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub cases: Vec<Case>,
    pub summary: Summary,
    pub wall_time_ms: f64,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn exit_code(&self) -> u8 {
        if self.all_passed() {
            0
        } else {
            1
        }
    }
}

/// Values that can be deliberately corrupted to exercise the failure path.
trait Perturb {
    fn perturbed(&self) -> Self;
}

impl Perturb for PiPower {
    fn perturbed(&self) -> Self {
        PiPower::new(self.coeff() + BigRat::one(), self.pi_exp())
    }
}

impl Perturb for BigRat {
    fn perturbed(&self) -> Self {
        self + BigRat::one()
    }
}

impl Perturb for BigInt {
    fn perturbed(&self) -> Self {
        self + 1
    }
}

impl Perturb for bool {
    fn perturbed(&self) -> Self {
        !self
    }
}

struct Collector<'a> {
    prefix: &'static str,
    inject: Option<&'a str>,
    cases: Vec<Case>,
}

impl<'a> Collector<'a> {
    fn new(suite: Suite, bounds: &'a Bounds) -> Self {
        Collector {
            prefix: suite.name(),
            inject: bounds.inject_failure.as_deref(),
            cases: Vec::new(),
        }
    }

    fn id(&self, label: &str) -> String {
        format!("{}/{}", self.prefix, label)
    }

    fn target(&self, id: &str) -> bool {
        self.inject == Some(id)
    }

    /// Records a case that passes when every value in `actual` equals `expected`.
    fn exact<T: PartialEq + Display + Perturb>(
        &mut self,
        label: &str,
        params: &[(&str, u64)],
        expected: T,
        actual: &[T],
    ) {
        let id = self.id(label);
        let expected = if self.target(&id) { expected.perturbed() } else { expected };
        let pass = actual.iter().all(|a| *a == expected);
        let shown = actual
            .iter()
            .map(|a| a.to_string())
            .collect::<Vec<_>>()
            .join(" | ");
        self.cases.push(Case {
            id,
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            expected: expected.to_string(),
            actual: shown,
            pass,
        });
    }

    fn push(&mut self, case: Case) {
        self.cases.push(case);
    }
}

fn closed_forms(c: &mut Collector, max_n: u32) -> Result<(), CliError> {
    for n in 1..=max_n {
        for d in 1..=n {
            let expected = tsum_euler_form(n, d)?;
            let actual = [tsum_pi_expansion(n, d)?, tsum_bernoulli_form(n, d)?];
            c.exact(&format!("T({},{d})", 2 * n), &[("n", n as u64), ("d", d as u64)], expected, &actual);
        }
    }
    Ok(())
}

fn genfunc(c: &mut Collector, max_n: u32) -> Result<(), CliError> {
    let table = tsum_table_from_genfunc(max_n)?;
    for n in 1..=max_n {
        for d in 1..=n {
            let got = table.get(n, d).expect("cell inside the table");
            c.exact(
                &format!("T({},{d})", 2 * n),
                &[("n", n as u64), ("d", d as u64)],
                tsum_euler_form(n, d)?,
                &[got],
            );
        }
    }
    let order = max_n as usize;
    let sec = cos_sqrt_series(order).recip()?;
    for j in 0..=order {
        let sign = if j % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        let expected = BigRat::new(euler_number(2 * j) * sign, factorial(2 * j));
        c.exact(&format!("sec[{j}]"), &[("j", j as u64)], expected, &[sec.coeff(j)]);
    }
    let tan = tan_link_series(order)?;
    for m in 1..=max_n {
        let expected = t_even(m)?.coeff() * BigRat::from_integer(BigInt::from(4).pow(m));
        c.exact(&format!("tan[{m}]"), &[("m", m as u64)], expected, &[tan.coeff(m as usize)]);
    }
    Ok(())
}

fn depth_sum(c: &mut Collector, max_n: u32) -> Result<(), CliError> {
    for n in 1..=max_n {
        let check = depth_sum_check(n)?;
        c.exact(&format!("n={n}"), &[("n", n as u64)], check.rhs, &[check.lhs]);
    }
    Ok(())
}

fn bernoulli_euler(c: &mut Collector, max_n: u32, max_d: u32) -> Result<(), CliError> {
    for n in 1..=max_n {
        for d in 1..=max_d {
            let r = be_identity_check(n, d)?;
            c.exact(
                &format!("({n},{d}) {}", r.case.label()),
                &[("n", n as u64), ("d", d as u64)],
                r.expected,
                &[r.lhs],
            );
        }
    }
    Ok(())
}

fn symmetric(c: &mut Collector, max_n: u32) -> Result<(), CliError> {
    let m = max_n as usize;
    let f = verify_f_factorization::<BigRat>(max_n, m)?;
    c.exact("F-factorization", &[("m", m as u64), ("degree", max_n as u64)], true, &[f]);
    let inv = verify_e_h_inverse::<BigRat>(max_n, m);
    c.exact("E-H-inverse", &[("m", m as u64), ("degree", max_n as u64)], true, &[inv]);
    for n in 1..=max_n {
        for d in 1..=n {
            let ok = verify_ndn_expansion::<BigRat>(n, d, m)?;
            c.exact(
                &format!("N({n},{d})"),
                &[("n", n as u64), ("d", d as u64), ("m", m as u64)],
                true,
                &[ok],
            );
        }
    }
    Ok(())
}

const ORACLE_REL_TOL: f64 = 1e-6;

fn oracle(c: &mut Collector, max_n: u32, terms: u64) -> Result<(), CliError> {
    let params = TruncationParams::new(terms, TailOrder::FirstOrder)?;
    let cells: Vec<(u32, u32)> = (1..=max_n).flat_map(|n| (1..=n).map(move |d| (n, d))).collect();
    let values: Vec<tvalues::Result<(PrecReal<Fixed192>, PrecReal<Fixed192>)>> =
        std::thread::scope(|s| {
            let handles: Vec<_> = cells
                .iter()
                .map(|&(n, d)| {
                    s.spawn(move || {
                        let num = tsum_numeric::<Fixed192>(n, d, &params)?;
                        let exact = pi_power_eval::<Fixed192>(&tsum_euler_form(n, d)?);
                        Ok((num, exact))
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("oracle worker")).collect()
        });
    for (&(n, d), v) in cells.iter().zip(values) {
        let (num, mut exact) = v?;
        let id = c.id(&format!("T({},{d})", 2 * n));
        if c.target(&id) {
            exact = exact + PrecReal::exact(Fixed192::one());
        }
        let rel = num.relative_err();
        let pass = num.distance(&exact) <= num.err + exact.err && rel <= ORACLE_REL_TOL;
        c.push(Case {
            id,
            params: [("n", n as u64), ("d", d as u64), ("terms", terms)]
                .iter()
                .map(|(k, v)| (k.to_string(), *v))
                .collect(),
            expected: exact.value.to_decimal(40),
            actual: format!("{} +/- {:.3e}", num.value.to_decimal(40), num.err),
            pass,
        });
    }
    Ok(())
}

fn run_one(suite: Suite, bounds: &Bounds, c: &mut Collector) -> Result<(), CliError> {
    let max_n = bounds.max_n.unwrap_or(suite.default_max_n());
    if max_n == 0 {
        return Err(CliError::Usage("--max-n must be at least 1".into()));
    }
    match suite {
        Suite::ClosedForms => closed_forms(c, max_n),
        Suite::Genfunc => genfunc(c, max_n),
        Suite::DepthSum => depth_sum(c, max_n),
        Suite::BernoulliEuler => {
            let max_d = bounds.max_d.unwrap_or(40);
            if max_d == 0 {
                return Err(CliError::Usage("--max-d must be at least 1".into()));
            }
            bernoulli_euler(c, max_n, max_d)
        }
        Suite::Symmetric => symmetric(c, max_n),
        Suite::Oracle => oracle(c, max_n, bounds.terms),
        Suite::All => unreachable!("expanded by run_suite"),
    }
}

/// Runs `suite` (or every suite for [`Suite::All`]) and summarizes the cases.
pub fn run_suite(suite: Suite, bounds: &Bounds) -> Result<Report, CliError> {
    if bounds.terms == 0 {
        return Err(CliError::Usage("--terms must be at least 1".into()));
    }
    let start = Instant::now();
    let mut cases = Vec::new();
    let parts: Vec<Suite> = if suite == Suite::All {
        Suite::EACH.to_vec()
    } else {
        vec![suite]
    };
    for s in parts {
        let mut c = Collector::new(s, bounds);
        run_one(s, bounds, &mut c)?;
        cases.append(&mut c.cases);
    }
    let passed = cases.iter().filter(|c| c.pass).count();
    Ok(Report {
        suite: suite.name().to_string(),
        summary: Summary {
            total: cases.len(),
            passed,
            failed: cases.len() - passed,
        },
        cases,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}
