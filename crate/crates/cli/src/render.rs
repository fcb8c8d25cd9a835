//! Table and coefficient-row rendering.

use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use tvalues::sums::{coeff_row, tsum_euler_form, CoeffRow};
use tvalues::{BigRat, PiPower, Result};

use crate::Format;

/// A rational as decimal strings, so JSON never round-trips through floats.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalRepr {
    pub num: String,
    pub den: String,
}

impl From<&BigRat> for RationalRepr {
    fn from(q: &BigRat) -> Self {
        RationalRepr {
            num: q.numer().to_string(),
            den: q.denom().to_string(),
        }
    }
}

impl RationalRepr {
    pub fn to_rational(&self) -> Option<BigRat> {
        let num = self.num.parse().ok()?;
        let den: num_bigint::BigInt = self.den.parse().ok()?;
        if den.is_zero() {
            return None;
        }
        Some(BigRat::new(num, den))
    }
}

/// One `T(2n, d) = coefficient * pi^pi_exp` entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub weight: u32,
    pub depth: u32,
    pub coefficient: RationalRepr,
    pub pi_exp: u32,
}

impl TableRow {
    pub fn to_pi_power(&self) -> Option<PiPower> {
        if self.pi_exp % 2 == 1 {
            return None;
        }
        Some(PiPower::new(self.coefficient.to_rational()?, self.pi_exp))
    }
}

/// Rows for every `1 <= d <= n <= max_n`, optionally restricted to one depth.
pub fn table_rows(max_n: u32, depth: Option<u32>) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for n in 1..=max_n {
        for d in 1..=n {
            if depth.is_some_and(|want| want != d) {
                continue;
            }
            let v = tsum_euler_form(n, d)?;
            rows.push(TableRow {
                weight: 2 * n,
                depth: d,
                coefficient: v.coeff().into(),
                pi_exp: v.pi_exp(),
            });
        }
    }
    Ok(rows)
}

pub fn render_table(rows: &[TableRow], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Json => {
            out = serde_json::to_string_pretty(rows).expect("table rows serialize");
            out.push('\n');
        }
        Format::Csv => {
            out.push_str("weight,depth,num,den,pi_exp\n");
            for r in rows {
                let c = &r.coefficient;
                let _ = writeln!(out, "{},{},{},{},{}", r.weight, r.depth, c.num, c.den, r.pi_exp);
            }
        }
        Format::Latex => {
            out.push_str("\\begin{align*}\n");
            for (i, r) in rows.iter().enumerate() {
                let sep = if i + 1 < rows.len() { ",\\\\" } else { "." };
                let _ = writeln!(
                    out,
                    "T({},{}) &= {}\\pi^{{{}}}{}",
                    r.weight,
                    r.depth,
                    latex_frac(&r.coefficient),
                    r.pi_exp,
                    sep
                );
            }
            out.push_str("\\end{align*}\n");
        }
    }
    out
}

fn latex_frac(c: &RationalRepr) -> String {
    if c.den == "1" {
        c.num.clone()
    } else {
        format!("\\frac{{{}}}{{{}}}", c.num, c.den)
    }
}

/// `t(2j)t(2n-2j)` as it appears in the coefficient-row display.
fn row_factor(j: u32) -> String {
    if j == 0 {
        "t(2n)".to_string()
    } else {
        format!("t({})t(2n-{})", 2 * j, 2 * j)
    }
}

pub fn coefficient_row(depth: u32) -> Result<CoeffRow> {
    coeff_row(depth)
}

pub fn render_coeffs(row: &CoeffRow, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Term {
                j: u32,
                coefficient: RationalRepr,
            }
            #[derive(Serialize)]
            struct Row {
                depth: u32,
                terms: Vec<Term>,
            }
            let row = Row {
                depth: row.depth,
                terms: row
                    .terms
                    .iter()
                    .map(|(j, c)| Term {
                        j: *j,
                        coefficient: c.into(),
                    })
                    .collect(),
            };
            out = serde_json::to_string_pretty(&row).expect("coefficient row serializes");
            out.push('\n');
        }
        Format::Csv => {
            out.push_str("depth,j,num,den\n");
            for (j, c) in &row.terms {
                let _ = writeln!(out, "{},{},{},{}", row.depth, j, c.numer(), c.denom());
            }
        }
        Format::Latex => {
            let _ = write!(out, "T(2n,{}) = ", row.depth);
            for (i, (j, c)) in row.terms.iter().enumerate() {
                let sign = if c.is_negative() { "-" } else if i > 0 { "+" } else { "" };
                let abs = c.abs();
                let coef = if abs.is_one() {
                    String::new()
                } else {
                    latex_frac(&(&abs).into())
                };
                let _ = write!(out, "{sign}{coef}{}", row_factor(*j));
            }
            out.push_str(".\n");
        }
    }
    out
}
