//! Numeric evaluation of a single `t(s_1, ..., s_d)`.

use tvalues::oracle::{t_numeric, TailOrder};
use tvalues::{BigFixed, PrecReal, Real, TruncationParams};

use crate::CliError;

/// Environment variable that overrides the default `--precision`.
pub const PRECISION_ENV: &str = "TVALUES_PRECISION";
pub const DEFAULT_PRECISION: u32 = 50;
pub const MAX_PRECISION: u32 = 200;

/// Default digits: the environment override if set and valid, else 50.
pub fn default_precision() -> Result<u32, CliError> {
    match std::env::var(PRECISION_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{PRECISION_ENV}={s:?} is not a digit count"))),
        Err(_) => Ok(DEFAULT_PRECISION),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Evaluation {
    pub args: Vec<u32>,
    pub digits: u32,
    pub value: String,
    pub err: f64,
    pub terms: u64,
}

impl Evaluation {
    /// The stdout block: value, error bound and terms, one per line.
    pub fn render(&self) -> String {
        let args: Vec<String> = self.args.iter().map(u32::to_string).collect();
        format!(
            "t({}) = {}\nerr <= {:.3e}\nterms = {}\n",
            args.join(","),
            self.value,
            self.err,
            self.terms
        )
    }
}

fn run<R: Real>(args: &[u32], params: &TruncationParams, digits: u32) -> Result<Evaluation, CliError> {
    let v: PrecReal<R> = t_numeric(args, params)?;
    Ok(Evaluation {
        args: args.to_vec(),
        digits,
        value: v.value.to_decimal(digits as usize),
        err: v.err,
        terms: params.terms(),
    })
}

/// Evaluates `t(args)` with `terms` terms and a first-order tail, using the
/// narrowest scalar that carries `digits` decimal digits.
pub fn evaluate(args: &[u32], terms: u64, digits: u32) -> Result<Evaluation, CliError> {
    if digits == 0 || digits > MAX_PRECISION {
        return Err(CliError::Usage(format!(
            "--precision must be between 1 and {MAX_PRECISION} digits"
        )));
    }
    if terms == 0 {
        return Err(CliError::Usage("--terms must be at least 1".into()));
    }
    let params = TruncationParams::new(terms, TailOrder::FirstOrder)?;
    match digits {
        0..=15 => run::<f64>(args, &params, digits),
        16..=50 => run::<BigFixed<192>>(args, &params, digits),
        51..=100 => run::<BigFixed<384>>(args, &params, digits),
        _ => run::<BigFixed<704>>(args, &params, digits),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t2_value() {
        let e = evaluate(&[2], 1_000_000, 20).unwrap();
        let v: f64 = e.value.parse().unwrap();
        let pi2_8 = std::f64::consts::PI.powi(2) / 8.0;
        assert!(e.value.starts_with("1.2337005501"), "{}", e.value);
        assert!((v - pi2_8).abs() <= e.err + 1e-15);
        assert!(e.err < 1e-12);
    }

    #[test]
    fn digit_dispatch() {
        assert_eq!(evaluate(&[4], 1000, 10).unwrap().value.len(), 12);
        assert_eq!(evaluate(&[4], 1000, 80).unwrap().value.len(), 82);
        assert_eq!(evaluate(&[4], 1000, 200).unwrap().value.len(), 202);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(evaluate(&[1], 10, 20), Err(CliError::Compute(_))));
        assert!(matches!(evaluate(&[2], 10, 0), Err(CliError::Usage(_))));
        assert!(matches!(evaluate(&[2], 10, 201), Err(CliError::Usage(_))));
        assert!(matches!(evaluate(&[2], 0, 20), Err(CliError::Usage(_))));
    }
}
