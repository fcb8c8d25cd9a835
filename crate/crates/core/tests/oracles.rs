//! Cross-checks against oracles built independently in this file.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use tvalues::exact::{factorial, rat};
use tvalues::oracle::{compositions, pi_power_eval, t_numeric, TailOrder};
use tvalues::series::PowerSeries;
use tvalues::sums::{
    coeff_row, t_all_twos, tsum_bernoulli_form, tsum_euler_form, tsum_pi_expansion,
};
use tvalues::symmetric::{
    complete, elementary, frakt_numeric, verify_f_factorization, SymExpr,
};
use tvalues::{bernoulli, binomial, euler_number, t_even, zeta_even, BigRat, Fixed192};
use tvalues::{PrecReal, TruncationParams};

/// Secant numbers |E_{2k}| by the Seidel boustrophedon triangle.
fn secant_numbers(count: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    let mut zigzag = vec![BigInt::one()];
    for i in 1..=2 * count {
        let mut next = vec![BigInt::zero(); i + 1];
        for k in 1..=i {
            next[k] = &next[k - 1] + &row[i - k];
        }
        zigzag.push(next[i].clone());
        row = next;
    }
    zigzag.into_iter().step_by(2).take(count + 1).collect()
}

#[test]
fn euler_numbers_match_boustrophedon() {
    for (k, s) in secant_numbers(25).iter().enumerate() {
        let e = euler_number(2 * k);
        assert_eq!(&e.abs(), s, "E_{}", 2 * k);
        let sign = if k % 2 == 0 { 1 } else { -1 };
        assert_eq!(e.signum(), BigInt::from(sign));
        assert!(euler_number(2 * k + 1).is_zero());
    }
}

#[test]
fn bernoulli_numbers_from_exponential_reciprocal() {
    // (e^x - 1)/x = sum x^k/(k+1)!, whose reciprocal is sum B_k x^k/k!
    let order = 24;
    let f = PowerSeries::from_coeffs(
        (0..=order)
            .map(|k| BigRat::new(BigInt::one(), factorial(k + 1)))
            .collect(),
    );
    let g = f.recip().unwrap();
    for k in 0..=order {
        let b = g.coeff(k) * BigRat::from_integer(factorial(k));
        assert_eq!(b, bernoulli(k), "B_{k}");
    }
    assert_eq!(bernoulli(2), rat(1, 6));
    assert_eq!(bernoulli(12), rat(-691, 2730));
}

fn direct_sum(n: u32, odd_only: bool) -> f64 {
    // partial sum plus an integral tail, good to ~1e-13 for n >= 1
    let s = 2.0 * n as f64;
    let cutoff = 200_000u64;
    let mut acc = 0.0;
    for k in (1..=cutoff).rev() {
        if odd_only && k % 2 == 0 {
            continue;
        }
        acc += (k as f64).powf(-s);
    }
    let tail = (cutoff as f64 + 0.5).powf(1.0 - s) / (s - 1.0);
    acc + if odd_only { tail / 2.0 } else { tail }
}

#[test]
fn zeta_and_t_against_direct_sums() {
    for n in 1..=6 {
        let z = pi_power_eval::<f64>(&zeta_even(n).unwrap()).to_f64();
        let t = pi_power_eval::<f64>(&t_even(n).unwrap()).to_f64();
        assert!((z - direct_sum(n, false)).abs() < 1e-10, "zeta({})", 2 * n);
        assert!((t - direct_sum(n, true)).abs() < 1e-10, "t({})", 2 * n);
    }
    let t2 = pi_power_eval::<f64>(&t_even(1).unwrap()).to_f64();
    assert!((t2 - std::f64::consts::PI.powi(2) / 8.0).abs() < 1e-15);
}

#[test]
fn composition_counts_are_binomial() {
    for n in 1..=12u32 {
        for d in 1..=n {
            let cs = compositions(n, d);
            assert_eq!(BigInt::from(cs.len()), binomial((n - 1) as u64, (d - 1) as i64));
            assert!(cs.iter().all(|c| c.len() == d as usize && c.iter().sum::<u32>() == n));
        }
    }
}

#[test]
fn brute_force_double_sum_matches_closed_form() {
    // T(6,2) = t(4,2) + t(2,4), summed directly as a double series
    let cutoff = 1_000_000u64;
    let mut sum = 0.0;
    let mut prefix2 = 0.0;
    let mut prefix4 = 0.0;
    for k in 1..=cutoff {
        let x2 = (1.0 / (2 * k - 1) as f64).powi(2);
        sum += x2 * x2 * prefix2 + x2 * prefix4;
        prefix2 += x2;
        prefix4 += x2 * x2;
    }
    let exact = pi_power_eval::<f64>(&tsum_euler_form(3, 2).unwrap()).to_f64();
    assert!((sum - exact).abs() < 1e-6, "{sum} vs {exact}");
}

#[test]
fn specialized_generators_match_sums() {
    let vars = 50_000;
    for n in 1..=5u32 {
        let e = frakt_numeric::<f64>(&SymExpr::Elementary(n), vars).unwrap();
        let want = pi_power_eval::<f64>(&t_all_twos(n).unwrap());
        assert!(e.distance(&want) <= e.err + 1e-14, "e_{n}: {e}");

        let p = frakt_numeric::<f64>(&SymExpr::PowerSum(n), vars).unwrap();
        let want = pi_power_eval::<f64>(&t_even(n).unwrap());
        assert!(p.distance(&want) <= p.err + 1e-14, "p_{n}: {p}");

        // h_n is the sum over all depths
        let h = frakt_numeric::<f64>(&SymExpr::Complete(n), vars).unwrap();
        let sign = if n % 2 == 0 { 1 } else { -1 };
        let closed = tvalues::PiPower::new(
            BigRat::new(
                euler_number(2 * n as usize) * sign,
                BigInt::from(4).pow(n) * factorial(2 * n as usize),
            ),
            2 * n,
        );
        let want = pi_power_eval::<f64>(&closed);
        assert!(h.distance(&want) <= h.err + 1e-14, "h_{n}: {h}");
    }
}

#[test]
fn depth_sum_expansion_specializes_to_t_sums() {
    for &(n, d) in &[(2, 1), (2, 2), (3, 2), (3, 3), (4, 2)] {
        let expr = SymExpr::depth_sum_expansion(n, d);
        let got: PrecReal<f64> = frakt_numeric(&expr, 50_000).unwrap();
        let want = pi_power_eval::<f64>(&tsum_euler_form(n, d).unwrap());
        assert!(got.distance(&want) <= got.err + 1e-13, "N_({n},{d}): {got}");
    }
}

#[test]
fn t_numeric_high_precision_matches_t_all_twos() {
    let params = TruncationParams::new(100_000, TailOrder::FirstOrder).unwrap();
    let got = t_numeric::<Fixed192>(&[2, 2, 2], &params).unwrap();
    let want = pi_power_eval::<Fixed192>(&t_all_twos(3).unwrap());
    assert!(got.distance(&want) <= got.err + want.err);
    assert!(got.relative_err() < 1e-6);
}

#[test]
fn f_factorization_in_eight_variables() {
    assert!(verify_f_factorization::<BigRat>(8, 8).unwrap());
    assert!(verify_f_factorization::<i64>(6, 6).unwrap());
}

proptest! {
    #[test]
    fn three_routes_agree(n in 1u32..=40, d in 1u32..=40) {
        let a = tsum_pi_expansion(n, d).unwrap();
        let b = tsum_bernoulli_form(n, d).unwrap();
        let c = tsum_euler_form(n, d).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(&b, &c);
        prop_assert_eq!(d > n, a.is_zero());
    }

    #[test]
    fn coefficient_rows_alternate(d in 1u32..=40) {
        let row = coeff_row(d).unwrap();
        prop_assert_eq!(row.terms.len() as u32, (d - 1) / 2 + 1);
        for (j, c) in &row.terms {
            let positive = c > &BigRat::zero();
            prop_assert_eq!(positive, j % 2 == 0, "d={} j={}", d, j);
        }
    }

    #[test]
    fn t_sums_positive(n in 1u32..=25, d in 1u32..=25) {
        prop_assume!(d <= n);
        prop_assert!(tsum_euler_form(n, d).unwrap().coeff() > &BigRat::zero());
    }

    #[test]
    fn generators_symmetric(j in 0u32..=4, m in 1usize..=4) {
        prop_assert!(elementary::<BigRat>(j, m).is_symmetric());
        prop_assert!(complete::<BigRat>(j, m).is_symmetric());
    }
}
