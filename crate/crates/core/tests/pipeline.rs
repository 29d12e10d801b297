use num_rational::BigRational;
use num_traits::ToPrimitive;
use proptest::prelude::*;

use transum_core::classify::{theorem_1_1_check, theorem_c_check, ClassifyError};
use transum_core::poly::poly_gcd;
use transum_core::{
    classify_sum, degree2_criterion, total_value, RationalPolynomial, ReduceError, VerdictKind,
};

fn direct_sum(num: &RationalPolynomial, den: &RationalPolynomial, n_terms: u64) -> f64 {
    let p: Vec<f64> = num.coefficients().iter().map(|c| c.to_f64().unwrap()).collect();
    let q: Vec<f64> = den.coefficients().iter().map(|c| c.to_f64().unwrap()).collect();
    let horner = |c: &[f64], x: f64| c.iter().rev().fold(0.0, |acc, a| acc * x + a);
    let mut sum = 0.0;
    let mut comp = 0.0;
    for n in 0..n_terms {
        let x = n as f64;
        let t = horner(&p, x) / horner(&q, x);
        let y = t - comp;
        let s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
    sum
}

/// Direct partial sums with one Richardson step; the tail of a degree-gap-2 series is `c/N + O(1/N²)`.
fn extrapolated_sum(num: &RationalPolynomial, den: &RationalPolynomial) -> f64 {
    let n = 100_000;
    2.0 * direct_sum(num, den, 2 * n) - direct_sum(num, den, n)
}

fn factors_strategy() -> impl Strategy<Value = (i64, Vec<i64>)> {
    (1i64..=6).prop_flat_map(|q| {
        (Just(q), prop::collection::btree_set(1i64..=12, 2..=4).prop_map(|s| s.into_iter().collect()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reduction_preserves_value(
        (q, shifts) in factors_strategy(),
        coeffs in prop::collection::vec(-4i64..=4, 3),
    ) {
        let den = RationalPolynomial::product_of_linear(
            &shifts.iter().map(|&s| (q, s)).collect::<Vec<_>>(),
        );
        let max_deg = shifts.len() - 2;
        let num = RationalPolynomial::from_integers(&coeffs[..=max_deg]);
        prop_assume!(!num.is_zero());
        let exact = total_value(&num, &den).unwrap();
        let oracle = extrapolated_sum(&num, &den);
        prop_assert!((exact.value - oracle).abs() < 1e-7, "{} vs {}", exact.value, oracle);

        let v = classify_sum(&num, &den).unwrap();
        if let Some(value) = &v.value {
            prop_assert!((exact.value - value.to_f64().unwrap()).abs() < 1e-9);
        }
        prop_assert_eq!(v.kind == VerdictKind::RationalValue, v.value.is_some());
    }

    #[test]
    fn degree2_agrees((q, s1, s2) in (1i64..=12, 1i64..=30, 1i64..=30)) {
        prop_assume!(s1 != s2);
        let den = RationalPolynomial::product_of_linear(&[(q, s1), (q, s2)]);
        let v = classify_sum(&RationalPolynomial::one(), &den).unwrap();
        prop_assert_eq!(v.kind == VerdictKind::Transcendental, degree2_criterion(q as u64, s1, s2));
    }

    #[test]
    fn three_factor_check_never_conflicts(
        q in 1u64..=12,
        shifts in prop::collection::btree_set(1i64..=24, 3),
        alpha in -3i64..=3,
        beta in -6i64..=6,
    ) {
        let shifts: Vec<i64> = shifts.into_iter().collect();
        let num = RationalPolynomial::from_integers(&[beta, alpha]);
        prop_assume!(!num.is_zero());
        match theorem_c_check(q, [shifts[0], shifts[1], shifts[2]], &num) {
            Ok(v) => {
                let direct = classify_sum(
                    &num,
                    &RationalPolynomial::product_of_linear(&shifts.iter().map(|&s| (q as i64, s)).collect::<Vec<_>>()),
                ).unwrap();
                prop_assert_eq!(v.kind, direct.kind);
                prop_assert_eq!(v.value, direct.value);
            }
            Err(ClassifyError::Conflict(m)) => prop_assert!(false, "{}", m),
            Err(_) => {}
        }
    }

    #[test]
    fn four_factor_check_never_conflicts(
        q in 4u64..=12,
        picks in prop::collection::btree_set(1u64..=12, 4),
        coeffs in prop::collection::vec(-5i64..=5, 3),
    ) {
        let residues: Vec<u64> = picks.into_iter().collect();
        prop_assume!(residues.iter().all(|&s| s <= q));
        let num = RationalPolynomial::from_integers(&coeffs);
        prop_assume!(!num.is_zero());
        let den = RationalPolynomial::product_of_linear(
            &residues.iter().map(|&s| (q as i64, s as i64)).collect::<Vec<_>>(),
        );
        prop_assume!(poly_gcd(&num, &den).unwrap().degree() == Some(0));
        match theorem_1_1_check(q, [residues[0], residues[1], residues[2], residues[3]], &num) {
            Ok(v) => {
                let direct = classify_sum(&num, &den).unwrap();
                prop_assert_eq!(v.verdict.kind, direct.kind);
                prop_assert_eq!(v.exceptional.is_some(), direct.kind == VerdictKind::RationalValue);
            }
            Err(ClassifyError::Conflict(m)) => prop_assert!(false, "{}", m),
            Err(ClassifyError::Domain(_)) => {}
            Err(e) => prop_assert!(false, "unexpected error {}", e),
        }
    }
}

#[test]
fn exceptional_numerators_up_to_scale() {
    for (q, residues, base) in [
        (4u64, [1u64, 2, 3, 4], [-1i64, 12, 16]),
        (6, [1, 2, 4, 5], [-1, 36, 36]),
    ] {
        for c in [1i64, -1, 3, -7] {
            let num = RationalPolynomial::from_integers(&base.map(|x| x * c));
            let v = theorem_1_1_check(q, residues, &num).unwrap();
            assert!(v.exceptional.is_some());
            assert_eq!(v.verdict.value, Some(BigRational::from_integer(0.into())));
        }
    }
}

#[test]
fn input_errors_are_reported() {
    let one = RationalPolynomial::one();
    let lin = RationalPolynomial::product_of_linear;
    assert_eq!(classify_sum(&one, &lin(&[(2, 0)])).unwrap_err(), ReduceError::DivergentSum);
    assert!(matches!(
        classify_sum(&one, &lin(&[(1, -3), (1, 1)])).unwrap_err(),
        ReduceError::PoleAtIndex(3)
    ));
    let n2_plus_1 = RationalPolynomial::from_integers(&[1, 0, 1]);
    assert_eq!(
        classify_sum(&one, &(&n2_plus_1 * &lin(&[(1, 1)]))).unwrap_err(),
        ReduceError::NotRationalZeros
    );
}
