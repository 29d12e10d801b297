//! Rewriting `T = Σ_{n≥0} P(n)/Q(n)` as `A + Σ_{n≥1} f(n)/n` with `f` periodic.
//!
//! The pipeline is
//! [`to_linear_factors`] → [`partial_fractions`] → [`shift_to_fundamental`] →
//! [`divide_common_gcd`] → [`to_periodic`]. Only finitely many leading terms are ever moved
//! between the offset and the periodic part; the grouped tail converges absolutely because
//! the partial-fraction coefficients sum to zero.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::okada::PeriodicFunction;
use crate::poly::{poly_gcd, PolyError, RationalPolynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error("denominator does not split into rational linear factors")]
    NotRationalZeros,
    #[error("denominator has a repeated root")]
    NotSimpleZeros,
    #[error("series diverges: numerator degree must be at most denominator degree minus 2")]
    DivergentSum,
    #[error("denominator vanishes at n = {0}")]
    PoleAtIndex(u64),
    #[error("numerator is zero")]
    ZeroNumerator,
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("inconsistent input: {0}")]
    Inconsistent(String),
    #[error("value out of supported range: {0}")]
    TooLarge(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Denominator written as `scale · ∏ (q·x + s_i)` with a common modulus `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearFactorForm {
    pub q: u64,
    pub scale: BigRational,
    pub factors: Vec<i64>,
    pub numerator: RationalPolynomial,
}

impl LinearFactorForm {
    /// `scale · ∏ (q·x + s_i)`.
    pub fn denominator(&self) -> RationalPolynomial {
        let prod = RationalPolynomial::product_of_linear(
            &self.factors.iter().map(|&s| (self.q as i64, s)).collect::<Vec<_>>(),
        );
        prod.scale(&self.scale)
    }
}

/// `offset + Σ_{n≥1} f(n)/n` where `f(s) = coefficient` on each listed residue class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedSum {
    pub q: u64,
    /// `(residue in 1..=q, nonzero coefficient)`, residues increasing.
    pub terms: Vec<(u64, BigRational)>,
    pub offset: BigRational,
}

impl ReducedSum {
    /// True when every coefficient cancelled and the sum is exactly `offset`.
    pub fn is_degenerate(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Largest number of whole periods a single term may be moved by.
const MAX_SHIFT: u64 = 1 << 20;

fn to_i64(x: &BigInt, what: &str) -> Result<i64, ReduceError> {
    x.to_i64()
        .ok_or_else(|| ReduceError::TooLarge(format!("{what} {x}")))
}

/// Cancels common factors, checks the denominator splits with simple roots away from
/// `n = 0, 1, 2, …`, and writes it over a common modulus.
pub fn to_linear_factors(
    numerator: &RationalPolynomial,
    denominator: &RationalPolynomial,
) -> Result<LinearFactorForm, ReduceError> {
    if denominator.is_zero() {
        return Err(ReduceError::ZeroDenominator);
    }
    if numerator.is_zero() {
        return Err(ReduceError::ZeroNumerator);
    }
    let g = poly_gcd(numerator, denominator)?;
    let (num, den) = if g.degree() > Some(0) {
        (numerator.div_rem(&g).0, denominator.div_rem(&g).0)
    } else {
        (numerator.clone(), denominator.clone())
    };
    let den_deg = den.degree().unwrap();
    if den_deg == 0 {
        return Err(ReduceError::DivergentSum);
    }
    let roots = den.rational_roots()?;
    if !roots.fully_split {
        return Err(ReduceError::NotRationalZeros);
    }
    if roots.roots.iter().any(|(_, m)| *m > 1) {
        return Err(ReduceError::NotSimpleZeros);
    }
    if num.degree().unwrap() + 2 > den_deg {
        return Err(ReduceError::DivergentSum);
    }
    for (root, _) in &roots.roots {
        if root.is_integer() && !root.is_negative() {
            let n = root
                .to_integer()
                .to_u64()
                .ok_or_else(|| ReduceError::TooLarge(format!("pole {root}")))?;
            return Err(ReduceError::PoleAtIndex(n));
        }
    }
    let q_big = roots
        .roots
        .iter()
        .fold(BigInt::one(), |acc, (root, _)| acc.lcm(root.denom()));
    let q = q_big
        .to_u64()
        .ok_or_else(|| ReduceError::TooLarge(format!("modulus {q_big}")))?;
    let qr = BigRational::from_integer(q_big.clone());
    let factors = roots
        .roots
        .iter()
        .map(|(root, _)| to_i64(&(-(root * &qr)).to_integer(), "shift"))
        .collect::<Result<Vec<_>, _>>()?;
    let m = factors.len();
    let scale = den.leading().unwrap() / BigRational::from_integer(num_traits::pow(q_big, m));
    Ok(LinearFactorForm {
        q,
        scale,
        factors,
        numerator: num,
    })
}

/// Coefficients `A_i` with `P(x)/Q(x) = Σ A_i/(q·x + s_i)`.
pub fn partial_fractions(lf: &LinearFactorForm) -> Result<Vec<(i64, BigRational)>, ReduceError> {
    let m = lf.factors.len();
    if lf.numerator.degree().is_some_and(|d| d + 2 > m) {
        return Err(ReduceError::DivergentSum);
    }
    let q = BigRational::from_integer(lf.q.into());
    let mut out = Vec::with_capacity(m);
    for (i, &si) in lf.factors.iter().enumerate() {
        let root = BigRational::from_integer((-si).into()) / &q;
        let mut denom = lf.scale.clone();
        for (j, &sj) in lf.factors.iter().enumerate() {
            if j != i {
                denom *= BigRational::from_integer((sj as i128 - si as i128).into());
            }
        }
        let a = lf.numerator.evaluate(&root) / denom;
        if a.is_zero() {
            return Err(ReduceError::Inconsistent(format!(
                "numerator vanishes at the root -{si}/{}",
                lf.q
            )));
        }
        out.push((si, a));
    }
    let total: BigRational = out.iter().map(|(_, a)| a).sum();
    if !total.is_zero() {
        return Err(ReduceError::Inconsistent(format!(
            "partial fraction coefficients sum to {total}"
        )));
    }
    Ok(out)
}

/// Moves every shift into `(0, q]`, charging the finitely many skipped or added terms to the
/// offset, and merges terms that land on the same residue.
pub fn shift_to_fundamental(
    lf: &LinearFactorForm,
    pf: &[(i64, BigRational)],
) -> Result<ReducedSum, ReduceError> {
    let total: BigRational = pf.iter().map(|(_, a)| a).sum();
    if !total.is_zero() {
        return Err(ReduceError::Inconsistent(format!(
            "coefficients sum to {total}, not zero"
        )));
    }
    let q = lf.q as i64;
    let mut offset = BigRational::zero();
    let mut merged: BTreeMap<u64, BigRational> = BTreeMap::new();
    for (s, a) in pf {
        let base = (s - 1).rem_euclid(q) + 1;
        let k = (s - base) / q;
        if k.unsigned_abs() > MAX_SHIFT {
            return Err(ReduceError::TooLarge(format!("shift of {k} periods")));
        }
        // Σ_{n≥0} a/(qn+s) = Σ_{n≥k} a/(qn+base)
        let partial: BigRational = if k >= 0 {
            -(0..k)
                .map(|t| BigRational::new(1.into(), (q * t + base).into()))
                .sum::<BigRational>()
        } else {
            (k..0)
                .map(|t| BigRational::new(1.into(), (q * t + base).into()))
                .sum::<BigRational>()
        };
        offset += a * partial;
        *merged.entry(base as u64).or_insert_with(BigRational::zero) += a;
    }
    let terms = merged.into_iter().filter(|(_, a)| !a.is_zero()).collect();
    Ok(ReducedSum {
        q: lf.q,
        terms,
        offset,
    })
}

/// Divides out `d = gcd(residues, q)` using `Σ f(dm)/(dm) = (1/d)·Σ f(dm)/m`.
pub fn divide_common_gcd(rs: &ReducedSum) -> ReducedSum {
    let mut out = rs.clone();
    loop {
        if out.terms.is_empty() {
            return out;
        }
        let d = out.terms.iter().fold(out.q, |acc, (s, _)| acc.gcd(s));
        if d == 1 {
            return out;
        }
        let dr = BigRational::from_integer(d.into());
        out.q /= d;
        let mut merged: BTreeMap<u64, BigRational> = BTreeMap::new();
        for (s, a) in &out.terms {
            *merged.entry(s / d).or_insert_with(BigRational::zero) += a / &dr;
        }
        out.terms = merged.into_iter().filter(|(_, a)| !a.is_zero()).collect();
    }
}

/// `f(s_i) = A_i` on the listed residues and zero elsewhere. A degenerate sum maps to the
/// zero function (on at least two residues).
pub fn to_periodic(rs: &ReducedSum) -> PeriodicFunction {
    let q = rs.q.max(2);
    let mut values = vec![BigRational::zero(); q as usize];
    for (s, a) in &rs.terms {
        values[*s as usize - 1] = a.clone();
    }
    PeriodicFunction::new(q, values).expect("reduced sums have zero coefficient sum")
}

/// Runs the whole reduction.
pub fn reduce(
    numerator: &RationalPolynomial,
    denominator: &RationalPolynomial,
) -> Result<(LinearFactorForm, ReducedSum), ReduceError> {
    let lf = to_linear_factors(numerator, denominator)?;
    let pf = partial_fractions(&lf)?;
    let shifted = shift_to_fundamental(&lf, &pf)?;
    Ok((lf, divide_common_gcd(&shifted)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn lin(factors: &[(i64, i64)]) -> RationalPolynomial {
        RationalPolynomial::product_of_linear(factors)
    }

    fn p(s: &str) -> RationalPolynomial {
        parse_polynomial(s).unwrap()
    }

    #[test]
    fn linear_factor_examples() {
        let lf = to_linear_factors(&p("1"), &lin(&[(1, 1), (2, 1), (4, 1)])).unwrap();
        assert_eq!(lf.q, 4);
        assert_eq!(lf.factors, vec![1, 2, 4]);
        assert_eq!(lf.scale, r(1, 8));
        assert_eq!(lf.denominator(), lin(&[(1, 1), (2, 1), (4, 1)]));

        let den = lin(&[(4, 1), (4, 2), (4, 3), (4, 4)]);
        let lf = to_linear_factors(&p("16*n^2+12*n-1"), &den).unwrap();
        assert_eq!((lf.q, lf.factors.clone(), lf.scale.clone()), (4, vec![1, 2, 3, 4], r(1, 1)));

        let lf = to_linear_factors(&p("1"), &lin(&[(2, 1), (2, 2), (2, 4)])).unwrap();
        assert_eq!((lf.q, lf.factors), (2, vec![1, 2, 4]));
    }

    #[test]
    fn linear_factor_errors() {
        assert_eq!(
            to_linear_factors(&p("1"), &p("n^2+1")),
            Err(ReduceError::NotRationalZeros)
        );
        assert_eq!(
            to_linear_factors(&p("1"), &lin(&[(2, 1), (2, 1)])),
            Err(ReduceError::NotSimpleZeros)
        );
        assert_eq!(
            to_linear_factors(&p("n"), &lin(&[(2, 1), (2, 3)])),
            Err(ReduceError::DivergentSum)
        );
        assert_eq!(to_linear_factors(&p("1"), &lin(&[(2, 0)])), Err(ReduceError::DivergentSum));
        assert_eq!(
            to_linear_factors(&p("1"), &lin(&[(1, -3), (1, 1)])),
            Err(ReduceError::PoleAtIndex(3))
        );
        assert_eq!(
            to_linear_factors(&p("1"), &lin(&[(1, 0), (1, 1)])),
            Err(ReduceError::PoleAtIndex(0))
        );
        assert_eq!(to_linear_factors(&p("0"), &lin(&[(1, 1)])), Err(ReduceError::ZeroNumerator));
    }

    #[test]
    fn common_factors_cancel_first() {
        // (n+1)/((n+1)(n+2)(n+3)) = 1/((n+2)(n+3))
        let lf = to_linear_factors(&p("n+1"), &lin(&[(1, 1), (1, 2), (1, 3)])).unwrap();
        assert_eq!((lf.q, lf.factors.clone()), (1, vec![2, 3]));
        assert_eq!(lf.numerator, p("1"));
        // cancelling the repeated factor leaves simple roots
        let lf = to_linear_factors(&p("n+1"), &lin(&[(1, 1), (1, 1), (1, 2), (1, 3)])).unwrap();
        assert_eq!(lf.factors, vec![1, 2, 3]);
    }

    #[test]
    fn partial_fraction_examples() {
        let den = lin(&[(4, 1), (4, 2), (4, 3), (4, 4)]);
        let lf = to_linear_factors(&p("16*n^2+12*n-1"), &den).unwrap();
        let pf = partial_fractions(&lf).unwrap();
        // −1/2 · (1, −3, 1, 1)
        assert_eq!(pf, vec![(1, r(-1, 2)), (2, r(3, 2)), (3, r(-1, 2)), (4, r(-1, 2))]);

        let lf = to_linear_factors(&p("1"), &lin(&[(2, 1), (2, 2)])).unwrap();
        assert_eq!(partial_fractions(&lf).unwrap(), vec![(1, r(1, 1)), (2, r(-1, 1))]);

        let den = lin(&[(6, 1), (6, 2), (6, 4), (6, 5)]);
        let lf = to_linear_factors(&p("36*n^2+36*n-1"), &den).unwrap();
        assert_eq!(
            partial_fractions(&lf).unwrap(),
            vec![(1, r(-1, 2)), (2, r(3, 2)), (4, r(-3, 2)), (5, r(1, 2))]
        );
    }

    #[test]
    fn partial_fractions_reject_shared_root() {
        let lf = LinearFactorForm {
            q: 2,
            scale: r(1, 1),
            factors: vec![1, 2, 3],
            numerator: p("2*n+1"),
        };
        assert!(matches!(partial_fractions(&lf), Err(ReduceError::Inconsistent(_))));
    }

    #[test]
    fn shift_examples() {
        let lf = to_linear_factors(&p("1"), &lin(&[(2, 1), (2, 2), (2, 3)])).unwrap();
        let pf = partial_fractions(&lf).unwrap();
        assert_eq!(pf, vec![(1, r(1, 2)), (2, r(-1, 1)), (3, r(1, 2))]);
        let rs = shift_to_fundamental(&lf, &pf).unwrap();
        assert_eq!(rs.offset, r(-1, 2));
        assert_eq!(rs.terms, vec![(1, r(1, 1)), (2, r(-1, 1))]);
        assert_eq!(rs.q, 2);

        let lf = to_linear_factors(&p("16*n^2+12*n-1"), &lin(&[(4, 1), (4, 2), (4, 3), (4, 4)])).unwrap();
        let pf = partial_fractions(&lf).unwrap();
        let rs = shift_to_fundamental(&lf, &pf).unwrap();
        assert_eq!(rs.offset, r(0, 1));
        assert_eq!(rs.terms.len(), 4);

        // Σ (1/(3n+1) − 1/(3n+4)) = 1
        let lf = LinearFactorForm { q: 3, scale: r(1, 3), factors: vec![1, 4], numerator: p("1") };
        let pf = partial_fractions(&lf).unwrap();
        assert_eq!(pf, vec![(1, r(1, 1)), (4, r(-1, 1))]);
        let rs = shift_to_fundamental(&lf, &pf).unwrap();
        assert!(rs.is_degenerate());
        assert_eq!(rs.offset, r(1, 1));
    }

    #[test]
    fn negative_shift_adds_terms() {
        // 1/((3n-1)(3n+1)) = (1/2)/(3n-1) - (1/2)/(3n+1); the class of -1 is residue 2 and
        // its n = -1 member 1/(-1) enters the offset
        let lf = to_linear_factors(&p("1"), &lin(&[(3, -1), (3, 1)])).unwrap();
        assert_eq!((lf.factors.clone(), lf.scale.clone()), (vec![-1, 1], r(1, 1)));
        let pf = partial_fractions(&lf).unwrap();
        assert_eq!(pf, vec![(-1, r(1, 2)), (1, r(-1, 2))]);
        let rs = shift_to_fundamental(&lf, &pf).unwrap();
        assert_eq!(rs.offset, r(-1, 2));
        assert_eq!(rs.terms, vec![(1, r(-1, 2)), (2, r(1, 2))]);
    }

    #[test]
    fn gcd_division_examples() {
        let rs = ReducedSum { q: 4, terms: vec![(2, r(1, 1)), (4, r(-1, 1))], offset: r(0, 1) };
        let out = divide_common_gcd(&rs);
        assert_eq!(out.q, 2);
        assert_eq!(out.terms, vec![(1, r(1, 2)), (2, r(-1, 2))]);

        let rs = ReducedSum { q: 6, terms: vec![(3, r(1, 1)), (6, r(-1, 1))], offset: r(5, 7) };
        let out = divide_common_gcd(&rs);
        assert_eq!((out.q, out.terms.clone(), out.offset.clone()), (2, vec![(1, r(1, 3)), (2, r(-1, 3))], r(5, 7)));

        let rs = ReducedSum { q: 4, terms: vec![(1, r(1, 1)), (4, r(-1, 1))], offset: r(0, 1) };
        assert_eq!(divide_common_gcd(&rs), rs);
    }

    #[test]
    fn periodic_examples() {
        let (_, rs) = reduce(&p("16*n^2+12*n-1"), &lin(&[(4, 1), (4, 2), (4, 3), (4, 4)])).unwrap();
        let f = to_periodic(&rs);
        assert_eq!(f.values(), &[r(-1, 2), r(3, 2), r(-1, 2), r(-1, 2)]);
        assert!(f.is_proportional_to(&PeriodicFunction::from_integers(&[1, -3, 1, 1]).unwrap()));
        let (_, rs) = reduce(&p("36*n^2+36*n-1"), &lin(&[(6, 1), (6, 2), (6, 4), (6, 5)])).unwrap();
        assert_eq!(
            to_periodic(&rs).values(),
            &[r(-1, 2), r(3, 2), r(0, 1), r(-3, 2), r(1, 2), r(0, 1)]
        );
        let degenerate = ReducedSum { q: 3, terms: vec![], offset: r(1, 1) };
        assert!(to_periodic(&degenerate).is_zero());
    }

    fn arb_input() -> impl Strategy<Value = (RationalPolynomial, Vec<(i64, i64)>)> {
        (prop::collection::btree_set(1i64..30, 3..6), 1i64..9, prop::collection::vec(-5i64..6, 3))
            .prop_map(|(shifts, q, num)| {
                let factors: Vec<(i64, i64)> = shifts.into_iter().map(|s| (q, s)).collect();
                let m = factors.len();
                let numerator = RationalPolynomial::from_integers(&num[..(m - 2).min(3)]);
                (numerator, factors)
            })
    }

    proptest! {
        #[test]
        fn partial_fractions_recombine((num, factors) in arb_input()) {
            let den = lin(&factors);
            prop_assume!(!num.is_zero());
            let Ok(lf) = to_linear_factors(&num, &den) else { return Ok(()); };
            let Ok(pf) = partial_fractions(&lf) else { return Ok(()); };
            let q = lf.q as i64;
            let mut recombined = RationalPolynomial::zero();
            for (i, (_, a)) in pf.iter().enumerate() {
                let others: Vec<(i64, i64)> = lf.factors.iter().enumerate()
                    .filter(|(j, _)| *j != i).map(|(_, &s)| (q, s)).collect();
                recombined = &recombined + &lin(&others).scale(&(a * &lf.scale));
            }
            prop_assert_eq!(recombined, lf.numerator.clone());
            let total: BigRational = pf.iter().map(|(_, a)| a).sum();
            prop_assert!(total.is_zero());
        }

        #[test]
        fn reduced_sums_are_normalized((num, factors) in arb_input()) {
            let den = lin(&factors);
            prop_assume!(!num.is_zero());
            let Ok((_, rs)) = reduce(&num, &den) else { return Ok(()); };
            let total: BigRational = rs.terms.iter().map(|(_, a)| a).sum();
            prop_assert!(total.is_zero());
            if !rs.is_degenerate() {
                prop_assert!(rs.q > 1);
                let g = rs.terms.iter().fold(rs.q, |acc, (s, _)| acc.gcd(s));
                prop_assert_eq!(g, 1);
                for w in rs.terms.windows(2) { prop_assert!(w[0].0 < w[1].0); }
                for (s, a) in &rs.terms {
                    prop_assert!(*s >= 1 && *s <= rs.q);
                    prop_assert!(!a.is_zero());
                }
            }
        }
    }
}
