//! Top-level decision: is `Σ_{n≥0} P(n)/Q(n)` an explicit rational or transcendental?
//!
//! After reduction `T = A + S` with `A` rational and `S = Σ f(n)/n`. A nonzero `S` with
//! rational periodic coefficients is transcendental, so `T` is rational exactly when `S = 0`,
//! which Okada's criterion decides. The theorem-specific checks below layer the classical
//! two-, three- and four-factor statements on top and cross-check them against the criterion.

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::okada::{dilate, nullspace_search, okada_verdict, OkadaReport, PeriodicFunction};
use crate::poly::{poly_gcd, RationalPolynomial};
use crate::reduce::{reduce, to_periodic, ReduceError, ReducedSum};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Reduce(#[from] ReduceError),
    #[error("domain error: {0}")]
    Domain(String),
    /// A theorem-level claim contradicted the exact criterion.
    #[error("classification conflict: {0}")]
    Conflict(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VerdictKind {
    RationalValue,
    Transcendental,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub kind: VerdictKind,
    /// The exact value when `kind` is `RationalValue`.
    pub value: Option<BigRational>,
    /// Absent only when the periodic part cancelled completely.
    pub certificate: Option<OkadaReport>,
    pub reduced: ReducedSum,
    pub notes: Vec<String>,
}

impl Verdict {
    pub fn is_rational(&self) -> bool {
        self.kind == VerdictKind::RationalValue
    }
}

pub fn classify_sum(
    numerator: &RationalPolynomial,
    denominator: &RationalPolynomial,
) -> Result<Verdict, ReduceError> {
    let (_, reduced) = reduce(numerator, denominator)?;
    Ok(classify_reduced(reduced))
}

pub fn classify_reduced(reduced: ReducedSum) -> Verdict {
    if reduced.is_degenerate() {
        return Verdict {
            kind: VerdictKind::RationalValue,
            value: Some(reduced.offset.clone()),
            certificate: None,
            notes: vec!["periodic part cancels completely; the sum telescopes".into()],
            reduced,
        };
    }
    let f = to_periodic(&reduced);
    let report = okada_verdict(&f);
    let (kind, value, note) = if report.vanishes {
        (
            VerdictKind::RationalValue,
            Some(reduced.offset.clone()),
            "Okada criterion holds: the periodic sum vanishes",
        )
    } else {
        (
            VerdictKind::Transcendental,
            None,
            "Okada criterion fails: the periodic sum is nonzero, hence transcendental",
        )
    };
    Verdict {
        kind,
        value,
        certificate: Some(report),
        reduced,
        notes: vec![note.into()],
    }
}

/// `Σ α/((qn+s1)(qn+s2))` is transcendental iff `s1 ≢ s2 (mod q)`.
pub fn degree2_criterion(q: u64, s1: i64, s2: i64) -> bool {
    (s1 as i128 - s2 as i128).rem_euclid(q as i128) != 0
}

fn product_denominator(q: u64, shifts: &[i64]) -> RationalPolynomial {
    RationalPolynomial::product_of_linear(
        &shifts.iter().map(|&s| (q as i64, s)).collect::<Vec<_>>(),
    )
}

fn check_shifts(q: u64, shifts: &[i64]) -> Result<(), ClassifyError> {
    if q == 0 {
        return Err(ClassifyError::Domain("modulus must be positive".into()));
    }
    for (i, s) in shifts.iter().enumerate() {
        if shifts[..i].contains(s) {
            return Err(ClassifyError::Domain(format!("repeated shift {s}")));
        }
        if *s <= 0 && s.rem_euclid(q as i64) == 0 {
            return Err(ReduceError::PoleAtIndex((-s / q as i64) as u64).into());
        }
    }
    Ok(())
}

/// Three linear factors with a numerator `αn + β`.
///
/// When the shifts are not all congruent and none of the exclusion clauses
/// (`αs_k = βq` together with the other two shifts congruent) applies, transcendence is
/// claimed outright and confirmed against the criterion; otherwise the criterion decides.
pub fn theorem_c_check(
    q: u64,
    shifts: [i64; 3],
    numerator: &RationalPolynomial,
) -> Result<Verdict, ClassifyError> {
    check_shifts(q, &shifts)?;
    if numerator.is_zero() || numerator.degree() > Some(1) {
        return Err(ClassifyError::Domain("numerator must be nonzero of degree at most 1".into()));
    }
    let alpha = numerator.coeff(1);
    let beta = numerator.coeff(0);
    let qr = BigRational::from_integer(q.into());
    let same = |a: i64, b: i64| !degree2_criterion(q, a, b);
    let [s1, s2, s3] = shifts;

    let all_same = same(s1, s2) && same(s2, s3);
    let clause_violated = [(s3, s1, s2), (s2, s1, s3), (s1, s2, s3)]
        .iter()
        .any(|&(k, a, b)| &alpha * BigRational::from_integer(k.into()) == &beta * &qr && same(a, b));
    let hypotheses = !all_same && !clause_violated;

    let mut verdict = classify_sum(numerator, &product_denominator(q, &shifts))?;
    if hypotheses {
        if verdict.kind != VerdictKind::Transcendental {
            return Err(ClassifyError::Conflict(format!(
                "three-factor criterion claims transcendence for q={q}, shifts {shifts:?}"
            )));
        }
        verdict
            .notes
            .push("three-factor criterion applies: transcendental".into());
    } else {
        verdict
            .notes
            .push("three-factor hypotheses fail; decided by the periodic criterion".into());
    }
    Ok(verdict)
}

/// The two vanishing four-factor sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExceptionalIdentity {
    /// `Σ (16n²+12n−1)/((4n+1)(4n+2)(4n+3)(4n+4)) = 0`
    ModFour,
    /// `Σ (36n²+36n−1)/((6n+1)(6n+2)(6n+4)(6n+5)) = 0`
    ModSix,
}

impl ExceptionalIdentity {
    pub fn modulus(self) -> u64 {
        match self {
            ExceptionalIdentity::ModFour => 4,
            ExceptionalIdentity::ModSix => 6,
        }
    }

    pub fn residues(self) -> [u64; 4] {
        match self {
            ExceptionalIdentity::ModFour => [1, 2, 3, 4],
            ExceptionalIdentity::ModSix => [1, 2, 4, 5],
        }
    }

    pub fn numerator(self) -> RationalPolynomial {
        match self {
            ExceptionalIdentity::ModFour => RationalPolynomial::from_integers(&[-1, 12, 16]),
            ExceptionalIdentity::ModSix => RationalPolynomial::from_integers(&[-1, 36, 36]),
        }
    }

    pub fn periodic(self) -> PeriodicFunction {
        match self {
            ExceptionalIdentity::ModFour => PeriodicFunction::from_integers(&[1, -3, 1, 1]),
            ExceptionalIdentity::ModSix => PeriodicFunction::from_integers(&[-1, 3, 0, -3, 1, 0]),
        }
        .unwrap()
    }

    /// Whether `f` is a nonzero multiple of this pattern or of one of its dilations.
    pub fn matches(self, f: &PeriodicFunction) -> bool {
        let base = self.periodic();
        f.modulus() == base.modulus()
            && crate::arith::units(base.modulus())
                .into_iter()
                .any(|k| f.is_proportional_to(&dilate(&base, k as i64).unwrap()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuarticVerdict {
    pub verdict: Verdict,
    pub exceptional: Option<ExceptionalIdentity>,
}

/// Four factors `(qn+s_i)` with `0 < s_i ≤ q`, `gcd(s_1,…,s_4,q) = 1` and a numerator of
/// degree at most 2 coprime to the denominator. Such a sum is transcendental unless it is
/// one of the two exceptional identities up to scaling.
pub fn theorem_1_1_check(
    q: u64,
    residues: [u64; 4],
    numerator: &RationalPolynomial,
) -> Result<QuarticVerdict, ClassifyError> {
    let shifts: Vec<i64> = residues.iter().map(|&s| s as i64).collect();
    check_shifts(q, &shifts)?;
    if residues.iter().any(|&s| s == 0 || s > q) {
        return Err(ClassifyError::Domain(format!("residues must lie in 1..={q}")));
    }
    if residues.iter().fold(q, |acc, s| acc.gcd(s)) != 1 {
        return Err(ClassifyError::Domain("residues share a factor with the modulus".into()));
    }
    if numerator.is_zero() || numerator.degree() > Some(2) {
        return Err(ClassifyError::Domain("numerator must be nonzero of degree at most 2".into()));
    }
    let den = product_denominator(q, &shifts);
    if poly_gcd(numerator, &den).map_err(ReduceError::from)?.degree() != Some(0) {
        return Err(ClassifyError::Domain("numerator shares a root with the denominator".into()));
    }

    let mut verdict = classify_sum(numerator, &den)?;
    let f = to_periodic(&verdict.reduced);
    let exceptional = [ExceptionalIdentity::ModFour, ExceptionalIdentity::ModSix]
        .into_iter()
        .find(|e| e.matches(&f));
    match (exceptional, verdict.kind) {
        (Some(e), VerdictKind::RationalValue) => verdict
            .notes
            .push(format!("exceptional four-factor identity modulo {}", e.modulus())),
        (None, VerdictKind::Transcendental) => verdict
            .notes
            .push("four-factor criterion: not exceptional, transcendental".into()),
        _ => {
            return Err(ClassifyError::Conflict(format!(
                "four-factor classification disagrees with the criterion for q={q}, residues {residues:?}"
            )))
        }
    }
    Ok(QuarticVerdict {
        verdict,
        exceptional,
    })
}

/// A residue set admitting a vanishing periodic sum with every value nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceptionCase {
    pub q: u64,
    pub residues: Vec<u64>,
    /// Values on `residues`, primitive integers with the last entry positive.
    pub certificate: Vec<BigInt>,
}

/// A vector in the span of `basis` with no zero coordinate, if one exists.
fn nowhere_zero_combination(basis: &[Vec<BigInt>]) -> Option<Vec<BigInt>> {
    let dim = basis.first()?.len();
    if (0..dim).any(|i| basis.iter().all(|v| v[i].is_zero())) {
        return None;
    }
    // each coordinate of Σ t^j v_j is a nonzero polynomial in t, so some small t works
    (1i64..).find_map(|t| {
        let mut w = vec![BigInt::zero(); dim];
        let mut coef = BigInt::one();
        for v in basis {
            for (wi, vi) in w.iter_mut().zip(v) {
                *wi += &coef * vi;
            }
            coef *= t;
        }
        w.iter()
            .all(|x| !x.is_zero())
            .then(|| crate::linalg::normalize(w))
    })
}

/// Every `q ≤ q_max` and every 4-subset of `1..=q` coprime to `q` as a whole, keeping those
/// whose solution space contains a vector with all four values nonzero. Sorted by
/// `(q, residues)`.
pub fn exhaustive_exception_search(q_max: u64) -> Vec<ExceptionCase> {
    let tuples: Vec<(u64, Vec<u64>)> = (4..=q_max)
        .flat_map(|q| {
            (1..=q)
                .combinations(4)
                .filter(move |c| c.iter().fold(q, |acc, s| acc.gcd(s)) == 1)
                .map(move |c| (q, c))
        })
        .collect();
    let mut hits: Vec<ExceptionCase> = tuples
        .into_par_iter()
        .filter_map(|(q, residues)| {
            let basis = nullspace_search(q, &residues).expect("valid residues");
            nowhere_zero_combination(&basis).map(|certificate| ExceptionCase {
                q,
                residues,
                certificate,
            })
        })
        .collect();
    hits.sort_by(|a, b| (a.q, &a.residues).cmp(&(b.q, &b.residues)));
    hits
}
