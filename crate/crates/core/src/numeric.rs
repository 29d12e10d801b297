//! Floating-point evaluation of periodic sums, independent of the exact criterion.
//!
//! `Σ_{n≥1} f(n)/n = −(1/q)·Σ_{a=1}^{q} f(a)·ψ(a/q)` when `Σ f = 0`, with `ψ` at rationals given
//! by Gauss's finite formula. The truncation channel sums terms directly and bounds the tail
//! by grouping full periods.

use std::f64::consts::PI;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::okada::PeriodicFunction;
use crate::poly::RationalPolynomial;
use crate::reduce::{reduce, to_periodic, ReduceError, ReducedSum};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Allowance for rounding in library constants and elementary functions.
const ROUNDING: f64 = 1e-12;

/// A floating-point value with a bound on its distance from the exact quantity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericResult {
    pub value: f64,
    pub error_bound: f64,
}

impl NumericResult {
    /// True iff the two enclosures overlap.
    pub fn agrees_with(&self, other: &NumericResult) -> bool {
        (self.value - other.value).abs() <= self.error_bound + other.error_bound
    }
}

fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// `ψ(a/q)` for `0 < a ≤ q` by Gauss's digamma theorem.
pub fn digamma_rational(a: u64, q: u64) -> f64 {
    assert!(a > 0 && a <= q, "digamma_rational needs 0 < a <= q");
    let g = a.gcd(&q);
    let (r, m) = (a / g, q / g);
    if r == m {
        return -EULER_GAMMA;
    }
    let mf = m as f64;
    let mut acc = 0.0;
    for n in 1..=(m - 1) / 2 {
        // reduce n·r mod m before scaling to keep the angle small
        let k = (n * r) % m;
        acc += (2.0 * PI * k as f64 / mf).cos() * (PI * n as f64 / mf).sin().ln();
    }
    -EULER_GAMMA - (2.0 * mf).ln() - PI / 2.0 / (PI * r as f64 / mf).tan() + 2.0 * acc
}

/// Rough absolute error of [`digamma_rational`]: a few ulps per term of the Gauss sum.
fn digamma_error(a: u64, q: u64, value: f64) -> f64 {
    let m = (q / a.gcd(&q)) as f64;
    16.0 * f64::EPSILON * (m * (1.0 + m.ln()) + value.abs() + 4.0)
}

/// `Σ_{n≥1} f(n)/n` through digamma values.
pub fn sum_value(f: &PeriodicFunction) -> NumericResult {
    let q = f.modulus();
    let qf = q as f64;
    let mut value = 0.0;
    let mut bound = 0.0;
    let mut mass = 0.0;
    for a in 1..=q {
        let fa = f.at_residue(a);
        if fa.is_zero() {
            continue;
        }
        let x = to_f64(fa);
        let psi = digamma_rational(a, q);
        value -= x * psi / qf;
        bound += x.abs() * (digamma_error(a, q, psi) + f64::EPSILON * psi.abs()) / qf;
        mass += x.abs();
    }
    NumericResult {
        value,
        error_bound: bound + ROUNDING * mass / qf,
    }
}

/// Neumaier-compensated running sum.
#[derive(Default)]
struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

/// `Σ_{n=1}^{N} f(n)/n` with a rigorous tail bound.
///
/// The tail splits into the rest of the current period and whole periods
/// `k ≥ K`, each of which is `Σ_j f(j)(1/(kq+j) − 1/(kq))` and so at most
/// `Σ_j j|f(j)| / (kq)²`; `Σ_{k≥K} 1/k² ≤ 1/(K − 1/2)`.
pub fn truncated_sum(f: &PeriodicFunction, n_terms: u64) -> NumericResult {
    let q = f.modulus();
    assert!(n_terms >= q, "truncation point must cover a full period");
    let vals: Vec<f64> = f.values().iter().map(to_f64).collect();
    let at = |n: u64| vals[((n - 1) % q) as usize];

    let mut acc = CompensatedSum::default();
    for n in 1..=n_terms {
        let v = at(n);
        if v != 0.0 {
            acc.add(v / n as f64);
        }
    }

    let period_end = n_terms.div_ceil(q) * q;
    let partial: f64 = (n_terms + 1..=period_end).map(|n| at(n).abs() / n as f64).sum();
    let weighted: f64 = vals.iter().enumerate().map(|(j, v)| (j + 1) as f64 * v.abs()).sum();
    let k = (period_end / q) as f64;
    let blocks = weighted / (q as f64 * q as f64) / (k - 0.5);
    let mass: f64 = vals.iter().map(|v| v.abs()).sum();
    NumericResult {
        value: acc.total(),
        error_bound: (partial + blocks) * (1.0 + 1e-9) + ROUNDING * (1.0 + mass),
    }
}

fn with_offset(rs: &ReducedSum, periodic: Option<NumericResult>) -> NumericResult {
    let offset = to_f64(&rs.offset);
    let offset_err = f64::EPSILON * offset.abs();
    match periodic {
        None => NumericResult {
            value: offset,
            error_bound: offset_err,
        },
        Some(s) => NumericResult {
            value: offset + s.value,
            error_bound: s.error_bound + offset_err + f64::EPSILON * (offset + s.value).abs(),
        },
    }
}

/// Value of `Σ_{n≥0} P(n)/Q(n)` as `offset + Σ f(n)/n` through digamma values.
pub fn total_value(
    numerator: &RationalPolynomial,
    denominator: &RationalPolynomial,
) -> Result<NumericResult, ReduceError> {
    let (_, rs) = reduce(numerator, denominator)?;
    Ok(reduced_value(&rs))
}

pub fn reduced_value(rs: &ReducedSum) -> NumericResult {
    let periodic = (!rs.is_degenerate()).then(|| sum_value(&to_periodic(rs)));
    with_offset(rs, periodic)
}

/// As [`total_value`] but truncating the periodic part after `n_terms` terms
/// (raised to one full period if smaller).
pub fn truncated_total(
    numerator: &RationalPolynomial,
    denominator: &RationalPolynomial,
    n_terms: u64,
) -> Result<NumericResult, ReduceError> {
    let (_, rs) = reduce(numerator, denominator)?;
    let periodic = (!rs.is_degenerate()).then(|| {
        let f = to_periodic(&rs);
        truncated_sum(&f, n_terms.max(f.modulus()))
    });
    Ok(with_offset(&rs, periodic))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// `ψ(x) = −γ + Σ_{n≥0} (1/(n+1) − 1/(n+x))`, truncated with an Euler–Maclaurin tail.
    fn digamma_series(x: f64) -> f64 {
        let n_terms = 2_000_000u64;
        let mut acc = CompensatedSum::default();
        for n in 0..n_terms {
            let n = n as f64;
            acc.add(1.0 / (n + 1.0) - 1.0 / (n + x));
        }
        // Σ_{n≥N} [1/(n+1) − 1/(n+x)] ≈ ln((N+x−1/2)/(N+1/2))
        let big_n = n_terms as f64;
        -EULER_GAMMA + acc.total() + ((big_n + x - 0.5) / (big_n + 0.5)).ln()
    }

    #[test]
    fn digamma_examples() {
        let half = digamma_rational(1, 2);
        assert!((half - (-EULER_GAMMA - 2.0 * LN_2)).abs() < 1e-14);
        assert!((half - -1.963_510_026_0).abs() < 1e-10);
        assert_eq!(digamma_rational(1, 1), -EULER_GAMMA);
        let quarter = digamma_rational(1, 4);
        assert!((quarter - (-EULER_GAMMA - 3.0 * LN_2 - PI / 2.0)).abs() < 1e-14);
        assert!((quarter - -4.227_453_533_3).abs() < 1e-9);
        assert_eq!(digamma_rational(2, 4), half);
    }

    #[test]
    fn digamma_matches_series_oracle() {
        for (a, q) in [(1, 2), (1, 4), (1, 3), (2, 3), (3, 7), (5, 12), (11, 12)] {
            let x = a as f64 / q as f64;
            let oracle = digamma_series(x);
            assert!((digamma_rational(a, q) - oracle).abs() < 1e-11, "{a}/{q}");
        }
    }

    #[test]
    fn digamma_matches_statrs() {
        for q in 1..=60u64 {
            for a in 1..=q {
                let ours = digamma_rational(a, q);
                let theirs = statrs::function::gamma::digamma(a as f64 / q as f64);
                assert!(
                    (ours - theirs).abs() <= 1e-12 * (1.0 + ours.abs()),
                    "{a}/{q}: {ours} vs {theirs}"
                );
            }
        }
    }

    #[test]
    fn sum_value_examples() {
        let f = PeriodicFunction::from_integers(&[1, -1]).unwrap();
        let s = sum_value(&f);
        assert!((s.value - LN_2).abs() <= s.error_bound + 1e-15);
        assert!(s.error_bound <= 1e-10 * 2.0);

        let f = PeriodicFunction::from_integers(&[1, -3, 1, 1]).unwrap();
        let s = sum_value(&f);
        assert!(s.value.abs() <= s.error_bound);

        let f = PeriodicFunction::new(6, vec![r(-1, 2), r(3, 2), r(0, 1), r(-3, 2), r(1, 2), r(0, 1)]).unwrap();
        let s = sum_value(&f);
        assert!(s.value.abs() <= s.error_bound);
        assert!(s.error_bound <= 1e-10 * 4.0);
    }

    #[test]
    fn truncated_examples() {
        let f = PeriodicFunction::from_integers(&[1, -1]).unwrap();
        let t = truncated_sum(&f, 1_000_000);
        assert!(t.error_bound <= 2e-6);
        assert!((t.value - LN_2).abs() <= t.error_bound);
        assert!((t.value - (LN_2 - 5e-7)).abs() < 1e-11);

        let f = PeriodicFunction::from_integers(&[1, -3, 1, 1]).unwrap();
        let t = truncated_sum(&f, 1_000_000);
        assert!(t.value.abs() <= 4e-6);
        assert!(t.error_bound <= 4e-6);

        // incomplete final period
        let f = PeriodicFunction::from_integers(&[2, 0, -1, -1, 0]).unwrap();
        let t = truncated_sum(&f, 1003);
        assert!(t.agrees_with(&sum_value(&f)));
    }

    #[test]
    fn total_value_examples() {
        let lin = RationalPolynomial::product_of_linear;
        let one = RationalPolynomial::one();
        let t = total_value(&one, &lin(&[(1, 1), (2, 1), (4, 1)])).unwrap();
        assert!((t.value - PI / 3.0).abs() < 1e-9);

        let num = RationalPolynomial::from_integers(&[-1, 12, 16]);
        let t = total_value(&num, &lin(&[(4, 1), (4, 2), (4, 3), (4, 4)])).unwrap();
        assert!(t.value.abs() < 1e-9);

        let t = total_value(&one, &lin(&[(2, 1), (2, 2), (2, 3)])).unwrap();
        assert!((t.value - (LN_2 - 0.5)).abs() < 1e-9);
        assert!((t.value - 0.193_147_180_6).abs() < 1e-9);
    }

    #[test]
    fn telescoping_total_is_exact_offset() {
        let lin = RationalPolynomial::product_of_linear;
        let t = total_value(&RationalPolynomial::one(), &lin(&[(1, 1), (1, 2)])).unwrap();
        assert_eq!(t.value, 1.0);
    }
}
