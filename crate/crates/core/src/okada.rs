//! Okada's criterion for the vanishing of `Σ_{n≥1} f(n)/n` with `f` rational and periodic.
//!
//! For `f` periodic mod `q` with `Σ_{i=1}^{q} f(i) = 0`, the sum is zero iff
//!
//! ```text
//! f(a) + Σ_{r∈L} f(r)·A(r,a) + f(q)/φ(q) = 0     for every a ∈ J
//! Σ_{r∈L'} f(r)·ε(r,p) = 0                        for every prime p | q
//! ```
//!
//! where `J` are the units mod `q`, `L` the residues with `1 < gcd(r,q) < q`, and `L' = L ∪ {q}`.
//! Residue `q` stands for the class `0 mod q` everywhere in this module.
//!
//! `A(r,a)` equals `Σ_{m∈M, am ≡ r (mod q)} 1/m` with `M` the integers built from primes of
//! `q`; [`decomposition_sum`] evaluates truncations of that series with a rigorous tail bound.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use thiserror::Error;

use crate::arith::{euler_phi, factorize, multiplicative_order, units, vp};
use crate::linalg::{clear_denominators, integer_nullspace};
use crate::smooth::SmoothNumbers;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OkadaError {
    #[error("modulus must exceed 1, got {0}")]
    InvalidModulus(u64),
    #[error("expected {expected} values for modulus {expected}, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("values must sum to zero, got {0}")]
    NonZeroSum(BigRational),
    #[error("domain error: {0}")]
    Domain(String),
}

/// Rational function on residues `1..=q`, extended periodically, with zero sum over a period.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PeriodicFunction {
    q: u64,
    values: Vec<BigRational>,
}

impl PeriodicFunction {
    /// `values[i]` is `f(i + 1)`.
    pub fn new(q: u64, values: Vec<BigRational>) -> Result<Self, OkadaError> {
        if q <= 1 {
            return Err(OkadaError::InvalidModulus(q));
        }
        if values.len() as u64 != q {
            return Err(OkadaError::WrongLength {
                expected: q as usize,
                got: values.len(),
            });
        }
        let sum: BigRational = values.iter().sum();
        if !sum.is_zero() {
            return Err(OkadaError::NonZeroSum(sum));
        }
        Ok(PeriodicFunction { q, values })
    }

    pub fn from_integers(values: &[i64]) -> Result<Self, OkadaError> {
        Self::new(
            values.len() as u64,
            values.iter().map(|&v| BigRational::from_integer(v.into())).collect(),
        )
    }

    /// The zero function on `q` residues (`q ≥ 2`).
    pub fn zero(q: u64) -> Result<Self, OkadaError> {
        Self::new(q, vec![BigRational::zero(); q as usize])
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    /// `f(n)` for any integer `n`.
    pub fn at(&self, n: i64) -> &BigRational {
        let idx = n.rem_euclid(self.q as i64) as usize;
        if idx == 0 {
            &self.values[self.q as usize - 1]
        } else {
            &self.values[idx - 1]
        }
    }

    /// `f(r)` for a residue `r ∈ 1..=q`.
    pub fn at_residue(&self, r: u64) -> &BigRational {
        &self.values[r as usize - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    /// Residues with a nonzero value.
    pub fn support(&self) -> Vec<u64> {
        (1..=self.q)
            .filter(|&r| !self.at_residue(r).is_zero())
            .collect()
    }

    pub fn max_abs(&self) -> BigRational {
        self.values
            .iter()
            .map(|v| v.abs())
            .max()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        PeriodicFunction {
            q: self.q,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    /// True iff `self = c·other` for some nonzero rational `c`.
    pub fn is_proportional_to(&self, other: &Self) -> bool {
        if self.q != other.q || self.is_zero() || other.is_zero() {
            return false;
        }
        let i = self.values.iter().position(|v| !v.is_zero()).unwrap();
        if other.values[i].is_zero() {
            return false;
        }
        let c = &self.values[i] / &other.values[i];
        self.values
            .iter()
            .zip(&other.values)
            .all(|(a, b)| *a == b * &c)
    }
}

/// Residue classes of a modulus: units `J`, proper non-units `L`, and `L' = L ∪ {q}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportSets {
    pub j: Vec<u64>,
    pub l: Vec<u64>,
    pub l_prime: Vec<u64>,
}

pub fn support_sets(q: u64) -> SupportSets {
    assert!(q > 1, "support_sets needs q > 1");
    let j = units(q);
    let l: Vec<u64> = (1..=q)
        .filter(|r| {
            let g = r.gcd(&q);
            1 < g && g < q
        })
        .collect();
    let mut l_prime = l.clone();
    l_prime.push(q);
    SupportSets { j, l, l_prime }
}

/// Primes `p | q` with `v_p(r) ≥ v_p(q)`.
fn saturated_primes(r: u64, q: u64) -> Vec<u64> {
    factorize(q)
        .factors
        .iter()
        .filter(|&&(p, e)| vp(p, r) >= e)
        .map(|&(p, _)| p)
        .collect()
}

/// `ε(r,p)`: `v_p(q) + 1/(p-1)` when `v_p(r) ≥ v_p(q)`, else `v_p(r)`.
pub fn epsilon(r: u64, p: u64, q: u64) -> BigRational {
    let vq = vp(p, q);
    let vr = vp(p, r);
    if vr >= vq {
        BigRational::from_integer(vq.into()) + BigRational::new(1.into(), (p - 1).into())
    } else {
        BigRational::from_integer(vr.into())
    }
}

/// `S(r)`: products of the saturated primes of `r` with every exponent in `[0, φ(q))`.
pub fn s_set(r: u64, q: u64) -> Vec<BigInt> {
    let phi = euler_phi(q) as usize;
    let mut out = vec![BigInt::one()];
    for p in saturated_primes(r, q) {
        let powers: Vec<BigInt> = (0..phi).map(|k| BigInt::from(p).pow(k)).collect();
        out = out
            .iter()
            .flat_map(|n| powers.iter().map(move |pk| n * pk))
            .collect();
    }
    out
}

/// `σ(r,a,n)`: 1 iff `r ≡ a·n·gcd(r,q) (mod q)`.
pub fn sigma(r: u64, a: u64, n: &BigInt, q: u64) -> u8 {
    let g = r.gcd(&q);
    let lhs = BigInt::from(a) * n * BigInt::from(g) - BigInt::from(r);
    u8::from(lhs.mod_floor(&BigInt::from(q)).is_zero())
}

/// `A(r,a)` evaluated literally from `S(r)` and `σ`. Cost grows like `φ(q)^|P(r)|`;
/// [`coefficient_a`] is the working route.
pub fn coefficient_a_by_definition(r: u64, a: u64, q: u64) -> BigRational {
    let phi = euler_phi(q) as usize;
    let g = r.gcd(&q);
    let mut sum = BigRational::zero();
    for n in s_set(r, q) {
        if sigma(r, a, &n, q) == 1 {
            sum += BigRational::new(BigInt::one(), n);
        }
    }
    let factor = saturated_primes(r, q)
        .into_iter()
        .fold(BigRational::one(), |acc, p| {
            let pk = BigInt::from(p).pow(phi);
            acc * BigRational::new(pk.clone(), pk - 1)
        });
    sum * factor / BigRational::from_integer(g.into())
}

/// `A(r,a)` with each prime's exponent range shortened to its multiplicative order modulo
/// `q/gcd(r,q)`. The periodic blocks of length `φ(q)` are unions of blocks of that order,
/// so the value is identical to [`coefficient_a_by_definition`].
pub fn coefficient_a(r: u64, a: u64, q: u64) -> BigRational {
    let g = r.gcd(&q);
    let modulus = q / g;
    let target = (r / g) % modulus;
    let a_mod = a % modulus;
    let primes = saturated_primes(r, q);
    let orders: Vec<u64> = primes
        .iter()
        .map(|&p| multiplicative_order(p, modulus))
        .collect();

    // every exponent vector below the orders, as (n mod modulus, n)
    let mut terms = vec![(1 % modulus, BigInt::one())];
    for (&p, &order) in primes.iter().zip(&orders) {
        let mut next = Vec::with_capacity(terms.len() * order as usize);
        for (res, n) in &terms {
            let (mut res, mut n) = (*res, n.clone());
            for _ in 0..order {
                next.push((res, n.clone()));
                res = res * p % modulus;
                n *= p;
            }
        }
        terms = next;
    }
    let sum: BigRational = terms
        .into_iter()
        .filter(|(res, _)| (a_mod * res) % modulus == target)
        .map(|(_, n)| BigRational::new(BigInt::one(), n))
        .sum();
    let factor = primes.iter().zip(&orders).fold(BigRational::one(), |acc, (&p, &o)| {
        let pk = BigInt::from(p).pow(o as usize);
        acc * BigRational::new(pk.clone(), pk - 1)
    });
    sum * factor / BigRational::from_integer(g.into())
}

/// Exact residuals of both families of conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OkadaReport {
    /// `(a, f(a) + Σ_{r∈L} f(r)A(r,a) + f(q)/φ(q))` for each `a ∈ J`.
    pub condition_j: Vec<(u64, BigRational)>,
    /// `(p, Σ_{r∈L'} f(r)ε(r,p))` for each prime `p | q`.
    pub condition_p: Vec<(u64, BigRational)>,
    /// True iff every residual is zero, equivalently `Σ f(n)/n = 0`.
    pub vanishes: bool,
}

pub fn okada_verdict(f: &PeriodicFunction) -> OkadaReport {
    let q = f.modulus();
    let sets = support_sets(q);
    let phi = BigRational::from_integer(euler_phi(q).into());
    let f_q_term = f.at_residue(q) / &phi;
    let active_l: Vec<u64> = sets
        .l
        .iter()
        .copied()
        .filter(|&r| !f.at_residue(r).is_zero())
        .collect();

    let condition_j: Vec<(u64, BigRational)> = sets
        .j
        .iter()
        .map(|&a| {
            let mut residual = f.at_residue(a) + &f_q_term;
            for &r in &active_l {
                residual += f.at_residue(r) * coefficient_a(r, a, q);
            }
            (a, residual)
        })
        .collect();

    let condition_p: Vec<(u64, BigRational)> = factorize(q)
        .primes()
        .map(|p| {
            let residual = sets
                .l_prime
                .iter()
                .filter(|&&r| !f.at_residue(r).is_zero())
                .map(|&r| f.at_residue(r) * epsilon(r, p, q))
                .sum();
            (p, residual)
        })
        .collect();

    let vanishes = condition_j
        .iter()
        .chain(&condition_p)
        .all(|(_, v)| v.is_zero());
    OkadaReport {
        condition_j,
        condition_p,
        vanishes,
    }
}

/// Truncation of `Σ_{m∈M} f(am)/m` to `m ≤ bound`, with
/// `tail_bound = max|f| · (∏_{p|q} p/(p-1) − Σ_{m∈M, m≤bound} 1/m)`.
pub fn decomposition_sum(
    f: &PeriodicFunction,
    a: u64,
    bound: u64,
) -> Result<(BigRational, BigRational), OkadaError> {
    let q = f.modulus();
    if a == 0 || a > q || a.gcd(&q) != 1 {
        return Err(OkadaError::Domain(format!("{a} is not a unit residue mod {q}")));
    }
    if bound == 0 {
        return Err(OkadaError::Domain("bound must be positive".into()));
    }
    let primes: Vec<u64> = factorize(q).primes().collect();
    let mut value = BigRational::zero();
    let mut harmonic = BigRational::zero();
    for m in SmoothNumbers::new(&primes, bound) {
        let inv = BigRational::new(BigInt::one(), m.into());
        let residue = ((a as u128 * m as u128) % q as u128) as i64;
        value += f.at(residue) * &inv;
        harmonic += inv;
    }
    let full: BigRational = primes.iter().fold(BigRational::one(), |acc, &p| {
        acc * BigRational::new(p.into(), (p - 1).into())
    });
    Ok((value, f.max_abs() * (full - harmonic)))
}

/// `g(n) = f(k·n)`.
pub fn dilate(f: &PeriodicFunction, k: i64) -> Result<PeriodicFunction, OkadaError> {
    let q = f.modulus();
    if k.unsigned_abs().gcd(&q) != 1 {
        return Err(OkadaError::Domain(format!("gcd({k}, {q}) != 1")));
    }
    let values = (1..=q as i64)
        .map(|n| f.at((k as i128 * n as i128).rem_euclid(q as i128) as i64).clone())
        .collect();
    PeriodicFunction::new(q, values)
}

/// Coefficient rows of both condition families plus `Σ f = 0`, restricted to the unknowns
/// `f(r)` for `r ∈ residues` (all other values fixed at zero). Column `i` belongs to
/// `residues[i]`.
pub fn okada_system(q: u64, residues: &[u64]) -> Vec<Vec<BigRational>> {
    let sets = support_sets(q);
    let phi = euler_phi(q);
    let mut rows = Vec::new();
    for &a in &sets.j {
        rows.push(
            residues
                .iter()
                .map(|&r| {
                    if r == a {
                        BigRational::one()
                    } else if r == q {
                        BigRational::new(1.into(), phi.into())
                    } else if sets.l.binary_search(&r).is_ok() {
                        coefficient_a(r, a, q)
                    } else {
                        BigRational::zero()
                    }
                })
                .collect(),
        );
    }
    for p in factorize(q).primes() {
        rows.push(
            residues
                .iter()
                .map(|&r| {
                    if sets.l_prime.binary_search(&r).is_ok() {
                        epsilon(r, p, q)
                    } else {
                        BigRational::zero()
                    }
                })
                .collect(),
        );
    }
    rows.push(vec![BigRational::one(); residues.len()]);
    rows
}

/// Basis of the periodic functions supported on `residues` whose sum `Σ f(n)/n` vanishes.
///
/// Vectors are primitive integer vectors with their last nonzero entry positive; entry `i`
/// is the value at `residues[i]`.
pub fn nullspace_search(q: u64, residues: &[u64]) -> Result<Vec<Vec<BigInt>>, OkadaError> {
    if q <= 1 {
        return Err(OkadaError::InvalidModulus(q));
    }
    let mut sorted = residues.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != residues.len() || residues.iter().any(|&r| r == 0 || r > q) {
        return Err(OkadaError::Domain(format!(
            "residues must be distinct and in 1..={q}: {residues:?}"
        )));
    }
    let rows = clear_denominators(&okada_system(q, residues));
    Ok(integer_nullspace(&rows, residues.len()))
}

/// Embeds a vector of values on `residues` into a periodic function mod `q`.
pub fn embed(q: u64, residues: &[u64], values: &[BigRational]) -> Result<PeriodicFunction, OkadaError> {
    let mut full = vec![BigRational::zero(); q as usize];
    for (&r, v) in residues.iter().zip(values) {
        full[r as usize - 1] = v.clone();
    }
    PeriodicFunction::new(q, full)
}
