//! Number-theoretic helpers used throughout the engine.
//!
//! Moduli in this crate are small (a few thousand at most), so they are carried as
//! `u64` and every product that could grow is computed with checked arithmetic.
//! Valuations of arbitrary integers work on [`BigInt`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("valuation of zero is undefined")]
    UndefinedValuation,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("domain error: {0}")]
    Domain(String),
}

/// Prime factorization `value = ∏ prime^exponent`, primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatFactorization {
    pub value: u64,
    pub factors: Vec<(u64, u32)>,
}

impl NatFactorization {
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Exponent of `p` in the factorization, zero when `p` does not divide the value.
    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let f = factorize(n);
    f.factors.len() == 1 && f.factors[0].1 == 1
}

/// Trial division with a 2,3 wheel. Intended for `n ≤ 10^12`.
///
/// Panics if `n == 0`.
pub fn factorize(n: u64) -> NatFactorization {
    assert!(n >= 1, "factorize requires a positive integer");
    let mut factors = Vec::new();
    let mut rest = n;
    for p in [2u64, 3] {
        let e = strip(&mut rest, p);
        if e > 0 {
            factors.push((p, e));
        }
    }
    // candidates 6k-1, 6k+1
    let mut p = 5u64;
    let mut step = 2u64;
    while p.checked_mul(p).is_some_and(|sq| sq <= rest) {
        let e = strip(&mut rest, p);
        if e > 0 {
            factors.push((p, e));
        }
        p += step;
        step = 6 - step;
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    NatFactorization { value: n, factors }
}

fn strip(n: &mut u64, p: u64) -> u32 {
    let mut e = 0;
    while (*n).is_multiple_of(p) {
        *n /= p;
        e += 1;
    }
    e
}

/// Largest `e` with `p^e | n`.
pub fn valuation(p: u64, n: &BigInt) -> Result<u32, ArithError> {
    if !is_prime(p) {
        return Err(ArithError::NotPrime(p));
    }
    if n.is_zero() {
        return Err(ArithError::UndefinedValuation);
    }
    let p = BigInt::from(p);
    let mut rest = n.abs();
    let mut e = 0;
    loop {
        let (q, r) = rest.div_rem(&p);
        if !r.is_zero() {
            return Ok(e);
        }
        rest = q;
        e += 1;
    }
}

/// `v_p(n)` for machine integers; `p` is assumed prime and `n` nonzero.
pub(crate) fn vp(p: u64, mut n: u64) -> u32 {
    debug_assert!(n != 0 && p > 1);
    let mut e = 0;
    while n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    e
}

pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "euler_phi requires a positive integer");
    factorize(n)
        .factors
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

/// Counts the elements of `{r + t·d : t = 1..n/d}` coprime to `n`.
///
/// The count is taken directly and checked against the closed form `φ(n)/φ(d)`.
pub fn coprime_count_in_progression(n: u64, d: u64, r: i64) -> Result<u64, ArithError> {
    if n <= 1 || d == 0 || !n.is_multiple_of(d) {
        return Err(ArithError::Domain(format!(
            "need n > 1, d > 0 and d | n (n = {n}, d = {d})"
        )));
    }
    if r.unsigned_abs().gcd(&d) != 1 {
        return Err(ArithError::Domain(format!("gcd({r}, {d}) != 1")));
    }
    let r_mod = r.rem_euclid(n as i64) as u64;
    let count = (1..=n / d)
        .filter(|t| ((r_mod + t * d) % n).gcd(&n) == 1)
        .count() as u64;
    let closed = euler_phi(n) / euler_phi(d);
    assert_eq!(count, closed, "direct count disagrees with φ(n)/φ(d)");
    Ok(count)
}

/// Smallest `k ≥ 1` with `base^k ≡ 1 (mod modulus)`; `1` when `modulus == 1`.
///
/// Panics if `gcd(base, modulus) != 1`.
pub fn multiplicative_order(base: u64, modulus: u64) -> u64 {
    assert!(modulus >= 1);
    if modulus == 1 {
        return 1;
    }
    assert_eq!(base.gcd(&modulus), 1, "base must be a unit");
    let b = (base % modulus) as u128;
    let m = modulus as u128;
    let mut acc = b;
    let mut k = 1;
    while acc != 1 {
        acc = acc * b % m;
        k += 1;
    }
    k
}

/// Residues `1..=q` coprime to `q`.
pub fn units(q: u64) -> Vec<u64> {
    (1..=q).filter(|a| a.gcd(&q) == 1).collect()
}

/// Inverse of `a` modulo `m`, represented in `1..=m`.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(1);
    }
    let e = (a as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    let inv = e.x.rem_euclid(m as i128) as u64;
    Some(if inv == 0 { m } else { inv })
}
