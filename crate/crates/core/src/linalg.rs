//! Exact nullspaces by fraction-free Gauss–Jordan elimination over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Clears denominators row by row. Each row is scaled by a positive integer,
/// so the solution space is unchanged.
pub fn clear_denominators(rows: &[Vec<BigRational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            let scale = BigRational::from_integer(lcm);
            row.iter().map(|c| (c * &scale).to_integer()).collect()
        })
        .collect()
}

fn remove_content(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in row.iter_mut() {
            *c /= &g;
        }
    }
}

/// Primitive integer vector whose last nonzero entry is positive.
pub fn normalize(mut v: Vec<BigInt>) -> Vec<BigInt> {
    remove_content(&mut v);
    if v.iter().rev().find(|c| !c.is_zero()).is_some_and(Signed::is_negative) {
        for c in v.iter_mut() {
            *c = -&*c;
        }
    }
    v
}

/// Reduces `rows` in place to a reduced echelon form where every pivot column has a single
/// nonzero entry. Returns the pivot columns in row order.
fn echelon(rows: &mut Vec<Vec<BigInt>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(found) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let pivot_row = rows[r].clone();
        let pv = pivot_row[c].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x = &pv * &*x - &factor * p;
            }
            remove_content(row);
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<BigInt>], cols: usize) -> usize {
    let mut m = rows.to_vec();
    echelon(&mut m, cols).len()
}

/// Basis of `{x ∈ Q^cols : rows · x = 0}`, one primitive integer vector per free column.
pub fn integer_nullspace(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    debug_assert!(rows.iter().all(|r| r.len() == cols));
    let mut m = rows.to_vec();
    let pivots = echelon(&mut m, cols);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let scale = m
            .iter()
            .zip(&pivots)
            .filter(|(row, _)| !row[free].is_zero())
            .fold(BigInt::one(), |acc, (row, &pc)| acc.lcm(&row[pc]).abs());
        let mut v = vec![BigInt::zero(); cols];
        v[free] = scale.clone();
        for (row, &pc) in m.iter().zip(&pivots) {
            if !row[free].is_zero() {
                v[pc] = -(&row[free] * &scale) / &row[pc];
            }
        }
        basis.push(normalize(v));
    }
    basis
}
