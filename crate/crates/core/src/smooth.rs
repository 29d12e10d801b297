//! Ordered enumeration of integers whose prime factors lie in a fixed set.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

/// Iterator over `{m ≤ bound : every prime factor of m is in primes}` in increasing order,
/// starting at `1`.
///
/// Each element is pushed exactly once: a value is only extended by primes at least as
/// large as its largest prime factor, which makes the exponent vectors unique.
pub struct SmoothNumbers {
    primes: Vec<u64>,
    bound: u64,
    heap: BinaryHeap<Reverse<(u64, usize)>>,
}

impl SmoothNumbers {
    pub fn new(primes: &[u64], bound: u64) -> Self {
        let mut primes = primes.to_vec();
        primes.sort_unstable();
        primes.dedup();
        let mut heap = BinaryHeap::new();
        if bound >= 1 {
            heap.push(Reverse((1, 0)));
        }
        SmoothNumbers {
            primes,
            bound,
            heap,
        }
    }
}

impl Iterator for SmoothNumbers {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let Reverse((m, first)) = self.heap.pop()?;
        for (i, &p) in self.primes.iter().enumerate().skip(first) {
            if let Some(next) = m.checked_mul(p).filter(|&x| x <= self.bound) {
                self.heap.push(Reverse((next, i)));
            }
        }
        Some(m)
    }
}
