//! Combinations with replacement (multisets) and their exact counts.

use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigUint;

/// Number of size-`k` multisets drawn from `n` items, `C(n + k - 1, k)`.
///
/// `multichoose(0, 0) == 1` and `multichoose(0, k) == 0` for `k > 0`.
pub fn multichoose(n: u64, k: u64) -> BigUint {
    if k == 0 {
        return BigUint::from(1u32);
    }
    if n == 0 {
        return BigUint::from(0u32);
    }
    // C(n+k-1, k) = prod_{i=1..k} (n-1+i)/i, exact at every step.
    let mut acc = BigUint::from(1u32);
    for i in 1..=k {
        acc *= n - 1 + i;
        acc /= i;
    }
    acc
}

/// Non-decreasing index tuples of length `k` over `0..n`, in lexicographic
/// order. This is the order in which `itertools`/Python emit
/// `combinations_with_replacement`.
#[derive(Clone, Debug)]
pub struct Multisets {
    n: usize,
    current: Vec<usize>,
    done: bool,
}

impl Multisets {
    pub fn new(n: usize, k: usize) -> Self {
        Multisets {
            n,
            current: vec![0; k],
            done: n == 0 && k > 0,
        }
    }
}

impl Iterator for Multisets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        // Advance: rightmost position that can still grow.
        match self.current.iter().rposition(|&x| x + 1 < self.n) {
            None => self.done = true,
            Some(pos) => {
                let v = self.current[pos] + 1;
                for x in &mut self.current[pos..] {
                    *x = v;
                }
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binomial_f(n: u64, k: u64) -> u128 {
        let mut r: u128 = 1;
        for i in 0..k {
            r = r * u128::from(n - i) / u128::from(i + 1);
        }
        r
    }

    #[test]
    fn small_counts() {
        assert_eq!(multichoose(4, 2), BigUint::from(10u32));
        assert_eq!(multichoose(1, 4), BigUint::from(1u32));
        assert_eq!(multichoose(0, 3), BigUint::from(0u32));
        assert_eq!(multichoose(0, 0), BigUint::from(1u32));
        assert_eq!(multichoose(24, 4), BigUint::from(binomial_f(27, 4)));
    }

    #[test]
    fn enumeration_matches_count() {
        for n in 0..7usize {
            for k in 0..5usize {
                let all: Vec<_> = Multisets::new(n, k).collect();
                assert_eq!(BigUint::from(all.len()), multichoose(n as u64, k as u64), "n={n} k={k}");
                for w in all.windows(2) {
                    assert!(w[0] < w[1]);
                }
                for m in &all {
                    assert!(m.windows(2).all(|p| p[0] <= p[1]));
                }
            }
        }
    }

    #[test]
    fn order_is_lexicographic() {
        let v: Vec<_> = Multisets::new(3, 2).collect();
        assert_eq!(
            v,
            vec![vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 1], vec![1, 2], vec![2, 2]]
        );
    }
}
