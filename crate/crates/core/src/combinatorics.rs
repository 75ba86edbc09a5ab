//! Binomial coefficients and lexicographic ranking of `k`-subsets.

use crate::hypergraph::Vertex;

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul(u128::from(n - i)) {
            Some(x) => x / u128::from(i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// `C(n, k)` as `usize`; panics if it does not fit.
pub fn binomial_usize(n: usize, k: usize) -> usize {
    usize::try_from(binomial(n as u64, k as u64)).expect("binomial coefficient overflows usize")
}

/// Position of the sorted subset `s ⊆ [n]` among all `|s|`-subsets of `[n]`
/// in lexicographic order.
pub fn subset_rank(n: usize, s: &[Vertex]) -> usize {
    let k = s.len();
    let total = binomial_usize(n, k);
    let tail: usize = s
        .iter()
        .enumerate()
        .map(|(i, &c)| binomial_usize(n - 1 - c, k - i))
        .sum();
    total - 1 - tail
}

/// Inverse of [`subset_rank`].
pub fn subset_unrank(n: usize, k: usize, mut rank: usize) -> Vec<Vertex> {
    let mut out = Vec::with_capacity(k);
    let mut next = 0;
    for slot in 0..k {
        loop {
            let with_next = binomial_usize(n - 1 - next, k - slot - 1);
            if rank < with_next {
                break;
            }
            rank -= with_next;
            next += 1;
        }
        out.push(next);
        next += 1;
    }
    out
}
