//! Strictly increasing, 1-based multi-indices and their lexicographic ranks.

use itertools::Itertools;

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All strictly increasing multi-indices of length `k` over `1..=dim`, in
/// lexicographic order. This order fixes the coordinates of `Λ^k`.
pub fn multi_indices(dim: usize, k: usize) -> Vec<Vec<usize>> {
    if k > dim {
        return Vec::new();
    }
    (1..=dim).combinations(k).collect()
}

/// Lexicographic position of a strictly increasing multi-index.
pub fn rank(dim: usize, idx: &[usize]) -> usize {
    let k = idx.len();
    let mut r = 0;
    let mut prev = 0;
    for (j, &v) in idx.iter().enumerate() {
        for skipped in prev + 1..v {
            r += binomial(dim - skipped, k - j - 1);
        }
        prev = v;
    }
    r
}

/// Sorts `idx` by adjacent transpositions. Returns the sorted index and the
/// sign of the permutation, or `None` when an index repeats.
pub fn sort_with_sign(idx: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v = idx.to_vec();
    let mut negative = false;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            negative = !negative;
            j -= 1;
        }
        if j > 0 && v[j - 1] == v[j] {
            return None;
        }
    }
    Some((v, negative))
}

/// The complementary multi-index in `1..=dim`.
pub fn complement(dim: usize, idx: &[usize]) -> Vec<usize> {
    (1..=dim).filter(|i| !idx.contains(i)).collect()
}

pub fn is_strictly_increasing(idx: &[usize]) -> bool {
    idx.windows(2).all(|w| w[0] < w[1])
}

pub fn label(idx: &[usize], dim: usize) -> String {
    if idx.is_empty() {
        "1".to_string()
    } else if dim < 10 {
        format!("e{}", idx.iter().map(|i| i.to_string()).collect::<String>())
    } else {
        format!("e{{{}}}", idx.iter().map(|i| i.to_string()).join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_matches_enumeration() {
        for dim in 0..=7 {
            for k in 0..=dim {
                let all = multi_indices(dim, k);
                assert_eq!(all.len(), binomial(dim, k));
                for (i, idx) in all.iter().enumerate() {
                    assert_eq!(rank(dim, idx), i, "{dim} {idx:?}");
                }
            }
        }
    }

    #[test]
    fn sort_signs() {
        assert_eq!(sort_with_sign(&[3, 1]), Some((vec![1, 3], true)));
        assert_eq!(sort_with_sign(&[1, 4, 2, 3]), Some((vec![1, 2, 3, 4], false)));
        assert_eq!(sort_with_sign(&[3, 2, 1, 4]), Some((vec![1, 2, 3, 4], true)));
        assert_eq!(sort_with_sign(&[2, 1, 2]), None);
        assert_eq!(sort_with_sign(&[]), Some((vec![], false)));
    }

    #[test]
    fn labels() {
        assert_eq!(label(&[1, 3, 4], 4), "e134");
        assert_eq!(label(&[1, 10], 10), "e{1,10}");
        assert_eq!(complement(4, &[2, 4]), vec![1, 3]);
    }
}
