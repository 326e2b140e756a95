//! Maximum bipartite matching (Kuhn's augmenting paths).

use alloc::vec;
use alloc::vec::Vec;

/// Maximum matching of a bipartite graph given by left adjacency lists;
/// `out[l]` is the right vertex matched to `l`.
pub fn max_matching(adj: &[Vec<usize>], n_right: usize) -> Vec<Option<usize>> {
    let mut right_of = vec![None; adj.len()];
    let mut left_of: Vec<Option<usize>> = vec![None; n_right];
    for l in 0..adj.len() {
        let mut seen = vec![false; n_right];
        augment(l, adj, &mut seen, &mut left_of);
    }
    for (r, l) in left_of.iter().enumerate() {
        if let Some(l) = *l {
            right_of[l] = Some(r);
        }
    }
    right_of
}

fn augment(l: usize, adj: &[Vec<usize>], seen: &mut [bool], left_of: &mut [Option<usize>]) -> bool {
    for &r in &adj[l] {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        if left_of[r].is_none_or(|m| augment(m, adj, seen, left_of)) {
            left_of[r] = Some(l);
            return true;
        }
    }
    false
}

/// A matching saturating both sides, if one exists.
pub fn perfect_matching(adj: &[Vec<usize>], n_right: usize) -> Option<Vec<usize>> {
    if adj.len() != n_right {
        return None;
    }
    max_matching(adj, n_right).into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_max(adj: &[Vec<usize>], l: usize, used: &mut Vec<bool>) -> usize {
        if l == adj.len() {
            return 0;
        }
        let mut best = brute_max(adj, l + 1, used);
        for &r in &adj[l] {
            if !used[r] {
                used[r] = true;
                best = best.max(1 + brute_max(adj, l + 1, used));
                used[r] = false;
            }
        }
        best
    }

    #[test]
    fn hall_violation() {
        // two left vertices both only see right vertex 0
        let adj = vec![vec![0], vec![0], vec![1, 2]];
        assert_eq!(perfect_matching(&adj, 3), None);
        assert_eq!(max_matching(&adj, 3).iter().flatten().count(), 2);
        let adj = vec![vec![0, 1], vec![0], vec![1, 2]];
        assert_eq!(perfect_matching(&adj, 3), Some(vec![1, 0, 2]));
    }

    proptest! {
        #[test]
        fn matches_brute_force(n in 0usize..=6, m in 0usize..=6, bits: u64) {
            let adj: Vec<Vec<usize>> = (0..n)
                .map(|l| (0..m).filter(|&r| bits >> ((l * 7 + r) % 64) & 1 == 1).collect())
                .collect();
            let got = max_matching(&adj, m);
            let mut used = vec![false; m];
            for (l, r) in got.iter().enumerate() {
                if let Some(r) = *r {
                    prop_assert!(adj[l].contains(&r));
                    prop_assert!(!used[r]);
                    used[r] = true;
                }
            }
            let mut scratch = vec![false; m];
            prop_assert_eq!(got.iter().flatten().count(), brute_max(&adj, 0, &mut scratch));
        }
    }
}
