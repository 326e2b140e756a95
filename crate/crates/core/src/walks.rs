//! Walk counts `wᵢ(x,y)`, walks through a vertex `wᵢ(x,z;y)` and walks through
//! a vertex exactly once `wᵢˢ(x,z;y)`.
//!
//! A walk of length `i` is a sequence of `i + 1` vertices with consecutive
//! entries adjacent, so `wᵢ(x,y) = [Adj^i]_{xy}`. Stationary steps are not
//! walks.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::graph::{adjacency_matrix, walk_count_tensor, Graph, IntMatrix, VertexId};
use crate::Result;

/// Closed-walk counts `(w₀(x,x), …, w_n(x,x))` of one vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WalkProfile(pub Vec<BigInt>);

impl WalkProfile {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Closed-walk profiles of every vertex, lengths `0..=|V|`.
pub fn walk_profile(g: &Graph) -> BTreeMap<VertexId, WalkProfile> {
    walk_profile_with(g, g.vertex_count())
}

/// Closed-walk profiles of lengths `0..=max_len`.
pub fn walk_profile_with(g: &Graph, max_len: usize) -> BTreeMap<VertexId, WalkProfile> {
    let powers = walk_count_tensor(g, max_len);
    g.vertices()
        .iter()
        .enumerate()
        .map(|(x, &v)| {
            (
                v,
                WalkProfile(powers.iter().map(|p| p.get(x, x).clone()).collect()),
            )
        })
        .collect()
}

/// Precomputed powers of `Adj(g)` and of `Adj(g)` with each vertex's row and
/// column zeroed, up to a fixed length.
#[derive(Debug, Clone)]
pub struct WalkTable {
    graph: Graph,
    max_len: usize,
    powers: Vec<IntMatrix>,
    /// `avoiding[y][i]` counts length-`i` walks that never visit `y`.
    avoiding: Vec<Vec<IntMatrix>>,
}

impl WalkTable {
    pub fn new(g: &Graph, max_len: usize) -> Self {
        let powers = walk_count_tensor(g, max_len);
        let a = adjacency_matrix(g);
        let n = g.vertex_count();
        let avoiding = (0..n)
            .map(|y| {
                let mut ay = a.clone();
                for k in 0..n {
                    ay.set(y, k, BigInt::zero());
                    ay.set(k, y, BigInt::zero());
                }
                let mut id = IntMatrix::identity(g.vertices().to_vec());
                id.set(y, y, BigInt::zero());
                let mut out = Vec::with_capacity(max_len + 1);
                out.push(id);
                for i in 1..=max_len {
                    let next = out[i - 1].mul(&ay);
                    out.push(next);
                }
                out
            })
            .collect();
        WalkTable {
            graph: g.clone(),
            max_len,
            powers,
            avoiding,
        }
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    fn check(&self, i: usize) {
        assert!(
            i <= self.max_len,
            "walk length {i} exceeds table size {}",
            self.max_len
        );
    }

    /// `wᵢ(x,z)` by vertex index.
    pub fn walks(&self, i: usize, x: usize, z: usize) -> BigInt {
        self.check(i);
        self.powers[i].get(x, z).clone()
    }

    /// `wᵢ(x,z;y)`: all walks minus those avoiding `y`.
    pub fn through(&self, i: usize, x: usize, z: usize, y: usize) -> BigInt {
        self.check(i);
        if x == y || z == y {
            return self.walks(i, x, z);
        }
        self.powers[i].get(x, z) - self.avoiding[y][i].get(x, z)
    }

    /// Length-`j` walks from `x` whose only visit to `y` is their last step.
    pub fn first_hit(&self, j: usize, x: usize, y: usize) -> BigInt {
        self.check(j);
        if x == y {
            return if j == 0 {
                BigInt::from(1)
            } else {
                BigInt::zero()
            };
        }
        if j == 0 {
            return BigInt::zero();
        }
        self.graph
            .neighbors(y)
            .iter()
            .map(|&u| self.avoiding[y][j - 1].get(x, u).clone())
            .sum()
    }

    /// `wᵢˢ(x,z;y)`: the unique visit splits the walk into a first-hit walk
    /// from `x` and a reversed first-hit walk from `z`.
    pub fn through_once(&self, i: usize, x: usize, z: usize, y: usize) -> BigInt {
        self.check(i);
        (0..=i)
            .map(|j| self.first_hit(j, x, y) * self.first_hit(i - j, z, y))
            .sum()
    }

    /// `wᵢ(x,z;y) = Σ_{j+k+l=i} w_jˢ(x,y;y)·w_k(y,y)·w_lˢ(y,z;y)`.
    pub fn formula_holds(&self, i: usize, x: usize, z: usize, y: usize) -> bool {
        let mut rhs = BigInt::zero();
        for j in 0..=i {
            let left = self.through_once(j, x, y, y);
            if left.is_zero() {
                continue;
            }
            for k in 0..=i - j {
                let right = self.through_once(i - j - k, y, z, y);
                if !right.is_zero() {
                    rhs += &left * self.walks(k, y, y) * right;
                }
            }
        }
        rhs == self.through(i, x, z, y)
    }
}

fn indices<const N: usize>(g: &Graph, vs: [VertexId; N]) -> Result<[usize; N]> {
    let mut out = [0; N];
    for (o, v) in out.iter_mut().zip(vs) {
        *o = g.require(v)?;
    }
    Ok(out)
}

pub fn walks(g: &Graph, i: usize, x: VertexId, y: VertexId) -> Result<BigInt> {
    let [x, y] = indices(g, [x, y])?;
    Ok(walk_count_tensor(g, i)[i].get(x, y).clone())
}

pub fn walks_through(g: &Graph, i: usize, x: VertexId, z: VertexId, y: VertexId) -> Result<BigInt> {
    let [x, z, y] = indices(g, [x, z, y])?;
    Ok(WalkTable::new(g, i).through(i, x, z, y))
}

pub fn walks_through_once(
    g: &Graph,
    i: usize,
    x: VertexId,
    z: VertexId,
    y: VertexId,
) -> Result<BigInt> {
    let [x, z, y] = indices(g, [x, z, y])?;
    Ok(WalkTable::new(g, i).through_once(i, x, z, y))
}

/// Checks the concatenation identity for one tuple; `false` for unknown
/// vertices.
pub fn verify_walk_formula(g: &Graph, i: usize, x: VertexId, z: VertexId, y: VertexId) -> bool {
    match indices(g, [x, z, y]) {
        Ok([x, z, y]) => WalkTable::new(g, i).formula_holds(i, x, z, y),
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::block_decomposition;
    use crate::graph::{connected_components, induced_subgraph, VertexSet};
    use proptest::prelude::*;

    fn v(i: u32) -> VertexId {
        VertexId::original(i)
    }

    /// Every walk of length `i` from `x` to `z`, by exhaustive extension.
    fn enumerate(g: &Graph, i: usize, x: usize, z: usize) -> Vec<Vec<usize>> {
        let mut done = Vec::new();
        let mut stack = vec![vec![x]];
        while let Some(w) = stack.pop() {
            if w.len() == i + 1 {
                if *w.last().unwrap() == z {
                    done.push(w);
                }
                continue;
            }
            for &u in g.neighbors(*w.last().unwrap()) {
                let mut next = w.clone();
                next.push(u);
                stack.push(next);
            }
        }
        done
    }

    fn visits(w: &[usize], y: usize) -> usize {
        w.iter().filter(|&&u| u == y).count()
    }

    fn random_graph(n: u32, bits: u64) -> Graph {
        let mut edges = Vec::new();
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                if bits >> (k % 64) & 1 == 1 {
                    edges.push((i, j));
                }
                k += 1;
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn walks_examples() {
        assert_eq!(
            walks(&Graph::complete(2), 1, v(0), v(1)).unwrap(),
            BigInt::from(1)
        );
        let g = Graph::path(4);
        assert_eq!(walks(&g, 0, v(2), v(2)).unwrap(), BigInt::from(1));
        assert_eq!(walks(&g, 0, v(2), v(3)).unwrap(), BigInt::zero());
        assert_eq!(
            walks(&Graph::complete(3), 2, v(0), v(0)).unwrap(),
            BigInt::from(2)
        );
        assert_eq!(enumerate(&Graph::complete(3), 2, 0, 0).len(), 2);
        assert!(walks(&g, 1, v(0), v(9)).is_err());
    }

    #[test]
    fn walks_through_examples() {
        let p3 = Graph::path(3);
        assert_eq!(
            walks_through(&p3, 2, v(0), v(2), v(1)).unwrap(),
            BigInt::from(1)
        );
        assert_eq!(
            walks_through_once(&p3, 2, v(0), v(2), v(1)).unwrap(),
            BigInt::from(1)
        );
        let c4 = Graph::cycle(4);
        let expect = enumerate(&c4, 3, 0, 1)
            .iter()
            .filter(|w| visits(w, 2) > 0)
            .count();
        assert_eq!(
            walks_through(&c4, 3, v(0), v(1), v(2)).unwrap(),
            BigInt::from(expect)
        );
        for i in 0..6 {
            assert_eq!(
                walks_through(&c4, i, v(0), v(3), v(0)).unwrap(),
                walks(&c4, i, v(0), v(3)).unwrap()
            );
        }
    }

    #[test]
    fn exactly_once_boundary() {
        let g = Graph::cycle(5);
        assert_eq!(
            walks_through_once(&g, 0, v(2), v(2), v(2)).unwrap(),
            BigInt::from(1)
        );
        for i in 1..8 {
            assert_eq!(
                walks_through_once(&g, i, v(2), v(2), v(2)).unwrap(),
                BigInt::zero()
            );
        }
    }

    #[test]
    fn formula_on_p4() {
        let g = Graph::path(4);
        let t = WalkTable::new(&g, 6);
        for i in 0..=6 {
            for x in 0..4 {
                for y in 0..4 {
                    for z in 0..4 {
                        assert!(t.formula_holds(i, x, z, y), "i={i} x={x} y={y} z={z}");
                    }
                }
            }
        }
        assert!(verify_walk_formula(&g, 0, v(1), v(1), v(1)));
    }

    #[test]
    fn profile_examples() {
        let c5 = Graph::cycle(5);
        let ps = walk_profile(&c5);
        assert!(ps.values().all(|p| p == &ps[&v(0)]));
        assert_eq!(ps[&v(0)].len(), 6);
        let p3 = walk_profile(&Graph::path(3));
        assert_ne!(p3[&v(0)], p3[&v(1)]);
        assert_eq!(p3[&v(1)].0[2], BigInt::from(2));
        let star = walk_profile(&Graph::star(4));
        let c4k1 = walk_profile(&Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap());
        assert_eq!(star[&v(0)].0[2], BigInt::from(4));
        assert!(c4k1.values().all(|p| p != &star[&v(0)]));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn counts_match_enumeration(n in 1u32..=5, bits: u64, i in 0usize..=5) {
            let g = random_graph(n, bits);
            let t = WalkTable::new(&g, i);
            let n = n as usize;
            for x in 0..n {
                for z in 0..n {
                    let ws = enumerate(&g, i, x, z);
                    prop_assert_eq!(t.walks(i, x, z), BigInt::from(ws.len()));
                    for y in 0..n {
                        let through = ws.iter().filter(|w| visits(w, y) > 0).count();
                        let once = ws.iter().filter(|w| visits(w, y) == 1).count();
                        prop_assert_eq!(t.through(i, x, z, y), BigInt::from(through));
                        prop_assert_eq!(t.through_once(i, x, z, y), BigInt::from(once));
                    }
                }
            }
        }

        #[test]
        fn symmetric_and_formula(n in 1u32..=8, bits: u64) {
            let g = random_graph(n, bits);
            let t = WalkTable::new(&g, 6);
            let n = n as usize;
            for i in 0..=6 {
                for x in 0..n {
                    for z in 0..n {
                        for y in 0..n {
                            prop_assert_eq!(t.through(i, x, z, y), t.through(i, z, x, y));
                            prop_assert_eq!(t.through_once(i, x, z, y), t.through_once(i, z, x, y));
                            prop_assert!(t.formula_holds(i, x, z, y));
                        }
                    }
                }
            }
        }

        #[test]
        fn separation_detected_by_walks(n in 3u32..=6, bits: u64) {
            let g = random_graph(n, bits);
            prop_assume!(g.is_connected());
            let n = n as usize;
            let t = WalkTable::new(&g, n);
            let dec = block_decomposition(&g);
            for y in 0..n {
                let rest: VertexSet = g.vertices().iter().copied().filter(|&u| u != g.vertex(y)).collect();
                let comps = connected_components(&induced_subgraph(&g, &rest).unwrap());
                for x in 0..n {
                    for z in 0..n {
                        if x == y || z == y {
                            continue;
                        }
                        let separated = !comps.iter().any(|c| c.contains(&g.vertex(x)) && c.contains(&g.vertex(z)));
                        let all_through = (0..=n).all(|i| t.through(i, x, z, y) == t.walks(i, x, z));
                        prop_assert_eq!(separated, all_through);
                        if separated {
                            prop_assert!(dec.is_cut_vertex(g.vertex(y)));
                        }
                    }
                }
            }
        }
    }
}
