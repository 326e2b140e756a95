//! Finite simple graphs with stable vertex identities and exact adjacency algebra.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Vertex identity. Original graphs use namespace 0; copies created by
/// splitting or disjoint unions live in other namespaces so that their
/// origin stays traceable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId {
    pub namespace: u32,
    pub local: u32,
}

impl VertexId {
    pub const fn new(namespace: u32, local: u32) -> Self {
        VertexId { namespace, local }
    }

    pub const fn original(local: u32) -> Self {
        VertexId::new(0, local)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.namespace == 0 {
            write!(f, "{}", self.local)
        } else {
            write!(f, "{}:{}", self.namespace, self.local)
        }
    }
}

impl FromStr for VertexId {
    type Err = core::num::ParseIntError;

    /// Accepts `local` or `namespace:local`.
    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        match s.split_once(':') {
            Some((ns, local)) => Ok(VertexId::new(ns.trim().parse()?, local.trim().parse()?)),
            None => Ok(VertexId::original(s.trim().parse()?)),
        }
    }
}

pub type VertexSet = BTreeSet<VertexId>;

/// Finite simple undirected graph. Vertices are kept sorted; every index
/// based accessor refers to that order.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<VertexId>,
    adj: Vec<bool>,
    nbrs: Vec<Vec<usize>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.vertices)
            .field("edges", &self.edge_ids())
            .finish()
    }
}

impl Graph {
    pub fn new(
        vertices: impl IntoIterator<Item = VertexId>,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self> {
        let mut vs: Vec<VertexId> = vertices.into_iter().collect();
        vs.sort_unstable();
        if let Some(w) = vs.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertex(w[0]));
        }
        let n = vs.len();
        let mut g = Graph {
            vertices: vs,
            adj: vec![false; n * n],
            nbrs: vec![Vec::new(); n],
        };
        for (u, v) in edges {
            let i = g.index_of(u).ok_or(Error::UnknownVertex(u))?;
            let j = g.index_of(v).ok_or(Error::UnknownVertex(v))?;
            if i == j {
                return Err(Error::SelfLoop(u));
            }
            g.adj[i * n + j] = true;
            g.adj[j * n + i] = true;
        }
        g.rebuild_neighbours();
        Ok(g)
    }

    /// Graph on original vertices `0..n`.
    pub fn from_edges(n: u32, edges: &[(u32, u32)]) -> Result<Self> {
        Graph::new(
            (0..n).map(VertexId::original),
            edges
                .iter()
                .map(|&(u, v)| (VertexId::original(u), VertexId::original(v))),
        )
    }

    /// Graph on the given (sorted or not) vertex list with index based edges.
    pub(crate) fn from_index_edges(vertices: Vec<VertexId>, edges: &[(usize, usize)]) -> Self {
        let ids: Vec<_> = edges
            .iter()
            .map(|&(i, j)| (vertices[i], vertices[j]))
            .collect();
        Graph::new(vertices, ids).expect("index edges are valid")
    }

    fn rebuild_neighbours(&mut self) {
        let n = self.vertices.len();
        for i in 0..n {
            self.nbrs[i] = (0..n).filter(|&j| self.adj[i * n + j]).collect();
        }
    }

    pub fn empty(n: u32) -> Self {
        Graph::from_edges(n, &[]).unwrap()
    }

    pub fn complete(n: u32) -> Self {
        let edges: Vec<_> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    pub fn path(n: u32) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    /// Cycle `0-1-…-(n-1)-0`, `n ≥ 3`.
    pub fn cycle(n: u32) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((n - 1, 0));
        Graph::from_edges(n, &edges).unwrap()
    }

    /// Star with hub `0` and leaves `1..=leaves`.
    pub fn star(leaves: u32) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &edges).unwrap()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.nbrs.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.iter().copied().collect()
    }

    pub fn vertex(&self, i: usize) -> VertexId {
        self.vertices[i]
    }

    pub fn index_of(&self, v: VertexId) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    pub(crate) fn require(&self, v: VertexId) -> Result<usize> {
        self.index_of(v).ok_or(Error::UnknownVertex(v))
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.index_of(v).is_some()
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.nbrs[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.nbrs[i].len()
    }

    pub fn is_adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i * self.vertices.len() + j]
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        match (self.index_of(u), self.index_of(v)) {
            (Some(i), Some(j)) => self.is_adjacent(i, j),
            _ => false,
        }
    }

    /// Edges as index pairs `(i, j)` with `i < j`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (i, ns) in self.nbrs.iter().enumerate() {
            out.extend(ns.iter().filter(|&&j| j > i).map(|&j| (i, j)));
        }
        out
    }

    pub fn edge_ids(&self) -> Vec<(VertexId, VertexId)> {
        self.edges()
            .into_iter()
            .map(|(i, j)| (self.vertices[i], self.vertices[j]))
            .collect()
    }

    pub fn complement(&self) -> Graph {
        let n = self.vertex_count();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if !self.is_adjacent(i, j) {
                    edges.push((i, j));
                }
            }
        }
        Graph::from_index_edges(self.vertices.clone(), &edges)
    }

    /// Removes every edge with both ends in `set`.
    pub fn remove_edges_within(&self, set: &VertexSet) -> Graph {
        let edges: Vec<_> = self
            .edges()
            .into_iter()
            .filter(|&(i, j)| !(set.contains(&self.vertices[i]) && set.contains(&self.vertices[j])))
            .collect();
        Graph::from_index_edges(self.vertices.clone(), &edges)
    }

    /// Applies a vertex renaming; the map must be injective on `V(self)`.
    pub fn relabel(&self, map: &BTreeMap<VertexId, VertexId>) -> Result<Graph> {
        let vs: Vec<_> = self
            .vertices
            .iter()
            .map(|v| map.get(v).copied().ok_or(Error::UnknownVertex(*v)))
            .collect::<Result<_>>()?;
        let edges: Vec<_> = self
            .edges()
            .into_iter()
            .map(|(i, j)| (vs[i], vs[j]))
            .collect();
        Graph::new(vs, edges)
    }

    pub fn is_connected(&self) -> bool {
        component_labels(self).1 <= 1
    }

    pub fn is_isomorphism(&self, other: &Graph, map: &BTreeMap<VertexId, VertexId>) -> bool {
        if self.vertex_count() != other.vertex_count() || self.edge_count() != other.edge_count() {
            return false;
        }
        let mut image = BTreeSet::new();
        for v in &self.vertices {
            match map.get(v) {
                Some(w) if other.contains(*w) && image.insert(*w) => {}
                _ => return false,
            }
        }
        self.edge_ids()
            .into_iter()
            .all(|(u, v)| other.has_edge(map[&u], map[&v]))
    }
}

/// Component label per vertex index, and the number of components. Labels
/// are assigned in order of least vertex.
pub(crate) fn component_labels(g: &Graph) -> (Vec<usize>, usize) {
    let n = g.vertex_count();
    let mut label = vec![usize::MAX; n];
    let mut count = 0;
    let mut queue = VecDeque::new();
    for s in 0..n {
        if label[s] != usize::MAX {
            continue;
        }
        label[s] = count;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if label[w] == usize::MAX {
                    label[w] = count;
                    queue.push_back(w);
                }
            }
        }
        count += 1;
    }
    (label, count)
}

/// Vertex sets of the connected components, sorted by least vertex.
pub fn connected_components(g: &Graph) -> Vec<VertexSet> {
    let (label, count) = component_labels(g);
    let mut out = vec![VertexSet::new(); count];
    for (i, &l) in label.iter().enumerate() {
        out[l].insert(g.vertex(i));
    }
    out
}

pub fn induced_subgraph(g: &Graph, s: &VertexSet) -> Result<Graph> {
    let idx: Vec<usize> = s.iter().map(|&v| g.require(v)).collect::<Result<_>>()?;
    let mut edges = Vec::new();
    for (a, &i) in idx.iter().enumerate() {
        for (b, &j) in idx.iter().enumerate().skip(a + 1) {
            if g.is_adjacent(i, j) {
                edges.push((a, b));
            }
        }
    }
    Ok(Graph::from_index_edges(s.iter().copied().collect(), &edges))
}

/// Where a vertex of a disjoint union came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Provenance {
    pub input: usize,
    pub original: VertexId,
}

/// Disjoint union. The `k`-th vertex (in sorted order) of input `i` becomes
/// `VertexId::new(i, k)`.
pub fn disjoint_union(gs: &[Graph]) -> (Graph, BTreeMap<VertexId, Provenance>) {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut provenance = BTreeMap::new();
    for (i, g) in gs.iter().enumerate() {
        let fresh = |k: usize| VertexId::new(i as u32, k as u32);
        for (k, &v) in g.vertices().iter().enumerate() {
            vertices.push(fresh(k));
            provenance.insert(
                fresh(k),
                Provenance {
                    input: i,
                    original: v,
                },
            );
        }
        edges.extend(g.edges().into_iter().map(|(a, b)| (fresh(a), fresh(b))));
    }
    (
        Graph::new(vertices, edges).expect("fresh ids are distinct"),
        provenance,
    )
}

/// Graph distance; `Infinite` between different components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(u32),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<u32> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    pub index: Vec<VertexId>,
    data: Vec<Distance>,
}

impl DistanceMatrix {
    pub fn get(&self, i: usize, j: usize) -> Distance {
        self.data[i * self.index.len() + j]
    }

    pub fn row(&self, i: usize) -> &[Distance] {
        let n = self.index.len();
        &self.data[i * n..(i + 1) * n]
    }
}

pub(crate) fn bfs_from(g: &Graph, s: usize) -> Vec<Distance> {
    let mut dist = vec![Distance::Infinite; g.vertex_count()];
    dist[s] = Distance::Finite(0);
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        let Distance::Finite(du) = dist[u] else {
            unreachable!()
        };
        for &w in g.neighbors(u) {
            if dist[w] == Distance::Infinite {
                dist[w] = Distance::Finite(du + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

pub fn distance_matrix(g: &Graph) -> DistanceMatrix {
    let n = g.vertex_count();
    let mut data = Vec::with_capacity(n * n);
    for s in 0..n {
        data.extend(bfs_from(g, s));
    }
    DistanceMatrix {
        index: g.vertices().to_vec(),
        data,
    }
}

pub fn eccentricity(g: &Graph, v: VertexId) -> Result<Distance> {
    let i = g.require(v)?;
    Ok(bfs_from(g, i)
        .into_iter()
        .max()
        .unwrap_or(Distance::Finite(0)))
}

/// Vertices of minimum eccentricity.
pub fn center(g: &Graph) -> Result<VertexSet> {
    if g.vertex_count() == 0 || !g.is_connected() {
        return Err(Error::DisconnectedInput);
    }
    let ecc: Vec<Distance> = (0..g.vertex_count())
        .map(|i| bfs_from(g, i).into_iter().max().unwrap())
        .collect();
    let best = *ecc.iter().min().unwrap();
    Ok(ecc
        .iter()
        .enumerate()
        .filter(|(_, &e)| e == best)
        .map(|(i, _)| g.vertex(i))
        .collect())
}

/// Square matrix of arbitrary-precision integers indexed by a vertex list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub index: Vec<VertexId>,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(index: Vec<VertexId>) -> Self {
        let n = index.len();
        IntMatrix {
            index,
            data: vec![BigInt::zero(); n * n],
        }
    }

    pub fn identity(index: Vec<VertexId>) -> Self {
        let mut m = IntMatrix::zeros(index);
        let n = m.dim();
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds from row-major integer rows; the index defaults to `0..n`.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        let mut m = IntMatrix::zeros((0..n as u32).map(VertexId::original).collect());
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "matrix must be square");
            for (j, &x) in row.iter().enumerate() {
                m.data[i * n + j] = BigInt::from(x);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.index.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.dim() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        let n = self.dim();
        self.data[i * n + j] = x;
    }

    pub fn at(&self, x: VertexId, y: VertexId) -> Option<&BigInt> {
        let i = self.index.iter().position(|&v| v == x)?;
        let j = self.index.iter().position(|&v| v == y)?;
        Some(self.get(i, j))
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        let n = self.dim();
        assert_eq!(n, other.dim(), "dimension mismatch");
        let mut out = IntMatrix::zeros(self.index.clone());
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> BigInt {
        (0..self.dim()).map(|i| self.get(i, i).clone()).sum()
    }

    /// `P·M·Pᵀ` for the permutation sending index `i` to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> IntMatrix {
        let n = self.dim();
        let mut out = IntMatrix::zeros(self.index.clone());
        for i in 0..n {
            for j in 0..n {
                out.data[perm[i] * n + perm[j]] = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        use num_traits::ToPrimitive;
        (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| self.get(i, j).to_i64()).collect())
            .collect()
    }
}

pub fn adjacency_matrix(g: &Graph) -> IntMatrix {
    let mut m = IntMatrix::zeros(g.vertices().to_vec());
    for (i, j) in g.edges() {
        m.set(i, j, BigInt::one());
        m.set(j, i, BigInt::one());
    }
    m
}

/// Coefficients of `det(xI − m)` in ascending degree, so `out[k]` is the
/// coefficient of `x^k` and `out[dim] == 1`.
///
/// Faddeev–LeVerrier over the integers: every division by `k` is exact
/// because the intermediate coefficients are the elementary symmetric
/// functions of the eigenvalues scaled by integers.
pub fn char_poly(m: &IntMatrix) -> Vec<BigInt> {
    let n = m.dim();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut mk = IntMatrix::zeros(m.index.clone());
    for k in 1..=n {
        let mut next = m.mul(&mk);
        for i in 0..n {
            let d = next.get(i, i) + &coeffs[n - k + 1];
            next.set(i, i, d);
        }
        let t = m.mul(&next).trace();
        let (q, r) = num_integer_div(&(-t), k);
        debug_assert!(r.is_zero(), "Faddeev–LeVerrier division must be exact");
        coeffs[n - k] = q;
        mk = next;
    }
    coeffs
}

fn num_integer_div(a: &BigInt, k: usize) -> (BigInt, BigInt) {
    let k = BigInt::from(k);
    (a / &k, a % &k)
}

/// `[Adj(g)^0, …, Adj(g)^max_i]`.
pub fn walk_count_tensor(g: &Graph, max_i: usize) -> Vec<IntMatrix> {
    let a = adjacency_matrix(g);
    let mut out = Vec::with_capacity(max_i + 1);
    out.push(IntMatrix::identity(g.vertices().to_vec()));
    for i in 1..=max_i {
        let next = out[i - 1].mul(&a);
        out.push(next);
    }
    out
}

/// Human-friendly rendering of a polynomial from ascending coefficients.
pub fn format_poly(coeffs: &[BigInt]) -> alloc::string::String {
    use alloc::string::String;
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.sign() == num_bigint::Sign::Minus;
        let mag = if neg { -c.clone() } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let unit = mag.is_one();
        if !unit || k == 0 {
            out.push_str(&mag.to_string());
        }
        match k {
            0 => {}
            1 => out.push('x'),
            _ => {
                out.push_str("x^");
                out.push_str(&k.to_string());
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(i: u32) -> VertexId {
        VertexId::original(i)
    }

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// det(xI − A) by Leibniz expansion over polynomials.
    fn leibniz_char_poly(a: &[Vec<i64>]) -> Vec<i64> {
        let n = a.len();
        let mut total = vec![0i64; n + 1];
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            let mut term = vec![1i64];
            for (i, &p) in perm.iter().enumerate() {
                // entry (i, p) of xI - A
                let entry: Vec<i64> = if i == p {
                    vec![-a[i][p], 1]
                } else {
                    vec![-a[i][p]]
                };
                let mut next = vec![0i64; term.len() + entry.len() - 1];
                for (s, &x) in term.iter().enumerate() {
                    for (t, &y) in entry.iter().enumerate() {
                        next[s + t] += x * y;
                    }
                }
                term = next;
            }
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| perm[i] > perm[j])
                .count();
            let sign = if inversions % 2 == 0 { 1 } else { -1 };
            for (k, &c) in term.iter().enumerate() {
                total[k] += sign * c;
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        total
    }

    fn next_permutation(p: &mut [usize]) -> bool {
        let n = p.len();
        if n < 2 {
            return false;
        }
        let mut i = n - 1;
        while i > 0 && p[i - 1] >= p[i] {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        let mut j = n - 1;
        while p[j] <= p[i - 1] {
            j -= 1;
        }
        p.swap(i - 1, j);
        p[i..].reverse();
        true
    }

    fn count_walks(g: &Graph, len: usize, from: usize, to: usize) -> u64 {
        if len == 0 {
            return (from == to) as u64;
        }
        g.neighbors(from)
            .iter()
            .map(|&w| count_walks(g, len - 1, w, to))
            .sum()
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
    fn adjacency_examples() {
        let k2 = Graph::complete(2);
        assert_eq!(
            adjacency_matrix(&k2).to_i64_rows().unwrap(),
            vec![vec![0, 1], vec![1, 0]]
        );
        assert_eq!(
            adjacency_matrix(&Graph::complete(1)).to_i64_rows().unwrap(),
            vec![vec![0]]
        );
        assert_eq!(
            adjacency_matrix(&Graph::path(3)).to_i64_rows().unwrap(),
            vec![vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 0]]
        );
    }

    #[test]
    fn rejects_loops_and_duplicates() {
        assert_eq!(Graph::from_edges(2, &[(1, 1)]), Err(Error::SelfLoop(v(1))));
        assert_eq!(
            Graph::new([v(0), v(0)], []),
            Err(Error::DuplicateVertex(v(0)))
        );
        assert_eq!(
            Graph::from_edges(2, &[(0, 5)]),
            Err(Error::UnknownVertex(v(5)))
        );
    }

    #[test]
    fn vertex_id_text_round_trip() {
        for id in [v(7), VertexId::new(3, 11)] {
            assert_eq!(id.to_string().parse::<VertexId>().unwrap(), id);
        }
        assert_eq!("2:5".parse::<VertexId>().unwrap(), VertexId::new(2, 5));
    }

    #[test]
    fn components_examples() {
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        let cs = connected_components(&g);
        assert_eq!(
            cs,
            vec![VertexSet::from([v(0), v(1)]), VertexSet::from([v(2)])]
        );
        assert_eq!(connected_components(&Graph::cycle(4)).len(), 1);
        assert_eq!(connected_components(&Graph::empty(3)).len(), 3);
    }

    #[allow(clippy::needless_range_loop)]
    #[test]
    fn distance_examples() {
        let p3 = distance_matrix(&Graph::path(3));
        assert_eq!(p3.get(0, 2), Distance::Finite(2));
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert_eq!(distance_matrix(&g).get(0, 2), Distance::Infinite);
        // C5 against Floyd–Warshall
        let c5 = Graph::cycle(5);
        let d = distance_matrix(&c5);
        let mut fw = [[u32::MAX / 2; 5]; 5];
        for i in 0..5 {
            fw[i][i] = 0;
            for &j in c5.neighbors(i) {
                fw[i][j] = 1;
            }
        }
        for k in 0..5 {
            for i in 0..5 {
                for j in 0..5 {
                    fw[i][j] = fw[i][j].min(fw[i][k] + fw[k][j]);
                }
            }
        }
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(d.get(i, j), Distance::Finite(fw[i][j]));
                if i != j {
                    assert!(matches!(d.get(i, j), Distance::Finite(1 | 2)));
                }
            }
        }
    }

    #[test]
    fn eccentricity_examples() {
        let p3 = Graph::path(3);
        assert_eq!(eccentricity(&p3, v(1)).unwrap(), Distance::Finite(1));
        assert_eq!(eccentricity(&p3, v(0)).unwrap(), Distance::Finite(2));
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        for i in 0..3 {
            assert_eq!(eccentricity(&g, v(i)).unwrap(), Distance::Infinite);
        }
        assert_eq!(eccentricity(&p3, v(9)), Err(Error::UnknownVertex(v(9))));
    }

    #[test]
    fn center_examples() {
        assert_eq!(
            center(&Graph::path(4)).unwrap(),
            VertexSet::from([v(1), v(2)])
        );
        assert_eq!(center(&Graph::star(3)).unwrap(), VertexSet::from([v(0)]));
        assert_eq!(center(&Graph::cycle(4)).unwrap().len(), 4);
        assert_eq!(center(&Graph::empty(2)), Err(Error::DisconnectedInput));
    }

    #[test]
    fn char_poly_examples() {
        assert_eq!(char_poly(&IntMatrix::from_rows(&[vec![0]])), ints(&[0, 1]));
        assert_eq!(
            char_poly(&adjacency_matrix(&Graph::complete(2))),
            ints(&[-1, 0, 1])
        );
        let c4 = adjacency_matrix(&Graph::cycle(4));
        let oracle = leibniz_char_poly(&c4.to_i64_rows().unwrap());
        assert_eq!(oracle, vec![0, 0, -4, 0, 1]);
        assert_eq!(char_poly(&c4), ints(&oracle));
        assert_eq!(format_poly(&char_poly(&c4)), "x^4 - 4x^2");
    }

    #[test]
    fn char_poly_matches_leibniz_on_small_graphs() {
        for bits in 0..200u64 {
            let g = random_graph(5, bits.wrapping_mul(0x9E37_79B9_7F4A_7C15));
            let a = adjacency_matrix(&g);
            assert_eq!(
                char_poly(&a),
                ints(&leibniz_char_poly(&a.to_i64_rows().unwrap()))
            );
        }
        let m = IntMatrix::from_rows(&[vec![2, -1, 3], vec![0, 5, 1], vec![4, 4, -2]]);
        assert_eq!(
            char_poly(&m),
            ints(&leibniz_char_poly(&m.to_i64_rows().unwrap()))
        );
    }

    #[test]
    fn induced_subgraph_examples() {
        let p3 = Graph::path(3);
        let k2 = induced_subgraph(&p3, &VertexSet::from([v(0), v(1)])).unwrap();
        assert_eq!(k2, Graph::complete(2));
        let c4 = Graph::cycle(4);
        assert_eq!(induced_subgraph(&c4, &c4.vertex_set()).unwrap(), c4);
        let opp = induced_subgraph(&c4, &VertexSet::from([v(0), v(2)])).unwrap();
        assert_eq!(opp.edge_count(), 0);
        assert_eq!(opp.vertex_count(), 2);
        assert!(induced_subgraph(&c4, &VertexSet::from([v(8)])).is_err());
    }

    #[test]
    fn disjoint_union_examples() {
        let (g, _) = disjoint_union(&[Graph::complete(1), Graph::complete(1)]);
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 0));
        let (g, prov) = disjoint_union(&[Graph::complete(2)]);
        assert!(g.vertices().iter().all(|v| v.namespace == 0));
        assert_eq!(g.edge_count(), 1);
        assert_eq!(prov[&VertexId::new(0, 1)].original, v(1));
        let (g, prov) = disjoint_union(&[Graph::path(3), Graph::complete(2)]);
        assert_eq!((g.vertex_count(), g.edge_count()), (5, 3));
        assert_eq!(connected_components(&g).len(), 2);
        assert_eq!(
            prov[&VertexId::new(1, 0)],
            Provenance {
                input: 1,
                original: v(0)
            }
        );
    }

    #[test]
    fn walk_tensor_examples() {
        let t = walk_count_tensor(&Graph::complete(2), 2);
        assert_eq!(t[2].to_i64_rows().unwrap(), vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(t[0], IntMatrix::identity(t[0].index.clone()));
        let p4 = Graph::path(4);
        assert_eq!(walk_count_tensor(&p4, 1)[1], adjacency_matrix(&p4));
        let c3 = Graph::cycle(3);
        let t = walk_count_tensor(&c3, 3);
        for x in 0..3 {
            assert_eq!(count_walks(&c3, 3, x, x), 2);
            assert_eq!(t[3].get(x, x), &BigInt::from(2));
        }
    }

    proptest! {
        #[test]
        fn closed_walks_match_enumeration(n in 1u32..=7, bits: u64, i in 0usize..=6) {
            let g = random_graph(n, bits);
            let t = walk_count_tensor(&g, i);
            for x in 0..g.vertex_count() {
                prop_assert_eq!(t[i].get(x, x), &BigInt::from(count_walks(&g, i, x, x)));
            }
        }

        #[test]
        fn char_poly_is_permutation_invariant(n in 1u32..=8, bits: u64, seed: u64) {
            use rand::{seq::SliceRandom, SeedableRng};
            let g = random_graph(n, bits);
            let a = adjacency_matrix(&g);
            let mut perm: Vec<usize> = (0..a.dim()).collect();
            perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            prop_assert_eq!(char_poly(&a.permuted(&perm)), char_poly(&a));
        }

        #[test]
        fn center_is_nonempty_and_uniform(n in 1u32..=9, bits: u64) {
            let g = random_graph(n, bits);
            if g.is_connected() {
                let z = center(&g).unwrap();
                prop_assert!(!z.is_empty());
                let e: BTreeSet<_> = z.iter().map(|&x| eccentricity(&g, x).unwrap()).collect();
                prop_assert_eq!(e.len(), 1);
                let best = *e.iter().next().unwrap();
                for &x in g.vertices() {
                    prop_assert!(eccentricity(&g, x).unwrap() >= best);
                }
            }
        }

        #[test]
        fn distances_satisfy_bellman_recurrence(n in 1u32..=9, bits: u64) {
            let g = random_graph(n, bits);
            let d = distance_matrix(&g);
            for x in 0..g.vertex_count() {
                for y in 0..g.vertex_count() {
                    prop_assert_eq!(d.get(x, y), d.get(y, x));
                    if x == y {
                        prop_assert_eq!(d.get(x, y), Distance::Finite(0));
                    } else if let Distance::Finite(dxy) = d.get(x, y) {
                        let best = g.neighbors(x).iter().filter_map(|&z| d.get(z, y).finite()).min();
                        prop_assert_eq!(Some(dxy), best.map(|b| b + 1));
                    }
                }
            }
        }
    }
}
