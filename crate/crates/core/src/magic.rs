//! Magic unitaries with coefficients in `M_d(ℂ)`.
//!
//! A magic unitary is a grid of `d × d` orthogonal projections whose rows and
//! columns each sum to the identity. Row indices are vertices of `H`, column
//! indices are vertices of `G`; it is a quantum isomorphism `G → H` when
//! `U·Adj(G) = Adj(H)·U`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Sub};

use num_complex::Complex64;
#[allow(unused_imports)] // sqrt on f64 without std
use num_traits::Float;

use crate::anchored::{gamma, split, AnchoredGraph};
use crate::blocks::{block_decomposition, AnchorKind};
use crate::graph::{
    bfs_from, connected_components, induced_subgraph, walk_count_tensor, Distance, Graph, VertexId,
    VertexSet,
};
use crate::matching::perfect_matching;
use crate::{Error, Result};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

const POWER_ITERATIONS: usize = 64;

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        ComplexMatrix {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| {
            if i == j {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let data = (0..dim * dim).map(|k| f(k / dim, k % dim)).collect();
        ComplexMatrix { dim, data }
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "matrix with {dim} rows is not square"
            )));
        }
        let m = ComplexMatrix {
            dim,
            data: rows.into_iter().flatten().collect(),
        };
        if !m.data.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::DimensionMismatch("non-finite entry".into()));
        }
        Ok(m)
    }

    pub fn from_real(rows: &[Vec<f64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    pub fn scale(&self, s: f64) -> Self {
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).conj())
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    /// Spectral norm: power iteration on `m*m`, Frobenius on failure.
    pub fn norm(&self) -> f64 {
        let fro = self.frobenius();
        if self.dim <= 1 || fro == 0.0 || !fro.is_finite() {
            return fro;
        }
        let m = &self.adjoint() * self;
        let mut v: Vec<Complex64> = (0..self.dim)
            .map(|k| Complex64::new(1.0 + 0.382 * k as f64, 0.1 * k as f64))
            .collect();
        let mut lambda = 0.0;
        for _ in 0..POWER_ITERATIONS {
            let w: Vec<Complex64> = (0..self.dim)
                .map(|i| (0..self.dim).map(|j| m.get(i, j) * v[j]).sum())
                .collect();
            let len = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            let vlen = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if len == 0.0 {
                break;
            }
            lambda = len / vlen;
            v = w.into_iter().map(|z| z / len).collect();
        }
        let s = lambda.sqrt();
        if s.is_finite() {
            s.min(fro)
        } else {
            fro
        }
    }

    fn check_dim(&self, other: &Self) {
        assert_eq!(self.dim, other.dim, "coefficient dimension mismatch");
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.check_dim(rhs);
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.check_dim(rhs);
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.check_dim(rhs);
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.get(k, j);
                }
            }
        }
        out
    }
}

/// `max(‖p² − p‖, ‖p* − p‖)`.
pub fn projection_residual(p: &ComplexMatrix) -> f64 {
    let sq = &(p * p) - p;
    let sa = &p.adjoint() - p;
    sq.norm().max(sa.norm())
}

/// Grid of `d × d` matrices; `entries[a * cols.len() + x]` is `u_{a,x}`.
#[derive(Debug, Clone, PartialEq)]
pub struct MagicUnitary {
    rows: Vec<VertexId>,
    cols: Vec<VertexId>,
    dim: usize,
    entries: Vec<ComplexMatrix>,
    tolerance: f64,
}

impl MagicUnitary {
    pub fn new(
        rows: Vec<VertexId>,
        cols: Vec<VertexId>,
        dim: usize,
        entries: Vec<ComplexMatrix>,
    ) -> Result<Self> {
        if rows.len() != cols.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} rows but {} columns",
                rows.len(),
                cols.len()
            )));
        }
        if entries.len() != rows.len() * cols.len() {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries, found {}",
                rows.len() * cols.len(),
                entries.len()
            )));
        }
        if let Some(k) = entries.iter().position(|e| e.dim() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "entry {k} has dimension {} instead of {dim}",
                entries[k].dim()
            )));
        }
        for (what, ids) in [("row", &rows), ("column", &cols)] {
            let set: BTreeSet<_> = ids.iter().collect();
            if set.len() != ids.len() {
                return Err(Error::IndexMismatch(format!("repeated {what} index")));
            }
        }
        Ok(MagicUnitary {
            rows,
            cols,
            dim,
            entries,
            tolerance: DEFAULT_TOLERANCE,
        })
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn rows(&self) -> &[VertexId] {
        &self.rows
    }

    pub fn cols(&self) -> &[VertexId] {
        &self.cols
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn entries(&self) -> &[ComplexMatrix] {
        &self.entries
    }

    pub fn entry(&self, a: usize, x: usize) -> &ComplexMatrix {
        &self.entries[a * self.cols.len() + x]
    }

    pub fn entry_at(&self, a: VertexId, x: VertexId) -> Option<&ComplexMatrix> {
        let i = self.rows.iter().position(|&r| r == a)?;
        let j = self.cols.iter().position(|&c| c == x)?;
        Some(self.entry(i, j))
    }

    fn row_index(&self) -> BTreeMap<VertexId, usize> {
        self.rows.iter().enumerate().map(|(i, &v)| (v, i)).collect()
    }

    fn col_index(&self) -> BTreeMap<VertexId, usize> {
        self.cols.iter().enumerate().map(|(i, &v)| (v, i)).collect()
    }

    /// Same unitary with rows and columns listed in the given orders.
    pub fn reindexed(&self, rows: &[VertexId], cols: &[VertexId]) -> Result<Self> {
        let (ri, ci) = (self.row_index(), self.col_index());
        let same = |a: &[VertexId], b: &BTreeMap<VertexId, usize>| {
            a.len() == b.len() && a.iter().all(|v| b.contains_key(v))
        };
        if !same(rows, &ri) || !same(cols, &ci) {
            return Err(Error::IndexMismatch(
                "reindexing must permute the index sets".into(),
            ));
        }
        let entries = rows
            .iter()
            .flat_map(|a| {
                cols.iter()
                    .map(|x| self.entry(ri[a], ci[x]).clone())
                    .collect::<Vec<_>>()
            })
            .collect();
        Ok(MagicUnitary {
            rows: rows.to_vec(),
            cols: cols.to_vec(),
            dim: self.dim,
            entries,
            tolerance: self.tolerance,
        })
    }

    fn nonzero(&self, a: usize, x: usize) -> bool {
        !self.entry(a, x).is_zero()
    }
}

/// Worst residual of each magic-unitary axiom, in operator norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MuReport {
    pub max_projection_residual: f64,
    pub max_row_residual: f64,
    pub max_col_residual: f64,
    pub tolerance: f64,
}

impl MuReport {
    pub fn passes(&self) -> bool {
        self.max_projection_residual <= self.tolerance
            && self.max_row_residual <= self.tolerance
            && self.max_col_residual <= self.tolerance
    }
}

pub fn validate_mu(u: &MagicUnitary) -> MuReport {
    validate_with_unit(u, &ComplexMatrix::identity(u.dim))
}

/// Magic-unitary axioms with rows and columns summing to `unit` instead of
/// the identity.
pub fn validate_with_unit(u: &MagicUnitary, unit: &ComplexMatrix) -> MuReport {
    let n = u.size();
    let mut report = MuReport {
        max_projection_residual: 0.0,
        max_row_residual: 0.0,
        max_col_residual: 0.0,
        tolerance: u.tolerance,
    };
    for e in &u.entries {
        report.max_projection_residual = report.max_projection_residual.max(projection_residual(e));
    }
    for k in 0..n {
        let row = (0..n).fold(ComplexMatrix::zeros(u.dim), |s, x| &s + u.entry(k, x));
        let col = (0..n).fold(ComplexMatrix::zeros(u.dim), |s, a| &s + u.entry(a, k));
        report.max_row_residual = report.max_row_residual.max((&row - unit).norm());
        report.max_col_residual = report.max_col_residual.max((&col - unit).norm());
    }
    report
}

fn require_index(u: &MagicUnitary, g: &Graph, h: &Graph) -> Result<()> {
    let cols: VertexSet = u.cols.iter().copied().collect();
    let rows: VertexSet = u.rows.iter().copied().collect();
    if cols != g.vertex_set() {
        return Err(Error::IndexMismatch(
            "columns must be the vertices of G".into(),
        ));
    }
    if rows != h.vertex_set() {
        return Err(Error::IndexMismatch(
            "rows must be the vertices of H".into(),
        ));
    }
    Ok(())
}

/// Outcome of the intertwining check `U·Adj(G) = Adj(H)·U`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QiCheck {
    pub residual: f64,
    pub passes: bool,
}

pub fn is_quantum_iso(u: &MagicUnitary, g: &Graph, h: &Graph) -> Result<QiCheck> {
    require_index(u, g, h)?;
    let (ri, ci) = (u.row_index(), u.col_index());
    let mut residual: f64 = 0.0;
    for &a in h.vertices() {
        for &y in g.vertices() {
            let yi = g.index_of(y).unwrap();
            let ai = h.index_of(a).unwrap();
            let left = g
                .neighbors(yi)
                .iter()
                .fold(ComplexMatrix::zeros(u.dim), |s, &x| {
                    &s + u.entry(ri[&a], ci[&g.vertex(x)])
                });
            let right = h
                .neighbors(ai)
                .iter()
                .fold(ComplexMatrix::zeros(u.dim), |s, &b| {
                    &s + u.entry(ri[&h.vertex(b)], ci[&y])
                });
            residual = residual.max((&left - &right).norm());
        }
    }
    Ok(QiCheck {
        residual,
        passes: residual <= u.tolerance,
    })
}

/// Scalar magic unitary of a bijection `x ↦ perm[x]`, each entry `0` or
/// `1_d`. Rows and columns are listed in sorted order.
pub fn from_permutation(perm: &BTreeMap<VertexId, VertexId>, d: usize) -> Result<MagicUnitary> {
    let cols: Vec<VertexId> = perm.keys().copied().collect();
    let image: BTreeSet<VertexId> = perm.values().copied().collect();
    if image.len() != perm.len() {
        return Err(Error::NotBijective("two vertices share an image".into()));
    }
    let rows: Vec<VertexId> = image.into_iter().collect();
    let mut entries = Vec::with_capacity(rows.len() * cols.len());
    for a in &rows {
        for x in &cols {
            entries.push(if perm[x] == *a {
                ComplexMatrix::identity(d)
            } else {
                ComplexMatrix::zeros(d)
            });
        }
    }
    MagicUnitary::new(rows, cols, d, entries)
}

/// Quantum automorphism of the 4-cycle `0-1-2-3` from two projections: with
/// vertices ordered `(0, 2, 1, 3)` the grid is `diag(P, Q)` where
/// `P = [[p, 1−p], [1−p, p]]` and likewise for `Q`.
pub fn c4_mu(p: &ComplexMatrix, q: &ComplexMatrix) -> Result<MagicUnitary> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch(
            "p and q differ in dimension".into(),
        ));
    }
    for m in [p, q] {
        let r = projection_residual(m);
        if r > DEFAULT_TOLERANCE {
            return Err(Error::NotAProjection(r));
        }
    }
    let d = p.dim();
    let one = ComplexMatrix::identity(d);
    let (pc, qc) = (&one - p, &one - q);
    let z = ComplexMatrix::zeros(d);
    let order: Vec<VertexId> = [0, 2, 1, 3].into_iter().map(VertexId::original).collect();
    let grid = [
        [p, &pc, &z, &z],
        [&pc, p, &z, &z],
        [&z, &z, q, &qc],
        [&z, &z, &qc, q],
    ];
    let entries = grid
        .iter()
        .flat_map(|r| r.iter().map(|&m| m.clone()))
        .collect();
    MagicUnitary::new(order.clone(), order, d, entries)
}

/// Disjoint nonempty cells covering a vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    cells: Vec<VertexSet>,
}

impl Partition {
    pub fn new(cells: Vec<VertexSet>) -> Result<Self> {
        if cells.iter().any(BTreeSet::is_empty) {
            return Err(Error::EmptyCell);
        }
        let mut seen = VertexSet::new();
        for c in &cells {
            for &v in c {
                if !seen.insert(v) {
                    return Err(Error::PreconditionFailed(format!(
                        "vertex {v} lies in two cells"
                    )));
                }
            }
        }
        Ok(Partition { cells })
    }

    /// Connected components, sorted by least vertex.
    pub fn components(g: &Graph) -> Self {
        Partition {
            cells: connected_components(g),
        }
    }

    pub fn cells(&self) -> &[VertexSet] {
        &self.cells
    }

    pub fn covers(&self, vs: &VertexSet) -> bool {
        let union: VertexSet = self.cells.iter().flatten().copied().collect();
        &union == vs
    }

    fn cell_of(&self) -> BTreeMap<VertexId, usize> {
        self.cells
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.iter().map(move |&v| (v, i)))
            .collect()
    }
}

fn require_partitions(u: &MagicUnitary, pg: &Partition, ph: &Partition) -> Result<()> {
    if !pg.covers(&u.cols.iter().copied().collect())
        || !ph.covers(&u.rows.iter().copied().collect())
    {
        return Err(Error::IndexMismatch(
            "partitions must cover the index sets".into(),
        ));
    }
    Ok(())
}

/// `u_{ax}u_{by} = 0` whenever exactly one of `x ~ y`, `a ~ b` holds in the
/// respective partitions.
pub fn preserves_partition(u: &MagicUnitary, pg: &Partition, ph: &Partition) -> bool {
    if require_partitions(u, pg, ph).is_err() {
        return false;
    }
    let (cg, ch) = (pg.cell_of(), ph.cell_of());
    let n = u.size();
    let norms: Vec<f64> = u.entries.iter().map(ComplexMatrix::norm).collect();
    for a in 0..n {
        for x in 0..n {
            if norms[a * n + x] == 0.0 {
                continue;
            }
            for b in 0..n {
                for y in 0..n {
                    let same_g = cg[&u.cols[x]] == cg[&u.cols[y]];
                    let same_h = ch[&u.rows[a]] == ch[&u.rows[b]];
                    if same_g == same_h || norms[a * n + x] * norms[b * n + y] <= u.tolerance {
                        continue;
                    }
                    if (u.entry(a, x) * u.entry(b, y)).norm() > u.tolerance {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// `Σ_{a∈K} u_{a,x}` with `x` the given representative of cell `L`.
fn cell_sum(u: &MagicUnitary, k: &VertexSet, x: VertexId) -> ComplexMatrix {
    let ri = u.row_index();
    let xi = u.cols.iter().position(|&c| c == x).unwrap();
    k.iter()
        .fold(ComplexMatrix::zeros(u.dim), |s, a| &s + u.entry(ri[a], xi))
}

/// The magic unitary `P(U)` over cells: entry `(K, L)` is `Σ_{a∈K} u_{a,x}`
/// for the least `x ∈ L`. Cells are indexed by their least vertex.
pub fn partition_sum(u: &MagicUnitary, pg: &Partition, ph: &Partition) -> Result<MagicUnitary> {
    require_partitions(u, pg, ph)?;
    if pg.cells.len() != ph.cells.len() || !preserves_partition(u, pg, ph) {
        return Err(Error::PartitionNotPreserved);
    }
    let rows: Vec<VertexId> = ph.cells.iter().map(|c| *c.first().unwrap()).collect();
    let cols: Vec<VertexId> = pg.cells.iter().map(|c| *c.first().unwrap()).collect();
    let entries = ph
        .cells
        .iter()
        .flat_map(|k| {
            pg.cells
                .iter()
                .map(|l| cell_sum(u, k, *l.first().unwrap()))
                .collect::<Vec<_>>()
        })
        .collect();
    Ok(MagicUnitary::new(rows, cols, u.dim, entries)?.with_tolerance(u.tolerance))
}

/// Largest change of any `P(U)` entry over all representative choices.
pub fn partition_sum_spread(u: &MagicUnitary, pg: &Partition, ph: &Partition) -> Result<f64> {
    let p = partition_sum(u, pg, ph)?;
    let mut spread: f64 = 0.0;
    for (ki, k) in ph.cells.iter().enumerate() {
        for (li, l) in pg.cells.iter().enumerate() {
            for &x in l {
                spread = spread.max((&cell_sum(u, k, x) - p.entry(ki, li)).norm());
            }
        }
    }
    Ok(spread)
}

/// The sub-grid `U[t, s]`, rows `t ⊆ V(H)`, columns `s ⊆ V(G)`.
pub fn extract_block(u: &MagicUnitary, t: &VertexSet, s: &VertexSet) -> Result<MagicUnitary> {
    if t.is_empty() || s.is_empty() {
        return Err(Error::EmptyCell);
    }
    let (ri, ci) = (u.row_index(), u.col_index());
    for v in t {
        ri.get(v).ok_or(Error::UnknownVertex(*v))?;
    }
    for v in s {
        ci.get(v).ok_or(Error::UnknownVertex(*v))?;
    }
    let entries = t
        .iter()
        .flat_map(|a| {
            s.iter()
                .map(|x| u.entry(ri[a], ci[x]).clone())
                .collect::<Vec<_>>()
        })
        .collect();
    Ok(MagicUnitary::new(
        t.iter().copied().collect(),
        s.iter().copied().collect(),
        u.dim,
        entries,
    )?
    .with_tolerance(u.tolerance))
}

/// `u_{ax} = 0` whenever exactly one of `x ∈ r`, `a ∈ s` holds.
pub fn preserves_anchor(u: &MagicUnitary, r: &VertexSet, s: &VertexSet) -> bool {
    let n = u.size();
    (0..n).all(|a| {
        (0..n).all(|x| {
            s.contains(&u.rows[a]) == r.contains(&u.cols[x]) || u.entry(a, x).norm() <= u.tolerance
        })
    })
}

/// `U*`: entry `(x, a)` is `u_{ax}*`.
pub fn adjoint_mu(u: &MagicUnitary) -> MagicUnitary {
    let n = u.size();
    let entries = (0..n)
        .flat_map(|x| (0..n).map(move |a| u.entry(a, x).adjoint()))
        .collect();
    MagicUnitary {
        rows: u.cols.clone(),
        cols: u.rows.clone(),
        dim: u.dim,
        entries,
        tolerance: u.tolerance,
    }
}

/// Whenever `u_{ax}u_{by} ≠ 0`, checks `wᵢ(x,y) = wᵢ(a,b)` for `i ≤ |V|`.
pub fn walk_compatible(u: &MagicUnitary, g: &Graph, h: &Graph) -> Result<bool> {
    require_index(u, g, h)?;
    let n = u.size();
    let (wg, wh) = (walk_count_tensor(g, n), walk_count_tensor(h, n));
    let gi: Vec<usize> = u.cols.iter().map(|&v| g.index_of(v).unwrap()).collect();
    let hi: Vec<usize> = u.rows.iter().map(|&v| h.index_of(v).unwrap()).collect();
    for a in 0..n {
        for x in (0..n).filter(|&x| u.nonzero(a, x)) {
            for b in 0..n {
                for y in (0..n).filter(|&y| u.nonzero(b, y)) {
                    if (u.entry(a, x) * u.entry(b, y)).norm() <= u.tolerance {
                        continue;
                    }
                    if (0..=n).any(|i| wg[i].get(gi[x], gi[y]) != wh[i].get(hi[a], hi[b])) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// `max ‖u_{ax}u_{by} − u_{by}u_{ax}‖` over all pairs of entries.
pub fn noncommutativity(u: &MagicUnitary) -> f64 {
    let mut worst: f64 = 0.0;
    let nz: Vec<&ComplexMatrix> = u.entries.iter().filter(|e| !e.is_zero()).collect();
    for (i, p) in nz.iter().enumerate() {
        for q in &nz[i + 1..] {
            worst = worst.max((&(*p * *q) - &(*q * *p)).norm());
        }
    }
    worst
}

/// A nonzero entry `u_{ax}` joining vertices at different distances from
/// their anchors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceViolation {
    pub row: VertexId,
    pub col: VertexId,
    pub g_distance: Distance,
    pub h_distance: Distance,
}

fn distance_to(g: &Graph, r: &VertexSet) -> Vec<Distance> {
    let mut best = vec![Distance::Infinite; g.vertex_count()];
    for &v in r {
        if let Some(i) = g.index_of(v) {
            for (b, d) in best.iter_mut().zip(bfs_from(g, i)) {
                *b = (*b).min(d);
            }
        }
    }
    best
}

/// Audit only: lists nonzero entries `u_{ax}` with `d(x, r) ≠ d(a, s)`.
/// An empty list is not guaranteed in general.
pub fn distance_audit(
    u: &MagicUnitary,
    g: &Graph,
    h: &Graph,
    r: &VertexSet,
    s: &VertexSet,
) -> Result<Vec<DistanceViolation>> {
    require_index(u, g, h)?;
    let (dg, dh) = (distance_to(g, r), distance_to(h, s));
    let mut out = Vec::new();
    for (a, &row) in u.rows.iter().enumerate() {
        for (x, &col) in u.cols.iter().enumerate() {
            let (gd, hd) = (dg[g.index_of(col).unwrap()], dh[h.index_of(row).unwrap()]);
            if gd != hd && u.entry(a, x).norm() > u.tolerance {
                out.push(DistanceViolation {
                    row,
                    col,
                    g_distance: gd,
                    h_distance: hd,
                });
            }
        }
    }
    Ok(out)
}

/// Nonzero entries `u_{ax}` where exactly one of `x`, `a` is a cut vertex.
pub fn cut_vertex_audit(
    u: &MagicUnitary,
    g: &Graph,
    h: &Graph,
) -> Result<Vec<(VertexId, VertexId)>> {
    require_index(u, g, h)?;
    let (dg, dh) = (block_decomposition(g), block_decomposition(h));
    let mut out = Vec::new();
    for (a, &row) in u.rows.iter().enumerate() {
        for (x, &col) in u.cols.iter().enumerate() {
            if dg.is_cut_vertex(col) != dh.is_cut_vertex(row) && u.entry(a, x).norm() > u.tolerance
            {
                out.push((row, col));
            }
        }
    }
    Ok(out)
}

fn precondition(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::PreconditionFailed(String::from(what)))
    }
}

/// Transport of a quantum isomorphism of connected anchored graphs through
/// `Γ`. Block anchors keep `U`; cut-vertex anchors give `Diag(U₀, P(U₀))`
/// where `U₀` drops the anchor row and column and `P` sums over the
/// components of `G − r`, placed on the copy vertices.
pub fn gamma_transport(
    u: &MagicUnitary,
    ag: &AnchoredGraph,
    ah: &AnchoredGraph,
) -> Result<MagicUnitary> {
    let (g, h) = (ag.graph(), ah.graph());
    require_index(u, g, h)?;
    precondition(g.is_connected() && h.is_connected(), "connected inputs")?;
    precondition(validate_mu(u).passes(), "magic unitary axioms")?;
    precondition(is_quantum_iso(u, g, h)?.passes, "quantum isomorphism")?;
    precondition(
        preserves_anchor(u, ag.anchor(), ah.anchor()),
        "anchor preservation",
    )?;
    let (kg, kh) = (ag.kind()?, ah.kind()?);
    precondition(kg == kh, "anchor kinds agree")?;
    let u = u.reindexed(h.vertices(), g.vertices())?;
    if kg == AnchorKind::Block || g.vertex_count() == 1 {
        let (gg, gh) = (gamma(ag)?, gamma(ah)?);
        return u.reindexed(gh.graph().vertices(), gg.graph().vertices());
    }
    let r = *ag.anchor().first().unwrap();
    let s = *ah.anchor().first().unwrap();
    let (sg, sh) = (split(g, r)?, split(h, s)?);

    let rest = |gr: &Graph, v: VertexId| -> Result<Graph> {
        let mut vs = gr.vertex_set();
        vs.remove(&v);
        induced_subgraph(gr, &vs)
    };
    let (g0, h0) = (rest(g, r)?, rest(h, s)?);
    let u0 = extract_block(&u, &h0.vertex_set(), &g0.vertex_set())?;
    let (pg, ph) = (Partition::components(&g0), Partition::components(&h0));
    let p = partition_sum(&u0, &pg, &ph)
        .map_err(|_| Error::PreconditionFailed("partition preservation".into()))?;
    let support: Vec<Vec<usize>> = (0..p.size())
        .map(|k| {
            (0..p.size())
                .filter(|&l| p.entry(k, l).norm() > u.tolerance)
                .collect()
        })
        .collect();
    precondition(
        perfect_matching(&support, p.size()).is_some(),
        "component pairing",
    )?;

    // component i of G − r carries copy i
    let rows: Vec<VertexId> = h0.vertices().iter().chain(&sh.copies).copied().collect();
    let cols: Vec<VertexId> = g0.vertices().iter().chain(&sg.copies).copied().collect();
    let (n0, k) = (h0.vertex_count(), p.size());
    let mut entries = Vec::with_capacity(rows.len() * cols.len());
    for a in 0..n0 + k {
        for x in 0..n0 + k {
            entries.push(match (a < n0, x < n0) {
                (true, true) => u0.entry(a, x).clone(),
                (false, false) => p.entry(a - n0, x - n0).clone(),
                _ => ComplexMatrix::zeros(u.dim),
            });
        }
    }
    MagicUnitary::new(rows, cols, u.dim, entries)?
        .with_tolerance(u.tolerance)
        .reindexed(sh.graph.vertices(), sg.graph.vertices())
}

/// Checks a transported unitary against `Γ` of both anchored graphs: magic
/// unitary axioms, intertwining and anchor preservation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransportCheck {
    pub mu: MuReport,
    pub qi: QiCheck,
    pub anchor_preserved: bool,
}

impl TransportCheck {
    pub fn passes(&self) -> bool {
        self.mu.passes() && self.qi.passes && self.anchor_preserved
    }
}

pub fn verify_transport(
    t: &MagicUnitary,
    ag: &AnchoredGraph,
    ah: &AnchoredGraph,
) -> Result<TransportCheck> {
    let (gg, gh) = (gamma(ag)?, gamma(ah)?);
    Ok(TransportCheck {
        mu: validate_mu(t),
        qi: is_quantum_iso(t, gg.graph(), gh.graph())?,
        anchor_preserved: preserves_anchor(t, gg.anchor(), gh.anchor()),
    })
}
