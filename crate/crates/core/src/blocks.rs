//! Blocks (maximal 2-connected subgraphs), cut vertices, block trees and
//! block graphs.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{
    component_labels, connected_components, induced_subgraph, Graph, VertexId, VertexSet,
};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Sorted by least vertex, then size, then vertex list.
    pub blocks: Vec<VertexSet>,
    /// Vertices in at least two blocks, plus the vertex of every 1-vertex
    /// component.
    pub cut_vertices: VertexSet,
    /// Keyed by `(u, v)` with `u < v`.
    pub edge_block: BTreeMap<(VertexId, VertexId), usize>,
    /// Every vertex of the graph is a key; isolated vertices map to `{}`.
    pub containing_blocks: BTreeMap<VertexId, BTreeSet<usize>>,
}

impl BlockDecomposition {
    pub fn is_cut_vertex(&self, v: VertexId) -> bool {
        self.cut_vertices.contains(&v)
    }

    pub fn blocks_containing(&self, v: VertexId) -> &BTreeSet<usize> {
        &self.containing_blocks[&v]
    }

    pub fn block_index(&self, set: &VertexSet) -> Option<usize> {
        self.blocks.iter().position(|b| b == set)
    }

    /// Cut vertices of the graph contained in block `b`.
    pub fn cut_vertices_of(&self, b: usize) -> Vec<VertexId> {
        self.blocks[b]
            .iter()
            .copied()
            .filter(|v| self.cut_vertices.contains(v))
            .collect()
    }
}

/// Iterative lowpoint DFS keeping an edge stack; each articulation event
/// pops one block.
pub fn block_decomposition(g: &Graph) -> BlockDecomposition {
    let n = g.vertex_count();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut raw_blocks: Vec<BTreeSet<usize>> = Vec::new();

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        // (vertex, parent, next neighbour position)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(top) = stack.last_mut() {
            let (u, parent) = (top.0, top.1);
            if let Some(&w) = g.neighbors(u).get(top.2) {
                top.2 += 1;
                if disc[w] == usize::MAX {
                    edge_stack.push((u, w));
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, u, 0));
                } else if w != parent && disc[w] < disc[u] {
                    edge_stack.push((u, w));
                    low[u] = low[u].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[u]);
                    if low[u] >= disc[p] {
                        let mut block = BTreeSet::new();
                        while let Some((a, b)) = edge_stack.pop() {
                            block.insert(a);
                            block.insert(b);
                            if (a, b) == (p, u) {
                                break;
                            }
                        }
                        raw_blocks.push(block);
                    }
                }
            }
        }
    }

    let mut blocks: Vec<VertexSet> = raw_blocks
        .into_iter()
        .map(|b| b.into_iter().map(|i| g.vertex(i)).collect())
        .collect();
    blocks.sort_by(|a: &VertexSet, b: &VertexSet| {
        a.first()
            .cmp(&b.first())
            .then(a.len().cmp(&b.len()))
            .then_with(|| a.iter().cmp(b.iter()))
    });

    let mut containing_blocks: BTreeMap<VertexId, BTreeSet<usize>> =
        g.vertices().iter().map(|&v| (v, BTreeSet::new())).collect();
    for (bi, b) in blocks.iter().enumerate() {
        for v in b {
            containing_blocks.get_mut(v).unwrap().insert(bi);
        }
    }
    let cut_vertices = containing_blocks
        .iter()
        .filter(|(_, bs)| bs.len() != 1)
        .map(|(&v, _)| v)
        .collect();
    let mut edge_block = BTreeMap::new();
    for (u, v) in g.edge_ids() {
        let bi = containing_blocks[&u]
            .intersection(&containing_blocks[&v])
            .next()
            .copied()
            .expect("every edge lies in a block");
        edge_block.insert((u, v), bi);
    }
    BlockDecomposition {
        blocks,
        cut_vertices,
        edge_block,
        containing_blocks,
    }
}

pub fn is_2connected(g: &Graph) -> bool {
    g.vertex_count() >= 2 && g.is_connected() && block_decomposition(g).blocks.len() == 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    /// Blocks.
    White,
    /// Cut vertices.
    Black,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum NodePayload {
    Block(usize),
    CutVertex(VertexId),
    /// Node introduced by a tree construction rather than read off a graph.
    Fresh(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeNode {
    pub payload: NodePayload,
    pub color: Color,
}

/// Tree whose nodes carry a white/black colour.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ColoredTree {
    pub nodes: Vec<TreeNode>,
    pub adj: Vec<Vec<usize>>,
}

impl ColoredTree {
    pub fn add_node(&mut self, payload: NodePayload, color: Color) -> usize {
        self.nodes.push(TreeNode { payload, color });
        self.adj.push(Vec::new());
        self.nodes.len() - 1
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        self.adj[a].push(b);
        self.adj[b].push(a);
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn find(&self, payload: NodePayload) -> Option<usize> {
        self.nodes.iter().position(|n| n.payload == payload)
    }

    /// Appends a copy of `other`, returning the offset of its node 0.
    pub fn append(&mut self, other: &ColoredTree) -> usize {
        let offset = self.nodes.len();
        self.nodes.extend_from_slice(&other.nodes);
        self.adj.extend(
            other
                .adj
                .iter()
                .map(|ns| ns.iter().map(|&j| j + offset).collect()),
        );
        offset
    }

    /// Connected, acyclic, properly 2-coloured, with only white leaves.
    pub fn is_valid_block_tree_shape(&self) -> bool {
        let n = self.len();
        if n == 0 || self.edge_count() != n - 1 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if self.nodes[w].color == self.nodes[u].color {
                    return false;
                }
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
            && (n == 1
                || (0..n)
                    .filter(|&i| self.adj[i].len() == 1)
                    .all(|i| self.nodes[i].color == Color::White))
    }
}

/// Block tree of a connected graph: one white node per block (in block
/// order) followed by one black node per cut vertex (sorted).
pub fn block_tree(g: &Graph) -> Result<ColoredTree> {
    if g.vertex_count() == 0 || !g.is_connected() {
        return Err(Error::DisconnectedInput);
    }
    Ok(block_tree_from(&block_decomposition(g)))
}

pub(crate) fn block_tree_from(dec: &BlockDecomposition) -> ColoredTree {
    let mut t = ColoredTree::default();
    for bi in 0..dec.blocks.len() {
        t.add_node(NodePayload::Block(bi), Color::White);
    }
    for &c in &dec.cut_vertices {
        let ci = t.add_node(NodePayload::CutVertex(c), Color::Black);
        for &bi in &dec.containing_blocks[&c] {
            t.add_edge(bi, ci);
        }
    }
    t
}

/// One block tree per connected component, in component order.
pub fn block_forest(g: &Graph) -> Vec<ColoredTree> {
    connected_components(g)
        .iter()
        .map(|c| block_tree(&induced_subgraph(g, c).unwrap()).unwrap())
        .collect()
}

/// Intersection graph of the blocks; block `i` becomes vertex
/// `VertexId::original(i)`.
pub fn block_graph(g: &Graph) -> Result<Graph> {
    if g.vertex_count() == 0 || !g.is_connected() {
        return Err(Error::DisconnectedInput);
    }
    Ok(block_graph_from(&block_decomposition(g)))
}

pub(crate) fn block_graph_from(dec: &BlockDecomposition) -> Graph {
    let k = dec.blocks.len();
    let mut edges = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            if !dec.blocks[i].is_disjoint(&dec.blocks[j]) {
                edges.push((i as u32, j as u32));
            }
        }
    }
    Graph::from_edges(k as u32, &edges).unwrap()
}

/// True iff every block induces a complete graph.
pub fn is_block_graph(g: &Graph) -> bool {
    let dec = block_decomposition(g);
    dec.blocks.iter().all(|b| {
        let k = b.len();
        induced_subgraph(g, b).unwrap().edge_count() == k * (k - 1) / 2
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AnchorKind {
    CutVertex,
    Block,
}

/// A cut vertex or a block of a connected graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Anchor {
    pub kind: AnchorKind,
    pub vertices: VertexSet,
}

impl Anchor {
    pub fn cut(v: VertexId) -> Self {
        Anchor {
            kind: AnchorKind::CutVertex,
            vertices: VertexSet::from([v]),
        }
    }

    pub fn block(vertices: VertexSet) -> Self {
        Anchor {
            kind: AnchorKind::Block,
            vertices,
        }
    }

    /// Checks the anchor against a decomposition of the ambient graph.
    pub fn is_valid_in(&self, dec: &BlockDecomposition) -> bool {
        match self.kind {
            AnchorKind::CutVertex => {
                self.vertices.len() == 1 && dec.is_cut_vertex(*self.vertices.first().unwrap())
            }
            AnchorKind::Block => dec.block_index(&self.vertices).is_some(),
        }
    }

    /// Classifies a vertex set as an anchor of a connected graph.
    pub fn classify(dec: &BlockDecomposition, set: &VertexSet) -> Option<Anchor> {
        if set.len() == 1 && dec.is_cut_vertex(*set.first().unwrap()) {
            Some(Anchor::cut(*set.first().unwrap()))
        } else if dec.block_index(set).is_some() {
            Some(Anchor::block(set.clone()))
        } else {
            None
        }
    }

    /// Every anchor of a connected graph: cut vertices first, then blocks.
    pub fn all(dec: &BlockDecomposition) -> Vec<Anchor> {
        dec.cut_vertices
            .iter()
            .map(|&c| Anchor::cut(c))
            .chain(dec.blocks.iter().cloned().map(Anchor::block))
            .collect()
    }
}

/// Maps an anchor of a connected graph to the corresponding anchor of its
/// block graph (vertex `i` of the block graph is block `i`).
pub fn lambda(g: &Graph, a: &Anchor) -> Result<Anchor> {
    if g.vertex_count() == 0 || component_labels(g).1 != 1 {
        return Err(Error::DisconnectedInput);
    }
    if g.vertex_count() == 1 {
        return Err(Error::Degenerate(
            "the one-vertex graph, whose block graph is empty",
        ));
    }
    let dec = block_decomposition(g);
    if !a.is_valid_in(&dec) {
        return Err(Error::InvalidAnchor {
            component: 0,
            reason: format!("{:?} is neither a cut vertex nor a block", a.vertices),
        });
    }
    let bg = block_graph_from(&dec);
    let node = |bi: usize| VertexId::original(bi as u32);
    match a.kind {
        AnchorKind::CutVertex => {
            let r = *a.vertices.first().unwrap();
            Ok(Anchor::block(
                dec.containing_blocks[&r]
                    .iter()
                    .map(|&bi| node(bi))
                    .collect(),
            ))
        }
        AnchorKind::Block => {
            let bi = dec.block_index(&a.vertices).unwrap();
            let cuts = dec.cut_vertices_of(bi);
            match cuts.len() {
                0 => Ok(Anchor::cut(node(bi))),
                1 => {
                    let bdec = block_decomposition(&bg);
                    let home = bdec.blocks_containing(node(bi));
                    debug_assert_eq!(home.len(), 1);
                    Ok(Anchor::block(bdec.blocks[*home.first().unwrap()].clone()))
                }
                _ => Ok(Anchor::cut(node(bi))),
            }
        }
    }
}
