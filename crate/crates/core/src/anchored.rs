//! Anchored graphs, the decomposition `Γ` and the tree constructions that
//! invert it on block trees.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::blocks::{
    block_decomposition, block_tree_from, Anchor, AnchorKind, BlockDecomposition, Color,
    ColoredTree, NodePayload,
};
use crate::graph::{center, connected_components, induced_subgraph, Graph, VertexId, VertexSet};
use crate::{Error, Result};

/// A graph with an anchor meeting every component in a cut vertex or a block
/// of that component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnchoredGraph {
    graph: Graph,
    anchor: VertexSet,
}

impl AnchoredGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn anchor(&self) -> &VertexSet {
        &self.anchor
    }

    pub fn into_parts(self) -> (Graph, VertexSet) {
        (self.graph, self.anchor)
    }

    /// Connected components with their share of the anchor, sorted by least
    /// vertex.
    pub fn components(&self) -> Vec<AnchoredGraph> {
        connected_components(&self.graph)
            .into_iter()
            .map(|c| AnchoredGraph {
                graph: induced_subgraph(&self.graph, &c).unwrap(),
                anchor: self.anchor.intersection(&c).copied().collect(),
            })
            .collect()
    }

    /// Anchor kind of a connected anchored graph.
    pub fn kind(&self) -> Result<AnchorKind> {
        self.require_connected()?;
        let dec = block_decomposition(&self.graph);
        Ok(Anchor::classify(&dec, &self.anchor)
            .expect("validated on construction")
            .kind)
    }

    fn require_connected(&self) -> Result<()> {
        if self.graph.vertex_count() == 0 || !self.graph.is_connected() {
            return Err(Error::DisconnectedInput);
        }
        Ok(())
    }
}

pub fn validate_anchored(g: &Graph, r: &VertexSet) -> Result<AnchoredGraph> {
    if let Some(&bad) = r.iter().find(|&&v| !g.contains(v)) {
        return Err(Error::UnknownVertex(bad));
    }
    let dec = block_decomposition(g);
    for (i, comp) in connected_components(g).iter().enumerate() {
        let share: VertexSet = r.intersection(comp).copied().collect();
        if Anchor::classify(&dec, &share).is_none() {
            return Err(Error::InvalidAnchor {
                component: i,
                reason: format!("{} is neither a cut vertex nor a block", fmt_set(&share)),
            });
        }
    }
    Ok(AnchoredGraph {
        graph: g.clone(),
        anchor: r.clone(),
    })
}

/// `{a,b,c}`.
pub fn fmt_set(s: &VertexSet) -> String {
    let parts: Vec<String> = s.iter().map(|v| format!("{v}")).collect();
    format!("{{{}}}", parts.join(","))
}

fn rho_with(dec: &BlockDecomposition, v: VertexId) -> VertexSet {
    let home = dec.blocks_containing(v);
    if home.len() == 1 {
        dec.blocks[*home.first().unwrap()].clone()
    } else {
        VertexSet::from([v])
    }
}

/// `{v}` for cut vertices and isolated vertices, otherwise the unique block
/// containing `v`.
pub fn rho(g: &Graph, v: VertexId) -> Result<VertexSet> {
    g.require(v)?;
    Ok(rho_with(&block_decomposition(g), v))
}

/// The centre's enclosing anchor: the lone central cut vertex, or the unique
/// block containing the centre.
pub fn zbar(g: &Graph) -> Result<Anchor> {
    let z = center(g)?;
    let dec = block_decomposition(g);
    zbar_with(&dec, &z)
}

pub(crate) fn zbar_with(dec: &BlockDecomposition, z: &VertexSet) -> Result<Anchor> {
    if z.len() == 1 && dec.is_cut_vertex(*z.first().unwrap()) {
        return Ok(Anchor::cut(*z.first().unwrap()));
    }
    let mut holders = dec.blocks.iter().filter(|b| z.is_subset(b));
    match (holders.next(), holders.next()) {
        (Some(b), None) => Ok(Anchor::block(b.clone())),
        _ => Err(Error::PreconditionFailed(
            "centre not contained in a unique block".into(),
        )),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split {
    pub graph: Graph,
    /// One copy of the split vertex per component of `g - r`, in component
    /// order.
    pub copies: Vec<VertexId>,
}

/// Splits a connected graph at a cut vertex `r`: the disjoint union of
/// `g[C_i ∪ {r}]` over the components `C_i` of `g - r`, with `r` replaced by
/// a fresh copy in each part. Copy `i` (1-based) lives in namespace
/// `m + i`, where `m` is the largest namespace used by `g`.
pub fn split(g: &Graph, r: VertexId) -> Result<Split> {
    g.require(r)?;
    if !g.is_connected() {
        return Err(Error::DisconnectedInput);
    }
    if g.vertex_count() == 1 {
        return Ok(Split {
            graph: g.clone(),
            copies: vec![r],
        });
    }
    let dec = block_decomposition(g);
    if !dec.is_cut_vertex(r) {
        return Err(Error::NotACutVertex(r));
    }
    let base = g.vertices().iter().map(|v| v.namespace).max().unwrap_or(0);
    let mut rest = g.vertex_set();
    rest.remove(&r);
    let without_r = induced_subgraph(g, &rest)?;
    let mut vertices: Vec<VertexId> = rest.iter().copied().collect();
    let mut edges = Vec::new();
    let mut copies = Vec::new();
    for (i, comp) in connected_components(&without_r).iter().enumerate() {
        let copy = VertexId::new(base + 1 + i as u32, r.local);
        copies.push(copy);
        vertices.push(copy);
        for (u, v) in g.edge_ids() {
            let rename = |x: VertexId| {
                if x == r {
                    Some(copy)
                } else if comp.contains(&x) {
                    Some(x)
                } else {
                    None
                }
            };
            if let (Some(a), Some(b)) = (rename(u), rename(v)) {
                edges.push((a, b));
            }
        }
    }
    Ok(Split {
        graph: Graph::new(vertices, edges)?,
        copies,
    })
}

/// Output of `Γ` together with the copy provenance (empty for block anchors).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaOutput {
    pub result: AnchoredGraph,
    /// Copy vertex → the split vertex it stands for.
    pub copies: BTreeMap<VertexId, VertexId>,
}

pub fn gamma(ag: &AnchoredGraph) -> Result<AnchoredGraph> {
    Ok(gamma_detailed(ag)?.result)
}

/// `Γ` on a connected anchored graph: split at a cut-vertex anchor, or delete
/// the edges of a block anchor; the new anchor is the union of `ρ` over the
/// copies (resp. the old anchor) in the new graph.
pub fn gamma_detailed(ag: &AnchoredGraph) -> Result<GammaOutput> {
    ag.require_connected()?;
    let g = &ag.graph;
    let dec = block_decomposition(g);
    let anchor = Anchor::classify(&dec, &ag.anchor).expect("validated on construction");
    let (graph, seeds, copies) = match anchor.kind {
        AnchorKind::CutVertex => {
            let r = *anchor.vertices.first().unwrap();
            let s = split(g, r)?;
            let copies = s
                .copies
                .iter()
                .filter(|&&c| c != r)
                .map(|&c| (c, r))
                .collect();
            (s.graph, s.copies, copies)
        }
        AnchorKind::Block => (
            g.remove_edges_within(&anchor.vertices),
            anchor.vertices.iter().copied().collect(),
            BTreeMap::new(),
        ),
    };
    let new_dec = block_decomposition(&graph);
    let mut new_anchor = VertexSet::new();
    for s in seeds {
        new_anchor.extend(rho_with(&new_dec, s));
    }
    let result = validate_anchored(&graph, &new_anchor)?;
    Ok(GammaOutput { result, copies })
}

/// Coloured tree with a distinguished root and optional node labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedColoredTree {
    pub tree: ColoredTree,
    pub root: usize,
    pub labels: Vec<Option<String>>,
}

impl RootedColoredTree {
    pub fn new(tree: ColoredTree, root: usize) -> Self {
        let labels = vec![None; tree.len()];
        RootedColoredTree { tree, root, labels }
    }

    pub fn single(color: Color) -> Self {
        let mut t = ColoredTree::default();
        t.add_node(NodePayload::Fresh(0), color);
        RootedColoredTree::new(t, 0)
    }

    pub fn root_color(&self) -> Color {
        self.tree.nodes[self.root].color
    }

    pub fn len(&self) -> usize {
        self.tree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tree.is_empty()
    }

    fn next_fresh(&self) -> u32 {
        self.tree
            .nodes
            .iter()
            .filter_map(|n| match n.payload {
                NodePayload::Fresh(k) => Some(k + 1),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }

    /// Children lists with respect to the root.
    pub fn children(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut children = vec![Vec::new(); n];
        let mut seen = vec![false; n];
        let mut stack = vec![self.root];
        seen[self.root] = true;
        while let Some(u) = stack.pop() {
            for &w in &self.tree.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    children[u].push(w);
                    stack.push(w);
                }
            }
        }
        children
    }

    /// Nodes in an order where every child precedes its parent.
    fn post_order(&self, children: &[Vec<usize>]) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.len());
        let mut stack = vec![self.root];
        while let Some(u) = stack.pop() {
            order.push(u);
            stack.extend(children[u].iter().copied());
        }
        order.reverse();
        order
    }

    /// Canonical code of every node's subtree.
    pub fn subtree_codes(&self) -> Vec<String> {
        self.subtree_codes_with(true)
    }

    fn subtree_codes_with(&self, colored: bool) -> Vec<String> {
        let children = self.children();
        let mut codes = vec![String::new(); self.len()];
        for u in self.post_order(&children) {
            let mut kids: Vec<&str> = children[u].iter().map(|&c| codes[c].as_str()).collect();
            kids.sort_unstable();
            let mut code = String::from("(");
            if colored {
                code.push(match self.tree.nodes[u].color {
                    Color::White => 'W',
                    Color::Black => 'B',
                });
            }
            if let Some(label) = &self.labels[u] {
                code.push_str(&format!("[{}:{}]", label.len(), label));
            }
            for k in kids {
                code.push_str(k);
            }
            code.push(')');
            codes[u] = code;
        }
        codes
    }
}

/// AHU-style canonical string: equal iff the trees are isomorphic as rooted,
/// coloured, labelled trees.
pub fn tree_canonical(t: &RootedColoredTree) -> String {
    t.subtree_codes()[t.root].clone()
}

/// Canonical string ignoring colours (labels are kept).
pub fn tree_canonical_uncolored(t: &RootedColoredTree) -> String {
    t.subtree_codes_with(false)[t.root].clone()
}

/// A root-, colour- and label-preserving isomorphism `a → b` as a node map,
/// if one exists.
pub fn rooted_isomorphism(a: &RootedColoredTree, b: &RootedColoredTree) -> Option<Vec<usize>> {
    if a.len() != b.len() {
        return None;
    }
    let (ca, cb) = (a.subtree_codes(), b.subtree_codes());
    if ca[a.root] != cb[b.root] {
        return None;
    }
    let (ka, kb) = (a.children(), b.children());
    let mut map = vec![usize::MAX; a.len()];
    let mut stack = vec![(a.root, b.root)];
    while let Some((u, w)) = stack.pop() {
        map[u] = w;
        let mut us = ka[u].clone();
        let mut ws = kb[w].clone();
        us.sort_by(|&x, &y| ca[x].cmp(&ca[y]));
        ws.sort_by(|&x, &y| cb[x].cmp(&cb[y]));
        for (x, y) in us.into_iter().zip(ws) {
            debug_assert_eq!(ca[x], cb[y]);
            stack.push((x, y));
        }
    }
    Some(map)
}

/// Block tree of a connected anchored graph rooted at its anchor.
pub fn rooted_block_tree(ag: &AnchoredGraph) -> Result<RootedColoredTree> {
    ag.require_connected()?;
    let dec = block_decomposition(&ag.graph);
    let tree = block_tree_from(&dec);
    let anchor = Anchor::classify(&dec, &ag.anchor).expect("validated on construction");
    let payload = match anchor.kind {
        AnchorKind::CutVertex => NodePayload::CutVertex(*anchor.vertices.first().unwrap()),
        AnchorKind::Block => NodePayload::Block(dec.block_index(&anchor.vertices).unwrap()),
    };
    let root = tree.find(payload).expect("anchor is a tree node");
    Ok(RootedColoredTree::new(tree, root))
}

/// Joins white-rooted trees under a fresh black root.
pub fn delta1(trees: &[RootedColoredTree]) -> Result<RootedColoredTree> {
    if let Some(i) = trees.iter().position(|t| t.root_color() != Color::White) {
        return Err(Error::RootColorViolation { index: i });
    }
    let mut out = ColoredTree::default();
    let mut labels = Vec::new();
    let mut roots = Vec::new();
    let mut fresh = 0;
    for t in trees {
        let off = out.append(&t.tree);
        labels.extend(t.labels.iter().cloned());
        roots.push(off + t.root);
        fresh = fresh.max(t.next_fresh());
    }
    let r = out.add_node(NodePayload::Fresh(fresh), Color::Black);
    labels.push(None);
    for x in roots {
        out.add_edge(r, x);
    }
    Ok(RootedColoredTree {
        tree: out,
        root: r,
        labels,
    })
}

/// Fresh white root; white-rooted inputs hang from it through a fresh black
/// node, black-rooted inputs with at least two nodes hang directly, and
/// one-node black inputs are dropped.
pub fn delta2(trees: &[RootedColoredTree]) -> RootedColoredTree {
    let mut fresh = trees
        .iter()
        .map(RootedColoredTree::next_fresh)
        .max()
        .unwrap_or(0);
    let mut out = ColoredTree::default();
    let r = out.add_node(NodePayload::Fresh(fresh), Color::White);
    fresh += 1;
    let mut labels = vec![None];
    for t in trees {
        let attach = match t.root_color() {
            Color::Black if t.len() < 2 => continue,
            Color::Black => {
                let off = out.append(&t.tree);
                labels.extend(t.labels.iter().cloned());
                off + t.root
            }
            Color::White => {
                let off = out.append(&t.tree);
                labels.extend(t.labels.iter().cloned());
                let d = out.add_node(NodePayload::Fresh(fresh), Color::Black);
                fresh += 1;
                labels.push(None);
                out.add_edge(d, off + t.root);
                d
            }
        };
        out.add_edge(r, attach);
    }
    RootedColoredTree {
        tree: out,
        root: r,
        labels,
    }
}

/// Rebuilds the rooted block tree of `ag` from the rooted block trees of the
/// components of `Γ(ag)`.
pub fn reconstruct_tree(ag: &AnchoredGraph) -> Result<RootedColoredTree> {
    ag.require_connected()?;
    if ag.graph.vertex_count() < 2 {
        return Err(Error::Degenerate("graphs with fewer than two vertices"));
    }
    let kind = ag.kind()?;
    let parts: Vec<RootedColoredTree> = gamma(ag)?
        .components()
        .iter()
        .map(rooted_block_tree)
        .collect::<Result<_>>()?;
    match kind {
        AnchorKind::CutVertex => delta1(&parts),
        AnchorKind::Block => Ok(delta2(&parts)),
    }
}
