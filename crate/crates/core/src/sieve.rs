//! A sound, three-valued quantum-isomorphism sieve.
//!
//! `NOT_QI` is returned only when a necessary condition for quantum
//! isomorphism fails; `ISO` only with a verified classical isomorphism.
//! Everything else is `UNKNOWN`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

pub use crate::anchored::tree_canonical;
use crate::anchored::{
    rooted_block_tree, rooted_isomorphism, validate_anchored, zbar_with, RootedColoredTree,
};
use crate::blocks::{
    block_decomposition, block_graph_from, AnchorKind, BlockDecomposition, Color, NodePayload,
};
use crate::graph::{
    adjacency_matrix, center, char_poly, connected_components, format_poly, induced_subgraph,
    Graph, VertexId,
};
use crate::iso::classical_iso;
use crate::matching::perfect_matching;
use crate::walks::{walk_profile_with, WalkProfile};
use crate::{Error, Result};

/// Isomorphism invariants of a graph that every quantum isomorphism
/// preserves.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlockSignature {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub degrees: Vec<usize>,
    pub char_poly: Vec<BigInt>,
    pub complement_char_poly: Vec<BigInt>,
    pub walk_profiles: Vec<WalkProfile>,
}

impl fmt::Display for BlockSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} m={} degrees={:?} charpoly={}",
            self.vertex_count,
            self.edge_count,
            self.degrees,
            format_poly(&self.char_poly)
        )
    }
}

pub fn signature(g: &Graph) -> BlockSignature {
    signature_with(g, g.vertex_count())
}

fn signature_with(g: &Graph, walk_len: usize) -> BlockSignature {
    let mut degrees: Vec<usize> = (0..g.vertex_count()).map(|i| g.degree(i)).collect();
    degrees.sort_unstable();
    let mut walk_profiles: Vec<WalkProfile> =
        walk_profile_with(g, walk_len).into_values().collect();
    walk_profiles.sort();
    BlockSignature {
        vertex_count: g.vertex_count(),
        edge_count: g.edge_count(),
        degrees,
        char_poly: char_poly(&adjacency_matrix(g)),
        complement_char_poly: char_poly(&adjacency_matrix(&g.complement())),
        walk_profiles,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    Iso,
    NotQi,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Iso => "ISO",
            Verdict::NotQi => "NOT_QI",
            Verdict::Unknown => "UNKNOWN",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Passed,
    Refuted,
    Confirmed,
    Inconclusive,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Passed => "pass",
            Outcome::Refuted => "refuted",
            Outcome::Confirmed => "confirmed",
            Outcome::Inconclusive => "inconclusive",
        })
    }
}

/// One step of the sieve. `justification` states the necessary condition
/// the check tests.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckRecord {
    pub check: u8,
    pub name: &'static str,
    pub justification: &'static str,
    pub scope: String,
    pub g_value: String,
    pub h_value: String,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SieveReport {
    pub verdict: Verdict,
    pub evidence: Vec<CheckRecord>,
    pub witness: Option<BTreeMap<VertexId, VertexId>>,
    pub annotations: Vec<String>,
}

impl SieveReport {
    /// The first refuting record, if any.
    pub fn refutation(&self) -> Option<&CheckRecord> {
        self.evidence.iter().find(|r| r.outcome == Outcome::Refuted)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SieveConfig {
    /// Closed-walk profile length; defaults to the vertex count.
    pub max_walk_len: Option<usize>,
}

const J_COUNTS: &str = "a magic unitary is square, and u_ax != 0 forces deg x = deg a while its support contains a permutation, so vertex counts, edge counts and degree multisets agree";
const J_SPECTRUM: &str =
    "quantum isomorphism preserves the adjacency spectrum, and the complements are quantum isomorphic too";
const J_COMPONENTS: &str =
    "a quantum isomorphism pairs the connected components bijectively into quantum isomorphic pairs";
const J_BLOCK_COUNTS: &str =
    "quantum isomorphism preserves the number of blocks and the number of cut vertices";
const J_2CONN: &str = "a graph quantum isomorphic to a 2-connected graph is 2-connected";
const J_ZBAR: &str =
    "a quantum isomorphism maps the anchor enclosing the centre onto the corresponding anchor, so the anchor kinds agree";
const J_TREE: &str = "quantum isomorphism induces a colour-preserving block-tree isomorphism that pairs quantum isomorphic blocks and maps the centre anchor to the centre anchor";
const J_VERTEX: &str = "u_ax != 0 forces equal closed-walk counts, equal cut status and pairwise quantum isomorphic containing blocks; any state turns U into a doubly stochastic matrix, whose support contains a perfect matching";
const J_CLASSICAL: &str = "a classical isomorphism is a scalar magic unitary";
const J_UNKNOWN: &str = "no necessary condition failed and no classical isomorphism exists";

fn record(
    check: u8,
    name: &'static str,
    justification: &'static str,
    scope: &str,
    g: String,
    h: String,
    ok: bool,
) -> CheckRecord {
    CheckRecord {
        check,
        name,
        justification,
        scope: scope.to_string(),
        g_value: g,
        h_value: h,
        outcome: if ok {
            Outcome::Passed
        } else {
            Outcome::Refuted
        },
    }
}

fn cmp_record<T: PartialEq + fmt::Debug>(
    check: u8,
    name: &'static str,
    justification: &'static str,
    scope: &str,
    g: T,
    h: T,
) -> CheckRecord {
    let ok = g == h;
    record(
        check,
        name,
        justification,
        scope,
        format!("{g:?}"),
        format!("{h:?}"),
        ok,
    )
}

/// Interns block signatures so trees of both graphs share label strings.
#[derive(Default)]
struct Interner {
    ids: BTreeMap<BlockSignature, usize>,
}

impl Interner {
    fn id(&mut self, s: BlockSignature) -> usize {
        let next = self.ids.len();
        *self.ids.entry(s).or_insert(next)
    }
}

/// Block-level data of one connected graph.
struct Analysis {
    graph: Graph,
    dec: BlockDecomposition,
    block_sig: Vec<usize>,
    tree: RootedColoredTree,
    zbar_kind: AnchorKind,
    profiles: BTreeMap<VertexId, WalkProfile>,
}

impl Analysis {
    fn new(graph: Graph, interner: &mut Interner, walk_len: Option<usize>) -> Self {
        let dec = block_decomposition(&graph);
        let block_sig: Vec<usize> = dec
            .blocks
            .iter()
            .map(|b| {
                let bg = induced_subgraph(&graph, b).unwrap();
                let len = walk_len.unwrap_or(bg.vertex_count());
                interner.id(signature_with(&bg, len))
            })
            .collect();
        let z = zbar_with(&dec, &center(&graph).unwrap())
            .expect("connected graphs have a centre anchor");
        let mut tree = rooted_block_tree(&validate_anchored(&graph, &z.vertices).unwrap()).unwrap();
        for (i, node) in tree.tree.nodes.iter().enumerate() {
            if let NodePayload::Block(b) = node.payload {
                tree.labels[i] = Some(block_sig[b].to_string());
            }
        }
        let profiles = walk_profile_with(&graph, walk_len.unwrap_or(graph.vertex_count()));
        Analysis {
            graph,
            dec,
            block_sig,
            tree,
            zbar_kind: z.kind,
            profiles,
        }
    }

    fn vertex_key(&self, v: VertexId) -> (WalkProfile, bool, Vec<usize>) {
        let mut sigs: Vec<usize> = self
            .dec
            .blocks_containing(v)
            .iter()
            .map(|&b| self.block_sig[b])
            .collect();
        sigs.sort_unstable();
        (self.profiles[&v].clone(), self.dec.is_cut_vertex(v), sigs)
    }
}

/// Checks 4–8 for one pair of connected graphs; stops at the first
/// refutation.
fn pair_checks(a: &Analysis, b: &Analysis, scope: &str) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let mut push = |r: CheckRecord| {
        let refuted = r.outcome == Outcome::Refuted;
        out.push(r);
        refuted
    };
    let counts = |x: &Analysis| (x.dec.blocks.len(), x.dec.cut_vertices.len());
    if push(cmp_record(
        4,
        "block and cut-vertex counts",
        J_BLOCK_COUNTS,
        scope,
        counts(a),
        counts(b),
    )) {
        return out;
    }
    let two = |x: &Analysis| x.graph.vertex_count() >= 2 && x.dec.cut_vertices.is_empty();
    if push(cmp_record(
        5,
        "2-connectedness",
        J_2CONN,
        scope,
        two(a),
        two(b),
    )) {
        return out;
    }
    if push(cmp_record(
        6,
        "centre anchor kind",
        J_ZBAR,
        scope,
        a.zbar_kind,
        b.zbar_kind,
    )) {
        return out;
    }
    let (ca, cb) = (tree_canonical(&a.tree), tree_canonical(&b.tree));
    let ok = ca == cb;
    if push(record(7, "rooted block tree", J_TREE, scope, ca, cb, ok)) {
        return out;
    }
    let left: Vec<_> = a
        .graph
        .vertices()
        .iter()
        .map(|&v| a.vertex_key(v))
        .collect();
    let right: Vec<_> = b
        .graph
        .vertices()
        .iter()
        .map(|&v| b.vertex_key(v))
        .collect();
    let adj: Vec<Vec<usize>> = left
        .iter()
        .map(|k| (0..right.len()).filter(|&j| &right[j] == k).collect())
        .collect();
    let matched = perfect_matching(&adj, right.len()).is_some();
    let unmatched = |keys: &[(WalkProfile, bool, Vec<usize>)],
                     other: &[(WalkProfile, bool, Vec<usize>)],
                     g: &Graph| {
        let lonely: Vec<String> = keys
            .iter()
            .enumerate()
            .filter(|(_, k)| !other.contains(k))
            .map(|(i, _)| g.vertex(i).to_string())
            .collect();
        if lonely.is_empty() {
            String::from("all vertices have a partner")
        } else {
            format!("no partner for {}", lonely.join(","))
        }
    };
    push(record(
        8,
        "vertex compatibility",
        J_VERTEX,
        scope,
        unmatched(&left, &right, &a.graph),
        unmatched(&right, &left, &b.graph),
        matched,
    ));
    out
}

fn refuted(records: &[CheckRecord]) -> bool {
    records.iter().any(|r| r.outcome == Outcome::Refuted)
}

pub fn qi_sieve(g: &Graph, h: &Graph) -> SieveReport {
    qi_sieve_with(g, h, SieveConfig::default())
}

pub fn qi_sieve_with(g: &Graph, h: &Graph, cfg: SieveConfig) -> SieveReport {
    let mut evidence = Vec::new();
    let not_qi = |evidence| SieveReport {
        verdict: Verdict::NotQi,
        evidence,
        witness: None,
        annotations: Vec::new(),
    };

    let size = |x: &Graph| {
        let mut degrees: Vec<usize> = (0..x.vertex_count()).map(|i| x.degree(i)).collect();
        degrees.sort_unstable();
        (x.vertex_count(), x.edge_count(), degrees)
    };
    evidence.push(cmp_record(
        1,
        "vertex, edge and degree counts",
        J_COUNTS,
        "graph",
        size(g),
        size(h),
    ));
    if refuted(&evidence) {
        return not_qi(evidence);
    }

    let polys = |x: &Graph| {
        (
            format_poly(&char_poly(&adjacency_matrix(x))),
            format_poly(&char_poly(&adjacency_matrix(&x.complement()))),
        )
    };
    evidence.push(cmp_record(
        2,
        "cospectrality",
        J_SPECTRUM,
        "graph and complement",
        polys(g),
        polys(h),
    ));
    if refuted(&evidence) {
        return not_qi(evidence);
    }

    let split = |x: &Graph| -> Vec<Graph> {
        connected_components(x)
            .iter()
            .map(|c| induced_subgraph(x, c).unwrap())
            .collect()
    };
    let (cg, ch) = (split(g), split(h));
    let walk_len = |x: &Graph| cfg.max_walk_len.unwrap_or(x.vertex_count());
    let sg: Vec<BlockSignature> = cg.iter().map(|c| signature_with(c, walk_len(c))).collect();
    let sh: Vec<BlockSignature> = ch.iter().map(|c| signature_with(c, walk_len(c))).collect();
    let (mut sorted_g, mut sorted_h) = (sg.clone(), sh.clone());
    sorted_g.sort();
    sorted_h.sort();
    let describe = |cs: &[Graph]| {
        let mut sizes: Vec<usize> = cs.iter().map(Graph::vertex_count).collect();
        sizes.sort_unstable();
        format!("{} components of sizes {:?}", cs.len(), sizes)
    };
    evidence.push(record(
        3,
        "component signatures",
        J_COMPONENTS,
        "components",
        describe(&cg),
        describe(&ch),
        sorted_g == sorted_h,
    ));
    if refuted(&evidence) {
        return not_qi(evidence);
    }

    let mut interner = Interner::default();
    let ag: Vec<Analysis> = cg
        .into_iter()
        .map(|c| Analysis::new(c, &mut interner, cfg.max_walk_len))
        .collect();
    let ah: Vec<Analysis> = ch
        .into_iter()
        .map(|c| Analysis::new(c, &mut interner, cfg.max_walk_len))
        .collect();
    let single = ag.len() == 1;
    let scope = |i: usize, j: usize| {
        if single {
            String::from("graph")
        } else {
            format!(
                "components at {} / {}",
                ag[i].graph.vertex(0),
                ah[j].graph.vertex(0)
            )
        }
    };

    let mut classes: BTreeMap<&BlockSignature, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for (i, s) in sg.iter().enumerate() {
        classes.entry(s).or_default().0.push(i);
    }
    for (j, s) in sh.iter().enumerate() {
        classes.entry(s).or_default().1.push(j);
    }
    for (gs, hs) in classes.values() {
        if gs.len() == 1 {
            let records = pair_checks(&ag[gs[0]], &ah[hs[0]], &scope(gs[0], hs[0]));
            let bad = refuted(&records);
            evidence.extend(records);
            if bad {
                return not_qi(evidence);
            }
            continue;
        }
        // several components share a signature: pair them through the
        // checks, then demand a perfect matching of surviving pairs
        let mut runs = BTreeMap::new();
        let adj: Vec<Vec<usize>> = gs
            .iter()
            .map(|&i| {
                (0..hs.len())
                    .filter(|&k| {
                        let records = pair_checks(&ag[i], &ah[hs[k]], &scope(i, hs[k]));
                        let ok = !refuted(&records);
                        runs.insert((i, hs[k]), records);
                        ok
                    })
                    .collect()
            })
            .collect();
        match perfect_matching(&adj, hs.len()) {
            Some(m) => {
                for (l, &k) in m.iter().enumerate() {
                    evidence.extend(runs.remove(&(gs[l], hs[k])).unwrap());
                }
            }
            None => {
                let pairs: usize = adj.iter().map(Vec::len).sum();
                evidence.push(record(
                    3,
                    "component pairing",
                    J_COMPONENTS,
                    &format!("class of {} components", gs.len()),
                    format!(
                        "{} of {} pairs survive checks 4-8",
                        pairs,
                        gs.len() * hs.len()
                    ),
                    String::from("no perfect matching of surviving pairs"),
                    false,
                ));
                return not_qi(evidence);
            }
        }
    }

    if let Some(witness) = classical_iso(g, h) {
        evidence.push(CheckRecord {
            check: 9,
            name: "classical isomorphism",
            justification: J_CLASSICAL,
            scope: String::from("graph"),
            g_value: format!("{} vertices mapped", witness.len()),
            h_value: String::from("verified edge by edge"),
            outcome: Outcome::Confirmed,
        });
        return SieveReport {
            verdict: Verdict::Iso,
            evidence,
            witness: Some(witness),
            annotations: Vec::new(),
        };
    }
    evidence.push(CheckRecord {
        check: 9,
        name: "classical isomorphism",
        justification: J_CLASSICAL,
        scope: String::from("graph"),
        g_value: String::from("none found"),
        h_value: String::new(),
        outcome: Outcome::Inconclusive,
    });
    evidence.push(CheckRecord {
        check: 10,
        name: "undecided",
        justification: J_UNKNOWN,
        scope: String::from("graph"),
        g_value: String::new(),
        h_value: String::new(),
        outcome: Outcome::Inconclusive,
    });
    SieveReport {
        verdict: Verdict::Unknown,
        evidence,
        witness: None,
        annotations: minimal_pair_notes(g, h),
    }
}

/// Structural facts a smallest quantum-isomorphic, non-isomorphic pair must
/// satisfy, evaluated on this pair and its complements.
fn minimal_pair_notes(g: &Graph, h: &Graph) -> Vec<String> {
    let mut out = Vec::new();
    for (what, x, y) in [
        ("graphs", g.clone(), h.clone()),
        ("complements", g.complement(), h.complement()),
    ] {
        let connected = x.is_connected() && y.is_connected();
        let two =
            |z: &Graph| z.vertex_count() >= 2 && block_decomposition(z).cut_vertices.is_empty();
        let status = if !connected {
            String::from("disconnected; a smallest pair would be connected")
        } else if two(&x) && two(&y) {
            String::from("both 2-connected")
        } else {
            match block_tree_witness(&x, &y) {
                Ok(w) if w.blocks_classically_isomorphic => {
                    String::from("connected with classically isomorphic matched blocks")
                }
                Ok(_) => String::from(
                    "connected, not 2-connected, some matched blocks not classically isomorphic; cannot be a smallest pair",
                ),
                Err(_) => String::from("connected, no block-tree witness"),
            }
        };
        out.push(format!("smallest-pair conditions on the {what}: {status}"));
    }
    out
}

/// Explicit isomorphisms induced on block structures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockTreeWitness {
    /// Node map between the block trees, indexed by nodes of `g`'s tree.
    pub alpha: Vec<usize>,
    /// Vertex map between the block graphs.
    pub beta: BTreeMap<VertexId, VertexId>,
    /// Whether every block is classically isomorphic to its image.
    pub blocks_classically_isomorphic: bool,
}

/// A colour- and signature-preserving isomorphism `α` between the block
/// trees of connected graphs, rooted at their centre anchors, together with
/// the induced block-graph isomorphism `β`.
pub fn block_tree_witness(g: &Graph, h: &Graph) -> Result<BlockTreeWitness> {
    if !g.is_connected() || !h.is_connected() {
        return Err(Error::DisconnectedInput);
    }
    let mut interner = Interner::default();
    let a = Analysis::new(g.clone(), &mut interner, None);
    let b = Analysis::new(h.clone(), &mut interner, None);
    let alpha = rooted_isomorphism(&a.tree, &b.tree).ok_or(Error::NoWitness)?;
    let (ta, tb) = (&a.tree.tree, &b.tree.tree);
    for u in 0..ta.len() {
        if ta.nodes[u].color != tb.nodes[alpha[u]].color
            || a.tree.labels[u] != b.tree.labels[alpha[u]]
        {
            return Err(Error::NoWitness);
        }
        for &w in &ta.adj[u] {
            if !tb.adj[alpha[u]].contains(&alpha[w]) {
                return Err(Error::NoWitness);
            }
        }
    }
    let mut beta = BTreeMap::new();
    let mut classical = true;
    for (u, node) in ta.nodes.iter().enumerate() {
        if let (NodePayload::Block(i), Color::White) = (node.payload, node.color) {
            let NodePayload::Block(j) = tb.nodes[alpha[u]].payload else {
                return Err(Error::NoWitness);
            };
            beta.insert(VertexId::original(i as u32), VertexId::original(j as u32));
            let bg = induced_subgraph(g, &a.dec.blocks[i])?;
            let bh = induced_subgraph(h, &b.dec.blocks[j])?;
            classical &= classical_iso(&bg, &bh).is_some();
        }
    }
    if !block_graph_from(&a.dec).is_isomorphism(&block_graph_from(&b.dec), &beta) {
        return Err(Error::NoWitness);
    }
    Ok(BlockTreeWitness {
        alpha,
        beta,
        blocks_classically_isomorphic: classical,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn permute(g: &Graph, seed: u64) -> Graph {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut perm: Vec<u32> = (0..g.vertex_count() as u32).collect();
        perm.shuffle(&mut rng);
        let edges: Vec<(u32, u32)> = g.edges().iter().map(|&(i, j)| (perm[i], perm[j])).collect();
        Graph::from_edges(g.vertex_count() as u32, &edges).unwrap()
    }

    fn c4_k1() -> Graph {
        Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    #[test]
    fn signature_examples() {
        let s = signature(&Graph::complete(2));
        assert_eq!(
            (s.vertex_count, s.edge_count, s.degrees.clone()),
            (2, 1, vec![1, 1])
        );
        assert_eq!(format_poly(&s.char_poly), "x^2 - 1");
        assert_eq!(format_poly(&s.complement_char_poly), "x^2");
        let (a, b) = (signature(&c4_k1()), signature(&Graph::star(4)));
        assert_eq!(a.char_poly, b.char_poly);
        assert_ne!(a.degrees, b.degrees);
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5)]).unwrap();
        assert_eq!(signature(&g), signature(&permute(&g, 5)));
    }

    #[test]
    fn cospectral_mate_refuted_early() {
        let r = qi_sieve(&c4_k1(), &Graph::star(4));
        assert_eq!(r.verdict, Verdict::NotQi);
        let bad = r.refutation().unwrap();
        assert_eq!(bad.check, 1, "{bad:?}");
        assert!(bad.g_value.contains("[0, 2, 2, 2, 2]"));
    }

    #[test]
    fn simple_verdicts() {
        let p3 = Graph::path(3);
        assert_eq!(qi_sieve(&p3, &p3).verdict, Verdict::Iso);
        let r = qi_sieve(&p3, &Graph::complete(3));
        assert_eq!(
            (r.verdict, r.refutation().unwrap().check),
            (Verdict::NotQi, 1)
        );
        let r = qi_sieve(
            &Graph::cycle(6),
            &Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap(),
        );
        assert_eq!(r.verdict, Verdict::NotQi);
    }

    #[test]
    fn gluings_of_blocks_differ() {
        // K3, K3, K2 all glued at one vertex vs the same blocks in a path
        let star = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0), (0, 5)])
            .unwrap();
        let path = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2), (4, 5)])
            .unwrap();
        let r = qi_sieve(&star, &path);
        assert_eq!(r.verdict, Verdict::NotQi);
        assert!(r.refutation().unwrap().check <= 7);
        assert!(block_tree_witness(&star, &path).is_err());
    }

    #[test]
    fn witness_for_relabelled_graph() {
        let g = Graph::from_edges(
            9,
            &[
                (0, 1),
                (1, 2),
                (2, 0),
                (0, 3),
                (3, 4),
                (4, 0),
                (0, 5),
                (5, 6),
                (6, 7),
                (7, 5),
                (1, 8),
            ],
        )
        .unwrap();
        for seed in 0..10 {
            let h = permute(&g, seed);
            let w = block_tree_witness(&g, &h).unwrap();
            assert!(w.blocks_classically_isomorphic);
            assert_eq!(w.beta.len(), block_decomposition(&g).blocks.len());
        }
    }

    #[test]
    fn forests_with_cospectral_components() {
        // two forests whose components are cospectral mates padded alike
        let g = Graph::from_edges(
            10,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 0),
                (5, 6),
                (5, 7),
                (5, 8),
                (5, 9),
            ],
        )
        .unwrap();
        let h = Graph::from_edges(
            10,
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (0, 4),
                (5, 6),
                (6, 7),
                (7, 8),
                (8, 5),
            ],
        )
        .unwrap();
        assert_eq!(qi_sieve(&g, &h).verdict, Verdict::Iso);
    }

    #[test]
    fn unknown_carries_annotations() {
        // 4x4 rook's graph vs Shrikhande graph: strongly regular with equal
        // parameters, hard for every check
        let mut rook = Vec::new();
        let mut shri = Vec::new();
        for a in 0..16u32 {
            for b in a + 1..16 {
                let (ar, ac, br, bc) = (a / 4, a % 4, b / 4, b % 4);
                if ar == br || ac == bc {
                    rook.push((a, b));
                }
                let (dr, dc) = ((br + 4 - ar) % 4, (bc + 4 - ac) % 4);
                if matches!(
                    (dr, dc),
                    (0, 1) | (0, 3) | (1, 0) | (3, 0) | (1, 1) | (3, 3)
                ) {
                    shri.push((a, b));
                }
            }
        }
        let (g, h) = (
            Graph::from_edges(16, &rook).unwrap(),
            Graph::from_edges(16, &shri).unwrap(),
        );
        let r = qi_sieve(&g, &h);
        assert_eq!(r.verdict, Verdict::Unknown);
        assert_eq!(r.evidence.last().unwrap().check, 10);
        assert_eq!(r.annotations.len(), 2);
        assert!(r.annotations[0].contains("2-connected"));
    }

    fn random_graph(n: u32, seed: u64) -> Graph {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let density = rand::Rng::gen_range(&mut rng, 0.05..0.6);
        let mut e = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rand::Rng::gen_bool(&mut rng, density) {
                    e.push((i, j));
                }
            }
        }
        Graph::from_edges(n, &e).unwrap()
    }

    fn random_tree(n: u32, seed: u64) -> Graph {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let e: Vec<(u32, u32)> = (1..n)
            .map(|i| (rand::Rng::gen_range(&mut rng, 0..i), i))
            .collect();
        Graph::from_edges(n, &e).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]

        #[test]
        fn trees_are_decided(n in 1u32..=11, s1: u64, s2: u64) {
            let (g, h) = (random_tree(n, s1), random_tree(n, s2));
            let r = qi_sieve(&g, &h);
            prop_assert_ne!(r.verdict, Verdict::Unknown);
        }

        #[test]
        fn never_refutes_relabelled_copies(n in 1u32..=10, seed: u64, p: u64) {
            let g = random_graph(n, seed);
            let h = permute(&g, p);
            let r = qi_sieve(&g, &h);
            prop_assert_eq!(r.verdict, Verdict::Iso);
            prop_assert!(g.is_isomorphism(&h, r.witness.as_ref().unwrap()));
        }

        #[test]
        fn verdicts_agree_with_isomorphism(n in 1u32..=7, s1: u64, s2: u64) {
            let (g, h) = (random_graph(n, s1), random_graph(n, s2));
            let r = qi_sieve(&g, &h);
            prop_assert_eq!(r.verdict == Verdict::Iso, classical_iso(&g, &h).is_some());
            if r.verdict == Verdict::NotQi {
                prop_assert!(r.refutation().is_some());
            }
            // shortening profiles never turns a refutation into ISO
            let short = qi_sieve_with(&g, &h, SieveConfig { max_walk_len: Some(2) });
            prop_assert!(!(r.verdict == Verdict::NotQi && short.verdict == Verdict::Iso));
        }
    }

    #[test]
    fn witness_rejects_disconnected() {
        assert_eq!(
            block_tree_witness(&Graph::empty(2), &Graph::empty(2)),
            Err(Error::DisconnectedInput)
        );
        assert!(block_tree_witness(&Graph::complete(1), &Graph::complete(1)).is_ok());
    }
}
