//! Human, JSON and DOT renderings of results.

use std::fmt::Write;

use blocksieve_core::anchored::{fmt_set, zbar, GammaOutput};
use blocksieve_core::blocks::{
    block_decomposition, block_forest, block_graph, Color, ColoredTree, NodePayload,
};
use blocksieve_core::graph::{center, connected_components, induced_subgraph};
use blocksieve_core::magic::{MuReport, QiCheck, TransportCheck};
use blocksieve_core::sieve::{CheckRecord, SieveReport};
use blocksieve_core::{Graph, VertexSet};
use serde_json::{json, Value};

fn set_json(s: &VertexSet) -> Value {
    s.iter().map(ToString::to_string).collect()
}

fn node_label(g: &Graph, t: &ColoredTree, k: usize) -> String {
    let dec = block_decomposition(g);
    match t.nodes[k].payload {
        NodePayload::Block(b) => format!("B{b} {}", fmt_set(&dec.blocks[b])),
        NodePayload::CutVertex(v) => v.to_string(),
        NodePayload::Fresh(f) => format!("new{f}"),
    }
}

/// Block forest as an undirected DOT graph: blocks white, cut vertices
/// black.
pub fn block_tree_dot(g: &Graph) -> String {
    let mut out = String::from("graph block_tree {\n  node [style=filled];\n");
    for (ti, t) in block_forest(g).iter().enumerate() {
        let comp = &connected_components(g)[ti];
        let sub = induced_subgraph(g, comp).expect("component of g");
        for k in 0..t.len() {
            let label = node_label(&sub, t, k).replace('"', "\\\"");
            let style = match t.nodes[k].color {
                Color::White => "fillcolor=white, fontcolor=black",
                Color::Black => "fillcolor=black, fontcolor=white",
            };
            let _ = writeln!(out, "  t{ti}n{k} [label=\"{label}\", {style}];");
        }
        for (a, ns) in t.adj.iter().enumerate() {
            for &b in ns.iter().filter(|&&b| a < b) {
                let _ = writeln!(out, "  t{ti}n{a} -- t{ti}n{b};");
            }
        }
    }
    out.push_str("}\n");
    out
}

/// Blocks, cut vertices, block tree, block graph, centre and its anchor.
pub fn blocks_json(g: &Graph) -> Value {
    let dec = block_decomposition(g);
    let forest: Vec<Value> = block_forest(g)
        .iter()
        .zip(connected_components(g))
        .map(|(t, c)| {
            let sub = induced_subgraph(g, &c).expect("component of g");
            let nodes: Vec<Value> = (0..t.len())
                .map(|k| {
                    let colour = match t.nodes[k].color {
                        Color::White => "white",
                        Color::Black => "black",
                    };
                    json!({"id": k, "colour": colour, "label": node_label(&sub, t, k)})
                })
                .collect();
            let edges: Vec<Value> = t
                .adj
                .iter()
                .enumerate()
                .flat_map(|(a, ns)| {
                    ns.iter()
                        .filter(move |&&b| a < b)
                        .map(move |&b| json!([a, b]))
                })
                .collect();
            json!({"nodes": nodes, "edges": edges})
        })
        .collect();
    let bg = block_graph(g).ok().map(|b| {
        json!({
            "vertices": b.vertex_count(),
            "edges": b.edges().iter().map(|&(x, y)| json!([x, y])).collect::<Vec<_>>(),
        })
    });
    let z = center(g).ok().map(|z| set_json(&z));
    let zb = zbar(g)
        .ok()
        .map(|a| json!({"kind": format!("{:?}", a.kind), "vertices": set_json(&a.vertices)}));
    json!({
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "blocks": dec.blocks.iter().map(set_json).collect::<Vec<_>>(),
        "cut_vertices": set_json(&dec.cut_vertices),
        "block_tree": forest,
        "block_graph": bg,
        "center": z,
        "center_anchor": zb,
    })
}

pub fn blocks_human(g: &Graph) -> String {
    let dec = block_decomposition(g);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "vertices: {}  edges: {}",
        g.vertex_count(),
        g.edge_count()
    );
    let _ = writeln!(out, "blocks ({}):", dec.blocks.len());
    for (i, b) in dec.blocks.iter().enumerate() {
        let _ = writeln!(out, "  B{i} {}", fmt_set(b));
    }
    let _ = writeln!(
        out,
        "cut vertices ({}): {}",
        dec.cut_vertices.len(),
        fmt_set(&dec.cut_vertices)
    );
    match block_graph(g) {
        Ok(b) => {
            let edges: Vec<String> = b
                .edges()
                .iter()
                .map(|(x, y)| format!("B{x}-B{y}"))
                .collect();
            let _ = writeln!(
                out,
                "block graph: {} vertices, edges [{}]",
                b.vertex_count(),
                edges.join(" ")
            );
        }
        Err(_) => out.push_str("block graph: undefined (disconnected)\n"),
    }
    match (center(g), zbar(g)) {
        (Ok(z), Ok(a)) => {
            let _ = writeln!(out, "center: {}", fmt_set(&z));
            let _ = writeln!(out, "center anchor: {:?} {}", a.kind, fmt_set(&a.vertices));
        }
        _ => out.push_str("center: undefined (disconnected)\n"),
    }
    out.push_str("block tree:\n");
    out.push_str(&block_tree_dot(g));
    out
}

fn record_json(r: &CheckRecord) -> Value {
    json!({
        "check": r.check,
        "name": r.name,
        "justification": r.justification,
        "scope": r.scope,
        "g": r.g_value,
        "h": r.h_value,
        "outcome": r.outcome.to_string(),
    })
}

pub fn sieve_json(r: &SieveReport) -> Value {
    let witness = r.witness.as_ref().map(|w| {
        w.iter()
            .map(|(x, a)| (x.to_string(), Value::String(a.to_string())))
            .collect::<serde_json::Map<_, _>>()
    });
    json!({
        "verdict": r.verdict.to_string(),
        "evidence": r.evidence.iter().map(record_json).collect::<Vec<_>>(),
        "witness": witness,
        "annotations": r.annotations,
    })
}

pub fn sieve_human(r: &SieveReport) -> String {
    let mut out = format!("verdict: {}\n", r.verdict);
    for e in &r.evidence {
        let _ = writeln!(
            out,
            "  [{:>2}] {:<12} {} ({})",
            e.check, e.outcome, e.name, e.scope
        );
        if !e.g_value.is_empty() || !e.h_value.is_empty() {
            let _ = writeln!(out, "       G: {}", e.g_value);
            let _ = writeln!(out, "       H: {}", e.h_value);
        }
        let _ = writeln!(out, "       why: {}", e.justification);
    }
    if let Some(w) = &r.witness {
        let pairs: Vec<String> = w.iter().map(|(x, a)| format!("{x}->{a}")).collect();
        let _ = writeln!(out, "witness: {}", pairs.join(" "));
    }
    for a in &r.annotations {
        let _ = writeln!(out, "note: {a}");
    }
    out
}

pub fn gamma_json(out: &GammaOutput) -> Value {
    let comps: Vec<Value> = out
        .result
        .components()
        .iter()
        .map(|c| {
            json!({
                "vertices": set_json(&c.graph().vertex_set()),
                "edges": c.graph().edge_ids().iter().map(|(u, v)| json!([u.to_string(), v.to_string()])).collect::<Vec<_>>(),
                "anchor": set_json(c.anchor()),
            })
        })
        .collect();
    let copies: serde_json::Map<String, Value> = out
        .copies
        .iter()
        .map(|(c, o)| (c.to_string(), Value::String(o.to_string())))
        .collect();
    json!({"components": comps, "copies": copies})
}

pub fn gamma_human(out: &GammaOutput) -> String {
    let mut s = String::new();
    let comps = out.result.components();
    let _ = writeln!(s, "components: {}", comps.len());
    for (i, c) in comps.iter().enumerate() {
        let edges: Vec<String> = c
            .graph()
            .edge_ids()
            .iter()
            .map(|(u, v)| format!("{u}-{v}"))
            .collect();
        let _ = writeln!(
            s,
            "  C{i}: vertices {} edges [{}] anchor {}",
            fmt_set(&c.graph().vertex_set()),
            edges.join(" "),
            fmt_set(c.anchor())
        );
    }
    for (c, o) in &out.copies {
        let _ = writeln!(s, "copy {c} of {o}");
    }
    s
}

fn mu_report_json(r: &MuReport) -> Value {
    json!({
        "projection_residual": r.max_projection_residual,
        "row_residual": r.max_row_residual,
        "col_residual": r.max_col_residual,
        "tolerance": r.tolerance,
        "pass": r.passes(),
    })
}

/// Verification table of a magic unitary against a pair of graphs.
pub struct VerifyReport {
    pub mu: MuReport,
    pub qi: QiCheck,
    pub noncommutativity: f64,
    pub walk_compatible: Option<bool>,
}

impl VerifyReport {
    pub fn passes(&self) -> bool {
        self.mu.passes() && self.qi.passes && self.walk_compatible != Some(false)
    }
}

pub fn verify_json(r: &VerifyReport) -> Value {
    json!({
        "magic_unitary": mu_report_json(&r.mu),
        "quantum_isomorphism": {"residual": r.qi.residual, "pass": r.qi.passes},
        "noncommutativity": r.noncommutativity,
        "walk_compatible": r.walk_compatible,
        "pass": r.passes(),
    })
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

pub fn verify_human(r: &VerifyReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{:<28}{:>14}  result", "check", "residual");
    let rows = [
        (
            "projections",
            r.mu.max_projection_residual,
            r.mu.max_projection_residual <= r.mu.tolerance,
        ),
        (
            "row sums",
            r.mu.max_row_residual,
            r.mu.max_row_residual <= r.mu.tolerance,
        ),
        (
            "column sums",
            r.mu.max_col_residual,
            r.mu.max_col_residual <= r.mu.tolerance,
        ),
        ("U·Adj(G) = Adj(H)·U", r.qi.residual, r.qi.passes),
    ];
    for (name, res, ok) in rows {
        let _ = writeln!(s, "{name:<28}{res:>14.3e}  {}", mark(ok));
    }
    match r.walk_compatible {
        Some(ok) => {
            let _ = writeln!(
                s,
                "{:<28}{:>14}  {}",
                "walk-count compatibility",
                "-",
                mark(ok)
            );
        }
        None => {
            let _ = writeln!(s, "{:<28}{:>14}  skipped", "walk-count compatibility", "-");
        }
    }
    if r.noncommutativity > r.mu.tolerance {
        let _ = writeln!(
            s,
            "entries do not commute (max commutator norm {:.3e})",
            r.noncommutativity
        );
    } else {
        s.push_str("entries commute\n");
    }
    let _ = writeln!(
        s,
        "tolerance {:e}: {}",
        r.mu.tolerance,
        if r.passes() { "PASS" } else { "FAIL" }
    );
    s
}

pub fn transport_json(t: &TransportCheck) -> Value {
    json!({
        "magic_unitary": mu_report_json(&t.mu),
        "quantum_isomorphism": {"residual": t.qi.residual, "pass": t.qi.passes},
        "anchor_preserved": t.anchor_preserved,
        "pass": t.passes(),
    })
}

pub fn transport_human(t: &TransportCheck) -> String {
    format!(
        "transported unitary: projections {:.3e}, rows {:.3e}, columns {:.3e}, intertwining {:.3e}, anchor preserved {}: {}\n",
        t.mu.max_projection_residual,
        t.mu.max_row_residual,
        t.mu.max_col_residual,
        t.qi.residual,
        t.anchor_preserved,
        if t.passes() { "PASS" } else { "FAIL" }
    )
}
