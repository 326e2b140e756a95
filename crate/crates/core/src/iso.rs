//! Classical graph isomorphism by colour refinement and backtracking.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::graph::{Graph, VertexId};
use crate::walks::walk_profile;

/// Refines the joint colouring of `g` and `h` to its stable partition.
/// Colours are comparable across the two graphs.
fn refine(g: &Graph, h: &Graph, cg: &mut [usize], ch: &mut [usize]) {
    let mut classes = usize::MAX;
    loop {
        let sig = |gr: &Graph, c: &[usize], x: usize| {
            let mut nb: Vec<usize> = gr.neighbors(x).iter().map(|&u| c[u]).collect();
            nb.sort_unstable();
            (c[x], nb)
        };
        let sg: Vec<_> = (0..g.vertex_count()).map(|x| sig(g, cg, x)).collect();
        let sh: Vec<_> = (0..h.vertex_count()).map(|x| sig(h, ch, x)).collect();
        let mut ids = BTreeMap::new();
        for s in sg.iter().chain(sh.iter()) {
            let next = ids.len();
            ids.entry(s.clone()).or_insert(next);
        }
        for (c, s) in cg.iter_mut().zip(&sg) {
            *c = ids[s];
        }
        for (c, s) in ch.iter_mut().zip(&sh) {
            *c = ids[s];
        }
        if ids.len() == classes {
            return;
        }
        classes = ids.len();
    }
}

fn histogram(c: &[usize]) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for &x in c {
        *out.entry(x).or_insert(0) += 1;
    }
    out
}

/// An isomorphism `g → h`, verified edge by edge, if one exists.
pub fn classical_iso(g: &Graph, h: &Graph) -> Option<BTreeMap<VertexId, VertexId>> {
    let n = g.vertex_count();
    if n != h.vertex_count() || g.edge_count() != h.edge_count() {
        return None;
    }
    let (pg, ph) = (walk_profile(g), walk_profile(h));
    let mut ids = BTreeMap::new();
    for p in pg.values().chain(ph.values()) {
        let next = ids.len();
        ids.entry(p.clone()).or_insert(next);
    }
    let mut cg: Vec<usize> = g.vertices().iter().map(|v| ids[&pg[v]]).collect();
    let mut ch: Vec<usize> = h.vertices().iter().map(|v| ids[&ph[v]]).collect();
    let map = search(g, h, &mut cg, &mut ch)?;
    let out: BTreeMap<_, _> = map
        .iter()
        .enumerate()
        .map(|(x, &a)| (g.vertex(x), h.vertex(a)))
        .collect();
    g.is_isomorphism(h, &out).then_some(out)
}

/// Individualisation–refinement: fix a vertex of `g` in the smallest
/// non-singleton class, try each same-coloured vertex of `h`.
fn search(g: &Graph, h: &Graph, cg: &mut [usize], ch: &mut [usize]) -> Option<Vec<usize>> {
    refine(g, h, cg, ch);
    let hist = histogram(cg);
    if hist != histogram(ch) {
        return None;
    }
    let Some((&colour, _)) = hist.iter().filter(|(_, &k)| k > 1).min_by_key(|(_, &k)| k) else {
        // discrete colouring: the map is forced
        let pos: BTreeMap<usize, usize> = ch.iter().enumerate().map(|(a, &c)| (c, a)).collect();
        let map: Vec<usize> = cg.iter().map(|c| pos[c]).collect();
        let ok = g
            .edges()
            .iter()
            .all(|&(x, y)| h.is_adjacent(map[x], map[y]));
        return ok.then_some(map);
    };
    let x = cg.iter().position(|&c| c == colour).unwrap();
    let fresh = cg.iter().chain(ch.iter()).max().unwrap() + 1;
    for a in (0..ch.len()).filter(|&a| ch[a] == colour) {
        let (mut cg2, mut ch2) = (cg.to_vec(), ch.to_vec());
        cg2[x] = fresh;
        ch2[a] = fresh;
        if let Some(m) = search(g, h, &mut cg2, &mut ch2) {
            return Some(m);
        }
    }
    None
}
