//! Canonical forms for isomorphism tests and deduplication.
//!
//! Each component is labelled by colour refinement with individualisation,
//! keeping the lexicographically least adjacency encoding over all leaves
//! of the individualisation tree. Component encodings are then sorted.

use std::collections::BTreeMap;

use crate::graph::{Multigraph, VertexId};

/// Isomorphism-invariant encoding of a multigraph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Vec<u32>);

pub fn canonical_form(g: &Multigraph) -> CanonicalForm {
    let mut parts: Vec<Vec<u32>> = g
        .connected_components()
        .iter()
        .map(|comp| {
            let verts: Vec<usize> = comp.iter().map(|v| v.0).collect();
            let (sub, _, _) = g.induced_subgraph(&verts, None);
            Component::new(&sub).canonical()
        })
        .collect();
    parts.sort();
    let mut out = vec![parts.len() as u32];
    for p in parts {
        out.push(p.len() as u32);
        out.extend(p);
    }
    CanonicalForm(out)
}

pub fn isomorphic(a: &Multigraph, b: &Multigraph) -> bool {
    a.vertex_count() == b.vertex_count()
        && a.edge_count() == b.edge_count()
        && canonical_form(a) == canonical_form(b)
}

struct Component {
    n: usize,
    decor: Vec<(u32, u32)>,
    mult: Vec<u32>,
    nbrs: Vec<Vec<(usize, u32)>>,
}

impl Component {
    fn new(g: &Multigraph) -> Self {
        let n = g.vertex_count();
        let mut mult = vec![0; n * n];
        let mut nbrs = Vec::with_capacity(n);
        for v in g.vertices() {
            let row: Vec<(usize, u32)> = g
                .neighbor_multiplicities(v)
                .into_iter()
                .map(|(w, m)| (w, m as u32))
                .collect();
            for &(w, m) in &row {
                mult[v.0 * n + w] = m;
            }
            nbrs.push(row);
        }
        let decor = (0..n)
            .map(|v| {
                (
                    g.loops_at(VertexId(v)) as u32,
                    g.semis_at(VertexId(v)) as u32,
                )
            })
            .collect();
        Component {
            n,
            decor,
            mult,
            nbrs,
        }
    }

    /// Replaces colours by ranks of their refined signatures until stable.
    fn refine(&self, colors: &mut [u32]) {
        let mut classes = count_distinct(colors);
        loop {
            let sigs: Vec<(u32, Vec<(u32, u32)>)> = (0..self.n)
                .map(|v| {
                    let mut s: Vec<(u32, u32)> =
                        self.nbrs[v].iter().map(|&(w, m)| (colors[w], m)).collect();
                    s.sort_unstable();
                    (colors[v], s)
                })
                .collect();
            let ranks = rank(&sigs);
            colors.copy_from_slice(&ranks);
            let now = count_distinct(colors);
            if now == classes {
                return;
            }
            classes = now;
        }
    }

    fn canonical(&self) -> Vec<u32> {
        let init: Vec<(u32, u32, usize)> = (0..self.n)
            .map(|v| (self.decor[v].0, self.decor[v].1, self.nbrs[v].len()))
            .collect();
        let mut colors = rank(&init);
        self.refine(&mut colors);
        let mut best: Option<Vec<u32>> = None;
        self.explore(colors, &mut best);
        best.expect("at least one leaf")
    }

    fn explore(&self, colors: Vec<u32>, best: &mut Option<Vec<u32>>) {
        if count_distinct(&colors) == self.n {
            let enc = self.encode(&colors);
            if best.as_ref().is_none_or(|b| enc < *b) {
                *best = Some(enc);
            }
            return;
        }
        // first smallest non-singleton cell
        let mut sizes: BTreeMap<u32, usize> = BTreeMap::new();
        for &c in &colors {
            *sizes.entry(c).or_insert(0) += 1;
        }
        let (&cell, _) = sizes
            .iter()
            .filter(|(_, &s)| s > 1)
            .min_by_key(|(&c, &s)| (s, c))
            .expect("a non-singleton cell");
        for v in 0..self.n {
            if colors[v] != cell {
                continue;
            }
            let split: Vec<(u32, bool)> = (0..self.n).map(|w| (colors[w], w != v)).collect();
            let mut next = rank(&split);
            self.refine(&mut next);
            self.explore(next, best);
        }
    }

    fn encode(&self, colors: &[u32]) -> Vec<u32> {
        let n = self.n;
        let mut at = vec![0; n];
        for v in 0..n {
            at[colors[v] as usize] = v;
        }
        let mut out = Vec::with_capacity(1 + 2 * n + n * (n - 1) / 2);
        out.push(n as u32);
        for &v in &at {
            out.push(self.decor[v].0);
            out.push(self.decor[v].1);
        }
        for i in 0..n {
            for j in i + 1..n {
                out.push(self.mult[at[i] * n + at[j]]);
            }
        }
        out
    }
}

fn rank<T: Ord + Clone>(keys: &[T]) -> Vec<u32> {
    let mut sorted: Vec<T> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).expect("present") as u32)
        .collect()
}

fn count_distinct(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}
