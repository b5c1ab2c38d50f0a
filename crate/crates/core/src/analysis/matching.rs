//! Perfect matchings, semi-perfect matchings and covers of `F(1,1)`.

use std::collections::VecDeque;

use serde::Serialize;

use crate::catalog::make_flower;
use crate::covers::{verify_cover, CoverProjection};
use crate::error::{Error, Result};
use crate::graph::{EdgeKind, Multigraph};
use crate::products::odot;

/// Normal edges and semi-edges meeting every vertex exactly once.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemiPerfectMatching {
    pub edges: Vec<usize>,
}

impl SemiPerfectMatching {
    pub fn is_valid(&self, g: &Multigraph) -> bool {
        let mut met = vec![0usize; g.vertex_count()];
        for &e in &self.edges {
            if e >= g.edge_count() {
                return false;
            }
            match g.edge_kinds()[e] {
                EdgeKind::Normal(u, v) => {
                    met[u.0] += 1;
                    met[v.0] += 1;
                }
                EdgeKind::Semi(v) => met[v.0] += 1,
                EdgeKind::Loop(_) => return false,
            }
        }
        met.iter().all(|&m| m == 1)
    }
}

/// Maximum matching of the underlying simple graph (loops and semi-edges
/// ignored, each parallel bundle represented by its lowest edge id).
/// Returns the chosen edge ids in increasing order.
pub fn maximum_matching(g: &Multigraph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (&(u, v), ids) in &g.normal_bundles() {
        adj[u].push((v, ids[0].0));
        adj[v].push((u, ids[0].0));
    }
    for row in &mut adj {
        row.sort_unstable();
    }
    let mate = Blossom::new(&adj).run();
    let mut out: Vec<usize> = (0..n)
        .filter_map(|v| mate[v].filter(|&w| v < w).map(|w| edge_between(&adj, v, w)))
        .collect();
    out.sort_unstable();
    out
}

fn edge_between(adj: &[Vec<(usize, usize)>], v: usize, w: usize) -> usize {
    adj[v]
        .iter()
        .find(|&&(x, _)| x == w)
        .expect("matched along an edge")
        .1
}

pub fn has_perfect_matching(g: &Multigraph) -> Option<Vec<usize>> {
    let m = maximum_matching(g);
    (2 * m.len() == g.vertex_count()).then_some(m)
}

/// Searched through a perfect matching of `odot(g)`: `e` is taken when its
/// copy in the first sheet is matched, a semi-edge when its rung is.
pub fn has_semi_perfect_matching(g: &Multigraph) -> Option<SemiPerfectMatching> {
    let (doubled, proj) = odot(g);
    let pm = has_perfect_matching(&doubled)?;
    let mut edges = Vec::new();
    for e in pm {
        let base = proj.edge_map()[e];
        let keep = match doubled.edge(crate::graph::EdgeId(e)) {
            EdgeKind::Normal(u, v) => match g.edge_kinds()[base] {
                EdgeKind::Semi(_) => true,
                _ => u.0 % 2 == 0 && v.0 % 2 == 0,
            },
            _ => false,
        };
        if keep {
            edges.push(base);
        }
    }
    edges.sort_unstable();
    let m = SemiPerfectMatching { edges };
    debug_assert!(m.is_valid(g));
    Some(m)
}

/// A covering projection of a cubic graph onto `F(1,1)` (edge 0 the
/// semi-edge, edge 1 the loop) if one exists: a semi-perfect matching that
/// uses every semi-edge goes to the semi-edge, the rest to the loop.
pub fn covers_f11(g: &Multigraph) -> Result<Option<CoverProjection>> {
    if !g.is_cubic() {
        return Err(Error::Precondition("covers_f11 needs a cubic graph".into()));
    }
    if g.vertices().any(|v| g.semis_at(v) > 1) {
        return Ok(None);
    }
    let rest: Vec<usize> = g
        .vertices()
        .filter(|&v| g.semis_at(v) == 0)
        .map(|v| v.0)
        .collect();
    let (sub, _, edge_map) = g.induced_subgraph(&rest, None);
    let Some(pm) = has_perfect_matching(&sub) else {
        return Ok(None);
    };
    let mut chosen = vec![false; g.edge_count()];
    for e in pm {
        chosen[edge_map[e]] = true;
    }
    for (id, e) in g.edges() {
        if e.is_semi() {
            chosen[id.0] = true;
        }
    }
    let target = make_flower(1, 1);
    let p = CoverProjection::new(
        g.clone(),
        target,
        vec![0; g.vertex_count()],
        chosen.iter().map(|&c| if c { 0 } else { 1 }).collect(),
    )?;
    if !verify_cover(&p).is_ok() {
        return Err(Error::Anomaly(
            "F(1,1) projection failed verification".into(),
        ));
    }
    Ok(Some(p))
}

/// Odd-cycle aware augmenting-path search (Edmonds).
struct Blossom<'a> {
    adj: &'a [Vec<(usize, usize)>],
    mate: Vec<Option<usize>>,
    parent: Vec<Option<usize>>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl<'a> Blossom<'a> {
    fn new(adj: &'a [Vec<(usize, usize)>]) -> Self {
        let n = adj.len();
        Blossom {
            adj,
            mate: vec![None; n],
            parent: vec![None; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn run(mut self) -> Vec<Option<usize>> {
        let n = self.adj.len();
        // greedy start
        for v in 0..n {
            if self.mate[v].is_none() {
                if let Some(&(w, _)) = self.adj[v].iter().find(|&&(w, _)| self.mate[w].is_none()) {
                    self.mate[v] = Some(w);
                    self.mate[w] = Some(v);
                }
            }
        }
        for root in 0..n {
            if self.mate[root].is_some() {
                continue;
            }
            if let Some(mut v) = self.find_path(root) {
                // flip along the alternating path ending at v
                loop {
                    let pv = self.parent[v].expect("path parent");
                    let next = self.mate[pv];
                    self.mate[v] = Some(pv);
                    self.mate[pv] = Some(v);
                    match next {
                        Some(w) => v = w,
                        None => break,
                    }
                }
            }
        }
        self.mate
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.adj.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            match self.mate[a] {
                Some(m) => a = self.parent[m].expect("alternating tree"),
                None => break,
            }
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b].expect("alternating tree")].expect("alternating tree");
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            let m = self.mate[v].expect("blossom vertex is matched");
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[m]] = true;
            self.parent[v] = Some(child);
            child = m;
            v = self.parent[m].expect("alternating tree");
        }
    }

    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.adj.len();
        self.used.iter_mut().for_each(|u| *u = false);
        self.parent.iter_mut().for_each(|p| *p = None);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for i in 0..self.adj[v].len() {
                let to = self.adj[v][i].0;
                if self.base[v] == self.base[to] || self.mate[v] == Some(to) {
                    continue;
                }
                let to_is_outer =
                    to == root || self.mate[to].is_some_and(|m| self.parent[m].is_some());
                if to_is_outer {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|b| *b = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for u in 0..n {
                        if self.in_blossom[self.base[u]] {
                            self.base[u] = cur;
                            if !self.used[u] {
                                self.used[u] = true;
                                self.queue.push_back(u);
                            }
                        }
                    }
                } else if self.parent[to].is_none() {
                    self.parent[to] = Some(v);
                    match self.mate[to] {
                        None => return Some(to),
                        Some(m) => {
                            self.used[m] = true;
                            self.queue.push_back(m);
                        }
                    }
                }
            }
        }
        None
    }
}

/// Whether some subset of normal and semi-edges meets every vertex once,
/// by trying all subsets. Test oracle; exponential.
pub fn semi_perfect_matching_brute_force(g: &Multigraph) -> Option<SemiPerfectMatching> {
    let cand: Vec<usize> = g
        .edges()
        .filter(|(_, e)| !e.is_loop())
        .map(|(id, _)| id.0)
        .collect();
    assert!(
        cand.len() <= 24,
        "brute force limited to 24 candidate edges"
    );
    (0u32..1 << cand.len()).find_map(|mask| {
        let m = SemiPerfectMatching {
            edges: (0..cand.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| cand[i])
                .collect(),
        };
        m.is_valid(g).then_some(m)
    })
}

#[cfg(test)]
fn vertex_degree_one_check(g: &Multigraph, edges: &[usize]) -> bool {
    let mut met = vec![0usize; g.vertex_count()];
    for &e in edges {
        let (a, b) = g.edge_kinds()[e].ends();
        met[a] += 1;
        if a != b {
            met[b] += 1;
        }
    }
    g.vertices().all(|v| met[v.0] == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{catalog, cycle, make_dumbbell};
    use crate::covers::{find_cover, ProjectionKind};

    fn g(name: &str) -> Multigraph {
        catalog(name).unwrap().graph
    }

    /// Maximum matching size by trying all subsets of bundles.
    fn brute_force_matching_size(g: &Multigraph) -> usize {
        let pairs: Vec<(usize, usize)> = g.normal_bundles().keys().copied().collect();
        let mut best = 0;
        for mask in 0u32..1 << pairs.len() {
            let mut used = vec![false; g.vertex_count()];
            let mut ok = true;
            for (i, &(u, v)) in pairs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    if used[u] || used[v] {
                        ok = false;
                        break;
                    }
                    used[u] = true;
                    used[v] = true;
                }
            }
            if ok {
                best = best.max(mask.count_ones() as usize);
            }
        }
        best
    }

    #[test]
    fn perfect_matchings() {
        assert!(has_perfect_matching(&g("K4")).is_some());
        assert!(has_perfect_matching(&g("LC")).is_none());
        assert_eq!(has_perfect_matching(&g("K2")), Some(vec![0]));
        assert!(has_perfect_matching(&g("Petersen")).is_some());
        assert!(has_perfect_matching(&cycle(5)).is_none());
        let m = has_perfect_matching(&g("SG")).unwrap();
        assert!(vertex_degree_one_check(&g("SG"), &m));
    }

    #[test]
    fn blossom_matches_brute_force() {
        for name in [
            "Petersen", "K4", "K33", "Q3", "H1", "prism", "SG", "DG", "WG", "LC", "C(8;4)",
        ] {
            let gr = g(name);
            assert_eq!(
                maximum_matching(&gr).len(),
                brute_force_matching_size(&gr),
                "{name}"
            );
        }
        // two triangles joined by a path: blossoms on both sides
        let e = [
            (0, 1),
            (1, 2),
            (0, 2),
            (2, 3),
            (3, 4),
            (4, 5),
            (5, 6),
            (4, 6),
        ];
        let gr =
            Multigraph::new(7, e.iter().map(|&(u, v)| EdgeKind::normal(u, v)).collect()).unwrap();
        assert_eq!(maximum_matching(&gr).len(), 3);
    }

    #[test]
    fn semi_perfect_matchings() {
        assert!(has_semi_perfect_matching(&g("F(3,0)")).is_some());
        assert!(has_semi_perfect_matching(&g("LC")).is_none());
        let w = make_dumbbell(0, 1, 1, 0, 2);
        let m = has_semi_perfect_matching(&w).unwrap();
        assert!(m.is_valid(&w));
        assert_eq!(m.edges, vec![1]);
        assert_eq!(
            semi_perfect_matching_brute_force(&w).map(|m| m.edges),
            Some(vec![1])
        );
        for name in [
            "W(2,0,1,0,2)",
            "W(0,1,1,1,0)",
            "F(1,1)",
            "K3prime",
            "C6prime",
            "WG",
        ] {
            assert_eq!(
                has_semi_perfect_matching(&g(name)).is_some(),
                semi_perfect_matching_brute_force(&g(name)).is_some(),
                "{name}"
            );
        }
    }

    #[test]
    fn f11_covers() {
        let p = covers_f11(&g("K4")).unwrap().unwrap();
        assert!(verify_cover(&p).is_ok());
        assert!(covers_f11(&g("W(2,0,1,0,2)")).unwrap().is_none());
        assert!(covers_f11(&g("LC")).unwrap().is_none());
        assert!(covers_f11(&cycle(4)).is_err());
        for name in crate::catalog::SMALL_CUBIC {
            let gr = g(name);
            let direct = covers_f11(&gr).unwrap().is_some();
            let searched = find_cover(&gr, &g("F(1,1)"), ProjectionKind::Cover)
                .unwrap()
                .is_some();
            assert_eq!(direct, searched, "{name}");
        }
    }
}
