//! Constructions of simple covers with prescribed properties.
//!
//! Every builder returns the cover together with its projection and checks
//! the result with the independent verifiers before returning it.

use crate::analysis::{
    chromatic_index, has_perfect_matching, has_semi_perfect_matching, minimal_good_sets,
    odd_components_without,
};
use crate::covers::{compose, verify_cover, CoverProjection};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeKind, Multigraph, VertexId};
use crate::products::odot;

/// A cover and its projection onto the input graph.
pub type Built = (Multigraph, CoverProjection);

/// Fold counts admitted by [`simple_pfold_cover`] for `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FoldSpec {
    /// `max(d, q + 1)` where `d` is the largest edge multiplicity and `q`
    /// the largest `semis + 2 loops` at a vertex.
    pub min_fold: usize,
    pub needs_even: bool,
}

impl FoldSpec {
    pub fn of(g: &Multigraph) -> Self {
        let d = g.max_multiplicity();
        let q = g
            .vertices()
            .map(|v| g.semis_at(v) + 2 * g.loops_at(v))
            .max()
            .unwrap_or(0);
        FoldSpec {
            min_fold: d.max(q + 1),
            needs_even: g.has_semi_edges(),
        }
    }

    pub fn admits(&self, p: usize) -> bool {
        p >= self.min_fold && (!self.needs_even || p % 2 == 0)
    }
}

fn check_cover(
    h: &Multigraph,
    g: &Multigraph,
    vmap: Vec<usize>,
    emap: Vec<usize>,
) -> Result<Built> {
    let proj = CoverProjection::new(h.clone(), g.clone(), vmap, emap)?;
    let verdict = verify_cover(&proj);
    if !verdict.is_ok() {
        return Err(Error::Anomaly(format!(
            "constructed cover failed verification: {}",
            verdict.violations[0]
        )));
    }
    if !h.is_simple() {
        return Err(Error::Anomaly("constructed cover is not simple".into()));
    }
    Ok((h.clone(), proj))
}

/// Pairs of the round-robin 1-factorisation of `K_p` (p even), one list
/// per colour; vertex `p - 1` stays fixed.
fn round_robin(p: usize) -> Vec<Vec<(usize, usize)>> {
    let m = p - 1;
    (0..m)
        .map(|r| {
            let mut pairs = vec![(r, m)];
            for t in 1..p / 2 {
                pairs.push(((r + t) % m, (r + m - t) % m));
            }
            pairs
        })
        .collect()
}

/// A simple `p`-fold cover; copy `i` of vertex `u` is `u * p + i`.
///
/// The `j`-th edge of a parallel bundle `uv` (`u < v`) lifts to
/// `u_i v_{i+j}`. Without semi-edges at `u`, the `j`-th loop (from 1)
/// lifts to `u_i u_{i+j}`. With semi-edges at `u`, colours `2i, 2i+1` of
/// the round-robin colouring of `K_p` on the copies of `u` carry loop `i`
/// and colour `2l + j` carries semi-edge `j`.
pub fn simple_pfold_cover(g: &Multigraph, p: usize) -> Result<Built> {
    let spec = FoldSpec::of(g);
    if p == 0 || p < spec.min_fold {
        return Err(Error::Precondition(format!(
            "a simple {p}-fold cover needs p >= {}",
            spec.min_fold.max(1)
        )));
    }
    if spec.needs_even && p % 2 == 1 {
        return Err(Error::Precondition(format!(
            "the graph has semi-edges, so p must be even (got {p})"
        )));
    }
    let n = g.vertex_count();
    let at = |u: usize, i: usize| u * p + i;
    let mut bundle_index = vec![0usize; g.edge_count()];
    for ids in g.normal_bundles().values() {
        for (j, e) in ids.iter().enumerate() {
            bundle_index[e.0] = j;
        }
    }
    let mut loop_index = vec![0usize; g.edge_count()];
    let mut semi_index = vec![0usize; g.edge_count()];
    for v in g.vertices() {
        let mut l = 0;
        let mut s = 0;
        for &e in g.incident(v) {
            match g.edge(e) {
                EdgeKind::Loop(_) => {
                    loop_index[e.0] = l;
                    l += 1;
                }
                EdgeKind::Semi(_) => {
                    semi_index[e.0] = s;
                    s += 1;
                }
                EdgeKind::Normal(..) => {}
            }
        }
    }
    let factors = if spec.needs_even {
        round_robin(p)
    } else {
        Vec::new()
    };

    let mut edges = Vec::new();
    let mut emap = Vec::new();
    for (id, e) in g.edges() {
        match e {
            EdgeKind::Normal(a, b) => {
                let (u, v) = (a.0.min(b.0), a.0.max(b.0));
                let j = bundle_index[id.0];
                for i in 0..p {
                    edges.push(EdgeKind::normal(at(u, i), at(v, (i + j) % p)));
                    emap.push(id.0);
                }
            }
            EdgeKind::Loop(u) if g.semis_at(u) == 0 => {
                let j = loop_index[id.0] + 1;
                if 2 * j % p == 0 {
                    return Err(Error::Precondition(format!(
                        "loop step {j} is degenerate for p = {p}"
                    )));
                }
                for i in 0..p {
                    edges.push(EdgeKind::normal(at(u.0, i), at(u.0, (i + j) % p)));
                    emap.push(id.0);
                }
            }
            EdgeKind::Loop(u) => {
                let l = loop_index[id.0];
                for colour in [2 * l, 2 * l + 1] {
                    for &(a, b) in &factors[colour] {
                        edges.push(EdgeKind::normal(at(u.0, a), at(u.0, b)));
                        emap.push(id.0);
                    }
                }
            }
            EdgeKind::Semi(u) => {
                let colour = 2 * g.loops_at(u) + semi_index[id.0];
                for &(a, b) in &factors[colour] {
                    edges.push(EdgeKind::normal(at(u.0, a), at(u.0, b)));
                    emap.push(id.0);
                }
            }
        }
    }
    let h = Multigraph::new(n * p, edges)?;
    check_cover(&h, g, (0..n * p).map(|x| x / p).collect(), emap)
}

/// Places a `p`-fold cover of a subgraph into a larger cover. `sub_vertices`
/// maps subgraph vertices to graph vertices, `sub_edges` subgraph edges to
/// graph edges, `layers[i]` gives the global sheet of local sheet `i`.
struct Assembler {
    fold: usize,
    edges: Vec<EdgeKind>,
    emap: Vec<usize>,
}

impl Assembler {
    fn at(&self, x: usize, layer: usize) -> usize {
        x * self.fold + layer
    }

    fn place(
        &mut self,
        cover: &Built,
        sub_vertices: &[usize],
        sub_edges: &[usize],
        layers: &[usize],
    ) {
        let p = layers.len();
        let (h, proj) = cover;
        let lift = |w: usize| self.at(sub_vertices[w / p], layers[w % p]);
        let mut new = Vec::new();
        for (id, e) in h.edges() {
            let EdgeKind::Normal(a, b) = e else {
                unreachable!("simple covers have normal edges only")
            };
            new.push((
                EdgeKind::normal(lift(a.0), lift(b.0)),
                sub_edges[proj.edge_map()[id.0]],
            ));
        }
        for (e, t) in new {
            self.edges.push(e);
            self.emap.push(t);
        }
    }

    fn lift_identically(&mut self, g: &Multigraph, e: EdgeId) {
        let EdgeKind::Normal(u, v) = g.edge(e) else {
            unreachable!("only normal edges are lifted sheet by sheet")
        };
        for i in 0..self.fold {
            self.edges
                .push(EdgeKind::normal(self.at(u.0, i), self.at(v.0, i)));
            self.emap.push(e.0);
        }
    }

    fn finish(self, g: &Multigraph) -> Result<Built> {
        let n = g.vertex_count() * self.fold;
        let h = Multigraph::new(n, self.edges)?;
        let fold = self.fold;
        check_cover(&h, g, (0..n).map(|x| x / fold).collect(), self.emap)
    }
}

fn require_connected(g: &Multigraph) -> Result<()> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(Error::Precondition("the graph must be connected".into()))
    }
}

/// A simple cover with a bridge. For a simple graph this is the graph
/// itself; otherwise a `(2p+1)`-fold cover built around the lowest-id
/// bridge `uv`, with `p` one more than the largest multiplicity plus twice
/// the largest loop count at a vertex. Copy `i` of `x` is `x (2p+1) + i`
/// and edge 0 (joining `u_0` and `v_0`) is a bridge.
pub fn bridged_simple_cover(g: &Multigraph) -> Result<Built> {
    require_connected(g)?;
    if g.has_semi_edges() {
        return Err(Error::Precondition(
            "bridged_simple_cover needs a graph without semi-edges".into(),
        ));
    }
    let bridges = g.bridges();
    let Some(&bridge) = bridges.first() else {
        return Err(Error::Precondition("the graph has no bridge".into()));
    };
    if g.is_simple() {
        return Ok((g.clone(), CoverProjection::identity(g)));
    }
    let EdgeKind::Normal(u, v) = g.edge(bridge) else {
        unreachable!()
    };
    let loops_max = g.vertices().map(|x| g.loops_at(x)).max().unwrap_or(0);
    let p = g.max_multiplicity() + 2 * loops_max + 1;
    let fold = 2 * p + 1;

    let labels = g.component_labels_filtered(|_| true, |e| e != bridge.0);
    let side = |root: VertexId| -> Vec<usize> {
        (0..g.vertex_count())
            .filter(|&x| labels[x] == labels[root.0])
            .collect()
    };
    let mut asm = Assembler {
        fold,
        edges: Vec::new(),
        emap: Vec::new(),
    };
    asm.lift_identically(g, bridge);
    let big: Vec<usize> = (0..=p).collect();
    let small_u: Vec<usize> = (p + 1..=2 * p).collect();
    let small_v: Vec<usize> = (1..=p).collect();
    let big_v: Vec<usize> = std::iter::once(0).chain(p + 1..=2 * p).collect();
    for (root, layouts) in [(u, [&big, &small_u]), (v, [&small_v, &big_v])] {
        let verts = side(root);
        let (sub, _, sub_edges) = g.induced_subgraph(&verts, Some(bridge));
        for layers in layouts {
            let cover = simple_pfold_cover(&sub, layers.len())?;
            asm.place(&cover, &verts, &sub_edges, layers);
        }
    }
    let built = asm.finish(g)?;
    if !built.0.bridges().contains(&EdgeId(0)) {
        return Err(Error::Anomaly("lifted edge u_0 v_0 is not a bridge".into()));
    }
    Ok(built)
}

fn require_cubic(g: &Multigraph) -> Result<()> {
    if g.is_cubic() {
        Ok(())
    } else {
        Err(Error::Precondition("the graph must be cubic".into()))
    }
}

/// A simple cover that is not 3-edge-colourable, for a connected cubic
/// graph whose chromatic index exceeds 3.
pub fn snark_cover(a: &Multigraph) -> Result<Built> {
    require_connected(a)?;
    require_cubic(a)?;
    if !chromatic_index(a).exceeds(3) {
        return Err(Error::Precondition("the graph is 3-edge-colourable".into()));
    }
    let built = snark_cover_unchecked(a)?;
    if !chromatic_index(&built.0).exceeds(3) {
        return Err(Error::Anomaly(
            "constructed cover is 3-edge-colourable".into(),
        ));
    }
    Ok(built)
}

fn snark_cover_unchecked(a: &Multigraph) -> Result<Built> {
    if a.has_semi_edges() {
        let (d, to_a) = odot(a);
        let (h, to_d) = snark_cover_unchecked(&d)?;
        return Ok((h, compose(&to_d, &to_a)?));
    }
    if !a.bridges().is_empty() {
        return bridged_simple_cover(a);
    }
    if a.has_loops() {
        return Err(Error::Anomaly(
            "a connected cubic graph with a loop and no semi-edges has no bridge".into(),
        ));
    }
    let mut cur = a.clone();
    let mut total = CoverProjection::identity(a);
    while !cur.is_simple() {
        let bundles = cur.normal_bundles();
        let (&(x, y), ids) = bundles
            .iter()
            .find(|(_, ids)| ids.len() >= 2)
            .expect("a non-simple loopless graph has a parallel bundle");
        if ids.len() > 2 {
            return Err(Error::Anomaly(
                "a triple edge in a graph with chromatic index above 3".into(),
            ));
        }
        let e2 = ids[1];
        let (g2, f) = simple_pfold_cover(&cur, 2)?;
        let lifted = f.edge_fiber(e2.0)[0];
        let (a2, b2) = g2.edge(EdgeId(lifted)).ends();
        let (x2, y2) = if f.vertex_map()[a2] == x {
            (a2, b2)
        } else {
            (b2, a2)
        };
        let n = cur.vertex_count();
        let mut edges = Vec::new();
        let mut emap = Vec::new();
        for (id, e) in cur.edges() {
            if id != e2 {
                edges.push(e);
                emap.push(id.0);
            }
        }
        for (id, e) in g2.edges() {
            if id.0 != lifted {
                edges.push(crate::graph::shift_edge(e, n));
                emap.push(f.edge_map()[id.0]);
            }
        }
        edges.push(EdgeKind::normal(x2 + n, y));
        edges.push(EdgeKind::normal(x, y2 + n));
        emap.extend([e2.0, e2.0]);
        let next = Multigraph::new(3 * n, edges)?;
        let vmap: Vec<usize> = (0..n).chain(f.vertex_map().iter().copied()).collect();
        let step = CoverProjection::new(next.clone(), cur.clone(), vmap, emap)?;
        if !verify_cover(&step).is_ok() {
            return Err(Error::Anomaly(
                "double-edge surgery produced an invalid cover".into(),
            ));
        }
        total = compose(&step, &total)?;
        cur = next;
    }
    Ok((cur, total))
}

/// A simple cover without a perfect matching, for a connected cubic graph
/// without semi-edges and without a perfect matching.
///
/// For a non-simple graph the lexicographically least minimal good set
/// `X` is used; with `C_1..C_k` the components of `G - X` the cover has
/// `3k + 1` sheets (copy `i` of `u` is `u (3k+1) + i`): `C_j` receives a
/// 4-fold cover on sheets `0, 3j-2, 3j-1, 3j` and a 3-fold cover on sheets
/// `3i-2, 3i-1, 3i` for each `i != j`, and edges at `X` lift sheet by sheet.
pub fn no_pm_cover(g: &Multigraph) -> Result<Built> {
    require_connected(g)?;
    require_cubic(g)?;
    if g.has_semi_edges() {
        return Err(Error::Precondition(
            "no_pm_cover needs a graph without semi-edges".into(),
        ));
    }
    if has_perfect_matching(g).is_some() {
        return Err(Error::Precondition(
            "the graph has a perfect matching".into(),
        ));
    }
    if g.is_simple() {
        return Ok((g.clone(), CoverProjection::identity(g)));
    }
    let sets = minimal_good_sets(g)?;
    let Some(x) = sets.first() else {
        return Err(Error::Anomaly(
            "no good set in a graph without a perfect matching".into(),
        ));
    };
    if !x.very_good {
        return Err(Error::Anomaly(format!(
            "minimal good set {:?} is not very good",
            x.vertices
        )));
    }
    let mut in_x = vec![false; g.vertex_count()];
    for &v in &x.vertices {
        in_x[v] = true;
    }
    let labels = g.component_labels_filtered(|v| !in_x[v], |_| true);
    let k = labels
        .iter()
        .filter(|&&l| l != usize::MAX)
        .max()
        .map_or(0, |m| m + 1);
    let fold = 3 * k + 1;
    let mut asm = Assembler {
        fold,
        edges: Vec::new(),
        emap: Vec::new(),
    };
    for j in 1..=k {
        let verts: Vec<usize> = (0..g.vertex_count())
            .filter(|&v| labels[v] == j - 1)
            .collect();
        let (sub, _, sub_edges) = g.induced_subgraph(&verts, None);
        let four = simple_pfold_cover(&sub, 4)?;
        let three = simple_pfold_cover(&sub, 3)?;
        for i in 1..=k {
            if i == j {
                asm.place(&four, &verts, &sub_edges, &[0, 3 * j - 2, 3 * j - 1, 3 * j]);
            } else {
                asm.place(&three, &verts, &sub_edges, &[3 * i - 2, 3 * i - 1, 3 * i]);
            }
        }
    }
    for (id, e) in g.edges() {
        if let EdgeKind::Normal(u, v) = e {
            if in_x[u.0] || in_x[v.0] {
                asm.lift_identically(g, id);
            }
        }
    }
    let built = asm.finish(g)?;
    let mut removed = vec![false; built.0.vertex_count()];
    for &v in &x.vertices {
        removed[v * fold] = true;
    }
    if odd_components_without(&built.0, &removed) <= x.vertices.len() {
        return Err(Error::Anomaly("lifted set is not a Tutte barrier".into()));
    }
    if has_perfect_matching(&built.0).is_some() {
        return Err(Error::Anomaly(
            "constructed cover has a perfect matching".into(),
        ));
    }
    Ok(built)
}

/// A simple cover of a cubic graph without a semi-perfect matching that
/// has no perfect matching, hence does not cover `F(1,1)`.
pub fn witness_not_f11(a: &Multigraph) -> Result<Built> {
    require_connected(a)?;
    require_cubic(a)?;
    if has_semi_perfect_matching(a).is_some() {
        return Err(Error::Precondition(
            "the graph has a semi-perfect matching".into(),
        ));
    }
    if !a.has_semi_edges() {
        return no_pm_cover(a);
    }
    let (d, to_a) = odot(a);
    let (h, to_d) = no_pm_cover(&d)?;
    Ok((h, compose(&to_d, &to_a)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::isomorphic;
    use crate::catalog::{
        catalog, complete, complete_bipartite, cycle, make_dumbbell, make_flower,
    };
    use crate::covers::fold_count;

    fn g(name: &str) -> Multigraph {
        catalog(name).unwrap().graph
    }

    #[test]
    fn loop_lifts_to_a_cycle() {
        let (h, p) = simple_pfold_cover(&make_flower(0, 1), 3).unwrap();
        assert!(isomorphic(&h, &cycle(3)));
        assert_eq!(fold_count(&p).unwrap(), 3);
    }

    #[test]
    fn dipole_lifts_to_k33() {
        let (h, _) = simple_pfold_cover(&make_dumbbell(0, 0, 3, 0, 0), 3).unwrap();
        assert!(isomorphic(&h, &complete_bipartite(3, 3)));
    }

    #[test]
    fn f11_lifts_to_k4() {
        let (h, _) = simple_pfold_cover(&make_flower(1, 1), 4).unwrap();
        assert!(isomorphic(&h, &complete(4)));
    }

    #[test]
    fn fold_preconditions() {
        assert!(simple_pfold_cover(&make_flower(1, 1), 3).is_err());
        assert!(simple_pfold_cover(&make_flower(1, 1), 2).is_err());
        assert!(simple_pfold_cover(&make_dumbbell(0, 0, 3, 0, 0), 2).is_err());
        assert!(simple_pfold_cover(&make_flower(0, 1), 2).is_err());
        assert!(simple_pfold_cover(&g("K4"), 0).is_err());
        assert!(simple_pfold_cover(&g("K4"), 1).is_ok());
    }

    #[test]
    fn round_robin_is_a_factorisation() {
        for p in [2, 4, 6, 8] {
            let f = round_robin(p);
            assert_eq!(f.len(), p - 1);
            let mut all: Vec<(usize, usize)> = f
                .iter()
                .flatten()
                .map(|&(a, b)| (a.min(b), a.max(b)))
                .collect();
            for m in &f {
                let mut seen: Vec<usize> = m.iter().flat_map(|&(a, b)| [a, b]).collect();
                seen.sort();
                assert_eq!(seen, (0..p).collect::<Vec<_>>());
            }
            all.sort();
            all.dedup();
            assert_eq!(all.len(), p * (p - 1) / 2);
        }
    }

    #[test]
    fn bridged_covers() {
        for name in ["SG", "W(0,1,1,1,0)"] {
            let (h, p) = bridged_simple_cover(&g(name)).unwrap();
            assert!(h.is_simple() && verify_cover(&p).is_ok());
            assert!(!h.bridges().is_empty());
        }
        assert!(bridged_simple_cover(&g("K4")).is_err());
        assert!(bridged_simple_cover(&g("W(1,0,1,0,1)")).is_err());
    }

    #[test]
    fn snark_covers() {
        for name in ["F(1,1)", "W(0,1,1,1,0)"] {
            let (h, p) = snark_cover(&g(name)).unwrap();
            assert!(h.is_simple() && verify_cover(&p).is_ok());
            assert!(chromatic_index(&h).exceeds(3), "{name}");
        }
        assert!(snark_cover(&g("K4")).is_err());
        assert!(snark_cover(&g("W(0,0,3,0,0)")).is_err());
    }

    #[test]
    fn surgery_on_double_edges() {
        // Petersen with one edge replaced by a digon through two new vertices
        // is loopless, bridgeless, has double edges and chromatic index 4
        let pet = g("Petersen");
        let mut edges: Vec<EdgeKind> = pet.edge_kinds()[1..].to_vec();
        edges.extend([
            EdgeKind::normal(0, 10),
            EdgeKind::normal(10, 11),
            EdgeKind::normal(10, 11),
            EdgeKind::normal(11, 1),
        ]);
        let a = Multigraph::new(12, edges).unwrap();
        assert!(a.bridges().is_empty() && !a.is_simple());
        let (h, p) = snark_cover(&a).unwrap();
        assert_eq!(h.vertex_count(), 36);
        assert!(h.is_simple() && verify_cover(&p).is_ok());
    }

    #[test]
    fn no_matching_covers() {
        let (h, p) = no_pm_cover(&g("LC")).unwrap();
        assert!(h.is_simple() && verify_cover(&p).is_ok());
        assert!(has_perfect_matching(&h).is_none());
        assert!(h.is_connected());
        assert_eq!(fold_count(&p).unwrap(), 10);
        assert!(no_pm_cover(&g("K4")).is_err());
        assert!(no_pm_cover(&g("W(0,1,1,1,0)")).is_err());
        let (w, _) = witness_not_f11(&g("LC")).unwrap();
        assert!(has_perfect_matching(&w).is_none());
        assert!(witness_not_f11(&g("F(3,0)")).is_err());
    }

    #[test]
    fn witness_through_odot() {
        // x carries a semi-edge and joins two looped vertices
        let a = Multigraph::new(
            3,
            vec![
                EdgeKind::semi(0),
                EdgeKind::normal(0, 1),
                EdgeKind::normal(0, 2),
                EdgeKind::looped(1),
                EdgeKind::looped(2),
            ],
        )
        .unwrap();
        assert!(a.is_cubic() && has_semi_perfect_matching(&a).is_none());
        let (h, p) = witness_not_f11(&a).unwrap();
        assert!(h.is_simple() && verify_cover(&p).is_ok());
        assert!(has_perfect_matching(&h).is_none());
    }
}
