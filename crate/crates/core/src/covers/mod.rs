//! Covering and semi-covering projections: verification, composition and
//! exhaustive search.

mod factor;
mod search;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgeKind, Multigraph, VertexId};

pub use search::{find_cover, find_cover_limited, SearchOutcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ProjectionKind {
    Cover,
    SemiCover,
}

impl fmt::Display for ProjectionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProjectionKind::Cover => "cover",
            ProjectionKind::SemiCover => "semi-cover",
        })
    }
}

/// A vertex map and an edge map from `source` onto `target`. Construction
/// only checks that both maps are total and in range; use [`verify`] for
/// the covering conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverProjection {
    source: Multigraph,
    target: Multigraph,
    vertex_map: Vec<usize>,
    edge_map: Vec<usize>,
}

impl CoverProjection {
    pub fn new(
        source: Multigraph,
        target: Multigraph,
        vertex_map: Vec<usize>,
        edge_map: Vec<usize>,
    ) -> Result<Self> {
        if vertex_map.len() != source.vertex_count() {
            return Err(Error::MalformedProjection(format!(
                "vertex map has {} entries, source has {} vertices",
                vertex_map.len(),
                source.vertex_count()
            )));
        }
        if edge_map.len() != source.edge_count() {
            return Err(Error::MalformedProjection(format!(
                "edge map has {} entries, source has {} edges",
                edge_map.len(),
                source.edge_count()
            )));
        }
        if let Some((v, &x)) = vertex_map
            .iter()
            .enumerate()
            .find(|(_, &x)| x >= target.vertex_count())
        {
            return Err(Error::MalformedProjection(format!(
                "vertex {v} maps to {x}, outside the target"
            )));
        }
        if let Some((e, &t)) = edge_map
            .iter()
            .enumerate()
            .find(|(_, &t)| t >= target.edge_count())
        {
            return Err(Error::MalformedProjection(format!(
                "edge {e} maps to {t}, outside the target"
            )));
        }
        Ok(CoverProjection {
            source,
            target,
            vertex_map,
            edge_map,
        })
    }

    pub fn identity(g: &Multigraph) -> Self {
        CoverProjection {
            source: g.clone(),
            target: g.clone(),
            vertex_map: (0..g.vertex_count()).collect(),
            edge_map: (0..g.edge_count()).collect(),
        }
    }

    pub fn source(&self) -> &Multigraph {
        &self.source
    }

    pub fn target(&self) -> &Multigraph {
        &self.target
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    pub fn edge_map(&self) -> &[usize] {
        &self.edge_map
    }

    /// Source vertices over target vertex `x`, in increasing order.
    pub fn fiber(&self, x: usize) -> Vec<usize> {
        (0..self.vertex_map.len())
            .filter(|&v| self.vertex_map[v] == x)
            .collect()
    }

    /// Source edges over target edge `t`, in increasing order.
    pub fn edge_fiber(&self, t: usize) -> Vec<usize> {
        (0..self.edge_map.len())
            .filter(|&e| self.edge_map[e] == t)
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Rule {
    Degree,
    EdgeKind,
    Incidence,
    Fiber,
    Surjectivity,
    FiberSize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rule: Rule,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {}", self.rule, self.message)
    }
}

/// Outcome of [`verify`]; empty `violations` means accepted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub kind: ProjectionKind,
    pub violations: Vec<Violation>,
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn kind_allowed(kind: ProjectionKind, src: &EdgeKind, dst: &EdgeKind) -> bool {
    match (src, dst) {
        (EdgeKind::Normal(..), _) => true,
        (EdgeKind::Loop(_), EdgeKind::Loop(_)) => true,
        (EdgeKind::Semi(_), EdgeKind::Semi(_)) => true,
        (EdgeKind::Semi(_), EdgeKind::Loop(_)) => kind == ProjectionKind::SemiCover,
        _ => false,
    }
}

pub fn verify_cover(p: &CoverProjection) -> Verdict {
    verify(p, ProjectionKind::Cover)
}

pub fn verify_semicover(p: &CoverProjection) -> Verdict {
    verify(p, ProjectionKind::SemiCover)
}

/// Checks degree, kind, incidence and fiber rules. The fiber rules: over a
/// normal edge `xy` every vertex of the fibers of `x` and `y` meets exactly
/// one preimage edge; over a loop every fiber vertex has degree 2 in the
/// preimage; over a semi-edge degree 1.
pub fn verify(p: &CoverProjection, kind: ProjectionKind) -> Verdict {
    let (g, h) = (&p.source, &p.target);
    let f = &p.vertex_map;
    let mut out = Vec::new();
    let mut push = |rule, message: String| out.push(Violation { rule, message });

    for v in g.vertices() {
        let (dg, dh) = (g.degree(v), h.degree(VertexId(f[v.0])));
        if dg != dh {
            push(
                Rule::Degree,
                format!(
                    "vertex {v} has degree {dg}, its image {} has degree {dh}",
                    f[v.0]
                ),
            );
        }
    }

    let mut incidence_ok = true;
    for (id, e) in g.edges() {
        let t = p.edge_map[id.0];
        let te = h.edge(crate::graph::EdgeId(t));
        if !kind_allowed(kind, &e, &te) {
            push(
                Rule::EdgeKind,
                format!("edge {id} ({e:?}) cannot map to edge {t} ({te:?}) in a {kind}"),
            );
            incidence_ok = false;
            continue;
        }
        let (a, b) = e.ends();
        let (x, y) = te.ends();
        let ok = match te {
            EdgeKind::Normal(..) => (f[a], f[b]) == (x, y) || (f[a], f[b]) == (y, x),
            _ => f[a] == x && f[b] == x,
        };
        if !ok {
            push(
                Rule::Incidence,
                format!("edge {id} joins {a},{b} whose images are not the ends of edge {t}"),
            );
            incidence_ok = false;
        }
    }

    for x in 0..h.vertex_count() {
        if !f.contains(&x) {
            push(
                Rule::Surjectivity,
                format!("target vertex {x} has an empty fiber"),
            );
        }
    }
    for t in 0..h.edge_count() {
        if !p.edge_map.contains(&t) {
            push(
                Rule::Surjectivity,
                format!("target edge {t} has an empty fiber"),
            );
        }
    }

    if incidence_ok {
        // degree contribution of preimage edges per (target edge, source vertex)
        let mut contrib: Vec<std::collections::BTreeMap<usize, usize>> =
            vec![Default::default(); h.edge_count()];
        for (id, e) in g.edges() {
            let t = p.edge_map[id.0];
            let (a, b) = e.ends();
            match e {
                EdgeKind::Loop(_) => *contrib[t].entry(a).or_insert(0) += 2,
                EdgeKind::Semi(_) => *contrib[t].entry(a).or_insert(0) += 1,
                EdgeKind::Normal(..) => {
                    *contrib[t].entry(a).or_insert(0) += 1;
                    *contrib[t].entry(b).or_insert(0) += 1;
                }
            }
        }
        for (t, te) in h.edges() {
            let (x, y) = te.ends();
            let (want, what) = match te {
                EdgeKind::Normal(..) => (1, "a perfect matching"),
                EdgeKind::Loop(_) => (2, "a spanning 2-regular subgraph"),
                EdgeKind::Semi(_) => (1, "a spanning 1-regular subgraph"),
            };
            for v in 0..g.vertex_count() {
                if f[v] != x && f[v] != y {
                    continue;
                }
                let got = contrib[t.0].get(&v).copied().unwrap_or(0);
                if got != want {
                    push(
                        Rule::Fiber,
                        format!(
                            "preimage of edge {t} is not {what}: vertex {v} meets it with degree {got}"
                        ),
                    );
                }
            }
        }
    }

    let components = h.connected_components();
    for comp in components {
        let sizes: Vec<usize> = comp
            .iter()
            .map(|x| f.iter().filter(|&&y| y == x.0).count())
            .collect();
        if sizes.windows(2).any(|w| w[0] != w[1]) {
            push(
                Rule::FiberSize,
                format!("fibers over a connected part of the target have sizes {sizes:?}"),
            );
        }
    }

    Verdict {
        kind,
        violations: out,
    }
}

/// `q ∘ p`, mapping the source of `p` onto the target of `q`.
pub fn compose(p: &CoverProjection, q: &CoverProjection) -> Result<CoverProjection> {
    if p.target != q.source {
        return Err(Error::MalformedProjection(
            "middle graphs of the composition differ".into(),
        ));
    }
    CoverProjection::new(
        p.source.clone(),
        q.target.clone(),
        p.vertex_map.iter().map(|&x| q.vertex_map[x]).collect(),
        p.edge_map.iter().map(|&t| q.edge_map[t]).collect(),
    )
}

/// Number of sheets of a verified projection onto a connected target.
pub fn fold_count(p: &CoverProjection) -> Result<usize> {
    if !p.target.is_connected() {
        return Err(Error::Unsupported(
            "fold count needs a connected target".into(),
        ));
    }
    let cover = verify_cover(p);
    if !cover.is_ok() && !verify_semicover(p).is_ok() {
        return Err(Error::MalformedProjection(format!(
            "projection does not verify: {}",
            cover.violations[0]
        )));
    }
    Ok(p.source.vertex_count() / p.target.vertex_count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{catalog, make_dumbbell, make_flower};

    fn k4_onto_w10201() -> CoverProjection {
        // pairs {0,1} and {2,3}; edge 01 and 23 go to the semi-edges, the
        // rest to the two parallel edges
        let k4 = catalog("K4").unwrap().graph; // 01 02 03 12 13 23
        let w = make_dumbbell(1, 0, 2, 0, 1); // s0, e01, e01, s1
        CoverProjection::new(k4, w, vec![0, 0, 1, 1], vec![0, 1, 2, 2, 1, 3]).unwrap()
    }

    #[test]
    fn identity_is_a_cover() {
        let k4 = catalog("K4").unwrap().graph;
        let id = CoverProjection::identity(&k4);
        assert!(verify_cover(&id).is_ok());
        assert_eq!(fold_count(&id).unwrap(), 1);
    }

    #[test]
    fn k4_double_covers_w10201() {
        let p = k4_onto_w10201();
        let v = verify_cover(&p);
        assert!(v.is_ok(), "{:?}", v.violations);
        assert_eq!(fold_count(&p).unwrap(), 2);
    }

    #[test]
    fn semi_to_loop_needs_semicover() {
        let p = CoverProjection::new(make_flower(3, 0), make_flower(1, 1), vec![0], vec![0, 1, 1])
            .unwrap();
        let strict = verify_cover(&p);
        assert!(!strict.is_ok());
        assert!(strict.violations.iter().any(|v| v.rule == Rule::EdgeKind));
        assert!(verify_semicover(&p).is_ok());
    }

    #[test]
    fn loop_to_semi_is_rejected() {
        let p = CoverProjection::new(make_flower(1, 1), make_flower(3, 0), vec![0], vec![0, 1])
            .unwrap();
        assert!(!verify_semicover(&p).is_ok());
    }

    #[test]
    fn folding_semi_pairs_onto_a_loop() {
        // W(2,0,1,0,2): s0 s0 e01 s1 s1 ; W(0,1,1,0,2): l0 e01 s1 s1
        let a = make_dumbbell(2, 0, 1, 0, 2);
        let b = make_dumbbell(0, 1, 1, 0, 2);
        let p = CoverProjection::new(a, b, vec![0, 1], vec![0, 0, 1, 2, 3]).unwrap();
        assert!(verify_semicover(&p).is_ok());
        assert!(!verify_cover(&p).is_ok());
    }

    #[test]
    fn malformed_maps() {
        let k4 = catalog("K4").unwrap().graph;
        assert!(CoverProjection::new(k4.clone(), k4.clone(), vec![0; 3], vec![0; 6]).is_err());
        assert!(
            CoverProjection::new(k4.clone(), k4.clone(), vec![0, 1, 2, 4], vec![0; 6]).is_err()
        );
        assert!(CoverProjection::new(k4.clone(), k4, vec![0; 4], vec![0; 5]).is_err());
    }

    #[test]
    fn double_cover_fails_perfect_matching_rule() {
        // both vertices of K4's pair {0,1}: send edge 01 to the shared edge
        let k4 = catalog("K4").unwrap().graph;
        let w = make_dumbbell(1, 0, 2, 0, 1);
        let p = CoverProjection::new(k4, w, vec![0, 0, 1, 1], vec![0, 1, 1, 2, 2, 3]).unwrap();
        let v = verify_cover(&p);
        assert!(v.violations.iter().any(|v| v.rule == Rule::Fiber));
    }

    #[test]
    fn composition() {
        let p = k4_onto_w10201();
        let w = p.target().clone();
        // W(1,0,2,0,1) onto F(3,0): both vertices to 0, semis and one normal
        // edge to distinct semi-edges
        let q = CoverProjection::new(w, make_flower(3, 0), vec![0, 0], vec![0, 1, 2, 0]).unwrap();
        assert!(verify_cover(&q).is_ok());
        let r = compose(&p, &q).unwrap();
        assert!(verify_cover(&r).is_ok());
        assert_eq!(fold_count(&r).unwrap(), 4);
        let id = CoverProjection::identity(p.source());
        assert_eq!(compose(&id, &id).unwrap(), id);
        assert!(compose(&q, &p).is_err());
    }
}
