//! The two canonical double covers of a multigraph.
//!
//! Both products place copy `s` of base vertex `v` at id `2v + s`. Edges
//! are emitted in source order: a normal edge or loop yields two
//! consecutive ids (copy 0 then copy 1), a semi-edge yields one.

use crate::covers::CoverProjection;
use crate::graph::{EdgeKind, Multigraph};

/// Vertex id of copy `side` of `base` in either product.
pub fn doubled(base: usize, side: usize) -> usize {
    2 * base + side
}

fn build(g: &Multigraph, crossed: bool) -> (Multigraph, CoverProjection) {
    let mut edges = Vec::with_capacity(2 * g.edge_count());
    let mut edge_map = Vec::with_capacity(2 * g.edge_count());
    for (id, e) in g.edges() {
        match e {
            EdgeKind::Normal(u, v) => {
                let (u, v) = (u.0, v.0);
                if crossed {
                    edges.push(EdgeKind::normal(doubled(u, 0), doubled(v, 1)));
                    edges.push(EdgeKind::normal(doubled(u, 1), doubled(v, 0)));
                } else {
                    edges.push(EdgeKind::normal(doubled(u, 0), doubled(v, 0)));
                    edges.push(EdgeKind::normal(doubled(u, 1), doubled(v, 1)));
                }
                edge_map.extend([id.0, id.0]);
            }
            EdgeKind::Loop(v) => {
                let v = v.0;
                if crossed {
                    edges.push(EdgeKind::normal(doubled(v, 0), doubled(v, 1)));
                    edges.push(EdgeKind::normal(doubled(v, 0), doubled(v, 1)));
                } else {
                    edges.push(EdgeKind::looped(doubled(v, 0)));
                    edges.push(EdgeKind::looped(doubled(v, 1)));
                }
                edge_map.extend([id.0, id.0]);
            }
            EdgeKind::Semi(v) => {
                edges.push(EdgeKind::normal(doubled(v.0, 0), doubled(v.0, 1)));
                edge_map.push(id.0);
            }
        }
    }
    let product = Multigraph::new(2 * g.vertex_count(), edges).expect("product is valid");
    let vertex_map = (0..product.vertex_count()).map(|v| v / 2).collect();
    let projection = CoverProjection::new(product.clone(), g.clone(), vertex_map, edge_map)
        .expect("canonical projection is total");
    (product, projection)
}

/// `G×K2`: every edge of the product joins the two sides, so the result is
/// bipartite. Returns the product and its projection onto `g`.
pub fn times_k2(g: &Multigraph) -> (Multigraph, CoverProjection) {
    build(g, true)
}

/// Two parallel copies of `g` with each semi-edge turned into a rung
/// between the copies. Returns the product and its projection onto `g`.
pub fn odot(g: &Multigraph) -> (Multigraph, CoverProjection) {
    build(g, false)
}
