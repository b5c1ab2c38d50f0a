//! Vertex sets whose removal leaves more odd components than their size.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Multigraph, VertexId};

/// Largest graph accepted by [`minimal_good_sets`].
pub const GOOD_SET_VERTEX_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoodSet {
    /// Sorted vertex ids.
    pub vertices: Vec<usize>,
    pub odd_components: usize,
    pub very_good: bool,
}

/// Number of components of odd order in `g - removed`.
pub fn odd_components_without(g: &Multigraph, removed: &[bool]) -> usize {
    let labels = g.component_labels_filtered(|v| !removed[v], |_| true);
    let count = labels
        .iter()
        .filter(|&&l| l != usize::MAX)
        .max()
        .map_or(0, |m| m + 1);
    let mut sizes = vec![0usize; count];
    for &l in &labels {
        if l != usize::MAX {
            sizes[l] += 1;
        }
    }
    sizes.iter().filter(|&&s| s % 2 == 1).count()
}

fn mask_of(g: &Multigraph, x: &[usize]) -> Vec<bool> {
    let mut m = vec![false; g.vertex_count()];
    for &v in x {
        m[v] = true;
    }
    m
}

pub fn is_good_set(g: &Multigraph, x: &[usize]) -> bool {
    odd_components_without(g, &mask_of(g, x)) > x.len()
}

/// Good, and no loop or parallel edge touches `x`.
pub fn is_very_good_set(g: &Multigraph, x: &[usize]) -> bool {
    if !is_good_set(g, x) {
        return false;
    }
    let inside = mask_of(g, x);
    if x.iter().any(|&v| g.loops_at(VertexId(v)) > 0) {
        return false;
    }
    g.normal_bundles()
        .iter()
        .all(|(&(u, v), ids)| ids.len() == 1 || (!inside[u] && !inside[v]))
}

/// Every inclusion-minimal good set, ordered lexicographically by vertex
/// list. Rejects semi-edges and graphs above [`GOOD_SET_VERTEX_CAP`].
pub fn minimal_good_sets(g: &Multigraph) -> Result<Vec<GoodSet>> {
    if g.has_semi_edges() {
        return Err(Error::Unsupported(
            "good sets are defined for graphs without semi-edges".into(),
        ));
    }
    let n = g.vertex_count();
    if n > GOOD_SET_VERTEX_CAP {
        return Err(Error::CapExceeded(format!(
            "good-set enumeration is limited to {GOOD_SET_VERTEX_CAP} vertices, got {n}"
        )));
    }
    let mut masks: Vec<u32> = (0..1u32 << n).collect();
    masks.sort_by_key(|m| m.count_ones());
    let mut minimal: Vec<u32> = Vec::new();
    let mut removed = vec![false; n];
    for mask in masks {
        if minimal.iter().any(|&m| m & mask == m) {
            continue;
        }
        for (v, r) in removed.iter_mut().enumerate() {
            *r = mask >> v & 1 == 1;
        }
        if odd_components_without(g, &removed) > mask.count_ones() as usize {
            minimal.push(mask);
        }
    }
    let mut out: Vec<GoodSet> = minimal
        .into_iter()
        .map(|mask| {
            let vertices: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
            let removed = mask_of(g, &vertices);
            GoodSet {
                odd_components: odd_components_without(g, &removed),
                very_good: is_very_good_set(g, &vertices),
                vertices,
            }
        })
        .collect();
    out.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::has_perfect_matching;
    use crate::catalog::{catalog, cycle};

    fn g(name: &str) -> Multigraph {
        catalog(name).unwrap().graph
    }

    #[test]
    fn loopy_claw_centre() {
        let sets = minimal_good_sets(&g("LC")).unwrap();
        assert_eq!(sets.len(), 1);
        assert_eq!(sets[0].vertices, vec![0]);
        assert_eq!(sets[0].odd_components, 3);
        assert!(sets[0].very_good);
        // brute-force oracle over all 16 subsets
        let lc = g("LC");
        let good: Vec<u32> = (0u32..16)
            .filter(|&m| {
                let x: Vec<usize> = (0..4).filter(|v| m >> v & 1 == 1).collect();
                is_good_set(&lc, &x)
            })
            .collect();
        assert!(good.iter().all(|&m| m & 1 == 1));
    }

    #[test]
    fn graphs_with_perfect_matchings_have_none() {
        for name in ["K4", "SG", "DG", "Petersen", "WG"] {
            assert!(has_perfect_matching(&g(name)).is_some());
            assert!(minimal_good_sets(&g(name)).unwrap().is_empty(), "{name}");
        }
    }

    #[test]
    fn odd_cycle_has_the_empty_good_set() {
        let sets = minimal_good_sets(&cycle(5)).unwrap();
        assert_eq!(sets.len(), 1);
        assert!(sets[0].vertices.is_empty());
    }

    #[test]
    fn rejections() {
        assert!(minimal_good_sets(&g("F(3,0)")).is_err());
        assert!(minimal_good_sets(&cycle(21)).is_err());
    }
}
