//! Pairwise cover and stronger-than relations over a list of graphs.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde_json::{json, Value};

use super::{decide_stronger, StrongerEvidence};
use crate::catalog::{catalog, SMALL_CUBIC};
use crate::covers::CoverProjection;
use crate::error::{Error, Result};
use crate::graph::Multigraph;

/// Vertex cap for graphs entering a poset.
pub const POSET_VERTEX_CAP: usize = 8;

#[derive(Debug, Clone)]
pub struct PosetReport {
    pub nodes: Vec<String>,
    pub budget: usize,
    /// `stronger[i][j]` decides `nodes[i] ▷ nodes[j]`; the diagonal holds
    /// identity covers.
    pub stronger: Vec<Vec<StrongerEvidence>>,
}

impl PosetReport {
    pub fn covers(&self, i: usize, j: usize) -> bool {
        matches!(self.stronger[i][j], StrongerEvidence::StrongerByCover(_))
    }

    pub fn is_stronger(&self, i: usize, j: usize) -> bool {
        self.stronger[i][j].verdict() == Some(true)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n == name)
    }

    pub fn cover_matrix(&self) -> Vec<Vec<bool>> {
        self.matrix(|i, j| self.covers(i, j))
    }

    pub fn stronger_matrix(&self) -> Vec<Vec<bool>> {
        self.matrix(|i, j| self.is_stronger(i, j))
    }

    fn matrix(&self, f: impl Fn(usize, usize) -> bool) -> Vec<Vec<bool>> {
        let n = self.nodes.len();
        (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect()
    }

    /// Ordered pairs left undecided.
    pub fn unknown_pairs(&self) -> Vec<(usize, usize)> {
        self.pairs(|i, j| self.stronger[i][j].verdict().is_none())
    }

    fn pairs(&self, f: impl Fn(usize, usize) -> bool) -> Vec<(usize, usize)> {
        let n = self.nodes.len();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j && f(i, j))
            .collect()
    }

    /// Hasse diagram of the cover relation.
    pub fn green_edges(&self) -> Vec<(usize, usize)> {
        reduction(&self.cover_matrix())
    }

    /// Hasse edges of the stronger relation that are not covers.
    pub fn purple_edges(&self) -> Vec<(usize, usize)> {
        let cover = self.cover_matrix();
        reduction(&self.stronger_matrix())
            .into_iter()
            .filter(|&(i, j)| !cover[i][j])
            .collect()
    }

    /// Covers imply stronger, and both relations are transitively closed.
    pub fn is_consistent(&self) -> bool {
        let c = self.cover_matrix();
        let s = self.stronger_matrix();
        let n = self.nodes.len();
        let closed = |r: &Vec<Vec<bool>>| {
            (0..n).all(|i| (0..n).all(|j| !r[i][j] || (0..n).all(|k| !r[j][k] || r[i][k])))
        };
        (0..n).all(|i| (0..n).all(|j| !c[i][j] || s[i][j])) && closed(&c) && closed(&s)
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph poset {\n  rankdir=BT;\n");
        for name in &self.nodes {
            writeln!(s, "  \"{name}\";").unwrap();
        }
        for (i, j) in self.green_edges() {
            writeln!(
                s,
                "  \"{}\" -> \"{}\" [color=green];",
                self.nodes[i], self.nodes[j]
            )
            .unwrap();
        }
        for (i, j) in self.purple_edges() {
            writeln!(
                s,
                "  \"{}\" -> \"{}\" [color=purple];",
                self.nodes[i], self.nodes[j]
            )
            .unwrap();
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> Value {
        let names = |edges: Vec<(usize, usize)>| -> Vec<[&str; 2]> {
            edges
                .into_iter()
                .map(|(i, j)| [self.nodes[i].as_str(), self.nodes[j].as_str()])
                .collect()
        };
        let mut cells: BTreeMap<&str, BTreeMap<&str, &str>> = BTreeMap::new();
        for (i, j) in self.pairs(|_, _| true) {
            cells
                .entry(self.nodes[i].as_str())
                .or_default()
                .insert(self.nodes[j].as_str(), self.stronger[i][j].label());
        }
        json!({
            "nodes": self.nodes,
            "budget": self.budget,
            "evidence": cells,
            "green": names(self.green_edges()),
            "purple": names(self.purple_edges()),
            "unknown": names(self.unknown_pairs()),
        })
    }
}

/// Transitive reduction of an irreflexive reading of `r`.
fn reduction(r: &[Vec<bool>]) -> Vec<(usize, usize)> {
    let n = r.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j || !r[i][j] {
                continue;
            }
            let implied =
                (0..n).any(|k| k != i && k != j && r[i][k] && r[k][j] && !(r[k][i] && r[j][k]));
            if !implied {
                out.push((i, j));
            }
        }
    }
    out
}

/// Decides every ordered pair, spreading the pairs over worker threads.
pub fn cover_poset(graphs: &[(String, Multigraph)], budget: usize) -> Result<PosetReport> {
    for (name, g) in graphs {
        if !g.is_connected() {
            return Err(Error::Precondition(format!("{name} is not connected")));
        }
        if g.vertex_count() > POSET_VERTEX_CAP {
            return Err(Error::CapExceeded(format!(
                "{name} has {} vertices; posets take at most {POSET_VERTEX_CAP}",
                g.vertex_count()
            )));
        }
    }
    let n = graphs.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j)
        .collect();
    let results: Mutex<Vec<Option<Result<StrongerEvidence>>>> = Mutex::new(vec![None; pairs.len()]);
    let next = AtomicUsize::new(0);
    let workers = std::thread::available_parallelism()
        .map_or(1, |w| w.get())
        .min(pairs.len())
        .max(1);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let t = next.fetch_add(1, Ordering::Relaxed);
                let Some(&(i, j)) = pairs.get(t) else { break };
                let r = decide_stronger(&graphs[i].1, &graphs[j].1, budget);
                results.lock().expect("no worker panicked")[t] = Some(r);
            });
        }
    });
    let mut stronger: Vec<Vec<StrongerEvidence>> = graphs
        .iter()
        .map(|(_, g)| vec![StrongerEvidence::StrongerByCover(CoverProjection::identity(g)); n])
        .collect();
    for (t, r) in results
        .into_inner()
        .expect("no worker panicked")
        .into_iter()
        .enumerate()
    {
        let (i, j) = pairs[t];
        stronger[i][j] = r.expect("every pair was decided")?;
    }
    Ok(PosetReport {
        nodes: graphs.iter().map(|(name, _)| name.clone()).collect(),
        budget,
        stronger,
    })
}

/// The twelve small cubic graphs with at most four vertices.
pub fn figure5_graphs() -> Vec<(String, Multigraph)> {
    SMALL_CUBIC
        .iter()
        .map(|name| {
            (
                name.to_string(),
                catalog(name).expect("catalog entry").graph,
            )
        })
        .collect()
}

pub fn figure5_report(budget: usize) -> Result<PosetReport> {
    cover_poset(&figure5_graphs(), budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stronger::DEFAULT_BUDGET;

    fn named(names: &[&str]) -> Vec<(String, Multigraph)> {
        names
            .iter()
            .map(|n| (n.to_string(), catalog(n).unwrap().graph))
            .collect()
    }

    #[test]
    fn single_graph() {
        let r = cover_poset(&named(&["K4"]), DEFAULT_BUDGET).unwrap();
        assert!(r.green_edges().is_empty() && r.purple_edges().is_empty());
        assert!(r.covers(0, 0));
    }

    #[test]
    fn flowers() {
        let r = cover_poset(&named(&["F(3,0)", "F(1,1)"]), DEFAULT_BUDGET).unwrap();
        assert!(r.green_edges().is_empty());
        assert_eq!(r.purple_edges(), vec![(0, 1)]);
        assert!(r.is_consistent());
        assert!(r
            .to_dot()
            .contains("\"F(3,0)\" -> \"F(1,1)\" [color=purple];"));
        assert_eq!(r.to_json()["purple"][0][1], "F(1,1)");
    }

    #[test]
    fn caps() {
        assert!(cover_poset(&named(&["Petersen"]), DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn reduction_skips_implied_pairs() {
        let t = true;
        let f = false;
        let r = vec![vec![t, t, t], vec![f, t, t], vec![f, f, t]];
        assert_eq!(reduction(&r), vec![(0, 1), (1, 2)]);
    }
}
