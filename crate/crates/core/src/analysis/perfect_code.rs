//! 1-perfect codes in the underlying simple graph.

use crate::graph::{Multigraph, VertexId};

fn neighbours(g: &Multigraph) -> Vec<Vec<usize>> {
    g.vertices()
        .map(|v| {
            g.neighbor_multiplicities(v)
                .into_iter()
                .map(|(w, _)| w)
                .collect()
        })
        .collect()
}

/// Independent, and every other vertex has exactly one neighbour in `code`.
pub fn is_perfect_code(g: &Multigraph, code: &[usize]) -> bool {
    let nb = neighbours(g);
    let mut inside = vec![false; g.vertex_count()];
    for &c in code {
        if c >= inside.len() {
            return false;
        }
        inside[c] = true;
    }
    g.vertices().all(|VertexId(v)| {
        let hits = nb[v].iter().filter(|&&w| inside[w]).count();
        if inside[v] {
            hits == 0
        } else {
            hits == 1
        }
    })
}

/// The first perfect code in lexicographic search order, sorted.
pub fn has_perfect_code(g: &Multigraph) -> Option<Vec<usize>> {
    let nb = neighbours(g);
    let n = g.vertex_count();
    let mut state = Code {
        nb: &nb,
        covered: vec![false; n],
        code: Vec::new(),
    };
    if state.search() {
        let mut c = state.code;
        c.sort_unstable();
        debug_assert!(is_perfect_code(g, &c));
        Some(c)
    } else {
        None
    }
}

struct Code<'a> {
    nb: &'a [Vec<usize>],
    /// In the code or adjacent to it.
    covered: Vec<bool>,
    code: Vec<usize>,
}

impl Code<'_> {
    fn search(&mut self) -> bool {
        let Some(v) = (0..self.covered.len()).find(|&v| !self.covered[v]) else {
            return true;
        };
        let mut options = vec![v];
        options.extend(self.nb[v].iter().copied());
        options.sort_unstable();
        for u in options {
            // u and its whole neighbourhood must still be uncovered
            if self.covered[u] || self.nb[u].iter().any(|&w| self.covered[w]) {
                continue;
            }
            self.covered[u] = true;
            for &w in &self.nb[u] {
                self.covered[w] = true;
            }
            self.code.push(u);
            if self.search() {
                return true;
            }
            self.code.pop();
            self.covered[u] = false;
            for &w in &self.nb[u] {
                self.covered[w] = false;
            }
        }
        false
    }
}
