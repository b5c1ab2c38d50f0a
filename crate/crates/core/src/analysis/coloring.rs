//! Exact chromatic index.

use serde::Serialize;

use crate::graph::{EdgeKind, Multigraph};

/// Colour per edge; every colour class has maximum degree at most 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeColoring {
    pub colors: Vec<usize>,
    pub palette_size: usize,
}

impl EdgeColoring {
    /// No two edges of one colour share a vertex, and there are no loops.
    pub fn is_proper(&self, g: &Multigraph) -> bool {
        if self.colors.len() != g.edge_count() || g.has_loops() {
            return false;
        }
        if self.colors.iter().any(|&c| c >= self.palette_size) {
            return false;
        }
        g.vertices().all(|v| {
            let mut seen: Vec<usize> = g.incident(v).iter().map(|e| self.colors[e.0]).collect();
            let n = seen.len();
            seen.sort_unstable();
            seen.dedup();
            seen.len() == n
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ChromaticIndex {
    Finite(EdgeColoring),
    /// The graph has a loop.
    Infinite,
}

impl ChromaticIndex {
    pub fn value(&self) -> Option<usize> {
        match self {
            ChromaticIndex::Finite(c) => Some(c.palette_size),
            ChromaticIndex::Infinite => None,
        }
    }

    /// Strictly more than `k` colours are needed (always true when infinite).
    pub fn exceeds(&self, k: usize) -> bool {
        self.value().is_none_or(|v| v > k)
    }
}

pub fn chromatic_index(g: &Multigraph) -> ChromaticIndex {
    if g.has_loops() {
        return ChromaticIndex::Infinite;
    }
    let delta = g.max_degree();
    // Shannon's bound holds for multigraphs; semi-edges behave as pendant edges
    for k in delta..=(3 * delta / 2).max(delta) {
        if let Some(colors) = edge_coloring(g, k) {
            return ChromaticIndex::Finite(EdgeColoring {
                colors,
                palette_size: k,
            });
        }
    }
    unreachable!("Shannon's bound failed for a loopless multigraph")
}

/// A proper colouring with at most `k` colours, if one exists.
pub fn edge_coloring(g: &Multigraph, k: usize) -> Option<Vec<usize>> {
    if g.has_loops() || k > 64 {
        return None;
    }
    if g.max_degree() > k {
        return None;
    }
    let ends: Vec<(usize, usize)> = g
        .edge_kinds()
        .iter()
        .map(|e| match *e {
            EdgeKind::Normal(u, v) => (u.0, v.0),
            EdgeKind::Semi(v) => (v.0, v.0),
            EdgeKind::Loop(_) => unreachable!(),
        })
        .collect();
    let mut s = Colorer {
        ends,
        used: vec![0; g.vertex_count()],
        color: vec![usize::MAX; g.edge_count()],
        full: if k == 64 { u64::MAX } else { (1u64 << k) - 1 },
        highest: 0,
    };
    if s.search() {
        Some(s.color)
    } else {
        None
    }
}

struct Colorer {
    ends: Vec<(usize, usize)>,
    used: Vec<u64>,
    color: Vec<usize>,
    full: u64,
    /// Number of distinct colours used so far (colours are introduced in order).
    highest: usize,
}

impl Colorer {
    fn available(&self, e: usize) -> u64 {
        let (a, b) = self.ends[e];
        self.full & !(self.used[a] | self.used[b])
    }

    fn search(&mut self) -> bool {
        let mut best: Option<(u32, usize)> = None;
        for e in 0..self.ends.len() {
            if self.color[e] != usize::MAX {
                continue;
            }
            let avail = self.available(e);
            // colours above `highest` are interchangeable; count one of them
            let fresh_mask = if self.highest >= 64 {
                0
            } else {
                self.full & !((1u64 << self.highest) - 1)
            };
            let old = avail & !fresh_mask;
            let choices = old.count_ones() + u32::from(avail & fresh_mask != 0);
            if choices == 0 {
                return false;
            }
            if best.is_none_or(|(c, _)| choices < c) {
                best = Some((choices, e));
                if choices == 1 {
                    break;
                }
            }
        }
        let Some((_, e)) = best else {
            return true;
        };
        let (a, b) = self.ends[e];
        let avail = self.available(e);
        for c in 0..self.highest.saturating_add(1).min(64) {
            if avail >> c & 1 == 0 {
                continue;
            }
            let prev = self.highest;
            self.highest = self.highest.max(c + 1);
            self.color[e] = c;
            self.used[a] |= 1 << c;
            self.used[b] |= 1 << c;
            if self.search() {
                return true;
            }
            self.used[a] &= !(1 << c);
            self.used[b] &= !(1 << c);
            self.color[e] = usize::MAX;
            self.highest = prev;
        }
        false
    }
}
