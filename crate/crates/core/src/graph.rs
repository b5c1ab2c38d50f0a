//! Multigraphs with normal edges, loops and semi-edges.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Index into the vertex table of a [`Multigraph`]. Ids are dense, `0..n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

/// Index into the edge list of a [`Multigraph`]. Ids are dense, `0..m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The three kinds of edges. A normal edge joins two distinct vertices; a
/// loop adds 2 to the degree of its vertex; a semi-edge adds 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    Normal(VertexId, VertexId),
    Loop(VertexId),
    Semi(VertexId),
}

impl EdgeKind {
    pub fn normal(u: usize, v: usize) -> Self {
        EdgeKind::Normal(VertexId(u), VertexId(v))
    }

    pub fn looped(v: usize) -> Self {
        EdgeKind::Loop(VertexId(v))
    }

    pub fn semi(v: usize) -> Self {
        EdgeKind::Semi(VertexId(v))
    }

    /// Endpoints as a pair; loops and semi-edges repeat their single vertex.
    pub fn ends(&self) -> (usize, usize) {
        match *self {
            EdgeKind::Normal(u, v) => (u.0, v.0),
            EdgeKind::Loop(v) | EdgeKind::Semi(v) => (v.0, v.0),
        }
    }

    pub fn is_normal(&self) -> bool {
        matches!(self, EdgeKind::Normal(..))
    }

    pub fn is_loop(&self) -> bool {
        matches!(self, EdgeKind::Loop(_))
    }

    pub fn is_semi(&self) -> bool {
        matches!(self, EdgeKind::Semi(_))
    }

    pub fn touches(&self, v: usize) -> bool {
        let (a, b) = self.ends();
        a == v || b == v
    }
}

/// An undirected multigraph that may contain loops, parallel edges and
/// semi-edges. Immutable once built; edge order is part of its identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    vertex_count: usize,
    edges: Vec<EdgeKind>,
    incidence: Vec<Vec<EdgeId>>,
}

impl Multigraph {
    pub fn new(vertex_count: usize, edges: Vec<EdgeKind>) -> Result<Self> {
        for (i, e) in edges.iter().enumerate() {
            let (a, b) = e.ends();
            if a >= vertex_count || b >= vertex_count {
                return Err(Error::InvalidGraph(format!(
                    "edge {i} references vertex {} but the graph has {vertex_count} vertices",
                    a.max(b)
                )));
            }
            if let EdgeKind::Normal(u, v) = e {
                if u == v {
                    return Err(Error::InvalidGraph(format!(
                        "edge {i} is a normal edge with equal endpoints {u}; declare it as a loop"
                    )));
                }
            }
        }
        let mut incidence = vec![Vec::new(); vertex_count];
        for (i, e) in edges.iter().enumerate() {
            let (a, b) = e.ends();
            incidence[a].push(EdgeId(i));
            if a != b {
                incidence[b].push(EdgeId(i));
            }
        }
        Ok(Multigraph {
            vertex_count,
            edges,
            incidence,
        })
    }

    /// Graph without edges.
    pub fn empty(vertex_count: usize) -> Self {
        Multigraph::new(vertex_count, Vec::new()).expect("edgeless graph is valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertex_count).map(VertexId)
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, EdgeKind)> + '_ {
        self.edges.iter().enumerate().map(|(i, &e)| (EdgeId(i), e))
    }

    pub fn edge_kinds(&self) -> &[EdgeKind] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> EdgeKind {
        self.edges[e.0]
    }

    /// Edges incident with `v`, each listed once (a loop appears once).
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.incidence[v.0]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incidence[v.0]
            .iter()
            .map(|&e| match self.edges[e.0] {
                EdgeKind::Loop(_) => 2,
                _ => 1,
            })
            .sum()
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn is_regular(&self, d: usize) -> bool {
        self.vertices().all(|v| self.degree(v) == d)
    }

    pub fn is_cubic(&self) -> bool {
        self.is_regular(3)
    }

    pub fn loops_at(&self, v: VertexId) -> usize {
        self.incidence[v.0]
            .iter()
            .filter(|e| self.edges[e.0].is_loop())
            .count()
    }

    pub fn semis_at(&self, v: VertexId) -> usize {
        self.incidence[v.0]
            .iter()
            .filter(|e| self.edges[e.0].is_semi())
            .count()
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|e| e.is_loop()).count()
    }

    pub fn semi_count(&self) -> usize {
        self.edges.iter().filter(|e| e.is_semi()).count()
    }

    pub fn normal_count(&self) -> usize {
        self.edges.iter().filter(|e| e.is_normal()).count()
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(|e| e.is_loop())
    }

    pub fn has_semi_edges(&self) -> bool {
        self.edges.iter().any(|e| e.is_semi())
    }

    /// Normal edges between each unordered pair, keyed by `(min, max)`.
    pub fn normal_bundles(&self) -> BTreeMap<(usize, usize), Vec<EdgeId>> {
        let mut bundles: BTreeMap<(usize, usize), Vec<EdgeId>> = BTreeMap::new();
        for (id, e) in self.edges() {
            if let EdgeKind::Normal(u, v) = e {
                bundles
                    .entry((u.0.min(v.0), u.0.max(v.0)))
                    .or_default()
                    .push(id);
            }
        }
        bundles
    }

    pub fn multiplicity(&self, u: VertexId, v: VertexId) -> usize {
        if u == v {
            return 0;
        }
        self.incidence[u.0]
            .iter()
            .filter(|e| match self.edges[e.0] {
                EdgeKind::Normal(a, b) => (a == u && b == v) || (a == v && b == u),
                _ => false,
            })
            .count()
    }

    pub fn max_multiplicity(&self) -> usize {
        self.normal_bundles()
            .values()
            .map(Vec::len)
            .max()
            .unwrap_or(0)
    }

    /// Distinct normal neighbours of `v` with the number of parallel edges to each.
    pub fn neighbor_multiplicities(&self, v: VertexId) -> Vec<(usize, usize)> {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for &e in &self.incidence[v.0] {
            if let EdgeKind::Normal(a, b) = self.edges[e.0] {
                let w = if a == v { b } else { a };
                *counts.entry(w.0).or_insert(0) += 1;
            }
        }
        counts.into_iter().collect()
    }

    /// No loops, no semi-edges, no parallel normal edges.
    pub fn is_simple(&self) -> bool {
        !self.has_loops()
            && !self.has_semi_edges()
            && self.normal_bundles().values().all(|b| b.len() == 1)
    }

    /// Proper 2-colouring if one exists. Graphs with loops or semi-edges are
    /// never bipartite.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        if self.has_loops() || self.has_semi_edges() {
            return None;
        }
        let mut side: Vec<Option<bool>> = vec![None; self.vertex_count];
        let mut queue = std::collections::VecDeque::new();
        for s in 0..self.vertex_count {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                let su = side[u].unwrap();
                for &e in &self.incidence[u] {
                    let (a, b) = self.edges[e.0].ends();
                    let w = if a == u { b } else { a };
                    match side[w] {
                        None => {
                            side[w] = Some(!su);
                            queue.push_back(w);
                        }
                        Some(sw) if sw == su => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(|s| s.unwrap()).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Component index of each vertex, numbered in order of smallest member.
    pub fn component_labels(&self) -> Vec<usize> {
        self.component_labels_filtered(|_| true, |_| true)
    }

    /// Components of the subgraph induced by vertices passing `keep_vertex`
    /// using edges passing `keep_edge`. Removed vertices get `usize::MAX`.
    pub(crate) fn component_labels_filtered(
        &self,
        keep_vertex: impl Fn(usize) -> bool,
        keep_edge: impl Fn(usize) -> bool,
    ) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.vertex_count];
        let mut next = 0;
        let mut stack = Vec::new();
        for s in 0..self.vertex_count {
            if label[s] != usize::MAX || !keep_vertex(s) {
                continue;
            }
            label[s] = next;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &e in &self.incidence[u] {
                    if !keep_edge(e.0) {
                        continue;
                    }
                    let (a, b) = self.edges[e.0].ends();
                    let w = if a == u { b } else { a };
                    if label[w] == usize::MAX && keep_vertex(w) {
                        label[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn connected_components(&self) -> Vec<Vec<VertexId>> {
        let labels = self.component_labels();
        let count = labels.iter().copied().max().map_or(0, |m| m + 1);
        let mut comps = vec![Vec::new(); count];
        for (v, &l) in labels.iter().enumerate() {
            comps[l].push(VertexId(v));
        }
        comps
    }

    pub fn component_count(&self) -> usize {
        self.connected_components().len()
    }

    /// At least one vertex and a single component.
    pub fn is_connected(&self) -> bool {
        self.vertex_count > 0 && self.component_count() == 1
    }

    /// Normal edges whose removal disconnects their endpoints.
    pub fn bridges(&self) -> Vec<EdgeId> {
        let n = self.vertex_count;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut timer = 0;
        let mut out = Vec::new();
        // iterative DFS; frames hold (vertex, edge used to enter, next incidence index)
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            let mut stack: Vec<(usize, Option<usize>, usize)> = vec![(root, None, 0)];
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            while let Some(top) = stack.last_mut() {
                let (u, parent_edge) = (top.0, top.1);
                if top.2 < self.incidence[u].len() {
                    let e = self.incidence[u][top.2].0;
                    top.2 += 1;
                    if Some(e) == parent_edge {
                        continue;
                    }
                    let EdgeKind::Normal(a, b) = self.edges[e] else {
                        continue;
                    };
                    let w = if a.0 == u { b.0 } else { a.0 };
                    if disc[w] == usize::MAX {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        stack.push((w, Some(e), 0));
                    } else {
                        low[u] = low[u].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _, _)) = stack.last() {
                        low[p] = low[p].min(low[u]);
                        if low[u] > disc[p] {
                            out.push(EdgeId(parent_edge.unwrap()));
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Vertices of `other` are shifted by `self.vertex_count()`; edges are
    /// appended after those of `self`.
    pub fn disjoint_union(&self, other: &Multigraph) -> Multigraph {
        let shift = self.vertex_count;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|e| shift_edge(*e, shift)));
        Multigraph::new(self.vertex_count + other.vertex_count, edges)
            .expect("union of valid graphs is valid")
    }

    /// Same graph with edge `e` replaced by one semi-edge at each endpoint
    /// (appended at the end of the edge list).
    pub fn split_edge(&self, e: EdgeId) -> Result<Multigraph> {
        let EdgeKind::Normal(u, v) = self.edges[e.0] else {
            return Err(Error::Precondition(format!(
                "edge {e} is not a normal edge"
            )));
        };
        let mut edges: Vec<EdgeKind> = self
            .edges()
            .filter(|&(id, _)| id != e)
            .map(|(_, k)| k)
            .collect();
        edges.push(EdgeKind::Semi(u));
        edges.push(EdgeKind::Semi(v));
        Multigraph::new(self.vertex_count, edges)
    }

    /// Subgraph induced by `vertices` (in the given order), optionally
    /// skipping one edge. Returns the subgraph with maps local→global for
    /// vertices and edges.
    pub fn induced_subgraph(
        &self,
        vertices: &[usize],
        skip_edge: Option<EdgeId>,
    ) -> (Multigraph, Vec<usize>, Vec<usize>) {
        let mut local = vec![usize::MAX; self.vertex_count];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut edges = Vec::new();
        let mut edge_map = Vec::new();
        for (id, e) in self.edges() {
            if Some(id) == skip_edge {
                continue;
            }
            let (a, b) = e.ends();
            if local[a] == usize::MAX || local[b] == usize::MAX {
                continue;
            }
            edges.push(match e {
                EdgeKind::Normal(..) => EdgeKind::normal(local[a], local[b]),
                EdgeKind::Loop(_) => EdgeKind::looped(local[a]),
                EdgeKind::Semi(_) => EdgeKind::semi(local[a]),
            });
            edge_map.push(id.0);
        }
        let g = Multigraph::new(vertices.len(), edges).expect("induced subgraph is valid");
        (g, vertices.to_vec(), edge_map)
    }
}

pub(crate) fn shift_edge(e: EdgeKind, shift: usize) -> EdgeKind {
    match e {
        EdgeKind::Normal(u, v) => EdgeKind::normal(u.0 + shift, v.0 + shift),
        EdgeKind::Loop(v) => EdgeKind::looped(v.0 + shift),
        EdgeKind::Semi(v) => EdgeKind::semi(v.0 + shift),
    }
}
