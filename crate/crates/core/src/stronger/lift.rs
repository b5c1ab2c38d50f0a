//! Exhaustive enumeration of simple connected `k`-fold covers by
//! permutation voltages.
//!
//! A spanning tree gets identity voltages. Every other normal edge and
//! loop gets a permutation of the fibre, every semi-edge a fixed-point-free
//! involution; each point assignment adds one lifted edge and is rejected
//! at once if that edge already exists. The first non-tree edge only takes
//! one representative per conjugacy class, since conjugating all voltages
//! at once yields an isomorphic lift.

use std::collections::HashSet;

use crate::canon::canonical_form;
use crate::covers::CoverProjection;
use crate::error::{Error, Result};
use crate::graph::{EdgeKind, Multigraph};

/// Largest lift (in vertices) the enumeration accepts.
pub const LIFT_VERTEX_CAP: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumStatus {
    /// Every cover was visited.
    Complete,
    /// The visitor asked to stop.
    Stopped,
    /// The node limit ran out first.
    LimitReached,
}

#[derive(Clone, Copy)]
enum Slot {
    Perm { a: usize, b: usize },
    Involution { a: usize },
}

struct Lifter<'a> {
    g: &'a Multigraph,
    k: usize,
    /// Non-tree edges in assignment order.
    slots: Vec<(usize, Slot)>,
    adj: Vec<u32>,
    /// Voltage per edge; `perm[e][i]` is the sheet reached from sheet `i`.
    perm: Vec<Vec<usize>>,
    nodes: u64,
    limit: Option<u64>,
    seen: HashSet<crate::canon::CanonicalForm>,
}

enum Flow {
    Go,
    Stop,
    Limit,
}

impl Lifter<'_> {
    fn at(&self, x: usize, i: usize) -> usize {
        x * self.k + i
    }

    fn try_add(&mut self, x: usize, y: usize) -> bool {
        if x == y || self.adj[x] >> y & 1 == 1 {
            return false;
        }
        self.adj[x] |= 1 << y;
        self.adj[y] |= 1 << x;
        true
    }

    fn remove(&mut self, x: usize, y: usize) {
        self.adj[x] &= !(1 << y);
        self.adj[y] &= !(1 << x);
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        self.limit.is_none_or(|l| self.nodes <= l)
    }

    /// Applies a full permutation for slot `s`; returns the lifted edges
    /// added so they can be undone, or `None` on a clash.
    fn apply_whole(&mut self, s: usize, p: &[usize]) -> Option<Vec<(usize, usize)>> {
        let (e, slot) = self.slots[s];
        let mut added = Vec::new();
        for i in 0..self.k {
            let (x, y, skip) = match slot {
                Slot::Perm { a, b } => (self.at(a, i), self.at(b, p[i]), false),
                Slot::Involution { a } => (self.at(a, i), self.at(a, p[i]), p[i] < i),
            };
            if skip {
                continue;
            }
            if !self.try_add(x, y) {
                for (x, y) in added {
                    self.remove(x, y);
                }
                return None;
            }
            added.push((x, y));
        }
        self.perm[e] = p.to_vec();
        Some(added)
    }

    fn run(&mut self, visit: &mut dyn FnMut(CoverProjection) -> bool) -> Result<Flow> {
        if self.slots.is_empty() {
            return self.leaf(visit);
        }
        for rep in representatives(self.slots[0].1, self.k) {
            if !self.tick() {
                return Ok(Flow::Limit);
            }
            let Some(added) = self.apply_whole(0, &rep) else {
                continue;
            };
            let flow = self.assign(1, 0, &mut vec![false; self.k], visit)?;
            for (x, y) in added {
                self.remove(x, y);
            }
            if !matches!(flow, Flow::Go) {
                return Ok(flow);
            }
        }
        Ok(Flow::Go)
    }

    /// Assigns point `i` of slot `s`; `used` marks taken images (or paired
    /// points for involutions).
    fn assign(
        &mut self,
        s: usize,
        i: usize,
        used: &mut Vec<bool>,
        visit: &mut dyn FnMut(CoverProjection) -> bool,
    ) -> Result<Flow> {
        if s == self.slots.len() {
            return self.leaf(visit);
        }
        let k = self.k;
        if i == k {
            return self.assign(s + 1, 0, &mut vec![false; k], visit);
        }
        let (e, slot) = self.slots[s];
        match slot {
            Slot::Perm { a, b } => {
                for j in 0..k {
                    if used[j] {
                        continue;
                    }
                    if !self.tick() {
                        return Ok(Flow::Limit);
                    }
                    let (x, y) = (self.at(a, i), self.at(b, j));
                    if !self.try_add(x, y) {
                        continue;
                    }
                    used[j] = true;
                    self.perm[e][i] = j;
                    let flow = self.assign(s, i + 1, used, visit)?;
                    used[j] = false;
                    self.remove(x, y);
                    if !matches!(flow, Flow::Go) {
                        return Ok(flow);
                    }
                }
                Ok(Flow::Go)
            }
            Slot::Involution { a } => {
                if used[i] {
                    return self.assign(s, i + 1, used, visit);
                }
                for j in i + 1..k {
                    if used[j] {
                        continue;
                    }
                    if !self.tick() {
                        return Ok(Flow::Limit);
                    }
                    let (x, y) = (self.at(a, i), self.at(a, j));
                    if !self.try_add(x, y) {
                        continue;
                    }
                    used[i] = true;
                    used[j] = true;
                    self.perm[e][i] = j;
                    self.perm[e][j] = i;
                    let flow = self.assign(s, i + 1, used, visit)?;
                    used[i] = false;
                    used[j] = false;
                    self.remove(x, y);
                    if !matches!(flow, Flow::Go) {
                        return Ok(flow);
                    }
                }
                Ok(Flow::Go)
            }
        }
    }

    fn connected(&self) -> bool {
        let total = self.adj.len();
        let mut seen: u32 = 1;
        let mut frontier: u32 = 1;
        while frontier != 0 {
            let mut next = 0;
            let mut f = frontier;
            while f != 0 {
                let x = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.adj[x];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen.count_ones() as usize == total
    }

    fn leaf(&mut self, visit: &mut dyn FnMut(CoverProjection) -> bool) -> Result<Flow> {
        if !self.connected() {
            return Ok(Flow::Go);
        }
        let k = self.k;
        let mut edges = Vec::new();
        let mut emap = Vec::new();
        for (id, e) in self.g.edges() {
            let p = &self.perm[id.0];
            for i in 0..k {
                let (x, y) = match e {
                    EdgeKind::Normal(a, b) => (self.at(a.0, i), self.at(b.0, p[i])),
                    EdgeKind::Loop(a) => (self.at(a.0, i), self.at(a.0, p[i])),
                    EdgeKind::Semi(a) => {
                        if p[i] < i {
                            continue;
                        }
                        (self.at(a.0, i), self.at(a.0, p[i]))
                    }
                };
                edges.push(EdgeKind::normal(x, y));
                emap.push(id.0);
            }
        }
        let n = self.g.vertex_count() * k;
        let h = Multigraph::new(n, edges)?;
        if !self.seen.insert(canonical_form(&h)) {
            return Ok(Flow::Go);
        }
        let proj = CoverProjection::new(h, self.g.clone(), (0..n).map(|x| x / k).collect(), emap)?;
        Ok(if visit(proj) { Flow::Go } else { Flow::Stop })
    }
}

/// Integer partitions of `n` into parts of at least `min`, parts
/// non-increasing.
fn partitions(n: usize, min: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (min..=max.min(n)).rev() {
            cur.push(part);
            go(n - part, part, min, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, min.max(1), &mut Vec::new(), &mut out);
    out
}

/// One permutation per conjugacy class admissible for the slot.
fn representatives(slot: Slot, k: usize) -> Vec<Vec<usize>> {
    let min = match slot {
        Slot::Involution { .. } => {
            return if k % 2 == 0 {
                vec![(0..k).map(|i| i ^ 1).collect()]
            } else {
                Vec::new()
            };
        }
        Slot::Perm { a, b } if a == b => 3,
        Slot::Perm { .. } => 1,
    };
    partitions(k, min)
        .into_iter()
        .map(|parts| {
            let mut p = vec![0; k];
            let mut start = 0;
            for len in parts {
                for t in 0..len {
                    p[start + t] = start + (t + 1) % len;
                }
                start += len;
            }
            p
        })
        .collect()
}

/// Visits each simple connected `k`-fold cover of `a` once up to
/// isomorphism, in increasing voltage order. Sheet `i` over vertex `x` is
/// vertex `x k + i`. `visit` returns `false` to stop.
pub fn for_each_simple_cover(
    a: &Multigraph,
    k: usize,
    node_limit: Option<u64>,
    mut visit: impl FnMut(CoverProjection) -> bool,
) -> Result<EnumStatus> {
    if k == 0 {
        return Err(Error::Precondition("fold count must be positive".into()));
    }
    if !a.is_connected() {
        return Err(Error::Precondition(
            "the base graph must be connected".into(),
        ));
    }
    if a.vertex_count() * k > LIFT_VERTEX_CAP {
        return Err(Error::CapExceeded(format!(
            "{k}-fold covers of a {}-vertex graph exceed {LIFT_VERTEX_CAP} vertices",
            a.vertex_count()
        )));
    }
    if a.has_semi_edges() && k % 2 == 1 {
        return Ok(EnumStatus::Complete);
    }
    // spanning tree by BFS over lowest-id edges
    let n = a.vertex_count();
    let mut reached = vec![false; n];
    let mut tree = vec![false; a.edge_count()];
    let mut queue = std::collections::VecDeque::from([0]);
    reached[0] = true;
    while let Some(u) = queue.pop_front() {
        for &e in a.incident(crate::graph::VertexId(u)) {
            if let EdgeKind::Normal(x, y) = a.edge(e) {
                let w = if x.0 == u { y.0 } else { x.0 };
                if !reached[w] {
                    reached[w] = true;
                    tree[e.0] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let mut s = Lifter {
        g: a,
        k,
        slots: Vec::new(),
        adj: vec![0; n * k],
        perm: vec![(0..k).collect(); a.edge_count()],
        nodes: 0,
        limit: node_limit,
        seen: HashSet::new(),
    };
    for (id, e) in a.edges() {
        if tree[id.0] {
            let (x, y) = e.ends();
            for i in 0..k {
                let (p, q) = (s.at(x, i), s.at(y, i));
                s.try_add(p, q);
            }
            continue;
        }
        let slot = match e {
            EdgeKind::Normal(x, y) => Slot::Perm { a: x.0, b: y.0 },
            EdgeKind::Loop(x) => Slot::Perm { a: x.0, b: x.0 },
            EdgeKind::Semi(x) => Slot::Involution { a: x.0 },
        };
        s.slots.push((id.0, slot));
    }
    Ok(match s.run(&mut visit)? {
        Flow::Go => EnumStatus::Complete,
        Flow::Stop => EnumStatus::Stopped,
        Flow::Limit => EnumStatus::LimitReached,
    })
}

/// Collects simple connected `k`-fold covers of `a`, at most `limit` of
/// them, deduplicated up to isomorphism.
pub fn enumerate_simple_covers(
    a: &Multigraph,
    k: usize,
    limit: Option<usize>,
) -> Result<Vec<CoverProjection>> {
    let mut out = Vec::new();
    if limit == Some(0) {
        return Ok(out);
    }
    for_each_simple_cover(a, k, None, |p| {
        out.push(p);
        limit.is_none_or(|l| out.len() < l)
    })?;
    Ok(out)
}
