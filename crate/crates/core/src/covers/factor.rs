//! Completion of a vertex map into an edge map.
//!
//! Edges between two different fibers form a regular bipartite multigraph
//! and split into perfect matchings. Edges inside a fiber are distributed
//! over the loops and semi-edges of the target vertex by an exact
//! capacity-constrained search.

use super::search::Budget;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum ElemKind {
    Normal,
    Loop,
    Semi,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct FactorElem {
    pub kind: ElemKind,
    pub a: usize,
    pub b: usize,
}

/// A target loop (capacity 2 at every fiber vertex) or semi-edge
/// (capacity 1). Classes sharing a group are interchangeable.
#[derive(Debug, Clone, Copy)]
pub(crate) struct FactorClass {
    pub capacity: usize,
    pub accepts_semi: bool,
    pub accepts_loop: bool,
    pub group: usize,
}

#[derive(Debug, Clone)]
pub(crate) struct FactorProblem {
    pub vertices: usize,
    pub elems: Vec<FactorElem>,
    pub classes: Vec<FactorClass>,
}

struct State<'a> {
    p: &'a FactorProblem,
    incident: Vec<Vec<usize>>,
    rem: Vec<usize>,
    used: Vec<usize>,
    assign: Vec<usize>,
}

const NONE: usize = usize::MAX;

impl FactorProblem {
    /// Class index per element, or `None` when no exact assignment exists.
    /// `Err(())` means the budget ran out.
    pub fn solve(&self, budget: &mut Budget) -> Result<Option<Vec<usize>>, ()> {
        let nv = self.vertices;
        let mut incident = vec![Vec::new(); nv];
        for (i, e) in self.elems.iter().enumerate() {
            incident[e.a].push(i);
            if e.kind == ElemKind::Normal {
                incident[e.b].push(i);
            }
        }
        let mut rem = Vec::with_capacity(self.classes.len() * nv);
        for c in &self.classes {
            rem.extend(std::iter::repeat_n(c.capacity, nv));
        }
        // every vertex must be able to exhaust its capacity
        for (v, inc) in incident.iter().enumerate() {
            let supply: usize = inc.iter().map(|&i| self.usage(i, v)).sum();
            let demand: usize = self.classes.iter().map(|c| c.capacity).sum();
            if supply != demand {
                return Ok(None);
            }
        }
        let mut st = State {
            p: self,
            incident,
            rem,
            used: vec![0; self.classes.len()],
            assign: vec![NONE; self.elems.len()],
        };
        if st.search(budget)? {
            Ok(Some(st.assign))
        } else {
            Ok(None)
        }
    }

    fn usage(&self, elem: usize, v: usize) -> usize {
        let e = self.elems[elem];
        match e.kind {
            ElemKind::Loop => 2,
            ElemKind::Semi => 1,
            ElemKind::Normal => usize::from(e.a == v) + usize::from(e.b == v),
        }
    }
}

impl State<'_> {
    fn feasible(&self, elem: usize, c: usize) -> bool {
        let e = self.p.elems[elem];
        let class = self.p.classes[c];
        let nv = self.p.vertices;
        let r = |v: usize| self.rem[c * nv + v];
        match e.kind {
            ElemKind::Semi => class.accepts_semi && r(e.a) >= 1,
            ElemKind::Loop => class.accepts_loop && r(e.a) >= 2,
            ElemKind::Normal => r(e.a) >= 1 && r(e.b) >= 1,
        }
    }

    fn apply(&mut self, elem: usize, c: usize, sign: bool) {
        let e = self.p.elems[elem];
        let nv = self.p.vertices;
        let touched: &[(usize, usize)] = match e.kind {
            ElemKind::Semi => &[(e.a, 1)],
            ElemKind::Loop => &[(e.a, 2)],
            ElemKind::Normal => &[(e.a, 1), (e.b, 1)],
        };
        for &(v, amount) in touched {
            if sign {
                self.rem[c * nv + v] -= amount;
            } else {
                self.rem[c * nv + v] += amount;
            }
        }
        if sign {
            self.used[c] += 1;
            self.assign[elem] = c;
        } else {
            self.used[c] -= 1;
            self.assign[elem] = NONE;
        }
    }

    /// Every remaining capacity at `v` can still be filled.
    fn vertex_ok(&self, v: usize) -> bool {
        let nv = self.p.vertices;
        for c in 0..self.p.classes.len() {
            let need = self.rem[c * nv + v];
            if need == 0 {
                continue;
            }
            let supply: usize = self.incident[v]
                .iter()
                .filter(|&&i| self.assign[i] == NONE && self.feasible(i, c))
                .map(|&i| self.p.usage(i, v).min(need))
                .sum();
            if supply < need {
                return false;
            }
        }
        true
    }

    /// Candidate classes for `elem`, keeping only the first unused class of
    /// each group.
    fn candidates(&self, elem: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut fresh_group_seen: Vec<usize> = Vec::new();
        for c in 0..self.p.classes.len() {
            if !self.feasible(elem, c) {
                continue;
            }
            if self.used[c] == 0 {
                let g = self.p.classes[c].group;
                if fresh_group_seen.contains(&g) {
                    continue;
                }
                fresh_group_seen.push(g);
            }
            out.push(c);
        }
        out
    }

    fn search(&mut self, budget: &mut Budget) -> Result<bool, ()> {
        budget.tick()?;
        let mut best: Option<(usize, Vec<usize>)> = None;
        for i in 0..self.p.elems.len() {
            if self.assign[i] != NONE {
                continue;
            }
            let cands = self.candidates(i);
            if cands.is_empty() {
                return Ok(false);
            }
            if best.as_ref().is_none_or(|(_, b)| cands.len() < b.len()) {
                let one = cands.len() == 1;
                best = Some((i, cands));
                if one {
                    break;
                }
            }
        }
        let Some((elem, cands)) = best else {
            return Ok(true);
        };
        let e = self.p.elems[elem];
        for c in cands {
            self.apply(elem, c, true);
            if self.vertex_ok(e.a) && (e.kind != ElemKind::Normal || self.vertex_ok(e.b)) {
                if self.search(budget)? {
                    return Ok(true);
                }
            }
            self.apply(elem, c, false);
        }
        Ok(false)
    }
}

/// Splits an `m`-regular bipartite multigraph into `m` perfect matchings.
/// `edges` lists `(left, right)` pairs by local index; the result lists
/// edge indices per matching. `None` if the graph is not regular.
pub(crate) fn regular_bipartite_matchings(
    side: usize,
    edges: &[(usize, usize)],
    m: usize,
) -> Option<Vec<Vec<usize>>> {
    if edges.len() != side * m {
        return None;
    }
    let mut alive = vec![true; edges.len()];
    let mut adj = vec![Vec::new(); side];
    for (i, &(l, _)) in edges.iter().enumerate() {
        adj[l].push(i);
    }
    let mut out = Vec::with_capacity(m);
    for _ in 0..m {
        let mut match_right: Vec<Option<usize>> = vec![None; side];
        for l in 0..side {
            let mut seen = vec![false; side];
            if !augment(l, edges, &adj, &alive, &mut match_right, &mut seen) {
                return None;
            }
        }
        let mut matching: Vec<usize> = match_right.into_iter().map(|e| e.unwrap()).collect();
        matching.sort_unstable();
        for &e in &matching {
            alive[e] = false;
        }
        out.push(matching);
    }
    Some(out)
}

fn augment(
    l: usize,
    edges: &[(usize, usize)],
    adj: &[Vec<usize>],
    alive: &[bool],
    match_right: &mut [Option<usize>],
    seen: &mut [bool],
) -> bool {
    for &e in &adj[l] {
        if !alive[e] {
            continue;
        }
        let r = edges[e].1;
        if seen[r] {
            continue;
        }
        seen[r] = true;
        let free = match match_right[r] {
            None => true,
            Some(prev) => augment(edges[prev].0, edges, adj, alive, match_right, seen),
        };
        if free {
            match_right[r] = Some(e);
            return true;
        }
    }
    false
}
