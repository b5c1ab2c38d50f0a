//! Exhaustive search for covering projections.
//!
//! Vertices are assigned with bitmask domains. Each assigned vertex `v`
//! with image `x` needs exactly `mult(x, y)` normal neighbours (counted
//! with multiplicity) over every other target vertex `y`, and exactly
//! `S_x + 2 L_x - 2 loops(v) - semis(v)` inside its own fiber. Complete
//! vertex maps are then completed into edge maps by the factor engine.

use std::collections::BTreeMap;

use super::factor::{
    regular_bipartite_matchings, ElemKind, FactorClass, FactorElem, FactorProblem,
};
use super::{verify, CoverProjection, ProjectionKind};
use crate::error::{Error, Result};
use crate::graph::{EdgeKind, Multigraph, VertexId};

/// Node counter shared by the vertex search and the factor engine.
#[derive(Debug, Clone)]
pub(crate) struct Budget {
    used: u64,
    limit: u64,
}

impl Budget {
    pub(crate) fn unlimited() -> Self {
        Budget {
            used: 0,
            limit: u64::MAX,
        }
    }

    pub(crate) fn with_limit(limit: u64) -> Self {
        Budget { used: 0, limit }
    }

    pub(crate) fn tick(&mut self) -> std::result::Result<(), ()> {
        self.used += 1;
        if self.used > self.limit {
            Err(())
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(CoverProjection),
    /// The search space was exhausted.
    NotFound,
    /// The node limit was reached before a decision.
    LimitReached,
}

/// First projection of `g` onto `h` in the deterministic search order, or
/// `None` if none exists. `h` must be connected.
pub fn find_cover(
    g: &Multigraph,
    h: &Multigraph,
    kind: ProjectionKind,
) -> Result<Option<CoverProjection>> {
    match find_cover_limited(g, h, kind, None)? {
        SearchOutcome::Found(p) => Ok(Some(p)),
        SearchOutcome::NotFound => Ok(None),
        SearchOutcome::LimitReached => unreachable!("unlimited search"),
    }
}

/// As [`find_cover`] with an optional cap on search nodes.
pub fn find_cover_limited(
    g: &Multigraph,
    h: &Multigraph,
    kind: ProjectionKind,
    node_limit: Option<u64>,
) -> Result<SearchOutcome> {
    if !h.is_connected() {
        return Err(Error::Unsupported(
            "the target graph must be connected".into(),
        ));
    }
    if h.vertex_count() > 64 {
        return Err(Error::CapExceeded(format!(
            "targets are limited to 64 vertices, got {}",
            h.vertex_count()
        )));
    }
    let (n, hn) = (g.vertex_count(), h.vertex_count());
    if n == 0 || n % hn != 0 {
        return Ok(SearchOutcome::NotFound);
    }
    let mut budget = node_limit.map_or_else(Budget::unlimited, Budget::with_limit);
    let mut s = Searcher::new(g, h, kind);
    if !s.degree_profile_ok() {
        return Ok(SearchOutcome::NotFound);
    }
    let Some(mut dom) = s.initial_domains() else {
        return Ok(SearchOutcome::NotFound);
    };
    match s.search(&mut dom, &mut budget) {
        Err(()) => Ok(SearchOutcome::LimitReached),
        Ok(false) => Ok(SearchOutcome::NotFound),
        Ok(true) => {
            let p = s.result.take().expect("result recorded");
            debug_assert!(
                verify(&p, kind).is_ok(),
                "search produced an invalid projection"
            );
            Ok(SearchOutcome::Found(p))
        }
    }
}

struct Searcher<'a> {
    g: &'a Multigraph,
    h: &'a Multigraph,
    kind: ProjectionKind,
    n: usize,
    hn: usize,
    fold: usize,
    mult: Vec<usize>,
    t_loops: Vec<usize>,
    t_semis: Vec<usize>,
    nbrs: Vec<Vec<(usize, usize)>>,
    /// Normal-edge endpoints needed inside the own fiber, per (v, x).
    self_need: Vec<i64>,
    order: Vec<usize>,
    rank: Vec<usize>,
    result: Option<CoverProjection>,
}

fn single(d: u64) -> bool {
    d != 0 && d & (d - 1) == 0
}

impl<'a> Searcher<'a> {
    fn new(g: &'a Multigraph, h: &'a Multigraph, kind: ProjectionKind) -> Self {
        let (n, hn) = (g.vertex_count(), h.vertex_count());
        let mut mult = vec![0; hn * hn];
        for x in 0..hn {
            for (y, m) in h.neighbor_multiplicities(VertexId(x)) {
                mult[x * hn + y] = m;
            }
        }
        let t_loops: Vec<usize> = h.vertices().map(|x| h.loops_at(x)).collect();
        let t_semis: Vec<usize> = h.vertices().map(|x| h.semis_at(x)).collect();
        let nbrs: Vec<Vec<(usize, usize)>> =
            g.vertices().map(|v| g.neighbor_multiplicities(v)).collect();
        let mut self_need = vec![0i64; n * hn];
        for v in 0..n {
            let (lv, sv) = (
                g.loops_at(VertexId(v)) as i64,
                g.semis_at(VertexId(v)) as i64,
            );
            for x in 0..hn {
                self_need[v * hn + x] = t_semis[x] as i64 + 2 * t_loops[x] as i64 - 2 * lv - sv;
            }
        }
        // breadth-first order over every component
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut head = order.len();
            order.push(s);
            while head < order.len() {
                let u = order[head];
                head += 1;
                for &(w, _) in &nbrs[u] {
                    if !seen[w] {
                        seen[w] = true;
                        order.push(w);
                    }
                }
            }
        }
        let mut rank = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            rank[v] = i;
        }
        Searcher {
            g,
            h,
            kind,
            n,
            hn,
            fold: n / hn,
            mult,
            t_loops,
            t_semis,
            nbrs,
            self_need,
            order,
            rank,
            result: None,
        }
    }

    fn need(&self, v: usize, x: usize, y: usize) -> i64 {
        if x == y {
            self.self_need[v * self.hn + x]
        } else {
            self.mult[x * self.hn + y] as i64
        }
    }

    fn degree_profile_ok(&self) -> bool {
        let mut src: BTreeMap<usize, usize> = BTreeMap::new();
        let mut dst: BTreeMap<usize, usize> = BTreeMap::new();
        for v in self.g.vertices() {
            *src.entry(self.g.degree(v)).or_insert(0) += 1;
        }
        for x in self.h.vertices() {
            *dst.entry(self.h.degree(x)).or_insert(0) += self.fold;
        }
        src == dst
    }

    fn initial_domains(&self) -> Option<Vec<u64>> {
        let mut dom = vec![0u64; self.n];
        for v in 0..self.n {
            let vv = VertexId(v);
            let (dv, lv, sv) = (self.g.degree(vv), self.g.loops_at(vv), self.g.semis_at(vv));
            for x in 0..self.hn {
                let ok = self.h.degree(VertexId(x)) == dv
                    && lv <= self.t_loops[x]
                    && self.self_need[v * self.hn + x] >= 0
                    && (self.kind == ProjectionKind::SemiCover || sv <= self.t_semis[x]);
                if ok {
                    dom[v] |= 1 << x;
                }
            }
            if dom[v] == 0 {
                return None;
            }
        }
        // one representative per automorphism orbit for the first vertex
        if let Some(orbit) = orbit_minima(self.h) {
            let first = self.order[0];
            let mut d = 0;
            for x in 0..self.hn {
                if dom[first] >> x & 1 == 1 && orbit[x] == x {
                    d |= 1 << x;
                }
            }
            dom[first] = d;
        }
        Some(dom)
    }

    fn propagate(&self, dom: &mut [u64]) -> bool {
        let hn = self.hn;
        let mut a = vec![0i64; hn];
        let mut p = vec![0i64; hn];
        let mut count = vec![0usize; hn];
        let mut possible = vec![0usize; hn];
        loop {
            let mut changed = false;
            count.iter_mut().for_each(|c| *c = 0);
            possible.iter_mut().for_each(|c| *c = 0);
            for &d in dom.iter() {
                if d == 0 {
                    return false;
                }
                if single(d) {
                    count[d.trailing_zeros() as usize] += 1;
                } else {
                    let mut bits = d;
                    while bits != 0 {
                        possible[bits.trailing_zeros() as usize] += 1;
                        bits &= bits - 1;
                    }
                }
            }
            for x in 0..hn {
                if count[x] > self.fold || count[x] + possible[x] < self.fold {
                    return false;
                }
                if count[x] == self.fold && possible[x] > 0 {
                    for d in dom.iter_mut() {
                        if !single(*d) && *d >> x & 1 == 1 {
                            *d &= !(1u64 << x);
                            changed = true;
                        }
                    }
                }
            }
            for v in 0..self.n {
                let dv = dom[v];
                if !single(dv) {
                    continue;
                }
                let x = dv.trailing_zeros() as usize;
                a.iter_mut().for_each(|c| *c = 0);
                p.iter_mut().for_each(|c| *c = 0);
                for &(w, m) in &self.nbrs[v] {
                    let dw = dom[w];
                    if single(dw) {
                        a[dw.trailing_zeros() as usize] += m as i64;
                    } else {
                        let mut bits = dw;
                        while bits != 0 {
                            p[bits.trailing_zeros() as usize] += m as i64;
                            bits &= bits - 1;
                        }
                    }
                }
                for y in 0..hn {
                    let need = self.need(v, x, y);
                    if a[y] > need || a[y] + p[y] < need {
                        return false;
                    }
                    if p[y] == 0 {
                        continue;
                    }
                    if a[y] == need {
                        for &(w, _) in &self.nbrs[v] {
                            if !single(dom[w]) && dom[w] >> y & 1 == 1 {
                                dom[w] &= !(1u64 << y);
                                changed = true;
                            }
                        }
                    } else if a[y] + p[y] == need {
                        for &(w, _) in &self.nbrs[v] {
                            if !single(dom[w]) && dom[w] >> y & 1 == 1 {
                                dom[w] = 1 << y;
                                changed = true;
                            }
                        }
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn choose(&self, dom: &[u64]) -> Option<usize> {
        let mut best: Option<(bool, u32, usize)> = None;
        for &v in &self.order {
            if single(dom[v]) {
                continue;
            }
            let frontier = self.nbrs[v].iter().any(|&(w, _)| single(dom[w]));
            let key = (!frontier, dom[v].count_ones(), self.rank[v]);
            if best.is_none_or(|b| key < b) {
                best = Some(key);
            }
        }
        best.map(|(_, _, r)| self.order[r])
    }

    fn search(&mut self, dom: &mut Vec<u64>, budget: &mut Budget) -> std::result::Result<bool, ()> {
        budget.tick()?;
        if !self.propagate(dom) {
            return Ok(false);
        }
        let Some(v) = self.choose(dom) else {
            let img: Vec<usize> = dom.iter().map(|d| d.trailing_zeros() as usize).collect();
            return self.complete(img, budget);
        };
        let mut bits = dom[v];
        while bits != 0 {
            let x = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let mut next = dom.clone();
            next[v] = 1 << x;
            if self.search(&mut next, budget)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Turns a consistent vertex map into a projection, if the edges inside
    /// the fibers can be distributed.
    fn complete(&mut self, img: Vec<usize>, budget: &mut Budget) -> std::result::Result<bool, ()> {
        let (g, h, hn) = (self.g, self.h, self.hn);
        let mut fibers = vec![Vec::new(); hn];
        let mut local = vec![0; self.n];
        for (v, &x) in img.iter().enumerate() {
            local[v] = fibers[x].len();
            fibers[x].push(v);
        }
        let mut edge_map = vec![usize::MAX; g.edge_count()];

        let mut cross: BTreeMap<(usize, usize), Vec<(usize, usize, usize)>> = BTreeMap::new();
        let mut inner: Vec<Vec<(usize, FactorElem)>> = vec![Vec::new(); hn];
        for (id, e) in g.edges() {
            match e {
                EdgeKind::Normal(u, v) if img[u.0] != img[v.0] => {
                    let (mut a, mut b) = (u.0, v.0);
                    if img[a] > img[b] {
                        std::mem::swap(&mut a, &mut b);
                    }
                    cross
                        .entry((img[a], img[b]))
                        .or_default()
                        .push((local[a], local[b], id.0));
                }
                EdgeKind::Normal(u, v) => inner[img[u.0]].push((
                    id.0,
                    FactorElem {
                        kind: ElemKind::Normal,
                        a: local[u.0],
                        b: local[v.0],
                    },
                )),
                EdgeKind::Loop(v) => inner[img[v.0]].push((
                    id.0,
                    FactorElem {
                        kind: ElemKind::Loop,
                        a: local[v.0],
                        b: local[v.0],
                    },
                )),
                EdgeKind::Semi(v) => inner[img[v.0]].push((
                    id.0,
                    FactorElem {
                        kind: ElemKind::Semi,
                        a: local[v.0],
                        b: local[v.0],
                    },
                )),
            }
        }

        let bundles = h.normal_bundles();
        for ((x, y), list) in &cross {
            let Some(targets) = bundles.get(&(*x, *y)) else {
                return Ok(false);
            };
            let pairs: Vec<(usize, usize)> = list.iter().map(|&(a, b, _)| (a, b)).collect();
            let Some(ms) = regular_bipartite_matchings(self.fold, &pairs, targets.len()) else {
                return Ok(false);
            };
            for (j, m) in ms.iter().enumerate() {
                for &i in m {
                    edge_map[list[i].2] = targets[j].0;
                }
            }
        }

        for x in 0..hn {
            let mut class_edges = Vec::new();
            let mut classes = Vec::new();
            for &t in h.incident(VertexId(x)) {
                match h.edge(t) {
                    EdgeKind::Semi(_) => {
                        class_edges.push(t.0);
                        classes.push(FactorClass {
                            capacity: 1,
                            accepts_semi: true,
                            accepts_loop: false,
                            group: 0,
                        });
                    }
                    EdgeKind::Loop(_) => {
                        class_edges.push(t.0);
                        classes.push(FactorClass {
                            capacity: 2,
                            accepts_semi: self.kind == ProjectionKind::SemiCover,
                            accepts_loop: true,
                            group: 1,
                        });
                    }
                    EdgeKind::Normal(..) => {}
                }
            }
            if classes.is_empty() && inner[x].is_empty() {
                continue;
            }
            let problem = FactorProblem {
                vertices: fibers[x].len(),
                elems: inner[x].iter().map(|&(_, e)| e).collect(),
                classes,
            };
            let Some(sol) = problem.solve(budget)? else {
                return Ok(false);
            };
            for (i, &c) in sol.iter().enumerate() {
                edge_map[inner[x][i].0] = class_edges[c];
            }
        }

        debug_assert!(edge_map.iter().all(|&t| t != usize::MAX));
        self.result = Some(
            CoverProjection::new(g.clone(), h.clone(), img, edge_map).expect("maps are total"),
        );
        Ok(true)
    }
}

/// For each vertex, the least vertex of its automorphism orbit. Only
/// computed for targets with at most eight vertices.
fn orbit_minima(h: &Multigraph) -> Option<Vec<usize>> {
    let n = h.vertex_count();
    if n > 8 {
        return None;
    }
    let mult: Vec<Vec<usize>> = (0..n)
        .map(|x| {
            let mut row = vec![0; n];
            for (y, m) in h.neighbor_multiplicities(VertexId(x)) {
                row[y] = m;
            }
            row
        })
        .collect();
    let sig: Vec<(usize, usize, usize)> = h
        .vertices()
        .map(|x| (h.degree(x), h.loops_at(x), h.semis_at(x)))
        .collect();
    let mut minima: Vec<usize> = (0..n).collect();
    for b in 0..n {
        for a in 0..b {
            if minima[a] != a || sig[a] != sig[b] {
                continue;
            }
            let mut perm = vec![usize::MAX; n];
            let mut used = vec![false; n];
            perm[a] = b;
            used[b] = true;
            if extend_automorphism(&mult, &sig, &mut perm, &mut used, 0) {
                minima[b] = a;
                break;
            }
        }
    }
    Some(minima)
}

fn extend_automorphism(
    mult: &[Vec<usize>],
    sig: &[(usize, usize, usize)],
    perm: &mut [usize],
    used: &mut [bool],
    next: usize,
) -> bool {
    let n = perm.len();
    let Some(i) = (next..n).find(|&i| perm[i] == usize::MAX) else {
        return (0..n).all(|i| (0..n).all(|j| mult[i][j] == mult[perm[i]][perm[j]]));
    };
    for c in 0..n {
        if used[c] || sig[c] != sig[i] {
            continue;
        }
        let consistent = (0..n)
            .filter(|&j| perm[j] != usize::MAX)
            .all(|j| mult[i][j] == mult[c][perm[j]]);
        if !consistent {
            continue;
        }
        perm[i] = c;
        used[c] = true;
        if extend_automorphism(mult, sig, perm, used, i + 1) {
            return true;
        }
        perm[i] = usize::MAX;
        used[c] = false;
    }
    false
}
