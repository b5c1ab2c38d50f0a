//! Named graphs and the parametrised families used throughout the crate.

use crate::error::{Error, Result};
use crate::graph::{EdgeKind, Multigraph};
use crate::products::odot;

/// Where a catalog construction comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// Fully determined by a textual definition.
    Defined,
    /// Reconstructed from constraints on the graph; validated by tests.
    Reconstructed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedGraph {
    pub name: String,
    pub graph: Multigraph,
    pub provenance: Provenance,
    pub note: &'static str,
}

/// One vertex carrying `semis` semi-edges followed by `loops` loops.
pub fn make_flower(semis: usize, loops: usize) -> Multigraph {
    let mut edges = vec![EdgeKind::semi(0); semis];
    edges.extend(std::iter::repeat_n(EdgeKind::looped(0), loops));
    Multigraph::new(1, edges).expect("flower is valid")
}

/// Two vertices: vertex 0 carries `k` semi-edges and `m` loops, vertex 1
/// carries `p` loops and `q` semi-edges, and `l` normal edges join them.
/// Edge order follows the parameter order.
pub fn make_dumbbell(k: usize, m: usize, l: usize, p: usize, q: usize) -> Multigraph {
    let mut edges = Vec::with_capacity(k + m + l + p + q);
    edges.extend(std::iter::repeat_n(EdgeKind::semi(0), k));
    edges.extend(std::iter::repeat_n(EdgeKind::looped(0), m));
    edges.extend(std::iter::repeat_n(EdgeKind::normal(0, 1), l));
    edges.extend(std::iter::repeat_n(EdgeKind::looped(1), p));
    edges.extend(std::iter::repeat_n(EdgeKind::semi(1), q));
    Multigraph::new(2, edges).expect("dumbbell is valid")
}

/// The connected 2-regular graph on `n` vertices without semi-edges: a
/// loop for `n = 1`, a double edge for `n = 2`, a simple cycle otherwise.
pub fn cycle(n: usize) -> Multigraph {
    assert!(n >= 1, "cycle needs at least one vertex");
    match n {
        1 => make_flower(0, 1),
        2 => make_dumbbell(0, 0, 2, 0, 0),
        _ => Multigraph::new(
            n,
            (0..n).map(|i| EdgeKind::normal(i, (i + 1) % n)).collect(),
        )
        .expect("cycle is valid"),
    }
}

/// Path on `n` vertices with one semi-edge at each terminal vertex. For
/// `n = 1` the single vertex carries both semi-edges.
pub fn open_path(n: usize) -> Multigraph {
    assert!(n >= 1, "open path needs at least one vertex");
    let mut edges = vec![EdgeKind::semi(0)];
    edges.extend((0..n - 1).map(|i| EdgeKind::normal(i, i + 1)));
    edges.push(EdgeKind::semi(n - 1));
    Multigraph::new(n, edges).expect("open path is valid")
}

pub fn complete(n: usize) -> Multigraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push(EdgeKind::normal(u, v));
        }
    }
    Multigraph::new(n, edges).expect("complete graph is valid")
}

pub fn complete_bipartite(a: usize, b: usize) -> Multigraph {
    let mut edges = Vec::new();
    for u in 0..a {
        for v in 0..b {
            edges.push(EdgeKind::normal(u, a + v));
        }
    }
    Multigraph::new(a + b, edges).expect("complete bipartite graph is valid")
}

pub fn hypercube(d: usize) -> Multigraph {
    let n = 1usize << d;
    let mut edges = Vec::new();
    for u in 0..n {
        for bit in 0..d {
            let v = u ^ (1 << bit);
            if u < v {
                edges.push(EdgeKind::normal(u, v));
            }
        }
    }
    Multigraph::new(n, edges).expect("hypercube is valid")
}

pub fn petersen() -> Multigraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push(EdgeKind::normal(i, (i + 1) % 5));
    }
    for i in 0..5 {
        edges.push(EdgeKind::normal(i, i + 5));
    }
    for i in 0..5 {
        edges.push(EdgeKind::normal(i + 5, (i + 2) % 5 + 5));
    }
    Multigraph::new(10, edges).expect("Petersen graph is valid")
}

/// Cycle of length `n` together with every chord joining vertices at
/// distance `d` along the cycle, for each `d` in `spans`.
pub fn circulant(n: usize, spans: &[usize]) -> Result<Multigraph> {
    let mut edges = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for d in std::iter::once(1).chain(spans.iter().copied()) {
        if d == 0 || d >= n {
            return Err(Error::UnknownGraph(format!("C({n}; span {d})")));
        }
        for i in 0..n {
            let j = (i + d) % n;
            if seen.insert((i.min(j), i.max(j))) {
                edges.push(EdgeKind::normal(i, j));
            }
        }
    }
    Multigraph::new(n, edges)
}

/// Adds one semi-edge to every vertex.
pub fn with_semi_at_each_vertex(g: &Multigraph) -> Multigraph {
    let mut edges = g.edge_kinds().to_vec();
    edges.extend((0..g.vertex_count()).map(EdgeKind::semi));
    Multigraph::new(g.vertex_count(), edges).expect("valid")
}

/// 6-cycle on vertices 0..6, triangles on 6..9 and 9..12, and the matching
/// `i -- i + 6`.
pub fn h1() -> Multigraph {
    let mut edges: Vec<EdgeKind> = (0..6).map(|i| EdgeKind::normal(i, (i + 1) % 6)).collect();
    for base in [6, 9] {
        edges.push(EdgeKind::normal(base, base + 1));
        edges.push(EdgeKind::normal(base + 1, base + 2));
        edges.push(EdgeKind::normal(base, base + 2));
    }
    edges.extend((0..6).map(|i| EdgeKind::normal(i, i + 6)));
    Multigraph::new(12, edges).expect("H1 is valid")
}

pub fn sausage() -> Multigraph {
    odot(&make_dumbbell(0, 1, 1, 0, 2)).0
}

/// Vertices a,b,c,d = 0..4: double edges ab and cd, single edges ac and bd.
pub fn drum() -> Multigraph {
    Multigraph::new(
        4,
        vec![
            EdgeKind::normal(0, 1),
            EdgeKind::normal(0, 1),
            EdgeKind::normal(2, 3),
            EdgeKind::normal(2, 3),
            EdgeKind::normal(0, 2),
            EdgeKind::normal(1, 3),
        ],
    )
    .expect("drum is valid")
}

/// Triangle abc with bc doubled, pendant edge ad, loop at d.
pub fn wine_glass() -> Multigraph {
    Multigraph::new(
        4,
        vec![
            EdgeKind::normal(0, 1),
            EdgeKind::normal(0, 2),
            EdgeKind::normal(1, 2),
            EdgeKind::normal(1, 2),
            EdgeKind::normal(0, 3),
            EdgeKind::looped(3),
        ],
    )
    .expect("wine glass is valid")
}

/// Centre 0 joined to leaves 1, 2, 3, each carrying a loop.
pub fn loopy_claw() -> Multigraph {
    let mut edges: Vec<EdgeKind> = (1..4).map(|l| EdgeKind::normal(0, l)).collect();
    edges.extend((1..4).map(EdgeKind::looped));
    Multigraph::new(4, edges).expect("loopy claw is valid")
}

/// The twelve cubic graphs on at most four vertices (no semi-edges on four
/// vertices) ordered as in the small-cubic-graph poset.
pub const SMALL_CUBIC: [&str; 12] = [
    "F(1,1)",
    "F(3,0)",
    "W(0,0,3,0,0)",
    "W(0,1,1,1,0)",
    "W(1,0,2,0,1)",
    "W(0,1,1,0,2)",
    "W(2,0,1,0,2)",
    "K4",
    "SG",
    "DG",
    "WG",
    "LC",
];

/// Every fixed name the catalog knows, for listings and tests.
pub const FIXED_NAMES: [&str; 14] = [
    "K2", "K4", "K33", "Q3", "Petersen", "K3prime", "H1", "SG", "DG", "WG", "LC", "C6prime",
    "prism", "C6prism",
];

fn parse_args(s: &str, open: char, close: char, sep: char) -> Option<Vec<usize>> {
    let inner = s.strip_prefix(open)?.strip_suffix(close)?;
    inner
        .split(sep)
        .map(|t| t.trim().parse::<usize>().ok())
        .collect()
}

/// Looks up a graph by name.
///
/// Accepted forms: `F(a,b)`, `W(k,m,l,p,q)`, `C<n>` or `C_n` (cycle),
/// `P~<n>` or `P~_n` (open path), `C(n;d1,...)`, and the fixed names
/// `K2 K4 K33 Q3 Petersen K3prime H1 SG DG WG LC C6prime prism C6prism`.
pub fn catalog(name: &str) -> Result<NamedGraph> {
    let unknown = || Error::UnknownGraph(name.to_string());
    let trimmed = name.trim();
    let named = |graph: Multigraph, provenance, note| NamedGraph {
        name: trimmed.to_string(),
        graph,
        provenance,
        note,
    };
    if let Some(rest) = trimmed.strip_prefix('F') {
        if rest.starts_with('(') {
            let args = parse_args(rest, '(', ')', ',').ok_or_else(unknown)?;
            let [a, b] = args[..] else {
                return Err(unknown());
            };
            return Ok(named(make_flower(a, b), Provenance::Defined, "flower"));
        }
    }
    if let Some(rest) = trimmed.strip_prefix('W') {
        if rest.starts_with('(') {
            let args = parse_args(rest, '(', ')', ',').ok_or_else(unknown)?;
            let [k, m, l, p, q] = args[..] else {
                return Err(unknown());
            };
            return Ok(named(
                make_dumbbell(k, m, l, p, q),
                Provenance::Defined,
                "dumbbell",
            ));
        }
    }
    if let Some(rest) = trimmed.strip_prefix("C(") {
        let inner = rest.strip_suffix(')').ok_or_else(unknown)?;
        let (n, spans) = inner.split_once(';').ok_or_else(unknown)?;
        let n: usize = n.trim().parse().map_err(|_| unknown())?;
        let spans: Vec<usize> = spans
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| unknown()))
            .collect::<Result<_>>()?;
        return Ok(named(
            circulant(n, &spans)?,
            Provenance::Defined,
            "cycle with chords",
        ));
    }
    for prefix in ["P~_", "P~"] {
        if let Some(rest) = trimmed.strip_prefix(prefix) {
            let n: usize = rest.parse().map_err(|_| unknown())?;
            if n == 0 {
                return Err(unknown());
            }
            return Ok(named(open_path(n), Provenance::Defined, "open path"));
        }
    }
    for prefix in ["C_", "C"] {
        if let Some(rest) = trimmed.strip_prefix(prefix) {
            if let Ok(n) = rest.parse::<usize>() {
                if n == 0 {
                    return Err(unknown());
                }
                return Ok(named(cycle(n), Provenance::Defined, "cycle"));
            }
        }
    }
    let lower = trimmed.to_ascii_lowercase();
    let g = match lower.as_str() {
        "k2" => named(complete(2), Provenance::Defined, "single edge"),
        "k4" => named(complete(4), Provenance::Defined, "complete graph"),
        "k33" | "k3,3" => named(complete_bipartite(3, 3), Provenance::Defined, "K3,3"),
        "q3" | "cube" => named(hypercube(3), Provenance::Defined, "3-cube"),
        "petersen" => named(petersen(), Provenance::Defined, "Petersen graph"),
        "k3prime" | "k3'" => named(
            with_semi_at_each_vertex(&complete(3)),
            Provenance::Defined,
            "triangle with a semi-edge at each vertex",
        ),
        "h1" => named(
            h1(),
            Provenance::Reconstructed,
            "6-cycle, two triangles, matching i--i+6",
        ),
        "sg" => named(
            sausage(),
            Provenance::Defined,
            "sausage graph, odot of W(0,1,1,0,2)",
        ),
        "dg" => named(drum(), Provenance::Reconstructed, "drum graph"),
        "wg" => named(wine_glass(), Provenance::Reconstructed, "wine glass graph"),
        "lc" => named(loopy_claw(), Provenance::Defined, "loopy claw"),
        "c6prime" | "c6'" => named(
            with_semi_at_each_vertex(&cycle(6)),
            Provenance::Defined,
            "6-cycle with a semi-edge at each vertex",
        ),
        "prism" => named(
            odot(&with_semi_at_each_vertex(&complete(3))).0,
            Provenance::Defined,
            "triangular prism, odot of K3prime",
        ),
        "c6prism" => named(
            odot(&with_semi_at_each_vertex(&cycle(6))).0,
            Provenance::Defined,
            "prism over C6, odot of C6prime",
        ),
        _ => return Err(unknown()),
    };
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexId;

    #[test]
    fn flowers_and_dumbbells() {
        let f = make_flower(3, 0);
        assert_eq!((f.vertex_count(), f.semi_count()), (1, 3));
        assert_eq!(f.degree(VertexId(0)), 3);
        let f = make_flower(1, 1);
        assert_eq!((f.semi_count(), f.loop_count()), (1, 1));
        assert_eq!(f.degree(VertexId(0)), 3);
        assert_eq!(make_flower(0, 0).edge_count(), 0);

        for (args, d0, d1) in [
            ((0, 0, 3, 0, 0), 3, 3),
            ((1, 0, 2, 0, 1), 3, 3),
            ((0, 0, 1, 0, 0), 1, 1),
            ((2, 0, 1, 0, 2), 3, 3),
        ] {
            let (k, m, l, p, q) = args;
            let w = make_dumbbell(k, m, l, p, q);
            assert_eq!(w.degree(VertexId(0)), d0);
            assert_eq!(w.degree(VertexId(1)), d1);
        }
    }

    #[test]
    fn loopy_claw_shape() {
        let lc = catalog("LC").unwrap().graph;
        assert_eq!(lc.vertex_count(), 4);
        assert!(lc.is_cubic());
        assert_eq!(lc.loops_at(VertexId(0)), 0);
        for leaf in 1..4 {
            assert_eq!(lc.loops_at(VertexId(leaf)), 1);
            assert_eq!(lc.multiplicity(VertexId(0), VertexId(leaf)), 1);
        }
    }

    #[test]
    fn sausage_shape() {
        let sg = catalog("SG").unwrap().graph;
        assert_eq!(sg.vertex_count(), 4);
        assert_eq!(sg.loop_count(), 2);
        assert_eq!(sg.max_multiplicity(), 2);
        assert_eq!(sg.bridges().len(), 2);
        assert!(!sg.has_semi_edges());
    }

    #[test]
    fn chorded_cycle() {
        let g = catalog("C(8;4)").unwrap().graph;
        assert_eq!((g.vertex_count(), g.edge_count()), (8, 12));
        assert!(g.is_cubic() && g.is_simple());
    }

    #[test]
    fn every_small_cubic_graph_is_cubic() {
        let more = [
            "K4", "K33", "Q3", "Petersen", "C(8;4)", "K3prime", "C6prime", "H1", "prism", "C6prism",
        ];
        for name in SMALL_CUBIC.iter().chain(more.iter()) {
            let g = catalog(name).unwrap().graph;
            assert!(g.is_cubic(), "{name} is not cubic");
        }
    }

    #[test]
    fn catalog_is_deterministic() {
        for name in SMALL_CUBIC.iter().chain(FIXED_NAMES.iter()) {
            assert_eq!(catalog(name).unwrap().graph, catalog(name).unwrap().graph);
        }
    }

    #[test]
    fn cycles_and_paths() {
        assert_eq!(catalog("C5").unwrap().graph.edge_count(), 5);
        assert_eq!(catalog("C_1").unwrap().graph.loop_count(), 1);
        assert_eq!(catalog("C2").unwrap().graph.max_multiplicity(), 2);
        let p1 = catalog("P~1").unwrap().graph;
        assert_eq!((p1.vertex_count(), p1.semi_count()), (1, 2));
        assert_eq!(p1.degree(VertexId(0)), 2);
        let p3 = catalog("P~_3").unwrap().graph;
        assert!(p3.is_regular(2) && p3.is_connected());
    }

    #[test]
    fn unknown_names() {
        assert!(catalog("nope").is_err());
        assert!(catalog("F(1)").is_err());
        assert!(catalog("C0").is_err());
        assert!(catalog("C(8;8)").is_err());
    }
}
