//! Text formats: `.mg` graphs, projection certificates, witness lines and
//! DOT export.
//!
//! ```text
//! n 2
//! e 0 1
//! l 0
//! s 1
//! ```

use std::fmt::Write as _;

use crate::covers::CoverProjection;
use crate::error::{Error, Result};
use crate::graph::{EdgeKind, Multigraph};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn content(raw: &str) -> &str {
    raw.split('#').next().unwrap_or("").trim()
}

fn numbers<const N: usize>(line: usize, fields: &[&str]) -> Result<[usize; N]> {
    if fields.len() != N {
        return Err(parse_err(
            line,
            format!("expected {N} numbers, found {}", fields.len()),
        ));
    }
    let mut out = [0; N];
    for (slot, f) in out.iter_mut().zip(fields) {
        *slot = f
            .parse()
            .map_err(|_| parse_err(line, format!("`{f}` is not a nonnegative integer")))?;
    }
    Ok(out)
}

/// Parses the `.mg` format. Edge ids follow file order.
pub fn parse_mg(text: &str) -> Result<Multigraph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = content(raw);
        if body.is_empty() {
            continue;
        }
        let mut fields = body.split_whitespace();
        let tag = fields.next().unwrap_or_default();
        let rest: Vec<&str> = fields.collect();
        if tag == "n" {
            if n.is_some() {
                return Err(parse_err(line, "vertex count given twice"));
            }
            let [count] = numbers::<1>(line, &rest)?;
            n = Some(count);
            continue;
        }
        let Some(count) = n else {
            return Err(parse_err(
                line,
                "the vertex count line `n <count>` must come first",
            ));
        };
        let edge = match tag {
            "e" => {
                let [u, v] = numbers::<2>(line, &rest)?;
                if u == v {
                    return Err(parse_err(
                        line,
                        format!("normal edge {u} {v} has equal ends; use `l {u}`"),
                    ));
                }
                EdgeKind::normal(u, v)
            }
            "l" => EdgeKind::looped(numbers::<1>(line, &rest)?[0]),
            "s" => EdgeKind::semi(numbers::<1>(line, &rest)?[0]),
            other => return Err(parse_err(line, format!("unknown record `{other}`"))),
        };
        let (a, b) = edge.ends();
        if a >= count || b >= count {
            return Err(parse_err(
                line,
                format!("vertex {} out of range for {count} vertices", a.max(b)),
            ));
        }
        edges.push(edge);
    }
    let n = n.ok_or_else(|| parse_err(0, "missing vertex count line `n <count>`"))?;
    Multigraph::new(n, edges)
}

pub fn to_mg(g: &Multigraph) -> String {
    let mut s = format!("n {}\n", g.vertex_count());
    for (_, e) in g.edges() {
        match e {
            EdgeKind::Normal(u, v) => writeln!(s, "e {u} {v}"),
            EdgeKind::Loop(v) => writeln!(s, "l {v}"),
            EdgeKind::Semi(v) => writeln!(s, "s {v}"),
        }
        .expect("writing to a string");
    }
    s
}

/// DOT with loops as self-arcs and each semi-edge drawn to an invisible
/// stub node `__s<k>`, `k` counting semi-edges in edge order.
pub fn to_dot(g: &Multigraph, name: &str) -> String {
    let mut s = format!("graph \"{}\" {{\n", name.replace('"', "\\\""));
    for v in g.vertices() {
        writeln!(s, "  {v};").unwrap();
    }
    let mut stub = 0;
    for (_, e) in g.edges() {
        match e {
            EdgeKind::Normal(u, v) => writeln!(s, "  {u} -- {v};").unwrap(),
            EdgeKind::Loop(v) => writeln!(s, "  {v} -- {v};").unwrap(),
            EdgeKind::Semi(v) => {
                writeln!(s, "  __s{stub} [shape=point, style=invis];").unwrap();
                writeln!(s, "  {v} -- __s{stub};").unwrap();
                stub += 1;
            }
        }
    }
    s.push_str("}\n");
    s
}

/// `v <src> <dst>` lines for every source vertex, then `e <src> <dst>`.
pub fn write_certificate(p: &CoverProjection) -> String {
    let mut s = String::new();
    for (v, x) in p.vertex_map().iter().enumerate() {
        writeln!(s, "v {v} {x}").unwrap();
    }
    for (e, t) in p.edge_map().iter().enumerate() {
        writeln!(s, "e {e} {t}").unwrap();
    }
    s
}

/// Reads a certificate for the given pair of graphs. Every source vertex
/// and edge must be listed exactly once.
pub fn parse_certificate(
    text: &str,
    source: &Multigraph,
    target: &Multigraph,
) -> Result<CoverProjection> {
    let mut vmap: Vec<Option<usize>> = vec![None; source.vertex_count()];
    let mut emap: Vec<Option<usize>> = vec![None; source.edge_count()];
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = content(raw);
        if body.is_empty() {
            continue;
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        let (table, what) = match fields[0] {
            "v" => (&mut vmap, "vertex"),
            "e" => (&mut emap, "edge"),
            other => return Err(parse_err(line, format!("unknown record `{other}`"))),
        };
        let [src, dst] = numbers::<2>(line, &fields[1..])?;
        let slot = table.get_mut(src).ok_or_else(|| {
            Error::MalformedProjection(format!("source {what} {src} does not exist"))
        })?;
        if slot.replace(dst).is_some() {
            return Err(Error::MalformedProjection(format!(
                "source {what} {src} mapped twice"
            )));
        }
    }
    let collect = |table: Vec<Option<usize>>, what: &str| -> Result<Vec<usize>> {
        table
            .into_iter()
            .enumerate()
            .map(|(i, x)| {
                x.ok_or_else(|| {
                    Error::MalformedProjection(format!("source {what} {i} is unmapped"))
                })
            })
            .collect()
    };
    CoverProjection::new(
        source.clone(),
        target.clone(),
        collect(vmap, "vertex")?,
        collect(emap, "edge")?,
    )
}

/// `c <edge> <color>` per edge.
pub fn write_coloring(colors: &[usize]) -> String {
    colors
        .iter()
        .enumerate()
        .map(|(e, c)| format!("c {e} {c}\n"))
        .collect()
}

/// `m <edge>` per matching edge.
pub fn write_matching(edges: &[usize]) -> String {
    edges.iter().map(|e| format!("m {e}\n")).collect()
}

/// `p <vertex>` per code vertex.
pub fn write_code(vertices: &[usize]) -> String {
    vertices.iter().map(|v| format!("p {v}\n")).collect()
}
