//! The `cover` command line tool.
//!
//! Graph arguments are `.mg` paths, `-` for standard input or `@NAME` for
//! a catalog graph. Exit codes: 0 affirmative, 1 negative, 2 usage or
//! input error, 3 undecided.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::analysis::{
    chromatic_index, covers_f11, has_perfect_code, has_perfect_matching, has_semi_perfect_matching,
    minimal_good_sets, ChromaticIndex,
};
use crate::catalog::catalog;
use crate::covers::{find_cover, fold_count, verify, CoverProjection, ProjectionKind};
use crate::error::{Error, Result};
use crate::factory::{bridged_simple_cover, no_pm_cover, simple_pfold_cover, snark_cover};
use crate::format::{
    parse_certificate, parse_mg, to_dot, to_mg, write_certificate, write_code, write_coloring,
    write_matching,
};
use crate::graph::Multigraph;
use crate::products::{odot, times_k2};
use crate::stronger::{
    cover_poset, decide_stronger, figure5_graphs, StrongerEvidence, DEFAULT_BUDGET,
};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "cover",
    version,
    about = "Covering projections of multigraphs with semi-edges"
)]
struct Cli {
    /// Structured JSON output
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct CertOut {
    /// Write the projection certificate to this file
    #[arg(long, value_name = "PATH")]
    cert: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct ProductKind {
    #[arg(long)]
    times: bool,
    #[arg(long)]
    odot: bool,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct FactoryKind {
    /// Simple cover with a bridge
    #[arg(long)]
    bridged: bool,
    /// Simple cover that is not 3-edge-colourable
    #[arg(long)]
    snark: bool,
    /// Simple cover without a perfect matching
    #[arg(long)]
    nopm: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Search for a covering projection G -> H
    Check {
        g: String,
        h: String,
        #[command(flatten)]
        out: CertOut,
    },
    /// Search for a semi-covering projection G -> H
    Semicheck {
        g: String,
        h: String,
        #[command(flatten)]
        out: CertOut,
    },
    /// Replay a certificate
    Verify {
        g: String,
        h: String,
        cert: String,
        /// Check it as a semi-covering projection
        #[arg(long)]
        semi: bool,
    },
    /// Canonical double cover
    Product {
        #[command(flatten)]
        kind: ProductKind,
        g: String,
        #[command(flatten)]
        out: CertOut,
    },
    /// Simple p-fold cover
    Pfold {
        #[arg(short)]
        p: usize,
        g: String,
        #[command(flatten)]
        out: CertOut,
    },
    /// Chromatic index with an optimal colouring
    Chi { g: String },
    /// Perfect matching, or a semi-perfect one with --semi
    Matching {
        g: String,
        #[arg(long)]
        semi: bool,
        /// Print a covering projection onto F(1,1)
        #[arg(long, conflicts_with = "semi")]
        f11: bool,
    },
    /// 1-perfect code
    Code { g: String },
    /// Inclusion-minimal good sets
    Goodsets { g: String },
    /// Constructed simple covers
    Factory {
        #[command(flatten)]
        kind: FactoryKind,
        g: String,
        #[command(flatten)]
        out: CertOut,
    },
    /// Decide whether A is stronger than B
    Stronger {
        a: String,
        b: String,
        /// Largest witness, in vertices
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        /// Write a refuting witness graph to this file
        #[arg(long, value_name = "PATH")]
        witness: Option<PathBuf>,
        #[command(flatten)]
        out: CertOut,
    },
    /// Cover and stronger relations over a directory of .mg files
    Poset {
        /// Use the twelve small cubic graphs
        #[arg(long)]
        figure5: bool,
        #[arg(required_unless_present = "figure5", conflicts_with = "figure5")]
        dir: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Print a catalog graph
    Cat { name: String },
    /// Export a graph
    Export {
        #[arg(long, required = true)]
        dot: bool,
        g: String,
    },
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    out: String,
    json: bool,
}

impl Io<'_> {
    fn graph(&mut self, arg: &str) -> Result<Multigraph> {
        if let Some(name) = arg.strip_prefix('@') {
            return Ok(catalog(name)?.graph);
        }
        parse_mg(&self.text(arg)?)
    }

    fn text(&mut self, arg: &str) -> Result<String> {
        if arg == "-" {
            let mut s = String::new();
            self.stdin
                .read_to_string(&mut s)
                .map_err(|e| Error::Unsupported(format!("cannot read standard input: {e}")))?;
            return Ok(s);
        }
        std::fs::read_to_string(arg)
            .map_err(|e| Error::Unsupported(format!("cannot read {arg}: {e}")))
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.out.push_str(s.as_ref());
        self.out.push('\n');
    }

    fn emit_json(&mut self, v: Value) {
        let text = serde_json::to_string_pretty(&v).expect("JSON values serialize");
        self.line(text);
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text)
        .map_err(|e| Error::Unsupported(format!("cannot write {}: {e}", path.display())))
}

fn projection_json(p: &CoverProjection) -> Value {
    json!({
        "source": to_mg(p.source()),
        "fold": fold_count(p).ok(),
        "vertex_map": p.vertex_map(),
        "edge_map": p.edge_map(),
    })
}

fn save_cert(out: &CertOut, p: &CoverProjection) -> Result<()> {
    match &out.cert {
        Some(path) => write_file(path, &write_certificate(p)),
        None => Ok(()),
    }
}

/// Output of graph-building commands: the `.mg` text, certificate to file.
fn emit_built(io: &mut Io, out: &CertOut, built: (Multigraph, CoverProjection)) -> Result<i32> {
    let (h, p) = built;
    save_cert(out, &p)?;
    if io.json {
        io.emit_json(json!({ "graph": to_mg(&h), "projection": projection_json(&p) }));
    } else {
        io.out.push_str(&to_mg(&h));
    }
    Ok(EXIT_YES)
}

fn search(io: &mut Io, g: &str, h: &str, out: &CertOut, kind: ProjectionKind) -> Result<i32> {
    let (g, h) = (io.graph(g)?, io.graph(h)?);
    let found = find_cover(&g, &h, kind)?;
    if let Some(p) = &found {
        save_cert(out, p)?;
    }
    if io.json {
        io.emit_json(json!({ "kind": kind, "found": found.is_some(), "projection": found.as_ref().map(projection_json) }));
    } else {
        match &found {
            Some(p) => {
                io.line(format!("{kind} found ({}-fold)", fold_count(p)?));
                io.out.push_str(&write_certificate(p));
            }
            None => io.line(format!(
                "no {} projection (exhaustive)",
                if kind == ProjectionKind::Cover {
                    "covering"
                } else {
                    "semi-covering"
                }
            )),
        }
    }
    Ok(if found.is_some() { EXIT_YES } else { EXIT_NO })
}

fn evidence_json(ev: &StrongerEvidence) -> Value {
    let mut v = json!({ "verdict": ev.label(), "stronger": ev.verdict() });
    match ev {
        StrongerEvidence::StrongerByCover(p) | StrongerEvidence::StrongerBySemiCover(p) => {
            v["projection"] = projection_json(p);
        }
        StrongerEvidence::StrongerByTheorem { theorem, support } => {
            v["theorem"] = json!(theorem);
            v["support"] = support.iter().map(projection_json).collect();
        }
        StrongerEvidence::NotStrongerByDivisibility {
            a_vertices,
            b_vertices,
        } => {
            v["a_vertices"] = json!(a_vertices);
            v["b_vertices"] = json!(b_vertices);
        }
        StrongerEvidence::NotStrongerByWitness { projection, source } => {
            v["source"] = json!(source);
            v["witness"] = projection_json(projection);
        }
        StrongerEvidence::Unknown { budget, reason } => {
            v["budget"] = json!(budget);
            v["reason"] = json!(reason);
        }
    }
    v
}

fn stronger(
    io: &mut Io,
    a: &str,
    b: &str,
    budget: usize,
    witness: Option<&Path>,
    out: &CertOut,
) -> Result<i32> {
    let (a, b) = (io.graph(a)?, io.graph(b)?);
    let ev = decide_stronger(&a, &b, budget)?;
    let cert = match &ev {
        StrongerEvidence::StrongerByCover(p) | StrongerEvidence::StrongerBySemiCover(p) => Some(p),
        StrongerEvidence::NotStrongerByWitness { projection, .. } => Some(projection),
        _ => None,
    };
    if let Some(p) = cert {
        save_cert(out, p)?;
    }
    if let (Some(path), Some(w)) = (witness, ev.witness()) {
        write_file(path, &to_mg(w))?;
    }
    if io.json {
        io.emit_json(evidence_json(&ev));
    } else {
        io.line(format!("verdict: {}", ev.label()));
        match &ev {
            StrongerEvidence::StrongerByCover(p) | StrongerEvidence::StrongerBySemiCover(p) => {
                io.line(format!("fold: {}", fold_count(p)?));
            }
            StrongerEvidence::StrongerByTheorem { theorem, support } => {
                io.line(format!("theorem: {theorem:?}"));
                io.line(format!("checked covers: {}", support.len()));
            }
            StrongerEvidence::NotStrongerByDivisibility {
                a_vertices,
                b_vertices,
            } => {
                io.line(format!(
                    "{b_vertices} vertices do not divide the required multiple of {a_vertices}"
                ));
            }
            StrongerEvidence::NotStrongerByWitness { projection, source } => {
                let w = projection.source();
                io.line(format!(
                    "witness: {} vertices, {} edges, from {source:?}",
                    w.vertex_count(),
                    w.edge_count()
                ));
                io.line("witness covers A and has no covering projection onto B (exhaustive)");
            }
            StrongerEvidence::Unknown { reason, .. } => io.line(format!("reason: {reason}")),
        }
    }
    Ok(match ev.verdict() {
        Some(true) => EXIT_YES,
        Some(false) => EXIT_NO,
        None => EXIT_UNKNOWN,
    })
}

fn poset(io: &mut Io, figure5: bool, dir: Option<&Path>, budget: usize) -> Result<i32> {
    let graphs = if figure5 {
        figure5_graphs()
    } else {
        let dir = dir.expect("clap requires a directory");
        let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
            .map_err(|e| Error::Unsupported(format!("cannot read {}: {e}", dir.display())))?
            .filter_map(|entry| entry.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "mg"))
            .collect();
        paths.sort();
        let mut graphs = Vec::new();
        for p in paths {
            let name = p
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            graphs.push((name, io.graph(&p.to_string_lossy())?));
        }
        graphs
    };
    let report = cover_poset(&graphs, budget)?;
    if io.json {
        io.emit_json(report.to_json());
    } else {
        io.out.push_str(&report.to_dot());
    }
    Ok(EXIT_YES)
}

fn execute(cli: Cli, io: &mut Io) -> Result<i32> {
    match cli.command {
        Command::Check { g, h, out } => search(io, &g, &h, &out, ProjectionKind::Cover),
        Command::Semicheck { g, h, out } => search(io, &g, &h, &out, ProjectionKind::SemiCover),
        Command::Verify { g, h, cert, semi } => {
            let (g, h) = (io.graph(&g)?, io.graph(&h)?);
            let text = io.text(&cert)?;
            let p = parse_certificate(&text, &g, &h)?;
            let kind = if semi {
                ProjectionKind::SemiCover
            } else {
                ProjectionKind::Cover
            };
            let verdict = verify(&p, kind);
            if io.json {
                io.emit_json(json!({ "kind": kind, "ok": verdict.is_ok(), "violations": verdict.violations }));
            } else if verdict.is_ok() {
                io.line(format!("valid {kind}"));
            } else {
                for v in &verdict.violations {
                    io.line(format!("violation {v}"));
                }
            }
            Ok(if verdict.is_ok() { EXIT_YES } else { EXIT_NO })
        }
        Command::Product { kind, g, out } => {
            let g = io.graph(&g)?;
            let built = if kind.odot { odot(&g) } else { times_k2(&g) };
            emit_built(io, &out, built)
        }
        Command::Pfold { p, g, out } => {
            let g = io.graph(&g)?;
            let built = simple_pfold_cover(&g, p)?;
            emit_built(io, &out, built)
        }
        Command::Chi { g } => {
            let g = io.graph(&g)?;
            let chi = chromatic_index(&g);
            if io.json {
                io.emit_json(json!({ "chromatic_index": chi.value(), "infinite": chi.value().is_none(), "coloring": chi }));
            } else {
                match &chi {
                    ChromaticIndex::Finite(c) => {
                        io.line(format!("chromatic index {}", c.palette_size));
                        io.out.push_str(&write_coloring(&c.colors));
                    }
                    ChromaticIndex::Infinite => {
                        io.line("chromatic index infinite (the graph has a loop)")
                    }
                }
            }
            Ok(EXIT_YES)
        }
        Command::Matching { g, semi, f11 } => {
            let g = io.graph(&g)?;
            if f11 {
                let p = covers_f11(&g)?;
                if io.json {
                    io.emit_json(json!({ "found": p.is_some(), "projection": p.as_ref().map(projection_json) }));
                } else if let Some(p) = &p {
                    io.out.push_str(&write_certificate(p));
                } else {
                    io.line("no covering projection onto F(1,1)");
                }
                return Ok(if p.is_some() { EXIT_YES } else { EXIT_NO });
            }
            let m = if semi {
                has_semi_perfect_matching(&g).map(|m| m.edges)
            } else {
                has_perfect_matching(&g)
            };
            let what = if semi { "semi-perfect" } else { "perfect" };
            if io.json {
                io.emit_json(json!({ "kind": what, "found": m.is_some(), "edges": m }));
            } else if let Some(m) = &m {
                io.out.push_str(&write_matching(m));
            } else {
                io.line(format!("no {what} matching"));
            }
            Ok(if m.is_some() { EXIT_YES } else { EXIT_NO })
        }
        Command::Code { g } => {
            let g = io.graph(&g)?;
            let code = has_perfect_code(&g);
            if io.json {
                io.emit_json(json!({ "found": code.is_some(), "vertices": code }));
            } else if let Some(c) = &code {
                io.out.push_str(&write_code(c));
            } else {
                io.line("no 1-perfect code");
            }
            Ok(if code.is_some() { EXIT_YES } else { EXIT_NO })
        }
        Command::Goodsets { g } => {
            let g = io.graph(&g)?;
            let sets = minimal_good_sets(&g)?;
            if io.json {
                io.emit_json(json!({ "good_sets": sets }));
            } else {
                for s in &sets {
                    let vs: Vec<String> = s.vertices.iter().map(ToString::to_string).collect();
                    io.line(format!(
                        "{{{}}} odd components {}{}",
                        vs.join(","),
                        s.odd_components,
                        if s.very_good { " very good" } else { "" }
                    ));
                }
                if sets.is_empty() {
                    io.line("no good set");
                }
            }
            Ok(if sets.is_empty() { EXIT_NO } else { EXIT_YES })
        }
        Command::Factory { kind, g, out } => {
            let g = io.graph(&g)?;
            let built = if kind.bridged {
                bridged_simple_cover(&g)?
            } else if kind.snark {
                snark_cover(&g)?
            } else {
                no_pm_cover(&g)?
            };
            emit_built(io, &out, built)
        }
        Command::Stronger {
            a,
            b,
            budget,
            witness,
            out,
        } => stronger(io, &a, &b, budget, witness.as_deref(), &out),
        Command::Poset {
            figure5,
            dir,
            budget,
        } => poset(io, figure5, dir.as_deref(), budget),
        Command::Cat { name } => {
            let g = catalog(&name)?;
            if io.json {
                io.emit_json(json!({ "name": g.name, "note": g.note, "graph": to_mg(&g.graph) }));
            } else {
                io.out.push_str(&to_mg(&g.graph));
            }
            Ok(EXIT_YES)
        }
        Command::Export { g, .. } => {
            let name = g.trim_start_matches('@').to_string();
            let g = io.graph(&g)?;
            io.out.push_str(&to_dot(&g, &name));
            Ok(EXIT_YES)
        }
    }
}

/// Runs one invocation; output is written only after the command finishes.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let informational = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let sink: &mut dyn Write = if informational { stdout } else { stderr };
            let _ = write!(sink, "{}", e.render());
            return if informational { EXIT_YES } else { EXIT_ERROR };
        }
    };
    let mut io = Io {
        stdin,
        out: String::new(),
        json: cli.json,
    };
    match execute(cli, &mut io) {
        Ok(code) => {
            let _ = stdout.write_all(io.out.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_ERROR
        }
    }
}
