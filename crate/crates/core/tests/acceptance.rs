//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on
//! any failure.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use graphcover::analysis::{
    chromatic_index, has_perfect_matching, has_semi_perfect_matching,
    semi_perfect_matching_brute_force,
};
use graphcover::catalog::{catalog, cycle, open_path, FIXED_NAMES, SMALL_CUBIC};
use graphcover::covers::{find_cover, fold_count, verify_cover, verify_semicover, ProjectionKind};
use graphcover::factory::{
    bridged_simple_cover, no_pm_cover, simple_pfold_cover, snark_cover, FoldSpec,
};
use graphcover::products::{odot, times_k2};
use graphcover::stronger::{
    classify_2regular, decide_stronger, divisibility_ok, figure5_report, PosetReport,
    StrongerEvidence,
};
use graphcover::{EdgeKind, Multigraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BUDGET: usize = 16;
const GOLDEN_DOT: &str = include_str!("golden/figure5.dot");

/// Covering pairs among the twelve graphs, transitively closed.
const EXPECTED_COVERS: &[(&str, &str)] = &[
    ("W(0,0,3,0,0)", "F(3,0)"),
    ("W(0,0,3,0,0)", "F(1,1)"),
    ("W(0,1,1,1,0)", "F(1,1)"),
    ("W(1,0,2,0,1)", "F(3,0)"),
    ("W(1,0,2,0,1)", "F(1,1)"),
    ("W(2,0,1,0,2)", "F(3,0)"),
    ("K4", "W(1,0,2,0,1)"),
    ("K4", "F(3,0)"),
    ("K4", "F(1,1)"),
    ("SG", "W(0,1,1,0,2)"),
    ("SG", "W(0,1,1,1,0)"),
    ("SG", "F(1,1)"),
    ("DG", "W(0,0,3,0,0)"),
    ("DG", "W(0,1,1,1,0)"),
    ("DG", "W(1,0,2,0,1)"),
    ("DG", "W(0,1,1,0,2)"),
    ("DG", "W(2,0,1,0,2)"),
    ("DG", "F(3,0)"),
    ("DG", "F(1,1)"),
    ("WG", "F(1,1)"),
];

/// Stronger pairs without a covering projection.
const EXPECTED_STRONGER_ONLY: &[(&str, &str)] = &[
    ("F(3,0)", "F(1,1)"),
    ("W(2,0,1,0,2)", "W(0,1,1,0,2)"),
    ("W(2,0,1,0,2)", "W(0,1,1,1,0)"),
    ("W(2,0,1,0,2)", "F(1,1)"),
    ("W(0,1,1,0,2)", "W(0,1,1,1,0)"),
    ("W(0,1,1,0,2)", "F(1,1)"),
];

/// Named witnesses `(W, A, Bs)`: `W` covers `A` and none of `Bs`.
const NAMED_WITNESSES: &[(&str, &str, &[&str])] = &[
    (
        "K4",
        "F(1,1)",
        &["W(0,1,1,1,0)", "W(0,1,1,0,2)", "W(2,0,1,0,2)"],
    ),
    (
        "K4",
        "F(3,0)",
        &[
            "W(0,0,3,0,0)",
            "W(0,1,1,1,0)",
            "W(0,1,1,0,2)",
            "W(2,0,1,0,2)",
        ],
    ),
    (
        "K4",
        "W(1,0,2,0,1)",
        &[
            "W(0,0,3,0,0)",
            "W(0,1,1,1,0)",
            "W(0,1,1,0,2)",
            "W(2,0,1,0,2)",
            "SG",
            "DG",
            "WG",
            "LC",
        ],
    ),
    (
        "K33",
        "W(0,0,3,0,0)",
        &[
            "W(0,1,1,1,0)",
            "W(1,0,2,0,1)",
            "W(0,1,1,0,2)",
            "W(2,0,1,0,2)",
        ],
    ),
    ("C(8;4)", "W(1,0,2,0,1)", &["K4"]),
    ("C(8;4)", "W(2,0,1,0,2)", &["K4"]),
    ("Q3", "W(0,1,1,0,2)", &["SG", "WG", "LC"]),
    ("Q3", "W(2,0,1,0,2)", &["SG", "WG", "LC"]),
    ("H1", "W(0,1,1,0,2)", &["W(0,0,3,0,0)", "W(1,0,2,0,1)"]),
    ("prism", "F(3,0)", &["W(1,0,2,0,1)"]),
    (
        "prism",
        "W(0,1,1,1,0)",
        &[
            "W(0,0,3,0,0)",
            "W(1,0,2,0,1)",
            "W(0,1,1,0,2)",
            "W(2,0,1,0,2)",
        ],
    ),
    ("C6prism", "DG", &["K4", "WG", "LC", "SG"]),
];

type Check = Result<String, String>;

fn g(name: &str) -> Multigraph {
    catalog(name)
        .unwrap_or_else(|e| panic!("{name}: {e}"))
        .graph
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cubic_catalog() -> Vec<String> {
    let mut names: Vec<String> = Vec::new();
    for n in SMALL_CUBIC
        .iter()
        .chain(FIXED_NAMES.iter())
        .copied()
        .chain(["C(8;4)", "C(10;5)"])
    {
        if g(n).is_cubic() && !names.iter().any(|m| m == n) {
            names.push(n.to_string());
        }
    }
    names
}

fn pairs_by_name(r: &PosetReport, pairs: &[(&str, &str)]) -> BTreeSet<(usize, usize)> {
    pairs
        .iter()
        .map(|(a, b)| (r.index_of(a).expect("node"), r.index_of(b).expect("node")))
        .collect()
}

fn relation(r: &PosetReport, f: impl Fn(usize, usize) -> bool) -> BTreeSet<(usize, usize)> {
    let n = r.nodes.len();
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && f(i, j))
        .collect()
}

fn show(r: &PosetReport, s: &BTreeSet<(usize, usize)>) -> String {
    s.iter()
        .map(|&(i, j)| format!("{}->{}", r.nodes[i], r.nodes[j]))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Re-checks a verdict's certificate from scratch.
fn audit(a: &Multigraph, b: &Multigraph, ev: &StrongerEvidence) -> Result<(), String> {
    match ev {
        StrongerEvidence::StrongerByCover(p) => ensure(
            p.source() == a && p.target() == b && verify_cover(p).is_ok(),
            || "bad cover certificate".into(),
        ),
        StrongerEvidence::StrongerBySemiCover(p) => ensure(
            p.source() == a && p.target() == b && verify_semicover(p).is_ok(),
            || "bad semi-cover certificate".into(),
        ),
        StrongerEvidence::StrongerByTheorem { support, .. } => {
            for p in support {
                ensure(verify_cover(p).is_ok() && p.target() == b, || {
                    "bad support projection".into()
                })?;
                ensure(
                    find_cover(p.source(), a, ProjectionKind::Cover)
                        .unwrap()
                        .is_some(),
                    || "support graph does not cover A".into(),
                )?;
            }
            Ok(())
        }
        StrongerEvidence::NotStrongerByDivisibility { .. } => {
            ensure(!divisibility_ok(a, b).unwrap(), || {
                "divisibility actually holds".into()
            })
        }
        StrongerEvidence::NotStrongerByWitness { projection, .. } => {
            let w = projection.source();
            ensure(w.is_simple(), || "witness not simple".into())?;
            ensure(
                projection.target() == a && verify_cover(projection).is_ok(),
                || "witness does not cover A".into(),
            )?;
            ensure(
                find_cover(w, b, ProjectionKind::Cover).unwrap().is_none(),
                || "witness covers B".into(),
            )
        }
        StrongerEvidence::Unknown { reason, .. } => Err(format!("undecided: {reason}")),
    }
}

fn criterion1(r: &PosetReport, elapsed: Duration) -> Check {
    let got = relation(r, |i, j| r.covers(i, j));
    let want = pairs_by_name(r, EXPECTED_COVERS);
    ensure(got == want, || {
        format!(
            "missing [{}] extra [{}]",
            show(r, &want.difference(&got).copied().collect()),
            show(r, &got.difference(&want).copied().collect())
        )
    })?;
    for i in 0..r.nodes.len() {
        for j in 0..r.nodes.len() {
            if let StrongerEvidence::StrongerByCover(p) = &r.stronger[i][j] {
                ensure(verify_cover(p).is_ok(), || {
                    format!("certificate {}->{} fails", r.nodes[i], r.nodes[j])
                })?;
            }
        }
    }
    ensure(r.to_dot() == GOLDEN_DOT, || {
        "DOT differs from the golden file".into()
    })?;
    ensure(elapsed <= Duration::from_secs(30), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "{} cover pairs, golden DOT matches, {elapsed:.2?}",
        got.len()
    ))
}

fn criterion2(r: &PosetReport, elapsed: Duration) -> Check {
    let got = relation(r, |i, j| r.is_stronger(i, j));
    let mut want = pairs_by_name(r, EXPECTED_COVERS);
    want.extend(pairs_by_name(r, EXPECTED_STRONGER_ONLY));
    ensure(got == want, || {
        format!(
            "missing [{}] extra [{}]",
            show(r, &want.difference(&got).copied().collect()),
            show(r, &got.difference(&want).copied().collect())
        )
    })?;
    for (a, b) in [
        ("F(3,0)", "F(1,1)"),
        ("W(2,0,1,0,2)", "W(0,1,1,0,2)"),
        ("W(0,1,1,0,2)", "W(0,1,1,1,0)"),
    ] {
        let ev = &r.stronger[r.index_of(a).unwrap()][r.index_of(b).unwrap()];
        ensure(
            matches!(ev, StrongerEvidence::StrongerBySemiCover(_)),
            || format!("{a} > {b} by {}", ev.label()),
        )?;
    }
    let graphs: Vec<Multigraph> = r.nodes.iter().map(|n| g(n)).collect();
    let mut witnesses = 0;
    for i in 0..r.nodes.len() {
        for j in 0..r.nodes.len() {
            if i != j {
                audit(&graphs[i], &graphs[j], &r.stronger[i][j])
                    .map_err(|e| format!("{} vs {}: {e}", r.nodes[i], r.nodes[j]))?;
                witnesses += usize::from(r.stronger[i][j].witness().is_some());
            }
        }
    }
    let mut named = 0;
    for &(w, a, bs) in NAMED_WITNESSES {
        let (wg, ag) = (g(w), g(a));
        ensure(wg.is_simple(), || format!("{w} is not simple"))?;
        let p = find_cover(&wg, &ag, ProjectionKind::Cover).unwrap();
        ensure(p.as_ref().is_some_and(|p| verify_cover(p).is_ok()), || {
            format!("{w} does not cover {a}")
        })?;
        for b in bs {
            ensure(
                find_cover(&wg, &g(b), ProjectionKind::Cover)
                    .unwrap()
                    .is_none(),
                || format!("{w} covers {b}"),
            )?;
            let ev = &r.stronger[r.index_of(a).unwrap()][r.index_of(b).unwrap()];
            ensure(ev.verdict() == Some(false), || {
                format!("{a} vs {b}: {}", ev.label())
            })?;
            named += 1;
        }
    }
    ensure(elapsed <= Duration::from_secs(600), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "{} stronger pairs, {witnesses} audited witnesses, {named} named witness checks",
        got.len()
    ))
}

fn criterion3() -> Check {
    let f30 = g("F(3,0)");
    let names = cubic_catalog();
    for name in &names {
        let a = g(name);
        let colourable = chromatic_index(&a).value() == Some(3);
        let covers = find_cover(&a, &f30, ProjectionKind::Cover)
            .unwrap()
            .is_some();
        let ev = decide_stronger(&a, &f30, BUDGET).unwrap();
        audit(&a, &f30, &ev).map_err(|e| format!("{name}: {e}"))?;
        ensure(
            ev.verdict() == Some(colourable) && colourable == covers,
            || {
                format!(
                    "{name}: verdict {:?}, 3-colourable {colourable}, covers {covers}",
                    ev.verdict()
                )
            },
        )?;
    }
    Ok(format!("{} cubic graphs, zero mismatches", names.len()))
}

fn criterion4() -> Check {
    let f11 = g("F(1,1)");
    let names = cubic_catalog();
    for name in &names {
        let a = g(name);
        let spm = has_semi_perfect_matching(&a).is_some();
        let semi = find_cover(&a, &f11, ProjectionKind::SemiCover)
            .unwrap()
            .is_some();
        let ev = decide_stronger(&a, &f11, BUDGET).unwrap();
        audit(&a, &f11, &ev).map_err(|e| format!("{name}: {e}"))?;
        ensure(ev.verdict() == Some(spm) && spm == semi, || {
            format!(
                "{name}: verdict {:?}, semi-perfect matching {spm}, semi-cover {semi}",
                ev.verdict()
            )
        })?;
    }
    Ok(format!("{} cubic graphs, zero mismatches", names.len()))
}

fn criterion5() -> Check {
    let pet = g("Petersen");
    ensure(chromatic_index(&pet).value() == Some(4), || {
        "chromatic index is not 4".into()
    })?;
    let p = find_cover(&pet, &g("F(1,1)"), ProjectionKind::Cover)
        .unwrap()
        .ok_or("no cover of F(1,1)")?;
    ensure(verify_cover(&p).is_ok(), || {
        "cover of F(1,1) fails verification".into()
    })?;
    let fold = fold_count(&p).unwrap();
    ensure(fold == 10, || format!("cover of F(1,1) is {fold}-fold"))?;
    ensure(
        find_cover(&pet, &g("F(3,0)"), ProjectionKind::Cover)
            .unwrap()
            .is_none(),
        || "covers F(3,0)".into(),
    )?;
    Ok(format!(
        "chi' = 4, covers F(1,1) {fold}-fold, does not cover F(3,0)"
    ))
}

fn random_multigraph(rng: &mut ChaCha8Rng) -> Multigraph {
    let n = rng.gen_range(1..=8);
    let mut edges = Vec::new();
    for v in 0..n {
        for _ in 0..rng.gen_range(0..=2) {
            if rng.gen_bool(0.35) {
                edges.push(EdgeKind::looped(v));
            }
        }
        for _ in 0..rng.gen_range(0..=2) {
            if rng.gen_bool(0.5) {
                edges.push(EdgeKind::semi(v));
            }
        }
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(0.3) {
                for _ in 0..rng.gen_range(1..=3) {
                    edges.push(EdgeKind::normal(u, v));
                }
            }
        }
    }
    Multigraph::new(n, edges).unwrap()
}

fn criterion6() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let cases = 600;
    for t in 0..cases {
        let gr = random_multigraph(&mut rng);
        let fail = |what: &str| format!("case {t}: {what} for\n{}", graphcover::format::to_mg(&gr));
        let (x, px) = times_k2(&gr);
        let (o, po) = odot(&gr);
        ensure(x.is_bipartite(), || fail("G^x not bipartite"))?;
        ensure(
            x.is_connected() == (gr.is_connected() && !gr.is_bipartite()),
            || fail("G^x connectivity"),
        )?;
        ensure(
            verify_cover(&px).is_ok() && verify_cover(&po).is_ok(),
            || fail("projection"),
        )?;
        ensure(
            chromatic_index(&o).value() == chromatic_index(&gr).value(),
            || fail("chromatic index of G^odot"),
        )?;
        let spm = has_semi_perfect_matching(&gr);
        ensure(spm.is_some() == has_perfect_matching(&o).is_some(), || {
            fail("matching transfer")
        })?;
        if gr.edge_count() <= 14 {
            ensure(
                spm.is_some() == semi_perfect_matching_brute_force(&gr).is_some(),
                || fail("matching oracle"),
            )?;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed <= Duration::from_secs(120), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "{cases} random multigraphs, zero violations, {elapsed:.2?}"
    ))
}

fn criterion7() -> Check {
    let mut bases: Vec<Multigraph> = SMALL_CUBIC.iter().map(|n| g(n)).collect();
    bases.extend(
        [
            "K3prime", "C6prime", "Petersen", "H1", "C5", "P~3", "F(0,2)", "F(2,1)",
        ]
        .map(g),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    while bases.len() < 40 {
        let r = random_multigraph(&mut rng);
        if r.is_connected() {
            bases.push(r);
        }
    }
    let mut cases = 0;
    for base in &bases {
        let spec = FoldSpec::of(base);
        let admissible: Vec<usize> = (spec.min_fold..)
            .filter(|&p| spec.admits(p))
            .take(5)
            .collect();
        for p in admissible {
            let (h, proj) = simple_pfold_cover(base, p).map_err(|e| format!("p={p}: {e}"))?;
            ensure(h.is_simple() && verify_cover(&proj).is_ok(), || {
                format!("p={p} invalid")
            })?;
            ensure(
                fold_count(&proj) == Ok(p) && h.vertex_count() == p * base.vertex_count(),
                || format!("p={p} wrong fold"),
            )?;
            cases += 1;
        }
    }
    ensure(cases >= 200, || format!("only {cases} grid cases"))?;

    let (h, p) = bridged_simple_cover(&g("SG")).map_err(|e| e.to_string())?;
    ensure(
        h.is_simple() && verify_cover(&p).is_ok() && !h.bridges().is_empty(),
        || "bridged SG".into(),
    )?;
    for name in ["F(1,1)", "W(0,1,1,1,0)"] {
        let (h, p) = snark_cover(&g(name)).map_err(|e| e.to_string())?;
        ensure(h.is_simple() && verify_cover(&p).is_ok(), || {
            format!("snark cover of {name} invalid")
        })?;
        ensure(chromatic_index(&h).exceeds(3), || {
            format!("snark cover of {name} is 3-edge-colourable")
        })?;
    }
    let lc = g("LC");
    let (h, p) = no_pm_cover(&lc).map_err(|e| e.to_string())?;
    ensure(
        h.is_simple() && verify_cover(&p).is_ok() && has_perfect_matching(&h).is_none(),
        || "LC cover".into(),
    )?;
    let fold = fold_count(&p).unwrap();
    Ok(format!(
        "{cases} grid cases plus directed constructions (LC cover is {fold}-fold)"
    ))
}

fn criterion8(r: &PosetReport) -> Check {
    let mut checked = 0;
    for i in 0..r.nodes.len() {
        for j in 0..r.nodes.len() {
            if r.is_stronger(i, j) {
                ensure(
                    divisibility_ok(&g(&r.nodes[i]), &g(&r.nodes[j])).unwrap(),
                    || format!("{} > {} breaks divisibility", r.nodes[i], r.nodes[j]),
                )?;
                checked += 1;
            }
        }
    }
    for name in cubic_catalog() {
        for target in ["F(3,0)", "F(1,1)"] {
            let (a, b) = (g(&name), g(target));
            if decide_stronger(&a, &b, BUDGET).unwrap().verdict() == Some(true) {
                ensure(divisibility_ok(&a, &b).unwrap(), || {
                    format!("{name} > {target} breaks divisibility")
                })?;
                checked += 1;
            }
        }
    }
    let (a, b) = (open_path(2), cycle(4));
    let ev = decide_stronger(&a, &b, BUDGET).unwrap();
    ensure(ev.verdict() == Some(true), || {
        format!("P~2 vs C4: {}", ev.label())
    })?;
    audit(&a, &b, &ev)?;
    let support = match &ev {
        StrongerEvidence::StrongerByTheorem { support, .. } => support.len(),
        _ => 1,
    };
    ensure(support > 0, || "empty search certificate".into())?;
    Ok(format!(
        "{checked} stronger verdicts divisible; P~2 > C4 with {support} certified covers"
    ))
}

/// Brute force: a connected simple cover of a 2-regular graph is a cycle,
/// so compare over all cycles with at most 24 vertices.
fn brute_2regular(a: &Multigraph, b: &Multigraph) -> bool {
    (3..=24).all(|j| {
        let c = cycle(j);
        find_cover(&c, a, ProjectionKind::Cover).unwrap().is_none()
            || find_cover(&c, b, ProjectionKind::Cover).unwrap().is_some()
    })
}

fn criterion9() -> Check {
    let mut pairs = 0;
    for n in 1..=6 {
        for m in 1..=6 {
            for (a, b, fam) in [
                (cycle(n), cycle(m), "C/C"),
                (cycle(n), open_path(m), "C/P"),
                (open_path(n), cycle(m), "P/C"),
                (open_path(n), open_path(m), "P/P"),
            ] {
                let rule = classify_2regular(&a, &b)
                    .ok_or_else(|| format!("{fam} {n},{m} not classified"))?;
                let brute = brute_2regular(&a, &b);
                ensure(rule == brute, || {
                    format!("{fam} n={n} m={m}: rule {rule}, brute force {brute}")
                })?;
                let ev = decide_stronger(&a, &b, BUDGET).unwrap();
                ensure(ev.verdict() == Some(rule), || {
                    format!("{fam} n={n} m={m}: decide gives {}", ev.label())
                })?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs, zero mismatches"))
}

fn run(id: usize, title: &str, f: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        Err(p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into()))
    });
    let secs = start.elapsed().as_secs_f64();
    match outcome {
        Ok(detail) => {
            println!("criterion {id} PASS  {title}: {detail} [{secs:.2}s]");
            true
        }
        Err(why) => {
            println!("criterion {id} FAIL  {title}: {why} [{secs:.2}s]");
            false
        }
    }
}

fn main() {
    let start = Instant::now();
    let report = figure5_report(BUDGET);
    let elapsed = start.elapsed();
    let report = match report {
        Ok(r) => Some(r),
        Err(e) => {
            println!("figure 5 report failed: {e}");
            None
        }
    };
    let with = |f: &dyn Fn(&PosetReport) -> Check| -> Check {
        report.as_ref().map_or_else(|| Err("no report".into()), f)
    };
    let results = [
        run(1, "cover matrix of the twelve small cubic graphs", || {
            with(&|r| criterion1(r, elapsed))
        }),
        run(2, "stronger matrix with audited witnesses", || {
            with(&|r| criterion2(r, elapsed))
        }),
        run(3, "stronger than F(3,0) iff 3-edge-colourable", criterion3),
        run(
            4,
            "stronger than F(1,1) iff semi-perfect matching",
            criterion4,
        ),
        run(5, "Petersen graph sanity", criterion5),
        run(6, "product properties on random multigraphs", criterion6),
        run(7, "factory post-conditions", criterion7),
        run(8, "divisibility of stronger verdicts", || with(&criterion8)),
        run(9, "2-regular rules against brute force", criterion9),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
