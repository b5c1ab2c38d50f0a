//! Evidence for and against `A ▷ B`: every simple graph covering `A` also
//! covers `B`.

mod lift;
mod poset;

pub use lift::{enumerate_simple_covers, for_each_simple_cover, EnumStatus, LIFT_VERTEX_CAP};
pub use poset::{cover_poset, figure5_graphs, figure5_report, PosetReport, POSET_VERTEX_CAP};

use serde::Serialize;

use crate::analysis::{chromatic_index, has_semi_perfect_matching};
use crate::catalog::cycle;
use crate::covers::{find_cover, CoverProjection, ProjectionKind};
use crate::error::{Error, Result};
use crate::factory::{simple_pfold_cover, snark_cover, witness_not_f11, Built};
use crate::graph::Multigraph;

/// Default witness budget, in vertices.
pub const DEFAULT_BUDGET: usize = LIFT_VERTEX_CAP;

/// Voltage nodes the enumeration may spend per fold count.
const ENUMERATION_NODE_LIMIT: u64 = 20_000_000;

/// Results that decide a pair without a covering projection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Theorem {
    /// Cycles and open paths: `C_n ▷ C_m` iff `m | n`, `C_n ▷ P_m` iff
    /// `2m | n`, `P_n ▷ C_m` iff `m | 2n`, `P_n ▷ P_m` iff `m | n`.
    TwoRegular,
}

/// Where a refuting witness came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WitnessSource {
    /// `A` is simple, so it is its own witness.
    SimpleBase,
    /// A cycle covering a cycle or open path.
    CycleCover,
    /// An odd-fold simple cover of a dipole.
    OddDipoleFold,
    /// A simple cover with chromatic index above 3.
    SnarkCover,
    /// A simple cover without a perfect matching.
    NoPerfectMatchingCover,
    /// Found by enumerating simple covers of this fold.
    Enumeration { fold: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StrongerEvidence {
    StrongerByCover(CoverProjection),
    StrongerBySemiCover(CoverProjection),
    /// `support` projects every simple cover of `A` within the budget onto `B`.
    StrongerByTheorem {
        theorem: Theorem,
        support: Vec<CoverProjection>,
    },
    NotStrongerByDivisibility {
        a_vertices: usize,
        b_vertices: usize,
    },
    /// `witness` is simple, `projection` maps it onto `A`, and an exhaustive
    /// search found no covering projection from it onto `B`.
    NotStrongerByWitness {
        projection: CoverProjection,
        source: WitnessSource,
    },
    Unknown {
        budget: usize,
        reason: String,
    },
}

impl StrongerEvidence {
    /// `Some(true)` for `A ▷ B`, `Some(false)` against, `None` if unknown.
    pub fn verdict(&self) -> Option<bool> {
        match self {
            Self::StrongerByCover(_)
            | Self::StrongerBySemiCover(_)
            | Self::StrongerByTheorem { .. } => Some(true),
            Self::NotStrongerByDivisibility { .. } | Self::NotStrongerByWitness { .. } => {
                Some(false)
            }
            Self::Unknown { .. } => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Self::StrongerByCover(_) => "stronger-by-cover",
            Self::StrongerBySemiCover(_) => "stronger-by-semicover",
            Self::StrongerByTheorem { .. } => "stronger-by-theorem",
            Self::NotStrongerByDivisibility { .. } => "not-stronger-by-divisibility",
            Self::NotStrongerByWitness { .. } => "not-stronger-by-witness",
            Self::Unknown { .. } => "unknown",
        }
    }

    pub fn witness(&self) -> Option<&Multigraph> {
        match self {
            Self::NotStrongerByWitness { projection, .. } => Some(projection.source()),
            _ => None,
        }
    }
}

fn require_connected(g: &Multigraph, what: &str) -> Result<()> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{what} must be connected")))
    }
}

/// Necessary condition for `A ▷ B`: `|V(B)|` divides `2|V(A)|`, and
/// divides `|V(A)|` when `A` has no semi-edges.
pub fn divisibility_ok(a: &Multigraph, b: &Multigraph) -> Result<bool> {
    require_connected(a, "A")?;
    require_connected(b, "B")?;
    let (na, nb) = (a.vertex_count(), b.vertex_count());
    Ok(if a.has_semi_edges() {
        (2 * na) % nb == 0
    } else {
        na % nb == 0
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Shape {
    Cycle(usize),
    Path(usize),
}

fn two_regular_shape(g: &Multigraph) -> Option<Shape> {
    if !g.is_connected() || !g.vertices().all(|v| g.degree(v) == 2) {
        return None;
    }
    let n = g.vertex_count();
    match g.semi_count() {
        0 => Some(Shape::Cycle(n)),
        2 => Some(Shape::Path(n)),
        _ => None,
    }
}

/// Whether the simple cycle `C_j` covers a graph of this shape.
fn cycle_covers(j: usize, s: Shape) -> bool {
    match s {
        Shape::Cycle(m) => j % m == 0,
        Shape::Path(m) => j % (2 * m) == 0,
    }
}

/// Exact verdict when `A` and `B` are both connected and 2-regular
/// (cycles, including a loop and a digon, or open paths).
pub fn classify_2regular(a: &Multigraph, b: &Multigraph) -> Option<bool> {
    let (sa, sb) = (two_regular_shape(a)?, two_regular_shape(b)?);
    Some(match (sa, sb) {
        (Shape::Cycle(n), Shape::Cycle(m)) => n % m == 0,
        (Shape::Cycle(n), Shape::Path(m)) => n % (2 * m) == 0,
        (Shape::Path(n), Shape::Cycle(m)) => (2 * n) % m == 0,
        (Shape::Path(n), Shape::Path(m)) => n % m == 0,
    })
}

fn refute(b: &Multigraph, built: Built, source: WitnessSource) -> Result<Option<StrongerEvidence>> {
    let (h, projection) = built;
    Ok(if find_cover(&h, b, ProjectionKind::Cover)?.is_none() {
        Some(StrongerEvidence::NotStrongerByWitness { projection, source })
    } else {
        None
    })
}

fn dipole_multiplicity(g: &Multigraph) -> Option<usize> {
    let ok = g.vertex_count() == 2 && !g.has_loops() && !g.has_semi_edges() && g.edge_count() >= 2;
    ok.then(|| g.edge_count())
}

fn is_f30(g: &Multigraph) -> bool {
    g.vertex_count() == 1 && g.semi_count() == 3 && g.loop_count() == 0
}

fn is_f11(g: &Multigraph) -> bool {
    g.vertex_count() == 1 && g.semi_count() == 1 && g.loop_count() == 1
}

fn decide_2regular(
    a: &Multigraph,
    b: &Multigraph,
    holds: bool,
    budget: usize,
) -> Result<StrongerEvidence> {
    let sa = two_regular_shape(a).expect("checked by the caller");
    let sb = two_regular_shape(b).expect("checked by the caller");
    let step = match sa {
        Shape::Cycle(n) => n,
        Shape::Path(n) => 2 * n,
    };
    let cover_of_a = |j: usize| -> Result<Built> {
        let c = cycle(j);
        let p = find_cover(&c, a, ProjectionKind::Cover)?.ok_or_else(|| {
            Error::Anomaly(format!(
                "C{j} does not cover a 2-regular base it should cover"
            ))
        })?;
        Ok((c, p))
    };
    let lengths = (1..).map(|t| t * step).filter(|&j| j >= 3);
    if holds {
        let mut support = Vec::new();
        for j in lengths.take_while(|&j| j <= budget) {
            let (c, _) = cover_of_a(j)?;
            let p = find_cover(&c, b, ProjectionKind::Cover)?.ok_or_else(|| {
                Error::Anomaly(format!(
                    "C{j} fails to cover B despite the divisibility rule"
                ))
            })?;
            support.push(p);
        }
        return Ok(StrongerEvidence::StrongerByTheorem {
            theorem: Theorem::TwoRegular,
            support,
        });
    }
    for j in lengths.take_while(|&j| j <= 64) {
        if !cycle_covers(j, sb) {
            if let Some(ev) = refute(b, cover_of_a(j)?, WitnessSource::CycleCover)? {
                return Ok(ev);
            }
        }
    }
    Err(Error::Anomaly(
        "no refuting cycle found for a 2-regular pair".into(),
    ))
}

/// Decides `A ▷ B` where possible, trying in order: a covering projection,
/// a semi-covering projection, divisibility, `A` simple, the 2-regular
/// rules, dipoles, `B = F(3,0)`, `B = F(1,1)`, enumeration of simple covers
/// of `A` with at most `budget` vertices, and finally the constructed
/// witnesses of the two cubic cases checked against `B`.
pub fn decide_stronger(a: &Multigraph, b: &Multigraph, budget: usize) -> Result<StrongerEvidence> {
    require_connected(a, "A")?;
    require_connected(b, "B")?;
    if let Some(p) = find_cover(a, b, ProjectionKind::Cover)? {
        return Ok(StrongerEvidence::StrongerByCover(p));
    }
    if let Some(p) = find_cover(a, b, ProjectionKind::SemiCover)? {
        return Ok(StrongerEvidence::StrongerBySemiCover(p));
    }
    if !divisibility_ok(a, b)? {
        return Ok(StrongerEvidence::NotStrongerByDivisibility {
            a_vertices: a.vertex_count(),
            b_vertices: b.vertex_count(),
        });
    }
    if a.is_simple() {
        return Ok(StrongerEvidence::NotStrongerByWitness {
            projection: CoverProjection::identity(a),
            source: WitnessSource::SimpleBase,
        });
    }
    if let Some(holds) = classify_2regular(a, b) {
        return decide_2regular(a, b, holds, budget);
    }
    if let Some(d) = dipole_multiplicity(a) {
        let p = if d % 2 == 1 { d } else { d + 1 };
        if let Some(ev) = refute(b, simple_pfold_cover(a, p)?, WitnessSource::OddDipoleFold)? {
            return Ok(ev);
        }
    }
    let cubic = a.is_cubic();
    if cubic && is_f30(b) {
        if !chromatic_index(a).exceeds(3) {
            return Err(Error::Anomaly(
                "3-edge-colourable graph without a cover of F(3,0)".into(),
            ));
        }
        if let Some(ev) = refute(b, snark_cover(a)?, WitnessSource::SnarkCover)? {
            return Ok(ev);
        }
        return Err(Error::Anomaly(
            "constructed snark cover covers F(3,0)".into(),
        ));
    }
    if cubic && is_f11(b) {
        if has_semi_perfect_matching(a).is_some() {
            return Err(Error::Anomaly(
                "semi-perfect matching without a semi-cover of F(1,1)".into(),
            ));
        }
        if let Some(ev) = refute(
            b,
            witness_not_f11(a)?,
            WitnessSource::NoPerfectMatchingCover,
        )? {
            return Ok(ev);
        }
        return Err(Error::Anomaly(
            "constructed cover without a perfect matching covers F(1,1)".into(),
        ));
    }

    let mut complete = true;
    let max_fold = budget.min(LIFT_VERTEX_CAP) / a.vertex_count();
    for k in 1..=max_fold {
        let mut found = None;
        let mut failure = None;
        let status =
            for_each_simple_cover(a, k, Some(ENUMERATION_NODE_LIMIT), |p| {
                match find_cover(p.source(), b, ProjectionKind::Cover) {
                    Ok(None) => {
                        found = Some(p);
                        false
                    }
                    Ok(Some(_)) => true,
                    Err(e) => {
                        failure = Some(e);
                        false
                    }
                }
            })?;
        if let Some(e) = failure {
            return Err(e);
        }
        if let Some(projection) = found {
            return Ok(StrongerEvidence::NotStrongerByWitness {
                projection,
                source: WitnessSource::Enumeration { fold: k },
            });
        }
        if status == EnumStatus::LimitReached {
            complete = false;
            break;
        }
    }

    if cubic {
        if chromatic_index(a).exceeds(3) {
            if let Some(ev) = refute(b, snark_cover(a)?, WitnessSource::SnarkCover)? {
                return Ok(ev);
            }
        }
        if has_semi_perfect_matching(a).is_none() {
            if let Some(ev) = refute(
                b,
                witness_not_f11(a)?,
                WitnessSource::NoPerfectMatchingCover,
            )? {
                return Ok(ev);
            }
        }
    }
    Ok(StrongerEvidence::Unknown {
        budget,
        reason: if complete {
            format!("every simple cover with at most {budget} vertices covers B")
        } else {
            "enumeration node limit reached".into()
        },
    })
}
