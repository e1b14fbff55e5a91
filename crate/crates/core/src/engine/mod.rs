//! The cut engine: recursive branch-cut computation over an expression,
//! the semi-algebraic plane solver for polynomial arguments, the parametric
//! inversion approach otherwise, and the union rule.

mod geom;
pub mod json;
mod numeric;
mod parametric;
mod sample;
mod semialg;

pub use parametric::parametric_cuts;
pub use sample::{sample_cut, CutSample};
pub use semialg::semialgebraic_cuts;

use crate::catalog::{multivalued_argument, multivalued_kind, ArccotConvention, Catalog};
use crate::error::EngineError;
use crate::expr::Expr;
use crate::poly::{polynomial_argument, BiPoly, Coord};
use crate::rat::{Extended, Interval, Rat};
use std::cmp::Ordering;
use std::fmt;

/// Which calculation approach to use per multi-valued node.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Approach {
    /// Semi-algebraic when the argument is polynomial, parametric otherwise.
    #[default]
    Auto,
    SemiAlgebraic,
    Parametric,
}

impl Approach {
    pub fn label(self) -> &'static str {
        match self {
            Approach::Auto => "auto",
            Approach::SemiAlgebraic => "semialg",
            Approach::Parametric => "parametric",
        }
    }
}

/// Engine configuration. Defaults match the documented CLI defaults.
#[derive(Clone, Debug, PartialEq)]
pub struct EngineConfig {
    pub approach: Approach,
    pub arccot: ArccotConvention,
    /// Cap on the total degree of the decomposed P, Q.
    pub max_degree: u32,
    /// Fall back to grid-based numeric solving when symbolic inversion fails.
    pub numeric_fallback: bool,
    /// Skip symbolic inversion entirely (used to exercise the fallback).
    pub force_numeric_fallback: bool,
    /// Linear alpha samples per finite parameter interval.
    pub linear_samples: usize,
    /// Geometric samples reach out to 2^k toward infinite interval ends.
    pub geometric_max_pow: u32,
    /// Search window for numeric root finding (x0, x1, y0, y1).
    pub fallback_window: (f64, f64, f64, f64),
    /// Chord tolerance for adaptive polyline refinement.
    pub refine_tol: f64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            approach: Approach::Auto,
            arccot: ArccotConvention::default(),
            max_degree: 8,
            numeric_fallback: true,
            force_numeric_fallback: false,
            linear_samples: 64,
            geometric_max_pow: 10,
            fallback_window: (-8.0, 8.0, -8.0, 8.0),
            refine_tol: 5e-4,
        }
    }
}

/// Classification status of a cut.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CutStatus {
    Confirmed,
    PossiblySpurious,
    Spurious,
}

impl CutStatus {
    pub fn label(self) -> &'static str {
        match self {
            CutStatus::Confirmed => "confirmed",
            CutStatus::PossiblySpurious => "possibly-spurious",
            CutStatus::Spurious => "spurious",
        }
    }
}

/// Which subexpression induced a cut, and by what route.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Provenance {
    /// Child-index path from the root to the inducing node.
    pub path: Vec<usize>,
    /// Printed form of the inducing node.
    pub source: String,
    /// Whether the cut came from the numeric fallback.
    pub numeric: bool,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            write!(f, "root")?;
        } else {
            let parts: Vec<String> = self.path.iter().map(|i| i.to_string()).collect();
            write!(f, "{}", parts.join("."))?;
        }
        if !self.source.is_empty() {
            write!(f, ": {}", self.source)?;
        }
        if self.numeric {
            write!(f, " (numeric fallback)")?;
        }
        Ok(())
    }
}

/// Equation giving the fixed coordinate of a semi-algebraic cut.
#[derive(Clone, Debug, PartialEq)]
pub enum FixedEq {
    /// The fixed coordinate equals an exact rational value.
    Value(Rat),
    /// The fixed coordinate is the index-th real root (ascending) of the
    /// polynomial specialized at the free coordinate.
    RootBranch { poly: BiPoly, index: usize },
}

/// A cut written as an equation for one coordinate plus an open interval
/// bounding the other, the shape produced by the plane solver.
#[derive(Clone, Debug, PartialEq)]
pub struct SemiAlgebraicCut {
    /// Coordinate fixed by the equation.
    pub fixed: Coord,
    pub equation: FixedEq,
    /// Open range of the free coordinate.
    pub interval: Interval,
    /// Sampled support for root-branch cuts (empty for exact-value lines).
    pub support: Vec<(f64, f64)>,
}

/// A cut written as the image of a real parameter interval.
#[derive(Clone, Debug, PartialEq)]
pub struct ParametricCut {
    /// Map alpha -> z; the expression variable stands for alpha.
    pub map: Expr,
    pub range: Interval,
}

/// Numeric fallback representation: an ordered chain of plane points.
#[derive(Clone, Debug, PartialEq)]
pub struct PolylineCut {
    pub points: Vec<(f64, f64)>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CutGeometry {
    SemiAlgebraic(SemiAlgebraicCut),
    Parametric(ParametricCut),
    Polyline(PolylineCut),
}

impl CutGeometry {
    pub fn kind(&self) -> &'static str {
        match self {
            CutGeometry::SemiAlgebraic(_) => "semialgebraic",
            CutGeometry::Parametric(_) => "parametric",
            CutGeometry::Polyline(_) => "polyline",
        }
    }
}

/// One branch-cut component with provenance and status.
#[derive(Clone, Debug, PartialEq)]
pub struct Cut {
    pub geometry: CutGeometry,
    pub provenance: Provenance,
    pub status: CutStatus,
}

impl Cut {
    pub fn new(geometry: CutGeometry) -> Self {
        Cut {
            geometry,
            provenance: Provenance::default(),
            status: CutStatus::Confirmed,
        }
    }

    /// Human-readable description used by the text output formats.
    pub fn description(&self) -> String {
        match &self.geometry {
            CutGeometry::SemiAlgebraic(sa) => {
                let (fixed_name, free_name) = match sa.fixed {
                    Coord::X => ("Re(z)", "Im(z)"),
                    Coord::Y => ("Im(z)", "Re(z)"),
                };
                match &sa.equation {
                    FixedEq::Value(v) => {
                        if sa.fixed == Coord::Y && v == &Rat::from_integer(0.into()) {
                            // The cut lies on the real axis, so z itself is real.
                            format!("z in {}", sa.interval)
                        } else {
                            format!(
                                "{} = {} and {} {}",
                                fixed_name,
                                v,
                                free_name,
                                interval_phrase(&sa.interval)
                            )
                        }
                    }
                    FixedEq::RootBranch { poly, index } => format!(
                        "{} = root#{} of {} and {} {}",
                        fixed_name,
                        index,
                        poly.display("x", "y"),
                        free_name,
                        interval_phrase(&sa.interval)
                    ),
                }
            }
            CutGeometry::Parametric(pc) => {
                format!("z = {}, a in {}", pc.map.to_string_with_var("a"), pc.range)
            }
            CutGeometry::Polyline(pl) => {
                let n = pl.points.len();
                if n == 0 {
                    "polyline[0]".to_string()
                } else {
                    let a = pl.points[0];
                    let b = pl.points[n - 1];
                    format!(
                        "polyline[{}] from ({:.3},{:.3}) to ({:.3},{:.3})",
                        n, a.0, a.1, b.0, b.1
                    )
                }
            }
        }
    }
}

/// Phrase for the free-coordinate bound: `> 0`, `< 0`, or `in (a,b)`.
fn interval_phrase(iv: &Interval) -> String {
    match (&iv.lo, &iv.hi) {
        (Extended::Finite(l), Extended::PosInf) => format!("> {}", l),
        (Extended::NegInf, Extended::Finite(h)) => format!("< {}", h),
        _ => format!("in {}", iv),
    }
}

/// Ordered collection of cuts with their source expression.
#[derive(Clone, Debug, PartialEq)]
pub struct CutSet {
    pub source: Expr,
    pub cuts: Vec<Cut>,
}

impl CutSet {
    pub fn new(source: Expr) -> Self {
        CutSet {
            source,
            cuts: vec![],
        }
    }

    pub fn is_empty(&self) -> bool {
        self.cuts.is_empty()
    }

    pub fn len(&self) -> usize {
        self.cuts.len()
    }

    /// Insert a cut unless an equivalent one is already present. On a
    /// duplicate, the better (lower) status and earliest provenance win.
    pub fn push_dedup(&mut self, cut: Cut) {
        for existing in &mut self.cuts {
            if geometry_equivalent(&existing.geometry, &cut.geometry) {
                if cut.status < existing.status {
                    existing.status = cut.status;
                }
                return;
            }
        }
        self.cuts.push(cut);
    }

    /// Deterministic ordering: provenance path, then representation-aware
    /// keys (paper-style interval order for straight cuts).
    pub fn sort(&mut self) {
        self.cuts.sort_by(cmp_cuts);
    }

    pub fn descriptions(&self) -> Vec<String> {
        self.cuts.iter().map(|c| c.description()).collect()
    }
}

fn cmp_cuts(a: &Cut, b: &Cut) -> Ordering {
    a.provenance
        .path
        .cmp(&b.provenance.path)
        .then_with(|| geometry_rank(&a.geometry).cmp(&geometry_rank(&b.geometry)))
        .then_with(|| match (&a.geometry, &b.geometry) {
            (CutGeometry::SemiAlgebraic(x), CutGeometry::SemiAlgebraic(y)) => {
                let eq_key = |sa: &SemiAlgebraicCut| match &sa.equation {
                    FixedEq::Value(v) => (0usize, v.to_string(), 0usize),
                    FixedEq::RootBranch { poly, index } => {
                        (1usize, poly.display("x", "y"), *index)
                    }
                };
                x.fixed
                    .cmp(&y.fixed)
                    .then_with(|| eq_key(x).cmp(&eq_key(y)))
                    // Descending on the lower endpoint, matching the
                    // upper-branch-first order of the reference outputs.
                    .then_with(|| y.interval.lo.cmp(&x.interval.lo))
                    .then_with(|| y.interval.hi.cmp(&x.interval.hi))
            }
            (CutGeometry::Parametric(x), CutGeometry::Parametric(y)) => x
                .map
                .cmp(&y.map)
                .then_with(|| x.range.lo.cmp(&y.range.lo)),
            (CutGeometry::Polyline(x), CutGeometry::Polyline(y)) => {
                let key = |p: &PolylineCut| {
                    p.points
                        .first()
                        .map(|&(px, py)| (ordf(py), ordf(px)))
                        .unwrap_or((ordf(0.0), ordf(0.0)))
                };
                key(x).cmp(&key(y))
            }
            _ => Ordering::Equal,
        })
}

fn ordf(v: f64) -> i64 {
    (v * 1e9).round() as i64
}

fn geometry_rank(g: &CutGeometry) -> u8 {
    match g {
        CutGeometry::SemiAlgebraic(_) => 0,
        CutGeometry::Parametric(_) => 1,
        CutGeometry::Polyline(_) => 2,
    }
}

/// Point-set equality of two cut geometries: exact on matching
/// representations, sampled Hausdorff fallback otherwise.
fn geometry_equivalent(a: &CutGeometry, b: &CutGeometry) -> bool {
    match (a, b) {
        (CutGeometry::SemiAlgebraic(x), CutGeometry::SemiAlgebraic(y)) => {
            x.fixed == y.fixed && x.equation == y.equation && x.interval == y.interval
        }
        (CutGeometry::Parametric(x), CutGeometry::Parametric(y)) => {
            x.map == y.map && x.range == y.range
        }
        _ => geom::sampled_identical(a, b, 1e-9),
    }
}

/// Union of two cut sets: concatenation with point-set deduplication.
/// Both sets must concern the same variable; the source of `a` is kept.
pub fn union_cuts(a: &CutSet, b: &CutSet) -> CutSet {
    let mut out = CutSet::new(a.source.clone());
    for c in a.cuts.iter().chain(b.cuts.iter()) {
        out.push_dedup(c.clone());
    }
    out.sort();
    out
}

/// Compute the branch cuts of `e`: for every multi-valued node f(g), the
/// cuts induced by f's defining cut applied to g (semi-algebraic when g is
/// polynomial, parametric otherwise), recursively over the whole tree,
/// with the union rule and deduplication applied to the result.
pub fn branch_cuts(e: &Expr, cfg: &EngineConfig) -> Result<CutSet, EngineError> {
    let catalog = Catalog::new(cfg.arccot);
    let mut nodes: Vec<(Vec<usize>, Expr, Expr)> = Vec::new();
    e.walk(&mut |path, node| {
        if multivalued_kind(node).is_some() {
            let arg = multivalued_argument(node).expect("multivalued node has an argument");
            nodes.push((path.to_vec(), node.clone(), arg.clone()));
        }
    });

    let mut out = CutSet::new(e.clone());
    for (path, node, arg) in nodes {
        if !arg.contains_var() {
            // A constant argument makes the whole subterm constant: no cut.
            continue;
        }
        let kind = multivalued_kind(&node).unwrap();
        let defining = catalog.defining_cut(kind);
        if defining.is_empty() {
            continue;
        }
        let use_semialg = match cfg.approach {
            Approach::Auto => polynomial_argument(&arg).is_some(),
            Approach::SemiAlgebraic => {
                if polynomial_argument(&arg).is_none() {
                    return Err(EngineError::ApproachUnsupported(format!(
                        "semialg approach requires a polynomial argument, got {}",
                        arg
                    )));
                }
                true
            }
            Approach::Parametric => false,
        };
        let cuts = if use_semialg {
            semialgebraic_cuts(&arg, &defining, cfg)?
        } else {
            parametric_cuts(&arg, &defining, cfg)?
        };
        for mut cut in cuts {
            cut.provenance.path = path.clone();
            cut.provenance.source = node.to_string();
            out.push_dedup(cut);
        }
    }
    out.sort();
    Ok(out)
}

pub use geom::{cut_support_polyline, dist_point_cut, dist_point_polyline};
