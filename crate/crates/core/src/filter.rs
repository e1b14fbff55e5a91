//! Spurious-cut filtering: numeric classification of candidate cuts as
//! confirmed, possibly spurious, or spurious, by jump probing at sampled
//! points. Cuts are never deleted, only annotated.

use crate::catalog::ArccotConvention;
use crate::engine::{sample_cut, Cut, CutGeometry, CutSet, CutStatus, FixedEq};
use crate::error::SampleError;
use crate::eval::{jump_probe, EvalCtx, JumpReport};
use crate::expr::Expr;
use crate::poly::Coord;
use crate::rat::{rat_to_f64, Extended};
use crate::viz::Window;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Probe configuration. Defaults: 9 samples per cut, eps 1e-6, jump
/// threshold 1e-3, window [-2,2]^2.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassifyConfig {
    pub eps: f64,
    pub threshold: f64,
    pub samples: usize,
    pub window: Window,
    pub seed: u64,
    pub arccot: ArccotConvention,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig {
            eps: 1e-6,
            threshold: 1e-3,
            samples: 9,
            window: Window::default(),
            seed: 0,
            arccot: ArccotConvention::default(),
        }
    }
}

/// Evidence-backed verdict for one cut.
#[derive(Clone, Debug)]
pub struct SpuriousVerdict {
    pub cut_index: usize,
    pub description: String,
    pub verdict: CutStatus,
    pub evidence: Vec<JumpReport>,
    pub samples_requested: usize,
    pub threshold: f64,
    /// Set when the verdict degraded to possibly-spurious for lack of data.
    pub reason: Option<String>,
}

/// Classification result: the cut set with updated statuses plus the
/// per-cut evidence table.
#[derive(Clone, Debug)]
pub struct ClassifyOutcome {
    pub cuts: CutSet,
    pub verdicts: Vec<SpuriousVerdict>,
}

/// Probe every cut of `cs` against `e` and update the statuses. No cut is
/// removed. Deterministic given the configuration (the seed only drives
/// the jitter used to move probes off singular points).
pub fn classify(e: &Expr, cs: &CutSet, cfg: &ClassifyConfig) -> ClassifyOutcome {
    let ctx = EvalCtx::new(cfg.arccot);
    let mut out = cs.clone();
    let mut verdicts = Vec::with_capacity(cs.cuts.len());
    for (idx, cut) in cs.cuts.iter().enumerate() {
        let verdict = classify_one(e, cut, idx, cfg, &ctx);
        out.cuts[idx].status = verdict.verdict;
        verdicts.push(verdict);
    }
    ClassifyOutcome {
        cuts: out,
        verdicts,
    }
}

fn classify_one(
    e: &Expr,
    cut: &Cut,
    idx: usize,
    cfg: &ClassifyConfig,
    ctx: &EvalCtx,
) -> SpuriousVerdict {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (idx as u64).wrapping_mul(0x9e3779b9));
    let base = SpuriousVerdict {
        cut_index: idx,
        description: cut.description(),
        verdict: CutStatus::PossiblySpurious,
        evidence: vec![],
        samples_requested: cfg.samples,
        threshold: cfg.threshold,
        reason: None,
    };
    let samples = match sample_cut(cut, cfg.samples, &cfg.window) {
        Ok(s) => s,
        Err(SampleError::EmptyInWindow) => {
            return SpuriousVerdict {
                reason: Some("cut does not intersect the probe window".to_string()),
                ..base
            };
        }
        Err(err) => {
            return SpuriousVerdict {
                reason: Some(err.to_string()),
                ..base
            };
        }
    };
    let branch_points = finite_branch_points(cut);
    let mut evidence = Vec::new();
    for s in &samples {
        let mut point = s.point;
        // Keep probes away from branch points, where jumps are undefined.
        let tangent = Complex64::i() * s.normal;
        let mut attempts = 0;
        while attempts < 4
            && branch_points
                .iter()
                .any(|b| (point - b).norm() < 10.0 * cfg.eps)
        {
            let jitter: f64 = rng.gen_range(20.0..100.0);
            point += tangent * (jitter * cfg.eps);
            attempts += 1;
        }
        let mut report = jump_probe(e, point, s.normal, cfg.eps, ctx);
        attempts = 0;
        while report.is_err() && attempts < 3 {
            let jitter: f64 = rng.gen_range(50.0..500.0);
            point += tangent * (jitter * cfg.eps);
            report = jump_probe(e, point, s.normal, cfg.eps, ctx);
            attempts += 1;
        }
        if let Ok(r) = report {
            evidence.push(r);
        }
    }
    if evidence.is_empty() {
        return SpuriousVerdict {
            reason: Some("all probes hit singularities".to_string()),
            ..base
        };
    }
    let exceed = evidence
        .iter()
        .filter(|r| r.magnitude > cfg.threshold)
        .count();
    let all_quiet = evidence
        .iter()
        .all(|r| r.magnitude < cfg.threshold / 10.0);
    let verdict = if 2 * exceed > evidence.len() {
        CutStatus::Confirmed
    } else if all_quiet {
        CutStatus::Spurious
    } else {
        CutStatus::PossiblySpurious
    };
    SpuriousVerdict {
        verdict,
        evidence,
        ..base
    }
}

/// Finite endpoints of a cut in the plane (branch-point candidates).
fn finite_branch_points(cut: &Cut) -> Vec<Complex64> {
    let mut out = Vec::new();
    match &cut.geometry {
        CutGeometry::SemiAlgebraic(sa) => {
            if let FixedEq::Value(v) = &sa.equation {
                let fv = rat_to_f64(v);
                for end in [&sa.interval.lo, &sa.interval.hi] {
                    if let Extended::Finite(t) = end {
                        let t = rat_to_f64(t);
                        out.push(match sa.fixed {
                            Coord::Y => Complex64::new(t, fv),
                            Coord::X => Complex64::new(fv, t),
                        });
                    }
                }
            } else if !sa.support.is_empty() {
                let a = sa.support[0];
                let b = sa.support[sa.support.len() - 1];
                out.push(Complex64::new(a.0, a.1));
                out.push(Complex64::new(b.0, b.1));
            }
        }
        CutGeometry::Parametric(pc) => {
            let ctx = EvalCtx::default();
            for end in [&pc.range.lo, &pc.range.hi] {
                if let Extended::Finite(t) = end {
                    if let Ok(z) =
                        crate::eval::eval(&pc.map, Complex64::new(rat_to_f64(t), 0.0), &ctx)
                    {
                        out.push(z);
                    }
                }
            }
        }
        CutGeometry::Polyline(pl) => {
            if let Some(&(x, y)) = pl.points.first() {
                out.push(Complex64::new(x, y));
            }
            if let Some(&(x, y)) = pl.points.last() {
                out.push(Complex64::new(x, y));
            }
        }
    }
    out
}

/// JSON encoding of a classification outcome: the cut set (with updated
/// statuses) plus the per-cut evidence table.
pub fn classify_to_json_string(outcome: &ClassifyOutcome) -> String {
    use serde_json::json;
    let cuts = crate::engine::json::cutset_json(&outcome.cuts);
    let verdicts: Vec<serde_json::Value> = outcome
        .verdicts
        .iter()
        .map(|v| {
            json!({
                "cut": v.cut_index,
                "description": v.description,
                "verdict": v.verdict.label(),
                "samples_requested": v.samples_requested,
                "threshold": v.threshold,
                "reason": v.reason,
                "evidence": v.evidence.iter().map(|r| {
                    json!({
                        "point": [r.point.re, r.point.im],
                        "eps": r.eps,
                        "side_a": [r.side_a.re, r.side_a.im],
                        "side_b": [r.side_b.re, r.side_b.im],
                        "jump_magnitude": r.magnitude,
                        "component": r.component.label(),
                    })
                }).collect::<Vec<_>>(),
            })
        })
        .collect();
    let doc = json!({
        "expression": outcome.cuts.source.to_string(),
        "cuts": serde_json::to_value(&cuts.cuts).unwrap(),
        "verdicts": verdicts,
    });
    serde_json::to_string_pretty(&doc).expect("classification serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{branch_cuts, EngineConfig};
    use crate::expr::parse;

    #[test]
    fn cancellation_is_marked_spurious() {
        let e = parse("sqrt(z)*sqrt(z)").unwrap();
        let cs = branch_cuts(&e, &EngineConfig::default()).unwrap();
        assert_eq!(cs.len(), 1, "the two sqrt cuts deduplicate to one");
        let outcome = classify(&e, &cs, &ClassifyConfig::default());
        assert_eq!(outcome.cuts.cuts[0].status, CutStatus::Spurious);
        for r in &outcome.verdicts[0].evidence {
            assert!(r.magnitude < 1e-9, "jump {}", r.magnitude);
        }
    }

    #[test]
    fn genuine_cuts_are_confirmed() {
        let e = parse("ln(z^2)").unwrap();
        let cs = branch_cuts(&e, &EngineConfig::default()).unwrap();
        let outcome = classify(&e, &cs, &ClassifyConfig::default());
        assert_eq!(outcome.cuts.len(), 2);
        for cut in &outcome.cuts.cuts {
            assert_eq!(cut.status, CutStatus::Confirmed);
        }
    }

    #[test]
    fn filter_never_deletes_cuts() {
        let e = parse("sqrt(z)*sqrt(z)").unwrap();
        let cs = branch_cuts(&e, &EngineConfig::default()).unwrap();
        let outcome = classify(&e, &cs, &ClassifyConfig::default());
        assert_eq!(outcome.cuts.len(), cs.len());
    }

    #[test]
    fn raising_threshold_never_confirms_a_spurious_cut() {
        let e = parse("sqrt(z)*sqrt(z)").unwrap();
        let cs = branch_cuts(&e, &EngineConfig::default()).unwrap();
        let mut cfg = ClassifyConfig::default();
        let verdict_low = classify(&e, &cs, &cfg).cuts.cuts[0].status;
        cfg.threshold = 1.0;
        let verdict_high = classify(&e, &cs, &cfg).cuts.cuts[0].status;
        assert_eq!(verdict_low, CutStatus::Spurious);
        assert_eq!(verdict_high, CutStatus::Spurious);
    }

    #[test]
    fn verdicts_are_deterministic() {
        let e = parse("ln(-sqrt(z))").unwrap();
        let cs = branch_cuts(&e, &EngineConfig::default()).unwrap();
        let cfg = ClassifyConfig::default();
        let a = classify(&e, &cs, &cfg);
        let b = classify(&e, &cs, &cfg);
        let statuses_a: Vec<_> = a.cuts.cuts.iter().map(|c| c.status).collect();
        let statuses_b: Vec<_> = b.cuts.cuts.iter().map(|c| c.status).collect();
        assert_eq!(statuses_a, statuses_b);
        for (x, y) in a.verdicts.iter().zip(&b.verdicts) {
            assert_eq!(x.evidence.len(), y.evidence.len());
        }
    }
}
