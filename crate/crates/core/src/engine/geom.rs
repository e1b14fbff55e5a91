//! Plane geometry helpers: distances from points to cut geometries and the
//! densified polylines used for deduplication and set comparison.

use super::{CutGeometry, FixedEq};
use crate::eval::{eval, EvalCtx};
use crate::poly::Coord;
use crate::rat::rat_to_f64;
use num_complex::Complex64;

use super::numeric::real_roots_of_coeffs;

const DEDUP_WINDOW: (f64, f64, f64, f64) = (-8.0, 8.0, -8.0, 8.0);

pub fn dist_point_segment(q: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (vx, vy) = (b.0 - a.0, b.1 - a.1);
    let (wx, wy) = (q.0 - a.0, q.1 - a.1);
    let len2 = vx * vx + vy * vy;
    let t = if len2 <= 0.0 {
        0.0
    } else {
        ((wx * vx + wy * vy) / len2).clamp(0.0, 1.0)
    };
    let (px, py) = (a.0 + t * vx, a.1 + t * vy);
    ((q.0 - px).powi(2) + (q.1 - py).powi(2)).sqrt()
}

pub fn dist_point_polyline(q: (f64, f64), pts: &[(f64, f64)]) -> f64 {
    if pts.is_empty() {
        return f64::INFINITY;
    }
    if pts.len() == 1 {
        return ((q.0 - pts[0].0).powi(2) + (q.1 - pts[0].1).powi(2)).sqrt();
    }
    pts.windows(2)
        .map(|w| dist_point_segment(q, w[0], w[1]))
        .fold(f64::INFINITY, f64::min)
}

/// Dense polyline support of a cut clipped to a window; the window is a
/// quadruple (x0, x1, y0, y1). Exact-value lines yield two-point segments.
pub fn cut_support_polyline(
    g: &CutGeometry,
    window: (f64, f64, f64, f64),
    n: usize,
) -> Vec<(f64, f64)> {
    let (wx0, wx1, wy0, wy1) = window;
    match g {
        CutGeometry::SemiAlgebraic(sa) => {
            let (free_lo, free_hi) = match sa.fixed {
                Coord::Y => (wx0, wx1),
                Coord::X => (wy0, wy1),
            };
            let clip = match sa.interval.clip_f64(free_lo, free_hi) {
                Some(c) => c,
                None => return vec![],
            };
            match &sa.equation {
                FixedEq::Value(v) => {
                    let fv = rat_to_f64(v);
                    let mk = |t: f64| match sa.fixed {
                        Coord::Y => (t, fv),
                        Coord::X => (fv, t),
                    };
                    vec![mk(clip.0), mk(clip.1)]
                }
                FixedEq::RootBranch { poly, index } => {
                    // Uniform positions plus a geometric approach toward
                    // finite interval endpoints: branch points often have
                    // vertical tangents and uniform sampling leaves a gap.
                    let mut positions: Vec<f64> = (0..n)
                        .map(|k| clip.0 + (clip.1 - clip.0) * (k as f64 + 0.5) / n as f64)
                        .collect();
                    let span = clip.1 - clip.0;
                    let iv_lo = sa.interval.lo.to_f64();
                    let iv_hi = sa.interval.hi.to_f64();
                    if iv_lo > free_lo {
                        for k in 1..=40 {
                            positions.push(iv_lo + span * 2f64.powi(-k));
                        }
                    }
                    if iv_hi < free_hi {
                        for k in 1..=40 {
                            positions.push(iv_hi - span * 2f64.powi(-k));
                        }
                    }
                    positions.retain(|t| *t > clip.0 && *t < clip.1);
                    positions.sort_by(|a, b| a.partial_cmp(b).unwrap());
                    positions.dedup();
                    let mut pts = Vec::with_capacity(positions.len());
                    for t in positions {
                        // The stored polynomial is oriented so that its
                        // "y" is the fixed coordinate when fixed == Y.
                        let coeffs = match sa.fixed {
                            Coord::Y => poly.coeffs_in_y_at_f64(t),
                            Coord::X => poly.swap_axes().coeffs_in_y_at_f64(t),
                        };
                        let roots = real_roots_of_coeffs(&coeffs);
                        if let Some(&r) = roots.get(*index) {
                            let pt = match sa.fixed {
                                Coord::Y => (t, r),
                                Coord::X => (r, t),
                            };
                            pts.push(pt);
                        }
                    }
                    pts
                }
            }
        }
        CutGeometry::Parametric(pc) => {
            let ctx = EvalCtx::default();
            let mut alphas = alpha_scan(&pc.range);
            alphas.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let mut pts = Vec::new();
            for a in alphas {
                if let Ok(z) = eval(&pc.map, Complex64::new(a, 0.0), &ctx) {
                    if z.re >= wx0 - 1e-9
                        && z.re <= wx1 + 1e-9
                        && z.im >= wy0 - 1e-9
                        && z.im <= wy1 + 1e-9
                    {
                        pts.push((z.re, z.im));
                    }
                }
            }
            pts
        }
        CutGeometry::Polyline(pl) => pl.points.clone(),
    }
}

/// Dense alpha samples covering a parameter range, mixing a uniform grid
/// over the finite core with geometric reach toward infinite endpoints.
fn alpha_scan(range: &crate::rat::Interval) -> Vec<f64> {
    let lo = range.lo.to_f64();
    let hi = range.hi.to_f64();
    let mut out = Vec::new();
    let (core_lo, core_hi) = (lo.max(-16.0), hi.min(16.0));
    if core_lo < core_hi {
        let n = 512;
        for k in 0..n {
            out.push(core_lo + (core_hi - core_lo) * (k as f64 + 0.5) / n as f64);
        }
    }
    for k in 0..24 {
        let v = 16.0 * 2f64.powi(k);
        if v < hi {
            out.push(v);
        }
        if -v > lo {
            out.push(-v);
        }
    }
    out.retain(|a| *a > lo && *a < hi);
    out
}

/// Sampled point-set identity check used by union deduplication: both
/// directed Hausdorff distances under `tol` inside the dedup window.
pub fn sampled_identical(a: &CutGeometry, b: &CutGeometry, tol: f64) -> bool {
    let pa = cut_support_polyline(a, DEDUP_WINDOW, 129);
    let pb = cut_support_polyline(b, DEDUP_WINDOW, 129);
    if pa.is_empty() || pb.is_empty() {
        // Nothing visible to compare: treat as distinct (cautious).
        return false;
    }
    let d_ab = pa
        .iter()
        .map(|&q| dist_point_polyline(q, &pb))
        .fold(0.0f64, f64::max);
    if d_ab >= tol {
        return false;
    }
    let d_ba = pb
        .iter()
        .map(|&q| dist_point_polyline(q, &pa))
        .fold(0.0f64, f64::max);
    d_ba < tol
}

/// Distance from a plane point to a cut geometry within a window.
pub fn dist_point_cut(q: (f64, f64), g: &CutGeometry, window: (f64, f64, f64, f64)) -> f64 {
    let pts = cut_support_polyline(g, window, 257);
    dist_point_polyline(q, &pts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segment_distance_basics() {
        let d = dist_point_segment((0.0, 1.0), (-1.0, 0.0), (1.0, 0.0));
        assert!((d - 1.0).abs() < 1e-15);
        let d = dist_point_segment((3.0, 0.0), (-1.0, 0.0), (1.0, 0.0));
        assert!((d - 2.0).abs() < 1e-15);
    }
}
