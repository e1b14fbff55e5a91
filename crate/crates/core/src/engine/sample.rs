//! Sampling points (with unit normals) along a cut, clipped to a window.
//! Feeds the spurious filter and the plot renderers.

use super::numeric::real_roots_of_coeffs;
use super::{Cut, CutGeometry, FixedEq};
use crate::error::SampleError;
use crate::eval::{eval, EvalCtx};
use crate::poly::Coord;
use crate::rat::rat_to_f64;
use crate::viz::Window;
use num_complex::Complex64;

/// One probe-ready location on a cut.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CutSample {
    pub point: Complex64,
    /// Unit vector perpendicular to the cut at `point`.
    pub normal: Complex64,
}

/// Spread `n` sample points over the part of the cut inside the window.
/// Points carry unit normals. Positions follow the uniform interior rule
/// t_k = a + (k+1)(b-a)/(n+1) on the clipped parameter range.
pub fn sample_cut(cut: &Cut, n: usize, window: &Window) -> Result<Vec<CutSample>, SampleError> {
    if n < 2 {
        return Err(SampleError::TooFewPoints(n));
    }
    let samples = match &cut.geometry {
        CutGeometry::SemiAlgebraic(sa) => {
            let (free_lo, free_hi, fixed_lo, fixed_hi) = match sa.fixed {
                Coord::Y => (window.x0, window.x1, window.y0, window.y1),
                Coord::X => (window.y0, window.y1, window.x0, window.x1),
            };
            match &sa.equation {
                FixedEq::Value(v) => {
                    let fv = rat_to_f64(v);
                    if fv < fixed_lo || fv > fixed_hi {
                        return Err(SampleError::EmptyInWindow);
                    }
                    let (a, b) = sa
                        .interval
                        .clip_f64(free_lo, free_hi)
                        .ok_or(SampleError::EmptyInWindow)?;
                    (0..n)
                        .map(|k| {
                            let t = a + (b - a) * (k as f64 + 1.0) / (n as f64 + 1.0);
                            let (point, normal) = match sa.fixed {
                                Coord::Y => {
                                    (Complex64::new(t, fv), Complex64::new(0.0, 1.0))
                                }
                                Coord::X => {
                                    (Complex64::new(fv, t), Complex64::new(1.0, 0.0))
                                }
                            };
                            CutSample { point, normal }
                        })
                        .collect()
                }
                FixedEq::RootBranch { poly, index } => {
                    let (a, b) = sa
                        .interval
                        .clip_f64(free_lo, free_hi)
                        .ok_or(SampleError::EmptyInWindow)?;
                    let grad_x = poly.derivative(Coord::X);
                    let grad_y = poly.derivative(Coord::Y);
                    let mut out = Vec::new();
                    let attempts = 2 * n;
                    for k in 0..attempts {
                        if out.len() >= n {
                            break;
                        }
                        let t = a + (b - a) * (k as f64 + 1.0) / (attempts as f64 + 1.0);
                        let coeffs = match sa.fixed {
                            Coord::Y => poly.coeffs_in_y_at_f64(t),
                            Coord::X => poly.swap_axes().coeffs_in_y_at_f64(t),
                        };
                        let roots = real_roots_of_coeffs(&coeffs);
                        let r = match roots.get(*index) {
                            Some(&r) => r,
                            None => continue,
                        };
                        let (x, y) = match sa.fixed {
                            Coord::Y => (t, r),
                            Coord::X => (r, t),
                        };
                        if !window.contains(x, y) {
                            continue;
                        }
                        let gx = grad_x.eval_f64(x, y);
                        let gy = grad_y.eval_f64(x, y);
                        let norm = (gx * gx + gy * gy).sqrt();
                        let normal = if norm > 1e-12 {
                            Complex64::new(gx / norm, gy / norm)
                        } else {
                            Complex64::new(0.0, 1.0)
                        };
                        out.push(CutSample {
                            point: Complex64::new(x, y),
                            normal,
                        });
                    }
                    out
                }
            }
        }
        CutGeometry::Parametric(pc) => {
            let ctx = EvalCtx::default();
            let lo = pc.range.lo.to_f64();
            let hi = pc.range.hi.to_f64();
            // Scan for the parameter values whose image lies in the window.
            let mut in_window = Vec::new();
            let (core_lo, core_hi) = (lo.max(-64.0), hi.min(64.0));
            if core_lo < core_hi {
                for k in 0..2048 {
                    let a = core_lo + (core_hi - core_lo) * (k as f64 + 0.5) / 2048.0;
                    if a <= lo || a >= hi {
                        continue;
                    }
                    if let Ok(z) = eval(&pc.map, Complex64::new(a, 0.0), &ctx) {
                        if window.contains(z.re, z.im) {
                            in_window.push(a);
                        }
                    }
                }
            }
            if in_window.is_empty() {
                return Err(SampleError::EmptyInWindow);
            }
            let a0 = in_window[0];
            let a1 = *in_window.last().unwrap();
            let mut out = Vec::new();
            let attempts = 2 * n;
            for k in 0..attempts {
                if out.len() >= n {
                    break;
                }
                let t = a0 + (a1 - a0) * (k as f64 + 1.0) / (attempts as f64 + 1.0);
                let z = match eval(&pc.map, Complex64::new(t, 0.0), &ctx) {
                    Ok(z) => z,
                    Err(_) => continue,
                };
                if !window.contains(z.re, z.im) {
                    continue;
                }
                let h = 1e-6 * (1.0 + t.abs());
                let zp = eval(&pc.map, Complex64::new(t + h, 0.0), &ctx);
                let zm = eval(&pc.map, Complex64::new(t - h, 0.0), &ctx);
                let tangent = match (zp, zm) {
                    (Ok(p), Ok(m)) => (p - m) / (2.0 * h),
                    _ => Complex64::new(1.0, 0.0),
                };
                let normal = if tangent.norm() > 1e-12 {
                    Complex64::i() * tangent / tangent.norm()
                } else {
                    Complex64::new(0.0, 1.0)
                };
                out.push(CutSample { point: z, normal });
            }
            out
        }
        CutGeometry::Polyline(pl) => {
            let pts = &pl.points;
            if pts.len() < 2 {
                return Err(SampleError::EmptyInWindow);
            }
            let mut cum = vec![0.0];
            for w in pts.windows(2) {
                let d = ((w[1].0 - w[0].0).powi(2) + (w[1].1 - w[0].1).powi(2)).sqrt();
                cum.push(cum.last().unwrap() + d);
            }
            let total = *cum.last().unwrap();
            if total <= 0.0 {
                return Err(SampleError::EmptyInWindow);
            }
            let mut out = Vec::new();
            let attempts = 2 * n;
            for k in 0..attempts {
                if out.len() >= n {
                    break;
                }
                let s = total * (k as f64 + 1.0) / (attempts as f64 + 1.0);
                let seg = match cum.windows(2).position(|w| s >= w[0] && s <= w[1]) {
                    Some(i) => i,
                    None => continue,
                };
                let seg_len = cum[seg + 1] - cum[seg];
                let t = if seg_len > 0.0 {
                    (s - cum[seg]) / seg_len
                } else {
                    0.0
                };
                let x = pts[seg].0 + t * (pts[seg + 1].0 - pts[seg].0);
                let y = pts[seg].1 + t * (pts[seg + 1].1 - pts[seg].1);
                if !window.contains(x, y) {
                    continue;
                }
                // Average adjacent segment directions near shared vertices.
                let dir = segment_dir(pts, seg, t);
                let normal = Complex64::i() * dir;
                out.push(CutSample {
                    point: Complex64::new(x, y),
                    normal,
                });
            }
            out
        }
    };
    if samples.is_empty() {
        Err(SampleError::EmptyInWindow)
    } else {
        Ok(samples)
    }
}

fn segment_dir(pts: &[(f64, f64)], seg: usize, t: f64) -> Complex64 {
    let d = |i: usize| -> Complex64 {
        let v = Complex64::new(pts[i + 1].0 - pts[i].0, pts[i + 1].1 - pts[i].1);
        if v.norm() > 1e-12 {
            v / v.norm()
        } else {
            Complex64::new(1.0, 0.0)
        }
    };
    let base = d(seg);
    let blended = if t < 0.25 && seg > 0 {
        base + d(seg - 1)
    } else if t > 0.75 && seg + 2 < pts.len() {
        base + d(seg + 1)
    } else {
        base
    };
    if blended.norm() > 1e-12 {
        blended / blended.norm()
    } else {
        base
    }
}
