//! Plot framing and the three plot modes: 2d cut diagrams (SVG), 3d surface
//! meshes (CSV), and the top-down "32d" discontinuity raster (PPM).
//!
//! All emitters are deterministic: identical inputs produce byte-identical
//! artifacts.

mod mesh;
mod raster;
mod svg;

pub use mesh::{column_gap, mesh_csv};
pub use raster::{edge_pixels, plot32d, render_grid, DEFAULT_EDGE_THRESHOLD};
pub use svg::plot2d;

use crate::eval::{eval, EvalCtx};
use crate::expr::Expr;
use num_complex::Complex64;
use rayon::prelude::*;

/// Rectangular plot window with grid resolution.
#[derive(Clone, Debug, PartialEq)]
pub struct Window {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
    pub nx: usize,
    pub ny: usize,
}

impl Default for Window {
    fn default() -> Self {
        Window::square(2.0, 200)
    }
}

impl Window {
    pub fn new(x0: f64, x1: f64, y0: f64, y1: f64, nx: usize, ny: usize) -> Option<Window> {
        if x0 < x1 && y0 < y1 && nx >= 2 && ny >= 2 {
            Some(Window {
                x0,
                x1,
                y0,
                y1,
                nx,
                ny,
            })
        } else {
            None
        }
    }

    pub fn square(half: f64, n: usize) -> Window {
        Window::new(-half, half, -half, half, n, n).expect("valid square window")
    }

    pub fn bounds(&self) -> (f64, f64, f64, f64) {
        (self.x0, self.x1, self.y0, self.y1)
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        x >= self.x0 && x <= self.x1 && y >= self.y0 && y <= self.y1
    }

    /// Grid node coordinate along x (0 <= j < nx), endpoints included.
    pub fn x_at(&self, j: usize) -> f64 {
        self.x0 + (self.x1 - self.x0) * j as f64 / (self.nx - 1) as f64
    }

    pub fn y_at(&self, i: usize) -> f64 {
        self.y0 + (self.y1 - self.y0) * i as f64 / (self.ny - 1) as f64
    }
}

/// Which part of the value a plot shows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlotPart {
    Re,
    Im,
}

impl PlotPart {
    pub fn label(self) -> &'static str {
        match self {
            PlotPart::Re => "re",
            PlotPart::Im => "im",
        }
    }
}

/// Evaluated grid: per-node real and imaginary values plus a singularity
/// mask. Row-major, rows indexed by y.
#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceGrid {
    pub window: Window,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
    pub mask: Vec<bool>,
}

impl SurfaceGrid {
    pub fn idx(&self, i: usize, j: usize) -> usize {
        i * self.window.nx + j
    }

    pub fn value(&self, part: PlotPart, i: usize, j: usize) -> f64 {
        let k = self.idx(i, j);
        match part {
            PlotPart::Re => self.re[k],
            PlotPart::Im => self.im[k],
        }
    }
}

/// Evaluate `e` on the window grid; singular nodes are masked, not NaN.
/// Rows are evaluated in parallel; the result ordering is fixed.
pub fn plot3d(e: &Expr, window: &Window, ctx: &EvalCtx) -> SurfaceGrid {
    let rows: Vec<Vec<(f64, f64, bool)>> = (0..window.ny)
        .into_par_iter()
        .map(|i| {
            let y = window.y_at(i);
            (0..window.nx)
                .map(|j| {
                    let x = window.x_at(j);
                    match eval(e, Complex64::new(x, y), ctx) {
                        Ok(v) => (v.re, v.im, false),
                        Err(_) => (0.0, 0.0, true),
                    }
                })
                .collect()
        })
        .collect();
    let n = window.nx * window.ny;
    let mut re = Vec::with_capacity(n);
    let mut im = Vec::with_capacity(n);
    let mut mask = Vec::with_capacity(n);
    for row in rows {
        for (r, i_, m) in row {
            re.push(r);
            im.push(i_);
            mask.push(m);
        }
    }
    SurfaceGrid {
        window: window.clone(),
        re,
        im,
        mask,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use std::f64::consts::PI;

    #[test]
    fn grid_shows_logarithm_gap() {
        let e = parse("ln(z)").unwrap();
        let w = Window::square(2.0, 101);
        let g = plot3d(&e, &w, &EvalCtx::default());
        // Rows just below and above the negative real axis at x = -1.
        let j = (0..w.nx).min_by_key(|&j| ((w.x_at(j) + 1.0).abs() * 1e9) as i64).unwrap();
        let i_lo = (0..w.ny)
            .filter(|&i| w.y_at(i) < 0.0)
            .max_by_key(|&i| (w.y_at(i) * 1e9) as i64)
            .unwrap();
        let i_hi = (0..w.ny)
            .filter(|&i| w.y_at(i) > 0.0)
            .min_by_key(|&i| (w.y_at(i) * 1e9) as i64)
            .unwrap();
        let gap = (g.value(PlotPart::Im, i_hi, j) - g.value(PlotPart::Im, i_lo, j)).abs();
        assert!((gap - 2.0 * PI).abs() < 0.1, "gap {gap}");
    }

    #[test]
    fn singularities_are_masked() {
        let e = parse("ln(z)").unwrap();
        let w = Window::new(-1.0, 1.0, -1.0, 1.0, 3, 3).unwrap();
        let g = plot3d(&e, &w, &EvalCtx::default());
        // The center node is exactly 0, a pole of ln.
        assert!(g.mask[g.idx(1, 1)]);
        assert!(!g.mask[g.idx(0, 0)]);
    }
}
