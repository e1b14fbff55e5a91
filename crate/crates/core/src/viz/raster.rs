//! The "32d" view: a 3d surface rendered top-down as a grayscale raster
//! with an edge overlay marking grid-adjacent discontinuities. Emitted as
//! binary PPM (P6), byte-identical across runs.

use super::{plot3d, PlotPart, SurfaceGrid, Window};
use crate::eval::EvalCtx;
use crate::expr::Expr;

/// Default discontinuity threshold for the edge overlay; separates genuine
/// branch-cut gaps (order pi) from smooth grid-local variation.
pub const DEFAULT_EDGE_THRESHOLD: f64 = 0.5;

/// Render the top-down raster: value mapped to grayscale, red overlay where
/// adjacent nodes differ by more than `edge_threshold`, blue where masked.
/// Row 0 of the image is the top of the window (largest y).
pub fn plot32d(
    e: &Expr,
    window: &Window,
    part: PlotPart,
    edge_threshold: f64,
    ctx: &EvalCtx,
) -> Vec<u8> {
    let grid = plot3d(e, window, ctx);
    render_grid(&grid, part, edge_threshold)
}

pub fn render_grid(grid: &SurfaceGrid, part: PlotPart, edge_threshold: f64) -> Vec<u8> {
    let nx = grid.window.nx;
    let ny = grid.window.ny;
    let (mut vmin, mut vmax) = (f64::INFINITY, f64::NEG_INFINITY);
    for i in 0..ny {
        for j in 0..nx {
            if !grid.mask[grid.idx(i, j)] {
                let v = grid.value(part, i, j);
                vmin = vmin.min(v);
                vmax = vmax.max(v);
            }
        }
    }
    let span = if vmax > vmin { vmax - vmin } else { 1.0 };

    let mut edges = vec![false; nx * ny];
    for i in 0..ny {
        for j in 0..nx {
            let k = grid.idx(i, j);
            if grid.mask[k] {
                continue;
            }
            let v = grid.value(part, i, j);
            if j + 1 < nx && !grid.mask[grid.idx(i, j + 1)] {
                if (v - grid.value(part, i, j + 1)).abs() > edge_threshold {
                    edges[k] = true;
                    edges[grid.idx(i, j + 1)] = true;
                }
            }
            if i + 1 < ny && !grid.mask[grid.idx(i + 1, j)] {
                if (v - grid.value(part, i + 1, j)).abs() > edge_threshold {
                    edges[k] = true;
                    edges[grid.idx(i + 1, j)] = true;
                }
            }
        }
    }

    let mut out = Vec::with_capacity(32 + 3 * nx * ny);
    out.extend_from_slice(format!("P6\n{} {}\n255\n", nx, ny).as_bytes());
    // Image rows run top-down: start at the largest y index.
    for i in (0..ny).rev() {
        for j in 0..nx {
            let k = grid.idx(i, j);
            if grid.mask[k] {
                out.extend_from_slice(&[0, 0, 255]);
            } else if edges[k] {
                out.extend_from_slice(&[255, 0, 0]);
            } else {
                let v = grid.value(part, i, j);
                let g = (((v - vmin) / span) * 255.0).round().clamp(0.0, 255.0) as u8;
                out.extend_from_slice(&[g, g, g]);
            }
        }
    }
    out
}

/// Grid coordinates (i, j) of the red overlay pixels, for consistency checks.
pub fn edge_pixels(grid: &SurfaceGrid, part: PlotPart, edge_threshold: f64) -> Vec<(usize, usize)> {
    let bytes = render_grid(grid, part, edge_threshold);
    let nx = grid.window.nx;
    let ny = grid.window.ny;
    let header_len = bytes.len() - 3 * nx * ny;
    let mut out = Vec::new();
    for row in 0..ny {
        for j in 0..nx {
            let off = header_len + 3 * (row * nx + j);
            if bytes[off] == 255 && bytes[off + 1] == 0 && bytes[off + 2] == 0 {
                // Row 0 is the top (largest y index).
                out.push((ny - 1 - row, j));
            }
        }
    }
    out
}
