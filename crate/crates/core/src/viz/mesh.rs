//! Surface meshes as CSV: one `x,y,re,im,mask` row per grid node. Values
//! come from the same evaluation path as every other consumer, so the mesh
//! equals the eval kernel exactly.

use super::{PlotPart, SurfaceGrid};
use std::fmt::Write as _;

/// Serialize a grid to CSV. Masked nodes carry no value (printed as 0 with
/// mask = 1). Deterministic: shortest-round-trip float formatting.
pub fn mesh_csv(grid: &SurfaceGrid) -> String {
    let mut out = String::with_capacity(grid.re.len() * 32);
    out.push_str("x,y,re,im,mask\n");
    for i in 0..grid.window.ny {
        let y = grid.window.y_at(i);
        for j in 0..grid.window.nx {
            let x = grid.window.x_at(j);
            let k = grid.idx(i, j);
            if grid.mask[k] {
                let _ = writeln!(out, "{},{},0,0,1", x, y);
            } else {
                let _ = writeln!(out, "{},{},{},{},0", x, y, grid.re[k], grid.im[k]);
            }
        }
    }
    out
}

/// Largest value gap between vertically adjacent unmasked nodes in the
/// column nearest to `x`; used to check discontinuity ridges.
pub fn column_gap(grid: &SurfaceGrid, part: PlotPart, x: f64) -> f64 {
    let w = &grid.window;
    let j = (0..w.nx)
        .min_by(|&a, &b| {
            (w.x_at(a) - x)
                .abs()
                .partial_cmp(&(w.x_at(b) - x).abs())
                .unwrap()
        })
        .unwrap();
    let mut best = 0.0f64;
    for i in 0..w.ny - 1 {
        if !grid.mask[grid.idx(i, j)] && !grid.mask[grid.idx(i + 1, j)] {
            let gap = (grid.value(part, i + 1, j) - grid.value(part, i, j)).abs();
            best = best.max(gap);
        }
    }
    best
}
