//! 2d cut diagrams as deterministic SVG: axes, cuts styled by status
//! (solid = confirmed, dashed = possibly spurious, dotted = spurious),
//! branch points as open circles, and a provenance legend.

use super::Window;
use crate::engine::{cut_support_polyline, CutSet, CutStatus};
use crate::eval::EvalCtx;
use crate::poly::Coord;
use crate::rat::{rat_to_f64, Extended};
use num_complex::Complex64;
use std::fmt::Write as _;

const CANVAS: f64 = 640.0;
const MARGIN: f64 = 48.0;

struct Mapper {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Mapper {
    fn sx(&self, x: f64) -> f64 {
        MARGIN + (x - self.x0) / (self.x1 - self.x0) * (CANVAS - 2.0 * MARGIN)
    }

    fn sy(&self, y: f64) -> f64 {
        // SVG y grows downward.
        CANVAS - MARGIN - (y - self.y0) / (self.y1 - self.y0) * (CANVAS - 2.0 * MARGIN)
    }
}

fn stroke_for(status: CutStatus) -> (&'static str, &'static str) {
    match status {
        CutStatus::Confirmed => ("#000000", "none"),
        CutStatus::PossiblySpurious => ("#444444", "8,4"),
        CutStatus::Spurious => ("#888888", "2,3"),
    }
}

/// Render the cut set inside the window. When no cut intersects the window
/// the image still shows the axes plus a note.
pub fn plot2d(cs: &CutSet, window: &Window) -> String {
    let m = Mapper {
        x0: window.x0,
        x1: window.x1,
        y0: window.y0,
        y1: window.y1,
    };
    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{0}\" viewBox=\"0 0 {0} {0}\">",
        CANVAS
    );
    let _ = writeln!(
        s,
        "  <rect x=\"0\" y=\"0\" width=\"{0}\" height=\"{0}\" fill=\"#ffffff\"/>",
        CANVAS
    );
    let _ = writeln!(
        s,
        "  <rect x=\"{:.3}\" y=\"{:.3}\" width=\"{:.3}\" height=\"{:.3}\" fill=\"none\" stroke=\"#999999\" stroke-width=\"1\"/>",
        MARGIN,
        MARGIN,
        CANVAS - 2.0 * MARGIN,
        CANVAS - 2.0 * MARGIN
    );
    // Axes (when visible) and integer tick marks.
    if window.x0 < 0.0 && window.x1 > 0.0 {
        let _ = writeln!(
            s,
            "  <line x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>",
            m.sx(0.0),
            m.sy(window.y0),
            m.sx(0.0),
            m.sy(window.y1)
        );
    }
    if window.y0 < 0.0 && window.y1 > 0.0 {
        let _ = writeln!(
            s,
            "  <line x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>",
            m.sx(window.x0),
            m.sy(0.0),
            m.sx(window.x1),
            m.sy(0.0)
        );
    }
    let mut tick = window.x0.ceil();
    while tick <= window.x1 {
        let _ = writeln!(
            s,
            "  <line x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\" stroke=\"#999999\" stroke-width=\"1\"/>",
            m.sx(tick),
            CANVAS - MARGIN,
            m.sx(tick),
            CANVAS - MARGIN + 6.0
        );
        let _ = writeln!(
            s,
            "  <text x=\"{:.3}\" y=\"{:.3}\" font-size=\"11\" text-anchor=\"middle\" fill=\"#333333\">{}</text>",
            m.sx(tick),
            CANVAS - MARGIN + 18.0,
            tick
        );
        tick += 1.0;
    }
    let mut tick = window.y0.ceil();
    while tick <= window.y1 {
        let _ = writeln!(
            s,
            "  <line x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\" stroke=\"#999999\" stroke-width=\"1\"/>",
            MARGIN - 6.0,
            m.sy(tick),
            MARGIN,
            m.sy(tick)
        );
        let _ = writeln!(
            s,
            "  <text x=\"{:.3}\" y=\"{:.3}\" font-size=\"11\" text-anchor=\"end\" fill=\"#333333\">{}</text>",
            MARGIN - 9.0,
            m.sy(tick) + 4.0,
            tick
        );
        tick += 1.0;
    }

    let mut drew_any = false;
    for cut in &cs.cuts {
        let pts = cut_support_polyline(&cut.geometry, window.bounds(), 513);
        let visible: Vec<(f64, f64)> = pts
            .into_iter()
            .filter(|&(x, y)| window.contains(x, y))
            .collect();
        if visible.is_empty() {
            continue;
        }
        drew_any = true;
        let (color, dash) = stroke_for(cut.status);
        // Break the path where consecutive samples jump.
        let gap = 0.2 * ((window.x1 - window.x0) + (window.y1 - window.y0)) / 2.0;
        let mut d = String::new();
        let mut prev: Option<(f64, f64)> = None;
        for &(x, y) in &visible {
            let cmd = match prev {
                Some((px, py)) if ((x - px).powi(2) + (y - py).powi(2)).sqrt() < gap => "L",
                _ => "M",
            };
            let _ = write!(d, "{}{:.3} {:.3} ", cmd, m.sx(x), m.sy(y));
            prev = Some((x, y));
        }
        let dash_attr = if dash == "none" {
            String::new()
        } else {
            format!(" stroke-dasharray=\"{}\"", dash)
        };
        let _ = writeln!(
            s,
            "  <path d=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"2\"{}/>",
            d.trim_end(),
            color,
            dash_attr
        );
    }

    // Branch points: finite endpoints of each cut, drawn as open circles.
    for cut in &cs.cuts {
        for p in branch_points(cut) {
            if window.contains(p.re, p.im) {
                let _ = writeln!(
                    s,
                    "  <circle cx=\"{:.3}\" cy=\"{:.3}\" r=\"4\" fill=\"#ffffff\" stroke=\"#000000\" stroke-width=\"1.5\"/>",
                    m.sx(p.re),
                    m.sy(p.im)
                );
            }
        }
    }

    // Legend: one line per cut with provenance and status.
    let mut ystart = 16.0;
    if cs.cuts.is_empty() || !drew_any {
        let _ = writeln!(
            s,
            "  <text x=\"{:.3}\" y=\"{:.3}\" font-size=\"12\" fill=\"#333333\">no branch cuts in window</text>",
            MARGIN, ystart
        );
    } else {
        for (i, cut) in cs.cuts.iter().enumerate() {
            let _ = writeln!(
                s,
                "  <text x=\"{:.3}\" y=\"{:.3}\" font-size=\"10\" fill=\"#333333\">cut {}: {} [{}] from {}</text>",
                MARGIN,
                ystart,
                i + 1,
                xml_escape(&cut.description()),
                cut.status.label(),
                xml_escape(&cut.provenance.to_string())
            );
            ystart += 12.0;
        }
    }
    s.push_str("</svg>\n");
    s
}

fn branch_points(cut: &crate::engine::Cut) -> Vec<Complex64> {
    use crate::engine::{CutGeometry, FixedEq};
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
        CutGeometry::Polyline(_) => {}
    }
    out
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
