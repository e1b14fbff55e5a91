//! Acceptance suite: one test per criterion, each printing a PASS line
//! with its measured numbers. Run with `--nocapture` to see them.

use branchcuts_core::catalog::{Catalog, CutAxis, CutFunction};
use branchcuts_core::engine::{
    branch_cuts, cut_support_polyline, dist_point_polyline, parametric_cuts, sample_cut,
    semialgebraic_cuts, Cut, CutGeometry, CutStatus, EngineConfig,
};
use branchcuts_core::eval::{eval, jump_probe, EvalCtx};
use branchcuts_core::expr::{parse, Expr};
use branchcuts_core::filter::{classify, ClassifyConfig};
use branchcuts_core::poly::re_im_decompose;
use branchcuts_core::rat::rat_i;
use branchcuts_core::viz::Window;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use std::process::Command;
use std::time::Instant;

const EQ4: &str = "2*arcsin(z) - arcsin(2*z*sqrt(1-z^2))";

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_branchcuts"))
}

fn run_json(args: &[&str]) -> serde_json::Value {
    let out = bin().args(args).output().expect("binary runs");
    assert!(
        out.status.success(),
        "{:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON output")
}

fn run_text(args: &[&str]) -> String {
    let out = bin().args(args).output().expect("binary runs");
    assert!(out.status.success(), "{:?} failed", args);
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn criterion_1_defining_cut_of_ln() {
    let t = Instant::now();
    let v = run_json(&["analyze", "ln(z)", "--format", "json"]);
    let cuts = v["cuts"].as_array().unwrap();
    assert_eq!(cuts.len(), 1, "exactly one cut");
    let c = &cuts[0];
    assert_eq!(c["kind"], "semialgebraic");
    assert_eq!(c["fixed"], "y");
    assert_eq!(c["equation"]["value"], "0");
    assert_eq!(c["interval"][0], "-inf");
    assert_eq!(c["interval"][1], "0");
    let text = run_text(&["analyze", "ln(z)", "--format", "text"]);
    assert_eq!(text.lines().nth(1), Some("z in (-inf,0)"));
    let elapsed = t.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!(
        "criterion 1: PASS - ln(z) yields exactly {{Im(z)=0, Re(z) in (-inf,0)}} in {elapsed:?}"
    );
}

#[test]
fn criterion_2_imaginary_axis_branches_of_ln_z_squared() {
    let t = Instant::now();
    let v = run_json(&["analyze", "ln(z^2)", "--format", "json"]);
    let cuts = v["cuts"].as_array().unwrap();
    assert_eq!(cuts.len(), 2, "exactly two cuts");
    let mut seen = vec![];
    for c in cuts {
        assert_eq!(c["kind"], "semialgebraic");
        assert_eq!(c["fixed"], "x", "no y-fixed (real-axis) branch allowed");
        assert_eq!(c["equation"]["value"], "0");
        seen.push((
            c["interval"][0].as_str().unwrap().to_string(),
            c["interval"][1].as_str().unwrap().to_string(),
        ));
    }
    seen.sort();
    assert_eq!(
        seen,
        vec![
            ("-inf".to_string(), "0".to_string()),
            ("0".to_string(), "inf".to_string())
        ]
    );
    let text = run_text(&["analyze", "ln(z^2)", "--format", "text"]);
    assert_eq!(
        text.lines().nth(1),
        Some("Re(z) = 0 and Im(z) > 0; Re(z) = 0 and Im(z) < 0")
    );
    let elapsed = t.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!("criterion 2: PASS - ln(z^2) yields the two imaginary half-axes and no real-axis branch in {elapsed:?}");
}

#[test]
fn criterion_3_inner_sqrt_cut_is_present() {
    let t = Instant::now();
    let v = run_json(&["analyze", "ln(-sqrt(z))", "--format", "json"]);
    let cuts = v["cuts"].as_array().unwrap();
    let parametric = cuts.iter().find(|c| c["kind"] == "parametric").expect(
        "a parametric cut must be present",
    );
    assert_eq!(parametric["param_map"], "a^2");
    assert_eq!(parametric["param_range"][0], "-inf");
    assert_eq!(parametric["param_range"][1], "0");
    let inner = cuts
        .iter()
        .find(|c| c["kind"] == "semialgebraic")
        .expect("the inner sqrt cut must be present");
    assert_eq!(inner["fixed"], "y");
    assert_eq!(inner["equation"]["value"], "0");
    assert_eq!(inner["interval"][0], "-inf");
    assert_eq!(inner["interval"][1], "0");
    let text = run_text(&["analyze", "ln(-sqrt(z))"]);
    assert_eq!(
        text.lines().nth(1),
        Some("z = a^2, a in (-inf,0); z in (-inf,0)")
    );
    let elapsed = t.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!("criterion 3: PASS - ln(-sqrt(z)) keeps both the parametric cut z=a^2 and the inner cut z in (-inf,0) in {elapsed:?}");
}

#[test]
fn criterion_4_hourglass_identity() {
    let t = Instant::now();
    let e = parse(EQ4).unwrap();
    let cs = branch_cuts(&e, &EngineConfig::default()).unwrap();
    // Real-axis branches |Re z| >= 1.
    let has_axis = |lo: &str, hi: &str| {
        cs.cuts.iter().any(|c| match &c.geometry {
            CutGeometry::SemiAlgebraic(sa) => {
                sa.fixed == branchcuts_core::poly::Coord::Y
                    && sa.interval.lo.to_string() == lo
                    && sa.interval.hi.to_string() == hi
            }
            _ => false,
        })
    };
    assert!(has_axis("1", "inf"), "missing the cut z in (1,inf)");
    assert!(has_axis("-inf", "-1"), "missing the cut z in (-inf,-1)");
    // Four curved branches, one reaching into each diagonal quadrant.
    let mut quadrants = [false; 4];
    let mut curved = 0;
    for c in &cs.cuts {
        if let CutGeometry::Polyline(pl) = &c.geometry {
            curved += 1;
            for &(x, y) in &pl.points {
                if x.abs() > 0.8 && y.abs() > 0.8 {
                    let q = match (x > 0.0, y > 0.0) {
                        (true, true) => 0,
                        (false, true) => 1,
                        (false, false) => 2,
                        (true, false) => 3,
                    };
                    quadrants[q] = true;
                }
            }
        }
    }
    assert!(curved >= 4, "expected four curved branches, got {curved}");
    assert!(
        quadrants.iter().all(|&q| q),
        "hourglass branches missing from some quadrant: {quadrants:?}"
    );
    // Numeric identity checks.
    let ctx = EvalCtx::default();
    let at = |z: Complex64| eval(&e, z, &ctx).unwrap().norm();
    let inside0 = at(Complex64::new(0.0, 0.0));
    let inside1 = at(Complex64::new(0.2, 0.1));
    let outside = at(Complex64::new(1.0, 0.0));
    assert!(inside0 < 1e-9, "|LHS-RHS| at 0 is {inside0}");
    assert!(inside1 < 1e-9, "|LHS-RHS| at 0.2+0.1i is {inside1}");
    assert!(outside >= PI - 1e-6, "|LHS-RHS| at 1 is {outside}");
    let elapsed = t.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}");
    println!(
        "criterion 4: PASS - hourglass cuts present; |LHS-RHS| = {inside0:.2e} at 0, {inside1:.2e} at 0.2+0.1i, {outside:.6} at 1; {elapsed:?}"
    );
}

#[test]
fn criterion_5_catalog_soundness_suite() {
    let t = Instant::now();
    let cat = Catalog::default();
    let ctx = EvalCtx::default();
    let mut probed = 0usize;
    for f in CutFunction::ALL {
        let d = cat.defining_cut(f);
        let e = f.representative();
        for piece in &d.region {
            let lo = piece.interval.lo.to_f64().max(-6.0);
            let hi = piece.interval.hi.to_f64().min(6.0);
            let normal = match piece.axis {
                CutAxis::Real => Complex64::new(0.0, 1.0),
                CutAxis::Imag => Complex64::new(1.0, 0.0),
            };
            for k in 0..10 {
                let s = lo + (hi - lo) * (k as f64 + 1.0) / 11.0;
                let p = match piece.axis {
                    CutAxis::Real => Complex64::new(s, 0.0),
                    CutAxis::Imag => Complex64::new(0.0, s),
                };
                let r = jump_probe(&e, p, normal, 1e-6, &ctx).unwrap();
                assert!(r.magnitude > 1e-3, "{:?} at {p}: {}", f, r.magnitude);
                probed += 1;
            }
        }
        // Ten off-cut points in the far sectors between the axes.
        let offs = [
            Complex64::new(2.5, 2.5),
            Complex64::new(-2.5, 2.5),
            Complex64::new(2.5, -2.5),
            Complex64::new(-2.5, -2.5),
            Complex64::new(3.0, 1.5),
            Complex64::new(-3.0, -1.5),
            Complex64::new(1.5, 3.0),
            Complex64::new(-1.5, 3.0),
            Complex64::new(3.5, -1.2),
            Complex64::new(-3.5, 1.2),
        ];
        for p in offs {
            for n in [Complex64::new(0.0, 1.0), Complex64::new(1.0, 0.0)] {
                let r = jump_probe(&e, p, n, 1e-6, &ctx).unwrap();
                assert!(r.magnitude < 1e-6, "{:?} off-cut at {p}: {}", f, r.magnitude);
            }
            probed += 1;
        }
    }
    let elapsed = t.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}");
    println!(
        "criterion 5: PASS - all 12 symbols sound ({probed} probes: on-cut > 1e-3, off-cut < 1e-6) in {elapsed:?}"
    );
}

#[test]
fn criterion_6_logarithm_jump_magnitude() {
    let t = Instant::now();
    let cfg = EngineConfig::default();
    let ccfg = ClassifyConfig::default();
    let ctx = EvalCtx::default();
    let mut measured = 0usize;
    for src in ["ln(z)", "ln(z^2)", "ln(-sqrt(z))"] {
        let e = parse(src).unwrap();
        let cs = branch_cuts(&e, &cfg).unwrap();
        let outcome = classify(&e, &cs, &ccfg);
        for cut in &outcome.cuts.cuts {
            let ln_induced = cut.provenance.source.starts_with("ln(");
            if !ln_induced || cut.status != CutStatus::Confirmed {
                continue;
            }
            for s in sample_cut(cut, 9, &ccfg.window).unwrap() {
                let r = jump_probe(&e, s.point, s.normal, 1e-6, &ctx).unwrap();
                let im_jump = r.jump.im.abs();
                assert!(
                    (im_jump - 2.0 * PI).abs() < 1e-4,
                    "{src} at {}: imaginary jump {im_jump}",
                    s.point
                );
                measured += 1;
            }
        }
    }
    assert!(measured >= 18, "only {measured} ln-cut probes");
    let elapsed = t.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}");
    println!(
        "criterion 6: PASS - {measured} probes across ln-induced cuts all jump by 2*pi within 1e-4 in {elapsed:?}"
    );
}

#[test]
fn criterion_7_spurious_detection() {
    let t = Instant::now();
    let v = run_json(&["classify", "sqrt(z)*sqrt(z)", "--format", "json"]);
    let cuts = v["cuts"].as_array().unwrap();
    assert_eq!(cuts.len(), 1);
    assert_eq!(cuts[0]["status"], "spurious");
    for verdict in v["verdicts"].as_array().unwrap() {
        for ev in verdict["evidence"].as_array().unwrap() {
            let m = ev["jump_magnitude"].as_f64().unwrap();
            assert!(m < 1e-9, "jump {m} not below 1e-9");
        }
    }
    let v = run_json(&["classify", "ln(z^2)", "--format", "json"]);
    let cuts = v["cuts"].as_array().unwrap();
    assert_eq!(cuts.len(), 2);
    for c in cuts {
        assert_eq!(c["status"], "confirmed");
    }
    let elapsed = t.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}");
    println!("criterion 7: PASS - sqrt(z)*sqrt(z) cut marked spurious (jumps < 1e-9), ln(z^2) cuts confirmed in {elapsed:?}");
}

// --- criterion 8: oracle equivalence ---------------------------------------

const WINDOW: (f64, f64, f64, f64) = (-4.0, 4.0, -4.0, 4.0);

fn random_poly(rng: &mut ChaCha8Rng) -> Expr {
    loop {
        let deg = rng.gen_range(1..=3usize);
        let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-3..=3i64)).collect();
        if coeffs[1..].iter().all(|&c| c == 0) {
            continue;
        }
        let mut terms = Vec::new();
        for (k, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mono = if k == 0 {
                Expr::integer(c)
            } else {
                Expr::mul(vec![Expr::integer(c), Expr::pow(Expr::var(), rat_i(k as i64))])
            };
            terms.push(mono);
        }
        return Expr::add(terms);
    }
}

/// Dense-grid oracle for { Q = 0, P < 0 }: cells where Q changes sign on an
/// edge and P is negative at the bisected crossing. No solver machinery.
fn oracle_cells(g: &Expr, n: usize) -> Vec<bool> {
    let rb = re_im_decompose(g).unwrap();
    let q = rb.q.to_f64_terms();
    let p = rb.p.to_f64_terms();
    let evalp = |t: &[(i32, i32, f64)], x: f64, y: f64| -> f64 {
        t.iter().map(|&(ex, ey, c)| c * x.powi(ex) * y.powi(ey)).sum()
    };
    let (x0, _, y0, _) = WINDOW;
    let h = 8.0 / n as f64;
    let mut nodes = vec![0.0f64; (n + 1) * (n + 1)];
    for i in 0..=n {
        for j in 0..=n {
            nodes[i * (n + 1) + j] = evalp(&q, x0 + h * j as f64, y0 + h * i as f64);
        }
    }
    let crossing_ok = |xa: f64, ya: f64, xb: f64, yb: f64, mut qa: f64, qb: f64| -> bool {
        if qa == 0.0 {
            return evalp(&p, xa, ya) < 0.0;
        }
        if qb == 0.0 {
            return evalp(&p, xb, yb) < 0.0;
        }
        let (mut ta, mut tb) = (0.0f64, 1.0f64);
        for _ in 0..40 {
            let tm = 0.5 * (ta + tb);
            let qm = evalp(&q, xa + (xb - xa) * tm, ya + (yb - ya) * tm);
            if qm == 0.0 {
                ta = tm;
                break;
            }
            if (qm > 0.0) == (qa > 0.0) {
                ta = tm;
                qa = qm;
            } else {
                tb = tm;
            }
        }
        let t = 0.5 * (ta + tb);
        evalp(&p, xa + (xb - xa) * t, ya + (yb - ya) * t) < 0.0
    };
    let mut out = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            let q00 = nodes[i * (n + 1) + j];
            let q10 = nodes[i * (n + 1) + j + 1];
            let q01 = nodes[(i + 1) * (n + 1) + j];
            let q11 = nodes[(i + 1) * (n + 1) + j + 1];
            let (xa, ya) = (x0 + h * j as f64, y0 + h * i as f64);
            let (xb, yb) = (xa + h, ya + h);
            let mut hit = false;
            for (pa, pb, qa, qb) in [
                ((xa, ya), (xb, ya), q00, q10),
                ((xa, yb), (xb, yb), q01, q11),
                ((xa, ya), (xa, yb), q00, q01),
                ((xb, ya), (xb, yb), q10, q11),
            ] {
                let sign_change = qa == 0.0 || qb == 0.0 || (qa > 0.0) != (qb > 0.0);
                if sign_change && crossing_ok(pa.0, pa.1, pb.0, pb.1, qa, qb) {
                    hit = true;
                    break;
                }
            }
            out[i * n + j] = hit;
        }
    }
    out
}

fn member_cells(cuts: &[Cut], n: usize) -> Vec<bool> {
    let (x0, x1, y0, y1) = WINDOW;
    let h = 8.0 / n as f64;
    let mut out = vec![false; n * n];
    let mut mark = |x: f64, y: f64| {
        if x < x0 - 1e-12 || x > x1 + 1e-12 || y < y0 - 1e-12 || y > y1 + 1e-12 {
            return;
        }
        let tol = 1e-9;
        let j_lo = (((x - x0) / h - tol).floor().max(0.0) as usize).min(n - 1);
        let j_hi = (((x - x0) / h + tol).floor().max(0.0) as usize).min(n - 1);
        let i_lo = (((y - y0) / h - tol).floor().max(0.0) as usize).min(n - 1);
        let i_hi = (((y - y0) / h + tol).floor().max(0.0) as usize).min(n - 1);
        for i in i_lo..=i_hi {
            for j in j_lo..=j_hi {
                out[i * n + j] = true;
            }
        }
    };
    for cut in cuts {
        let pts = cut_support_polyline(&cut.geometry, WINDOW, 2049);
        for w in pts.windows(2) {
            let len = ((w[1].0 - w[0].0).powi(2) + (w[1].1 - w[0].1).powi(2)).sqrt();
            let steps = (len / (h / 3.0)).ceil().max(1.0) as usize;
            for s in 0..=steps {
                let t = s as f64 / steps as f64;
                mark(w[0].0 + (w[1].0 - w[0].0) * t, w[0].1 + (w[1].1 - w[0].1) * t);
            }
        }
    }
    out
}

/// Bidirectional sampled Hausdorff distance, skipping vertices within
/// `trim` of a polyline endpoint (both representations truncate at branch
/// points, where the curve has unbounded slope, at finite resolution).
fn hausdorff(a: &[Cut], b: &[Cut], trim: f64) -> f64 {
    let geoms = |cuts: &[Cut], n: usize| -> Vec<Vec<(f64, f64)>> {
        cuts.iter()
            .map(|c| cut_support_polyline(&c.geometry, WINDOW, n))
            .filter(|p| !p.is_empty())
            .collect()
    };
    let dense_a = geoms(a, 2049);
    let dense_b = geoms(b, 2049);
    let sparse_a = geoms(a, 129);
    let sparse_b = geoms(b, 129);
    let mut endpoints: Vec<(f64, f64)> = Vec::new();
    for g in dense_a.iter().chain(dense_b.iter()) {
        endpoints.push(*g.first().unwrap());
        endpoints.push(*g.last().unwrap());
    }
    let directed = |from: &[Vec<(f64, f64)>], to: &[Vec<(f64, f64)>]| -> f64 {
        let mut worst = 0.0f64;
        for g in from {
            for &v in g {
                if v.0.abs() > 3.8 || v.1.abs() > 3.8 {
                    continue;
                }
                if endpoints
                    .iter()
                    .any(|&e| ((e.0 - v.0).powi(2) + (e.1 - v.1).powi(2)).sqrt() < trim)
                {
                    continue;
                }
                let d = to
                    .iter()
                    .map(|t| dist_point_polyline(v, t))
                    .fold(f64::INFINITY, f64::min);
                worst = worst.max(d);
            }
        }
        worst
    };
    directed(&sparse_a, &dense_b).max(directed(&sparse_b, &dense_a))
}

#[test]
fn criterion_8_oracle_equivalence() {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let cat = Catalog::default();
    let d = cat.defining_cut(CutFunction::Ln);
    let cfg = EngineConfig::default();
    let mut forced = EngineConfig::default();
    forced.force_numeric_fallback = true;
    let n = 600;
    let mut worst_agree = 1.0f64;
    let mut worst_h = 0.0f64;
    for idx in 0..50 {
        let g = random_poly(&mut rng);
        let cuts = semialgebraic_cuts(&g, &d, &cfg)
            .unwrap_or_else(|e| panic!("solver failed on ln({g}): {e}"));
        let oracle = oracle_cells(&g, n);
        let member = member_cells(&cuts, n);
        let agree = oracle.iter().zip(&member).filter(|(a, b)| a == b).count() as f64
            / (n * n) as f64;
        assert!(agree >= 0.99, "arg {idx} ln({g}): agreement {agree:.4}");
        worst_agree = worst_agree.min(agree);

        let fallback = parametric_cuts(&g, &d, &forced).unwrap();
        let h = hausdorff(&cuts, &fallback, 0.05);
        assert!(h < 1e-3, "arg {idx} ln({g}): Hausdorff {h:.2e}");
        worst_h = worst_h.max(h);
    }
    let elapsed = t.elapsed();
    assert!(elapsed.as_secs_f64() < 300.0, "took {elapsed:?}");
    println!(
        "criterion 8: PASS - 50 random arguments: worst grid agreement {worst_agree:.4} (>= 0.99), worst representation Hausdorff {worst_h:.2e} (< 1e-3) in {elapsed:?}"
    );
}

#[test]
fn criterion_9_plot_determinism() {
    let t = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let inputs = ["ln(z^2)", "ln(-sqrt(z))", EQ4];
    let subs: [(&str, &str); 3] = [("plot2d", "svg"), ("plot3d", "csv"), ("plot32d", "ppm")];
    for (k, src) in inputs.iter().enumerate() {
        for (sub, ext) in subs {
            let mut artifacts: Vec<Vec<u8>> = Vec::new();
            for run in 0..2 {
                let path = dir.path().join(format!("{sub}_{k}_{run}.{ext}"));
                let out = bin()
                    .args([
                        sub,
                        src,
                        "--grid",
                        "120",
                        "--out",
                        path.to_str().unwrap(),
                    ])
                    .output()
                    .expect("binary runs");
                assert!(
                    out.status.success(),
                    "{sub} {src}: {}",
                    String::from_utf8_lossy(&out.stderr)
                );
                artifacts.push(std::fs::read(&path).unwrap());
            }
            assert_eq!(
                artifacts[0], artifacts[1],
                "{sub} on {src} is not byte-identical across runs"
            );
            assert!(!artifacts[0].is_empty());
        }
    }
    let elapsed = t.elapsed();
    println!(
        "criterion 9: PASS - plot2d/plot3d/plot32d byte-identical across repeated runs on all three inputs in {elapsed:?}"
    );
}

/// Window sanity for the hourglass: the default window keeps the whole
/// waist visible (branch points at +-1 and curved branch crossings inside).
#[test]
fn hourglass_visible_in_default_window() {
    let e = parse(EQ4).unwrap();
    let cs = branch_cuts(&e, &EngineConfig::default()).unwrap();
    let w = Window::default();
    let mut any_curved_inside = false;
    for c in &cs.cuts {
        if let CutGeometry::Polyline(pl) = &c.geometry {
            if pl.points.iter().any(|&(x, y)| w.contains(x, y)) {
                any_curved_inside = true;
            }
        }
    }
    assert!(any_curved_inside);
}
