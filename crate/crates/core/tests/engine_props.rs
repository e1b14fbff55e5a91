//! Engine properties: dense-grid oracle agreement for the semi-algebraic
//! solver, agreement between the two calculation approaches, union laws at
//! the point-set level, and recursion completeness.

use branchcuts_core::catalog::{Catalog, CutFunction};
use branchcuts_core::engine::{
    branch_cuts, cut_support_polyline, dist_point_polyline, parametric_cuts, sample_cut,
    semialgebraic_cuts, union_cuts, Cut, CutSet, EngineConfig,
};
use branchcuts_core::expr::{parse, Expr};
use branchcuts_core::eval::{jump_probe, EvalCtx};
use branchcuts_core::poly::re_im_decompose;
use branchcuts_core::rat::rat_i;
use branchcuts_core::viz::Window;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const WINDOW: (f64, f64, f64, f64) = (-4.0, 4.0, -4.0, 4.0);

/// Dense-grid oracle for { Q = 0 and P in I }: a cell is positive when Q
/// changes sign across one of its edges and P lies in I at the (bisected)
/// crossing. Independent of the plane solver: only polynomial evaluation.
fn oracle_cells(g: &Expr, n: usize) -> Vec<bool> {
    let rb = re_im_decompose(g).unwrap();
    let q = rb.q.to_f64_terms();
    let p = rb.p.to_f64_terms();
    let evalp = |t: &[(i32, i32, f64)], x: f64, y: f64| -> f64 {
        t.iter().map(|&(ex, ey, c)| c * x.powi(ex) * y.powi(ey)).sum()
    };
    let (x0, x1, y0, y1) = WINDOW;
    let hx = (x1 - x0) / n as f64;
    let hy = (y1 - y0) / n as f64;
    // Q on the (n+1)^2 node grid.
    let mut nodes = vec![0.0f64; (n + 1) * (n + 1)];
    for i in 0..=n {
        let y = y0 + hy * i as f64;
        for j in 0..=n {
            let x = x0 + hx * j as f64;
            nodes[i * (n + 1) + j] = evalp(&q, x, y);
        }
    }
    let mut out = vec![false; n * n];
    let crossing_ok = |xa: f64, ya: f64, xb: f64, yb: f64, qa: f64, qb: f64| -> bool {
        // Sub-grid refinement: bisect toward the zero of Q on the edge.
        let (mut ta, mut tb, mut qa) = (0.0f64, 1.0f64, qa);
        if qa == 0.0 {
            return evalp(&p, xa, ya) < 0.0;
        }
        if qb == 0.0 {
            return evalp(&p, xb, yb) < 0.0;
        }
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
    for i in 0..n {
        for j in 0..n {
            let q00 = nodes[i * (n + 1) + j];
            let q10 = nodes[i * (n + 1) + j + 1];
            let q01 = nodes[(i + 1) * (n + 1) + j];
            let q11 = nodes[(i + 1) * (n + 1) + j + 1];
            let (xa, ya) = (x0 + hx * j as f64, y0 + hy * i as f64);
            let (xb, yb) = (xa + hx, ya + hy);
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

/// Rasterize the cut set: cells touched by any support polyline segment.
fn member_cells(cuts: &[Cut], n: usize) -> Vec<bool> {
    let (x0, x1, y0, y1) = WINDOW;
    let hx = (x1 - x0) / n as f64;
    let hy = (y1 - y0) / n as f64;
    let mut out = vec![false; n * n];
    // A point exactly on a grid line belongs to both adjacent cells (the
    // oracle sees a zero corner on both sides), so mark the whole range.
    let mut mark = |x: f64, y: f64| {
        if x < x0 - 1e-12 || x > x1 + 1e-12 || y < y0 - 1e-12 || y > y1 + 1e-12 {
            return;
        }
        let tol = 1e-9;
        let j_lo = (((x - x0) / hx - tol).floor().max(0.0) as usize).min(n - 1);
        let j_hi = (((x - x0) / hx + tol).floor().max(0.0) as usize).min(n - 1);
        let i_lo = (((y - y0) / hy - tol).floor().max(0.0) as usize).min(n - 1);
        let i_hi = (((y - y0) / hy + tol).floor().max(0.0) as usize).min(n - 1);
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
            let steps = (len / (hx.min(hy) / 3.0)).ceil().max(1.0) as usize;
            for s in 0..=steps {
                let t = s as f64 / steps as f64;
                mark(w[0].0 + (w[1].0 - w[0].0) * t, w[0].1 + (w[1].1 - w[0].1) * t);
            }
        }
    }
    out
}

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

#[test]
fn grid_oracle_agrees_with_the_solver() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let cat = Catalog::default();
    let d = cat.defining_cut(CutFunction::Ln);
    let cfg = EngineConfig::default();
    let n = 300;
    for _ in 0..12 {
        let g = random_poly(&mut rng);
        let cuts = semialgebraic_cuts(&g, &d, &cfg).unwrap();
        let oracle = oracle_cells(&g, n);
        let member = member_cells(&cuts, n);
        let agree = oracle
            .iter()
            .zip(&member)
            .filter(|(a, b)| a == b)
            .count();
        let frac = agree as f64 / (n * n) as f64;
        let oracle_pos = oracle.iter().filter(|&&v| v).count();
        let recall = if oracle_pos > 0 {
            oracle
                .iter()
                .zip(&member)
                .filter(|(&o, &m)| o && m)
                .count() as f64
                / oracle_pos as f64
        } else {
            1.0
        };
        assert!(frac >= 0.99, "agreement {frac:.4} for ln({g})");
        if oracle_pos > 50 {
            assert!(recall >= 0.90, "recall {recall:.3} for ln({g})");
        }
    }
}

/// Trimmed bidirectional Hausdorff distance between the point sets of two
/// cut lists inside the window. Vertices within `trim` of any polyline
/// endpoint are skipped: branch-point neighborhoods have unbounded slope
/// and both representations truncate there at finite resolution.
fn hausdorff(a: &[Cut], b: &[Cut], trim: f64) -> f64 {
    let geoms = |cuts: &[Cut]| -> Vec<Vec<(f64, f64)>> {
        cuts.iter()
            .map(|c| cut_support_polyline(&c.geometry, WINDOW, 2049))
            .filter(|p| !p.is_empty())
            .collect()
    };
    let ga = geoms(a);
    let gb = geoms(b);
    let mut endpoints: Vec<(f64, f64)> = Vec::new();
    for g in ga.iter().chain(gb.iter()) {
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
    directed(&ga, &gb).max(directed(&gb, &ga))
}

#[test]
fn semialgebraic_and_parametric_fallback_describe_the_same_sets() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let cat = Catalog::default();
    let d = cat.defining_cut(CutFunction::Ln);
    let cfg = EngineConfig::default();
    let mut forced = EngineConfig::default();
    forced.force_numeric_fallback = true;
    for _ in 0..8 {
        let g = random_poly(&mut rng);
        let sa = semialgebraic_cuts(&g, &d, &cfg).unwrap();
        let pa = parametric_cuts(&g, &d, &forced).unwrap();
        let h = hausdorff(&sa, &pa, 0.05);
        assert!(h < 1e-3, "Hausdorff {h:.2e} for ln({g})");
    }
}

// --- union laws ------------------------------------------------------------

fn membership(cs: &CutSet, probes: &[(f64, f64)]) -> Vec<bool> {
    probes
        .iter()
        .map(|&p| {
            cs.cuts.iter().any(|c| {
                let pts = cut_support_polyline(&c.geometry, WINDOW, 513);
                dist_point_polyline(p, &pts) < 1e-6
            })
        })
        .collect()
}

fn probe_points() -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for k in 0..40 {
        let t = -3.8 + 7.6 * (k as f64 + 0.5) / 40.0;
        out.push((t, 0.0));
        out.push((0.0, t));
        out.push((t, t));
        out.push((t, 0.5));
    }
    out
}

#[test]
fn union_deduplicates_identical_point_sets() {
    let cfg = EngineConfig::default();
    let a = branch_cuts(&parse("sqrt(z)").unwrap(), &cfg).unwrap();
    let b = branch_cuts(&parse("ln(z)").unwrap(), &cfg).unwrap();
    let u = union_cuts(&a, &b);
    assert_eq!(u.len(), 1, "identical cuts must merge");

    let c = branch_cuts(&parse("sqrt(-z)").unwrap(), &cfg).unwrap();
    let u2 = union_cuts(&a, &c);
    assert_eq!(u2.len(), 2, "opposite half-axes stay distinct");
    // Both half-axes are genuine cuts of their sources (probe at -1 and 1).
    let ctx = EvalCtx::default();
    let left = jump_probe(
        &parse("sqrt(z)").unwrap(),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, 1.0),
        1e-6,
        &ctx,
    )
    .unwrap();
    let right = jump_probe(
        &parse("sqrt(-z)").unwrap(),
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 1.0),
        1e-6,
        &ctx,
    )
    .unwrap();
    assert!(left.magnitude > 0.1 && right.magnitude > 0.1);

    let empty = CutSet::new(parse("exp(z)").unwrap());
    let u3 = union_cuts(&a, &empty);
    assert_eq!(u3.cuts, a.cuts);
}

#[test]
fn union_is_idempotent_commutative_associative_on_point_sets() {
    let cfg = EngineConfig::default();
    let a = branch_cuts(&parse("sqrt(z)").unwrap(), &cfg).unwrap();
    let b = branch_cuts(&parse("arcsin(z)").unwrap(), &cfg).unwrap();
    let c = branch_cuts(&parse("ln(z^2)").unwrap(), &cfg).unwrap();
    let probes = probe_points();

    let aa = union_cuts(&a, &a);
    assert_eq!(membership(&aa, &probes), membership(&a, &probes));

    let ab = union_cuts(&a, &b);
    let ba = union_cuts(&b, &a);
    assert_eq!(membership(&ab, &probes), membership(&ba, &probes));

    let ab_c = union_cuts(&union_cuts(&a, &b), &c);
    let a_bc = union_cuts(&a, &union_cuts(&b, &c));
    assert_eq!(membership(&ab_c, &probes), membership(&a_bc, &probes));
}

// --- recursion completeness -------------------------------------------------

#[test]
fn inner_cuts_are_never_dropped() {
    let cfg = EngineConfig::default();
    for (whole, inner) in [
        ("ln(-sqrt(z))", "sqrt(z)"),
        ("sqrt(sqrt(z)-1)", "sqrt(z)"),
        ("ln(z^2-1)", "ln(z^2-1)"),
        ("arcsin(2*z)", "arcsin(2*z)"),
    ] {
        let big = branch_cuts(&parse(whole).unwrap(), &cfg).unwrap();
        let small = branch_cuts(&parse(inner).unwrap(), &cfg).unwrap();
        let w = Window::square(3.0, 10);
        for cut in &small.cuts {
            let samples = match sample_cut(cut, 7, &w) {
                Ok(s) => s,
                Err(_) => continue,
            };
            for s in samples {
                let d = big
                    .cuts
                    .iter()
                    .map(|c| {
                        let pts = cut_support_polyline(&c.geometry, WINDOW, 1025);
                        dist_point_polyline((s.point.re, s.point.im), &pts)
                    })
                    .fold(f64::INFINITY, f64::min);
                assert!(
                    d < 1e-6,
                    "{whole}: inner cut point {} is {d:.2e} away from the union",
                    s.point
                );
            }
        }
    }
}

#[test]
fn soundness_of_confirmed_cuts_after_classification() {
    use branchcuts_core::filter::{classify, ClassifyConfig};
    let cfg = EngineConfig::default();
    let ctx = EvalCtx::default();
    let ccfg = ClassifyConfig::default();
    for src in ["ln(z)", "ln(z^2)", "ln(-sqrt(z))", "arcsin(z)"] {
        let e = parse(src).unwrap();
        let cs = branch_cuts(&e, &cfg).unwrap();
        let outcome = classify(&e, &cs, &ccfg);
        for cut in outcome
            .cuts
            .cuts
            .iter()
            .filter(|c| c.status == branchcuts_core::engine::CutStatus::Confirmed)
        {
            let samples = match sample_cut(cut, 9, &ccfg.window) {
                Ok(s) => s,
                Err(_) => continue,
            };
            for s in samples {
                if let Ok(r) = jump_probe(&e, s.point, s.normal, ccfg.eps, &ctx) {
                    assert!(
                        r.magnitude > ccfg.threshold,
                        "{src}: confirmed cut fails to jump at {}",
                        s.point
                    );
                }
            }
        }
    }
}
