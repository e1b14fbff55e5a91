//! Parametric cut computation: set the argument equal to the parameter,
//! invert symbolically by peeling invertible outer operations, and fall back
//! to grid-based numeric root finding when no closed form exists.

use super::numeric::{durand_kerner, newton_solve};
use super::{Cut, CutGeometry, CutStatus, FixedEq, ParametricCut, PolylineCut, SemiAlgebraicCut};
use crate::catalog::{DefiningCut, ParamPiece};
use crate::engine::EngineConfig;
use crate::error::EngineError;
use crate::eval::{eval, EvalCtx};
use crate::expr::{Expr, FuncSymbol};
use crate::poly::{polynomial_argument, Coord};
use crate::rat::{rat_from_f64, rat_i, Extended, GaussianRat, Interval, Rat};
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};
use std::f64::consts::PI;

/// Cuts induced by a defining cut applied to an arbitrary argument, via
/// symbolic inversion of g(z) = c(alpha) where possible and the numeric
/// fallback otherwise. Solutions from non-principal roots are tagged
/// possibly-spurious at creation.
pub fn parametric_cuts(
    g: &Expr,
    d: &DefiningCut,
    cfg: &EngineConfig,
) -> Result<Vec<Cut>, EngineError> {
    if !g.contains_var() {
        return Ok(vec![]);
    }
    let mut out = Vec::new();
    for piece in &d.parametric {
        let families = if cfg.force_numeric_fallback {
            None
        } else {
            invert_symbolic(g, piece)
        };
        match families {
            Some(fams) => {
                for fam in fams {
                    out.extend(family_to_cuts(fam));
                }
            }
            None => {
                if !cfg.numeric_fallback {
                    return Err(EngineError::InversionFailure(format!(
                        "no closed-form inversion for {} = c(a); numeric fallback disabled",
                        g
                    )));
                }
                out.extend(numeric_fallback(g, piece, cfg));
            }
        }
    }
    Ok(out)
}

/// Side conditions collected while peeling. Each constrains the value of a
/// right-hand-side expression of alpha and trims the parameter range.
#[derive(Clone, Debug)]
enum Constraint {
    /// Value must lie in the range of the principal q-th root:
    /// arg in (-pi/q, pi/q], or zero.
    PrincipalRootRange { expr: Expr, q: u32 },
    /// Value must lie in the range of the principal logarithm:
    /// Im in (-pi, pi].
    LnRange { expr: Expr },
}

impl Constraint {
    fn holds_at(&self, alpha: f64) -> bool {
        let ctx = EvalCtx::default();
        match self {
            Constraint::PrincipalRootRange { expr, q } => {
                match eval(expr, Complex64::new(alpha, 0.0), &ctx) {
                    Ok(v) => {
                        if v.norm() < 1e-300 {
                            true
                        } else {
                            let theta = v.im.atan2(v.re);
                            let lim = PI / *q as f64;
                            theta > -lim + 1e-12 && theta <= lim + 1e-12
                        }
                    }
                    Err(_) => false,
                }
            }
            Constraint::LnRange { expr } => match eval(expr, Complex64::new(alpha, 0.0), &ctx) {
                Ok(v) => v.im > -PI + 1e-12 && v.im <= PI + 1e-12,
                Err(_) => false,
            },
        }
    }
}

#[derive(Clone, Debug)]
struct Family {
    map: Expr,
    range: Interval,
    principal: bool,
    constraints: Vec<Constraint>,
}

fn gaussian_expr(c: &GaussianRat) -> Expr {
    let mut parts = Vec::new();
    if !c.re.is_zero() {
        parts.push(Expr::rational(c.re.clone()));
    }
    if !c.im.is_zero() {
        parts.push(Expr::mul(vec![Expr::rational(c.im.clone()), Expr::i()]));
    }
    Expr::add(parts)
}

/// Raise to an integer power, stripping an outer negation under even
/// exponents so that (-u)^2 comes out as u^2.
fn pow_strip_even_neg(rhs: Expr, q: i64) -> Expr {
    let exp = Rat::from_integer(q.into());
    if q % 2 == 0 {
        if let Expr::Neg(inner) = &rhs {
            return Expr::pow((**inner).clone(), exp);
        }
    }
    Expr::pow(rhs, exp)
}

/// Peel invertible outer operations of g to solve g(z) = c(alpha); each
/// solution family is a map alpha -> z. `None` means no representable
/// closed form (the caller falls back to numerics).
fn invert_symbolic(g: &Expr, piece: &ParamPiece) -> Option<Vec<Family>> {
    struct Branch {
        rhs: Expr,
        principal: bool,
        constraints: Vec<Constraint>,
    }
    let mut branches = vec![Branch {
        rhs: piece.map.clone(),
        principal: true,
        constraints: vec![],
    }];
    let mut current = g.clone();
    loop {
        match current {
            Expr::Var => break,
            Expr::Neg(inner) => {
                for b in &mut branches {
                    b.rhs = Expr::neg(b.rhs.clone());
                }
                current = *inner;
            }
            Expr::Add(terms) => {
                let mut variable = None;
                let mut shift = GaussianRat::zero();
                for t in terms {
                    if t.contains_var() {
                        if variable.is_some() {
                            return None;
                        }
                        variable = Some(t);
                    } else {
                        shift = shift.add(&t.const_value()?);
                    }
                }
                let offset = gaussian_expr(&shift);
                for b in &mut branches {
                    b.rhs = Expr::sub(b.rhs.clone(), offset.clone());
                }
                current = variable?;
            }
            Expr::Mul(factors) => {
                let mut variable = None;
                let mut scale = GaussianRat::one();
                for t in factors {
                    if t.contains_var() {
                        if variable.is_some() {
                            return None;
                        }
                        variable = Some(t);
                    } else {
                        scale = scale.mul(&t.const_value()?);
                    }
                }
                let inv = gaussian_expr(&scale.inv()?);
                for b in &mut branches {
                    b.rhs = Expr::mul(vec![inv.clone(), b.rhs.clone()]);
                }
                current = variable?;
            }
            Expr::Pow(base, exp) if exp.is_integer() => {
                let mut n = exp.to_integer().to_i64()?;
                if n == 0 {
                    return None;
                }
                if n < 0 {
                    for b in &mut branches {
                        b.rhs = Expr::pow(b.rhs.clone(), rat_i(-1));
                    }
                    n = -n;
                }
                if n > 1 {
                    // h^n = c has the n solutions w_j * c^(1/n); the roots of
                    // unity are Gaussian-rational only for n in {2, 4}.
                    let units: Vec<Expr> = match n {
                        2 => vec![Expr::integer(1), Expr::neg(Expr::integer(1))],
                        4 => vec![
                            Expr::integer(1),
                            Expr::i(),
                            Expr::neg(Expr::integer(1)),
                            Expr::neg(Expr::i()),
                        ],
                        _ => return None,
                    };
                    let mut next = Vec::with_capacity(branches.len() * units.len());
                    for b in branches {
                        let principal_root = Expr::pow(b.rhs.clone(), Rat::new(1.into(), n.into()));
                        for (j, unit) in units.iter().enumerate() {
                            let map = if j == 0 {
                                principal_root.clone()
                            } else {
                                Expr::mul(vec![unit.clone(), principal_root.clone()])
                            };
                            next.push(Branch {
                                rhs: map,
                                principal: b.principal && j == 0,
                                constraints: b.constraints.clone(),
                            });
                        }
                    }
                    branches = next;
                }
                current = *base;
            }
            Expr::Pow(base, exp) => {
                // Fractional exponent p/q: only the pure root case |p| = 1
                // inverts cleanly through the principal branch.
                let p = exp.numer().to_i64()?;
                let q = exp.denom().to_i64()?;
                match p {
                    1 => {}
                    -1 => {
                        for b in &mut branches {
                            b.rhs = Expr::pow(b.rhs.clone(), rat_i(-1));
                        }
                    }
                    _ => return None,
                }
                for b in &mut branches {
                    b.constraints.push(Constraint::PrincipalRootRange {
                        expr: b.rhs.clone(),
                        q: q as u32,
                    });
                    b.rhs = pow_strip_even_neg(b.rhs.clone(), q);
                }
                current = *base;
            }
            Expr::Func(FuncSymbol::Sqrt, inner) => {
                for b in &mut branches {
                    b.constraints.push(Constraint::PrincipalRootRange {
                        expr: b.rhs.clone(),
                        q: 2,
                    });
                    b.rhs = pow_strip_even_neg(b.rhs.clone(), 2);
                }
                current = *inner;
            }
            Expr::Func(FuncSymbol::Ln, inner) => {
                for b in &mut branches {
                    b.constraints.push(Constraint::LnRange {
                        expr: b.rhs.clone(),
                    });
                    b.rhs = Expr::func(FuncSymbol::Exp, b.rhs.clone());
                }
                current = *inner;
            }
            _ => return None,
        }
    }
    Some(
        branches
            .into_iter()
            .map(|b| Family {
                map: b.rhs,
                range: piece.range.clone(),
                principal: b.principal,
                constraints: b.constraints,
            })
            .collect(),
    )
}

fn family_to_cuts(fam: Family) -> Vec<Cut> {
    let mut out = Vec::new();
    let status = if fam.principal {
        CutStatus::Confirmed
    } else {
        CutStatus::PossiblySpurious
    };
    for range in constrained_ranges(&fam) {
        if range.is_empty() {
            continue;
        }
        let geometry = normalize_map(&fam.map, &range);
        let mut cut = Cut::new(geometry);
        cut.status = status;
        out.push(cut);
    }
    out
}

/// Trim the parameter range by the collected constraints: sample the
/// indicator over the range and refine the boundaries of true runs.
fn constrained_ranges(fam: &Family) -> Vec<Interval> {
    if fam.constraints.is_empty() {
        return vec![fam.range.clone()];
    }
    let ok = |a: f64| fam.constraints.iter().all(|c| c.holds_at(a));
    let alphas = scan_grid(&fam.range);
    if alphas.is_empty() {
        return vec![];
    }
    if alphas.iter().all(|&a| ok(a)) {
        return vec![fam.range.clone()];
    }
    let mut runs: Vec<(f64, f64, bool, bool)> = Vec::new(); // (lo, hi, lo_is_range_end, hi_is_range_end)
    let mut start: Option<usize> = None;
    for (i, &a) in alphas.iter().enumerate() {
        if ok(a) {
            if start.is_none() {
                start = Some(i);
            }
        } else if let Some(s) = start.take() {
            runs.push(run_bounds(&alphas, s, i - 1, &ok));
        }
    }
    if let Some(s) = start {
        let mut r = run_bounds(&alphas, s, alphas.len() - 1, &ok);
        r.3 = true;
        runs.push(r);
    }
    if let Some(first) = runs.first_mut() {
        if first.0 <= alphas[0] {
            first.2 = true;
        }
    }
    runs.into_iter()
        .map(|(lo, hi, lo_end, hi_end)| {
            let lo_e = if lo_end {
                fam.range.lo.clone()
            } else {
                Extended::Finite(rat_from_f64(lo))
            };
            let hi_e = if hi_end {
                fam.range.hi.clone()
            } else {
                Extended::Finite(rat_from_f64(hi))
            };
            Interval::new(lo_e, hi_e)
        })
        .collect()
}

fn run_bounds(
    alphas: &[f64],
    s: usize,
    e: usize,
    ok: &impl Fn(f64) -> bool,
) -> (f64, f64, bool, bool) {
    let mut lo = alphas[s];
    if s > 0 {
        lo = bisect_edge(alphas[s - 1], alphas[s], ok, true);
    }
    let mut hi = alphas[e];
    if e + 1 < alphas.len() {
        hi = bisect_edge(alphas[e], alphas[e + 1], ok, false);
    }
    (lo, hi, s == 0, false)
}

/// Refine the boundary between a failing and a passing sample.
fn bisect_edge(bad_side: f64, good_side: f64, ok: &impl Fn(f64) -> bool, lower: bool) -> f64 {
    let (mut bad, mut good) = (bad_side, good_side);
    for _ in 0..50 {
        let mid = 0.5 * (bad + good);
        if ok(mid) {
            good = mid;
        } else {
            bad = mid;
        }
    }
    let _ = lower;
    good
}

fn scan_grid(range: &Interval) -> Vec<f64> {
    let lo = range.lo.to_f64();
    let hi = range.hi.to_f64();
    let mut out = Vec::new();
    let (core_lo, core_hi) = (lo.max(-64.0), hi.min(64.0));
    if core_lo < core_hi {
        for k in 0..1024 {
            out.push(core_lo + (core_hi - core_lo) * (k as f64 + 0.5) / 1024.0);
        }
    }
    for k in 6..40 {
        let v = 2f64.powi(k);
        if v < hi {
            out.push(v);
        }
        if -v > lo {
            out.push(-v);
        }
    }
    out.retain(|a| *a > lo && *a < hi);
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out
}

/// Straight parametric maps along an axis are rewritten in semi-algebraic
/// form (the representations are interchangeable there and the algebraic
/// one deduplicates against the plane solver's output).
fn normalize_map(map: &Expr, range: &Interval) -> CutGeometry {
    if let Some(p) = polynomial_argument(map) {
        if p.deg() == Some(1) {
            let b = p.coeffs()[0].clone();
            let m = p.coeffs()[1].clone();
            if m.im.is_zero() {
                return CutGeometry::SemiAlgebraic(SemiAlgebraicCut {
                    fixed: Coord::Y,
                    equation: FixedEq::Value(b.im.clone()),
                    interval: affine_image(range, &m.re, &b.re),
                    support: vec![],
                });
            }
            if m.re.is_zero() {
                return CutGeometry::SemiAlgebraic(SemiAlgebraicCut {
                    fixed: Coord::X,
                    equation: FixedEq::Value(b.re.clone()),
                    interval: affine_image(range, &m.im, &b.im),
                    support: vec![],
                });
            }
        }
    }
    CutGeometry::Parametric(ParametricCut {
        map: map.clone(),
        range: range.clone(),
    })
}

/// Image of an open interval under t -> m t + b with m != 0.
fn affine_image(iv: &Interval, m: &Rat, b: &Rat) -> Interval {
    let tr = |e: &Extended| -> Extended {
        match e {
            Extended::NegInf => {
                if m.is_negative() {
                    Extended::PosInf
                } else {
                    Extended::NegInf
                }
            }
            Extended::PosInf => {
                if m.is_negative() {
                    Extended::NegInf
                } else {
                    Extended::PosInf
                }
            }
            Extended::Finite(v) => Extended::Finite(v * m + b),
        }
    };
    let a = tr(&iv.lo);
    let c = tr(&iv.hi);
    if m.is_negative() {
        Interval::new(c, a)
    } else {
        Interval::new(a, c)
    }
}

// ---------------------------------------------------------------------------
// Numeric fallback
// ---------------------------------------------------------------------------

/// Sample alpha on a linear grid over the finite core plus geometric
/// samples toward infinite endpoints, solve g(z) = c(alpha) numerically at
/// each sample, and assemble the solutions into polyline chains.
fn numeric_fallback(g: &Expr, piece: &ParamPiece, cfg: &EngineConfig) -> Vec<Cut> {
    let ctx = EvalCtx::default();
    let alphas = alpha_grid(&piece.range, cfg);
    let poly = polynomial_argument(g);
    let window = cfg.fallback_window;

    let mut chains: Vec<Vec<(f64, Complex64)>> = Vec::new();
    let mut open: Vec<usize> = Vec::new(); // indices of chains still active
    let mut prev_roots: Vec<Complex64> = Vec::new();
    for &a in &alphas {
        let c = match eval(&piece.map, Complex64::new(a, 0.0), &ctx) {
            Ok(c) => c,
            Err(_) => continue,
        };
        let roots = roots_for_target(g, &poly, c, &prev_roots, window, &ctx);
        link_step(&mut chains, &mut open, a, &roots);
        prev_roots = roots;
    }

    let mut cuts = Vec::new();
    let mut polylines: Vec<Vec<(f64, f64)>> = Vec::new();
    for chain in chains {
        if chain.len() < 3 {
            continue;
        }
        let refined = refine_chain(g, &poly, piece, &chain, cfg, &ctx);
        polylines.push(refined);
    }
    polylines.sort_by(|p, q| {
        let ka = p.first().map(|&(x, y)| (key(y), key(x))).unwrap_or((0, 0));
        let kb = q.first().map(|&(x, y)| (key(y), key(x))).unwrap_or((0, 0));
        ka.cmp(&kb)
    });
    for points in polylines {
        let mut cut = Cut::new(CutGeometry::Polyline(PolylineCut { points }));
        cut.provenance.numeric = true;
        cuts.push(cut);
    }
    cuts
}

fn key(v: f64) -> i64 {
    (v * 1e9).round() as i64
}

fn alpha_grid(range: &Interval, cfg: &EngineConfig) -> Vec<f64> {
    let lo = range.lo.to_f64();
    let hi = range.hi.to_f64();
    let n = cfg.linear_samples.max(2);
    let mut out = Vec::new();
    let push_linear = |out: &mut Vec<f64>, a: f64, b: f64| {
        for k in 0..n {
            out.push(a + (b - a) * (k as f64 + 0.5) / n as f64);
        }
    };
    // Geometric approach toward a finite endpoint: cuts often end at branch
    // points with sqrt-type behavior, so linear sampling alone leaves a
    // visible gap there.
    let approach = |out: &mut Vec<f64>, end: f64, inward: f64, span: f64| {
        for k in 1..=48 {
            out.push(end + inward * span * 2f64.powi(-k));
        }
    };
    match (lo.is_finite(), hi.is_finite()) {
        (true, true) => {
            let span = hi - lo;
            push_linear(&mut out, lo, hi);
            approach(&mut out, lo, 1.0, span);
            approach(&mut out, hi, -1.0, span);
        }
        (true, false) => {
            push_linear(&mut out, lo, lo + 4.0);
            approach(&mut out, lo, 1.0, 4.0);
            for k in 0..=cfg.geometric_max_pow {
                out.push(lo + 2f64.powi(k as i32));
            }
        }
        (false, true) => {
            push_linear(&mut out, hi - 4.0, hi);
            approach(&mut out, hi, -1.0, 4.0);
            for k in 0..=cfg.geometric_max_pow {
                out.push(hi - 2f64.powi(k as i32));
            }
        }
        (false, false) => {
            push_linear(&mut out, -4.0, 4.0);
            for k in 0..=cfg.geometric_max_pow {
                out.push(2f64.powi(k as i32));
                out.push(-(2f64.powi(k as i32)));
            }
        }
    }
    out.retain(|a| *a > lo && *a < hi);
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    out
}

/// All in-window solutions of g(z) = c: exact polynomial solve when the
/// argument is polynomial, multi-start Newton continuation otherwise.
fn roots_for_target(
    g: &Expr,
    poly: &Option<crate::poly::CPoly>,
    c: Complex64,
    prev: &[Complex64],
    window: (f64, f64, f64, f64),
    ctx: &EvalCtx,
) -> Vec<Complex64> {
    let (x0, x1, y0, y1) = window;
    let pad = 0.2 * (x1 - x0).max(y1 - y0);
    let inside = |z: Complex64| {
        z.re >= x0 - pad && z.re <= x1 + pad && z.im >= y0 - pad && z.im <= y1 + pad
    };
    let mut roots = Vec::new();
    if let Some(p) = poly {
        let mut coeffs = p.to_c64_coeffs();
        if coeffs.is_empty() {
            return roots;
        }
        coeffs[0] -= c;
        roots = durand_kerner(&coeffs);
        roots.retain(|z| inside(*z));
    } else {
        let f = |z: Complex64| -> Option<Complex64> {
            match eval(g, z, ctx) {
                Ok(v) => Some(v - c),
                Err(_) => None,
            }
        };
        let tol = 1e-10 * (1.0 + c.norm());
        let mut seeds: Vec<Complex64> = prev.to_vec();
        for i in 0..13 {
            for j in 0..13 {
                seeds.push(Complex64::new(
                    x0 + (x1 - x0) * (i as f64 + 0.5) / 13.0,
                    y0 + (y1 - y0) * (j as f64 + 0.5) / 13.0,
                ));
            }
        }
        for seed in seeds {
            if let Some(z) = newton_solve(&f, seed, tol, 60) {
                if inside(z) && !roots.iter().any(|r: &Complex64| (r - z).norm() < 1e-7) {
                    roots.push(z);
                }
            }
        }
    }
    roots.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
    roots
}

/// Extend chains with the roots found at the next alpha: greedy nearest
/// matching, new chains for unmatched roots, chains not extended are closed.
fn link_step(
    chains: &mut Vec<Vec<(f64, Complex64)>>,
    open: &mut Vec<usize>,
    alpha: f64,
    roots: &[Complex64],
) {
    const LINK_TOL: f64 = 2.5;
    let mut pairs: Vec<(f64, usize, usize)> = Vec::new(); // (dist, open_idx, root_idx)
    for (oi, &ci) in open.iter().enumerate() {
        let last = chains[ci].last().unwrap().1;
        for (ri, &r) in roots.iter().enumerate() {
            let d = (last - r).norm();
            if d < LINK_TOL {
                pairs.push((d, oi, ri));
            }
        }
    }
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let mut used_open = vec![false; open.len()];
    let mut used_root = vec![false; roots.len()];
    let mut next_open = Vec::new();
    for (_, oi, ri) in pairs {
        if used_open[oi] || used_root[ri] {
            continue;
        }
        used_open[oi] = true;
        used_root[ri] = true;
        let ci = open[oi];
        chains[ci].push((alpha, roots[ri]));
        next_open.push(ci);
    }
    for (ri, &r) in roots.iter().enumerate() {
        if !used_root[ri] {
            chains.push(vec![(alpha, r)]);
            next_open.push(chains.len() - 1);
        }
    }
    next_open.sort_unstable();
    *open = next_open;
}

/// Adaptive midpoint refinement: where the solution curve deviates from the
/// chord by more than the tolerance, solve at the midpoint parameter and
/// recurse. Bounds the chord error of the emitted polyline.
fn refine_chain(
    g: &Expr,
    poly: &Option<crate::poly::CPoly>,
    piece: &ParamPiece,
    chain: &[(f64, Complex64)],
    cfg: &EngineConfig,
    ctx: &EvalCtx,
) -> Vec<(f64, f64)> {
    let solve_near = |alpha: f64, seed: Complex64| -> Option<Complex64> {
        let c = eval(&piece.map, Complex64::new(alpha, 0.0), ctx).ok()?;
        if let Some(p) = poly {
            let mut coeffs = p.to_c64_coeffs();
            coeffs[0] -= c;
            durand_kerner(&coeffs)
                .into_iter()
                .min_by(|a, b| (a - seed).norm().partial_cmp(&(b - seed).norm()).unwrap())
        } else {
            let f = |z: Complex64| -> Option<Complex64> {
                eval(g, z, ctx).ok().map(|v| v - c)
            };
            newton_solve(&f, seed, 1e-10 * (1.0 + c.norm()), 60)
        }
    };
    let mut out: Vec<(f64, Complex64)> = Vec::new();
    out.push(chain[0]);
    for w in chain.windows(2) {
        let mut stack = vec![(w[0], w[1], 0usize)];
        let mut segment: Vec<(f64, Complex64)> = Vec::new();
        while let Some(((a0, z0), (a1, z1), depth)) = stack.pop() {
            let am = 0.5 * (a0 + a1);
            let seed = 0.5 * (z0 + z1);
            let needs_split = depth < 12
                && ((z1 - z0).norm() > 0.2 || {
                    match solve_near(am, seed) {
                        Some(zm) => {
                            super::geom::dist_point_segment(
                                (zm.re, zm.im),
                                (z0.re, z0.im),
                                (z1.re, z1.im),
                            ) > cfg.refine_tol
                        }
                        None => false,
                    }
                });
            if needs_split {
                if let Some(zm) = solve_near(am, seed) {
                    if (zm - seed).norm() < (z1 - z0).norm() + 0.5 {
                        stack.push(((am, zm), (a1, z1), depth + 1));
                        stack.push(((a0, z0), (am, zm), depth + 1));
                        continue;
                    }
                }
            }
            segment.push((a1, z1));
        }
        segment.sort_by(|p, q| p.0.partial_cmp(&q.0).unwrap());
        out.extend(segment);
    }
    out.iter().map(|&(_, z)| (z.re, z.im)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{Catalog, CutFunction};
    use crate::expr::parse;

    fn ln_cut() -> DefiningCut {
        Catalog::default().defining_cut(CutFunction::Ln)
    }

    #[test]
    fn inverts_negated_square_root() {
        // -sqrt(z) = a for a < 0 gives z = a^2 on (-inf, 0).
        let g = parse("-sqrt(z)").unwrap();
        let cuts = parametric_cuts(&g, &ln_cut(), &EngineConfig::default()).unwrap();
        assert_eq!(cuts.len(), 1);
        match &cuts[0].geometry {
            CutGeometry::Parametric(pc) => {
                assert_eq!(pc.map.to_string_with_var("a"), "a^2");
                assert_eq!(pc.range, Interval::below(0));
            }
            other => panic!("expected parametric, got {:?}", other),
        }
        assert_eq!(cuts[0].status, CutStatus::Confirmed);
    }

    #[test]
    fn linear_arguments_become_axis_cuts() {
        // 2z = a, a < 0: the negative real axis in closed form.
        let g = parse("2*z").unwrap();
        let cuts = parametric_cuts(&g, &ln_cut(), &EngineConfig::default()).unwrap();
        assert_eq!(cuts.len(), 1);
        match &cuts[0].geometry {
            CutGeometry::SemiAlgebraic(sa) => {
                assert_eq!(sa.fixed, Coord::Y);
                assert_eq!(sa.equation, FixedEq::Value(Rat::zero()));
                assert_eq!(sa.interval, Interval::below(0));
            }
            other => panic!("expected semialgebraic, got {:?}", other),
        }
    }

    #[test]
    fn square_peeling_tags_non_principal_family() {
        // z^2 = a, a < 0: families z = sqrt(a) and z = -sqrt(a).
        let g = parse("z^2").unwrap();
        let cuts = parametric_cuts(&g, &ln_cut(), &EngineConfig::default()).unwrap();
        assert_eq!(cuts.len(), 2);
        let statuses: Vec<CutStatus> = cuts.iter().map(|c| c.status).collect();
        assert!(statuses.contains(&CutStatus::Confirmed));
        assert!(statuses.contains(&CutStatus::PossiblySpurious));
    }

    #[test]
    fn fallback_solves_polynomial_targets() {
        let g = parse("z^2").unwrap();
        let mut cfg = EngineConfig::default();
        cfg.force_numeric_fallback = true;
        let cuts = parametric_cuts(&g, &ln_cut(), &cfg).unwrap();
        assert!(!cuts.is_empty());
        // z^2 = a < 0 means z is purely imaginary.
        for cut in &cuts {
            if let CutGeometry::Polyline(pl) = &cut.geometry {
                for &(x, _) in &pl.points {
                    assert!(x.abs() < 1e-6, "non-imaginary point x = {x}");
                }
            }
        }
    }

    #[test]
    fn exp_compositions_fall_back() {
        let g = parse("exp(z)").unwrap();
        let mut cfg = EngineConfig::default();
        cfg.numeric_fallback = false;
        let err = parametric_cuts(&g, &ln_cut(), &cfg).unwrap_err();
        assert!(matches!(err, EngineError::InversionFailure(_)));
    }
}
