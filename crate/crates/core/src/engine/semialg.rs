//! Semi-algebraic cut computation for polynomial arguments: the system
//! { E(x,y) = 0 and F(x,y) in I } is solved into axis-line components and
//! root-branch components over a decomposition of the free axis.
//!
//! The two-variable shape keeps the machinery small: projection uses only
//! resultants, discriminants and leading/content coefficients, real roots
//! of the projections are isolated exactly, and branches are lifted over
//! each open cell with exact sign decisions.

use super::numeric::real_roots_of_coeffs;
use super::{Cut, CutGeometry, CutStatus, FixedEq, Provenance, SemiAlgebraicCut};
use crate::catalog::{CutAxis, DefiningCut};
use crate::engine::EngineConfig;
use crate::error::EngineError;
use crate::expr::Expr;
use crate::poly::{re_im_decompose, BiPoly, Coord, RootLoc, UniPoly};
use crate::rat::{Extended, Interval, Rat};
use num_traits::{Signed, Zero};

/// Cuts induced by a defining cut `d` applied to a polynomial argument `g`.
pub fn semialgebraic_cuts(
    g: &Expr,
    d: &DefiningCut,
    cfg: &EngineConfig,
) -> Result<Vec<Cut>, EngineError> {
    if !g.contains_var() {
        return Ok(vec![]);
    }
    let rb = re_im_decompose(g)?;
    let deg = rb.p.total_degree().max(rb.q.total_degree());
    if deg > cfg.max_degree {
        return Err(EngineError::EngineLimit(format!(
            "decomposed degree {} exceeds the cap {}",
            deg, cfg.max_degree
        )));
    }
    let mut out = Vec::new();
    for piece in &d.region {
        // Real-axis cut: Im g = 0 and Re g in I. Imaginary-axis: transposed.
        let (e_poly, f_poly) = match piece.axis {
            CutAxis::Real => (rb.q.clone(), rb.p.clone()),
            CutAxis::Imag => (rb.p.clone(), rb.q.clone()),
        };
        out.extend(solve_system(&e_poly, &f_poly, &piece.interval)?);
    }
    Ok(out)
}

/// Solve { E = 0 and F in I } into cuts.
pub(crate) fn solve_system(
    e: &BiPoly,
    f: &BiPoly,
    interval: &Interval,
) -> Result<Vec<Cut>, EngineError> {
    let mut out = Vec::new();
    if e.is_zero() || e.total_degree() == 0 {
        // E identically zero only happens for constant arguments, which
        // produce no cuts; a nonzero constant E has an empty zero set.
        return Ok(out);
    }

    // Split off axis-parallel line components: a vertical line x = r occurs
    // exactly when (x - r) divides E, i.e. r is a root of the content of E
    // in the y-direction; horizontal lines are symmetric.
    let content_v = content_in_x(e);
    let ep1 = divide_out_content(e, &content_v);
    let swapped = ep1.swap_axes();
    let content_h = content_in_x(&swapped);
    let ep2 = divide_out_content(&swapped, &content_h).swap_axes();

    if content_v.deg().unwrap_or(0) >= 1 {
        for loc in content_v.isolate_real_roots() {
            out.extend(line_cuts(&loc, &content_v, f, interval, Coord::X)?);
        }
    }
    if content_h.deg().unwrap_or(0) >= 1 {
        for loc in content_h.isolate_real_roots() {
            out.extend(line_cuts(&loc, &content_h, f, interval, Coord::Y)?);
        }
    }

    if ep2.total_degree() >= 1 {
        out.extend(root_branch_cuts(&ep2, f, interval)?);
    }
    Ok(out)
}

/// Content of E in the y-direction: the monic gcd of its y-coefficient
/// polynomials (each a polynomial in x).
fn content_in_x(e: &BiPoly) -> UniPoly {
    let mut g = UniPoly::zero();
    for c in e.coeffs_in_y() {
        g = g.gcd(&c);
        if g.deg() == Some(0) {
            return UniPoly::one();
        }
    }
    if g.is_zero() {
        UniPoly::one()
    } else {
        g
    }
}

fn divide_out_content(e: &BiPoly, content: &UniPoly) -> BiPoly {
    if content.deg().unwrap_or(0) == 0 {
        return e.clone();
    }
    let coeffs: Vec<UniPoly> = e
        .coeffs_in_y()
        .iter()
        .map(|c| {
            if c.is_zero() {
                UniPoly::zero()
            } else {
                let (q, r) = c.divrem(content);
                debug_assert!(r.is_zero(), "content division must be exact");
                q
            }
        })
        .collect();
    BiPoly::from_coeffs_in_y(&coeffs)
}

/// Cuts contributed by an axis-parallel line component at position `loc`
/// (a root of `line_poly`). `fixed` names the coordinate held constant.
fn line_cuts(
    loc: &RootLoc,
    line_poly: &UniPoly,
    f: &BiPoly,
    interval: &Interval,
    fixed: Coord,
) -> Result<Vec<Cut>, EngineError> {
    let mut out = Vec::new();
    match loc {
        RootLoc::Exact(r) => {
            // Condition on the free coordinate, solved exactly.
            let u = match fixed {
                Coord::X => f.subst_x(r),
                Coord::Y => f.subst_y(r),
            };
            for iv in condition_intervals(&u, interval) {
                out.push(Cut::new(CutGeometry::SemiAlgebraic(SemiAlgebraicCut {
                    fixed,
                    equation: FixedEq::Value(r.clone()),
                    interval: iv,
                    support: vec![],
                })));
            }
        }
        RootLoc::Bracket(_, _) => {
            // Irrational line position: work numerically, represent the
            // position as a root branch of the (x- or y-only) line poly.
            let pos = loc.to_f64(line_poly);
            let index = line_poly
                .real_roots_f64()
                .iter()
                .position(|&r| (r - pos).abs() < 1e-9)
                .unwrap_or(0);
            let poly_bi = match fixed {
                Coord::X => {
                    BiPoly::from_coeffs_in_y(&[line_poly.clone()]) // poly in x only
                }
                Coord::Y => BiPoly::from_coeffs_in_y(&[line_poly.clone()]).swap_axes(),
            };
            let u_coeffs: Vec<f64> = match fixed {
                Coord::X => f.coeffs_in_y_at_f64(pos),
                Coord::Y => f.swap_axes().coeffs_in_y_at_f64(pos),
            };
            for (lo, hi) in numeric_condition_intervals(&u_coeffs, interval) {
                let support: Vec<(f64, f64)> = {
                    let a = lo.max(-16.0);
                    let b = hi.min(16.0);
                    (0..65)
                        .map(|k| {
                            let t = a + (b - a) * (k as f64 + 0.5) / 65.0;
                            match fixed {
                                Coord::X => (pos, t),
                                Coord::Y => (t, pos),
                            }
                        })
                        .collect()
                };
                out.push(Cut::new(CutGeometry::SemiAlgebraic(SemiAlgebraicCut {
                    fixed,
                    equation: FixedEq::RootBranch {
                        poly: poly_bi.clone(),
                        index,
                    },
                    interval: Interval::new(f64_endpoint(lo), f64_endpoint(hi)),
                    support,
                })));
            }
        }
    }
    Ok(out)
}

fn f64_endpoint(v: f64) -> Extended {
    if v == f64::NEG_INFINITY {
        Extended::NegInf
    } else if v == f64::INFINITY {
        Extended::PosInf
    } else {
        Extended::Finite(crate::rat::rat_from_f64(v))
    }
}

/// Exact solution of { u(t) in I } for a univariate u: the t-axis splits at
/// the roots of u - lo and u - hi, and each open piece is tested at a
/// rational sample.
fn condition_intervals(u: &UniPoly, interval: &Interval) -> Vec<Interval> {
    if u.deg().unwrap_or(0) == 0 {
        let v = if u.is_zero() {
            Rat::zero()
        } else {
            u.coeffs()[0].clone()
        };
        return if interval.contains_rat(&v) {
            vec![Interval::full()]
        } else {
            vec![]
        };
    }
    let mut boundaries: Vec<RootLoc> = Vec::new();
    for end in [&interval.lo, &interval.hi] {
        if let Extended::Finite(c) = end {
            let shifted = u.sub(&UniPoly::constant(c.clone()));
            boundaries.extend(shifted.isolate_real_roots());
        }
    }
    boundaries.sort_by(|a, b| a.position().partial_cmp(&b.position()).unwrap());
    let mut out = Vec::new();
    for (lo, hi, sample) in cells_between(&boundaries) {
        if interval.contains_rat(&u.eval(&sample)) {
            out.push(Interval::new(lo, hi));
        }
    }
    out
}

/// Numeric twin of `condition_intervals` for irrational line positions.
fn numeric_condition_intervals(u_coeffs: &[f64], interval: &Interval) -> Vec<(f64, f64)> {
    let lo_v = interval.lo.to_f64();
    let hi_v = interval.hi.to_f64();
    if u_coeffs.iter().skip(1).all(|c| c.abs() < 1e-300) {
        let v = u_coeffs.first().copied().unwrap_or(0.0);
        return if lo_v < v && v < hi_v {
            vec![(f64::NEG_INFINITY, f64::INFINITY)]
        } else {
            vec![]
        };
    }
    let mut boundaries = Vec::new();
    for c in [lo_v, hi_v] {
        if c.is_finite() {
            let mut shifted = u_coeffs.to_vec();
            shifted[0] -= c;
            boundaries.extend(real_roots_of_coeffs(&shifted));
        }
    }
    boundaries.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let eval = |t: f64| -> f64 {
        let mut acc = 0.0;
        for c in u_coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    };
    let mut out = Vec::new();
    let mut edges = vec![f64::NEG_INFINITY];
    edges.extend(&boundaries);
    edges.push(f64::INFINITY);
    for w in edges.windows(2) {
        let sample = match (w[0].is_finite(), w[1].is_finite()) {
            (false, false) => 0.0,
            (false, true) => w[1] - 1.0,
            (true, false) => w[0] + 1.0,
            (true, true) => 0.5 * (w[0] + w[1]),
        };
        let v = eval(sample);
        if lo_v < v && v < hi_v {
            out.push((w[0], w[1]));
        }
    }
    out
}

/// Open cells between sorted root locations, with a rational sample point
/// strictly inside each.
fn cells_between(roots: &[RootLoc]) -> Vec<(Extended, Extended, Rat)> {
    if roots.is_empty() {
        return vec![(Extended::NegInf, Extended::PosInf, Rat::zero())];
    }
    let mut out = Vec::new();
    let first = &roots[0];
    out.push((
        Extended::NegInf,
        Extended::Finite(first.approx_rat()),
        first.left_bound() - Rat::from_integer(1.into()),
    ));
    for w in roots.windows(2) {
        let rb = w[0].right_bound();
        let lb = w[1].left_bound();
        let sample = if rb < lb {
            (&rb + &lb) / Rat::from_integer(2.into())
        } else {
            // Brackets share an endpoint produced by the same bisection;
            // that endpoint is a non-root strictly between the two roots.
            rb.clone()
        };
        out.push((
            Extended::Finite(w[0].approx_rat()),
            Extended::Finite(w[1].approx_rat()),
            sample,
        ));
    }
    let last = roots.last().unwrap();
    out.push((
        Extended::Finite(last.approx_rat()),
        Extended::PosInf,
        last.right_bound() + Rat::from_integer(1.into()),
    ));
    out
}

struct CellStack {
    lo: Extended,
    hi: Extended,
    lo_pos: f64,
    /// Branch count and per-branch inclusion flags.
    included: Vec<bool>,
}

/// Root-branch components of { E = 0 and F in I } for a primitive E with
/// no axis-parallel line factors and positive degree in both variables.
fn root_branch_cuts(
    e: &BiPoly,
    f: &BiPoly,
    interval: &Interval,
) -> Result<Vec<Cut>, EngineError> {
    // Projection: cell boundaries on the x-axis.
    let mut boundary = UniPoly::one();
    let coeffs = e.coeffs_in_y();
    let lc = coeffs.last().unwrap().clone();
    if lc.deg().unwrap_or(0) >= 1 {
        boundary = boundary.mul(&lc);
    }
    if e.deg_in(Coord::Y) >= 2 {
        let disc = crate::poly::resultant_wrt_y(e, &e.derivative(Coord::Y));
        if disc.is_zero() {
            return Err(EngineError::EngineLimit(
                "degenerate discriminant projection".to_string(),
            ));
        }
        if disc.deg().unwrap_or(0) >= 1 {
            boundary = boundary.mul(&disc);
        }
    }
    for end in [&interval.lo, &interval.hi] {
        if let Extended::Finite(c) = end {
            let shifted = f.sub(&BiPoly::constant(c.clone()));
            let res = crate::poly::resultant_wrt_y(e, &shifted);
            if res.is_zero() {
                return Err(EngineError::EngineLimit(
                    "degenerate resultant projection".to_string(),
                ));
            }
            if res.deg().unwrap_or(0) >= 1 {
                boundary = boundary.mul(&res);
            }
        }
    }

    let roots = boundary.isolate_real_roots();
    let cells = cells_between(&roots);

    // Lift: per cell, isolate the y-stack and decide inclusion exactly.
    let mut stacks: Vec<CellStack> = Vec::new();
    let mut stack_sizes: Vec<usize> = Vec::new();
    for (lo, hi, sample) in &cells {
        let ey = e.subst_x(sample);
        let locs = ey.isolate_real_roots();
        let mut included = Vec::with_capacity(locs.len());
        for loc in &locs {
            included.push(branch_satisfies(f, interval, sample, &ey, loc));
        }
        stack_sizes.push(locs.len());
        stacks.push(CellStack {
            lo: lo.clone(),
            hi: hi.clone(),
            lo_pos: lo.to_f64(),
            included,
        });
    }

    // Merge runs of adjacent cells where the same branch index persists and
    // the boundary point itself satisfies the condition.
    let mut out = Vec::new();
    let max_branches = stack_sizes.iter().copied().max().unwrap_or(0);
    for k in 0..max_branches {
        let mut run_start: Option<usize> = None;
        for i in 0..stacks.len() {
            let here = stack_sizes[i] > k && stacks[i].included[k];
            let continues = if let Some(s) = run_start {
                let _ = s;
                here && stack_sizes[i] == stack_sizes[i - 1]
                    && boundary_merge_ok(e, f, interval, stacks[i].lo_pos, stack_sizes[i], k)
            } else {
                false
            };
            if here && run_start.is_none() {
                run_start = Some(i);
            } else if here && !continues {
                // Close the current run and start a new one here.
                let s = run_start.take().unwrap();
                out.push(emit_branch(e, s, i - 1, k, &stacks));
                run_start = Some(i);
            } else if !here {
                if let Some(s) = run_start.take() {
                    out.push(emit_branch(e, s, i - 1, k, &stacks));
                }
            }
        }
        if let Some(s) = run_start.take() {
            out.push(emit_branch(e, s, stacks.len() - 1, k, &stacks));
        }
    }
    Ok(out)
}

/// Exact sign-based inclusion test: F at the branch point lies in I.
fn branch_satisfies(
    f: &BiPoly,
    interval: &Interval,
    x_sample: &Rat,
    ey: &UniPoly,
    loc: &RootLoc,
) -> bool {
    let fy = f.subst_x(x_sample);
    for (end, want_positive) in [(&interval.lo, true), (&interval.hi, false)] {
        if let Extended::Finite(c) = end {
            let h = fy.sub(&UniPoly::constant(c.clone()));
            let sign = sign_at_root(&h, ey, loc);
            if sign == 0 {
                return false;
            }
            if want_positive != (sign > 0) {
                return false;
            }
        }
    }
    true
}

/// Sign of h at the (unique) root of ey located by `loc`. The root is never
/// a root of h inside an open cell, so bisection refinement terminates.
fn sign_at_root(h: &UniPoly, ey: &UniPoly, loc: &RootLoc) -> i8 {
    let sgn = |r: &Rat| -> i8 {
        if r.is_zero() {
            0
        } else if r.is_positive() {
            1
        } else {
            -1
        }
    };
    match loc {
        RootLoc::Exact(r) => sgn(&h.eval(r)),
        RootLoc::Bracket(a, b) => {
            let mut a = a.clone();
            let mut b = b.clone();
            let mut ea = ey.eval(&a);
            for _ in 0..200 {
                let sa = sgn(&h.eval(&a));
                let sb = sgn(&h.eval(&b));
                if sa == sb && sa != 0 && h.count_roots_between(&a, &b) == 0 {
                    return sa;
                }
                let mid = (&a + &b) / Rat::from_integer(2.into());
                let em = ey.eval(&mid);
                if em.is_zero() {
                    return sgn(&h.eval(&mid));
                }
                if (ea.is_positive() && em.is_positive())
                    || (ea.is_negative() && em.is_negative())
                {
                    a = mid;
                    ea = em;
                } else {
                    b = mid;
                }
            }
            0
        }
    }
}

/// Whether branch k may be merged across the cell boundary at x = pos:
/// the stack keeps its size there and the boundary point itself satisfies
/// the strict condition (numeric check with margin).
fn boundary_merge_ok(
    e: &BiPoly,
    f: &BiPoly,
    interval: &Interval,
    pos: f64,
    expected: usize,
    k: usize,
) -> bool {
    if !pos.is_finite() {
        return false;
    }
    let roots = real_roots_of_coeffs(&e.coeffs_in_y_at_f64(pos));
    if roots.len() != expected || k >= roots.len() {
        return false;
    }
    let v = f.eval_f64(pos, roots[k]);
    let margin = 1e-9;
    let lo = interval.lo.to_f64();
    let hi = interval.hi.to_f64();
    v > lo + margin && v < hi - margin
}

fn emit_branch(e: &BiPoly, start: usize, end: usize, k: usize, stacks: &[CellStack]) -> Cut {
    let lo = stacks[start].lo.clone();
    let hi = stacks[end].hi.clone();
    let interval = Interval::new(lo, hi);
    // Sampled support for plotting and distance queries.
    let (a, b) = interval.clip_f64(-16.0, 16.0).unwrap_or((0.0, 0.0));
    let mut support = Vec::new();
    for i in 0..161 {
        let t = a + (b - a) * (i as f64 + 0.5) / 161.0;
        let roots = real_roots_of_coeffs(&e.coeffs_in_y_at_f64(t));
        if let Some(&y) = roots.get(k) {
            support.push((t, y));
        }
    }
    Cut {
        geometry: CutGeometry::SemiAlgebraic(SemiAlgebraicCut {
            fixed: Coord::Y,
            equation: FixedEq::RootBranch {
                poly: e.clone(),
                index: k,
            },
            interval,
            support,
        }),
        provenance: Provenance::default(),
        status: CutStatus::Confirmed,
    }
}
