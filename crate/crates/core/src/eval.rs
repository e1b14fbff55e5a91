//! Principal-branch evaluation of expressions at complex points, and
//! two-sided jump probing across candidate cuts.
//!
//! Conventions: every multi-valued symbol is evaluated on its principal
//! branch with counter-clockwise closure on the cut (the on-cut value is the
//! limit from the counter-clockwise side around the branch point), which for
//! the real-axis cuts in the catalog is the limit from the upper half-plane.
//! This gives `ln(-1) = i*pi` and `sqrt(-4) = 2i`. Poles and other singular
//! evaluations are reported as errors instead of propagating NaN.

use crate::catalog::ArccotConvention;
use crate::error::EvalError;
use crate::expr::{Expr, FuncSymbol};
use crate::rat::rat_to_f64;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use std::f64::consts::FRAC_PI_2;

/// A point of the complex plane with finite components.
pub type ComplexPoint = Complex64;

/// Evaluation context; currently just the arccot convention in force.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EvalCtx {
    pub arccot: ArccotConvention,
}

impl EvalCtx {
    pub fn new(arccot: ArccotConvention) -> Self {
        EvalCtx { arccot }
    }
}

fn finite(v: Complex64, op: &str, arg: Complex64) -> Result<Complex64, EvalError> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(EvalError::PoleOrSingularity {
            op: op.to_string(),
            arg,
        })
    }
}

/// Principal value of `e` at `p`. Deterministic; errors on poles and on
/// non-finite inputs.
pub fn eval(e: &Expr, p: ComplexPoint, ctx: &EvalCtx) -> Result<Complex64, EvalError> {
    if !(p.re.is_finite() && p.im.is_finite()) {
        return Err(EvalError::NonFinitePoint);
    }
    eval_inner(e, p, ctx)
}

fn eval_inner(e: &Expr, z: Complex64, ctx: &EvalCtx) -> Result<Complex64, EvalError> {
    match e {
        Expr::Var => Ok(z),
        Expr::Const(r) => Ok(Complex64::new(rat_to_f64(r), 0.0)),
        Expr::ImaginaryUnit => Ok(Complex64::new(0.0, 1.0)),
        Expr::Add(terms) => {
            let mut acc = Complex64::new(0.0, 0.0);
            for t in terms {
                acc += eval_inner(t, z, ctx)?;
            }
            finite(acc, "sum", z)
        }
        Expr::Mul(factors) => {
            let mut acc = Complex64::new(1.0, 0.0);
            for t in factors {
                acc *= eval_inner(t, z, ctx)?;
            }
            finite(acc, "product", z)
        }
        Expr::Neg(inner) => Ok(-eval_inner(inner, z, ctx)?),
        Expr::Pow(base, exp) => {
            let b = eval_inner(base, z, ctx)?;
            if exp.is_integer() {
                let n = exp
                    .to_integer()
                    .to_i32()
                    .ok_or_else(|| EvalError::ExponentOverflow(exp.to_string()))?;
                if b.norm_sqr() == 0.0 && n <= 0 {
                    return Err(EvalError::PoleOrSingularity {
                        op: format!("0^{}", n),
                        arg: b,
                    });
                }
                finite(b.powi(n), "integer power", b)
            } else {
                let f = rat_to_f64(exp);
                if b.norm_sqr() == 0.0 {
                    return if f > 0.0 {
                        Ok(Complex64::new(0.0, 0.0))
                    } else {
                        Err(EvalError::PoleOrSingularity {
                            op: format!("0^({})", exp),
                            arg: b,
                        })
                    };
                }
                finite(b.powf(f), "fractional power", b)
            }
        }
        Expr::Func(f, arg) => {
            let w = eval_inner(arg, z, ctx)?;
            apply_func(*f, w, ctx)
        }
    }
}

/// Principal value of a bare function symbol at `w`.
pub fn apply_func(f: FuncSymbol, w: Complex64, ctx: &EvalCtx) -> Result<Complex64, EvalError> {
    let v = match f {
        FuncSymbol::Ln => {
            if w.norm_sqr() == 0.0 {
                return Err(EvalError::PoleOrSingularity {
                    op: "ln(0)".to_string(),
                    arg: w,
                });
            }
            w.ln()
        }
        FuncSymbol::Exp => w.exp(),
        FuncSymbol::Sqrt => w.sqrt(),
        FuncSymbol::Arcsin => w.asin(),
        FuncSymbol::Arccos => w.acos(),
        FuncSymbol::Arctan => w.atan(),
        FuncSymbol::Arccot => match ctx.arccot {
            ArccotConvention::Recip => w.finv().atan(),
            ArccotConvention::As64 => Complex64::new(FRAC_PI_2, 0.0) - w.atan(),
        },
        FuncSymbol::Arcsinh => w.asinh(),
        FuncSymbol::Arccosh => w.acosh(),
        FuncSymbol::Arctanh => w.atanh(),
        FuncSymbol::Arccoth => w.finv().atanh(),
    };
    finite(v, f.name(), w)
}

/// Numeric evidence of (dis)continuity across a candidate cut at one point.
///
/// The reported magnitude is a two-scale estimate: with side differences
/// d(eps) = f(p + eps n) - f(p - eps n), the value `2 d(eps/2) - d(eps)`
/// cancels the smooth O(eps) drift and leaves the genuine jump up to
/// O(eps^2), so continuous points report ~1e-12 rather than ~eps.
#[derive(Clone, Debug, PartialEq)]
pub struct JumpReport {
    /// Probe point, intended to lie on the candidate cut.
    pub point: Complex64,
    /// Offset used for the probes.
    pub eps: f64,
    /// Value at `point + eps * normal`.
    pub side_a: Complex64,
    /// Value at `point - eps * normal`.
    pub side_b: Complex64,
    /// Extrapolated complex jump across the cut.
    pub jump: Complex64,
    /// `|jump|`.
    pub magnitude: f64,
    /// Which component carries the discontinuity.
    pub component: JumpComponent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JumpComponent {
    Re,
    Im,
    Both,
}

impl JumpComponent {
    pub fn label(self) -> &'static str {
        match self {
            JumpComponent::Re => "re",
            JumpComponent::Im => "im",
            JumpComponent::Both => "both",
        }
    }
}

/// Evaluate on both sides of a candidate cut at `p` along the unit `normal`
/// and report the measured discontinuity. Errors propagate when a probe
/// lands on a pole (caller should resample).
pub fn jump_probe(
    e: &Expr,
    p: ComplexPoint,
    normal: Complex64,
    eps: f64,
    ctx: &EvalCtx,
) -> Result<JumpReport, EvalError> {
    if !(p.re.is_finite() && p.im.is_finite()) || !(normal.re.is_finite() && normal.im.is_finite())
    {
        return Err(EvalError::NonFinitePoint);
    }
    assert!(eps > 0.0, "probe offset must be positive");
    let n = normal / normal.norm();
    let side_a = eval(e, p + n * eps, ctx)?;
    let side_b = eval(e, p - n * eps, ctx)?;
    let half = eps / 2.0;
    let a2 = eval(e, p + n * half, ctx)?;
    let b2 = eval(e, p - n * half, ctx)?;
    let d1 = side_a - side_b;
    let d2 = a2 - b2;
    let jump = d2 * 2.0 - d1;
    let magnitude = jump.norm();
    let component = if jump.re.abs() > 10.0 * jump.im.abs() {
        JumpComponent::Re
    } else if jump.im.abs() > 10.0 * jump.re.abs() {
        JumpComponent::Im
    } else {
        JumpComponent::Both
    };
    Ok(JumpReport {
        point: p,
        eps,
        side_a,
        side_b,
        jump,
        magnitude,
        component,
    })
}
