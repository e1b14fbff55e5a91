//! Defining branch cuts for every supported function symbol, in region form
//! (for the semi-algebraic approach) and parametric form (for the inversion
//! approach).
//!
//! Entries follow the classical tables for principal branches; every entry
//! is data, re-verified against `jump_probe` by the test suite rather than
//! trusted. Branch-point endpoints are excluded throughout (open intervals).
//!
//! Conventions table (w is the function argument):
//!
//! | symbol    | cut                                        |
//! |-----------|--------------------------------------------|
//! | ln        | real axis, w in (-inf, 0)                  |
//! | exp       | none                                       |
//! | sqrt      | real axis, w in (-inf, 0)                  |
//! | w^(p/q)   | real axis, w in (-inf, 0)                  |
//! | arcsin    | real axis, (-inf, -1) and (1, inf)         |
//! | arccos    | real axis, (-inf, -1) and (1, inf)         |
//! | arctan    | imaginary axis, (-inf, -1) and (1, inf)    |
//! | arccot    | recip: imaginary segment (-1, 1);          |
//! |           | as64: imaginary axis, (-inf,-1) and (1,inf)|
//! | arcsinh   | imaginary axis, (-inf, -1) and (1, inf)    |
//! | arccosh   | real axis, (-inf, 1)                       |
//! | arctanh   | real axis, (-inf, -1) and (1, inf)         |
//! | arccoth   | real axis, (-1, 0) and (0, 1)              |

use crate::expr::{Expr, FuncSymbol};
use crate::rat::{rat, Interval};
use serde::{Deserialize, Serialize};

/// Which arccot definition is in force.
///
/// `Recip` evaluates arccot(z) = arctan(1/z), discontinuous on the imaginary
/// segment between -i and i (with a pole-like point at 0). `As64` evaluates
/// arccot(z) = pi/2 - arctan(z), continuous on the whole real line, with
/// cuts on the imaginary rays |Im z| > 1.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum ArccotConvention {
    #[default]
    Recip,
    As64,
}

impl ArccotConvention {
    pub fn label(self) -> &'static str {
        match self {
            ArccotConvention::Recip => "recip",
            ArccotConvention::As64 => "as64",
        }
    }
}

/// The twelve catalogued function kinds: the eleven named symbols plus the
/// fractional power family w^(p/q) with non-integer exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CutFunction {
    Ln,
    Exp,
    Sqrt,
    FracPow,
    Arcsin,
    Arccos,
    Arctan,
    Arccot,
    Arcsinh,
    Arccosh,
    Arctanh,
    Arccoth,
}

impl CutFunction {
    pub const ALL: [CutFunction; 12] = [
        CutFunction::Ln,
        CutFunction::Exp,
        CutFunction::Sqrt,
        CutFunction::FracPow,
        CutFunction::Arcsin,
        CutFunction::Arccos,
        CutFunction::Arctan,
        CutFunction::Arccot,
        CutFunction::Arcsinh,
        CutFunction::Arccosh,
        CutFunction::Arctanh,
        CutFunction::Arccoth,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CutFunction::Ln => "ln",
            CutFunction::Exp => "exp",
            CutFunction::Sqrt => "sqrt",
            CutFunction::FracPow => "fracpow",
            CutFunction::Arcsin => "arcsin",
            CutFunction::Arccos => "arccos",
            CutFunction::Arctan => "arctan",
            CutFunction::Arccot => "arccot",
            CutFunction::Arcsinh => "arcsinh",
            CutFunction::Arccosh => "arccosh",
            CutFunction::Arctanh => "arctanh",
            CutFunction::Arccoth => "arccoth",
        }
    }

    pub fn from_name(s: &str) -> Option<CutFunction> {
        Self::ALL.iter().copied().find(|f| f.name() == s)
    }

    /// A representative one-node expression for probing the bare symbol;
    /// the fractional-power family is represented by z^(1/3).
    pub fn representative(self) -> Expr {
        match self {
            CutFunction::FracPow => Expr::pow(Expr::var(), rat(1, 3)),
            CutFunction::Ln => Expr::func(FuncSymbol::Ln, Expr::var()),
            CutFunction::Exp => Expr::func(FuncSymbol::Exp, Expr::var()),
            CutFunction::Sqrt => Expr::func(FuncSymbol::Sqrt, Expr::var()),
            CutFunction::Arcsin => Expr::func(FuncSymbol::Arcsin, Expr::var()),
            CutFunction::Arccos => Expr::func(FuncSymbol::Arccos, Expr::var()),
            CutFunction::Arctan => Expr::func(FuncSymbol::Arctan, Expr::var()),
            CutFunction::Arccot => Expr::func(FuncSymbol::Arccot, Expr::var()),
            CutFunction::Arcsinh => Expr::func(FuncSymbol::Arcsinh, Expr::var()),
            CutFunction::Arccosh => Expr::func(FuncSymbol::Arccosh, Expr::var()),
            CutFunction::Arctanh => Expr::func(FuncSymbol::Arctanh, Expr::var()),
            CutFunction::Arccoth => Expr::func(FuncSymbol::Arccoth, Expr::var()),
        }
    }
}

/// Axis of the w-plane a region-form cut lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CutAxis {
    /// Cut on the real axis: Im w = 0, Re w in the interval.
    Real,
    /// Cut on the imaginary axis: Re w = 0, Im w in the interval.
    Imag,
}

/// One straight piece of a defining cut in region form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionPiece {
    pub axis: CutAxis,
    pub interval: Interval,
}

/// One piece of a defining cut in parametric form: w = map(alpha) for alpha
/// in the (open) range. The expression's variable stands for alpha.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamPiece {
    pub map: Expr,
    pub range: Interval,
}

/// Defining branch cut of a bare function symbol applied to its raw
/// argument, before composition. Region and parametric forms describe the
/// same point set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefiningCut {
    pub function: CutFunction,
    pub region: Vec<RegionPiece>,
    pub parametric: Vec<ParamPiece>,
}

impl DefiningCut {
    pub fn is_empty(&self) -> bool {
        self.region.is_empty()
    }
}

/// The catalog under a fixed arccot convention. Immutable; freely shared.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Catalog {
    pub arccot: ArccotConvention,
}

impl Catalog {
    pub fn new(arccot: ArccotConvention) -> Self {
        Catalog { arccot }
    }

    pub fn defining_cut(&self, f: CutFunction) -> DefiningCut {
        let real = |intervals: Vec<Interval>| -> DefiningCut {
            DefiningCut {
                function: f,
                parametric: intervals
                    .iter()
                    .map(|iv| ParamPiece {
                        map: Expr::var(),
                        range: iv.clone(),
                    })
                    .collect(),
                region: intervals
                    .into_iter()
                    .map(|interval| RegionPiece {
                        axis: CutAxis::Real,
                        interval,
                    })
                    .collect(),
            }
        };
        let imag = |intervals: Vec<Interval>| -> DefiningCut {
            DefiningCut {
                function: f,
                parametric: intervals
                    .iter()
                    .map(|iv| ParamPiece {
                        map: Expr::mul(vec![Expr::i(), Expr::var()]),
                        range: iv.clone(),
                    })
                    .collect(),
                region: intervals
                    .into_iter()
                    .map(|interval| RegionPiece {
                        axis: CutAxis::Imag,
                        interval,
                    })
                    .collect(),
            }
        };
        match f {
            CutFunction::Ln | CutFunction::Sqrt | CutFunction::FracPow => {
                real(vec![Interval::below(0)])
            }
            CutFunction::Exp => DefiningCut {
                function: f,
                region: vec![],
                parametric: vec![],
            },
            CutFunction::Arcsin | CutFunction::Arccos => {
                real(vec![Interval::below(-1), Interval::above(1)])
            }
            CutFunction::Arctan | CutFunction::Arcsinh => {
                imag(vec![Interval::below(-1), Interval::above(1)])
            }
            CutFunction::Arccot => match self.arccot {
                ArccotConvention::Recip => imag(vec![Interval::open(-1, 1)]),
                ArccotConvention::As64 => imag(vec![Interval::below(-1), Interval::above(1)]),
            },
            CutFunction::Arccosh => real(vec![Interval::below(1)]),
            CutFunction::Arctanh => real(vec![Interval::below(-1), Interval::above(1)]),
            CutFunction::Arccoth => real(vec![Interval::open(-1, 0), Interval::open(0, 1)]),
        }
    }

    pub fn entries(&self) -> Vec<DefiningCut> {
        CutFunction::ALL
            .iter()
            .map(|&f| self.defining_cut(f))
            .collect()
    }
}

/// The catalogued family of a node, when the node is multi-valued: function
/// applications map to their symbol, powers with a non-integer rational
/// exponent map to the fractional-power family. Single-valued nodes (sums,
/// products, negation, integer powers, exp) return `None`.
pub fn multivalued_kind(e: &Expr) -> Option<CutFunction> {
    match e {
        Expr::Func(FuncSymbol::Exp, _) => None,
        Expr::Func(f, _) => Some(match f {
            FuncSymbol::Ln => CutFunction::Ln,
            FuncSymbol::Sqrt => CutFunction::Sqrt,
            FuncSymbol::Arcsin => CutFunction::Arcsin,
            FuncSymbol::Arccos => CutFunction::Arccos,
            FuncSymbol::Arctan => CutFunction::Arctan,
            FuncSymbol::Arccot => CutFunction::Arccot,
            FuncSymbol::Arcsinh => CutFunction::Arcsinh,
            FuncSymbol::Arccosh => CutFunction::Arccosh,
            FuncSymbol::Arctanh => CutFunction::Arctanh,
            FuncSymbol::Arccoth => CutFunction::Arccoth,
            FuncSymbol::Exp => unreachable!(),
        }),
        Expr::Pow(_, exp) if !exp.is_integer() => Some(CutFunction::FracPow),
        _ => None,
    }
}

/// Argument of a multi-valued node (the `g` in `f(g)`).
pub fn multivalued_argument(e: &Expr) -> Option<&Expr> {
    match e {
        Expr::Func(FuncSymbol::Exp, _) => None,
        Expr::Func(_, arg) => Some(arg),
        Expr::Pow(base, exp) if !exp.is_integer() => Some(base),
        _ => None,
    }
}
