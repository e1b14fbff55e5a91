//! Expression trees over a single complex variable `z`.
//!
//! Trees are kept canonical: sums and products hold children in a fixed
//! structural order, negative rational constants live under a `Neg` node,
//! and `w^(1/2)` is spelled `sqrt(w)`. Printing a canonical tree and parsing
//! the output is the identity.

use crate::error::ParseError;
use crate::rat::{rat, GaussianRat, Rat};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use std::fmt;

/// The supported unary function symbols.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FuncSymbol {
    Ln,
    Exp,
    Sqrt,
    Arcsin,
    Arccos,
    Arctan,
    Arccot,
    Arcsinh,
    Arccosh,
    Arctanh,
    Arccoth,
}

impl FuncSymbol {
    pub const ALL: [FuncSymbol; 11] = [
        FuncSymbol::Ln,
        FuncSymbol::Exp,
        FuncSymbol::Sqrt,
        FuncSymbol::Arcsin,
        FuncSymbol::Arccos,
        FuncSymbol::Arctan,
        FuncSymbol::Arccot,
        FuncSymbol::Arcsinh,
        FuncSymbol::Arccosh,
        FuncSymbol::Arctanh,
        FuncSymbol::Arccoth,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FuncSymbol::Ln => "ln",
            FuncSymbol::Exp => "exp",
            FuncSymbol::Sqrt => "sqrt",
            FuncSymbol::Arcsin => "arcsin",
            FuncSymbol::Arccos => "arccos",
            FuncSymbol::Arctan => "arctan",
            FuncSymbol::Arccot => "arccot",
            FuncSymbol::Arcsinh => "arcsinh",
            FuncSymbol::Arccosh => "arccosh",
            FuncSymbol::Arctanh => "arctanh",
            FuncSymbol::Arccoth => "arccoth",
        }
    }

    pub fn from_name(s: &str) -> Option<FuncSymbol> {
        Self::ALL.iter().copied().find(|f| f.name() == s)
    }
}

impl fmt::Display for FuncSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Immutable expression tree. Use the constructor methods to stay canonical:
/// they flatten and sort n-ary nodes and apply the `sqrt` spelling rule.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Expr {
    /// Nonnegative rational constant (negative values are wrapped in `Neg`).
    Const(Rat),
    ImaginaryUnit,
    Var,
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Neg(Box<Expr>),
    /// Power with a rational exponent. Integer exponents are single-valued;
    /// non-integer exponents denote the principal fractional power.
    Pow(Box<Expr>, Rat),
    Func(FuncSymbol, Box<Expr>),
}

impl Expr {
    pub fn var() -> Expr {
        Expr::Var
    }

    pub fn i() -> Expr {
        Expr::ImaginaryUnit
    }

    pub fn integer(n: i64) -> Expr {
        Expr::rational(Rat::from_integer(BigInt::from(n)))
    }

    pub fn rational(r: Rat) -> Expr {
        if r.is_negative() {
            Expr::Neg(Box::new(Expr::Const(-r)))
        } else {
            Expr::Const(r)
        }
    }

    pub fn add(terms: Vec<Expr>) -> Expr {
        let mut flat = Vec::with_capacity(terms.len());
        for t in terms {
            match t {
                Expr::Add(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        flat.sort();
        match flat.len() {
            0 => Expr::Const(Rat::zero()),
            1 => flat.pop().unwrap(),
            _ => Expr::Add(flat),
        }
    }

    pub fn mul(factors: Vec<Expr>) -> Expr {
        let mut flat = Vec::with_capacity(factors.len());
        for t in factors {
            match t {
                Expr::Mul(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        flat.sort();
        match flat.len() {
            0 => Expr::Const(Rat::from_integer(BigInt::from(1))),
            1 => flat.pop().unwrap(),
            _ => Expr::Mul(flat),
        }
    }

    pub fn neg(e: Expr) -> Expr {
        Expr::Neg(Box::new(e))
    }

    pub fn sub(a: Expr, b: Expr) -> Expr {
        Expr::add(vec![a, Expr::neg(b)])
    }

    pub fn pow(base: Expr, exp: Rat) -> Expr {
        if exp == rat(1, 2) {
            Expr::func(FuncSymbol::Sqrt, base)
        } else {
            Expr::Pow(Box::new(base), exp)
        }
    }

    pub fn func(f: FuncSymbol, arg: Expr) -> Expr {
        Expr::Func(f, Box::new(arg))
    }

    pub fn ln(arg: Expr) -> Expr {
        Expr::func(FuncSymbol::Ln, arg)
    }

    pub fn sqrt(arg: Expr) -> Expr {
        Expr::func(FuncSymbol::Sqrt, arg)
    }

    /// Whether the variable `z` occurs anywhere in the tree.
    pub fn contains_var(&self) -> bool {
        match self {
            Expr::Var => true,
            Expr::Const(_) | Expr::ImaginaryUnit => false,
            Expr::Add(v) | Expr::Mul(v) => v.iter().any(Expr::contains_var),
            Expr::Neg(e) => e.contains_var(),
            Expr::Pow(e, _) => e.contains_var(),
            Expr::Func(_, e) => e.contains_var(),
        }
    }

    /// Exact Gaussian-rational value for closed constant subtrees; `None`
    /// when the tree contains `z` or an operation with no exact value.
    pub fn const_value(&self) -> Option<GaussianRat> {
        match self {
            Expr::Const(r) => Some(GaussianRat::from_rat(r.clone())),
            Expr::ImaginaryUnit => Some(GaussianRat::i()),
            Expr::Var => None,
            Expr::Add(v) => {
                let mut acc = GaussianRat::zero();
                for t in v {
                    acc = acc.add(&t.const_value()?);
                }
                Some(acc)
            }
            Expr::Mul(v) => {
                let mut acc = GaussianRat::one();
                for t in v {
                    acc = acc.mul(&t.const_value()?);
                }
                Some(acc)
            }
            Expr::Neg(e) => Some(e.const_value()?.neg()),
            Expr::Pow(e, r) => {
                if !r.is_integer() {
                    return None;
                }
                let n = r.to_integer().to_i64()?;
                e.const_value()?.pow_i64(n)
            }
            Expr::Func(_, _) => None,
        }
    }

    /// Preorder traversal with the path of child indices from the root.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&[usize], &'a Expr)) {
        fn go<'a>(e: &'a Expr, path: &mut Vec<usize>, f: &mut impl FnMut(&[usize], &'a Expr)) {
            f(path, e);
            let children: Vec<&Expr> = match e {
                Expr::Add(v) | Expr::Mul(v) => v.iter().collect(),
                Expr::Neg(c) | Expr::Pow(c, _) | Expr::Func(_, c) => vec![c.as_ref()],
                _ => vec![],
            };
            for (i, c) in children.into_iter().enumerate() {
                path.push(i);
                go(c, path, f);
                path.pop();
            }
        }
        let mut path = Vec::new();
        go(self, &mut path, f);
    }

    pub fn node_count(&self) -> usize {
        let mut n = 0;
        self.walk(&mut |_, _| n += 1);
        n
    }

    /// Render with a custom variable name (parametric cuts print `a`).
    pub fn to_string_with_var(&self, var: &str) -> String {
        let mut out = String::new();
        write_expr(self, var, Ctx::Top, &mut out);
        out
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with_var("z"))
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Ctx {
    Top,
    MulFactor,
    PowBase,
}

fn write_expr(e: &Expr, var: &str, ctx: Ctx, out: &mut String) {
    match e {
        Expr::Const(r) => {
            out.push_str(&r.to_string());
        }
        Expr::ImaginaryUnit => out.push_str("I"),
        Expr::Var => out.push_str(var),
        Expr::Add(terms) => {
            let parens = ctx != Ctx::Top;
            if parens {
                out.push('(');
            }
            for (i, t) in terms.iter().enumerate() {
                match t {
                    Expr::Neg(inner) => {
                        out.push('-');
                        write_term_operand(inner, var, out);
                    }
                    _ => {
                        if i > 0 {
                            out.push('+');
                        }
                        write_expr(t, var, Ctx::Top, out);
                    }
                }
            }
            if parens {
                out.push(')');
            }
        }
        Expr::Mul(factors) => {
            let parens = ctx == Ctx::PowBase;
            if parens {
                out.push('(');
            }
            for (i, t) in factors.iter().enumerate() {
                if i > 0 {
                    out.push('*');
                }
                match t {
                    Expr::Add(_) | Expr::Neg(_) => {
                        out.push('(');
                        write_expr(t, var, Ctx::Top, out);
                        out.push(')');
                    }
                    _ => write_expr(t, var, Ctx::MulFactor, out),
                }
            }
            if parens {
                out.push(')');
            }
        }
        Expr::Neg(inner) => {
            let parens = ctx != Ctx::Top;
            if parens {
                out.push('(');
            }
            out.push('-');
            write_term_operand(inner, var, out);
            if parens {
                out.push(')');
            }
        }
        Expr::Pow(base, exp) => {
            let parens = ctx == Ctx::PowBase;
            if parens {
                out.push('(');
            }
            match base.as_ref() {
                Expr::Var | Expr::ImaginaryUnit | Expr::Func(_, _) => {
                    write_expr(base, var, Ctx::PowBase, out)
                }
                Expr::Const(r) if r.is_integer() => write_expr(base, var, Ctx::PowBase, out),
                _ => {
                    out.push('(');
                    write_expr(base, var, Ctx::Top, out);
                    out.push(')');
                }
            }
            out.push('^');
            if exp.is_integer() && !exp.is_negative() {
                out.push_str(&exp.to_string());
            } else {
                out.push('(');
                out.push_str(&exp.to_string());
                out.push(')');
            }
            if parens {
                out.push(')');
            }
        }
        Expr::Func(f, arg) => {
            out.push_str(f.name());
            out.push('(');
            write_expr(arg, var, Ctx::Top, out);
            out.push(')');
        }
    }
}

/// Operand of a unary minus: parenthesized when it is a sum or another
/// negation, so the output stays unambiguous.
fn write_term_operand(e: &Expr, var: &str, out: &mut String) {
    match e {
        Expr::Add(_) | Expr::Neg(_) => {
            out.push('(');
            write_expr(e, var, Ctx::Top, out);
            out.push(')');
        }
        _ => write_expr(e, var, Ctx::Top, out),
    }
}

/// Parse the expression grammar:
///
/// ```text
/// expr   := '-'? term (('+'|'-') term)*
/// term   := factor ('*' factor)*
/// factor := base ('^' exponent)?
/// base   := 'z' | number | 'I' | '(' expr ')' | funcname '(' expr ')'
/// number := integer ('/' integer)?
/// ```
///
/// Whitespace is insignificant and names are case-sensitive. Exponents may be
/// a bare rational or a parenthesized signed rational.
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        s: text.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.s.len() {
        return Err(ParseError::Syntax {
            pos: p.pos,
            message: format!("unexpected '{}'", p.s[p.pos] as char),
        });
    }
    Ok(e)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && (self.s[self.pos] as char).is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(ParseError::Syntax {
                pos: self.pos,
                message: format!("expected '{}'", c as char),
            })
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        let mut terms = Vec::new();
        let first = if self.eat(b'-') {
            Expr::neg(self.term()?)
        } else {
            self.term()?
        };
        terms.push(first);
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    terms.push(self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    terms.push(Expr::neg(self.term()?));
                }
                _ => break,
            }
        }
        Ok(Expr::add(terms))
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut factors = vec![self.factor()?];
        loop {
            self.skip_ws();
            if self.eat(b'*') {
                factors.push(self.factor()?);
            } else {
                break;
            }
        }
        Ok(Expr::mul(factors))
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.base()?;
        self.skip_ws();
        if self.eat(b'^') {
            let exp = self.exponent()?;
            Ok(Expr::pow(base, exp))
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.skip_ws();
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let r = self.unsigned_rational()?;
                Ok(Expr::rational(r))
            }
            Some(c) if c.is_ascii_alphabetic() => self.ident(),
            Some(c) => Err(ParseError::Syntax {
                pos: self.pos,
                message: format!("unexpected '{}'", c as char),
            }),
            None => Err(ParseError::Syntax {
                pos: self.pos,
                message: "unexpected end of input".to_string(),
            }),
        }
    }

    fn ident(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        while self
            .peek()
            .map(|c| c.is_ascii_alphabetic())
            .unwrap_or(false)
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        match name {
            "z" => Ok(Expr::Var),
            "I" => Ok(Expr::ImaginaryUnit),
            _ => {
                if let Some(f) = FuncSymbol::from_name(name) {
                    self.skip_ws();
                    self.expect(b'(')?;
                    let arg = self.expr()?;
                    self.skip_ws();
                    self.expect(b')')?;
                    Ok(Expr::func(f, arg))
                } else if name.len() == 1 {
                    Err(ParseError::NotTheVariable {
                        name: name.to_string(),
                        pos: start,
                    })
                } else {
                    Err(ParseError::UnknownFunction {
                        name: name.to_string(),
                        pos: start,
                    })
                }
            }
        }
    }

    fn unsigned_integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().map(|c| c.is_ascii_digit()).unwrap_or(false) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(ParseError::Syntax {
                pos: self.pos,
                message: "expected a number".to_string(),
            });
        }
        let digits = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Ok(digits.parse::<BigInt>().unwrap())
    }

    fn unsigned_rational(&mut self) -> Result<Rat, ParseError> {
        let n = self.unsigned_integer()?;
        if self.eat(b'/') {
            let dpos = self.pos;
            let d = self.unsigned_integer()?;
            if d.is_zero() {
                return Err(ParseError::Syntax {
                    pos: dpos,
                    message: "zero denominator".to_string(),
                });
            }
            Ok(Rat::new(n, d))
        } else {
            Ok(Rat::from_integer(n))
        }
    }

    fn exponent(&mut self) -> Result<Rat, ParseError> {
        self.skip_ws();
        if self.eat(b'(') {
            self.skip_ws();
            let neg = self.eat(b'-');
            let r = self.unsigned_rational()?;
            self.skip_ws();
            self.expect(b')')?;
            Ok(if neg { -r } else { r })
        } else {
            let neg = self.eat(b'-');
            let r = self.unsigned_rational()?;
            Ok(if neg { -r } else { r })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_i;

    fn eq4_tree() -> Expr {
        let one_minus_z2 = Expr::sub(Expr::integer(1), Expr::pow(Expr::var(), rat_i(2)));
        let inner = Expr::mul(vec![
            Expr::integer(2),
            Expr::var(),
            Expr::sqrt(one_minus_z2),
        ]);
        Expr::sub(
            Expr::mul(vec![
                Expr::integer(2),
                Expr::func(FuncSymbol::Arcsin, Expr::var()),
            ]),
            Expr::func(FuncSymbol::Arcsin, inner),
        )
    }

    #[test]
    fn parses_spec_examples() {
        assert_eq!(
            parse("ln(z^2)").unwrap(),
            Expr::ln(Expr::pow(Expr::var(), rat_i(2)))
        );
        assert_eq!(
            parse("ln(-sqrt(z))").unwrap(),
            Expr::ln(Expr::neg(Expr::sqrt(Expr::var())))
        );
        assert_eq!(
            parse("2*arcsin(z) - arcsin(2*z*sqrt(1-z^2))").unwrap(),
            eq4_tree()
        );
    }

    #[test]
    fn prints_canonical_spellings() {
        assert_eq!(Expr::ln(Expr::var()).to_string(), "ln(z)");
        assert_eq!(Expr::pow(Expr::var(), rat(1, 2)).to_string(), "sqrt(z)");
        assert_eq!(Expr::neg(Expr::integer(1)).to_string(), "-1");
        assert_eq!(Expr::integer(-1).to_string(), "-1");
    }

    #[test]
    fn round_trips_handwritten_cases() {
        for src in [
            "ln(z^2)",
            "ln(-sqrt(z))",
            "2*arcsin(z)-arcsin(2*z*sqrt(1-z^2))",
            "sqrt(z)*sqrt(z)",
            "z^(3/2)",
            "z^(-2)",
            "1/2*z+3",
            "arccoth(arctanh(exp(z)))",
            "-(-z)",
            "(1+z)*(2-z)",
            "(-z)*I",
        ] {
            let e = parse(src).unwrap();
            let printed = e.to_string();
            assert_eq!(parse(&printed).unwrap(), e, "source: {src} -> {printed}");
        }
    }

    #[test]
    fn fractional_power_half_becomes_sqrt() {
        assert_eq!(parse("z^(1/2)").unwrap(), Expr::sqrt(Expr::var()));
        assert_eq!(parse("z^(2/4)").unwrap(), Expr::sqrt(Expr::var()));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            parse("ln(w)"),
            Err(ParseError::NotTheVariable { .. })
        ));
        assert!(matches!(
            parse("foo(z)"),
            Err(ParseError::UnknownFunction { .. })
        ));
        assert!(matches!(parse("2*"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("2z"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("1/0"), Err(ParseError::Syntax { .. })));
        let err = parse("z + + z").unwrap_err();
        assert_eq!(err.position(), 4);
    }

    #[test]
    fn constants_fold_exactly() {
        let e = parse("(1+2*I)*(1-2*I)").unwrap();
        assert_eq!(e.const_value().unwrap(), GaussianRat::from_rat(rat_i(5)));
        assert!(parse("sqrt(2)").unwrap().const_value().is_none());
        assert!(parse("z").unwrap().const_value().is_none());
    }

    #[test]
    fn add_children_are_sorted_and_flattened() {
        let a = Expr::add(vec![Expr::var(), Expr::integer(1)]);
        let b = Expr::add(vec![Expr::integer(1), Expr::var()]);
        assert_eq!(a, b);
        let nested = Expr::add(vec![a.clone(), Expr::i()]);
        if let Expr::Add(v) = &nested {
            assert_eq!(v.len(), 3);
        } else {
            panic!("expected a sum");
        }
    }
}
