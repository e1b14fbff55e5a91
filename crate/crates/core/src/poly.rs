//! Exact polynomial arithmetic over the rationals: univariate polynomials
//! with Sturm-chain real root isolation, bivariate polynomials in (x, y),
//! resultants via fraction-free elimination, and the real/imaginary
//! decomposition of polynomial expressions in `z`.

use crate::error::EngineError;
use crate::expr::Expr;
use crate::rat::{rat_to_f64, GaussianRat, Rat};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Which coordinate of the plane a quantity refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Coord {
    X,
    Y,
}

impl Coord {
    pub fn other(self) -> Coord {
        match self {
            Coord::X => Coord::Y,
            Coord::Y => Coord::X,
        }
    }

    pub fn letter(self) -> &'static str {
        match self {
            Coord::X => "x",
            Coord::Y => "y",
        }
    }
}

// ---------------------------------------------------------------------------
// Univariate polynomials over Q
// ---------------------------------------------------------------------------

/// Dense univariate polynomial with rational coefficients, lowest degree
/// first. The zero polynomial has an empty coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        UniPoly::constant(Rat::one())
    }

    pub fn constant(r: Rat) -> Self {
        UniPoly::new(vec![r])
    }

    pub fn var() -> Self {
        UniPoly::new(vec![Rat::zero(), Rat::one()])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        UniPoly::new(
            coeffs
                .iter()
                .map(|&c| Rat::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn lc(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn add(&self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero);
            let b = o.coeffs.get(i).cloned().unwrap_or_else(Rat::zero);
            out.push(a + b);
        }
        UniPoly::new(out)
    }

    pub fn sub(&self, o: &UniPoly) -> UniPoly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn scale(&self, r: &Rat) -> UniPoly {
        if r.is_zero() {
            return UniPoly::zero();
        }
        UniPoly::new(self.coeffs.iter().map(|c| c * r).collect())
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + rat_to_f64(c);
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Exact Euclidean division; the divisor must be nonzero.
    pub fn divrem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.deg().unwrap();
        let dlc = d.lc().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() >= dd + 1 {
            let rd = rem.len() - 1;
            let factor = rem.last().unwrap() / &dlc;
            if !factor.is_zero() {
                quot[rd - dd] = factor.clone();
                for (i, c) in d.coeffs.iter().enumerate() {
                    let idx = rd - dd + i;
                    let delta = c * &factor;
                    rem[idx] -= delta;
                }
            }
            rem.pop();
            while rem.last().map(|c| c.is_zero()).unwrap_or(false) {
                rem.pop();
            }
            if rem.len() < dd + 1 {
                break;
            }
        }
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    pub fn monic(&self) -> UniPoly {
        match self.lc() {
            None => UniPoly::zero(),
            Some(l) => {
                let inv = Rat::one() / l;
                self.scale(&inv)
            }
        }
    }

    pub fn gcd(&self, o: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn squarefree(&self) -> UniPoly {
        if self.is_zero() || self.deg() == Some(0) {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        if g.deg() == Some(0) {
            return self.clone();
        }
        let (q, r) = self.divrem(&g);
        debug_assert!(r.is_zero());
        q
    }

    /// Upper bound on the absolute value of every real root.
    pub fn root_bound(&self) -> Rat {
        let lc = match self.lc() {
            Some(l) => l.clone(),
            None => return Rat::one(),
        };
        let mut m = Rat::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let q = (c / &lc).abs();
            if q > m {
                m = q;
            }
        }
        m + Rat::one()
    }

    /// Normalize by |lc|: positive scaling keeps Sturm sign structure.
    fn keep_sign_normalized(&self) -> UniPoly {
        match self.lc() {
            None => UniPoly::zero(),
            Some(l) => {
                let inv = Rat::one() / l.abs();
                self.scale(&inv)
            }
        }
    }

    fn sturm_chain(&self) -> Vec<UniPoly> {
        let mut chain = vec![
            self.keep_sign_normalized(),
            self.derivative().keep_sign_normalized(),
        ];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let (_, r) = chain[n - 2].divrem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(r.neg().keep_sign_normalized());
        }
        chain
    }

    fn sign_variations_at(chain: &[UniPoly], x: &Rat) -> usize {
        let signs: Vec<i8> = chain
            .iter()
            .map(|p| {
                let v = p.eval(x);
                if v.is_zero() {
                    0
                } else if v.is_positive() {
                    1
                } else {
                    -1
                }
            })
            .filter(|s| *s != 0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    /// Requires `self` squarefree for exactness.
    pub fn count_roots_between(&self, a: &Rat, b: &Rat) -> usize {
        let chain = self.sturm_chain();
        let va = Self::sign_variations_at(&chain, a);
        let vb = Self::sign_variations_at(&chain, b);
        va.saturating_sub(vb)
    }

    /// Isolate all distinct real roots. Roots surfaced exactly when they are
    /// hit by the bisection or by small rational candidates; otherwise an
    /// isolating open bracket with rational endpoints is returned.
    pub fn isolate_real_roots(&self) -> Vec<RootLoc> {
        if self.is_zero() || self.deg() == Some(0) {
            return vec![];
        }
        let sf = self.squarefree();
        let chain = sf.sturm_chain();
        let bound = sf.root_bound();
        let lo = -bound.clone();
        let hi = bound;
        // Bounds are strictly beyond every root, so (lo, hi] sees them all.
        let mut out = Vec::new();
        let known: Vec<Rat> = sf
            .rational_root_candidates(2000)
            .into_iter()
            .filter(|c| sf.eval(c).is_zero())
            .collect();
        let mut stack = vec![(
            lo.clone(),
            hi.clone(),
            Self::sign_variations_at(&chain, &lo),
            Self::sign_variations_at(&chain, &hi),
        )];
        while let Some((a, b, va, vb)) = stack.pop() {
            let n = va.saturating_sub(vb);
            if n == 0 {
                continue;
            }
            if n == 1 {
                out.push(sf.refine_to_rootloc(a, b, &known));
                continue;
            }
            let mid = (&a + &b) / Rat::from_integer(BigInt::from(2));
            if sf.eval(&mid).is_zero() {
                // Count the exact root, then recurse on punctured halves.
                out.push(RootLoc::Exact(mid.clone()));
                let mut delta = (&b - &a) / Rat::from_integer(BigInt::from(4));
                loop {
                    let l = &mid - &delta;
                    let r = &mid + &delta;
                    if sf.count_roots_between(&l, &r) == 1 && !sf.eval(&l).is_zero() {
                        let vl = Self::sign_variations_at(&chain, &l);
                        let vr = Self::sign_variations_at(&chain, &r);
                        stack.push((a, l, va, vl));
                        stack.push((r, b, vr, vb));
                        break;
                    }
                    delta /= Rat::from_integer(BigInt::from(2));
                }
            } else {
                let vm = Self::sign_variations_at(&chain, &mid);
                stack.push((a, mid.clone(), va, vm));
                stack.push((mid, b, vm, vb));
            }
        }
        out.sort_by(|p, q| p.position().partial_cmp(&q.position()).unwrap());
        out
    }

    fn refine_to_rootloc(&self, mut a: Rat, mut b: Rat, known: &[Rat]) -> RootLoc {
        for k in known {
            if &a < k && k <= &b {
                return RootLoc::Exact(k.clone());
            }
        }
        let two = Rat::from_integer(BigInt::from(2));
        for _ in 0..80 {
            let mid = (&a + &b) / &two;
            let v = self.eval(&mid);
            if v.is_zero() {
                return RootLoc::Exact(mid);
            }
            if (self.eval(&a).is_positive() && v.is_positive())
                || (self.eval(&a).is_negative() && v.is_negative())
            {
                a = mid;
            } else {
                b = mid;
            }
            if rat_to_f64(&(&b - &a)) < 1e-14 * (1.0 + rat_to_f64(&b).abs()) {
                break;
            }
        }
        RootLoc::Bracket(a, b)
    }

    /// Candidate rational roots p/q with p dividing the cleared constant term
    /// and q dividing the cleared leading coefficient, capped for practicality.
    fn rational_root_candidates(&self, cap: usize) -> Vec<Rat> {
        if self.is_zero() {
            return vec![];
        }
        // Clear denominators.
        let mut denom_lcm = BigInt::one();
        for c in &self.coeffs {
            let d = c.denom();
            let g = gcd_bigint(&denom_lcm, d);
            denom_lcm = &denom_lcm / g * d;
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&denom_lcm / c.denom()))
            .collect();
        let first_nonzero = match ints.iter().find(|c| !c.is_zero()) {
            Some(c) => c.abs(),
            None => return vec![],
        };
        let last = ints.last().unwrap().abs();
        let ps = small_divisors(&first_nonzero, 10_000);
        let qs = small_divisors(&last, 10_000);
        let mut out = vec![Rat::zero()];
        for p in &ps {
            for q in &qs {
                if out.len() >= cap {
                    return out;
                }
                let r = Rat::new(p.clone(), q.clone());
                out.push(-r.clone());
                out.push(r);
            }
        }
        out
    }

    /// All real roots as f64, sorted ascending.
    pub fn real_roots_f64(&self) -> Vec<f64> {
        self.isolate_real_roots()
            .iter()
            .map(|l| l.to_f64(self))
            .collect()
    }
}

fn gcd_bigint(a: &BigInt, b: &BigInt) -> BigInt {
    let mut a = a.abs();
    let mut b = b.abs();
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

fn small_divisors(n: &BigInt, limit: u64) -> Vec<BigInt> {
    let mut out = Vec::new();
    if n.is_zero() {
        out.push(BigInt::one());
        return out;
    }
    let mut d = BigInt::one();
    let lim = BigInt::from(limit);
    while &d * &d <= *n && d <= lim {
        if (n % &d).is_zero() {
            out.push(d.clone());
            let other = n / &d;
            if other != d && other <= lim {
                out.push(other);
            }
        }
        d += BigInt::one();
    }
    out.sort();
    out.dedup();
    out
}

/// Location of one real root of a squarefree polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootLoc {
    Exact(Rat),
    /// Open bracket (lo, hi) containing exactly one root; the polynomial is
    /// nonzero at both endpoints.
    Bracket(Rat, Rat),
}

impl RootLoc {
    pub fn position(&self) -> f64 {
        match self {
            RootLoc::Exact(r) => rat_to_f64(r),
            RootLoc::Bracket(a, b) => (rat_to_f64(a) + rat_to_f64(b)) / 2.0,
        }
    }

    pub fn as_exact(&self) -> Option<&Rat> {
        match self {
            RootLoc::Exact(r) => Some(r),
            _ => None,
        }
    }

    /// Rational value at (or extremely near) the root, exact when known.
    pub fn approx_rat(&self) -> Rat {
        match self {
            RootLoc::Exact(r) => r.clone(),
            RootLoc::Bracket(a, b) => (a + b) / Rat::from_integer(BigInt::from(2)),
        }
    }

    /// Left end usable as an exclusive bound (strictly below the root).
    pub fn left_bound(&self) -> Rat {
        match self {
            RootLoc::Exact(r) => r.clone(),
            RootLoc::Bracket(a, _) => a.clone(),
        }
    }

    pub fn right_bound(&self) -> Rat {
        match self {
            RootLoc::Exact(r) => r.clone(),
            RootLoc::Bracket(_, b) => b.clone(),
        }
    }

    pub fn to_f64(&self, poly: &UniPoly) -> f64 {
        match self {
            RootLoc::Exact(r) => rat_to_f64(r),
            RootLoc::Bracket(a, b) => {
                let mut lo = rat_to_f64(a);
                let mut hi = rat_to_f64(b);
                let mut flo = poly.eval_f64(lo);
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if mid <= lo || mid >= hi {
                        break;
                    }
                    let fm = poly.eval_f64(mid);
                    if fm == 0.0 {
                        return mid;
                    }
                    if (flo > 0.0) == (fm > 0.0) {
                        lo = mid;
                        flo = fm;
                    } else {
                        hi = mid;
                    }
                }
                0.5 * (lo + hi)
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Bivariate polynomials over Q
// ---------------------------------------------------------------------------

/// Sparse bivariate polynomial in (x, y) with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Rat>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn constant(r: Rat) -> Self {
        let mut p = BiPoly::zero();
        p.add_term(0, 0, r);
        p
    }

    pub fn one() -> Self {
        BiPoly::constant(Rat::one())
    }

    pub fn x() -> Self {
        let mut p = BiPoly::zero();
        p.add_term(1, 0, Rat::one());
        p
    }

    pub fn y() -> Self {
        let mut p = BiPoly::zero();
        p.add_term(0, 1, Rat::one());
        p
    }

    pub fn add_term(&mut self, ex: u32, ey: u32, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((ex, ey)).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(ex, ey));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rat)> {
        self.terms.iter()
    }

    pub fn add(&self, o: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(ex, ey), c) in &o.terms {
            out.add_term(ex, ey, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &BiPoly) -> BiPoly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&k, c)| (k, -c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, o: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(ax, ay), ac) in &self.terms {
            for (&(bx, by), bc) in &o.terms {
                out.add_term(ax + bx, ay + by, ac * bc);
            }
        }
        out
    }

    pub fn scale(&self, r: &Rat) -> BiPoly {
        if r.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(&k, c)| (k, c * r)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> BiPoly {
        let mut acc = BiPoly::one();
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    pub fn deg_in(&self, axis: Coord) -> u32 {
        self.terms
            .keys()
            .map(|&(ex, ey)| match axis {
                Coord::X => ex,
                Coord::Y => ey,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|&(ex, ey)| ex + ey).max().unwrap_or(0)
    }

    pub fn eval(&self, x: &Rat, y: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for (&(ex, ey), c) in &self.terms {
            acc += c * pow_rat(x, ex) * pow_rat(y, ey);
        }
        acc
    }

    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        let mut acc = 0.0;
        for (&(ex, ey), c) in &self.terms {
            acc += rat_to_f64(c) * x.powi(ex as i32) * y.powi(ey as i32);
        }
        acc
    }

    /// Flattened f64 view for hot evaluation loops.
    pub fn to_f64_terms(&self) -> Vec<(i32, i32, f64)> {
        self.terms
            .iter()
            .map(|(&(ex, ey), c)| (ex as i32, ey as i32, rat_to_f64(c)))
            .collect()
    }

    pub fn derivative(&self, axis: Coord) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(ex, ey), c) in &self.terms {
            match axis {
                Coord::X => {
                    if ex > 0 {
                        out.add_term(ex - 1, ey, c * Rat::from_integer(BigInt::from(ex)));
                    }
                }
                Coord::Y => {
                    if ey > 0 {
                        out.add_term(ex, ey - 1, c * Rat::from_integer(BigInt::from(ey)));
                    }
                }
            }
        }
        out
    }

    pub fn swap_axes(&self) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(ex, ey), c)| ((ey, ex), c.clone()))
                .collect(),
        }
    }

    /// Coefficients as polynomials in x, indexed by the power of y.
    pub fn coeffs_in_y(&self) -> Vec<UniPoly> {
        let dy = self.deg_in(Coord::Y) as usize;
        let dx = self.deg_in(Coord::X) as usize;
        let mut rows = vec![vec![Rat::zero(); dx + 1]; dy + 1];
        for (&(ex, ey), c) in &self.terms {
            rows[ey as usize][ex as usize] = c.clone();
        }
        rows.into_iter().map(UniPoly::new).collect()
    }

    pub fn from_coeffs_in_y(coeffs: &[UniPoly]) -> BiPoly {
        let mut out = BiPoly::zero();
        for (ey, p) in coeffs.iter().enumerate() {
            for (ex, c) in p.coeffs().iter().enumerate() {
                out.add_term(ex as u32, ey as u32, c.clone());
            }
        }
        out
    }

    /// Substitute y = r, leaving a polynomial in x.
    pub fn subst_y(&self, r: &Rat) -> UniPoly {
        let dx = self.deg_in(Coord::X) as usize;
        let mut coeffs = vec![Rat::zero(); dx + 1];
        for (&(ex, ey), c) in &self.terms {
            coeffs[ex as usize] += c * pow_rat(r, ey);
        }
        UniPoly::new(coeffs)
    }

    /// Substitute x = r, leaving a polynomial in y.
    pub fn subst_x(&self, r: &Rat) -> UniPoly {
        self.swap_axes().subst_y(r)
    }

    /// Coefficients in y at a numeric x, lowest power first.
    pub fn coeffs_in_y_at_f64(&self, x: f64) -> Vec<f64> {
        let dy = self.deg_in(Coord::Y) as usize;
        let mut out = vec![0.0; dy + 1];
        for (&(ex, ey), c) in &self.terms {
            out[ey as usize] += rat_to_f64(c) * x.powi(ex as i32);
        }
        out
    }

    /// Deterministic display with the given variable letters, highest total
    /// degree first.
    pub fn display(&self, vx: &str, vy: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut keys: Vec<(u32, u32)> = self.terms.keys().copied().collect();
        keys.sort_by(|a, b| {
            let ta = a.0 + a.1;
            let tb = b.0 + b.1;
            tb.cmp(&ta).then(b.0.cmp(&a.0)).then(b.1.cmp(&a.1))
        });
        let mut out = String::new();
        for (i, key) in keys.iter().enumerate() {
            let c = &self.terms[key];
            let mut mono = String::new();
            let (ex, ey) = *key;
            if ex > 0 {
                mono.push_str(vx);
                if ex > 1 {
                    mono.push_str(&format!("^{}", ex));
                }
            }
            if ey > 0 {
                if !mono.is_empty() {
                    mono.push('*');
                }
                mono.push_str(vy);
                if ey > 1 {
                    mono.push_str(&format!("^{}", ey));
                }
            }
            let abs = c.abs();
            let coeff_str = if abs.is_one() && !mono.is_empty() {
                String::new()
            } else if mono.is_empty() {
                abs.to_string()
            } else {
                format!("{}*", abs)
            };
            if i == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push('-');
            } else {
                out.push('+');
            }
            out.push_str(&coeff_str);
            out.push_str(&mono);
        }
        out
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display("x", "y"))
    }
}

fn pow_rat(x: &Rat, n: u32) -> Rat {
    let mut acc = Rat::one();
    let mut base = x.clone();
    let mut k = n;
    while k > 0 {
        if k & 1 == 1 {
            acc *= &base;
        }
        base = &base * &base;
        k >>= 1;
    }
    acc
}

// ---------------------------------------------------------------------------
// Resultants
// ---------------------------------------------------------------------------

/// Resultant of `a` and `b` with respect to y; the result is a polynomial
/// in x whose roots are the x-coordinates where `a` and `b` share a y-root
/// (plus leading-coefficient degenerations).
pub fn resultant_wrt_y(a: &BiPoly, b: &BiPoly) -> UniPoly {
    let ac = a.coeffs_in_y();
    let bc = b.coeffs_in_y();
    let m = ac.len().saturating_sub(1);
    let n = bc.len().saturating_sub(1);
    if a.is_zero() || b.is_zero() {
        return UniPoly::zero();
    }
    if m == 0 && n == 0 {
        return UniPoly::one();
    }
    if m == 0 {
        // res(const-in-y, b) = a^deg(b)
        let mut acc = UniPoly::one();
        for _ in 0..n {
            acc = acc.mul(&ac[0]);
        }
        return acc;
    }
    if n == 0 {
        let mut acc = UniPoly::one();
        for _ in 0..m {
            acc = acc.mul(&bc[0]);
        }
        return acc;
    }
    // Sylvester matrix, (m+n) x (m+n), entries in Q[x].
    let size = m + n;
    let mut mat = vec![vec![UniPoly::zero(); size]; size];
    for row in 0..n {
        for (k, c) in ac.iter().enumerate() {
            mat[row][row + (m - k)] = c.clone();
        }
    }
    for row in 0..m {
        for (k, c) in bc.iter().enumerate() {
            mat[n + row][row + (n - k)] = c.clone();
        }
    }
    bareiss_det(mat)
}

/// Fraction-free Gaussian elimination over Q[x]; every division is exact.
fn bareiss_det(mut m: Vec<Vec<UniPoly>>) -> UniPoly {
    let n = m.len();
    if n == 0 {
        return UniPoly::one();
    }
    let mut sign = 1i32;
    let mut prev = UniPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !m[i][k].is_zero());
            match swap {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return UniPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                let (q, r) = num.divrem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                m[i][j] = q;
            }
            m[i][k] = UniPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        det.neg()
    } else {
        det
    }
}

// ---------------------------------------------------------------------------
// Complex-coefficient univariate polynomials (argument dispatch)
// ---------------------------------------------------------------------------

/// Univariate polynomial in z with exact Gaussian-rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CPoly {
    coeffs: Vec<GaussianRat>,
}

impl CPoly {
    pub fn new(mut coeffs: Vec<GaussianRat>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        CPoly { coeffs }
    }

    pub fn zero() -> Self {
        CPoly { coeffs: vec![] }
    }

    pub fn constant(c: GaussianRat) -> Self {
        CPoly::new(vec![c])
    }

    pub fn var() -> Self {
        CPoly::new(vec![GaussianRat::zero(), GaussianRat::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[GaussianRat] {
        &self.coeffs
    }

    pub fn add(&self, o: &CPoly) -> CPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(GaussianRat::zero);
            let b = o.coeffs.get(i).cloned().unwrap_or_else(GaussianRat::zero);
            out.push(a.add(&b));
        }
        CPoly::new(out)
    }

    pub fn neg(&self) -> CPoly {
        CPoly::new(self.coeffs.iter().map(|c| c.neg()).collect())
    }

    pub fn mul(&self, o: &CPoly) -> CPoly {
        if self.is_zero() || o.is_zero() {
            return CPoly::zero();
        }
        let mut out = vec![GaussianRat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        CPoly::new(out)
    }

    pub fn pow(&self, n: u32) -> CPoly {
        let mut acc = CPoly::constant(GaussianRat::one());
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    pub fn to_c64_coeffs(&self) -> Vec<Complex64> {
        self.coeffs.iter().map(|c| c.to_c64()).collect()
    }

    pub fn eval_c64(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c.to_c64();
        }
        acc
    }
}

/// Normalized univariate polynomial form of `e` when `e` is polynomial in z
/// (only variables, Gaussian-rational constants, sums, products, negation
/// and nonnegative integer powers); `None` otherwise. This is the dispatch
/// test between the semi-algebraic and parametric approaches.
pub fn polynomial_argument(e: &Expr) -> Option<CPoly> {
    match e {
        Expr::Var => Some(CPoly::var()),
        Expr::Const(r) => Some(CPoly::constant(GaussianRat::from_rat(r.clone()))),
        Expr::ImaginaryUnit => Some(CPoly::constant(GaussianRat::i())),
        Expr::Add(terms) => {
            let mut acc = CPoly::zero();
            for t in terms {
                acc = acc.add(&polynomial_argument(t)?);
            }
            Some(acc)
        }
        Expr::Mul(factors) => {
            let mut acc = CPoly::constant(GaussianRat::one());
            for t in factors {
                acc = acc.mul(&polynomial_argument(t)?);
            }
            Some(acc)
        }
        Expr::Neg(inner) => Some(polynomial_argument(inner)?.neg()),
        Expr::Pow(base, exp) => {
            if !exp.is_integer() || exp.is_negative() {
                return None;
            }
            let n = exp.to_integer().to_u32()?;
            Some(polynomial_argument(base)?.pow(n))
        }
        Expr::Func(_, _) => None,
    }
}

// ---------------------------------------------------------------------------
// Real/imaginary decomposition
// ---------------------------------------------------------------------------

/// Exact decomposition g(x + i y) = P(x, y) + i Q(x, y).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealBiPoly {
    pub p: BiPoly,
    pub q: BiPoly,
}

impl RealBiPoly {
    pub fn eval_c64(&self, x: f64, y: f64) -> Complex64 {
        Complex64::new(self.p.eval_f64(x, y), self.q.eval_f64(x, y))
    }
}

/// Decompose a polynomial expression into exact real and imaginary parts.
/// Fails with `NotPolynomial` if the tree contains a function node, a
/// fractional power, or a negative integer power.
pub fn re_im_decompose(e: &Expr) -> Result<RealBiPoly, EngineError> {
    match e {
        Expr::Var => Ok(RealBiPoly {
            p: BiPoly::x(),
            q: BiPoly::y(),
        }),
        Expr::Const(r) => Ok(RealBiPoly {
            p: BiPoly::constant(r.clone()),
            q: BiPoly::zero(),
        }),
        Expr::ImaginaryUnit => Ok(RealBiPoly {
            p: BiPoly::zero(),
            q: BiPoly::one(),
        }),
        Expr::Add(terms) => {
            let mut p = BiPoly::zero();
            let mut q = BiPoly::zero();
            for t in terms {
                let r = re_im_decompose(t)?;
                p = p.add(&r.p);
                q = q.add(&r.q);
            }
            Ok(RealBiPoly { p, q })
        }
        Expr::Mul(factors) => {
            let mut acc = RealBiPoly {
                p: BiPoly::one(),
                q: BiPoly::zero(),
            };
            for t in factors {
                let r = re_im_decompose(t)?;
                acc = complex_mul(&acc, &r);
            }
            Ok(acc)
        }
        Expr::Neg(inner) => {
            let r = re_im_decompose(inner)?;
            Ok(RealBiPoly {
                p: r.p.neg(),
                q: r.q.neg(),
            })
        }
        Expr::Pow(base, exp) => {
            if !exp.is_integer() || exp.is_negative() {
                return Err(EngineError::NotPolynomial);
            }
            let n = exp
                .to_integer()
                .to_u32()
                .ok_or_else(|| EngineError::EngineLimit("exponent too large".to_string()))?;
            let b = re_im_decompose(base)?;
            let mut acc = RealBiPoly {
                p: BiPoly::one(),
                q: BiPoly::zero(),
            };
            let mut sq = b;
            let mut k = n;
            while k > 0 {
                if k & 1 == 1 {
                    acc = complex_mul(&acc, &sq);
                }
                sq = complex_mul(&sq, &sq);
                k >>= 1;
            }
            Ok(acc)
        }
        Expr::Func(_, _) => Err(EngineError::NotPolynomial),
    }
}

fn complex_mul(a: &RealBiPoly, b: &RealBiPoly) -> RealBiPoly {
    RealBiPoly {
        p: a.p.mul(&b.p).sub(&a.q.mul(&b.q)),
        q: a.p.mul(&b.q).add(&a.q.mul(&b.p)),
    }
}
