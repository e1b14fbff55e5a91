//! Exact rational scalars, open intervals with infinite endpoints and
//! Gaussian-rational constants.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

pub type Rat = BigRational;

pub fn rat_i(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Best rational approximation of `v` by continued fractions, good to about
/// 1e-12 relative error. Used for presentation-grade interval endpoints that
/// originate from numeric root finding.
pub fn rat_from_f64(v: f64) -> Rat {
    assert!(v.is_finite(), "cannot convert non-finite float to rational");
    let negative = v < 0.0;
    let mut x = v.abs();
    let (mut p0, mut q0) = (BigInt::from(1), BigInt::from(0));
    let (mut p1, mut q1) = (BigInt::from(x.floor() as i64), BigInt::from(1));
    x -= x.floor();
    for _ in 0..40 {
        let approx = Rat::new(p1.clone(), q1.clone());
        let err = (rat_to_f64(&approx) - v.abs()).abs();
        if err <= 1e-12 * v.abs().max(1.0) || q1 > BigInt::from(1_000_000_000_000i64) {
            break;
        }
        if x.abs() < 1e-15 {
            break;
        }
        x = 1.0 / x;
        let a = x.floor();
        let ai = BigInt::from(a as i64);
        let p2 = &ai * &p1 + &p0;
        let q2 = &ai * &q1 + &q0;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        x -= a;
    }
    let r = Rat::new(p1, q1);
    if negative {
        -r
    } else {
        r
    }
}

/// A rational extended with the two infinities. Ordered `NegInf < Finite < PosInf`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Extended {
    NegInf,
    Finite(Rat),
    PosInf,
}

impl Extended {
    pub fn finite(&self) -> Option<&Rat> {
        match self {
            Extended::Finite(r) => Some(r),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Extended::NegInf => f64::NEG_INFINITY,
            Extended::Finite(r) => rat_to_f64(r),
            Extended::PosInf => f64::INFINITY,
        }
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::NegInf => write!(f, "-inf"),
            Extended::Finite(r) => write!(f, "{}", r),
            Extended::PosInf => write!(f, "inf"),
        }
    }
}

/// Open interval over the extended rationals. Endpoints are excluded.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interval {
    pub lo: Extended,
    pub hi: Extended,
}

impl Interval {
    pub fn new(lo: Extended, hi: Extended) -> Self {
        Interval { lo, hi }
    }

    pub fn open(lo: i64, hi: i64) -> Self {
        Interval::new(Extended::Finite(rat_i(lo)), Extended::Finite(rat_i(hi)))
    }

    pub fn below(hi: i64) -> Self {
        Interval::new(Extended::NegInf, Extended::Finite(rat_i(hi)))
    }

    pub fn above(lo: i64) -> Self {
        Interval::new(Extended::Finite(rat_i(lo)), Extended::PosInf)
    }

    pub fn full() -> Self {
        Interval::new(Extended::NegInf, Extended::PosInf)
    }

    pub fn is_empty(&self) -> bool {
        self.lo >= self.hi
    }

    pub fn contains_rat(&self, v: &Rat) -> bool {
        let above_lo = match &self.lo {
            Extended::NegInf => true,
            Extended::Finite(l) => l < v,
            Extended::PosInf => false,
        };
        let below_hi = match &self.hi {
            Extended::NegInf => false,
            Extended::Finite(h) => v < h,
            Extended::PosInf => true,
        };
        above_lo && below_hi
    }

    pub fn contains_f64(&self, v: f64) -> bool {
        self.lo.to_f64() < v && v < self.hi.to_f64()
    }

    /// Intersect with a closed window range `[wlo, whi]`; returns finite bounds.
    pub fn clip_f64(&self, wlo: f64, whi: f64) -> Option<(f64, f64)> {
        let lo = self.lo.to_f64().max(wlo);
        let hi = self.hi.to_f64().min(whi);
        if lo < hi {
            Some((lo, hi))
        } else {
            None
        }
    }

    /// A rational point strictly inside the interval, if one exists.
    pub fn sample_rat(&self) -> Option<Rat> {
        if self.is_empty() {
            return None;
        }
        Some(match (&self.lo, &self.hi) {
            (Extended::NegInf, Extended::PosInf) => Rat::zero(),
            (Extended::NegInf, Extended::Finite(h)) => h - Rat::one(),
            (Extended::Finite(l), Extended::PosInf) => l + Rat::one(),
            (Extended::Finite(l), Extended::Finite(h)) => (l + h) / rat_i(2),
            _ => return None,
        })
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.lo, self.hi)
    }
}

/// Exact complex constant `re + i*im` with rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussianRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussianRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        GaussianRat { re, im }
    }

    pub fn zero() -> Self {
        GaussianRat::new(Rat::zero(), Rat::zero())
    }

    pub fn one() -> Self {
        GaussianRat::new(Rat::one(), Rat::zero())
    }

    pub fn i() -> Self {
        GaussianRat::new(Rat::zero(), Rat::one())
    }

    pub fn from_rat(r: Rat) -> Self {
        GaussianRat::new(r, Rat::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn add(&self, o: &GaussianRat) -> GaussianRat {
        GaussianRat::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &GaussianRat) -> GaussianRat {
        GaussianRat::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn mul(&self, o: &GaussianRat) -> GaussianRat {
        GaussianRat::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    pub fn neg(&self) -> GaussianRat {
        GaussianRat::new(-self.re.clone(), -self.im.clone())
    }

    pub fn inv(&self) -> Option<GaussianRat> {
        let norm = &self.re * &self.re + &self.im * &self.im;
        if norm.is_zero() {
            return None;
        }
        Some(GaussianRat::new(&self.re / &norm, -(&self.im / &norm)))
    }

    pub fn pow_i64(&self, n: i64) -> Option<GaussianRat> {
        if n < 0 {
            return self.inv()?.pow_i64(-n);
        }
        let mut acc = GaussianRat::one();
        let mut base = self.clone();
        let mut k = n as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        Some(acc)
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
}

impl fmt::Display for GaussianRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}*I", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}{}*I", self.re, self.im)
        } else {
            write!(f, "{}+{}*I", self.re, self.im)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_membership_is_strict() {
        let i = Interval::below(0);
        assert!(i.contains_rat(&rat_i(-1)));
        assert!(!i.contains_rat(&rat_i(0)));
        assert!(!i.contains_rat(&rat_i(1)));
        assert_eq!(i.to_string(), "(-inf,0)");
    }

    #[test]
    fn rat_from_f64_recovers_simple_fractions() {
        assert_eq!(rat_from_f64(0.5), rat(1, 2));
        assert_eq!(rat_from_f64(-1.25), rat(-5, 4));
        let third = rat_from_f64(1.0 / 3.0);
        assert!((rat_to_f64(&third) - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn gaussian_arithmetic() {
        let a = GaussianRat::new(rat_i(1), rat_i(2));
        let b = GaussianRat::new(rat_i(3), rat_i(-1));
        let prod = a.mul(&b);
        assert_eq!(prod, GaussianRat::new(rat_i(5), rat_i(5)));
        let inv = b.inv().unwrap();
        assert_eq!(b.mul(&inv), GaussianRat::one());
    }
}
