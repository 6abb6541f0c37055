use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::real::RInterval;
use super::round::{add_up, mul_up, sqrt_up};
use crate::error::{Error, Result};

/// Rectangular complex interval `re + i·im`.
#[derive(Clone, Copy, PartialEq, Debug, Default)]
pub struct CInterval {
    pub re: RInterval,
    pub im: RInterval,
}

impl CInterval {
    pub const ZERO: CInterval = CInterval { re: RInterval::ZERO, im: RInterval::ZERO };
    pub const ONE: CInterval = CInterval { re: RInterval::ONE, im: RInterval::ZERO };

    pub const fn new(re: RInterval, im: RInterval) -> Self {
        CInterval { re, im }
    }

    pub const fn real(re: RInterval) -> Self {
        CInterval { re, im: RInterval::ZERO }
    }

    pub const fn point(z: Complex64) -> Self {
        CInterval { re: RInterval::point(z.re), im: RInterval::point(z.im) }
    }

    pub fn mid(self) -> Complex64 {
        Complex64::new(self.re.mid(), self.im.mid())
    }

    /// Upper bound on `|z - mid|` over the rectangle.
    pub fn rad(self) -> f64 {
        let (a, b) = (self.re.rad(), self.im.rad());
        sqrt_up(add_up(mul_up(a, a), mul_up(b, b)))
    }

    pub fn is_point(self) -> bool {
        self.re.is_point() && self.im.is_point()
    }

    pub fn is_zero(self) -> bool {
        self == CInterval::ZERO
    }

    pub fn is_real(self) -> bool {
        self.im == RInterval::ZERO
    }

    pub fn contains(self, z: Complex64) -> bool {
        self.re.contains(z.re) && self.im.contains(z.im)
    }

    pub fn contains_zero(self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn subset_of(self, o: CInterval) -> bool {
        self.re.subset_of(o.re) && self.im.subset_of(o.im)
    }

    pub fn interior_of(self, o: CInterval) -> bool {
        self.re.interior_of(o.re) && self.im.interior_of(o.im)
    }

    pub fn hull(self, o: CInterval) -> CInterval {
        CInterval { re: self.re.hull(o.re), im: self.im.hull(o.im) }
    }

    pub fn intersect(self, o: CInterval) -> Option<CInterval> {
        Some(CInterval { re: self.re.intersect(o.re)?, im: self.im.intersect(o.im)? })
    }

    pub fn conj(self) -> CInterval {
        CInterval { re: self.re, im: -self.im }
    }

    /// Adds `[-t, t]` to both parts.
    pub fn inflate(self, t: f64) -> CInterval {
        CInterval { re: self.re.inflate(t), im: self.im.inflate(t) }
    }

    /// Encloses `|z|²` over the rectangle.
    pub fn norm_sqr(self) -> RInterval {
        self.re.sqr() + self.im.sqr()
    }

    pub fn scale(self, s: RInterval) -> CInterval {
        CInterval { re: self.re * s, im: self.im * s }
    }

    pub fn scale_f64(self, s: f64) -> CInterval {
        CInterval { re: self.re.scale(s), im: self.im.scale(s) }
    }

    /// Upper bound on the largest magnitude.
    pub fn magnitude_sup(self) -> f64 {
        let (a, b) = (self.re.mag(), self.im.mag());
        if b == 0.0 {
            return a;
        }
        if a == 0.0 {
            return b;
        }
        sqrt_up(add_up(mul_up(a, a), mul_up(b, b)))
    }

    /// Upper bound of `max(|re|, |im|)`, cheaper than the magnitude.
    pub fn max_part_mag(self) -> f64 {
        self.re.mag().max(self.im.mag())
    }

    pub fn checked_div(self, b: CInterval) -> Result<CInterval> {
        let den = b.norm_sqr();
        if den.contains_zero() {
            return Err(Error::DivByZeroInterval);
        }
        let num = self * b.conj();
        Ok(CInterval { re: num.re.checked_div(den)?, im: num.im.checked_div(den)? })
    }
}

impl Add for CInterval {
    type Output = CInterval;
    #[inline]
    fn add(self, b: CInterval) -> CInterval {
        CInterval { re: self.re + b.re, im: self.im + b.im }
    }
}

impl Sub for CInterval {
    type Output = CInterval;
    #[inline]
    fn sub(self, b: CInterval) -> CInterval {
        CInterval { re: self.re - b.re, im: self.im - b.im }
    }
}

impl Neg for CInterval {
    type Output = CInterval;
    #[inline]
    fn neg(self) -> CInterval {
        CInterval { re: -self.re, im: -self.im }
    }
}

impl Mul for CInterval {
    type Output = CInterval;
    #[inline]
    fn mul(self, b: CInterval) -> CInterval {
        let a = self;
        // real operands dominate in practice (A, B, V are real)
        if a.im == RInterval::ZERO {
            return CInterval { re: a.re * b.re, im: a.re * b.im };
        }
        if b.im == RInterval::ZERO {
            return CInterval { re: a.re * b.re, im: a.im * b.re };
        }
        CInterval { re: a.re * b.re - a.im * b.im, im: a.re * b.im + a.im * b.re }
    }
}

impl From<RInterval> for CInterval {
    fn from(r: RInterval) -> Self {
        CInterval::real(r)
    }
}

impl From<Complex64> for CInterval {
    fn from(z: Complex64) -> Self {
        CInterval::point(z)
    }
}

impl From<f64> for CInterval {
    fn from(x: f64) -> Self {
        CInterval::real(RInterval::point(x))
    }
}

impl fmt::Display for CInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + i{}", self.re, self.im)
    }
}

pub fn c_add(a: CInterval, b: CInterval) -> CInterval {
    a + b
}

pub fn c_sub(a: CInterval, b: CInterval) -> CInterval {
    a - b
}

pub fn c_mul(a: CInterval, b: CInterval) -> CInterval {
    a * b
}

pub fn c_div(a: CInterval, b: CInterval) -> Result<CInterval> {
    a.checked_div(b)
}

pub fn magnitude_sup(z: CInterval) -> f64 {
    z.magnitude_sup()
}
