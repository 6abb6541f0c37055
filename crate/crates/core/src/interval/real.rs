use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::round::*;
use crate::error::{Error, Result};

/// Closed real interval `[inf, sup]` with binary64 endpoints.
#[derive(Clone, Copy, PartialEq, Debug, Default)]
pub struct RInterval {
    inf: f64,
    sup: f64,
}

impl RInterval {
    pub const ZERO: RInterval = RInterval { inf: 0.0, sup: 0.0 };
    pub const ONE: RInterval = RInterval { inf: 1.0, sup: 1.0 };

    /// Panics on NaN or reversed endpoints; use [`RInterval::try_new`] for
    /// untrusted input.
    pub fn new(inf: f64, sup: f64) -> Self {
        Self::try_new(inf, sup).expect("invalid interval endpoints")
    }

    pub fn try_new(inf: f64, sup: f64) -> Result<Self> {
        if inf.is_nan() || sup.is_nan() || inf > sup {
            return Err(Error::InvalidInterval { inf, sup });
        }
        Ok(RInterval { inf, sup })
    }

    pub const fn point(x: f64) -> Self {
        RInterval { inf: x, sup: x }
    }

    /// Symmetric interval `[-r, r]`.
    pub fn symmetric(r: f64) -> Self {
        let r = r.abs();
        RInterval { inf: -r, sup: r }
    }

    /// Encloses the hull of two values in either order.
    pub fn hull_of(a: f64, b: f64) -> Self {
        RInterval { inf: a.min(b), sup: a.max(b) }
    }

    /// Center/radius form, outward rounded.
    pub fn from_mid_rad(mid: f64, rad: f64) -> Self {
        RInterval { inf: sub_dn(mid, rad), sup: add_up(mid, rad) }
    }

    #[inline]
    pub fn inf(self) -> f64 {
        self.inf
    }

    #[inline]
    pub fn sup(self) -> f64 {
        self.sup
    }

    pub fn mid(self) -> f64 {
        if self.inf == self.sup {
            return self.inf;
        }
        if self.inf == f64::NEG_INFINITY || self.sup == f64::INFINITY {
            return if self.inf == f64::NEG_INFINITY && self.sup == f64::INFINITY {
                0.0
            } else if self.inf == f64::NEG_INFINITY {
                f64::MIN
            } else {
                f64::MAX
            };
        }
        0.5 * self.inf + 0.5 * self.sup
    }

    /// Upper bound on the distance from [`mid`](Self::mid) to either end.
    pub fn rad(self) -> f64 {
        let m = self.mid();
        sub_up(self.sup, m).max(sub_up(m, self.inf))
    }

    pub fn width(self) -> f64 {
        sub_up(self.sup, self.inf)
    }

    /// Largest absolute value.
    pub fn mag(self) -> f64 {
        self.inf.abs().max(self.sup.abs())
    }

    /// Smallest absolute value.
    pub fn mig(self) -> f64 {
        if self.contains(0.0) {
            0.0
        } else {
            self.inf.abs().min(self.sup.abs())
        }
    }

    pub fn is_point(self) -> bool {
        self.inf == self.sup
    }

    pub fn contains(self, x: f64) -> bool {
        self.inf <= x && x <= self.sup
    }

    pub fn contains_zero(self) -> bool {
        self.contains(0.0)
    }

    pub fn subset_of(self, other: RInterval) -> bool {
        other.inf <= self.inf && self.sup <= other.sup
    }

    /// `self` lies in the topological interior of `other`.
    pub fn interior_of(self, other: RInterval) -> bool {
        other.inf < self.inf && self.sup < other.sup
    }

    pub fn hull(self, other: RInterval) -> RInterval {
        RInterval { inf: self.inf.min(other.inf), sup: self.sup.max(other.sup) }
    }

    pub fn intersect(self, other: RInterval) -> Option<RInterval> {
        let inf = self.inf.max(other.inf);
        let sup = self.sup.min(other.sup);
        (inf <= sup).then_some(RInterval { inf, sup })
    }

    pub fn is_positive(self) -> bool {
        self.inf > 0.0
    }

    pub fn is_negative(self) -> bool {
        self.sup < 0.0
    }

    /// Adds `[-t, t]`.
    pub fn inflate(self, t: f64) -> RInterval {
        let t = t.abs();
        RInterval { inf: sub_dn(self.inf, t), sup: add_up(self.sup, t) }
    }

    pub fn abs(self) -> RInterval {
        if self.inf >= 0.0 {
            self
        } else if self.sup <= 0.0 {
            RInterval { inf: -self.sup, sup: -self.inf }
        } else {
            RInterval { inf: 0.0, sup: self.mag() }
        }
    }

    pub fn sqr(self) -> RInterval {
        let a = self.abs();
        RInterval { inf: mul_dn(a.inf, a.inf), sup: mul_up(a.sup, a.sup) }
    }

    /// Square root of the nonnegative part; negative parts are clipped.
    pub fn sqrt(self) -> Result<RInterval> {
        if self.sup < 0.0 {
            return Err(Error::DomainError("sqrt of negative interval"));
        }
        Ok(RInterval { inf: sqrt_dn(self.inf.max(0.0)), sup: sqrt_up(self.sup) })
    }

    pub fn scale(self, s: f64) -> RInterval {
        if s >= 0.0 {
            RInterval { inf: mul_dn(self.inf, s), sup: mul_up(self.sup, s) }
        } else {
            RInterval { inf: mul_dn(self.sup, s), sup: mul_up(self.inf, s) }
        }
    }

    pub fn powi(self, k: u32) -> RInterval {
        if k == 0 {
            return RInterval::ONE;
        }
        if self.inf >= 0.0 {
            let (mut lo, mut hi) = (1.0f64, 1.0f64);
            for _ in 0..k {
                lo = mul_dn(lo, self.inf);
                hi = mul_up(hi, self.sup);
            }
            return RInterval { inf: lo, sup: hi };
        }
        let mut acc = RInterval::ONE;
        for _ in 0..k {
            acc = acc * self;
        }
        if k % 2 == 0 {
            RInterval { inf: acc.inf.max(0.0), sup: acc.sup }
        } else {
            acc
        }
    }

    pub fn recip(self) -> Result<RInterval> {
        RInterval::ONE.checked_div(self)
    }

    pub fn checked_div(self, b: RInterval) -> Result<RInterval> {
        if b.contains_zero() {
            return Err(Error::DivByZeroInterval);
        }
        let a = self;
        let (lo, hi) = if b.inf > 0.0 {
            let lo = if a.inf >= 0.0 { div_dn(a.inf, b.sup) } else { div_dn(a.inf, b.inf) };
            let hi = if a.sup >= 0.0 { div_up(a.sup, b.inf) } else { div_up(a.sup, b.sup) };
            (lo, hi)
        } else {
            let lo = if a.sup >= 0.0 { div_dn(a.sup, b.sup) } else { div_dn(a.sup, b.inf) };
            let hi = if a.inf >= 0.0 { div_up(a.inf, b.inf) } else { div_up(a.inf, b.sup) };
            (lo, hi)
        };
        Ok(RInterval { inf: lo, sup: hi })
    }
}

impl Add for RInterval {
    type Output = RInterval;
    #[inline]
    fn add(self, b: RInterval) -> RInterval {
        RInterval { inf: add_dn(self.inf, b.inf), sup: add_up(self.sup, b.sup) }
    }
}

impl Sub for RInterval {
    type Output = RInterval;
    #[inline]
    fn sub(self, b: RInterval) -> RInterval {
        RInterval { inf: sub_dn(self.inf, b.sup), sup: sub_up(self.sup, b.inf) }
    }
}

impl Neg for RInterval {
    type Output = RInterval;
    #[inline]
    fn neg(self) -> RInterval {
        RInterval { inf: -self.sup, sup: -self.inf }
    }
}

impl Mul for RInterval {
    type Output = RInterval;
    #[inline]
    fn mul(self, b: RInterval) -> RInterval {
        let a = self;
        if a.inf == a.sup {
            return b.scale(a.inf);
        }
        if b.inf == b.sup {
            return a.scale(b.inf);
        }
        let lo = mul_dn(a.inf, b.inf).min(mul_dn(a.inf, b.sup)).min(mul_dn(a.sup, b.inf)).min(mul_dn(a.sup, b.sup));
        let hi = mul_up(a.inf, b.inf).max(mul_up(a.inf, b.sup)).max(mul_up(a.sup, b.inf)).max(mul_up(a.sup, b.sup));
        RInterval { inf: lo, sup: hi }
    }
}

impl From<f64> for RInterval {
    fn from(x: f64) -> Self {
        RInterval::point(x)
    }
}

impl fmt::Display for RInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.inf, self.sup)
    }
}

pub fn r_add(a: RInterval, b: RInterval) -> RInterval {
    a + b
}

pub fn r_sub(a: RInterval, b: RInterval) -> RInterval {
    a - b
}

pub fn r_mul(a: RInterval, b: RInterval) -> RInterval {
    a * b
}

pub fn r_div(a: RInterval, b: RInterval) -> Result<RInterval> {
    a.checked_div(b)
}
