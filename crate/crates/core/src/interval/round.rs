//! Directed rounding emulated on top of round-to-nearest.
//!
//! Every operation computes the round-to-nearest result and then uses an
//! error-free transformation (TwoSum, FMA residual) to decide whether the
//! exact value lies above or below it. Only inexact results are moved by one
//! ulp, so exactly representable results stay exact. No FPU state is touched.

/// Below this magnitude FMA residuals may be inexact; fall back to an
/// unconditional one-ulp step.
const TINY: f64 = 1.0e-290;

#[inline]
fn down(x: f64) -> f64 {
    x.next_down()
}

#[inline]
fn up(x: f64) -> f64 {
    x.next_up()
}

#[inline]
fn overflow_dn(s: f64) -> f64 {
    if s > 0.0 {
        f64::MAX
    } else {
        f64::NEG_INFINITY
    }
}

#[inline]
fn overflow_up(s: f64) -> f64 {
    if s < 0.0 {
        f64::MIN
    } else {
        f64::INFINITY
    }
}

#[inline]
fn two_sum_err(a: f64, b: f64, s: f64) -> f64 {
    let bb = s - a;
    (a - (s - bb)) + (b - bb)
}

#[inline]
pub fn add_dn(a: f64, b: f64) -> f64 {
    let s = a + b;
    if !s.is_finite() {
        return if a.is_infinite() || b.is_infinite() { s } else { overflow_dn(s) };
    }
    if two_sum_err(a, b, s) < 0.0 {
        down(s)
    } else {
        s
    }
}

#[inline]
pub fn add_up(a: f64, b: f64) -> f64 {
    let s = a + b;
    if !s.is_finite() {
        return if a.is_infinite() || b.is_infinite() { s } else { overflow_up(s) };
    }
    if two_sum_err(a, b, s) > 0.0 {
        up(s)
    } else {
        s
    }
}

#[inline]
pub fn sub_dn(a: f64, b: f64) -> f64 {
    add_dn(a, -b)
}

#[inline]
pub fn sub_up(a: f64, b: f64) -> f64 {
    add_up(a, -b)
}

#[inline]
fn mul_residual(a: f64, b: f64, p: f64) -> Option<f64> {
    if p.abs() < TINY || a.abs() < TINY || b.abs() < TINY {
        None
    } else {
        Some(a.mul_add(b, -p))
    }
}

#[inline]
pub fn mul_dn(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    let p = a * b;
    if !p.is_finite() {
        return if a.is_infinite() || b.is_infinite() { p } else { overflow_dn(p) };
    }
    match mul_residual(a, b, p) {
        Some(e) if e >= 0.0 => p,
        Some(_) => down(p),
        None => down(p),
    }
}

#[inline]
pub fn mul_up(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    let p = a * b;
    if !p.is_finite() {
        return if a.is_infinite() || b.is_infinite() { p } else { overflow_up(p) };
    }
    match mul_residual(a, b, p) {
        Some(e) if e <= 0.0 => p,
        Some(_) => up(p),
        None => up(p),
    }
}

#[inline]
fn div_sign(a: f64, b: f64, q: f64) -> Option<f64> {
    if q.abs() < TINY || a.abs() < TINY || b.is_infinite() {
        return None;
    }
    // a - q*b is exact for the round-to-nearest quotient
    let r = (-q).mul_add(b, a);
    Some(if b > 0.0 { r } else { -r })
}

#[inline]
pub fn div_dn(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        return 0.0;
    }
    let q = a / b;
    if !q.is_finite() {
        return if a.is_infinite() { q } else { overflow_dn(q) };
    }
    match div_sign(a, b, q) {
        Some(e) if e >= 0.0 => q,
        _ => down(q),
    }
}

#[inline]
pub fn div_up(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        return 0.0;
    }
    let q = a / b;
    if !q.is_finite() {
        return if a.is_infinite() { q } else { overflow_up(q) };
    }
    match div_sign(a, b, q) {
        Some(e) if e <= 0.0 => q,
        _ => up(q),
    }
}

#[inline]
pub fn sqrt_dn(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let s = x.sqrt();
    if s.is_infinite() || x < TINY {
        return if s.is_infinite() { f64::MAX } else { down(s).max(0.0) };
    }
    let r = (-s).mul_add(s, x);
    if r >= 0.0 {
        s
    } else {
        down(s)
    }
}

#[inline]
pub fn sqrt_up(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let s = x.sqrt();
    if s.is_infinite() {
        return s;
    }
    if x < TINY {
        return up(s);
    }
    let r = (-s).mul_add(s, x);
    if r <= 0.0 {
        s
    } else {
        up(s)
    }
}
