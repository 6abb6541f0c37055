use std::f64::consts::PI;

use super::real::RInterval;
use super::round::{div_up, mul_dn, mul_up};

/// Terms kept in the sine/cosine Taylor polynomials.
const TAYLOR_TERMS: u32 = 10;

/// `std::f64::consts::PI` is the binary64 value just below π.
pub fn enclose_pi() -> RInterval {
    RInterval::new(PI, PI.next_up())
}

fn half_pi() -> RInterval {
    let p = enclose_pi();
    RInterval::new(p.inf() * 0.5, p.sup() * 0.5)
}

fn lower_factorial(n: u32) -> f64 {
    (2..=n).fold(1.0, |acc, k| mul_dn(acc, k as f64))
}

fn remainder(r: RInterval, order: u32) -> f64 {
    let m = r.mag();
    let mut p = 1.0;
    for _ in 0..order {
        p = mul_up(p, m);
    }
    div_up(p, lower_factorial(order))
}

fn sin_taylor(r: RInterval) -> RInterval {
    let s = r.sqr();
    let mut p = RInterval::ONE;
    for k in (1..=TAYLOR_TERMS).rev() {
        let d = ((2 * k) * (2 * k + 1)) as f64;
        let t = (s * p).checked_div(RInterval::point(d)).expect("nonzero divisor");
        p = RInterval::ONE - t;
    }
    (r * p).inflate(remainder(r, 2 * TAYLOR_TERMS + 3))
}

fn cos_taylor(r: RInterval) -> RInterval {
    let s = r.sqr();
    let mut p = RInterval::ONE;
    for k in (1..=TAYLOR_TERMS).rev() {
        let d = ((2 * k - 1) * (2 * k)) as f64;
        let t = (s * p).checked_div(RInterval::point(d)).expect("nonzero divisor");
        p = RInterval::ONE - t;
    }
    p.inflate(remainder(r, 2 * TAYLOR_TERMS + 2))
}

fn clamp_unit(x: RInterval) -> RInterval {
    x.intersect(RInterval::new(-1.0, 1.0)).unwrap_or(RInterval::new(-1.0, 1.0))
}

/// Encloses `(sin θ, cos θ)` for every point of `theta`.
pub fn enclose_sincos(theta: RInterval) -> (RInterval, RInterval) {
    let unit = RInterval::new(-1.0, 1.0);
    if !theta.inf().is_finite() || !theta.sup().is_finite() || theta.width() > 1.0 {
        return (unit, unit);
    }
    let q = (theta.mid() / (PI * 0.5)).round();
    if q.abs() > 1.0e12 {
        return (unit, unit);
    }
    let r = theta - half_pi().scale(q);
    let (s, c) = (sin_taylor(r), cos_taylor(r));
    let (s, c) = match (q as i64).rem_euclid(4) {
        0 => (s, c),
        1 => (c, -s),
        2 => (-s, -c),
        _ => (-c, s),
    };
    (clamp_unit(s), clamp_unit(c))
}
