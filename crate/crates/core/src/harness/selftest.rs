//! Quick invariant checks runnable from the command line. Each check prints
//! one line and the run passes when all of them do.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::interval::{CInterval, CMatrix, IMatrix, RInterval};
use crate::linalg::krawczyk_solve;
use crate::moments::{d_factor_oracle, Approach};
use crate::verifier::{verify, PairStatus, VerifyOptions};

use super::generators::gen_tridiag;
use super::reference::BandPencil;

/// `a + b` and `a·b` are exactly `s + e` for the error terms below, so
/// containment of the exact value can be decided in binary64.
fn contains_exact(x: RInterval, s: f64, e: f64) -> bool {
    let lo_ok = x.inf() < s || (x.inf() == s && e >= 0.0);
    let hi_ok = x.sup() > s || (x.sup() == s && e <= 0.0);
    lo_ok && hi_ok
}

fn scalar_ops(samples: usize) -> bool {
    let mut rng = ChaCha20Rng::seed_from_u64(42);
    let draw = |rng: &mut ChaCha20Rng| {
        let m: f64 = rng.random_range(-1.0..1.0);
        m * 2f64.powi(rng.random_range(-60..60))
    };
    (0..samples).all(|_| {
        let (a, b) = (draw(&mut rng), draw(&mut rng));
        let (ia, ib) = (RInterval::point(a), RInterval::point(b));
        let s = a + b;
        let bb = s - a;
        let e_add = (a - (s - bb)) + (b - bb);
        let p = a * b;
        let e_mul = a.mul_add(b, -p);
        contains_exact(ia + ib, s, e_add) && contains_exact(ia * ib, p, e_mul)
    })
}

fn linear_solves(count: usize) -> bool {
    let mut rng = ChaCha20Rng::seed_from_u64(7);
    (0..count).all(|_| {
        let n = rng.random_range(2..12);
        let cv: Vec<Complex64> = (0..n * n)
            .map(|k| {
                let d = if k / n == k % n { 4.0 } else { 0.0 };
                Complex64::new(d + rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
            })
            .collect();
        let xv: Vec<Complex64> = (0..n).map(|_| Complex64::new(rng.random_range(-1.0..1.0), 0.0)).collect();
        let (Ok(c), Ok(x)) = (CMatrix::from_vec(n, n, cv), CMatrix::from_vec(n, 1, xv)) else { return false };
        // rhs = C·x exactly enclosed, so x must be inside the enclosure
        let rhs = IMatrix::from_point(&c).matmul(&IMatrix::from_point(&x));
        match rhs.and_then(|r| krawczyk_solve(&IMatrix::from_point(&c), &r)) {
            Ok(e) => e.x.contains_point(&x),
            Err(_) => false,
        }
    })
}

fn filter_limits() -> bool {
    let mut prev = (f64::INFINITY, f64::INFINITY);
    [8, 16, 32, 64].iter().all(|&n| {
        let din = (d_factor_oracle(1.25, 1.0, 0.5, n, true).unwrap() - 1.0).abs();
        let dout = d_factor_oracle(2.0, 1.0, 0.5, n, false).unwrap().abs();
        let ok = din < prev.0 && dout < prev.1;
        prev = (din, dout);
        ok
    }) && prev.0 < 1e-12
        && prev.1 < 1e-12
}

fn diagonal_pencil() -> bool {
    let d = [0.9, 1.0, 1.1, 5.0];
    let a = IMatrix::from_fn(4, 4, |i, j| if i == j { d[i].into() } else { CInterval::ZERO });
    let v = CMatrix::from_real(4, 3, &[1.0, 0.2, 0.1, 0.3, 1.0, -0.2, 0.5, 0.4, 1.0, 0.7, -0.6, 0.9]);
    let Ok(v) = v else { return false };
    let spec = crate::moments::ProblemSpec {
        a,
        b: IMatrix::identity(4),
        lo: 0.85,
        hi: 1.15,
        m: 3,
        block_size: 3,
        num_moments: 1,
        v,
        delta: 1e-15,
        r_bound: 4,
    };
    [Approach::RayleighRitz, Approach::Hankel].iter().all(|&ap| match verify(&spec, ap, &VerifyOptions::default()) {
        Ok((pairs, _)) => {
            pairs.iter().zip(&d[..3]).all(|(p, &e)| p.status == PairStatus::Verified && p.lambda.contains(e))
        }
        Err(_) => false,
    })
}

fn small_tridiag() -> bool {
    let Ok(g) = gen_tridiag(5, 1) else { return false };
    let Ok(pencil) = BandPencil::from_intervals(&g.spec.a, &g.spec.b) else { return false };
    let reference = pencil.eigenvalues_in(g.spec.lo, g.spec.hi);
    [Approach::RayleighRitz, Approach::Hankel].iter().all(|&ap| match verify(&g.spec, ap, &VerifyOptions::default()) {
        Ok((pairs, _)) => {
            pairs.len() == reference.len()
                && pairs.iter().zip(&reference).all(|(p, &r)| p.status == PairStatus::Verified && p.lambda.contains(r))
        }
        Err(_) => false,
    })
}

/// Runs all checks, printing one `PASS`/`FAIL` line each.
pub fn selftest() -> bool {
    let checks: [(&str, fn() -> bool); 5] = [
        ("interval scalar ops contain exact results", || scalar_ops(20_000)),
        ("krawczyk enclosures contain exact solutions", || linear_solves(50)),
        ("quadrature filter tends to 1 inside and 0 outside", filter_limits),
        ("diagonal pencil enclosed by both approaches", diagonal_pencil),
        ("tridiagonal pencil matches the reference eigenvalues", small_tridiag),
    ];
    let mut ok = true;
    for (name, check) in checks {
        let pass = check();
        println!("{} {name}", if pass { "PASS" } else { "FAIL" });
        ok &= pass;
    }
    ok
}
