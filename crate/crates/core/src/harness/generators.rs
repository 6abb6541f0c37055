//! Test-problem families: the 1-D oscillator pencil with a perturbed mass
//! matrix, the pentadiagonal Toeplitz pencil with an adjustable last mass,
//! and Gaussian probe matrices.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::round::{add_up, div_up, mul_up, sub_dn};
use crate::interval::{CInterval, CMatrix, IMatrix};
use crate::moments::ProblemSpec;

use super::reference::BandPencil;
use super::rng::{GaussianStream, STREAM_B, STREAM_V};

/// Quadrature tolerance used by every generated problem.
pub const DEFAULT_DELTA: f64 = 1e-15;
/// Variance of the tridiagonal mass entries.
pub const TRIDIAG_VARIANCE: f64 = 1e-7;

/// How the contour radius of a tridiagonal instance was chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RadiusRule {
    /// Midpoint between the 4th and 5th nearest analytic eigenvalue
    /// distances, each moved by the perturbation slack.
    AnalyticWithSlack,
    /// Slack too large for the spacing: midpoint of the reference
    /// eigenvalue distances of the actual pencil.
    Reference,
}

#[derive(Clone, Debug)]
pub struct Generated {
    pub spec: ProblemSpec,
    pub name: String,
    pub radius_rule: Option<RadiusRule>,
}

fn diag(d: &[f64]) -> IMatrix {
    IMatrix::from_fn(d.len(), d.len(), |i, j| if i == j { d[i].into() } else { CInterval::ZERO })
}

fn toeplitz(n: usize, band: &[f64]) -> IMatrix {
    IMatrix::from_fn(n, n, |i, j| match band.get(i.abs_diff(j)) {
        Some(&v) if v != 0.0 => v.into(),
        _ => CInterval::ZERO,
    })
}

/// `n × L` matrix of independent standard Gaussians from the probe stream.
pub fn gen_probe(n: usize, l: usize, seed: u64) -> CMatrix {
    let mut g = GaussianStream::new(seed, STREAM_V);
    let vals: Vec<Complex64> = (0..n * l).map(|_| Complex64::new(g.next_standard(), 0.0)).collect();
    CMatrix::from_vec(n, l, vals).expect("sizes agree")
}

/// Mass diagonal of the tridiagonal family: `N(1, 1e−7)` entries.
pub fn tridiag_mass(n: usize, seed: u64) -> Vec<f64> {
    let mut g = GaussianStream::new(seed, STREAM_B);
    let sd = TRIDIAG_VARIANCE.sqrt();
    (0..n).map(|_| g.next_normal(1.0, sd)).collect()
}

/// `A = tridiag(−1, 2, −1)` of size `2^ℓ`, `B` a random positive diagonal,
/// and a circle around 2 holding exactly four eigenvalues (`L = M = 2`).
pub fn gen_tridiag(ell: u32, seed: u64) -> Result<Generated> {
    if !(5..=16).contains(&ell) {
        return Err(Error::InvalidSpec(format!("size exponent {ell} outside 5..=16")));
    }
    let n = 1usize << ell;
    let a = toeplitz(n, &[2.0, -1.0]);
    let bd = tridiag_mass(n, seed);
    let b = diag(&bd);
    let gamma = 2.0;

    // |λ_i(A, B) − λ_i(A)| ≤ |λ_i(A)|·‖B − I‖₂/λ_min(B)
    let db = bd.iter().map(|x| (x - 1.0).abs()).fold(0.0, f64::max);
    let bmin = bd.iter().copied().fold(f64::INFINITY, f64::min);
    let rel = if bmin > 0.0 { div_up(db, bmin) } else { f64::INFINITY };
    let h = std::f64::consts::PI / (n + 1) as f64;
    let mut analytic: Vec<f64> = (1..=n).map(|k| 2.0 - 2.0 * (k as f64 * h).cos()).collect();
    analytic.sort_by(|x, y| (x - gamma).abs().total_cmp(&(y - gamma).abs()));
    let slack = |v: f64| mul_up(v.abs(), rel) + 1e-14;
    let d4 = add_up((analytic[3] - gamma).abs(), slack(analytic[3]));
    let d5 = sub_dn((analytic[4] - gamma).abs(), slack(analytic[4]));
    let (rho, rule) = if d4 < d5 {
        (0.5 * (d4 + d5), RadiusRule::AnalyticWithSlack)
    } else {
        let pencil = BandPencil::from_intervals(&a, &b)?;
        let mut ev = pencil.eigenvalues_in(gamma - 1.0, gamma + 1.0);
        ev.sort_by(|x, y| (x - gamma).abs().total_cmp(&(y - gamma).abs()));
        if ev.len() < 5 {
            return Err(Error::InvalidSpec("fewer than five reference eigenvalues near 2".into()));
        }
        (0.5 * ((ev[3] - gamma).abs() + (ev[4] - gamma).abs()), RadiusRule::Reference)
    };
    let spec = ProblemSpec {
        a,
        b,
        lo: gamma - rho,
        hi: gamma + rho,
        m: 4,
        block_size: 2,
        num_moments: 2,
        v: gen_probe(n, 2, seed),
        delta: DEFAULT_DELTA,
        r_bound: n,
    };
    Ok(Generated { spec, name: format!("tridiag_l{ell}"), radius_rule: Some(rule) })
}

/// `A = pentadiag(1, 2, 3, 2, 1)` of size 100, `B = diag(1, …, 1, b₁₀₀)`,
/// `Ω = [0.95, 1.05]` with six eigenvalues, `L = 3`, `M = 2`.
pub fn gen_pentadiag(b100: f64, seed: u64) -> Result<Generated> {
    if !(b100 == 0.0 || (1e-16..=1.0).contains(&b100)) {
        return Err(Error::InvalidSpec(format!("b100 = {b100} outside {{0}} ∪ [1e-16, 1]")));
    }
    let n = 100;
    let mut bd = vec![1.0; n];
    bd[n - 1] = b100;
    let rank = bd.iter().filter(|&&x| x != 0.0).count();
    let spec = ProblemSpec {
        a: toeplitz(n, &[3.0, 2.0, 1.0]),
        b: diag(&bd),
        lo: 0.95,
        hi: 1.05,
        m: 6,
        block_size: 3,
        num_moments: 2,
        v: gen_probe(n, 3, seed),
        delta: DEFAULT_DELTA,
        r_bound: rank,
    };
    Ok(Generated { spec, name: format!("pentadiag_b{b100:e}"), radius_rule: None })
}
