//! Truncation bounds for the out-parts of the discretized moments and of the
//! transformation matrix, and the exact quadrature filter used as an oracle.

use crate::error::{Error, Result};
use crate::interval::{IMatrix, RInterval};

use super::contour::Contour;
use super::problem::ProblemSpec;
use super::Approach;

/// `q^p / (1 − q^p)` with `q = ρ/gap`, as an interval.
fn geometric_tail(rho: f64, gap: f64, p: usize) -> Result<RInterval> {
    let q = RInterval::point(rho)
        .checked_div(RInterval::point(gap))
        .map_err(|_| Error::GapNotCertified("zero gap".into()))?;
    let qp = q.powi(p as u32);
    let den = RInterval::ONE - qp;
    if !den.is_positive() {
        return Err(Error::GapNotCertified(format!("ratio ρ/gap = {} is not below one", q.sup())));
    }
    qp.checked_div(den)
}

fn check(contour: &Contour, gap: f64, spec: &ProblemSpec) -> Result<()> {
    if 2 * spec.num_moments > contour.n_nodes {
        return Err(Error::InvalidSpec(format!(
            "need N > 2M − 1, got N = {} with M = {}",
            contour.n_nodes, spec.num_moments
        )));
    }
    if !(gap > contour.rho) {
        return Err(Error::GapNotCertified(format!("gap {gap} does not exceed radius {}", contour.rho)));
    }
    Ok(())
}

/// Entrywise bound on the out-part of the `k`-th reduced moment.
///
/// For Rayleigh–Ritz the out-part carries the squared filter `d²`, giving
/// `(r−m)·g^k·q^{2N}/(1−q^{2N})·‖VᴴBV‖_F` when `N` is even. With odd `N`
/// and eigenvalues on both sides of `γ` that form is not an upper bound, so
/// the square of the one-sided tail is used instead. The Hankel moments
/// carry `d` and use `q^N/(1−q^N)`.
pub fn truncation_bound_moment(
    k: usize,
    contour: &Contour,
    gap: f64,
    spec: &ProblemSpec,
    approach: Approach,
) -> Result<f64> {
    check(contour, gap, spec)?;
    let n = contour.n_nodes;
    let tail = match approach {
        Approach::RayleighRitz if n % 2 == 0 => geometric_tail(contour.rho, gap, 2 * n)?,
        Approach::RayleighRitz => geometric_tail(contour.rho, gap, n)?.sqr(),
        Approach::Hankel => geometric_tail(contour.rho, gap, n)?,
    };
    let deficit = RInterval::point((spec.r_bound - spec.m) as f64);
    let vbv = RInterval::point(spec.vbv()?.fro_norm_sup());
    let t = deficit * RInterval::point(gap).powi(k as u32) * tail * vbv;
    Ok(t.sup())
}

/// Entrywise bound on the out-part of the `k`-th transformation block,
/// `(n−m)·g^k·q^N/(1−q^N)·(‖VᴴBV‖_F/β)^{1/2}`.
pub fn truncation_bound_s(k: usize, contour: &Contour, gap: f64, spec: &ProblemSpec, beta: f64) -> Result<f64> {
    if !(beta > 0.0) {
        return Err(Error::PositiveDefiniteRequired);
    }
    check(contour, gap, spec)?;
    let tail = geometric_tail(contour.rho, gap, contour.n_nodes)?;
    let deficit = RInterval::point((spec.n() - spec.m) as f64);
    let vbv = RInterval::point(spec.vbv()?.fro_norm_sup());
    let root = vbv.checked_div(RInterval::point(beta))?.sqrt()?;
    let t = deficit * RInterval::point(gap).powi(k as u32) * tail * root;
    Ok(t.sup())
}

/// Inflates every entry of `raw` by `[−t, t]` in both parts, where `t` is
/// the truncation bound for that entry.
pub fn enclose_in_parts(raw: &IMatrix, trunc: impl Fn(usize, usize) -> f64) -> IMatrix {
    IMatrix::from_fn(raw.rows(), raw.cols(), |i, j| {
        let t = trunc(i, j);
        if t == 0.0 {
            raw[(i, j)]
        } else {
            raw[(i, j)].inflate(t)
        }
    })
}

fn check_side(lambda: f64, gamma: f64, rho: f64, inside: bool) -> Result<f64> {
    let mu = lambda - gamma;
    if mu.abs() == rho {
        return Err(Error::OnContour);
    }
    if (mu.abs() < rho) != inside {
        return Err(Error::InvalidSpec(format!(
            "λ = {lambda} is {} the contour",
            if inside { "outside" } else { "inside" }
        )));
    }
    Ok(mu)
}

/// Filter value `d^{(N)}` that the trapezoidal rule with nodes
/// `θ_j = (2j−1)π/N` applies to an eigencomponent at `λ`:
/// `1/(1 + ((λ−γ)/ρ)^N)` inside and `(ρ/(λ−γ))^N/(1 + (ρ/(λ−γ))^N)` outside.
/// Floating point; test oracle only.
pub fn d_factor_oracle(lambda: f64, gamma: f64, rho: f64, n: usize, inside: bool) -> Result<f64> {
    let mu = check_side(lambda, gamma, rho, inside)?;
    Ok(if inside {
        1.0 / (1.0 + (mu / rho).powi(n as i32))
    } else {
        let x = (rho / mu).powi(n as i32);
        x / (1.0 + x)
    })
}

/// Same filter for unshifted nodes `θ_j = 2jπ/N`:
/// `1/(1 − ((λ−γ)/ρ)^N)` inside and `−(ρ/(λ−γ))^N/(1 − (ρ/(λ−γ))^N)` outside.
pub fn d_factor_unshifted(lambda: f64, gamma: f64, rho: f64, n: usize, inside: bool) -> Result<f64> {
    let mu = check_side(lambda, gamma, rho, inside)?;
    Ok(if inside {
        1.0 / (1.0 - (mu / rho).powi(n as i32))
    } else {
        let x = (rho / mu).powi(n as i32);
        -x / (1.0 - x)
    })
}
