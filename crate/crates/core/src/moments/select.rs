use crate::error::{Error, Result};
use crate::interval::round::{div_up, mul_up, sqrt_up};
use crate::interval::RInterval;

use super::problem::ProblemSpec;

/// Which quadrature-error inequality drives the choice of `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NMode {
    /// Rayleigh–Ritz eigenvalues: the moment bound decays like `q^{2N}`.
    Eigenvalues,
    /// Eigenvectors: the transformation-matrix bound decays like `q^N`.
    Eigenvectors,
    /// Hankel eigenvalues: the moment bound decays like `q^N`.
    HankelEigenvalues,
}

/// `max_{k ≤ kmax} gap^k`, rounded upward.
fn max_power(gap: f64, kmax: usize) -> f64 {
    if gap <= 1.0 {
        1.0
    } else {
        RInterval::point(gap).powi(kmax as u32).sup()
    }
}

/// `c₁ = ‖VᴴBV‖_F · max_{k ≤ 2M−1} gap^k`, rounded upward.
pub fn compute_c1(spec: &ProblemSpec, gap: f64) -> Result<f64> {
    if !(gap > 0.0) {
        return Err(Error::GapNotCertified(format!("nonpositive gap {gap}")));
    }
    let f = spec.vbv()?.fro_norm_sup();
    Ok(mul_up(f, max_power(gap, 2 * spec.num_moments - 1)))
}

/// `c₂ = (‖VᴴBV‖_F / β)^{1/2} · max_{k ≤ M−1} gap^k`, rounded upward.
pub fn compute_c2(spec: &ProblemSpec, gap: f64, beta: f64) -> Result<f64> {
    if !(beta > 0.0) {
        return Err(Error::PositiveDefiniteRequired);
    }
    if !(gap > 0.0) {
        return Err(Error::GapNotCertified(format!("nonpositive gap {gap}")));
    }
    let f = spec.vbv()?.fro_norm_sup();
    Ok(mul_up(sqrt_up(div_up(f, beta)), max_power(gap, spec.num_moments - 1)))
}

/// Smallest `N` with `f · ln(δ/(c·deficit + δ)) / ln(ρ/gap) ≤ N`, where
/// `f = ½` for [`NMode::Eigenvalues`] and 1 otherwise, raised to `N ≥ 2M`.
pub fn select_n(
    mode: NMode,
    delta: f64,
    gap: f64,
    rho: f64,
    c: f64,
    deficit: usize,
    num_moments: usize,
) -> Result<usize> {
    if !(rho < gap) {
        return Err(Error::GapNotCertified(format!("radius {rho} is not below gap {gap}")));
    }
    if !(delta > 0.0) {
        return Err(Error::InvalidSpec(format!("delta must be positive, got {delta}")));
    }
    let raw = n_bound(mode, delta, gap, rho, c, deficit);
    let n = if raw <= 0.0 { 0 } else { raw.ceil() as usize };
    Ok(n.max(2 * num_moments))
}

/// Real-valued right-hand side of the `N` inequality.
pub fn n_bound(mode: NMode, delta: f64, gap: f64, rho: f64, c: f64, deficit: usize) -> f64 {
    let cd = c * deficit as f64;
    // ln(δ/(cd+δ)) = −ln(1 + cd/δ)
    let num = -(cd / delta).ln_1p();
    let den = (rho / gap).ln();
    let f = if mode == NMode::Eigenvalues { 0.5 } else { 1.0 };
    f * num / den
}
