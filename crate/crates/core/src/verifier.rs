//! End-to-end verification of the eigenpairs inside `Ω`, by Rayleigh–Ritz
//! or by the block Hankel pencil.

use std::fmt;
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::{CInterval, IMatrix, RInterval};
use crate::linalg::{
    hermitian_seeds, is_positive_definite, lambda_min_lower_bound, nearest_outside_gap, verify_eigenpairs_small,
    GapMethod, LinearEnclosure, SmallEigFailure,
};
use crate::moments::{
    assemble_reduced_moments, assemble_s, compute_c1, compute_c2, contour_from_interval, enclose_in_parts,
    hankel_from_moments, rr_pencil, select_n, solve_nodes_all, truncation_bound_moment, truncation_bound_s, Approach,
    Contour, NMode, ProblemSpec,
};

/// Machine-readable reason attached to a pair that is not fully verified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureReason {
    NotContracting,
    ClusterNotSeparated,
    ReducedPencilNotDefinite,
    PositiveDefiniteRequired,
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::NotContracting => "not_contracting",
            Self::ClusterNotSeparated => "cluster_not_separated",
            Self::ReducedPencilNotDefinite => "reduced_pencil_not_definite",
            Self::PositiveDefiniteRequired => "positive_definite_required",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairStatus {
    /// Everything that was requested is verified.
    Verified,
    /// The eigenvalue is verified but the eigenvector path failed.
    EigenvalueOnly(FailureReason),
    Failed(FailureReason),
}

impl PairStatus {
    pub fn eigenvalue_verified(&self) -> bool {
        !matches!(self, PairStatus::Failed(_))
    }
}

impl fmt::Display for PairStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairStatus::Verified => f.write_str("verified"),
            PairStatus::EigenvalueOnly(r) => write!(f, "eigenvalue_only:{r}"),
            PairStatus::Failed(r) => write!(f, "failed:{r}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifiedEigenpair {
    pub lambda: RInterval,
    pub x: Option<IMatrix>,
    /// Position in midpoint order.
    pub index: usize,
    pub status: PairStatus,
    /// Shared tag of pairs whose eigenvalue enclosures overlap.
    pub cluster: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NodeStatus {
    pub converged: bool,
    pub contraction: f64,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct StageTimings {
    pub gap: f64,
    pub select: f64,
    pub nodes: f64,
    pub assemble: f64,
    pub reduced: f64,
    pub vectors: f64,
    pub total: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub approach: &'static str,
    pub n_used: usize,
    pub n_eigenvalue_rule: usize,
    pub n_eigenvector_rule: Option<usize>,
    pub retried: bool,
    pub gap_bound: f64,
    pub beta: f64,
    pub trunc_m: Vec<f64>,
    pub trunc_s: Vec<f64>,
    pub nodes: Vec<NodeStatus>,
    /// Why the eigenvector path did not run, if it was requested.
    pub vector_error: Option<FailureReason>,
    pub timings: StageTimings,
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub want_vectors: bool,
    pub gap_method: GapMethod,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { want_vectors: false, gap_method: GapMethod::Bisection }
    }
}

pub fn verify_rr(spec: &ProblemSpec, want_vectors: bool) -> Result<(Vec<VerifiedEigenpair>, RunReport)> {
    verify(spec, Approach::RayleighRitz, &VerifyOptions { want_vectors, ..Default::default() })
}

pub fn verify_hankel(spec: &ProblemSpec, want_vectors: bool) -> Result<(Vec<VerifiedEigenpair>, RunReport)> {
    verify(spec, Approach::Hankel, &VerifyOptions { want_vectors, ..Default::default() })
}

/// `[x_i] = [S_in][y_i]` for every `y_i`.
pub fn map_eigenvectors(s_in: &IMatrix, ys: &[IMatrix]) -> Result<Vec<IMatrix>> {
    ys.iter().map(|y| s_in.matmul(y)).collect()
}

fn secs(t: Instant) -> f64 {
    t.elapsed().as_secs_f64()
}

/// Inflates block `(k, l)` of an `LM × LM` matrix by `trunc[k + l + shift]`.
fn inflate_blocks(raw: &IMatrix, l: usize, trunc: &[f64], shift: usize) -> IMatrix {
    enclose_in_parts(raw, |i, j| trunc[i / l + j / l + shift])
}

/// Runs the node solves, retrying once with `N + 2` when a node fails.
fn node_pass(spec: &ProblemSpec, n: usize) -> Result<(Contour, Vec<LinearEnclosure>, bool)> {
    let contour = contour_from_interval(spec.lo, spec.hi, n);
    let y = solve_nodes_all(spec, &contour)?;
    if y.iter().all(|e| e.converged) {
        return Ok((contour, y, false));
    }
    let contour = contour_from_interval(spec.lo, spec.hi, n + 2);
    let y = solve_nodes_all(spec, &contour)?;
    if let Some(j) = y.iter().position(|e| !e.converged) {
        return Err(Error::NodeSolveFailed(j));
    }
    Ok((contour, y, true))
}

/// Full pipeline. Whole-run failures (gap, node solves) are errors;
/// failures of single pairs are reported in their status.
pub fn verify(
    spec: &ProblemSpec,
    approach: Approach,
    opts: &VerifyOptions,
) -> Result<(Vec<VerifiedEigenpair>, RunReport)> {
    let t_total = Instant::now();
    let mut timings = StageTimings::default();
    spec.validate()?;
    let spec = ProblemSpec { a: spec.a.hermitian_part()?, b: spec.b.hermitian_part()?, ..spec.clone() };
    let (l, mm) = (spec.block_size, spec.num_moments);

    let t = Instant::now();
    let probe = contour_from_interval(spec.lo, spec.hi, 1);
    let gap = nearest_outside_gap(&spec, &probe, &opts.gap_method)?;
    let beta = lambda_min_lower_bound(&spec.b)?;
    timings.gap = secs(t);

    let t = Instant::now();
    let c1 = compute_c1(&spec, gap)?;
    let mode = match approach {
        Approach::RayleighRitz => NMode::Eigenvalues,
        Approach::Hankel => NMode::HankelEigenvalues,
    };
    let n_val = select_n(mode, spec.delta, gap, probe.rho, c1, spec.r_bound - spec.m, mm)?;
    let mut vector_error = None;
    let n_vec = if !opts.want_vectors {
        None
    } else if beta > 0.0 {
        let c2 = compute_c2(&spec, gap, beta)?;
        Some(select_n(NMode::Eigenvectors, spec.delta, gap, probe.rho, c2, spec.n() - spec.m, mm)?)
    } else {
        vector_error = Some(FailureReason::PositiveDefiniteRequired);
        None
    };
    let n = n_val.max(n_vec.unwrap_or(0));
    timings.select = secs(t);

    let t = Instant::now();
    let (contour, y, retried) = node_pass(&spec, n)?;
    timings.nodes = secs(t);

    let t = Instant::now();
    let trunc_m =
        (0..2 * mm).map(|k| truncation_bound_moment(k, &contour, gap, &spec, approach)).collect::<Result<Vec<_>>>()?;
    let real = spec.is_real();
    let need_s = approach == Approach::RayleighRitz || n_vec.is_some();
    let s_full = if need_s { Some(assemble_s(&y, &contour, mm, real)?.1) } else { None };
    let (hlt_raw, h_raw) = match approach {
        Approach::RayleighRitz => rr_pencil(s_full.as_ref().expect("S assembled"), &spec, contour.gamma)?,
        Approach::Hankel => hankel_from_moments(&assemble_reduced_moments(&y, &contour, &spec)?, mm)?,
    };
    let hlt_in = inflate_blocks(&hlt_raw, l, &trunc_m, 1).hermitian_part()?;
    let h_in = inflate_blocks(&h_raw, l, &trunc_m, 0).hermitian_part()?;
    timings.assemble = secs(t);

    let t = Instant::now();
    let gamma = RInterval::point(contour.gamma);
    let mut pairs: Vec<(RInterval, Option<IMatrix>, PairStatus)> = if !is_positive_definite(&h_in) {
        let fail = PairStatus::Failed(FailureReason::ReducedPencilNotDefinite);
        vec![(RInterval::new(f64::NEG_INFINITY, f64::INFINITY), None, fail); spec.m]
    } else {
        let seeds = hermitian_seeds(&hlt_in.mid(), &h_in.mid())?;
        verify_eigenpairs_small(&hlt_in, &h_in, &seeds)?
            .into_iter()
            .map(|e| match e.failure {
                None => (gamma + e.lambda, Some(e.y), PairStatus::Verified),
                Some(f) => {
                    let reason = match f {
                        SmallEigFailure::NotContracting => FailureReason::NotContracting,
                        SmallEigFailure::ClusterNotSeparated => FailureReason::ClusterNotSeparated,
                    };
                    (e.lambda, None, PairStatus::Failed(reason))
                }
            })
            .collect()
    };
    timings.reduced = secs(t);

    let t = Instant::now();
    let mut trunc_s = Vec::new();
    if let (Some(_), Some(s_full)) = (n_vec, s_full.as_ref()) {
        trunc_s = (0..mm).map(|k| truncation_bound_s(k, &contour, gap, &spec, beta)).collect::<Result<Vec<_>>>()?;
        let s_in = enclose_in_parts(s_full, |_, j| trunc_s[j / l]);
        for p in pairs.iter_mut().filter(|p| p.2 == PairStatus::Verified) {
            let y = p.1.take().expect("verified pair carries y");
            p.1 = Some(s_in.matmul(&y)?);
        }
    } else {
        for p in pairs.iter_mut() {
            p.1 = None;
            if let (Some(reason), PairStatus::Verified) = (vector_error, p.2) {
                p.2 = PairStatus::EigenvalueOnly(reason);
            }
        }
    }
    timings.vectors = secs(t);

    let mut out = order_and_tag(pairs);
    for (i, p) in out.iter_mut().enumerate() {
        p.index = i;
    }
    timings.total = secs(t_total);
    let report = RunReport {
        approach: approach.name(),
        n_used: contour.n_nodes,
        n_eigenvalue_rule: n_val,
        n_eigenvector_rule: n_vec,
        retried,
        gap_bound: gap,
        beta,
        trunc_m,
        trunc_s,
        nodes: y.iter().map(|e| NodeStatus { converged: e.converged, contraction: e.contraction_factor }).collect(),
        vector_error,
        timings,
    };
    Ok((out, report))
}

/// Sorts by midpoint (failed pairs last) and tags overlapping verified
/// enclosures with a shared cluster id.
fn order_and_tag(pairs: Vec<(RInterval, Option<IMatrix>, PairStatus)>) -> Vec<VerifiedEigenpair> {
    let mut out: Vec<VerifiedEigenpair> = pairs
        .into_iter()
        .map(|(lambda, x, status)| VerifiedEigenpair { lambda, x, index: 0, status, cluster: None })
        .collect();
    out.sort_by(|a, b| {
        let key = |p: &VerifiedEigenpair| (!p.status.eigenvalue_verified(), p.lambda.mid());
        let (ka, kb) = (key(a), key(b));
        ka.0.cmp(&kb.0).then(ka.1.total_cmp(&kb.1))
    });
    let mut next = 0;
    for i in 1..out.len() {
        let (prev, cur) = (&out[i - 1], &out[i]);
        if prev.status.eigenvalue_verified()
            && cur.status.eigenvalue_verified()
            && prev.lambda.intersect(cur.lambda).is_some()
        {
            let tag = match prev.cluster {
                Some(t) => t,
                None => {
                    next += 1;
                    next - 1
                }
            };
            out[i - 1].cluster = Some(tag);
            out[i].cluster = Some(tag);
        }
    }
    out
}

/// Largest entry radius of an eigenvector enclosure.
pub fn max_entry_radius(x: &IMatrix) -> f64 {
    x.data().iter().map(|z: &CInterval| z.rad()).fold(0.0, f64::max)
}
