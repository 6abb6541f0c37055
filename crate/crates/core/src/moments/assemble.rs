//! Node solves and assembly of the transformation matrix, reduced moments
//! and the two reduced pencils.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::interval::{CInterval, IMatrix, RInterval};
use crate::linalg::{krawczyk_enclose, LinearEnclosure};

use super::contour::Contour;
use super::problem::ProblemSpec;

/// Environment variable capping the node-solve thread count.
pub const THREADS_ENV: &str = "MOMENT_VERIFY_THREADS";

/// Everything produced between the node solves and the reduced
/// eigenproblem.
#[derive(Clone, Debug)]
pub struct MomentSet {
    pub y: Vec<LinearEnclosure>,
    pub s_blocks: Vec<IMatrix>,
    pub s_full: IMatrix,
    pub red_m: Vec<IMatrix>,
    pub hlt_in: IMatrix,
    pub h_in: IMatrix,
    pub trunc_m: Vec<f64>,
    pub trunc_s: Vec<f64>,
}

/// `z·B − A` as an interval matrix; entries zero in both stay exact zeros.
pub fn shifted_matrix(spec: &ProblemSpec, z: CInterval) -> IMatrix {
    let (a, b) = (&spec.a, &spec.b);
    IMatrix::from_fn(a.rows(), a.cols(), |i, j| {
        let (aij, bij) = (a[(i, j)], b[(i, j)]);
        match (aij.is_zero(), bij.is_zero()) {
            (true, true) => CInterval::ZERO,
            (true, false) => z * bij,
            (false, true) => -aij,
            (false, false) => z * bij - aij,
        }
    })
}

fn thread_pool() -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = std::env::var(THREADS_ENV).ok().and_then(|s| s.trim().parse::<usize>().ok()) {
        builder = builder.num_threads(t.max(1));
    }
    builder.build().map_err(|e| Error::InvalidSpec(format!("thread pool: {e}")))
}

/// Enclosures of `Y_j = (z_j B − A)⁻¹ B V` for every node, including
/// non-converged ones. For real problems only the upper half plane is
/// solved; mirrored nodes take the conjugate enclosure.
pub fn solve_nodes_all(spec: &ProblemSpec, contour: &Contour) -> Result<Vec<LinearEnclosure>> {
    let bv = spec.bv()?;
    let n_nodes = contour.n_nodes;
    let mirrored = spec.is_real();
    let count = if mirrored { n_nodes.div_ceil(2) } else { n_nodes };
    let pool = thread_pool()?;
    let solved: Vec<Result<LinearEnclosure>> = pool.install(|| {
        (0..count).into_par_iter().map(|j| krawczyk_enclose(&shifted_matrix(spec, contour.nodes[j]), &bv)).collect()
    });
    let mut out: Vec<LinearEnclosure> = solved.into_iter().collect::<Result<_>>()?;
    if mirrored {
        for j in count..n_nodes {
            let src = &out[contour.mirror(j)];
            out.push(LinearEnclosure {
                x: src.x.map(|z| z.conj()),
                converged: src.converged,
                contraction_factor: src.contraction_factor,
            });
        }
    }
    Ok(out)
}

/// Node solves; the first non-converged node is an error.
pub fn solve_at_nodes(spec: &ProblemSpec, contour: &Contour) -> Result<Vec<LinearEnclosure>> {
    let y = solve_nodes_all(spec, contour)?;
    if let Some(j) = y.iter().position(|e| !e.converged) {
        return Err(Error::NodeSolveFailed(j));
    }
    Ok(y)
}

/// `Σ_j w_{jk} P_j` in ascending `j`. With conjugate pairs the sum is
/// `Σ_{j < N/2} 2·Re(w_{jk} P_j)` plus the real part of a middle node, whose
/// exact value is real.
fn quadrature_sum(p: &[IMatrix], contour: &Contour, k: usize, real: bool) -> IMatrix {
    let (rows, cols) = (p[0].rows(), p[0].cols());
    let mut acc = IMatrix::zeros(rows, cols);
    let n = p.len();
    let two = RInterval::point(2.0);
    let terms = if real { n.div_ceil(2) } else { n };
    for (j, pj) in p.iter().enumerate().take(terms) {
        let w = contour.weight(j, k);
        let middle = real && n % 2 == 1 && j == n / 2;
        for i in 0..rows {
            for c in 0..cols {
                let t = w * pj[(i, c)];
                acc[(i, c)] = if !real {
                    acc[(i, c)] + t
                } else if middle {
                    acc[(i, c)] + CInterval::real(t.re)
                } else {
                    acc[(i, c)] + CInterval::real(t.re * two)
                };
            }
        }
    }
    acc
}

/// `S_k = Σ_j w_{jk} Y_j` for `k < M` and their horizontal concatenation.
/// `real` states that `A`, `B` and `V` are real, so the exact sums are real.
pub fn assemble_s(
    y: &[LinearEnclosure],
    contour: &Contour,
    num_moments: usize,
    real: bool,
) -> Result<(Vec<IMatrix>, IMatrix)> {
    if y.len() != contour.n_nodes || y.is_empty() {
        return Err(Error::DimensionMismatch(format!("{} node solutions for N = {}", y.len(), contour.n_nodes)));
    }
    let ys: Vec<IMatrix> = y.iter().map(|e| e.x.clone()).collect();
    let blocks: Vec<IMatrix> = (0..num_moments).map(|k| quadrature_sum(&ys, contour, k, real)).collect();
    let full = IMatrix::hstack(&blocks)?;
    Ok((blocks, full))
}

/// Reduced moments `𝖬_k = Σ_j w_{jk} (BV)ᴴ Y_j` for `k < 2M`.
pub fn assemble_reduced_moments(y: &[LinearEnclosure], contour: &Contour, spec: &ProblemSpec) -> Result<Vec<IMatrix>> {
    if y.len() != contour.n_nodes || y.is_empty() {
        return Err(Error::DimensionMismatch(format!("{} node solutions for N = {}", y.len(), contour.n_nodes)));
    }
    let bvh = spec.bv()?.conj_transpose();
    let ys: Vec<IMatrix> = y.iter().map(|e| e.x.clone()).collect();
    let real = spec.is_real();
    let count = if real { ys.len().div_ceil(2) } else { ys.len() };
    let mut p = Vec::with_capacity(ys.len());
    for yj in ys.iter().take(count) {
        p.push(bvh.matmul(yj)?);
    }
    if real {
        for j in count..ys.len() {
            let src = p[ys.len() - 1 - j].map(|z| z.conj());
            p.push(src);
        }
    }
    Ok((0..2 * spec.num_moments).map(|k| quadrature_sum(&p, contour, k, real)).collect())
}

/// `(Sᴴ(A − γB)S, SᴴBS)` as interval matrices.
pub fn rr_pencil(s_full: &IMatrix, spec: &ProblemSpec, gamma: f64) -> Result<(IMatrix, IMatrix)> {
    let bs = spec.b.matmul(s_full)?;
    let as_ = spec.a.matmul(s_full)?;
    let shifted = as_.sub(&bs.scale(CInterval::from(gamma)))?;
    let sh = s_full.conj_transpose();
    Ok((sh.matmul(&shifted)?, sh.matmul(&bs)?))
}

/// Block Hankel pencil: block `(k, l)` of the first matrix is `𝖬_{k+l+1}`,
/// of the second `𝖬_{k+l}`.
pub fn hankel_from_moments(red_m: &[IMatrix], num_moments: usize) -> Result<(IMatrix, IMatrix)> {
    if red_m.len() != 2 * num_moments || red_m.is_empty() {
        return Err(Error::DimensionMismatch(format!("{} moments for M = {num_moments}", red_m.len())));
    }
    let l = red_m[0].rows();
    let size = l * num_moments;
    let mut hlt = IMatrix::zeros(size, size);
    let mut h = IMatrix::zeros(size, size);
    for k in 0..num_moments {
        for j in 0..num_moments {
            hlt.set_block(k * l, j * l, &red_m[k + j + 1]);
            h.set_block(k * l, j * l, &red_m[k + j]);
        }
    }
    Ok((hlt, h))
}
