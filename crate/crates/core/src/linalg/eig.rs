//! Enclosures of eigenpairs of small Hermitian interval pencils
//! `(P − μQ) y = 0`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::interval::{CInterval, CMatrix, IMatrix, RInterval};

use super::lu::LuFactors;

const MAX_ITERATIONS: usize = 20;
/// Relative seed distance below which seeds form a cluster.
const CLUSTER_TOL: f64 = 1e-10;

/// Why a seed could not be verified.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SmallEigFailure {
    /// The Krawczyk operator did not map the candidate into its interior.
    NotContracting,
    /// A seed of a numerically clustered group failed, so the group cannot
    /// be separated into simple enclosures.
    ClusterNotSeparated,
}

#[derive(Clone, Debug)]
pub struct SmallEigEnclosure {
    pub lambda: RInterval,
    /// Column enclosure of the eigenvector, normalized to one at its
    /// largest seed component.
    pub y: IMatrix,
    pub verified: bool,
    pub failure: Option<SmallEigFailure>,
}

/// Approximate eigenpair used to start the verification.
#[derive(Clone, Debug)]
pub struct EigSeed {
    pub value: f64,
    pub vector: Vec<Complex64>,
}

fn to_na(m: &CMatrix) -> DMatrix<Complex64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)])
}

/// Floating eigenpairs of `P y = μ Q y` for Hermitian `P` and positive
/// definite `Q`, ascending. No rigor.
pub fn hermitian_seeds(p: &CMatrix, q: &CMatrix) -> Result<Vec<EigSeed>> {
    let n = p.rows();
    if q.rows() != n || p.cols() != n || q.cols() != n {
        return Err(Error::DimensionMismatch("seed pencil must be square".into()));
    }
    let pm = to_na(p);
    let qm = to_na(q);
    let qh = (&qm + qm.adjoint()) * Complex64::new(0.5, 0.0);
    let chol = qh.cholesky().ok_or(Error::PositiveDefiniteRequired)?;
    let l = chol.l();
    // C = L⁻¹ P L⁻ᴴ
    let li_p = l.solve_lower_triangular(&pm).ok_or(Error::SingularApprox)?;
    let c = l.solve_lower_triangular(&li_p.adjoint()).ok_or(Error::SingularApprox)?.adjoint();
    let ch = (&c + c.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = ch.symmetric_eigen();
    let lh = l.adjoint();
    let mut seeds: Vec<EigSeed> = (0..n)
        .map(|i| {
            let w = eig.eigenvectors.column(i).into_owned();
            let y = lh.solve_upper_triangular(&w).unwrap_or(w);
            EigSeed { value: eig.eigenvalues[i], vector: y.iter().copied().collect() }
        })
        .collect();
    seeds.sort_by(|a, b| a.value.total_cmp(&b.value));
    Ok(seeds)
}

fn matvec(a: &IMatrix, x: &[CInterval]) -> Vec<CInterval> {
    (0..a.rows()).map(|i| a.row(i).iter().zip(x).fold(CInterval::ZERO, |s, (&aij, &xj)| s + aij * xj)).collect()
}

fn point_matvec(r: &CMatrix, x: &[CInterval]) -> Vec<CInterval> {
    (0..r.rows())
        .map(|i| r.row(i).iter().zip(x).fold(CInterval::ZERO, |s, (&rij, &xj)| s + CInterval::point(rij) * xj))
        .collect()
}

fn inflate_candidate(x: &[CInterval]) -> Vec<CInterval> {
    let widen = RInterval::new(0.9, 1.1);
    let tiny = f64::MIN_POSITIVE;
    x.iter().map(|z| CInterval::new(z.re * widen, z.im * widen).inflate(tiny)).collect()
}

/// Verifies one seed; returns `(Δμ, Δy)` enclosures on success.
fn verify_one(p: &IMatrix, q: &IMatrix, mu: f64, y: &[Complex64], k: usize) -> Result<Option<Vec<CInterval>>> {
    let s = p.rows();
    let mu_i = CInterval::from(mu);
    let pm = p.sub(&q.scale(mu_i))?;
    let yv: Vec<CInterval> = y.iter().map(|&z| CInterval::point(z)).collect();
    let r0 = matvec(&pm, &yv);
    let qy = matvec(q, &yv);
    let mut c = pm.clone();
    for i in 0..s {
        c[(i, k)] = -qy[i];
    }
    let r = LuFactors::new(&c.mid())?.inverse();
    let z: Vec<CInterval> = point_matvec(&r, &r0).into_iter().map(|v| -v).collect();
    let rc = c.left_mul_point(&r)?;
    let g = IMatrix::identity(s).sub(&rc)?;

    let mut x = z.clone();
    for _ in 0..MAX_ITERATIONS {
        let cand = inflate_candidate(&x);
        let mut cand_y = cand.clone();
        cand_y[k] = CInterval::ZERO;
        let quad = matvec(q, &cand_y).into_iter().map(|v| cand[k] * v).collect::<Vec<_>>();
        let rq = point_matvec(&r, &quad);
        let gx = matvec(&g, &cand);
        let kx: Vec<CInterval> = (0..s).map(|i| z[i] + gx[i] + rq[i]).collect();
        if kx.iter().zip(&cand).all(|(a, b)| a.interior_of(*b)) {
            return Ok(Some(kx));
        }
        x = kx;
        if x.iter().any(|v| !v.re.sup().is_finite() || !v.im.sup().is_finite()) {
            break;
        }
    }
    Ok(None)
}

/// Enclosures of the eigenpairs of every point pencil in `(P, Q)` near the
/// seeds. Requires `Q` to be positive definite for all its members, which
/// the caller certifies; eigenvalues are then real and the real part of the
/// enclosure is returned.
pub fn verify_eigenpairs_small(p: &IMatrix, q: &IMatrix, seeds: &[EigSeed]) -> Result<Vec<SmallEigEnclosure>> {
    let s = p.rows();
    if !p.is_square() || q.rows() != s || q.cols() != s {
        return Err(Error::DimensionMismatch("small pencil must be square".into()));
    }
    let mut out = Vec::with_capacity(seeds.len());
    for seed in seeds {
        if seed.vector.len() != s {
            return Err(Error::DimensionMismatch("seed vector length".into()));
        }
        let k = (0..s).max_by(|&a, &b| seed.vector[a].norm().total_cmp(&seed.vector[b].norm())).unwrap_or(0);
        let piv = seed.vector[k];
        let failed = SmallEigEnclosure {
            lambda: RInterval::new(f64::NEG_INFINITY, f64::INFINITY),
            y: IMatrix::zeros(s, 1),
            verified: false,
            failure: Some(SmallEigFailure::NotContracting),
        };
        if piv.norm() == 0.0 {
            out.push(failed);
            continue;
        }
        let y: Vec<Complex64> = seed.vector.iter().map(|&v| v / piv).collect();
        let mut y = y;
        y[k] = Complex64::new(1.0, 0.0);
        match verify_one(p, q, seed.value, &y, k) {
            Ok(Some(dx)) => {
                let lambda = RInterval::point(seed.value) + dx[k].re;
                let yv =
                    IMatrix::from_fn(s, 1, |i, _| if i == k { CInterval::ONE } else { CInterval::point(y[i]) + dx[i] });
                out.push(SmallEigEnclosure { lambda, y: yv, verified: true, failure: None });
            }
            Ok(None) | Err(Error::SingularApprox) => out.push(failed),
            Err(e) => return Err(e),
        }
    }
    mark_clusters(seeds, &mut out);
    Ok(out)
}

/// Within a group of numerically coincident seeds, one failure fails the
/// whole group.
fn mark_clusters(seeds: &[EigSeed], out: &mut [SmallEigEnclosure]) {
    let scale = seeds.iter().map(|s| s.value.abs()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let n = seeds.len();
    let mut group = vec![0usize; n];
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| seeds[a].value.total_cmp(&seeds[b].value));
    let mut g = 0;
    for w in 0..n {
        if w > 0 {
            let (a, b) = (order[w - 1], order[w]);
            if (seeds[b].value - seeds[a].value).abs() >= CLUSTER_TOL * scale {
                g += 1;
            }
        }
        group[order[w]] = g;
    }
    for gi in 0..=g {
        let members: Vec<usize> = (0..n).filter(|&i| group[i] == gi).collect();
        if members.len() > 1 && members.iter().any(|&i| !out[i].verified) {
            for &i in &members {
                out[i].verified = false;
                out[i].failure = Some(SmallEigFailure::ClusterNotSeparated);
            }
        }
    }
}
