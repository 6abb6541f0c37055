//! Rigorous spectral information for Hermitian pencils: lower bounds on
//! `λ_min(B)`, Sylvester inertia counts and the certified gap around the
//! contour.

use crate::error::{Error, Result};
use nalgebra::DMatrix;

use crate::interval::round::{add_up, div_up, mul_up, sub_dn};
use crate::interval::{CInterval, CMatrix, IMatrix, RInterval};
use crate::moments::{Contour, ProblemSpec};

/// Bunch–Kaufman threshold for accepting a 1×1 pivot.
const BK_ALPHA: f64 = 0.6404;

/// Lower band of a Hermitian interval matrix: `band[i][d]` holds entry
/// `(i, i - d)` for `d ≤ min(i, w)`.
struct Band {
    n: usize,
    w: usize,
    band: Vec<Vec<CInterval>>,
}

impl Band {
    fn get(&self, i: usize, j: usize) -> CInterval {
        debug_assert!(j <= i);
        let d = i - j;
        if d > self.w {
            CInterval::ZERO
        } else {
            self.band[i][d]
        }
    }

    fn sub_assign(&mut self, i: usize, j: usize, v: CInterval) {
        let d = i - j;
        self.band[i][d] = self.band[i][d] - v;
    }
}

/// Band of `A − t·B` using the lower triangles of both matrices.
fn shifted_band(a: &IMatrix, b: &IMatrix, t: RInterval) -> Band {
    let n = a.rows();
    let w = a.bandwidth().max(b.bandwidth());
    let band = (0..n)
        .map(|i| {
            (0..=w.min(i))
                .map(|d| {
                    let j = i - d;
                    let bij = b[(i, j)];
                    let e = if bij.is_zero() { a[(i, j)] } else { a[(i, j)] - bij.scale(t) };
                    if d == 0 {
                        CInterval::real(e.re)
                    } else {
                        e
                    }
                })
                .collect()
        })
        .collect();
    Band { n, w, band }
}

/// Verified inertia `(negative, positive)` of the banded Hermitian interval
/// matrix, or `None` when some pivot cannot be separated from zero.
fn band_inertia(mut m: Band) -> Option<(usize, usize)> {
    let (n, w) = (m.n, m.w);
    let (mut neg, mut pos) = (0, 0);
    let mut j = 0;
    while j < n {
        let d = m.get(j, j).re;
        let last = (j + w).min(n - 1);
        let colmax = (j + 1..=last).map(|r| m.get(r, j).magnitude_sup()).fold(0.0, f64::max);
        let one_by_one = !d.contains_zero() && (j + 1 == n || d.mig() >= BK_ALPHA * colmax);
        if !one_by_one && j + 1 < n {
            let d1 = m.get(j + 1, j + 1).re;
            let e = m.get(j + 1, j);
            let det = d * d1 - e.norm_sqr();
            if !det.contains_zero() {
                if det.is_negative() {
                    neg += 1;
                    pos += 1;
                } else {
                    let tr = d + d1;
                    if tr.contains_zero() {
                        return None;
                    }
                    if tr.is_negative() {
                        neg += 2;
                    } else {
                        pos += 2;
                    }
                }
                eliminate_two(&mut m, j, d, d1, e, det.recip().ok()?);
                j += 2;
                continue;
            }
        }
        if d.contains_zero() {
            return None;
        }
        if d.is_negative() {
            neg += 1;
        } else {
            pos += 1;
        }
        let inv = d.recip().ok()?;
        let col: Vec<CInterval> = (j + 1..=last).map(|r| m.get(r, j)).collect();
        for (ri, &ur) in col.iter().enumerate() {
            if ur.is_zero() {
                continue;
            }
            let r = j + 1 + ri;
            m.sub_assign(r, r, CInterval::real(ur.norm_sqr() * inv));
            for (si, &us) in col.iter().enumerate().take(ri) {
                if us.is_zero() {
                    continue;
                }
                m.sub_assign(r, j + 1 + si, (ur * us.conj()).scale(inv));
            }
        }
        j += 1;
    }
    Some((neg, pos))
}

/// Schur complement update for the 2×2 pivot at rows `j, j+1`.
fn eliminate_two(m: &mut Band, j: usize, d0: RInterval, d1: RInterval, e: CInterval, inv: RInterval) {
    let last = (j + 1 + m.w).min(m.n - 1);
    let u: Vec<(CInterval, CInterval)> = (j + 2..=last).map(|r| (m.get(r, j), m.get(r, j + 1))).collect();
    let ec = e.conj();
    for (ri, &(r0, r1)) in u.iter().enumerate() {
        if r0.is_zero() && r1.is_zero() {
            continue;
        }
        let r = j + 2 + ri;
        // row r of [u0 u1]·D⁻¹ up to the 1/det factor
        let a0 = r0.scale(d1) - r1 * e;
        let a1 = r1.scale(d0) - r0 * ec;
        for (si, &(s0, s1)) in u.iter().enumerate().take(ri + 1) {
            if s0.is_zero() && s1.is_zero() {
                continue;
            }
            let s = j + 2 + si;
            let v = (a0 * s0.conj() + a1 * s1.conj()).scale(inv);
            if r == s {
                m.sub_assign(r, r, CInterval::real(v.re));
            } else {
                m.sub_assign(r, s, v);
            }
        }
    }
}

fn check_pencil(a: &IMatrix, b: &IMatrix) -> Result<()> {
    if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
        return Err(Error::DimensionMismatch("pencil matrices must be square and equal size".into()));
    }
    Ok(())
}

/// Largest size for the dense congruence fallback.
const CONGRUENCE_MAX_N: usize = 1024;

/// Inertia through the congruence `QᴴMQ` with the floating eigenvectors `Q`
/// of `mid M`. `Q` is certified nonsingular by `‖I − QᴴQ‖∞ < 1`, and the
/// inertia of the congruent matrix is read off Gershgorin discs that avoid
/// zero. Robust where elimination without interchanges blows up.
fn congruence_inertia(m: &IMatrix) -> Option<(usize, usize)> {
    let n = m.rows();
    if n == 0 || n > CONGRUENCE_MAX_N {
        return None;
    }
    let mid = m.mid();
    let dm = DMatrix::from_fn(n, n, |i, j| 0.5 * (mid[(i, j)] + mid[(j, i)].conj()));
    let eig = dm.symmetric_eigen();
    let q = CMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, j)]);
    let qh = q.conj_transpose();
    let qi = IMatrix::from_point(&q);
    let gram = qi.left_mul_point(&qh).ok()?;
    let off = (0..n)
        .map(|i| {
            gram.row(i).iter().enumerate().fold(0.0, |s, (j, &g)| {
                let e = if i == j { CInterval::ONE - g } else { g };
                add_up(s, e.magnitude_sup())
            })
        })
        .fold(0.0, f64::max);
    if !(off < 1.0) {
        return None;
    }
    let t = m.matmul(&qi).ok()?.left_mul_point(&qh).ok()?;
    let (mut neg, mut pos) = (0, 0);
    for i in 0..n {
        let r =
            t.row(i).iter().enumerate().filter(|&(j, _)| j != i).fold(0.0, |s, (_, z)| add_up(s, z.magnitude_sup()));
        let c = t[(i, i)].re;
        if sub_dn(c.inf(), r) > 0.0 {
            pos += 1;
        } else if add_up(c.sup(), r) < 0.0 {
            neg += 1;
        } else {
            return None;
        }
    }
    Some((neg, pos))
}

fn shifted_dense(a: &IMatrix, b: &IMatrix, t: RInterval) -> IMatrix {
    IMatrix::from_fn(a.rows(), a.cols(), |i, j| {
        let bij = b[(i, j)];
        if bij.is_zero() {
            a[(i, j)]
        } else {
            a[(i, j)] - bij.scale(t)
        }
    })
}

/// Verified inertia `(negative, positive)` of `A − tB`: banded elimination
/// first, dense congruence when that cannot separate a pivot from zero.
fn pencil_inertia(a: &IMatrix, b: &IMatrix, t: RInterval) -> Option<(usize, usize)> {
    band_inertia(shifted_band(a, b, t)).or_else(|| congruence_inertia(&shifted_dense(a, b, t)))
}

/// Verified number of negative eigenvalues of `A − tB` for every `t` in the
/// interval and every point matrix in the enclosures.
pub fn negative_count(a: &IMatrix, b: &IMatrix, t: RInterval) -> Result<Option<usize>> {
    check_pencil(a, b)?;
    Ok(pencil_inertia(a, b, t).map(|(neg, _)| neg))
}

/// Certifies that every matrix in `B` is positive definite.
pub fn is_positive_definite(b: &IMatrix) -> bool {
    if !b.is_square() {
        return false;
    }
    let zero = IMatrix::zeros(b.rows(), b.cols());
    matches!(pencil_inertia(b, &zero, RInterval::ZERO), Some((0, _)))
}

/// Rigorous `β ≥ 0` with `λ_min(B₀) ≥ β` for every `B₀ ∈ B`, found by
/// bisection on positive definiteness of `B − βI`. Returns 0 when nothing
/// positive can be certified.
pub fn lambda_min_lower_bound(b: &IMatrix) -> Result<f64> {
    if !b.is_square() {
        return Err(Error::DimensionMismatch("λ_min of a non-square matrix".into()));
    }
    let n = b.rows();
    let id = IMatrix::identity(n);
    let pd_at = |beta: f64| matches!(band_inertia(shifted_band(b, &id, RInterval::point(beta))), Some((0, _)));
    let mut hi = (0..n).map(|i| b[(i, i)].re.sup()).fold(f64::INFINITY, f64::min);
    if !(hi > 0.0) {
        return Ok(0.0);
    }
    if pd_at(hi) {
        return Ok(hi);
    }
    let mut lo = 0.0;
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if pd_at(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// Number of pencil eigenvalues below `t`. Unverified when `B` is not
/// certified positive definite or when `t` is too close to an eigenvalue.
pub fn inertia_count(a: &IMatrix, b: &IMatrix, t: f64) -> Result<(bool, usize)> {
    check_pencil(a, b)?;
    if !is_positive_definite(b) {
        return Ok((false, 0));
    }
    Ok(match negative_count(a, b, RInterval::point(t))? {
        Some(c) => (true, c),
        None => (false, 0),
    })
}

/// How the distance to the nearest outside eigenvalue is obtained.
#[derive(Clone, Debug)]
pub enum GapMethod {
    /// Inertia counts expanding outward from the contour.
    Bisection,
    /// Ostrowski-type perturbation from `B = I + ΔB`, given enclosures of
    /// all eigenvalues of `A`.
    Perturbation { eigs_a: Vec<RInterval> },
    /// Trusted user-supplied value.
    User(f64),
}

/// Step count caps for the bisection method.
const EXPAND_STEPS: usize = 200;
const REFINE_STEPS: usize = 30;

/// Rigorous lower bound on `|λ̂ − γ|` for the eigenvalue `λ̂` outside the
/// contour closest to its center.
pub fn nearest_outside_gap(spec: &ProblemSpec, contour: &Contour, method: &GapMethod) -> Result<f64> {
    let g = match method {
        GapMethod::User(v) => *v,
        GapMethod::Bisection => gap_by_bisection(spec, contour)?,
        GapMethod::Perturbation { eigs_a } => gap_by_perturbation(spec, contour, eigs_a)?,
    };
    if !(g > contour.rho) {
        return Err(Error::GapNotCertified(format!("gap bound {g} does not exceed radius {}", contour.rho)));
    }
    Ok(g)
}

fn gap_by_bisection(spec: &ProblemSpec, contour: &Contour) -> Result<f64> {
    let (gamma, rho) = (contour.gamma, contour.rho);
    let count = |t: RInterval| negative_count(&spec.a, &spec.b, t);
    let lo = RInterval::point(gamma) - RInterval::point(rho);
    let hi = RInterval::point(gamma) + RInterval::point(rho);
    let (c_lo, c_hi) = match (count(lo)?, count(hi)?) {
        (Some(x), Some(y)) => (x, y),
        _ => return Err(Error::GapNotCertified("inertia at the contour endpoints not verified".into())),
    };
    if c_hi < c_lo || c_hi - c_lo != spec.m {
        return Err(Error::GapNotCertified(format!(
            "inertia counts give {} eigenvalues inside, expected {}",
            c_hi as i64 - c_lo as i64,
            spec.m
        )));
    }
    let step = rho / 4.0;
    let right = expand(hi.sup(), step, |t| count(RInterval::point(t)).ok().flatten() == Some(c_hi));
    let left = expand(lo.inf(), -step, |t| count(RInterval::point(t)).ok().flatten() == Some(c_lo));
    let gr = sub_dn(right, gamma);
    let gl = sub_dn(gamma, left);
    Ok(gr.min(gl))
}

/// Walks from `start` in steps of `step` while `good` holds, then bisects
/// toward the first failing point. Returns the farthest certified point.
fn expand(start: f64, step: f64, good: impl Fn(f64) -> bool) -> f64 {
    let mut ok = start;
    let mut bad = None;
    for _ in 0..EXPAND_STEPS {
        let t = ok + step;
        if good(t) {
            ok = t;
        } else {
            bad = Some(t);
            break;
        }
    }
    if let Some(mut bad) = bad {
        for _ in 0..REFINE_STEPS {
            let mid = 0.5 * (ok + bad);
            if mid == ok || mid == bad {
                break;
            }
            if good(mid) {
                ok = mid;
            } else {
                bad = mid;
            }
        }
    }
    ok
}

fn gap_by_perturbation(spec: &ProblemSpec, contour: &Contour, eigs_a: &[RInterval]) -> Result<f64> {
    let n = spec.a.rows();
    if eigs_a.len() != n {
        return Err(Error::InvalidSpec(format!("{} eigenvalues of A given for n = {n}", eigs_a.len())));
    }
    let beta = lambda_min_lower_bound(&spec.b)?;
    if beta <= 0.0 {
        return Err(Error::PositiveDefiniteRequired);
    }
    let db = spec.b.sub(&IMatrix::identity(n))?;
    // |λ_i(A,B) − λ_i(A)| ≤ |λ_i(A)|·‖ΔB‖₂·‖B⁻¹‖₂
    let s = div_up(db.two_norm_sup(), beta);
    let gamma = RInterval::point(contour.gamma);
    let lo = gamma - RInterval::point(contour.rho);
    let hi = gamma + RInterval::point(contour.rho);
    let mut inside = 0;
    let mut gap = f64::INFINITY;
    for e in eigs_a {
        let enc = e.inflate(mul_up(e.mag(), s));
        if lo.sup() < enc.inf() && enc.sup() < hi.inf() {
            inside += 1;
        } else if enc.sup() < lo.inf() || enc.inf() > hi.sup() {
            gap = gap.min((enc - gamma).mig());
        } else {
            return Err(Error::GapNotCertified(format!("eigenvalue enclosure {enc} meets the contour")));
        }
    }
    if inside != spec.m {
        return Err(Error::GapNotCertified(format!("{inside} eigenvalues inside, expected {}", spec.m)));
    }
    Ok(gap)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(v: &[f64]) -> IMatrix {
        let n = v.len();
        IMatrix::from_fn(n, n, |i, j| if i == j { v[i].into() } else { CInterval::ZERO })
    }

    fn tridiag(n: usize) -> IMatrix {
        IMatrix::from_fn(n, n, |i, j| match i.abs_diff(j) {
            0 => 2.0.into(),
            1 => (-1.0).into(),
            _ => CInterval::ZERO,
        })
    }

    #[test]
    fn diagonal_counts() {
        let a = diag(&[1.0, 2.0, 3.0]);
        assert_eq!(inertia_count(&a, &IMatrix::identity(3), 2.5).unwrap(), (true, 2));
        assert_eq!(inertia_count(&a, &IMatrix::identity(3), 0.0).unwrap(), (true, 0));
    }

    #[test]
    fn toeplitz_count_at_zero_diagonal() {
        assert_eq!(inertia_count(&tridiag(32), &IMatrix::identity(32), 2.0).unwrap(), (true, 16));
    }

    #[test]
    fn count_at_eigenvalue_is_unverified() {
        let a = diag(&[1.0, 2.0, 3.0]);
        assert!(!inertia_count(&a, &IMatrix::identity(3), 2.0).unwrap().0);
    }

    #[test]
    fn lambda_min_cases() {
        assert!(lambda_min_lower_bound(&IMatrix::identity(4)).unwrap() >= 1.0 - 1e-12);
        assert_eq!(lambda_min_lower_bound(&diag(&[1.0, 1.0, 0.0])).unwrap(), 0.0);
        let b = lambda_min_lower_bound(&diag(&[1.0, 1.0, 1e-8])).unwrap();
        assert!(b > 0.0 && b <= 1e-8);
    }

    #[test]
    fn semidefinite_b_is_not_counted() {
        let a = diag(&[1.0, 2.0, 3.0]);
        assert!(!inertia_count(&a, &diag(&[1.0, 1.0, 0.0]), 2.5).unwrap().0);
    }

    #[test]
    fn indefinite_band_uses_congruence() {
        let n = 100;
        let a = IMatrix::from_fn(n, n, |i, j| match i.abs_diff(j) {
            0 => 3.0.into(),
            1 => 2.0.into(),
            2 => 1.0.into(),
            _ => CInterval::ZERO,
        });
        let id = IMatrix::identity(n);
        assert!(band_inertia(shifted_band(&a, &id, RInterval::point(0.95))).is_none());
        // dense floating eigensolve gives 44 eigenvalues below 0.95
        assert_eq!(inertia_count(&a, &id, 0.95).unwrap(), (true, 44));
        assert_eq!(inertia_count(&a, &id, 0.5).unwrap(), (true, 28));
    }
}
