//! Independent oracles shared by the integration tests. Nothing here calls
//! into the verified code paths of the library.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;

use moment_verify::interval::{CInterval, IMatrix, RInterval};

pub fn rat(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

pub fn rat_le(a: &BigRational, x: f64) -> bool {
    x == f64::INFINITY || (x.is_finite() && *a <= rat(x))
}

pub fn rat_ge(a: &BigRational, x: f64) -> bool {
    x == f64::NEG_INFINITY || (x.is_finite() && *a >= rat(x))
}

/// Exact containment of a rational in a binary64 interval.
pub fn rin(x: RInterval, v: &BigRational) -> bool {
    rat_ge(v, x.inf()) && rat_le(v, x.sup())
}

/// Exact complex value as a pair of rationals.
#[derive(Clone, Debug, PartialEq)]
pub struct CRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl CRat {
    pub fn from_c(z: Complex64) -> Self {
        CRat { re: rat(z.re), im: rat(z.im) }
    }

    pub fn zero() -> Self {
        CRat { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn add(&self, o: &CRat) -> CRat {
        CRat { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn sub(&self, o: &CRat) -> CRat {
        CRat { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    pub fn mul(&self, o: &CRat) -> CRat {
        CRat { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }

    pub fn div(&self, o: &CRat) -> CRat {
        let d = &o.re * &o.re + &o.im * &o.im;
        CRat { re: (&self.re * &o.re + &self.im * &o.im) / &d, im: (&self.im * &o.re - &self.re * &o.im) / &d }
    }

    pub fn abs_max(&self) -> BigRational {
        let (a, b) = (self.re.abs(), self.im.abs());
        if a > b {
            a
        } else {
            b
        }
    }
}

pub fn cin(z: CInterval, v: &CRat) -> bool {
    rin(z.re, &v.re) && rin(z.im, &v.im)
}

/// Exact product of point matrices stored row-major.
pub fn rat_matmul(a: &[CRat], b: &[CRat], n: usize, k: usize, m: usize) -> Vec<CRat> {
    let mut out = vec![CRat::zero(); n * m];
    for i in 0..n {
        for j in 0..m {
            let mut acc = CRat::zero();
            for t in 0..k {
                acc = acc.add(&a[i * k + t].mul(&b[t * m + j]));
            }
            out[i * m + j] = acc;
        }
    }
    out
}

pub fn big(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Number of eigenvalues of the symmetric tridiagonal pencil
/// `(tridiag(off, d, off), diag(b))` below `t`, by the Sturm recurrence.
pub fn sturm_count(d: &[f64], off: &[f64], b: &[f64], t: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for i in 0..d.len() {
        let e2 = if i == 0 { 0.0 } else { off[i - 1] * off[i - 1] };
        q = (d[i] - t * b[i]) - if i == 0 { 0.0 } else { e2 / q };
        if q == 0.0 {
            q = -f64::EPSILON * (d[i].abs() + t.abs() * b[i].abs()).max(f64::MIN_POSITIVE);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Bisection on a counting function; returns every eigenvalue in `(lo, hi)`.
pub fn bisect_all(count: impl Fn(f64) -> usize, lo: f64, hi: f64) -> Vec<f64> {
    let (c_lo, c_hi) = (count(lo), count(hi));
    let mut out = Vec::new();
    for k in c_lo..c_hi {
        // k-th eigenvalue (0-based) is where count first exceeds k
        let (mut a, mut b) = (lo, hi);
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if m <= a || m >= b {
                break;
            }
            if count(m) > k {
                b = m;
            } else {
                a = m;
            }
        }
        out.push(0.5 * (a + b));
    }
    out
}

/// Eigenvalues of the real symmetric pencil `(a, b)` in `(lo, hi)` through
/// the inertia of `a − t·b` from a dense floating eigensolve.
pub fn dense_eigenvalues_in(a: &DMatrix<f64>, b: &DMatrix<f64>, lo: f64, hi: f64) -> Vec<f64> {
    let count = |t: f64| {
        let m = a - b * t;
        m.symmetric_eigenvalues().iter().filter(|&&e| e < 0.0).count()
    };
    bisect_all(count, lo, hi)
}

/// Eigenvector of the real symmetric pencil at an accurate eigenvalue by
/// inverse iteration, `B`-normalized with largest component positive.
pub fn dense_eigenvector(a: &DMatrix<f64>, b: &DMatrix<f64>, lambda: f64) -> Vec<f64> {
    let n = a.nrows();
    let shift = lambda * (1.0 + 1e-13) + 1e-14;
    let lu = (a - b * shift).lu();
    let mut x = DVector::from_fn(n, |i, _| 1.0 + 0.1 * ((i * 7919) % 13) as f64);
    for _ in 0..4 {
        let rhs = b * &x;
        x = lu.solve(&rhs).expect("shifted pencil is nonsingular");
        let nb = x.dot(&(b * &x)).sqrt();
        x /= nb;
    }
    let k = x.iamax();
    if x[k] < 0.0 {
        x = -x;
    }
    x.iter().copied().collect()
}

/// Whether `x` (n × 1) contains some complex multiple `α·r` of the real
/// direction `r`, allowing entries to miss by `tol·max|mid x|`.
pub fn contains_multiple(x: &IMatrix, r: &[f64], tol: f64) -> bool {
    assert_eq!(x.cols(), 1);
    let slack = tol * x.data().iter().map(|z| z.mid().norm()).fold(0.0, f64::max);
    // feasible set of α is an intersection of rectangles x_i / r_i
    let (mut re_lo, mut re_hi, mut im_lo, mut im_hi) =
        (f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY);
    for (z, &ri) in x.data().iter().zip(r) {
        let rect = [z.re.inf() - slack, z.re.sup() + slack, z.im.inf() - slack, z.im.sup() + slack];
        if ri == 0.0 {
            if rect[0] > 0.0 || rect[1] < 0.0 || rect[2] > 0.0 || rect[3] < 0.0 {
                return false;
            }
            continue;
        }
        let s = |a: f64, b: f64| if ri > 0.0 { (a / ri, b / ri) } else { (b / ri, a / ri) };
        let (a, b) = s(rect[0], rect[1]);
        let (c, d) = s(rect[2], rect[3]);
        re_lo = re_lo.max(a);
        re_hi = re_hi.min(b);
        im_lo = im_lo.max(c);
        im_hi = im_hi.min(d);
    }
    // the zero vector is not a direction
    re_lo <= re_hi && im_lo <= im_hi && (re_lo < 0.0 || re_hi > 0.0 || im_lo < 0.0 || im_hi > 0.0)
}

pub fn to_dense(m: &IMatrix) -> DMatrix<f64> {
    let mid = m.mid();
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| mid[(i, j)].re)
}

/// Trapezoidal-rule filter at `λ` summed directly over the nodes
/// `γ + ρe^{iθ_j}`, `θ_j = (2j−1)π/N`: `Σ_j w_j (z_j−γ)^k / (z_j − λ)` with
/// `w_j = (z_j−γ)/N`. Returns the complex sum; `k = 0` is the filter itself.
pub fn brute_filter(lambda: f64, gamma: f64, rho: f64, n: usize, k: usize) -> Complex64 {
    (1..=n)
        .map(|j| {
            let th = (2 * j - 1) as f64 * std::f64::consts::PI / n as f64;
            let e = Complex64::from_polar(rho, th);
            let z = gamma + e;
            e.powu(k as u32 + 1) / (z - lambda) / n as f64
        })
        .sum()
}

/// Random complex system `C x = b` with `C = U·diag(σ)·W`, `U`, `W` unitary
/// and `σ` log-spaced from 1 down to `10^{−log_cond}`.
pub fn conditioned_system(
    rng: &mut rand_chacha::ChaCha20Rng,
    n: usize,
    log_cond: f64,
) -> (moment_verify::interval::CMatrix, moment_verify::interval::CMatrix) {
    let gauss = |rng: &mut rand_chacha::ChaCha20Rng| {
        DMatrix::from_fn(n, n, |_, _| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
    };
    let u = gauss(rng).qr().q();
    let w = gauss(rng).qr().q();
    let sig = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            let t = if n == 1 { 0.0 } else { i as f64 / (n - 1) as f64 };
            Complex64::new(10f64.powf(-log_cond * t), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let c = u * sig * w;
    let cm = moment_verify::interval::CMatrix::from_fn(n, n, |i, j| c[(i, j)]);
    let bv = (0..n).map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
    let b = moment_verify::interval::CMatrix::from_vec(n, 1, bv).expect("sizes agree");
    (cm, b)
}

/// Floating condition number from the singular values.
pub fn cond2(c: &moment_verify::interval::CMatrix) -> f64 {
    let m = DMatrix::from_fn(c.rows(), c.cols(), |i, j| c[(i, j)]);
    let s = m.singular_values();
    s.max() / s.min()
}

/// Solution of `C x = b` to roughly twice working precision: one floating
/// solve plus a correction from the exactly computed residual. Returned as
/// exact rationals `x₀ + dx`.
pub fn refined_solution(c: &moment_verify::interval::CMatrix, b: &moment_verify::interval::CMatrix) -> Vec<CRat> {
    let n = c.rows();
    let m = DMatrix::from_fn(n, n, |i, j| c[(i, j)]);
    let lu = m.lu();
    let rhs = DVector::from_fn(n, |i, _| b[(i, 0)]);
    let x0 = lu.solve(&rhs).expect("nonsingular");
    let cr: Vec<CRat> = c.data().iter().map(|&z| CRat::from_c(z)).collect();
    let x0r: Vec<CRat> = x0.iter().map(|&z| CRat::from_c(z)).collect();
    let ax = rat_matmul(&cr, &x0r, n, n, 1);
    let res: Vec<CRat> = (0..n).map(|i| CRat::from_c(b[(i, 0)]).sub(&ax[i])).collect();
    let resf = DVector::from_fn(n, |i, _| {
        use num_traits::ToPrimitive;
        Complex64::new(res[i].re.to_f64().unwrap(), res[i].im.to_f64().unwrap())
    });
    let dx = lu.solve(&resf).expect("nonsingular");
    x0r.iter().zip(dx.iter()).map(|(a, &d)| a.add(&CRat::from_c(d))).collect()
}

/// Out-parts of a diagonal pencil `(diag(a), diag(b))` with real probe `v`
/// (n × L), computed from the per-eigenvalue filter values. Returns the
/// Hankel moment out-parts `Σ b_i μ_i^k d_i v_iᴴ v_i` and the Rayleigh–Ritz
/// ones with `d_i²` for `k < 2M`, and the transformation-matrix out-parts
/// `μ_i^k d_i v_i` for `k < M`.
pub struct OutParts {
    pub hankel: Vec<DMatrix<f64>>,
    pub rr: Vec<DMatrix<f64>>,
    pub s: Vec<DMatrix<f64>>,
}

pub fn diagonal_out_parts(
    lam: &[f64],
    b: &[f64],
    v: &DMatrix<f64>,
    gamma: f64,
    rho: f64,
    n_nodes: usize,
    num_moments: usize,
) -> OutParts {
    let (n, l) = (v.nrows(), v.ncols());
    let mut hankel = vec![DMatrix::zeros(l, l); 2 * num_moments];
    let mut rr = vec![DMatrix::zeros(l, l); 2 * num_moments];
    let mut s = vec![DMatrix::zeros(n, l); num_moments];
    for i in 0..n {
        let mu = lam[i] - gamma;
        if mu.abs() < rho {
            continue;
        }
        let d = outside_filter(mu, rho, n_nodes);
        let vi = v.row(i);
        let outer = vi.transpose() * vi * b[i];
        for k in 0..2 * num_moments {
            let p = mu.powi(k as i32);
            hankel[k] += &outer * (p * d);
            rr[k] += &outer * (p * d * d);
        }
        for (k, sk) in s.iter_mut().enumerate() {
            for c in 0..l {
                sk[(i, c)] = mu.powi(k as i32) * d * v[(i, c)];
            }
        }
    }
    OutParts { hankel, rr, s }
}

/// Filter value of an outside eigenvalue from the expansion
/// `ω/(ω−t) = −Σ_{p≥1} (ω/t)^p`, `t = μ/ρ`, `ω_j^N = −1`: only `p = sN`
/// survive the node average, giving `y/(1+y)` with `y = t^{−N}`. The
/// direct node sum cancels O(1) terms and cannot resolve values below
/// ~1e−17.
pub fn outside_filter(mu: f64, rho: f64, n_nodes: usize) -> f64 {
    assert!(mu.abs() > rho);
    let y = (rho / mu).powi(n_nodes as i32);
    y / (1.0 + y)
}

/// Random diagonal pencil with `m = L·M` eigenvalues inside `[γ−ρ, γ+ρ]`
/// and the rest at distance at least `gap`.
pub fn random_diagonal(
    rng: &mut rand_chacha::ChaCha20Rng,
    l: usize,
    mm: usize,
    extra: usize,
    q: f64,
) -> (Vec<f64>, Vec<f64>, f64) {
    let (gamma, rho) = (1.5, 0.5);
    let gap = rho / q;
    let mut lam: Vec<f64> = (0..l * mm).map(|_| gamma + rng.random_range(-0.95..0.95) * rho).collect();
    for _ in 0..extra {
        let side = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        lam.push(gamma + side * gap * rng.random_range(1.0..3.0));
    }
    // exactly one outside eigenvalue on the gap
    lam.push(gamma + gap);
    let b: Vec<f64> = lam.iter().map(|_| rng.random_range(0.5..2.0)).collect();
    let a: Vec<f64> = lam.iter().zip(&b).map(|(x, y)| x * y).collect();
    // the pencil eigenvalue is a/b after rounding; recompute it
    let lam_exact: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x / y).collect();
    let gap = lam_exact[l * mm..].iter().map(|x| (x - gamma).abs()).fold(f64::INFINITY, f64::min);
    (a, b, gap * (1.0 - 1e-12))
}

/// Pencil `(W Λ Wᵀ, W Wᵀ)` with eigenvalues `Λ`: four within ρ/2 of the
/// center 2 (the discrete identity holds up to `1 − d` inside), the
/// rest at distance ≥ 3 from it.
pub fn dense_pencil(rng: &mut rand_chacha::ChaCha20Rng, n: usize) -> (IMatrix, IMatrix) {
    let w = DMatrix::from_fn(
        n,
        n,
        |i, j| if i == j { 1.0 } else { 0.0 } + 0.2 * rng.random_range(-1.0..1.0) / (n as f64).sqrt(),
    );
    let lam: Vec<f64> = (0..n)
        .map(|i| {
            if i < 4 {
                2.0 + 0.5 * rng.random_range(-1.0..1.0)
            } else {
                2.0 + 3.0 * (1.0 + i as f64) * if i % 2 == 0 { 1.0 } else { -1.0 }
            }
        })
        .collect();
    let l = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(lam));
    let a = &w * l * w.transpose();
    let b = &w * w.transpose();
    let sym = |m: &DMatrix<f64>| {
        IMatrix::from_point(&moment_verify::interval::CMatrix::from_fn(n, n, |i, j| {
            Complex64::new(0.5 * (m[(i, j)] + m[(j, i)]), 0.0)
        }))
    };
    (sym(&a), sym(&b))
}

pub fn real_probe(rng: &mut rand_chacha::ChaCha20Rng, n: usize, l: usize) -> moment_verify::interval::CMatrix {
    let d = DMatrix::from_fn(n, l, |_, _| rng.random_range(-1.0..1.0));
    moment_verify::interval::CMatrix::from_fn(n, l, |i, j| Complex64::new(d[(i, j)], 0.0))
}
