//! Unverified reference eigensolver for real symmetric banded pencils:
//! bisection on Sylvester inertia counts accumulated in double-double
//! arithmetic, and inverse iteration for eigenvectors.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::interval::{CMatrix, IMatrix};
use crate::linalg::LuFactors;

/// Unevaluated sum `hi + lo` with `|lo| ≤ ulp(hi)/2`.
#[derive(Clone, Copy, Debug, PartialEq)]
struct Dd {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

impl Dd {
    const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    fn from(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    fn renorm(hi: f64, lo: f64) -> Dd {
        let (s, e) = two_sum(hi, lo);
        Dd { hi: s, lo: e }
    }

    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        Dd::renorm(s, e + self.lo + o.lo)
    }

    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    fn sub(self, o: Dd) -> Dd {
        self.add(o.neg())
    }

    fn mul(self, o: Dd) -> Dd {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p);
        Dd::renorm(p, e + self.hi * o.lo + self.lo * o.hi)
    }

    fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self.sub(o.mul(Dd::from(q1)));
        let q2 = r.hi / o.hi;
        Dd::renorm(q1, q2)
    }
}

/// Real symmetric banded pencil in lower band storage.
#[derive(Clone, Debug)]
pub struct BandPencil {
    n: usize,
    w: usize,
    /// `a[i][d] = A[i][i−d]`
    a: Vec<Vec<f64>>,
    b: Vec<Vec<f64>>,
    dense_a: CMatrix,
    dense_b: CMatrix,
}

fn bandwidth(m: &CMatrix) -> usize {
    let mut w = 0;
    for i in 0..m.rows() {
        for j in 0..i {
            if m[(i, j)] != Complex64::new(0.0, 0.0) {
                w = w.max(i - j);
            }
        }
    }
    w
}

impl BandPencil {
    pub fn new(a: &CMatrix, b: &CMatrix) -> Result<Self> {
        let n = a.rows();
        if a.cols() != n || b.rows() != n || b.cols() != n {
            return Err(Error::DimensionMismatch("reference pencil must be square".into()));
        }
        if !a.is_real() || !b.is_real() {
            return Err(Error::InvalidSpec("reference solver handles real pencils only".into()));
        }
        let w = bandwidth(a).max(bandwidth(b));
        let band = |m: &CMatrix| -> Vec<Vec<f64>> {
            (0..n).map(|i| (0..=w.min(i)).map(|d| m[(i, i - d)].re).collect()).collect()
        };
        Ok(BandPencil { n, w, a: band(a), b: band(b), dense_a: a.clone(), dense_b: b.clone() })
    }

    pub fn from_intervals(a: &IMatrix, b: &IMatrix) -> Result<Self> {
        BandPencil::new(&a.mid(), &b.mid())
    }

    /// Negative eigenvalues of `A − tB` from an `LDLᵀ` factorization without
    /// pivoting. An exactly zero pivot is nudged, which makes the count at
    /// that `t` ambiguous; callers only rely on counts between eigenvalues.
    pub fn count_below(&self, t: f64) -> usize {
        let (n, w) = (self.n, self.w);
        let tt = Dd::from(t);
        // l[i][d] = L[i][i−d] for d ≥ 1
        let mut l = vec![vec![Dd::ZERO; w + 1]; n];
        let mut dv = vec![Dd::ZERO; n];
        let mut neg = 0;
        let entry = |i: usize, d: usize| -> Dd {
            if d > w || d > i {
                return Dd::ZERO;
            }
            Dd::from(self.a[i][d]).sub(tt.mul(Dd::from(self.b[i][d])))
        };
        for j in 0..n {
            let lo = j.saturating_sub(w);
            // off-diagonal entries of row j
            for i in lo..j {
                let mut s = entry(j, j - i);
                for k in j.saturating_sub(w).max(i.saturating_sub(w))..i {
                    s = s.sub(l[j][j - k].mul(l[i][i - k]).mul(dv[k]));
                }
                l[j][j - i] = s.div(dv[i]);
            }
            let mut d = entry(j, 0);
            for k in lo..j {
                d = d.sub(l[j][j - k].mul(l[j][j - k]).mul(dv[k]));
            }
            if d.hi == 0.0 {
                d = Dd::from(f64::EPSILON * f64::EPSILON);
            }
            if d.hi < 0.0 {
                neg += 1;
            }
            dv[j] = d;
        }
        neg
    }

    /// Eigenvalues in `(lo, hi)`, ascending, to about one ulp.
    pub fn eigenvalues_in(&self, lo: f64, hi: f64) -> Vec<f64> {
        let (c_lo, c_hi) = (self.count_below(lo), self.count_below(hi));
        (c_lo..c_hi)
            .map(|i| {
                // smallest t with count(t) > i
                let (mut a, mut b) = (lo, hi);
                loop {
                    let mid = 0.5 * (a + b);
                    if mid <= a || mid >= b {
                        break b;
                    }
                    if self.count_below(mid) > i {
                        b = mid;
                    } else {
                        a = mid;
                    }
                }
            })
            .collect()
    }

    /// `B`-normalized eigenvector for the eigenvalue `lambda`, with its
    /// largest component positive.
    pub fn eigenvector(&self, lambda: f64) -> Result<Vec<f64>> {
        let n = self.n;
        let m = CMatrix::from_fn(n, n, |i, j| self.dense_a[(i, j)] - self.dense_b[(i, j)] * lambda);
        let lu = LuFactors::new(&m).or_else(|_| {
            let nudge = lambda.abs().max(1.0) * 1e-14;
            LuFactors::new(&CMatrix::from_fn(n, n, |i, j| {
                self.dense_a[(i, j)] - self.dense_b[(i, j)] * (lambda + nudge)
            }))
        })?;
        let mut x = CMatrix::from_fn(n, 1, |i, _| Complex64::new(1.0 + (i as f64 * 0.7548776662).fract(), 0.0));
        for _ in 0..3 {
            let bx = self.dense_b.matmul(&x)?;
            x = lu.solve(&bx)?;
            let s = x.data().iter().map(|z| z.norm()).fold(0.0, f64::max);
            x = CMatrix::from_fn(n, 1, |i, _| x[(i, 0)] / s);
        }
        let bx = self.dense_b.matmul(&x)?;
        let xbx: f64 = (0..n).map(|i| x[(i, 0)].re * bx[(i, 0)].re).sum();
        if !(xbx > 0.0) {
            return Err(Error::InvalidSpec("reference eigenvector has no B-norm".into()));
        }
        let big = (0..n).max_by(|&p, &q| x[(p, 0)].re.abs().total_cmp(&x[(q, 0)].re.abs())).unwrap_or(0);
        let s = xbx.sqrt() * x[(big, 0)].re.signum();
        Ok((0..n).map(|i| x[(i, 0)].re / s).collect())
    }
}

/// Whether some real multiple of `r` lies in the enclosure `x`, allowing a
/// relative slack `tol` for the error of `r` itself.
pub fn contains_direction(x: &IMatrix, r: &[f64], tol: f64) -> bool {
    if x.rows() != r.len() || x.cols() != 1 {
        return false;
    }
    let scale = x.data().iter().map(|z| z.mid().norm()).fold(0.0, f64::max);
    let slack = tol * scale;
    let (mut c_lo, mut c_hi) = (f64::NEG_INFINITY, f64::INFINITY);
    for (z, &rq) in x.data().iter().zip(r) {
        if z.im.inf() > slack || z.im.sup() < -slack {
            return false;
        }
        let (lo, hi) = (z.re.inf() - slack, z.re.sup() + slack);
        if rq == 0.0 {
            if lo > 0.0 || hi < 0.0 {
                return false;
            }
            continue;
        }
        let (a, b) = if rq > 0.0 { (lo / rq, hi / rq) } else { (hi / rq, lo / rq) };
        c_lo = c_lo.max(a);
        c_hi = c_hi.min(b);
    }
    c_lo <= c_hi && (c_lo > 0.0 || c_hi < 0.0)
}
