//! Floating LU with partial pivoting. Unverified plumbing behind the
//! enclosure methods; structural zeros are skipped so banded inputs factor in
//! `O(n·bw²)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::interval::CMatrix;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Clone, Debug)]
pub struct LuFactors {
    n: usize,
    lu: CMatrix,
    /// Row swapped with row `k` at step `k`.
    piv: Vec<usize>,
    /// Rows `i > k` with a nonzero multiplier in column `k`.
    lower: Vec<Vec<usize>>,
    /// Last structurally nonzero column of each row of `U`.
    upper_end: Vec<usize>,
}

impl LuFactors {
    pub fn new(c: &CMatrix) -> Result<Self> {
        let n = c.rows();
        if c.cols() != n {
            return Err(Error::DimensionMismatch("LU of a non-square matrix".into()));
        }
        let mut a = c.clone();
        let mut end: Vec<usize> = (0..n).map(|i| a.row(i).iter().rposition(|&z| z != ZERO).unwrap_or(0)).collect();
        let mut piv = vec![0; n];
        for k in 0..n {
            let mut p = k;
            let mut best = -1.0;
            for i in k..n {
                let v = a[(i, k)].norm_sqr();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if best <= 0.0 || !best.is_finite() {
                return Err(Error::SingularApprox);
            }
            piv[k] = p;
            if p != k {
                for j in 0..n {
                    let t = a[(k, j)];
                    a[(k, j)] = a[(p, j)];
                    a[(p, j)] = t;
                }
                end.swap(k, p);
            }
            let pivot = a[(k, k)];
            let hk = end[k].max(k);
            for i in k + 1..n {
                let aik = a[(i, k)];
                if aik == ZERO {
                    continue;
                }
                let l = aik / pivot;
                a[(i, k)] = l;
                for j in k + 1..=hk {
                    let ukj = a[(k, j)];
                    if ukj != ZERO {
                        a[(i, j)] -= l * ukj;
                    }
                }
                end[i] = end[i].max(hk);
            }
        }
        // later swaps move stored multipliers, so the lists are built last
        let lower = (0..n).map(|k| (k + 1..n).filter(|&i| a[(i, k)] != ZERO).collect()).collect();
        Ok(LuFactors { n, lu: a, piv, lower, upper_end: end })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Solves `C X = B` in place on a copy of `B`.
    pub fn solve(&self, b: &CMatrix) -> Result<CMatrix> {
        if b.rows() != self.n {
            return Err(Error::DimensionMismatch("right-hand side rows".into()));
        }
        let r = b.cols();
        let mut x = b.clone();
        for k in 0..self.n {
            let p = self.piv[k];
            if p != k {
                for j in 0..r {
                    let t = x[(k, j)];
                    x[(k, j)] = x[(p, j)];
                    x[(p, j)] = t;
                }
            }
        }
        let mut xk = vec![ZERO; r];
        for k in 0..self.n {
            xk.copy_from_slice(x.row(k));
            if xk.iter().all(|&z| z == ZERO) {
                continue;
            }
            for &i in &self.lower[k] {
                let l = self.lu[(i, k)];
                for (xi, &v) in x.row_mut(i).iter_mut().zip(&xk) {
                    *xi -= l * v;
                }
            }
        }
        for k in (0..self.n).rev() {
            let urow = self.lu.row(k);
            let mut acc = x.row(k).to_vec();
            for j in k + 1..=self.upper_end[k].max(k) {
                let u = urow[j];
                if u == ZERO {
                    continue;
                }
                for (a, &v) in acc.iter_mut().zip(x.row(j)) {
                    *a -= u * v;
                }
            }
            let d = urow[k];
            for (xi, a) in x.row_mut(k).iter_mut().zip(acc) {
                *xi = a / d;
            }
        }
        Ok(x)
    }

    pub fn inverse(&self) -> CMatrix {
        self.solve(&CMatrix::identity(self.n)).expect("square identity")
    }
}

/// Approximate solution of `C X = RHS`; no rigor.
pub fn approx_solve(c: &CMatrix, rhs: &CMatrix) -> Result<CMatrix> {
    LuFactors::new(c)?.solve(rhs)
}
