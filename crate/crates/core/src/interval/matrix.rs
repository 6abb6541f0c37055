use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use super::complex::CInterval;
use super::round::{add_up, mul_up, sqrt_up};
use crate::error::{Error, Result};

/// Structural hint carried by an [`IMatrix`]. Operations never rely on it
/// for soundness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixTag {
    RealSymmetric,
    Hermitian,
    General,
}

/// Dense row-major complex point matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(CMatrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMatrix { rows, cols, data }
    }

    pub fn from_real(rows: usize, cols: usize, vals: &[f64]) -> Result<Self> {
        Self::from_vec(rows, cols, vals.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Complex64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(|z| z.im == 0.0)
    }

    pub fn conj_transpose(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// Floating product, no rigor.
    pub fn matmul(&self, b: &CMatrix) -> Result<CMatrix> {
        if self.cols != b.rows {
            return Err(Error::DimensionMismatch(format!("{}x{} times {}x{}", self.rows, self.cols, b.rows, b.cols)));
        }
        let mut c = CMatrix::zeros(self.rows, b.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let brow = b.row(k);
                let crow = c.row_mut(i);
                for (cj, bj) in crow.iter_mut().zip(brow) {
                    *cj += a * bj;
                }
            }
        }
        Ok(c)
    }

    pub fn sub(&self, b: &CMatrix) -> CMatrix {
        CMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)] - b[(i, j)])
    }

    pub fn fro_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Dense row-major complex interval matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct IMatrix {
    rows: usize,
    cols: usize,
    data: Vec<CInterval>,
    tag: MatrixTag,
}

impl IMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IMatrix { rows, cols, data: vec![CInterval::ZERO; rows * cols], tag: MatrixTag::General }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = CInterval::ONE;
        }
        m.tag = MatrixTag::RealSymmetric;
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> CInterval) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IMatrix { rows, cols, data, tag: MatrixTag::General }
    }

    pub fn from_point(m: &CMatrix) -> Self {
        IMatrix {
            rows: m.rows,
            cols: m.cols,
            data: m.data.iter().map(|&z| CInterval::point(z)).collect(),
            tag: MatrixTag::General,
        }
    }

    /// Point matrix from real entries given row by row.
    pub fn from_real(rows: usize, cols: usize, vals: &[f64]) -> Result<Self> {
        Ok(Self::from_point(&CMatrix::from_real(rows, cols, vals)?))
    }

    pub fn with_tag(mut self, tag: MatrixTag) -> Self {
        self.tag = tag;
        self
    }

    pub fn tag(&self) -> MatrixTag {
        self.tag
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[CInterval] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[CInterval] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [CInterval] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// True when every imaginary part is exactly zero.
    pub fn is_real(&self) -> bool {
        self.data.iter().all(|z| z.is_real())
    }

    pub fn mid(&self) -> CMatrix {
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z.mid()).collect() }
    }

    /// Largest entry radius.
    pub fn max_rad(&self) -> f64 {
        self.data.iter().map(|z| z.rad()).fold(0.0, f64::max)
    }

    pub fn column(&self, j: usize) -> IMatrix {
        IMatrix::from_fn(self.rows, 1, |i, _| self[(i, j)])
    }

    /// Columns `j0..j1`.
    pub fn columns(&self, j0: usize, j1: usize) -> IMatrix {
        IMatrix::from_fn(self.rows, j1 - j0, |i, j| self[(i, j0 + j)])
    }

    pub fn block(&self, i0: usize, j0: usize, r: usize, c: usize) -> IMatrix {
        IMatrix::from_fn(r, c, |i, j| self[(i0 + i, j0 + j)])
    }

    pub fn set_block(&mut self, i0: usize, j0: usize, b: &IMatrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(i0 + i, j0 + j)] = b[(i, j)];
            }
        }
    }

    pub fn hstack(blocks: &[IMatrix]) -> Result<IMatrix> {
        let rows = blocks.first().map_or(0, |b| b.rows);
        if blocks.iter().any(|b| b.rows != rows) {
            return Err(Error::DimensionMismatch("hstack row counts differ".into()));
        }
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = IMatrix::zeros(rows, cols);
        let mut j0 = 0;
        for b in blocks {
            out.set_block(0, j0, b);
            j0 += b.cols;
        }
        Ok(out)
    }

    pub fn conj_transpose(&self) -> IMatrix {
        IMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj()).with_tag(self.tag)
    }

    pub fn map(&self, f: impl Fn(CInterval) -> CInterval) -> IMatrix {
        IMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| f(z)).collect(), tag: self.tag }
    }

    fn check_same(&self, b: &IMatrix) -> Result<()> {
        if self.rows != b.rows || self.cols != b.cols {
            return Err(Error::DimensionMismatch(format!("{}x{} vs {}x{}", self.rows, self.cols, b.rows, b.cols)));
        }
        Ok(())
    }

    pub fn add(&self, b: &IMatrix) -> Result<IMatrix> {
        self.check_same(b)?;
        let data = self.data.iter().zip(&b.data).map(|(&x, &y)| x + y).collect();
        Ok(IMatrix { rows: self.rows, cols: self.cols, data, tag: MatrixTag::General })
    }

    pub fn sub(&self, b: &IMatrix) -> Result<IMatrix> {
        self.check_same(b)?;
        let data = self.data.iter().zip(&b.data).map(|(&x, &y)| x - y).collect();
        Ok(IMatrix { rows: self.rows, cols: self.cols, data, tag: MatrixTag::General })
    }

    pub fn scale(&self, s: CInterval) -> IMatrix {
        self.map(|z| if z.is_zero() { z } else { s * z }).with_tag(MatrixTag::General)
    }

    /// Adds `[-t, t]` to the real and imaginary part of every entry.
    pub fn inflate(&self, t: f64) -> IMatrix {
        self.map(|z| z.inflate(t))
    }

    pub fn hull(&self, b: &IMatrix) -> Result<IMatrix> {
        self.check_same(b)?;
        let data = self.data.iter().zip(&b.data).map(|(&x, &y)| x.hull(y)).collect();
        Ok(IMatrix { rows: self.rows, cols: self.cols, data, tag: MatrixTag::General })
    }

    pub fn contains_point(&self, m: &CMatrix) -> bool {
        self.rows == m.rows && self.cols == m.cols && self.data.iter().zip(&m.data).all(|(z, &p)| z.contains(p))
    }

    pub fn subset_of(&self, b: &IMatrix) -> bool {
        self.rows == b.rows && self.cols == b.cols && self.data.iter().zip(&b.data).all(|(x, &y)| x.subset_of(y))
    }

    /// Intersection with the conjugate transpose. A Hermitian matrix inside
    /// `self` is inside the result; an empty entry proves none exists.
    pub fn hermitian_part(&self) -> Result<IMatrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("hermitian part of non-square matrix".into()));
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in i..self.cols {
                let z = self[(i, j)].intersect(self[(j, i)].conj()).ok_or(Error::NotHermitian { row: i, col: j })?;
                out[(i, j)] = z;
                out[(j, i)] = z.conj();
            }
        }
        out.tag = MatrixTag::Hermitian;
        Ok(out)
    }

    /// Column indices of structurally nonzero entries, per row.
    pub fn row_nonzeros(&self) -> Vec<Vec<usize>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().enumerate().filter(|(_, z)| !z.is_zero()).map(|(j, _)| j).collect())
            .collect()
    }

    /// Half bandwidth of the structurally nonzero pattern.
    pub fn bandwidth(&self) -> usize {
        let mut bw = 0;
        for i in 0..self.rows {
            for (j, z) in self.row(i).iter().enumerate() {
                if !z.is_zero() {
                    bw = bw.max(i.abs_diff(j));
                }
            }
        }
        bw
    }

    pub fn fro_norm_sup(&self) -> f64 {
        let mut s = 0.0;
        for z in &self.data {
            let m = z.magnitude_sup();
            s = add_up(s, mul_up(m, m));
        }
        sqrt_up(s)
    }

    /// Upper bound of the max row sum of magnitudes.
    pub fn inf_norm_sup(&self) -> f64 {
        (0..self.rows).map(|i| self.row(i).iter().fold(0.0, |s, z| add_up(s, z.magnitude_sup()))).fold(0.0, f64::max)
    }

    pub fn one_norm_sup(&self) -> f64 {
        let mut cs = vec![0.0; self.cols];
        for i in 0..self.rows {
            for (c, z) in cs.iter_mut().zip(self.row(i)) {
                *c = add_up(*c, z.magnitude_sup());
            }
        }
        cs.into_iter().fold(0.0, f64::max)
    }

    /// `‖M‖₂ ≤ min(‖M‖_F, sqrt(‖M‖₁‖M‖∞))`.
    pub fn two_norm_sup(&self) -> f64 {
        let holder = sqrt_up(mul_up(self.one_norm_sup(), self.inf_norm_sup()));
        self.fro_norm_sup().min(holder)
    }

    /// Interval product. Structural zeros of either factor are skipped, which
    /// keeps banded operands cheap; summation runs in ascending inner index.
    pub fn matmul(&self, b: &IMatrix) -> Result<IMatrix> {
        if self.cols != b.rows {
            return Err(Error::DimensionMismatch(format!("{}x{} times {}x{}", self.rows, self.cols, b.rows, b.cols)));
        }
        let bnz = b.row_nonzeros();
        let mut out = IMatrix::zeros(self.rows, b.cols);
        for i in 0..self.rows {
            let arow = self.row(i);
            let crow = &mut out.data[i * b.cols..(i + 1) * b.cols];
            for (k, &a) in arow.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let brow = &b.data[k * b.cols..(k + 1) * b.cols];
                for &j in &bnz[k] {
                    crow[j] = crow[j] + a * brow[j];
                }
            }
        }
        Ok(out)
    }

    /// `P · self` for a point matrix `P`, without materializing `P` as
    /// intervals.
    pub fn left_mul_point(&self, p: &CMatrix) -> Result<IMatrix> {
        if p.cols != self.rows {
            return Err(Error::DimensionMismatch(format!("{}x{} times {}x{}", p.rows, p.cols, self.rows, self.cols)));
        }
        let bnz = self.row_nonzeros();
        let mut out = IMatrix::zeros(p.rows, self.cols);
        for i in 0..p.rows {
            let crow = &mut out.data[i * self.cols..(i + 1) * self.cols];
            for (k, &a) in p.row(i).iter().enumerate() {
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let a = CInterval::point(a);
                let brow = &self.data[k * self.cols..(k + 1) * self.cols];
                for &j in &bnz[k] {
                    crow[j] = crow[j] + a * brow[j];
                }
            }
        }
        Ok(out)
    }
}

impl Index<(usize, usize)> for IMatrix {
    type Output = CInterval;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &CInterval {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut CInterval {
        &mut self.data[i * self.cols + j]
    }
}

pub fn imat_mul(a: &IMatrix, b: &IMatrix) -> Result<IMatrix> {
    a.matmul(b)
}

pub fn fro_norm_sup(m: &IMatrix) -> f64 {
    m.fro_norm_sup()
}

pub fn two_norm_sup(m: &IMatrix) -> f64 {
    m.two_norm_sup()
}
