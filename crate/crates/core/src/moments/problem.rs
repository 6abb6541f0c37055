use crate::error::{Error, Result};
use crate::interval::{CMatrix, IMatrix};

/// A generalized Hermitian eigenproblem restricted to `Ω = [lo, hi]`.
#[derive(Clone, Debug)]
pub struct ProblemSpec {
    pub a: IMatrix,
    pub b: IMatrix,
    pub lo: f64,
    pub hi: f64,
    /// Number of eigenvalues in `Ω`.
    pub m: usize,
    /// Block size `L` (columns of the probe `V`).
    pub block_size: usize,
    /// Number of moment blocks `M`; `L·M = m`.
    pub num_moments: usize,
    /// Probe matrix, `n × L`.
    pub v: CMatrix,
    /// Quadrature tolerance.
    pub delta: f64,
    /// Upper bound for `rank B`.
    pub r_bound: usize,
}

impl ProblemSpec {
    pub fn n(&self) -> usize {
        self.a.rows()
    }

    /// Checks the structural invariants. Hermitian symmetry is checked on
    /// the enclosures: some Hermitian matrix must lie inside each.
    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        let bad = |s: String| Err(Error::InvalidSpec(s));
        if !self.a.is_square() || !self.b.is_square() || self.b.rows() != n {
            return bad("A and B must be square of equal size".into());
        }
        if !(self.lo < self.hi) || !self.lo.is_finite() || !self.hi.is_finite() {
            return bad(format!("interval [{}, {}] is empty or not finite", self.lo, self.hi));
        }
        if self.block_size == 0 || self.num_moments == 0 || self.block_size * self.num_moments != self.m {
            return bad(format!("L·M = {}·{} does not equal m = {}", self.block_size, self.num_moments, self.m));
        }
        if self.v.rows() != n || self.v.cols() != self.block_size {
            return bad(format!("V is {}x{}, expected {n}x{}", self.v.rows(), self.v.cols(), self.block_size));
        }
        if !(self.delta > 0.0) {
            return bad(format!("delta must be positive, got {}", self.delta));
        }
        if self.r_bound > n || self.r_bound < self.m {
            return bad(format!("rank bound {} outside [m, n] = [{}, {n}]", self.r_bound, self.m));
        }
        self.a.hermitian_part().map_err(|_| Error::InvalidSpec("A is not Hermitian".into()))?;
        self.b.hermitian_part().map_err(|_| Error::InvalidSpec("B is not Hermitian".into()))?;
        Ok(())
    }

    /// True when `A`, `B` and `V` have no imaginary parts, so node solutions
    /// come in conjugate pairs.
    pub fn is_real(&self) -> bool {
        self.a.is_real() && self.b.is_real() && self.v.is_real()
    }

    /// Enclosure of `Vᴴ B V`.
    pub fn vbv(&self) -> Result<IMatrix> {
        let v = IMatrix::from_point(&self.v);
        v.conj_transpose().matmul(&self.b.matmul(&v)?)
    }

    /// Enclosure of `B V`.
    pub fn bv(&self) -> Result<IMatrix> {
        self.b.matmul(&IMatrix::from_point(&self.v))
    }
}
