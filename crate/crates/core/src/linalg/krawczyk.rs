//! Residual-based Krawczyk enclosure for linear systems with interval
//! coefficients and several right-hand sides.

use crate::error::{Error, Result};
use crate::interval::round::{add_up, div_up, mul_up, sub_dn};
use crate::interval::{CInterval, CMatrix, IMatrix, RInterval};

use super::lu::LuFactors;

#[derive(Clone, Debug)]
pub struct LinearEnclosure {
    pub x: IMatrix,
    pub converged: bool,
    /// Upper bound of `‖I − R·C‖∞`.
    pub contraction_factor: f64,
}

/// Encloses the solution set of `C X = RHS`. A non-contracting operator
/// yields `converged = false` and an unbounded `x`.
pub fn krawczyk_enclose(c: &IMatrix, rhs: &IMatrix) -> Result<LinearEnclosure> {
    let n = c.rows();
    if !c.is_square() || rhs.rows() != n {
        return Err(Error::DimensionMismatch(format!(
            "system {}x{} with right-hand side {}x{}",
            c.rows(),
            c.cols(),
            rhs.rows(),
            rhs.cols()
        )));
    }
    let cm = c.mid();
    let lu = LuFactors::new(&cm)?;
    let bm = rhs.mid();
    let mut xt = lu.solve(&bm)?;
    // one floating refinement step
    let corr = lu.solve(&bm.sub(&cm.matmul(&xt)?))?;
    for i in 0..n {
        for j in 0..xt.cols() {
            xt[(i, j)] += corr[(i, j)];
        }
    }
    let r = lu.inverse();

    let res = rhs.sub(&c.matmul(&IMatrix::from_point(&xt))?)?;
    let z = res.left_mul_point(&r)?;
    let g = residual_row_sums(&r, c);
    let contraction = g.iter().copied().fold(0.0, f64::max);

    if !(contraction < 1.0) {
        let whole = CInterval::new(
            RInterval::new(f64::NEG_INFINITY, f64::INFINITY),
            RInterval::new(f64::NEG_INFINITY, f64::INFINITY),
        );
        return Ok(LinearEnclosure {
            x: IMatrix::from_fn(n, rhs.cols(), |_, _| whole),
            converged: false,
            contraction_factor: contraction,
        });
    }

    let denom = sub_dn(1.0, contraction);
    let eps: Vec<f64> = (0..rhs.cols())
        .map(|col| {
            let zmax = (0..n).map(|i| z[(i, col)].magnitude_sup()).fold(0.0, f64::max);
            div_up(zmax, denom)
        })
        .collect();
    let x = IMatrix::from_fn(n, rhs.cols(), |i, col| {
        (CInterval::point(xt[(i, col)]) + z[(i, col)]).inflate(mul_up(g[i], eps[col]))
    });
    Ok(LinearEnclosure { x, converged: true, contraction_factor: contraction })
}

/// Row sums of `|I − R·C|`, rounded upward.
fn residual_row_sums(r: &CMatrix, c: &IMatrix) -> Vec<f64> {
    let n = c.rows();
    let cnz = c.row_nonzeros();
    let mut acc = vec![CInterval::ZERO; n];
    let mut touched = vec![false; n];
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        acc.iter_mut().for_each(|a| *a = CInterval::ZERO);
        touched.iter_mut().for_each(|t| *t = false);
        for (k, &rik) in r.row(i).iter().enumerate() {
            if rik.re == 0.0 && rik.im == 0.0 {
                continue;
            }
            let rik = CInterval::point(rik);
            let crow = c.row(k);
            for &j in &cnz[k] {
                acc[j] = acc[j] + rik * crow[j];
                touched[j] = true;
            }
        }
        let mut s = 0.0;
        for j in 0..n {
            let e = if j == i {
                CInterval::ONE - acc[j]
            } else if touched[j] {
                -acc[j]
            } else {
                continue;
            };
            s = add_up(s, e.magnitude_sup());
        }
        out.push(s);
    }
    out
}

/// Verified solve; a non-contracting operator is an error.
pub fn krawczyk_solve(c: &IMatrix, rhs: &IMatrix) -> Result<LinearEnclosure> {
    let enc = krawczyk_enclose(c, rhs)?;
    if !enc.converged {
        return Err(Error::NotVerified { contraction: enc.contraction_factor });
    }
    Ok(enc)
}
