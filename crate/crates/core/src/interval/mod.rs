//! Inf-sup interval arithmetic over reals, complex rectangles and dense
//! matrices, with outward rounding.

mod complex;
mod elementary;
mod matrix;
mod real;
pub mod round;

pub use complex::{c_add, c_div, c_mul, c_sub, magnitude_sup, CInterval};
pub use elementary::{enclose_pi, enclose_sincos};
pub use matrix::{fro_norm_sup, imat_mul, two_norm_sup, CMatrix, IMatrix, MatrixTag};
pub use real::{r_add, r_div, r_mul, r_sub, RInterval};
