//! Approximate and verified dense linear algebra.

mod eig;
mod krawczyk;
mod lu;
mod spectral;

pub use eig::{hermitian_seeds, verify_eigenpairs_small, EigSeed, SmallEigEnclosure, SmallEigFailure};
pub use krawczyk::{krawczyk_enclose, krawczyk_solve, LinearEnclosure};
pub use lu::{approx_solve, LuFactors};
pub use spectral::{
    inertia_count, is_positive_definite, lambda_min_lower_bound, nearest_outside_gap, negative_count, GapMethod,
};
