//! Quadrature of the complex moments, truncation bounds and assembly of the
//! reduced pencils.

mod assemble;
mod bounds;
mod contour;
mod problem;
mod select;

pub use assemble::{
    assemble_reduced_moments, assemble_s, hankel_from_moments, rr_pencil, shifted_matrix, solve_at_nodes,
    solve_nodes_all, MomentSet, THREADS_ENV,
};
pub use bounds::{d_factor_oracle, d_factor_unshifted, enclose_in_parts, truncation_bound_moment, truncation_bound_s};
pub use contour::{contour_from_interval, Contour};
pub use problem::ProblemSpec;
pub use select::{compute_c1, compute_c2, n_bound, select_n, NMode};

/// Reduction applied to the discretized moments.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Approach {
    #[serde(rename = "rr")]
    RayleighRitz,
    #[serde(rename = "hankel")]
    Hankel,
}

impl Approach {
    pub fn name(self) -> &'static str {
        match self {
            Approach::RayleighRitz => "rr",
            Approach::Hankel => "hankel",
        }
    }
}

impl std::str::FromStr for Approach {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s.trim() {
            "rr" => Ok(Approach::RayleighRitz),
            "hankel" => Ok(Approach::Hankel),
            other => Err(crate::Error::InvalidSpec(format!("unknown approach {other:?}"))),
        }
    }
}
