use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid interval [{inf}, {sup}]")]
    InvalidInterval { inf: f64, sup: f64 },

    #[error("division by an interval containing zero")]
    DivByZeroInterval,

    #[error("domain error: {0}")]
    DomainError(&'static str),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not Hermitian at ({row}, {col})")]
    NotHermitian { row: usize, col: usize },

    #[error("exactly singular pivot in approximate factorization")]
    SingularApprox,

    #[error("verification failed, contraction factor {contraction}")]
    NotVerified { contraction: f64 },

    #[error("clustered eigenvalues could not be separated")]
    ClusterNotSeparated,

    #[error("gap to the nearest outside eigenvalue not certified: {0}")]
    GapNotCertified(String),

    #[error("positive definite B required")]
    PositiveDefiniteRequired,

    #[error("linear solve failed at quadrature node {0}")]
    NodeSolveFailed(usize),

    #[error("eigenvalue lies on the contour")]
    OnContour,

    #[error("invalid problem: {0}")]
    InvalidSpec(String),

    #[error("matrix market: {0}")]
    MatrixMarket(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
