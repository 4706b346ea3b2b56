use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate direction")]
    DegenerateDirection,
    #[error("norm requires o-symmetric body")]
    NotSymmetric,
    #[error("origin is not an interior point of the body")]
    OriginNotInterior,
    #[error("not full-dimensional")]
    NotFullDimensional,
    #[error("invalid body: {0}")]
    InvalidBody(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("out of domain: {0}")]
    Domain(String),
    #[error("not a packing: members {0} and {1} overlap")]
    NotAPacking(usize, usize),
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("inequalities proved only for non-separable systems")]
    NotNonSeparable,
    #[error("family not facet-parallel non-separable")]
    NotFacetParallelNonSeparable,
    #[error("not successively non-separable")]
    NotSuccessive,
    #[error("instance too large for exact SNS search")]
    TooLargeForSns,
    #[error("oracle range exceeded")]
    OracleRange,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("LP failure: {0}")]
    Lp(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
