use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} = {value} is outside its domain ({expected})")]
    Domain {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("state components share the momentum p = {0}")]
    DuplicateMomentum(f64),

    #[error("state has zero norm")]
    ZeroNorm,

    #[error(
        "momentum magnitudes differ ({0} vs {1}); closed-form synthesis needs equal |p|, \
         use Gaussian-packet quadrature with an explicit K(p0) instead"
    )]
    UnequalMagnitudes(f64, f64),

    #[error("a free preparation context must be boosted with the linear map")]
    FreePreparation,

    #[error("grid mismatch: {0}")]
    GridMismatch(&'static str),

    #[error("detection probability at the density maximum is zero; ratio undefined")]
    UndefinedRatio,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(name: &'static str, value: f64, expected: &'static str) -> Error {
    Error::Domain {
        name,
        value,
        expected,
    }
}
