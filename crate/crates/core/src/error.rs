use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid physical parameters: {0}")]
    InvalidParams(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid state label: {0}")]
    InvalidLabel(String),

    #[error("point ({x}, {y}) lies in a nodal region of the wavefunction")]
    NodalRegion { x: f64, y: f64 },

    #[error("hyperbolic frame is singular at the origin")]
    OriginSingular,

    #[error("superposition mixes phase signs; the sum leaves the polynomial-times-phase family")]
    RepresentationMismatch,

    #[error("negative degeneracy level {0}")]
    NegativeLevel(i64),

    #[error("no closed-form stationary current for n = {0} (supported: 0, 1, 2)")]
    UnsupportedOrder(usize),

    #[error("velocity field is not irrotational on the region (max |vorticity| = {violation:e})")]
    NotIrrotational { violation: f64 },

    #[error("velocity field is not solenoidal on the region (max |divergence| = {violation:e})")]
    NotSolenoidal { violation: f64 },

    #[error("line integrals disagree between paths by {mismatch:e}")]
    PathDependent { mismatch: f64 },

    #[error(
        "no monomial z^a fits the complex potential (best relative residual {best_residual:e})"
    )]
    NoMonomialFit { best_residual: f64 },

    #[error("empty sample set")]
    EmptySamples,

    #[error("streamline seed ({x}, {y}) is outside the bounds")]
    SeedOutOfBounds { x: f64, y: f64 },
}
