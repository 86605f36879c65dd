use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("curvature must be positive, got lambda = {0}")]
    NonpositiveCurvature(f64),

    #[error("radius must be nonnegative, got r = {0}")]
    NegativeRadius(f64),

    #[error("Pochhammer symbol (c)_k vanishes at k = {k} (c = {c}) before the series terminates")]
    PoleInSeries { c: f64, k: u32 },

    #[error("A = 0 leaves the offset -B/A undefined")]
    ZeroA,

    #[error("X(x) = {re} + {im}i is not real for these parameters")]
    ComplexResult { re: f64, im: f64 },

    #[error("dX/dx = {0} is too small at this point; the potential is singular there")]
    DegenerateDerivative(f64),

    #[error("singular point at {coordinate} = {value}")]
    SingularPoint { coordinate: &'static str, value: f64 },

    #[error("x = {x} lies outside the image of the coordinate map (supremum {sup})")]
    OutOfImage { x: f64, sup: f64 },

    #[error("nonpositive weight or flux coefficient at node {index} (x = {x})")]
    NonpositiveWeight { index: usize, x: f64 },

    #[error("non-finite operator coefficient at node {index} (x = {x})")]
    NonFiniteCoefficient { index: usize, x: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("mode {index} is not resolved by the grid (eigenvalue {value} within 5% of the spectral edge {edge})")]
    Unresolved { index: usize, value: f64, edge: f64 },

    #[error("trial function changes sign near x = {0}")]
    NodeDetected(f64),

    #[error("cannot normalize a function with zero norm")]
    ZeroNorm,
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
