use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("transcendental map evaluated at an essential singularity")]
    EssentialSingularity,
    #[error("derivative requested at a pole")]
    PoleInput,
    #[error("degenerate parameters: {0}")]
    DegenerateParameters(&'static str),
    #[error("period-3 quartic degenerates; lower-degree roots: {lower_degree_roots:?}")]
    DegenerateQuartic { lower_degree_roots: Vec<Complex64> },
    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("Newton converged to the excluded solution b = 0")]
    ZeroSolution,
    #[error("rescaling is singular for alpha in {{0, 3/2, 2}}")]
    SingularRescale,
    #[error("floating-point continued fraction exhausted after {terms} quotients")]
    PrecisionExhausted { terms: usize },
    #[error("no sample classified as a periodic ring")]
    NoRingFound,
    #[error("seed orbit is not recurrent")]
    NotRecurrent,
    #[error("center is not enclosed by the ring orbit")]
    CenterOutsideRing,
    #[error("unit circle is not invariant (deviation {0:e})")]
    CircleNotInvariant(f64),
    #[error("bracket does not straddle the target rotation number")]
    BracketInvalid,
    #[error("tongue search stopped; deepest successful level {deepest}")]
    TongueNotFound { deepest: usize },
    #[error("angle outside the branch domain")]
    DomainError,
    #[error("path passes through zero")]
    PathThroughZero,
    #[error("path is under-sampled (argument increment {0} exceeds pi/2)")]
    UnderSampled(f64),
    #[error("path is not closed")]
    PathNotClosed,
    #[error("operation not supported for this map family")]
    Unsupported,
}

pub type Result<T> = std::result::Result<T, Error>;
