use thiserror::Error;

/// Everything that can go wrong between reading a spec file and sampling a
/// wavefunction.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid spec: {0}")]
    InvalidSpec(String),

    #[error("spec file line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("arcsine argument out of range: alpha * y = {0}")]
    Domain(f64),

    #[error("no bound state in the isolated well (alpha_inner = {alpha_inner}, alpha_outer = {alpha_outer})")]
    NoBoundState { alpha_inner: f64, alpha_outer: f64 },

    #[error("iteration did not converge: last iterate {last}, residual {residual:e}")]
    NoConvergence { last: f64, residual: f64 },

    #[error(
        "excited-state fixed point drove r0 to {0}; barrier too thin for the tunneling expansion"
    )]
    ExcitedBelowZero(f64),

    #[error("first-order tunneling expansion untrustworthy: epsilon = {0} exceeds 0.1 (barrier too thin)")]
    AssumptionViolated(f64),

    #[error("potential is not left-right symmetric: a_left = {a_left}, a_right = {a_right}")]
    NotSymmetric { a_left: f64, a_right: f64 },

    #[error("perturbation |dV| = {delta_v:e} is not small against the smallest potential step {min_step}")]
    PerturbationTooLarge { delta_v: f64, min_step: f64 },

    #[error("energy {energy} outside the bound-state band ({lower}, {upper})")]
    EnergyOutOfBand { energy: f64, lower: f64, upper: f64 },

    #[error("wavefunction matching residual {0:e} too large; inputs are inconsistent")]
    MatchingResidualTooLarge(f64),

    #[error(
        "grid too coarse: spacing {spacing} exceeds {limit} (16 samples per shortest wavelength)"
    )]
    GridTooCoarse { spacing: f64, limit: f64 },

    #[error("bad sampling range: {0}")]
    BadRange(String),

    #[error("level with {nodes} node(s) not found in the bound-state band")]
    LevelNotFound { nodes: usize },

    #[error("levels {lower} and {upper} cannot be separated at relative tolerance {tol:e}; tighten the tolerance")]
    DegeneracyUnresolved { lower: f64, upper: f64, tol: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
