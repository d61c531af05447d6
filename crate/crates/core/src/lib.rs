//! Ground and first excited states of a particle in a one-dimensional double
//! square well, in the regime where the central barrier is thick enough that
//! tunneling through it is a small correction.
//!
//! The pipeline is:
//!
//! 1. [`params`]: validate a [`WellSpec`] and reduce it to dimensionless
//!    constants ([`ReducedParams`]).
//! 2. [`isolated`]: solve each well with the barrier taken infinitely thick.
//! 3. [`tunneling`]: restore the finite barrier to first order in the
//!    tunneling parameter, giving both energies, the splitting, and the
//!    left/right localization.
//! 4. [`perturb`]: closed-form response to an antisymmetric shift of the two
//!    well floors.
//! 5. [`wavefunc`]: piecewise wavefunctions, probabilities, superpositions.
//!
//! [`oracle`] solves the same problem without the thick-barrier expansion by
//! shooting, and is the reference the approximations are measured against.

pub mod error;
pub mod example;
pub mod isolated;
pub mod oracle;
pub mod params;
pub mod perturb;
pub mod tunneling;
pub mod wavefunc;

pub use error::{Error, Result};
pub use isolated::{BarrierCoupling, IsolatedWellSolution, SeriesEstimate, Side, WellPair};

pub use oracle::{ErrorReport, ShootResult};
pub use params::{ReducedParams, WellSpec};
pub use perturb::{DeltaLedger, PerturbedLevels, SymmetricBase};
pub use tunneling::{CoupledSolution, FixedPoint, Parity, SplittingResult, TunnelingModel};
pub use wavefunc::{SamplePoint, SingleWellState, WavefunctionModel};
