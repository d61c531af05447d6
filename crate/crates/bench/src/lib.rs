//! Spec fixtures shared by the criterion benches.

use doublewell::WellSpec;

/// The worked example with the central barrier scaled to `factor` times the
/// well width.
pub fn barrier_family(factor: f64) -> WellSpec {
    let base = doublewell::example::worked_example_spec();
    WellSpec {
        w_0: factor * base.w_2,
        ..base
    }
}
