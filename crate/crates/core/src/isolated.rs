//! Each well on its own, with the central barrier taken infinitely thick.
//!
//! In that limit the bound state of a well is fixed by a single scalar `Y`
//! (the square root of the kinetic energy in units of the well's confinement
//! energy) satisfying
//!
//! ```text
//! asin(alpha_inner * Y) + asin(alpha_outer * Y) = pi - pi * Y
//! ```
//!
//! where `alpha_inner` belongs to the step facing the central barrier and
//! `alpha_outer` to the step facing the outer region. Everything the
//! tunneling correction needs downstream is derived from `Y`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{bound_state_exists, ReducedParams};

pub const DEFAULT_TOL: f64 = 1e-13;
pub const DEFAULT_MAX_ITER: usize = 50;

/// Relative offset below `min(1, 1/alpha_max)` used when the first-order
/// estimate is not a usable Newton start.
const FALLBACK_OFFSET: f64 = 1e-9;

/// Which well.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    /// `(alpha_inner, alpha_outer, beta)` for this well.
    pub fn alphas(self, reduced: &ReducedParams) -> (f64, f64, f64) {
        match self {
            Side::Left => (reduced.alpha_m1, reduced.alpha_m3, reduced.beta_m1),
            Side::Right => (reduced.alpha_1, reduced.alpha_3, reduced.beta_1),
        }
    }

    /// `(gamma_inner, gamma_outer)` for this well.
    pub fn gammas(self, reduced: &ReducedParams) -> (f64, f64) {
        match self {
            Side::Left => (reduced.gamma_m1, reduced.gamma_m3),
            Side::Right => (reduced.gamma_1, reduced.gamma_3),
        }
    }
}

/// Infinitely-thick-barrier solution of one well plus the constants the
/// first-order tunneling correction is built from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IsolatedWellSolution {
    pub y_cap: f64,
    pub s_outer: f64,
    pub s_inner: f64,
    pub phi_outer: f64,
    pub phi_inner: f64,
    pub c_inner: f64,
    pub t_outer: f64,
    pub t_inner: f64,
    pub u_cap: f64,
    /// Zeroth-order `kappa_0 * w_0` seen from this well.
    pub a_coef: f64,
    /// Sensitivity of `a` to the fractional shift of `y`.
    pub b_coef: f64,
    /// Prefactor of `exp(-2 r_side)` in the fractional shift of `y`.
    pub c_coef: f64,
}

/// `P = b_left * b_right * c_left * c_right`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BarrierCoupling {
    pub p_cap: f64,
}

/// Both wells of a spec solved in the thick-barrier limit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WellPair {
    pub left: IsolatedWellSolution,
    pub right: IsolatedWellSolution,
    pub coupling: BarrierCoupling,
}

impl WellPair {
    pub fn solve(reduced: &ReducedParams) -> Result<WellPair> {
        let left = solve_side(reduced, Side::Left)?;
        let right = solve_side(reduced, Side::Right)?;
        Ok(WellPair {
            left,
            right,
            coupling: coupling(&left, &right),
        })
    }

    pub fn side(&self, side: Side) -> &IsolatedWellSolution {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }
}

/// Solves and derives one well with the default tolerances.
pub fn solve_side(reduced: &ReducedParams, side: Side) -> Result<IsolatedWellSolution> {
    let (inner, outer, beta) = side.alphas(reduced);
    let y = solve_y(inner, outer, DEFAULT_TOL, DEFAULT_MAX_ITER)?;
    derive_well(y, inner, outer, beta)
}

/// Residual of the isolated-well equation; zero at the root.
pub fn y_residual(y: f64, alpha_inner: f64, alpha_outer: f64) -> f64 {
    (alpha_inner * y).asin() + (alpha_outer * y).asin() + PI * y - PI
}

fn gamma(alpha: f64, alpha_inner: f64, alpha_outer: f64) -> f64 {
    PI * alpha / (PI + alpha_inner + alpha_outer)
}

/// Upper end of the admissible range of `Y`: `min(1, 1/alpha_max)`.
fn y_upper(alpha_inner: f64, alpha_outer: f64) -> f64 {
    let hi = alpha_inner.max(alpha_outer);
    if hi > 1.0 {
        1.0 / hi
    } else {
        1.0
    }
}

/// Newton starting point.
///
/// Uses the first-order series estimate while the series is in its
/// convergent regime (every `gamma < 1`) and the estimate is admissible;
/// otherwise starts just below `min(1, 1/alpha_max)`, from where Newton on
/// this convex residual converges monotonically.
pub fn newton_initial(
    alpha_inner: f64,
    alpha_outer: f64,
    gamma_inner: f64,
    gamma_outer: f64,
) -> f64 {
    let upper = y_upper(alpha_inner, alpha_outer);
    let hi = alpha_inner.max(alpha_outer);
    let estimate = PI / (PI + alpha_inner + alpha_outer)
        * (1.0 - (gamma_inner.powi(3) + gamma_outer.powi(3)) / (6.0 * PI));
    let admissible = estimate > 0.0 && estimate <= 1.0 && hi * estimate < 1.0;
    if gamma_inner.max(gamma_outer) < 1.0 && admissible {
        estimate
    } else {
        upper * (1.0 - FALLBACK_OFFSET)
    }
}

/// One Newton update of the isolated-well residual.
pub fn newton_step(y: f64, alpha_inner: f64, alpha_outer: f64) -> Result<f64> {
    let si = alpha_inner * y;
    let so = alpha_outer * y;
    if si >= 1.0 || so >= 1.0 {
        return Err(Error::Domain(si.max(so)));
    }
    let di = (1.0 - si * si).sqrt();
    let d_o = (1.0 - so * so).sqrt();
    let numerator = PI + si / di + so / d_o - si.asin() - so.asin();
    let denominator = PI + alpha_inner / di + alpha_outer / d_o;
    Ok(numerator / denominator)
}

/// Result of [`solve_y_detailed`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootSolve {
    pub y: f64,
    pub iterations: usize,
    pub residual: f64,
}

/// Solves the isolated-well equation for `Y` by Newton's method.
pub fn solve_y(alpha_inner: f64, alpha_outer: f64, tol: f64, max_iter: usize) -> Result<f64> {
    solve_y_detailed(alpha_inner, alpha_outer, tol, max_iter).map(|r| r.y)
}

/// [`solve_y`] with iteration count and final residual.
///
/// Iterates until the relative change in `Y` drops to `tol`. The residual is
/// convex and increasing, so after at most one overshoot Newton approaches
/// the root monotonically from above; an overshoot that leaves the arcsine
/// domain is replaced by the midpoint of the sign bracket.
pub fn solve_y_detailed(
    alpha_inner: f64,
    alpha_outer: f64,
    tol: f64,
    max_iter: usize,
) -> Result<RootSolve> {
    if !bound_state_exists(alpha_inner, alpha_outer) {
        return Err(Error::NoBoundState {
            alpha_inner,
            alpha_outer,
        });
    }
    let upper = y_upper(alpha_inner, alpha_outer);
    let mut lo = 0.0;
    let mut hi = upper;
    let mut y = newton_initial(
        alpha_inner,
        alpha_outer,
        gamma(alpha_inner, alpha_inner, alpha_outer),
        gamma(alpha_outer, alpha_inner, alpha_outer),
    );
    for iteration in 1..=max_iter {
        let f = y_residual(y, alpha_inner, alpha_outer);
        if f == 0.0 {
            return Ok(RootSolve {
                y,
                iterations: iteration,
                residual: f,
            });
        }
        if f < 0.0 {
            lo = y;
        } else {
            hi = y;
        }
        let mut next = newton_step(y, alpha_inner, alpha_outer)?;
        let in_domain = alpha_inner.max(alpha_outer) * next < 1.0;
        if !(next > 0.0 && in_domain) {
            next = 0.5 * (lo + hi);
        }
        let change = (next - y).abs();
        y = next;
        if change <= tol * y {
            return Ok(RootSolve {
                y,
                iterations: iteration,
                residual: y_residual(y, alpha_inner, alpha_outer),
            });
        }
    }
    Err(Error::NoConvergence {
        last: y,
        residual: y_residual(y, alpha_inner, alpha_outer),
    })
}

/// Output of [`series_y`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesEstimate {
    pub y: f64,
    /// Set when the largest `gamma` exceeds 0.9; the series diverges for
    /// `gamma >= 1` and is already poor before that.
    pub unreliable: bool,
}

/// Truncated small-`gamma` series for `Y`, through ninth order in `gamma`.
pub fn series_y(
    alpha_inner: f64,
    alpha_outer: f64,
    gamma_inner: f64,
    gamma_outer: f64,
) -> SeriesEstimate {
    let g = |n: i32| gamma_inner.powi(n) + gamma_outer.powi(n);
    let (g3, g5, g7, g9) = (g(3), g(5), g(7), g(9));
    let pi2 = PI * PI;
    let bracket = 1.0 - g3 / (6.0 * PI) - 3.0 * g5 / (40.0 * PI) + g3 * g3 / (12.0 * pi2)
        - 5.0 * g7 / (112.0 * PI)
        + g3 * g5 / (10.0 * pi2)
        - 35.0 * g9 / (1152.0 * PI)
        - g3 * g3 * g3 / (18.0 * pi2 * PI)
        + 25.0 * g3 * g7 / (336.0 * pi2)
        + 9.0 * g5 * g5 / (320.0 * pi2);
    SeriesEstimate {
        y: PI / (PI + alpha_inner + alpha_outer) * bracket,
        unreliable: gamma_inner.max(gamma_outer) > 0.9,
    }
}

/// Derives the per-well constants from a solved `Y`.
pub fn derive_well(
    y: f64,
    alpha_inner: f64,
    alpha_outer: f64,
    beta: f64,
) -> Result<IsolatedWellSolution> {
    let s_inner = alpha_inner * y;
    let s_outer = alpha_outer * y;
    if s_inner >= 1.0 || s_outer >= 1.0 {
        return Err(Error::Domain(s_inner.max(s_outer)));
    }
    let c_inner = (1.0 - s_inner * s_inner).sqrt();
    let c_outer = (1.0 - s_outer * s_outer).sqrt();
    let t_inner = s_inner / c_inner;
    let t_outer = s_outer / c_outer;
    let u_cap = PI / (t_outer + t_inner + PI * y);
    let a_coef = PI * c_inner / beta;
    Ok(IsolatedWellSolution {
        y_cap: y,
        s_outer,
        s_inner,
        phi_outer: s_outer.asin(),
        phi_inner: s_inner.asin(),
        c_inner,
        t_outer,
        t_inner,
        u_cap,
        a_coef,
        b_coef: t_inner * t_inner * a_coef,
        c_coef: 2.0 / PI * s_inner * c_inner * u_cap,
    })
}

pub fn coupling(left: &IsolatedWellSolution, right: &IsolatedWellSolution) -> BarrierCoupling {
    BarrierCoupling {
        p_cap: left.b_coef * right.b_coef * left.c_coef * right.c_coef,
    }
}
