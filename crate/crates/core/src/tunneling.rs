//! First-order tunneling correction.
//!
//! With the barrier finite, each well's `y` moves off its isolated value `Y`
//! by a fraction `eps = c * exp(-2 r_side)`, where `r_side` is the decay
//! exponent from the barrier edge to the barrier node. The two sides are
//! tied together by `r_left + r_right = r0 = kappa_0 w_0`, and eliminating
//! the `eps`'s leaves a scalar fixed point for `r0` per parity:
//!
//! ```text
//! ground:  r0 = (a_l + a_r)/2 + sqrt(((a_r - a_l)/2)^2 + P exp(-2 r0))
//! excited: r0 = (a_l + a_r)/2 - sqrt(((a_r - a_l)/2)^2 + P exp(-2 r0))
//! ```

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::isolated::{IsolatedWellSolution, WellPair};
use crate::params::{reduce, ReducedParams, WellSpec};

pub const DEFAULT_TOL: f64 = 1e-13;
pub const DEFAULT_MAX_ITER: usize = 100;

/// Largest fractional shift of `y` for which the first-order expansion is
/// trusted.
pub const EPS_LIMIT: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Ground,
    Excited,
}

impl Parity {
    /// Number of sign changes of the eigenfunction.
    pub fn nodes(self) -> usize {
        match self {
            Parity::Ground => 0,
            Parity::Excited => 1,
        }
    }
}

/// Converged `r0` fixed point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FixedPoint {
    pub r0: f64,
    /// `P exp(-2 r0)` at the returned `r0`.
    pub p_small: f64,
    pub iterations: usize,
}

/// Iterates the `r0` fixed point for one parity, starting from the
/// decoupled value (`p = 0`).
pub fn solve_r0(
    parity: Parity,
    a_left: f64,
    a_right: f64,
    p_cap: f64,
    tol: f64,
    max_iter: usize,
) -> Result<FixedPoint> {
    let mid = 0.5 * (a_left + a_right);
    let half_gap = 0.5 * (a_right - a_left);
    let sign = match parity {
        Parity::Ground => 1.0,
        Parity::Excited => -1.0,
    };
    let mut r0 = match parity {
        Parity::Ground => a_left.max(a_right),
        Parity::Excited => a_left.min(a_right),
    };
    for iteration in 1..=max_iter {
        let p = p_cap * (-2.0 * r0).exp();
        let next = mid + sign * (half_gap * half_gap + p).sqrt();
        if parity == Parity::Excited && next <= 0.0 {
            return Err(Error::ExcitedBelowZero(next));
        }
        let change = (next - r0).abs();
        r0 = next;
        if change <= tol * r0.abs() {
            return Ok(FixedPoint {
                r0,
                p_small: p_cap * (-2.0 * r0).exp(),
                iterations: iteration,
            });
        }
    }
    Err(Error::NoConvergence {
        last: r0,
        residual: fixed_point_residual(parity, a_left, a_right, r0, p_cap * (-2.0 * r0).exp()),
    })
}

/// `r0 - (a_l + a_r)/2 -+ sqrt(((a_r - a_l)/2)^2 + p)`; zero at the fixed point.
pub fn fixed_point_residual(
    parity: Parity,
    a_left: f64,
    a_right: f64,
    r0: f64,
    p_small: f64,
) -> f64 {
    let half_gap = 0.5 * (a_right - a_left);
    let root = (half_gap * half_gap + p_small).sqrt();
    match parity {
        Parity::Ground => r0 - 0.5 * (a_left + a_right) - root,
        Parity::Excited => r0 - 0.5 * (a_left + a_right) + root,
    }
}

/// Tunneling-corrected state of one parity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoupledSolution {
    pub parity: Parity,
    pub r0: f64,
    pub p_small: f64,
    pub eps_left: f64,
    pub eps_right: f64,
    pub y_left: f64,
    pub y_right: f64,
    pub r_left: f64,
    pub r_right: f64,
    pub energy_left_estimate: f64,
    pub energy_right_estimate: f64,
    /// Mean of the two estimates.
    pub energy: f64,
    pub z_asym: f64,
    pub r_asym: f64,
    pub prob_left: f64,
    pub prob_right: f64,
    /// Isolated-well `Y` of each side, kept so differences between parities
    /// can be formed without cancellation.
    pub y_cap_left: f64,
    pub y_cap_right: f64,
    /// Confinement energies `K_m2`, `K_2`.
    pub conf_left: f64,
    pub conf_right: f64,
}

/// Splits `sqrt(d^2 + 4p)` into the two positive factors `(q + d)/2` and
/// `(q - d)/2` whose product is `p`, without cancellation.
fn split_factors(d: f64, p: f64) -> (f64, f64) {
    let q = (d * d + 4.0 * p).sqrt();
    if d >= 0.0 {
        let big = 0.5 * (q + d);
        let small = if big > 0.0 { p / big } else { 0.0 };
        (big, small)
    } else {
        let big = 0.5 * (q - d);
        let small = if big > 0.0 { p / big } else { 0.0 };
        (small, big)
    }
}

fn ratio_or_zero(num: f64, den: f64) -> f64 {
    if num == 0.0 {
        0.0
    } else {
        num / den
    }
}

/// Turns a converged fixed point into energies, localization and node
/// placement.
pub fn correct_energy(
    parity: Parity,
    left: &IsolatedWellSolution,
    right: &IsolatedWellSolution,
    fixed: &FixedPoint,
    reduced: &ReducedParams,
    spec: &WellSpec,
) -> Result<CoupledSolution> {
    let r0 = fixed.r0;
    let p = fixed.p_small;
    let d = right.a_coef - left.a_coef;
    // (q + d)/2 and (q - d)/2, q = sqrt(d^2 + 4p)
    let (plus, minus) = split_factors(d, p);
    // ground: eps_l b_l = r0 - a_l = (q + d)/2, eps_r b_r = (q - d)/2
    // excited: the roles swap, eps_l b_l = a_l - r0 = (q - d)/2
    let (eps_left, eps_right) = match parity {
        Parity::Ground => (
            ratio_or_zero(plus, left.b_coef),
            ratio_or_zero(minus, right.b_coef),
        ),
        Parity::Excited => (
            ratio_or_zero(minus, left.b_coef),
            ratio_or_zero(plus, right.b_coef),
        ),
    };
    let worst = eps_left.max(eps_right);
    if worst > EPS_LIMIT || !worst.is_finite() {
        return Err(Error::AssumptionViolated(worst));
    }
    let (y_left, y_right) = match parity {
        Parity::Ground => (
            left.y_cap * (1.0 - eps_left),
            right.y_cap * (1.0 - eps_right),
        ),
        Parity::Excited => (
            left.y_cap * (1.0 + eps_left),
            right.y_cap * (1.0 + eps_right),
        ),
    };
    let energy_left_estimate = spec.v_m2 + reduced.k_m2 * y_left * y_left;
    let energy_right_estimate = spec.v_2 + reduced.k_2 * y_right * y_right;

    let (r_left, r_right) = if eps_left > 0.0 && eps_right > 0.0 {
        (
            -0.5 * (eps_left / left.c_coef).ln(),
            -0.5 * (eps_right / right.c_coef).ln(),
        )
    } else {
        (0.5 * r0, 0.5 * r0)
    };

    let z_asym = if p > 0.0 {
        d / (2.0 * p.sqrt())
    } else if d == 0.0 {
        0.0
    } else {
        d.signum() * f64::INFINITY
    };
    let r_asym = z_asym.asinh();
    // ground: P_L/P_R = exp(-2r); excited: swapped
    let (prob_left, prob_right) = match parity {
        Parity::Ground => (logistic(-2.0 * r_asym), logistic(2.0 * r_asym)),
        Parity::Excited => (logistic(2.0 * r_asym), logistic(-2.0 * r_asym)),
    };

    Ok(CoupledSolution {
        parity,
        r0,
        p_small: p,
        eps_left,
        eps_right,
        y_left,
        y_right,
        r_left,
        r_right,
        energy_left_estimate,
        energy_right_estimate,
        energy: 0.5 * (energy_left_estimate + energy_right_estimate),
        z_asym,
        r_asym,
        prob_left,
        prob_right,
        y_cap_left: left.y_cap,
        y_cap_right: right.y_cap,
        conf_left: reduced.k_m2,
        conf_right: reduced.k_2,
    })
}

/// `1 / (1 + exp(-t))`, saturating cleanly at the infinities.
fn logistic(t: f64) -> f64 {
    1.0 / (1.0 + (-t).exp())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplittingResult {
    pub e_bar: f64,
    /// Half the gap `E1 - E0`.
    pub delta_e: f64,
    pub e0: f64,
    pub e1: f64,
}

/// Splitting from the two parities.
///
/// `delta_e` is `(e1 - e0)/2`, formed per side as
/// `K Y^2 (eps~ + eps)(2 + eps~ - eps)` so it keeps full relative precision
/// even when the gap is ten orders of magnitude below the energies.
pub fn splitting(ground: &CoupledSolution, excited: &CoupledSolution) -> SplittingResult {
    let side_gap = |conf: f64, y_cap: f64, eps0: f64, eps1: f64| {
        conf * y_cap * y_cap * (eps1 + eps0) * (2.0 + eps1 - eps0)
    };
    let left = side_gap(
        ground.conf_left,
        ground.y_cap_left,
        ground.eps_left,
        excited.eps_left,
    );
    let right = side_gap(
        ground.conf_right,
        ground.y_cap_right,
        ground.eps_right,
        excited.eps_right,
    );
    SplittingResult {
        e_bar: 0.5 * (ground.energy + excited.energy),
        delta_e: 0.25 * (left + right),
        e0: ground.energy,
        e1: excited.energy,
    }
}

/// Half-splitting of a symmetric double well, `2 a K_0 sqrt(p) / pi^2`.
pub fn delta_e_closed_form(a: f64, k_0: f64, p_small: f64) -> f64 {
    2.0 * a * k_0 * p_small.sqrt() / (PI * PI)
}

/// `(A_m2 / A_2)^2` for the ground state, or its excited-state analogue.
pub fn coefficient_ratio(
    parity: Parity,
    solution: &CoupledSolution,
    left: &IsolatedWellSolution,
    right: &IsolatedWellSolution,
) -> f64 {
    let prefactor = right.s_inner * right.s_inner * left.b_coef * left.c_coef
        / (left.s_inner * left.s_inner * right.b_coef * right.c_coef);
    match parity {
        Parity::Ground => prefactor * (-2.0 * solution.r_asym).exp(),
        Parity::Excited => prefactor * (2.0 * solution.r_asym).exp(),
    }
}

/// Everything the tunneling pipeline produces for one spec.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TunnelingModel {
    pub spec: WellSpec,
    pub reduced: ReducedParams,
    pub wells: WellPair,
    pub ground_fixed: FixedPoint,
    pub excited_fixed: FixedPoint,
    pub ground: CoupledSolution,
    pub excited: CoupledSolution,
    pub splitting: SplittingResult,
}

impl TunnelingModel {
    pub fn solve(spec: &WellSpec) -> Result<TunnelingModel> {
        let reduced = reduce(spec)?;
        let wells = WellPair::solve(&reduced)?;
        let solve_parity = |parity| -> Result<(FixedPoint, CoupledSolution)> {
            let fixed = solve_r0(
                parity,
                wells.left.a_coef,
                wells.right.a_coef,
                wells.coupling.p_cap,
                DEFAULT_TOL,
                DEFAULT_MAX_ITER,
            )?;
            let solution =
                correct_energy(parity, &wells.left, &wells.right, &fixed, &reduced, spec)?;
            Ok((fixed, solution))
        };
        let (ground_fixed, ground) = solve_parity(Parity::Ground)?;
        let (excited_fixed, excited) = solve_parity(Parity::Excited)?;
        Ok(TunnelingModel {
            spec: *spec,
            reduced,
            wells,
            ground_fixed,
            excited_fixed,
            ground,
            excited,
            splitting: splitting(&ground, &excited),
        })
    }

    pub fn solution(&self, parity: Parity) -> &CoupledSolution {
        match parity {
            Parity::Ground => &self.ground,
            Parity::Excited => &self.excited,
        }
    }

    pub fn coefficient_ratio(&self, parity: Parity) -> f64 {
        coefficient_ratio(
            parity,
            self.solution(parity),
            &self.wells.left,
            &self.wells.right,
        )
    }
}
