//! Exact levels by shooting.
//!
//! `(psi, psi')` is carried inwards from the decaying tail on each side with
//! closed-form propagators: through the well, then through half of the
//! barrier. Barrier growth is factored out, so arbitrarily thick barriers
//! stay finite. At the barrier centre both solutions are of comparable size,
//! which keeps the small admixture that encodes the splitting resolvable in
//! double precision.
//!
//! Each half-solution carries its Prüfer angle `theta` (`psi = R sin theta`,
//! `psi' = kappa R cos theta`), including the whole turns made on the way.
//! The sum of the two angles is monotone in the energy and equals
//! `(n + 1) pi` exactly at the level with `n` nodes, so levels are labelled
//! by node count no matter how close together they lie.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{reduce, WellSpec};
use crate::tunneling::{Parity, TunnelingModel};
use crate::wavefunc::WavefunctionModel;

/// Energies sampled across the band before refinement.
pub const SCAN_POINTS: usize = 10_000;

pub const DEFAULT_TOL: f64 = 1e-13;

const MAX_BISECTIONS: usize = 2_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShootResult {
    pub energy: f64,
    /// Normalized Wronskian of the two half-solutions at the barrier centre,
    /// `sin(theta_left + theta_right)`. Zero at a level, bounded by 1.
    pub mismatch: f64,
    /// Nodes of the level whose phase window contains `energy`; equals the
    /// zero count of the eigenfunction at an eigenvalue.
    pub node_count: usize,
    /// `(theta_left + theta_right) / pi - 1`, increasing in the energy and
    /// equal to the node count at each level.
    pub phase: f64,
}

/// One side propagated from its outer wall to the barrier centre, in a
/// coordinate pointing inwards.
#[derive(Debug, Clone, Copy)]
struct HalfShot {
    theta: f64,
    /// Unit vector `(psi, psi' / kappa_ref)` at the centre.
    psi: f64,
    slope: f64,
}

/// `kappa_ref` fixes the Prüfer scale at the centre; it must not depend on
/// the energy for the angle to be monotone.
fn half_shot(
    kappa_outer: f64,
    k: f64,
    width: f64,
    kappa_0: f64,
    half_barrier: f64,
    kappa_ref: f64,
) -> HalfShot {
    // decaying tail: psi = 1, psi' = kappa_outer at the outer wall
    let theta_well = (1.0f64).atan2(kappa_outer / k) + k * width;
    let mut turns = (theta_well / PI).floor();
    let (psi, dpsi) = (theta_well.sin(), k * theta_well.cos());

    // psi = a e^{kappa t} + b e^{-kappa t}, scaled by e^{-kappa h}
    let a = 0.5 * (psi + dpsi / kappa_0);
    let b = 0.5 * (psi - dpsi / kappa_0);
    let decay = (-2.0 * kappa_0 * half_barrier).exp();
    let centre_psi = a + b * decay;
    let centre_slope = (a - b * decay) * kappa_0 / kappa_ref;
    if psi != 0.0 && centre_psi != 0.0 && psi.signum() != centre_psi.signum() {
        turns += 1.0;
    }
    let mut frac = centre_psi.atan2(centre_slope);
    if frac < 0.0 {
        frac += PI;
    }
    if frac >= PI {
        frac -= PI;
    }
    let n = centre_psi.hypot(centre_slope);
    HalfShot {
        theta: turns * PI + frac,
        psi: centre_psi / n,
        slope: centre_slope / n,
    }
}

pub fn shoot(spec: &WellSpec, energy: f64) -> Result<ShootResult> {
    let (lower, upper) = spec.energy_band();
    if !(energy > lower && energy < upper) {
        return Err(Error::EnergyOutOfBand {
            energy,
            lower,
            upper,
        });
    }
    let f = spec.wave_factor();
    let kappa_0 = (f * (spec.v_0 - energy)).sqrt();
    let half = 0.5 * spec.w_0;
    let kappa_ref = (f * (spec.v_0 - lower)).sqrt();
    let left = half_shot(
        (f * (spec.v_m4 - energy)).sqrt(),
        (f * (energy - spec.v_m2)).sqrt(),
        spec.w_m2,
        kappa_0,
        half,
        kappa_ref,
    );
    let right = half_shot(
        (f * (spec.v_4 - energy)).sqrt(),
        (f * (energy - spec.v_2)).sqrt(),
        spec.w_2,
        kappa_0,
        half,
        kappa_ref,
    );
    let phase = (left.theta + right.theta) / PI - 1.0;
    Ok(ShootResult {
        energy,
        mismatch: left.psi * right.slope + left.slope * right.psi,
        node_count: (phase + 0.5).floor().max(0.0) as usize,
        phase,
    })
}

fn phase_at(spec: &WellSpec, energy: f64) -> Result<f64> {
    Ok(shoot(spec, energy)?.phase)
}

/// Energy where the phase reaches `target`, bracketed by `(lo, hi)`.
fn bisect_phase(
    spec: &WellSpec,
    mut lo: f64,
    mut hi: f64,
    target: f64,
    tol_rel: f64,
) -> Result<f64> {
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol_rel * mid.abs() || mid <= lo || mid >= hi {
            break;
        }
        let p = phase_at(spec, mid)?;
        if p == target {
            return Ok(mid);
        }
        if p < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Exact ground and excited energies.
pub fn find_levels(spec: &WellSpec, tol_rel: f64) -> Result<(f64, f64)> {
    spec.validate()?;
    let (lower, upper) = spec.energy_band();
    let span = upper - lower;
    let mut grid = Vec::with_capacity(SCAN_POINTS + 2);
    grid.push(lower + 1e-12 * span);
    grid.extend((0..SCAN_POINTS).map(|i| lower + span * (i as f64 + 0.5) / SCAN_POINTS as f64));
    grid.push(upper - 1e-12 * span);
    let phases = grid
        .iter()
        .map(|&e| phase_at(spec, e))
        .collect::<Result<Vec<_>>>()?;

    let level = |nodes: usize| -> Result<f64> {
        let target = nodes as f64;
        let i = phases
            .iter()
            .position(|&p| p >= target)
            .ok_or(Error::LevelNotFound { nodes })?;
        if i == 0 {
            return Err(Error::LevelNotFound { nodes });
        }
        bisect_phase(spec, grid[i - 1], grid[i], target, tol_rel)
    };
    let e0 = level(0)?;
    let e1 = level(1)?;
    if (e1 - e0).abs() <= tol_rel * e0.abs().max(e1.abs()) {
        return Err(Error::DegeneracyUnresolved {
            lower: e0,
            upper: e1,
            tol: tol_rel,
        });
    }
    Ok((e0, e1))
}

pub fn find_level(spec: &WellSpec, which: Parity, tol_rel: f64) -> Result<f64> {
    let (e0, e1) = find_levels(spec, tol_rel)?;
    Ok(match which {
        Parity::Ground => e0,
        Parity::Excited => e1,
    })
}

/// Approximate pipeline against the shooting oracle. Energy errors are
/// relative to the exact mean level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub e0_approx: f64,
    pub e0_exact: f64,
    pub e1_approx: f64,
    pub e1_exact: f64,
    pub delta_e_approx: f64,
    pub delta_e_exact: f64,
    /// Ground-state `P_R / P_L`.
    pub prob_ratio_approx: f64,
    pub prob_ratio_exact: f64,
    pub e0_rel_error: f64,
    pub e1_rel_error: f64,
    pub delta_e_rel_error: f64,
    pub prob_ratio_rel_error: f64,
}

pub fn compare(spec: &WellSpec) -> Result<ErrorReport> {
    compare_with_tol(spec, DEFAULT_TOL)
}

pub fn compare_with_tol(spec: &WellSpec, tol_rel: f64) -> Result<ErrorReport> {
    let approx = TunnelingModel::solve(spec)?;
    let (e0_exact, e1_exact) = find_levels(spec, tol_rel)?;
    let reduced = reduce(spec)?;
    let exact_state = WavefunctionModel::assemble_exact(spec, &reduced, Parity::Ground, e0_exact)?;
    let (pl, pr) = exact_state.probabilities();
    let prob_ratio_exact = pr / pl;
    let prob_ratio_approx = approx.ground.prob_right / approx.ground.prob_left;

    let e_bar = 0.5 * (e0_exact + e1_exact);
    let delta_e_exact = 0.5 * (e1_exact - e0_exact);
    let delta_e_approx = approx.splitting.delta_e;
    Ok(ErrorReport {
        e0_approx: approx.ground.energy,
        e0_exact,
        e1_approx: approx.excited.energy,
        e1_exact,
        delta_e_approx,
        delta_e_exact,
        prob_ratio_approx,
        prob_ratio_exact,
        e0_rel_error: (approx.ground.energy - e0_exact).abs() / e_bar.abs(),
        e1_rel_error: (approx.excited.energy - e1_exact).abs() / e_bar.abs(),
        delta_e_rel_error: ((delta_e_approx - delta_e_exact) / delta_e_exact).abs(),
        prob_ratio_rel_error: ((prob_ratio_approx - prob_ratio_exact) / prob_ratio_exact).abs(),
    })
}
