//! Antisymmetric well-depth perturbation about a symmetric double well.
//!
//! The left well is raised and the right lowered by the same `delta_v`.
//! Everything is first order in `delta_v` but not in `v = delta_v / delta_e`,
//! so strong localization (`v >> 1`) is covered.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::isolated::{IsolatedWellSolution, WellPair};
use crate::params::{reduce, ReducedParams, WellSpec};
use crate::tunneling::{delta_e_closed_form, solve_r0, Parity, DEFAULT_MAX_ITER, DEFAULT_TOL};

/// Largest relative mismatch of the two barrier exponents accepted as
/// symmetric.
pub const SYMMETRY_TOL: f64 = 1e-9;

/// `|delta_v|` must stay below this fraction of the smallest potential step.
pub const MAX_STEP_FRACTION: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymmetricBase {
    pub a_sym: f64,
    pub e_bar: f64,
    pub delta_e: f64,
    pub f_coef: f64,
    pub g_coef: f64,
    pub p_small: f64,
    pub wells: WellPair,
    pub reduced: ReducedParams,
}

/// `U (S_inner^2 T_inner + S_outer^2 T_outer)` for one well.
fn well_weight(w: &IsolatedWellSolution) -> f64 {
    w.u_cap * (w.s_inner * w.s_inner * w.t_inner + w.s_outer * w.s_outer * w.t_outer)
}

pub fn symmetric_base(spec: &WellSpec) -> Result<SymmetricBase> {
    let reduced = reduce(spec)?;
    let wells = WellPair::solve(&reduced)?;
    let (a_left, a_right) = (wells.left.a_coef, wells.right.a_coef);
    let a_sym = 0.5 * (a_left + a_right);
    if (a_right - a_left).abs() > SYMMETRY_TOL * a_sym {
        return Err(Error::NotSymmetric { a_left, a_right });
    }
    let fixed = solve_r0(
        Parity::Ground,
        a_left,
        a_right,
        wells.coupling.p_cap,
        DEFAULT_TOL,
        DEFAULT_MAX_ITER,
    )?;
    let left_weight = well_weight(&wells.left);
    let right_weight = well_weight(&wells.right);
    let e_left = spec.v_m2 + reduced.k_m2 * wells.left.y_cap * wells.left.y_cap;
    let e_right = spec.v_2 + reduced.k_2 * wells.right.y_cap * wells.right.y_cap;
    Ok(SymmetricBase {
        a_sym,
        e_bar: 0.5 * (e_left + e_right),
        delta_e: delta_e_closed_form(a_sym, reduced.k_0, fixed.p_small),
        f_coef: (right_weight - left_weight) / (2.0 * PI),
        g_coef: 1.0 - (right_weight + left_weight) / (2.0 * PI),
        p_small: fixed.p_small,
        wells,
        reduced,
    })
}

impl SymmetricBase {
    pub fn v_ratio(&self, delta_v: f64) -> f64 {
        delta_v / self.delta_e
    }

    pub fn check_step(&self, delta_v: f64) -> Result<()> {
        let min_step = self.reduced.min_step();
        if !(delta_v.abs() < MAX_STEP_FRACTION * min_step) {
            return Err(Error::PerturbationTooLarge { delta_v, min_step });
        }
        Ok(())
    }
}

/// First-order shifts caused by `delta_v`. Fields ending in `_rel` are
/// relative (`d alpha / alpha` etc.); the `a` shifts are relative to the
/// common unperturbed `a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeltaLedger {
    pub delta_v: f64,
    pub alpha_m3_rel: f64,
    pub alpha_m1_rel: f64,
    pub alpha_1_rel: f64,
    pub alpha_3_rel: f64,
    pub y_m2_rel: f64,
    pub y_2_rel: f64,
    pub s_m3_rel: f64,
    pub s_m1_rel: f64,
    pub s_1_rel: f64,
    pub s_3_rel: f64,
    pub a_m1_rel: f64,
    pub a_1_rel: f64,
}

impl DeltaLedger {
    pub fn beta_m1_rel(&self) -> f64 {
        self.alpha_m1_rel
    }

    pub fn beta_1_rel(&self) -> f64 {
        self.alpha_1_rel
    }

    /// `a_1 - a_m1` after the perturbation.
    pub fn a_gap(&self, a_sym: f64) -> f64 {
        a_sym * (self.a_1_rel - self.a_m1_rel)
    }
}

/// The four well-dependent shifts of one side, before the side's sign.
struct SideShifts {
    y: f64,
    s_outer: f64,
    s_inner: f64,
    a: f64,
}

fn side_shifts(w: &IsolatedWellSolution, w_inner: f64, w_outer: f64) -> SideShifts {
    let k = w.u_cap / (2.0 * PI);
    let py = PI * w.y_cap;
    SideShifts {
        y: k * (w.t_inner / w_inner + w.t_outer / w_outer),
        s_outer: k * (w.t_inner / w_inner - (w.t_inner + py) / w_outer),
        s_inner: k * (w.t_outer / w_outer - (w.t_outer + py) / w_inner),
        a: k * ((w.s_inner * w.c_inner + w.t_outer + py) / (w.c_inner * w.c_inner * w_inner)
            - w.t_inner * w.t_inner * w.t_outer / w_outer),
    }
}

pub fn delta_ledger(
    base: &SymmetricBase,
    reduced: &ReducedParams,
    delta_v: f64,
) -> Result<DeltaLedger> {
    base.check_step(delta_v)?;
    let left = side_shifts(&base.wells.left, reduced.w_m1, reduced.w_m3);
    let right = side_shifts(&base.wells.right, reduced.w_1, reduced.w_3);
    Ok(DeltaLedger {
        delta_v,
        alpha_m3_rel: delta_v / (2.0 * reduced.w_m3),
        alpha_m1_rel: delta_v / (2.0 * reduced.w_m1),
        alpha_1_rel: -delta_v / (2.0 * reduced.w_1),
        alpha_3_rel: -delta_v / (2.0 * reduced.w_3),
        y_m2_rel: -left.y * delta_v,
        y_2_rel: right.y * delta_v,
        s_m3_rel: -left.s_outer * delta_v,
        s_m1_rel: -left.s_inner * delta_v,
        s_1_rel: right.s_inner * delta_v,
        s_3_rel: right.s_outer * delta_v,
        a_m1_rel: -left.a * delta_v,
        a_1_rel: right.a * delta_v,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerturbedLevels {
    pub v_ratio: f64,
    pub delta_v: f64,
    pub e_left: f64,
    pub e_right: f64,
    pub e0: f64,
    pub e1: f64,
    pub z_asym: f64,
    /// `P_R / P_L` of the ground state.
    pub prob_ratio: f64,
}

pub fn perturbed_levels(base: &SymmetricBase, delta_v: f64) -> Result<PerturbedLevels> {
    base.check_step(delta_v)?;
    let v = base.v_ratio(delta_v);
    let (de, f, g) = (base.delta_e, base.f_coef, base.g_coef);
    let z = g * v;
    let root = z.hypot(1.0);
    Ok(PerturbedLevels {
        v_ratio: v,
        delta_v,
        e_left: base.e_bar + de * (f * v + z),
        e_right: base.e_bar + de * (f * v - z),
        e0: base.e_bar + de * (f * v - root),
        e1: base.e_bar + de * (f * v + root),
        z_asym: z,
        prob_ratio: (2.0 * z.asinh()).exp(),
    })
}

/// Potential shift that produces the ground-state ratio `P_R / P_L`.
pub fn invert_ratio(base: &SymmetricBase, prob_ratio: f64) -> Result<f64> {
    if !(prob_ratio > 0.0) || !prob_ratio.is_finite() {
        return Err(Error::Domain(prob_ratio));
    }
    let root = prob_ratio.sqrt();
    Ok(base.delta_e / (2.0 * base.g_coef) * (root - 1.0 / root))
}

/// `[[E_L, -dE], [-dE, E_R]]`
pub fn two_level_matrix(levels: &PerturbedLevels, delta_e: f64) -> [[f64; 2]; 2] {
    [[levels.e_left, -delta_e], [-delta_e, levels.e_right]]
}

/// Relative residuals `|H psi - E psi| / |E|` of the ground and excited
/// two-level vectors built from the closed-form probabilities.
pub fn two_level_check(base: &SymmetricBase, delta_v: f64) -> Result<(f64, f64)> {
    let levels = perturbed_levels(base, delta_v)?;
    let h = two_level_matrix(&levels, base.delta_e);
    let r = levels.z_asym.asinh();
    let p_left = 1.0 / (1.0 + (2.0 * r).exp());
    let p_right = 1.0 / (1.0 + (-2.0 * r).exp());
    let ground = [p_left.sqrt(), p_right.sqrt()];
    let excited = [-p_right.sqrt(), p_left.sqrt()];
    let residual = |psi: [f64; 2], e: f64| {
        let r0 = h[0][0] * psi[0] + h[0][1] * psi[1] - e * psi[0];
        let r1 = h[1][0] * psi[0] + h[1][1] * psi[1] - e * psi[1];
        r0.hypot(r1) / e.abs()
    };
    Ok((residual(ground, levels.e0), residual(excited, levels.e1)))
}
