#![allow(dead_code)]

use doublewell::params::reduce;
use doublewell::perturb::{symmetric_base, DeltaLedger};
use doublewell::{TunnelingModel, WellPair, WellSpec};
use rand::Rng;

/// Maps ten numbers in `[0, 1)` onto a valid, mildly asymmetric spec.
pub fn spec_from_unit(u: [f64; 10]) -> WellSpec {
    let v_m2 = -1.0 + u[1];
    let v_2 = v_m2 + 0.1 * (u[2] - 0.5);
    WellSpec {
        hbar: 1.0,
        mass: 0.5 + 2.5 * u[0],
        v_m4: v_m2 + 0.3 + 3.7 * u[4],
        v_m2,
        v_0: v_m2.max(v_2) + 0.5 + 2.5 * u[3],
        v_2,
        v_4: v_2 + 0.3 + 3.7 * u[5],
        w_m2: 1.0 + 3.0 * u[6],
        w_0: 4.0 + 11.0 * u[8],
        w_2: 1.0 + 3.0 * u[7],
        x_m3: -5.0 + 10.0 * u[9],
    }
}

/// Symmetric counterpart of [`spec_from_unit`].
pub fn symmetric_from_unit(u: [f64; 10]) -> WellSpec {
    let s = spec_from_unit(u);
    WellSpec {
        v_2: s.v_m2,
        v_4: s.v_m4,
        v_0: s.v_m2 + 0.5 + 2.5 * u[3],
        w_2: s.w_m2,
        ..s
    }
}

/// [`symmetric_from_unit`] with the wells offset by `v` splittings, the
/// regime where both wells share the states.
pub fn tunneling_from_unit(u: [f64; 10], v: f64) -> Option<WellSpec> {
    let spec = symmetric_from_unit(u);
    let base = symmetric_base(&spec).ok()?;
    Some(spec.with_well_shift(v * base.delta_e))
}

pub fn random_unit<R: Rng>(rng: &mut R) -> [f64; 10] {
    let mut u = [0.0; 10];
    for x in &mut u {
        *x = rng.gen::<f64>();
    }
    u
}

/// The solved model when both fixed points have `r0 >= min_r0`.
pub fn thick_model(spec: &WellSpec, min_r0: f64) -> Option<TunnelingModel> {
    let model = TunnelingModel::solve(spec).ok()?;
    (model.ground_fixed.r0 >= min_r0 && model.excited_fixed.r0 >= min_r0).then_some(model)
}

pub fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

/// Isolated-well quantities in ledger order.
pub fn pipeline_values(spec: &WellSpec) -> [f64; 12] {
    let r = reduce(spec).unwrap();
    let w = WellPair::solve(&r).unwrap();
    [
        r.alpha_m3,
        r.alpha_m1,
        r.alpha_1,
        r.alpha_3,
        w.left.y_cap,
        w.right.y_cap,
        w.left.s_outer,
        w.left.s_inner,
        w.right.s_inner,
        w.right.s_outer,
        w.left.a_coef,
        w.right.a_coef,
    ]
}

pub fn ledger_values(l: &DeltaLedger) -> [f64; 12] {
    [
        l.alpha_m3_rel,
        l.alpha_m1_rel,
        l.alpha_1_rel,
        l.alpha_3_rel,
        l.y_m2_rel,
        l.y_2_rel,
        l.s_m3_rel,
        l.s_m1_rel,
        l.s_1_rel,
        l.s_3_rel,
        l.a_m1_rel,
        l.a_1_rel,
    ]
}

/// Relative derivatives `d ln q / dV` by central differences of step `h`.
pub fn central_difference(spec: &WellSpec, h: f64) -> [f64; 12] {
    let plus = pipeline_values(&spec.with_well_shift(h));
    let minus = pipeline_values(&spec.with_well_shift(-h));
    let mid = pipeline_values(spec);
    let mut out = [0.0; 12];
    for i in 0..12 {
        out[i] = (plus[i] - minus[i]) / (2.0 * h * mid[i]);
    }
    out
}

/// Zero crossings of `f` on a uniform grid of `n` points.
pub fn sign_changes(f: impl Fn(f64) -> f64, x_min: f64, x_max: f64, n: usize) -> Vec<f64> {
    let step = (x_max - x_min) / (n - 1) as f64;
    let mut out = Vec::new();
    let mut prev = f(x_min);
    for i in 1..n {
        let x = x_min + step * i as f64;
        let cur = f(x);
        if prev != 0.0 && cur != 0.0 && prev.signum() != cur.signum() {
            out.push(x);
        }
        if cur != 0.0 {
            prev = cur;
        }
    }
    out
}
