mod common;

use common::{
    rel, sign_changes, spec_from_unit, symmetric_from_unit, thick_model, tunneling_from_unit,
};
use doublewell::oracle::{find_levels, shoot};
use doublewell::perturb::{perturbed_levels, symmetric_base, two_level_check};
use doublewell::tunneling::fixed_point_residual;
use doublewell::{Parity, TunnelingModel, WavefunctionModel, WellSpec};
use proptest::prelude::*;

fn unit() -> impl Strategy<Value = [f64; 10]> {
    prop::array::uniform10(0.0..1.0f64)
}

fn shared(u: [f64; 10], v: f64) -> Option<TunnelingModel> {
    thick_model(&tunneling_from_unit(u, v)?, 14.0)
}

fn assembled(model: &TunnelingModel, parity: Parity) -> WavefunctionModel {
    WavefunctionModel::assemble(&model.spec, &model.reduced, model.solution(parity)).unwrap()
}

fn potential(spec: &WellSpec, x: f64) -> f64 {
    let [x_m3, x_m1, x_1, x_3] = spec.boundaries();
    match x {
        x if x < x_m3 => spec.v_m4,
        x if x < x_m1 => spec.v_m2,
        x if x < x_1 => spec.v_0,
        x if x < x_3 => spec.v_2,
        _ => spec.v_4,
    }
}

fn near_boundary(spec: &WellSpec, x: f64, margin: f64) -> bool {
    spec.boundaries().iter().any(|b| (x - b).abs() < margin)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 20, ..ProptestConfig::default() })]

    #[test]
    fn continuity_at_all_boundaries(u in unit(), v in -5.0..5.0f64) {
        let model = shared(u, v);
        prop_assume!(model.is_some());
        let model = model.unwrap();
        for parity in [Parity::Ground, Parity::Excited] {
            let residual = assembled(&model, parity).max_continuity_residual();
            prop_assert!(residual < 1e-10, "{parity:?}: {residual:e}");
        }
    }

    #[test]
    fn node_counts(u in unit(), v in -5.0..5.0f64) {
        let model = shared(u, v);
        prop_assume!(model.is_some());
        let model = model.unwrap();
        let spec = model.spec;
        let [x_m3, x_m1, x_1, x_3] = spec.boundaries();
        let (lo, hi) = (x_m3 - 2.0 * spec.w_m2, x_3 + 2.0 * spec.w_2);
        let ground = assembled(&model, Parity::Ground);
        prop_assert!(sign_changes(|x| ground.evaluate(x), lo, hi, 20_001).is_empty());
        let excited = assembled(&model, Parity::Excited);
        let zeros = sign_changes(|x| excited.evaluate(x), lo, hi, 20_001);
        prop_assert_eq!(zeros.len(), 1);
        prop_assert!(zeros[0] > x_m1 && zeros[0] < x_1);
    }

    #[test]
    fn probabilities_sum_to_one(u in unit()) {
        let spec = spec_from_unit(u);
        let model = TunnelingModel::solve(&spec);
        prop_assume!(model.is_ok());
        let model = model.unwrap();
        for parity in [Parity::Ground, Parity::Excited] {
            let s = model.solution(parity);
            prop_assert!((s.prob_left + s.prob_right - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn wavefunction_probabilities_sum_to_one(u in unit(), v in -5.0..5.0f64) {
        let thick = shared(u, v);
        prop_assume!(thick.is_some());
        if let Some(thick) = thick {
            for parity in [Parity::Ground, Parity::Excited] {
                let (pl, pr) = assembled(&thick, parity).probabilities();
                prop_assert!((pl + pr - 1.0).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn excited_above_ground(u in unit()) {
        let model = TunnelingModel::solve(&spec_from_unit(u));
        prop_assume!(model.is_ok());
        let model = model.unwrap();
        prop_assert!(model.splitting.e1 > model.splitting.e0);
        prop_assert!(model.excited.energy > model.ground.energy);
    }

    #[test]
    fn fixed_points_are_consistent(u in unit()) {
        let model = TunnelingModel::solve(&spec_from_unit(u));
        prop_assume!(model.is_ok());
        let model = model.unwrap();
        let (al, ar) = (model.wells.left.a_coef, model.wells.right.a_coef);
        for (parity, fixed) in [(Parity::Ground, model.ground_fixed), (Parity::Excited, model.excited_fixed)] {
            let residual = fixed_point_residual(parity, al, ar, fixed.r0, fixed.p_small);
            prop_assert!(residual.abs() <= 1e-12, "{parity:?}: {residual:e}");
        }
    }

    #[test]
    fn probability_ratios_are_reciprocal(u in unit(), v in -5.0..5.0f64) {
        let model = tunneling_from_unit(u, v).and_then(|spec| thick_model(&spec, 25.0));
        prop_assume!(model.is_some());
        let model = model.unwrap();
        let ground = model.ground.prob_left / model.ground.prob_right;
        let excited = model.excited.prob_left / model.excited.prob_right;
        prop_assert!(rel(ground * excited, 1.0) < 1e-9, "{ground} {excited}");
    }

    #[test]
    fn schrodinger_equation_holds_inside_regions(u in unit(), v in -5.0..5.0f64) {
        let model = shared(u, v);
        prop_assume!(model.is_some());
        let model = model.unwrap();
        let spec = model.spec;
        let f = spec.wave_factor();
        let h = 1e-3;
        for parity in [Parity::Ground, Parity::Excited] {
            let wave = assembled(&model, parity);
            let scale = wave.max_abs() * f * (spec.v_m4.max(spec.v_0).max(spec.v_4) - spec.v_m2.min(spec.v_2));
            let slope_scale = wave.max_abs_derivative();
            let [x_m3, _, _, x_3] = spec.boundaries();
            for i in 0..400 {
                let x = x_m3 - 1.0 + (x_3 - x_m3 + 2.0) * i as f64 / 399.0;
                if near_boundary(&spec, x, 2.0 * h) {
                    continue;
                }
                let (m, c, p) = (wave.evaluate(x - h), wave.evaluate(x), wave.evaluate(x + h));
                let second = (p - 2.0 * c + m) / (h * h);
                let expected = f * (potential(&spec, x) - wave.energy) * c;
                prop_assert!((second - expected).abs() < 1e-4 * scale, "x = {x}: {second} vs {expected}");
                let first = (p - m) / (2.0 * h);
                prop_assert!((first - wave.derivative(x)).abs() < 1e-4 * slope_scale);
            }
        }
    }

    #[test]
    fn perturbed_ratios_are_reciprocal_in_v(u in unit(), v in -50.0..50.0f64) {
        let base = symmetric_base(&symmetric_from_unit(u));
        prop_assume!(base.is_ok());
        let base = base.unwrap();
        let dv = v * base.delta_e;
        prop_assume!(base.check_step(dv).is_ok());
        let plus = perturbed_levels(&base, dv).unwrap();
        let minus = perturbed_levels(&base, -dv).unwrap();
        prop_assert!(rel(plus.prob_ratio * minus.prob_ratio, 1.0) < 1e-10);
        let (g, e) = two_level_check(&base, dv).unwrap();
        prop_assert!(g < 1e-9 && e < 1e-9, "{g:e} {e:e}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 8, ..ProptestConfig::default() })]

    #[test]
    fn oracle_levels_have_zero_and_one_node(u in unit()) {
        let spec = symmetric_from_unit(u);
        let model = thick_model(&spec, 6.0);
        prop_assume!(model.is_some() && model.as_ref().unwrap().ground_fixed.r0 < 16.0);
        let (e0, e1) = find_levels(&spec, 1e-13).unwrap();
        prop_assert!(e1 > e0);
        prop_assert_eq!(shoot(&spec, e0).unwrap().node_count, 0);
        prop_assert_eq!(shoot(&spec, e1).unwrap().node_count, 1);
    }
}
