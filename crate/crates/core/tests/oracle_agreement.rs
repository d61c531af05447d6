mod common;

use common::{random_unit, rel, symmetric_from_unit, thick_model};
use doublewell::example::worked_example_spec;
use doublewell::oracle::{compare_with_tol, find_levels};
use doublewell::{TunnelingModel, WellSpec};
use rand::rngs::StdRng;
use rand::SeedableRng;

fn family(multiple: f64) -> WellSpec {
    let s = worked_example_spec();
    WellSpec {
        w_0: multiple * s.w_2,
        ..s
    }
}

fn max_error(spec: &WellSpec) -> f64 {
    let r = compare_with_tol(spec, 1e-13).unwrap();
    r.e0_rel_error.max(r.e1_rel_error)
}

#[test]
fn worked_example_agrees_to_round_off() {
    let r = compare_with_tol(&worked_example_spec(), 1e-13).unwrap();
    assert!(r.e0_rel_error < 1e-11 && r.e1_rel_error < 1e-11, "{r:?}");
    assert!(rel(r.prob_ratio_exact, 1.0) < 1e-6);
}

#[test]
fn errors_shrink_as_the_barrier_thickens() {
    let errors: Vec<f64> = (1..=5).map(|k| max_error(&family(k as f64))).collect();
    for pair in errors.windows(2) {
        assert!(pair[1] < 1.1 * pair[0], "{errors:?}");
    }
    assert!(errors[1] < 1e-5, "{errors:?}");
}

#[test]
fn thin_barrier_errors_within_second_order_bound() {
    for k in [2.0, 3.0, 4.0] {
        let spec = family(k);
        let r0 = TunnelingModel::solve(&spec).unwrap().ground_fixed.r0;
        let err = max_error(&spec);
        assert!(
            err < 10.0 * (-2.0 * r0).exp(),
            "w0 = {k} w2: {err:e} at r0 = {r0}"
        );
    }
}

#[test]
fn random_symmetric_specs_agree() {
    let mut rng = StdRng::seed_from_u64(0x0_7ac1e);
    let mut checked = 0;
    while checked < 6 {
        let spec = symmetric_from_unit(random_unit(&mut rng));
        let Some(model) = thick_model(&spec, 5.0) else {
            continue;
        };
        let r0 = model.ground_fixed.r0;
        if r0 > 16.0 {
            continue;
        }
        let err = max_error(&spec);
        assert!(
            err < (10.0 * (-2.0 * r0).exp()).max(1e-13),
            "{spec:?}: {err:e} at r0 = {r0}"
        );
        checked += 1;
    }
}

#[test]
fn translation_leaves_levels_unchanged() {
    let spec = family(3.0);
    let moved = WellSpec {
        x_m3: 123.25,
        ..spec
    };
    let (a0, a1) = find_levels(&spec, 1e-14).unwrap();
    let (b0, b1) = find_levels(&moved, 1e-14).unwrap();
    assert!(rel(a0, b0) < 1e-12 && rel(a1, b1) < 1e-12);
}
