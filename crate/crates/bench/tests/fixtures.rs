use doublewell::TunnelingModel;
use doublewell_bench::barrier_family;

#[test]
fn every_benched_family_member_solves() {
    for factor in [2.0, 5.0, 20.0] {
        let model = TunnelingModel::solve(&barrier_family(factor)).unwrap();
        assert!(model.splitting.delta_e > 0.0);
        assert!(model.splitting.e1 >= model.splitting.e0);
    }
}

#[test]
fn splitting_shrinks_along_the_family() {
    let gaps: Vec<f64> = [2.0, 5.0, 20.0]
        .iter()
        .map(|&f| {
            TunnelingModel::solve(&barrier_family(f))
                .unwrap()
                .splitting
                .delta_e
        })
        .collect();
    assert!(gaps.windows(2).all(|w| w[1] < w[0]), "{gaps:?}");
}
