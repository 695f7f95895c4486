use num_traits::ToPrimitive;

use chwave_algebra::rat;
use chwave_core::certificates::certify::{certify, certify_many, PeriodRegime};
use chwave_core::model::classify_by_theta;
use chwave_core::period::{deep_grid, sample_grid, shape_from_slopes};
use chwave_core::quadrature::QuadOptions;
use chwave_core::Execution;

/// Exact certificates and the sampled period function agree on the regime.
#[test]
fn certificates_match_sampled_shapes() {
    let thetas = [
        rat(1, 100),
        rat(1, 40),
        rat(1, 25),
        rat(1, 20),
        rat(3, 50),
        rat(13, 200),
        rat(1, 12),
        rat(1, 8),
        rat(3, 20),
        rat(1, 6),
        rat(1, 4),
        rat(3, 1),
    ];
    let reports = certify_many(&thetas, Execution::default());
    for (q, rep) in thetas.iter().zip(reports) {
        let rep = rep.unwrap();
        assert!(rep.conclusive, "{q}");
        let t = q.to_f64().unwrap();
        let grid = deep_grid(t, 200, 1e-6, 1e-45).unwrap();
        let slopes: Vec<f64> = sample_grid(&grid, 1.0, &QuadOptions::default(), Execution::default())
            .iter()
            .map(|s| s.t_prime)
            .collect();
        let sampled = shape_from_slopes(&slopes).regime();
        assert_eq!(rep.regime.regime(), Some(sampled), "theta = {q}");
        assert_eq!(sampled, classify_by_theta(t), "theta = {q}");
    }
}

#[test]
fn sequential_and_parallel_reports_agree() {
    let thetas = [rat(1, 32), rat(1, 5)];
    let a = certify_many(&thetas, Execution::Sequential);
    let b = certify_many(&thetas, Execution::Parallel);
    for (x, y) in a.into_iter().zip(b) {
        let (x, y) = (x.unwrap(), y.unwrap());
        assert_eq!((x.z, x.bound, x.regime), (y.z, y.bound, y.regime));
        assert_eq!(x.identity_checks, y.identity_checks);
    }
}

#[test]
fn certify_reference_cases() {
    let r = certify(&rat(1, 32)).unwrap();
    assert_eq!((r.z, r.bound, r.regime), (0, Some(0), PeriodRegime::Decreasing));
    let r = certify(&rat(1, 8)).unwrap();
    assert_eq!((r.z, r.bound, r.regime), (2, Some(2), PeriodRegime::UniqueMaximum));
    assert_eq!(r.index_i, 3);
    let r = certify(&rat(1, 5)).unwrap();
    assert_eq!((r.index_i, r.bound, r.regime), (1, Some(0), PeriodRegime::Increasing));
}
