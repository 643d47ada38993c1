mod common;

use num_traits::ToPrimitive;

use common::*;
use toric_crn::linalg::IntegerMatrix;
use toric_crn::multistat::{multistat_analyze, MultistatError, MultistatOutcome, DEFAULT_TOLERANCE};
use toric_crn::network::{educt_exponents, fixtures, stoichiometric_matrix, RateAssignment, Reaction, ReactionNetwork};
use toric_crn::phospho::{conservation_values, phospho_network};

/// `N·diag(k)·φ(x)` in plain floating point.
fn rhs(net: &ReactionNetwork, k: &[f64], x: &[f64]) -> (Vec<f64>, f64) {
    let n = stoichiometric_matrix(net);
    let y = educt_exponents(net);
    let flux: Vec<f64> = (0..net.num_reactions())
        .map(|j| {
            k[j] * (0..net.num_species())
                .map(|i| x[i].powi(y[(j, i)].to_i32().unwrap()))
                .product::<f64>()
        })
        .collect();
    let scale = flux.iter().fold(0.0f64, |a, b| a.max(*b));
    let out = (0..n.rows())
        .map(|i| (0..n.cols()).map(|j| n[(i, j)].to_f64().unwrap() * flux[j]).sum())
        .collect();
    (out, scale)
}

#[test]
fn witnesses_are_independent_steady_states() {
    let mut rng = rng(30);
    for n in 2..=3 {
        let net = phospho_network(n).unwrap();
        let probes = [RateAssignment::random(&net, &mut rng), RateAssignment::random(&net, &mut rng)];
        let a = multistat_analyze(&net, &probes, None, DEFAULT_TOLERANCE).unwrap();
        let MultistatOutcome::Witness { witness: w, verification } = &a.outcome else {
            panic!("n={n}: {:?}", a.outcome);
        };
        assert!(verification.passed(), "n={n}: {verification:?}");
        for x in [&w.x1, &w.x2] {
            let (f, scale) = rhs(&net, &w.k, x);
            assert!(f.iter().all(|v| v.abs() <= 1e-9 * scale), "n={n}: {f:?}");
        }
        let (a1, b1, c1) = conservation_values(n, &w.x1);
        let (a2, b2, c2) = conservation_values(n, &w.x2);
        for (u, v) in [(a1, a2), (b1, b2), (c1, c2)] {
            assert!((u - v).abs() <= 1e-9 * u.max(v));
        }
    }
}

#[test]
fn one_site_has_no_capacity_at_any_probe() {
    let mut rng = rng(31);
    let net = fixtures::phos1();
    for _ in 0..5 {
        let probes = [RateAssignment::random(&net, &mut rng)];
        let a = multistat_analyze(&net, &probes, None, DEFAULT_TOLERANCE).unwrap();
        assert!(matches!(a.outcome, MultistatOutcome::NoCapacity));
    }
}

#[test]
fn input_errors() {
    let net = fixtures::phos1();
    assert_eq!(
        multistat_analyze(&net, &[], None, DEFAULT_TOLERANCE).unwrap_err(),
        MultistatError::NoProbe
    );
    let z = IntegerMatrix::from_i64(&[&[1], &[1]]);
    assert!(matches!(
        multistat_analyze(&net, &[RateAssignment::unit(&net)], Some(&z), DEFAULT_TOLERANCE),
        Err(MultistatError::ZShape { got: 2, expected: 6 })
    ));
}

#[test]
fn outflow_only_network_is_degenerate() {
    let net = ReactionNetwork::new(
        vec!["A".into(), "B".into()],
        vec![vec![1, 0], vec![0, 1], vec![0, 0]],
        vec![Reaction::new(0, 1, "k1"), Reaction::new(1, 2, "k2")],
    )
    .unwrap();
    let a = multistat_analyze(&net, &[RateAssignment::unit(&net)], None, DEFAULT_TOLERANCE).unwrap();
    assert!(a.cone.degenerate);
    assert!(matches!(a.outcome, MultistatOutcome::Degenerate(ref rows) if rows == &[0, 1]));
}
