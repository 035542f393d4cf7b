mod common;

use jsr_core::bounds::{gelfand_upper, sandwich};
use jsr_core::certificates::{certified_interval, protasov_gamma};
use jsr_core::families::{build_p, build_v, example1_bound, example2_bound};
use jsr_core::irreducibility::{
    burnside_irreducible, chi_measure, lemma1_crosscheck, Lemma1Status,
};
use jsr_core::oracle::{brute_force_interval, invariant_subspace_search_2d};
use jsr_core::{Limits, MatrixSet, NormKind, Tolerance};

fn mesh_for(d: usize) -> f64 {
    if d == 2 {
        0.01
    } else {
        0.05
    }
}

/// Five reducible and five irreducible sets in dimensions 2 and 3.
fn lemma1_suite() -> Vec<(MatrixSet, bool)> {
    let mut rng = common::rng(2024);
    let mut out = Vec::new();
    for k in 0..5 {
        let d = 2 + k % 2;
        out.push((common::reducible_set(&mut rng, d, 2), false));
        out.push((common::irreducible_set(&mut rng, d, 2), true));
    }
    out
}

#[test]
fn lemma1_holds_on_the_regression_suite() {
    let lim = Limits::default();
    let tol = Tolerance {
        abs: 1e-9,
        rel: 0.0,
    };
    for (i, (set, irreducible)) in lemma1_suite().iter().enumerate() {
        let d = set.dim();
        let rep = lemma1_crosscheck(set, d - 1, NormKind::L2, mesh_for(d), &tol, &lim).unwrap();
        assert_eq!(burnside_irreducible(set).unwrap(), *irreducible, "set {i}");
        assert_ne!(rep.status, Lemma1Status::Inconsistent, "set {i}: {rep:?}");
        if !irreducible {
            assert!(
                rep.chi.sampled_inf <= 1e-9,
                "set {i}: {}",
                rep.chi.sampled_inf
            );
        }
    }
}

#[test]
fn two_dimensional_irreducibility_oracles_agree() {
    let lim = Limits::default();
    let mut rng = common::rng(7);
    for k in 0..24 {
        let set = if k % 2 == 0 {
            common::reducible_set(&mut rng, 2, 2)
        } else {
            common::random_set(&mut rng, 2, 2)
        };
        let line = invariant_subspace_search_2d(&set).unwrap();
        let burnside = burnside_irreducible(&set).unwrap();
        let chi = chi_measure(&set, 1, NormKind::L2, 0.01, &lim).unwrap();
        assert_eq!(line.is_none(), burnside, "set {k}");
        assert_eq!(
            chi.sampled_inf > 1e-9,
            burnside,
            "set {k}: {}",
            chi.sampled_inf
        );
    }
}

#[test]
fn certified_intervals_intersect_the_sandwich() {
    let lim = Limits::default();
    let mut sets = vec![
        common::golden_pair(),
        common::rotation(),
        common::rotation().scale(2.0),
    ];
    sets.extend(
        lemma1_suite()
            .into_iter()
            .filter(|(_, irr)| *irr)
            .map(|(s, _)| s),
    );
    for (i, set) in sets.iter().enumerate() {
        let d = set.dim();
        let p = (d - 1).max(1);
        for kind in [NormKind::L2, NormKind::L1] {
            let chi = chi_measure(set, p, kind, mesh_for(d), &lim).unwrap();
            if chi.certified_lower <= 0.0 {
                continue;
            }
            let sw = sandwich(set, 8, kind, &lim).into_result().unwrap();
            let best = sw.last().unwrap();
            for n in 1..=8 {
                let ci = certified_interval(set, n, p, kind, chi.certified_lower, &lim).unwrap();
                assert!(ci.lower <= best.best_upper + 1e-9, "set {i} n={n}");
                assert!(best.best_lower <= ci.upper + 1e-9, "set {i} n={n}");
                assert!(ci.lower <= gelfand_upper(set, n, kind, &lim).unwrap() + 1e-12);
            }
        }
    }
}

#[test]
fn golden_pair_certificate_contains_the_golden_ratio() {
    let lim = Limits::default();
    let set = common::golden_pair();
    let chi = chi_measure(&set, 1, NormKind::L2, 0.01, &lim).unwrap();
    let ci = certified_interval(&set, 6, 1, NormKind::L2, chi.certified_lower, &lim).unwrap();
    let golden = (1.0 + 5f64.sqrt()) / 2.0;
    assert!(ci.lower <= golden && golden <= ci.upper, "{ci:?}");
    let oracle = brute_force_interval(&set, 8, NormKind::L2, &lim).unwrap();
    assert!(ci.lower <= oracle.upper && oracle.lower <= ci.upper);
}

#[test]
fn rescaled_rotation_needs_its_own_chi() {
    let lim = Limits::default();
    let r2 = common::rotation().scale(2.0);
    let chi = chi_measure(&r2, 1, NormKind::L2, 0.01, &lim).unwrap();
    // reach points of 2R at x: ±x and ±2Rx, a rhombus with inradius 2/√5
    assert!((chi.sampled_inf - 2.0 / 5f64.sqrt()).abs() < 1e-9);
    let nu = jsr_core::certificates::nu_p(&r2, 1, NormKind::L2, chi.sampled_inf, &lim).unwrap();
    assert!((nu - 5f64.sqrt()).abs() < 1e-9);
}

#[test]
fn closed_form_bounds_are_consistent_with_chi() {
    let lim = Limits::default();
    let mut rng = common::rng(99);
    let mut checked = 0;
    while checked < 8 {
        let d = 2 + checked % 2;
        let a = common::random_matrix(&mut rng, d, -1.0, 1.0);
        let mesh = if d == 2 { 0.01 } else { 0.1 };
        for (set, bound) in [
            (build_p(&a), example1_bound(&a)),
            (build_v(&a), example2_bound(&a)),
        ] {
            if bound.chi_lower > 0.0 {
                assert!(bound.irreducible);
                assert!(burnside_irreducible(&set).unwrap());
            }
            let chi = chi_measure(&set, d, NormKind::L1, mesh, &lim).unwrap();
            assert!(
                chi.sampled_inf >= bound.chi_lower - 1e-9,
                "{:?}: sampled {} < closed form {} for {:?} at {:?}",
                bound.family,
                chi.sampled_inf,
                bound.chi_lower,
                set,
                chi.argmin
            );
        }
        checked += 1;
    }
}

#[test]
fn protasov_detects_invariant_subspaces() {
    let lim = Limits::default();
    let mut rng = common::rng(5);
    for _ in 0..4 {
        let set = common::reducible_set(&mut rng, 2, 2);
        let g = protasov_gamma(&set, None, 2000, &lim).unwrap();
        let step = std::f64::consts::PI / 2000.0;
        assert!(g.p_values[0] <= 2.0 * g.set_norm * step, "{g:?}");
        assert_eq!(g.p_lower[0], 0.0);
    }
    for _ in 0..2 {
        let set = common::reducible_set(&mut rng, 3, 2);
        let g = protasov_gamma(&set, None, 60, &lim).unwrap();
        let step = std::f64::consts::PI / 60.0;
        // common upper-triangular form: an invariant line and an invariant plane
        assert!(
            g.p_values.iter().all(|p| *p <= 4.0 * g.set_norm * step),
            "{g:?}"
        );
    }
}
