use std::f64::consts::FRAC_PI_4;

use num_complex::Complex64;
use proptest::prelude::*;
use rindler_core::analysis::linspace;
use rindler_core::measures::von_neumann_entropy;
use rindler_core::{ghz_state, w_state, Party, Region, Scenario, StateVector};

const P: [Party; 4] = Party::ABCD;

fn chain() -> Vec<Vec<Party>> {
    vec![
        vec![Party::D],
        vec![Party::C, Party::D],
        vec![Party::B, Party::C, Party::D],
        P.to_vec(),
    ]
}

fn subsets() -> Vec<Vec<Party>> {
    (0u8..16)
        .map(|mask| {
            P.iter()
                .copied()
                .filter(|p| mask >> p.index() & 1 == 1)
                .collect()
        })
        .collect()
}

#[test]
fn unruh_map_preserves_norm() {
    for acc in chain() {
        for r in linspace(0.0, FRAC_PI_4, 200) {
            let psi = Scenario::w(acc.clone(), r)
                .unwrap()
                .expanded_state()
                .unwrap();
            assert!((psi.norm() - 1.0).abs() <= 1e-12, "{acc:?} r={r}");
        }
    }
}

#[test]
fn expanded_register_layout() {
    let psi = Scenario::w([Party::B, Party::D], 0.3)
        .unwrap()
        .expanded_state()
        .unwrap();
    let labels: Vec<String> = psi
        .register()
        .slots()
        .iter()
        .map(|s| s.to_string())
        .collect();
    assert_eq!(labels, ["A", "B_I", "B_II", "C", "D_I", "D_II"]);
    assert_eq!(psi.register().slots()[2].region, Region::RindlerII);
}

#[test]
fn w_state_is_permutation_symmetric() {
    for n in 2..=6 {
        let w = w_state(n).unwrap();
        for idx in 0..(1usize << n) {
            let expected = if idx.count_ones() == 1 {
                1.0 / (n as f64).sqrt()
            } else {
                0.0
            };
            assert!((w.amplitude(idx) - Complex64::new(expected, 0.0)).norm() < 1e-15);
        }
    }
}

#[test]
fn w_and_ghz_are_orthogonal() {
    for n in 2..=8 {
        assert_eq!(
            w_state(n)
                .unwrap()
                .inner(&ghz_state(n).unwrap())
                .unwrap()
                .norm(),
            0.0
        );
    }
}

#[test]
fn w4_single_party_entropy() {
    let rho = rindler_core::pure_density(&w_state(4).unwrap()).unwrap();
    for p in P {
        let s = von_neumann_entropy(&rho.reduce_to_parties(&[p]).unwrap()).unwrap();
        assert!((s - 0.811278124459133).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// A pair reduction only sees the acceleration of its own members.
    #[test]
    fn spectators_do_not_change_reductions(r in 0.0..=FRAC_PI_4, mask in 0u8..16, pair in 0usize..6) {
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let (i, j) = pairs[pair];
        let members = [P[i], P[j]];
        let acc: Vec<Party> = P.iter().copied().filter(|p| mask >> p.index() & 1 == 1).collect();
        let own: Vec<Party> = acc.iter().copied().filter(|p| members.contains(p)).collect();
        let full = Scenario::w(acc, r).unwrap().physical_density().unwrap();
        let bare = Scenario::w(own, r).unwrap().physical_density().unwrap();
        let a = full.reduce_to_parties(&members).unwrap();
        let b = bare.reduce_to_parties(&members).unwrap();
        prop_assert!(a.matrix().max_abs_diff(b.matrix()) <= 1e-12);
    }

    /// The expanded state is pure, so Region II and the observed modes share a spectrum.
    #[test]
    fn traced_and_kept_purities_agree(r in 0.0..=FRAC_PI_4, mask in 1u8..16) {
        let acc: Vec<Party> = P.iter().copied().filter(|p| mask >> p.index() & 1 == 1).collect();
        let psi = Scenario::w(acc, r).unwrap().expanded_state().unwrap();
        let (kept, traced): (Vec<usize>, Vec<usize>) = (0..psi.register().len())
            .partition(|&i| psi.register().slots()[i].region != Region::RindlerII);
        let a = psi.reduced_density(&kept).unwrap().purity();
        let b = psi.reduced_density(&traced).unwrap().purity();
        prop_assert!((a - b).abs() <= 1e-9);
    }

    #[test]
    fn reduced_density_is_a_state(r in 0.0..=FRAC_PI_4, mask in 0u8..16) {
        let acc: Vec<Party> = P.iter().copied().filter(|p| mask >> p.index() & 1 == 1).collect();
        let rho = Scenario::w(acc, r).unwrap().physical_density().unwrap();
        prop_assert_eq!(rho.dim(), 16);
        let eigs = rho.eigenvalues().unwrap();
        prop_assert!(eigs.iter().all(|&l| l >= -1e-12));
        prop_assert!((eigs.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
    }
}

#[test]
fn every_subset_expands() {
    for acc in subsets() {
        let psi: StateVector = Scenario::w(acc.clone(), 0.5)
            .unwrap()
            .expanded_state()
            .unwrap();
        assert_eq!(psi.register().len(), 4 + acc.len());
    }
}

#[test]
fn out_of_range_r_rejected() {
    assert!(Scenario::w([], -0.01).is_err());
    assert!(Scenario::w([], FRAC_PI_4 + 1e-9).is_err());
    assert!(Scenario::w([], FRAC_PI_4).is_ok());
}

#[test]
fn residual_tangles_are_nonnegative() {
    for acc in subsets() {
        for r in linspace(0.0, FRAC_PI_4, 25) {
            let t =
                rindler_core::measures::tangle_set(&Scenario::w(acc.clone(), r).unwrap()).unwrap();
            assert!(
                t.residual.iter().all(|&pi| pi >= -1e-9),
                "{acc:?} r={r}: {t:?}"
            );
            assert!(!t.clamped || t.residual.iter().any(|&pi| pi < 0.0));
        }
    }
}
