mod common;

use common::c;
use proptest::prelude::*;
use tangnet::linalg::{haar_unitary, Matrix};
use tangnet::rng::SeededRng;
use tangnet::states::{schmidt_by_index, spectrum_distance, MultipartiteSpace, PureState};
use tangnet::structure::{classify, enumerate_qubit_classes, family_state, structure_from_state, Pairing, TwoQubitFamily};
use tangnet::symmetry::{
    apply_envariance, apply_local_pair, apply_local_rotation, apply_permutation, envariance_counterpart, flip_rotation,
    out_in_suite, LocalUnitaryPair, SuiteConfig, SymmetryOp,
};
use tangnet::Error;

const S: f64 = std::f64::consts::FRAC_1_SQRT_2;

fn ab(da: usize, db: usize) -> MultipartiteSpace {
    MultipartiteSpace::new([("A", da), ("B", db)]).unwrap()
}

fn state(amps: [f64; 4]) -> PureState<f64> {
    PureState::new(ab(2, 2), amps.iter().map(|&x| c(x, 0.0)).collect()).unwrap()
}

fn fig2() -> PureState<f64> {
    family_state(&TwoQubitFamily::new(Pairing::Asymmetric, 45.0, 270.0))
}

#[test]
fn identity_rotation_changes_nothing() {
    let (after, v) = apply_local_rotation(&fig2(), &Matrix::identity(2)).unwrap();
    assert_eq!(after, fig2());
    assert_eq!((v.state_distance, v.schmidt_distance), (0.0, 0.0));
    assert_eq!(v.class_changed, Some(false));
}

#[test]
fn flip_rotation_on_fig2_keeps_spectrum() {
    let psi = fig2();
    let (after, v) = apply_local_rotation(&psi, &flip_rotation()).unwrap();
    assert!(v.schmidt_distance <= 1e-8);
    // brute force: (u ⊗ u)|ψ⟩ by explicit sums, then reference singular values
    let u = flip_rotation();
    let a = psi.amplitudes();
    let mut out = vec![c(0.0, 0.0); 4];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[i * 2 + j] += u[(i, k)] * u[(j, l)] * a[k * 2 + l];
                }
            }
        }
    }
    assert!(common::frobenius(&out, after.amplitudes()) < 1e-15);
    let s = common::schmidt_coefficients(&out, &[2, 2], &[0]);
    assert!(common::max_diff(&s, &[S, S]) < 1e-12);
}

#[test]
fn pauli_x_on_phi_plus() {
    let x = Matrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
    let (after, v) = apply_local_rotation(&state([S, 0.0, 0.0, S]), &x).unwrap();
    // X⊗X maps |00⟩+|11⟩ to itself; X on one side gives Ψ⁺
    assert!(v.schmidt_distance <= 1e-12);
    assert!(after.overlap(&state([S, 0.0, 0.0, S])) > 1.0 - 1e-12);
    let pair = LocalUnitaryPair::new(x.clone(), Matrix::identity(2)).unwrap();
    let (after, v) = apply_local_pair(&state([S, 0.0, 0.0, S]), &pair).unwrap();
    assert!(after.overlap(&state([0.0, S, S, 0.0])) > 1.0 - 1e-12);
    assert!(v.state_distance > 0.1 && v.schmidt_distance <= 1e-12);
}

#[test]
fn swap_examples() {
    let (_, v) = apply_permutation(&state([S, 0.0, 0.0, S])).unwrap();
    assert!(v.state_distance < 1e-15);
    let (after, v) = apply_permutation(&state([0.0, S, -S, 0.0])).unwrap();
    assert!(v.state_distance < 1e-15);
    assert!((after.inner(&state([0.0, S, -S, 0.0])) + 1.0).norm() < 1e-15);

    let (after, v) = apply_permutation(&fig2()).unwrap();
    let ninety = family_state(&TwoQubitFamily::new(Pairing::Asymmetric, 45.0, 90.0));
    assert!(after.overlap(&ninety) > 1.0 - 1e-12);
    assert!(v.state_distance > 0.1);
    assert_eq!(v.class_changed, Some(false));
}

#[test]
fn swap_keeps_every_candidate_class() {
    for (f, class) in enumerate_qubit_classes().candidates {
        let (after, v) = apply_permutation(&family_state(&f)).unwrap();
        assert_eq!(v.class_changed, Some(false));
        assert_eq!(classify(&structure_from_state(&after).unwrap()).unwrap(), class);
    }
}

#[test]
fn argument_errors() {
    let psi = PureState::<f64>::haar_random(ab(2, 3), 1).unwrap();
    assert!(matches!(apply_permutation(&psi), Err(Error::Argument(_))));
    assert!(matches!(apply_local_rotation(&psi, &Matrix::identity(2)), Err(Error::Argument(_))));
    assert!(matches!(envariance_counterpart(&psi, &[0.0]), Err(Error::Argument(_))));
    let tri = PureState::<f64>::haar_random(MultipartiteSpace::qubits(3).unwrap(), 1).unwrap();
    assert!(matches!(apply_permutation(&tri), Err(Error::Argument(_))));
    let bad = Matrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 1.0]]).unwrap();
    assert!(LocalUnitaryPair::new(bad, Matrix::identity(2)).is_err());
}

#[test]
fn suite_examples() {
    let product = PureState::basis(ab(2, 2), &[0, 1]).unwrap();
    let s = out_in_suite(&product, &SuiteConfig { trials: 20, ..Default::default() }).unwrap();
    assert!(s.passed);
    assert_eq!(s.spectrum, vec![1.0]);

    let bell = state([S, 0.0, 0.0, S]);
    let s = out_in_suite(&bell, &SuiteConfig { trials: 100, seed: 3, ..Default::default() }).unwrap();
    assert!(s.passed && s.worst_schmidt_distance <= 1e-8, "{:?}", s.violations);
    assert!(s.class_checked);

    let qutrits = PureState::<f64>::haar_random(ab(3, 3), 9).unwrap();
    let s = out_in_suite(&qutrits, &SuiteConfig { trials: 100, seed: 9, ..Default::default() }).unwrap();
    assert!(s.passed && s.worst_schmidt_distance <= 1e-8);
    assert!(!s.class_checked);
}

#[test]
fn suite_is_reproducible() {
    let psi = PureState::<f64>::haar_random(ab(2, 2), 5).unwrap();
    let cfg = SuiteConfig { trials: 30, seed: 42, ..Default::default() };
    let a = out_in_suite(&psi, &cfg).unwrap();
    let b = out_in_suite(&psi, &cfg).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn unequal_dims_restrict_ops() {
    let psi = PureState::<f64>::haar_random(ab(2, 3), 5).unwrap();
    let cfg = SuiteConfig { trials: 10, ops: vec![SymmetryOp::Swap], ..Default::default() };
    assert!(out_in_suite(&psi, &cfg).is_err());
    let s = out_in_suite(&psi, &SuiteConfig { trials: 10, ..Default::default() }).unwrap();
    assert!(s.passed && !s.applied.contains_key("swap"));
}

proptest! {
    #![proptest_config(common::cases(100))]

    #[test]
    fn envariant_pairs_fix_the_state(seed in any::<u64>(), da in 1usize..=4, db in 1usize..=4) {
        let mut rng = SeededRng::new(seed);
        let psi = PureState::<f64>::haar_random_with(ab(da, db), &mut rng).unwrap();
        let rank = schmidt_by_index(&psi, &[0]).unwrap().rank();
        let phases: Vec<f64> = (0..rank).map(|_| rng.uniform() * std::f64::consts::TAU).collect();
        let pair = envariance_counterpart(&psi, &phases).unwrap();
        prop_assert!(pair.u_a.is_unitary(1e-10) && pair.u_b.is_unitary(1e-10));
        prop_assert!(pair.residual(&psi).unwrap() <= 1e-8);
        let (_, v) = apply_envariance(&psi, &phases).unwrap();
        prop_assert!(v.state_distance <= 1e-8);
    }

    #[test]
    fn swap_is_an_involution(seed in any::<u64>(), d in 1usize..=4) {
        let psi = PureState::<f64>::haar_random(ab(d, d), seed).unwrap();
        let (once, _) = apply_permutation(&psi).unwrap();
        let (twice, _) = apply_permutation(&once).unwrap();
        prop_assert!(twice.distance(&psi) <= 1e-12);
    }
}

proptest! {
    #![proptest_config(common::cases(200))]

    #[test]
    fn independent_local_unitaries_keep_spectrum(seed in any::<u64>(), da in 1usize..=4, db in 1usize..=4) {
        let mut rng = SeededRng::new(seed);
        let psi = PureState::<f64>::haar_random_with(ab(da, db), &mut rng).unwrap();
        let pair = LocalUnitaryPair::new(haar_unitary(da, &mut rng).unwrap(), haar_unitary(db, &mut rng).unwrap()).unwrap();
        let (after, v) = apply_local_pair(&psi, &pair).unwrap();
        prop_assert!(v.schmidt_distance <= 1e-8);
        let before = common::schmidt_coefficients(psi.amplitudes(), &[da, db], &[0]);
        let moved = common::schmidt_coefficients(after.amplitudes(), &[da, db], &[0]);
        prop_assert!(spectrum_distance(&before, &moved) <= 1e-8);
    }
}
