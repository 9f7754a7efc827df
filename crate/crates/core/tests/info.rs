mod common;

use common::c;
use proptest::prelude::*;
use tangnet::info::{
    conditional_mutual_info, entropy, multiworld_mi, mutual_info, mutual_info_pure_bipartite, rabi_entanglement,
    shannon_bits, slit_reduced, slit_visibility,
};
use tangnet::linalg::{haar_unitary, random_density_matrix, Matrix};
use tangnet::rng::SeededRng;
use tangnet::states::{DensityOperator, ModelKind, MultipartiteSpace, PartitionModel, PureState, Role};
use tangnet::Error;

const S: f64 = std::f64::consts::FRAC_1_SQRT_2;

fn qubits(n: usize) -> MultipartiteSpace {
    MultipartiteSpace::qubits(n).unwrap()
}

fn ghz(n: usize) -> PureState<f64> {
    let mut amps = vec![c(0.0, 0.0); 1 << n];
    amps[0] = c(S, 0.0);
    amps[(1 << n) - 1] = c(S, 0.0);
    PureState::new(qubits(n), amps).unwrap()
}

fn bell() -> PureState<f64> {
    PureState::new(qubits(2), vec![c(S, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(S, 0.0)]).unwrap()
}

fn worlds_model() -> PartitionModel {
    PartitionModel::new(ModelKind::ModelC, [("q1", Role::S1), ("q2", Role::E1), ("q3", Role::S2), ("q4", Role::E2)])
        .unwrap()
}

/// Two-world composite evaluated from reference entropies.
fn composite_oracle(psi: &[common::C], dims: &[usize], s1: &[usize], e1: &[usize], s2: &[usize], e2: &[usize]) -> [f64; 5] {
    let u = common::union;
    let clusters = common::mutual_info(psi, dims, &u(s1, e1), &u(s2, e2));
    let envs = if e1.is_empty() || e2.is_empty() { 0.0 } else { common::mutual_info(psi, dims, e1, e2) };
    let e1_s2 = if e1.is_empty() { 0.0 } else { common::cmi(psi, dims, e1, s2, e2) };
    let e2_s1 = if e2.is_empty() { 0.0 } else { common::cmi(psi, dims, e2, s1, e1) };
    [clusters, envs, e1_s2, e2_s1, clusters - envs - e1_s2 - e2_s1]
}

#[test]
fn entropy_of_three_quarters() {
    let rho = DensityOperator::new(qubits(1), Matrix::diag_real(&[0.75, 0.25])).unwrap();
    assert!((entropy(&rho).unwrap() - common::h2(0.25)).abs() < 1e-12);
    assert!((common::h2(0.25) - 0.8112781245).abs() < 1e-10);
}

#[test]
fn shannon_ignores_zeros() {
    assert_eq!(shannon_bits(&[1.0f64, 0.0]), 0.0);
    assert!((shannon_bits(&[0.5f64, 0.5]) - 1.0).abs() < 1e-15);
}

#[test]
fn bell_and_ghz_mutual_information() {
    assert!((mutual_info(&bell().density(), &["q1"], &["q2"]).unwrap() - 2.0).abs() < 1e-12);
    let g = ghz(3).density();
    assert!((mutual_info(&g, &["q1"], &["q2"]).unwrap() - 1.0).abs() < 1e-12);
    assert!((conditional_mutual_info(&g, &["q1"], &["q2"], &["q3"]).unwrap() - 1.0).abs() < 1e-12);
    assert!(matches!(mutual_info(&g, &["q1"], &["q1"]), Err(Error::Argument(_))));
}

#[test]
fn pure_bipartite_split() {
    let r = mutual_info_pure_bipartite(&bell(), &["q2"]).unwrap();
    assert!((r.total - 2.0).abs() < 1e-12 && (r.classical - 1.0).abs() < 1e-12 && (r.quantum - 1.0).abs() < 1e-12);
    let a = 30f64.to_radians();
    let psi = PureState::new(qubits(2), vec![c(0.0, 0.0), c(a.cos(), 0.0), c(a.sin(), 0.0), c(0.0, 0.0)]).unwrap();
    let r = mutual_info_pure_bipartite(&psi, &["q2"]).unwrap();
    assert!((r.total - 2.0 * common::h2(0.25)).abs() < 1e-10);
    assert!((r.total - 1.6225562).abs() < 1e-7);
}

#[test]
fn ghz4_two_world_terms() {
    let psi = ghz(4);
    let report = multiworld_mi(&psi.density(), &worlds_model()).unwrap();
    let oracle = composite_oracle(psi.amplitudes(), &[2; 4], &[0], &[1], &[2], &[3]);
    let got = [
        report.terms["I_SE:SE"],
        report.terms["I_E:E"],
        report.terms["I_E1:S2|E2"],
        report.terms["I_E2:S1|E1"],
        report.i_total,
    ];
    assert!(common::max_diff(&got, &oracle) < 1e-12);
    assert!(common::max_diff(&got, &[2.0, 1.0, 0.0, 0.0, 1.0]) < 1e-9);
    assert!(report.reductions.case_4);
    assert!((report.reductions.i_case_4.unwrap() - report.i_total).abs() < 1e-12);
    assert_eq!(report.recombine(), report.i_total);
    let json = report.to_json();
    assert!(json.get("I_total").is_some());
}

#[test]
fn independent_bell_pairs_are_all_zero() {
    let b = [c(S, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(S, 0.0)];
    let psi = PureState::new(qubits(4), tangnet::linalg::kron_vec(&b, &b)).unwrap();
    let report = multiworld_mi(&psi.density(), &worlds_model()).unwrap();
    for v in report.terms.values() {
        assert!(v.abs() < 1e-9);
    }
    assert!(report.i_total.abs() < 1e-9);
    assert!(report.reductions.case_3 && report.reductions.case_4);
}

#[test]
fn one_sided_world_is_case_2() {
    let psi = ghz(3);
    let model = PartitionModel::infer([("q1", Role::S1), ("q2", Role::S2), ("q3", Role::E2)]).unwrap();
    assert_eq!(model.kind(), ModelKind::Custom);
    let report = multiworld_mi(&psi.density(), &model).unwrap();
    assert!(report.reductions.case_2);
    let cmi = common::cmi(psi.amplitudes(), &[2, 2, 2], &[0], &[1], &[2]);
    assert!((report.reductions.i_case_2.unwrap() - cmi).abs() < 1e-12);
    assert!((report.i_total - cmi).abs() < 1e-12);
}

#[test]
fn non_world_models_are_rejected() {
    let model = PartitionModel::new(ModelKind::ModelA, [("q1", Role::S), ("q2", Role::E0)]).unwrap();
    assert!(matches!(multiworld_mi(&bell().density(), &model), Err(Error::Argument(_))));
}

#[test]
fn slit_examples_match_brute_force() {
    for (o, want) in [(0.0, 0.0), (1.0, 1.0), (0.5, 0.5)] {
        let v = slit_visibility(c(o, 0.0)).unwrap();
        assert!((v - want).abs() < 1e-12);
        // |r⟩|R⟩ + |l⟩|L⟩ with ⟨R|L⟩ = o, traced by hand
        let psi = [c(S, 0.0), c(0.0, 0.0), c(S * o, 0.0), c(S * (1.0 - o * o).sqrt(), 0.0)];
        let rho = common::partial_trace(&common::projector(&psi), &[2, 2], &[0]);
        assert!((2.0 * rho[1].norm() - v).abs() < 1e-12);
        let ours = slit_reduced(c(o, 0.0)).unwrap();
        assert!(common::frobenius(ours.matrix().as_slice(), &rho) < 1e-15);
    }
    assert!(slit_visibility(c(1.5, 0.0)).is_err());
}

#[test]
fn rabi_examples() {
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
    assert_eq!(rabi_entanglement(0.0), 0.0);
    assert!((rabi_entanglement(FRAC_PI_4) - 1.0).abs() < 1e-10);
    assert!(rabi_entanglement(FRAC_PI_2).abs() < 1e-10);
    for gt in [0.1, 0.4, 1.0, 2.0] {
        assert!((rabi_entanglement(gt) - common::h2(f64::cos(gt).powi(2))).abs() < 1e-10);
    }
}

proptest! {
    #![proptest_config(common::cases(100))]

    #[test]
    fn pure_mutual_info_is_twice_env_entropy(seed in any::<u64>(), d in 2usize..=4) {
        let psi = PureState::<f64>::haar_random(MultipartiteSpace::anonymous(&[d, d]).unwrap(), seed).unwrap();
        let rho = psi.density();
        let i = mutual_info(&rho, &["P0"], &["P1"]).unwrap();
        let s_e = entropy(&rho.reduced(&["P1"]).unwrap()).unwrap();
        prop_assert!((i - 2.0 * s_e).abs() <= 1e-8);
        prop_assert!((s_e - common::entropy(psi.amplitudes(), &[d, d], &[1])).abs() <= 1e-9);
    }

    #[test]
    fn entropy_is_unitarily_invariant(seed in any::<u64>(), d in 1usize..=6) {
        let mut rng = SeededRng::new(seed);
        let sp = MultipartiteSpace::anonymous(&[d]).unwrap();
        let rho = DensityOperator::new(sp, random_density_matrix::<f64>(d, &mut rng).unwrap()).unwrap();
        let u = haar_unitary::<f64>(d, &mut rng).unwrap();
        let moved = rho.conjugated(&u).unwrap();
        prop_assert!((entropy(&rho).unwrap() - entropy(&moved).unwrap()).abs() <= 1e-8);
        prop_assert!((entropy(&rho).unwrap() - common::entropy_of_matrix(rho.matrix().as_slice())).abs() <= 1e-9);
    }

    #[test]
    fn two_world_report_matches_reference(seed in any::<u64>(), with_e0 in any::<bool>()) {
        let n = if with_e0 { 5 } else { 4 };
        let psi = PureState::<f64>::haar_random(qubits(n), seed).unwrap();
        let mut roles = vec![("q1", Role::S1), ("q2", Role::E1), ("q3", Role::S2), ("q4", Role::E2)];
        if with_e0 {
            roles.push(("q5", Role::E0));
        }
        let report = multiworld_mi(&psi.density(), &PartitionModel::new(ModelKind::ModelC, roles).unwrap()).unwrap();
        let oracle = composite_oracle(psi.amplitudes(), &vec![2; n], &[0], &[1], &[2], &[3]);
        let got = [
            report.terms["I_SE:SE"],
            report.terms["I_E:E"],
            report.terms["I_E1:S2|E2"],
            report.terms["I_E2:S1|E1"],
            report.i_total,
        ];
        prop_assert!(common::max_diff(&got, &oracle) <= 1e-9);
        prop_assert_eq!(report.recombine(), report.i_total);
        prop_assert_eq!(report.reductions.case_3, !with_e0);
    }
}

proptest! {
    #![proptest_config(common::cases(200))]

    #[test]
    fn strong_subadditivity(seed in any::<u64>(), last in prop::sample::select(vec![2usize, 4])) {
        let dims = [2, 2, last];
        let psi = PureState::<f64>::haar_random(MultipartiteSpace::anonymous(&dims).unwrap(), seed).unwrap();
        let v = conditional_mutual_info(&psi.density(), &["P0"], &["P1"], &["P2"]).unwrap();
        prop_assert!(v >= -1e-9);
    }
}
