mod common;

use common::c;
use proptest::prelude::*;
use tangnet::rng::SeededRng;
use tangnet::states::{schmidt_by_index, MultipartiteSpace, Party, PureState};
use tangnet::structure::{
    classify, enumerate_qubit_classes, family_state, normalize_degrees, state_from_structure, structure_from_state,
    Branch, ClassPairing, Pairing, QuantumStructure, TwoQubitFamily,
};

const S: f64 = std::f64::consts::FRAC_1_SQRT_2;

fn ab() -> MultipartiteSpace {
    MultipartiteSpace::new([("A", 2), ("B", 2)]).unwrap()
}

fn state(amps: [common::C; 4]) -> PureState<f64> {
    PureState::new(ab(), amps.to_vec()).unwrap()
}

fn fig2() -> PureState<f64> {
    state([c(0.0, 0.0), c(S, 0.0), c(0.0, -S), c(0.0, 0.0)])
}

fn two_qubit(branches: Vec<Branch>, reference: usize) -> QuantumStructure {
    QuantumStructure::new(ab().parties().to_vec(), branches, reference).unwrap()
}

#[test]
fn fig2_structure() {
    let qs = structure_from_state(&fig2()).unwrap();
    assert_eq!(qs.branches().len(), 2);
    assert_eq!(qs.nodes().len(), 4);
    let b = qs.branches();
    assert_eq!((b[0].nodes.clone(), b[1].nodes.clone()), (vec![0, 1], vec![1, 0]));
    assert!((b[0].length - S).abs() < 1e-12 && (b[1].length - S).abs() < 1e-12);
    assert_eq!(b[0].orientation, 0.0);
    assert!((b[1].orientation - 90.0).abs() < 1e-9);
}

#[test]
fn bell_branches_share_orientation_zero() {
    let qs = structure_from_state(&state([c(S, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(S, 0.0)])).unwrap();
    assert!(qs.branches().iter().all(|b| b.orientation == 0.0));
    let minus = structure_from_state(&state([c(S, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-S, 0.0)])).unwrap();
    assert!((minus.branches()[1].orientation - 180.0).abs() < 1e-12);
}

#[test]
fn structures_to_states() {
    let qs = two_qubit(
        vec![
            Branch { nodes: vec![0, 1], length: S, orientation: 0.0 },
            Branch { nodes: vec![1, 0], length: S, orientation: 90.0 },
        ],
        0,
    );
    assert!(state_from_structure(&qs).unwrap().overlap(&fig2()) > 1.0 - 1e-15);
    let qs = two_qubit(
        vec![
            Branch { nodes: vec![0, 0], length: S, orientation: 0.0 },
            Branch { nodes: vec![1, 1], length: S, orientation: 180.0 },
        ],
        0,
    );
    let psi = state_from_structure(&qs).unwrap();
    assert!((psi.amplitudes()[3] - c(-S, 0.0)).norm() < 1e-15);
}

#[test]
fn invalid_structures() {
    let parties = ab().parties().to_vec();
    let br = |nodes: Vec<usize>, length: f64, orientation: f64| Branch { nodes, length, orientation };
    assert!(QuantumStructure::new(parties.clone(), vec![], 0).is_err());
    assert!(QuantumStructure::new(parties.clone(), vec![br(vec![0, 0], 0.5, 0.0)], 0).is_err());
    assert!(QuantumStructure::new(parties.clone(), vec![br(vec![0, 2], 1.0, 0.0)], 0).is_err());
    assert!(QuantumStructure::new(parties.clone(), vec![br(vec![0, 0], 1.0, 10.0)], 0).is_err());
    assert!(QuantumStructure::new(parties.clone(), vec![br(vec![0, 0], 1.0, 360.0)], 0).is_err());
    assert!(QuantumStructure::new(parties, vec![br(vec![0, 0], S, 0.0), br(vec![0, 0], S, 0.0)], 0).is_err());
}

#[test]
fn json_round_trip_validates() {
    let qs = structure_from_state(&fig2()).unwrap();
    let back: QuantumStructure = serde_json::from_value(qs.to_json()).unwrap();
    assert_eq!(back, qs);
    let mut bad = qs.to_json();
    bad["branches"][0]["length"] = serde_json::json!(0.1);
    assert!(serde_json::from_value::<QuantumStructure>(bad).is_err());
}

#[test]
fn family_special_cases() {
    let f = |p, theta| family_state(&TwoQubitFamily::new(p, 45.0, theta));
    assert!(f(Pairing::Asymmetric, 270.0).overlap(&fig2()) >= 1.0 - 1e-12);
    let bells = [
        (Pairing::Symmetric, 0.0, [S, 0.0, 0.0, S]),
        (Pairing::Symmetric, 180.0, [S, 0.0, 0.0, -S]),
        (Pairing::Asymmetric, 0.0, [0.0, S, S, 0.0]),
        (Pairing::Asymmetric, 180.0, [0.0, S, -S, 0.0]),
    ];
    for (p, theta, amps) in bells {
        let want = state(amps.map(|x| c(x, 0.0)));
        assert!(f(p, theta).overlap(&want) >= 1.0 - 1e-12, "{p:?} {theta}");
    }
}

#[test]
fn class_examples() {
    let class = |psi: &PureState<f64>| classify(&structure_from_state(psi).unwrap()).unwrap();
    let plus = class(&state([c(S, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(S, 0.0)]));
    let minus = class(&state([c(S, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-S, 0.0)]));
    assert_ne!(plus, minus);
    assert_eq!(plus.phases(), vec![0.0, 0.0]);
    assert_eq!(minus.phases(), vec![0.0, 180.0]);

    let swapped = fig2().permute_parties(&[1, 0]).unwrap().relabel(ab()).unwrap();
    assert_eq!(class(&fig2()), class(&swapped));

    let singles: Vec<_> = (0..4)
        .map(|k| class(&PureState::basis(ab(), &[k / 2, k % 2]).unwrap()))
        .collect();
    assert!(singles.iter().all(|s| *s == singles[0] && s.pairing == ClassPairing::Symmetric));
}

#[test]
fn qubit_class_enumeration() {
    let table = enumerate_qubit_classes();
    assert_eq!(table.candidates.len(), 8);
    let class_of = |p: Pairing, theta: f64| {
        table
            .candidates
            .iter()
            .find(|(f, _)| f.pairing == p && f.theta == theta)
            .map(|(_, c)| c.clone())
            .unwrap()
    };
    assert_ne!(class_of(Pairing::Symmetric, 0.0), class_of(Pairing::Symmetric, 180.0));
    assert_eq!(class_of(Pairing::Symmetric, 90.0), class_of(Pairing::Symmetric, 270.0));
    assert_eq!(table.count, table.classes.len());
    assert!(table.count == 6 || table.count == 8);
    let members: usize = table.classes.iter().map(|e| e.members.len()).sum();
    assert_eq!(members, 8);
}

/// Random two-party state with at most four nonzero terms.
fn sparse_state(seed: u64) -> PureState<f64> {
    let mut rng = SeededRng::new(seed);
    let (da, db) = (2 + rng.below(2), 2 + rng.below(2));
    let space = MultipartiteSpace::new([("A", da), ("B", db)]).unwrap();
    let n = da * db;
    let terms = 1 + rng.below(4);
    let mut amps = vec![c(0.0, 0.0); n];
    for _ in 0..terms {
        amps[rng.below(n)] = rng.complex_normal::<f64>();
    }
    if amps.iter().all(|a| a.norm() == 0.0) {
        amps[0] = c(1.0, 0.0);
    }
    PureState::normalized(space, amps).unwrap()
}

fn grid_structure(seed: u64) -> QuantumStructure {
    let mut rng = SeededRng::new(seed);
    let nodes = [vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]];
    let chosen: Vec<usize> = (0..4).filter(|_| rng.coin()).collect();
    let chosen = if chosen.is_empty() { vec![rng.below(4)] } else { chosen };
    let raw: Vec<f64> = chosen.iter().map(|_| 0.1 + rng.uniform()).collect();
    let norm = raw.iter().map(|x| x * x).sum::<f64>().sqrt();
    let branches = chosen
        .iter()
        .zip(&raw)
        .enumerate()
        .map(|(i, (&k, &w))| Branch {
            nodes: nodes[k].clone(),
            length: w / norm,
            orientation: if i == 0 { 0.0 } else { 0.5 * rng.below(720) as f64 },
        })
        .collect();
    two_qubit(branches, 0)
}

proptest! {
    #![proptest_config(common::cases(200))]

    #[test]
    fn state_structure_round_trip(seed in any::<u64>()) {
        let psi = sparse_state(seed);
        let qs = structure_from_state(&psi).unwrap();
        prop_assert!(qs.branches().len() <= 4);
        let total: f64 = qs.branches().iter().map(|b| b.length * b.length).sum();
        prop_assert!((total - 1.0).abs() <= 1e-12);
        let back = state_from_structure(&qs).unwrap();
        prop_assert!(back.overlap(&psi) >= 1.0 - 1e-9);
    }

    #[test]
    fn schmidt_form_lengths_are_coefficients(seed in any::<u64>(), d in 2usize..=4) {
        let mut rng = SeededRng::new(seed);
        let space = MultipartiteSpace::new([("A", d), ("B", d)]).unwrap();
        let mut amps = vec![c(0.0, 0.0); d * d];
        for k in 0..d {
            amps[k * d + k] = rng.complex_normal::<f64>();
        }
        let psi = PureState::normalized(space, amps).unwrap();
        let mut lengths = structure_from_state(&psi).unwrap().length_profile();
        lengths.reverse();
        let coeffs = schmidt_by_index(&psi, &[0]).unwrap().coefficients;
        prop_assert!(common::max_diff(&lengths, &coeffs) <= 1e-10);
    }

    #[test]
    fn class_ignores_rotation_mirror_and_relabeling(seed in any::<u64>()) {
        let qs = grid_structure(seed);
        let base = classify(&qs).unwrap();
        let parties = qs.parties().to_vec();
        let branches = qs.branches().to_vec();
        for k in 0..branches.len() {
            let shift = branches[k].orientation;
            let rotated: Vec<Branch> = branches
                .iter()
                .map(|b| Branch { orientation: normalize_degrees(b.orientation - shift), ..b.clone() })
                .collect();
            let r = QuantumStructure::new(parties.clone(), rotated, k).unwrap();
            prop_assert_eq!(classify(&r).unwrap(), base.clone());
        }
        let mirrored: Vec<Branch> = branches
            .iter()
            .map(|b| Branch { orientation: normalize_degrees(-b.orientation), ..b.clone() })
            .collect();
        prop_assert_eq!(classify(&QuantumStructure::new(parties.clone(), mirrored, 0).unwrap()).unwrap(), base.clone());
        let relabeled: Vec<Branch> = branches
            .iter()
            .map(|b| Branch { nodes: vec![b.nodes[1], b.nodes[0]], ..b.clone() })
            .collect();
        let swapped_parties = vec![parties[1].clone(), parties[0].clone()];
        let r = QuantumStructure::new(swapped_parties, relabeled, 0).unwrap();
        prop_assert_eq!(classify(&r).unwrap(), base);
    }

    #[test]
    fn structure_rebuild_keeps_unit_norm(seed in any::<u64>()) {
        let qs = grid_structure(seed);
        let psi = state_from_structure(&qs).unwrap();
        let norm: f64 = psi.amplitudes().iter().map(|a| a.norm_sqr()).sum();
        prop_assert!((norm - 1.0).abs() <= 1e-12);
        let again = structure_from_state(&psi).unwrap();
        let total: f64 = again.branches().iter().map(|b| b.length * b.length).sum();
        prop_assert!((total - 1.0).abs() <= 1e-12);
    }
}

#[test]
fn parties_survive_structure() {
    let qs = structure_from_state(&fig2()).unwrap();
    assert_eq!(qs.parties(), &[Party { label: "A".into(), dim: 2 }, Party { label: "B".into(), dim: 2 }]);
}
