//! Fixture list, golden diagram cases and the invalid-input generator shared
//! by the notation tests and the acceptance run.

use std::path::PathBuf;

use tangnet::notation::{emit_partition_diagram, emit_structure_diagram, parse, DiagramFormat};
use tangnet::rng::SeededRng;
use tangnet::states::{ModelKind, PartitionModel, Role};
use tangnet::structure::structure_from_state;

pub const FIXTURES: [&str; 8] = [
    "bell.tgn",
    "bell_pairs.tgn",
    "fig2.tgn",
    "ghz4.tgn",
    "model_b.tgn",
    "model_c.tgn",
    "product.tgn",
    "qutrits.tgn",
];

fn structure_body(fixture: &str, state: Option<&str>, f: DiagramFormat) -> String {
    let doc = parse(&super::fixture(fixture)).unwrap();
    let qs = structure_from_state(&doc.state(state).unwrap()).unwrap();
    let d = emit_structure_diagram(&qs, f);
    d.validate().unwrap();
    d.body
}

fn partition_body(kind: ModelKind, roles: &[(&str, Role)], f: DiagramFormat) -> String {
    let m = PartitionModel::new(kind, roles.iter().copied()).unwrap();
    let d = emit_partition_diagram(&m, f);
    d.validate().unwrap();
    d.body
}

/// `(file name, freshly emitted body)` for every golden diagram.
pub fn golden_cases() -> Vec<(String, String)> {
    use Role::*;
    let mut out = Vec::new();
    for (f, ext) in [(DiagramFormat::Dot, "dot"), (DiagramFormat::Svg, "svg")] {
        for (name, fixture, state) in [
            ("fig2", "fig2.tgn", None),
            ("phi_minus", "bell.tgn", Some("phi_minus")),
            ("product", "product.tgn", None),
            ("qutrits", "qutrits.tgn", None),
            ("ghz4", "ghz4.tgn", None),
        ] {
            out.push((format!("{name}.{ext}"), structure_body(fixture, state, f)));
        }
        out.push((format!("model_a.{ext}"), partition_body(ModelKind::ModelA, &[("A", S), ("B", E0)], f)));
        out.push((
            format!("model_b.{ext}"),
            partition_body(ModelKind::ModelB, &[("sys", S), ("near", E1), ("far", E0)], f),
        ));
        out.push((
            format!("model_c.{ext}"),
            partition_body(ModelKind::ModelC, &[("q1", S1), ("q2", E1), ("q3", S2), ("q4", E2), ("q5", E0)], f),
        ));
    }
    out
}

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

pub const ALPHABET: &[char] = &[
    '{', '}', '(', ')', ',', ':', ';', '=', '+', '-', '|', '>', '<', 'i', 'e', '.', '0', '7', ' ', '\n', '#', '@', 'é',
    'x', '2',
];

fn mutate(src: &str, rng: &mut SeededRng) -> String {
    let mut chars: Vec<char> = src.chars().collect();
    for _ in 0..1 + rng.below(3) {
        let n = chars.len();
        match rng.below(5) {
            0 if n > 0 => {
                chars.remove(rng.below(n));
            }
            1 => chars.insert(rng.below(n + 1), ALPHABET[rng.below(ALPHABET.len())]),
            2 if n > 0 => chars.truncate(rng.below(n)),
            3 if n > 1 => {
                let (a, b) = (rng.below(n), rng.below(n));
                chars.swap(a, b);
            }
            _ => {
                let at = rng.below(n + 1);
                for k in 0..rng.below(12) {
                    chars.insert(at + k, ALPHABET[rng.below(ALPHABET.len())]);
                }
            }
        }
    }
    chars.into_iter().collect()
}

/// Mutated fixtures plus short random strings; about one in ten is noise.
pub fn fuzz_input(rng: &mut SeededRng) -> String {
    if rng.below(10) == 0 {
        let n = rng.below(40);
        (0..n).map(|_| ALPHABET[rng.below(ALPHABET.len())]).collect()
    } else {
        let seed = super::fixture(FIXTURES[rng.below(FIXTURES.len())]);
        mutate(&seed, rng)
    }
}

/// Feeds generated inputs to the parser until `want` of them are rejected.
/// Returns `Err` on a panic or a malformed diagnostic.
pub fn fuzz_rejections(want: usize, seed: u64) -> Result<usize, String> {
    let mut rng = SeededRng::new(seed);
    let (mut rejected, mut tried) = (0, 0);
    while rejected < want {
        tried += 1;
        if tried > 20 * want {
            return Err("mutations stopped producing invalid documents".into());
        }
        let src = fuzz_input(&mut rng);
        match std::panic::catch_unwind(|| parse(&src)) {
            Err(_) => return Err(format!("parser panicked on {src:?}")),
            Ok(Ok(_)) => {}
            Ok(Err(d)) => {
                rejected += 1;
                let lines = src.split('\n').count();
                if d.line < 1 || d.col < 1 || d.line > lines || d.expected.is_empty() {
                    return Err(format!("bad diagnostic for {src:?}: {d}"));
                }
            }
        }
    }
    Ok(tried)
}
