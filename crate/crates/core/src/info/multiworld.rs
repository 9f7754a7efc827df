use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::states::{purity, reduce, DensityOperator, ModelKind, PartitionModel, Role};

use super::{cmi_indices, entropy_of, mi_indices};

/// Conditional terms at or below this count as vanishing.
pub const CASE4_TOL: f64 = 1e-9;

/// Which special cases of the two-world decomposition apply.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Reductions {
    /// Both cluster environments are empty; only a shared outer environment.
    pub case_1: bool,
    /// Exactly one cluster environment is empty, so the composite equals
    /// `I(S1:S2|E)` with `E` the remaining one.
    pub case_2: bool,
    /// No outer environment and the two clusters together are pure.
    pub case_3: bool,
    /// Both conditional terms vanish (within [`CASE4_TOL`]).
    pub case_4: bool,
    /// `I(S1:S2|E)`, recorded when `case_2` holds.
    #[serde(rename = "I_case_2", skip_serializing_if = "Option::is_none")]
    pub i_case_2: Option<f64>,
    /// `I(S1E1:S2E2) − I(E1:E2)`, recorded when `case_4` holds.
    #[serde(rename = "I_case_4", skip_serializing_if = "Option::is_none")]
    pub i_case_4: Option<f64>,
}

/// Entropy terms and composite values of the two-world mutual information.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MutualInfoReport {
    pub model: ModelKind,
    pub entropies: BTreeMap<String, f64>,
    #[serde(rename = "I_total")]
    pub i_total: f64,
    pub terms: BTreeMap<String, f64>,
    pub reductions: Reductions,
}

pub const TERM_CLUSTERS: &str = "I_SE:SE";
pub const TERM_ENVS: &str = "I_E:E";
pub const TERM_E1_S2_GIVEN_E2: &str = "I_E1:S2|E2";
pub const TERM_E2_S1_GIVEN_E1: &str = "I_E2:S1|E1";

impl MutualInfoReport {
    /// `I(S1E1:S2E2) − I(E1:E2) − I(E1:S2|E2) − I(E2:S1|E1)` from the
    /// recorded terms, evaluated in the same order as `i_total`.
    pub fn recombine(&self) -> f64 {
        combine(
            self.terms[TERM_CLUSTERS],
            self.terms[TERM_ENVS],
            self.terms[TERM_E1_S2_GIVEN_E2],
            self.terms[TERM_E2_S1_GIVEN_E1],
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

#[inline]
fn combine(clusters: f64, envs: f64, e1_s2: f64, e2_s1: f64) -> f64 {
    clusters - envs - e1_s2 - e2_s1
}

/// Mutual information between the two systems of a two-world partition.
///
/// Any outer environment `E0` is traced out first. Cluster environments may be
/// empty in a custom model, which collapses the corresponding terms to zero.
pub fn multiworld_mi<T: Real>(rho: &DensityOperator<T>, model: &PartitionModel) -> Result<MutualInfoReport> {
    match model.kind() {
        ModelKind::ModelC => {}
        ModelKind::Custom => {
            let present = model.roles_present();
            if !present.contains(&Role::S1) || !present.contains(&Role::S2) {
                return Err(Error::arg("two-world model needs both S1 and S2"));
            }
            if present.contains(&Role::S) {
                return Err(Error::arg("role S has no place in a two-world model"));
            }
        }
        k => return Err(Error::arg(format!("{k} is not a two-world model"))),
    }
    model.check_covers(rho.space())?;
    let present = model.roles_present();
    let has_e0 = present.contains(&Role::E0);
    let inner_roles: Vec<Role> = present.iter().copied().filter(|&r| r != Role::E0).collect();
    let worlds = reduce(rho, model, &inner_roles)?;
    let space = worlds.space();
    let idx = |role: Role| -> Result<Vec<usize>> { space.resolve(&model.parties_with(role)) };
    let (s1, e1, s2, e2) = (idx(Role::S1)?, idx(Role::E1)?, idx(Role::S2)?, idx(Role::E2)?);

    let cat = |sets: &[&Vec<usize>]| -> Vec<usize> {
        let mut v: Vec<usize> = sets.iter().flat_map(|s| s.iter().copied()).collect();
        v.sort_unstable();
        v
    };
    let s1e1 = cat(&[&s1, &e1]);
    let s2e2 = cat(&[&s2, &e2]);
    let e1e2 = cat(&[&e1, &e2]);

    let mut entropies = BTreeMap::new();
    let mut record = |name: &str, set: &[usize]| -> Result<()> {
        entropies.insert(name.to_string(), entropy_of(&worlds, set)?.to_f64());
        Ok(())
    };
    record("S_E1", &e1)?;
    record("S_E2", &e2)?;
    record("S_E1E2", &e1e2)?;
    record("S_S1E1", &s1e1)?;
    record("S_S2E2", &s2e2)?;
    record("S_E1S2E2", &cat(&[&e1, &s2, &e2]))?;
    record("S_S1E1E2", &cat(&[&s1, &e1, &e2]))?;
    record("S_S1E1S2E2", &cat(&[&s1, &e1, &s2, &e2]))?;

    let clusters = mi_indices(&worlds, &s1e1, &s2e2)?.to_f64();
    let envs = mi_indices(&worlds, &e1, &e2)?.to_f64();
    let e1_s2 = cmi_indices(&worlds, &e1, &s2, &e2)?.to_f64();
    let e2_s1 = cmi_indices(&worlds, &e2, &s1, &e1)?.to_f64();
    let i_total = combine(clusters, envs, e1_s2, e2_s1);

    let terms = BTreeMap::from([
        (TERM_CLUSTERS.to_string(), clusters),
        (TERM_ENVS.to_string(), envs),
        (TERM_E1_S2_GIVEN_E2.to_string(), e1_s2),
        (TERM_E2_S1_GIVEN_E1.to_string(), e2_s1),
    ]);

    let case_1 = e1.is_empty() && e2.is_empty() && has_e0;
    let case_2 = e1.is_empty() != e2.is_empty();
    let i_case_2 = if case_2 {
        let env = if e1.is_empty() { &e2 } else { &e1 };
        Some(cmi_indices(&worlds, &s1, &s2, env)?.to_f64())
    } else {
        None
    };
    let case_3 = !has_e0 && purity(&worlds).to_f64() >= 1.0 - CASE4_TOL;
    let case_4 = e1_s2.abs() <= CASE4_TOL && e2_s1.abs() <= CASE4_TOL;
    let i_case_4 = case_4.then_some(clusters - envs);

    Ok(MutualInfoReport {
        model: model.kind(),
        entropies,
        i_total,
        terms,
        reductions: Reductions { case_1, case_2, case_3, case_4, i_case_2, i_case_4 },
    })
}
