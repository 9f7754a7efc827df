use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::MultipartiteSpace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Role {
    S,
    S1,
    S2,
    E0,
    E1,
    E2,
}

impl Role {
    pub const ALL: [Role; 6] = [Role::S, Role::S1, Role::S2, Role::E0, Role::E1, Role::E2];

    pub fn as_str(self) -> &'static str {
        match self {
            Role::S => "S",
            Role::S1 => "S1",
            Role::S2 => "S2",
            Role::E0 => "E0",
            Role::E1 => "E1",
            Role::E2 => "E2",
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Role {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Role::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| Error::arg(format!("unknown role {s}")))
    }
}

/// Which of the partition shapes a model follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    /// Universe = system + environment (`S`, `E0`).
    ModelA,
    /// System inside a layered environment (`S`, `E1`, `E0`).
    ModelB,
    /// Two system/environment clusters (`S1`, `E1`, `S2`, `E2`), optional `E0`.
    ModelC,
    Custom,
}

impl ModelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::ModelA => "model-a",
            ModelKind::ModelB => "model-b",
            ModelKind::ModelC => "model-c",
            ModelKind::Custom => "custom",
        }
    }

    fn accepts(self, roles: &BTreeSet<Role>) -> bool {
        use Role::*;
        let set = |r: &[Role]| r.iter().copied().collect::<BTreeSet<_>>();
        match self {
            ModelKind::ModelA => *roles == set(&[S, E0]),
            ModelKind::ModelB => *roles == set(&[S, E1, E0]),
            ModelKind::ModelC => {
                *roles == set(&[S1, E1, S2, E2]) || *roles == set(&[S1, E1, S2, E2, E0])
            }
            ModelKind::Custom => !roles.is_empty(),
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Assignment of party labels to roles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionModel {
    kind: ModelKind,
    roles: Vec<(String, Role)>,
}

impl PartitionModel {
    pub fn new<S: Into<String>>(kind: ModelKind, roles: impl IntoIterator<Item = (S, Role)>) -> Result<Self> {
        let roles: Vec<(String, Role)> = roles.into_iter().map(|(l, r)| (l.into(), r)).collect();
        for (i, (label, _)) in roles.iter().enumerate() {
            if roles[..i].iter().any(|(l, _)| l == label) {
                return Err(Error::arg(format!("party {label} has more than one role")));
            }
        }
        let present: BTreeSet<Role> = roles.iter().map(|(_, r)| *r).collect();
        if !kind.accepts(&present) {
            let got: Vec<&str> = present.iter().map(|r| r.as_str()).collect();
            return Err(Error::arg(format!("{kind} does not accept roles {{{}}}", got.join(", "))));
        }
        Ok(PartitionModel { kind, roles })
    }

    /// Picks the most specific kind whose role set matches, else `Custom`.
    pub fn infer<S: Into<String>>(roles: impl IntoIterator<Item = (S, Role)>) -> Result<Self> {
        let roles: Vec<(String, Role)> = roles.into_iter().map(|(l, r)| (l.into(), r)).collect();
        let present: BTreeSet<Role> = roles.iter().map(|(_, r)| *r).collect();
        let kind = [ModelKind::ModelA, ModelKind::ModelB, ModelKind::ModelC]
            .into_iter()
            .find(|k| k.accepts(&present))
            .unwrap_or(ModelKind::Custom);
        Self::new(kind, roles)
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn assignments(&self) -> &[(String, Role)] {
        &self.roles
    }

    pub fn role_of(&self, label: &str) -> Option<Role> {
        self.roles.iter().find(|(l, _)| l == label).map(|(_, r)| *r)
    }

    pub fn roles_present(&self) -> BTreeSet<Role> {
        self.roles.iter().map(|(_, r)| *r).collect()
    }

    /// Labels assigned to `role`, in assignment order.
    pub fn parties_with(&self, role: Role) -> Vec<&str> {
        self.roles
            .iter()
            .filter(|(_, r)| *r == role)
            .map(|(l, _)| l.as_str())
            .collect()
    }

    /// Checks that the model assigns exactly the parties of `space`.
    pub fn check_covers(&self, space: &MultipartiteSpace) -> Result<()> {
        for label in space.labels() {
            if self.role_of(label).is_none() {
                return Err(Error::arg(format!("party {label} has no role")));
            }
        }
        for (label, _) in &self.roles {
            space.index_of(label)?;
        }
        Ok(())
    }
}
