use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::states::{MultipartiteSpace, PartitionModel, PureState, Role};

/// Source position, 1-based. Ignored by equality so that documents compare
/// structurally.
#[derive(Debug, Clone, Copy, Default, Eq)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl PartialEq for Span {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

/// Complex amplitude compared bit for bit.
#[derive(Debug, Clone, Copy)]
pub struct Amplitude(pub Complex64);

impl PartialEq for Amplitude {
    fn eq(&self, other: &Self) -> bool {
        self.0.re.to_bits() == other.0.re.to_bits() && self.0.im.to_bits() == other.0.im.to_bits()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PartyDecl {
    pub label: String,
    pub dim: usize,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SystemDecl {
    pub name: String,
    pub parties: Vec<PartyDecl>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub amplitude: Amplitude,
    pub indices: Vec<usize>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateDecl {
    pub name: String,
    pub terms: Vec<Term>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoleDecl {
    pub label: String,
    pub role: Role,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpecDocument {
    pub system: SystemDecl,
    pub states: Vec<StateDecl>,
    pub roles: Option<Vec<RoleDecl>>,
}

impl SpecDocument {
    pub fn space(&self) -> Result<MultipartiteSpace> {
        MultipartiteSpace::new(self.system.parties.iter().map(|p| (p.label.clone(), p.dim)))
    }

    pub fn state_names(&self) -> Vec<&str> {
        self.states.iter().map(|s| s.name.as_str()).collect()
    }

    /// The named state, or the first one when `name` is `None`.
    pub fn state(&self, name: Option<&str>) -> Result<PureState<f64>> {
        let decl = match name {
            Some(n) => self
                .states
                .iter()
                .find(|s| s.name == n)
                .ok_or_else(|| Error::arg(format!("no state named {n}")))?,
            None => self.states.first().ok_or_else(|| Error::arg("document declares no state"))?,
        };
        let space = self.space()?;
        let mut amps = vec![Complex64::new(0.0, 0.0); space.total_dim()];
        for t in &decl.terms {
            amps[space.basis_index(&t.indices)?] = t.amplitude.0;
        }
        PureState::normalized(space, amps)
    }

    /// The roles block as a model of the most specific matching kind.
    pub fn partition(&self) -> Result<Option<PartitionModel>> {
        self.roles
            .as_ref()
            .map(|r| PartitionModel::infer(r.iter().map(|d| (d.label.clone(), d.role))))
            .transpose()
    }

    /// Builds a document with one state, writing only nonzero amplitudes.
    pub fn from_state(system: &str, name: &str, psi: &PureState<f64>, roles: Option<&PartitionModel>) -> Self {
        let space = psi.space();
        let parties = space
            .parties()
            .iter()
            .map(|p| PartyDecl { label: p.label.clone(), dim: p.dim, span: Span::default() })
            .collect();
        let terms = psi
            .amplitudes()
            .iter()
            .enumerate()
            .filter(|(_, a)| a.re != 0.0 || a.im != 0.0)
            .map(|(i, a)| Term { amplitude: Amplitude(*a), indices: space.digits(i), span: Span::default() })
            .collect();
        SpecDocument {
            system: SystemDecl { name: system.into(), parties, span: Span::default() },
            states: vec![StateDecl { name: name.into(), terms, span: Span::default() }],
            roles: roles.map(|m| {
                m.assignments()
                    .iter()
                    .map(|(label, role)| RoleDecl { label: label.clone(), role: *role, span: Span::default() })
                    .collect()
            }),
        }
    }
}
