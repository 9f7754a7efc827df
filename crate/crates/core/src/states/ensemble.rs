use crate::error::{Error, Result};
use crate::scalar::Real;

use super::{MultipartiteSpace, PureState};

/// Weighted collection of pure states on one space.
#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble<T: Real> {
    members: Vec<(T, PureState<T>)>,
}

impl<T: Real> Ensemble<T> {
    /// Weights must lie in `(0, 1]` and sum to `1 ± 1e−10`; all members must
    /// share a space.
    pub fn new(members: Vec<(T, PureState<T>)>) -> Result<Self> {
        let first = members.first().ok_or_else(|| Error::arg("empty ensemble"))?;
        let space = first.1.space().clone();
        for (p, psi) in &members {
            if !(*p > T::zero() && *p <= T::one() + T::tol(1e-10)) {
                return Err(Error::arg(format!("weight {p} outside (0, 1]")));
            }
            if psi.space() != &space {
                return Err(Error::Space(format!(
                    "member on {} but ensemble is on {}",
                    psi.space(),
                    space
                )));
            }
        }
        let total: T = members.iter().map(|(p, _)| *p).sum();
        if (total - T::one()).abs() > T::tol(1e-10) {
            return Err(Error::arg(format!("weights sum to {total}, not 1")));
        }
        Ok(Ensemble { members })
    }

    pub fn members(&self) -> &[(T, PureState<T>)] {
        &self.members
    }

    pub fn space(&self) -> &MultipartiteSpace {
        self.members[0].1.space()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}
