use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::checked_total;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Party {
    pub label: String,
    pub dim: usize,
}

/// Ordered list of labelled parties spanning a tensor-product space.
///
/// Basis states are indexed mixed-radix with the first party most significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultipartiteSpace {
    parties: Vec<Party>,
}

impl MultipartiteSpace {
    pub fn new<S: Into<String>>(parties: impl IntoIterator<Item = (S, usize)>) -> Result<Self> {
        let parties: Vec<Party> = parties
            .into_iter()
            .map(|(label, dim)| Party { label: label.into(), dim })
            .collect();
        if parties.is_empty() {
            return Err(Error::arg("a space needs at least one party"));
        }
        for (i, p) in parties.iter().enumerate() {
            if p.label.is_empty() {
                return Err(Error::arg("empty party label"));
            }
            if p.dim == 0 {
                return Err(Error::arg(format!("party {} has dimension 0", p.label)));
            }
            if parties[..i].iter().any(|q| q.label == p.label) {
                return Err(Error::arg(format!("duplicate party label {}", p.label)));
            }
        }
        let dims: Vec<usize> = parties.iter().map(|p| p.dim).collect();
        checked_total(&dims)?;
        Ok(MultipartiteSpace { parties })
    }

    /// Parties labelled `P0, P1, …` with the given dimensions.
    pub fn anonymous(dims: &[usize]) -> Result<Self> {
        Self::new(dims.iter().enumerate().map(|(i, &d)| (format!("P{i}"), d)))
    }

    /// `n` qubits labelled `q1 … qn`.
    pub fn qubits(n: usize) -> Result<Self> {
        Self::new((1..=n).map(|i| (format!("q{i}"), 2)))
    }

    pub fn parties(&self) -> &[Party] {
        &self.parties
    }

    pub fn len(&self) -> usize {
        self.parties.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parties.is_empty()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.parties.iter().map(|p| p.dim).collect()
    }

    pub fn labels(&self) -> Vec<&str> {
        self.parties.iter().map(|p| p.label.as_str()).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.parties.iter().map(|p| p.dim).product()
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.parties
            .iter()
            .position(|p| p.label == label)
            .ok_or_else(|| Error::arg(format!("unknown party {label}")))
    }

    /// Party indices for `labels`, sorted ascending; rejects duplicates.
    pub fn resolve<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<usize>> {
        let mut idx = labels
            .iter()
            .map(|l| self.index_of(l.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        idx.sort_unstable();
        let n = idx.len();
        idx.dedup();
        if idx.len() != n {
            return Err(Error::arg("party set lists a party twice"));
        }
        Ok(idx)
    }

    /// Sub-space made of the parties at `indices` (kept in space order).
    pub fn select(&self, indices: &[usize]) -> Result<Self> {
        let mut idx = indices.to_vec();
        idx.sort_unstable();
        idx.dedup();
        let parties = idx
            .iter()
            .map(|&i| {
                self.parties
                    .get(i)
                    .cloned()
                    .ok_or_else(|| Error::arg(format!("party index {i} out of range")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MultipartiteSpace { parties })
    }

    /// `self ⊗ other`; labels must stay unique.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        Self::new(
            self.parties
                .iter()
                .chain(&other.parties)
                .map(|p| (p.label.clone(), p.dim)),
        )
    }

    /// A label not yet used in this space, derived from `base`.
    pub fn fresh_label(&self, base: &str) -> String {
        if self.index_of(base).is_err() {
            return base.to_string();
        }
        (1..)
            .map(|i| format!("{base}{i}"))
            .find(|l| self.index_of(l).is_err())
            .expect("unbounded search")
    }

    /// Mixed-radix digits of basis index `index`.
    pub fn digits(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.parties.len()];
        for (slot, p) in out.iter_mut().zip(&self.parties).rev() {
            *slot = index % p.dim;
            index /= p.dim;
        }
        out
    }

    /// Basis index of the digit tuple, or an error naming the offending party.
    pub fn basis_index(&self, digits: &[usize]) -> Result<usize> {
        if digits.len() != self.parties.len() {
            return Err(Error::arg(format!(
                "{} indices for {} parties",
                digits.len(),
                self.parties.len()
            )));
        }
        let mut idx = 0;
        for (&d, p) in digits.iter().zip(&self.parties) {
            if d >= p.dim {
                return Err(Error::arg(format!(
                    "index {d} out of range for party {} (dim {})",
                    p.label, p.dim
                )));
            }
            idx = idx * p.dim + d;
        }
        Ok(idx)
    }
}

impl fmt::Display for MultipartiteSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parties.iter().map(|p| format!("{}:{}", p.label, p.dim)).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digits_round_trip() {
        let s = MultipartiteSpace::new([("A", 2), ("B", 3), ("C", 2)]).unwrap();
        for i in 0..s.total_dim() {
            assert_eq!(s.basis_index(&s.digits(i)).unwrap(), i);
        }
        assert_eq!(s.digits(5), vec![0, 2, 1]);
        assert_eq!(s.digits(7), vec![1, 0, 1]);
    }

    #[test]
    fn rejects_bad_rosters() {
        assert!(MultipartiteSpace::new([("A", 2), ("A", 2)]).is_err());
        assert!(MultipartiteSpace::new([("", 2)]).is_err());
        assert!(matches!(
            MultipartiteSpace::new([("A", 4096), ("B", 2)]),
            Err(Error::SizeLimit { .. })
        ));
        let s = MultipartiteSpace::new([("A", 2)]).unwrap();
        assert_eq!(
            s.basis_index(&[2]).unwrap_err(),
            Error::Argument("index 2 out of range for party A (dim 2)".into())
        );
    }

    #[test]
    fn fresh_labels_avoid_collisions() {
        let s = MultipartiteSpace::new([("anc", 2), ("anc1", 2)]).unwrap();
        assert_eq!(s.fresh_label("anc"), "anc2");
        assert_eq!(s.fresh_label("E"), "E");
    }
}
