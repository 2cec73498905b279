//! Indexing combinatorics of Lagrangian conductors and effective
//! continuations.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConductorError {
    #[error("position {pos} out of range for a conductor of length {len}")]
    OutOfRange { pos: usize, len: usize },
    #[error("positions must be strictly increasing")]
    NotIncreasing,
    #[error("target of the first continuation differs from the source of the second")]
    Mismatch,
}

/// A tuple `(L_0, …, L_l)` of opaque elementary-conductor tokens.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Conductor {
    pub labels: Vec<String>,
}

impl Conductor {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Self {
        Conductor { labels: labels.into_iter().map(Into::into).collect() }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn subconductor(&self, positions: &[usize]) -> Result<Conductor, ConductorError> {
        check_increasing(positions, self.len())?;
        Ok(Conductor { labels: positions.iter().map(|&p| self.labels[p].clone()).collect() })
    }

    /// `(L_0..L_q, L_{q+1}..L_l)`.
    pub fn refinement_split(&self, q: usize) -> Result<(Conductor, Conductor), ConductorError> {
        if q >= self.len() {
            return Err(ConductorError::OutOfRange { pos: q, len: self.len() });
        }
        Ok((
            Conductor { labels: self.labels[..=q].to_vec() },
            Conductor { labels: self.labels[q + 1..].to_vec() },
        ))
    }

    /// Whether `self` is a refinement of `prefix` by `suffix`.
    pub fn is_refinement_of(&self, prefix: &Conductor, suffix: &Conductor) -> bool {
        self.len() == prefix.len() + suffix.len()
            && self.labels[..prefix.len()] == prefix.labels[..]
            && self.labels[prefix.len()..] == suffix.labels[..]
    }
}

fn check_increasing(positions: &[usize], len: usize) -> Result<(), ConductorError> {
    for (k, &p) in positions.iter().enumerate() {
        if p >= len {
            return Err(ConductorError::OutOfRange { pos: p, len });
        }
        if k > 0 && positions[k - 1] >= p {
            return Err(ConductorError::NotIncreasing);
        }
    }
    Ok(())
}

/// An increasing injection `φ_H : I_H → target positions`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Continuation {
    pub source: Conductor,
    pub target: Conductor,
    pub map: BTreeMap<usize, usize>,
}

impl Continuation {
    pub fn new(source: Conductor, target: Conductor, map: BTreeMap<usize, usize>) -> Result<Self, ConductorError> {
        let dom: Vec<usize> = map.keys().copied().collect();
        let img: Vec<usize> = map.values().copied().collect();
        check_increasing(&dom, source.len())?;
        check_increasing(&img, target.len())?;
        Ok(Continuation { source, target, map })
    }

    pub fn identity(c: &Conductor) -> Self {
        Continuation { source: c.clone(), target: c.clone(), map: (0..c.len()).map(|i| (i, i)).collect() }
    }

    pub fn domain(&self) -> Vec<usize> {
        self.map.keys().copied().collect()
    }

    pub fn image_positions(&self) -> Vec<usize> {
        self.map.values().copied().collect()
    }

    /// `k ∘ h`: first `h`, then `k`, on the pullback of `I_K` along `φ_H`.
    pub fn compose(&self, k: &Continuation) -> Result<Continuation, ConductorError> {
        if self.target != k.source {
            return Err(ConductorError::Mismatch);
        }
        let map = self
            .map
            .iter()
            .filter_map(|(&j, &i)| k.map.get(&i).map(|&t| (j, t)))
            .collect();
        Ok(Continuation { source: self.source.clone(), target: k.target.clone(), map })
    }

    /// Subconductor of the target at `Im φ_H`.
    pub fn image(&self) -> Conductor {
        self.target.subconductor(&self.image_positions()).expect("image positions are valid")
    }

    /// Subconductor of the source at `I_H`.
    pub fn cokernel(&self) -> Conductor {
        self.source.subconductor(&self.domain()).expect("domain positions are valid")
    }

    /// `#(φ_H(I_H) ∩ I_K) <= 1`.
    pub fn is_exact(&self, k: &Continuation) -> Result<bool, ConductorError> {
        if self.target != k.source {
            return Err(ConductorError::Mismatch);
        }
        let overlap = self.map.values().filter(|i| k.map.contains_key(i)).count();
        Ok(overlap <= 1)
    }
}

/// Input of `conductor exact`: a pair of composable continuations.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExactnessQuery {
    pub h: ContinuationSpec,
    pub k: ContinuationSpec,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ContinuationSpec {
    pub source: Vec<String>,
    pub target: Vec<String>,
    pub map: Vec<(usize, usize)>,
}

impl ContinuationSpec {
    pub fn build(&self) -> Result<Continuation, ConductorError> {
        Continuation::new(
            Conductor::new(self.source.clone()),
            Conductor::new(self.target.clone()),
            self.map.iter().copied().collect(),
        )
    }
}
