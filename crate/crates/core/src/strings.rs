//! Formal open strings: ordered tensors of elementary strings between
//! Lagrangian labels, with index, duality, tensor product and the shift action.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ElementaryString {
    pub id: String,
    #[serde(rename = "from")]
    pub source: String,
    #[serde(rename = "to")]
    pub target: String,
    pub mu: i64,
}

impl ElementaryString {
    pub fn new(id: impl Into<String>, source: impl Into<String>, target: impl Into<String>, mu: i64) -> Self {
        ElementaryString { id: id.into(), source: source.into(), target: target.into(), mu }
    }

    /// Dual elementary string in a `2n`-dimensional symplectic manifold:
    /// endpoints swapped, index `n - μ`.
    pub fn dual(&self, n: i64) -> Self {
        ElementaryString {
            id: dual_id(&self.id),
            source: self.target.clone(),
            target: self.source.clone(),
            mu: n - self.mu,
        }
    }
}

fn dual_id(id: &str) -> String {
    match id.strip_suffix('*') {
        Some(base) => base.to_string(),
        None => format!("{id}*"),
    }
}

/// An open string `λ_1 ⊗ … ⊗ λ_q` together with its shift class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OpenString {
    pub factors: Vec<ElementaryString>,
    #[serde(default)]
    pub shift: i64,
    /// Set on duals of the empty string, whose index is `n` rather than `0`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub empty_dual_of: Option<i64>,
}

impl OpenString {
    pub fn empty() -> Self {
        OpenString { factors: Vec::new(), shift: 0, empty_dual_of: None }
    }

    pub fn from_factors(factors: Vec<ElementaryString>) -> Self {
        OpenString { factors, shift: 0, empty_dual_of: None }
    }

    pub fn cardinality(&self) -> usize {
        self.factors.len()
    }

    pub fn mu(&self) -> i64 {
        let base = self.empty_dual_of.unwrap_or(0);
        base + self.factors.iter().map(|f| f.mu).sum::<i64>() + self.shift
    }

    /// Reversed factors, each dualized; `∅* ` has index `n`.
    pub fn dual(&self, n: i64) -> Self {
        if self.factors.is_empty() {
            let empty_dual_of = match self.empty_dual_of {
                Some(_) => None,
                None => Some(n),
            };
            return OpenString { factors: Vec::new(), shift: -self.shift, empty_dual_of };
        }
        OpenString {
            factors: self.factors.iter().rev().map(|f| f.dual(n)).collect(),
            shift: -self.shift,
            empty_dual_of: None,
        }
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        OpenString {
            factors,
            shift: self.shift + other.shift,
            empty_dual_of: match (self.empty_dual_of, other.empty_dual_of) {
                (Some(a), Some(b)) => Some(a + b),
                (a, b) => a.or(b),
            },
        }
    }

    /// Acts by `e` on the shift class. With `n_mod > 0` the class lives in
    /// `ℤ/n_mod`; `n_mod = 1` identifies all shifts.
    pub fn shifted(&self, e: i64, n_mod: u64) -> Self {
        let mut out = self.clone();
        out.shift = reduce(self.shift + e, n_mod);
        out
    }

    /// Equality in the quotient by shifts summing to zero: factors compared
    /// up to their indices, total index compared exactly.
    pub fn equivalent(&self, other: &Self, n_mod: u64) -> bool {
        let strip = |s: &OpenString| -> Vec<(String, String, String)> {
            s.factors.iter().map(|f| (f.id.clone(), f.source.clone(), f.target.clone())).collect()
        };
        strip(self) == strip(other) && reduce(self.mu(), n_mod) == reduce(other.mu(), n_mod)
    }

    pub fn grading(&self, n_mod: u64) -> GradedClass {
        GradedClass::new(self.mu() + self.cardinality() as i64, n_mod)
    }
}

fn reduce(x: i64, n_mod: u64) -> i64 {
    if n_mod == 0 {
        x
    } else {
        x.rem_euclid(n_mod as i64)
    }
}

/// A class in `ℤ/N` (`N = 0` meaning `ℤ`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GradedClass {
    pub value: i64,
    pub modulus: u64,
}

impl GradedClass {
    pub fn new(value: i64, modulus: u64) -> Self {
        GradedClass { value: reduce(value, modulus), modulus }
    }
}
