//! Signed A∞ machinery on finite tensor data over the Novikov ring.
//!
//! Generators live between ordered Lagrangian labels `0..labels`; a generator
//! `x ∈ CF(L_i, L_j)` needs `i < j`. The basis of `CF(L̃)` is the set of
//! composable words `x_1 ⊗ … ⊗ x_q` (the target label of `x_k` is the source
//! label of `x_{k+1}`).
//!
//! Tensor entries are indexed by their number of inputs `q`. On generators
//! `m_q` shifts `μ` by `2 − q`, a continuation tensor `H_q` by `1 − q` and a
//! homotopy tensor `K_q` by `−q`. Indexed by the filtration drop `d = q − 1`
//! these are the shifts `1 − d`, `−d`, `−1 − d`.
//!
//! Tensor products of maps are evaluated with the Koszul rule: passing a map
//! of parity `p` over a generator `x` costs `(−1)^{p·μ(x)}`.

pub mod augment;
pub mod cohomology;
pub mod complex;
pub mod dual;
pub mod fixtures;
pub mod maps;
pub mod symbolic;

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::novikov::{NovikovError, ZSeries};

pub use augment::{check_augmentation, pushforward, AugValue, Augmentation, AugmentationReport, PushforwardReport};
pub use cohomology::{cohomology, CoefficientMode, CohomologyReport, DegreeRow};
pub use complex::{
    assemble_differential, check_a_infinity, euler_characteristic, validate_axioms_a, AInftyReport, AxiomsReport,
    FloerComplex, ResidualEntry, SignMutation,
};
pub use maps::{
    assemble_continuation, check_chain_map, check_composition, check_homotopy, compose_data, ChainMap, CompositionReport,
    MapDatum, MapReport,
};
pub use symbolic::{symbolic_delta_squared, CancellationReport, DisplayMutation};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AInftyError {
    #[error("{tensor}_{q} entry {inputs:?} -> {output} shifts the index by {found}, expected {expected}")]
    DegreeViolation { tensor: String, q: usize, inputs: Vec<String>, output: String, expected: i64, found: i64 },
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("duplicate generator {0}")]
    DuplicateGenerator(String),
    #[error("generator {id} has labels ({i}, {j}); need i < j < {labels}")]
    BadLabels { id: String, i: usize, j: usize, labels: usize },
    #[error("{tensor}_{q} entry {inputs:?} -> {output} is not a composable chain with matching endpoints")]
    NotComposable { tensor: String, q: usize, inputs: Vec<String>, output: String },
    #[error("entry declares q = {q} but has {found} inputs")]
    ArityMismatch { q: usize, found: usize },
    #[error("the Euler characteristic needs grading modulus 2, found {modulus}")]
    RequiresModTwoGrading { modulus: u64 },
    #[error("the Euler characteristic is defined for two labels, found {labels}")]
    RequiresTwoLabels { labels: usize },
    #[error("pivot {coefficient} in degree {degree} has a non-unit leading coefficient; rerun over rationals")]
    NonUnitPivot { degree: i64, coefficient: String },
    #[error(transparent)]
    Novikov(#[from] NovikovError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub id: String,
    pub i: usize,
    pub j: usize,
    pub mu: i64,
}

/// One sparse entry `coeff · output` of `T_q(inputs)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TensorEntry {
    pub q: usize,
    pub inputs: Vec<String>,
    pub output: String,
    pub coeff: ZSeries,
}

fn default_modulus() -> u64 {
    2
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AInftyDatum {
    /// Number of Lagrangian labels, `l + 1`.
    pub labels: usize,
    #[serde(default = "default_modulus")]
    pub modulus: u64,
    /// Signed intersection number `L_0 ∘ L_1`, when known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub intersection_number: Option<i64>,
    pub generators: Vec<Generator>,
    #[serde(default)]
    pub tensors: Vec<TensorEntry>,
}

/// Index of a generator in its datum.
pub type GenId = usize;
pub type Word = Vec<GenId>;
/// Sparse vector on the word basis.
pub type Vector = BTreeMap<Word, ZSeries>;
/// Compiled tensor: input word to output combination.
pub type Table = BTreeMap<Word, Vec<(GenId, ZSeries)>>;

pub(crate) fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

pub(crate) fn signed(c: &ZSeries, e: i64) -> ZSeries {
    if sign(e) == 1 {
        c.clone()
    } else {
        c.neg_series()
    }
}

pub(crate) fn add_to(v: &mut Vector, w: Word, c: ZSeries) {
    if c.is_zero() {
        return;
    }
    match v.get_mut(&w) {
        Some(x) => {
            *x = x.add_series(&c);
            if x.is_zero() {
                v.remove(&w);
            }
        }
        None => {
            v.insert(w, c);
        }
    }
}

pub(crate) fn add_vec(acc: &mut Vector, v: &Vector, e: i64) {
    for (w, c) in v {
        add_to(acc, w.clone(), signed(c, e));
    }
}

impl AInftyDatum {
    pub fn new(labels: usize, generators: Vec<Generator>) -> Self {
        AInftyDatum { labels, modulus: 2, intersection_number: None, generators, tensors: Vec::new() }
    }

    pub fn generator(&mut self, id: &str, i: usize, j: usize, mu: i64) -> &mut Self {
        self.generators.push(Generator { id: id.to_string(), i, j, mu });
        self
    }

    pub fn entry(&mut self, inputs: &[&str], output: &str, coeff: ZSeries) -> &mut Self {
        self.tensors.push(TensorEntry {
            q: inputs.len(),
            inputs: inputs.iter().map(|s| s.to_string()).collect(),
            output: output.to_string(),
            coeff,
        });
        self
    }

    pub fn index(&self) -> Result<HashMap<&str, GenId>, AInftyError> {
        let mut map = HashMap::new();
        for (k, g) in self.generators.iter().enumerate() {
            if g.i >= g.j || g.j >= self.labels {
                return Err(AInftyError::BadLabels { id: g.id.clone(), i: g.i, j: g.j, labels: self.labels });
            }
            if map.insert(g.id.as_str(), k).is_some() {
                return Err(AInftyError::DuplicateGenerator(g.id.clone()));
            }
        }
        Ok(map)
    }

    pub fn mu(&self, w: &[GenId]) -> i64 {
        w.iter().map(|&g| self.generators[g].mu).sum()
    }

    /// Integer degree `Σμ − q + 1`; `δ^CF` raises it by one.
    pub fn degree(&self, w: &[GenId]) -> i64 {
        self.mu(w) - w.len() as i64 + 1
    }

    /// Class of `μ + q` modulo the grading modulus.
    pub fn grading_class(&self, w: &[GenId]) -> i64 {
        let v = self.mu(w) + w.len() as i64;
        if self.modulus == 0 {
            v
        } else {
            v.rem_euclid(self.modulus as i64)
        }
    }

    pub fn is_composable(&self, w: &[GenId]) -> bool {
        w.windows(2).all(|p| self.generators[p[0]].j == self.generators[p[1]].i)
    }

    /// All nonempty composable words, by cardinality then lexicographically.
    pub fn words(&self) -> Vec<Word> {
        let mut out: Vec<Word> = (0..self.generators.len()).map(|g| vec![g]).collect();
        let mut frontier = out.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for w in &frontier {
                let end = self.generators[*w.last().unwrap()].j;
                for (g, gen) in self.generators.iter().enumerate() {
                    if gen.i == end {
                        let mut v = w.clone();
                        v.push(g);
                        next.push(v);
                    }
                }
            }
            next.sort();
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    pub fn word_ids(&self, w: &[GenId]) -> Vec<String> {
        w.iter().map(|&g| self.generators[g].id.clone()).collect()
    }

    pub fn resolve_word(&self, ids: &[String]) -> Result<Word, AInftyError> {
        let index = self.index()?;
        ids.iter()
            .map(|id| index.get(id.as_str()).copied().ok_or_else(|| AInftyError::UnknownGenerator(id.clone())))
            .collect()
    }

    /// The structure tensors, checked for composability and the shift `2 − q`.
    pub fn m_table(&self) -> Result<Table, AInftyError> {
        compile(&self.tensors, "m", 2, self, self)
    }

    /// Datum on the labels in `keep` (increasing), relabelled `0..keep.len()`.
    pub fn restrict(&self, keep: &[usize]) -> AInftyDatum {
        let pos = |x: usize| keep.iter().position(|&k| k == x);
        let mut generators = Vec::new();
        let mut kept = std::collections::HashSet::new();
        for g in &self.generators {
            if let (Some(i), Some(j)) = (pos(g.i), pos(g.j)) {
                generators.push(Generator { id: g.id.clone(), i, j, mu: g.mu });
                kept.insert(g.id.clone());
            }
        }
        let mut sub = AInftyDatum::new(keep.len(), generators);
        sub.modulus = self.modulus;
        sub.intersection_number = self.intersection_number;
        sub.tensors = self
            .tensors
            .iter()
            .filter(|e| e.inputs.iter().all(|x| kept.contains(x)) && kept.contains(&e.output))
            .cloned()
            .collect();
        sub
    }

    /// Copy with the `k`-th tensor entry negated.
    pub fn with_flipped_entry(&self, k: usize) -> AInftyDatum {
        let mut out = self.clone();
        out.tensors[k].coeff = out.tensors[k].coeff.neg_series();
        out
    }
}

/// Compiles sparse entries; `base` is the shift at one input (2 for `m`,
/// 1 for `H`, 0 for `K`), inputs resolve in `source`, outputs in `target`.
pub(crate) fn compile(
    entries: &[TensorEntry],
    tensor: &str,
    base: i64,
    source: &AInftyDatum,
    target: &AInftyDatum,
) -> Result<Table, AInftyError> {
    let src = source.index()?;
    let tgt = target.index()?;
    let mut table: BTreeMap<Word, BTreeMap<GenId, ZSeries>> = BTreeMap::new();
    for e in entries {
        if e.inputs.len() != e.q || e.q == 0 {
            return Err(AInftyError::ArityMismatch { q: e.q, found: e.inputs.len() });
        }
        let w: Word = e
            .inputs
            .iter()
            .map(|id| src.get(id.as_str()).copied().ok_or_else(|| AInftyError::UnknownGenerator(id.clone())))
            .collect::<Result<_, _>>()?;
        let o = *tgt.get(e.output.as_str()).ok_or_else(|| AInftyError::UnknownGenerator(e.output.clone()))?;
        let first = &source.generators[w[0]];
        let last = &source.generators[*w.last().unwrap()];
        let out = &target.generators[o];
        if !source.is_composable(&w) || out.i != first.i || out.j != last.j {
            return Err(AInftyError::NotComposable {
                tensor: tensor.to_string(),
                q: e.q,
                inputs: e.inputs.clone(),
                output: e.output.clone(),
            });
        }
        let expected = base - e.q as i64;
        let found = out.mu - source.mu(&w);
        if found != expected {
            return Err(AInftyError::DegreeViolation {
                tensor: tensor.to_string(),
                q: e.q,
                inputs: e.inputs.clone(),
                output: e.output.clone(),
                expected,
                found,
            });
        }
        let slot = table.entry(w).or_default();
        let c = slot.entry(o).or_insert_with(ZSeries::zero);
        *c = c.add_series(&e.coeff);
    }
    Ok(table
        .into_iter()
        .map(|(w, outs)| (w, outs.into_iter().filter(|(_, c)| !c.is_zero()).collect::<Vec<_>>()))
        .filter(|(_, outs)| !outs.is_empty())
        .collect())
}

/// Turns a compiled table back into sparse entries.
pub(crate) fn decompile(table: &Table, source: &AInftyDatum, target: &AInftyDatum) -> Vec<TensorEntry> {
    let mut out = Vec::new();
    for (w, outs) in table {
        for (o, c) in outs {
            out.push(TensorEntry {
                q: w.len(),
                inputs: source.word_ids(w),
                output: target.generators[*o].id.clone(),
                coeff: c.clone(),
            });
        }
    }
    out
}

pub(crate) fn render_vector(d: &AInftyDatum, v: &Vector) -> Vec<(Vec<String>, String)> {
    v.iter().map(|(w, c)| (d.word_ids(w), c.to_string())).collect()
}
