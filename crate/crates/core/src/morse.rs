//! Morse-model Floer data on copies `L_0, …, L_l` of one Lagrangian, the
//! `Sⁿ` fixture and the SFT index bound.
//!
//! Each pair `i < j` of labels carries one generator per critical point, with
//! `μ = n − i_M`. Flows give `m_1` weighted by `t^{f(from) − f(to)}`; triple
//! counts give `m_2` on every `i < j < k`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ainfty::{AInftyDatum, AInftyError};
use crate::maslov::{RawNumber, Q};
use crate::novikov::{Exponent, ZSeries};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MorseError {
    #[error("unknown critical point {0}")]
    UnknownPoint(String),
    #[error("duplicate critical point {0}")]
    DuplicatePoint(String),
    #[error("bad number {0}")]
    BadNumber(String),
    #[error("critical point {id} has index {index} outside 0..={n}")]
    IndexOutOfRange { id: String, index: i64, n: i64 },
    #[error("flow {from} -> {to} must lower the Morse index by one")]
    IndexMismatch { from: String, to: String },
    #[error("flow {from} -> {to} does not decrease the function")]
    NegativeAction { from: String, to: String },
    #[error("triple ({a}, {b}) -> {out} has negative action {action}")]
    NegativeTripleAction { a: String, b: String, out: String, action: String },
    #[error("Morse differential does not square to zero: ∂∂({point}) = {residual}")]
    NotAComplex { point: String, residual: String },
    #[error("need at least two labels, found {0}")]
    TooFewLabels(usize),
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error("the bound needs n ≥ 3 or g = 0, found n = {n}, g = {g}")]
    HypothesisViolated { n: u64, g: u64 },
    #[error(transparent)]
    AInfty(#[from] AInftyError),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CriticalPoint {
    pub id: String,
    pub index: i64,
    pub value: RawNumber,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Flow {
    pub from: String,
    pub to: String,
    pub count: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Triple {
    pub a: String,
    pub b: String,
    pub out: String,
    pub count: i64,
    #[serde(default = "zero_action")]
    pub action: RawNumber,
}

fn zero_action() -> RawNumber {
    RawNumber::Int(0)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MorseDatum {
    pub n: i64,
    pub points: Vec<CriticalPoint>,
    #[serde(default)]
    pub flows: Vec<Flow>,
    #[serde(default)]
    pub triples: Vec<Triple>,
    #[serde(default = "two")]
    pub labels: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub intersection_number: Option<i64>,
}

fn two() -> usize {
    2
}

fn rational(x: &RawNumber) -> Result<Q, MorseError> {
    x.rational().ok_or_else(|| MorseError::BadNumber(format!("{x:?}")))
}

/// Generator name of `x` in `CF(L_i, L_j)`; the bare id when there are two labels.
pub fn copy_id(point: &str, i: usize, j: usize, labels: usize) -> String {
    if labels == 2 {
        point.to_string()
    } else {
        format!("{point}_{i}{j}")
    }
}

impl MorseDatum {
    fn values(&self) -> Result<BTreeMap<&str, (i64, Q)>, MorseError> {
        let mut out = BTreeMap::new();
        for p in &self.points {
            if p.index < 0 || p.index > self.n {
                return Err(MorseError::IndexOutOfRange { id: p.id.clone(), index: p.index, n: self.n });
            }
            if out.insert(p.id.as_str(), (p.index, rational(&p.value)?)).is_some() {
                return Err(MorseError::DuplicatePoint(p.id.clone()));
            }
        }
        Ok(out)
    }

    /// Integer Morse differential, summed over repeated flow lines.
    pub fn differential(&self) -> Result<BTreeMap<String, BTreeMap<String, i64>>, MorseError> {
        let values = self.values()?;
        let mut d: BTreeMap<String, BTreeMap<String, i64>> = BTreeMap::new();
        for f in &self.flows {
            let (ia, va) = values.get(f.from.as_str()).ok_or_else(|| MorseError::UnknownPoint(f.from.clone()))?;
            let (ib, vb) = values.get(f.to.as_str()).ok_or_else(|| MorseError::UnknownPoint(f.to.clone()))?;
            if *ia != ib + 1 {
                return Err(MorseError::IndexMismatch { from: f.from.clone(), to: f.to.clone() });
            }
            if va <= vb {
                return Err(MorseError::NegativeAction { from: f.from.clone(), to: f.to.clone() });
            }
            *d.entry(f.from.clone()).or_default().entry(f.to.clone()).or_insert(0) += f.count;
        }
        for row in d.values_mut() {
            row.retain(|_, c| *c != 0);
        }
        d.retain(|_, row| !row.is_empty());
        Ok(d)
    }

    pub fn check_complex(&self) -> Result<(), MorseError> {
        let d = self.differential()?;
        for (x, row) in &d {
            let mut dd: BTreeMap<&str, i64> = BTreeMap::new();
            for (y, c) in row {
                for (z, c2) in d.get(y).into_iter().flatten() {
                    *dd.entry(z.as_str()).or_insert(0) += c * c2;
                }
            }
            dd.retain(|_, c| *c != 0);
            if !dd.is_empty() {
                let residual = dd.iter().map(|(z, c)| format!("{c}·{z}")).collect::<Vec<_>>().join(" + ");
                return Err(MorseError::NotAComplex { point: x.clone(), residual });
            }
        }
        Ok(())
    }
}

pub fn build_floer_complex(m: &MorseDatum) -> Result<AInftyDatum, MorseError> {
    m.check_complex()?;
    let labels = m.labels;
    if labels < 2 {
        return Err(MorseError::TooFewLabels(labels));
    }
    let values = m.values()?;
    let mut d = AInftyDatum::new(labels, Vec::new());
    d.intersection_number = m.intersection_number;
    for i in 0..labels {
        for j in i + 1..labels {
            for p in &m.points {
                d.generator(&copy_id(&p.id, i, j, labels), i, j, m.n - p.index);
            }
        }
    }
    let flows = m.differential()?;
    for (from, row) in &flows {
        for (to, &count) in row {
            let action = Exponent(&values[from.as_str()].1 - &values[to.as_str()].1);
            for i in 0..labels {
                for j in i + 1..labels {
                    d.entry(
                        &[&copy_id(from, i, j, labels)],
                        &copy_id(to, i, j, labels),
                        ZSeries::constant(count).shift(&action),
                    );
                }
            }
        }
    }
    for t in &m.triples {
        for id in [&t.a, &t.b, &t.out] {
            if !values.contains_key(id.as_str()) {
                return Err(MorseError::UnknownPoint(id.clone()));
            }
        }
        let action = rational(&t.action)?;
        if action < Q::from_integer(0.into()) {
            return Err(MorseError::NegativeTripleAction {
                a: t.a.clone(),
                b: t.b.clone(),
                out: t.out.clone(),
                action: action.to_string(),
            });
        }
        for i in 0..labels {
            for j in i + 1..labels {
                for k in j + 1..labels {
                    d.entry(
                        &[&copy_id(&t.a, i, j, labels), &copy_id(&t.b, j, k, labels)],
                        &copy_id(&t.out, i, k, labels),
                        ZSeries::constant(t.count).shift(&Exponent(action.clone())),
                    );
                }
            }
        }
    }
    d.m_table()?;
    Ok(d)
}

/// Height function on `Sⁿ`: `max` of index `n` gives `μ = 0`, `min` of index
/// `0` gives `μ = n`, and `max` is the unit.
pub fn sphere_morse(n: i64, labels: usize) -> MorseDatum {
    let point = |id: &str, index, value| CriticalPoint { id: id.into(), index, value: RawNumber::Int(value) };
    let triple = |a: &str, b: &str, out: &str| Triple {
        a: a.into(),
        b: b.into(),
        out: out.into(),
        count: 1,
        action: RawNumber::Int(0),
    };
    MorseDatum {
        n,
        points: vec![point("max", n, 1), point("min", 0, 0)],
        flows: Vec::new(),
        triples: vec![triple("max", "max", "max"), triple("max", "min", "min"), triple("min", "max", "min")],
        labels,
        intersection_number: Some(1 + if n % 2 == 0 { 1 } else { -1 }),
    }
}

pub fn sphere_fixture(n: i64) -> AInftyDatum {
    build_floer_complex(&sphere_morse(n, 3)).expect("sphere fixture is well formed")
}

/// Four critical points of a perfect function on `T²`; the two gradient
/// lines from the maximum to each saddle cancel.
pub fn torus_morse() -> MorseDatum {
    let point = |id: &str, index, value: i64| CriticalPoint { id: id.into(), index, value: RawNumber::Int(value) };
    let flow = |from: &str, to: &str, count| Flow { from: from.into(), to: to.into(), count };
    MorseDatum {
        n: 2,
        points: vec![point("a", 0, 0), point("b1", 1, 1), point("b2", 1, 2), point("c", 2, 4)],
        flows: vec![
            flow("c", "b1", 1),
            flow("c", "b1", -1),
            flow("c", "b2", 1),
            flow("c", "b2", -1),
            flow("b1", "a", 1),
            flow("b1", "a", -1),
            flow("b2", "a", 1),
            flow("b2", "a", -1),
        ],
        triples: Vec::new(),
        labels: 2,
        intersection_number: Some(0),
    }
}

/// A cancelling pair on an interval: one gradient line from a critical
/// point of index one to a minimum.
pub fn acyclic_morse() -> MorseDatum {
    MorseDatum {
        n: 1,
        points: vec![
            CriticalPoint { id: "p".into(), index: 1, value: RawNumber::Text("3/2".into()) },
            CriticalPoint { id: "q".into(), index: 0, value: RawNumber::Int(0) },
        ],
        flows: vec![Flow { from: "p".into(), to: "q".into(), count: 1 }],
        triples: Vec::new(),
        labels: 2,
        intersection_number: Some(0),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ProductEntry {
    pub a: String,
    pub b: String,
    /// `m_2(a_01, b_12)` as `(point, coefficient)` pairs, with the output
    /// generator in `CF(L_0, L_2)` named by its critical point.
    pub product: Vec<(String, String)>,
}

/// `m_2` on `CF(L_0, L_1) ⊗ CF(L_1, L_2)` for every pair of critical points.
pub fn product_table(m: &MorseDatum) -> Result<Vec<ProductEntry>, MorseError> {
    let three = MorseDatum { labels: 3, ..m.clone() };
    let d = build_floer_complex(&three)?;
    let table = d.m_table()?;
    let index = d.index()?;
    let mut out = Vec::new();
    for a in &m.points {
        for b in &m.points {
            let w = vec![index[copy_id(&a.id, 0, 1, 3).as_str()], index[copy_id(&b.id, 1, 2, 3).as_str()]];
            let product = table
                .get(&w)
                .into_iter()
                .flatten()
                .map(|(g, c)| {
                    let name = m.points.iter().find(|p| copy_id(&p.id, 0, 2, 3) == d.generators[*g].id);
                    (name.map_or_else(|| d.generators[*g].id.clone(), |p| p.id.clone()), c.to_string())
                })
                .collect();
            out.push(ProductEntry { a: a.id.clone(), b: b.id.clone(), product });
        }
    }
    Ok(out)
}

/// Checks `m_2(e_ij, x_jk) = x_ik = m_2(x_ij, e_jk)` for every point `x` and
/// every `i < j < k`, with coefficient exactly `1`.
pub fn unit_law(m: &MorseDatum, unit: &str) -> Result<bool, MorseError> {
    let labels = m.labels.max(3);
    let d = build_floer_complex(&MorseDatum { labels, ..m.clone() })?;
    let table = d.m_table()?;
    let index = d.index()?;
    let id = |p: &str, i, j| index[copy_id(p, i, j, labels).as_str()];
    for x in &m.points {
        for i in 0..labels {
            for j in i + 1..labels {
                for k in j + 1..labels {
                    let expected = vec![(id(&x.id, i, k), ZSeries::one())];
                    for w in [vec![id(unit, i, j), id(&x.id, j, k)], vec![id(&x.id, i, j), id(unit, j, k)]] {
                        if table.get(&w) != Some(&expected) {
                            return Ok(false);
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SftIndexQuery {
    pub n: u64,
    pub g: u64,
    pub v: u64,
    pub m: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SftBound {
    /// `−2(n − 1)Σ m_i`.
    pub mu_max: i64,
    pub bound: i64,
    /// `(n − 3)(2 − 2g − 2v) − 2v`, which dominates `bound`.
    pub majorant: i64,
    pub satisfies: bool,
}

pub fn sft_index_bound(q: &SftIndexQuery) -> Result<SftBound, MorseError> {
    if q.n < 2 {
        return Err(MorseError::InvalidQuery(format!("n = {} < 2", q.n)));
    }
    if q.v < 1 || q.m.len() as u64 != q.v {
        return Err(MorseError::InvalidQuery(format!("v = {} with {} multiplicities", q.v, q.m.len())));
    }
    if q.m.contains(&0) {
        return Err(MorseError::InvalidQuery("multiplicities must be positive".into()));
    }
    if q.g > 0 && q.n == 2 {
        return Err(MorseError::HypothesisViolated { n: q.n, g: q.g });
    }
    let (n, g, v) = (q.n as i64, q.g as i64, q.v as i64);
    let sum: i64 = q.m.iter().map(|&x| x as i64).sum();
    let mu_max = -2 * (n - 1) * sum;
    let bound = mu_max + (n - 3) * (2 - 2 * g) + 2 * v;
    let majorant = (n - 3) * (2 - 2 * g - 2 * v) - 2 * v;
    Ok(SftBound { mu_max, bound, majorant, satisfies: bound <= -2 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_point() {
        let m = MorseDatum {
            n: 3,
            points: vec![CriticalPoint { id: "x".into(), index: 1, value: RawNumber::Int(0) }],
            flows: vec![],
            triples: vec![],
            labels: 2,
            intersection_number: None,
        };
        let d = build_floer_complex(&m).unwrap();
        assert_eq!(d.generators.len(), 1);
        assert_eq!(d.generators[0].mu, 2);
        assert!(d.tensors.is_empty());
    }

    #[test]
    fn flow_weight_is_action_difference() {
        let d = build_floer_complex(&acyclic_morse()).unwrap();
        assert_eq!(d.tensors.len(), 1);
        assert_eq!(d.tensors[0].coeff.to_string(), "t^3/2");
    }

    #[test]
    fn worked_examples() {
        let b = sft_index_bound(&SftIndexQuery { n: 3, g: 0, v: 1, m: vec![1] }).unwrap();
        assert_eq!((b.mu_max, b.bound, b.satisfies), (-4, -2, true));
        let b = sft_index_bound(&SftIndexQuery { n: 2, g: 0, v: 2, m: vec![1, 1] }).unwrap();
        assert_eq!((b.majorant, b.satisfies), (-2, true));
        assert!(matches!(
            sft_index_bound(&SftIndexQuery { n: 2, g: 1, v: 1, m: vec![1] }),
            Err(MorseError::HypothesisViolated { .. })
        ));
    }
}
