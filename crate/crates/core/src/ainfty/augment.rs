//! Augmentations: a value on each degree-zero generator, extended to words
//! by the factorization sign rule, killed by the differential.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::complex::FloerComplex;
use super::maps::{assemble_continuation, MapDatum};
use super::{add_to, signed, AInftyDatum, AInftyError, GenId, Vector};
use crate::novikov::ZSeries;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AugValue {
    pub word: Vec<String>,
    pub value: ZSeries,
}

/// Values on elementary generators, optionally also on longer words, which
/// are then checked against the sign rule.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Augmentation {
    pub values: Vec<AugValue>,
}

/// `(−1)^{Σ_i (q − i) μ(λ_i)}`.
pub fn factorization_exponent(d: &AInftyDatum, w: &[GenId]) -> i64 {
    let q = w.len();
    w.iter().enumerate().map(|(k, &g)| (q - 1 - k) as i64 * d.generators[g].mu).sum()
}

/// `Σ_w ε(w)·w` over every word whose factors all carry a value.
pub fn extend(d: &AInftyDatum, elementary: &BTreeMap<GenId, ZSeries>) -> Vector {
    let mut out = Vector::new();
    for w in d.words() {
        let mut c = ZSeries::one();
        let mut ok = true;
        for g in &w {
            match elementary.get(g) {
                Some(x) => c = &c * x,
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            let e = factorization_exponent(d, &w);
            add_to(&mut out, w, signed(&c, e));
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct AugmentationReport {
    pub passed: bool,
    /// Every generator with a value lies in `Λ^0`.
    pub domain: bool,
    /// Supplied values on words agree with the sign rule.
    pub factorization: bool,
    /// `δ^CF` kills the extended augmentation.
    pub closed: bool,
    pub words: usize,
    pub residual: Vec<(Vec<String>, String)>,
}

fn elementary_values(
    d: &AInftyDatum,
    a: &Augmentation,
) -> Result<(BTreeMap<GenId, ZSeries>, Vec<(Vec<GenId>, ZSeries)>), AInftyError> {
    let mut elementary = BTreeMap::new();
    let mut longer = Vec::new();
    for v in &a.values {
        let w = d.resolve_word(&v.word)?;
        if w.len() == 1 {
            elementary.insert(w[0], v.value.clone());
        } else {
            longer.push((w, v.value.clone()));
        }
    }
    Ok((elementary, longer))
}

pub fn check_augmentation(c: &FloerComplex, a: &Augmentation) -> Result<AugmentationReport, AInftyError> {
    let d = &c.datum;
    let (elementary, longer) = elementary_values(d, a)?;
    let domain = elementary.keys().all(|&g| d.grading_class(&[g]) == 0);
    let ext = extend(d, &elementary);
    let factorization = longer.iter().all(|(w, v)| {
        let expected = ext.get(w).cloned().unwrap_or_else(ZSeries::zero);
        d.is_composable(w) && expected == *v
    });
    let image = c.apply(&ext);
    let residual = super::render_vector(d, &image);
    let closed = residual.is_empty();
    Ok(AugmentationReport {
        passed: domain && factorization && closed,
        domain,
        factorization,
        closed,
        words: ext.len(),
        residual,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct PushforwardReport {
    pub passed: bool,
    /// `F(H)(ε̂)` is the extension of its own card-one part.
    pub factorized: bool,
    pub closed: bool,
    pub augmentation: Augmentation,
}

/// Pushes an augmentation of `c_prime` along `F(H): CF(c_prime) → CF(c)`.
pub fn pushforward(
    c: &FloerComplex,
    c_prime: &FloerComplex,
    h: &MapDatum,
    a: &Augmentation,
) -> Result<PushforwardReport, AInftyError> {
    let (elementary, _) = elementary_values(&c_prime.datum, a)?;
    let ext = extend(&c_prime.datum, &elementary);
    let f = assemble_continuation(&c_prime.datum, &c.datum, h)?;
    let pushed = f.apply(&ext);
    let card_one: BTreeMap<GenId, ZSeries> =
        pushed.iter().filter(|(w, _)| w.len() == 1).map(|(w, x)| (w[0], x.clone())).collect();
    let factorized = extend(&c.datum, &card_one) == pushed;
    let closed = c.apply(&pushed).is_empty();
    let augmentation = Augmentation {
        values: card_one
            .iter()
            .map(|(&g, x)| AugValue { word: vec![c.datum.generators[g].id.clone()], value: x.clone() })
            .collect(),
    };
    Ok(PushforwardReport { passed: factorized && closed, factorized, closed, augmentation })
}
