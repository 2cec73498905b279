//! Continuation maps `F(H)`, homotopies and composition.
//!
//! A [`MapDatum`] with source datum `D′` and target `D` describes
//! `F(H): CF(D′) → CF(D)`. Inputs of `H_q` and `K_q` are source generators,
//! outputs are target generators. Words of `D′` on which some block has no
//! `H` entry are sent to zero, which covers the extension by zero outside an
//! image subcomplex.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::complex::{residuals, FloerComplex, ResidualEntry};
use super::{add_to, add_vec, compile, decompile, signed, AInftyDatum, AInftyError, GenId, Table, TensorEntry, Vector, Word};
use crate::novikov::ZSeries;
use crate::polytopes::compositions;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct MapDatum {
    #[serde(rename = "H", default)]
    pub h: Vec<TensorEntry>,
    #[serde(rename = "K", default, skip_serializing_if = "Vec::is_empty")]
    pub k: Vec<TensorEntry>,
}

impl MapDatum {
    /// `H_1` the identity on generators with equal ids, nothing else.
    pub fn identity(d: &AInftyDatum) -> Self {
        let h = d
            .generators
            .iter()
            .map(|g| TensorEntry { q: 1, inputs: vec![g.id.clone()], output: g.id.clone(), coeff: ZSeries::one() })
            .collect();
        MapDatum { h, k: Vec::new() }
    }

    pub fn from_tables(h: &Table, k: &Table, source: &AInftyDatum, target: &AInftyDatum) -> Self {
        MapDatum { h: decompile(h, source, target), k: decompile(k, source, target) }
    }

    pub fn h_table(&self, source: &AInftyDatum, target: &AInftyDatum) -> Result<Table, AInftyError> {
        compile(&self.h, "H", 1, source, target)
    }

    pub fn k_table(&self, source: &AInftyDatum, target: &AInftyDatum) -> Result<Table, AInftyError> {
        compile(&self.k, "K", 0, source, target)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Slot {
    Left,
    Homotopy,
    Right,
}

/// Applies `T_{l_1} ⊗ … ⊗ T_{l_k}` block by block; `None` if a block has no
/// entry. `degs[j]` is the parity of the `j`-th tensor for the Koszul rule.
fn blocks(
    src: &AInftyDatum,
    w: &[GenId],
    ls: &[usize],
    tables: &[&Table],
    degs: &[i64],
) -> Option<(Vec<(Word, ZSeries)>, i64)> {
    let mut partial: Vec<(Word, ZSeries)> = vec![(Vec::new(), ZSeries::one())];
    let mut pos = 0;
    let mut before = 0i64;
    let mut koszul = 0i64;
    for (j, &l) in ls.iter().enumerate() {
        let block = &w[pos..pos + l];
        let outs = tables[j].get(block)?;
        koszul += degs[j] * before;
        let mut next = Vec::with_capacity(partial.len() * outs.len());
        for (word, c) in &partial {
            for (o, x) in outs {
                let mut v = word.clone();
                v.push(*o);
                next.push((v, c * x));
            }
        }
        partial = next;
        before += src.mu(block);
        pos += l;
    }
    Some((partial, koszul))
}

/// Gluing sign `Σ_j (k − j)(l_j − 1)` of a composition with `k` parts.
pub fn gluing_exponent(ls: &[usize]) -> i64 {
    let k = ls.len();
    ls.iter().enumerate().map(|(j, &l)| ((k - 1 - j) * (l - 1)) as i64).sum()
}

pub(crate) fn expand_h(src: &AInftyDatum, h: &Table, w: &[GenId]) -> Vector {
    let q = w.len();
    let mut out = Vector::new();
    for k in 1..=q {
        for ls in compositions(q, k) {
            let tables = vec![h; k];
            let degs: Vec<i64> = ls.iter().map(|&l| 1 - l as i64).collect();
            if let Some((terms, koszul)) = blocks(src, w, &ls, &tables, &degs) {
                let e = gluing_exponent(&ls) + koszul;
                for (v, c) in terms {
                    add_to(&mut out, v, signed(&c, e));
                }
            }
        }
    }
    out
}

/// `K̂ = Σ ± H⁰ ⊗ … ⊗ H⁰ ⊗ K ⊗ H¹ ⊗ … ⊗ H¹`.
pub(crate) fn expand_k(src: &AInftyDatum, h0: &Table, k: &Table, h1: &Table, w: &[GenId]) -> Vector {
    let q = w.len();
    let mut out = Vector::new();
    for parts in 1..=q {
        for ls in compositions(q, parts) {
            for i in 0..parts {
                let slots: Vec<Slot> = (0..parts)
                    .map(|j| match j.cmp(&i) {
                        std::cmp::Ordering::Less => Slot::Left,
                        std::cmp::Ordering::Equal => Slot::Homotopy,
                        std::cmp::Ordering::Greater => Slot::Right,
                    })
                    .collect();
                let tables: Vec<&Table> = slots
                    .iter()
                    .map(|s| match s {
                        Slot::Left => h0,
                        Slot::Homotopy => k,
                        Slot::Right => h1,
                    })
                    .collect();
                let degs: Vec<i64> = slots
                    .iter()
                    .zip(&ls)
                    .map(|(s, &l)| if *s == Slot::Homotopy { -(l as i64) } else { 1 - l as i64 })
                    .collect();
                if let Some((terms, koszul)) = blocks(src, w, &ls, &tables, &degs) {
                    let shift: i64 = ls[..i].iter().map(|&l| l as i64 - 1).sum();
                    let e = parts as i64 + gluing_exponent(&ls) + shift + koszul;
                    for (v, c) in terms {
                        add_to(&mut out, v, signed(&c, e));
                    }
                }
            }
        }
    }
    out
}

/// A linear map given on the word basis.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ChainMap {
    pub images: BTreeMap<Word, Vector>,
}

impl ChainMap {
    pub fn apply_word(&self, w: &Word) -> Vector {
        self.images.get(w).cloned().unwrap_or_default()
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for (w, c) in v {
            if let Some(img) = self.images.get(w) {
                for (u, x) in img {
                    add_to(&mut out, u.clone(), c * x);
                }
            }
        }
        out
    }

    pub fn is_identity_on(&self, basis: &[Word]) -> bool {
        basis.iter().all(|w| {
            let img = self.apply_word(w);
            img.len() == 1 && img.get(w).is_some_and(|c| *c == ZSeries::one())
        })
    }
}

fn tabulate(basis: &[Word], f: impl Fn(&Word) -> Vector) -> ChainMap {
    ChainMap { images: basis.iter().map(|w| (w.clone(), f(w))).filter(|(_, v)| !v.is_empty()).collect() }
}

/// `F(H): CF(source) → CF(target)` on every source word.
pub fn assemble_continuation(
    source: &AInftyDatum,
    target: &AInftyDatum,
    h: &MapDatum,
) -> Result<ChainMap, AInftyError> {
    let table = h.h_table(source, target)?;
    Ok(tabulate(&source.words(), |w| expand_h(source, &table, w)))
}

/// `K̂: CF(source) → CF(target)`, with `H⁰` left of `K` and `H¹` right of it.
pub fn assemble_homotopy(
    source: &AInftyDatum,
    target: &AInftyDatum,
    h0: &MapDatum,
    h1: &MapDatum,
    k: &MapDatum,
) -> Result<ChainMap, AInftyError> {
    let t0 = h0.h_table(source, target)?;
    let t1 = h1.h_table(source, target)?;
    let tk = k.k_table(source, target)?;
    Ok(tabulate(&source.words(), |w| expand_k(source, &t0, &tk, &t1, w)))
}

#[derive(Debug, Clone, Serialize)]
pub struct MapReport {
    pub passed: bool,
    pub words_checked: usize,
    pub nonzero: Vec<ResidualEntry>,
}

fn report(source: &AInftyDatum, basis: &[Word], f: impl Fn(&Word) -> Vector) -> MapReport {
    let mut nonzero = Vec::new();
    for w in basis {
        nonzero.extend(residuals(source, w, &f(w)));
    }
    MapReport { passed: nonzero.is_empty(), words_checked: basis.len(), nonzero }
}

/// `δ ∘ F(H) − F(H) ∘ δ′` on every word of `c_prime`; `c` is the target.
pub fn check_chain_map(c: &FloerComplex, c_prime: &FloerComplex, h: &MapDatum) -> Result<MapReport, AInftyError> {
    let f = assemble_continuation(&c_prime.datum, &c.datum, h)?;
    Ok(report(&c_prime.datum, &c_prime.basis, |w| {
        let mut v = c.apply(&f.apply_word(w));
        add_vec(&mut v, &f.apply(&c_prime.apply_word(w)), 1);
        v
    }))
}

/// `F(H⁰) − F(H¹) − δ ∘ K̂ − K̂ ∘ δ′` on every word of `c_prime`.
pub fn check_homotopy(
    c: &FloerComplex,
    c_prime: &FloerComplex,
    h0: &MapDatum,
    h1: &MapDatum,
    k: &MapDatum,
) -> Result<MapReport, AInftyError> {
    let f0 = assemble_continuation(&c_prime.datum, &c.datum, h0)?;
    let f1 = assemble_continuation(&c_prime.datum, &c.datum, h1)?;
    let kh = assemble_homotopy(&c_prime.datum, &c.datum, h0, h1, k)?;
    Ok(report(&c_prime.datum, &c_prime.basis, |w| {
        let mut v = f0.apply_word(w);
        add_vec(&mut v, &f1.apply_word(w), 1);
        add_vec(&mut v, &c.apply(&kh.apply_word(w)), 1);
        add_vec(&mut v, &kh.apply(&c_prime.apply_word(w)), 1);
        v
    }))
}

/// Tensors of `H¹ ∘ H⁰` for `H⁰: CF(d1) → CF(d0)` and `H¹: CF(d2) → CF(d1)`:
/// `Σ ± H⁰_k ∘ (H¹_{l_1} ⊗ … ⊗ H¹_{l_k})` with the gluing sign and Koszul
/// signs of the `H¹` blocks.
pub fn compose_data(
    d0: &AInftyDatum,
    d1: &AInftyDatum,
    d2: &AInftyDatum,
    h0: &MapDatum,
    h1: &MapDatum,
) -> Result<MapDatum, AInftyError> {
    let t0 = h0.h_table(d1, d0)?;
    let t1 = h1.h_table(d2, d1)?;
    let mut table: Table = Table::new();
    for w in d2.words() {
        let mut acc = Vector::new();
        let q = w.len();
        for k in 1..=q {
            for ls in compositions(q, k) {
                let tables = vec![&t1; k];
                let degs: Vec<i64> = ls.iter().map(|&l| 1 - l as i64).collect();
                let Some((terms, koszul)) = blocks(d2, &w, &ls, &tables, &degs) else { continue };
                let e = gluing_exponent(&ls) + koszul;
                for (mid, c) in terms {
                    if let Some(outs) = t0.get(&mid) {
                        for (o, x) in outs {
                            add_to(&mut acc, vec![*o], signed(&(&c * x), e));
                        }
                    }
                }
            }
        }
        let outs: Vec<(GenId, ZSeries)> = acc.into_iter().map(|(v, c)| (v[0], c)).collect();
        if !outs.is_empty() {
            table.insert(w, outs);
        }
    }
    Ok(MapDatum::from_tables(&table, &Table::new(), d2, d0))
}

#[derive(Debug, Clone, Serialize)]
pub struct CompositionReport {
    pub passed: bool,
    pub words_checked: usize,
    pub composite_entries: usize,
    pub nonzero: Vec<ResidualEntry>,
}

/// `F(H¹ ∘ H⁰) = F(H⁰) ∘ F(H¹)` on every word of `d2`.
pub fn check_composition(
    d0: &AInftyDatum,
    d1: &AInftyDatum,
    d2: &AInftyDatum,
    h0: &MapDatum,
    h1: &MapDatum,
) -> Result<CompositionReport, AInftyError> {
    let composite = compose_data(d0, d1, d2, h0, h1)?;
    let fc = assemble_continuation(d2, d0, &composite)?;
    let f0 = assemble_continuation(d1, d0, h0)?;
    let f1 = assemble_continuation(d2, d1, h1)?;
    let basis = d2.words();
    let r = report(d2, &basis, |w| {
        let mut v = fc.apply_word(w);
        add_vec(&mut v, &f0.apply(&f1.apply_word(w)), 1);
        v
    });
    Ok(CompositionReport {
        passed: r.passed,
        words_checked: r.words_checked,
        composite_entries: composite.h.len(),
        nonzero: r.nonzero,
    })
}
