//! Random data that satisfy the A∞, chain-map and homotopy identities by
//! construction: a differential-only datum is transported along a random
//! continuation, and a second continuation is solved for from a random `K`.

use rand::Rng;

use super::complex::{assemble_differential, FloerComplex};
use super::maps::{expand_h, expand_k, MapDatum};
use super::{add_to, add_vec, decompile, AInftyDatum, AInftyError, GenId, Generator, Table, Vector, Word};
use crate::novikov::{Exponent, ZSeries};

pub fn random_coeff<R: Rng>(rng: &mut R) -> ZSeries {
    let c: i64 = if rng.gen_bool(0.5) { 1 } else { -1 } * rng.gen_range(1..=2);
    ZSeries::monomial(c.into(), Exponent::ratio(rng.gen_range(0..4), 2))
}

/// A datum whose only tensor is an `m_1` made of disjoint pairs
/// `x ↦ c·y`, so `m_1 ∘ m_1 = 0`.
pub fn random_m1_datum<R: Rng>(rng: &mut R, labels: usize, pairs: usize) -> AInftyDatum {
    let mut d = AInftyDatum::new(labels, Vec::new());
    for i in 0..labels {
        for j in i + 1..labels {
            for p in 0..pairs {
                let mu = rng.gen_range(-1..=2);
                let x = format!("x{i}{j}_{p}");
                let y = format!("y{i}{j}_{p}");
                d.generators.push(Generator { id: x.clone(), i, j, mu });
                d.generators.push(Generator { id: y.clone(), i, j, mu: mu + 1 });
                if rng.gen_bool(0.7) {
                    d.entry(&[x.as_str()], &y, random_coeff(rng));
                }
            }
        }
    }
    d
}

/// Random tensor on `d` (inputs and outputs in `d`) with shift `base − q`,
/// arities `qmin..=qmax`, each admissible entry present with probability
/// `density`.
pub fn random_table<R: Rng>(rng: &mut R, d: &AInftyDatum, base: i64, qmin: usize, qmax: usize, density: f64) -> Table {
    let mut table = Table::new();
    for w in d.words() {
        let q = w.len();
        if q < qmin || q > qmax {
            continue;
        }
        let (i, j) = (d.generators[w[0]].i, d.generators[*w.last().unwrap()].j);
        let mu = d.mu(&w) + base - q as i64;
        let mut outs = Vec::new();
        for (o, g) in d.generators.iter().enumerate() {
            if g.i == i && g.j == j && g.mu == mu && rng.gen_bool(density) {
                outs.push((o, random_coeff(rng)));
            }
        }
        if !outs.is_empty() {
            table.insert(w, outs);
        }
    }
    table
}

/// `H_1 = id` plus random higher tensors of arity `2..=qmax`.
pub fn random_continuation<R: Rng>(rng: &mut R, d: &AInftyDatum, qmax: usize, density: f64) -> MapDatum {
    let mut table = random_table(rng, d, 1, 2, qmax, density);
    for g in 0..d.generators.len() {
        table.insert(vec![g], vec![(g, ZSeries::one())]);
    }
    MapDatum::from_tables(&table, &Table::new(), d, d)
}

fn apply(f: impl Fn(&Word) -> Vector, v: &Vector) -> Vector {
    let mut out = Vector::new();
    for (w, c) in v {
        for (u, x) in f(w) {
            add_to(&mut out, u, c * &x);
        }
    }
    out
}

/// The datum `D` with `δ_D = F(H) ∘ δ_{D′} ∘ F(H)^{-1}`; `H_1` must be the
/// identity so that `F(H)` is unipotent for the cardinality filtration.
pub fn conjugate(source: &AInftyDatum, h: &MapDatum) -> Result<AInftyDatum, AInftyError> {
    let table = h.h_table(source, source)?;
    let c = assemble_differential(source)?;
    let f = |w: &Word| expand_h(source, &table, w);
    let finv = |w: &Word| -> Vector {
        let mut unit = Vector::new();
        unit.insert(w.clone(), ZSeries::one());
        let mut x = unit.clone();
        for _ in 0..w.len() {
            // x ← w − (F − id)(x)
            let mut next = unit.clone();
            let fx = apply(f, &x);
            add_vec(&mut next, &fx, 1);
            add_vec(&mut next, &x, 0);
            x = next;
        }
        x
    };
    let mut m = Table::new();
    for w in source.words() {
        let img = apply(f, &c.apply(&finv(&w)));
        let outs: Vec<(GenId, ZSeries)> =
            img.into_iter().filter(|(u, _)| u.len() == 1).map(|(u, x)| (u[0], x.neg_series())).collect();
        if !outs.is_empty() {
            m.insert(w, outs);
        }
    }
    let mut d = source.clone();
    d.tensors = decompile(&m, source, source);
    Ok(d)
}

/// Transported datum together with the continuation `CF(source) → CF(target)`.
pub fn continuation_fixture<R: Rng>(
    rng: &mut R,
    source: &AInftyDatum,
    qmax: usize,
    density: f64,
) -> Result<(AInftyDatum, MapDatum), AInftyError> {
    let h = random_continuation(rng, source, qmax, density);
    let target = conjugate(source, &h)?;
    Ok((target, h))
}

/// Random `K` and the `H¹` that makes `F(H⁰) − F(H¹) = δ K̂ + K̂ δ′` hold,
/// solved arity by arity on the card-one components.
pub fn homotopy_fixture<R: Rng>(
    rng: &mut R,
    source: &AInftyDatum,
    target: &AInftyDatum,
    h0: &MapDatum,
    density: f64,
) -> Result<(MapDatum, MapDatum), AInftyError> {
    let qmax = source.words().iter().map(Vec::len).max().unwrap_or(0);
    let k = random_table(rng, source, 0, 1, qmax, density);
    let t0 = h0.h_table(source, target)?;
    let c = assemble_differential(target)?;
    let c_prime = assemble_differential(source)?;
    let mut t1 = Table::new();
    for w in source.words() {
        let kh = |u: &Word| expand_k(source, &t0, &k, &t1, u);
        let mut tot = FloerComplex::apply(&c, &kh(&w));
        add_vec(&mut tot, &apply(kh, &c_prime.apply_word(&w)), 0);
        let mut h = Vector::new();
        for (o, x) in t0.get(&w).cloned().unwrap_or_default() {
            add_to(&mut h, vec![o], x);
        }
        for (u, x) in tot {
            if u.len() == 1 {
                add_to(&mut h, u, x.neg_series());
            }
        }
        let outs: Vec<(GenId, ZSeries)> = h.into_iter().map(|(u, x)| (u[0], x)).collect();
        if !outs.is_empty() {
            t1.insert(w, outs);
        }
    }
    Ok((
        MapDatum::from_tables(&t1, &Table::new(), source, target),
        MapDatum::from_tables(&Table::new(), &k, source, target),
    ))
}
