//! Floer cohomology of a bounded complex by elimination over Novikov series.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, Signed};
use serde::{Deserialize, Serialize};

use super::complex::FloerComplex;
use super::{AInftyError, Word};
use crate::novikov::{Coefficient, Exponent, NovikovSeries, Valuation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoefficientMode {
    Integer,
    Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeRow {
    pub degree: i64,
    pub class: i64,
    pub generators: usize,
    /// Rank of `δ` out of this degree.
    pub rank_out: usize,
    pub hf_rank: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CohomologyReport {
    pub mode: CoefficientMode,
    pub precision: String,
    pub total_rank: usize,
    pub degrees: Vec<DegreeRow>,
}

impl CohomologyReport {
    pub fn nonzero_degrees(&self) -> Vec<i64> {
        self.degrees.iter().filter(|r| r.hf_rank > 0).map(|r| r.degree).collect()
    }
}

/// Precision `(n + 1)(e_max − e_min) + |e_max| + 1` for `n` generators.
fn precision(c: &FloerComplex) -> Exponent {
    let mut lo: Option<BigRational> = None;
    let mut hi: Option<BigRational> = None;
    for img in c.delta.values() {
        for x in img.values() {
            for (e, _) in x.terms() {
                lo = Some(lo.map_or(e.0.clone(), |v| v.min(e.0.clone())));
                hi = Some(hi.map_or(e.0.clone(), |v| v.max(e.0.clone())));
            }
        }
    }
    let zero = BigRational::from_integer(BigInt::from(0));
    let (lo, hi) = (lo.unwrap_or(zero.clone()), hi.unwrap_or(zero));
    let n = BigRational::from_integer(BigInt::from(c.basis.len() as i64 + 1));
    Exponent(n * (&hi - &lo) + hi.abs() + BigRational::from_integer(BigInt::from(1)))
}

fn inverse<C: Coefficient>(
    p: &NovikovSeries<C>,
    precision: &Exponent,
    degree: i64,
) -> Result<NovikovSeries<C>, AInftyError> {
    let lead = p.leading_coefficient().expect("pivot is nonzero");
    let Some(inv) = lead.unit_inverse() else {
        return Err(AInftyError::NonUnitPivot { degree, coefficient: p.to_string() });
    };
    if p.terms().len() == 1 && p.cutoff().is_none() {
        let e = &p.terms()[0].0;
        return Ok(NovikovSeries::monomial(inv, -e));
    }
    Ok(p.invert(precision)?)
}

/// Rank by elimination; the pivot is the entry of least valuation, ties
/// broken by column then row, i.e. by generator order.
fn rank<C: Coefficient>(
    mut m: Vec<Vec<NovikovSeries<C>>>,
    precision: &Exponent,
    degree: i64,
) -> Result<usize, AInftyError> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut row_used = vec![false; rows];
    let mut col_used = vec![false; cols];
    let mut r = 0;
    loop {
        let mut best: Option<(Valuation, usize, usize)> = None;
        for j in (0..cols).filter(|&j| !col_used[j]) {
            for i in (0..rows).filter(|&i| !row_used[i]) {
                if m[i][j].is_zero() {
                    continue;
                }
                let v = m[i][j].valuation();
                if best.as_ref().is_none_or(|b| v < b.0) {
                    best = Some((v, i, j));
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        let pinv = inverse(&m[pi][pj], precision, degree)?;
        let pivot_row = m[pi].clone();
        for i in 0..rows {
            if i == pi || row_used[i] || m[i][pj].is_zero() {
                continue;
            }
            let factor = &m[i][pj] * &pinv;
            for j in 0..cols {
                if !pivot_row[j].is_zero() {
                    m[i][j] = &m[i][j] - &(&factor * &pivot_row[j]);
                }
            }
            m[i][pj] = NovikovSeries::zero();
        }
        row_used[pi] = true;
        col_used[pj] = true;
        r += 1;
    }
    Ok(r)
}

pub fn cohomology(c: &FloerComplex, mode: CoefficientMode) -> Result<CohomologyReport, AInftyError> {
    let d = &c.datum;
    let mut by_degree: BTreeMap<i64, Vec<&Word>> = BTreeMap::new();
    for w in &c.basis {
        by_degree.entry(d.degree(w)).or_default().push(w);
    }
    let prec = precision(c);
    let mut rank_out: BTreeMap<i64, usize> = BTreeMap::new();
    for (&deg, cols) in &by_degree {
        let Some(rows) = by_degree.get(&(deg + 1)) else { continue };
        let entry = |w: &Word, u: &Word| c.delta.get(w).and_then(|img| img.get(u)).cloned();
        let r = match mode {
            CoefficientMode::Integer => {
                let m = rows
                    .iter()
                    .map(|u| cols.iter().map(|w| entry(w, u).unwrap_or_default()).collect())
                    .collect();
                rank(m, &prec, deg)?
            }
            CoefficientMode::Rational => {
                let m = rows
                    .iter()
                    .map(|u| cols.iter().map(|w| entry(w, u).map(|x| x.to_rational()).unwrap_or_default()).collect())
                    .collect();
                rank::<BigRational>(m, &prec, deg)?
            }
        };
        rank_out.insert(deg, r);
    }
    let degrees: Vec<DegreeRow> = by_degree
        .iter()
        .map(|(&deg, ws)| {
            let out = rank_out.get(&deg).copied().unwrap_or(0);
            let inc = rank_out.get(&(deg - 1)).copied().unwrap_or(0);
            DegreeRow {
                degree: deg,
                class: d.grading_class(ws[0]),
                generators: ws.len(),
                rank_out: out,
                hf_rank: ws.len() - out - inc,
            }
        })
        .collect();
    Ok(CohomologyReport {
        mode,
        precision: prec.to_string(),
        total_rank: degrees.iter().map(|r| r.hf_rank).sum(),
        degrees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ainfty::{assemble_differential, AInftyDatum};
    use crate::novikov::ZSeries;

    fn pair(coeff: ZSeries) -> AInftyDatum {
        let mut d = AInftyDatum::new(2, vec![]);
        d.generator("x", 0, 1, 0).generator("y", 0, 1, 1);
        d.entry(&["x"], "y", coeff);
        d
    }

    #[test]
    fn acyclic_pair() {
        let c = assemble_differential(&pair(ZSeries::signed_power(1, Exponent::ratio(3, 2)))).unwrap();
        assert_eq!(cohomology(&c, CoefficientMode::Integer).unwrap().total_rank, 0);
    }

    #[test]
    fn non_unit_pivot_over_integers() {
        let c = assemble_differential(&pair(ZSeries::constant(2))).unwrap();
        assert!(matches!(cohomology(&c, CoefficientMode::Integer), Err(AInftyError::NonUnitPivot { .. })));
        assert_eq!(cohomology(&c, CoefficientMode::Rational).unwrap().total_rank, 0);
    }

    #[test]
    fn zero_differential_keeps_degrees() {
        let mut d = AInftyDatum::new(2, vec![]);
        d.generator("x", 0, 1, 0).generator("y", 0, 1, 3).generator("z", 0, 1, 3);
        let r = cohomology(&assemble_differential(&d).unwrap(), CoefficientMode::Integer).unwrap();
        assert_eq!(r.total_rank, 3);
        assert_eq!(r.nonzero_degrees(), vec![0, 3]);
    }
}
