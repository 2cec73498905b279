//! Robbin–Salamon index of a path of Lagrangian subspaces given in a graph
//! chart, and the string index `μ(λ) = n/2 - μ(l(-1), l)`.
//!
//! A path is `t ↦ Gr(A(t))` for a piecewise-polynomial symmetric family `A`
//! on `[-1, 1]`; a constant reference is `Gr(A_ref)`. Crossings are the roots
//! of `det(A(t) - A_ref)`, located exactly with Sturm sequences.

pub mod poly;

use std::fmt;

use num::bigint::BigInt;
use num::traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use poly::{Poly, Root, Q};
use poly::{char_poly, det, inertia, isolate, q, signature, vanishes_at};

/// Sign of the crossing form of the pair `(reference, path)`: the reference
/// is the first argument, so the path enters with `-A'(t)`.
pub const MOVING_SIGN: i64 = -1;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MaslovError {
    #[error("degenerate crossing in piece {piece} near t = {at}: {reason}")]
    DegenerateCrossing { piece: usize, at: f64, reason: String },
    #[error("chart mismatch: {0}")]
    ChartMismatch(String),
    #[error("endpoints of the path are not transverse")]
    NonTransverseEndpoints,
    #[error("invalid path: {0}")]
    InvalidPath(String),
}

/// A value in `½ℤ`, stored as twice itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInteger {
    pub twice: i64,
}

impl HalfInteger {
    pub fn from_twice(twice: i64) -> Self {
        HalfInteger { twice }
    }

    pub fn as_integer(self) -> Option<i64> {
        (self.twice % 2 == 0).then_some(self.twice / 2)
    }
}

impl std::ops::Add for HalfInteger {
    type Output = HalfInteger;
    fn add(self, o: HalfInteger) -> HalfInteger {
        HalfInteger { twice: self.twice + o.twice }
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_integer() {
            Some(n) => write!(f, "{n}"),
            None => write!(f, "{}/2", self.twice),
        }
    }
}

impl Serialize for HalfInteger {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathPiece {
    pub t0: Q,
    pub t1: Q,
    pub a: Vec<Vec<Poly>>,
}

impl PathPiece {
    fn eval(&self, t: &Q) -> Vec<Vec<Q>> {
        self.a.iter().map(|row| row.iter().map(|p| p.eval(t)).collect()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LagrangianPath {
    pub n: usize,
    pub pieces: Vec<PathPiece>,
}

fn sub_const(a: &[Vec<Poly>], r: &[Vec<Q>]) -> Vec<Vec<Poly>> {
    a.iter()
        .zip(r)
        .map(|(row, rr)| row.iter().zip(rr).map(|(p, c)| p.sub(&Poly::constant(c.clone()))).collect())
        .collect()
}

fn sub_mat(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(u, v)| u - v).collect()).collect()
}

impl LagrangianPath {
    pub fn new(n: usize, pieces: Vec<PathPiece>) -> Result<Self, MaslovError> {
        let p = LagrangianPath { n, pieces };
        p.validate()?;
        Ok(p)
    }

    /// Single-piece path `t ↦ Gr(A(t))`.
    pub fn single(a: Vec<Vec<Poly>>) -> Result<Self, MaslovError> {
        let n = a.len();
        LagrangianPath::new(n, vec![PathPiece { t0: q(-1), t1: q(1), a }])
    }

    fn validate(&self) -> Result<(), MaslovError> {
        let bad = |m: &str| Err(MaslovError::InvalidPath(m.to_string()));
        if self.pieces.is_empty() {
            return bad("no pieces");
        }
        if self.pieces[0].t0 != q(-1) || self.pieces.last().unwrap().t1 != q(1) {
            return bad("pieces must cover [-1, 1]");
        }
        for (k, pc) in self.pieces.iter().enumerate() {
            if pc.t0 >= pc.t1 {
                return bad("empty piece interval");
            }
            if pc.a.len() != self.n || pc.a.iter().any(|r| r.len() != self.n) {
                return Err(MaslovError::ChartMismatch(format!("piece {k} is not {}x{}", self.n, self.n)));
            }
            for i in 0..self.n {
                for j in 0..i {
                    if pc.a[i][j] != pc.a[j][i] {
                        return bad("matrix family is not symmetric");
                    }
                }
            }
            if k > 0 {
                let prev = &self.pieces[k - 1];
                if prev.t1 != pc.t0 {
                    return bad("pieces are not contiguous");
                }
                if prev.eval(&prev.t1) != pc.eval(&pc.t0) {
                    return bad("path is discontinuous at a knot");
                }
            }
        }
        Ok(())
    }

    pub fn start(&self) -> Vec<Vec<Q>> {
        let p = &self.pieces[0];
        p.eval(&p.t0)
    }

    pub fn end(&self) -> Vec<Vec<Q>> {
        let p = self.pieces.last().unwrap();
        p.eval(&p.t1)
    }

    /// The same path run backwards, `t ↦ A(-t)`.
    pub fn reversed(&self) -> Self {
        let pieces = self
            .pieces
            .iter()
            .rev()
            .map(|pc| PathPiece {
                t0: -pc.t1.clone(),
                t1: -pc.t0.clone(),
                a: pc.a.iter().map(|r| r.iter().map(|p| compose_affine(p, &q(0), &q(-1))).collect()).collect(),
            })
            .collect();
        LagrangianPath { n: self.n, pieces }
    }

    /// Concatenation, reparametrized so `self` runs on `[-1, 0]`.
    pub fn concat(&self, other: &Self) -> Result<Self, MaslovError> {
        if self.n != other.n {
            return Err(MaslovError::ChartMismatch("dimensions differ".into()));
        }
        if self.end() != other.start() {
            return Err(MaslovError::InvalidPath("paths do not meet".into()));
        }
        let half = q(1) / q(2);
        // the piece at parameter t moves to s = t/2 + offset
        let squeeze = |path: &Self, offset: Q| -> Vec<PathPiece> {
            path.pieces
                .iter()
                .map(|pc| PathPiece {
                    t0: &pc.t0 * &half + &offset,
                    t1: &pc.t1 * &half + &offset,
                    a: pc
                        .a
                        .iter()
                        .map(|r| r.iter().map(|p| compose_affine(p, &(-(&offset) * q(2)), &q(2))).collect())
                        .collect(),
                })
                .collect()
        };
        let mut pieces = squeeze(self, -half.clone());
        pieces.extend(squeeze(other, half.clone()));
        LagrangianPath::new(self.n, pieces)
    }
}

/// `p(a + b s)`.
fn compose_affine(p: &Poly, a: &Q, b: &Q) -> Poly {
    let lin = Poly::linear(a.clone(), b.clone());
    let mut acc = Poly::zero();
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(&lin).add(&Poly::constant(c.clone()));
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Crossing {
    pub piece: usize,
    /// Exact time, or an isolating interval `lo..hi`.
    pub time: String,
    pub approx_time: f64,
    pub kernel_dim: usize,
    pub endpoint: bool,
    /// Twice the contribution to the index.
    pub contribution_twice: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossingReport {
    pub crossings: Vec<Crossing>,
    pub rs_index: HalfInteger,
}

fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn rank_exact(m: &[Vec<Q>]) -> usize {
    let (p, n) = inertia(m);
    p + n
}

/// Rank of `B(t*)` at an isolated root `t*` of the square-free `g`.
fn rank_at(b: &[Vec<Poly>], g: &Poly, root: &Root) -> usize {
    if let Root::Exact(x) = root {
        let m: Vec<Vec<Q>> = b.iter().map(|r| r.iter().map(|p| p.eval(x)).collect()).collect();
        return rank_exact(&m);
    }
    let n = b.len();
    for r in (1..=n).rev() {
        for rows in subsets(n, r) {
            for cols in subsets(n, r) {
                let minor: Vec<Vec<Poly>> = rows.iter().map(|&i| cols.iter().map(|&j| b[i][j].clone()).collect()).collect();
                if !vanishes_at(&det(&minor), g, root) {
                    return r;
                }
            }
        }
    }
    0
}

fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    go(0, n, r, &mut cur, &mut out);
    out
}

/// Multiplicity of the root of `f` isolated by `root`, from Yun factors.
fn multiplicity(factors: &[(usize, Poly)], root: &Root) -> usize {
    factors.iter().find(|(_, g)| g_vanishes(g, root)).map(|(k, _)| *k).unwrap_or(0)
}

/// Yun factors divide the square-free part, so an isolating interval of the
/// latter holds at most one root of each.
fn g_vanishes(g: &Poly, root: &Root) -> bool {
    match root {
        Root::Exact(x) => g.eval(x).is_zero(),
        Root::Between(lo, hi) => poly::Sturm::new(g).count(lo, hi) > 0,
    }
}

/// Enumerates crossings of `path` with `Gr(reference)` and sums their
/// contributions.
pub fn crossings(reference: &[Vec<Q>], path: &LagrangianPath) -> Result<CrossingReport, MaslovError> {
    if reference.len() != path.n || reference.iter().any(|r| r.len() != path.n) {
        return Err(MaslovError::ChartMismatch("reference dimension differs from the path".into()));
    }
    let mut out = Vec::new();
    for (k, pc) in path.pieces.iter().enumerate() {
        let b = sub_const(&pc.a, reference);
        let f = det(&b);
        if f.is_zero() {
            return Err(MaslovError::DegenerateCrossing {
                piece: k,
                at: Root::Exact(pc.t0.clone()).approx(),
                reason: "path meets the reference along a whole interval".into(),
            });
        }
        let bq = |t: &Q| -> Vec<Vec<Q>> { sub_mat(&pc.eval(t), reference) };
        let factors = f.square_free_factors();
        let sqf = if f.degree().unwrap_or(0) == 0 { f.clone() } else { f.square_free_part() };
        let interior = if sqf.degree().unwrap_or(0) == 0 { Vec::new() } else { isolate(&sqf, &pc.t0, &pc.t1) };
        let check = |root: &Root| -> Result<usize, MaslovError> {
            let g = factors
                .iter()
                .find(|(_, g)| g_vanishes(g, root))
                .map(|(_, g)| g.clone())
                .unwrap_or_else(|| sqf.clone());
            let kernel = path.n - rank_at(&b, &g, root);
            let mult = multiplicity(&factors, root);
            if kernel != mult {
                return Err(MaslovError::DegenerateCrossing {
                    piece: k,
                    at: root.approx(),
                    reason: format!("kernel dimension {kernel} but determinant vanishes to order {mult}"),
                });
            }
            Ok(kernel)
        };
        let first_lo = interior.first().map(|x| x.0.clone());
        let last_hi = interior.last().map(|x| x.1.clone());
        let mid = (&pc.t0 + &pc.t1) / q(2);
        if f.eval(&pc.t0).is_zero() {
            let root = Root::Exact(pc.t0.clone());
            let kernel = check(&root)?;
            let right = first_lo.clone().map_or(mid.clone(), |lo| lo.min(mid.clone()));
            let delta = signature(&bq(&right)) - signature(&bq(&pc.t0));
            out.push(Crossing {
                piece: k,
                time: fmt_q(&pc.t0),
                approx_time: root.approx(),
                kernel_dim: kernel,
                endpoint: true,
                contribution_twice: MOVING_SIGN * delta,
            });
        }
        for (lo, hi, root) in &interior {
            let kernel = check(root)?;
            let delta = signature(&bq(hi)) - signature(&bq(lo));
            let time = match root {
                Root::Exact(x) => fmt_q(x),
                Root::Between(a, b) => format!("{}..{}", fmt_q(a), fmt_q(b)),
            };
            out.push(Crossing {
                piece: k,
                time,
                approx_time: root.approx(),
                kernel_dim: kernel,
                endpoint: false,
                contribution_twice: MOVING_SIGN * delta,
            });
        }
        if f.eval(&pc.t1).is_zero() {
            let root = Root::Exact(pc.t1.clone());
            let kernel = check(&root)?;
            let left = last_hi.map_or(mid.clone(), |hi| hi.max(mid.clone()));
            let delta = signature(&bq(&pc.t1)) - signature(&bq(&left));
            out.push(Crossing {
                piece: k,
                time: fmt_q(&pc.t1),
                approx_time: root.approx(),
                kernel_dim: kernel,
                endpoint: true,
                contribution_twice: MOVING_SIGN * delta,
            });
        }
    }
    let rs = HalfInteger::from_twice(out.iter().map(|c| c.contribution_twice).sum());
    Ok(CrossingReport { crossings: out, rs_index: rs })
}

/// Relative index `μ(Gr(reference), path)`.
pub fn rs_index(reference: &[Vec<Q>], path: &LagrangianPath) -> Result<HalfInteger, MaslovError> {
    Ok(crossings(reference, path)?.rs_index)
}

/// Index computed from endpoint signatures alone; agrees with
/// [`rs_index`] whenever all crossings are regular.
pub fn rs_index_by_signatures(reference: &[Vec<Q>], path: &LagrangianPath) -> HalfInteger {
    let s1 = signature(&sub_mat(&path.end(), reference));
    let s0 = signature(&sub_mat(&path.start(), reference));
    HalfInteger::from_twice(MOVING_SIGN * (s1 - s0))
}

/// `μ(λ) = n/2 - μ(l(-1), l)`.
pub fn string_index(path: &LagrangianPath) -> Result<i64, MaslovError> {
    let start = path.start();
    let gap = sub_mat(&path.end(), &start);
    if char_poly(&gap).coeffs().first().is_none_or(Zero::is_zero) {
        return Err(MaslovError::NonTransverseEndpoints);
    }
    let rs = rs_index(&start, path)?;
    let twice = path.n as i64 - rs.twice;
    Ok(HalfInteger::from_twice(twice).as_integer().expect("transverse endpoints give an integer index"))
}

/// Graph chart of `t ↦ e^{iπt/4}ℝ` in `ℂ`: slope `t`, which agrees with
/// `tan(πt/4)` at both ends and is homotopic to it rel endpoints.
pub fn example_one() -> LagrangianPath {
    LagrangianPath::single(vec![vec![Poly::linear(q(0), q(1))]]).expect("valid fixture")
}

/// Path of graphs of `(t+1)·diag(d)`, the local model of `ε·df` at a
/// critical point whose Hessian has signs `d`.
pub fn morse_fixture(d: &[i64]) -> LagrangianPath {
    let n = d.len();
    let a = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Poly::linear(q(d[i]), q(d[i])) } else { Poly::zero() })
                .collect()
        })
        .collect();
    LagrangianPath::single(a).expect("valid fixture")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawNumber {
    Int(i64),
    Text(String),
}

impl RawNumber {
    pub fn rational(&self) -> Option<Q> {
        match self {
            RawNumber::Int(n) => Some(q(*n)),
            RawNumber::Text(s) => parse_rational(s),
        }
    }

    fn to_q(&self) -> Result<Q, MaslovError> {
        self.rational().ok_or_else(|| MaslovError::InvalidPath(format!("bad rational {self:?}")))
    }
}

fn parse_rational(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let d: BigInt = b.trim().parse().ok()?;
            let n: BigInt = a.trim().parse().ok()?;
            (!d.is_zero()).then(|| Q::new(n, d))
        }
        None => Some(Q::from_integer(s.parse().ok()?)),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RawPiece {
    pub t0: RawNumber,
    pub t1: RawNumber,
    #[serde(rename = "A")]
    pub a: Vec<Vec<Vec<RawNumber>>>,
}

/// JSON form: `{"n": int, "pieces": [{"t0", "t1", "A": [[poly]]}]}` with
/// polynomials as low-to-high coefficient lists of integers or `"p/q"`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RawPath {
    pub n: usize,
    pub pieces: Vec<RawPiece>,
}

impl RawPath {
    pub fn build(&self) -> Result<LagrangianPath, MaslovError> {
        let mut pieces = Vec::new();
        for p in &self.pieces {
            let a = p
                .a
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|c| Ok(Poly::new(c.iter().map(RawNumber::to_q).collect::<Result<_, _>>()?)))
                        .collect::<Result<Vec<_>, MaslovError>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            pieces.push(PathPiece { t0: p.t0.to_q()?, t1: p.t1.to_q()?, a });
        }
        LagrangianPath::new(self.n, pieces)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zero_ref(n: usize) -> Vec<Vec<Q>> {
        vec![vec![q(0); n]; n]
    }

    #[test]
    fn example_one_values() {
        let p = example_one();
        assert_eq!(rs_index(&p.start(), &p).unwrap(), HalfInteger::from_twice(-1));
        assert_eq!(string_index(&p).unwrap(), 1);
    }

    #[test]
    fn morse_diagonal() {
        assert_eq!(string_index(&morse_fixture(&[1, -1, -1])).unwrap(), 1);
        assert_eq!(string_index(&morse_fixture(&[1, 1])).unwrap(), 2);
    }

    #[test]
    fn constant_path_is_rejected() {
        let p = LagrangianPath::single(vec![vec![Poly::constant(q(3))]]).unwrap();
        assert!(matches!(rs_index(&p.start(), &p), Err(MaslovError::DegenerateCrossing { .. })));
        assert!(matches!(string_index(&p), Err(MaslovError::NonTransverseEndpoints)));
    }

    #[test]
    fn interior_crossing_counts_once() {
        // A(t) = t crosses 0 at t = 0 with A' = 1.
        let p = example_one();
        let r = crossings(&zero_ref(1), &p).unwrap();
        assert_eq!(r.crossings.len(), 1);
        assert_eq!(r.rs_index, HalfInteger::from_twice(-2));
    }

    #[test]
    fn tangency_is_degenerate() {
        // A(t) = t^2 touches 0 at t = 0.
        let p = LagrangianPath::single(vec![vec![Poly::new(vec![q(0), q(0), q(1)])]]).unwrap();
        assert!(matches!(crossings(&zero_ref(1), &p), Err(MaslovError::DegenerateCrossing { .. })));
    }

    #[test]
    fn irrational_crossings() {
        // diag(t^2 - 1/2, t): roots ±1/√2 and 0.
        let a = vec![
            vec![Poly::new(vec![q(-1) / q(2), q(0), q(1)]), Poly::zero()],
            vec![Poly::zero(), Poly::linear(q(0), q(1))],
        ];
        let p = LagrangianPath::single(a).unwrap();
        let r = crossings(&zero_ref(2), &p).unwrap();
        assert_eq!(r.crossings.len(), 3);
        assert_eq!(r.rs_index, rs_index_by_signatures(&zero_ref(2), &p));
    }

    #[test]
    fn concat_and_reverse() {
        let p = example_one();
        let both = p.concat(&p.reversed()).unwrap();
        let r = zero_ref(1);
        assert_eq!(rs_index(&r, &both).unwrap(), HalfInteger::from_twice(0));
        let rev = p.reversed();
        assert_eq!(string_index(&p).unwrap() + string_index(&rev).unwrap(), 1);
    }

    #[test]
    fn json_roundtrip() {
        let raw: RawPath =
            serde_json::from_str(r#"{"n":1,"pieces":[{"t0":-1,"t1":"1","A":[[[0,1]]]}]}"#).unwrap();
        assert_eq!(raw.build().unwrap(), example_one());
    }
}
