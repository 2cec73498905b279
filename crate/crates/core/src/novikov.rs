//! Exact arithmetic in the Novikov ring of formal series `Σ n_a t^a`.
//!
//! Exponents are exact rationals. A series is a finite list of terms with
//! strictly increasing exponents, optionally carrying a cutoff `C`: terms at
//! exponents `>= C` are unknown and never stored.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NovikovError {
    #[error("leading coefficient {0} is not a unit")]
    NotAUnit(String),
    #[error("cannot invert the zero series")]
    Zero,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// Exact exponent `a` of a monomial `t^a`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponent(pub BigRational);

impl Exponent {
    pub fn zero() -> Self {
        Exponent(BigRational::zero())
    }

    pub fn int(n: i64) -> Self {
        Exponent(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Exponent(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl Add for &Exponent {
    type Output = Exponent;
    fn add(self, rhs: &Exponent) -> Exponent {
        Exponent(&self.0 + &rhs.0)
    }
}

impl Sub for &Exponent {
    type Output = Exponent;
    fn sub(self, rhs: &Exponent) -> Exponent {
        Exponent(&self.0 - &rhs.0)
    }
}

impl Neg for &Exponent {
    type Output = Exponent;
    fn neg(self) -> Exponent {
        Exponent(-&self.0)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rational(f, &self.0)
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, r: &BigRational) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Valuation of a series: least exponent, or `+∞` for zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Valuation {
    Finite(Exponent),
    Infinite,
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
            (Valuation::Infinite, _) => Ordering::Greater,
            (_, Valuation::Infinite) => Ordering::Less,
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
        }
    }
}

/// Coefficient ring of a series: `ℤ` or `ℚ`.
pub trait Coefficient:
    Clone + fmt::Debug + fmt::Display + Eq + Zero + One + Signed + Send + Sync + 'static
{
    /// Multiplicative inverse when `self` is a unit.
    fn unit_inverse(&self) -> Option<Self>;
    /// Builds `num/den`, if representable.
    fn from_fraction(num: BigInt, den: BigInt) -> Option<Self>;
    fn to_rational(&self) -> BigRational;
    fn from_i64(n: i64) -> Self;
}

impl Coefficient for BigInt {
    fn unit_inverse(&self) -> Option<Self> {
        if self.abs().is_one() {
            Some(self.clone())
        } else {
            None
        }
    }

    fn from_fraction(num: BigInt, den: BigInt) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        let r = BigRational::new(num, den);
        r.is_integer().then(|| r.to_integer())
    }

    fn to_rational(&self) -> BigRational {
        BigRational::from_integer(self.clone())
    }

    fn from_i64(n: i64) -> Self {
        BigInt::from(n)
    }
}

impl Coefficient for BigRational {
    fn unit_inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }

    fn from_fraction(num: BigInt, den: BigInt) -> Option<Self> {
        (!den.is_zero()).then(|| BigRational::new(num, den))
    }

    fn to_rational(&self) -> BigRational {
        self.clone()
    }

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

/// A Novikov series over the coefficient ring `C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NovikovSeries<C: Coefficient = BigInt> {
    terms: Vec<(Exponent, C)>,
    cutoff: Option<Exponent>,
}

pub type ZSeries = NovikovSeries<BigInt>;
pub type QSeries = NovikovSeries<BigRational>;

fn min_cutoff(a: &Option<Exponent>, b: &Option<Exponent>) -> Option<Exponent> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y).clone()),
        (Some(x), None) | (None, Some(x)) => Some(x.clone()),
        (None, None) => None,
    }
}

impl<C: Coefficient> NovikovSeries<C> {
    pub fn zero() -> Self {
        NovikovSeries { terms: Vec::new(), cutoff: None }
    }

    pub fn one() -> Self {
        Self::monomial(C::one(), Exponent::zero())
    }

    pub fn monomial(c: C, e: Exponent) -> Self {
        Self::from_terms(vec![(e, c)], None)
    }

    /// `±t^e`.
    pub fn signed_power(sign: i64, e: Exponent) -> Self {
        Self::monomial(C::from_i64(sign), e)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(C::from_i64(c), Exponent::zero())
    }

    /// Normalizes arbitrary terms: sorts, merges equal exponents, drops zeros
    /// and everything at or above the cutoff.
    pub fn from_terms(mut terms: Vec<(Exponent, C)>, cutoff: Option<Exponent>) -> Self {
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Exponent, C)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            if let Some(cut) = &cutoff {
                if e >= *cut {
                    continue;
                }
            }
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 = last.1.clone() + c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        NovikovSeries { terms: out, cutoff }
    }

    pub fn terms(&self) -> &[(Exponent, C)] {
        &self.terms
    }

    pub fn cutoff(&self) -> Option<&Exponent> {
        self.cutoff.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn valuation(&self) -> Valuation {
        match self.terms.first() {
            Some((e, _)) => Valuation::Finite(e.clone()),
            None => Valuation::Infinite,
        }
    }

    pub fn leading_coefficient(&self) -> Option<&C> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Largest stored exponent.
    pub fn top_exponent(&self) -> Option<&Exponent> {
        self.terms.last().map(|(e, _)| e)
    }

    pub fn with_cutoff(&self, cutoff: Exponent) -> Self {
        let cut = min_cutoff(&self.cutoff, &Some(cutoff));
        Self::from_terms(self.terms.clone(), cut)
    }

    pub fn without_cutoff(mut self) -> Self {
        self.cutoff = None;
        self
    }

    pub fn scale(&self, c: &C) -> Self {
        let terms = self.terms.iter().map(|(e, x)| (e.clone(), x.clone() * c.clone())).collect();
        Self::from_terms(terms, self.cutoff.clone())
    }

    /// Multiplies by `t^e`; the cutoff moves with the series.
    pub fn shift(&self, e: &Exponent) -> Self {
        NovikovSeries {
            terms: self.terms.iter().map(|(a, c)| (a + e, c.clone())).collect(),
            cutoff: self.cutoff.as_ref().map(|c| c + e),
        }
    }

    pub fn add_series(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self::from_terms(terms, min_cutoff(&self.cutoff, &other.cutoff))
    }

    pub fn neg_series(&self) -> Self {
        NovikovSeries {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
            cutoff: self.cutoff.clone(),
        }
    }

    /// Cauchy product. With `a = A + O(t^{c_a})` the product is known below
    /// `min(c_a + v_b, c_b + v_a)`, where `v` is the least exponent of the
    /// known part or the cutoff, whichever is smaller.
    pub fn mul_series(&self, other: &Self) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                terms.push((ea + eb, ca.clone() * cb.clone()));
            }
        }
        let floor = |x: &Self| min_cutoff(&x.terms.first().map(|(e, _)| e.clone()), &x.cutoff);
        let mut cutoff = None;
        if let (Some(cut), Some(v)) = (&self.cutoff, floor(other)) {
            cutoff = min_cutoff(&cutoff, &Some(cut + &v));
        }
        if let (Some(cut), Some(v)) = (&other.cutoff, floor(self)) {
            cutoff = min_cutoff(&cutoff, &Some(cut + &v));
        }
        Self::from_terms(terms, cutoff)
    }

    /// Inverse modulo `t^cutoff`: the result `b` satisfies `a·b ≡ 1` below
    /// `cutoff - val(a)`.
    pub fn invert(&self, cutoff: &Exponent) -> Result<Self, NovikovError> {
        let (v, lead) = match self.terms.first() {
            Some((v, c)) => (v.clone(), c.clone()),
            None => return Err(NovikovError::Zero),
        };
        let lead_inv = lead
            .unit_inverse()
            .ok_or_else(|| NovikovError::NotAUnit(lead.to_string()))?;
        // a = lead·t^v·(1 - r) with val(r) > 0, so a^{-1} = lead^{-1} t^{-v} Σ r^k.
        let unit = self.shift(&-&v).scale(&lead_inv);
        let r = Self::one().add_series(&unit.neg_series()).without_cutoff();
        let bound = cutoff - &v;
        let mut acc = Self::one().with_cutoff(bound.clone());
        let mut power = Self::one().with_cutoff(bound.clone());
        if !r.is_zero() {
            let step = match r.valuation() {
                Valuation::Finite(e) => e,
                Valuation::Infinite => unreachable!(),
            };
            let mut reach = Exponent::zero();
            while reach < bound {
                power = power.mul_series(&r).with_cutoff(bound.clone());
                if power.is_zero() {
                    break;
                }
                acc = acc.add_series(&power);
                reach = &reach + &step;
            }
        }
        Ok(acc.scale(&lead_inv).shift(&-&v))
    }

    /// Maps coefficients into `ℚ`.
    pub fn to_rational(&self) -> QSeries {
        NovikovSeries::from_terms(
            self.terms.iter().map(|(e, c)| (e.clone(), c.to_rational())).collect(),
            self.cutoff.clone(),
        )
    }

    /// Equality of the known parts below a common precision.
    pub fn agrees_below(&self, other: &Self, bound: &Exponent) -> bool {
        self.with_cutoff(bound.clone()).terms == other.with_cutoff(bound.clone()).terms
    }
}

impl<C: Coefficient> Default for NovikovSeries<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coefficient> Add for &NovikovSeries<C> {
    type Output = NovikovSeries<C>;
    fn add(self, rhs: Self) -> NovikovSeries<C> {
        self.add_series(rhs)
    }
}

impl<C: Coefficient> Sub for &NovikovSeries<C> {
    type Output = NovikovSeries<C>;
    fn sub(self, rhs: Self) -> NovikovSeries<C> {
        self.add_series(&rhs.neg_series())
    }
}

impl<C: Coefficient> Mul for &NovikovSeries<C> {
    type Output = NovikovSeries<C>;
    fn mul(self, rhs: Self) -> NovikovSeries<C> {
        self.mul_series(rhs)
    }
}

impl<C: Coefficient> Neg for &NovikovSeries<C> {
    type Output = NovikovSeries<C>;
    fn neg(self) -> NovikovSeries<C> {
        self.neg_series()
    }
}

impl<C: Coefficient> fmt::Display for NovikovSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() && self.cutoff.is_none() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            if !abs.is_one() {
                write!(f, "{}", abs)?;
            }
            write!(f, "t^{}", e)?;
        }
        if let Some(cut) = &self.cutoff {
            if !self.terms.is_empty() {
                write!(f, " + ")?;
            }
            write!(f, "O(t^{})", cut)?;
        }
        Ok(())
    }
}

impl<C: Coefficient> FromStr for NovikovSeries<C> {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_series(s)
    }
}

impl<C: Coefficient> Serialize for NovikovSeries<C> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de, C: Coefficient> Deserialize<'de> for NovikovSeries<C> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_series(&s).map_err(serde::de::Error::custom)
    }
}

struct Lexer<'a> {
    chars: Vec<(usize, usize, char)>,
    pos: usize,
    _src: &'a str,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        let mut chars = Vec::new();
        for (ln, line) in src.split('\n').enumerate() {
            for (col, ch) in line.chars().enumerate() {
                if !ch.is_whitespace() {
                    chars.push((ln + 1, col + 1, ch));
                }
            }
        }
        Lexer { chars, pos: 0, _src: src }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|c| c.2)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        let (line, column) = match self.chars.get(self.pos) {
            Some(&(l, c, _)) => (l, c),
            None => self.chars.last().map(|&(l, c, _)| (l, c + 1)).unwrap_or((1, 1)),
        };
        ParseError { line, column, message: message.into() }
    }

    fn eat(&mut self, ch: char) -> bool {
        if self.peek() == Some(ch) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn natural(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let digits: String = self.chars[start..self.pos].iter().map(|c| c.2).collect();
        digits.parse().ok()
    }

    /// `n` or `n/d`.
    fn fraction(&mut self) -> Result<Option<(BigInt, BigInt)>, ParseError> {
        let Some(n) = self.natural() else { return Ok(None) };
        if self.eat('/') {
            let d = self.natural().ok_or_else(|| self.error("expected denominator"))?;
            if d.is_zero() {
                return Err(self.error("zero denominator"));
            }
            Ok(Some((n, d)))
        } else {
            Ok(Some((n, BigInt::one())))
        }
    }

    fn exponent(&mut self) -> Result<Exponent, ParseError> {
        if !self.eat('^') {
            return Ok(Exponent::int(1));
        }
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let (n, d) = self.fraction()?.ok_or_else(|| self.error("expected exponent"))?;
        let r = BigRational::new(n, d);
        Ok(Exponent(if neg { -r } else { r }))
    }
}

/// Parses the literal format `3t^1/2 - 2t^0 + t^7/3`, optionally followed by
/// `+ O(t^c)` for the cutoff.
pub fn parse_series<C: Coefficient>(src: &str) -> Result<NovikovSeries<C>, ParseError> {
    let mut lx = Lexer::new(src);
    if lx.peek().is_none() {
        return Err(lx.error("empty series literal"));
    }
    let mut terms = Vec::new();
    let mut cutoff = None;
    let mut first = true;
    while lx.peek().is_some() {
        let mut neg = false;
        if lx.eat('-') {
            neg = true;
        } else if !lx.eat('+') && !first {
            return Err(lx.error("expected '+' or '-'"));
        }
        first = false;
        if lx.peek() == Some('O') {
            lx.bump();
            if neg || !lx.eat('(') || !lx.eat('t') {
                return Err(lx.error("malformed O(t^c) cutoff"));
            }
            let e = lx.exponent()?;
            if !lx.eat(')') {
                return Err(lx.error("expected ')'"));
            }
            if lx.peek().is_some() {
                return Err(lx.error("cutoff must be the last term"));
            }
            cutoff = Some(e);
            break;
        }
        let coeff = lx.fraction()?;
        let has_t = lx.eat('t');
        if coeff.is_none() && !has_t {
            return Err(lx.error("expected coefficient or 't'"));
        }
        let e = if has_t { lx.exponent()? } else { Exponent::zero() };
        let (n, d) = coeff.unwrap_or((BigInt::one(), BigInt::one()));
        let n = if neg { -n } else { n };
        let c = C::from_fraction(n, d).ok_or_else(|| lx.error("coefficient not in ring"))?;
        terms.push((e, c));
    }
    Ok(NovikovSeries::from_terms(terms, cutoff))
}

/// Rank-one local coefficient module with generators `g`, `ḡ = -g`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankOneModule {
    pub generator_label: String,
    pub flipped: bool,
}

/// An element `s·g` of a rank-one module, written in its canonical generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleElement {
    pub generator_label: String,
    pub value: ZSeries,
}

impl RankOneModule {
    pub fn new(label: impl Into<String>) -> Self {
        RankOneModule { generator_label: label.into(), flipped: false }
    }

    pub fn flip(&self) -> Self {
        RankOneModule { generator_label: self.generator_label.clone(), flipped: !self.flipped }
    }

    /// `±t^energy` in the chosen generator, rewritten in the canonical one.
    pub fn coefficient_value(&self, energy: &Exponent, sign_choice: bool) -> ModuleElement {
        let sign = if sign_choice != self.flipped { 1 } else { -1 };
        ModuleElement {
            generator_label: self.generator_label.clone(),
            value: ZSeries::signed_power(sign, energy.clone()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(s: &str) -> ZSeries {
        s.parse().unwrap()
    }

    #[test]
    fn additive_inverse_is_empty() {
        assert!((&z("t^0") + &z("-t^0")).is_zero());
    }

    #[test]
    fn like_terms_merge() {
        assert_eq!(&z("2t^1/2 + t^3") + &z("t^1/2"), z("3t^1/2 + t^3"));
        assert_eq!(&z("1 - t") + &z("t"), z("1"));
    }

    #[test]
    fn products() {
        assert_eq!(&z("t^1/2") * &z("t^3/2"), z("t^2"));
        assert_eq!(&z("1 - t") * &z("1 + t"), z("1 - t^2"));
    }

    #[test]
    fn valuations() {
        assert_eq!(ZSeries::zero().valuation(), Valuation::Infinite);
        assert_eq!(z("3t^-2 + t^5").valuation(), Valuation::Finite(Exponent::int(-2)));
        let a = Exponent::ratio(7, 3);
        assert_eq!(ZSeries::signed_power(1, a.clone()).valuation(), Valuation::Finite(a));
    }

    #[test]
    fn geometric_inverse() {
        let inv = z("1 - t").invert(&Exponent::int(4)).unwrap();
        assert_eq!(inv.terms(), z("1 + t + t^2 + t^3").terms());
        let one = z("t^0").invert(&Exponent::int(3)).unwrap();
        assert_eq!(one.terms(), z("1").terms());
        assert!(matches!(z("2 + t").invert(&Exponent::int(3)), Err(NovikovError::NotAUnit(_))));
    }

    #[test]
    fn inverse_with_offset_valuation() {
        let a = z("-t^2 + t^5/2");
        let c = Exponent::int(6);
        let b = a.invert(&c).unwrap();
        let prod = (&a * &b).without_cutoff();
        let bound = &c - &Exponent::int(2);
        assert!(prod.agrees_below(&z("1"), &bound), "{prod}");
    }

    #[test]
    fn printer_format() {
        assert_eq!(z("3t^1/2 - 2t^0 + t^7/3").to_string(), "-2t^0 + 3t^1/2 + t^7/3");
        assert_eq!(ZSeries::zero().to_string(), "0");
        assert_eq!(z("1 + O(t^3)").to_string(), "t^0 + O(t^3)");
    }

    #[test]
    fn parse_errors_have_positions() {
        let err = "3t^1/2 +\n 2x".parse::<ZSeries>().unwrap_err();
        assert_eq!((err.line, err.column), (2, 3));
        assert!("t^1/0".parse::<ZSeries>().is_err());
        assert!("1/2t".parse::<ZSeries>().is_err());
        assert!("1/2t".parse::<QSeries>().is_ok());
    }

    #[test]
    fn cutoff_is_minimum() {
        let a = z("1 + t + O(t^3)");
        let b = z("t^1/2 + O(t^2)");
        assert_eq!((&a + &b).cutoff(), Some(&Exponent::int(2)));
    }

    #[test]
    fn rank_one_module_flip() {
        let m = RankOneModule::new("g");
        let e = Exponent::zero();
        assert_eq!(m.coefficient_value(&e, true).value, z("t^0"));
        assert_eq!(m.flip().coefficient_value(&e, true).value, z("-t^0"));
        assert_eq!(m.flip().flip(), m);
        let a = Exponent::ratio(3, 2);
        assert_eq!(m.flip().coefficient_value(&a, true).value, -&m.coefficient_value(&a, true).value);
    }
}
