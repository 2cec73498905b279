//! Dense univariate polynomials over `ℚ`, Sturm sequences and real root
//! isolation.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly(Vec<Q>);

impl Poly {
    pub fn new(mut c: Vec<Q>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        Poly(c)
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(c: Q) -> Self {
        Poly::new(vec![c])
    }

    /// `a + b t`.
    pub fn linear(a: Q, b: Q) -> Self {
        Poly::new(vec![a, b])
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lead(&self) -> Q {
        self.0.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn eval(&self, t: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.0.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        let z = Q::zero();
        Poly::new((0..n).map(|i| self.0.get(i).unwrap_or(&z) + o.0.get(i).unwrap_or(&z)).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Q::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }

    pub fn scale(&self, s: &Q) -> Poly {
        Poly::new(self.0.iter().map(|c| c * s).collect())
    }

    pub fn deriv(&self) -> Poly {
        Poly::new(self.0.iter().enumerate().skip(1).map(|(i, c)| c * q(i as i64)).collect())
    }

    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.clone();
        let dd = d.degree().unwrap();
        let mut quo = vec![Q::zero(); self.0.len().saturating_sub(dd).max(1)];
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let coef = r.lead() / d.lead();
            quo[rd - dd] = coef.clone();
            let mut shifted = vec![Q::zero(); rd - dd];
            shifted.extend(d.0.iter().map(|c| c * &coef));
            r = r.sub(&Poly::new(shifted));
        }
        (Poly::new(quo), r)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lead().recip())
    }

    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Yun's square-free factorization: `f = c · Π g_k^k` as `(k, g_k)`.
    pub fn square_free_factors(&self) -> Vec<(usize, Poly)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let d = self.deriv();
        let a0 = self.gcd(&d);
        let mut b = self.divrem(&a0).0;
        let mut c = d.divrem(&a0).0;
        let mut dd = c.sub(&b.deriv());
        let mut k = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&dd);
            if a.degree().unwrap_or(0) > 0 {
                out.push((k, a.clone()));
            }
            b = b.divrem(&a).0;
            c = dd.divrem(&a).0;
            dd = c.sub(&b.deriv());
            k += 1;
        }
        out
    }

    pub fn square_free_part(&self) -> Poly {
        self.divrem(&self.gcd(&self.deriv())).0.monic()
    }
}

fn sign(x: &Q) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

pub struct Sturm(Vec<Poly>);

impl Sturm {
    pub fn new(p: &Poly) -> Self {
        let mut seq = vec![p.clone(), p.deriv()];
        while !seq.last().unwrap().is_zero() {
            let n = seq.len();
            let r = seq[n - 2].divrem(&seq[n - 1]).1.neg();
            seq.push(r);
        }
        seq.pop();
        Sturm(seq)
    }

    fn variations(&self, t: &Q) -> usize {
        let signs: Vec<i32> = self.0.iter().map(|p| sign(&p.eval(t))).filter(|s| *s != 0).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Distinct roots in the half-open interval `(a, b]`.
    pub fn count(&self, a: &Q, b: &Q) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }
}

/// An isolated real root: exact, or the unique root in the open interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Root {
    Exact(Q),
    Between(Q, Q),
}

impl Root {
    pub fn approx(&self) -> f64 {
        use num::traits::ToPrimitive;
        match self {
            Root::Exact(x) => x.to_f64().unwrap_or(f64::NAN),
            Root::Between(a, b) => ((a + b) / q(2)).to_f64().unwrap_or(f64::NAN),
        }
    }
}

/// Roots of the square-free `p` in the open interval `(a, b)`, each isolated
/// in an open interval with non-root rational endpoints, sorted.
pub fn isolate(p: &Poly, a: &Q, b: &Q) -> Vec<(Q, Q, Root)> {
    let sturm = Sturm::new(p);
    let mut out = Vec::new();
    let mut stack = vec![(a.clone(), b.clone())];
    while let Some((lo, hi)) = stack.pop() {
        // roots in the open interval (lo, hi)
        let mut n = sturm.count(&lo, &hi);
        if p.eval(&hi).is_zero() {
            n -= 1;
        }
        if n == 0 {
            continue;
        }
        let mid = (&lo + &hi) / q(2);
        if n == 1 && !p.eval(&mid).is_zero() {
            let left = sturm.count(&lo, &mid);
            let (l2, h2) = if left == 1 { (lo.clone(), mid) } else { (mid, hi.clone()) };
            if p.eval(&l2).is_zero() || p.eval(&h2).is_zero() {
                stack.push((l2, h2));
            } else {
                out.push((l2.clone(), h2.clone(), Root::Between(l2, h2)));
            }
            continue;
        }
        if p.eval(&mid).is_zero() {
            let mut eps = (&hi - &lo) / q(4);
            loop {
                let (l2, h2) = (&mid - &eps, &mid + &eps);
                if !p.eval(&l2).is_zero() && !p.eval(&h2).is_zero() && sturm.count(&l2, &h2) == 1 {
                    out.push((l2, h2, Root::Exact(mid.clone())));
                    break;
                }
                eps /= q(2);
            }
        }
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out
}

/// Whether the unique root of the square-free `g` isolated by `root` is a
/// root of `m`.
pub fn vanishes_at(m: &Poly, g: &Poly, root: &Root) -> bool {
    match root {
        Root::Exact(x) => m.eval(x).is_zero(),
        Root::Between(lo, hi) => {
            let h = g.gcd(m);
            if h.degree().unwrap_or(0) == 0 {
                return false;
            }
            let mut n = Sturm::new(&h).count(lo, hi);
            if h.eval(hi).is_zero() {
                n -= 1;
            }
            n > 0
        }
    }
}

/// Characteristic polynomial `det(x I - M)` by Faddeev–LeVerrier.
pub fn char_poly(m: &[Vec<Q>]) -> Poly {
    let n = m.len();
    let mut coeffs = vec![Q::zero(); n + 1];
    coeffs[n] = Q::one();
    let mut mk: Vec<Vec<Q>> = vec![vec![Q::zero(); n]; n];
    for k in 1..=n {
        // M_k = M·M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![Q::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = Q::zero();
                for r in 0..n {
                    s += &m[i][r] * &mk[r][j];
                }
                if i == j {
                    s += &coeffs[n - k + 1];
                }
                next[i][j] = s;
            }
        }
        mk = next;
        let mut tr = Q::zero();
        for i in 0..n {
            let mut s = Q::zero();
            for r in 0..n {
                s += &m[i][r] * &mk[r][i];
            }
            tr += s;
        }
        coeffs[n - k] = -tr / q(k as i64);
    }
    Poly::new(coeffs)
}

/// `(positive, negative)` eigenvalue counts of a rational symmetric matrix.
pub fn inertia(m: &[Vec<Q>]) -> (usize, usize) {
    let p = char_poly(m);
    let c: Vec<Q> = p.coeffs().iter().skip_while(|x| x.is_zero()).cloned().collect();
    let changes = |v: &[Q]| {
        let s: Vec<i32> = v.iter().map(sign).filter(|x| *x != 0).collect();
        s.windows(2).filter(|w| w[0] != w[1]).count()
    };
    let pos = changes(&c);
    let alt: Vec<Q> = c.iter().enumerate().map(|(i, x)| if i % 2 == 1 { -x } else { x.clone() }).collect();
    let neg = changes(&alt);
    (pos, neg)
}

pub fn signature(m: &[Vec<Q>]) -> i64 {
    let (p, n) = inertia(m);
    p as i64 - n as i64
}

pub fn det(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::constant(Q::one());
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Poly::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, p)| p.clone()).collect()).collect();
        let term = m[0][j].mul(&det(&minor));
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&x| q(x)).collect())
    }

    #[test]
    fn sturm_counts() {
        // (t-1)(t+1)(t-3)
        let f = p(&[1, -1, 1]).mul(&p(&[-1, 1])).mul(&p(&[1, 1])).mul(&p(&[-3, 1]));
        let s = f.square_free_part();
        assert_eq!(Sturm::new(&s).count(&q(-2), &q(4)), 3);
        let roots = isolate(&s, &q(-2), &q(4));
        assert_eq!(roots.len(), 3);
    }

    #[test]
    fn yun() {
        let f = p(&[-1, 1]).mul(&p(&[-1, 1])).mul(&p(&[2, 1]));
        let fs = f.square_free_factors();
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0], (1, p(&[2, 1])));
        assert_eq!(fs[1], (2, p(&[-1, 1])));
    }

    #[test]
    fn inertia_of_diagonal() {
        let m = vec![vec![q(2), q(0), q(0)], vec![q(0), q(-1), q(0)], vec![q(0), q(0), q(0)]];
        assert_eq!(inertia(&m), (1, 1));
        let m2 = vec![vec![q(0), q(1)], vec![q(1), q(0)]];
        assert_eq!(signature(&m2), 0);
    }
}
