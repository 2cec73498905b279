//! Dual-side axioms on two-factor strings and their consistency.
//!
//! Dual maps raise the cardinality: `δ_q*` by `q`, `H_l*` and `K_l*` by `l`.
//! The product rules are applied to a value `λ_1 ⊗ λ_2` with the actual
//! cardinalities `c_1, c_2` of its factors. Composites of tensor products of
//! maps are rewritten with `(g_1 ⊗ g_2)(f_1 ⊗ f_2) = (−1)^{|g_2||f_1|} g_1 f_1
//! ⊗ g_2 f_2`, where `|δ_q| = q + 1`, `|H_l| = l` and `|K_l| = l + 1`.
//!
//! [`consistency_lemmas`] derives every term of `δ*H* − H*δ*` and
//! `δ*K* + K*δ*` from the rules, compares it with a transcription of the
//! expansion used to prove consistency, and checks that the terms combine
//! into the product-rule form. The exponents are polynomials with integer
//! coefficients, so their parities only depend on the parities of the
//! variables; the check runs both over a box of values and over all parity
//! patterns.

use std::collections::BTreeMap;

use serde::Serialize;

/// Exponents of the dual product rules, with room for mutation.
#[derive(Debug, Clone, Copy)]
pub struct Rules {
    /// `(δ_q* ⊗ id)` on `λ_1 ⊗ λ_2`.
    pub a3_left: fn(i64, i64, i64) -> i64,
    /// `(id ⊗ δ_q*)`.
    pub a3_right: fn(i64, i64, i64) -> i64,
    /// `H_{l_1}* ⊗ H_{l_2}*`.
    pub b2: fn(i64, i64, i64, i64) -> i64,
    /// `K_{l_1}* ⊗ H_{l_2}*`.
    pub c2_left: fn(i64, i64, i64, i64) -> i64,
    /// `H_{l_1}* ⊗ K_{l_2}*`.
    pub c2_right: fn(i64, i64, i64, i64) -> i64,
}

impl Rules {
    pub fn standard() -> Self {
        Rules {
            a3_left: |_, c2, _| c2,
            a3_right: |c1, _, q| c1 * (q + 1),
            b2: |c1, _, _, l2| c1 * l2,
            c2_left: |c1, c2, _, l2| c2 + (c1 + 1) * l2,
            c2_right: |c1, _, _, l2| c1 * (l2 + 1),
        }
    }

    /// One-term changes of the rules; each must break a lemma.
    pub fn mutations() -> Vec<(&'static str, Rules)> {
        let s = Rules::standard();
        vec![
            ("A3 left without c2", Rules { a3_left: |_, _, _| 0, ..s }),
            ("A3 right with q", Rules { a3_right: |c1, _, q| c1 * q, ..s }),
            ("B2 with c2 l1", Rules { b2: |_, c2, l1, _| c2 * l1, ..s }),
            ("C2 left without c2", Rules { c2_left: |c1, _, _, l2| (c1 + 1) * l2, ..s }),
            ("C2 right with c1 l2", Rules { c2_right: |c1, _, _, l2| c1 * l2, ..s }),
        ]
    }
}

fn dq(q: i64) -> i64 {
    q + 1
}
fn hl(l: i64) -> i64 {
    l
}
fn kl(l: i64) -> i64 {
    l + 1
}

fn even(e: i64) -> bool {
    e.rem_euclid(2) == 0
}

/// Terms of `δ*H*` and `H*δ*`, derived and transcribed, for one instance.
fn lemma_one(r: &Rules, c1: i64, c2: i64, q: i64, l1: i64, l2: i64) -> (Vec<(i64, i64)>, Vec<bool>) {
    // (δ H) ⊗ H and H ⊗ (δ H) from δ*∘H*
    let t1 = (r.b2)(c1, c2, l1, l2) + (r.a3_left)(c1 + l1, c2 + l2, q);
    let t2 = (r.b2)(c1, c2, l1, l2) + (r.a3_right)(c1 + l1, c2 + l2, q) + dq(q) * hl(l1);
    // (H δ) ⊗ H and H ⊗ (H δ) from H*∘δ*
    let t3 = (r.a3_left)(c1, c2, q) + (r.b2)(c1 + q, c2, l1, l2) + hl(l2) * dq(q);
    let t4 = (r.a3_right)(c1, c2, q) + (r.b2)(c1, c2 + q, l1, l2);
    let p1 = c1 * l2 + c2 + l2;
    let p2 = c1 * l2 + c1 * (q + 1);
    let p3 = c2 + (c1 + 1) * l2;
    let p4 = c1 * (q + 1 + l2);
    let combine = vec![
        even(t1 - t3),
        even(t2 - t4),
        // δH − Hδ is a derivation along H: the C2 shape with index q + l.
        even(t1 - (r.c2_left)(c1, c2, q + l1, l2)),
        even(t2 - (r.c2_right)(c1, c2, l1, q + l2)),
    ];
    (vec![(t1, p1), (t2, p2), (t3, p3), (t4, p4)], combine)
}

/// Terms of `δ*K*` and `K*δ*`.
fn lemma_two(r: &Rules, c1: i64, c2: i64, q: i64, l1: i64, l2: i64) -> (Vec<(i64, i64)>, Vec<bool>) {
    let kl_ = (r.c2_left)(c1, c2, l1, l2);
    let kr_ = (r.c2_right)(c1, c2, l1, l2);
    let u1 = kl_ + (r.a3_left)(c1 + l1, c2 + l2, q);
    let u2 = kl_ + (r.a3_right)(c1 + l1, c2 + l2, q) + dq(q) * kl(l1);
    let u3 = kr_ + (r.a3_left)(c1 + l1, c2 + l2, q);
    let u4 = kr_ + (r.a3_right)(c1 + l1, c2 + l2, q) + dq(q) * hl(l1);
    let v1 = (r.a3_left)(c1, c2, q) + (r.c2_left)(c1 + q, c2, l1, l2) + hl(l2) * dq(q);
    let v2 = (r.a3_left)(c1, c2, q) + (r.c2_right)(c1 + q, c2, l1, l2) + kl(l2) * dq(q);
    let v3 = (r.a3_right)(c1, c2, q) + (r.c2_left)(c1, c2 + q, l1, l2);
    let v4 = (r.a3_right)(c1, c2, q) + (r.c2_right)(c1, c2 + q, l1, l2);

    let pu1 = (c2 + (c1 + 1) * l2) + (c2 + l2);
    let pu2 = (c2 + (c1 + 1) * l2) + (c1 + 1) * (q + 1);
    let pu3 = c1 * (l2 + 1) + (c2 + l2);
    let pu4 = c1 * (l2 + 1) + c1 * (q + 1);
    let pv1 = c2 + (c2 + c1 * l2);
    let pv2 = c2 + (c1 + 1) * (l2 + 1);
    let pv3 = c1 * (q + 1) + (c2 + q + (c1 + 1) * l2);
    let pv4 = c1 * (q + 1) + c1 * (l2 + 1);

    let combine = vec![
        // (δK + Kδ) ⊗ H and H ⊗ (δK + Kδ) in the B2 shape.
        even(u1 - v1),
        even(u1 - (r.b2)(c1, c2, q + l1, l2)),
        even(u4 - v4),
        even(u4 - (r.b2)(c1, c2, l1, q + l2)),
        // K ⊗ (δH − Hδ) and (δH − Hδ) ⊗ K.
        !even(u2 - v3),
        !even(u3 - v2),
    ];
    (
        vec![(u1, pu1), (u2, pu2), (u3, pu3), (u4, pu4), (v1, pv1), (v2, pv2), (v3, pv3), (v4, pv4)],
        combine,
    )
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub lemma: String,
    pub instances: usize,
    pub parity_patterns: usize,
    pub display_mismatches: usize,
    pub combination_failures: usize,
    pub passed: bool,
}

type LemmaFn = fn(&Rules, i64, i64, i64, i64, i64) -> (Vec<(i64, i64)>, Vec<bool>);

fn run(name: &str, f: LemmaFn, rules: &Rules, q_max: i64) -> LemmaReport {
    let mut instances = 0;
    let mut display_mismatches = 0;
    let mut combination_failures = 0;
    let mut visit = |c1, c2, q, l1, l2| {
        let (terms, combine) = f(rules, c1, c2, q, l1, l2);
        display_mismatches += terms.iter().filter(|(d, p)| !even(d - p)).count();
        combination_failures += combine.iter().filter(|ok| !**ok).count();
    };
    for c1 in 1..q_max {
        for c2 in 1..=q_max - c1 {
            for q in 0..=q_max {
                for l1 in 0..=q_max {
                    for l2 in 0..=q_max {
                        instances += 1;
                        visit(c1, c2, q, l1, l2);
                    }
                }
            }
        }
    }
    let mut parity_patterns = 0;
    for bits in 0..32 {
        let b = |k: i64| (bits >> k) & 1;
        parity_patterns += 1;
        visit(b(0), b(1), b(2), b(3), b(4));
    }
    LemmaReport {
        lemma: name.to_string(),
        instances,
        parity_patterns,
        display_mismatches,
        combination_failures,
        passed: display_mismatches == 0 && combination_failures == 0,
    }
}

/// Both consistency lemmas for factor cardinalities with `c_1 + c_2 ≤ q_max`
/// and indices `0..=q_max`.
pub fn consistency_lemmas(rules: &Rules, q_max: i64) -> Vec<LemmaReport> {
    vec![
        run("A and B are consistent: delta*H* - H*delta*", lemma_one, rules, q_max),
        run("C is consistent with A and B: delta*K* + K*delta*", lemma_two, rules, q_max),
    ]
}

// Value-level model: elementary strings carrying the dual maps applied to
// them, expanded recursively through the two-factor rules.

const MAX_INDEX: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Op {
    D(usize),
    H(usize),
    K(usize),
}

type Block = (usize, Vec<Op>);
type Expr = BTreeMap<(usize, Vec<Block>), i64>;

fn card(b: &Block) -> usize {
    1 + b.1.iter().map(|op| match op {
        Op::D(i) | Op::H(i) | Op::K(i) => *i,
    }).sum::<usize>()
}

fn cards(bs: &[Block]) -> usize {
    bs.iter().map(card).sum()
}

fn push(e: &mut Expr, k: (usize, Vec<Block>), c: i64) {
    let v = e.entry(k.clone()).or_insert(0);
    *v += c;
    if *v == 0 {
        e.remove(&k);
    }
}

fn applied(b: &Block, op: Op) -> Block {
    let mut ops = b.1.clone();
    ops.push(op);
    (b.0, ops)
}

fn sgn(e: usize) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

fn d_op(bs: &[Block], split: usize) -> Expr {
    let mut out = Expr::new();
    if bs.len() == 1 {
        for q in 0..=MAX_INDEX {
            push(&mut out, (q, vec![applied(&bs[0], Op::D(q))]), 1);
        }
        return out;
    }
    let (a, b) = bs.split_at(split);
    for ((q, x), c) in d_op(a, 1) {
        push(&mut out, (q, [x, b.to_vec()].concat()), c * sgn(cards(b)));
    }
    for ((q, y), c) in d_op(b, 1) {
        push(&mut out, (q, [a.to_vec(), y].concat()), c * sgn(cards(a) * (q + 1)));
    }
    out
}

fn h_op(bs: &[Block], split: usize) -> Expr {
    let mut out = Expr::new();
    if bs.len() == 1 {
        for l in 0..=MAX_INDEX {
            push(&mut out, (l, vec![applied(&bs[0], Op::H(l))]), 1);
        }
        return out;
    }
    let (a, b) = bs.split_at(split);
    let ha = h_op(a, 1);
    let hb = h_op(b, 1);
    for ((la, x), ca) in &ha {
        for ((lb, y), cb) in &hb {
            push(&mut out, (la + lb, [x.clone(), y.clone()].concat()), ca * cb * sgn(cards(a) * lb));
        }
    }
    out
}

fn k_op(bs: &[Block], split: usize) -> Expr {
    let mut out = Expr::new();
    if bs.len() == 1 {
        for l in 0..=MAX_INDEX {
            push(&mut out, (l, vec![applied(&bs[0], Op::K(l))]), 1);
        }
        return out;
    }
    let (a, b) = bs.split_at(split);
    for ((la, x), ca) in k_op(a, 1) {
        for ((lb, y), cb) in h_op(b, 1) {
            let e = cards(b) + (cards(a) + 1) * lb;
            push(&mut out, (la + lb, [x.clone(), y].concat()), ca * cb * sgn(e));
        }
    }
    for ((la, x), ca) in h_op(a, 1) {
        for ((lb, y), cb) in k_op(b, 1) {
            push(&mut out, (la + lb, [x.clone(), y].concat()), ca * cb * sgn(cards(a) * (lb + 1)));
        }
    }
    out
}

fn strip(e: &Expr) -> BTreeMap<Vec<Block>, i64> {
    let mut out = BTreeMap::new();
    for ((_, bs), c) in e {
        let v = out.entry(bs.clone()).or_insert(0);
        *v += c;
    }
    out.retain(|_, v| *v != 0);
    out
}

fn elementary(q: usize) -> Vec<Block> {
    (0..q).map(|k| (k, Vec::new())).collect()
}

fn index_vectors(q: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..q {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=MAX_INDEX).map(move |l| {
                    let mut w = v.clone();
                    w.push(l);
                    w
                })
            })
            .collect();
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct ExpansionReport {
    pub q: usize,
    pub split_independent: bool,
    pub differential_expansion: bool,
    pub morphism_expansion: bool,
    pub homotopy_expansion: bool,
}

/// Recursive expansion of the rules on `λ_1 ⊗ … ⊗ λ_q` against the closed
/// forms on elementary strings.
pub fn elementary_expansions(q: usize) -> ExpansionReport {
    let lam = elementary(q);
    let split_independent = (1..q).all(|s| {
        strip(&d_op(&lam, s)) == strip(&d_op(&lam, 1))
            && strip(&h_op(&lam, s)) == strip(&h_op(&lam, 1))
            && strip(&k_op(&lam, s)) == strip(&k_op(&lam, 1))
    });

    let mut cf = BTreeMap::new();
    for i in 1..=q {
        for l in 0..=MAX_INDEX {
            let mut bs = lam.clone();
            bs[i - 1] = applied(&bs[i - 1], Op::D(l));
            *cf.entry(bs).or_insert(0) += sgn((i - 1) * (l + 1) + q - i);
        }
    }
    let differential_expansion = cf == strip(&d_op(&lam, 1));

    let mut cf = BTreeMap::new();
    let mut cfk = BTreeMap::new();
    for ls in index_vectors(q) {
        let base: usize = (1..q).map(|i| i * ls[i]).sum();
        let bs: Vec<Block> = (0..q).map(|k| applied(&lam[k], Op::H(ls[k]))).collect();
        *cf.entry(bs).or_insert(0) += sgn(base);
        for i in 1..=q {
            let bs: Vec<Block> = (0..q)
                .map(|k| applied(&lam[k], if k == i - 1 { Op::K(ls[k]) } else { Op::H(ls[k]) }))
                .collect();
            let tail: usize = (i + 1..=q).map(|j| ls[j - 1]).sum();
            *cfk.entry(bs).or_insert(0) += sgn(q - 1 + base + tail);
        }
    }
    cf.retain(|_, v| *v != 0);
    cfk.retain(|_, v| *v != 0);
    ExpansionReport {
        q,
        split_independent,
        differential_expansion,
        morphism_expansion: cf == strip(&h_op(&lam, 1)),
        homotopy_expansion: cfk == strip(&k_op(&lam, 1)),
    }
}
