//! Faces of associahedra `K_l` and multiplihedra `J_l` as planar trees, with
//! facet orientation signs and a signed cellular boundary.
//!
//! A face is a planar tree whose vertices carry one of three kinds:
//!
//! * `m`: an unpainted associahedron vertex, arity `a >= 2`, dimension `a - 2`;
//! * `p`: a painted associahedron vertex (above the paint front), arity `a >= 2`;
//! * `f`: a vertex on the paint front, arity `a >= 1`, dimension `a - 1`.
//!
//! Faces of `K_l` use only `m`. Faces of `J_l` cross the paint front exactly
//! once on every root-to-leaf path: `p` vertices above, one `f`, `m` below.
//! The cell of a face is the product of its vertex cells taken in preorder,
//! and that product order fixes its orientation.
//!
//! Serialization: a leaf is `x`, a vertex is its kind letter followed by its
//! children in parentheses, e.g. `f(m(x x) x)`. Faces are ordered
//! lexicographically by their preorder arity list, see [`Face::preorder`].

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Environment variable capping the number of faces an enumeration may produce.
pub const BUDGET_ENV: &str = "FLOER_ENUM_BUDGET";
pub const DEFAULT_BUDGET: u64 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error("l = {l} needs {faces} faces, above the enumeration budget {budget}")]
    UnsupportedL { l: usize, faces: u64, budget: u64 },
    #[error("l must be at least {min}, got {l}")]
    TooSmall { l: usize, min: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Polytope {
    #[serde(rename = "assoc")]
    K,
    #[serde(rename = "multi")]
    J,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    M,
    P,
    F,
}

impl Kind {
    fn letter(self) -> char {
        match self {
            Kind::M => 'm',
            Kind::P => 'p',
            Kind::F => 'f',
        }
    }

    fn cell_dim(self, arity: usize) -> usize {
        match self {
            Kind::F => arity - 1,
            _ => arity - 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Face {
    Leaf,
    Vertex(Kind, Vec<Face>),
}

impl Face {
    pub fn corolla(kind: Kind, arity: usize) -> Face {
        Face::Vertex(kind, vec![Face::Leaf; arity])
    }

    pub fn leaves(&self) -> usize {
        match self {
            Face::Leaf => 1,
            Face::Vertex(_, ch) => ch.iter().map(Face::leaves).sum(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Face::Leaf => 0,
            Face::Vertex(k, ch) => k.cell_dim(ch.len()) + ch.iter().map(Face::dim).sum::<usize>(),
        }
    }

    /// Preorder list of `(kind, arity)`, leaves included with arity 0.
    pub fn preorder(&self) -> Vec<(char, usize)> {
        let mut out = Vec::new();
        self.preorder_into(&mut out);
        out
    }

    fn preorder_into(&self, out: &mut Vec<(char, usize)>) {
        match self {
            Face::Leaf => out.push(('x', 0)),
            Face::Vertex(k, ch) => {
                out.push((k.letter(), ch.len()));
                for c in ch {
                    c.preorder_into(out);
                }
            }
        }
    }

    /// Key for the canonical order: arities first, kinds break ties.
    pub fn canonical_key(&self) -> Vec<(usize, char)> {
        self.preorder().into_iter().map(|(k, a)| (a, k)).collect()
    }

    /// A vertex of the polytope, i.e. a zero-dimensional face.
    pub fn is_vertex(&self) -> bool {
        self.dim() == 0
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Face::Leaf => write!(f, "x"),
            Face::Vertex(k, ch) => {
                write!(f, "{}(", k.letter())?;
                for (i, c) in ch.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl Serialize for Face {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Compositions of `n` into `k` positive parts, lexicographic.
pub fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            if n == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if n < k {
            return;
        }
        for first in 1..=n - (k - 1) {
            cur.push(first);
            go(n - first, k - 1, cur, out);
            cur.pop();
        }
    }
    go(n, k, &mut cur, &mut out);
    out
}

fn budget() -> u64 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

/// Number of faces of `K_l` (all dimensions, top cell included).
pub fn count_k_faces(l: usize) -> u64 {
    let mut memo = vec![0u64; l.max(1) + 1];
    memo[1] = 1;
    for n in 2..=l {
        memo[n] = (2..=n).map(|a| count_forests(&memo, n, a)).fold(0u64, |x, y| x.saturating_add(y));
    }
    memo[l.max(1)]
}

/// Σ over compositions of `n` into `a` parts of Π counts[part].
fn count_forests(counts: &[u64], n: usize, a: usize) -> u64 {
    let mut ways = vec![0u64; n + 1];
    ways[0] = 1;
    for _ in 0..a {
        let mut next = vec![0u64; n + 1];
        for (s, &w) in ways.iter().enumerate() {
            if w == 0 {
                continue;
            }
            for part in 1..=n - s {
                next[s + part] = next[s + part].saturating_add(w.saturating_mul(counts[part]));
            }
        }
        ways = next;
    }
    ways[n]
}

/// Number of faces of `J_l` (all dimensions, top cell included).
pub fn count_j_faces(l: usize) -> u64 {
    let mut k = vec![0u64; l + 1];
    for (n, slot) in k.iter_mut().enumerate().skip(1) {
        *slot = count_k_faces(n);
    }
    let mut j = vec![0u64; l + 1];
    for n in 1..=l {
        let mut total = (1..=n).map(|a| count_forests(&k, n, a)).fold(0u64, |x, y| x.saturating_add(y));
        for q in 2..=n {
            total = total.saturating_add(count_forests(&j, n, q));
        }
        j[n] = total;
    }
    j[l]
}

fn check_budget(polytope: Polytope, l: usize) -> Result<(), PolytopeError> {
    let faces = match polytope {
        Polytope::K => count_k_faces(l),
        Polytope::J => count_j_faces(l),
    };
    let budget = budget();
    if faces > budget {
        return Err(PolytopeError::UnsupportedL { l, faces, budget });
    }
    Ok(())
}

fn forests(parts: &[usize], table: &dyn Fn(usize) -> Vec<Face>) -> Vec<Vec<Face>> {
    let mut acc: Vec<Vec<Face>> = vec![Vec::new()];
    for &p in parts {
        let options = table(p);
        let mut next = Vec::with_capacity(acc.len() * options.len());
        for prefix in &acc {
            for o in &options {
                let mut v = prefix.clone();
                v.push(o.clone());
                next.push(v);
            }
        }
        acc = next;
    }
    acc
}

fn k_faces_raw(l: usize, memo: &mut BTreeMap<usize, Vec<Face>>) -> Vec<Face> {
    if l == 1 {
        return vec![Face::Leaf];
    }
    if let Some(v) = memo.get(&l) {
        return v.clone();
    }
    for n in 1..l {
        k_faces_raw(n, memo);
    }
    let snapshot = memo.clone();
    let table = |n: usize| if n == 1 { vec![Face::Leaf] } else { snapshot[&n].clone() };
    let mut out = Vec::new();
    for a in 2..=l {
        for parts in compositions(l, a) {
            for kids in forests(&parts, &table) {
                out.push(Face::Vertex(Kind::M, kids));
            }
        }
    }
    memo.insert(l, out.clone());
    out
}

fn j_faces_raw(l: usize) -> Vec<Face> {
    let mut kmemo = BTreeMap::new();
    let mut jmemo: BTreeMap<usize, Vec<Face>> = BTreeMap::new();
    for n in 1..=l {
        k_faces_raw(n, &mut kmemo);
    }
    let ktable = |n: usize| if n == 1 { vec![Face::Leaf] } else { kmemo[&n].clone() };
    for n in 1..=l {
        let mut out = Vec::new();
        for a in 1..=n {
            for parts in compositions(n, a) {
                for kids in forests(&parts, &ktable) {
                    out.push(Face::Vertex(Kind::F, kids));
                }
            }
        }
        for q in 2..=n {
            for parts in compositions(n, q) {
                for kids in forests(&parts, &|m| jmemo[&m].clone()) {
                    out.push(Face::Vertex(Kind::P, kids));
                }
            }
        }
        jmemo.insert(n, out);
    }
    jmemo.remove(&l).unwrap_or_default()
}

/// Faces of `K_l` (`l >= 1`) or `J_l` (`l >= 1`), optionally of one dimension,
/// sorted canonically.
pub fn enumerate_faces(polytope: Polytope, l: usize, dim: Option<usize>) -> Result<Vec<Face>, PolytopeError> {
    if l == 0 {
        return Err(PolytopeError::TooSmall { l, min: 1 });
    }
    check_budget(polytope, l)?;
    let mut faces = match polytope {
        Polytope::K if l == 1 => vec![Face::Leaf],
        Polytope::K => k_faces_raw(l, &mut BTreeMap::new()),
        Polytope::J => j_faces_raw(l),
    };
    if let Some(d) = dim {
        faces.retain(|f| f.dim() == d);
    }
    faces.sort_by_cached_key(Face::canonical_key);
    Ok(faces)
}

/// Dimension of the top cell.
pub fn polytope_dim(polytope: Polytope, l: usize) -> usize {
    match polytope {
        Polytope::K => l.saturating_sub(2),
        Polytope::J => l - 1,
    }
}

/// Face counts per dimension, top cell excluded.
pub fn f_vector(polytope: Polytope, l: usize) -> Result<Vec<u64>, PolytopeError> {
    let d = polytope_dim(polytope, l);
    let mut counts = vec![0u64; d.max(1)];
    for f in enumerate_faces(polytope, l, None)? {
        let k = f.dim();
        if k < d {
            counts[k] += 1;
        }
    }
    if d == 0 {
        counts.clear();
    }
    Ok(counts)
}

/// Sign `+1` when boundary and product orientations of the associahedron
/// facet `K_{l1} × K_{l2}` (inner tree plugged at input `i`) coincide.
pub fn assoc_sign(l1: usize, l2: usize, i: usize) -> i64 {
    if (l1 * l2 + i * (l2 - 1)) % 2 == 1 {
        1
    } else {
        -1
    }
}

/// Sign of the lower multiplihedron facet `J_{l1} × K_{l2}`.
pub fn lower_sign(l1: usize, l2: usize, i: usize) -> i64 {
    -assoc_sign(l1, l2, i)
}

/// Sign of the upper multiplihedron facet `K_q × J_{l_1} × … × J_{l_q}`.
pub fn upper_sign(ls: &[usize]) -> i64 {
    let q = ls.len();
    let s: usize = ls.iter().enumerate().map(|(k, &l)| (q - k - 1) * (l - 1)).sum();
    if s % 2 == 0 {
        1
    } else {
        -1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FacetKind {
    Assoc { l1: usize, l2: usize, i: usize },
    MultiLower { l1: usize, l2: usize, i: usize },
    MultiUpper { q: usize, ls: Vec<usize> },
    /// `s = 0`: the face `J_1 × K_l`; `s = 1`: the face `K_l × J_1 × … × J_1`.
    MultiEnd { s: u8 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FacetFactorization {
    #[serde(flatten)]
    pub kind: FacetKind,
    pub face: Face,
    pub orientation_sign: i64,
}

/// Codimension-one faces of the top cell with their product decomposition and
/// sign.
pub fn facets_with_signs(polytope: Polytope, l: usize) -> Result<Vec<FacetFactorization>, PolytopeError> {
    if l < 2 {
        return Err(PolytopeError::TooSmall { l, min: 2 });
    }
    let mut out = Vec::new();
    match polytope {
        Polytope::K => {
            for (spec, sign) in splits(Kind::M, l) {
                let face = build(&spec, vec![Face::Leaf; l]);
                let (l1, l2, i) = spec.lower_data();
                out.push(FacetFactorization { kind: FacetKind::Assoc { l1, l2, i }, face, orientation_sign: sign });
            }
        }
        Polytope::J => {
            for (spec, sign) in splits(Kind::F, l) {
                let face = build(&spec, vec![Face::Leaf; l]);
                let kind = match spec.outer.0 {
                    Kind::F => {
                        let (l1, l2, i) = spec.lower_data();
                        if l1 == 1 {
                            FacetKind::MultiEnd { s: 0 }
                        } else {
                            FacetKind::MultiLower { l1, l2, i }
                        }
                    }
                    _ => {
                        let ls: Vec<usize> = spec.inner.iter().map(|v| v.1).collect();
                        if ls.iter().all(|&x| x == 1) {
                            FacetKind::MultiEnd { s: 1 }
                        } else {
                            FacetKind::MultiUpper { q: ls.len(), ls }
                        }
                    }
                };
                out.push(FacetFactorization { kind, face, orientation_sign: sign });
            }
        }
    }
    out.sort_by_cached_key(|f| f.face.canonical_key());
    Ok(out)
}

/// One way to split a vertex into two levels: an outer vertex whose inputs
/// at `slots` receive the inner vertices, in order.
#[derive(Debug, Clone)]
struct Split {
    outer: (Kind, usize),
    slots: Vec<usize>,
    inner: Vec<(Kind, usize)>,
}

impl Split {
    fn lower_data(&self) -> (usize, usize, usize) {
        (self.outer.1, self.inner[0].1, self.slots[0])
    }
}

fn splits(kind: Kind, a: usize) -> Vec<(Split, i64)> {
    let mut res = Vec::new();
    match kind {
        Kind::M | Kind::P => {
            for l2 in 2..a {
                let l1 = a - l2 + 1;
                for i in 1..=l1 {
                    res.push((
                        Split { outer: (kind, l1), slots: vec![i], inner: vec![(kind, l2)] },
                        assoc_sign(l1, l2, i),
                    ));
                }
            }
        }
        Kind::F => {
            for l2 in 2..=a {
                let l1 = a - l2 + 1;
                for i in 1..=l1 {
                    res.push((
                        Split { outer: (Kind::F, l1), slots: vec![i], inner: vec![(Kind::M, l2)] },
                        lower_sign(l1, l2, i),
                    ));
                }
            }
            for q in 2..=a {
                for ls in compositions(a, q) {
                    let sign = upper_sign(&ls);
                    res.push((
                        Split {
                            outer: (Kind::P, q),
                            slots: (1..=q).collect(),
                            inner: ls.into_iter().map(|x| (Kind::F, x)).collect(),
                        },
                        sign,
                    ));
                }
            }
        }
    }
    res
}

fn build(spec: &Split, kids: Vec<Face>) -> Face {
    let mut it = kids.into_iter();
    let mut children = Vec::with_capacity(spec.outer.1);
    let mut j = 0;
    for pos in 1..=spec.outer.1 {
        if spec.slots.get(j) == Some(&pos) {
            let (k, ar) = spec.inner[j];
            children.push(Face::Vertex(k, it.by_ref().take(ar).collect()));
            j += 1;
        } else {
            children.push(it.next().expect("arity mismatch"));
        }
    }
    Face::Vertex(spec.outer.0, children)
}

/// Tagged copy of a face used while computing boundaries: every vertex
/// remembers its position in the product order.
#[derive(Clone)]
enum TNode {
    Leaf,
    V(Kind, Vec<TNode>, (u32, u32)),
}

fn tag(face: &Face, counter: &mut u32) -> TNode {
    match face {
        Face::Leaf => TNode::Leaf,
        Face::Vertex(k, ch) => {
            let t = (2 * *counter, 0);
            *counter += 1;
            TNode::V(*k, ch.iter().map(|c| tag(c, counter)).collect(), t)
        }
    }
}

fn untag(t: &TNode) -> Face {
    match t {
        TNode::Leaf => Face::Leaf,
        TNode::V(k, ch, _) => Face::Vertex(*k, ch.iter().map(untag).collect()),
    }
}

fn tagged_dims(t: &TNode, out: &mut Vec<((u32, u32), usize)>) {
    if let TNode::V(k, ch, tg) = t {
        out.push((*tg, k.cell_dim(ch.len())));
        for c in ch {
            tagged_dims(c, out);
        }
    }
}

fn replace(t: &TNode, target: (u32, u32), spec: &Split, slot_rank: u32) -> TNode {
    match t {
        TNode::Leaf => TNode::Leaf,
        TNode::V(_, ch, tg) if *tg == target => {
            let mut it = ch.iter().cloned();
            let mut children = Vec::new();
            let mut j = 0;
            for pos in 1..=spec.outer.1 {
                if spec.slots.get(j) == Some(&pos) {
                    let (ik, ar) = spec.inner[j];
                    let kids: Vec<TNode> = it.by_ref().take(ar).collect();
                    children.push(TNode::V(ik, kids, (slot_rank, j as u32 + 1)));
                    j += 1;
                } else {
                    children.push(it.next().expect("arity mismatch"));
                }
            }
            TNode::V(spec.outer.0, children, (slot_rank, 0))
        }
        TNode::V(k, ch, tg) => TNode::V(*k, ch.iter().map(|c| replace(c, target, spec, slot_rank)).collect(), *tg),
    }
}

/// Signed cellular boundary of a face.
pub fn boundary(face: &Face) -> BTreeMap<Face, i64> {
    let mut counter = 0;
    let tagged = tag(face, &mut counter);
    let mut verts = Vec::new();
    tagged_dims(&tagged, &mut verts);
    let mut out: BTreeMap<Face, i64> = BTreeMap::new();
    let mut lead = 0usize;
    let mut arities = Vec::new();
    collect_vertices(&tagged, &mut arities);
    for (idx, &(tg, kind, arity)) in arities.iter().enumerate() {
        // New vertices sort right after the vertex they replace.
        let slot_rank = tg.0 + 1;
        for (spec, sign) in splits(kind, arity) {
            let nt = replace(&tagged, tg, &spec, slot_rank);
            let mut seq = Vec::new();
            tagged_dims(&nt, &mut seq);
            let mut order: Vec<usize> = (0..seq.len()).collect();
            order.sort_by_key(|&p| seq[p].0);
            let mut inversions = 0usize;
            for x in 0..order.len() {
                for y in x + 1..order.len() {
                    if order[x] > order[y] {
                        inversions += seq[order[x]].1 * seq[order[y]].1;
                    }
                }
            }
            let s = if (lead + inversions) % 2 == 0 { sign } else { -sign };
            *out.entry(untag(&nt)).or_insert(0) += s;
        }
        lead += verts[idx].1;
    }
    out.retain(|_, c| *c != 0);
    out
}

fn collect_vertices(t: &TNode, out: &mut Vec<((u32, u32), Kind, usize)>) {
    if let TNode::V(k, ch, tg) = t {
        out.push((*tg, *k, ch.len()));
        for c in ch {
            collect_vertices(c, out);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundaryReport {
    pub polytope: Polytope,
    pub l: usize,
    pub faces_checked: usize,
    pub nonzero_entries: usize,
    pub passed: bool,
}

/// Computes `∂∂` on every face and counts nonzero coefficients.
pub fn boundary_map_consistency(polytope: Polytope, l: usize) -> Result<BoundaryReport, PolytopeError> {
    let faces = enumerate_faces(polytope, l, None)?;
    let mut cache: BTreeMap<Face, BTreeMap<Face, i64>> = BTreeMap::new();
    let mut nonzero = 0;
    for f in &faces {
        let b = cache.entry(f.clone()).or_insert_with(|| boundary(f)).clone();
        let mut bb: BTreeMap<Face, i64> = BTreeMap::new();
        for (g, c) in &b {
            let bg = cache.entry(g.clone()).or_insert_with(|| boundary(g));
            for (h, d) in bg.iter() {
                *bb.entry(h.clone()).or_insert(0) += c * d;
            }
        }
        nonzero += bb.values().filter(|v| **v != 0).count();
    }
    Ok(BoundaryReport { polytope, l, faces_checked: faces.len(), nonzero_entries: nonzero, passed: nonzero == 0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k5_vertices_and_f_vector() {
        assert_eq!(enumerate_faces(Polytope::K, 5, Some(0)).unwrap().len(), 14);
        assert_eq!(f_vector(Polytope::K, 5).unwrap(), vec![14, 21, 9]);
    }

    #[test]
    fn small_cases() {
        assert_eq!(enumerate_faces(Polytope::K, 2, Some(0)).unwrap().len(), 1);
        assert_eq!(enumerate_faces(Polytope::K, 3, Some(0)).unwrap().len(), 2);
        assert_eq!(enumerate_faces(Polytope::J, 1, None).unwrap(), vec![Face::corolla(Kind::F, 1)]);
        assert_eq!(f_vector(Polytope::J, 2).unwrap(), vec![2]);
        assert_eq!(f_vector(Polytope::J, 3).unwrap(), vec![6, 6]);
    }

    #[test]
    fn counts_match_enumeration() {
        for l in 1..=6 {
            assert_eq!(count_k_faces(l), enumerate_faces(Polytope::K, l, None).unwrap().len() as u64);
            assert_eq!(count_j_faces(l), enumerate_faces(Polytope::J, l, None).unwrap().len() as u64);
        }
    }

    #[test]
    fn quoted_facet_signs() {
        assert_eq!(assoc_sign(2, 2, 1), 1);
        assert_eq!(lower_sign(2, 2, 1), -1);
        assert_eq!(upper_sign(&[2, 2]), -1);
    }

    #[test]
    fn facet_counts() {
        for l in 2..=7 {
            assert_eq!(facets_with_signs(Polytope::K, l).unwrap().len(), l * (l - 1) / 2 - 1);
            let j = facets_with_signs(Polytope::J, l).unwrap().len();
            assert_eq!(j, (1 << (l - 1)) - 1 + l * (l - 1) / 2);
        }
    }

    #[test]
    fn end_facets() {
        let f = facets_with_signs(Polytope::J, 3).unwrap();
        let ends: Vec<_> = f.iter().filter(|x| matches!(x.kind, FacetKind::MultiEnd { .. })).collect();
        assert_eq!(ends.len(), 2);
        for e in ends {
            match e.kind {
                FacetKind::MultiEnd { s: 0 } => assert_eq!(e.orientation_sign, -1),
                _ => assert_eq!(e.orientation_sign, 1),
            }
        }
    }

    #[test]
    fn boundary_squares_to_zero_small() {
        for l in 2..=5 {
            assert!(boundary_map_consistency(Polytope::K, l).unwrap().passed, "K_{l}");
            assert!(boundary_map_consistency(Polytope::J, l).unwrap().passed, "J_{l}");
        }
    }

    #[test]
    fn flipping_a_lemma_parity_breaks_boundary() {
        // With the K-parity used for lower J facets, ∂∂ of the top cell of J_3 is nonzero.
        let top = Face::corolla(Kind::F, 3);
        let b = boundary(&top);
        let mut bad: BTreeMap<Face, i64> = BTreeMap::new();
        for (g, c) in &b {
            let c = if matches!(g, Face::Vertex(Kind::F, _)) { -c } else { *c };
            for (h, d) in boundary(g) {
                *bad.entry(h).or_insert(0) += c * d;
            }
        }
        assert!(bad.values().any(|v| *v != 0));
    }

    #[test]
    fn canonical_serialization() {
        let f = enumerate_faces(Polytope::K, 3, Some(0)).unwrap();
        let s: Vec<String> = f.iter().map(|x| x.to_string()).collect();
        assert_eq!(s, vec!["m(x m(x x))", "m(m(x x) x)"]);
    }

    #[test]
    fn budget_rejects_large_l() {
        assert!(count_k_faces(30) > DEFAULT_BUDGET);
        assert!(matches!(enumerate_faces(Polytope::K, 30, None), Err(PolytopeError::UnsupportedL { .. })));
    }
}
