//! Basic commutators: the Hall (Mal'cev) basis, Witt counts via the necklace
//! polynomial, the commutator-graph recursion, and relator generation for the
//! standard nilpotent presentation.
//!
//! Two different counting rules live side by side on purpose. `c_sum` adds up
//! Witt numbers (the rank of each lower-central quotient), while
//! `published_c_recursion` and `commutator_graph_size` follow the linear
//! recursion `c(r,k) = (r+1)c(r,k-1) - r c(r,k-2)`. The two agree up to
//! `k = 3` and split at `(2,4)` (8 against 9); the errata report prints both
//! columns so the split stays visible.

use crate::words::{concat, invert, Letter, Word};
use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

/// Desk-scale guardrails for basis enumeration.
const MAX_CLASS: usize = 8;
const MAX_BASIS: i64 = 10_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BasisError {
    #[error("scale limit exceeded: rank {r}, class {k} (need class <= {MAX_CLASS} and basis size <= {MAX_BASIS})")]
    ScaleLimitExceeded { r: usize, k: usize },
    #[error("basis element {0} is not left-normed: its right factor is not a generator")]
    NotLeftNormed(String),
    #[error("'{0}' does not name a basis element of this rank and class")]
    UnknownElement(String),
    #[error("malformed bracket expression: {0}")]
    BadBracketSyntax(String),
}

/// A nested commutator tree. Leaves are generator indices; internal nodes are
/// brackets `[left, right]` with `[u,v] = u v u^-1 v^-1` as words.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisElement {
    Leaf(usize),
    Comm(Box<BasisElement>, Box<BasisElement>),
}

impl BasisElement {
    pub fn leaf(gen: usize) -> Self {
        BasisElement::Leaf(gen)
    }

    pub fn comm(left: BasisElement, right: BasisElement) -> Self {
        BasisElement::Comm(Box::new(left), Box::new(right))
    }

    /// Number of leaves, i.e. the weight of the commutator.
    pub fn weight(&self) -> usize {
        match self {
            BasisElement::Leaf(_) => 1,
            BasisElement::Comm(l, r) => l.weight() + r.weight(),
        }
    }

    /// Renders as a nested bracket string, e.g. `[[b,a],a]`.
    pub fn render(&self) -> String {
        match self {
            BasisElement::Leaf(g) => ((b'a' + *g as u8) as char).to_string(),
            BasisElement::Comm(l, r) => format!("[{},{}]", l.render(), r.render()),
        }
    }

    /// Parses the nested bracket form produced by `render`.
    pub fn parse(text: &str) -> Result<Self, BasisError> {
        let stripped: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bytes = stripped.as_bytes();
        let (elem, rest) = Self::parse_inner(bytes)
            .ok_or_else(|| BasisError::BadBracketSyntax(text.to_string()))?;
        if !rest.is_empty() {
            return Err(BasisError::BadBracketSyntax(text.to_string()));
        }
        Ok(elem)
    }

    fn parse_inner(bytes: &[u8]) -> Option<(Self, &[u8])> {
        match bytes.first()? {
            b'[' => {
                let (left, rest) = Self::parse_inner(&bytes[1..])?;
                let rest = rest.strip_prefix(b",".as_slice())?;
                let (right, rest) = Self::parse_inner(rest)?;
                let rest = rest.strip_prefix(b"]".as_slice())?;
                Some((BasisElement::comm(left, right), rest))
            }
            c if c.is_ascii_lowercase() => {
                Some((BasisElement::leaf((c - b'a') as usize), &bytes[1..]))
            }
            _ => None,
        }
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// The ordered Hall basis of the free Lie ring up to a given weight: the
/// Mal'cev basis used for coordinates. Order is weight-first, then
/// construction order within a weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HallBasis {
    rank: usize,
    class: usize,
    elements: Vec<BasisElement>,
    /// `offsets[j]` = number of elements of weight <= j, for j = 0..=class.
    offsets: Vec<usize>,
    positions: HashMap<BasisElement, usize>,
}

impl HallBasis {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn class(&self) -> usize {
        self.class
    }

    pub fn elements(&self) -> &[BasisElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Elements of exactly the given weight, in basis order.
    pub fn stratum(&self, weight: usize) -> &[BasisElement] {
        &self.elements[self.offsets[weight - 1]..self.offsets[weight]]
    }

    /// Index range of the given weight stratum inside the full basis order.
    pub fn stratum_range(&self, weight: usize) -> std::ops::Range<usize> {
        self.offsets[weight - 1]..self.offsets[weight]
    }

    /// Number of elements of weight <= j.
    pub fn count_up_to(&self, weight: usize) -> usize {
        self.offsets[weight]
    }

    pub fn position(&self, e: &BasisElement) -> Option<usize> {
        self.positions.get(e).copied()
    }
}

/// Moebius function by trial factorization; `n >= 1` is tiny here.
fn moebius(mut n: u64) -> i64 {
    let mut mu = 1i64;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// Witt number: the rank of the weight-`k` stratum of the free Lie ring on
/// `r` generators, `(1/k) * sum_{d|k} mu(d) r^(k/d)` (a necklace polynomial).
pub fn witt_delta(r: usize, k: usize) -> i64 {
    assert!(r >= 1 && k >= 1, "witt_delta requires r, k >= 1");
    let mut total: i128 = 0;
    for d in 1..=k as u64 {
        if (k as u64).is_multiple_of(d) {
            let mu = moebius(d);
            if mu != 0 {
                let power = (r as i128).pow((k as u64 / d) as u32);
                total += mu as i128 * power;
            }
        }
    }
    let value = total / k as i128;
    debug_assert_eq!(value * k as i128, total, "Witt sum must divide exactly");
    i64::try_from(value).expect("Witt number overflow")
}

/// Sum of Witt numbers for weights 1..=k: the number of Mal'cev coordinates.
pub fn c_sum(r: usize, k: usize) -> i64 {
    (1..=k).map(|j| witt_delta(r, j)).sum()
}

/// The commutator-graph recursion `c(r,k) = (r+1)c(r,k-1) - r c(r,k-2)` with
/// seeds `c(r,1) = r`, `c(r,2) = r(r+1)/2`. The published seed `c(2,2) = 1`
/// is inconsistent with the closed form `c(2,k) = 2^(k-1) + 1` that the same
/// recursion is meant to produce, so the triangular-number seed is used for
/// every rank.
pub fn published_c_recursion(r: usize, k: usize) -> i64 {
    assert!(r >= 2 && k >= 1, "recursion defined for r >= 2, k >= 1");
    let r = r as i64;
    let mut prev = r; // c(r,1)
    if k == 1 {
        return prev;
    }
    let mut cur = r * (r + 1) / 2; // c(r,2)
    for _ in 3..=k {
        let next = (r + 1) * cur - r * prev;
        prev = cur;
        cur = next;
    }
    cur
}

fn check_scale(r: usize, k: usize) -> Result<(), BasisError> {
    if r == 0 || k == 0 || k > MAX_CLASS || c_sum(r, k) > MAX_BASIS {
        return Err(BasisError::ScaleLimitExceeded { r, k });
    }
    Ok(())
}

/// Classical Hall basic-commutator enumeration up to weight `k`.
///
/// Weight-1 elements are the generators in alphabet order. A bracket `[u,v]`
/// of weight `j` is basic when `u > v` in the order built so far and, if
/// `u = [x,y]`, also `y <= v`. Within a weight, elements are ordered by the
/// position pair (left, right).
pub fn hall_basis(r: usize, k: usize) -> Result<HallBasis, BasisError> {
    check_scale(r, k)?;
    let mut elements: Vec<BasisElement> = (0..r).map(BasisElement::leaf).collect();
    let mut positions: HashMap<BasisElement, usize> = elements
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, e)| (e, i))
        .collect();
    let mut offsets = vec![0usize, r];
    for weight in 2..=k {
        let prev_len = elements.len();
        let mut stratum: Vec<(usize, usize)> = Vec::new();
        for (u_pos, u) in elements.iter().enumerate() {
            let wu = u.weight();
            if wu >= weight {
                continue;
            }
            let wv = weight - wu;
            for (v_pos, v) in elements.iter().enumerate() {
                if v.weight() != wv || u_pos <= v_pos {
                    continue;
                }
                let hall_ok = match u {
                    BasisElement::Leaf(_) => true,
                    BasisElement::Comm(_, y) => positions[y.as_ref()] <= v_pos,
                };
                if hall_ok {
                    stratum.push((u_pos, v_pos));
                }
            }
        }
        stratum.sort_unstable();
        for (u_pos, v_pos) in stratum {
            let e = BasisElement::comm(elements[u_pos].clone(), elements[v_pos].clone());
            positions.insert(e.clone(), elements.len());
            elements.push(e);
        }
        let expected = witt_delta(r, weight);
        debug_assert_eq!(
            (elements.len() - prev_len) as i64,
            expected,
            "Hall stratum size must match the Witt number at weight {weight}"
        );
        offsets.push(elements.len());
    }
    Ok(HallBasis {
        rank: r,
        class: k,
        elements,
        offsets,
        positions,
    })
}

/// Expands a commutator tree into an unreduced word:
/// `[u,v] -> W(u) W(v) W(u)^-1 W(v)^-1`.
pub fn commutator_word(e: &BasisElement) -> Word {
    match e {
        BasisElement::Leaf(g) => Word::from_letters(vec![Letter::new(*g, true)]),
        BasisElement::Comm(l, r) => {
            let wl = commutator_word(l);
            let wr = commutator_word(r);
            concat(&concat(&wl, &wr), &concat(&invert(&wl), &invert(&wr)))
        }
    }
}

/// Splits a Hall-basic element as `[u, s]` with `s` a generator. This is the
/// shape the projection planes need; it first fails at rank 2, weight 5
/// (`[[[b,a],a],[b,a]]`) and rank 3, weight 4 (`[[c,a],[b,a]]`), which bounds
/// the range of the geometric criterion.
pub fn left_normed_decompose(e: &BasisElement) -> Result<(BasisElement, usize), BasisError> {
    match e {
        BasisElement::Comm(l, r) => match r.as_ref() {
            BasisElement::Leaf(g) => Ok((l.as_ref().clone(), *g)),
            _ => Err(BasisError::NotLeftNormed(e.render())),
        },
        BasisElement::Leaf(_) => Err(BasisError::NotLeftNormed(e.render())),
    }
}

/// Left-normed commutator `[[..[s_i1, s_i2], ..], s_in]` for an index tuple.
fn left_normed_tuple(indices: &[usize]) -> BasisElement {
    let mut it = indices.iter();
    let mut acc = BasisElement::leaf(*it.next().expect("nonempty tuple"));
    for &g in it {
        acc = BasisElement::comm(acc, BasisElement::leaf(g));
    }
    acc
}

/// All index tuples of the given length over `0..r`, odometer order.
fn index_tuples(r: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(r.pow(len as u32));
    let mut tuple = vec![0usize; len];
    loop {
        out.push(tuple.clone());
        let mut i = len;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            tuple[i] += 1;
            if tuple[i] < r {
                break;
            }
            tuple[i] = 0;
        }
    }
}

/// Relator words of the standard presentation of the free nilpotent group of
/// class `k`: the expansions of every weight-(k+1) left-normed commutator
/// over all index tuples. Duplicates and trivially-collapsing tuples are
/// kept; each word maps to the identity at class `k`.
pub fn relators(r: usize, k: usize) -> Result<Vec<Word>, BasisError> {
    check_scale(r, k + 1)?;
    Ok(index_tuples(r, k + 1)
        .iter()
        .map(|t| commutator_word(&left_normed_tuple(t)))
        .collect())
}

/// Weight-(k+1) left-normed commutators as trees, one per index tuple.
pub fn left_normed_commutators(r: usize, weight: usize) -> Result<Vec<BasisElement>, BasisError> {
    check_scale(r, weight)?;
    Ok(index_tuples(r, weight)
        .iter()
        .map(|t| left_normed_tuple(t))
        .collect())
}

/// Vertex count of the incremental commutator graph: generators, then
/// distinct unordered generator pairs at weight 2, then one new vertex per
/// (new weight-j vertex, generator) pair. Reproduces the linear recursion,
/// not the Witt sums; the difference is what the errata report audits.
pub fn commutator_graph_size(r: usize, k: usize) -> Result<i64, BasisError> {
    check_scale(r, k)?;
    let r = r as i64;
    let mut total = r;
    if k == 1 {
        return Ok(total);
    }
    let mut fresh = r * (r - 1) / 2;
    total += fresh;
    for _ in 3..=k {
        fresh *= r;
        total += fresh;
    }
    Ok(total)
}
