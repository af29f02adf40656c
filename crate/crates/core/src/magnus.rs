//! The Magnus-embedding oracle: exact equality and coordinates in `N_{r,k}`
//! through the degree-`k` truncation of the free associative ring `Z<x_1..x_r>`.
//!
//! Each generator maps to `1 + x_i`, its inverse to the alternating geometric
//! series truncated at degree `k`. Two words are equal in the class-`k`
//! quotient exactly when their images agree, because the k-th dimension
//! subgroup of a free group is the (k+1)-st lower central term. Everything is
//! exact: coefficients are arbitrary-precision integers.

use crate::basis::{hall_basis, BasisElement};
use crate::geometry::Coords;
use crate::words::{invert, Word};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MagnusError {
    #[error("degree bounds differ: {0} vs {1}")]
    DegreeBoundMismatch(usize, usize),
    #[error("degree-{degree} component is not an integral combination of Hall Lie elements ({detail}); this indicates an implementation bug")]
    NonIntegralSolve { degree: usize, detail: String },
}

/// A noncommutative monomial: a sequence of generator indices. Ordered by
/// degree first, then lexicographically, so map iteration is graded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial(pub Vec<usize>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// An integer polynomial in noncommuting variables, truncated at a total
/// degree bound. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedPoly {
    bound: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl TruncatedPoly {
    pub fn zero(bound: usize) -> Self {
        TruncatedPoly {
            bound,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(bound: usize) -> Self {
        let mut p = Self::zero(bound);
        p.terms.insert(Monomial::unit(), BigInt::one());
        p
    }

    /// The single variable `x_gen`.
    pub fn var(gen: usize, bound: usize) -> Self {
        assert!(bound >= 1, "variable does not fit in a degree-0 truncation");
        let mut p = Self::zero(bound);
        p.terms.insert(Monomial(vec![gen]), BigInt::one());
        p
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigInt> {
        &self.terms
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::unit())
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() || m.degree() > self.bound {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.bound, other.bound, "degree bounds differ");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        TruncatedPoly {
            bound: self.bound,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.bound, other.bound, "degree bounds differ");
        let mut out = Self::zero(self.bound);
        for (m1, c1) in &self.terms {
            if m1.degree() > self.bound {
                continue;
            }
            for (m2, c2) in &other.terms {
                if m1.degree() + m2.degree() > self.bound {
                    break; // graded order: all later m2 are at least this long
                }
                let mut factors = m1.0.clone();
                factors.extend_from_slice(&m2.0);
                out.add_term(Monomial(factors), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, n: u64) -> Self {
        let mut result = Self::one(self.bound);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Terms of exactly the given degree.
    pub fn homogeneous_part(&self, degree: usize) -> Vec<(Monomial, BigInt)> {
        self.terms
            .range(Monomial(vec![0; degree])..)
            .take_while(|(m, _)| m.degree() == degree)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect()
    }

    /// Smallest degree with a nonzero term in `self - 1`, if any.
    pub fn lowest_nonunit_degree(&self) -> Option<usize> {
        self.terms
            .iter()
            .find(|(m, c)| !(m.degree() == 0 && c.is_one()))
            .map(|(m, _)| m.degree())
    }
}

impl fmt::Display for TruncatedPoly {
    /// Deterministic rendering in graded lexicographic order, variables named
    /// after the default alphabet: `1 + ab - ba`, `1 - 2·a`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let negative = c.is_negative();
            let abs = c.abs();
            if first {
                if negative {
                    f.write_str("-")?;
                }
                first = false;
            } else if negative {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let name: String = m.0.iter().map(|&g| (b'a' + g as u8) as char).collect();
            if m.degree() == 0 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{name}")?;
            } else {
                write!(f, "{abs}·{name}")?;
            }
        }
        Ok(())
    }
}

/// Checked product; the operands must share a degree bound.
pub fn poly_mul(p: &TruncatedPoly, q: &TruncatedPoly) -> Result<TruncatedPoly, MagnusError> {
    if p.bound() != q.bound() {
        return Err(MagnusError::DegreeBoundMismatch(p.bound(), q.bound()));
    }
    Ok(p.mul(q))
}

fn letter_poly(gen: usize, positive: bool, k: usize) -> TruncatedPoly {
    let mut p = TruncatedPoly::one(k);
    if positive {
        p = p.add(&TruncatedPoly::var(gen, k));
    } else {
        // (1 + x)^-1 truncated: 1 - x + x^2 - ... ± x^k
        let x = TruncatedPoly::var(gen, k);
        let mut power = TruncatedPoly::one(k);
        for j in 1..=k {
            power = power.mul(&x);
            p = if j % 2 == 1 {
                p.sub(&power)
            } else {
                p.add(&power)
            };
        }
    }
    p
}

/// Magnus image of a word: the product over letters of `1 + x_i` or the
/// truncated inverse series. The constant term is always 1.
pub fn eval_word(w: &Word, r: usize, k: usize) -> TruncatedPoly {
    assert!(w.min_rank() <= r, "word uses generators beyond rank {r}");
    let mut acc = TruncatedPoly::one(k);
    for l in w.letters() {
        acc = acc.mul(&letter_poly(l.gen, l.positive, k));
    }
    acc
}

fn eval_word_pow(w: &Word, exp: i64, r: usize, k: usize) -> TruncatedPoly {
    if exp >= 0 {
        eval_word(w, r, k).pow(exp as u64)
    } else {
        eval_word(&invert(w), r, k).pow(exp.unsigned_abs())
    }
}

/// Decides `[w]_k = [v]_k`, i.e. equality in the free nilpotent group of
/// rank `r` and class `k`.
pub fn equal_oracle(w: &Word, v: &Word, r: usize, k: usize) -> bool {
    eval_word(w, r, k) == eval_word(v, r, k)
}

/// The Lie-algebra image of a commutator tree: leaves to variables, brackets
/// to `UV - VU`. Homogeneous of degree equal to the weight.
pub fn hall_lie_element(e: &BasisElement, r: usize, k: usize) -> TruncatedPoly {
    assert!(e.weight() <= k, "weight exceeds truncation degree");
    let _ = r;
    match e {
        BasisElement::Leaf(g) => TruncatedPoly::var(*g, k),
        BasisElement::Comm(l, rgt) => {
            let u = hall_lie_element(l, r, k);
            let v = hall_lie_element(rgt, r, k);
            u.mul(&v).sub(&v.mul(&u))
        }
    }
}

/// Exact solve of `A·alpha = b` over the rationals, demanding an integral
/// solution. Columns index Hall Lie elements, rows index monomials.
fn solve_integral(
    columns: &[Vec<(Monomial, BigInt)>],
    target: &[(Monomial, BigInt)],
    degree: usize,
) -> Result<Vec<i64>, MagnusError> {
    let mut monomials: Vec<Monomial> = Vec::new();
    for col in columns.iter().chain(std::iter::once(&target.to_vec())) {
        for (m, _) in col {
            if !monomials.contains(m) {
                monomials.push(m.clone());
            }
        }
    }
    monomials.sort();
    let rows = monomials.len();
    let cols = columns.len();
    let mut matrix: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); cols + 1]; rows];
    for (c, col) in columns.iter().enumerate() {
        for (m, coeff) in col {
            let r = monomials.binary_search(m).unwrap();
            matrix[r][c] = BigRational::from_integer(coeff.clone());
        }
    }
    for (m, coeff) in target {
        let r = monomials.binary_search(m).unwrap();
        matrix[r][cols] = BigRational::from_integer(coeff.clone());
    }

    let mut pivot_row = 0usize;
    let mut pivots: Vec<usize> = Vec::new();
    for col in 0..cols {
        let Some(found) = (pivot_row..rows).find(|&r| !matrix[r][col].is_zero()) else {
            pivots.push(usize::MAX);
            continue;
        };
        matrix.swap(pivot_row, found);
        let inv = matrix[pivot_row][col].clone();
        for entry in matrix[pivot_row].iter_mut() {
            *entry /= inv.clone();
        }
        for r in 0..rows {
            if r != pivot_row && !matrix[r][col].is_zero() {
                let factor = matrix[r][col].clone();
                let pivot_values = matrix[pivot_row][col..=cols].to_vec();
                for (entry, pv) in matrix[r][col..=cols].iter_mut().zip(&pivot_values) {
                    *entry -= pv * &factor;
                }
            }
        }
        pivots.push(pivot_row);
        pivot_row += 1;
    }
    // Any leftover nonzero row means the target is outside the span.
    if matrix[pivot_row..].iter().any(|row| !row[cols].is_zero()) {
        return Err(MagnusError::NonIntegralSolve {
            degree,
            detail: "inconsistent linear system".into(),
        });
    }
    let mut alpha = vec![0i64; cols];
    for (c, &pr) in pivots.iter().enumerate() {
        if pr == usize::MAX {
            continue;
        }
        let value = matrix[pr][cols].clone();
        if !value.is_integer() {
            return Err(MagnusError::NonIntegralSolve {
                degree,
                detail: format!("coordinate {c} solves to {value}"),
            });
        }
        let int = value.to_integer();
        alpha[c] = i64::try_from(&int).map_err(|_| MagnusError::NonIntegralSolve {
            degree,
            detail: format!("coordinate {c} overflows i64"),
        })?;
    }
    Ok(alpha)
}

/// Mal'cev coordinates by degree peeling.
///
/// Stage `j` reads the lowest surviving homogeneous component of the Magnus
/// image, writes it in the weight-`j` Hall Lie basis, records the exponents,
/// and divides the canonical weight-`j` segment off on the right — mirroring
/// the canonical form, whose heaviest block stands leftmost. The returned
/// tuple satisfies `equal_oracle(w, canonical_word(result))`.
pub fn oracle_coords(w: &Word, r: usize, k: usize) -> Result<Coords, MagnusError> {
    let basis = hall_basis(r, k).expect("oracle_coords requires a desk-scale basis");
    let mut values = vec![0i64; basis.len()];
    let mut residual = eval_word(w, r, k);
    for j in 1..=k {
        if let Some(low) = residual.lowest_nonunit_degree() {
            debug_assert!(
                low >= j,
                "peeling left a term of degree {low} before stage {j}"
            );
        }
        let part = residual.homogeneous_part(j);
        let stratum = basis.stratum(j);
        let alpha = if part.is_empty() {
            vec![0i64; stratum.len()]
        } else {
            let columns: Vec<Vec<(Monomial, BigInt)>> = stratum
                .iter()
                .map(|e| hall_lie_element(e, r, k).homogeneous_part(j))
                .collect();
            solve_integral(&columns, &part, j)?
        };
        let range = basis.stratum_range(j);
        let mut divisor = TruncatedPoly::one(k);
        for (e, &a) in stratum.iter().zip(&alpha).rev() {
            if a != 0 {
                let word = crate::basis::commutator_word(e);
                divisor = divisor.mul(&eval_word_pow(&word, -a, r, k));
            }
        }
        values[range].copy_from_slice(&alpha);
        if !divisor.is_one() {
            residual = residual.mul(&divisor);
        }
        debug_assert!(
            residual.homogeneous_part(j).is_empty(),
            "stage {j} failed to clear its degree"
        );
    }
    if !residual.is_one() {
        return Err(MagnusError::NonIntegralSolve {
            degree: k,
            detail: "residual is not the unit after peeling all classes".into(),
        });
    }
    Ok(Coords::from_values(r, k, values).expect("peeled values match the basis length"))
}
