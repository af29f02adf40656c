//! The geometric route: Mal'cev coordinates from oriented areas.
//!
//! A word is drawn on the Cayley graph of the class-(m) group as the path of
//! its prefix coordinates. To read the class-k coordinates of a word, draw it
//! at class k-1, close the curve by appending the inverse of the canonical
//! word of its class-(k-1) coordinates, and for every weight-k basis element
//! `K = [u, s]` project the loop onto the plane spanned by the `s` and `u`
//! coordinate axes. The oriented area of that loop is `C_K * T_K`, where
//! `C_K` is the area the basis word `K` itself encloses on its own plane.
//!
//! Closing with the *inverted canonical word of the word's own lower
//! coordinates* (rather than the canonical word of the inverse element's
//! coordinates) is what makes the extracted exponents match the canonical
//! form: the closure of a canonical word then retraces every sub-top block
//! exactly, so only the top-weight loops contribute area.

mod context;
pub mod reference;
mod walker;

pub(crate) use context::GeoContext;

use crate::basis::{hall_basis, left_normed_decompose, BasisElement, BasisError};
use crate::words::{concat, exponent_sums, invert, Alphabet, Letter, Word};
use thiserror::Error;
use walker::Walker;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeoError {
    #[error(transparent)]
    Basis(#[from] BasisError),
    #[error("projection area {doubled_area} on plane {element} is not an integer multiple of the doubled constant {doubled_constant}; the area criterion fails here")]
    NonDivisibleArea {
        element: String,
        doubled_area: i128,
        doubled_constant: i64,
    },
    #[error("projection constant of {element} is zero; the plane carries no area signal")]
    ZeroProjectionConstant { element: String },
    #[error("class mismatch: expected {expected}, found {found}")]
    ClassMismatch { expected: usize, found: usize },
    #[error("coordinate tuple has {found} values but the basis has {expected}")]
    ValueLengthMismatch { expected: usize, found: usize },
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("loop is not closed: first and last points differ")]
    NotClosed,
    #[error("coordinate value overflows the supported integer range")]
    CoordinateOverflow,
}

/// Mal'cev coordinates of an element of `N_{r,k}`.
///
/// Values are stored in basis order (weight ascending, Hall order within a
/// weight). The conventional presentation puts the top-weight block first
/// and the remaining coordinates in descending order, ending at the first
/// generator; rendering follows that convention.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coords {
    rank: usize,
    class: usize,
    values: Vec<i64>,
}

impl Coords {
    pub fn from_values(rank: usize, class: usize, values: Vec<i64>) -> Result<Self, GeoError> {
        let basis = hall_basis(rank, class)?;
        if values.len() != basis.len() {
            return Err(GeoError::ValueLengthMismatch {
                expected: basis.len(),
                found: values.len(),
            });
        }
        Ok(Coords {
            rank,
            class,
            values,
        })
    }

    pub fn zero(rank: usize, class: usize) -> Result<Self, GeoError> {
        let basis = hall_basis(rank, class)?;
        Ok(Coords {
            rank,
            class,
            values: vec![0; basis.len()],
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn class(&self) -> usize {
        self.class
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// Value of a single basis element's coordinate.
    pub fn get(&self, e: &BasisElement) -> Option<i64> {
        let basis = hall_basis(self.rank, self.class).ok()?;
        basis.position(e).map(|p| self.values[p])
    }

    /// The canonical epimorphism onto the class-(k-1) group: drop the
    /// top-weight block.
    pub fn project_class(&self) -> Result<Coords, GeoError> {
        if self.class < 2 {
            return Err(GeoError::ClassMismatch {
                expected: 2,
                found: self.class,
            });
        }
        let basis = hall_basis(self.rank, self.class)?;
        let keep = basis.count_up_to(self.class - 1);
        Coords::from_values(self.rank, self.class - 1, self.values[..keep].to_vec())
    }

    /// Values in presentation order: top-weight stratum ascending, then all
    /// lower coordinates descending down to the first generator.
    pub fn presentation_values(&self) -> Vec<i64> {
        let basis = hall_basis(self.rank, self.class).expect("validated at construction");
        let split = if self.class == 1 {
            0
        } else {
            basis.count_up_to(self.class - 1)
        };
        let mut out: Vec<i64> = self.values[split..].to_vec();
        out.extend(self.values[..split].iter().rev());
        out
    }

    /// Parenthesized tuple in presentation order, e.g. `(8, 10, 5, 4, 1)`.
    pub fn tuple_string(&self) -> String {
        let items: Vec<String> = self
            .presentation_values()
            .iter()
            .map(|v| v.to_string())
            .collect();
        format!("({})", items.join(", "))
    }

    /// Labeled association form in presentation order, e.g.
    /// `{[b,a]: 1, b: 2, a: 2}`.
    pub fn labeled_string(&self) -> String {
        let basis = hall_basis(self.rank, self.class).expect("validated at construction");
        let split = if self.class == 1 {
            0
        } else {
            basis.count_up_to(self.class - 1)
        };
        let mut parts: Vec<String> = Vec::with_capacity(self.values.len());
        for i in split..self.values.len() {
            parts.push(format!(
                "{}: {}",
                basis.elements()[i].render(),
                self.values[i]
            ));
        }
        for i in (0..split).rev() {
            parts.push(format!(
                "{}: {}",
                basis.elements()[i].render(),
                self.values[i]
            ));
        }
        format!("{{{}}}", parts.join(", "))
    }
}

impl std::fmt::Display for Coords {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.tuple_string())
    }
}

/// The lattice path of a word's prefixes at a given class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Curve {
    rank: usize,
    class: usize,
    points: Vec<Coords>,
}

impl Curve {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn class(&self) -> usize {
        self.class
    }

    pub fn points(&self) -> &[Coords] {
        &self.points
    }
}

/// A projected curve: integer points in a coordinate plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarLoop {
    points: Vec<(i64, i64)>,
}

impl PlanarLoop {
    pub fn new(points: Vec<(i64, i64)>) -> Self {
        PlanarLoop { points }
    }

    pub fn points(&self) -> &[(i64, i64)] {
        &self.points
    }

    pub fn is_closed(&self) -> bool {
        match (self.points.first(), self.points.last()) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        }
    }

    /// Segments that actually move in this plane.
    pub fn nondegenerate_segments(&self) -> usize {
        self.points
            .windows(2)
            .filter(|pair| pair[0] != pair[1])
            .count()
    }
}

/// Twice an oriented area. Shoelace sums of integer points are integers while
/// the enclosed area may be a half-integer, so the doubled value is stored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AreaValue {
    doubled: i128,
}

impl AreaValue {
    pub fn from_doubled(doubled: i128) -> Self {
        AreaValue { doubled }
    }

    pub fn doubled(&self) -> i128 {
        self.doubled
    }
}

impl std::fmt::Display for AreaValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.doubled % 2 == 0 {
            write!(f, "{}", self.doubled / 2)
        } else {
            write!(f, "{}/2", self.doubled)
        }
    }
}

fn assert_rank(w: &Word, r: usize) {
    assert!(w.min_rank() <= r, "word uses generators beyond rank {r}");
}

/// Mal'cev coordinates of `[w]_k`, extracted geometrically: the class-(k-1)
/// coordinates recursively, then one top-weight value per plane from the
/// closure's projected area divided by the plane constant.
pub fn coords_geometric(w: &Word, r: usize, k: usize) -> Result<Coords, GeoError> {
    assert!(r >= 1 && k >= 1, "coords_geometric requires r, k >= 1");
    assert_rank(w, r);
    if k == 1 {
        let sums = exponent_sums(w, &Alphabet::new(r).expect("rank validated"));
        return Coords::from_values(r, 1, sums);
    }
    let ctx = GeoContext::get(r, k)?;
    let mut walker = Walker::new(&ctx, k - 1, k);
    for &l in w.letters() {
        walker.step(l)?;
    }
    let mut values = walker.current().to_vec();
    let top = walker.close_at(k)?;
    values.extend(top);
    Coords::from_values(r, k, values)
}

/// The canonical word of a coordinate tuple: heaviest block first, Hall order
/// within a block, negative exponents as inverted words.
pub fn canonical_word(g: &Coords) -> Word {
    let basis = hall_basis(g.rank(), g.class()).expect("validated at construction");
    let mut letters: Vec<Letter> = Vec::new();
    for weight in (1..=g.class()).rev() {
        for pos in basis.stratum_range(weight) {
            let e = g.values()[pos];
            if e == 0 {
                continue;
            }
            let base = crate::basis::commutator_word(&basis.elements()[pos]);
            let base = if e > 0 { base } else { invert(&base) };
            for _ in 0..e.unsigned_abs() {
                letters.extend_from_slice(base.letters());
            }
        }
    }
    Word::from_letters(letters)
}

/// `w` extended so that its class-(k-1) curve becomes a loop: the word is
/// followed by the inverse of the canonical word of its class-(k-1)
/// coordinates.
pub fn closure_word(w: &Word, r: usize, k: usize) -> Result<Word, GeoError> {
    assert!(k >= 2, "closure is defined for class k >= 2");
    let lower = coords_geometric(w, r, k - 1)?;
    Ok(concat(w, &invert(&canonical_word(&lower))))
}

/// The prefix curve of `w` on the Cayley graph of the class-`m` group.
pub fn draw_curve(w: &Word, r: usize, m: usize) -> Result<Curve, GeoError> {
    assert!(r >= 1 && m >= 1, "draw_curve requires r, m >= 1");
    assert_rank(w, r);
    let ctx = GeoContext::get(r, m)?;
    let mut walker = Walker::new(&ctx, m, m);
    let mut points = Vec::with_capacity(w.len() + 1);
    points.push(Coords::from_values(r, m, walker.current().to_vec())?);
    for &l in w.letters() {
        walker.step(l)?;
        points.push(Coords::from_values(r, m, walker.current().to_vec())?);
    }
    Ok(Curve {
        rank: r,
        class: m,
        points,
    })
}

/// Projects a class-(weight(K)-1) curve onto the plane of `K = [u, s]`:
/// x is the `s` generator coordinate, y is the `u` coordinate.
pub fn project_curve(c: &Curve, k_elem: &BasisElement) -> Result<PlanarLoop, GeoError> {
    let (u, s) = left_normed_decompose(k_elem)?;
    let expected = k_elem.weight() - 1;
    if c.class() != expected {
        return Err(GeoError::ClassMismatch {
            expected,
            found: c.class(),
        });
    }
    let basis = hall_basis(c.rank(), c.class())?;
    let u_pos = basis
        .position(&u)
        .ok_or_else(|| BasisError::UnknownElement(u.render()))?;
    let points = c
        .points()
        .iter()
        .map(|p| (p.values()[s], p.values()[u_pos]))
        .collect();
    Ok(PlanarLoop::new(points))
}

/// Doubled oriented (shoelace) area of a closed polygonal loop;
/// counterclockwise is positive.
pub fn doubled_area(poly: &PlanarLoop) -> Result<AreaValue, GeoError> {
    if !poly.is_closed() {
        return Err(GeoError::NotClosed);
    }
    let mut sum: i128 = 0;
    for pair in poly.points().windows(2) {
        let (x0, y0) = pair[0];
        let (x1, y1) = pair[1];
        sum += x0 as i128 * y1 as i128 - x1 as i128 * y0 as i128;
    }
    Ok(AreaValue::from_doubled(sum))
}

/// The normalizing constant of a plane: the area the basis word itself
/// encloses when drawn at its own curve class and projected onto its own
/// plane. The basis word's lower coordinates vanish, so its curve is already
/// a loop and no closing tail is needed.
pub fn projection_constant(k_elem: &BasisElement, r: usize) -> Result<AreaValue, GeoError> {
    let weight = k_elem.weight();
    let (_, _) = left_normed_decompose(k_elem)?;
    assert!(weight >= 2, "projection planes need weight >= 2");
    let word = crate::basis::commutator_word(k_elem);
    let curve = draw_curve(&word, r, weight - 1)?;
    let area = doubled_area(&project_curve(&curve, k_elem)?)?;
    if area.doubled() == 0 {
        return Err(GeoError::ZeroProjectionConstant {
            element: k_elem.render(),
        });
    }
    Ok(area)
}

/// Decides `[w]_k = [v]_k` by comparing geometric coordinate tuples.
pub fn equal_geometric(w: &Word, v: &Word, r: usize, k: usize) -> Result<bool, GeoError> {
    Ok(coords_geometric(w, r, k)? == coords_geometric(v, r, k)?)
}

/// Group multiplication through canonical words.
pub fn group_mul(g: &Coords, h: &Coords) -> Result<Coords, GeoError> {
    if g.rank() != h.rank() {
        return Err(GeoError::RankMismatch {
            expected: g.rank(),
            found: h.rank(),
        });
    }
    if g.class() != h.class() {
        return Err(GeoError::ClassMismatch {
            expected: g.class(),
            found: h.class(),
        });
    }
    let word = concat(&canonical_word(g), &canonical_word(h));
    coords_geometric(&word, g.rank(), g.class())
}

/// True when the curve returns to its starting point.
pub fn is_closed(c: &Curve) -> bool {
    match (c.points().first(), c.points().last()) {
        (Some(a), Some(b)) => a == b,
        _ => true,
    }
}

#[cfg(test)]
mod tests;
