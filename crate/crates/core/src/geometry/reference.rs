//! From-scratch implementations of the coordinate extraction, with every
//! prefix recomputed independently and no incremental bookkeeping. Slow on
//! purpose: the test suite runs these against the streaming walker so that a
//! bug in either shows up as a mismatch. Only desk-scale words belong here.

use super::{canonical_word, Coords, GeoError};
use crate::basis::{commutator_word, hall_basis, left_normed_decompose, BasisElement, BasisError};
use crate::words::{concat, exponent_sums, invert, Alphabet, Word};

fn shoelace(points: &[(i64, i64)]) -> i128 {
    let mut sum = 0i128;
    for pair in points.windows(2) {
        let (x0, y0) = pair[0];
        let (x1, y1) = pair[1];
        sum += x0 as i128 * y1 as i128 - x1 as i128 * y0 as i128;
    }
    sum
}

/// Doubled projection constant computed entirely from scratch.
pub fn projection_constant_reference(k_elem: &BasisElement, r: usize) -> Result<i128, GeoError> {
    let (u, s) = left_normed_decompose(k_elem)?;
    let class = k_elem.weight() - 1;
    let basis = hall_basis(r, class)?;
    let u_pos = basis
        .position(&u)
        .ok_or_else(|| BasisError::UnknownElement(u.render()))?;
    let word = commutator_word(k_elem);
    let mut points = Vec::with_capacity(word.len() + 1);
    for j in 0..=word.len() {
        let prefix = Word::from_letters(word.letters()[..j].to_vec());
        let coords = coords_reference(&prefix, r, class)?;
        points.push((coords.values()[s], coords.values()[u_pos]));
    }
    if points.first() != points.last() {
        return Err(GeoError::NotClosed);
    }
    let area = shoelace(&points);
    if area == 0 {
        return Err(GeoError::ZeroProjectionConstant {
            element: k_elem.render(),
        });
    }
    Ok(area)
}

/// Direct recursive coordinate extraction: class-(k-1) coordinates, then the
/// closure drawn prefix by prefix, each prefix recomputed from scratch.
pub fn coords_reference(w: &Word, r: usize, k: usize) -> Result<Coords, GeoError> {
    if k == 1 {
        let sums = exponent_sums(w, &Alphabet::new(r).expect("rank validated"));
        return Coords::from_values(r, 1, sums);
    }
    let basis = hall_basis(r, k)?;
    let lower = coords_reference(w, r, k - 1)?;
    let closure = concat(w, &invert(&canonical_word(&lower)));
    let mut points = Vec::with_capacity(closure.len() + 1);
    for j in 0..=closure.len() {
        let prefix = Word::from_letters(closure.letters()[..j].to_vec());
        points.push(coords_reference(&prefix, r, k - 1)?);
    }
    debug_assert!(
        points.last().map(Coords::is_zero).unwrap_or(true),
        "closure must return to the origin"
    );
    let lower_basis = hall_basis(r, k - 1)?;
    let mut values = lower.values().to_vec();
    for k_elem in basis.stratum(k) {
        let (u, s) = left_normed_decompose(k_elem)?;
        let u_pos = lower_basis
            .position(&u)
            .ok_or_else(|| BasisError::UnknownElement(u.render()))?;
        let planar: Vec<(i64, i64)> = points
            .iter()
            .map(|p| (p.values()[s], p.values()[u_pos]))
            .collect();
        let area = shoelace(&planar);
        let dc = projection_constant_reference(k_elem, r)?;
        if area % dc != 0 {
            return Err(GeoError::NonDivisibleArea {
                element: k_elem.render(),
                doubled_area: area,
                doubled_constant: dc as i64,
            });
        }
        values.push(i64::try_from(area / dc).map_err(|_| GeoError::CoordinateOverflow)?);
    }
    Coords::from_values(r, k, values)
}
