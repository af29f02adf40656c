//! Per-(rank, class) projection tables: the Hall basis, the plane of every
//! basis element of weight >= 2, its word and inverted word, and the doubled
//! projection constants. Contexts are immutable once built and shared behind
//! an `Arc`, so concurrent readers need no coordination.

use super::{projection_constant, GeoError};
use crate::basis::{commutator_word, hall_basis, left_normed_decompose, HallBasis};
use crate::words::{invert, Letter};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// The projection plane of a basis element `K = [u, s]`: x is the generator
/// coordinate of `s`, y the coordinate of `u` in the class-(weight-1) layout.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Plane {
    pub x_gen: usize,
    pub y_pos: usize,
}

#[derive(Debug)]
pub(crate) struct GeoContext {
    rank: usize,
    class: usize,
    basis: HallBasis,
    /// Letters of each basis element's word and of its inverse, by position.
    words: Vec<(Vec<Letter>, Vec<Letter>)>,
    /// `planes[j-2]` lists the planes of the weight-`j` stratum, basis order.
    planes: Vec<Vec<Plane>>,
    /// Doubled projection constants, same shape as `planes`.
    constants: Vec<Vec<i64>>,
}

type ContextCache = Mutex<HashMap<(usize, usize), Arc<GeoContext>>>;

static CACHE: OnceLock<ContextCache> = OnceLock::new();

impl GeoContext {
    /// Cached lookup. Builds recursively (constants at weight j are measured
    /// on class-(j-1) curves) without holding the cache lock during builds.
    pub(crate) fn get(r: usize, k: usize) -> Result<Arc<GeoContext>, GeoError> {
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(ctx) = cache.lock().expect("context cache poisoned").get(&(r, k)) {
            return Ok(ctx.clone());
        }
        let built = Arc::new(GeoContext::build(r, k)?);
        let mut guard = cache.lock().expect("context cache poisoned");
        Ok(guard.entry((r, k)).or_insert(built).clone())
    }

    fn build(r: usize, k: usize) -> Result<GeoContext, GeoError> {
        let basis = hall_basis(r, k)?;
        let words = basis
            .elements()
            .iter()
            .map(|e| {
                let w = commutator_word(e);
                let inv = invert(&w);
                (w.letters().to_vec(), inv.letters().to_vec())
            })
            .collect();
        let mut planes = Vec::new();
        let mut constants = Vec::new();
        for j in 2..=k {
            let mut stratum_planes = Vec::new();
            let mut stratum_constants = Vec::new();
            for e in basis.stratum(j) {
                let (u, s) = left_normed_decompose(e)?;
                let y_pos = basis
                    .position(&u)
                    .expect("left factor of a Hall element is Hall-basic");
                stratum_planes.push(Plane { x_gen: s, y_pos });
                let c = projection_constant(e, r)?;
                let c = i64::try_from(c.doubled()).map_err(|_| GeoError::CoordinateOverflow)?;
                stratum_constants.push(c);
            }
            planes.push(stratum_planes);
            constants.push(stratum_constants);
        }
        Ok(GeoContext {
            rank: r,
            class: k,
            basis,
            words,
            planes,
            constants,
        })
    }

    pub(crate) fn rank(&self) -> usize {
        self.rank
    }

    pub(crate) fn class(&self) -> usize {
        self.class
    }

    pub(crate) fn basis(&self) -> &HallBasis {
        &self.basis
    }

    pub(crate) fn planes(&self, weight: usize) -> &[Plane] {
        &self.planes[weight - 2]
    }

    pub(crate) fn constants(&self, weight: usize) -> &[i64] {
        &self.constants[weight - 2]
    }

    /// Letters of `word(K)` for positive repeats or `word(K)^-1` otherwise.
    pub(crate) fn block_letters(&self, pos: usize, positive: bool) -> &[Letter] {
        if positive {
            &self.words[pos].0
        } else {
            &self.words[pos].1
        }
    }
}
