//! Incremental curve arithmetic.
//!
//! A `Walker` streams a word letter by letter and maintains, exactly:
//!
//! * `cur` — the Mal'cev coordinates of the prefix read so far, for every
//!   weight up to `cur_class`;
//! * `open` — for every plane of weight 2..=`top_weight`, the running
//!   doubled shoelace sum of the open prefix curve projected on that plane.
//!
//! A weight-`j` coordinate of the current prefix is the area of its *closed*
//! class-(j-1) curve divided by the plane constant. Closing means walking
//! the inverted canonical word of the current lower coordinates on a fork of
//! the walker and reading the fork's completed open sums. The per-prefix
//! results are identical to recomputing each prefix from scratch; only the
//! bookkeeping is incremental.
//!
//! Two closing-tail shortcuts keep the per-letter cost flat. A block `W^n`
//! whose weight equals the curve class multiplies by central elements, so
//! every repeat of `W` traces the previous repeat translated by the same
//! coordinate vector; and a generator run on a class-<=2 curve moves with
//! constant coordinate velocity. In both cases each repeat changes every
//! open sum by the same amount (the cross term of a translation against the
//! repeat's net displacement vanishes because the two are equal), so one
//! walked repeat determines the whole block. Both facts are exercised
//! against the from-scratch reference implementation in the test suite.

use super::context::GeoContext;
use super::GeoError;
use crate::words::Letter;

pub(crate) struct Walker<'c> {
    ctx: &'c GeoContext,
    /// Coordinates are maintained for weights 1..=cur_class.
    cur_class: usize,
    /// Open sums are maintained for weights 2..=top_weight.
    top_weight: usize,
    cur: Vec<i64>,
    /// `open[j-2][i]` for the i-th plane of weight j.
    open: Vec<Vec<i128>>,
}

fn cross(x0: i64, y0: i64, x1: i64, y1: i64) -> i128 {
    x0 as i128 * y1 as i128 - x1 as i128 * y0 as i128
}

impl<'c> Walker<'c> {
    pub(crate) fn new(ctx: &'c GeoContext, cur_class: usize, top_weight: usize) -> Self {
        debug_assert!(cur_class >= 1 && cur_class <= top_weight);
        debug_assert!(top_weight <= cur_class + 1 && top_weight <= ctx.class());
        let cur = vec![0i64; ctx.basis().count_up_to(cur_class)];
        let open = (2..=top_weight)
            .map(|j| vec![0i128; ctx.planes(j).len()])
            .collect();
        Walker {
            ctx,
            cur_class,
            top_weight,
            cur,
            open,
        }
    }

    pub(crate) fn current(&self) -> &[i64] {
        &self.cur
    }

    /// Extends the curve by one letter and refreshes every maintained level.
    pub(crate) fn step(&mut self, letter: Letter) -> Result<(), GeoError> {
        assert!(letter.gen < self.ctx.rank(), "letter outside alphabet");
        let old = self.cur.clone();
        self.cur[letter.gen] += if letter.positive { 1 } else { -1 };
        for j in 2..=self.top_weight {
            // Plane axes touch only weights 1 and j-1, which are final by
            // the time weight j is processed.
            for (i, plane) in self.ctx.planes(j).iter().enumerate() {
                self.open[j - 2][i] += cross(
                    old[plane.x_gen],
                    old[plane.y_pos],
                    self.cur[plane.x_gen],
                    self.cur[plane.y_pos],
                );
            }
            if j <= self.cur_class {
                let top = self.close_at(j)?;
                let range = self.ctx.basis().stratum_range(j);
                self.cur[range].copy_from_slice(&top);
            }
        }
        Ok(())
    }

    /// Weight-`j` coordinates of the current prefix: fork the walker, close
    /// the class-(j-1) curve, and divide each completed plane area by its
    /// constant.
    pub(crate) fn close_at(&self, j: usize) -> Result<Vec<i64>, GeoError> {
        debug_assert!(j >= 2 && j <= self.top_weight && j <= self.cur_class + 1);
        let mut fork = Walker {
            ctx: self.ctx,
            cur_class: j - 1,
            top_weight: j,
            cur: self.cur[..self.ctx.basis().count_up_to(j - 1)].to_vec(),
            open: self.open[..j - 1].to_vec(),
        };
        fork.walk_closing_tail()?;
        debug_assert!(
            fork.cur.iter().all(|&v| v == 0),
            "closing tail must return the curve to the origin"
        );
        let planes = self.ctx.planes(j);
        let constants = self.ctx.constants(j);
        let stratum = self.ctx.basis().stratum_range(j);
        let mut values = Vec::with_capacity(planes.len());
        for (i, (&dc, pos)) in constants.iter().zip(stratum).enumerate() {
            let area = fork.open[j - 2][i];
            if area % dc as i128 != 0 {
                return Err(GeoError::NonDivisibleArea {
                    element: self.ctx.basis().elements()[pos].render(),
                    doubled_area: area,
                    doubled_constant: dc,
                });
            }
            let t = area / dc as i128;
            values.push(i64::try_from(t).map_err(|_| GeoError::CoordinateOverflow)?);
        }
        Ok(values)
    }

    /// Walks the inverted canonical word of the current coordinates, block
    /// by block: weights ascending, Hall order reversed within a weight,
    /// exponents negated.
    fn walk_closing_tail(&mut self) -> Result<(), GeoError> {
        let exponents = self.cur.clone();
        for weight in 1..=self.cur_class {
            for pos in self.ctx.basis().stratum_range(weight).rev() {
                self.walk_block(pos, weight, -exponents[pos])?;
            }
        }
        Ok(())
    }

    /// Walks `word(K_pos)^exponent` on this walker.
    fn walk_block(&mut self, pos: usize, weight: usize, exponent: i64) -> Result<(), GeoError> {
        if exponent == 0 {
            return Ok(());
        }
        let letters = self.ctx.block_letters(pos, exponent > 0);
        let reps = exponent.unsigned_abs();
        let shortcut = weight == self.cur_class || (weight == 1 && self.cur_class == 2);
        if !shortcut || reps == 1 {
            for _ in 0..reps {
                for &l in letters {
                    self.step(l)?;
                }
            }
            return Ok(());
        }
        let cur_before = self.cur.clone();
        let open_before = self.open.clone();
        for &l in letters {
            self.step(l)?;
        }
        let extra = (reps - 1) as i128;
        for (level, before) in self.open.iter_mut().zip(&open_before) {
            for (v, b) in level.iter_mut().zip(before) {
                *v += (*v - b) * extra;
            }
        }
        let extra = (reps - 1) as i64;
        for (v, b) in self.cur.iter_mut().zip(&cur_before) {
            let delta = *v - b;
            *v = v
                .checked_add(
                    delta
                        .checked_mul(extra)
                        .ok_or(GeoError::CoordinateOverflow)?,
                )
                .ok_or(GeoError::CoordinateOverflow)?;
        }
        Ok(())
    }
}
