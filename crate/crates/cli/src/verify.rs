//! The cross-validation harness: random words (half the trials get a
//! null-move-equivalent partner) pushed through both coordinate routes, with
//! every disagreement persisted in reproducible form.

use nilgeo::basis::relators;
use nilgeo::geometry::{coords_geometric, GeoError};
use nilgeo::magnus::oracle_coords;
use nilgeo::words::{null_move, random_word, Alphabet, Word};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// One trial whose two solvers returned different answers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Disagreement {
    pub trial: u64,
    pub word: String,
    pub other: String,
    pub geometric: Vec<i64>,
    pub geometric_other: Vec<i64>,
    pub geometric_equal: bool,
    pub oracle: Vec<i64>,
    pub oracle_other: Vec<i64>,
    pub oracle_equal: bool,
}

/// One trial that failed with a solver error (for example a non-divisible
/// projection area, which witnesses a failure of the area criterion).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialError {
    pub trial: u64,
    pub word: String,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub r: usize,
    pub k: usize,
    pub trials: u64,
    pub seed: u64,
    pub max_len: usize,
    pub agreements: u64,
    pub disagreements: Vec<Disagreement>,
    pub errors: Vec<TrialError>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty() && self.errors.is_empty()
    }
}

fn tuple(c: &nilgeo::geometry::Coords) -> Vec<i64> {
    c.presentation_values()
}

/// Runs the harness. Each trial derives its own seed as `seed + index`, so
/// reports are deterministic and trials independent.
pub fn run_verification(
    r: usize,
    k: usize,
    trials: u64,
    max_len: usize,
    seed: u64,
) -> Result<VerificationReport, GeoError> {
    // Fail fast on unsupported (r, k) instead of erroring every trial.
    coords_geometric(&Word::empty(), r, k)?;
    let alphabet = Alphabet::new(r).expect("rank validated by coords_geometric");
    let rels = relators(r, k)?;
    let mut report = VerificationReport {
        r,
        k,
        trials,
        seed,
        max_len,
        agreements: 0,
        disagreements: Vec::new(),
        errors: Vec::new(),
    };
    for trial in 0..trials {
        let tseed = seed.wrapping_add(trial);
        let mut rng = ChaCha8Rng::seed_from_u64(tseed);
        let len = rng.gen_range(0..=max_len);
        let w = random_word(rng.gen(), len, &alphabet);
        let v = if trial % 2 == 1 {
            null_move(rng.gen(), &w, &rels)
        } else {
            let len = rng.gen_range(0..=max_len);
            random_word(rng.gen(), len, &alphabet)
        };
        let geo_w = coords_geometric(&w, r, k);
        let geo_v = coords_geometric(&v, r, k);
        let (geo_w, geo_v) = match (geo_w, geo_v) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) => {
                report.errors.push(TrialError {
                    trial,
                    word: w.render(),
                    error: e.to_string(),
                });
                continue;
            }
            (_, Err(e)) => {
                report.errors.push(TrialError {
                    trial,
                    word: v.render(),
                    error: e.to_string(),
                });
                continue;
            }
        };
        let oracle_w = match oracle_coords(&w, r, k) {
            Ok(c) => c,
            Err(e) => {
                report.errors.push(TrialError {
                    trial,
                    word: w.render(),
                    error: e.to_string(),
                });
                continue;
            }
        };
        let oracle_v = match oracle_coords(&v, r, k) {
            Ok(c) => c,
            Err(e) => {
                report.errors.push(TrialError {
                    trial,
                    word: v.render(),
                    error: e.to_string(),
                });
                continue;
            }
        };
        let geometric_equal = geo_w == geo_v;
        let oracle_equal = oracle_w == oracle_v;
        if geo_w == oracle_w && geo_v == oracle_v && geometric_equal == oracle_equal {
            report.agreements += 1;
        } else {
            report.disagreements.push(Disagreement {
                trial,
                word: w.render(),
                other: v.render(),
                geometric: tuple(&geo_w),
                geometric_other: tuple(&geo_v),
                geometric_equal,
                oracle: tuple(&oracle_w),
                oracle_other: tuple(&oracle_v),
                oracle_equal,
            });
        }
    }
    debug_assert_eq!(
        report.agreements + report.disagreements.len() as u64 + report.errors.len() as u64,
        trials
    );
    Ok(report)
}
