//! Asymmetric insertion/deletion channel on `Z^n`.
//!
//! A transmitted word `x` is received as `y = x + e`, where the positive
//! entries of `e` count insertions and the negative ones deletions. Errors are
//! drawn uniformly from the correctable shape `S_n(r+, r-)`, or, in overload
//! mode, uniformly from `S_n(r+ + e, r- + e) \ S_n(r+, r-)`.
//!
//! Randomness is ChaCha8 seeded with the user seed. Trials run in chunks of
//! [`CHUNK`]; chunk `c` uses stream `c` of that seed, so the statistics do
//! not depend on the number of threads.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::codes::{decode_radius_r, Code, Decoded, SyndromeTable};
use crate::error::{Error, Result};
use crate::geometry::Shape;
use crate::limits::Limits;

pub const CHUNK: u64 = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ErrorMode {
    UniformInShape,
    Overload { extra: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChannelConfig {
    pub r_plus: u32,
    pub r_minus: u32,
    pub mode: ErrorMode,
    pub seed: u64,
    pub trials: u64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct TrialStats {
    pub trials: u64,
    pub corrected: u64,
    pub detected: u64,
    pub miscorrected: u64,
}

impl TrialStats {
    fn merge(self, o: TrialStats) -> TrialStats {
        TrialStats {
            trials: self.trials + o.trials,
            corrected: self.corrected + o.corrected,
            detected: self.detected + o.detected,
            miscorrected: self.miscorrected + o.miscorrected,
        }
    }
}

/// The enumerated error patterns for a configuration.
#[derive(Debug, Clone)]
pub struct ErrorSampler {
    patterns: Vec<Vec<i64>>,
}

impl ErrorSampler {
    pub fn new(n: usize, cfg: &ChannelConfig, limits: &Limits) -> Result<Self> {
        let inner = Shape::new(n, cfg.r_plus, cfg.r_minus);
        let patterns: Vec<Vec<i64>> = match cfg.mode {
            ErrorMode::UniformInShape => inner.points(limits)?.into_iter().map(|p| p.0).collect(),
            ErrorMode::Overload { extra } => {
                let outer = Shape::new(n, cfg.r_plus + extra, cfg.r_minus + extra);
                outer
                    .points(limits)?
                    .into_iter()
                    .map(|p| p.0)
                    .filter(|p| !inner.contains(p))
                    .collect()
            }
        };
        if patterns.is_empty() {
            return Err(Error::EmptyOverloadSet);
        }
        Ok(ErrorSampler { patterns })
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn patterns(&self) -> &[Vec<i64>] {
        &self.patterns
    }

    pub fn sample(&self, rng: &mut dyn RngCore) -> &[i64] {
        &self.patterns[rng.random_range(0..self.patterns.len())]
    }
}

/// `y = x + e` with `e` drawn by the sampler.
pub fn apply_errors(x: &[i64], sampler: &ErrorSampler, rng: &mut dyn RngCore) -> (Vec<i64>, Vec<i64>) {
    let e = sampler.sample(rng).to_vec();
    let y = x.iter().zip(&e).map(|(a, b)| a + b).collect();
    (y, e)
}

/// Sends random codewords through the channel and classifies each decode.
pub fn run_simulation<C: Code + Sync + ?Sized>(
    code: &C,
    table: &SyndromeTable,
    cfg: &ChannelConfig,
    limits: &Limits,
    threads: usize,
) -> Result<TrialStats> {
    if table.r_plus() < cfg.r_plus || table.r_minus() < cfg.r_minus {
        return Err(Error::RadiusMismatch {
            table_plus: table.r_plus(),
            table_minus: table.r_minus(),
            plus: cfg.r_plus,
            minus: cfg.r_minus,
        });
    }
    if cfg.trials == 0 {
        return Ok(TrialStats::default());
    }
    let sampler = ErrorSampler::new(code.length(), cfg, limits)?;
    let chunks = cfg.trials.div_ceil(CHUNK);
    let run_chunk = |c: u64| -> Result<TrialStats> {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(c);
        let count = CHUNK.min(cfg.trials - c * CHUNK);
        let mut stats = TrialStats::default();
        for _ in 0..count {
            let x = code.reduce(code.random_codeword(&mut rng));
            let (y, _) = apply_errors(&x, &sampler, &mut rng);
            let y = code.reduce(y);
            stats.trials += 1;
            match decode_radius_r(table, code, &y)? {
                Decoded::Corrected { codeword, .. } if codeword == x => stats.corrected += 1,
                Decoded::Corrected { .. } => stats.miscorrected += 1,
                Decoded::Detected => stats.detected += 1,
            }
        }
        Ok(stats)
    };
    let results: Vec<Result<TrialStats>> = if threads <= 1 {
        (0..chunks).map(run_chunk).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::InvalidParameter(e.to_string()))?;
        pool.install(|| (0..chunks).into_par_iter().map(run_chunk).collect())
    };
    results
        .into_iter()
        .try_fold(TrialStats::default(), |acc, r| Ok(acc.merge(r?)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::FiniteCode;

    fn cfg(rp: u32, rm: u32, mode: ErrorMode, trials: u64) -> ChannelConfig {
        ChannelConfig {
            r_plus: rp,
            r_minus: rm,
            mode,
            seed: 7,
            trials,
        }
    }

    fn singer7() -> (FiniteCode, SyndromeTable) {
        let code = FiniteCode::new(7, &[1, 3]).unwrap();
        let table =
            SyndromeTable::build(code.syndrome_map(), Shape::ball(2, 1), &Limits::default()).unwrap();
        (code, table)
    }

    #[test]
    fn within_radius_always_corrects() {
        let (code, table) = singer7();
        let c = cfg(1, 1, ErrorMode::UniformInShape, 5000);
        let s = run_simulation(&code, &table, &c, &Limits::default(), 1).unwrap();
        assert_eq!(s.corrected, 5000);
        let par = run_simulation(&code, &table, &c, &Limits::default(), 3).unwrap();
        assert_eq!(s, par);
    }

    #[test]
    fn overload_on_perfect_code_never_detects() {
        let (code, table) = singer7();
        let c = cfg(1, 1, ErrorMode::Overload { extra: 1 }, 2000);
        let s = run_simulation(&code, &table, &c, &Limits::default(), 1).unwrap();
        assert_eq!(s.detected, 0);
        assert!(s.miscorrected > 0);
        assert_eq!(s.corrected + s.miscorrected, 2000);
        let sampler = ErrorSampler::new(2, &c, &Limits::default()).unwrap();
        assert_eq!(sampler.len(), 12);
    }

    #[test]
    fn edge_cases() {
        let (code, table) = singer7();
        let zero = run_simulation(&code, &table, &cfg(1, 1, ErrorMode::UniformInShape, 0), &Limits::default(), 1)
            .unwrap();
        assert_eq!(zero, TrialStats::default());
        assert!(matches!(
            run_simulation(&code, &table, &cfg(2, 1, ErrorMode::UniformInShape, 5), &Limits::default(), 1),
            Err(Error::RadiusMismatch { .. })
        ));
        assert_eq!(
            ErrorSampler::new(2, &cfg(1, 1, ErrorMode::Overload { extra: 0 }, 1), &Limits::default())
                .unwrap_err(),
            Error::EmptyOverloadSet
        );
    }
}
