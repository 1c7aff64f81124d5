//! Seeded random texts and the empirical scaling probes.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::anchored::anchored_cadences;
use crate::cadence3::{detect_3cadence_with, ExactOptions, Mode};
use crate::exec::Exec;
use crate::text::Text;

/// The `k`-th symbol of an alphabet of `size` symbols: `A..Z` up to 26,
/// `A..Za..z` up to 52, raw byte values beyond that.
pub fn alphabet_symbol(k: usize, size: usize) -> u8 {
    debug_assert!(k < size && size <= 256);
    match size {
        0..=26 => b'A' + k as u8,
        27..=52 if k < 26 => b'A' + k as u8,
        27..=52 => b'a' + (k - 26) as u8,
        _ => k as u8,
    }
}

/// Seed for one generated text, so every (length, trial) cell is independent
/// of how many others are run.
pub fn derive_seed(seed: u64, len: usize, trial: usize) -> u64 {
    let mut h = seed ^ 0x9e37_79b9_7f4a_7c15;
    for v in [len as u64, trial as u64] {
        h = (h ^ v).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        h ^= h >> 31;
    }
    h
}

/// Uniform i.i.d. symbols from an alphabet of `alphabet` symbols.
pub fn random_text(len: usize, alphabet: usize, seed: u64) -> Text {
    assert!(
        (1..=256).contains(&alphabet),
        "alphabet size must be in 1..=256"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bytes: Vec<u8> = (0..len)
        .map(|_| alphabet_symbol(rng.gen_range(0..alphabet), alphabet))
        .collect();
    Text::new(bytes)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub n: usize,
    pub trials: usize,
    pub mean_comparisons: f64,
    pub comparisons_per_n: f64,
    pub mean_cell_checks: f64,
}

/// Mean symbol comparisons of the anchored pass over random texts.
pub fn anchored_scaling_probe(
    lengths: &[usize],
    alphabet: usize,
    trials: usize,
    seed: u64,
    exec: Exec,
) -> Vec<ComparisonRow> {
    lengths
        .iter()
        .map(|&n| {
            let runs = exec.map_range(trials, |t| {
                let r = anchored_cadences(&random_text(n, alphabet, derive_seed(seed, n, t)));
                (r.comparisons, r.cell_checks)
            });
            let t = trials.max(1) as f64;
            let comps: u64 = runs.iter().map(|r| r.0).sum();
            let cells: u64 = runs.iter().map(|r| r.1).sum();
            let mean = comps as f64 / t;
            ComparisonRow {
                n,
                trials,
                mean_comparisons: mean,
                comparisons_per_n: if n == 0 { 0.0 } else { mean / n as f64 },
                mean_cell_checks: cells as f64 / t,
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TimingRow {
    pub n: usize,
    pub trials: usize,
    pub mean_seconds: f64,
    /// Trials in which some symbol had a 3-cadence.
    pub found: usize,
    pub convolutions: u64,
}

/// Wall time of [`detect_3cadence_with`] over random texts. Rows run one
/// after another so timings do not compete for the pool.
pub fn detect3_timing_probe(
    lengths: &[usize],
    alphabet: usize,
    trials: usize,
    seed: u64,
    mode: Mode,
    opts: ExactOptions,
) -> Vec<TimingRow> {
    lengths
        .iter()
        .map(|&n| {
            let mut secs = 0.0;
            let mut found = 0;
            let mut convolutions = 0;
            for t in 0..trials {
                let text = random_text(n, alphabet, derive_seed(seed, n, t));
                let start = Instant::now();
                let report = detect_3cadence_with(&text, mode, opts);
                secs += start.elapsed().as_secs_f64();
                found += report.any() as usize;
                convolutions += report.counters.convolutions;
            }
            TimingRow {
                n,
                trials,
                mean_seconds: secs / trials.max(1) as f64,
                found,
                convolutions,
            }
        })
        .collect()
}
