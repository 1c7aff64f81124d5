use std::io::Write;
use std::time::Instant;

use cadence::anchored::anchored_cadences;
use cadence::cadence3::{
    detect_3cadence_with, encode_weights_to_text, encoding_sides, ExactOptions, Mode, SymbolVerdict,
};
use cadence::oracle::{brute_anchored, enumerate_cadences, TripleAP, WeightSet};
use cadence::probe::{anchored_scaling_probe, detect3_timing_probe, random_text};
use cadence::{Cadence, Exec, Text};
use serde::Serialize;

use crate::args::{AnchoredMode, Detect3Mode, ProbeArgs};
use crate::record::{symbol_label, InputDigest, Record, Sink};
use crate::Failure;

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

#[derive(Debug, Serialize)]
struct CadenceOut {
    start: usize,
    gap: usize,
    order: usize,
    symbol: String,
}

impl From<&Cadence> for CadenceOut {
    fn from(c: &Cadence) -> Self {
        CadenceOut {
            start: c.start,
            gap: c.gap,
            order: c.order,
            symbol: symbol_label(c.symbol),
        }
    }
}

#[derive(Debug, Serialize)]
struct EnumerateResult {
    k_min: usize,
    symbol: Option<String>,
    total: usize,
    cadences: Vec<CadenceOut>,
}

#[derive(Debug, Serialize)]
struct NoCounters {}

pub fn enumerate<W: Write>(
    sink: &mut Sink<W>,
    text: &Text,
    k_min: usize,
    symbol: Option<u8>,
) -> Result<(), Failure> {
    let start = Instant::now();
    let cadences: Vec<CadenceOut> = enumerate_cadences(text, k_min)
        .iter()
        .filter(|c| symbol.is_none_or(|a| c.symbol == a))
        .map(CadenceOut::from)
        .collect();
    let wall_time_ms = elapsed_ms(start);
    sink.emit(&Record {
        command: "enumerate",
        input: Some(InputDigest::of(text)),
        result: EnumerateResult {
            k_min,
            symbol: symbol.map(symbol_label),
            total: cadences.len(),
            cadences,
        },
        counters: NoCounters {},
        wall_time_ms,
    })?;
    Ok(())
}

impl From<Detect3Mode> for Mode {
    fn from(m: Detect3Mode) -> Self {
        match m {
            Detect3Mode::Thirds => Mode::Thirds,
            Detect3Mode::Exact => Mode::Exact,
            Detect3Mode::Quadratic => Mode::Quadratic,
            Detect3Mode::Brute => Mode::Brute,
        }
    }
}

#[derive(Debug, Serialize)]
struct WitnessOut {
    start: usize,
    gap: usize,
    order: usize,
}

#[derive(Debug, Serialize)]
struct VerdictOut {
    symbol: String,
    occurrences: usize,
    found: bool,
    path: cadence::cadence3::Path,
    witness: Option<WitnessOut>,
    candidate_middles: Vec<usize>,
    count: Option<u64>,
}

impl From<&SymbolVerdict> for VerdictOut {
    fn from(v: &SymbolVerdict) -> Self {
        VerdictOut {
            symbol: symbol_label(v.symbol),
            occurrences: v.occurrences,
            found: v.found,
            path: v.path,
            witness: v.witness.map(|c| WitnessOut {
                start: c.start,
                gap: c.gap,
                order: c.order,
            }),
            candidate_middles: v.candidate_middles.clone(),
            count: v.count,
        }
    }
}

#[derive(Debug, Serialize)]
struct Detect3Result {
    mode: Mode,
    found: bool,
    symbols: Vec<VerdictOut>,
}

#[derive(Debug, Default, Serialize)]
struct Detect3Counters {
    convolutions: u64,
    pairs_examined: u64,
}

pub fn detect3<W: Write>(
    sink: &mut Sink<W>,
    text: &Text,
    mode: Detect3Mode,
    count: bool,
    symbol: Option<u8>,
    exec: Exec,
) -> Result<(), Failure> {
    let opts = ExactOptions {
        exec,
        first_only: !count,
        ..ExactOptions::default()
    };
    let start = Instant::now();
    let report = detect_3cadence_with(text, mode.into(), opts);
    let wall_time_ms = elapsed_ms(start);
    let kept: Vec<&SymbolVerdict> = report
        .verdicts
        .iter()
        .filter(|v| symbol.is_none_or(|a| v.symbol == a))
        .collect();
    let counters = kept
        .iter()
        .fold(Detect3Counters::default(), |acc, v| Detect3Counters {
            convolutions: acc.convolutions + v.counters.convolutions,
            pairs_examined: acc.pairs_examined + v.counters.pairs_examined,
        });
    sink.emit(&Record {
        command: "detect3",
        input: Some(InputDigest::of(text)),
        result: Detect3Result {
            mode: report.mode,
            found: kept.iter().any(|v| v.found),
            symbols: kept.into_iter().map(VerdictOut::from).collect(),
        },
        counters,
        wall_time_ms,
    })?;
    Ok(())
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "lowercase")]
enum AnchoredModeOut {
    Sieve,
    Brute,
}

#[derive(Debug, Serialize)]
struct AnchoredResult {
    mode: AnchoredModeOut,
    smallest: Option<usize>,
    total: usize,
    anchored: Vec<usize>,
}

#[derive(Debug, Serialize)]
struct AnchoredCounters {
    comparisons: Option<u64>,
    cell_checks: Option<u64>,
}

pub fn anchored<W: Write>(
    sink: &mut Sink<W>,
    text: &Text,
    mode: AnchoredMode,
) -> Result<(), Failure> {
    let start = Instant::now();
    let (result, counters) = match mode {
        AnchoredMode::Sieve => {
            let r = anchored_cadences(text);
            (
                AnchoredResult {
                    mode: AnchoredModeOut::Sieve,
                    smallest: r.smallest,
                    total: r.anchored.len(),
                    anchored: r.anchored,
                },
                AnchoredCounters {
                    comparisons: Some(r.comparisons),
                    cell_checks: Some(r.cell_checks),
                },
            )
        }
        AnchoredMode::Brute => {
            let set = brute_anchored(text);
            (
                AnchoredResult {
                    mode: AnchoredModeOut::Brute,
                    smallest: set.first().copied(),
                    total: set.len(),
                    anchored: set,
                },
                AnchoredCounters {
                    comparisons: None,
                    cell_checks: None,
                },
            )
        }
    };
    let wall_time_ms = elapsed_ms(start);
    sink.emit(&Record {
        command: "anchored",
        input: Some(InputDigest::of(text)),
        result,
        counters,
        wall_time_ms,
    })?;
    Ok(())
}

pub fn gen<W: Write>(
    sink: &mut Sink<W>,
    len: usize,
    alphabet: usize,
    seed: u64,
) -> Result<(), Failure> {
    sink.raw(random_text(len, alphabet, seed).as_bytes())?;
    Ok(())
}

#[derive(Debug, Serialize)]
struct CollisionOut {
    position: usize,
    weights: [i64; 2],
}

#[derive(Debug, Serialize)]
struct Encode3sumResult {
    weights: Vec<i64>,
    length: usize,
    text: String,
    collisions: Vec<CollisionOut>,
    zero_triple: Option<[i64; 3]>,
    ap_triple: Option<TripleAP>,
    verify: bool,
}

pub fn encode3sum<W: Write>(
    sink: &mut Sink<W>,
    weights: &[i64],
    text_only: bool,
) -> Result<(), Failure> {
    if let Some(pos) = weights.iter().position(|&w| w == 0) {
        return Err(Failure::Usage(format!(
            "weight {} is zero; weights must be nonzero integers",
            pos + 1
        )));
    }
    let start = Instant::now();
    let set = WeightSet::from_weights(weights.to_vec());
    let enc = encode_weights_to_text(&set).map_err(|e| Failure::Usage(e.to_string()))?;
    if text_only {
        sink.raw(enc.text.as_bytes())?;
        return Ok(());
    }
    let sides = encoding_sides(&set, &enc.text);
    let wall_time_ms = elapsed_ms(start);
    sink.emit(&Record {
        command: "encode3sum",
        input: None,
        result: Encode3sumResult {
            weights: set.distinct(),
            length: enc.text.len(),
            text: String::from_utf8_lossy(enc.text.as_bytes()).into_owned(),
            collisions: enc
                .collisions
                .iter()
                .map(|c| CollisionOut {
                    position: c.position,
                    weights: [c.weights.0, c.weights.1],
                })
                .collect(),
            zero_triple: sides.zero_triple.map(|(a, b, c)| [a, b, c]),
            ap_triple: sides.ap_triple,
            verify: sides.agrees(),
        },
        counters: NoCounters {},
        wall_time_ms,
    })?;
    Ok(())
}

#[derive(Debug, Serialize)]
struct BenchAnchoredRow {
    suite: &'static str,
    n: usize,
    alphabet: usize,
    trials: usize,
    mean_comparisons: f64,
    comparisons_per_n: f64,
    mean_cell_checks: f64,
}

pub fn bench_anchored<W: Write>(
    sink: &mut Sink<W>,
    probe: &ProbeArgs,
    seed: u64,
    exec: Exec,
) -> Result<(), Failure> {
    check_probe(probe)?;
    for &n in &probe.lengths {
        let start = Instant::now();
        let row = anchored_scaling_probe(&[n], probe.alphabet, probe.trials, seed, exec).remove(0);
        let wall_time_ms = elapsed_ms(start);
        sink.emit(&Record {
            command: "bench",
            input: None,
            result: BenchAnchoredRow {
                suite: "anchored",
                n,
                alphabet: probe.alphabet,
                trials: probe.trials,
                mean_comparisons: row.mean_comparisons,
                comparisons_per_n: row.comparisons_per_n,
                mean_cell_checks: row.mean_cell_checks,
            },
            counters: NoCounters {},
            wall_time_ms,
        })?;
        sink.flush()?;
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct BenchDetect3Row {
    suite: &'static str,
    mode: Mode,
    n: usize,
    alphabet: usize,
    trials: usize,
    texts_with_cadence: usize,
    /// Excluded from the determinism contract.
    mean_seconds: f64,
    /// Ratio of `mean_seconds` to the previous row; excluded likewise.
    growth: Option<f64>,
}

#[derive(Debug, Serialize)]
struct BenchDetect3Counters {
    convolutions: u64,
}

pub fn bench_detect3<W: Write>(
    sink: &mut Sink<W>,
    probe: &ProbeArgs,
    mode: Detect3Mode,
    seed: u64,
    exec: Exec,
) -> Result<(), Failure> {
    check_probe(probe)?;
    let opts = ExactOptions {
        exec,
        ..ExactOptions::decision()
    };
    let mut previous: Option<f64> = None;
    for &n in &probe.lengths {
        let start = Instant::now();
        let row = detect3_timing_probe(&[n], probe.alphabet, probe.trials, seed, mode.into(), opts)
            .remove(0);
        let wall_time_ms = elapsed_ms(start);
        sink.emit(&Record {
            command: "bench",
            input: None,
            result: BenchDetect3Row {
                suite: "detect3",
                mode: mode.into(),
                n,
                alphabet: probe.alphabet,
                trials: probe.trials,
                texts_with_cadence: row.found,
                mean_seconds: row.mean_seconds,
                growth: previous.filter(|&p| p > 0.0).map(|p| row.mean_seconds / p),
            },
            counters: BenchDetect3Counters {
                convolutions: row.convolutions,
            },
            wall_time_ms,
        })?;
        sink.flush()?;
        previous = Some(row.mean_seconds);
    }
    Ok(())
}

fn check_probe(probe: &ProbeArgs) -> Result<(), Failure> {
    if !(1..=256).contains(&probe.alphabet) {
        return Err(Failure::Usage(format!(
            "alphabet size {} outside 1..=256",
            probe.alphabet
        )));
    }
    if probe.trials == 0 {
        return Err(Failure::Usage("trials must be at least 1".into()));
    }
    Ok(())
}
