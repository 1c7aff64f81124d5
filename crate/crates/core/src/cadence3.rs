//! 3-cadence detection.
//!
//! Two detectors share one occurrence index:
//!
//! * **thirds** splits the occurrences of a symbol at `n/3` and `2n/3` and asks
//!   whether a first-third position and a last-third position average to a
//!   middle-third position. That is a 3SUM instance over
//!   `L1 ∪ L3 ∪ {-2j : j ∈ L2}`, answered by one convolution. Every 3-cadence
//!   passes this test, but so do some equally spaced triples that are not
//!   cadences: in `000100100100` the triple `4, 7, 10` has gap 3 < start 4.
//! * **exact** counts the triples `(x, j, 2j - x)` with `L(j) <= x <= U(j)`
//!   (see [`Staircase`]), which are exactly the 3-cadences. Both cutoffs are
//!   nondecreasing in `j`, so a divide and conquer over the middle position
//!   turns the count into windowed convolutions.
//!
//! Symbols with few occurrences (`n_a^2 <= n log2 n`) are checked pair by pair
//! instead.

use serde::Serialize;

use crate::convolve::{convolve_counts, convolve_window, IndicatorVector, SumCounts};
use crate::exec::Exec;
use crate::oracle::{self, brute_ap_triples, TripleAP, WeightSet};
use crate::text::{Cadence, OccurrenceIndex, Text};
use crate::{CadenceError, Result};

/// Occurrences of one symbol split by thirds of the text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThirdsPartition {
    pub symbol: u8,
    pub n: usize,
    /// `3j <= n`
    pub first: Vec<usize>,
    /// `n < 3j <= 2n`
    pub middle: Vec<usize>,
    /// `3j > 2n`
    pub last: Vec<usize>,
}

pub fn thirds(text: &Text, a: u8) -> ThirdsPartition {
    thirds_of(text.len(), a, OccurrenceIndex::new(text).positions(a))
}

fn thirds_of(n: usize, a: u8, occ: &[usize]) -> ThirdsPartition {
    let mut p = ThirdsPartition {
        symbol: a,
        n,
        first: Vec::new(),
        middle: Vec::new(),
        last: Vec::new(),
    };
    for &j in occ {
        if 3 * j <= n {
            p.first.push(j);
        } else if 3 * j <= 2 * n {
            p.middle.push(j);
        } else {
            p.last.push(j);
        }
    }
    p
}

/// The 3SUM instance `L1 ∪ L3 ∪ {-2j : j ∈ L2}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionWeights {
    pub n: usize,
    pub small: Vec<i64>,
    pub large: Vec<i64>,
    pub negated: Vec<i64>,
}

impl ReductionWeights {
    /// The whole multiset: small, then large, then negated middles.
    pub fn weights(&self) -> Vec<i64> {
        let mut w = self.small.clone();
        w.extend(&self.large);
        w.extend(&self.negated);
        w
    }

    pub fn to_weight_set(&self) -> WeightSet {
        WeightSet {
            weights: self.weights(),
            bound: self.n as i64,
        }
    }

    /// Range invariants of the construction, all in exact integer arithmetic.
    pub fn ranges_hold(&self) -> bool {
        let n = self.n as i64;
        self.small.iter().all(|&w| w >= 1 && 3 * w <= n)
            && self.large.iter().all(|&w| 3 * w > 2 * n && w <= n)
            && self
                .negated
                .iter()
                .all(|&w| -3 * w > 2 * n && -3 * w <= 4 * n)
            && self.weights().iter().all(|w| w.abs() <= 2 * n)
    }
}

pub fn build_weights(p: &ThirdsPartition) -> ReductionWeights {
    let w = ReductionWeights {
        n: p.n,
        small: p.first.iter().map(|&j| j as i64).collect(),
        large: p.last.iter().map(|&j| j as i64).collect(),
        negated: p.middle.iter().map(|&j| -2 * j as i64).collect(),
    };
    debug_assert!(w.ranges_hold());
    w
}

fn disjoint_ranges(small: &[i64], negative: &[i64], large: &[i64]) -> Result<()> {
    if small.iter().chain(large).any(|&w| w <= 0) {
        return Err(CadenceError::invalid(
            "small and large weights must be positive",
        ));
    }
    if negative.iter().any(|&w| w >= 0) {
        return Err(CadenceError::invalid("middle weights must be negative"));
    }
    if let (Some(&a), Some(&c)) = (small.iter().max(), large.iter().min()) {
        if a >= c {
            return Err(CadenceError::invalid(format!(
                "small weights reach {a}, large weights start at {c}"
            )));
        }
    }
    Ok(())
}

fn pair_sums(small: &[i64], large: &[i64]) -> Result<SumCounts> {
    convolve_counts(
        &IndicatorVector::from_indices(small),
        &IndicatorVector::from_indices(large),
    )
}

/// Whether some `a + b + c = 0` with `a` small, `b` negative, `c` large.
/// Returns the witness sum `a + c = -b`.
pub fn threesum_disjoint(small: &[i64], negative: &[i64], large: &[i64]) -> Result<Option<i64>> {
    disjoint_ranges(small, negative, large)?;
    let sums = pair_sums(small, large)?;
    Ok(negative.iter().map(|&b| -b).find(|&s| sums.get(s) > 0))
}

/// Which detector a report came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Thirds,
    Exact,
    Quadratic,
    Brute,
}

impl std::str::FromStr for Mode {
    type Err = CadenceError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "thirds" => Ok(Mode::Thirds),
            "exact" => Ok(Mode::Exact),
            "quadratic" => Ok(Mode::Quadratic),
            "brute" => Ok(Mode::Brute),
            _ => Err(CadenceError::invalid(format!("unknown mode {s:?}"))),
        }
    }
}

/// How a symbol was decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Path {
    Pairs,
    Convolution,
    Brute,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Counters {
    pub convolutions: u64,
    /// Occurrence pairs or `(x, j)` candidates checked one at a time.
    pub pairs_examined: u64,
}

impl Counters {
    fn merge(self, other: Counters) -> Counters {
        Counters {
            convolutions: self.convolutions + other.convolutions,
            pairs_examined: self.pairs_examined + other.pairs_examined,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymbolVerdict {
    pub symbol: u8,
    pub occurrences: usize,
    pub found: bool,
    pub path: Path,
    /// A genuine 3-cadence (exact, quadratic and brute modes).
    pub witness: Option<Cadence>,
    /// Middle-third positions hit by the 3SUM test (thirds mode).
    pub candidate_middles: Vec<usize>,
    /// Number of 3-cadences of this symbol, when the path counts them.
    pub count: Option<u64>,
    pub counters: Counters,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThreeCadenceReport {
    pub mode: Mode,
    /// One entry per symbol occurring in the text, ascending.
    pub verdicts: Vec<SymbolVerdict>,
    pub counters: Counters,
}

impl ThreeCadenceReport {
    pub fn verdict(&self, a: u8) -> Option<&SymbolVerdict> {
        self.verdicts.iter().find(|v| v.symbol == a)
    }

    pub fn found(&self, a: u8) -> bool {
        self.verdict(a).is_some_and(|v| v.found)
    }

    pub fn any(&self) -> bool {
        self.verdicts.iter().any(|v| v.found)
    }
}

/// The literal reduction for one symbol: thirds, weights, one convolution.
pub fn detect_3sub_thirds(text: &Text, a: u8) -> ThreeCadenceReport {
    let idx = OccurrenceIndex::new(text);
    let verdict = thirds_convolution(text.len(), a, idx.positions(a));
    ThreeCadenceReport {
        mode: Mode::Thirds,
        counters: verdict.counters,
        verdicts: vec![verdict],
    }
}

fn thirds_convolution(n: usize, a: u8, occ: &[usize]) -> SymbolVerdict {
    let w = build_weights(&thirds_of(n, a, occ));
    let mut counters = Counters::default();
    let mut middles = Vec::new();
    if !w.small.is_empty() && !w.large.is_empty() && !w.negated.is_empty() {
        let sums = pair_sums(&w.small, &w.large).expect("span is at most 2n");
        counters.convolutions += 1;
        middles = w
            .negated
            .iter()
            .filter(|&&b| sums.get(-b) > 0)
            .map(|&b| (-b / 2) as usize)
            .collect();
    }
    SymbolVerdict {
        symbol: a,
        occurrences: occ.len(),
        found: !middles.is_empty(),
        path: Path::Convolution,
        witness: None,
        candidate_middles: middles,
        count: None,
        counters,
    }
}

/// The thirds test by pair scan, for symbols with few occurrences.
fn thirds_pairs(text: &Text, a: u8, occ: &[usize]) -> SymbolVerdict {
    let p = thirds_of(text.len(), a, occ);
    let mut pairs = 0u64;
    let mut middles = Vec::new();
    for &x in &p.first {
        for &z in &p.last {
            pairs += 1;
            if (x + z) % 2 == 0 && p.middle.binary_search(&((x + z) / 2)).is_ok() {
                middles.push((x + z) / 2);
            }
        }
    }
    middles.sort_unstable();
    middles.dedup();
    SymbolVerdict {
        symbol: a,
        occurrences: occ.len(),
        found: !middles.is_empty(),
        path: Path::Pairs,
        witness: None,
        candidate_middles: middles,
        count: None,
        counters: Counters {
            convolutions: 0,
            pairs_examined: pairs,
        },
    }
}

/// Per-middle cutoffs on the first term of a 3-cadence in a text of length `n`.
///
/// For equal symbols at `x < j < z = 2j - x`, `(x, j - x)` is a 3-cadence iff
/// `L(j) <= x <= U(j)` where
///
/// * `L(j) = max(1, 2j - n)` keeps `z <= n`,
/// * `U(j) = min(⌊j/2⌋, ⌊(3j - n - 1)/2⌋)` encodes `start <= gap` and
///   `x + 3(j - x) > n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Staircase {
    pub n: i64,
}

impl Staircase {
    pub fn new(n: usize) -> Self {
        Staircase { n: n as i64 }
    }

    #[inline]
    pub fn lower(&self, j: i64) -> i64 {
        (2 * j - self.n).max(1)
    }

    #[inline]
    pub fn upper(&self, j: i64) -> i64 {
        (j / 2).min((3 * j - self.n - 1).div_euclid(2))
    }

    pub fn admits(&self, x: i64, j: i64) -> bool {
        self.lower(j) <= x && x <= self.upper(j)
    }

    /// Middle positions that admit at least one first term.
    fn middle_range(&self) -> Option<(i64, i64)> {
        let lo = (1..=self.n).find(|&j| self.upper(j) >= self.lower(j))?;
        let hi = (lo..=self.n)
            .rev()
            .find(|&j| self.upper(j) >= self.lower(j))?;
        Some((lo, hi))
    }
}

/// Options for the exact detector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactOptions {
    /// Blocks of at most this many middle positions are counted directly.
    pub block: usize,
    pub exec: Exec,
    /// Stop at the first witness instead of counting every 3-cadence. The
    /// search then runs sequentially, top node first, so the witness does not
    /// depend on scheduling.
    pub first_only: bool,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions {
            block: DEFAULT_BLOCK,
            exec: Exec::default(),
            first_only: false,
        }
    }
}

impl ExactOptions {
    /// Settings used by [`detect_3cadence`]: decide, do not count.
    pub fn decision() -> Self {
        ExactOptions {
            first_only: true,
            ..Self::default()
        }
    }
}

/// Default direct-count block width, in middle positions.
pub const DEFAULT_BLOCK: usize = 32;

/// Exact 3-cadence count for one symbol. With
/// [`first_only`](ExactOptions::first_only) the count is only a lower bound
/// (0 or at least 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExactCount {
    pub count: u64,
    pub witness: Option<Cadence>,
    pub counters: Counters,
}

pub fn count_3cadences_exact(text: &Text, a: u8) -> ExactCount {
    count_3cadences_exact_with(text, a, ExactOptions::default())
}

pub fn count_3cadences_exact_with(text: &Text, a: u8, opts: ExactOptions) -> ExactCount {
    let n = text.len();
    let mut occ = vec![false; n + 1];
    let mut prefix = vec![0u32; n + 1];
    for (p, &b) in text.as_bytes().iter().enumerate() {
        occ[p + 1] = b == a;
        prefix[p + 1] = prefix[p] + (b == a) as u32;
    }
    let stairs = Staircase::new(n);
    let Some((j_lo, j_hi)) = stairs.middle_range() else {
        return ExactCount {
            count: 0,
            witness: None,
            counters: Counters::default(),
        };
    };
    let ctx = Staircases {
        indicator: IndicatorVector::new(0, occ.clone()),
        occ: &occ,
        prefix: &prefix,
        stairs,
        block: opts.block.max(1) as i64,
        exec: opts.exec,
        first_only: opts.first_only,
        symbol: a,
    };
    let part = ctx.solve(j_lo, j_hi, 1);
    ExactCount {
        count: part.count,
        witness: part.witness.map(|(x, j)| ctx.cadence(x, j)),
        counters: part.counters,
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct Partial {
    count: u64,
    /// `(x, j)` with the smallest `x`, then `j`.
    witness: Option<(i64, i64)>,
    counters: Counters,
}

impl Partial {
    fn merge(self, other: Partial) -> Partial {
        let witness = match (self.witness, other.witness) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        Partial {
            count: self.count + other.count,
            witness,
            counters: self.counters.merge(other.counters),
        }
    }
}

struct Staircases<'a> {
    indicator: IndicatorVector,
    occ: &'a [bool],
    prefix: &'a [u32],
    stairs: Staircase,
    block: i64,
    exec: Exec,
    first_only: bool,
    symbol: u8,
}

/// Middle ranges at least this wide fork onto the pool.
const FORK_WIDTH: i64 = 1 << 12;

impl Staircases<'_> {
    fn cadence(&self, x: i64, j: i64) -> Cadence {
        let (start, gap) = (x as usize, (j - x) as usize);
        Cadence {
            start,
            gap,
            order: (self.stairs.n as usize - start) / gap + 1,
            symbol: self.symbol,
        }
    }

    #[inline]
    fn hit(&self, x: i64, j: i64) -> bool {
        let z = 2 * j - x;
        z <= self.stairs.n && self.occ[x as usize] && self.occ[z as usize]
    }

    fn occurrences_between(&self, lo: i64, hi: i64) -> u32 {
        self.prefix[hi as usize] - self.prefix[lo as usize - 1]
    }

    /// Counts `(x, j)` with `j_lo <= j <= j_hi`, `S[j] = a`, and
    /// `max(x_lo, L(j)) <= x <= U(j)`.
    fn solve(&self, j_lo: i64, j_hi: i64, x_lo: i64) -> Partial {
        if j_lo > j_hi
            || self.stairs.upper(j_hi) < x_lo
            || self.occurrences_between(j_lo, j_hi) == 0
        {
            return Partial::default();
        }
        if j_hi - j_lo < self.block {
            return self.direct(j_lo, j_hi, x_lo);
        }
        let j_mid = j_lo + (j_hi - j_lo) / 2;
        let u = self.stairs.upper(j_mid);
        if u < x_lo {
            return self.solve(j_mid + 1, j_hi, x_lo);
        }
        let here = self.middle_block(j_mid, j_hi, x_lo, u);
        if self.first_only {
            if here.witness.is_some() {
                return here;
            }
            let here = here.merge(self.solve(j_lo, j_mid - 1, x_lo));
            if here.witness.is_some() {
                return here;
            }
            return here.merge(self.solve(j_mid + 1, j_hi, u + 1));
        }
        let (left, right) = if j_hi - j_lo >= FORK_WIDTH {
            self.exec.join(
                || self.solve(j_lo, j_mid - 1, x_lo),
                || self.solve(j_mid + 1, j_hi, u + 1),
            )
        } else {
            (
                self.solve(j_lo, j_mid - 1, x_lo),
                self.solve(j_mid + 1, j_hi, u + 1),
            )
        };
        here.merge(left).merge(right)
    }

    /// All `x` in `[x_lo, u]` against every middle in `[j_mid, j_hi]`; valid
    /// because `U(j) >= u` there.
    fn middle_block(&self, j_mid: i64, j_hi: i64, x_lo: i64, u: i64) -> Partial {
        let n = self.stairs.n;
        let xs = self.indicator.clip(x_lo, u);
        let zs = self.indicator.clip(2 * j_mid - u, (2 * j_hi - x_lo).min(n));
        if xs.is_empty() || zs.is_empty() {
            return Partial::default();
        }
        let sums =
            convolve_window(&xs, &zs, 2 * j_mid, 2 * j_hi).expect("window spans are bounded by 3n");
        let mut part = Partial {
            counters: Counters {
                convolutions: 1,
                pairs_examined: 0,
            },
            ..Partial::default()
        };
        for j in j_mid..=j_hi {
            if !self.occ[j as usize] {
                continue;
            }
            let c = sums.get(2 * j);
            if c > 0 {
                part.count += c;
                if part.witness.is_none() {
                    let x = (x_lo..=u)
                        .find(|&x| self.hit(x, j))
                        .expect("a positive count has a witness");
                    part.witness = Some((x, j));
                }
            }
        }
        part
    }

    fn direct(&self, j_lo: i64, j_hi: i64, x_lo: i64) -> Partial {
        let mut part = Partial::default();
        for j in j_lo..=j_hi {
            if !self.occ[j as usize] {
                continue;
            }
            let lo = x_lo.max(self.stairs.lower(j));
            let hi = self.stairs.upper(j);
            for x in lo..=hi {
                part.counters.pairs_examined += 1;
                if self.hit(x, j) {
                    part.count += 1;
                    if part.witness.is_none_or(|w| (x, j) < w) {
                        part.witness = Some((x, j));
                    }
                    if self.first_only {
                        return part;
                    }
                }
            }
        }
        part
    }
}

/// Pair scan over occurrences `x < z` of `a` with an occurrence at the midpoint
/// inside the staircase. Returns the first witness in `(x, z)` order.
pub fn quadratic_3cadence(text: &Text, a: u8) -> Option<Cadence> {
    let idx = OccurrenceIndex::new(text);
    quadratic_scan(text, a, idx.positions(a), false).witness
}

/// With `count` set the scan runs to the end and reports how many hits it saw.
fn quadratic_scan(text: &Text, a: u8, occ: &[usize], count: bool) -> SymbolVerdict {
    let stairs = Staircase::new(text.len());
    let mut pairs = 0u64;
    let mut hits = 0u64;
    let mut witness = None;
    'outer: for (p, &x) in occ.iter().enumerate() {
        for &z in &occ[p + 1..] {
            pairs += 1;
            if (z - x) % 2 != 0 {
                continue;
            }
            let j = (x + z) / 2;
            if text.at(j) == a && stairs.admits(x as i64, j as i64) {
                hits += 1;
                witness.get_or_insert(Cadence {
                    start: x,
                    gap: j - x,
                    order: 3,
                    symbol: a,
                });
                if !count {
                    break 'outer;
                }
            }
        }
    }
    SymbolVerdict {
        symbol: a,
        occurrences: occ.len(),
        found: witness.is_some(),
        path: Path::Pairs,
        witness,
        candidate_middles: Vec::new(),
        count: count.then_some(hits),
        counters: Counters {
            convolutions: 0,
            pairs_examined: pairs,
        },
    }
}

/// Symbols with `n_a^2 <= n log2 n` take the pair scan.
pub fn prefers_pairs(n: usize, n_a: usize) -> bool {
    if n < 2 {
        return true;
    }
    let budget = n as f64 * (n as f64).log2();
    (n_a as f64) * (n_a as f64) <= budget
}

pub fn detect_3cadence(text: &Text, mode: Mode) -> ThreeCadenceReport {
    detect_3cadence_with(text, mode, ExactOptions::decision())
}

/// Runs `mode` for every symbol of the text. Symbols are independent and are
/// spread over `opts.exec`.
pub fn detect_3cadence_with(text: &Text, mode: Mode, opts: ExactOptions) -> ThreeCadenceReport {
    let n = text.len();
    let idx = OccurrenceIndex::new(text);
    let symbols: Vec<u8> = idx.symbols().collect();
    let brute = (mode == Mode::Brute).then(|| oracle::cadences_of_order(text, 3));

    let verdicts = opts.exec.map(&symbols, |&a| {
        let occ = idx.positions(a);
        match mode {
            Mode::Brute => {
                let all = brute.as_ref().expect("computed above");
                let mine: Vec<&Cadence> = all.iter().filter(|c| c.symbol == a).collect();
                SymbolVerdict {
                    symbol: a,
                    occurrences: occ.len(),
                    found: !mine.is_empty(),
                    path: Path::Brute,
                    witness: mine.first().map(|c| **c),
                    candidate_middles: Vec::new(),
                    count: Some(mine.len() as u64),
                    counters: Counters::default(),
                }
            }
            Mode::Quadratic => quadratic_scan(text, a, occ, false),
            Mode::Thirds if prefers_pairs(n, occ.len()) => thirds_pairs(text, a, occ),
            Mode::Thirds => thirds_convolution(n, a, occ),
            Mode::Exact if prefers_pairs(n, occ.len()) => {
                quadratic_scan(text, a, occ, !opts.first_only)
            }
            Mode::Exact => {
                let exact = count_3cadences_exact_with(text, a, opts);
                SymbolVerdict {
                    symbol: a,
                    occurrences: occ.len(),
                    found: exact.count > 0,
                    path: Path::Convolution,
                    witness: exact.witness,
                    candidate_middles: Vec::new(),
                    count: (!opts.first_only).then_some(exact.count),
                    counters: exact.counters,
                }
            }
        }
    });
    let counters = verdicts
        .iter()
        .fold(Counters::default(), |acc, v| acc.merge(v.counters));
    ThreeCadenceReport {
        mode,
        verdicts,
        counters,
    }
}

/// Two marked positions claimed by different weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Collision {
    pub position: usize,
    pub weights: (i64, i64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Encoding {
    pub text: Text,
    pub collisions: Vec<Collision>,
}

/// Encodes a weight set as a text over `{'0', '1', '2'}` of length `2R`, with
/// `R` the largest absolute weight.
///
/// A positive weight `w` marks position `2w`, a negative one marks `|w|`.
/// Unmarked positions up to `R` get `'0'`, the rest `'2'`. Then positive
/// `w1, w3` and negative `w2` sum to zero iff `|w2|` is the midpoint of
/// `2w1` and `2w3`.
pub fn encode_weights_to_text(w: &WeightSet) -> Result<Encoding> {
    let weights = w.distinct();
    if weights.contains(&0) {
        return Err(CadenceError::ZeroWeight);
    }
    let r = weights
        .iter()
        .map(|v| v.unsigned_abs() as usize)
        .max()
        .unwrap_or(0);
    let mut owner: Vec<Option<i64>> = vec![None; 2 * r + 1];
    let mut collisions = Vec::new();
    for &v in &weights {
        let pos = if v > 0 {
            2 * v as usize
        } else {
            v.unsigned_abs() as usize
        };
        match owner[pos] {
            Some(prev) => collisions.push(Collision {
                position: pos,
                weights: (prev, v),
            }),
            None => owner[pos] = Some(v),
        }
    }
    let bytes: Vec<u8> = (1..=2 * r)
        .map(|p| match owner[p] {
            Some(_) => b'1',
            None if p <= r => b'0',
            None => b'2',
        })
        .collect();
    Ok(Encoding {
        text: Text::new(bytes),
        collisions,
    })
}

/// Both sides of the reverse-reduction equivalence for one weight set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EncodingCheck {
    /// Two distinct positive weights and a negative weight summing to zero.
    pub zero_triple: Option<(i64, i64, i64)>,
    /// A `'1'` triple `(2w1, |w2|, 2w3)` built from such weights.
    pub ap_triple: Option<TripleAP>,
}

impl EncodingCheck {
    pub fn agrees(&self) -> bool {
        self.zero_triple.is_some() == self.ap_triple.is_some()
    }
}

pub fn encoding_sides(w: &WeightSet, t: &Text) -> EncodingCheck {
    let weights = w.distinct();
    let positive: std::collections::HashSet<i64> =
        weights.iter().copied().filter(|&v| v > 0).collect();
    let negative: std::collections::HashSet<i64> =
        weights.iter().copied().filter(|&v| v < 0).collect();
    let ap_triple = brute_ap_triples(t, b'1').into_iter().find(|tr| {
        tr.x % 2 == 0
            && tr.z % 2 == 0
            && positive.contains(&(tr.x as i64 / 2))
            && positive.contains(&(tr.z as i64 / 2))
            && negative.contains(&-(tr.j as i64))
    });
    EncodingCheck {
        zero_triple: oracle::brute_3sum_two_positive(w),
        ap_triple,
    }
}

/// Whether the encoded text has a qualifying `'1'` triple exactly when the
/// weights have a two-positive zero triple.
pub fn verify_encoding(w: &WeightSet, t: &Text) -> bool {
    encoding_sides(w, t).agrees()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{brute_3sum_zero, cadences_of_order};
    use crate::text::is_cadence;

    #[test]
    fn thirds_examples() {
        let p = thirds(&Text::from("100010001"), b'1');
        assert_eq!((p.first, p.middle, p.last), (vec![1], vec![5], vec![9]));
        let p = thirds(&Text::from("000100100100"), b'1');
        assert_eq!(
            (p.first.clone(), p.middle.clone(), p.last.clone()),
            (vec![4], vec![7], vec![10])
        );
        let p = thirds(&Text::from("000100100100"), b'x');
        assert!(p.first.is_empty() && p.middle.is_empty() && p.last.is_empty());
    }

    #[test]
    fn weight_examples() {
        let w = build_weights(&thirds(&Text::from("100010001"), b'1'));
        assert_eq!(w.weights(), vec![1, 9, -10]);
        assert!(w.ranges_hold());
        assert_eq!(brute_3sum_zero(&w.to_weight_set()), Some((1, 9, -10)));
        let w = build_weights(&thirds(&Text::from("000100100100"), b'1'));
        assert_eq!(w.weights(), vec![4, 10, -14]);
        let w = build_weights(&thirds(&Text::from("abc"), b'z'));
        assert!(w.weights().is_empty());
    }

    #[test]
    fn threesum_examples() {
        assert_eq!(threesum_disjoint(&[1], &[-10], &[9]).unwrap(), Some(10));
        assert_eq!(threesum_disjoint(&[4], &[-14], &[10]).unwrap(), Some(14));
        assert_eq!(threesum_disjoint(&[1], &[-5], &[9]).unwrap(), None);
        assert!(threesum_disjoint(&[5], &[-10], &[5]).is_err());
        assert!(threesum_disjoint(&[1], &[10], &[9]).is_err());
        assert!(threesum_disjoint(&[-1], &[-10], &[9]).is_err());
        assert_eq!(threesum_disjoint(&[], &[-10], &[9]).unwrap(), None);
    }

    #[test]
    fn thirds_detector_examples() {
        let r = detect_3sub_thirds(&Text::from("100010001"), b'1');
        assert!(r.found(b'1'));
        assert_eq!(r.verdicts[0].candidate_middles, vec![5]);
        let r = detect_3sub_thirds(&Text::from("000100100100"), b'1');
        assert!(r.found(b'1'));
        assert_eq!(r.verdicts[0].candidate_middles, vec![7]);
        assert!(!detect_3sub_thirds(&Text::from("111000000"), b'1').found(b'1'));
    }

    #[test]
    fn exact_examples() {
        let c = count_3cadences_exact(&Text::from("100010001"), b'1');
        assert_eq!(c.count, 1);
        let w = c.witness.unwrap();
        assert_eq!((w.start, w.gap, w.order), (1, 4, 3));
        assert_eq!(
            count_3cadences_exact(&Text::from("000100100100"), b'1').count,
            0
        );

        let s = Text::from("ALABARALAALABARDA");
        let c = count_3cadences_exact(&s, b'A');
        assert!(c.count >= 2);
        let oracle: Vec<_> = cadences_of_order(&s, 3)
            .into_iter()
            .filter(|c| c.symbol == b'A')
            .collect();
        assert_eq!(c.count, oracle.len() as u64);
        assert!(oracle.iter().any(|c| (c.start, c.gap) == (3, 7)));
        assert!(oracle.iter().any(|c| (c.start, c.gap) == (1, 8)));
    }

    #[test]
    fn staircase_at_the_divergent_example() {
        let st = Staircase::new(12);
        assert_eq!(st.upper(7), 3);
        assert!(!st.admits(4, 7));
        assert_eq!(Staircase::new(9).upper(5), 2);
        assert!(Staircase::new(9).admits(1, 5));
    }

    #[test]
    fn quadratic_examples() {
        let w = quadratic_3cadence(&Text::from("100010001"), b'1').unwrap();
        assert_eq!((w.start, w.gap), (1, 4));
        assert_eq!(quadratic_3cadence(&Text::from("000100100100"), b'1'), None);
        assert_eq!(quadratic_3cadence(&Text::from("1001"), b'1'), None);
    }

    #[test]
    fn dispatcher_examples() {
        let s = Text::from("ALABARALAALABARDA");
        let r = detect_3cadence(&s, Mode::Exact);
        assert!(r.found(b'A'));
        let w = r.verdict(b'A').unwrap().witness.unwrap();
        assert!(is_cadence(&s, w.start, w.gap).unwrap());
        assert_eq!(w.order, 3);

        let d = Text::from("000100100100");
        assert!(detect_3cadence(&d, Mode::Thirds).found(b'1'));
        assert_eq!(
            detect_3cadence(&d, Mode::Thirds)
                .verdict(b'1')
                .unwrap()
                .candidate_middles,
            vec![7]
        );
        assert!(!detect_3cadence(&d, Mode::Exact).found(b'1'));
        assert!(!detect_3cadence(&d, Mode::Brute).found(b'1'));

        for mode in [Mode::Thirds, Mode::Exact, Mode::Quadratic, Mode::Brute] {
            assert!(!detect_3cadence(&Text::from("AB"), mode).any());
            assert!(!detect_3cadence(&Text::default(), mode).any());
        }
    }

    #[test]
    fn exact_path_matches_oracle_on_dense_texts() {
        // long enough that every symbol takes the convolution path, with small
        // blocks so the divide and conquer actually recurses
        let mut state = 0x9e3779b97f4a7c15u64;
        for len in [40usize, 97, 200, 333] {
            let bytes: Vec<u8> = (0..len)
                .map(|_| {
                    state ^= state << 13;
                    state ^= state >> 7;
                    state ^= state << 17;
                    b'a' + (state % 2) as u8
                })
                .collect();
            let s = Text::new(bytes);
            let all = cadences_of_order(&s, 3);
            for a in *b"ab" {
                let expected = all.iter().filter(|c| c.symbol == a).count() as u64;
                for block in [1, 2, 5, 32] {
                    for exec in [Exec::Sequential, Exec::Parallel] {
                        let c = count_3cadences_exact_with(
                            &s,
                            a,
                            ExactOptions {
                                block,
                                exec,
                                first_only: false,
                            },
                        );
                        assert_eq!(c.count, expected, "len {len} block {block}");
                        let first = count_3cadences_exact_with(
                            &s,
                            a,
                            ExactOptions {
                                block,
                                exec,
                                first_only: true,
                            },
                        );
                        assert_eq!(first.count > 0, expected > 0);
                        assert_eq!(first.witness.is_some(), expected > 0);
                        if let Some(w) = first.witness {
                            assert!(is_cadence(&s, w.start, w.gap).unwrap());
                        }
                        if let Some(w) = c.witness {
                            assert!(is_cadence(&s, w.start, w.gap).unwrap());
                            assert_eq!(w.order, 3);
                            assert_eq!(s.at(w.start), a);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn encoding_examples() {
        let w = WeightSet::from_weights(vec![3, 4, -7]);
        let e = encode_weights_to_text(&w).unwrap();
        assert_eq!(e.text.as_bytes(), b"00000111222222");
        assert!(e.collisions.is_empty());
        let sides = encoding_sides(&w, &e.text);
        assert_eq!(sides.ap_triple, Some(TripleAP { x: 6, j: 7, z: 8 }));
        assert!(verify_encoding(&w, &e.text));

        let w = WeightSet::from_weights(vec![1, -2]);
        let e = encode_weights_to_text(&w).unwrap();
        assert_eq!(e.text.as_bytes(), b"0122");
        assert_eq!(
            e.collisions,
            vec![Collision {
                position: 2,
                weights: (1, -2)
            }]
        );

        let e = encode_weights_to_text(&WeightSet::from_weights(vec![])).unwrap();
        assert!(e.text.is_empty());

        let w = WeightSet::from_weights(vec![1, 2, 3]);
        let e = encode_weights_to_text(&w).unwrap();
        let sides = encoding_sides(&w, &e.text);
        assert!(sides.zero_triple.is_none() && sides.ap_triple.is_none());

        let w = WeightSet::from_weights(vec![5, -10, 5]);
        let e = encode_weights_to_text(&w).unwrap();
        let sides = encoding_sides(&w, &e.text);
        assert!(sides.zero_triple.is_none() && sides.ap_triple.is_none());

        assert_eq!(
            encode_weights_to_text(&WeightSet::from_weights(vec![0, 1])),
            Err(CadenceError::ZeroWeight)
        );
    }

    #[test]
    fn mode_parsing() {
        assert_eq!("exact".parse::<Mode>().unwrap(), Mode::Exact);
        assert!("fast".parse::<Mode>().is_err());
    }
}
