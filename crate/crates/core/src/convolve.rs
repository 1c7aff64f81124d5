//! Exact pair counting by convolution of 0/1 indicator vectors.
//!
//! The transform is a number-theoretic transform over the prime
//! `p = 15 * 2^27 + 1`, so results are exact integers rather than rounded
//! floats. A pair count for any sum is at most `min(|x|, |y|)`, which the span
//! guard keeps below `2^24 < p`; the residue mod `p` therefore *is* the count.

use std::sync::OnceLock;

use serde::Serialize;

use crate::{CadenceError, Result};

/// Largest permitted transform span (inputs plus outputs, in index units).
pub const MAX_SPAN: u64 = 1 << 24;

/// 0/1 entries over the logical index range `offset..offset + len`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IndicatorVector {
    pub offset: i64,
    bits: Vec<bool>,
}

impl IndicatorVector {
    pub fn new(offset: i64, bits: Vec<bool>) -> Self {
        IndicatorVector { offset, bits }
    }

    /// Indicator of a set of logical indices; duplicates collapse.
    pub fn from_indices(indices: &[i64]) -> Self {
        let (Some(&lo), Some(&hi)) = (indices.iter().min(), indices.iter().max()) else {
            return IndicatorVector::default();
        };
        let mut bits = vec![false; (hi - lo + 1) as usize];
        for &i in indices {
            bits[(i - lo) as usize] = true;
        }
        IndicatorVector { offset: lo, bits }
    }

    pub fn from_positions(positions: &[usize]) -> Self {
        let idx: Vec<i64> = positions.iter().map(|&p| p as i64).collect();
        Self::from_indices(&idx)
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, index: i64) -> bool {
        let t = index - self.offset;
        t >= 0 && (t as usize) < self.bits.len() && self.bits[t as usize]
    }

    /// Logical indices holding a 1, ascending.
    pub fn ones(&self) -> impl Iterator<Item = i64> + '_ {
        let off = self.offset;
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(move |(t, _)| off + t as i64)
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Sub-vector covering logical indices `lo..=hi`, with zero runs at both
    /// ends trimmed.
    pub fn clip(&self, lo: i64, hi: i64) -> IndicatorVector {
        let start = (lo - self.offset).max(0);
        let end = (hi - self.offset + 1).min(self.bits.len() as i64);
        if start >= end {
            return IndicatorVector::default();
        }
        let slice = &self.bits[start as usize..end as usize];
        match (
            slice.iter().position(|&b| b),
            slice.iter().rposition(|&b| b),
        ) {
            (Some(a), Some(b)) => IndicatorVector {
                offset: self.offset + start + a as i64,
                bits: slice[a..=b].to_vec(),
            },
            _ => IndicatorVector::default(),
        }
    }

    fn trimmed(&self) -> IndicatorVector {
        if self.bits.is_empty() {
            return IndicatorVector::default();
        }
        self.clip(self.offset, self.offset + self.bits.len() as i64 - 1)
    }
}

/// Pair counts per sum over `offset..offset + counts.len()`. Sums outside the
/// stored range count zero.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct SumCounts {
    pub offset: i64,
    pub counts: Vec<u64>,
}

impl SumCounts {
    pub fn get(&self, sum: i64) -> u64 {
        let t = sum - self.offset;
        if t < 0 {
            return 0;
        }
        self.counts.get(t as usize).copied().unwrap_or(0)
    }

    /// `(sum, count)` for every sum with a positive count.
    pub fn nonzero(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        let off = self.offset;
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(move |(t, &c)| (off + t as i64, c))
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Same counts, compared sum by sum; storage ranges may differ.
    pub fn same_counts(&self, other: &SumCounts) -> bool {
        let a: Vec<_> = self.nonzero().collect();
        let b: Vec<_> = other.nonzero().collect();
        a == b
    }
}

/// How [`convolve_counts_with`] computes its result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    /// Pairwise loops for sparse inputs, the transform otherwise.
    #[default]
    Auto,
    Transform,
    Direct,
}

/// Counts, for every sum `s`, the pairs `(p, q)` with `x[p] = y[q] = 1` and
/// `p + q = s`.
pub fn convolve_counts(x: &IndicatorVector, y: &IndicatorVector) -> Result<SumCounts> {
    convolve_counts_with(x, y, Method::Auto)
}

pub fn convolve_counts_with(
    x: &IndicatorVector,
    y: &IndicatorVector,
    method: Method,
) -> Result<SumCounts> {
    let (x, y) = (x.trimmed(), y.trimmed());
    if x.is_empty() || y.is_empty() {
        return Ok(SumCounts::default());
    }
    let lo = x.offset + y.offset;
    let hi = lo + (x.len() + y.len() - 2) as i64;
    counts_in_window(&x, &y, lo, hi, method)
}

/// Like [`convolve_counts`] but only for sums in `sum_lo..=sum_hi`.
///
/// Both inputs are first clipped to the indices that can reach the window, so
/// the cost follows the clipped sizes rather than the full vectors.
pub fn convolve_window(
    x: &IndicatorVector,
    y: &IndicatorVector,
    sum_lo: i64,
    sum_hi: i64,
) -> Result<SumCounts> {
    convolve_window_with(x, y, sum_lo, sum_hi, Method::Auto)
}

pub fn convolve_window_with(
    x: &IndicatorVector,
    y: &IndicatorVector,
    sum_lo: i64,
    sum_hi: i64,
    method: Method,
) -> Result<SumCounts> {
    if sum_lo > sum_hi {
        return Err(CadenceError::invalid(format!(
            "empty window [{sum_lo}, {sum_hi}]"
        )));
    }
    let x = x.trimmed();
    let y = y.trimmed();
    if x.is_empty() || y.is_empty() {
        return Ok(SumCounts::default());
    }
    let x_end = x.offset + x.len() as i64 - 1;
    let y = y.clip(sum_lo - x_end, sum_hi - x.offset);
    if y.is_empty() {
        return Ok(SumCounts::default());
    }
    let y_end = y.offset + y.len() as i64 - 1;
    let x = x.clip(sum_lo - y_end, sum_hi - y.offset);
    if x.is_empty() {
        return Ok(SumCounts::default());
    }
    let lo = sum_lo.max(x.offset + y.offset);
    let hi = sum_hi.min(x.offset + y.offset + (x.len() + y.len() - 2) as i64);
    if lo > hi {
        return Ok(SumCounts::default());
    }
    counts_in_window(&x, &y, lo, hi, method)
}

/// Inputs are trimmed and `lo..=hi` lies inside the achievable sums.
fn counts_in_window(
    x: &IndicatorVector,
    y: &IndicatorVector,
    lo: i64,
    hi: i64,
    method: Method,
) -> Result<SumCounts> {
    let (a, b) = (x.len(), y.len());
    let wl = (lo - x.offset - y.offset) as usize;
    let wh = (hi - x.offset - y.offset) as usize;
    // Cyclic length: outputs wl..=wh must not receive wrapped terms, which holds
    // once size > a + b - 2 - wl.
    let size = a.max(b).max(wh + 1).max(a + b - 1 - wl).next_power_of_two();
    if size as u64 > MAX_SPAN {
        return Err(CadenceError::SpanLimit {
            span: size as u64,
            limit: MAX_SPAN,
        });
    }
    let method = match method {
        Method::Auto => {
            let pairs = (x.count_ones() as u64) * (y.count_ones() as u64);
            let log = size.trailing_zeros().max(1) as u64;
            if pairs <= 2 * size as u64 * log {
                Method::Direct
            } else {
                Method::Transform
            }
        }
        m => m,
    };
    let counts = match method {
        Method::Direct => direct_window(x, y, wl, wh),
        _ => transform_window(x, y, wl, wh, size),
    };
    Ok(SumCounts { offset: lo, counts })
}

fn direct_window(x: &IndicatorVector, y: &IndicatorVector, wl: usize, wh: usize) -> Vec<u64> {
    let mut counts = vec![0u64; wh - wl + 1];
    let ys: Vec<usize> = (0..y.len()).filter(|&q| y.bits[q]).collect();
    for p in (0..x.len()).filter(|&p| x.bits[p]) {
        // q in [wl - p, wh - p]
        let q_lo = wl.saturating_sub(p);
        let Some(q_hi) = wh.checked_sub(p) else { break };
        let start = ys.partition_point(|&q| q < q_lo);
        for &q in ys[start..].iter().take_while(|&&q| q <= q_hi) {
            counts[p + q - wl] += 1;
        }
    }
    counts
}

fn transform_window(
    x: &IndicatorVector,
    y: &IndicatorVector,
    wl: usize,
    wh: usize,
    size: usize,
) -> Vec<u64> {
    let one = Mont::ONE;
    let load = |v: &IndicatorVector| {
        let mut buf = vec![0u32; size];
        for (slot, &b) in buf.iter_mut().zip(&v.bits) {
            if b {
                *slot = one;
            }
        }
        buf
    };
    let mut fx = load(x);
    let mut fy = load(y);
    ntt_forward(&mut fx);
    ntt_forward(&mut fy);
    for (a, &b) in fx.iter_mut().zip(&fy) {
        *a = Mont::mul(*a, b);
    }
    ntt_inverse(&mut fx);
    fx[wl..=wh].iter().map(|&v| Mont::from(v) as u64).collect()
}

// ---------------------------------------------------------------------------
// Montgomery arithmetic modulo P with R = 2^32.

const P: u32 = 2_013_265_921;
const GENERATOR: u32 = 31;
const MAX_LOG: usize = 27;

struct Mont;

impl Mont {
    /// -P^{-1} mod 2^32
    const NEG_INV: u32 = {
        let mut inv: u32 = 1;
        let mut k = 0;
        while k < 5 {
            inv = inv.wrapping_mul(2u32.wrapping_sub(P.wrapping_mul(inv)));
            k += 1;
        }
        inv.wrapping_neg()
    };
    /// R^2 mod P
    const R2: u32 = ((1u128 << 64) % P as u128) as u32;
    const ONE: u32 = ((1u64 << 32) % P as u64) as u32;

    #[inline(always)]
    fn reduce(t: u64) -> u32 {
        let m = (t as u32).wrapping_mul(Self::NEG_INV);
        let u = ((t + m as u64 * P as u64) >> 32) as u32;
        if u >= P {
            u - P
        } else {
            u
        }
    }

    #[inline(always)]
    fn mul(a: u32, b: u32) -> u32 {
        Self::reduce(a as u64 * b as u64)
    }

    #[inline(always)]
    fn add(a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= P {
            s - P
        } else {
            s
        }
    }

    #[inline(always)]
    fn sub(a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + P - b
        }
    }

    fn to(a: u32) -> u32 {
        Self::mul(a % P, Self::R2)
    }

    fn from(a: u32) -> u32 {
        Self::reduce(a as u64)
    }

    fn pow(mut base: u32, mut e: u64) -> u32 {
        let mut acc = Self::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = Self::mul(acc, base);
            }
            base = Self::mul(base, base);
            e >>= 1;
        }
        acc
    }
}

/// `w^k` for `k < len/2`, where `w` is a primitive `len`-th root of unity
/// (inverted when `inverse`), in Montgomery form. `len = 2^log`.
fn twiddles(log: usize, inverse: bool) -> &'static [u32] {
    static FWD: [OnceLock<Vec<u32>>; MAX_LOG + 1] = [const { OnceLock::new() }; MAX_LOG + 1];
    static INV: [OnceLock<Vec<u32>>; MAX_LOG + 1] = [const { OnceLock::new() }; MAX_LOG + 1];
    let cell = if inverse { &INV[log] } else { &FWD[log] };
    cell.get_or_init(|| {
        let len = 1u64 << log;
        let mut w = Mont::pow(Mont::to(GENERATOR), (P as u64 - 1) / len);
        if inverse {
            w = Mont::pow(w, P as u64 - 2);
        }
        let mut table = Vec::with_capacity((len / 2) as usize);
        let mut cur = Mont::ONE;
        for _ in 0..len / 2 {
            table.push(cur);
            cur = Mont::mul(cur, w);
        }
        table
    })
}

/// Subarrays up to this length are finished breadth-first; larger ones are
/// split depth-first so the tail passes run in cache.
const CACHE_BLOCK: usize = 1 << 14;

/// Decimation in frequency; natural order in, bit-reversed order out.
fn ntt_forward(a: &mut [u32]) {
    let n = a.len();
    if n <= 1 {
        return;
    }
    if n > CACHE_BLOCK {
        dif_pass(a, n);
        let (lo, hi) = a.split_at_mut(n / 2);
        ntt_forward(lo);
        ntt_forward(hi);
        return;
    }
    let mut len = n;
    while len >= 2 {
        for block in a.chunks_exact_mut(len) {
            dif_pass(block, len);
        }
        len /= 2;
    }
}

#[inline]
fn dif_pass(block: &mut [u32], len: usize) {
    let w = twiddles(len.trailing_zeros() as usize, false);
    let (lo, hi) = block.split_at_mut(len / 2);
    for ((u, v), &wk) in lo.iter_mut().zip(hi.iter_mut()).zip(w) {
        let (s, t) = (*u, *v);
        *u = Mont::add(s, t);
        *v = Mont::mul(Mont::sub(s, t), wk);
    }
}

#[inline]
fn dit_pass(block: &mut [u32], len: usize) {
    let w = twiddles(len.trailing_zeros() as usize, true);
    let (lo, hi) = block.split_at_mut(len / 2);
    for ((u, v), &wk) in lo.iter_mut().zip(hi.iter_mut()).zip(w) {
        let s = *u;
        let t = Mont::mul(*v, wk);
        *u = Mont::add(s, t);
        *v = Mont::sub(s, t);
    }
}

/// Unscaled inverse: decimation in time with inverse roots, bit-reversed in,
/// natural out.
fn dit(a: &mut [u32]) {
    let n = a.len();
    if n <= 1 {
        return;
    }
    if n > CACHE_BLOCK {
        let (lo, hi) = a.split_at_mut(n / 2);
        dit(lo);
        dit(hi);
        dit_pass(a, n);
        return;
    }
    let mut len = 2;
    while len <= n {
        for block in a.chunks_exact_mut(len) {
            dit_pass(block, len);
        }
        len *= 2;
    }
}

/// Inverse of [`ntt_forward`], including the `1/n` scaling.
fn ntt_inverse(a: &mut [u32]) {
    dit(a);
    let n_inv = Mont::pow(Mont::to(a.len() as u32), P as u64 - 2);
    for v in a.iter_mut() {
        *v = Mont::mul(*v, n_inv);
    }
}
