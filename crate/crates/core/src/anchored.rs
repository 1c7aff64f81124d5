//! Anchored cadences in near-linear time.
//!
//! If `i` is not anchored then some prime `p` with `p * i <= n` has
//! `S[i] != S[p * i]` or `p * i` not anchored. Filling a table `B` from the top
//! down, each `B[i]` therefore only needs the prime multiples of `i`, tried in
//! increasing order until one fails. Positions in the upper half have no
//! proper multiple in range and are anchored outright.

use serde::Serialize;

use crate::text::Text;

/// All primes `<= bound`, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeTable {
    pub bound: usize,
    pub primes: Vec<usize>,
}

impl PrimeTable {
    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }
}

/// Sieve of Eratosthenes over odd numbers.
pub fn sieve_primes(bound: usize) -> PrimeTable {
    let mut primes = Vec::new();
    if bound >= 2 {
        primes.push(2);
    }
    if bound >= 3 {
        // slot k stands for 2k + 1
        let slots = (bound - 1) / 2 + 1;
        let mut composite = vec![false; slots];
        let mut k = 1;
        while (2 * k + 1) * (2 * k + 1) <= bound {
            if !composite[k] {
                let p = 2 * k + 1;
                let mut m = p * p / 2;
                while m < slots {
                    composite[m] = true;
                    m += p;
                }
            }
            k += 1;
        }
        primes.extend((1..slots).filter(|&k| !composite[k]).map(|k| 2 * k + 1));
    }
    PrimeTable { bound, primes }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnchoredResult {
    /// `table[i - 1]` holds whether `i` is anchored.
    pub table: Vec<bool>,
    pub anchored: Vec<usize>,
    /// Smallest anchored cadence; `None` only for the empty text.
    pub smallest: Option<usize>,
    /// Symbol comparisons `S[i] == S[p * i]`.
    pub comparisons: u64,
    /// Reads of `B[p * i]`.
    pub cell_checks: u64,
    /// Primes tried for each position before the loop settled, `primes_tried[i - 1]`.
    /// Zero for the upper half.
    #[serde(skip)]
    pub primes_tried: Vec<u32>,
}

impl AnchoredResult {
    pub fn is_anchored(&self, pos: usize) -> bool {
        pos >= 1 && self.table.get(pos - 1).copied().unwrap_or(false)
    }
}

pub fn anchored_cadences(text: &Text) -> AnchoredResult {
    let n = text.len();
    anchored_with_primes(text, &sieve_primes(n))
}

/// As [`anchored_cadences`] with a caller-supplied table, which must cover
/// every prime up to `n`.
pub fn anchored_with_primes(text: &Text, primes: &PrimeTable) -> AnchoredResult {
    let n = text.len();
    assert!(primes.bound >= n, "prime table too small for n = {n}");
    let s = text.as_bytes();
    let mut table = vec![true; n];
    let mut primes_tried = vec![0u32; n];
    let mut comparisons = 0u64;
    let mut cell_checks = 0u64;

    // B[i] is preset wherever 2i > n; walk the rest from n/2 down to 1.
    for i in (1..=n / 2).rev() {
        let a = s[i - 1];
        let mut ok = true;
        let mut tried = 0u32;
        for &p in &primes.primes {
            let j = p * i;
            if j > n {
                break;
            }
            tried += 1;
            comparisons += 1;
            if s[j - 1] != a {
                ok = false;
                break;
            }
            cell_checks += 1;
            if !table[j - 1] {
                ok = false;
                break;
            }
        }
        debug_assert!(ok || tried > 0, "a failing position needs a witness prime");
        table[i - 1] = ok;
        primes_tried[i - 1] = tried;
    }

    let anchored: Vec<usize> = (1..=n).filter(|&i| table[i - 1]).collect();
    AnchoredResult {
        smallest: anchored.first().copied(),
        table,
        anchored,
        comparisons,
        cell_checks,
        primes_tried,
    }
}
