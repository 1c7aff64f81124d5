//! Brute-force ground truth.
//!
//! Everything here follows the definitions literally and is quadratic (or
//! worse) by construction. The fast detectors are tested against these.

use serde::Serialize;

use crate::text::{is_anchored, Cadence, OccurrenceIndex, Text};
use crate::{CadenceError, Result};

fn scan(text: &Text, start: usize, gap: usize) -> Option<Cadence> {
    let n = text.len();
    let a = text.at(start);
    let mut j = start + gap;
    while j <= n {
        if text.at(j) != a {
            return None;
        }
        j += gap;
    }
    Some(Cadence {
        start,
        gap,
        order: (n - start) / gap + 1,
        symbol: a,
    })
}

/// All cadences of order at least `k_min`, sorted by `(start, gap)`.
///
/// Worst case is quadratic in the output alone: a unary text has about `n^2/2`
/// cadences. The order falls as the gap grows, so each start stops at the first
/// gap whose order drops below `k_min`.
pub fn enumerate_cadences(text: &Text, k_min: usize) -> Vec<Cadence> {
    let n = text.len();
    let mut out = Vec::new();
    for start in 1..=n {
        for gap in start..=n {
            if (n - start) / gap + 1 < k_min {
                break;
            }
            if let Some(c) = scan(text, start, gap) {
                out.push(c);
            }
        }
    }
    out
}

/// Inclusive gap range giving order exactly `k` for `start`, clipped to
/// `start..=n`. May be empty.
fn gaps_of_order(n: usize, start: usize, k: usize) -> (usize, usize) {
    let rest = n - start;
    let (lo, hi) = if k == 1 {
        (rest + 1, n)
    } else {
        (rest / k + 1, rest / (k - 1))
    };
    (lo.max(start), hi.min(n))
}

/// All cadences of order exactly `k`, sorted by `(start, gap)`.
pub fn cadences_of_order(text: &Text, k: usize) -> Vec<Cadence> {
    let n = text.len();
    if k == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for start in 1..=n {
        let (lo, hi) = gaps_of_order(n, start, k);
        for gap in lo..=hi {
            if let Some(c) = scan(text, start, gap) {
                out.push(c);
            }
        }
    }
    out
}

/// Some cadence of order exactly `k`, or `None`.
pub fn brute_k_cadence(text: &Text, k: usize) -> Option<Cadence> {
    let n = text.len();
    if k == 0 {
        return None;
    }
    (1..=n).find_map(|start| {
        let (lo, hi) = gaps_of_order(n, start, k);
        (lo..=hi).find_map(|gap| scan(text, start, gap))
    })
}

/// Per-symbol existence of an order-`k` cadence, indexed by byte value.
pub fn symbols_with_order(text: &Text, k: usize) -> [bool; 256] {
    let mut seen = [false; 256];
    for c in cadences_of_order(text, k) {
        seen[c.symbol as usize] = true;
    }
    seen
}

/// Anchored positions, ascending, by scanning the multiples of every position.
pub fn brute_anchored(text: &Text) -> Vec<usize> {
    (1..=text.len())
        .filter(|&i| is_anchored(text, i).expect("position in range"))
        .collect()
}

/// Three equally spaced occurrences `x < j < z` of one symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TripleAP {
    pub x: usize,
    pub j: usize,
    pub z: usize,
}

/// Every equally spaced triple of occurrences of `a`, ordered by `(x, z)`.
pub fn brute_ap_triples(text: &Text, a: u8) -> Vec<TripleAP> {
    let idx = OccurrenceIndex::new(text);
    let occ = idx.positions(a);
    let mut out = Vec::new();
    for (p, &x) in occ.iter().enumerate() {
        for &z in &occ[p + 1..] {
            if (z - x) % 2 == 0 {
                let j = (x + z) / 2;
                if text.at(j) == a {
                    out.push(TripleAP { x, j, z });
                }
            }
        }
    }
    out
}

/// Integer weights, all inside `[-2 * bound, 2 * bound]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightSet {
    pub weights: Vec<i64>,
    pub bound: i64,
}

impl WeightSet {
    pub fn new(weights: Vec<i64>, bound: i64) -> Result<Self> {
        if let Some(w) = weights.iter().find(|w| w.abs() > 2 * bound) {
            return Err(CadenceError::invalid(format!(
                "weight {w} outside [-{0}, {0}]",
                2 * bound
            )));
        }
        Ok(WeightSet { weights, bound })
    }

    /// Uses the smallest bound that admits every weight.
    pub fn from_weights(weights: Vec<i64>) -> Self {
        let max = weights.iter().map(|w| w.abs()).max().unwrap_or(0);
        WeightSet {
            weights,
            bound: (max + 1) / 2,
        }
    }

    /// Distinct weights in order of first appearance.
    pub fn distinct(&self) -> Vec<i64> {
        let mut seen = std::collections::HashSet::new();
        self.weights
            .iter()
            .copied()
            .filter(|w| seen.insert(*w))
            .collect()
    }
}

/// Three distinct members of the set summing to zero.
pub fn brute_3sum_zero(w: &WeightSet) -> Option<(i64, i64, i64)> {
    let v = w.distinct();
    for p in 0..v.len() {
        for q in p + 1..v.len() {
            for r in q + 1..v.len() {
                if v[p] + v[q] + v[r] == 0 {
                    return Some((v[p], v[q], v[r]));
                }
            }
        }
    }
    None
}

/// Two distinct positive members and one negative member summing to zero,
/// as `(w1, w2, w3)` with `w1 < w3` positive and `w2` negative.
pub fn brute_3sum_two_positive(w: &WeightSet) -> Option<(i64, i64, i64)> {
    let v = w.distinct();
    let pos: Vec<i64> = v.iter().copied().filter(|&x| x > 0).collect();
    let neg: Vec<i64> = v.iter().copied().filter(|&x| x < 0).collect();
    for (p, &a) in pos.iter().enumerate() {
        for &c in &pos[p + 1..] {
            if let Some(&b) = neg.iter().find(|&&b| a + b + c == 0) {
                return Some((a.min(c), b, a.max(c)));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::is_cadence;

    #[test]
    fn enumeration_examples() {
        let s = Text::from("ALABARALAALABARDA");
        let all = enumerate_cadences(&s, 3);
        assert!(all.iter().any(|c| (c.start, c.gap, c.order) == (3, 7, 3)));
        assert!(all
            .windows(2)
            .all(|w| (w[0].start, w[0].gap) < (w[1].start, w[1].gap)));
        assert!(enumerate_cadences(&Text::from("AB"), 2).is_empty());
        let aa = enumerate_cadences(&Text::from("AA"), 2);
        assert_eq!(aa.len(), 1);
        assert_eq!((aa[0].start, aa[0].gap, aa[0].order), (1, 1, 2));
    }

    #[test]
    fn enumeration_matches_definition_scan() {
        let s = Text::from("ABAABBABAABAAB");
        let n = s.len();
        for k_min in 1..5 {
            let mut expected = Vec::new();
            for i in 1..=n {
                for d in i..=n {
                    if is_cadence(&s, i, d).unwrap() && (n - i) / d + 1 >= k_min {
                        expected.push((i, d));
                    }
                }
            }
            let got: Vec<_> = enumerate_cadences(&s, k_min)
                .iter()
                .map(|c| (c.start, c.gap))
                .collect();
            assert_eq!(got, expected);
        }
        for k in 1..6 {
            let by_filter: Vec<_> = enumerate_cadences(&s, 1)
                .into_iter()
                .filter(|c| c.order == k)
                .collect();
            assert_eq!(cadences_of_order(&s, k), by_filter, "k = {k}");
        }
    }

    #[test]
    fn anchored_examples() {
        let s = Text::from("ALABARALAALABARDA");
        assert_eq!(
            brute_anchored(&s),
            vec![7, 9, 10, 11, 12, 13, 14, 15, 16, 17]
        );
        assert_eq!(
            brute_anchored(&Text::from("AAAAAAAA")),
            (1..=8).collect::<Vec<_>>()
        );
        assert_eq!(brute_anchored(&Text::from("AB")), vec![2]);
        assert!(brute_anchored(&Text::default()).is_empty());
    }

    #[test]
    fn k_cadence_examples() {
        let c = brute_k_cadence(&Text::from("100010001"), 3).unwrap();
        assert_eq!(c.order, 3);
        assert!(is_cadence(&Text::from("100010001"), c.start, c.gap).unwrap());
        assert!(cadences_of_order(&Text::from("100010001"), 3)
            .iter()
            .any(|c| (c.start, c.gap) == (1, 4)));

        let s = Text::from("000100100100");
        assert!(cadences_of_order(&s, 3).iter().all(|c| c.symbol != b'1'));
        assert!(!symbols_with_order(&s, 3)[b'1' as usize]);
        assert!(brute_k_cadence(&Text::from("A"), 2).is_none());
    }

    #[test]
    fn ap_triple_examples() {
        assert_eq!(
            brute_ap_triples(&Text::from("000100100100"), b'1'),
            vec![TripleAP { x: 4, j: 7, z: 10 }]
        );
        assert_eq!(
            brute_ap_triples(&Text::from("100010001"), b'1'),
            vec![TripleAP { x: 1, j: 5, z: 9 }]
        );
        assert!(brute_ap_triples(&Text::from("AB"), b'A').is_empty());
    }

    #[test]
    fn three_sum_examples() {
        let w = WeightSet::from_weights(vec![3, 4, -7]);
        assert_eq!(brute_3sum_zero(&w), Some((3, 4, -7)));
        assert_eq!(
            brute_3sum_zero(&WeightSet::from_weights(vec![1, 2, 3])),
            None
        );
        assert_eq!(
            brute_3sum_zero(&WeightSet::from_weights(vec![1, 9, -10])),
            Some((1, 9, -10))
        );
        // one element cannot be used twice
        assert_eq!(
            brute_3sum_zero(&WeightSet::from_weights(vec![5, -10, 5])),
            None
        );
        assert_eq!(brute_3sum_two_positive(&w), Some((3, -7, 4)));
        // (-3, -4, 7) is a zero triple of the other sign pattern
        let mixed = WeightSet::from_weights(vec![-3, -4, 7]);
        assert!(brute_3sum_zero(&mixed).is_some());
        assert_eq!(brute_3sum_two_positive(&mixed), None);
    }

    #[test]
    fn weight_range_is_checked() {
        assert!(WeightSet::new(vec![1, -4], 2).is_ok());
        assert!(WeightSet::new(vec![1, -5], 2).is_err());
        assert_eq!(WeightSet::from_weights(vec![3, 4, -7]).bound, 4);
    }
}
