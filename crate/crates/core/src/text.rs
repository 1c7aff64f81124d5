//! Texts, cadences and the definition-level checks.

use std::fmt;

use serde::Serialize;

use crate::{CadenceError, Result};

/// An immutable byte string addressed with 1-indexed positions `1..=len`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Text {
    bytes: Vec<u8>,
}

impl Text {
    pub fn new(bytes: impl Into<Vec<u8>>) -> Self {
        Text {
            bytes: bytes.into(),
        }
    }

    pub fn len(&self) -> usize {
        self.bytes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bytes.is_empty()
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    /// Symbol at 1-indexed `pos`.
    ///
    /// Panics if `pos` is not in `1..=len`.
    #[inline]
    pub fn at(&self, pos: usize) -> u8 {
        self.bytes[pos - 1]
    }

    pub fn get(&self, pos: usize) -> Option<u8> {
        pos.checked_sub(1).and_then(|p| self.bytes.get(p).copied())
    }

    /// Occurrence count of every byte value.
    pub fn histogram(&self) -> [usize; 256] {
        let mut counts = [0usize; 256];
        for &b in &self.bytes {
            counts[b as usize] += 1;
        }
        counts
    }

    /// Distinct symbols in ascending byte order.
    pub fn symbols(&self) -> Vec<u8> {
        let counts = self.histogram();
        (0..=255u8).filter(|&b| counts[b as usize] > 0).collect()
    }
}

impl fmt::Debug for Text {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Text({:?})", String::from_utf8_lossy(&self.bytes))
    }
}

impl From<&str> for Text {
    fn from(s: &str) -> Self {
        Text::new(s.as_bytes())
    }
}

impl From<&[u8]> for Text {
    fn from(s: &[u8]) -> Self {
        Text::new(s)
    }
}

impl From<Vec<u8>> for Text {
    fn from(bytes: Vec<u8>) -> Self {
        Text { bytes }
    }
}

/// A cadence `(start, gap)` together with its order and repeated symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Cadence {
    pub start: usize,
    pub gap: usize,
    pub order: usize,
    pub symbol: u8,
}

impl Cadence {
    /// Positions `start, start + gap, ...` that lie inside a text of length `n`.
    pub fn positions(&self, n: usize) -> impl Iterator<Item = usize> {
        (self.start..=n).step_by(self.gap.max(1))
    }
}

fn check_pair(n: usize, start: usize, gap: usize) -> Result<()> {
    if start == 0 || gap == 0 || gap > n {
        return Err(CadenceError::invalid(format!(
            "(i, d) = ({start}, {gap}) needs 1 <= i <= d <= n = {n}"
        )));
    }
    if start > gap {
        return Err(CadenceError::invalid(format!(
            "start {start} exceeds gap {gap}"
        )));
    }
    Ok(())
}

/// Number of terms `start + t * gap` (t >= 0) inside `1..=n`.
pub fn cadence_order(n: usize, start: usize, gap: usize) -> Result<usize> {
    check_pair(n, start, gap)?;
    Ok((n - start) / gap + 1)
}

/// Whether `(start, gap)` is a cadence: every in-range position congruent to
/// `start` modulo `gap` holds `S[start]`.
///
/// `start <= gap` makes `start` the least positive member of its residue class,
/// so scanning forward from it covers the whole class.
pub fn is_cadence(text: &Text, start: usize, gap: usize) -> Result<bool> {
    check_pair(text.len(), start, gap)?;
    let a = text.at(start);
    Ok((start..=text.len()).step_by(gap).all(|j| text.at(j) == a))
}

/// Checks `(start, gap)` and returns it as a [`Cadence`] if it is one.
pub fn cadence_at(text: &Text, start: usize, gap: usize) -> Result<Option<Cadence>> {
    if !is_cadence(text, start, gap)? {
        return Ok(None);
    }
    Ok(Some(Cadence {
        start,
        gap,
        order: (text.len() - start) / gap + 1,
        symbol: text.at(start),
    }))
}

/// Whether every multiple of `pos` holds `S[pos]`.
pub fn is_anchored(text: &Text, pos: usize) -> Result<bool> {
    if pos == 0 || pos > text.len() {
        return Err(CadenceError::invalid(format!(
            "position {pos} outside 1..={}",
            text.len()
        )));
    }
    let a = text.at(pos);
    Ok((pos..=text.len()).step_by(pos).all(|j| text.at(j) == a))
}

/// Sorted occurrence positions of every byte value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OccurrenceIndex {
    lists: Vec<Vec<usize>>,
}

impl OccurrenceIndex {
    pub fn new(text: &Text) -> Self {
        let mut lists = vec![Vec::new(); 256];
        for (p, &b) in text.as_bytes().iter().enumerate() {
            lists[b as usize].push(p + 1);
        }
        OccurrenceIndex { lists }
    }

    /// Ascending positions of `a`; empty when `a` does not occur.
    pub fn positions(&self, a: u8) -> &[usize] {
        &self.lists[a as usize]
    }

    pub fn count(&self, a: u8) -> usize {
        self.lists[a as usize].len()
    }

    /// Symbols with at least one occurrence, ascending.
    pub fn symbols(&self) -> impl Iterator<Item = u8> + '_ {
        (0..=255u8).filter(move |&a| !self.lists[a as usize].is_empty())
    }
}

pub fn index_occurrences(text: &Text) -> OccurrenceIndex {
    OccurrenceIndex::new(text)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TwoCadenceVerdict {
    pub symbol: u8,
    /// Leftmost and rightmost occurrence, present when they form a 2-cadence.
    pub witness: Option<(usize, usize)>,
}

impl TwoCadenceVerdict {
    pub fn found(&self) -> bool {
        self.witness.is_some()
    }

    /// The 2-cadence `(i, j - i)` named by the witness.
    pub fn cadence(&self) -> Option<Cadence> {
        self.witness.map(|(i, j)| Cadence {
            start: i,
            gap: j - i,
            order: 2,
            symbol: self.symbol,
        })
    }
}

/// One verdict per symbol occurring in the text, ascending by symbol.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoCadenceReport {
    pub verdicts: Vec<TwoCadenceVerdict>,
}

impl TwoCadenceReport {
    pub fn verdict(&self, a: u8) -> Option<&TwoCadenceVerdict> {
        self.verdicts.iter().find(|v| v.symbol == a)
    }

    pub fn any(&self) -> bool {
        self.verdicts.iter().any(TwoCadenceVerdict::found)
    }
}

/// A symbol has a 2-cadence iff its leftmost occurrence `i` and rightmost
/// occurrence `j` satisfy `2i <= j` and `2j - i > n`.
pub fn detect_2cadence(text: &Text) -> TwoCadenceReport {
    let n = text.len();
    let mut first = [0usize; 256];
    let mut last = [0usize; 256];
    for (p, &b) in text.as_bytes().iter().enumerate() {
        let slot = b as usize;
        if first[slot] == 0 {
            first[slot] = p + 1;
        }
        last[slot] = p + 1;
    }
    let verdicts = (0..=255u8)
        .filter(|&a| first[a as usize] != 0)
        .map(|a| {
            let (i, j) = (first[a as usize], last[a as usize]);
            let witness = (2 * i <= j && 2 * j - i > n).then_some((i, j));
            TwoCadenceVerdict { symbol: a, witness }
        })
        .collect();
    TwoCadenceReport { verdicts }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const EXAMPLE: &str = "ALABARALAALABARDA";

    #[test]
    fn occurrence_lists_of_the_example() {
        let idx = index_occurrences(&Text::from(EXAMPLE));
        assert_eq!(idx.positions(b'A'), &[1, 3, 5, 7, 9, 10, 12, 14, 17]);
        assert_eq!(idx.positions(b'L'), &[2, 8, 11]);
        assert_eq!(idx.positions(b'B'), &[4, 13]);
        assert_eq!(idx.positions(b'R'), &[6, 15]);
        assert_eq!(idx.positions(b'D'), &[16]);
        assert_eq!(idx.symbols().collect::<Vec<_>>(), b"ABDLR".to_vec());
        assert_eq!(idx.symbols().map(|a| idx.count(a)).sum::<usize>(), 17);

        let empty = index_occurrences(&Text::default());
        assert_eq!(empty.symbols().count(), 0);

        let unary = index_occurrences(&Text::from("AAAA"));
        assert_eq!(unary.positions(b'A'), &[1, 2, 3, 4]);
        assert_eq!(unary.count(b'A'), 4);
    }

    #[test]
    fn example_cadences() {
        let s = Text::from(EXAMPLE);
        assert!(is_cadence(&s, 3, 7).unwrap());
        // S[11] = L
        assert!(!is_cadence(&s, 1, 2).unwrap());
        assert_eq!(cadence_order(17, 3, 7).unwrap(), 3);
        assert_eq!(cadence_order(12, 4, 4).unwrap(), 3);
        assert!(is_anchored(&s, 7).unwrap());
        assert!(!is_anchored(&s, 5).unwrap());
    }

    #[test]
    fn trivial_one_cadences() {
        let s = Text::from(EXAMPLE);
        let n = s.len();
        for i in 1..=n {
            for d in i.max(n - i + 1)..=n {
                assert!(is_cadence(&s, i, d).unwrap(), "({i}, {d})");
                assert_eq!(cadence_order(n, i, d).unwrap(), 1);
            }
        }
    }

    #[test]
    fn invalid_pairs_are_rejected() {
        let s = Text::from("ABCD");
        assert!(is_cadence(&s, 3, 2).is_err());
        assert!(is_cadence(&s, 0, 2).is_err());
        assert!(is_cadence(&s, 1, 5).is_err());
        assert!(cadence_order(4, 2, 1).is_err());
        assert!(is_anchored(&s, 0).is_err());
        assert!(is_anchored(&s, 5).is_err());
        let empty = Text::default();
        assert!(is_cadence(&empty, 1, 1).is_err());
        assert!(is_anchored(&empty, 1).is_err());
    }

    #[test]
    fn two_cadence_examples() {
        let s = Text::from(EXAMPLE);
        let report = detect_2cadence(&s);
        let a = report.verdict(b'A').unwrap();
        assert_eq!(a.witness, Some((1, 17)));
        let c = a.cadence().unwrap();
        assert_eq!((c.start, c.gap), (1, 16));
        assert!(is_cadence(&s, 1, 16).unwrap());
        assert!(!report.verdict(b'D').unwrap().found());

        let abca = detect_2cadence(&Text::from("abca"));
        assert_eq!(abca.verdict(b'a').unwrap().witness, Some((1, 4)));
        assert!(is_cadence(&Text::from("abca"), 1, 3).unwrap());

        assert!(!detect_2cadence(&Text::default()).any());
    }

    fn text_strategy() -> impl Strategy<Value = Text> {
        (1usize..5, prop::collection::vec(any::<u8>(), 0..60)).prop_map(|(sigma, raw)| {
            Text::new(
                raw.into_iter()
                    .map(|b| b'a' + b % sigma as u8)
                    .collect::<Vec<_>>(),
            )
        })
    }

    proptest! {
        #[test]
        fn is_cadence_matches_residue_scan(text in text_strategy(), a in 1usize..64, b in 1usize..64) {
            let n = text.len();
            prop_assume!(n > 0);
            let i = 1 + (a - 1) % n;
            let d = i + (b - 1) % (n - i + 1);
            let literal = (1..=n).filter(|j| j % d == i % d).all(|j| text.at(j) == text.at(i));
            prop_assert_eq!(is_cadence(&text, i, d).unwrap(), literal);
            let terms = (0..).take_while(|t| i + t * d <= n).count();
            prop_assert_eq!(cadence_order(n, i, d).unwrap(), terms);
        }

        #[test]
        fn upper_half_is_anchored(text in text_strategy()) {
            let n = text.len();
            for i in (n / 2 + 1)..=n {
                prop_assert!(is_anchored(&text, i).unwrap());
            }
        }
    }
}
