//! Cadence detection in byte strings.
//!
//! A *cadence* `(i, d)` of a text `S[1..n]` is a start position and gap with
//! `i <= d <= n` such that every position congruent to `i` modulo `d` holds the
//! symbol `S[i]`. Its order is the number of in-range terms,
//! `(n - i) / d + 1`. An *anchored* cadence is a position `i` whose multiples
//! all hold `S[i]`.
//!
//! The crate is organised around the detectors:
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`text`] | `Text`, `Cadence`, direct validators, the 2-cadence detector |
//! | [`oracle`] | brute-force ground truth used to check every fast path |
//! | [`convolve`] | exact integer convolution over a number-theoretic transform |
//! | [`cadence3`] | 3-cadence detection through 3SUM, exact staircase counting, the reverse encoder |
//! | [`anchored`] | prime sieve and the B-array pass for anchored cadences |
//! | [`probe`] | seeded random texts and scaling probes |
//!
//! Positions are 1-indexed in every public signature.
//!
//! ```
//! use cadence::{Text, anchored::anchored_cadences, text::is_cadence};
//!
//! let s = Text::from("ALABARALAALABARDA");
//! assert!(is_cadence(&s, 3, 7).unwrap());
//! assert_eq!(anchored_cadences(&s).smallest, Some(7));
//! ```

pub mod anchored;
pub mod cadence3;
pub mod convolve;
mod error;
pub mod exec;
pub mod oracle;
pub mod probe;
pub mod text;

pub use error::{CadenceError, Result};
pub use exec::Exec;
pub use text::{Cadence, OccurrenceIndex, Text};
