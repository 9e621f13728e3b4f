//! Online detection of the first square (a factor of the form `xx`) in a
//! stream of symbols.
//!
//! Two detectors are provided:
//!
//! * [`TrapSystem`] works over any alphabet with equality only and keeps
//!   `O(log n)` [`Catcher`]s over dyadic traps, for `O(n log n)` total time.
//! * [`OrderedDetector`] needs an ordered alphabet. It steers three catchers
//!   with the longest-repeated-suffix length reported by a [`RepeatOracle`],
//!   for `O(n log σ)` total time.
//!
//! Both return a [`Verdict`] after every symbol and stop being usable once a
//! square has been reported. [`reference`] holds brute-force ground truth and
//! corpus generators, [`batch`] evaluates whole corpora (in parallel with the
//! `parallel` feature).

pub mod batch;
pub mod bench;
pub mod catcher;
pub mod detector;
pub mod oracle;
pub mod ordered;
pub mod reference;
pub mod stream;
pub mod text;
pub mod trap;

pub use catcher::{Catcher, CatcherOutcome, Trap, WorkCounters};
pub use detector::{Algorithm, Detector, NaiveDetector, OnlineDetector, WorkAudit};
pub use oracle::RepeatOracle;
pub use ordered::OrderedDetector;
pub use text::{verify_square, SquareReport, Text, Verdict};
pub use trap::TrapSystem;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("detector already reported a square; no further input is accepted")]
    AlreadyTerminated,
    #[error("trap [{start}, {end}] must start at a positive position")]
    InvalidTrap { start: usize, end: usize },
    #[error("trap ends at {end} but the text has only {len} symbols")]
    TrapBeyondText { end: usize, len: usize },
    #[error("catcher expected text of length {expected}, found {found}")]
    OutOfStep { expected: usize, found: usize },
    #[error("positions {start}..={end} are outside a text of length {len}")]
    OutOfRange {
        start: usize,
        end: usize,
        len: usize,
    },
    #[error("alphabet of size {sigma} is too small (need at least {min})")]
    AlphabetTooSmall { sigma: usize, min: usize },
    #[error("alphabet of size {sigma} exceeds the supported maximum {max}")]
    AlphabetTooLarge { sigma: usize, max: usize },
    #[error("malformed corpus line: {0}")]
    Corpus(String),
}
