//! Whole-corpus evaluation: run a detector over many independent words and
//! compare against the naive oracle.
//!
//! Words are processed in parallel with rayon when the `parallel` feature is
//! enabled (the default) and sequentially otherwise. [`cross_check_seq`] is
//! always available so the two can be compared.

use crate::detector::{Algorithm, OnlineDetector, WorkAudit};
use crate::oracle::RepeatOracle;
use crate::ordered::OrderedDetector;
use crate::reference::{naive_first_square, repeat_lengths};
use crate::text::{verify_square, SquareReport, Verdict};
use crate::trap::TrapSystem;

/// How many failing examples a report keeps.
const KEEP: usize = 8;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Options {
    /// Check the detector's structural invariants after every symbol.
    pub invariants: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Mismatch {
    pub word: Vec<u8>,
    pub expected_step: Option<usize>,
    pub reported: Option<SquareReport>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct CrossCheck {
    pub words: u64,
    pub squares: u64,
    pub mismatches: u64,
    pub unverified: u64,
    pub invariant_failures: u64,
    pub examples: Vec<Mismatch>,
    pub invariant_examples: Vec<String>,
    pub audit: WorkAudit,
}

impl CrossCheck {
    pub fn is_clean(&self) -> bool {
        self.mismatches == 0 && self.unverified == 0 && self.invariant_failures == 0
    }

    fn merge(mut self, other: CrossCheck) -> CrossCheck {
        self.words += other.words;
        self.squares += other.squares;
        self.mismatches += other.mismatches;
        self.unverified += other.unverified;
        self.invariant_failures += other.invariant_failures;
        self.audit.merge(&other.audit);
        for e in other.examples {
            if self.examples.len() < KEEP {
                self.examples.push(e);
            }
        }
        for e in other.invariant_examples {
            if self.invariant_examples.len() < KEEP {
                self.invariant_examples.push(e);
            }
        }
        self
    }
}

trait Checked: OnlineDetector<u8> {
    fn check(&self) -> Result<(), String>;
}

impl Checked for TrapSystem<u8> {
    fn check(&self) -> Result<(), String> {
        self.check_invariants()
    }
}

impl Checked for OrderedDetector<u8> {
    fn check(&self) -> Result<(), String> {
        self.check_invariants()
    }
}

impl Checked for crate::detector::NaiveDetector<u8> {
    fn check(&self) -> Result<(), String> {
        Ok(())
    }
}

fn check_word<D: Checked>(mut detector: D, word: &[u8], options: Options) -> CrossCheck {
    let mut out = CrossCheck {
        words: 1,
        ..CrossCheck::default()
    };
    let mut reported = None;
    for &c in word {
        let verdict = detector
            .push(c)
            .expect("detector accepts input until it reports");
        if options.invariants && verdict == Verdict::SquarefreeSoFar {
            if let Err(e) = detector.check() {
                out.invariant_failures += 1;
                out.invariant_examples
                    .push(format!("{}: {e}", String::from_utf8_lossy(word)));
                break;
            }
        }
        if let Verdict::Square(r) = verdict {
            reported = Some(r);
            break;
        }
    }
    let expected = naive_first_square(word).map(|(step, _)| step);
    if reported.map(|r| r.end) != expected {
        out.mismatches = 1;
        out.examples.push(Mismatch {
            word: word.to_vec(),
            expected_step: expected,
            reported,
        });
    }
    if let Some(r) = reported {
        out.squares = 1;
        if verify_square(detector.text(), &r) != Ok(true) || r.end != detector.text().len() {
            out.unverified = 1;
        }
    }
    out.audit = detector.audit();
    out
}

/// Runs `algo` over one word and compares with the naive oracle.
pub fn cross_check_word(word: &[u8], algo: Algorithm, options: Options) -> CrossCheck {
    match algo {
        Algorithm::Trap => check_word(TrapSystem::new(), word, options),
        Algorithm::Ordered => check_word(OrderedDetector::new(), word, options),
        Algorithm::Naive => check_word(crate::detector::NaiveDetector::new(), word, options),
    }
}

pub fn cross_check_seq(words: &[Vec<u8>], algo: Algorithm, options: Options) -> CrossCheck {
    words
        .iter()
        .map(|w| cross_check_word(w, algo, options))
        .fold(CrossCheck::default(), CrossCheck::merge)
}

#[cfg(feature = "parallel")]
pub fn cross_check_par(words: &[Vec<u8>], algo: Algorithm, options: Options) -> CrossCheck {
    use rayon::prelude::*;
    words
        .par_iter()
        .map(|w| cross_check_word(w, algo, options))
        .reduce(CrossCheck::default, CrossCheck::merge)
}

/// Parallel when the `parallel` feature is on, sequential otherwise.
pub fn cross_check(words: &[Vec<u8>], algo: Algorithm, options: Options) -> CrossCheck {
    #[cfg(feature = "parallel")]
    {
        cross_check_par(words, algo, options)
    }
    #[cfg(not(feature = "parallel"))]
    {
        cross_check_seq(words, algo, options)
    }
}

/// Words on some prefix of which the repeat oracle disagrees with the
/// quadratic reference, plus the number of prefixes compared.
pub fn check_repeat_oracle(words: &[Vec<u8>]) -> (Vec<Vec<u8>>, u64) {
    let one = |w: &Vec<u8>| {
        let expected = repeat_lengths(w);
        let mut oracle = RepeatOracle::new();
        let ok = w
            .iter()
            .zip(&expected)
            .all(|(&c, &t)| oracle.extend(c) == t);
        (
            if ok { Vec::new() } else { vec![w.clone()] },
            w.len() as u64,
        )
    };
    let merge = |mut a: (Vec<Vec<u8>>, u64), b: (Vec<Vec<u8>>, u64)| {
        a.0.extend(b.0);
        a.1 += b.1;
        a
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        words.par_iter().map(one).reduce(|| (Vec::new(), 0), merge)
    }
    #[cfg(not(feature = "parallel"))]
    {
        words.iter().map(one).fold((Vec::new(), 0), merge)
    }
}
