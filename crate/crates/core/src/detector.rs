//! Common interface over the online detectors, plus the naive one used for
//! cross-validation.

use std::fmt;
use std::str::FromStr;

use crate::catcher::{Catcher, WorkCounters};
use crate::ordered::OrderedDetector;
use crate::text::{SquareReport, Text, Verdict};
use crate::trap::TrapSystem;
use crate::Error;

/// An online square detector: one verdict per appended symbol.
pub trait OnlineDetector<S> {
    /// Appends `c` and reports whether the text now ends with a square.
    /// Fails with [`Error::AlreadyTerminated`] once a square has been reported.
    fn push(&mut self, c: S) -> Result<Verdict, Error>;

    fn text(&self) -> &Text<S>;

    fn terminated(&self) -> Option<SquareReport>;

    /// Work summed over every catcher created so far, including removed ones.
    fn work(&self) -> WorkCounters {
        WorkCounters::default()
    }

    /// Largest number of border-array cells held by live catchers at once.
    fn peak_cells(&self) -> usize {
        0
    }

    /// Per-catcher work bounds over every catcher created so far.
    fn audit(&self) -> WorkAudit {
        WorkAudit::default()
    }

    /// Feeds symbols until the first square, returning its step and report.
    fn run<I: IntoIterator<Item = S>>(&mut self, input: I) -> Result<Option<SquareReport>, Error>
    where
        Self: Sized,
    {
        for c in input {
            if let Verdict::Square(r) = self.push(c)? {
                return Ok(Some(r));
            }
        }
        Ok(None)
    }
}

/// Worst per-catcher work relative to window length, over a set of catchers.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct WorkAudit {
    pub catchers: u64,
    /// Catchers whose border work exceeded twice their window length.
    pub border_violations: u64,
    pub max_border_ratio: f64,
    pub max_naive_ratio: f64,
}

impl WorkAudit {
    pub fn record(&mut self, catcher: &Catcher) {
        if catcher.is_inert() {
            return;
        }
        self.catchers += 1;
        let window = catcher.window_len() as u64;
        let work = catcher.work_counters();
        if work.border > 2 * window {
            self.border_violations += 1;
        }
        if window > 0 {
            self.max_border_ratio = self
                .max_border_ratio
                .max(work.border as f64 / window as f64);
            self.max_naive_ratio = self.max_naive_ratio.max(work.naive as f64 / window as f64);
        }
    }

    pub fn merge(&mut self, other: &WorkAudit) {
        self.catchers += other.catchers;
        self.border_violations += other.border_violations;
        self.max_border_ratio = self.max_border_ratio.max(other.max_border_ratio);
        self.max_naive_ratio = self.max_naive_ratio.max(other.max_naive_ratio);
    }
}

/// Rechecks every square suffix after each symbol. Quadratic per step in the
/// worst case; exists to cross-check the fast detectors.
#[derive(Clone, Debug, Default)]
pub struct NaiveDetector<S = u8> {
    text: Text<S>,
    terminated: Option<SquareReport>,
}

impl<S: Copy + Eq> NaiveDetector<S> {
    pub fn new() -> Self {
        NaiveDetector {
            text: Text::new(),
            terminated: None,
        }
    }
}

/// Shortest square suffix of `w`, if any, as `(half_length)`.
pub(crate) fn shortest_square_suffix<S: Eq>(w: &[S]) -> Option<usize> {
    let n = w.len();
    (1..=n / 2).find(|&half| {
        let (a, b) = (&w[n - 2 * half..n - half], &w[n - half..]);
        a.iter().rev().zip(b.iter().rev()).all(|(x, y)| x == y)
    })
}

impl<S: Copy + Eq> OnlineDetector<S> for NaiveDetector<S> {
    fn push(&mut self, c: S) -> Result<Verdict, Error> {
        if self.terminated.is_some() {
            return Err(Error::AlreadyTerminated);
        }
        let n = self.text.append(c);
        match shortest_square_suffix(self.text.as_slice()) {
            Some(half) => {
                let report = SquareReport::suffix(n, 2 * half);
                self.terminated = Some(report);
                Ok(Verdict::Square(report))
            }
            None => Ok(Verdict::SquarefreeSoFar),
        }
    }

    fn text(&self) -> &Text<S> {
        &self.text
    }

    fn terminated(&self) -> Option<SquareReport> {
        self.terminated
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Algorithm {
    Trap,
    Ordered,
    Naive,
}

impl Algorithm {
    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Trap => "trap",
            Algorithm::Ordered => "ordered",
            Algorithm::Naive => "naive",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "trap" => Ok(Algorithm::Trap),
            "ordered" => Ok(Algorithm::Ordered),
            "naive" => Ok(Algorithm::Naive),
            other => Err(format!("unknown algorithm `{other}`")),
        }
    }
}

/// Runtime-selected detector.
#[derive(Clone, Debug)]
pub enum Detector<S = u8> {
    Trap(TrapSystem<S>),
    Ordered(Box<OrderedDetector<S>>),
    Naive(NaiveDetector<S>),
}

impl<S: Copy + Ord> Detector<S> {
    pub fn new(algo: Algorithm) -> Self {
        match algo {
            Algorithm::Trap => Detector::Trap(TrapSystem::new()),
            Algorithm::Ordered => Detector::Ordered(Box::default()),
            Algorithm::Naive => Detector::Naive(NaiveDetector::new()),
        }
    }
}

macro_rules! dispatch {
    ($self:ident, $d:ident => $e:expr) => {
        match $self {
            Detector::Trap($d) => $e,
            Detector::Ordered($d) => $e,
            Detector::Naive($d) => $e,
        }
    };
}

impl<S: Copy + Ord> OnlineDetector<S> for Detector<S> {
    fn push(&mut self, c: S) -> Result<Verdict, Error> {
        dispatch!(self, d => d.push(c))
    }

    fn text(&self) -> &Text<S> {
        dispatch!(self, d => d.text())
    }

    fn terminated(&self) -> Option<SquareReport> {
        dispatch!(self, d => d.terminated())
    }

    fn work(&self) -> WorkCounters {
        dispatch!(self, d => d.work())
    }

    fn peak_cells(&self) -> usize {
        dispatch!(self, d => d.peak_cells())
    }

    fn audit(&self) -> WorkAudit {
        dispatch!(self, d => d.audit())
    }
}
