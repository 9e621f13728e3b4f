//! The catcher: detects square suffixes whose first position lies in a fixed
//! interval of positions (the trap).
//!
//! For a trap `[i, j]` the catcher keeps the border array `b` of the window
//! `text[j+1..n]` and the length `s` of the longest common suffix of
//! `text[i..j]` and `text[1..n-b[n]]`. Provided `text[1..n-1]` is squarefree
//! and `j - i + 1 <= n - j`, a square suffix starting inside the trap exists
//! iff `2*b[n] + s >= n - j`; its second half then has the window's longest
//! border as a suffix. Total work over the catcher's lifetime is `O(n - j)`.

use crate::text::{SquareReport, Text};
use crate::Error;

/// Closed interval `[start, end]` of text positions. Empty when `start > end`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Trap {
    pub start: usize,
    pub end: usize,
}

impl Trap {
    pub const EMPTY: Trap = Trap { start: 1, end: 0 };

    pub const fn new(start: usize, end: usize) -> Self {
        Trap { start, end }
    }

    pub fn is_empty(&self) -> bool {
        self.start > self.end
    }

    pub fn len(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            self.end - self.start + 1
        }
    }

    pub fn contains(&self, p: usize) -> bool {
        self.start <= p && p <= self.end
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CatcherOutcome {
    NoSquare,
    Square(SquareReport),
}

/// Loop-iteration counts: `border` for the failure-function fallbacks,
/// `naive` for the symbol comparisons that extend `s`, `steps` for window
/// positions processed (one per feed or replayed symbol).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct WorkCounters {
    pub border: u64,
    pub naive: u64,
    pub steps: u64,
}

impl WorkCounters {
    pub fn total(&self) -> u64 {
        self.border + self.naive + self.steps
    }
}

impl std::ops::AddAssign for WorkCounters {
    fn add_assign(&mut self, rhs: Self) {
        self.border += rhs.border;
        self.naive += rhs.naive;
        self.steps += rhs.steps;
    }
}

#[derive(Clone, Debug)]
pub struct Catcher {
    trap: Trap,
    /// `borders[k]` is `b[j + k]`; `borders[0] = -1` is the sentinel.
    borders: Vec<isize>,
    matched: usize,
    fed_to: usize,
    work: WorkCounters,
    terminated: bool,
}

impl Catcher {
    /// Builds a catcher for `trap` over a text that already holds `text.len()`
    /// symbols, replaying the window `text[trap.end+1..]` one symbol at a time.
    ///
    /// If the replay detects a square suffix it is returned alongside the
    /// catcher, which is then terminated.
    pub fn create<S: Copy + Eq>(
        text: &Text<S>,
        trap: Trap,
    ) -> Result<(Catcher, Option<SquareReport>), Error> {
        let n = text.len();
        if trap.is_empty() {
            return Ok((Catcher::inert(trap, n), None));
        }
        if trap.start == 0 {
            return Err(Error::InvalidTrap {
                start: trap.start,
                end: trap.end,
            });
        }
        if trap.end > n {
            return Err(Error::TrapBeyondText {
                end: trap.end,
                len: n,
            });
        }
        let mut borders = Vec::with_capacity(n - trap.end + 1);
        borders.push(-1);
        let mut catcher = Catcher {
            trap,
            borders,
            matched: 0,
            fed_to: trap.end,
            work: WorkCounters::default(),
            terminated: false,
        };
        for m in trap.end + 1..=n {
            catcher.fed_to = m;
            if let CatcherOutcome::Square(report) = catcher.step(text, m) {
                catcher.terminated = true;
                return Ok((catcher, Some(report)));
            }
        }
        Ok((catcher, None))
    }

    fn inert(trap: Trap, n: usize) -> Self {
        Catcher {
            trap,
            borders: Vec::new(),
            matched: 0,
            fed_to: n,
            work: WorkCounters::default(),
            terminated: false,
        }
    }

    /// Processes the symbol just appended to `text`.
    pub fn feed<S: Copy + Eq>(&mut self, text: &Text<S>) -> Result<CatcherOutcome, Error> {
        if self.terminated {
            return Err(Error::AlreadyTerminated);
        }
        let n = text.len();
        if n != self.fed_to + 1 {
            return Err(Error::OutOfStep {
                expected: self.fed_to + 1,
                found: n,
            });
        }
        self.fed_to = n;
        if self.trap.is_empty() {
            return Ok(CatcherOutcome::NoSquare);
        }
        let outcome = self.step(text, n);
        if let CatcherOutcome::Square(_) = outcome {
            self.terminated = true;
        }
        Ok(outcome)
    }

    /// One step of the catcher with `n` the current text length.
    fn step<S: Copy + Eq>(&mut self, text: &Text<S>, n: usize) -> CatcherOutcome {
        let Trap { start: i, end: j } = self.trap;
        let trap_len = j - i + 1;
        let c = text.at(n);
        self.work.steps += 1;

        let mut b = self.borders[n - 1 - j] + 1;
        while b > 0 && text.at(j + b as usize) != c {
            self.work.border += 1;
            b = self.borders[b as usize - 1] + 1;
            self.matched = 0;
        }
        self.borders.push(b);

        let b = b as usize;
        let window = n - j;
        if 2 * b + trap_len >= window && self.matched == 0 {
            while self.matched < trap_len
                && text.at(n - b - self.matched) == text.at(j - self.matched)
            {
                self.matched += 1;
                self.work.naive += 1;
            }
        }
        if 2 * b + self.matched >= window {
            CatcherOutcome::Square(SquareReport::suffix(n, 2 * (window - b)))
        } else {
            CatcherOutcome::NoSquare
        }
    }

    pub fn trap(&self) -> Trap {
        self.trap
    }

    pub fn is_inert(&self) -> bool {
        self.trap.is_empty()
    }

    pub fn is_terminated(&self) -> bool {
        self.terminated
    }

    /// `b[k]` for `k` in `j..=n`, `None` outside that range or for inert catchers.
    pub fn border(&self, k: usize) -> Option<isize> {
        k.checked_sub(self.trap.end)
            .and_then(|off| self.borders.get(off).copied())
    }

    /// Current naive-match length `s`.
    pub fn matched(&self) -> usize {
        self.matched
    }

    /// Number of window positions processed so far (`n - j`).
    pub fn window_len(&self) -> usize {
        self.borders.len().saturating_sub(1)
    }

    /// Stored border-array cells, sentinel included.
    pub fn cells(&self) -> usize {
        self.borders.len()
    }

    pub fn work_counters(&self) -> WorkCounters {
        self.work
    }
}
