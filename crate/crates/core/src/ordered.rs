//! Online detection over an ordered alphabet with three catchers.
//!
//! Let `t_n` be the longest suffix of the text that occurs at least twice. If
//! `text[1..n-1]` is squarefree, any square suffix has length `k` with
//! `t_n < k <= 2 t_n`, so it starts inside `[n - 2t_n + 1, n - t_n]`. A budget
//! `s` with `3s <= 4t_n <= 4s` is kept, and three adjacent traps are rebuilt
//! lazily so that together they always cover that block:
//!
//! ```text
//! [max(n-4s+1, 1), max(n-2s, 1)]  [j1+1, n-s]  [n-s+1, n-ceil(s/2)]
//! ```
//!
//! Rebuilds are spaced far enough apart that the total catcher work is linear;
//! the oracle dominates with `O(n log σ)`.

use crate::catcher::{Catcher, CatcherOutcome, Trap, WorkCounters};
use crate::detector::{OnlineDetector, WorkAudit};
use crate::oracle::RepeatOracle;
use crate::text::{SquareReport, Text, Verdict};
use crate::Error;

/// Trap layout installed by a full rebuild at length `n` with budget `s`.
pub fn layout(n: usize, s: usize) -> [Trap; 3] {
    let [first, second] = front_layout(n, s);
    [first, second, back_layout(n, s)]
}

fn front_layout(n: usize, s: usize) -> [Trap; 2] {
    let i1 = (n + 1).saturating_sub(4 * s).max(1);
    let j1 = n.saturating_sub(2 * s).max(1);
    [Trap::new(i1, j1), Trap::new(j1 + 1, n - s)]
}

fn back_layout(n: usize, s: usize) -> Trap {
    Trap::new(n - s + 1, n - s.div_ceil(2))
}

/// One step at which catchers were rebuilt.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rebuild {
    pub step: usize,
    /// Budget after the step.
    pub budget: usize,
    /// The budget collapsed to `t_n`, forcing all three catchers to be rebuilt.
    pub collapse: bool,
    pub front: bool,
    pub back: bool,
}

#[derive(Clone, Debug)]
pub struct OrderedDetector<S = u8> {
    text: Text<S>,
    oracle: RepeatOracle<S>,
    budget: usize,
    /// `None` is the "rebuild me" marker: `i1 = +inf` for the first two,
    /// `j3 = -inf` for the third.
    catchers: [Option<Catcher>; 3],
    terminated: Option<SquareReport>,
    retired_work: WorkCounters,
    retired_audit: WorkAudit,
    created: u64,
    peak_cells: usize,
    rebuilds: Option<Vec<Rebuild>>,
}

impl<S: Copy + Ord> Default for OrderedDetector<S> {
    fn default() -> Self {
        Self::new()
    }
}

impl<S: Copy + Ord> OrderedDetector<S> {
    pub fn new() -> Self {
        OrderedDetector {
            text: Text::new(),
            oracle: RepeatOracle::new(),
            budget: 0,
            catchers: [None, None, None],
            terminated: None,
            retired_work: WorkCounters::default(),
            retired_audit: WorkAudit::default(),
            created: 0,
            peak_cells: 0,
            rebuilds: None,
        }
    }

    /// Same as [`new`](Self::new) but records every rebuild step.
    pub fn with_rebuild_log() -> Self {
        OrderedDetector {
            rebuilds: Some(Vec::new()),
            ..Self::new()
        }
    }

    pub fn len(&self) -> usize {
        self.text.len()
    }

    pub fn is_empty(&self) -> bool {
        self.text.is_empty()
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    /// `t_n` for the current text.
    pub fn repeat_len(&self) -> usize {
        self.oracle.last_t()
    }

    pub fn oracle(&self) -> &RepeatOracle<S> {
        &self.oracle
    }

    /// Current traps; a catcher awaiting its first build reads as empty.
    pub fn traps(&self) -> [Trap; 3] {
        let trap = |k: usize| self.catchers[k].as_ref().map_or(Trap::EMPTY, Catcher::trap);
        [trap(0), trap(1), trap(2)]
    }

    pub fn rebuilds(&self) -> Option<&[Rebuild]> {
        self.rebuilds.as_deref()
    }

    pub fn catchers_created(&self) -> u64 {
        self.created
    }

    pub fn live_cells(&self) -> usize {
        self.catchers.iter().flatten().map(Catcher::cells).sum()
    }

    fn retire(&mut self, k: usize) {
        if let Some(old) = self.catchers[k].take() {
            self.retired_work += old.work_counters();
            self.retired_audit.record(&old);
        }
    }

    fn install(&mut self, k: usize, trap: Trap) -> Result<Option<SquareReport>, Error> {
        let (catcher, report) = Catcher::create(&self.text, trap)?;
        self.created += 1;
        self.retire(k);
        self.catchers[k] = Some(catcher);
        Ok(report)
    }

    /// Checks the budget sandwich, the trap adjacency conditions, and that the
    /// traps cover `[max(n - 2t + 1, 1), n - t]`.
    pub fn check_invariants(&self) -> Result<(), String> {
        let n = self.len();
        let t = self.repeat_len();
        let s = self.budget;
        if 3 * s > 4 * t || t > s {
            return Err(format!("n={n}: budget {s} does not bracket t={t}"));
        }
        if n == 0 {
            return Ok(());
        }
        let [c1, c2, c3] = self.traps();
        let low = (n + 1).saturating_sub(2 * t).max(1);
        if c1.start > low {
            return Err(format!("n={n}: first trap {c1:?} starts after {low}"));
        }
        if c1.end + 1 != c2.start || c2.end + 1 != c3.start {
            return Err(format!(
                "n={n}: traps {c1:?} {c2:?} {c3:?} are not adjacent"
            ));
        }
        // an empty third trap (s = 1 gives [n, n-1]) satisfies this vacuously
        if !c3.is_empty() && 4 * c3.end < 4 * n - 3 * s {
            return Err(format!("n={n}: third trap {c3:?} ends too early for s={s}"));
        }
        if t >= 1 {
            for p in low..=n - t {
                if ![c1, c2, c3].iter().any(|trap| trap.contains(p)) {
                    return Err(format!("n={n} t={t}: position {p} is not covered"));
                }
            }
        }
        Ok(())
    }
}

impl<S: Copy + Ord> OnlineDetector<S> for OrderedDetector<S> {
    fn push(&mut self, c: S) -> Result<Verdict, Error> {
        if self.terminated.is_some() {
            return Err(Error::AlreadyTerminated);
        }
        let n = self.text.append(c);
        let t = self.oracle.extend(c);

        self.budget += 1;
        let collapse = 3 * self.budget > 4 * t;
        if collapse {
            self.budget = t;
            self.retire(0);
            self.retire(2);
        }
        let s = self.budget;

        let mut reports: [Option<SquareReport>; 3] = [None; 3];
        let mut rebuilt = [false; 3];

        let low = (n + 1).saturating_sub(2 * t).max(1);
        let i1 = self.catchers[0].as_ref().map(|c| c.trap().start);
        if i1.is_none_or(|i1| i1 > low) {
            let [first, second] = front_layout(n, s);
            reports[0] = self.install(0, first)?;
            reports[1] = self.install(1, second)?;
            rebuilt[0] = true;
            rebuilt[1] = true;
        }
        let j3 = self.catchers[2].as_ref().map(|c| c.trap().end);
        if j3.is_none_or(|j3| 4 * j3 < 4 * n - 3 * s) {
            reports[2] = self.install(2, back_layout(n, s))?;
            rebuilt[2] = true;
        }

        for k in 0..3 {
            if rebuilt[k] {
                continue;
            }
            if let Some(catcher) = self.catchers[k].as_mut() {
                if let CatcherOutcome::Square(report) = catcher.feed(&self.text)? {
                    reports[k] = Some(report);
                }
            }
        }

        if let Some(log) = self.rebuilds.as_mut() {
            if rebuilt[0] || rebuilt[2] {
                log.push(Rebuild {
                    step: n,
                    budget: s,
                    collapse,
                    front: rebuilt[0],
                    back: rebuilt[2],
                });
            }
        }
        self.peak_cells = self.peak_cells.max(self.live_cells());

        match reports.iter().flatten().next() {
            Some(&report) => {
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

    fn work(&self) -> WorkCounters {
        let mut total = self.retired_work;
        for c in self.catchers.iter().flatten() {
            total += c.work_counters();
        }
        total
    }

    fn peak_cells(&self) -> usize {
        self.peak_cells
    }

    fn audit(&self) -> WorkAudit {
        let mut audit = self.retired_audit;
        for c in self.catchers.iter().flatten() {
            audit.record(c);
        }
        audit
    }
}
