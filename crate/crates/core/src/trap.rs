//! Online detection over an unordered alphabet with a system of dyadic traps.
//!
//! For every level `k` with `2^(k+1) <= n`, let `p = floor(n / 2^k) - 1`. The
//! level holds the catcher with trap `[(p-1)2^k + 1, p 2^k]` and, when `p` is
//! even, also the one with trap `[(p-2)2^k + 1, (p-1)2^k]`. Together the traps
//! cover `[1, n-1]`, every level-`k` window is shorter than `3 * 2^k`, and the
//! traps of one level are disjoint, so each level costs `O(n)` in total.

use crate::catcher::{Catcher, CatcherOutcome, Trap, WorkCounters};
use crate::detector::{OnlineDetector, WorkAudit};
use crate::text::{SquareReport, Text, Verdict};
use crate::Error;

#[derive(Clone, Debug)]
pub struct TrapSystem<S = u8> {
    text: Text<S>,
    /// `levels[k]` holds the live catchers with traps of length `2^k`, oldest first.
    levels: Vec<Vec<Catcher>>,
    terminated: Option<SquareReport>,
    retired_work: WorkCounters,
    retired_audit: WorkAudit,
    created: u64,
    peak_cells: usize,
}

impl<S: Copy + Eq> Default for TrapSystem<S> {
    fn default() -> Self {
        Self::new()
    }
}

impl<S: Copy + Eq> TrapSystem<S> {
    pub fn new() -> Self {
        TrapSystem {
            text: Text::new(),
            levels: Vec::new(),
            terminated: None,
            retired_work: WorkCounters::default(),
            retired_audit: WorkAudit::default(),
            created: 0,
            peak_cells: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.text.len()
    }

    pub fn is_empty(&self) -> bool {
        self.text.is_empty()
    }

    /// All live traps sorted by start position.
    pub fn live_traps(&self) -> Vec<Trap> {
        let mut traps: Vec<Trap> = self.catchers().map(Catcher::trap).collect();
        traps.sort_by_key(|t| t.start);
        traps
    }

    /// Live traps of length `2^k`, oldest first.
    pub fn level_traps(&self, k: usize) -> Vec<Trap> {
        self.levels
            .get(k)
            .map(|l| l.iter().map(Catcher::trap).collect())
            .unwrap_or_default()
    }

    pub fn catchers_created(&self) -> u64 {
        self.created
    }

    pub fn live_cells(&self) -> usize {
        self.catchers().map(Catcher::cells).sum()
    }

    fn catchers(&self) -> impl Iterator<Item = &Catcher> {
        self.levels.iter().flatten()
    }

    fn retire(&mut self, catcher: Catcher) {
        self.retired_work += catcher.work_counters();
        self.retired_audit.record(&catcher);
    }

    /// Checks the level layout, coverage and window bounds for the current length.
    pub fn check_invariants(&self) -> Result<(), String> {
        let n = self.len();
        for k in 0..self
            .levels
            .len()
            .max(usize::BITS as usize - n.leading_zeros() as usize)
        {
            let size = 1usize << k;
            let actual = self.level_traps(k);
            let mut expected = Vec::new();
            if 2 * size <= n {
                let p = n / size - 1;
                if p.is_multiple_of(2) {
                    expected.push(Trap::new((p - 2) * size + 1, (p - 1) * size));
                }
                expected.push(Trap::new((p - 1) * size + 1, p * size));
            }
            if actual != expected {
                return Err(format!(
                    "n={n} level {k}: traps {actual:?}, expected {expected:?}"
                ));
            }
            for t in &actual {
                if n - t.end >= 3 * size {
                    return Err(format!("n={n} level {k}: window of {t:?} too long"));
                }
            }
        }
        let mut covered = 0;
        for t in self.live_traps() {
            if t.start != covered + 1 {
                return Err(format!(
                    "n={n}: trap {t:?} leaves a gap or overlaps after {covered}"
                ));
            }
            covered = t.end;
        }
        if covered + 1 < n {
            return Err(format!("n={n}: traps cover only [1, {covered}]"));
        }
        Ok(())
    }
}

impl<S: Copy + Eq> OnlineDetector<S> for TrapSystem<S> {
    fn push(&mut self, c: S) -> Result<Verdict, Error> {
        if self.terminated.is_some() {
            return Err(Error::AlreadyTerminated);
        }
        let n = self.text.append(c);

        let mut found: Option<(usize, SquareReport)> = None;
        for catcher in self.levels.iter_mut().flatten() {
            if let CatcherOutcome::Square(report) = catcher.feed(&self.text)? {
                let start = catcher.trap().start;
                if found.is_none_or(|(s, _)| start < s) {
                    found = Some((start, report));
                }
            }
        }
        let mut found = found.map(|(_, r)| r);

        if found.is_none() {
            let mut k = 0;
            while (1usize << k) <= n / 2 && n.is_multiple_of(1usize << k) {
                let size = 1usize << k;
                let p = n / size - 1;
                let trap = Trap::new((p - 1) * size + 1, p * size);
                let (catcher, report) = Catcher::create(&self.text, trap)?;
                self.created += 1;
                if found.is_none() {
                    found = report;
                }
                if self.levels.len() == k {
                    self.levels.push(Vec::with_capacity(3));
                }
                self.levels[k].push(catcher);
                if p % 2 == 1 && p > 1 {
                    let removed: Vec<Catcher> = self.levels[k].drain(..2).collect();
                    for old in removed {
                        self.retire(old);
                    }
                }
                k += 1;
            }
        }

        self.peak_cells = self.peak_cells.max(self.live_cells());
        match found {
            Some(report) => {
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
        for c in self.catchers() {
            total += c.work_counters();
        }
        total
    }

    fn peak_cells(&self) -> usize {
        self.peak_cells
    }

    fn audit(&self) -> WorkAudit {
        let mut audit = self.retired_audit;
        for c in self.catchers() {
            audit.record(c);
        }
        audit
    }
}
