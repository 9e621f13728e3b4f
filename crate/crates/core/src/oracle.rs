//! Online longest-repeated-suffix oracle.
//!
//! After each symbol, reports `t_n`: the length of the longest suffix of
//! `text[1..n]` that occurs at least twice in `text[1..n]`. Backed by an online
//! suffix automaton: the suffix link of the state for the whole text points at
//! the longest suffix whose end-position set is larger, i.e. the longest suffix
//! that also ends somewhere earlier. Transitions are kept sorted and searched
//! by binary search, so an extension costs amortized `O(log σ)` comparisons.

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
struct State<S> {
    len: usize,
    link: u32,
    next: Vec<(S, u32)>,
}

#[derive(Clone, Debug)]
pub struct RepeatOracle<S = u8> {
    states: Vec<State<S>>,
    last: u32,
    last_t: usize,
    len: usize,
    comparisons: u64,
}

impl<S: Copy + Ord> Default for RepeatOracle<S> {
    fn default() -> Self {
        Self::new()
    }
}

/// Binary search over sorted transitions, counting symbol comparisons.
fn search<S: Ord>(next: &[(S, u32)], c: &S, comparisons: &mut u64) -> Result<usize, usize> {
    let (mut lo, mut hi) = (0, next.len());
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        *comparisons += 1;
        match next[mid].0.cmp(c) {
            std::cmp::Ordering::Less => lo = mid + 1,
            std::cmp::Ordering::Greater => hi = mid,
            std::cmp::Ordering::Equal => return Ok(mid),
        }
    }
    Err(lo)
}

impl<S: Copy + Ord> RepeatOracle<S> {
    pub fn new() -> Self {
        RepeatOracle {
            states: vec![State {
                len: 0,
                link: NONE,
                next: Vec::new(),
            }],
            last: 0,
            last_t: 0,
            len: 0,
            comparisons: 0,
        }
    }

    fn transition(&mut self, state: u32, c: &S) -> Option<u32> {
        let next = &self.states[state as usize].next;
        search(next, c, &mut self.comparisons)
            .ok()
            .map(|k| next[k].1)
    }

    fn set_transition(&mut self, state: u32, c: S, target: u32) {
        let next = &mut self.states[state as usize].next;
        match search(next, &c, &mut self.comparisons) {
            Ok(k) => next[k].1 = target,
            Err(k) => next.insert(k, (c, target)),
        }
    }

    /// Appends `c` and returns the new `t_n`.
    pub fn extend(&mut self, c: S) -> usize {
        let cur = self.states.len() as u32;
        self.states.push(State {
            len: self.states[self.last as usize].len + 1,
            link: 0,
            next: Vec::new(),
        });

        let mut p = self.last;
        let mut found = None;
        while p != NONE {
            if let Some(q) = self.transition(p, &c) {
                found = Some((p, q));
                break;
            }
            self.set_transition(p, c, cur);
            p = self.states[p as usize].link;
        }

        self.last_t = match found {
            None => {
                self.states[cur as usize].link = 0;
                0
            }
            Some((p, q)) => {
                let p_len = self.states[p as usize].len;
                if self.states[q as usize].len == p_len + 1 {
                    self.states[cur as usize].link = q;
                } else {
                    let clone = self.states.len() as u32;
                    let mut cloned = self.states[q as usize].clone();
                    cloned.len = p_len + 1;
                    self.states.push(cloned);
                    self.states[q as usize].link = clone;
                    self.states[cur as usize].link = clone;
                    let mut r = p;
                    while r != NONE && self.transition(r, &c) == Some(q) {
                        self.set_transition(r, c, clone);
                        r = self.states[r as usize].link;
                    }
                }
                p_len + 1
            }
        };
        self.last = cur;
        self.len += 1;
        self.last_t
    }

    /// The most recent `t_n` (0 before any symbol).
    pub fn last_t(&self) -> usize {
        self.last_t
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Symbol comparisons spent in transition lookups so far.
    pub fn comparisons(&self) -> u64 {
        self.comparisons
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }
}
