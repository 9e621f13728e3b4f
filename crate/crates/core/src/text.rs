//! Append-only text buffer and the report types shared by every detector.
//!
//! Positions are 1-based throughout: `at(1)` is the first symbol and `at(len())`
//! the most recent one.

use std::fmt;

use serde::Serialize;

use crate::Error;

/// Append-only sequence of symbols with 1-based positions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Text<S = u8> {
    symbols: Vec<S>,
}

impl<S: Copy> Text<S> {
    pub fn new() -> Self {
        Text {
            symbols: Vec::new(),
        }
    }

    pub fn with_capacity(capacity: usize) -> Self {
        Text {
            symbols: Vec::with_capacity(capacity),
        }
    }

    /// Appends `c` and returns its position, which is the new length.
    pub fn append(&mut self, c: S) -> usize {
        self.symbols.push(c);
        self.symbols.len()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Symbol at position `p`. Panics unless `1 <= p <= len()`.
    #[inline]
    pub fn at(&self, p: usize) -> S {
        debug_assert!(p >= 1, "positions are 1-based");
        self.symbols[p - 1]
    }

    pub fn get(&self, p: usize) -> Option<S> {
        p.checked_sub(1).and_then(|i| self.symbols.get(i).copied())
    }

    /// The symbols at positions `start..=end`.
    pub fn slice(&self, start: usize, end: usize) -> &[S] {
        &self.symbols[start - 1..end]
    }

    pub fn as_slice(&self) -> &[S] {
        &self.symbols
    }
}

impl<S: Copy> From<Vec<S>> for Text<S> {
    fn from(symbols: Vec<S>) -> Self {
        Text { symbols }
    }
}

impl<S: Copy> FromIterator<S> for Text<S> {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        Text {
            symbols: iter.into_iter().collect(),
        }
    }
}

/// A square `text[start..=end]`, i.e. two equal halves of `length / 2` symbols.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SquareReport {
    pub start: usize,
    pub end: usize,
    pub length: usize,
}

impl SquareReport {
    /// The square suffix of length `length` of a text whose last position is `end`.
    pub fn suffix(end: usize, length: usize) -> Self {
        debug_assert!(length >= 2 && length.is_multiple_of(2) && length <= end);
        SquareReport {
            start: end - length + 1,
            end,
            length,
        }
    }

    pub fn half(&self) -> usize {
        self.length / 2
    }
}

impl fmt::Display for SquareReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "start={} end={} length={}",
            self.start, self.end, self.length
        )
    }
}

/// Result of processing one symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    SquarefreeSoFar,
    Square(SquareReport),
}

impl Verdict {
    pub fn is_square(&self) -> bool {
        matches!(self, Verdict::Square(_))
    }

    pub fn report(&self) -> Option<SquareReport> {
        match self {
            Verdict::Square(r) => Some(*r),
            Verdict::SquarefreeSoFar => None,
        }
    }
}

/// Checks that `report` describes a square actually present in `text`.
///
/// Reports whose shape is inconsistent (odd length, or a length that does not
/// match `end - start + 1`) are rejected with `Ok(false)`.
pub fn verify_square<S: Copy + Eq>(text: &Text<S>, report: &SquareReport) -> Result<bool, Error> {
    let SquareReport { start, end, length } = *report;
    if start == 0 || start > end || end > text.len() {
        return Err(Error::OutOfRange {
            start,
            end,
            len: text.len(),
        });
    }
    if length == 0 || length % 2 != 0 || length != end - start + 1 {
        return Ok(false);
    }
    let half = length / 2;
    Ok(text.slice(start, start + half - 1) == text.slice(start + half, end))
}
