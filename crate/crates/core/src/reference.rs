//! Brute-force ground truth and seeded test corpora.
//!
//! Everything here is deliberately simple; the fast detectors are checked
//! against it, never the other way around.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::detector::{shortest_square_suffix, OnlineDetector};
use crate::text::SquareReport;
use crate::trap::TrapSystem;
use crate::Error;

/// Generated alphabets are the first `sigma` lowercase letters.
pub const MAX_SIGMA: usize = 26;

/// Up to this length, generated words are checked for squares of every
/// length during construction.
const FULL_CHECK_LIMIT: usize = 2000;

/// Longer words are built checking only squares with halves up to this
/// length, then verified with a [`TrapSystem`] and repaired where it fires.
const LOCAL_WINDOW: usize = 64;

/// Smallest `n'` such that `w[..n']` contains a square, with the shortest
/// square suffix of that prefix as witness.
pub fn naive_first_square<S: Eq>(w: &[S]) -> Option<(usize, SquareReport)> {
    (1..=w.len()).find_map(|end| {
        shortest_square_suffix(&w[..end]).map(|half| (end, SquareReport::suffix(end, 2 * half)))
    })
}

/// Whether any factor of `w` is a square, by trying every start and half length.
pub fn contains_square<S: Eq>(w: &[S]) -> bool {
    let n = w.len();
    (0..n).any(|start| {
        (1..=(n - start) / 2).any(|h| w[start..start + h] == w[start + h..start + 2 * h])
    })
}

/// Length of the longest suffix of `w` occurring at least twice in `w`.
pub fn naive_t<S: Eq>(w: &[S]) -> usize {
    let n = w.len();
    (1..n)
        .rev()
        .find(|&len| {
            let suffix = &w[n - len..];
            (0..n - len).any(|start| &w[start..start + len] == suffix)
        })
        .unwrap_or(0)
}

/// `naive_t` of every prefix, `out[k]` for `w[..=k]`, via the longest common
/// suffix of each pair of prefixes. Quadratic time, linear space.
pub fn repeat_lengths<S: Eq>(w: &[S]) -> Vec<usize> {
    let n = w.len();
    let mut out = vec![0; n];
    // prev[e] = common suffix length of w[..=e] and w[..=k-1]
    let mut prev = vec![0usize; n];
    let mut cur = vec![0usize; n];
    for k in 0..n {
        let mut best = 0;
        for e in 0..k {
            cur[e] = if w[e] == w[k] {
                if e == 0 {
                    1
                } else {
                    prev[e - 1] + 1
                }
            } else {
                0
            };
            best = best.max(cur[e]);
        }
        out[k] = best;
        std::mem::swap(&mut prev, &mut cur);
    }
    out
}

fn alphabet(sigma: usize) -> Vec<u8> {
    (0..sigma as u8).map(|k| b'a' + k).collect()
}

fn check_sigma(sigma: usize, min: usize) -> Result<(), Error> {
    if sigma < min {
        return Err(Error::AlphabetTooSmall { sigma, min });
    }
    if sigma > MAX_SIGMA {
        return Err(Error::AlphabetTooLarge {
            sigma,
            max: MAX_SIGMA,
        });
    }
    Ok(())
}

fn has_square_suffix_within(w: &[u8], max_half: usize) -> bool {
    let n = w.len();
    (1..=(n / 2).min(max_half)).any(|h| {
        w[n - 2 * h..n - h]
            .iter()
            .rev()
            .zip(w[n - h..].iter().rev())
            .all(|(a, b)| a == b)
    })
}

/// Backtracking extension of `w` to length `n`. `pending[k]` holds the symbols
/// not yet tried at position `k`; `pending.len() == w.len() + 1` while a
/// position is being filled.
fn extend_backtracking(
    w: &mut Vec<u8>,
    pending: &mut Vec<Vec<u8>>,
    n: usize,
    sigma: usize,
    max_half: usize,
    rng: &mut ChaCha8Rng,
) {
    while w.len() < n {
        if pending.len() == w.len() {
            let mut options = alphabet(sigma);
            options.shuffle(rng);
            pending.push(options);
        }
        match pending.last_mut().and_then(Vec::pop) {
            Some(c) => {
                w.push(c);
                if has_square_suffix_within(w, max_half) {
                    w.pop();
                }
            }
            None => {
                pending.pop();
                w.pop()
                    .expect("ternary squarefree words extend indefinitely");
            }
        }
    }
}

/// A squarefree word of length `n` over the first `sigma` letters.
///
/// Deterministic in `(n, sigma, seed)`. Fails for `sigma < 3`: every binary
/// word of length four contains a square.
pub fn gen_squarefree(n: usize, sigma: usize, seed: u64) -> Result<Vec<u8>, Error> {
    check_sigma(sigma, 3)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut w = Vec::with_capacity(n);
    let mut pending = Vec::with_capacity(n + 1);
    if n <= FULL_CHECK_LIMIT {
        extend_backtracking(&mut w, &mut pending, n, sigma, usize::MAX, &mut rng);
        return Ok(w);
    }
    loop {
        extend_backtracking(&mut w, &mut pending, n, sigma, LOCAL_WINDOW, &mut rng);
        let mut checker = TrapSystem::new();
        match checker.run(w.iter().copied())? {
            None => return Ok(w),
            Some(report) => {
                // the symbol at `report.end` was already popped from its options
                w.truncate(report.end - 1);
                pending.truncate(report.end);
            }
        }
    }
}

/// Label of a corpus entry: squarefree, or the first square as found by
/// [`naive_first_square`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    Squarefree,
    Square {
        step: usize,
        start: usize,
        length: usize,
    },
}

impl Label {
    pub fn of<S: Eq>(w: &[S]) -> Self {
        match naive_first_square(w) {
            None => Label::Squarefree,
            Some((step, r)) => Label::Square {
                step,
                start: r.start,
                length: r.length,
            },
        }
    }

    pub fn step(&self) -> Option<usize> {
        match self {
            Label::Squarefree => None,
            Label::Square { step, .. } => Some(*step),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Squarefree => f.write_str("SF"),
            Label::Square {
                step,
                start,
                length,
            } => write!(f, "SQ:{step}:{start}:{length}"),
        }
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "SF" {
            return Ok(Label::Squarefree);
        }
        let bad = || Error::Corpus(format!("bad label `{s}`"));
        let fields: Vec<&str> = s.strip_prefix("SQ:").ok_or_else(bad)?.split(':').collect();
        let [step, start, length] = fields[..] else {
            return Err(bad());
        };
        let num = |f: &str| f.parse::<usize>().map_err(|_| bad());
        Ok(Label::Square {
            step: num(step)?,
            start: num(start)?,
            length: num(length)?,
        })
    }
}

/// `prefix` followed by a copy of its last `len` symbols, which makes the
/// whole word end in a square.
pub fn plant(prefix: &[u8], len: usize) -> Vec<u8> {
    let mut w = prefix.to_vec();
    w.extend_from_slice(&prefix[prefix.len() - len..]);
    w
}

/// A squarefree prefix of length `m` followed by a repeat of one of its
/// suffixes, labelled by the naive oracle. `m = 0` yields `aa`.
pub fn gen_planted(m: usize, sigma: usize, seed: u64) -> Result<(Vec<u8>, Label), Error> {
    check_sigma(sigma, 3)?;
    let w = if m == 0 {
        b"aa".to_vec()
    } else {
        let prefix = gen_squarefree(m, sigma, seed)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
        plant(&prefix, rng.gen_range(1..=m))
    };
    let label = Label::of(&w);
    debug_assert!(matches!(label, Label::Square { .. }));
    Ok((w, label))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub label: Label,
    pub text: Vec<u8>,
}

impl CorpusEntry {
    pub fn labelled(text: Vec<u8>) -> Self {
        CorpusEntry {
            label: Label::of(&text),
            text,
        }
    }

    /// `<label>\t<text>` without the trailing newline.
    pub fn to_line(&self) -> Vec<u8> {
        let mut line = self.label.to_string().into_bytes();
        line.push(b'\t');
        line.extend_from_slice(&self.text);
        line
    }

    pub fn parse_line(line: &[u8]) -> Result<Self, Error> {
        let tab = line
            .iter()
            .position(|&b| b == b'\t')
            .ok_or_else(|| Error::Corpus("missing tab".into()))?;
        let label = std::str::from_utf8(&line[..tab])
            .map_err(|_| Error::Corpus("label is not UTF-8".into()))?
            .parse()?;
        Ok(CorpusEntry {
            label,
            text: line[tab + 1..].to_vec(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Corpus {
    pub seed: u64,
    pub sigma: usize,
    pub entries: Vec<CorpusEntry>,
}

impl Corpus {
    /// Labels are recomputed with the naive oracle and must match.
    pub fn validate(&self) -> Result<(), Error> {
        for (k, e) in self.entries.iter().enumerate() {
            let expected = Label::of(&e.text);
            if expected != e.label {
                return Err(Error::Corpus(format!(
                    "entry {k}: label {} but oracle says {expected}",
                    e.label
                )));
            }
        }
        Ok(())
    }

    pub fn write_to<W: std::io::Write>(&self, mut out: W) -> std::io::Result<()> {
        for e in &self.entries {
            out.write_all(&e.to_line())?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }
}

/// All words of length exactly `len` over the first `sigma` letters, in
/// lexicographic order.
pub fn all_words(sigma: usize, len: usize) -> impl Iterator<Item = Vec<u8>> {
    let total = (sigma as u64).pow(len as u32);
    (0..total).map(move |mut code| {
        let mut w = vec![b'a'; len];
        for slot in w.iter_mut().rev() {
            *slot = b'a' + (code % sigma as u64) as u8;
            code /= sigma as u64;
        }
        w
    })
}

/// All words of length `0..=max_len` over the first `sigma` letters.
pub fn all_words_up_to(sigma: usize, max_len: usize) -> impl Iterator<Item = Vec<u8>> {
    (0..=max_len).flat_map(move |len| all_words(sigma, len))
}

/// Seeded mix of uniform random words and words with a long squarefree
/// prefix (so that late, long first squares are well represented).
pub fn random_words(count: usize, max_len: usize, sigmas: &[usize], seed: u64) -> Vec<Vec<u8>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let sigma = sigmas[k % sigmas.len()];
            let len = rng.gen_range(1..=max_len);
            let symbols = alphabet(sigma);
            if sigma >= 3 && rng.gen_bool(0.5) {
                let m = rng.gen_range(len / 2..=len);
                let mut w = gen_squarefree(m, sigma, rng.gen()).expect("sigma >= 3");
                if m > 0 {
                    let planted = rng.gen_range(1..=m);
                    w = plant(&w, planted);
                }
                while w.len() < len {
                    w.push(*symbols.choose(&mut rng).unwrap());
                }
                w.truncate(len);
                w
            } else {
                (0..len)
                    .map(|_| *symbols.choose(&mut rng).unwrap())
                    .collect()
            }
        })
        .collect()
}
