use proptest::prelude::*;

use sqdetect::reference::{
    all_words_up_to, contains_square, gen_squarefree, naive_first_square, naive_t, plant,
    CorpusEntry, Label,
};
use sqdetect::{
    verify_square, Algorithm, Catcher, CatcherOutcome, Detector, OnlineDetector, OrderedDetector,
    RepeatOracle, Text, Trap, TrapSystem,
};

/// Longest proper border of `w`.
fn brute_border(w: &[u8]) -> usize {
    (0..w.len())
        .rev()
        .find(|&l| w[..l] == w[w.len() - l..])
        .unwrap_or(0)
}

/// Longest common suffix of `text[i..=j]` and `text[1..=e]` (1-based, inclusive).
fn common_suffix(text: &[u8], i: usize, j: usize, e: usize) -> usize {
    (0..j + 1 - i)
        .take_while(|&k| k < e && text[j - 1 - k] == text[e - 1 - k])
        .count()
}

fn squarefree_words(sigma: usize, max_len: usize) -> Vec<Vec<u8>> {
    all_words_up_to(sigma, max_len)
        .filter(|w| !contains_square(w))
        .collect()
}

/// Every trap over every squarefree ternary prefix extended by one symbol, up
/// to length 12: the catcher fires whenever some square suffix starts in the
/// trap, every report is a genuine square, and its border array and naive-match length match their
/// definitions after every feed.
#[test]
fn catcher_exhaustive_ternary() {
    let mut checked = 0u64;
    for prefix in squarefree_words(3, 11) {
        for c in b"abc" {
            let mut full = prefix.clone();
            full.push(*c);
            let n = full.len();
            for j in 1..n {
                for i in 1..=j {
                    let t = j - i + 1;
                    if t > n - j {
                        continue;
                    }
                    let mut text: Text = full[..j].iter().copied().collect();
                    let (mut catcher, replayed) = Catcher::create(&text, Trap::new(i, j)).unwrap();
                    assert_eq!(replayed, None);
                    let mut last = CatcherOutcome::NoSquare;
                    for m in j + 1..=n {
                        text.append(full[m - 1]);
                        last = catcher.feed(&text).unwrap();
                        let b = catcher.border(m).unwrap() as usize;
                        assert_eq!(b, brute_border(&full[j..m]));
                        let expected_s = if 2 * b + t >= m - j {
                            common_suffix(&full, i, j, m - b)
                        } else {
                            0
                        };
                        if m < n || last == CatcherOutcome::NoSquare {
                            assert_eq!(catcher.matched(), expected_s, "{full:?} [{i},{j}] m={m}");
                        }
                        if m < n {
                            assert_eq!(last, CatcherOutcome::NoSquare);
                        }
                    }
                    let expected = (i..=j).any(|k| {
                        let len = n - k + 1;
                        len % 2 == 0 && full[k - 1..k - 1 + len / 2] == full[k - 1 + len / 2..]
                    });
                    match last {
                        // squares starting right of the trap may also be caught
                        CatcherOutcome::Square(r) => {
                            assert_eq!(r.end, n);
                            assert!(r.start >= i, "{full:?} [{i},{j}] {r:?}");
                            assert!(verify_square(&text, &r).unwrap());
                        }
                        CatcherOutcome::NoSquare => {
                            assert!(!expected, "{full:?} [{i},{j}] missed a square")
                        }
                    }
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 10_000);
}

#[test]
fn catcher_work_on_long_squarefree_windows() {
    let w = gen_squarefree(4000, 3, 17).unwrap();
    for (i, j) in [(1, 500), (1000, 1999), (2500, 2500), (3000, 3400)] {
        let text: Text = w.iter().copied().collect();
        let (catcher, report) = Catcher::create(&text, Trap::new(i, j)).unwrap();
        assert_eq!(report, None);
        let window = (4000 - j) as u64;
        let work = catcher.work_counters();
        assert!(work.border <= 2 * window);
        assert!(
            work.naive as f64 <= 1.5 * window as f64,
            "{work:?} over {window}"
        );
        assert_eq!(work.steps, window);
    }
}

#[test]
fn trap_coverage_up_to_2_pow_14() {
    let w = gen_squarefree(1 << 14, 3, 3).unwrap();
    let mut sys = TrapSystem::new();
    for &c in &w {
        sys.push(c).unwrap();
        sys.check_invariants().unwrap();
    }
}

/// Total trap-system work over `n log2(n + 1)`, calibrated at about 4.2 on
/// squarefree ternary input.
const TRAP_WORK_PER_N_LOG_N: f64 = 5.0;

#[test]
fn trap_total_work_is_n_log_n() {
    for k in 10..=17 {
        let n = 1usize << k;
        let w = gen_squarefree(n, 3, k as u64).unwrap();
        let mut sys = TrapSystem::new();
        assert_eq!(sys.run(w.iter().copied()).unwrap(), None);
        let ratio = sys.work().total() as f64 / (n as f64 * ((n + 1) as f64).log2());
        assert!(ratio < TRAP_WORK_PER_N_LOG_N, "n={n}: {ratio}");
    }
}

/// Ordered-detector work (catcher work plus catchers built) per symbol,
/// calibrated at about 20 on squarefree ternary input up to 2^18.
const ORDERED_WORK_PER_N: f64 = 24.0;

#[test]
fn ordered_total_work_is_linear() {
    for k in 10..=16 {
        let n = 1usize << k;
        let w = gen_squarefree(n, 3, 100 + k as u64).unwrap();
        let mut d = OrderedDetector::new();
        assert_eq!(d.run(w.iter().copied()).unwrap(), None);
        let work = d.work().total() + d.catchers_created();
        assert!(
            (work as f64) < ORDERED_WORK_PER_N * n as f64,
            "n={n}: {work}"
        );
    }
}

#[test]
fn ordered_rebuilds_are_sparse() {
    for seed in 0..4 {
        let w = gen_squarefree(20_000, 3, seed).unwrap();
        let mut d = OrderedDetector::with_rebuild_log();
        assert_eq!(d.run(w.iter().copied()).unwrap(), None);
        let log = d.rebuilds().unwrap();
        let mut last_front: Option<(usize, usize)> = None;
        let mut last_back: Option<(usize, usize)> = None;
        for r in log {
            if r.collapse {
                last_front = Some((r.step, r.budget));
                last_back = Some((r.step, r.budget));
                continue;
            }
            if r.front {
                if let Some((p, s)) = last_front {
                    assert!(r.step - p > 2 * s, "front rebuilds at {p} and {}", r.step);
                }
                last_front = Some((r.step, r.budget));
            }
            if r.back {
                if let Some((q, s)) = last_back {
                    // 4 (n - ceil(s/2)) < 4 n' - 3 s'  with  s' = s + (n' - n)
                    let gap = r.step - q;
                    assert!(
                        gap + 4 * s.div_ceil(2) > 3 * s,
                        "back rebuilds at {q} and {}",
                        r.step
                    );
                    assert!(gap + 1 >= s);
                }
                last_back = Some((r.step, r.budget));
            }
        }
    }
}

/// Transition-lookup comparisons per `n (1 + log2 σ)`; calibrated at 2.0 to 3.7
/// for σ in 2..=26.
const ORACLE_COMPARISONS: f64 = 4.0;

#[test]
fn oracle_comparisons_scale_with_log_sigma() {
    let squarefree = gen_squarefree(50_000, 3, 9).unwrap();
    let mut rng = 0x2545_f491_4f6c_dd1du64;
    let mut random = |sigma: u64| -> Vec<u8> {
        (0..50_000)
            .map(|_| {
                rng ^= rng << 13;
                rng ^= rng >> 7;
                rng ^= rng << 17;
                b'a' + (rng % sigma) as u8
            })
            .collect()
    };
    for (w, sigma) in [
        (squarefree, 3),
        (random(2), 2),
        (random(4), 4),
        (random(26), 26),
    ] {
        let mut o = RepeatOracle::new();
        let mut prev = 0;
        for &c in &w {
            let t = o.extend(c);
            assert!(t <= prev + 1);
            prev = t;
        }
        let bound = ORACLE_COMPARISONS * w.len() as f64 * (1.0 + (sigma as f64).log2());
        assert!(
            (o.comparisons() as f64) < bound,
            "sigma={sigma}: {}",
            o.comparisons()
        );
    }
}

fn ternary_word() -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(prop::sample::select(vec![b'a', b'b', b'c']), 0..120)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn detectors_agree_with_oracle_on_planted_words(
        m in 1usize..200,
        seed in any::<u64>(),
        cut in 1usize..200,
        sigma in 3usize..6,
    ) {
        let prefix = gen_squarefree(m, sigma, seed).unwrap();
        let w = plant(&prefix, cut.min(m));
        let expected = naive_first_square(&w).map(|(step, _)| step);
        prop_assert!(expected.is_some());
        for algo in [Algorithm::Trap, Algorithm::Ordered] {
            let mut d: Detector = Detector::new(algo);
            let report = d.run(w.iter().copied()).unwrap();
            prop_assert_eq!(report.map(|r| r.end), expected);
            let r = report.unwrap();
            prop_assert!(verify_square(d.text(), &r).unwrap());
        }
    }

    #[test]
    fn repeat_oracle_matches_definition(w in ternary_word()) {
        let mut o = RepeatOracle::new();
        let mut prev = 0;
        for (k, &c) in w.iter().enumerate() {
            let t = o.extend(c);
            prop_assert_eq!(t, naive_t(&w[..=k]));
            prop_assert!(t <= prev + 1 && t <= k);
            prev = t;
        }
    }

    #[test]
    fn ordered_budget_brackets_t(w in ternary_word()) {
        let mut d = OrderedDetector::new();
        for &c in &w {
            if d.push(c).unwrap().is_square() {
                break;
            }
            d.check_invariants().map_err(TestCaseError::fail)?;
        }
    }

    #[test]
    fn corpus_lines_parse_back(w in prop::collection::vec(b'a'..=b'z', 0..40)) {
        let entry = CorpusEntry::labelled(w);
        prop_assert_eq!(CorpusEntry::parse_line(&entry.to_line()).unwrap(), entry.clone());
        if let Label::Square { step, start, length } = entry.label {
            prop_assert!(step <= entry.text.len() && start + length - 1 == step);
        }
    }
}

#[test]
fn generic_symbols() {
    // detectors are not tied to bytes
    let w: Vec<u32> = vec![10, 20, 30, 10, 20, 30];
    let mut trap: TrapSystem<u32> = TrapSystem::new();
    let mut ordered: OrderedDetector<u32> = OrderedDetector::new();
    let a = trap.run(w.iter().copied()).unwrap().unwrap();
    let b = ordered.run(w.iter().copied()).unwrap().unwrap();
    assert_eq!(a, b);
    assert_eq!((a.start, a.end, a.length), (1, 6, 6));
}
