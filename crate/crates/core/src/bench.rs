//! Scaling harness behind `sqdetect bench`: time and count work of each
//! detector on squarefree ternary inputs of increasing length.

use std::io::{self, Write};
use std::time::Instant;

use crate::detector::{Algorithm, Detector, OnlineDetector};
use crate::reference::gen_squarefree;
use crate::text::SquareReport;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Measurement {
    pub algo: Algorithm,
    pub n: usize,
    pub seconds: f64,
    pub work_b: u64,
    pub work_s: u64,
    /// Border work, naive work and processed window positions together.
    pub work_total: u64,
    pub peak_cells: usize,
    pub square: Option<SquareReport>,
}

/// Runs `algo` over `input` once.
pub fn measure(algo: Algorithm, input: &[u8]) -> Result<Measurement, Error> {
    let mut detector: Detector<u8> = Detector::new(algo);
    let started = Instant::now();
    let square = detector.run(input.iter().copied())?;
    let seconds = started.elapsed().as_secs_f64();
    let work = detector.work();
    Ok(Measurement {
        algo,
        n: input.len(),
        seconds,
        work_b: work.border,
        work_s: work.naive,
        work_total: work.total(),
        peak_cells: detector.peak_cells(),
        square,
    })
}

/// Runs `algo` `runs` times and keeps the run with the median time. Work
/// counters are identical across runs.
pub fn measure_median(algo: Algorithm, input: &[u8], runs: usize) -> Result<Measurement, Error> {
    let mut all = (0..runs.max(1))
        .map(|_| measure(algo, input))
        .collect::<Result<Vec<_>, _>>()?;
    all.sort_by(|a, b| a.seconds.total_cmp(&b.seconds));
    Ok(all[all.len() / 2])
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BenchRow {
    pub m: Measurement,
    /// `seconds(n) / seconds(n / 2)` when the previous size was exactly half.
    pub time_ratio: Option<f64>,
}

/// One row per (size, algorithm), sizes in the given order.
pub fn run(sizes: &[usize], algos: &[Algorithm], seed: u64) -> Result<Vec<BenchRow>, Error> {
    let mut rows: Vec<BenchRow> = Vec::new();
    for (k, &n) in sizes.iter().enumerate() {
        let input = gen_squarefree(n, 3, seed)?;
        for &algo in algos {
            let m = measure(algo, &input)?;
            let time_ratio = (k > 0 && sizes[k - 1] * 2 == n)
                .then(|| rows.iter().rev().find(|r| r.m.algo == algo))
                .flatten()
                .map(|prev| m.seconds / prev.m.seconds);
            rows.push(BenchRow { m, time_ratio });
        }
    }
    Ok(rows)
}

pub const CSV_HEADER: &str = "algo,n,seconds,work_b,work_s,peak_catcher_cells,time_ratio";

pub fn write_csv<W: Write>(rows: &[BenchRow], mut out: W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for BenchRow { m, time_ratio } in rows {
        let ratio = time_ratio.map(|r| format!("{r:.3}")).unwrap_or_default();
        writeln!(
            out,
            "{},{},{:.6},{},{},{},{}",
            m.algo, m.n, m.seconds, m.work_b, m.work_s, m.peak_cells, ratio
        )?;
    }
    Ok(())
}
