//! Query timing and the CSV benchmark report.

use std::hint::black_box;
use std::time::Instant;

use crate::container::{AnyIndex, SpaceReport};
use crate::error::Result;
use crate::workload::{random_queries, Query, QueryKind};
use crate::RankSelect;

pub const CSV_HEADER: &str = "structure,dataset,n,sigma,r,tau,query_kind,count,median_ns,p95_ns,\
bits_total,bits_per_run,bits_R,bits_H,bits_C,bits_S";

/// Per-query latency summary over several repetitions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Timing {
    pub median_ns: f64,
    pub p95_ns: f64,
}

fn percentile(sorted: &[u64], p: f64) -> f64 {
    if sorted.is_empty() {
        return 0.0;
    }
    let rank = (p * (sorted.len() - 1) as f64).round() as usize;
    sorted[rank] as f64
}

fn median_f64(values: &mut [f64]) -> f64 {
    values.sort_by(|a, b| a.total_cmp(b));
    values[values.len() / 2]
}

/// Times every query individually, `reps` times over, and reports the median
/// across repetitions of each repetition's median and 95th percentile.
pub fn time_queries<T: RankSelect + ?Sized>(index: &T, queries: &[Query], reps: usize) -> Result<Timing> {
    let reps = reps.max(1);
    // Warm-up pass; also surfaces invalid queries before timing.
    for q in queries {
        black_box(index.answer(q)?);
    }
    let mut medians = Vec::with_capacity(reps);
    let mut p95s = Vec::with_capacity(reps);
    let mut samples = vec![0u64; queries.len()];
    for _ in 0..reps {
        for (slot, q) in samples.iter_mut().zip(queries) {
            let start = Instant::now();
            let answer = index.answer(black_box(q));
            *slot = start.elapsed().as_nanos() as u64;
            black_box(answer.ok());
        }
        samples.sort_unstable();
        medians.push(percentile(&samples, 0.5));
        p95s.push(percentile(&samples, 0.95));
    }
    Ok(Timing { median_ns: median_f64(&mut medians), p95_ns: median_f64(&mut p95s) })
}

/// Occurrence count of every letter, from rank queries at the last position.
pub fn occurrences<T: RankSelect + ?Sized>(index: &T) -> Result<Vec<usize>> {
    let last = index.len() - 1;
    (0..index.sigma()).map(|c| index.rank(c, last)).collect()
}

/// One CSV row of a benchmark report.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub dataset: String,
    pub kind: QueryKind,
    pub count: usize,
    pub timing: Timing,
    pub space: SpaceReport,
}

impl BenchRow {
    pub fn to_csv(&self) -> String {
        let s = &self.space;
        format!(
            "{},{},{},{},{},{},{},{},{:.1},{:.1},{},{:.4},{},{},{},{}",
            s.structure,
            self.dataset,
            s.n,
            s.sigma,
            s.r,
            s.tau,
            self.kind.name(),
            self.count,
            self.timing.median_ns,
            self.timing.p95_ns,
            s.bits_total,
            s.bits_per_run(),
            s.bits_r,
            s.bits_h,
            s.bits_c,
            s.bits_s,
        )
    }
}

/// Benchmarks every index on the same seeded workloads, one row per
/// structure and query kind.
pub fn run_bench(
    indexes: &[(String, AnyIndex)],
    count: usize,
    seed: u64,
    reps: usize,
) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    let Some((_, first)) = indexes.first() else {
        return Ok(rows);
    };
    let occ = occurrences(first)?;
    let workloads: Vec<(QueryKind, Vec<Query>)> = QueryKind::ALL
        .iter()
        .map(|&kind| (kind, random_queries(kind, count, &occ, seed)))
        .collect();
    for (dataset, index) in indexes {
        let space = index.space_report();
        for (kind, queries) in &workloads {
            let timing = time_queries(index, queries, reps)?;
            rows.push(BenchRow {
                dataset: dataset.clone(),
                kind: *kind,
                count,
                timing,
                space: space.clone(),
            });
        }
    }
    Ok(rows)
}
