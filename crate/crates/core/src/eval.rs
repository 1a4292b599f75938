//! Experiment harness: streams a workload through a detector and records
//! detection quality, approximation ratios and candidate counts.
//!
//! At every query both the `eps`-approximate and the exact solver run on the
//! same window state, before any reset, so ratios and candidate fractions
//! cover all queries and not only the ones that declared a change. Ratios
//! use the better of the two polarities for each solver and skip queries
//! whose exact score is zero.

use std::io;
use std::time::Instant;

use serde::Serialize;

use crate::detector::{ChangeEvent, Detector, DetectorConfig};
use crate::error::Result;
use crate::solver::{exact_change_block, find_change_unchecked};
use crate::synth::{WorkloadKind, WorkloadSpec};

#[derive(Debug, Clone, PartialEq)]
pub struct RunMetrics {
    pub spec: WorkloadSpec,
    pub config: DetectorConfig,
    pub detected: Vec<ChangeEvent>,
    /// Delay of every true change that was matched to a detection.
    pub delays: Vec<u64>,
    /// True changes with no detection before the next true change.
    pub missed: usize,
    pub false_positives: usize,
    pub queries: u64,
    /// Queries that entered the ratio statistics.
    pub ratio_queries: u64,
    pub min_ratio: f64,
    pub avg_ratio: f64,
    /// Mean over queries of tested candidates / (2 n).
    pub cand_frac_n: f64,
    /// Mean over queries of tested candidates / (k_increase + k_decrease).
    pub cand_frac_k: f64,
    /// Mean solver work per query for the configured eps.
    pub avg_work: f64,
    /// Mean solver work per query for the exact scan.
    pub avg_exact_work: f64,
    /// Mean number of blocks (both polarities) per query.
    pub avg_blocks: f64,
    pub wall_time: f64,
}

impl RunMetrics {
    pub fn mean_delay(&self) -> Option<f64> {
        if self.delays.is_empty() {
            None
        } else {
            Some(self.delays.iter().sum::<u64>() as f64 / self.delays.len() as f64)
        }
    }

    pub fn row(&self) -> MetricsRow {
        MetricsRow {
            workload: self.spec.kind,
            length: self.spec.length,
            seed: self.spec.seed,
            tau: self.config.tau,
            eps: self.config.eps,
            query_period: self.config.query_period,
            detected: self.detected.len(),
            true_changes: self.delays.len() + self.missed,
            matched: self.delays.len(),
            missed: self.missed,
            false_positives: self.false_positives,
            mean_delay: self.mean_delay(),
            queries: self.queries,
            ratio_queries: self.ratio_queries,
            min_ratio: self.min_ratio,
            avg_ratio: self.avg_ratio,
            cand_frac_n: self.cand_frac_n,
            cand_frac_k: self.cand_frac_k,
            avg_work: self.avg_work,
            avg_exact_work: self.avg_exact_work,
            avg_blocks: self.avg_blocks,
            wall_time: self.wall_time,
        }
    }
}

/// One CSV row per experiment cell. Field order is the column order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricsRow {
    pub workload: WorkloadKind,
    pub length: u64,
    pub seed: u64,
    pub tau: f64,
    pub eps: f64,
    pub query_period: u64,
    pub detected: usize,
    pub true_changes: usize,
    pub matched: usize,
    pub missed: usize,
    pub false_positives: usize,
    pub mean_delay: Option<f64>,
    pub queries: u64,
    pub ratio_queries: u64,
    pub min_ratio: f64,
    pub avg_ratio: f64,
    pub cand_frac_n: f64,
    pub cand_frac_k: f64,
    pub avg_work: f64,
    pub avg_exact_work: f64,
    pub avg_blocks: f64,
    pub wall_time: f64,
}

impl MetricsRow {
    pub const HEADER: [&'static str; 22] = [
        "workload",
        "length",
        "seed",
        "tau",
        "eps",
        "query_period",
        "detected",
        "true_changes",
        "matched",
        "missed",
        "false_positives",
        "mean_delay",
        "queries",
        "ratio_queries",
        "min_ratio",
        "avg_ratio",
        "cand_frac_n",
        "cand_frac_k",
        "avg_work",
        "avg_exact_work",
        "avg_blocks",
        "wall_time",
    ];
}

/// Writes the header and one row per cell.
pub fn write_csv<W: io::Write>(rows: &[MetricsRow], out: W) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(MetricsRow::HEADER)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

/// Matches each true change to the first detection at or after it and before
/// the next true change. Returns `(delays, missed, false_positives)`.
pub fn match_detections(true_changes: &[u64], events: &[ChangeEvent]) -> (Vec<u64>, usize, usize) {
    let mut delays = Vec::new();
    let mut missed = 0;
    let mut matched = 0;
    for (idx, &t) in true_changes.iter().enumerate() {
        let next = true_changes.get(idx + 1).copied().unwrap_or(u64::MAX);
        match events.iter().find(|e| e.detected_at >= t && e.detected_at < next) {
            Some(e) => {
                delays.push(e.detected_at - t);
                matched += 1;
            }
            None => missed += 1,
        }
    }
    (delays, missed, events.len() - matched)
}

pub fn run_experiment(spec: &WorkloadSpec, config: DetectorConfig) -> Result<RunMetrics> {
    let start = Instant::now();
    let mut det = Detector::new(config)?;
    let eps = config.eps;

    let mut events = Vec::new();
    let mut queries = 0u64;
    let mut ratio_queries = 0u64;
    let mut min_ratio = f64::INFINITY;
    let mut ratio_sum = 0.0;
    let mut frac_n_sum = 0.0;
    let mut frac_k_sum = 0.0;
    let mut work_sum = 0.0;
    let mut exact_work_sum = 0.0;
    let mut blocks_sum = 0.0;

    for bit in spec.bits()? {
        if !det.push(bit) {
            continue;
        }
        queries += 1;
        let (inc, dec) = (det.increasing(), det.decreasing());
        let exact = [exact_change_block(inc), exact_change_block(dec)];
        let approx = if eps == 0.0 {
            exact
        } else {
            [find_change_unchecked(inc, eps), find_change_unchecked(dec, eps)]
        };
        let opt = exact[0].score.max(exact[1].score);
        let got = approx[0].score.max(approx[1].score);
        if opt > 0.0 {
            let ratio = got / opt;
            min_ratio = min_ratio.min(ratio);
            ratio_sum += ratio;
            ratio_queries += 1;
        }
        let tested = (approx[0].tested + approx[1].tested) as f64;
        let blocks = (inc.len() + dec.len()) as f64;
        frac_n_sum += tested / (2 * det.window_len()) as f64;
        frac_k_sum += tested / blocks;
        blocks_sum += blocks;
        work_sum += (approx[0].work + approx[1].work) as f64;
        exact_work_sum += (exact[0].work + exact[1].work) as f64;

        if let Some(e) = det.evaluate() {
            events.push(e);
        }
    }

    let (delays, missed, false_positives) = match_detections(&spec.true_changes(), &events);
    let per_query = |sum: f64| if queries == 0 { 0.0 } else { sum / queries as f64 };
    let (min_ratio, avg_ratio) = if ratio_queries == 0 {
        (1.0, 1.0)
    } else {
        (min_ratio, ratio_sum / ratio_queries as f64)
    };

    Ok(RunMetrics {
        spec: *spec,
        config,
        detected: events,
        delays,
        missed,
        false_positives,
        queries,
        ratio_queries,
        min_ratio,
        avg_ratio,
        cand_frac_n: per_query(frac_n_sum),
        cand_frac_k: per_query(frac_k_sum),
        avg_work: per_query(work_sum),
        avg_exact_work: per_query(exact_work_sum),
        avg_blocks: per_query(blocks_sum),
        wall_time: start.elapsed().as_secs_f64(),
    })
}

/// Cartesian grid of experiment cells.
#[derive(Debug, Clone, Default)]
pub struct ExperimentGrid {
    pub kinds: Vec<WorkloadKind>,
    pub lengths: Vec<u64>,
    pub seeds: Vec<u64>,
    pub taus: Vec<f64>,
    pub eps: Vec<f64>,
    pub segment: u64,
    pub query_period: u64,
}

impl ExperimentGrid {
    pub fn cells(&self) -> Vec<(WorkloadSpec, DetectorConfig)> {
        let mut out = Vec::new();
        for &kind in &self.kinds {
            for &length in &self.lengths {
                for &seed in &self.seeds {
                    for &tau in &self.taus {
                        for &eps in &self.eps {
                            let spec = WorkloadSpec::new(kind, length, seed).with_segment(self.segment);
                            let config = DetectorConfig::new(tau, eps).with_query_period(self.query_period);
                            out.push((spec, config));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn run(&self) -> Result<Vec<MetricsRow>> {
        self.cells()
            .into_iter()
            .map(|(spec, config)| run_experiment(&spec, config).map(|m| m.row()))
            .collect()
    }
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}
