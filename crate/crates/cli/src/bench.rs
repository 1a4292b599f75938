//! Throughput and query-latency measurements.

use std::io::Write;
use std::time::Instant;

use anyhow::Result;
use binchange::eval::loglog_slope;
use binchange::{find_change, BlockSequence, Detector, DetectorConfig, WorkloadKind, WorkloadSpec};
use serde::Serialize;

#[derive(Debug, Clone)]
pub struct BenchOptions {
    pub pushes: u64,
    pub query_period: u64,
    pub tau: f64,
    pub eps: Vec<f64>,
    pub lengths: Vec<u64>,
    pub repeats: u32,
    pub seed: u64,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct BenchRow {
    /// `push`, `query`, or `fit`.
    pub section: &'static str,
    pub n: u64,
    pub k: usize,
    pub eps: Option<f64>,
    pub elapsed_s: f64,
    pub ns_per_op: f64,
    pub ops_per_s: f64,
    pub merges_per_push: Option<f64>,
    pub events: Option<usize>,
    pub tested: Option<usize>,
    pub work: Option<usize>,
    /// Log-log slope of latency against n (`fit` rows only).
    pub latency_exponent: Option<f64>,
    /// Log-log slope of solver work against n (`fit` rows only).
    pub work_exponent: Option<f64>,
}

pub fn run(opts: &BenchOptions) -> Result<Vec<BenchRow>> {
    let mut rows = vec![push_throughput(opts)?];

    let mut per_eps: Vec<Vec<(f64, f64, f64)>> = vec![Vec::new(); opts.eps.len()];
    for &n in opts.lengths.iter().filter(|&&n| n > 0) {
        let mut seq = BlockSequence::new();
        seq.extend(WorkloadSpec::new(WorkloadKind::Hill, n, opts.seed).bits()?);
        for (slot, &eps) in opts.eps.iter().enumerate() {
            let repeats = opts.repeats.max(1);
            let mut result = find_change(&seq, eps)?;
            let start = Instant::now();
            for _ in 0..repeats {
                result = find_change(std::hint::black_box(&seq), eps)?;
            }
            let elapsed = start.elapsed().as_secs_f64();
            let ns = elapsed * 1e9 / repeats as f64;
            per_eps[slot].push((n as f64, ns, result.work as f64));
            rows.push(BenchRow {
                section: "query",
                n,
                k: seq.len(),
                eps: Some(eps),
                elapsed_s: elapsed,
                ns_per_op: ns,
                ops_per_s: if ns > 0.0 { 1e9 / ns } else { 0.0 },
                tested: Some(result.tested),
                work: Some(result.work),
                ..Default::default()
            });
        }
    }

    for (slot, points) in per_eps.iter().enumerate() {
        if points.len() < 2 {
            continue;
        }
        let latency: Vec<(f64, f64)> = points.iter().map(|p| (p.0, p.1.max(1.0))).collect();
        let work: Vec<(f64, f64)> = points.iter().map(|p| (p.0, p.2.max(1.0))).collect();
        rows.push(BenchRow {
            section: "fit",
            eps: Some(opts.eps[slot]),
            latency_exponent: Some(loglog_slope(&latency)),
            work_exponent: Some(loglog_slope(&work)),
            ..Default::default()
        });
    }
    Ok(rows)
}

fn push_throughput(opts: &BenchOptions) -> Result<BenchRow> {
    let mut row = BenchRow {
        section: "push",
        n: opts.pushes,
        merges_per_push: Some(0.0),
        events: Some(0),
        ..Default::default()
    };
    if opts.pushes == 0 {
        return Ok(row);
    }
    let segment = 10_000;
    let padded = opts.pushes.div_ceil(segment) * segment;
    let bits: Vec<bool> = WorkloadSpec::new(WorkloadKind::Step, padded, opts.seed)
        .bits()?
        .take(opts.pushes as usize)
        .collect();

    let config = DetectorConfig::new(opts.tau, opts.eps.iter().copied().find(|&e| e > 0.0).unwrap_or(0.0))
        .with_query_period(opts.query_period.max(1));
    let mut det = Detector::new(config)?;
    let start = Instant::now();
    let events = det.run(bits.iter().copied());
    let elapsed = start.elapsed().as_secs_f64();

    row.k = det.increasing().len();
    row.eps = Some(config.eps);
    row.elapsed_s = elapsed;
    row.ns_per_op = elapsed * 1e9 / opts.pushes as f64;
    row.ops_per_s = if elapsed > 0.0 { opts.pushes as f64 / elapsed } else { 0.0 };
    row.merges_per_push = Some(det.increasing().merge_count() as f64 / opts.pushes as f64);
    row.events = Some(events.len());
    Ok(row)
}

pub fn write_text(rows: &[BenchRow], out: &mut dyn Write) -> std::io::Result<()> {
    let opt = |v: Option<f64>| v.map_or("-".to_string(), |x| format!("{x}"));
    for row in rows {
        match row.section {
            "push" => writeln!(
                out,
                "push: {} pushes in {:.3}s, {:.1} ns/push, {:.0} pushes/s, {} merges/push, {} events (eps {})",
                row.n,
                row.elapsed_s,
                row.ns_per_op,
                row.ops_per_s,
                row.merges_per_push.map_or("-".into(), |m| format!("{m:.4}")),
                row.events.unwrap_or(0),
                opt(row.eps),
            )?,
            "query" => writeln!(
                out,
                "query: n={} k={} eps={} {:.0} ns/query, tested {}, work {}",
                row.n,
                row.k,
                opt(row.eps),
                row.ns_per_op,
                row.tested.unwrap_or(0),
                row.work.unwrap_or(0),
            )?,
            _ => writeln!(
                out,
                "fit: eps={} latency ~ n^{:.3}, work ~ n^{:.3}",
                opt(row.eps),
                row.latency_exponent.unwrap_or(f64::NAN),
                row.work_exponent.unwrap_or(f64::NAN),
            )?,
        }
    }
    Ok(())
}

pub fn write_csv(rows: &[BenchRow], out: &mut dyn Write) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if rows.is_empty() {
        w.write_record([
            "section",
            "n",
            "k",
            "eps",
            "elapsed_s",
            "ns_per_op",
            "ops_per_s",
            "merges_per_push",
            "events",
            "tested",
            "work",
            "latency_exponent",
            "work_exponent",
        ])?;
    }
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(pushes: u64, lengths: Vec<u64>) -> BenchOptions {
        BenchOptions {
            pushes,
            query_period: 1_000,
            tau: 6.0,
            eps: vec![0.0, 0.1],
            lengths,
            repeats: 2,
            seed: 1,
        }
    }

    #[test]
    fn zero_work_report() {
        let rows = run(&opts(0, vec![])).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].n, 0);
        assert_eq!(rows[0].ns_per_op, 0.0);
    }

    #[test]
    fn query_work_grows_slowly() {
        let rows = run(&opts(25_000, vec![10_000, 100_000])).unwrap();
        assert_eq!(rows[0].n, 25_000);
        assert!(rows[0].merges_per_push.unwrap() <= 1.0);
        let fit = rows.iter().find(|r| r.section == "fit" && r.eps == Some(0.1)).unwrap();
        assert!(fit.work_exponent.unwrap() < 0.5, "{:?}", fit.work_exponent);
    }
}
