//! Grid arguments: comma-separated values or inclusive ranges
//! `start..end[:step]`. Without an explicit step a range advances by
//! `start`, or by 1 when `start` is 0, so `1..10` is 1,2,...,10 and
//! `100000..1000000` is 100000,200000,...,1000000.

use anyhow::{bail, Context, Result};

pub fn parse_u64_grid(text: &str) -> Result<Vec<u64>> {
    parse_grid(text, |s| s.parse::<u64>().map(|v| v as f64).ok())
        .map(|vals| vals.into_iter().map(|v| v as u64).collect())
}

pub fn parse_f64_grid(text: &str) -> Result<Vec<f64>> {
    parse_grid(text, |s| s.parse::<f64>().ok().filter(|v| v.is_finite()))
}

fn parse_grid(text: &str, parse: impl Fn(&str) -> Option<f64>) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let num = |s: &str| parse(s.trim()).with_context(|| format!("invalid number '{s}' in '{item}'"));
        match item.split_once("..") {
            None => out.push(num(item)?),
            Some((start, rest)) => {
                let (end, step) = match rest.split_once(':') {
                    Some((end, step)) => (end, Some(num(step)?)),
                    None => (rest, None),
                };
                let (start, end) = (num(start)?, num(end)?);
                let step = step.unwrap_or(if start > 0.0 { start } else { 1.0 });
                if step <= 0.0 {
                    bail!("range step must be positive in '{item}'");
                }
                let mut i = 0u64;
                loop {
                    let v = start + i as f64 * step;
                    if v > end + step * 1e-9 {
                        break;
                    }
                    // Keep decimal steps from drifting (0.30000000000000004).
                    out.push((v * 1e12).round() / 1e12);
                    i += 1;
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_and_lists() {
        assert_eq!(parse_f64_grid("1..10").unwrap(), (1..=10).map(f64::from).collect::<Vec<_>>());
        assert_eq!(parse_u64_grid("100000..1000000").unwrap().len(), 10);
        assert_eq!(parse_f64_grid("0,0.1,0.5").unwrap(), [0.0, 0.1, 0.5]);
        assert_eq!(parse_f64_grid("0..0.9:0.3").unwrap(), [0.0, 0.3, 0.6, 0.9]);
        assert_eq!(parse_u64_grid("5, 7..9:1").unwrap(), [5, 7, 8, 9]);
        assert!(parse_f64_grid("").unwrap().is_empty());
        assert!(parse_u64_grid("10..1").unwrap().is_empty());
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_u64_grid("x").is_err());
        assert!(parse_u64_grid("1.5").is_err());
        assert!(parse_f64_grid("1..3:0").is_err());
        assert!(parse_f64_grid("1..3:-1").is_err());
    }
}
