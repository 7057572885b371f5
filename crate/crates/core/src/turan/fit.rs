use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExponentFit {
    pub points: Vec<(u64, u64)>,
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual in natural-log units.
    pub residual: f64,
}

/// Least squares of `ln ex` against `ln n`; points with `ex = 0` are dropped.
pub fn fit_exponent(points: &[(u64, u64)]) -> Result<ExponentFit> {
    let used: Vec<(u64, u64)> = points
        .iter()
        .copied()
        .filter(|&(n, ex)| n >= 1 && ex >= 1)
        .collect();
    if used.len() < 3 {
        return Err(Error::TooFewPoints(used.len()));
    }
    let xs: Vec<f64> = used.iter().map(|&(n, _)| (n as f64).ln()).collect();
    let ys: Vec<f64> = used.iter().map(|&(_, ex)| (ex as f64).ln()).collect();
    let len = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / len;
    let my = ys.iter().sum::<f64>() / len;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::Precondition("all points share the same n".into()));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    Ok(ExponentFit {
        points: used,
        slope,
        intercept,
        residual: (sse / len).sqrt(),
    })
}

/// Reads points either as a JSON array of `[n, ex]` pairs or as lines
/// `n,ex` (blank lines, `#` comments and an `n,ex` header are skipped).
pub fn parse_points(s: &str) -> Result<Vec<(u64, u64)>> {
    let trimmed = s.trim_start();
    if trimmed.starts_with('[') {
        let raw: Vec<[u64; 2]> = serde_json::from_str(trimmed)?;
        return Ok(raw.into_iter().map(|p| (p[0], p[1])).collect());
    }
    let mut out = Vec::new();
    for (i, line) in s.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || (i == 0 && line.starts_with('n')) {
            continue;
        }
        let (n, ex) = line
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("line {}: expected `n,ex`", i + 1)))?;
        let parse = |x: &str| {
            x.trim()
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("line {}: bad number `{x}`", i + 1)))
        };
        out.push((parse(n)?, parse(ex)?));
    }
    Ok(out)
}
