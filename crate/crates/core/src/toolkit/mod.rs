//! Sunflowers, the Kővári–Sós–Turán and dependent-random-choice bounds, and
//! the almost-regularity check.

mod bipartite;
mod sunflower;

pub use bipartite::{drc_check, drc_constants, kst_check, BipartiteGraph, DrcReport, KstReport};
pub use sunflower::{
    find_sequential_sunflower, find_set_sunflower, sequential_sunflower_bound,
    validate_sequential_sunflower, SequenceSystem, SunflowerCertificate,
};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::Rational;

/// Relative tolerance applied to float bounds, always in the direction
/// that lets a borderline value pass.
pub const SLACK: f64 = 1e-9;

/// Every degree lies in `[c n^α, 5^{4/α} c n^α]` with `n = v(G)`.
pub fn degree_sandwich_check(g: &Graph, c: f64, alpha: Rational) -> Result<bool> {
    if g.vertex_count() == 0 {
        return Err(Error::Precondition("graph is empty".into()));
    }
    if !(c.is_finite() && c > 0.0) {
        return Err(Error::Precondition(format!("c must be positive, got {c}")));
    }
    if !alpha.is_positive() || alpha > Rational::one() {
        return Err(Error::Precondition(format!(
            "alpha must lie in (0, 1], got {alpha}"
        )));
    }
    let a = alpha.to_f64();
    let low = c * (g.vertex_count() as f64).powf(a);
    let high = 5f64.powf(4.0 / a) * low;
    Ok((0..g.vertex_count()).all(|v| {
        let d = g.degree(v) as f64;
        d >= low * (1.0 - SLACK) && d <= high * (1.0 + SLACK)
    }))
}
