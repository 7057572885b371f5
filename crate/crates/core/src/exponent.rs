//! Exponents `2 - a/b`: mapping to tree parameters, conditions (1) and (2),
//! and which densities `m + s/a` the trees certify.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::FamilyParams;
use crate::rational::Rational;
use crate::rooted::balance_closed_form;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentQuery {
    a: u64,
    b: u64,
}

impl ExponentQuery {
    /// Reduces `a/b` to lowest terms.
    pub fn new(a: u64, b: u64) -> Result<Self> {
        Self::unreduced(a, b)?;
        let g = a.gcd(&b);
        Ok(ExponentQuery { a: a / g, b: b / g })
    }

    /// Keeps the pair as given, for exploring non-coprime inputs.
    pub fn unreduced(a: u64, b: u64) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::InvalidQuery(format!(
                "a and b must be positive, got {a}/{b}"
            )));
        }
        if a > i64::MAX as u64 / 4 || b > i64::MAX as u64 / 4 {
            return Err(Error::InvalidQuery("a or b too large".into()));
        }
        Ok(ExponentQuery { a, b })
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    /// `b / a`, the density of the matching tree.
    pub fn rho(&self) -> Rational {
        Rational::new(self.b as i128, self.a as i128)
    }

    /// The Turán exponent `2 - a/b`.
    pub fn exponent(&self) -> Rational {
        Rational::from_integer(2) - Rational::new(self.a as i128, self.b as i128)
    }
}

/// `floor(b/a)^3 <= a <= b / (floor(b/a) + 1) + 1`.
pub fn check_condition_1(q: ExponentQuery) -> Result<bool> {
    let (a, b) = (q.a as i128, q.b as i128);
    if a >= b {
        return Err(Error::InvalidQuery(format!("need a < b, got {a}/{b}")));
    }
    let f = b / a;
    let left = f.checked_pow(3).is_some_and(|c| c <= a);
    let right = Rational::from_integer(a) <= Rational::new(b, f + 1) + Rational::one();
    Ok(left && right)
}

/// `s = floor(b/a)`, `t = a - 1`, `s' = b - (a-1)(floor(b/a) + 1)`.
pub fn params_from_rational(q: ExponentQuery) -> Result<FamilyParams> {
    if !check_condition_1(q)? || q.a < 2 {
        return Err(Error::ConditionOneFails { a: q.a, b: q.b });
    }
    let s = q.b / q.a;
    let t = q.a - 1;
    let s_prime = q.b - t * (s + 1);
    let params = FamilyParams::new(s, t, s_prime)?;
    assert_eq!(params.density(), q.rho());
    assert!(balance_closed_form(params));
    assert!(check_cube_sufficiency(s, t));
    Ok(params)
}

/// For every `2 <= k <= s - s'`:
/// `t >= (1 - s'/(s+1)) k (k - 1/s) (s + 2 - k) + 1/s`.
pub fn check_condition_2(params: FamilyParams) -> bool {
    let FamilyParams { s, t, s_prime } = params;
    let (si, ti, spi) = (s as i128, t as i128, s_prime as i128);
    let scale = Rational::one() - Rational::new(spi, si + 1);
    let inv_s = Rational::new(1, si);
    let t = Rational::from_integer(ti);
    (2..=s.saturating_sub(s_prime) as i128).all(|k| {
        let kr = Rational::from_integer(k);
        let rhs = scale * kr * (kr - inv_s) * Rational::from_integer(si + 2 - k) + inv_s;
        t >= rhs
    })
}

/// `t >= s^3 - 1`.
pub fn check_cube_sufficiency(s: u64, t: u64) -> bool {
    match s.checked_pow(3) {
        Some(c) => t >= c - 1,
        None => false,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverageStatus {
    Prior,
    New,
    Open,
}

impl CoverageStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            CoverageStatus::Prior => "prior",
            CoverageStatus::New => "new",
            CoverageStatus::Open => "open",
        }
    }
}

/// One residue `s` of a coverage table. The parameter columns describe the
/// smallest `m` for which condition (1) certifies `m + s/a`, when there is one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverageRow {
    pub a: u64,
    pub s: u64,
    pub status: CoverageStatus,
    pub minimal_m: Option<u64>,
    pub b: Option<u64>,
    pub s_param: Option<u64>,
    pub t_param: Option<u64>,
    pub sprime_param: Option<u64>,
}

impl CoverageRow {
    pub const CSV_HEADER: &'static str = "a,s,status,minimal_m,b,s_param,t_param,sprime_param";

    pub fn to_csv(&self) -> String {
        let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{}",
            self.a,
            self.s,
            self.status.as_str(),
            opt(self.minimal_m),
            opt(self.b),
            opt(self.s_param),
            opt(self.t_param),
            opt(self.sprime_param)
        )
    }
}

/// `s ceil((a-1)/(s+1)) <= a - 1`.
pub fn prior_known(a: u64, s: u64) -> bool {
    s * (a - 1).div_ceil(s + 1) < a
}

/// Classifies each `1 <= s < a`. `m` is searched in `1..=max_m` (default
/// `3a`); pairs `(a, ma + s)` sharing a factor are reduced before checking.
pub fn coverage_report(a: u64, max_m: Option<u64>) -> Result<Vec<CoverageRow>> {
    if a < 2 {
        return Err(Error::InvalidQuery(format!(
            "coverage needs a >= 2, got {a}"
        )));
    }
    let max_m = max_m.unwrap_or(3 * a);
    let mut rows = Vec::with_capacity(a as usize - 1);
    for s in 1..a {
        let mut found = None;
        for m in 1..=max_m {
            let b = m * a + s;
            let q = ExponentQuery::new(a, b)?;
            if q.a >= 2 && check_condition_1(q)? {
                found = Some((m, b, params_from_rational(q)?));
                break;
            }
        }
        let status = if prior_known(a, s) {
            CoverageStatus::Prior
        } else if found.is_some() {
            CoverageStatus::New
        } else {
            CoverageStatus::Open
        };
        rows.push(CoverageRow {
            a,
            s,
            status,
            minimal_m: found.map(|f| f.0),
            b: found.map(|f| f.1),
            s_param: found.map(|f| f.2.s),
            t_param: found.map(|f| f.2.t),
            sprime_param: found.map(|f| f.2.s_prime),
        });
    }
    Ok(rows)
}
