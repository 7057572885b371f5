//! Constructors for the rooted trees used throughout: the two-level trees
//! `T(s,t,s')`, stars, and the catalogue of previously known balanced trees.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, RootedGraph};
use crate::rational::Rational;

/// Parameters of `T(s,t,s')`: a center with `t` internal children, each
/// carrying `s` root leaves, plus `s'` root leaves hanging off the center.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilyParams {
    pub s: u64,
    pub t: u64,
    #[serde(rename = "sprime")]
    pub s_prime: u64,
}

impl FamilyParams {
    pub fn new(s: u64, t: u64, s_prime: u64) -> Result<Self> {
        let p = FamilyParams { s, t, s_prime };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.s == 0 || self.t == 0 {
            return Err(Error::InvalidParams(format!("need s, t >= 1, got {self}")));
        }
        Ok(())
    }

    /// `(st + t + s') / (t + 1)`.
    pub fn density(&self) -> Rational {
        let (s, t, sp) = (self.s as i128, self.t as i128, self.s_prime as i128);
        Rational::new(s * t + t + sp, t + 1)
    }

    pub fn vertex_count(&self) -> u64 {
        1 + self.t + self.s * self.t + self.s_prime
    }

    pub fn root_count(&self) -> u64 {
        self.s * self.t + self.s_prime
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T({},{},{})", self.s, self.t, self.s_prime)
    }
}

/// Builds `T(s,t,s')`. Vertex 0 is the center, `1..=t` the internal
/// vertices, then each internal vertex's `s` leaves in turn, then the `s'`
/// leaves of the center.
///
/// The roots are the pendant leaves drawn black in the construction; the
/// center is never a root. For `(t, s') = (1, 0)` the center has degree one
/// but stays unrooted, which keeps `density` equal to `(st+t+s')/(t+1)`.
pub fn make_t(params: FamilyParams) -> Result<RootedGraph> {
    params.validate()?;
    Ok(two_level_tree(params.s, params.t, params.s_prime))
}

/// `T(s,t,s')` allowing `t = 0`, where it degenerates to the star `K_{1,s'}`.
pub(crate) fn two_level_tree(s: u64, t: u64, s_prime: u64) -> RootedGraph {
    let (s, t, sp) = (s as usize, t as usize, s_prime as usize);
    let n = 1 + t + s * t + sp;
    let mut g = Graph::new(n);
    let mut roots = Vec::with_capacity(s * t + sp);
    let mut next = 1 + t;
    for i in 1..=t {
        g.add_edge(0, i).unwrap();
        for _ in 0..s {
            g.add_edge(i, next).unwrap();
            roots.push(next);
            next += 1;
        }
    }
    for _ in 0..sp {
        g.add_edge(0, next).unwrap();
        roots.push(next);
        next += 1;
    }
    RootedGraph::new(g, roots).unwrap()
}

/// `K_{1,m}` with the center (vertex 0) unrooted and every leaf rooted.
pub fn make_star(m: u64) -> Result<RootedGraph> {
    if m == 0 {
        return Err(Error::InvalidParams("star needs m >= 1".into()));
    }
    Ok(two_level_tree(1, 0, m))
}

/// The balanced trees of the known-results catalogue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CatalogKind {
    /// `K_s^{(t)}`: `s` legs from a center, each with `t` unrooted vertices
    /// followed by a root.
    SubdividedStar { s: u64, t: u64 },
    /// `P_t`: a path with `t` unrooted interior vertices and rooted ends.
    Path { t: u64 },
    /// `Q_{s,t}`: a center with `s` root leaves and `t` children, each child
    /// with `s` root leaves.
    Broom { s: u64, t: u64 },
    /// `S_{s,t,t'}`: a spider with `s` legs of `t` unrooted vertices and one
    /// extra leg of `t'` unrooted vertices, every leg ending in a root.
    Spider { s: u64, t: u64, t_prime: u64 },
}

impl FromStr for CatalogKind {
    type Err = Error;

    /// `k:s,t`, `p:t`, `q:s,t`, `s:s,t,t'`.
    fn from_str(spec: &str) -> Result<Self> {
        let (kind, args) = spec.split_once(':').unwrap_or((spec, ""));
        let nums: Vec<u64> = args
            .split(',')
            .filter(|a| !a.trim().is_empty())
            .map(|a| a.trim().parse::<u64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::InvalidParams(format!("bad parameters in {spec:?}")))?;
        let arity = |k: usize| -> Result<()> {
            if nums.len() == k {
                Ok(())
            } else {
                Err(Error::InvalidParams(format!(
                    "{kind} takes {k} parameters, got {}",
                    nums.len()
                )))
            }
        };
        match kind.trim().to_ascii_lowercase().as_str() {
            "k" => arity(2).map(|_| CatalogKind::SubdividedStar {
                s: nums[0],
                t: nums[1],
            }),
            "p" => arity(1).map(|_| CatalogKind::Path { t: nums[0] }),
            "q" => arity(2).map(|_| CatalogKind::Broom {
                s: nums[0],
                t: nums[1],
            }),
            "s" => arity(3).map(|_| CatalogKind::Spider {
                s: nums[0],
                t: nums[1],
                t_prime: nums[2],
            }),
            other => Err(Error::UnknownKind(other.to_string())),
        }
    }
}

pub fn make_catalog_tree(kind: CatalogKind) -> Result<RootedGraph> {
    match kind {
        CatalogKind::SubdividedStar { s, t } => {
            if s == 0 {
                return Err(Error::InvalidParams("K_s^(t) needs s >= 1".into()));
            }
            Ok(spider(&vec![t; s as usize]))
        }
        CatalogKind::Path { t } => {
            if t == 0 {
                return Err(Error::InvalidParams("P_t needs t >= 1".into()));
            }
            let n = t as usize + 2;
            RootedGraph::new(Graph::path(n), [0, n - 1])
        }
        CatalogKind::Broom { s, t } => {
            if s == 0 || t == 0 {
                return Err(Error::InvalidParams("Q_{s,t} needs s, t >= 1".into()));
            }
            Ok(two_level_tree(s, t, s))
        }
        CatalogKind::Spider { s, t, t_prime } => {
            if s == 0 {
                return Err(Error::InvalidParams("S_{s,t,t'} needs s >= 1".into()));
            }
            let mut legs = vec![t; s as usize];
            legs.push(t_prime);
            Ok(spider(&legs))
        }
    }
}

/// A center (vertex 0) with one leg per entry; a leg of length `l` has `l`
/// unrooted vertices followed by a root.
fn spider(legs: &[u64]) -> RootedGraph {
    let n = 1 + legs.iter().map(|&l| l as usize + 1).sum::<usize>();
    let mut g = Graph::new(n);
    let mut roots = Vec::with_capacity(legs.len());
    let mut next = 1;
    for &len in legs {
        let mut prev = 0;
        for _ in 0..=len {
            g.add_edge(prev, next).unwrap();
            prev = next;
            next += 1;
        }
        roots.push(prev);
    }
    RootedGraph::new(g, roots).unwrap()
}
