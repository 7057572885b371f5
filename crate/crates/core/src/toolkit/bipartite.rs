use fixedbitset::FixedBitSet;
use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matcher::{Plan, Search};

use super::SLACK;

/// Bipartite graph with parts `U = 0..left` and `W = 0..right`; each edge
/// is a pair `[u, w]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BipartiteJson", into = "BipartiteJson")]
pub struct BipartiteGraph {
    left: usize,
    right: usize,
    // neighbours in W of each vertex of U
    rows: Vec<FixedBitSet>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BipartiteJson {
    left: usize,
    right: usize,
    #[serde(default)]
    edges: Vec<[usize; 2]>,
}

impl TryFrom<BipartiteJson> for BipartiteGraph {
    type Error = Error;

    fn try_from(raw: BipartiteJson) -> Result<Self> {
        BipartiteGraph::new(raw.left, raw.right, raw.edges.iter().map(|e| (e[0], e[1])))
    }
}

impl From<BipartiteGraph> for BipartiteJson {
    fn from(h: BipartiteGraph) -> Self {
        BipartiteJson {
            left: h.left,
            right: h.right,
            edges: h.edges().map(|(u, w)| [u, w]).collect(),
        }
    }
}

impl BipartiteGraph {
    pub fn new(
        left: usize,
        right: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        if left + right > crate::graph::MAX_VERTICES {
            return Err(Error::TooManyVertices(
                left + right,
                crate::graph::MAX_VERTICES,
            ));
        }
        let mut rows = vec![FixedBitSet::with_capacity(right); left];
        for (u, w) in edges {
            if u >= left || w >= right {
                return Err(Error::InvalidBipartite(format!(
                    "edge [{u}, {w}] outside parts of sizes {left} and {right}"
                )));
            }
            if rows[u].put(w) {
                return Err(Error::InvalidBipartite(format!(
                    "duplicate edge [{u}, {w}]"
                )));
            }
        }
        Ok(BipartiteGraph { left, right, rows })
    }

    /// Edges given by a bitmask over the `left * right` pairs, `u * right + w`.
    pub fn from_mask(left: usize, right: usize, mask: u64) -> Self {
        let edges = (0..left * right)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| (i / right, i % right));
        Self::new(left, right, edges).expect("mask edges are in range")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn left(&self) -> usize {
        self.left
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones(..)).sum()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(u, r)| r.ones().map(move |w| (u, w)))
    }

    pub fn left_degree(&self, u: usize) -> usize {
        self.rows[u].count_ones(..)
    }

    pub fn right_degree(&self, w: usize) -> usize {
        self.rows.iter().filter(|r| r.contains(w)).count()
    }

    /// As a plain graph: `U` first, then `W` shifted by `left`.
    pub fn to_graph(&self) -> Graph {
        let mut g = Graph::new(self.left + self.right);
        for (u, w) in self.edges() {
            g.add_edge(u, self.left + w).unwrap();
        }
        g
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KstReport {
    pub kst_found: bool,
    pub min_deg_ok: bool,
    pub bound: f64,
    pub edges: usize,
    pub inequality_holds: bool,
}

impl KstReport {
    /// The bound is only promised when both hypotheses hold.
    pub fn guarantee_applies(&self) -> bool {
        !self.kst_found && self.min_deg_ok
    }
}

fn factorial(n: u64) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// Looks for `K_{s,t}` with `s` vertices in `U`, checks the degree
/// hypothesis on `W`, and evaluates `e(H) <= s((t-1)/s!)^{1/s} |U| |W|^{1-1/s}`.
pub fn kst_check(h: &BipartiteGraph, s: usize, t: usize) -> Result<KstReport> {
    if s == 0 || t == 0 {
        return Err(Error::Precondition("s and t must be positive".into()));
    }
    let kst_found = s <= h.left
        && (0..h.left).combinations(s).any(|chosen| {
            let mut common = h.rows[chosen[0]].clone();
            for &u in &chosen[1..] {
                common.intersect_with(&h.rows[u]);
            }
            common.count_ones(..) >= t
        });
    let min_deg_ok = (0..h.right).all(|w| h.right_degree(w) >= s);
    let sf = s as f64;
    let k = sf * ((t as f64 - 1.0) / factorial(s as u64)).powf(1.0 / sf);
    let bound = k * h.left as f64 * (h.right as f64).powf(1.0 - 1.0 / sf);
    let edges = h.edge_count();
    Ok(KstReport {
        kst_found,
        min_deg_ok,
        bound,
        edges,
        inequality_holds: edges as f64 <= bound * (1.0 + SLACK) + SLACK,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DrcReport {
    pub embedding_found: bool,
    pub lhs: u128,
    pub rhs: f64,
    pub k1: f64,
    pub k2: f64,
    pub inequality_holds: bool,
}

/// `K_1 = |W0|^k / (r!)^{k/r}`, `K_2 = (|U0| - 1)^{k/r}`.
pub fn drc_constants(u0: usize, w0: usize, k: u32, r: u32) -> (f64, f64) {
    let q = k as f64 / r as f64;
    let k1 = (w0 as f64).powi(k as i32) / factorial(r as u64).powf(q);
    let k2 = (u0.saturating_sub(1) as f64).powf(q);
    (k1, k2)
}

/// Side-respecting embedding search of `f` (parts `U0`, `W0`) into `g`
/// plus the degree-moment inequality
/// `sum_u d(u)^k <= (K1 |U|^k + K2 |W|^k) |U|^{1-k/r}`.
pub fn drc_check(f: &BipartiteGraph, g: &BipartiteGraph, k: u32, r: u32) -> Result<DrcReport> {
    if k == 0 || k >= r {
        return Err(Error::Precondition(format!(
            "need 1 <= k < r, got k={k}, r={r}"
        )));
    }
    if let Some(w) = (0..f.right).find(|&w| f.right_degree(w) > r as usize) {
        return Err(Error::Precondition(format!(
            "vertex {w} of W0 has degree {} > r = {r}",
            f.right_degree(w)
        )));
    }
    let pattern = f.to_graph();
    let host = g.to_graph();
    let plan = Plan::greedy(&pattern, &[]);
    let rows = host.adjacency_rows();
    let mut search = Search::new(&plan, &rows);
    let n = host.vertex_count();
    let mut left_side = FixedBitSet::with_capacity(n);
    left_side.insert_range(..g.left);
    let mut right_side = left_side.clone();
    right_side.toggle_range(..);
    for v in 0..pattern.vertex_count() {
        search.restrict(v, if v < f.left { &left_side } else { &right_side });
    }
    let embedding_found = search.exists();

    let mut lhs: u128 = 0;
    for u in 0..g.left {
        let term = (g.left_degree(u) as u128)
            .checked_pow(k)
            .ok_or_else(|| Error::Precondition("degree moment overflows".into()))?;
        lhs = lhs
            .checked_add(term)
            .ok_or_else(|| Error::Precondition("degree moment overflows".into()))?;
    }
    let (k1, k2) = drc_constants(f.left, f.right, k, r);
    let (nu, nw) = (g.left as f64, g.right as f64);
    let rhs =
        (k1 * nu.powi(k as i32) + k2 * nw.powi(k as i32)) * nu.powf(1.0 - k as f64 / r as f64);
    Ok(DrcReport {
        embedding_found,
        lhs,
        rhs,
        k1,
        k2,
        inequality_holds: lhs as f64 <= rhs * (1.0 + SLACK) + SLACK,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(a: usize, b: usize) -> BipartiteGraph {
        BipartiteGraph::new(a, b, (0..a).flat_map(|u| (0..b).map(move |w| (u, w)))).unwrap()
    }

    #[test]
    fn kst_examples() {
        let r = kst_check(&complete(2, 2), 2, 2).unwrap();
        assert!(r.kst_found);

        let c6 =
            BipartiteGraph::new(3, 3, [(0, 0), (0, 1), (1, 1), (1, 2), (2, 2), (2, 0)]).unwrap();
        let r = kst_check(&c6, 2, 2).unwrap();
        assert!(!r.kst_found && r.min_deg_ok && r.inequality_holds);
        assert_eq!(r.edges, 6);
        assert!((r.bound - 2f64.sqrt() * 3.0 * 3f64.sqrt()).abs() < 1e-12);

        let matching = BipartiteGraph::new(3, 3, [(0, 0), (1, 1), (2, 2)]).unwrap();
        let r = kst_check(&matching, 2, 2).unwrap();
        assert!(!r.min_deg_ok && !r.guarantee_applies());
    }

    #[test]
    fn drc_examples() {
        let path = BipartiteGraph::new(2, 2, [(0, 0), (1, 0), (1, 1)]).unwrap();
        let empty = BipartiteGraph::new(3, 3, []).unwrap();
        let r = drc_check(&path, &empty, 1, 2).unwrap();
        assert_eq!(r.lhs, 0);
        assert!(r.inequality_holds && !r.embedding_found);

        let (k1, _) = drc_constants(2, 2, 2, 3);
        assert!((k1 - 4.0 / 6f64.powf(2.0 / 3.0)).abs() < 1e-12);

        let r = drc_check(&path, &complete(2, 2), 1, 2).unwrap();
        assert!(r.embedding_found);
        assert!(drc_check(&path, &empty, 2, 2).is_err());
        let star = BipartiteGraph::new(3, 1, [(0, 0), (1, 0), (2, 0)]).unwrap();
        assert!(drc_check(&star, &empty, 1, 2).is_err());
    }

    #[test]
    fn sides_are_respected() {
        // a single edge fits only with U0 on the U side; here U has no edges to spare
        let edge = BipartiteGraph::new(1, 1, [(0, 0)]).unwrap();
        let g = BipartiteGraph::new(1, 1, [(0, 0)]).unwrap();
        assert!(drc_check(&edge, &g, 1, 2).unwrap().embedding_found);
        let two_w = BipartiteGraph::new(1, 2, [(0, 0), (0, 1)]).unwrap();
        let flipped = BipartiteGraph::new(2, 1, [(0, 0), (1, 0)]).unwrap();
        assert!(!drc_check(&two_w, &flipped, 1, 2).unwrap().embedding_found);
    }

    #[test]
    fn json_round_trip() {
        let h =
            BipartiteGraph::from_json_str(r#"{"left":2,"right":2,"edges":[[0,1],[1,0]]}"#).unwrap();
        assert_eq!(h.edge_count(), 2);
        let back = serde_json::to_string(&h).unwrap();
        assert_eq!(BipartiteGraph::from_json_str(&back).unwrap(), h);
        assert!(BipartiteGraph::from_json_str(r#"{"left":1,"right":1,"edges":[[0,1]]}"#).is_err());
        assert!(
            BipartiteGraph::from_json_str(r#"{"left":1,"right":1,"edges":[[0,0],[0,0]]}"#).is_err()
        );
    }
}
