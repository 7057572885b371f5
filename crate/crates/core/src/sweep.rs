//! Instance generators and exhaustive property sweeps over small cases.

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::embeddings::{amp_count, inj};
use crate::error::Result;
use crate::graph::{Graph, RootedGraph};
use crate::toolkit::{drc_check, kst_check, BipartiteGraph, SequenceSystem};

/// `G(n, p)`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// Each vertex after the first attaches to a uniformly chosen earlier one.
pub fn random_tree<R: Rng>(rng: &mut R, n: usize) -> Graph {
    let mut g = Graph::new(n);
    for v in 1..n {
        g.add_edge(rng.gen_range(0..v), v).unwrap();
    }
    g
}

/// A connected rooted graph on `2..=max_n` vertices with at least one
/// root and at least one non-root.
pub fn random_rooted<R: Rng>(rng: &mut R, max_n: usize) -> RootedGraph {
    let n = rng.gen_range(2..=max_n.max(2));
    let mut g = random_tree(rng, n);
    let extra: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !g.has_edge(u, v))
        .collect();
    for (u, v) in extra {
        if rng.gen_bool(0.2) {
            g.add_edge(u, v).unwrap();
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let root_count = rng.gen_range(1..n);
    RootedGraph::new(g, order[..root_count].iter().copied()).unwrap()
}

/// Every bipartite graph with `1..=max_left` and `1..=max_right` part sizes.
pub fn all_bipartite(max_left: usize, max_right: usize) -> impl Iterator<Item = BipartiteGraph> {
    (1..=max_left).flat_map(move |a| {
        (1..=max_right).flat_map(move |b| {
            (0u64..1 << (a * b)).map(move |mask| BipartiteGraph::from_mask(a, b, mask))
        })
    })
}

/// All `k`-tuples of distinct elements of `1..=universe`, lexicographic.
pub fn distinct_tuples(k: usize, universe: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(k: usize, universe: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in 1..=universe {
            if !cur.contains(&x) {
                cur.push(x);
                go(k, universe, cur, out);
                cur.pop();
            }
        }
    }
    go(k, universe, &mut cur, &mut out);
    out
}

/// Every system of distinct `k`-tuples over `1..=universe` with at least
/// `min_size` sequences, by bitmask over [`distinct_tuples`].
pub fn all_sequence_systems(
    k: usize,
    universe: u64,
    min_size: usize,
) -> impl Iterator<Item = SequenceSystem> {
    let tuples = distinct_tuples(k, universe);
    assert!(tuples.len() < 64, "too many tuples to enumerate subsets");
    (0u64..1 << tuples.len())
        .filter(move |m| m.count_ones() as usize >= min_size)
        .map(move |mask| {
            let chosen = (0..tuples.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| tuples[i].clone());
            SequenceSystem::new(k, chosen).expect("tuples have distinct entries")
        })
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepCounterexample {
    pub instance: serde_json::Value,
    pub detail: serde_json::Value,
}

/// Bipartite `H` with parts up to `max_part` where `K_{s,t}` is absent and
/// every `W`-degree is at least `s`, yet `e(H)` exceeds the bound.
pub fn kst_sweep(max_part: usize, s: usize, t: usize) -> Result<(usize, Vec<SweepCounterexample>)> {
    let graphs: Vec<BipartiteGraph> = all_bipartite(max_part, max_part).collect();
    let results: Vec<Option<SweepCounterexample>> = graphs
        .par_iter()
        .map(|h| {
            let r = kst_check(h, s, t)?;
            Ok(
                (r.guarantee_applies() && !r.inequality_holds).then(|| SweepCounterexample {
                    instance: serde_json::to_value(h).unwrap(),
                    detail: serde_json::to_value(&r).unwrap(),
                }),
            )
        })
        .collect::<Result<_>>()?;
    Ok((graphs.len(), results.into_iter().flatten().collect()))
}

/// The path `u0 - w0 - u1 - w1` with parts of size two.
pub fn drc_path_pattern() -> BipartiteGraph {
    BipartiteGraph::new(2, 2, [(0, 0), (1, 0), (1, 1)]).unwrap()
}

/// Hosts with parts up to `max_part` that avoid `f` side-respectingly but
/// break the degree-moment inequality.
pub fn drc_sweep(
    f: &BipartiteGraph,
    max_part: usize,
    k: u32,
    r: u32,
) -> Result<(usize, Vec<SweepCounterexample>)> {
    let graphs: Vec<BipartiteGraph> = all_bipartite(max_part, max_part).collect();
    let results: Vec<Option<SweepCounterexample>> = graphs
        .par_iter()
        .map(|g| {
            let rep = drc_check(f, g, k, r)?;
            Ok(
                (!rep.embedding_found && !rep.inequality_holds).then(|| SweepCounterexample {
                    instance: serde_json::to_value(g).unwrap(),
                    detail: serde_json::to_value(&rep).unwrap(),
                }),
            )
        })
        .collect::<Result<_>>()?;
    Ok((graphs.len(), results.into_iter().flatten().collect()))
}

/// Random `(F, G)` pairs where `amp_1 != inj`, or `amp_C` increases in `C`.
pub fn amp_sweep<R: Rng>(
    rng: &mut R,
    pairs: usize,
    max_host: usize,
) -> Result<Vec<SweepCounterexample>> {
    let mut bad = Vec::new();
    for _ in 0..pairs {
        let f = random_rooted(rng, 4);
        let n = rng.gen_range(2..=max_host);
        let p = rng.gen_range(0.3..0.9);
        let g = random_graph(rng, n, p);
        let total = inj(&f, &g, None)?;
        let amps: Vec<u64> = (1..=4)
            .map(|c| amp_count(&f, &g, c))
            .collect::<Result<_>>()?;
        if amps[0] != total || amps.windows(2).any(|w| w[1] > w[0]) {
            bad.push(SweepCounterexample {
                instance: serde_json::json!({ "F": f.to_json(), "G": g.to_json() }),
                detail: serde_json::json!({ "inj": total, "amp_1_to_4": amps }),
            });
        }
    }
    Ok(bad)
}
