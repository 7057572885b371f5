//! Strategies and brute-force oracles shared by the integration tests.
//! The oracles deliberately avoid the library's matcher and packing code.
#![allow(dead_code)]

use itertools::Itertools;
use proptest::prelude::*;
use turex_core::{Graph, RootedGraph};

pub fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut g = Graph::new(n);
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits[k] {
                g.add_edge(u, v).unwrap();
            }
            k += 1;
        }
    }
    g
}

pub fn arb_graph(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2)
            .prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

/// At least one root and at least one non-root.
pub fn arb_rooted(max_n: usize) -> impl Strategy<Value = RootedGraph> {
    (2..=max_n).prop_flat_map(|n| {
        (
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2),
            1..(1u32 << n) - 1,
        )
            .prop_map(move |(bits, roots)| {
                let g = graph_from_bits(n, &bits);
                RootedGraph::new(g, (0..n).filter(|v| roots >> v & 1 == 1)).unwrap()
            })
    })
}

/// Leaf-rooted tree where each vertex hangs off a random earlier one.
pub fn arb_leaf_rooted_tree(min_n: usize, max_n: usize) -> impl Strategy<Value = RootedGraph> {
    (min_n..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<proptest::sample::Index>(), n - 1).prop_map(move |idx| {
            let mut g = Graph::new(n);
            for (i, ix) in idx.iter().enumerate() {
                let v = i + 1;
                g.add_edge(ix.index(v), v).unwrap();
            }
            RootedGraph::leaf_rooted(g)
        })
    })
}

/// All injective edge-preserving maps `f -> g` that agree with `pins`.
pub fn brute_embeddings(f: &Graph, g: &Graph, pins: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let fe: Vec<(usize, usize)> = f.edges().collect();
    (0..g.vertex_count())
        .permutations(f.vertex_count())
        .filter(|m| pins.iter().all(|&(v, w)| m[v] == w))
        .filter(|m| fe.iter().all(|&(u, v)| g.has_edge(m[u], m[v])))
        .collect()
}

/// Edges with at least one endpoint in `set`.
pub fn touching(g: &Graph, set: &[usize]) -> usize {
    g.edges()
        .filter(|(u, v)| set.contains(u) || set.contains(v))
        .count()
}

/// Density above one, and every non-empty set of non-roots has
/// `touching / |S| >= e / v_free`.
pub fn brute_balanced(f: &RootedGraph) -> bool {
    let free = f.non_roots();
    let e = f.edge_count();
    e > free.len()
        && (1..=free.len()).all(|k| {
            free.iter()
                .copied()
                .combinations(k)
                .all(|s| touching(f.graph(), &s) * free.len() >= e * k)
        })
}

/// Largest number of pairwise disjoint sets among `sets`.
pub fn brute_max_disjoint(sets: &[Vec<usize>]) -> usize {
    fn go(sets: &[Vec<usize>], used: &mut Vec<usize>) -> usize {
        let Some((first, rest)) = sets.split_first() else {
            return 0;
        };
        let skip = go(rest, used);
        if first.iter().any(|x| used.contains(x)) {
            return skip;
        }
        let before = used.len();
        used.extend(first);
        let take = 1 + go(rest, used);
        used.truncate(before);
        skip.max(take)
    }
    go(sets, &mut Vec::new())
}

/// Naive backtracking: is there an injective edge-preserving map from
/// `small` to `big` that sends roots to roots and non-roots to non-roots?
/// With `respect_roots` off, roots are ignored.
pub fn brute_contains(small: &RootedGraph, big: &RootedGraph, respect_roots: bool) -> bool {
    fn go(
        v: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        small: &RootedGraph,
        big: &RootedGraph,
        respect_roots: bool,
    ) -> bool {
        if v == small.vertex_count() {
            return true;
        }
        for w in 0..big.vertex_count() {
            if used[w] || (respect_roots && small.is_root(v) != big.is_root(w)) {
                continue;
            }
            let fits =
                (0..v).all(|u| !small.graph().has_edge(u, v) || big.graph().has_edge(map[u], w));
            if !fits {
                continue;
            }
            map.push(w);
            used[w] = true;
            if go(v + 1, map, used, small, big, respect_roots) {
                return true;
            }
            map.pop();
            used[w] = false;
        }
        false
    }
    small.vertex_count() <= big.vertex_count()
        && go(
            0,
            &mut Vec::new(),
            &mut vec![false; big.vertex_count()],
            small,
            big,
            respect_roots,
        )
}

/// Proper non-empty sets of non-roots whose promotion leaves `f` without
/// any member as a rooted subgraph.
pub fn brute_uncovered(f: &RootedGraph, members: &[RootedGraph]) -> Vec<Vec<usize>> {
    let free = f.non_roots();
    let mut out = Vec::new();
    for k in 1..free.len() {
        for u in free.iter().copied().combinations(k) {
            let plus = RootedGraph::new(
                f.graph().clone(),
                f.roots().into_iter().chain(u.iter().copied()),
            )
            .unwrap();
            if !members.iter().any(|m| brute_contains(m, &plus, true)) {
                out.push(u);
            }
        }
    }
    out
}
