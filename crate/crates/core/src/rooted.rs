//! Density, balancedness and powers of rooted graphs.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::families::FamilyParams;
use crate::graph::{Graph, RootedGraph};
use crate::matcher::{Plan, Search};
use crate::rational::Rational;

/// Subset enumeration is refused beyond this many non-roots.
pub const MAX_ENUMERATED_NON_ROOTS: usize = 30;

/// `e(F) / (v(F) - |R(F)|)`.
pub fn density(f: &RootedGraph) -> Result<Rational> {
    let free = f.non_root_count();
    if free == 0 {
        return Err(Error::UndefinedDensity);
    }
    Ok(Rational::new(f.edge_count() as i128, free as i128))
}

/// Exhaustive check over every subset `S` of the non-roots that the number
/// of edges meeting `S` is at least `density * |S|`, plus `density > 1`.
pub fn is_balanced(f: &RootedGraph) -> Result<bool> {
    let rho = density(f)?;
    if rho <= Rational::one() {
        return Ok(false);
    }
    Ok(first_unbalanced_subset(f)?.is_none())
}

/// The first subset (in bitmask order over the sorted non-roots) violating
/// the balance inequality, if any.
pub fn first_unbalanced_subset(f: &RootedGraph) -> Result<Option<Vec<usize>>> {
    let free = f.non_roots();
    let k = free.len();
    if k == 0 {
        return Err(Error::UndefinedDensity);
    }
    if k > MAX_ENUMERATED_NON_ROOTS {
        return Err(Error::TooManyNonRoots(k));
    }
    let mut bit = vec![0u64; f.vertex_count()];
    for (i, &v) in free.iter().enumerate() {
        bit[v] = 1 << i;
    }
    // each edge as the mask of its non-root endpoints
    let edge_masks: Vec<u64> = f
        .graph()
        .edges()
        .map(|(u, v)| bit[u] | bit[v])
        .filter(|&m| m != 0)
        .collect();
    let e = f.edge_count() as u128;
    let free_count = k as u128;
    for subset in 1u64..(1u64 << k) {
        let touching = edge_masks.iter().filter(|&&m| m & subset != 0).count() as u128;
        // touching >= (e / free_count) * |S|, cross-multiplied
        if touching * free_count < e * subset.count_ones() as u128 {
            let members = (0..k)
                .filter(|i| subset >> i & 1 == 1)
                .map(|i| free[i])
                .collect();
            return Ok(Some(members));
        }
    }
    Ok(None)
}

/// Closed-form balance criterion for `T(s,t,s')`:
/// `s' - 1 <= s <= t + s'` and `(t, s') != (1, 0)`.
pub fn balance_closed_form(p: FamilyParams) -> bool {
    p.s_prime <= p.s + 1 && p.s <= p.t + p.s_prime && (p.t, p.s_prime) != (1, 0)
}

/// `p` copies of `F` glued along the roots, parallel root-root edges merged.
///
/// Copy 0 keeps the original vertex ids, so `power(F, 1) == F`; the
/// non-roots of copy `i >= 1` are appended in order. Gluing only identifies
/// a root with its own copies, so no loops can arise.
pub fn power(f: &RootedGraph, p: usize) -> Result<RootedGraph> {
    if p == 0 {
        return Err(Error::InvalidParams("power needs p >= 1".into()));
    }
    let n = f.vertex_count();
    let free = f.non_roots();
    let total = n + (p - 1) * free.len();
    if total > crate::graph::MAX_VERTICES {
        return Err(Error::TooManyVertices(total, crate::graph::MAX_VERTICES));
    }
    let mut g = f.graph().clone();
    for _ in 1..p {
        let mut image: Vec<usize> = (0..n).collect();
        for &v in &free {
            image[v] = g.add_vertex();
        }
        for (u, v) in f.graph().edges() {
            g.merge_edge(image[u], image[v])?;
        }
    }
    RootedGraph::new(g, f.roots())
}

/// Whether two rooted graphs are isomorphic by a map sending roots to roots.
pub fn rooted_isomorphic(a: &RootedGraph, b: &RootedGraph) -> bool {
    if a.vertex_count() != b.vertex_count()
        || a.edge_count() != b.edge_count()
        || a.root_count() != b.root_count()
    {
        return false;
    }
    let mut da = degree_profile(a);
    let mut db = degree_profile(b);
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    // an edge-preserving bijection between graphs with equal edge counts is
    // an isomorphism
    root_respecting_embedding_exists(a, b)
}

pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    rooted_isomorphic(
        &RootedGraph::unrooted(a.clone()),
        &RootedGraph::unrooted(b.clone()),
    )
}

fn degree_profile(g: &RootedGraph) -> Vec<(bool, usize)> {
    (0..g.vertex_count())
        .map(|v| (g.is_root(v), g.graph().degree(v)))
        .collect()
}

/// Embedding of `small` into `big` with roots mapped exactly onto roots.
pub(crate) fn root_respecting_embedding_exists(small: &RootedGraph, big: &RootedGraph) -> bool {
    let n = big.vertex_count();
    let mut root_set = FixedBitSet::with_capacity(n);
    for r in big.roots() {
        root_set.insert(r);
    }
    let mut free_set = root_set.clone();
    free_set.toggle_range(..);
    let plan = Plan::greedy(small.graph(), &[]);
    let rows = big.graph().adjacency_rows();
    let mut search = Search::new(&plan, &rows);
    for v in 0..small.vertex_count() {
        let deg = small.graph().degree(v);
        let mut allowed = if small.is_root(v) {
            root_set.clone()
        } else {
            free_set.clone()
        };
        for w in 0..n {
            if big.graph().degree(w) < deg {
                allowed.set(w, false);
            }
        }
        search.restrict(v, &allowed);
    }
    search.exists()
}
