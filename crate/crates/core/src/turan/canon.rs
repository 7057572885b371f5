use itertools::Itertools;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest pattern that gets a canonical form (and so a cache key).
pub const MAX_CANONICAL_VERTICES: usize = 10;

/// Isomorphism-invariant string `"n:u-v,u-v,..."`.
///
/// Vertices are relabelled so degrees are non-increasing; among those
/// labellings the lexicographically smallest sorted edge list wins.
/// Returns `None` above [`MAX_CANONICAL_VERTICES`].
pub fn canonical_form(h: &Graph) -> Option<String> {
    let n = h.vertex_count();
    if n > MAX_CANONICAL_VERTICES {
        return None;
    }
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&v| std::cmp::Reverse(h.degree(v)));
    let classes: Vec<Vec<usize>> = by_degree
        .iter()
        .copied()
        .chunk_by(|&v| h.degree(v))
        .into_iter()
        .map(|(_, g)| g.collect())
        .collect();

    let mut best: Option<Vec<(usize, usize)>> = None;
    let mut label = vec![0usize; n];
    let per_class = classes
        .iter()
        .map(|c| c.iter().copied().permutations(c.len()).collect::<Vec<_>>())
        .multi_cartesian_product();
    let mut run = |orders: &[Vec<usize>]| {
        let mut next = 0;
        for order in orders {
            for &v in order {
                label[v] = next;
                next += 1;
            }
        }
        let mut edges: Vec<(usize, usize)> = h
            .edges()
            .map(|(u, v)| {
                let (a, b) = (label[u], label[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        if best.as_ref().is_none_or(|b| edges < *b) {
            best = Some(edges);
        }
    };
    if classes.is_empty() {
        run(&[]);
    } else {
        for orders in per_class {
            run(&orders);
        }
    }
    let edges = best.unwrap_or_default();
    Some(format!(
        "{n}:{}",
        edges.iter().map(|(u, v)| format!("{u}-{v}")).join(",")
    ))
}

/// Inverse of [`canonical_form`]'s output format (any labelling accepted).
pub fn parse_canonical(s: &str) -> Result<Graph> {
    let (n, rest) = s
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("missing ':' in `{s}`")))?;
    let n: usize = n
        .parse()
        .map_err(|_| Error::Parse(format!("bad vertex count in `{s}`")))?;
    if n > crate::graph::MAX_VERTICES {
        return Err(Error::TooManyVertices(n, crate::graph::MAX_VERTICES));
    }
    let mut g = Graph::new(n);
    if rest.is_empty() {
        return Ok(g);
    }
    for part in rest.split(',') {
        let (u, v) = part
            .split_once('-')
            .ok_or_else(|| Error::Parse(format!("bad edge `{part}`")))?;
        let u = u
            .parse()
            .map_err(|_| Error::Parse(format!("bad edge `{part}`")))?;
        let v = v
            .parse()
            .map_err(|_| Error::Parse(format!("bad edge `{part}`")))?;
        g.add_edge(u, v)?;
    }
    Ok(g)
}
