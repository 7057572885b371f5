//! Backtracking search for injective edge-preserving maps from a pattern
//! graph into a host given as bitset adjacency rows.
//!
//! All embedding counts, rooted-subgraph tests, subgraph containment and the
//! Turán solver's freeness checks go through this one engine. Candidates for
//! the next pattern vertex are the intersection of the host rows of its
//! already-placed neighbours, its domain, and the unused host vertices.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;

use crate::graph::Graph;

const UNSET: usize = usize::MAX;

/// Vertex order for a pattern plus, for each position, the earlier pattern
/// vertices adjacent to it.
#[derive(Clone, Debug)]
pub struct Plan {
    order: Vec<usize>,
    back: Vec<Vec<usize>>,
    pattern_n: usize,
}

impl Plan {
    /// Breadth-first order from the lowest-id vertex satisfying `prefer_start`
    /// (falling back to vertex 0); further components start at their lowest id.
    pub fn bfs(pattern: &Graph, prefer_start: impl Fn(usize) -> bool) -> Plan {
        let n = pattern.vertex_count();
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let first = (0..n).find(|&v| prefer_start(v)).unwrap_or(0);
        let starts = std::iter::once(first).chain(0..n);
        for s in starts {
            if n == 0 || seen[s] {
                continue;
            }
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                order.push(u);
                for &v in pattern.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
        }
        Plan::from_order(pattern, order)
    }

    /// `prefix` first, then repeatedly the vertex with the most placed
    /// neighbours (ties: higher degree, then lower id).
    pub fn greedy(pattern: &Graph, prefix: &[usize]) -> Plan {
        let n = pattern.vertex_count();
        let mut placed = vec![false; n];
        let mut links = vec![0usize; n];
        let mut order = Vec::with_capacity(n);
        let place = |v: usize, placed: &mut [bool], links: &mut [usize], order: &mut Vec<usize>| {
            placed[v] = true;
            order.push(v);
            for &w in pattern.neighbors(v) {
                links[w] += 1;
            }
        };
        for &v in prefix {
            if !placed[v] {
                place(v, &mut placed, &mut links, &mut order);
            }
        }
        while order.len() < n {
            let next = (0..n)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| (links[v], pattern.degree(v), std::cmp::Reverse(v)))
                .unwrap();
            place(next, &mut placed, &mut links, &mut order);
        }
        Plan::from_order(pattern, order)
    }

    fn from_order(pattern: &Graph, order: Vec<usize>) -> Plan {
        let n = pattern.vertex_count();
        debug_assert_eq!(order.len(), n);
        let mut position = vec![UNSET; n];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        let back = order
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                pattern
                    .neighbors(v)
                    .iter()
                    .copied()
                    .filter(|&w| position[w] < i)
                    .collect()
            })
            .collect();
        Plan {
            order,
            back,
            pattern_n: n,
        }
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }
}

/// One search problem: plan, host, and optional per-vertex domains.
#[derive(Clone)]
pub struct Search<'a> {
    plan: &'a Plan,
    rows: &'a [FixedBitSet],
    domains: Vec<Option<FixedBitSet>>,
}

impl<'a> Search<'a> {
    pub fn new(plan: &'a Plan, rows: &'a [FixedBitSet]) -> Self {
        Search {
            plan,
            rows,
            domains: vec![None; plan.pattern_n],
        }
    }

    pub fn host_n(&self) -> usize {
        self.rows.len()
    }

    /// Intersect the domain of pattern vertex `pv` with `allowed`.
    pub fn restrict(&mut self, pv: usize, allowed: &FixedBitSet) {
        let host_n = self.host_n();
        let d = self.domains[pv].get_or_insert_with(|| {
            let mut all = FixedBitSet::with_capacity(host_n);
            all.insert_range(..);
            all
        });
        d.intersect_with(allowed);
    }

    pub fn pin(&mut self, pv: usize, hv: usize) {
        let mut only = FixedBitSet::with_capacity(self.host_n());
        if hv < self.host_n() {
            only.insert(hv);
        }
        self.domains[pv] = Some(only);
    }

    pub fn iter(&self) -> Matches<'a> {
        Matches::new(self.clone())
    }

    pub fn into_matches(self) -> Matches<'a> {
        Matches::new(self)
    }

    pub fn count(&self) -> u64 {
        let mut it = self.iter();
        let mut c = 0;
        while it.advance() {
            c += 1;
        }
        c
    }

    pub fn exists(&self) -> bool {
        self.iter().advance()
    }
}

/// Stack-based enumeration; each item is indexed by pattern vertex.
pub struct Matches<'a> {
    search: Search<'a>,
    mapping: Vec<usize>,
    used: FixedBitSet,
    cand: Vec<FixedBitSet>,
    depth: usize,
    started: bool,
    done: bool,
}

impl<'a> Matches<'a> {
    fn new(search: Search<'a>) -> Self {
        let k = search.plan.pattern_n;
        let host_n = search.host_n();
        Matches {
            search,
            mapping: vec![UNSET; k],
            used: FixedBitSet::with_capacity(host_n),
            cand: vec![FixedBitSet::with_capacity(host_n); k],
            depth: 0,
            started: false,
            done: false,
        }
    }

    fn fill(&mut self, d: usize) {
        let plan = self.search.plan;
        let pv = plan.order[d];
        let c = &mut self.cand[d];
        match &self.search.domains[pv] {
            Some(dom) => c.clone_from(dom),
            None => {
                c.clear();
                c.insert_range(..);
            }
        }
        for &u in &plan.back[d] {
            c.intersect_with(&self.search.rows[self.mapping[u]]);
        }
        c.difference_with(&self.used);
    }

    fn unassign(&mut self, d: usize) {
        let pv = self.search.plan.order[d];
        self.used.set(self.mapping[pv], false);
        self.mapping[pv] = UNSET;
    }

    /// Moves to the next match; the current one is then in [`current`].
    pub fn advance(&mut self) -> bool {
        if self.done {
            return false;
        }
        let k = self.search.plan.pattern_n;
        if !self.started {
            self.started = true;
            if k == 0 {
                // exactly one (empty) map, reported once
                return true;
            }
            self.fill(0);
            self.depth = 0;
        } else {
            if k == 0 {
                self.done = true;
                return false;
            }
            self.depth = k - 1;
            self.unassign(self.depth);
        }
        loop {
            let d = self.depth;
            match self.cand[d].minimum() {
                Some(w) => {
                    self.cand[d].set(w, false);
                    let pv = self.search.plan.order[d];
                    self.mapping[pv] = w;
                    self.used.insert(w);
                    if d + 1 == k {
                        return true;
                    }
                    self.depth += 1;
                    self.fill(self.depth);
                }
                None => {
                    if d == 0 {
                        self.done = true;
                        return false;
                    }
                    self.depth -= 1;
                    self.unassign(self.depth);
                }
            }
        }
    }

    pub fn current(&self) -> &[usize] {
        &self.mapping
    }
}

impl Iterator for Matches<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        self.advance().then(|| self.mapping.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_into_triangle() {
        let p = Graph::path(3);
        let k3 = Graph::complete(3);
        let plan = Plan::bfs(&p, |_| true);
        let rows = k3.adjacency_rows();
        assert_eq!(Search::new(&plan, &rows).count(), 6);
    }

    #[test]
    fn empty_pattern_has_one_map() {
        let plan = Plan::bfs(&Graph::new(0), |_| true);
        let rows = Graph::complete(3).adjacency_rows();
        let s = Search::new(&plan, &rows);
        assert_eq!(s.count(), 1);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn isolated_vertices_need_distinct_images() {
        let plan = Plan::greedy(&Graph::new(3), &[]);
        let rows = Graph::new(3).adjacency_rows();
        assert_eq!(Search::new(&plan, &rows).count(), 6);
        let rows = Graph::new(2).adjacency_rows();
        assert_eq!(Search::new(&plan, &rows).count(), 0);
    }

    #[test]
    fn pinned_vertex() {
        let e = Graph::path(2);
        let plan = Plan::bfs(&e, |_| true);
        let rows = Graph::complete(3).adjacency_rows();
        let mut s = Search::new(&plan, &rows);
        s.pin(0, 2);
        let all: Vec<_> = s.iter().collect();
        assert_eq!(all, vec![vec![2, 0], vec![2, 1]]);
    }
}
