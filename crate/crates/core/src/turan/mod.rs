//! Exact Turán numbers `ex(n, H)` for small `n` by branch and bound.

mod cache;
mod canon;
mod fit;

pub use cache::{TuranCache, TuranRecord};
pub use canon::{canonical_form, parse_canonical, MAX_CANONICAL_VERTICES};
pub use fit::{fit_exponent, parse_points, ExponentFit};

use std::ops::RangeInclusive;
use std::sync::atomic::{AtomicUsize, Ordering};

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matcher::{Plan, Search};

pub const DEFAULT_CAP: usize = 9;
/// Raising `cap` past this is refused outright.
pub const HARD_CAP: usize = 16;
pub const SOLVER_VERSION: &str = concat!("turex-bnb/", env!("CARGO_PKG_VERSION"));

/// Whether `g` contains `h` as a (not necessarily induced) subgraph.
pub fn has_subgraph(g: &Graph, h: &Graph) -> bool {
    if h.vertex_count() > g.vertex_count() || h.edge_count() > g.edge_count() {
        return false;
    }
    let plan = Plan::greedy(h, &[]);
    let rows = g.adjacency_rows();
    let mut search = Search::new(&plan, &rows);
    for x in 0..h.vertex_count() {
        let mut allowed = FixedBitSet::with_capacity(g.vertex_count());
        allowed.extend((0..g.vertex_count()).filter(|&v| g.degree(v) >= h.degree(x)));
        search.restrict(x, &allowed);
    }
    search.exists()
}

#[derive(Clone, Copy, Debug)]
pub struct TuranOptions {
    pub cap: usize,
    /// Worker threads for the search; 1 keeps everything on the caller's thread.
    pub threads: usize,
}

impl Default for TuranOptions {
    fn default() -> Self {
        TuranOptions {
            cap: DEFAULT_CAP,
            threads: 1,
        }
    }
}

struct Solver<'a> {
    n: usize,
    pairs: Vec<(usize, usize)>,
    // one plan per oriented edge (a, b) of H, starting with a then b
    plans: Vec<(usize, usize, Plan)>,
    h: &'a Graph,
    // sub_ex[m] = ex(m, H) for m < n
    sub_ex: Vec<usize>,
}

#[derive(Clone)]
struct State {
    rows: Vec<FixedBitSet>,
    next: usize,
    chosen: Vec<usize>,
}

impl<'a> Solver<'a> {
    /// Solves every smaller order first; the vertices after `u` induce an
    /// `H`-free graph, so they carry at most `ex(n - u - 1, H)` edges.
    fn new(n: usize, h: &'a Graph) -> Self {
        let plans: Vec<(usize, usize, Plan)> = h
            .edges()
            .flat_map(|(a, b)| [(a, b), (b, a)])
            .map(|(a, b)| (a, b, Plan::greedy(h, &[a, b])))
            .collect();
        let mut sub_ex = vec![0; 2.min(n)];
        for m in 2..=n {
            let solver = Solver {
                n: m,
                pairs: (0..m)
                    .flat_map(|u| (u + 1..m).map(move |v| (u, v)))
                    .collect(),
                plans: plans.clone(),
                h,
                sub_ex: sub_ex.clone(),
            };
            if m == n {
                return solver;
            }
            let best = solver.solve_sequential(&solver.greedy()).len();
            sub_ex.push(best);
        }
        Solver {
            n,
            pairs: Vec::new(),
            plans,
            h,
            sub_ex,
        }
    }

    /// Most edges still addable from `st` on, or `None` when `st` breaks
    /// the degree order. Only graphs whose degrees never increase along the
    /// vertex order are searched; every graph has such a labelling.
    ///
    /// Beyond the degree cap, three bounds apply: the rest of row `u` plus
    /// the vertices after `u`; the vertices from `u` on minus what row `u`
    /// already holds; and averaging over the `n - 1`-vertex subgraphs.
    fn headroom(&self, st: &State) -> Option<usize> {
        let n = self.n;
        let next = self.pairs.get(st.next).copied();
        // rows before `done` are fully decided
        let done = next.map_or(n, |(u, _)| u);
        let deg = |w: usize| st.rows[w].count_ones(..);
        let mut room = usize::MAX;
        if done > 0 {
            let cap = deg(done - 1);
            if done > 1 && cap > deg(done - 2) {
                return None;
            }
            let mut slack = 0;
            for w in done..n {
                let d = deg(w);
                if d > cap {
                    return None;
                }
                slack += cap - d;
            }
            room = slack / 2;
        }
        let Some((u, v)) = next else {
            // the last two rows close together
            return (n < 3 || deg(n - 2) <= deg(n - 3)).then_some(0);
        };
        room = room.min((n - v) + self.sub_ex[n - u - 1]);
        if u > 0 {
            let held = st.rows[u].count_ones(u + 1..);
            room = room.min(self.sub_ex[n - u] - held);
        }
        if n > 2 {
            let total = n * self.sub_ex[n - 1] / (n - 2);
            room = room.min(total.saturating_sub(st.chosen.len()));
        }
        Some(room)
    }

    fn root(&self) -> State {
        State {
            rows: vec![FixedBitSet::with_capacity(self.n); self.n],
            next: 0,
            chosen: Vec::new(),
        }
    }

    /// Adds pair `i` to the rows if that creates no copy of `H`.
    fn try_add(&self, rows: &mut [FixedBitSet], i: usize) -> bool {
        let (u, v) = self.pairs[i];
        rows[u].insert(v);
        rows[v].insert(u);
        // any new copy must use the new edge
        let blocked = self.plans.iter().any(|(a, b, plan)| {
            let mut s = Search::new(plan, rows);
            s.pin(*a, u);
            s.pin(*b, v);
            for x in 0..self.h.vertex_count() {
                if x != *a && x != *b {
                    let mut allowed = FixedBitSet::with_capacity(self.n);
                    allowed.extend(
                        (0..self.n).filter(|&w| rows[w].count_ones(..) >= self.h.degree(x)),
                    );
                    s.restrict(x, &allowed);
                }
            }
            s.exists()
        });
        if blocked {
            rows[u].set(v, false);
            rows[v].set(u, false);
        }
        !blocked
    }

    fn remove(&self, rows: &mut [FixedBitSet], i: usize) {
        let (u, v) = self.pairs[i];
        rows[u].set(v, false);
        rows[v].set(u, false);
    }

    fn greedy(&self) -> Vec<usize> {
        let mut rows = self.root().rows;
        (0..self.pairs.len())
            .filter(|&i| self.try_add(&mut rows, i))
            .collect()
    }

    /// Include-first depth-first search. `enter(count, headroom)` decides
    /// whether a subtree is worth entering; `leaf` sees every reached leaf
    /// and returns true to stop.
    fn dfs(
        &self,
        st: &mut State,
        enter: &mut dyn FnMut(usize, usize) -> bool,
        leaf: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        match self.headroom(st) {
            Some(room) if enter(st.chosen.len(), room) => {}
            _ => return false,
        }
        if st.next == self.pairs.len() {
            return leaf(&st.chosen);
        }
        let i = st.next;
        st.next += 1;
        if self.try_add(&mut st.rows, i) {
            st.chosen.push(i);
            let stop = self.dfs(st, enter, leaf);
            st.chosen.pop();
            self.remove(&mut st.rows, i);
            if stop {
                st.next = i;
                return true;
            }
        }
        let stop = self.dfs(st, enter, leaf);
        st.next = i;
        stop
    }

    fn solve_sequential(&self, greedy: &[usize]) -> Vec<usize> {
        let mut best = greedy.to_vec();
        let mut st = self.root();
        let best_len = std::cell::Cell::new(best.len());
        self.dfs(
            &mut st,
            &mut |count, rest| count + rest > best_len.get(),
            &mut |chosen| {
                best = chosen.to_vec();
                best_len.set(best.len());
                false
            },
        );
        best
    }

    /// States after deciding the first `depth` pairs, in search order.
    fn frontier(&self, depth: usize) -> Vec<State> {
        let mut out = Vec::new();
        let mut stack = vec![self.root()];
        while let Some(mut st) = stack.pop() {
            if st.next == depth.min(self.pairs.len()) {
                out.push(st);
                continue;
            }
            let i = st.next;
            st.next += 1;
            let mut with = st.clone();
            // pushed in reverse so the include branch is expanded first
            stack.push(st);
            if self.try_add(&mut with.rows, i) {
                with.chosen.push(i);
                stack.push(with);
            }
        }
        out
    }

    fn solve_parallel(&self, greedy: &[usize], threads: usize) -> Result<Vec<usize>> {
        let best = AtomicUsize::new(greedy.len());
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
        let tasks = self.frontier(12);
        pool.install(|| {
            tasks.into_par_iter().for_each(|mut st| {
                self.dfs(
                    &mut st,
                    &mut |count, rest| count + rest > best.load(Ordering::Relaxed),
                    &mut |chosen| {
                        best.fetch_max(chosen.len(), Ordering::Relaxed);
                        false
                    },
                );
            })
        });
        let target = best.into_inner();
        if target == greedy.len() {
            return Ok(greedy.to_vec());
        }
        // the first graph of maximum size in search order, as the
        // sequential search would report it
        let mut witness = Vec::new();
        self.dfs(
            &mut self.root(),
            &mut |count, rest| count + rest >= target,
            &mut |chosen| {
                witness = chosen.to_vec();
                true
            },
        );
        Ok(witness)
    }
}

fn describe(h: &Graph) -> String {
    let edges: Vec<String> = h.edges().map(|(u, v)| format!("{u}-{v}")).collect();
    format!("{}:{}", h.vertex_count(), edges.join(","))
}

/// `ex(n, H)` with a witness graph. Consults and fills `cache` when `H`
/// has a canonical form.
pub fn turan_exact(
    n: usize,
    h: &Graph,
    cache: Option<&mut TuranCache>,
    opts: TuranOptions,
) -> Result<TuranRecord> {
    if n == 0 {
        return Err(Error::InvalidParams("n must be at least 1".into()));
    }
    if h.edge_count() == 0 {
        return Err(Error::Precondition("H needs at least one edge".into()));
    }
    let cap = opts.cap.min(HARD_CAP);
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    let canonical = canonical_form(h);
    if let (Some(key), Some(c)) = (&canonical, cache.as_deref()) {
        if let Some(rec) = c.get(key, n) {
            return Ok(rec.clone());
        }
    }

    let solver = Solver::new(n, h);
    let greedy = solver.greedy();
    let best = if opts.threads > 1 {
        solver.solve_parallel(&greedy, opts.threads)?
    } else {
        solver.solve_sequential(&greedy)
    };
    let rec = TuranRecord {
        n,
        h_canonical: canonical.clone().unwrap_or_else(|| describe(h)),
        ex_value: best.len(),
        witness_edges: best
            .iter()
            .map(|&i| {
                let (u, v) = solver.pairs[i];
                [u, v]
            })
            .collect(),
        solver_version: SOLVER_VERSION.to_string(),
    };
    if let (Some(_), Some(c)) = (canonical, cache) {
        c.insert(rec.clone())?;
    }
    Ok(rec)
}

pub fn turan_series(
    range: RangeInclusive<usize>,
    h: &Graph,
    mut cache: Option<&mut TuranCache>,
    opts: TuranOptions,
) -> Result<Vec<TuranRecord>> {
    range
        .map(|n| turan_exact(n, h, cache.as_deref_mut(), opts))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::make_star;
    use crate::rooted::power;

    fn ex(n: usize, h: &Graph) -> usize {
        turan_exact(n, h, None, TuranOptions::default())
            .unwrap()
            .ex_value
    }

    #[test]
    fn subgraph_examples() {
        let k3 = Graph::complete(3);
        assert!(has_subgraph(&Graph::complete(4), &k3));
        assert!(!has_subgraph(&Graph::cycle(5), &k3));
        let k23 = power(&make_star(3).unwrap(), 2).unwrap();
        assert!(has_subgraph(k23.graph(), &Graph::cycle(4)));
        assert!(!has_subgraph(&Graph::path(2), &k3));
    }

    #[test]
    fn small_values() {
        let k3 = Graph::complete(3);
        assert_eq!(ex(3, &k3), 2);
        assert_eq!(ex(5, &k3), 6);
        assert_eq!(ex(4, &Graph::cycle(4)), 4);
        assert_eq!(ex(1, &k3), 0);
    }

    #[test]
    fn witness_is_valid() {
        let c4 = Graph::cycle(4);
        let rec = turan_exact(6, &c4, None, TuranOptions::default()).unwrap();
        assert_eq!(rec.ex_value, 7);
        rec.validate().unwrap();
    }

    #[test]
    fn parallel_matches_sequential() {
        let c4 = Graph::cycle(4);
        let seq = turan_exact(6, &c4, None, TuranOptions::default()).unwrap();
        let par = turan_exact(
            6,
            &c4,
            None,
            TuranOptions {
                threads: 3,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(seq, par);
    }

    #[test]
    fn series_and_cap() {
        let k3 = Graph::complete(3);
        let vals: Vec<_> = turan_series(1..=3, &k3, None, TuranOptions::default())
            .unwrap()
            .into_iter()
            .map(|r| r.ex_value)
            .collect();
        assert_eq!(vals, [0, 1, 2]);
        let p3 = Graph::path(3);
        let vals: Vec<_> = turan_series(1..=2, &Graph::complete(3), None, TuranOptions::default())
            .unwrap()
            .into_iter()
            .map(|r| r.ex_value)
            .collect();
        assert_eq!(vals, [0, 1]);
        assert_eq!(
            turan_exact(10, &p3, None, TuranOptions::default()),
            Err(Error::CapExceeded { n: 10, cap: 9 })
        );
        assert!(turan_exact(3, &Graph::new(3), None, TuranOptions::default()).is_err());
    }

    #[test]
    fn cache_is_consulted() {
        let mut cache = TuranCache::in_memory();
        let k3 = Graph::complete(3);
        let first = turan_exact(4, &k3, Some(&mut cache), TuranOptions::default()).unwrap();
        assert_eq!(cache.len(), 1);
        let again = turan_exact(4, &k3, Some(&mut cache), TuranOptions::default()).unwrap();
        assert_eq!(first, again);
    }
}
