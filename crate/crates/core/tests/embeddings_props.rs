mod common;

use std::collections::{BTreeSet, HashMap};

use common::{arb_graph, arb_rooted, brute_embeddings, brute_max_disjoint};
use itertools::Itertools;
use proptest::prelude::*;
use turex_core::embeddings::{
    amp_count, amp_count_with, ext_count, inj, packing_number, AmpleRule, PartialAssignment,
};
use turex_core::{Graph, RootedGraph};

/// Distinct non-root image sets of the extensions of each root image.
fn brute_groups(f: &RootedGraph, g: &Graph) -> HashMap<Vec<usize>, Vec<Vec<usize>>> {
    let roots = f.roots();
    let free = f.non_roots();
    let mut groups: HashMap<Vec<usize>, BTreeSet<Vec<usize>>> = HashMap::new();
    for m in brute_embeddings(f.graph(), g, &[]) {
        let key = roots.iter().map(|&r| m[r]).collect();
        let mut img: Vec<usize> = free.iter().map(|&v| m[v]).collect();
        img.sort_unstable();
        groups.entry(key).or_default().insert(img);
    }
    groups
        .into_iter()
        .map(|(k, v)| (k, v.into_iter().collect()))
        .collect()
}

fn brute_amp(f: &RootedGraph, g: &Graph, c: usize) -> u64 {
    let roots = f.roots();
    let packing: HashMap<Vec<usize>, usize> = brute_groups(f, g)
        .into_iter()
        .map(|(k, sets)| (k, brute_max_disjoint(&sets)))
        .collect();
    brute_embeddings(f.graph(), g, &[])
        .iter()
        .filter(|m| packing[&roots.iter().map(|&r| m[r]).collect::<Vec<_>>()] >= c)
        .count() as u64
}

fn brute_ext(f1: &RootedGraph, f2: &RootedGraph, g: &Graph, c: usize) -> u64 {
    let roots = f1.roots();
    let ample_keys: BTreeSet<Vec<usize>> = brute_groups(f1, g)
        .into_iter()
        .filter(|(_, sets)| brute_max_disjoint(sets) >= c)
        .map(|(k, _)| k)
        .collect();
    let inner = brute_embeddings(f1.graph(), f2.graph(), &[]);
    brute_embeddings(f2.graph(), g, &[])
        .iter()
        .filter(|eta| {
            inner.iter().any(|e12| {
                let key: Vec<usize> = roots.iter().map(|&r| eta[e12[r]]).collect();
                ample_keys.contains(&key)
            })
        })
        .count() as u64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn inj_matches_oracle(f in arb_rooted(5), g in arb_graph(1, 6)) {
        let expected = brute_embeddings(f.graph(), &g, &[]).len() as u64;
        prop_assert_eq!(inj(&f, &g, None).unwrap(), expected);
    }

    #[test]
    fn inj_splits_over_root_images(f in arb_rooted(4), g in arb_graph(1, 6)) {
        let roots = f.roots();
        let mut sum = 0;
        for images in (0..g.vertex_count()).permutations(roots.len()) {
            let sigma = PartialAssignment::from_pairs(roots.iter().copied().zip(images.iter().copied())).unwrap();
            let part = inj(&f, &g, Some(&sigma)).unwrap();
            let pins: Vec<(usize, usize)> = roots.iter().copied().zip(images).collect();
            prop_assert_eq!(part, brute_embeddings(f.graph(), &g, &pins).len() as u64);
            sum += part;
        }
        prop_assert_eq!(sum, inj(&f, &g, None).unwrap());
    }

    #[test]
    fn packing_matches_oracle(f in arb_rooted(4), g in arb_graph(1, 6)) {
        let roots = f.roots();
        let groups = brute_groups(&f, &g);
        for images in (0..g.vertex_count()).permutations(roots.len()) {
            let sigma = PartialAssignment::from_pairs(roots.iter().copied().zip(images.iter().copied())).unwrap();
            let expected = groups.get(&images).map_or(0, |sets| brute_max_disjoint(sets));
            prop_assert_eq!(packing_number(&f, &g, &sigma).unwrap(), expected);
        }
    }

    #[test]
    fn amp_matches_oracle_and_decreases(f in arb_rooted(4), g in arb_graph(2, 6)) {
        let total = inj(&f, &g, None).unwrap();
        prop_assert_eq!(amp_count(&f, &g, 0).unwrap(), total);
        prop_assert_eq!(amp_count(&f, &g, 1).unwrap(), total);
        let mut prev = total;
        for c in 1..=4 {
            let a = amp_count(&f, &g, c).unwrap();
            prop_assert_eq!(a, brute_amp(&f, &g, c), "C = {}", c);
            prop_assert!(a <= prev);
            prop_assert!(amp_count_with(&f, &g, c, AmpleRule::Strict).unwrap() <= a);
            prev = a;
        }
    }

    #[test]
    fn ext_bounded_by_inj(
        f1 in arb_rooted(3),
        f2 in arb_rooted(4),
        g in arb_graph(2, 6),
        c in 1usize..=3,
    ) {
        let ext = ext_count(&f1, &f2, &g, c).unwrap();
        prop_assert_eq!(ext, brute_ext(&f1, &f2, &g, c));
        prop_assert!(ext <= inj(&f2, &g, None).unwrap());
        if amp_count(&f1, &g, c).unwrap() == 0 {
            prop_assert_eq!(ext, 0);
        }
    }
}

#[test]
fn ext_of_self_dominates_amp() {
    let f = RootedGraph::new(Graph::path(2), [0]).unwrap();
    let g = Graph::complete_bipartite(1, 3);
    for c in 1..=4 {
        assert!(ext_count(&f, &f, &g, c).unwrap() >= amp_count(&f, &g, c).unwrap());
    }
    // the flip of the edge lets a leaf-rooted embedding extend a
    // center-rooted one
    assert_eq!(ext_count(&f, &f, &g, 3).unwrap(), 6);
    assert_eq!(ext_count(&f, &f, &g, 4).unwrap(), 0);
}

#[test]
fn ext_cherry_in_star() {
    let f1 = RootedGraph::new(Graph::path(2), [0]).unwrap();
    let f2 = RootedGraph::new(Graph::path(3), [0, 2]).unwrap();
    let g = Graph::complete_bipartite(1, 3);
    assert_eq!(
        ext_count(&f1, &f2, &g, 3).unwrap(),
        brute_ext(&f1, &f2, &g, 3)
    );
    assert_eq!(ext_count(&f1, &f2, &g, 3).unwrap(), 6);
}
