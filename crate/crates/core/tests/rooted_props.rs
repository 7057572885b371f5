mod common;

use common::{arb_leaf_rooted_tree, arb_rooted, brute_balanced, touching};
use proptest::prelude::*;
use turex_core::families::{make_t, FamilyParams};
use turex_core::rooted::{
    balance_closed_form, density, first_unbalanced_subset, is_balanced, power, rooted_isomorphic,
};
use turex_core::{make_catalog_tree, CatalogKind, Rational};

#[test]
fn family_grid_matches_closed_forms() {
    for s in 1..=5u64 {
        for t in 1..=6u64 {
            for sp in 0..=7u64 {
                let p = FamilyParams::new(s, t, sp).unwrap();
                let f = make_t(p).unwrap();
                assert_eq!(f.non_root_count() as u64, t + 1);
                assert_eq!(
                    density(&f).unwrap(),
                    Rational::new((s * t + t + sp) as i128, (t + 1) as i128),
                    "T({s},{t},{sp})"
                );
                let b = is_balanced(&f).unwrap();
                assert_eq!(b, brute_balanced(&f), "oracle T({s},{t},{sp})");
                assert_eq!(b, balance_closed_form(p), "closed form T({s},{t},{sp})");
            }
        }
    }
}

#[test]
fn catalog_trees_are_balanced() {
    let mut kinds = Vec::new();
    // K_1^(t) is a path with one root, density exactly 1
    for s in 2..=4 {
        for t in 0..=3 {
            kinds.push(CatalogKind::SubdividedStar { s, t });
        }
    }
    for t in 1..=6 {
        kinds.push(CatalogKind::Path { t });
    }
    for s in 1..=3 {
        for t in 1..=3 {
            kinds.push(CatalogKind::Broom { s, t });
        }
    }
    for s in 1..=3 {
        for t in 0..=3 {
            for t_prime in 0..=t {
                kinds.push(CatalogKind::Spider { s, t, t_prime });
            }
        }
    }
    for kind in kinds {
        let f = make_catalog_tree(kind).unwrap();
        assert!(f.is_leaf_rooted_tree(), "{kind:?}");
        assert!(is_balanced(&f).unwrap(), "{kind:?}");
        assert!(brute_balanced(&f), "oracle disagrees on {kind:?}");
    }
}

#[test]
fn unbalanced_spider_with_long_extra_leg() {
    // legs of lengths 0, 0, 3: density 3/2, but the three non-roots of the
    // long leg meet only 4 edges
    let f = make_catalog_tree("s:2,0,3".parse().unwrap()).unwrap();
    assert!(!brute_balanced(&f));
    assert!(!is_balanced(&f).unwrap());
}

proptest! {
    #[test]
    fn balance_matches_oracle(f in arb_rooted(8)) {
        prop_assert_eq!(is_balanced(&f).unwrap(), brute_balanced(&f));
    }

    #[test]
    fn unbalanced_subset_is_a_witness(f in arb_rooted(8)) {
        let e = f.edge_count();
        let free = f.non_root_count();
        match first_unbalanced_subset(&f).unwrap() {
            Some(s) => {
                prop_assert!(!s.is_empty());
                prop_assert!(s.iter().all(|&v| !f.is_root(v)));
                prop_assert!(touching(f.graph(), &s) * free < e * s.len());
            }
            None => prop_assert!(brute_balanced(&f) || e <= free),
        }
    }

    #[test]
    fn density_is_edges_over_non_roots(f in arb_rooted(8)) {
        let d = density(&f).unwrap();
        prop_assert_eq!(d, Rational::new(f.edge_count() as i128, f.non_root_count() as i128));
    }

    #[test]
    fn power_counts(f in arb_rooted(6), p in 1usize..=4) {
        let fp = power(&f, p).unwrap();
        let r = f.root_count();
        prop_assert_eq!(fp.vertex_count(), p * (f.vertex_count() - r) + r);
        prop_assert_eq!(fp.root_count(), r);
        let root_root = f.graph().edges().filter(|&(u, v)| f.is_root(u) && f.is_root(v)).count();
        prop_assert_eq!(fp.edge_count(), p * (f.edge_count() - root_root) + root_root);
        if p == 1 {
            prop_assert_eq!(&fp, &f);
        }
        prop_assert_eq!(
            density(&fp).unwrap(),
            Rational::new(fp.edge_count() as i128, (p * f.non_root_count()) as i128)
        );
    }

    #[test]
    fn power_of_power(f in arb_leaf_rooted_tree(3, 6), p in 1usize..=3, q in 1usize..=2) {
        prop_assume!(f.non_root_count() > 0);
        let twice = power(&power(&f, p).unwrap(), q).unwrap();
        let once = power(&f, p * q).unwrap();
        prop_assert!(rooted_isomorphic(&twice, &once));
    }
}
