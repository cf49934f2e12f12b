use ncgraph::graph::{all_graphs, alpha_brute, Graph};
use proptest::prelude::*;

fn graph() -> impl Strategy<Value = Graph> {
    (1usize..9, 0.0f64..1.0, any::<u64>()).prop_map(|(n, p, seed)| Graph::erdos_renyi(n, p, seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn alpha_is_supermultiplicative(g in graph(), h in graph()) {
        prop_assume!(g.n() * h.n() <= 30);
        let (a, _) = alpha_brute(&g).unwrap();
        let (b, _) = alpha_brute(&h).unwrap();
        let (ab, set) = alpha_brute(&g.strong_product(&h).unwrap()).unwrap();
        prop_assert!(ab >= a * b);
        prop_assert_eq!(set.len(), ab);
    }

    #[test]
    fn alpha_ignores_labels(g in graph(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.shuffle(&mut ncgraph::random::seeded(seed));
        let (a, set) = alpha_brute(&g).unwrap();
        prop_assert!(g.is_independent(&set));
        prop_assert_eq!(alpha_brute(&g.relabel(&perm)).unwrap().0, a);
    }

    #[test]
    fn complement_swaps_independence_and_cliques(g in graph()) {
        let c = g.complement();
        prop_assert_eq!(c.complement(), g.clone());
        prop_assert_eq!(g.edge_count() + c.edge_count(), g.n() * (g.n() - 1) / 2);
    }
}

/// Exhaustive subset oracle for α.
fn alpha_by_subsets(g: &Graph) -> usize {
    let n = g.n();
    (0u32..1 << n)
        .filter(|mask| {
            let set: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            g.is_independent(&set)
        })
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

#[test]
fn alpha_matches_subset_enumeration() {
    for g in (1..=6).flat_map(all_graphs) {
        assert_eq!(alpha_brute(&g).unwrap().0, alpha_by_subsets(&g), "{g:?}");
    }
}

#[test]
fn graph_counts_up_to_isomorphism() {
    let counts: Vec<usize> = (1..=6).map(|n| all_graphs(n).len()).collect();
    assert_eq!(counts, vec![1, 2, 4, 11, 34, 156]);
}
