use ncgraph::graph::Graph;
use ncgraph::random::{random_isometry, seeded};
use ncgraph::sdp::SolveOptions;
use ncgraph::space::{random_nc_graph, random_nested_pair};
use ncgraph::theta::{theta_classical, theta_naive_lower, theta_tilde, theta_tilde_dual, theta_tilde_primal};
use ncgraph::OperatorSpace;
use proptest::prelude::*;
use rand::Rng;

fn opts() -> SolveOptions {
    SolveOptions::default()
}

fn tilde(s: &OperatorSpace) -> f64 {
    theta_tilde(s, &opts()).unwrap().value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn value_lies_between_one_and_d_squared(seed in any::<u64>(), d in 1usize..4, dim in 1usize..10) {
        let s = random_nc_graph(d, dim.min(d * d), seed).unwrap();
        let r = theta_tilde(&s, &opts()).unwrap();
        prop_assert!(r.value >= 1.0 - 1e-6 && r.value <= (d * d) as f64 + 1e-6);
        // the certified primal value is a lower bound, the dual an upper bound
        let (p, dv) = (r.primal.unwrap(), r.dual.unwrap());
        prop_assert!(p <= dv + 1e-7);
        prop_assert!((p - dv).abs() <= 1e-5 * (1.0 + dv));
    }

    #[test]
    fn naive_value_is_below(seed in any::<u64>(), d in 2usize..4, dim in 1usize..8) {
        let s = random_nc_graph(d, dim.min(d * d), seed).unwrap();
        let naive = theta_naive_lower(&s, 6, 20, seed).unwrap();
        prop_assert!(naive >= 1.0 - 1e-9);
        prop_assert!(naive <= tilde(&s) + 1e-4);
    }

    #[test]
    fn larger_graphs_have_smaller_theta(seed in any::<u64>(), d in 2usize..4, small in 1usize..5, extra in 1usize..5) {
        let small = small.min(d * d);
        let (s, big) = random_nested_pair(d, small, (small + extra).min(d * d), seed).unwrap();
        prop_assert!(tilde(&s) >= tilde(&big) - 1e-5);
    }

    #[test]
    fn induced_subgraphs_have_smaller_theta(seed in any::<u64>(), d in 2usize..4, dim in 1usize..8, k in 1usize..3) {
        let s = random_nc_graph(d, dim.min(d * d), seed).unwrap();
        let u = random_isometry(&mut seeded(seed ^ 2), d, k.min(d));
        prop_assert!(tilde(&s.induced_subgraph(&u).unwrap()) <= tilde(&s) + 1e-5);
    }
}

#[test]
fn primal_and_dual_agree_separately() {
    for seed in 0..6 {
        let s = random_nc_graph(3, 2 + seed as usize, seed).unwrap();
        let p = theta_tilde_primal(&s, &opts()).unwrap().value;
        let d = theta_tilde_dual(&s, &opts()).unwrap().value;
        assert!((p - d).abs() <= 1e-5 * (1.0 + d), "seed {seed}: {p} vs {d}");
    }
}

#[test]
fn classical_and_quantum_agree_on_larger_random_graphs() {
    let mut rng = seeded(0x5eed);
    for n in [7, 7, 8] {
        let g = Graph::erdos_renyi(n, rng.gen_range(0.3..0.7), rng.gen());
        let th = theta_classical(&g, &opts()).unwrap().value;
        let tt = tilde(&g.to_operator_space());
        assert!((th - tt).abs() <= 1e-5, "n = {n}: {th} vs {tt}");
    }
}

#[test]
fn known_classical_values() {
    // ϑ(C_n) = n cos(π/n) / (1 + cos(π/n)) for odd n
    for n in [5usize, 7, 9] {
        let c = (std::f64::consts::PI / n as f64).cos();
        let want = n as f64 * c / (1.0 + c);
        assert!((theta_classical(&Graph::cycle(n), &opts()).unwrap().value - want).abs() < 1e-6);
    }
    assert!((theta_classical(&Graph::complete(6), &opts()).unwrap().value - 1.0).abs() < 1e-6);
    assert!((theta_classical(&Graph::empty(6), &opts()).unwrap().value - 6.0).abs() < 1e-6);
}
