use ncgraph::graph::{all_graphs, Graph};
use ncgraph::random::{gaussian, seeded};
use ncgraph::sdp::{solve, validate, LmiProblem, SolveOptions, SolveStatus};
use ncgraph::suite::lambda_max_problem;
use ncgraph::theta::{theta_classical_programs, theta_tilde_programs};
use ncgraph::RealMatrix;
use proptest::prelude::*;

fn random_symmetric(n: usize, seed: u64) -> RealMatrix {
    let mut rng = seeded(seed);
    let a = RealMatrix::from_fn(n, n, |_, _| gaussian(&mut rng));
    RealMatrix::from_fn(n, n, |i, j| 0.5 * (a[(i, j)] + a[(j, i)]))
}

fn scaled_objective(p: &LmiProblem, s: f64) -> LmiProblem {
    let mut q = p.clone();
    q.objective.iter_mut().for_each(|c| *c *= s);
    q
}

fn opts() -> SolveOptions {
    SolveOptions::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn lambda_max_matches_eigensolver(seed in any::<u64>(), n in 1usize..8) {
        let a = random_symmetric(n, seed);
        let sol = solve(&lambda_max_problem(&a), &opts()).unwrap();
        prop_assert_eq!(sol.status, SolveStatus::Optimal);
        let lmax = -a.scale(-1.0).min_eigenvalue();
        prop_assert!((sol.value - lmax).abs() <= 1e-6 * (1.0 + lmax.abs()));
    }

    #[test]
    fn objective_scaling_keeps_argmin(seed in any::<u64>(), n in 2usize..7, s in 0.01f64..100.0) {
        let p = lambda_max_problem(&random_symmetric(n, seed));
        let base = solve(&p, &opts()).unwrap();
        let scaled = solve(&scaled_objective(&p, s), &opts()).unwrap();
        prop_assert!(scaled.is_optimal());
        for (a, b) in base.y.iter().zip(&scaled.y) {
            prop_assert!((a - b).abs() <= 1e-6 * (1.0 + a.abs()));
        }
        prop_assert!((scaled.value - s * base.value).abs() <= 1e-6 * (1.0 + (s * base.value).abs()));
    }
}

#[test]
fn repeated_solves_are_bit_identical() {
    let g = Graph::cycle(7);
    let (primal, dual) = theta_classical_programs(&g).unwrap();
    for p in [&primal, &dual] {
        let a = solve(p, &opts()).unwrap();
        let b = solve(p, &opts()).unwrap();
        assert_eq!(a.iterations, b.iterations);
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert!(a.y.iter().zip(&b.y).all(|(x, y)| x.to_bits() == y.to_bits()));
    }
}

#[test]
fn complementarity_decreases_after_start() {
    let mut problems = Vec::new();
    for g in all_graphs(5).iter().step_by(4) {
        let (p, d) = theta_classical_programs(g).unwrap();
        problems.push(p);
        problems.push(d);
    }
    let s = ncgraph::catalog::dephasing_qubit();
    let (p, d) = theta_tilde_programs(&s).unwrap();
    problems.push(p);
    problems.push(d);
    for p in &problems {
        let sol = solve(p, &opts()).unwrap();
        assert!(sol.is_optimal());
        let h = &sol.complementarity;
        for k in 4..h.len() {
            assert!(h[k] <= h[k - 1] * (1.0 + 1e-9), "⟨X,Z⟩ rose at iteration {k}: {h:?}");
        }
    }
}

#[test]
fn reported_point_is_feasible_by_independent_check() {
    for g in all_graphs(5).iter().step_by(2) {
        let (p, d) = theta_classical_programs(g).unwrap();
        for prob in [&p, &d] {
            let sol = solve(prob, &opts()).unwrap();
            let v = validate(prob, &sol.y).unwrap();
            assert!(v.min_eig() >= -1e-8);
            assert!((v.objective - sol.value).abs() <= 1e-12 * (1.0 + sol.value.abs()));
        }
        // weak duality: the maximization never exceeds the minimization
        let (pv, dv) = (solve(&p, &opts()).unwrap().value, solve(&d, &opts()).unwrap().value);
        assert!(pv <= dv + 1e-7, "{pv} > {dv}");
    }
}

#[test]
fn iteration_limit_is_reported() {
    let (p, _) = theta_classical_programs(&Graph::cycle(5)).unwrap();
    let sol = solve(&p, &SolveOptions { max_iter: 2, ..opts() }).unwrap();
    assert_eq!(sol.status, SolveStatus::IterationLimit);
}
