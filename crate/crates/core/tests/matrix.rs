use ncgraph::matrix::{eigh, gram_schmidt_hs, hs_inner, kron, operator_norm, partial_trace, real_embed, TraceOut};
use ncgraph::random::{random_hermitian, random_matrix, seeded};
use ncgraph::ComplexMatrix;
use num_complex::Complex64;
use proptest::prelude::*;

fn close(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> bool {
    (a - b).hs_norm() <= tol * (1.0 + a.hs_norm())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kron_is_associative_and_mixed_product(seed in any::<u64>(), n in 1usize..4, m in 1usize..4, k in 1usize..3) {
        let mut rng = seeded(seed);
        let (a, b, c) = (random_matrix(&mut rng, n, n), random_matrix(&mut rng, m, m), random_matrix(&mut rng, k, k));
        let left = kron(&kron(&a, &b).unwrap(), &c).unwrap();
        let right = kron(&a, &kron(&b, &c).unwrap()).unwrap();
        prop_assert!(close(&left, &right, 1e-12));
        let (a2, b2) = (random_matrix(&mut rng, n, n), random_matrix(&mut rng, m, m));
        let lhs = &kron(&a, &b).unwrap() * &kron(&a2, &b2).unwrap();
        let rhs = kron(&(&a * &a2), &(&b * &b2)).unwrap();
        prop_assert!(close(&lhs, &rhs, 1e-12));
    }

    #[test]
    fn partial_trace_of_product(seed in any::<u64>(), n in 1usize..4, m in 1usize..4) {
        let mut rng = seeded(seed);
        let (a, b) = (random_matrix(&mut rng, n, n), random_matrix(&mut rng, m, m));
        let ab = kron(&a, &b).unwrap();
        let traced_b = partial_trace(&ab, n, m, TraceOut::B).unwrap();
        prop_assert!(close(&traced_b, &a.scale(b.trace()), 1e-12));
        let traced_a = partial_trace(&ab, n, m, TraceOut::A).unwrap();
        prop_assert!(close(&traced_a, &b.scale(a.trace()), 1e-12));
    }

    #[test]
    fn operator_norm_is_multiplicative_under_kron(seed in any::<u64>(), n in 1usize..4, m in 1usize..4) {
        let mut rng = seeded(seed);
        let (a, b) = (random_matrix(&mut rng, n, n), random_matrix(&mut rng, m, m));
        let lhs = operator_norm(&kron(&a, &b).unwrap());
        let rhs = operator_norm(&a) * operator_norm(&b);
        prop_assert!((lhs - rhs).abs() <= 1e-9 * rhs.max(1.0));
    }

    #[test]
    fn real_embedding_keeps_spectrum(seed in any::<u64>(), n in 1usize..6) {
        let mut rng = seeded(seed);
        let h = random_hermitian(&mut rng, n);
        let e = real_embed(&h).unwrap();
        prop_assert!((e.min_eigenvalue() - eigh(&h).unwrap().min()).abs() <= 1e-10 * (1.0 + h.hs_norm()));
    }

    #[test]
    fn gram_schmidt_count_is_rank(seed in any::<u64>(), n in 1usize..4, rank in 1usize..5, extra in 0usize..4) {
        // `rank` random generators plus `extra` random combinations of them
        let mut rng = seeded(seed);
        let rank = rank.min(n * n);
        let gens: Vec<ComplexMatrix> = (0..rank).map(|_| random_matrix(&mut rng, n, n)).collect();
        let mut all = gens.clone();
        for _ in 0..extra {
            let mut c = ComplexMatrix::zeros(n, n);
            for g in &gens {
                c.axpy(Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)), g);
            }
            all.push(c);
        }
        let basis = gram_schmidt_hs(&all, 1e-9);
        prop_assert_eq!(basis.len(), rank);
        for (i, x) in basis.iter().enumerate() {
            for (j, y) in basis.iter().enumerate() {
                let ip = hs_inner(x, y).unwrap();
                let want = if i == j { 1.0 } else { 0.0 };
                prop_assert!((ip - Complex64::new(want, 0.0)).norm() <= 1e-10);
            }
        }
    }
}

use rand::Rng;

#[test]
fn eigh_reconstructs_hermitian_input() {
    let mut rng = seeded(11);
    for n in 1..8 {
        let h = random_hermitian(&mut rng, n);
        let e = eigh(&h).unwrap();
        let rebuilt = e.map(|x| x);
        assert!(close(&h, &rebuilt, 1e-11), "n = {n}");
    }
}
