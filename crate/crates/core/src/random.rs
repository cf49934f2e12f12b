//! Seeded random instances. Every generator takes an explicit RNG built
//! from a 64-bit seed so that results are reproducible.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::matrix::ComplexMatrix;

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut impl Rng) -> f64 {
    rng.sample(StandardNormal)
}

pub fn complex_gaussian(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(gaussian(rng), gaussian(rng))
}

/// Entries i.i.d. standard complex Gaussian.
pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

pub fn random_hermitian(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    random_matrix(rng, n, n).hermitian_part()
}

pub fn random_unit_vector(rng: &mut impl Rng, n: usize) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..n).map(|_| complex_gaussian(rng)).collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-12 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

/// Haar-ish random isometry C^cols → C^rows via Gram-Schmidt on a Gaussian
/// matrix.
pub fn random_isometry(rng: &mut impl Rng, rows: usize, cols: usize) -> ComplexMatrix {
    assert!(cols <= rows);
    loop {
        let g = random_matrix(rng, rows, cols);
        let mut cols_out: Vec<Vec<Complex64>> = Vec::with_capacity(cols);
        let mut ok = true;
        for j in 0..cols {
            let mut v = g.column(j);
            for _ in 0..2 {
                for u in &cols_out {
                    let p: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                    for (x, y) in v.iter_mut().zip(u) {
                        *x -= p * y;
                    }
                }
            }
            let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if n < 1e-8 {
                ok = false;
                break;
            }
            cols_out.push(v.into_iter().map(|z| z / n).collect());
        }
        if ok {
            return ComplexMatrix::from_fn(rows, cols, |i, j| cols_out[j][i]);
        }
    }
}

pub fn random_unitary(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    random_isometry(rng, n, n)
}

/// Random full-rank density matrix G G† / tr.
pub fn random_state(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    let g = random_matrix(rng, n, n);
    let rho = g.matmul(&g.adjoint()).hermitian_part();
    let t = rho.trace().re;
    rho.scale_real(1.0 / t)
}
