use num_complex::Complex64;

use super::{c, ComplexMatrix, ZERO};
use crate::error::Result;

/// Spectral decomposition H = V Λ V† of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct EigDecomposition {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Columns are the eigenvectors, in the order of `eigenvalues`.
    pub eigenvectors: ComplexMatrix,
}

impl EigDecomposition {
    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        self.eigenvectors.column(k)
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    /// V f(Λ) V†
    pub fn map(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let v = &self.eigenvectors;
        let fl: Vec<f64> = self.eigenvalues.iter().map(|&x| f(x)).collect();
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n).map(|k| v[(i, k)] * fl[k] * v[(j, k)].conj()).sum()
        })
    }
}

/// Cyclic Jacobi eigensolver for Hermitian matrices.
///
/// Inputs whose relative asymmetry exceeds the Hermitian tolerance are
/// rejected; smaller asymmetry is absorbed by symmetrizing.
pub fn eigh(h: &ComplexMatrix) -> Result<EigDecomposition> {
    let mut a = h.checked_hermitian()?;
    let n = a.rows();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.hs_norm();
    if n <= 1 || scale == 0.0 {
        return Ok(finish(a, v));
    }
    let threshold = 1e-15 * scale;

    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= threshold {
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let g = apq.norm();
                if g <= f64::MIN_POSITIVE || g < 1e-300 {
                    continue;
                }
                let phase = apq / g;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = (aqq - app) / (2.0 * g);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let cs = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * cs;
                // U = diag(1, conj(phase)) · [[c, s], [-s, c]]
                let e = phase.conj();
                let u_pp = c(cs, 0.0);
                let u_pq = c(sn, 0.0);
                let u_qp = e * (-sn);
                let u_qq = e * cs;
                // A ← A U
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * u_pp + akq * u_qp;
                    a[(k, q)] = akp * u_pq + akq * u_qq;
                }
                // A ← U† A
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
                    a[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
                }
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)] = c(a[(p, p)].re, 0.0);
                a[(q, q)] = c(a[(q, q)].re, 0.0);
                // V ← V U
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * u_pp + vkq * u_qp;
                    v[(k, q)] = vkp * u_pq + vkq * u_qq;
                }
            }
        }
    }
    Ok(finish(a, v))
}

fn finish(a: ComplexMatrix, v: ComplexMatrix) -> EigDecomposition {
    let n = a.rows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, n, |i, k| v[(i, order[k])]);
    EigDecomposition { eigenvalues, eigenvectors }
}

/// Polar factor U (U†U = 𝟙) of a full-column-rank matrix, U = M (M†M)^{-1/2}.
pub(crate) fn polar_isometry(m: &ComplexMatrix) -> Option<ComplexMatrix> {
    let gram = m.adjoint().matmul(m).hermitian_part();
    let eig = eigh(&gram).ok()?;
    if eig.min() <= 1e-24 {
        return None;
    }
    Some(m.matmul(&eig.map(|x| 1.0 / x.sqrt())))
}
