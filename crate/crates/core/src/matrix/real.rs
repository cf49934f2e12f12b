//! Dense real matrices used by the LMI solver: Cholesky, triangular
//! inverses and a symmetric eigensolver (Householder tridiagonalization
//! followed by implicit QL).

use std::ops::{Index, IndexMut};

#[derive(Debug, Clone, PartialEq)]
pub struct RealMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

/// Eigen-decomposition of a real symmetric matrix, ascending.
#[derive(Debug, Clone)]
pub struct SymEig {
    pub values: Vec<f64>,
    /// Columns are eigenvectors.
    pub vectors: RealMatrix,
}

impl RealMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Self { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn diag(values: &[f64]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, v) in values.iter().enumerate() {
            m.data[i * n + i] = *v;
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    /// self += s * other
    pub fn axpy(&mut self, s: f64, other: &Self) {
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += s * b;
        }
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// tr(selfᵀ other)
    pub fn dot(&self, other: &Self) -> f64 {
        dot(&self.data, &other.data)
    }

    /// (A + Aᵀ)/2
    pub fn symmetrized(&self) -> Self {
        let n = self.rows;
        Self::from_fn(n, n, |i, j| 0.5 * (self[(i, j)] + self[(j, i)]))
    }

    pub fn symmetric_defect(&self) -> f64 {
        let n = self.rows;
        let mut acc: f64 = 0.0;
        for i in 0..n {
            for j in 0..i {
                acc = acc.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        acc
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let (n, k, m) = (self.rows, self.cols, other.cols);
        let mut out = vec![0.0; n * m];
        for i in 0..n {
            let orow = &mut out[i * m..(i + 1) * m];
            for p in 0..k {
                let a = self.data[i * k + p];
                if a == 0.0 {
                    continue;
                }
                let brow = &other.data[p * m..(p + 1) * m];
                for (o, b) in orow.iter_mut().zip(brow) {
                    *o += a * b;
                }
            }
        }
        Self { rows: n, cols: m, data: out }
    }

    /// self · otherᵀ
    pub fn matmul_t(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let (n, m) = (self.rows, other.rows);
        let mut out = vec![0.0; n * m];
        for i in 0..n {
            let a = self.row(i);
            for j in 0..m {
                out[i * m + j] = dot(a, other.row(j));
            }
        }
        Self { rows: n, cols: m, data: out }
    }

    /// Lower Cholesky factor, or `None` when the matrix is not numerically
    /// positive definite.
    pub fn cholesky(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.data.clone();
        cholesky_in_place(&mut a, n).ok()?;
        for i in 0..n {
            for j in i + 1..n {
                a[i * n + j] = 0.0;
            }
        }
        Some(Self { rows: n, cols: n, data: a })
    }

    /// Inverse of a lower-triangular matrix.
    pub fn lower_inverse(&self) -> Self {
        let n = self.rows;
        let mut inv = Self::zeros(n, n);
        for j in 0..n {
            inv[(j, j)] = 1.0 / self[(j, j)];
            for i in j + 1..n {
                let mut s = 0.0;
                for k in j..i {
                    s += self[(i, k)] * inv[(k, j)];
                }
                inv[(i, j)] = -s / self[(i, i)];
            }
        }
        inv
    }

    pub fn sym_eigenvalues(&self) -> Vec<f64> {
        sym_eig_impl(self, false).values
    }

    pub fn sym_eig(&self) -> SymEig {
        sym_eig_impl(self, true)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        if self.rows == 0 {
            return f64::INFINITY;
        }
        self.sym_eigenvalues()[0]
    }
}

impl Index<(usize, usize)> for RealMatrix {
    type Output = f64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RealMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len().min(b.len());
    let (a, b) = (&a[..n], &b[..n]);
    let mut acc = [0.0f64; 4];
    let ca = a.chunks_exact(4);
    let cb = b.chunks_exact(4);
    let (ra, rb) = (ca.remainder(), cb.remainder());
    for (x, y) in ca.zip(cb) {
        acc[0] += x[0] * y[0];
        acc[1] += x[1] * y[1];
        acc[2] += x[2] * y[2];
        acc[3] += x[3] * y[3];
    }
    let mut s = (acc[0] + acc[1]) + (acc[2] + acc[3]);
    for (x, y) in ra.iter().zip(rb) {
        s += x * y;
    }
    s
}

/// Right-looking blocked Cholesky on the lower triangle of a row-major
/// `n`×`n` buffer. On failure returns the offending pivot index.
pub(crate) fn cholesky_in_place(a: &mut [f64], n: usize) -> Result<(), usize> {
    const NB: usize = 64;
    let mut panel = vec![0.0; n * NB];
    let mut k0 = 0;
    while k0 < n {
        let kb = NB.min(n - k0);
        let k1 = k0 + kb;
        for j in k0..k1 {
            let rj = &mut a[j * n..(j + 1) * n];
            let s = rj[j] - dot(&rj[k0..j], &rj[k0..j]);
            if !(s > 0.0) || !s.is_finite() {
                return Err(j);
            }
            rj[j] = s.sqrt();
            let djj = rj[j];
            let rj_copy: Vec<f64> = rj[k0..j].to_vec();
            for i in j + 1..k1 {
                let ri = &mut a[i * n..(i + 1) * n];
                let t = ri[j] - dot(&ri[k0..j], &rj_copy);
                ri[j] = t / djj;
            }
        }
        let diag: Vec<f64> = (k0..k1).flat_map(|j| a[j * n + k0..j * n + k1].to_vec()).collect();
        for i in k1..n {
            let ri = &mut a[i * n..(i + 1) * n];
            for jj in 0..kb {
                let lrow = &diag[jj * kb..jj * kb + jj];
                let t = ri[k0 + jj] - dot(&ri[k0..k0 + jj], lrow);
                ri[k0 + jj] = t / diag[jj * kb + jj];
            }
            panel[(i - k1) * kb..(i - k1 + 1) * kb].copy_from_slice(&ri[k0..k1]);
        }
        for i in k1..n {
            let pi = &panel[(i - k1) * kb..(i - k1 + 1) * kb];
            let ri = &mut a[i * n..(i + 1) * n];
            for j in k1..=i {
                let pj = &panel[(j - k1) * kb..(j - k1 + 1) * kb];
                ri[j] -= dot(pi, pj);
            }
        }
        k0 = k1;
    }
    Ok(())
}

/// Solves L Lᵀ x = b in place given the factor from `cholesky_in_place`
/// (lower triangle of `l`).
pub(crate) fn cholesky_solve(l: &[f64], n: usize, b: &mut [f64]) {
    for i in 0..n {
        let s = b[i] - dot(&l[i * n..i * n + i], &b[..i]);
        b[i] = s / l[i * n + i];
    }
    for i in (0..n).rev() {
        let mut s = b[i];
        for k in i + 1..n {
            s -= l[k * n + i] * b[k];
        }
        b[i] = s / l[i * n + i];
    }
}

fn sym_eig_impl(m: &RealMatrix, want_vectors: bool) -> SymEig {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    if n == 0 {
        return SymEig { values: vec![], vectors: RealMatrix::zeros(0, 0) };
    }
    // JAMA-style: v holds the matrix, overwritten by the eigenvectors.
    let mut v: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| 0.5 * (m[(i, j)] + m[(j, i)])).collect()).collect();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tred2(&mut v, &mut d, &mut e);
    tql2(&mut v, &mut d, &mut e, want_vectors);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].total_cmp(&d[j]));
    let values = order.iter().map(|&i| d[i]).collect();
    let vectors = if want_vectors {
        RealMatrix::from_fn(n, n, |i, k| v[i][order[k]])
    } else {
        RealMatrix::zeros(0, 0)
    };
    SymEig { values, vectors }
}

fn tred2(v: &mut [Vec<f64>], d: &mut [f64], e: &mut [f64]) {
    let n = d.len();
    d.copy_from_slice(&v[n - 1][..n]);
    for i in (1..n).rev() {
        let mut scale = 0.0;
        let mut h = 0.0;
        for dk in d.iter().take(i) {
            scale += dk.abs();
        }
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[i - 1][j];
                v[i][j] = 0.0;
                v[j][i] = 0.0;
            }
        } else {
            for dk in d.iter_mut().take(i) {
                *dk /= scale;
                h += *dk * *dk;
            }
            let f = d[i - 1];
            let mut g = h.sqrt();
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for ej in e.iter_mut().take(i) {
                *ej = 0.0;
            }
            for j in 0..i {
                let f = d[j];
                v[j][i] = f;
                let mut g = e[j] + v[j][j] * f;
                for k in j + 1..i {
                    g += v[k][j] * d[k];
                    e[k] += v[k][j] * f;
                }
                e[j] = g;
            }
            let mut f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                let f = d[j];
                let g = e[j];
                for k in j..i {
                    v[k][j] -= f * e[k] + g * d[k];
                }
                d[j] = v[i - 1][j];
                v[i][j] = 0.0;
            }
        }
        d[i] = h;
    }
    for i in 0..n - 1 {
        v[n - 1][i] = v[i][i];
        v[i][i] = 1.0;
        let h = d[i + 1];
        if h != 0.0 {
            for k in 0..=i {
                d[k] = v[k][i + 1] / h;
            }
            for j in 0..=i {
                let mut g = 0.0;
                for k in 0..=i {
                    g += v[k][i + 1] * v[k][j];
                }
                for k in 0..=i {
                    v[k][j] -= g * d[k];
                }
            }
        }
        for k in 0..=i {
            v[k][i + 1] = 0.0;
        }
    }
    for j in 0..n {
        d[j] = v[n - 1][j];
        v[n - 1][j] = 0.0;
    }
    v[n - 1][n - 1] = 1.0;
    e[0] = 0.0;
}

fn tql2(v: &mut [Vec<f64>], d: &mut [f64], e: &mut [f64], want_vectors: bool) {
    let n = d.len();
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    let eps = f64::EPSILON;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().take(n).skip(l + 2) {
                    *di -= h;
                }
                f += h;
                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    if want_vectors {
                        for row in v.iter_mut() {
                            let h = row[i + 1];
                            row[i + 1] = s * row[i] + c * h;
                            row[i] = c * row[i] - s * h;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 || iter > 300 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn random_spd(n: usize, seed: u64) -> RealMatrix {
        let mut rng = crate::random::seeded(seed);
        let g = RealMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
        g.matmul_t(&g).add(&RealMatrix::identity(n).scale(0.1))
    }

    #[test]
    fn cholesky_reconstructs() {
        for n in [1, 3, 17, 64, 65, 150] {
            let a = random_spd(n, n as u64);
            let l = a.cholesky().unwrap();
            let r = l.matmul_t(&l);
            assert!(r.sub(&a).frobenius() <= 1e-10 * a.frobenius(), "n={n}");
            let mut b: Vec<f64> = (0..n).map(|i| i as f64).collect();
            let b0 = b.clone();
            let mut full = a.data().to_vec();
            cholesky_in_place(&mut full, n).unwrap();
            cholesky_solve(&full, n, &mut b);
            for i in 0..n {
                let s: f64 = (0..n).map(|j| a[(i, j)] * b[j]).sum();
                assert!((s - b0[i]).abs() <= 1e-7 * (1.0 + b0[i].abs()));
            }
        }
    }

    #[test]
    fn cholesky_rejects_indefinite() {
        let a = RealMatrix::diag(&[1.0, -1.0]);
        assert!(a.cholesky().is_none());
    }

    #[test]
    fn eig_reconstructs() {
        for n in [1, 2, 5, 30, 80] {
            let a = random_spd(n, 100 + n as u64).sub(&RealMatrix::identity(n).scale(3.0));
            let e = a.sym_eig();
            let lam = RealMatrix::diag(&e.values);
            let r = e.vectors.matmul(&lam).matmul_t(&e.vectors);
            assert!(r.sub(&a).frobenius() <= 1e-10 * (1.0 + a.frobenius()), "n={n}");
            let vtv = e.vectors.transpose().matmul(&e.vectors);
            assert!(vtv.sub(&RealMatrix::identity(n)).frobenius() <= 1e-10 * n as f64);
            let vals = a.sym_eigenvalues();
            for (x, y) in vals.iter().zip(&e.values) {
                assert!((x - y).abs() <= 1e-10 * (1.0 + y.abs()));
            }
        }
    }

    #[test]
    fn lower_inverse_is_inverse() {
        let a = random_spd(20, 7);
        let l = a.cholesky().unwrap();
        let li = l.lower_inverse();
        let p = li.matmul(&l);
        assert!(p.sub(&RealMatrix::identity(20)).frobenius() < 1e-10);
    }
}
