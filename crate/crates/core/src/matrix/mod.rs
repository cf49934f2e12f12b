//! Dense complex matrices and the handful of linear-algebra primitives the
//! rest of the crate is built on.
//!
//! Everything here is a pure function of immutable inputs. Matrices are
//! stored row-major; indices are `(row, col)`.

mod eig;
mod real;

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use eig::{eigh, EigDecomposition};
pub use real::{RealMatrix, SymEig};
pub(crate) use eig::polar_isometry;
pub(crate) use real::{cholesky_in_place, cholesky_solve};

/// Shared "numerically zero" threshold, relative to the scale of the data.
pub const NUMERIC_TOL: f64 = 1e-9;

/// Largest ambient dimension produced by `kron` unless overridden.
pub const MAX_AMBIENT_DIM: usize = 4096;

/// Relative asymmetry below which a matrix is silently symmetrized.
pub const HERMITIAN_TOL: f64 = 1e-10;

pub(crate) const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
pub(crate) const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

#[inline]
pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Dense complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = ONE;
        }
        m
    }

    /// Builds a matrix from row-major data. Fails on length mismatch or
    /// non-finite entries.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidInput("non-finite matrix entry".into()));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_real(rows: usize, cols: usize, values: &[f64]) -> Self {
        assert_eq!(values.len(), rows * cols);
        Self { rows, cols, data: values.iter().map(|&x| c(x, 0.0)).collect() }
    }

    pub fn diag(values: &[f64]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, &v) in values.iter().enumerate() {
            m.data[i * n + i] = c(v, 0.0);
        }
        m
    }

    /// The matrix unit |i⟩⟨j| in an `rows`×`cols` shape.
    pub fn unit(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        m.data[i * cols + j] = ONE;
        m
    }

    /// |u⟩⟨v|
    pub fn outer(u: &[Complex64], v: &[Complex64]) -> Self {
        Self::from_fn(u.len(), v.len(), |i, j| u[i] * v[j].conj())
    }

    pub fn pauli_x() -> Self {
        Self::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0])
    }

    pub fn pauli_y() -> Self {
        Self { rows: 2, cols: 2, data: vec![ZERO, c(0.0, -1.0), c(0.0, 1.0), ZERO] }
    }

    pub fn pauli_z() -> Self {
        Self::diag(&[1.0, -1.0])
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z.conj()).collect() }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * s).collect() }
    }

    /// self += s * other
    pub fn axpy(&mut self, s: Complex64, other: &Self) {
        debug_assert_eq!(self.shape(), other.shape());
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += s * b;
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Hilbert-Schmidt (Frobenius) norm.
    pub fn hs_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// ‖h − h†‖_HS / (1 + ‖h‖_HS)
    pub fn hermitian_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += (self[(i, j)] - self[(j, i)].conj()).norm_sqr();
            }
        }
        acc.sqrt() / (1.0 + self.hs_norm())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_defect() <= tol
    }

    /// (h + h†)/2
    pub fn hermitian_part(&self) -> Self {
        let n = self.rows;
        Self::from_fn(n, n, |i, j| (self[(i, j)] + self[(j, i)].conj()) * 0.5)
    }

    /// Symmetrizes when the asymmetry is roundoff-sized, errors otherwise.
    pub fn checked_hermitian(&self) -> Result<Self> {
        let asymmetry = self.hermitian_defect();
        if asymmetry > HERMITIAN_TOL {
            return Err(Error::NotHermitian { asymmetry });
        }
        Ok(self.hermitian_part())
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let (n, k, m) = (self.rows, self.cols, other.cols);
        let mut out = vec![ZERO; n * m];
        for i in 0..n {
            let orow = &mut out[i * m..(i + 1) * m];
            for p in 0..k {
                let a = self.data[i * k + p];
                if a == ZERO {
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

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// ⟨u| self |v⟩
    pub fn sandwich(&self, u: &[Complex64], v: &[Complex64]) -> Complex64 {
        let mv = self.apply(v);
        u.iter().zip(&mv).map(|(a, b)| a.conj() * b).sum()
    }

    /// Embeds this matrix as the block starting at `(r0, c0)` of a
    /// `rows`×`cols` zero matrix.
    pub fn embed_block(&self, rows: usize, cols: usize, r0: usize, c0: usize) -> Self {
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(r0 + i, c0 + j)] = self[(i, j)];
            }
        }
        out
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.shape() == other.shape() && (self - other).hs_norm() <= tol
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.shape(), rhs.shape());
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        ComplexMatrix { rows: self.rows, cols: self.cols, data }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.shape(), rhs.shape());
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        ComplexMatrix { rows: self.rows, cols: self.cols, data }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

/// Kronecker product, with the default dimension cap.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    kron_capped(a, b, MAX_AMBIENT_DIM)
}

pub fn kron_capped(a: &ComplexMatrix, b: &ComplexMatrix, max_dim: usize) -> Result<ComplexMatrix> {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    if rows.max(cols) > max_dim {
        return Err(Error::DimensionOverflow { dim: rows.max(cols), max: max_dim });
    }
    let mut out = ComplexMatrix::zeros(rows, cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let x = a[(i, j)];
            if x == ZERO {
                continue;
            }
            for k in 0..b.rows {
                let base = (i * b.rows + k) * cols + j * b.cols;
                let brow = b.row(k);
                for (l, y) in brow.iter().enumerate() {
                    out.data[base + l] = x * y;
                }
            }
        }
    }
    Ok(out)
}

/// Which tensor factor `partial_trace` removes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceOut {
    A,
    B,
}

/// Partial trace of an operator on A⊗B.
pub fn partial_trace(m: &ComplexMatrix, dim_a: usize, dim_b: usize, side: TraceOut) -> Result<ComplexMatrix> {
    let n = dim_a * dim_b;
    if m.rows != n || m.cols != n {
        return Err(Error::DimensionMismatch(format!(
            "partial trace of a {}x{} matrix over {dim_a}x{dim_b}",
            m.rows, m.cols
        )));
    }
    Ok(match side {
        TraceOut::A => ComplexMatrix::from_fn(dim_b, dim_b, |k, l| {
            (0..dim_a).map(|i| m[(i * dim_b + k, i * dim_b + l)]).sum()
        }),
        TraceOut::B => ComplexMatrix::from_fn(dim_a, dim_a, |i, j| {
            (0..dim_b).map(|k| m[(i * dim_b + k, j * dim_b + k)]).sum()
        }),
    })
}

/// Hilbert-Schmidt inner product tr(x† y).
pub fn hs_inner(x: &ComplexMatrix, y: &ComplexMatrix) -> Result<Complex64> {
    if x.shape() != y.shape() {
        return Err(Error::ShapeMismatch(format!("{:?} vs {:?}", x.shape(), y.shape())));
    }
    Ok(hs_dot(x, y))
}

#[inline]
pub(crate) fn hs_dot(x: &ComplexMatrix, y: &ComplexMatrix) -> Complex64 {
    let mut re = 0.0;
    let mut im = 0.0;
    for (a, b) in x.data.iter().zip(&y.data) {
        re += a.re * b.re + a.im * b.im;
        im += a.re * b.im - a.im * b.re;
    }
    c(re, im)
}

/// Largest singular value.
pub fn operator_norm(m: &ComplexMatrix) -> f64 {
    if m.data.is_empty() {
        return 0.0;
    }
    // ‖m‖² = λ_max(m† m); use the smaller Gram matrix
    let gram = if m.rows >= m.cols { m.adjoint().matmul(m) } else { m.matmul(&m.adjoint()) };
    let eig = eigh(&gram.hermitian_part()).expect("Gram matrix is Hermitian");
    eig.eigenvalues.last().copied().unwrap_or(0.0).max(0.0).sqrt()
}

/// The unnormalized maximally entangled vector Σᵢ|i⟩|i⟩ and its projector.
pub fn max_entangled(d: usize) -> (Vec<Complex64>, ComplexMatrix) {
    let mut v = vec![ZERO; d * d];
    for i in 0..d {
        v[i * d + i] = ONE;
    }
    let proj = ComplexMatrix::outer(&v, &v);
    (v, proj)
}

/// Real representation [[Re h, −Im h], [Im h, Re h]] of a Hermitian matrix.
pub fn real_embed(h: &ComplexMatrix) -> Result<RealMatrix> {
    let h = h.checked_hermitian()?;
    let n = h.rows;
    let mut out = RealMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let z = h[(i, j)];
            out[(i, j)] = z.re;
            out[(n + i, n + j)] = z.re;
            out[(i, n + j)] = -z.im;
            out[(n + i, j)] = z.im;
        }
    }
    Ok(out)
}

/// Modified Gram-Schmidt under the HS inner product with one
/// reorthogonalization pass. Inputs whose residual is at most
/// `tol * (1 + ‖input‖)` are dropped.
pub fn gram_schmidt_hs(mats: &[ComplexMatrix], tol: f64) -> Vec<ComplexMatrix> {
    let mut basis: Vec<ComplexMatrix> = Vec::new();
    for m in mats {
        if let Some(v) = orthonormalize_against(&basis, m, tol) {
            basis.push(v);
        }
    }
    basis
}

/// Residual of `m` against an orthonormal `basis`, normalized, or `None`
/// when it is numerically in the span.
pub(crate) fn orthonormalize_against(basis: &[ComplexMatrix], m: &ComplexMatrix, tol: f64) -> Option<ComplexMatrix> {
    let norm_in = m.hs_norm();
    let mut v = m.clone();
    for _pass in 0..2 {
        for b in basis {
            let coeff = hs_dot(b, &v);
            if coeff != ZERO {
                v.axpy(-coeff, b);
            }
        }
    }
    let r = v.hs_norm();
    if r <= tol * (1.0 + norm_in) {
        None
    } else {
        Some(v.scale_real(1.0 / r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_hermitian, random_matrix, seeded};

    #[test]
    fn kron_identities() {
        let k = kron(&ComplexMatrix::identity(2), &ComplexMatrix::identity(3)).unwrap();
        assert_eq!(k, ComplexMatrix::identity(6));

        let a = ComplexMatrix::unit(2, 2, 0, 1);
        let b = ComplexMatrix::unit(2, 2, 1, 0);
        let k = kron(&a, &b).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expect = if (i, j) == (1, 2) { 1.0 } else { 0.0 };
                assert_eq!(k[(i, j)], c(expect, 0.0));
            }
        }
    }

    #[test]
    fn kron_mixed_product() {
        let mut rng = seeded(11);
        for _ in 0..10 {
            let [a, b, cm, d] = std::array::from_fn(|_| random_matrix(&mut rng, 2, 2));
            let lhs = kron(&a, &b).unwrap().matmul(&kron(&cm, &d).unwrap());
            let rhs = kron(&a.matmul(&cm), &b.matmul(&d)).unwrap();
            assert!((&lhs - &rhs).hs_norm() <= 1e-12);
        }
    }

    #[test]
    fn kron_associative() {
        let mut rng = seeded(3);
        let [a, b, d] = std::array::from_fn(|_| random_matrix(&mut rng, 2, 3));
        let l = kron(&kron(&a, &b).unwrap(), &d).unwrap();
        let r = kron(&a, &kron(&b, &d).unwrap()).unwrap();
        assert!((&l - &r).hs_norm() <= 1e-12);
    }

    #[test]
    fn kron_overflow() {
        let a = ComplexMatrix::identity(70);
        assert!(matches!(kron(&a, &a), Err(Error::DimensionOverflow { .. })));
    }

    #[test]
    fn partial_trace_examples() {
        let (_, phi) = max_entangled(3);
        let t = partial_trace(&phi, 3, 3, TraceOut::A).unwrap();
        assert!(t.approx_eq(&ComplexMatrix::identity(3), 1e-14));

        let mut rng = seeded(5);
        let rho = random_hermitian(&mut rng, 2);
        let sigma = random_hermitian(&mut rng, 2);
        let t = partial_trace(&kron(&rho, &sigma).unwrap(), 2, 2, TraceOut::B).unwrap();
        assert!(t.approx_eq(&rho.scale(sigma.trace()), 1e-12));
    }

    #[test]
    fn partial_trace_matches_double_sum() {
        let mut rng = seeded(8);
        let m = random_hermitian(&mut rng, 6);
        let (da, db) = (2, 3);
        let ta = partial_trace(&m, da, db, TraceOut::A).unwrap();
        let tb = partial_trace(&m, da, db, TraceOut::B).unwrap();
        for k in 0..db {
            for l in 0..db {
                let mut s = ZERO;
                for i in 0..da {
                    for j in 0..da {
                        if i == j {
                            s += m[(i * db + k, j * db + l)];
                        }
                    }
                }
                assert!((s - ta[(k, l)]).norm() <= 1e-12);
            }
        }
        for i in 0..da {
            for j in 0..da {
                let mut s = ZERO;
                for k in 0..db {
                    s += m[(i * db + k, j * db + k)];
                }
                assert!((s - tb[(i, j)]).norm() <= 1e-12);
            }
        }
        assert!((ta.trace() - m.trace()).norm() <= 1e-12);
        assert!(partial_trace(&m, 4, 2, TraceOut::A).is_err());
    }

    #[test]
    fn hs_inner_examples() {
        let id = ComplexMatrix::identity(4);
        assert_eq!(hs_inner(&id, &id).unwrap(), c(4.0, 0.0));
        let a = ComplexMatrix::unit(2, 2, 0, 1);
        let b = ComplexMatrix::unit(2, 2, 1, 0);
        assert_eq!(hs_inner(&a, &b).unwrap(), ZERO);
        assert!(hs_inner(&a, &id).is_err());

        let mut rng = seeded(2);
        let x = random_matrix(&mut rng, 3, 4);
        let y = random_matrix(&mut rng, 3, 4);
        let oracle: Complex64 = x.data().iter().zip(y.data()).map(|(p, q)| p.conj() * q).sum();
        let got = hs_inner(&x, &y).unwrap();
        assert!((got - oracle).norm() <= 1e-13);
        assert!((got - hs_inner(&y, &x).unwrap().conj()).norm() <= 1e-13);
    }

    #[test]
    fn operator_norm_examples() {
        assert!((operator_norm(&ComplexMatrix::diag(&[-5.0, 2.0])) - 5.0).abs() < 1e-12);
        let (_, phi) = max_entangled(3);
        assert!((operator_norm(&phi) - 3.0).abs() < 1e-12);

        let mut rng = seeded(9);
        let m = random_matrix(&mut rng, 4, 4);
        let gram = m.adjoint().matmul(&m).hermitian_part();
        let lmax = *eigh(&gram).unwrap().eigenvalues.last().unwrap();
        assert!((operator_norm(&m) - lmax.sqrt()).abs() <= 1e-10);
    }

    #[test]
    fn operator_norm_multiplicative_under_kron() {
        let mut rng = seeded(21);
        for _ in 0..5 {
            let a = random_matrix(&mut rng, 2, 3);
            let b = random_matrix(&mut rng, 3, 2);
            let lhs = operator_norm(&kron(&a, &b).unwrap());
            let rhs = operator_norm(&a) * operator_norm(&b);
            assert!((lhs - rhs).abs() <= 1e-9 * rhs);
        }
    }

    #[test]
    fn max_entangled_examples() {
        let (v, m) = max_entangled(1);
        assert_eq!(v, vec![ONE]);
        assert_eq!(m, ComplexMatrix::identity(1));
        let (v, m) = max_entangled(2);
        assert_eq!(v, vec![ONE, ZERO, ZERO, ONE]);
        assert_eq!(m.trace(), c(2.0, 0.0));
    }

    #[test]
    fn real_embed_examples() {
        let e = real_embed(&ComplexMatrix::identity(2)).unwrap();
        assert_eq!(e, RealMatrix::identity(4));

        let e = real_embed(&ComplexMatrix::pauli_y()).unwrap();
        let vals = e.sym_eigenvalues();
        for (got, want) in vals.iter().zip([-1.0, -1.0, 1.0, 1.0]) {
            assert!((got - want).abs() < 1e-12);
        }

        let mut rng = seeded(4);
        let h = random_hermitian(&mut rng, 5);
        let lo = eigh(&h).unwrap().eigenvalues[0];
        let lo_e = real_embed(&h).unwrap().sym_eigenvalues()[0];
        assert!((lo - lo_e).abs() <= 1e-10);

        assert!(real_embed(&ComplexMatrix::unit(2, 2, 0, 1)).is_err());
    }

    #[test]
    fn gram_schmidt_examples() {
        let id = ComplexMatrix::identity(2);
        let out = gram_schmidt_hs(&[id.clone(), id.scale_real(2.0)], NUMERIC_TOL);
        assert_eq!(out.len(), 1);
        assert!(out[0].approx_eq(&id.scale_real(1.0 / 2f64.sqrt()), 1e-14));

        let e00 = ComplexMatrix::unit(2, 2, 0, 0);
        let e11 = ComplexMatrix::unit(2, 2, 1, 1);
        let out = gram_schmidt_hs(&[e00.clone(), e11.clone()], NUMERIC_TOL);
        assert_eq!(out, vec![e00, e11]);

        let mut rng = seeded(17);
        let mats: Vec<_> = (0..10).map(|_| random_matrix(&mut rng, 3, 3)).collect();
        let out = gram_schmidt_hs(&mats, NUMERIC_TOL);
        assert_eq!(out.len(), 9);
        for (i, a) in out.iter().enumerate() {
            for (j, b) in out.iter().enumerate() {
                let g = hs_dot(a, b);
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((g - c(want, 0.0)).norm() <= 1e-10);
            }
        }
    }

    #[test]
    fn from_vec_validates() {
        assert!(ComplexMatrix::from_vec(2, 2, vec![ZERO; 3]).is_err());
        assert!(ComplexMatrix::from_vec(1, 1, vec![c(f64::NAN, 0.0)]).is_err());
    }
}
