//! Operator spaces S < L(A) and the algebra of non-commutative graphs.
//!
//! A space is stored as an HS-orthonormal basis. Square spaces carry two
//! cached flags, closure under adjoints and membership of the identity;
//! a square space with both is a non-commutative graph.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{
    c, gram_schmidt_hs, hs_dot, kron, orthonormalize_against, ComplexMatrix, MAX_AMBIENT_DIM, NUMERIC_TOL, ZERO,
};
use crate::random::{random_hermitian, seeded};

#[derive(Debug, Clone)]
pub struct OperatorSpace {
    rows: usize,
    cols: usize,
    basis: Vec<ComplexMatrix>,
    adjoint_closed: bool,
    contains_identity: bool,
}

impl OperatorSpace {
    /// Span of square matrices of a common dimension.
    pub fn span(mats: &[ComplexMatrix], tol: f64) -> Result<Self> {
        let d = match mats.first() {
            Some(m) => m.rows(),
            None => return Err(Error::InvalidInput("span of an empty list needs a dimension".into())),
        };
        if mats.iter().any(|m| m.shape() != (d, d)) {
            return Err(Error::DimensionMismatch("span of matrices with different shapes".into()));
        }
        Ok(Self::from_orthonormal(d, d, gram_schmidt_hs(mats, tol)))
    }

    /// Span of matrices of a common, possibly rectangular, shape.
    pub fn span_rect(rows: usize, cols: usize, mats: &[ComplexMatrix], tol: f64) -> Result<Self> {
        if mats.iter().any(|m| m.shape() != (rows, cols)) {
            return Err(Error::DimensionMismatch(format!("expected {rows}x{cols} matrices")));
        }
        Ok(Self::from_orthonormal(rows, cols, gram_schmidt_hs(mats, tol)))
    }

    /// The zero space in L(C^d).
    pub fn zero(d: usize) -> Self {
        Self::from_orthonormal(d, d, Vec::new())
    }

    /// span{𝟙_d}: the empty graph, i.e. the identity channel.
    pub fn scalars(d: usize) -> Self {
        let f = ComplexMatrix::identity(d).scale_real(1.0 / (d as f64).sqrt());
        Self::from_orthonormal(d, d, vec![f])
    }

    /// All of L(C^d): the complete graph.
    pub fn full(d: usize) -> Self {
        let basis = (0..d)
            .flat_map(|i| (0..d).map(move |j| (i, j)))
            .map(|(i, j)| ComplexMatrix::unit(d, d, i, j))
            .collect();
        Self::from_orthonormal(d, d, basis)
    }

    /// Trusted constructor: `basis` must already be HS-orthonormal.
    pub(crate) fn from_orthonormal(rows: usize, cols: usize, basis: Vec<ComplexMatrix>) -> Self {
        let mut s = Self { rows, cols, basis, adjoint_closed: false, contains_identity: false };
        if rows == cols {
            s.adjoint_closed = s.basis.iter().all(|f| s.contains_within(&f.adjoint(), NUMERIC_TOL));
            s.contains_identity = s.contains_within(&ComplexMatrix::identity(rows), NUMERIC_TOL);
        }
        s
    }

    /// Re-orthonormalizes an arbitrary basis (as read from a file).
    pub fn from_basis(d: usize, basis: &[ComplexMatrix]) -> Result<Self> {
        if basis.is_empty() {
            return Ok(Self::zero(d));
        }
        let s = Self::span(basis, NUMERIC_TOL)?;
        if s.rows != d {
            return Err(Error::DimensionMismatch(format!("declared dimension {d}, basis is {}", s.rows)));
        }
        Ok(s)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// d for a space in L(C^d).
    pub fn ambient_dim(&self) -> usize {
        self.rows
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn basis(&self) -> &[ComplexMatrix] {
        &self.basis
    }

    pub fn adjoint_closed(&self) -> bool {
        self.adjoint_closed
    }

    pub fn contains_identity(&self) -> bool {
        self.contains_identity
    }

    /// 𝟙 ∈ S and S = S†.
    pub fn is_nc_graph(&self) -> bool {
        self.rows == self.cols && self.adjoint_closed && self.contains_identity
    }

    pub(crate) fn require_nc_graph(&self) -> Result<()> {
        if self.is_nc_graph() {
            Ok(())
        } else {
            Err(Error::NotNcGraph)
        }
    }

    /// Orthogonal projection Π_S x = Σ_F F·⟨F, x⟩.
    pub fn project(&self, x: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.rows, self.cols);
        for f in &self.basis {
            let coeff = hs_dot(f, x);
            if coeff != ZERO {
                out.axpy(coeff, f);
            }
        }
        out
    }

    /// Coefficients ⟨F, x⟩ of x on the basis.
    pub fn coefficients(&self, x: &ComplexMatrix) -> Vec<Complex64> {
        self.basis.iter().map(|f| hs_dot(f, x)).collect()
    }

    /// ‖x − Π_S x‖_HS
    pub fn distance(&self, x: &ComplexMatrix) -> f64 {
        (x - &self.project(x)).hs_norm()
    }

    pub fn contains(&self, x: &ComplexMatrix) -> Result<bool> {
        if x.shape() != self.shape() {
            return Err(Error::DimensionMismatch(format!(
                "{:?} matrix against a space of {:?} matrices",
                x.shape(),
                self.shape()
            )));
        }
        Ok(self.contains_within(x, NUMERIC_TOL))
    }

    pub(crate) fn contains_within(&self, x: &ComplexMatrix, tol: f64) -> bool {
        self.distance(x) <= tol * (1.0 + x.hs_norm())
    }

    /// HS-orthogonal complement inside L(C^rows → C^cols).
    pub fn orth_complement(&self) -> Self {
        let mut all = self.basis.clone();
        let start = all.len();
        for i in 0..self.rows {
            for j in 0..self.cols {
                if all.len() == self.rows * self.cols {
                    break;
                }
                let e = ComplexMatrix::unit(self.rows, self.cols, i, j);
                if let Some(v) = orthonormalize_against(&all, &e, NUMERIC_TOL) {
                    all.push(v);
                }
            }
        }
        let comp = all.split_off(start);
        Self::from_orthonormal(self.rows, self.cols, comp)
    }

    /// A real basis of the Hermitian part {X ∈ S : X = X†}, HS-orthonormal.
    /// Its size equals the complex dimension of S.
    pub fn hermitian_basis(&self) -> Result<Vec<ComplexMatrix>> {
        if self.rows != self.cols || !self.adjoint_closed {
            return Err(Error::NotAdjointClosed);
        }
        let half_i = c(0.0, -0.5);
        let mut out: Vec<ComplexMatrix> = Vec::with_capacity(self.dim());
        for f in &self.basis {
            if out.len() == self.dim() {
                break;
            }
            let fd = f.adjoint();
            let re_part = (f + &fd).scale_real(0.5);
            let im_part = (f - &fd).scale(half_i);
            for cand in [re_part, im_part] {
                if out.len() == self.dim() {
                    break;
                }
                if let Some(v) = orthonormalize_against(&out, &cand, NUMERIC_TOL) {
                    // numerically Hermitian already; clean the roundoff
                    out.push(v.hermitian_part());
                }
            }
        }
        if out.len() != self.dim() {
            return Err(Error::NotAdjointClosed);
        }
        Ok(out)
    }

    /// S₁ ⊗ S₂
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let (rows, cols) = (self.rows * other.rows, self.cols * other.cols);
        if rows.max(cols) > MAX_AMBIENT_DIM {
            return Err(Error::DimensionOverflow { dim: rows.max(cols), max: MAX_AMBIENT_DIM });
        }
        let mut basis = Vec::with_capacity(self.dim() * other.dim());
        for f in &self.basis {
            for g in &other.basis {
                basis.push(kron(f, g)?);
            }
        }
        Ok(Self::from_orthonormal(rows, cols, basis))
    }

    /// Disjoint union S ⊕ S' < L(A ⊕ A').
    pub fn direct_sum(&self, other: &Self) -> Self {
        let d1 = self.rows;
        let d = d1 + other.rows;
        let mut basis: Vec<_> = self.basis.iter().map(|f| f.embed_block(d, d, 0, 0)).collect();
        basis.extend(other.basis.iter().map(|g| g.embed_block(d, d, d1, d1)));
        Self::from_orthonormal(d, d, basis)
    }

    /// Complete union S ⊞ S' = S ⊕ S' + L(A→A') + L(A'→A).
    pub fn complete_union(&self, other: &Self) -> Self {
        let (d1, d2) = (self.rows, other.rows);
        let d = d1 + d2;
        let mut basis = self.direct_sum(other).basis;
        for i in 0..d1 {
            for j in 0..d2 {
                basis.push(ComplexMatrix::unit(d, d, i, d1 + j));
                basis.push(ComplexMatrix::unit(d, d, d1 + j, i));
            }
        }
        Self::from_orthonormal(d, d, basis)
    }

    /// Induced subgraph U†SU for an isometry U: C^{d0} → C^d.
    pub fn induced_subgraph(&self, u: &ComplexMatrix) -> Result<Self> {
        if u.rows() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "isometry with {} rows for a space in dimension {}",
                u.rows(),
                self.rows
            )));
        }
        let d0 = u.cols();
        let residual = (&u.adjoint().matmul(u) - &ComplexMatrix::identity(d0)).hs_norm();
        if residual > 1e-10 * (d0 as f64).sqrt().max(1.0) {
            return Err(Error::NotIsometry { residual });
        }
        let ud = u.adjoint();
        let mats: Vec<_> = self.basis.iter().map(|f| ud.matmul(f).matmul(u)).collect();
        if mats.is_empty() {
            return Ok(Self::zero(d0));
        }
        Self::span(&mats, NUMERIC_TOL)
    }

    /// S^t = S·S⋯S (t factors).
    pub fn distance_graph(&self, t: usize) -> Result<Self> {
        if t == 0 {
            return Err(Error::InvalidInput("distance graph needs t >= 1".into()));
        }
        self.require_nc_graph()?;
        let d = self.rows;
        let mut current = self.clone();
        for _ in 1..t {
            if current.dim() == d * d {
                break;
            }
            let mut mats = current.basis.clone();
            for a in &current.basis {
                for b in &self.basis {
                    mats.push(a.matmul(b));
                }
            }
            current = Self::span(&mats, NUMERIC_TOL)?;
        }
        Ok(current)
    }

    /// span{X†Y : X, Y ∈ self}, e.g. S = Z†Z for a bipartite space Z.
    pub fn adjoint_product_span(&self) -> Result<Self> {
        let mut mats = Vec::with_capacity(self.dim() * self.dim());
        for x in &self.basis {
            let xd = x.adjoint();
            for y in &self.basis {
                mats.push(xd.matmul(y));
            }
        }
        if mats.is_empty() {
            return Ok(Self::zero(self.cols));
        }
        Self::span(&mats, NUMERIC_TOL)
    }

    /// S ≤ S'
    pub fn leq(&self, other: &Self) -> Result<bool> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch("comparing spaces of different shapes".into()));
        }
        Ok(self.basis.iter().all(|f| other.contains_within(f, NUMERIC_TOL)))
    }

    pub fn equals(&self, other: &Self) -> Result<bool> {
        Ok(self.dim() == other.dim() && self.leq(other)? && other.leq(self)?)
    }
}

impl OperatorSpace {
    /// S₁ ∩ S₂ = (S₁⊥ + S₂⊥)⊥
    pub fn intersection(&self, other: &Self) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch("intersecting spaces of different shapes".into()));
        }
        let mut mats = self.orth_complement().basis;
        mats.extend(other.orth_complement().basis);
        let sum = Self::from_orthonormal(self.rows, self.cols, gram_schmidt_hs(&mats, NUMERIC_TOL));
        Ok(sum.orth_complement())
    }

    /// Complement of a non-commutative graph relative to the trivial
    /// subalgebra C𝟙 and the HS inner product: span{𝟙} + (S⊥ ∩ 𝟙⊥). For a
    /// classical graph space this is NOT the space of the complement graph,
    /// whose diagonal is all of the diagonal matrices.
    pub fn nc_complement(&self) -> Result<Self> {
        self.require_nc_graph()?;
        // 𝟙 ∈ S puts S⊥ inside 𝟙⊥ already
        let mut basis = vec![ComplexMatrix::identity(self.rows).scale_real(1.0 / (self.rows as f64).sqrt())];
        basis.extend(self.orth_complement().basis);
        Ok(Self::from_orthonormal(self.rows, self.cols, basis))
    }

    /// Whether S is closed under entrywise complex conjugation.
    pub fn conjugation_closed(&self) -> bool {
        self.basis.iter().all(|f| self.contains_within(&f.conj(), NUMERIC_TOL))
    }

    /// For a †-closed space with S = S̄: orthonormal bases of its real
    /// symmetric and real antisymmetric elements, stored as complex matrices
    /// with zero imaginary part. Their sizes add up to dim S.
    pub fn real_split(&self) -> Option<(Vec<ComplexMatrix>, Vec<ComplexMatrix>)> {
        if !self.conjugation_closed() {
            return None;
        }
        let herm = self.hermitian_basis().ok()?;
        let re: Vec<ComplexMatrix> =
            herm.iter().map(|h| ComplexMatrix::from_fn(h.rows(), h.cols(), |i, j| c(h[(i, j)].re, 0.0))).collect();
        let im: Vec<ComplexMatrix> =
            herm.iter().map(|h| ComplexMatrix::from_fn(h.rows(), h.cols(), |i, j| c(h[(i, j)].im, 0.0))).collect();
        let sym = gram_schmidt_hs(&re, NUMERIC_TOL);
        let anti = gram_schmidt_hs(&im, NUMERIC_TOL);
        (sym.len() + anti.len() == self.dim()).then_some((sym, anti))
    }
}

pub fn space_leq(a: &OperatorSpace, b: &OperatorSpace) -> Result<bool> {
    a.leq(b)
}

pub fn space_equal(a: &OperatorSpace, b: &OperatorSpace) -> Result<bool> {
    a.equals(b)
}

/// A random non-commutative graph of complex dimension `dim` in L(C^d),
/// deterministic in `seed`.
pub fn random_nc_graph(d: usize, dim: usize, seed: u64) -> Result<OperatorSpace> {
    if d == 0 || dim == 0 || dim > d * d {
        return Err(Error::Infeasible(format!("no nc-graph of dimension {dim} in L(C^{d})")));
    }
    let mut rng = seeded(seed);
    let mut basis = vec![ComplexMatrix::identity(d).scale_real(1.0 / (d as f64).sqrt())];
    while basis.len() < dim {
        let h = random_hermitian(&mut rng, d);
        if let Some(v) = orthonormalize_against(&basis, &h, 1e-6) {
            basis.push(v.hermitian_part());
        }
    }
    Ok(OperatorSpace::from_orthonormal(d, d, basis))
}

/// Random nested nc-graphs S ≤ S' with the requested dimensions.
pub fn random_nested_pair(d: usize, small: usize, large: usize, seed: u64) -> Result<(OperatorSpace, OperatorSpace)> {
    if small > large {
        return Err(Error::Infeasible("nested pair needs small <= large".into()));
    }
    let big = random_nc_graph(d, large, seed)?;
    let herm = big.hermitian_basis()?;
    // the first element is 𝟙/√d, so any prefix is an nc-graph
    let sub = OperatorSpace::from_orthonormal(d, d, herm[..small].to_vec());
    Ok((sub, big))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{c, ComplexMatrix};
    use crate::random::{random_isometry, random_matrix};

    fn z() -> ComplexMatrix {
        ComplexMatrix::pauli_z()
    }

    #[test]
    fn span_examples() {
        let s = OperatorSpace::span(&[ComplexMatrix::identity(2)], NUMERIC_TOL).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(s.contains_identity() && s.adjoint_closed());

        let s = OperatorSpace::span(&[ComplexMatrix::identity(2), z(), z().scale_real(2.0)], NUMERIC_TOL).unwrap();
        assert_eq!(s.dim(), 2);

        let units: Vec<_> = (0..9).map(|k| ComplexMatrix::unit(3, 3, k / 3, k % 3)).collect();
        assert_eq!(OperatorSpace::span(&units, NUMERIC_TOL).unwrap().dim(), 9);

        assert!(OperatorSpace::span(&[ComplexMatrix::identity(2), ComplexMatrix::identity(3)], 1e-9).is_err());
    }

    #[test]
    fn contains_examples() {
        let s = OperatorSpace::scalars(3);
        assert!(s.contains(&ComplexMatrix::identity(3).scale_real(3.0)).unwrap());
        let s2 = OperatorSpace::scalars(2);
        assert!(!s2.contains(&ComplexMatrix::pauli_x()).unwrap());
        assert!(s2.contains(&ComplexMatrix::identity(3)).is_err());

        let mut rng = seeded(5);
        let s = random_nc_graph(3, 4, 77).unwrap();
        let coeffs: Vec<_> = (0..4).map(|_| crate::random::complex_gaussian(&mut rng)).collect();
        let mut x = ComplexMatrix::zeros(3, 3);
        for (a, f) in coeffs.iter().zip(s.basis()) {
            x.axpy(*a, f);
        }
        assert!(s.contains(&x).unwrap());
        let perp = s.orth_complement();
        let mut y = x.clone();
        y.axpy(c(1e-3, 0.0), &perp.basis()[0]);
        assert!(!s.contains(&y).unwrap());
    }

    #[test]
    fn nc_graph_examples() {
        assert!(OperatorSpace::scalars(3).is_nc_graph());
        assert!(OperatorSpace::full(3).is_nc_graph());
        let s = OperatorSpace::span(&[ComplexMatrix::unit(2, 2, 0, 1)], NUMERIC_TOL).unwrap();
        assert!(!s.is_nc_graph());
        assert!(!s.adjoint_closed() && !s.contains_identity());
    }

    #[test]
    fn nc_complement_examples() {
        let full = OperatorSpace::full(3).nc_complement().unwrap();
        assert!(full.equals(&OperatorSpace::scalars(3)).unwrap());
        let id = OperatorSpace::scalars(3).nc_complement().unwrap();
        assert!(id.equals(&OperatorSpace::full(3)).unwrap());
        let s = random_nc_graph(3, 4, 7).unwrap();
        let c = s.nc_complement().unwrap();
        assert!(c.is_nc_graph());
        assert_eq!(c.dim(), 1 + 9 - s.dim());
    }

    #[test]
    fn complement_examples() {
        let p = OperatorSpace::scalars(3).orth_complement();
        assert_eq!(p.dim(), 8);
        for f in p.basis() {
            assert!(f.trace().norm() < 1e-12);
        }
        assert_eq!(OperatorSpace::full(3).orth_complement().dim(), 0);
        let s = random_nc_graph(3, 5, 1).unwrap();
        let p = s.orth_complement();
        assert_eq!(s.dim() + p.dim(), 9);
        for f in s.basis() {
            for g in p.basis() {
                assert!(hs_dot(f, g).norm() <= 1e-9);
            }
        }
        for g in p.basis() {
            assert!(g.trace().norm() <= 1e-9);
        }
        assert!(p.orth_complement().equals(&s).unwrap());
    }

    #[test]
    fn hermitian_basis_examples() {
        let h = OperatorSpace::scalars(2).hermitian_basis().unwrap();
        assert_eq!(h.len(), 1);
        assert!(h[0].approx_eq(&ComplexMatrix::identity(2).scale_real(1.0 / 2f64.sqrt()), 1e-14));

        let s = OperatorSpace::span(
            &[ComplexMatrix::unit(2, 2, 0, 1), ComplexMatrix::unit(2, 2, 1, 0)],
            NUMERIC_TOL,
        )
        .unwrap();
        let h = s.hermitian_basis().unwrap();
        assert_eq!(h.len(), 2);
        let r = 1.0 / 2f64.sqrt();
        assert!(h[0].approx_eq(&ComplexMatrix::pauli_x().scale_real(r), 1e-14));
        assert!(h[1].approx_eq(&ComplexMatrix::pauli_y().scale_real(r), 1e-14));

        let h = OperatorSpace::full(2).hermitian_basis().unwrap();
        assert_eq!(h.len(), 4);
        for m in &h {
            assert!(m.is_hermitian(1e-14));
        }

        let s = OperatorSpace::span(&[ComplexMatrix::unit(2, 2, 0, 1)], NUMERIC_TOL).unwrap();
        assert!(matches!(s.hermitian_basis(), Err(Error::NotAdjointClosed)));
    }

    #[test]
    fn tensor_examples() {
        let t = OperatorSpace::scalars(2).tensor(&OperatorSpace::scalars(3)).unwrap();
        assert!(t.equals(&OperatorSpace::scalars(6)).unwrap());
        let s = random_nc_graph(2, 2, 3).unwrap();
        let t = s.tensor(&OperatorSpace::full(3)).unwrap();
        assert_eq!(t.dim(), 2 * 9);
        assert!(t.is_nc_graph());
    }

    #[test]
    fn tensor_complement_decomposition() {
        for seed in 0..5 {
            let s1 = random_nc_graph(2, 2, seed).unwrap();
            let s2 = random_nc_graph(2, 3, seed + 100).unwrap();
            let lhs = s1.tensor(&s2).unwrap().orth_complement();
            let (p1, p2) = (s1.orth_complement(), s2.orth_complement());
            let mut mats = Vec::new();
            for (a, b) in [(&p1, &s2), (&s1, &p2), (&p1, &p2)] {
                mats.extend(a.tensor(b).unwrap().basis().iter().cloned());
            }
            let rhs = OperatorSpace::span(&mats, NUMERIC_TOL).unwrap();
            assert!(lhs.equals(&rhs).unwrap(), "seed {seed}");
        }
    }

    #[test]
    fn direct_sum_and_complete_union() {
        let a = OperatorSpace::scalars(2);
        let b = OperatorSpace::scalars(3);
        let ds = a.direct_sum(&b);
        assert_eq!((ds.ambient_dim(), ds.dim()), (5, 2));
        assert!(ds.contains(&ComplexMatrix::identity(5)).unwrap());
        assert!(ds.is_nc_graph());
        assert_eq!(ds.orth_complement().dim(), 25 - 2);

        let k2 = OperatorSpace::scalars(1).complete_union(&OperatorSpace::scalars(1));
        assert!(k2.equals(&OperatorSpace::full(2)).unwrap());

        let s = random_nc_graph(2, 2, 9).unwrap();
        let t = random_nc_graph(3, 4, 10).unwrap();
        let cu = s.complete_union(&t);
        assert_eq!(cu.dim(), 2 + 4 + 2 * 2 * 3);
        assert!(cu.is_nc_graph());
        let perp = cu.orth_complement();
        let blockwise = s.orth_complement().direct_sum(&t.orth_complement());
        assert!(perp.leq(&blockwise).unwrap() && blockwise.leq(&perp).unwrap());
        assert!(s.direct_sum(&t).leq(&cu).unwrap());
    }

    #[test]
    fn induced_subgraph_examples() {
        let s = random_nc_graph(3, 4, 2).unwrap();
        assert!(s.induced_subgraph(&ComplexMatrix::identity(3)).unwrap().equals(&s).unwrap());

        let mut rng = seeded(6);
        let u = random_isometry(&mut rng, 4, 2);
        let ind = OperatorSpace::scalars(4).induced_subgraph(&u).unwrap();
        assert!(ind.equals(&OperatorSpace::scalars(2)).unwrap());

        let ind = s.induced_subgraph(&random_isometry(&mut rng, 3, 2)).unwrap();
        assert!(ind.is_nc_graph());

        let bad = ComplexMatrix::identity(3).scale_real(2.0);
        assert!(matches!(s.induced_subgraph(&bad), Err(Error::NotIsometry { .. })));
    }

    #[test]
    fn distance_graph_examples() {
        let s = random_nc_graph(3, 3, 4).unwrap();
        assert!(s.distance_graph(1).unwrap().equals(&s).unwrap());
        let s2 = s.distance_graph(2).unwrap();
        assert!(s.leq(&s2).unwrap());
        let f = OperatorSpace::full(3);
        assert!(f.distance_graph(3).unwrap().equals(&f).unwrap());
    }

    #[test]
    fn leq_examples() {
        let (small, big) = random_nested_pair(3, 3, 6, 12).unwrap();
        assert!(small.is_nc_graph() && big.is_nc_graph());
        assert!(small.leq(&big).unwrap());
        assert!(!big.leq(&small).unwrap());
        assert!(OperatorSpace::scalars(3).leq(&big).unwrap());
        assert!(big.orth_complement().leq(&small.orth_complement()).unwrap());
    }

    #[test]
    fn random_nc_graph_examples() {
        assert!(random_nc_graph(3, 1, 0).unwrap().equals(&OperatorSpace::scalars(3)).unwrap());
        assert!(random_nc_graph(2, 4, 0).unwrap().equals(&OperatorSpace::full(2)).unwrap());
        for seed in 0..100 {
            let d = 1 + (seed as usize % 4);
            let dim = 1 + (seed as usize * 7) % (d * d);
            let s = random_nc_graph(d, dim, seed).unwrap();
            assert!(s.is_nc_graph());
            assert_eq!(s.dim(), dim);
            assert_eq!(s.hermitian_basis().unwrap().len(), dim);
        }
        assert!(random_nc_graph(2, 5, 0).is_err());
        assert!(random_nc_graph(2, 0, 0).is_err());
    }

    #[test]
    fn projection_is_idempotent_and_self_adjoint() {
        let mut rng = seeded(33);
        let s = random_nc_graph(3, 5, 8).unwrap();
        for _ in 0..5 {
            let x = random_matrix(&mut rng, 3, 3);
            let y = random_matrix(&mut rng, 3, 3);
            let px = s.project(&x);
            assert!((&s.project(&px) - &px).hs_norm() <= 1e-10);
            let lhs = hs_dot(&px, &y);
            let rhs = hs_dot(&x, &s.project(&y));
            assert!((lhs - rhs).norm() <= 1e-10);
        }
    }

    #[test]
    fn rectangular_span() {
        let a = ComplexMatrix::unit(2, 3, 0, 1);
        let s = OperatorSpace::span_rect(2, 3, &[a.clone(), a.scale_real(2.0)], NUMERIC_TOL).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(!s.is_nc_graph());
        assert_eq!(s.orth_complement().dim(), 5);
    }
}
