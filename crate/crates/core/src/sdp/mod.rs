//! Linear matrix inequalities over real symmetric blocks and a primal-dual
//! interior-point solver for them.
//!
//! A problem optimizes c·y subject to F₀⁽ᵇ⁾ + Σᵢ yᵢ Fᵢ⁽ᵇ⁾ ⪰ 0 for every
//! block b. Coefficient matrices are stored sparse (upper triangle).

mod ipm;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matrix::RealMatrix;

pub use ipm::solve;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    Minimize,
    Maximize,
}

/// Outcome of a solve, phrased for the LMI in y.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SolveStatus {
    Optimal,
    IterationLimit,
    /// No y satisfies the LMI.
    PrimalInfeasible,
    /// The objective is unbounded over the feasible set.
    DualInfeasible,
    NumericalTrouble,
}

/// Real symmetric matrix stored by its upper-triangle entries `(i, j, v)`
/// with `i <= j`, sorted and without duplicates.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SparseSym {
    n: usize,
    entries: Vec<(u32, u32, f64)>,
}

impl SparseSym {
    pub fn zeros(n: usize) -> Self {
        Self { n, entries: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        Self { n, entries: (0..n as u32).map(|i| (i, i, 1.0)).collect() }
    }

    /// Builds from arbitrary `(i, j, v)` triples, folding (j, i) onto (i, j)
    /// and summing duplicates. Each triple sets the symmetric pair, so
    /// `(0, 1, v)` means M₀₁ = M₁₀ = v.
    pub fn from_triples(n: usize, triples: impl IntoIterator<Item = (usize, usize, f64)>) -> Self {
        let mut e: Vec<(u32, u32, f64)> = triples
            .into_iter()
            .map(|(i, j, v)| {
                assert!(i < n && j < n, "entry out of range");
                let (a, b) = if i <= j { (i, j) } else { (j, i) };
                (a as u32, b as u32, v)
            })
            .collect();
        e.sort_by_key(|&(i, j, _)| (i, j));
        let mut entries: Vec<(u32, u32, f64)> = Vec::with_capacity(e.len());
        for (i, j, v) in e {
            match entries.last_mut() {
                Some(last) if last.0 == i && last.1 == j => last.2 += v,
                _ => entries.push((i, j, v)),
            }
        }
        entries.retain(|t| t.2 != 0.0);
        Self { n, entries }
    }

    /// Upper triangle of a dense matrix, symmetrized; entries below
    /// `drop_tol`·max|entry| are discarded.
    pub fn from_dense(m: &RealMatrix, drop_tol: f64) -> Self {
        assert_eq!(m.rows(), m.cols());
        let n = m.rows();
        let scale = m.data().iter().fold(0.0f64, |a, v| a.max(v.abs()));
        let cut = drop_tol * scale;
        let mut entries = Vec::new();
        for i in 0..n {
            for j in i..n {
                let v = 0.5 * (m[(i, j)] + m[(j, i)]);
                if v.abs() > cut && v != 0.0 {
                    entries.push((i as u32, j as u32, v));
                }
            }
        }
        Self { n, entries }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.entries.iter().map(|&(i, j, v)| (i as usize, j as usize, v))
    }

    pub fn scaled(&self, s: f64) -> Self {
        let mut out = self.clone();
        for e in &mut out.entries {
            e.2 *= s;
        }
        out.entries.retain(|t| t.2 != 0.0);
        out
    }

    pub fn to_dense(&self) -> RealMatrix {
        let mut m = RealMatrix::zeros(self.n, self.n);
        self.add_to(&mut m, 1.0);
        m
    }

    /// m += s·self
    pub fn add_to(&self, m: &mut RealMatrix, s: f64) {
        for &(i, j, v) in &self.entries {
            let (i, j) = (i as usize, j as usize);
            m[(i, j)] += s * v;
            if i != j {
                m[(j, i)] += s * v;
            }
        }
    }

    /// tr(self · m) for symmetric `m`.
    pub fn dot_dense(&self, m: &RealMatrix) -> f64 {
        let n = m.cols();
        let d = m.data();
        let mut s = 0.0;
        for &(i, j, v) in &self.entries {
            let (i, j) = (i as usize, j as usize);
            if i == j {
                s += v * d[i * n + i];
            } else {
                s += v * (d[i * n + j] + d[j * n + i]);
            }
        }
        s
    }

    pub fn frobenius(&self) -> f64 {
        self.entries
            .iter()
            .map(|&(i, j, v)| if i == j { v * v } else { 2.0 * v * v })
            .sum::<f64>()
            .sqrt()
    }
}

/// One LMI block F₀ + Σᵢ yᵢ Fᵢ ⪰ 0. `coeffs` has one entry per variable.
#[derive(Debug, Clone, PartialEq)]
pub struct LmiBlock {
    pub f0: SparseSym,
    pub coeffs: Vec<SparseSym>,
}

impl LmiBlock {
    pub fn new(size: usize, num_vars: usize) -> Self {
        Self { f0: SparseSym::zeros(size), coeffs: vec![SparseSym::zeros(size); num_vars] }
    }

    pub fn size(&self) -> usize {
        self.f0.size()
    }

    /// F₀ + Σ yᵢ Fᵢ as a dense matrix.
    pub fn evaluate(&self, y: &[f64]) -> RealMatrix {
        let mut m = self.f0.to_dense();
        for (f, &yi) in self.coeffs.iter().zip(y) {
            if yi != 0.0 {
                f.add_to(&mut m, yi);
            }
        }
        m
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LmiProblem {
    pub num_vars: usize,
    pub objective: Vec<f64>,
    pub sense: Sense,
    pub blocks: Vec<LmiBlock>,
}

impl LmiProblem {
    pub fn new(objective: Vec<f64>, sense: Sense) -> Self {
        Self { num_vars: objective.len(), objective, sense, blocks: Vec::new() }
    }

    pub fn add_block(&mut self, block: LmiBlock) -> Result<()> {
        if block.coeffs.len() != self.num_vars {
            return Err(Error::ShapeMismatch(format!(
                "block has {} coefficient matrices, problem has {} variables",
                block.coeffs.len(),
                self.num_vars
            )));
        }
        let n = block.size();
        if block.coeffs.iter().any(|f| f.size() != n) {
            return Err(Error::ShapeMismatch("coefficient matrix size differs from F0".into()));
        }
        self.blocks.push(block);
        Ok(())
    }

    pub fn check(&self) -> Result<()> {
        if self.objective.len() != self.num_vars {
            return Err(Error::ShapeMismatch("objective length differs from num_vars".into()));
        }
        for b in &self.blocks {
            let n = b.size();
            if b.coeffs.len() != self.num_vars || b.coeffs.iter().any(|f| f.size() != n) {
                return Err(Error::ShapeMismatch("inconsistent block".into()));
            }
            let finite = |f: &SparseSym| f.entries.iter().all(|t| t.2.is_finite());
            if !finite(&b.f0) || !b.coeffs.iter().all(finite) {
                return Err(Error::InvalidInput("non-finite coefficient".into()));
            }
        }
        if !self.objective.iter().all(|c| c.is_finite()) {
            return Err(Error::InvalidInput("non-finite objective".into()));
        }
        Ok(())
    }

    pub fn total_size(&self) -> usize {
        self.blocks.iter().map(|b| b.size()).sum()
    }

    /// Debug dump with dense blocks.
    pub fn to_json(&self) -> Value {
        let dense = |m: &RealMatrix| -> Value {
            Value::Array((0..m.rows()).map(|i| json!(m.row(i))).collect())
        };
        let blocks: Vec<Value> = self
            .blocks
            .iter()
            .map(|b| {
                json!({
                    "F0": dense(&b.f0.to_dense()),
                    "Fi": b.coeffs.iter().map(|f| dense(&f.to_dense())).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({
            "kind": "lmi",
            "sense": self.sense,
            "c": self.objective,
            "blocks": blocks,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    pub gap_tol: f64,
    pub feas_tol: f64,
    pub max_iter: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self { gap_tol: 1e-8, feas_tol: 1e-8, max_iter: 500 }
    }
}

#[derive(Debug, Clone)]
pub struct LmiSolution {
    pub y: Vec<f64>,
    /// c·y at the returned y.
    pub value: f64,
    /// Objective bound from the internal dual iterate. A lower bound for
    /// minimization (upper for maximization) once that iterate is feasible.
    pub bound: f64,
    pub status: SolveStatus,
    /// |value − bound| / (1 + |value|)
    pub gap: f64,
    pub iterations: usize,
    pub min_block_eigs: Vec<f64>,
    /// ⟨X, Z⟩ at the start of each iteration.
    pub complementarity: Vec<f64>,
    /// Dual iterate X, one matrix per block.
    pub multipliers: Vec<RealMatrix>,
}

impl LmiSolution {
    pub fn is_optimal(&self) -> bool {
        self.status == SolveStatus::Optimal
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Validation {
    pub objective: f64,
    pub min_block_eigs: Vec<f64>,
}

impl Validation {
    pub fn min_eig(&self) -> f64 {
        self.min_block_eigs.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// Recomputes the objective and the smallest eigenvalue of every block at
/// `y`, independently of the solver.
pub fn validate(p: &LmiProblem, y: &[f64]) -> Result<Validation> {
    if y.len() != p.num_vars {
        return Err(Error::ShapeMismatch(format!("y has length {}, expected {}", y.len(), p.num_vars)));
    }
    let objective = p.objective.iter().zip(y).map(|(c, v)| c * v).sum();
    let min_block_eigs = p.blocks.iter().map(|b| b.evaluate(y).min_eigenvalue()).collect();
    Ok(Validation { objective, min_block_eigs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sparse_roundtrip_and_dot() {
        let s = SparseSym::from_triples(3, [(0, 1, 2.0), (1, 0, 1.0), (2, 2, -1.0), (0, 0, 0.0)]);
        assert_eq!(s.nnz(), 2);
        let d = s.to_dense();
        assert_eq!(d[(0, 1)], 3.0);
        assert_eq!(d[(1, 0)], 3.0);
        assert_eq!(SparseSym::from_dense(&d, 0.0), s);
        let m = RealMatrix::from_fn(3, 3, |i, j| (i + j) as f64);
        let expected: f64 = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).map(|(i, j)| d[(i, j)] * m[(i, j)]).sum();
        assert!((s.dot_dense(&m) - expected).abs() < 1e-14);
        assert!((s.frobenius() - d.frobenius()).abs() < 1e-14);
    }

    #[test]
    fn validate_identity_blocks() {
        let mut p = LmiProblem::new(vec![1.0], Sense::Minimize);
        let mut b = LmiBlock::new(2, 1);
        b.f0 = SparseSym::identity(2);
        b.coeffs[0] = SparseSym::from_triples(2, [(0, 1, 1.0)]);
        p.add_block(b).unwrap();
        let v = validate(&p, &[0.0]).unwrap();
        assert!((v.min_eig() - 1.0).abs() < 1e-14);
        let v = validate(&p, &[2.0]).unwrap();
        assert!((v.min_eig() + 1.0).abs() < 1e-12);
        assert!(validate(&p, &[]).is_err());
    }

    #[test]
    fn rejects_inconsistent_blocks() {
        let mut p = LmiProblem::new(vec![1.0, 2.0], Sense::Minimize);
        assert!(p.add_block(LmiBlock::new(2, 1)).is_err());
        let mut b = LmiBlock::new(2, 2);
        b.coeffs[1] = SparseSym::zeros(3);
        assert!(p.add_block(b).is_err());
    }

    #[test]
    fn json_dump_has_kind() {
        let mut p = LmiProblem::new(vec![1.0], Sense::Maximize);
        p.add_block(LmiBlock::new(1, 1)).unwrap();
        let v = p.to_json();
        assert_eq!(v["kind"], "lmi");
        assert_eq!(v["blocks"][0]["Fi"].as_array().unwrap().len(), 1);
    }
}
