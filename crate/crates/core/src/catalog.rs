//! Named instances: the pentagon, qubit graphs, the Δ complement and the
//! Duan-type channel graph.

use crate::error::Result;
use crate::graph::Graph;
use crate::matrix::{kron, ComplexMatrix, NUMERIC_TOL};
use crate::space::OperatorSpace;

pub fn pentagon() -> Graph {
    Graph::cycle(5)
}

/// span{𝟙, Z}: the confusability graph of the dephasing qubit.
pub fn dephasing_qubit() -> OperatorSpace {
    OperatorSpace::span(&[ComplexMatrix::identity(2), ComplexMatrix::pauli_z()], NUMERIC_TOL)
        .expect("two 2x2 matrices span a space")
}

/// Δ = diag(d−1, −1, …, −1), traceless and Hermitian.
pub fn delta(d: usize) -> ComplexMatrix {
    let mut v = vec![-1.0; d];
    v[0] = (d as f64) - 1.0;
    ComplexMatrix::diag(&v)
}

/// span{Δ}⊥, a non-commutative graph with dim S⊥ = 1.
pub fn delta_complement(d: usize) -> OperatorSpace {
    OperatorSpace::span(&[delta(d)], NUMERIC_TOL).expect("Δ is nonzero for d >= 2").orth_complement()
}

/// 𝟙₂⊗𝟙_d + 𝟙₂⊥⊗L(C^d) < L(C²⊗C^d), where 𝟙₂⊥ = span{X, Y, Z}.
pub fn duan(d: usize) -> Result<OperatorSpace> {
    let mut mats = vec![ComplexMatrix::identity(2 * d)];
    for p in [ComplexMatrix::pauli_x(), ComplexMatrix::pauli_y(), ComplexMatrix::pauli_z()] {
        for i in 0..d {
            for j in 0..d {
                mats.push(kron(&p, &ComplexMatrix::unit(d, d, i, j))?);
            }
        }
    }
    OperatorSpace::span(&mats, NUMERIC_TOL)
}
