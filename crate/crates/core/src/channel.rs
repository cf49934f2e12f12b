//! Quantum channels in Kraus form and classical channels embedded into
//! them. The confusability space of a channel is S = span{Eⱼ†Eₖ}.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::{kron, ComplexMatrix, NUMERIC_TOL};
use crate::space::OperatorSpace;

/// Trace-preservation tolerance per input dimension.
pub const TP_TOL_PER_DIM: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct QuantumChannel {
    dim_in: usize,
    dim_out: usize,
    kraus: Vec<ComplexMatrix>,
}

impl QuantumChannel {
    /// Validates with the default tolerance 1e-9·dim_in.
    pub fn new(kraus: Vec<ComplexMatrix>) -> Result<Self> {
        let dim_in = kraus.first().map(|k| k.cols()).unwrap_or(0);
        Self::with_tol(kraus, TP_TOL_PER_DIM * dim_in.max(1) as f64)
    }

    /// Fails when ‖Σ Eⱼ†Eⱼ − 𝟙‖_HS exceeds `tol`.
    pub fn with_tol(kraus: Vec<ComplexMatrix>, tol: f64) -> Result<Self> {
        let first = kraus.first().ok_or_else(|| Error::ShapeMismatch("empty Kraus list".into()))?;
        let (dim_out, dim_in) = first.shape();
        if kraus.iter().any(|k| k.shape() != (dim_out, dim_in)) {
            return Err(Error::ShapeMismatch("Kraus operators of different shapes".into()));
        }
        let ch = Self { dim_in, dim_out, kraus };
        let residual = ch.tp_residual();
        if !(residual <= tol) {
            return Err(Error::NotTracePreserving { residual });
        }
        Ok(ch)
    }

    /// ‖Σ Eⱼ†Eⱼ − 𝟙‖_HS
    pub fn tp_residual(&self) -> f64 {
        let mut acc = ComplexMatrix::identity(self.dim_in).scale_real(-1.0);
        for e in &self.kraus {
            acc = &acc + &e.adjoint().matmul(e);
        }
        acc.hs_norm()
    }

    pub fn identity(d: usize) -> Self {
        Self { dim_in: d, dim_out: d, kraus: vec![ComplexMatrix::identity(d)] }
    }

    /// Complete dephasing in the computational basis, Kraus {|b⟩⟨b|}.
    pub fn dephasing(d: usize) -> Self {
        Self { dim_in: d, dim_out: d, kraus: (0..d).map(|b| ComplexMatrix::unit(d, d, b, b)).collect() }
    }

    /// Discards the input and prepares |0⟩ ∈ C^{dim_out}.
    pub fn constant(dim_in: usize, dim_out: usize) -> Self {
        let kraus = (0..dim_in).map(|i| ComplexMatrix::unit(dim_out, dim_in, 0, i)).collect();
        Self { dim_in, dim_out, kraus }
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    /// Σ E ρ E†
    pub fn apply(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        if rho.shape() != (self.dim_in, self.dim_in) {
            return Err(Error::DimensionMismatch(format!("state must be {0}x{0}", self.dim_in)));
        }
        let mut out = ComplexMatrix::zeros(self.dim_out, self.dim_out);
        for e in &self.kraus {
            out = &out + &e.matmul(rho).matmul(&e.adjoint());
        }
        Ok(out)
    }

    /// Σ E† X E
    pub fn heisenberg(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        if x.shape() != (self.dim_out, self.dim_out) {
            return Err(Error::DimensionMismatch(format!("observable must be {0}x{0}", self.dim_out)));
        }
        let mut out = ComplexMatrix::zeros(self.dim_in, self.dim_in);
        for e in &self.kraus {
            out = &out + &e.adjoint().matmul(x).matmul(e);
        }
        Ok(out)
    }

    /// span{Eⱼ†Eₖ}
    pub fn confusability(&self) -> OperatorSpace {
        let products: Vec<ComplexMatrix> = self
            .kraus
            .iter()
            .flat_map(|a| self.kraus.iter().map(move |b| a.adjoint().matmul(b)))
            .collect();
        OperatorSpace::span(&products, NUMERIC_TOL).expect("Kraus products share one shape")
    }

    /// Channel to the environment of the Stinespring isometry
    /// V|φ⟩ = Σⱼ Eⱼ|φ⟩ ⊗ |j⟩, with Kraus operators F_b = (⟨b| ⊗ 𝟙)V,
    /// i.e. (F_b)_{j,a} = (Eⱼ)_{b,a}.
    pub fn complementary(&self) -> Self {
        let k = self.kraus.len();
        let kraus = (0..self.dim_out)
            .map(|b| ComplexMatrix::from_fn(k, self.dim_in, |j, a| self.kraus[j][(b, a)]))
            .collect();
        Self { dim_in: self.dim_in, dim_out: k, kraus }
    }

    /// span{Eⱼ} < L(A → B).
    pub fn bipartite_space(&self) -> OperatorSpace {
        OperatorSpace::span_rect(self.dim_out, self.dim_in, &self.kraus, NUMERIC_TOL)
            .expect("Kraus operators share one shape")
    }

    /// `post` ∘ `self`, Kraus operators all products PⱼEₖ.
    pub fn then(&self, post: &QuantumChannel) -> Result<Self> {
        compose(post, self)
    }

    /// Kraus operators Eⱼ ⊗ Fₖ.
    pub fn tensor(&self, other: &QuantumChannel) -> Result<Self> {
        let mut kraus = Vec::with_capacity(self.kraus.len() * other.kraus.len());
        for a in &self.kraus {
            for b in &other.kraus {
                kraus.push(kron(a, b)?);
            }
        }
        Ok(Self { dim_in: self.dim_in * other.dim_in, dim_out: self.dim_out * other.dim_out, kraus })
    }

    /// Kraus list remixed by a unitary: E'ᵢ = Σⱼ u_ij Eⱼ.
    pub fn remix(&self, u: &ComplexMatrix) -> Result<Self> {
        let k = self.kraus.len();
        if u.shape() != (k, k) {
            return Err(Error::DimensionMismatch(format!("remixing matrix must be {k}x{k}")));
        }
        let kraus = (0..k)
            .map(|i| {
                let mut e = ComplexMatrix::zeros(self.dim_out, self.dim_in);
                for (j, ej) in self.kraus.iter().enumerate() {
                    e.axpy(u[(i, j)], ej);
                }
                e
            })
            .collect();
        Self::new(kraus)
    }
}

/// `post` ∘ `ch`
pub fn compose(post: &QuantumChannel, ch: &QuantumChannel) -> Result<QuantumChannel> {
    if post.dim_in != ch.dim_out {
        return Err(Error::DimensionMismatch(format!(
            "post-processing expects dimension {}, channel outputs {}",
            post.dim_in, ch.dim_out
        )));
    }
    let kraus = post.kraus.iter().flat_map(|p| ch.kraus.iter().map(move |e| p.matmul(e))).collect();
    Ok(QuantumChannel { dim_in: ch.dim_in, dim_out: post.dim_out, kraus })
}

/// Column-stochastic transition matrix N(y|x); `probs[y][x]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalChannel {
    n_in: usize,
    n_out: usize,
    probs: Vec<Vec<f64>>,
}

impl ClassicalChannel {
    pub fn new(probs: Vec<Vec<f64>>) -> Result<Self> {
        let n_out = probs.len();
        let n_in = probs.first().map(|r| r.len()).unwrap_or(0);
        if n_out == 0 || n_in == 0 || probs.iter().any(|r| r.len() != n_in) {
            return Err(Error::ShapeMismatch("transition matrix must be a non-empty rectangle".into()));
        }
        if probs.iter().flatten().any(|&p| !(p >= 0.0) || !p.is_finite()) {
            return Err(Error::InvalidInput("transition probabilities must be finite and non-negative".into()));
        }
        for x in 0..n_in {
            let total: f64 = probs.iter().map(|r| r[x]).sum();
            if (total - 1.0).abs() > 1e-12 {
                return Err(Error::InvalidInput(format!("column {x} sums to {total}")));
            }
        }
        Ok(Self { n_in, n_out, probs })
    }

    /// N(y|x) = [y = f(x)]
    pub fn deterministic(n_out: usize, f: &[usize]) -> Result<Self> {
        let probs = (0..n_out).map(|y| f.iter().map(|&fx| if fx == y { 1.0 } else { 0.0 }).collect()).collect();
        Self::new(probs)
    }

    pub fn binary_symmetric(p: f64) -> Result<Self> {
        Self::new(vec![vec![1.0 - p, p], vec![p, 1.0 - p]])
    }

    /// Sends a vertex to a uniformly random incident edge; an isolated
    /// vertex gets a private output symbol. Outputs are the edges in
    /// `g.edges()` order followed by the private symbols.
    pub fn from_graph(g: &Graph) -> Self {
        let n = g.n();
        let edges = g.edges();
        let isolated: Vec<usize> = (0..n).filter(|&v| g.degree(v) == 0).collect();
        let n_out = edges.len() + isolated.len();
        let mut probs = vec![vec![0.0; n]; n_out.max(1)];
        for v in 0..n {
            let deg = g.degree(v);
            if deg == 0 {
                let k = isolated.iter().position(|&u| u == v).unwrap();
                probs[edges.len() + k][v] = 1.0;
            } else {
                for (k, &(a, b)) in edges.iter().enumerate() {
                    if a == v || b == v {
                        probs[k][v] = 1.0 / deg as f64;
                    }
                }
            }
        }
        Self { n_in: n, n_out: n_out.max(1), probs }
    }

    pub fn n_in(&self) -> usize {
        self.n_in
    }

    pub fn n_out(&self) -> usize {
        self.n_out
    }

    pub fn probs(&self) -> &[Vec<f64>] {
        &self.probs
    }

    /// Inputs x ≠ x' are adjacent when some output has positive
    /// probability under both.
    pub fn confusability_graph(&self) -> Graph {
        Graph::from_fn(self.n_in, |a, b| self.probs.iter().any(|r| r[a] > 0.0 && r[b] > 0.0))
    }

    /// Kraus operators √N(y|x) |y⟩⟨x| over pairs with N(y|x) > 0.
    pub fn to_quantum(&self) -> QuantumChannel {
        let mut kraus = Vec::new();
        for (y, row) in self.probs.iter().enumerate() {
            for (x, &p) in row.iter().enumerate() {
                if p > 0.0 {
                    kraus.push(ComplexMatrix::unit(self.n_out, self.n_in, y, x).scale_real(p.sqrt()));
                }
            }
        }
        QuantumChannel { dim_in: self.n_in, dim_out: self.n_out, kraus }
    }
}
