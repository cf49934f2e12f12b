//! Lovász functions: the quantum ϑ̃(S) through its two SDPs with extension
//! dimension |A'| = |A|, the classical ϑ(G), a certified lower bound on the
//! unextended ϑ(S), and the identity-channel witness.
//!
//! Both ϑ̃ programs use the unnormalized |Φ⟩ = Σᵢ|i⟩|i⟩ on A⊗A'.
//!
//!   primal: max ⟨Φ|(𝟙⊗ρ + T')|Φ⟩ over ρ ⪰ 0, tr ρ = 1, T' ∈ S⊥⊗L(A'),
//!           𝟙⊗ρ + T' ⪰ 0
//!   dual:   min ‖tr_A Y‖ over Y ∈ S⊗L(A'), Y ⪰ Φ
//!
//! When S is closed under entrywise conjugation both programs may be
//! restricted to real matrices without changing the optimum (average a
//! solution with its conjugate), which halves the block sizes.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::{
    eigh, kron, max_entangled, operator_norm, partial_trace, ComplexMatrix, TraceOut, ZERO,
};
use crate::random::{random_unit_vector, seeded};
use crate::sdp::{solve, LmiBlock, LmiProblem, LmiSolution, Sense, SolveOptions, SolveStatus, SparseSym};
use crate::space::OperatorSpace;

/// Relative disagreement between the two sides above which `theta_tilde`
/// fails.
pub const THETA_GAP_TOL: f64 = 1e-4;

type Entries = Vec<(usize, usize, Complex64)>;

#[derive(Debug, Clone)]
pub enum Witness {
    /// Y ∈ S⊗L(A') with Y ⪰ Φ; the value is ‖tr_A Y‖.
    Dual { y: ComplexMatrix },
    /// ρ and T' with 𝟙⊗ρ + T' ⪰ 0.
    Primal { rho: ComplexMatrix, t_prime: ComplexMatrix },
    /// Y supported on the diagonal and the edges with Y ⪰ J.
    Classical { y: ComplexMatrix },
}

#[derive(Debug, Clone, Default)]
pub struct SolverStats {
    pub primal_iterations: Option<usize>,
    pub dual_iterations: Option<usize>,
    pub primal_vars: usize,
    pub dual_vars: usize,
    /// Whether the programs were restricted to real matrices.
    pub real: bool,
}

#[derive(Debug, Clone)]
pub struct ThetaResult {
    /// The dual value when the dual was solved, else the primal value.
    pub value: f64,
    pub primal: Option<f64>,
    pub dual: Option<f64>,
    pub gap: Option<f64>,
    pub dual_witness: Option<Witness>,
    pub primal_witness: Option<Witness>,
    pub stats: SolverStats,
}

impl ThetaResult {
    fn trivial(v: f64) -> Self {
        Self {
            value: v,
            primal: Some(v),
            dual: Some(v),
            gap: Some(0.0),
            dual_witness: None,
            primal_witness: None,
            stats: SolverStats::default(),
        }
    }

    fn combine(p: ThetaResult, d: ThetaResult) -> Result<Self> {
        let (pv, dv) = (p.value, d.value);
        let gap = (pv - dv).abs();
        if gap > THETA_GAP_TOL * (1.0 + dv.abs()) {
            return Err(Error::GapTooLarge { primal: pv, dual: dv });
        }
        Ok(Self {
            value: dv,
            primal: Some(pv),
            dual: Some(dv),
            gap: Some(gap),
            dual_witness: d.dual_witness,
            primal_witness: p.primal_witness,
            stats: SolverStats {
                primal_iterations: p.stats.primal_iterations,
                dual_iterations: d.stats.dual_iterations,
                primal_vars: p.stats.primal_vars,
                dual_vars: d.stats.dual_vars,
                real: p.stats.real && d.stats.real,
            },
        })
    }
}

/// ϑ̃(S): solves both programs, checks they agree to `THETA_GAP_TOL`, and
/// reports the dual value.
pub fn theta_tilde(s: &OperatorSpace, opts: &SolveOptions) -> Result<ThetaResult> {
    s.require_nc_graph()?;
    if s.ambient_dim() == 1 {
        return Ok(ThetaResult::trivial(1.0));
    }
    let p = theta_tilde_primal(s, opts)?;
    let d = theta_tilde_dual(s, opts)?;
    ThetaResult::combine(p, d)
}

/// min ‖tr_A Y‖ over Y ∈ S⊗L(A'), Y ⪰ Φ. The reported value is certified:
/// Y is shifted by a multiple of 𝟙 (which lies in S⊗L(A')) until Y ⪰ Φ
/// holds exactly in floating point eigenvalues, so it is an upper bound on
/// ϑ̃ whatever the solver accuracy.
pub fn theta_tilde_dual(s: &OperatorSpace, opts: &SolveOptions) -> Result<ThetaResult> {
    s.require_nc_graph()?;
    let d = s.ambient_dim();
    if d == 1 {
        return Ok(ThetaResult::trivial(1.0));
    }
    let big = d * d;
    let (p, terms, real) = tilde_dual_program(s)?;
    let sol = require_optimal(solve(&p, opts)?)?;
    let m = p.num_vars;
    let (_, phi) = max_entangled(d);

    let mut y = assemble(&terms, &sol.y[1..], big);
    let shift = (-eigh(&(&y - &phi))?.min()).max(0.0);
    if shift > 0.0 {
        y = &y + &ComplexMatrix::identity(big).scale_real(shift);
    }
    let value = operator_norm(&partial_trace(&y, d, d, TraceOut::A)?);
    Ok(ThetaResult {
        value,
        primal: None,
        dual: Some(value),
        gap: None,
        dual_witness: Some(Witness::Dual { y }),
        primal_witness: None,
        stats: SolverStats { dual_iterations: Some(sol.iterations), dual_vars: m, real, ..Default::default() },
    })
}

/// max ⟨Φ|(𝟙⊗ρ + T')|Φ⟩ with ρ = 𝟙/d + (traceless part). The reported value
/// is certified: the solver point is mixed with the interior point
/// (ρ, T') = (𝟙/d, 0) until both blocks are PSD, so it is a lower bound
/// on ϑ̃.
pub fn theta_tilde_primal(s: &OperatorSpace, opts: &SolveOptions) -> Result<ThetaResult> {
    s.require_nc_graph()?;
    let d = s.ambient_dim();
    if d == 1 {
        return Ok(ThetaResult::trivial(1.0));
    }
    let big = d * d;
    let (p, rho_basis, terms, real) = tilde_primal_program(s)?;
    let (nr, m) = (rho_basis.len(), p.num_vars);
    let inv_d = 1.0 / d as f64;
    let sol = require_optimal(solve(&p, opts)?)?;

    let rho = {
        let mut r = ComplexMatrix::identity(d).scale_real(inv_d);
        for (k, e) in rho_basis.iter().enumerate() {
            add_entries(&mut r, e, sol.y[k]);
        }
        r
    };
    let t_prime = assemble(&terms, &sol.y[nr..], big);
    let raw = 1.0 + terms.iter().enumerate().map(|(k, t)| phi_entry(&t.full, d) * sol.y[nr + k]).sum::<f64>();
    let lam = eigh(&rho)?.min().min(eigh(&(&kron(&ComplexMatrix::identity(d), &rho)? + &t_prime))?.min());
    let (value, rho, t_prime) = if lam < 0.0 {
        let eps = -lam / (inv_d - lam);
        let rho = &rho.scale_real(1.0 - eps) + &ComplexMatrix::identity(d).scale_real(eps * inv_d);
        ((1.0 - eps) * raw + eps, rho, t_prime.scale_real(1.0 - eps))
    } else {
        (raw, rho, t_prime)
    };
    Ok(ThetaResult {
        value,
        primal: Some(value),
        dual: None,
        gap: None,
        dual_witness: None,
        primal_witness: Some(Witness::Primal { rho, t_prime }),
        stats: SolverStats { primal_iterations: Some(sol.iterations), primal_vars: m, real, ..Default::default() },
    })
}

/// The ϑ̃ dual as an LMI: variables (t, coefficients of Y).
fn tilde_dual_program(s: &OperatorSpace) -> Result<(LmiProblem, Vec<Term>, bool)> {
    let d = s.ambient_dim();
    let big = d * d;
    let (terms, real) = tensor_terms(s)?;
    let n1 = if real { big } else { 2 * big };
    let n2 = if real { d } else { 2 * d };
    let m = 1 + terms.len();

    let mut objective = vec![0.0; m];
    objective[0] = 1.0;
    let mut p = LmiProblem::new(objective, Sense::Minimize);
    let (_, phi) = max_entangled(d);
    let mut b1 = LmiBlock::new(n1, m);
    b1.f0 = embed(&sparse(&phi.scale_real(-1.0)), big, real);
    let mut b2 = LmiBlock::new(n2, m);
    b2.coeffs[0] = SparseSym::identity(n2);
    for (k, t) in terms.iter().enumerate() {
        b1.coeffs[k + 1] = embed(&t.full, big, real);
        if t.trace_first != 0.0 {
            let ptr: Entries = t.second.iter().map(|&(i, j, z)| (i, j, -z * t.trace_first)).collect();
            b2.coeffs[k + 1] = embed(&ptr, d, real);
        }
    }
    p.add_block(b1)?;
    p.add_block(b2)?;
    Ok((p, terms, real))
}

/// The ϑ̃ primal as an LMI: variables (traceless part of ρ, coefficients
/// of T').
fn tilde_primal_program(s: &OperatorSpace) -> Result<(LmiProblem, Vec<Entries>, Vec<Term>, bool)> {
    let d = s.ambient_dim();
    let big = d * d;
    let comp = s.orth_complement();
    let (terms, real) = if comp.dim() == 0 {
        (Vec::new(), s.conjugation_closed())
    } else {
        tensor_terms_of(&comp, s.conjugation_closed())?
    };
    let rho_basis = traceless_basis(d, real);
    let nr = rho_basis.len();
    let m = nr + terms.len();
    let n1 = if real { d } else { 2 * d };
    let n2 = if real { big } else { 2 * big };

    let mut objective = vec![0.0; m];
    for (k, t) in terms.iter().enumerate() {
        objective[nr + k] = phi_entry(&t.full, d);
    }
    let mut p = LmiProblem::new(objective, Sense::Maximize);
    let inv_d = 1.0 / d as f64;
    let mut b1 = LmiBlock::new(n1, m);
    b1.f0 = SparseSym::identity(n1).scaled(inv_d);
    let mut b2 = LmiBlock::new(n2, m);
    b2.f0 = SparseSym::identity(n2).scaled(inv_d);
    let id_entries: Entries = (0..d).map(|i| (i, i, Complex64::new(1.0, 0.0))).collect();
    for (k, r) in rho_basis.iter().enumerate() {
        b1.coeffs[k] = embed(r, d, real);
        b2.coeffs[k] = embed(&kron_entries(&id_entries, r, d), big, real);
    }
    for (k, t) in terms.iter().enumerate() {
        b2.coeffs[nr + k] = embed(&t.full, big, real);
    }
    p.add_block(b1)?;
    p.add_block(b2)?;
    Ok((p, rho_basis, terms, real))
}

/// ⟨Φ|X|Φ⟩ = Σ_ij X_{ii,jj}
fn phi_entry(e: &Entries, d: usize) -> f64 {
    e.iter().filter(|&&(r, c, _)| r % (d + 1) == 0 && c % (d + 1) == 0).map(|t| t.2.re).sum()
}

/// The two ϑ̃ programs (primal, dual) exactly as `theta_tilde` solves them,
/// for independent validation.
pub fn theta_tilde_programs(s: &OperatorSpace) -> Result<(LmiProblem, LmiProblem)> {
    s.require_nc_graph()?;
    if s.ambient_dim() < 2 {
        return Err(Error::InvalidInput("ϑ̃ of a one-dimensional space is solved without an SDP".into()));
    }
    Ok((tilde_primal_program(s)?.0, tilde_dual_program(s)?.0))
}

/// Lovász ϑ(G) as min max_x Y_xx over Y supported on the diagonal and the
/// edges with Y ⪰ J, cross-checked against max ⟨J, B⟩ over B ⪰ 0, tr B = 1,
/// B vanishing on edges.
pub fn theta_classical(g: &Graph, opts: &SolveOptions) -> Result<ThetaResult> {
    let n = g.n();
    if n <= 1 {
        return Ok(ThetaResult::trivial(n as f64));
    }
    let p = theta_classical_primal(g, opts)?;
    let d = theta_classical_dual(g, opts)?;
    ThetaResult::combine(p, d)
}

fn theta_classical_dual(g: &Graph, opts: &SolveOptions) -> Result<ThetaResult> {
    let n = g.n();
    let edges = g.edges();
    let p = classical_dual_program(g)?;
    let m = p.num_vars;
    let sol = require_optimal(solve(&p, opts)?)?;

    let mut y = ComplexMatrix::zeros(n, n);
    for x in 0..n {
        y[(x, x)] = Complex64::new(sol.y[1 + x], 0.0);
    }
    for (k, &(a, b)) in edges.iter().enumerate() {
        y[(a, b)] = Complex64::new(sol.y[1 + n + k], 0.0);
        y[(b, a)] = y[(a, b)];
    }
    let j = ComplexMatrix::from_fn(n, n, |_, _| Complex64::new(1.0, 0.0));
    let shift = (-eigh(&(&y - &j))?.min()).max(0.0);
    for x in 0..n {
        y[(x, x)] += shift;
    }
    let value = (0..n).map(|x| y[(x, x)].re).fold(f64::NEG_INFINITY, f64::max);
    Ok(ThetaResult {
        value,
        primal: None,
        dual: Some(value),
        gap: None,
        dual_witness: Some(Witness::Classical { y }),
        primal_witness: None,
        stats: SolverStats { dual_iterations: Some(sol.iterations), dual_vars: m, real: true, ..Default::default() },
    })
}

fn theta_classical_primal(g: &Graph, opts: &SolveOptions) -> Result<ThetaResult> {
    let n = g.n();
    let (p, nd) = classical_primal_program(g)?;
    let m = p.num_vars;
    let s2 = std::f64::consts::SQRT_2;
    let sol = require_optimal(solve(&p, opts)?)?;
    let bm = p.blocks[0].evaluate(&sol.y);
    let raw = 1.0 + sol.y[nd..].iter().map(|v| s2 * v).sum::<f64>();
    let lam = bm.min_eigenvalue();
    let inv_n = 1.0 / n as f64;
    let value = if lam < 0.0 {
        let eps = -lam / (inv_n - lam);
        (1.0 - eps) * raw + eps
    } else {
        raw
    };
    Ok(ThetaResult {
        value,
        primal: Some(value),
        dual: None,
        gap: None,
        dual_witness: None,
        primal_witness: None,
        stats: SolverStats { primal_iterations: Some(sol.iterations), primal_vars: m, real: true, ..Default::default() },
    })
}

/// Variables (t, Y_xx, Y_e); blocks Y − J ⪰ 0 and t − Y_xx ≥ 0.
fn classical_dual_program(g: &Graph) -> Result<LmiProblem> {
    let n = g.n();
    let edges = g.edges();
    let m = 1 + n + edges.len();
    let mut objective = vec![0.0; m];
    objective[0] = 1.0;
    let mut p = LmiProblem::new(objective, Sense::Minimize);
    let mut psd = LmiBlock::new(n, m);
    psd.f0 = SparseSym::from_triples(n, (0..n).flat_map(|a| (a..n).map(move |b| (a, b, -1.0))));
    let mut diag = LmiBlock::new(n, m);
    diag.coeffs[0] = SparseSym::identity(n);
    for x in 0..n {
        psd.coeffs[1 + x] = SparseSym::from_triples(n, [(x, x, 1.0)]);
        diag.coeffs[1 + x] = SparseSym::from_triples(n, [(x, x, -1.0)]);
    }
    for (k, &(a, b)) in edges.iter().enumerate() {
        psd.coeffs[1 + n + k] = SparseSym::from_triples(n, [(a, b, 1.0)]);
    }
    p.add_block(psd)?;
    p.add_block(diag)?;
    Ok(p)
}

/// B = 𝟙/n + (traceless diagonal) + (non-edge entries), maximizing ⟨J, B⟩.
/// Returns the program and the number of diagonal variables.
fn classical_primal_program(g: &Graph) -> Result<(LmiProblem, usize)> {
    let n = g.n();
    let diag = traceless_diagonal(n);
    let non_edges: Vec<(usize, usize)> =
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| !g.has_edge(a, b)).collect();
    let m = diag.len() + non_edges.len();
    let s2 = std::f64::consts::SQRT_2;
    let objective: Vec<f64> = (0..m).map(|k| if k < diag.len() { 0.0 } else { s2 }).collect();
    let mut p = LmiProblem::new(objective, Sense::Maximize);
    let mut b = LmiBlock::new(n, m);
    b.f0 = SparseSym::identity(n).scaled(1.0 / n as f64);
    for (k, e) in diag.iter().enumerate() {
        b.coeffs[k] = SparseSym::from_triples(n, e.iter().map(|&(i, _, z)| (i, i, z.re)));
    }
    for (k, &(a, c)) in non_edges.iter().enumerate() {
        b.coeffs[diag.len() + k] = SparseSym::from_triples(n, [(a, c, 1.0 / s2)]);
    }
    p.add_block(b)?;
    Ok((p, diag.len()))
}

/// The two classical ϑ programs (primal, dual) as `theta_classical` solves
/// them.
pub fn theta_classical_programs(g: &Graph) -> Result<(LmiProblem, LmiProblem)> {
    if g.n() < 2 {
        return Err(Error::InvalidInput("ϑ of a graph with fewer than two vertices is solved without an SDP".into()));
    }
    Ok((classical_primal_program(g)?.0, classical_dual_program(g)?))
}

/// Certified lower bound on ϑ(S) = max{‖𝟙+T‖ : T ∈ S⊥, 𝟙+T ⪰ 0} by
/// alternating between the linear program max ⟨φ|𝟙+T|φ⟩ and φ := top
/// eigenvector of 𝟙+T. Seeds: |0⟩, the uniform superposition, the
/// normalized Φ when d is a perfect square, then random unit vectors, for
/// `restarts` seeds in total.
pub fn theta_naive_lower(s: &OperatorSpace, restarts: usize, iters: usize, seed: u64) -> Result<f64> {
    s.require_nc_graph()?;
    let d = s.ambient_dim();
    let comp = s.orth_complement();
    if comp.dim() == 0 || d == 1 {
        return Ok(1.0);
    }
    let herm = comp.hermitian_basis()?;
    let gens: Vec<Entries> = herm.iter().map(sparse).collect();
    let mut seeds: Vec<Vec<Complex64>> = Vec::new();
    let mut e0 = vec![ZERO; d];
    e0[0] = Complex64::new(1.0, 0.0);
    seeds.push(e0);
    seeds.push(vec![Complex64::new(1.0 / (d as f64).sqrt(), 0.0); d]);
    let r = (d as f64).sqrt().round() as usize;
    if r * r == d {
        let (v, _) = max_entangled(r);
        seeds.push(v.iter().map(|z| z / (r as f64).sqrt()).collect());
    }
    let mut rng = seeded(seed);
    while seeds.len() < restarts.max(1) {
        seeds.push(random_unit_vector(&mut rng, d));
    }
    seeds.truncate(restarts.max(1));

    let opts = SolveOptions::default();
    let mut best = 1.0f64;
    for mut phi in seeds {
        let mut last = f64::NEG_INFINITY;
        for _ in 0..iters.max(1) {
            let objective: Vec<f64> = herm.iter().map(|h| h.sandwich(&phi, &phi).re).collect();
            let mut p = LmiProblem::new(objective, Sense::Maximize);
            let mut b = LmiBlock::new(2 * d, gens.len());
            b.f0 = SparseSym::identity(2 * d);
            for (k, gk) in gens.iter().enumerate() {
                b.coeffs[k] = embed(gk, d, false);
            }
            p.add_block(b)?;
            let sol = solve(&p, &opts)?;
            if !sol.y.iter().all(|v| v.is_finite()) {
                break;
            }
            let t = assemble_plain(&gens, &sol.y, d);
            // scale T so that 𝟙 + sT ⪰ 0 holds for the computed spectrum
            let tmin = eigh(&t)?.min();
            let scale = if tmin < -1.0 { 1.0 / -tmin } else { 1.0 };
            let m = &ComplexMatrix::identity(d) + &t.scale_real(scale);
            let eig = eigh(&m)?;
            let value = eig.max();
            best = best.max(value);
            phi = eig.vector(d - 1);
            if value <= last + 1e-9 {
                break;
            }
            last = value;
        }
    }
    Ok(best)
}

/// T = d²·Φ/d − 𝟙 = d|Φ⟩⟨Φ| − 𝟙, an element of 𝟙⊥⊗L(C^d) with 𝟙 + T ⪰ 0
/// and ‖𝟙 + T‖ = d².
pub fn identity_witness(d: usize) -> ComplexMatrix {
    let (_, phi) = max_entangled(d);
    &phi.scale_real(d as f64) - &ComplexMatrix::identity(d * d)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityWitnessCheck {
    /// ‖tr_A T‖_HS, zero iff T ∈ 𝟙⊥⊗L(C^d).
    pub membership_residual: f64,
    pub min_eig: f64,
    pub norm: f64,
}

pub fn check_identity_witness(d: usize) -> Result<IdentityWitnessCheck> {
    let t = identity_witness(d);
    let one_plus_t = &ComplexMatrix::identity(d * d) + &t;
    let eig = eigh(&one_plus_t)?;
    Ok(IdentityWitnessCheck {
        membership_residual: partial_trace(&t, d, d, TraceOut::A)?.hs_norm(),
        min_eig: eig.min(),
        norm: eig.max(),
    })
}

/// Zero-error capacity bounds in bits. Every asymptotic figure is a bound:
/// log₂ ϑ̃ bounds C₀ and C₀E from above, log₂ α_lower bounds C₀ from below.
#[derive(Debug, Clone)]
pub struct CapacityReport {
    pub theta_tilde: f64,
    pub c0e_upper: f64,
    pub c0_upper: f64,
    pub alpha_lower: usize,
    pub c0_lower: f64,
    /// log₂(1 + dim S⊥). Whether this bounds the capacity from α̂ is
    /// open; it is reported, never used as a bound.
    pub log_one_plus_perp: f64,
}

pub fn capacity_report(s: &OperatorSpace, opts: &SolveOptions) -> Result<CapacityReport> {
    let th = theta_tilde(s, opts)?;
    let (alpha, _) = crate::independence::best_alpha_lower(s, &crate::independence::SearchOptions::default())?;
    // ϑ̃ ≥ 1 for nc-graphs; clamp roundoff below it
    let upper = th.value.max(1.0).log2();
    Ok(CapacityReport {
        theta_tilde: th.value,
        c0e_upper: upper,
        c0_upper: upper,
        alpha_lower: alpha,
        c0_lower: (alpha.max(1) as f64).log2(),
        log_one_plus_perp: ((1 + s.ambient_dim() * s.ambient_dim() - s.dim()) as f64).log2(),
    })
}

fn require_optimal(sol: LmiSolution) -> Result<LmiSolution> {
    if sol.status == SolveStatus::Optimal {
        Ok(sol)
    } else {
        Err(Error::Solver { status: sol.status })
    }
}

/// A Hermitian basis element of X⊗L(A') in sparse form, with the data
/// needed for tr_A: tr(first factor) and the second factor.
struct Term {
    full: Entries,
    trace_first: f64,
    second: Entries,
}

/// Hermitian basis of S⊗L(A'), real when S is conjugation-closed.
fn tensor_terms(s: &OperatorSpace) -> Result<(Vec<Term>, bool)> {
    tensor_terms_of(s, s.conjugation_closed())
}

fn tensor_terms_of(s: &OperatorSpace, real: bool) -> Result<(Vec<Term>, bool)> {
    let d = s.ambient_dim();
    let (sym2, anti2, herm2) = second_factor_bases(d);
    let mut terms = Vec::new();
    let mut push = |h: &ComplexMatrix, ks: &[Entries]| {
        let he = sparse(h);
        let tr = h.trace().re;
        for k in ks {
            terms.push(Term { full: kron_entries(&he, k, d), trace_first: tr, second: k.clone() });
        }
    };
    if real {
        if let Some((sym, anti)) = s.real_split() {
            for h in &sym {
                push(h, &sym2);
            }
            for q in &anti {
                push(q, &anti2);
            }
            return Ok((terms, true));
        }
    }
    for h in &s.hermitian_basis()? {
        push(h, &herm2);
    }
    Ok((terms, false))
}

/// Bases of L(C^d): real symmetric, real antisymmetric, and Hermitian
/// (orthonormal, generalized Gell-Mann style).
fn second_factor_bases(d: usize) -> (Vec<Entries>, Vec<Entries>, Vec<Entries>) {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let one = Complex64::new(1.0, 0.0);
    let mut sym: Vec<Entries> = (0..d).map(|i| vec![(i, i, one)]).collect();
    let mut anti = Vec::new();
    let mut herm_im = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            sym.push(vec![(i, j, Complex64::new(r, 0.0)), (j, i, Complex64::new(r, 0.0))]);
            anti.push(vec![(i, j, Complex64::new(r, 0.0)), (j, i, Complex64::new(-r, 0.0))]);
            herm_im.push(vec![(i, j, Complex64::new(0.0, -r)), (j, i, Complex64::new(0.0, r))]);
        }
    }
    let mut herm = sym.clone();
    herm.extend(herm_im);
    (sym, anti, herm)
}

/// Orthonormal traceless Hermitian basis of L(C^d), real symmetric only when
/// `real`.
fn traceless_basis(d: usize, real: bool) -> Vec<Entries> {
    let (sym, _, herm) = second_factor_bases(d);
    let offdiag = if real { sym[d..].to_vec() } else { herm[d..].to_vec() };
    let mut out = traceless_diagonal(d);
    out.extend(offdiag);
    out
}

/// (Σ_{j<l} E_jj − l·E_ll)/√(l(l+1)) for l = 1..d−1.
fn traceless_diagonal(d: usize) -> Vec<Entries> {
    (1..d)
        .map(|l| {
            let norm = ((l * (l + 1)) as f64).sqrt();
            let mut e: Entries = (0..l).map(|j| (j, j, Complex64::new(1.0 / norm, 0.0))).collect();
            e.push((l, l, Complex64::new(-(l as f64) / norm, 0.0)));
            e
        })
        .collect()
}

fn sparse(m: &ComplexMatrix) -> Entries {
    let cut = 1e-14 * m.max_abs();
    let mut out = Vec::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let z = m[(i, j)];
            if z.norm() > cut && z != ZERO {
                out.push((i, j, z));
            }
        }
    }
    out
}

/// a ⊗ b for a on C^{n_a}, b on C^{db}.
fn kron_entries(a: &Entries, b: &Entries, db: usize) -> Entries {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &(i, j, x) in a {
        for &(k, l, y) in b {
            out.push((i * db + k, j * db + l, x * y));
        }
    }
    out
}

/// Real symmetric LMI coefficient of a Hermitian matrix on C^n: the matrix
/// itself when `real`, otherwise [[Re, −Im], [Im, Re]].
fn embed(e: &Entries, n: usize, real: bool) -> SparseSym {
    let mut t = Vec::with_capacity(if real { e.len() } else { 3 * e.len() });
    for &(r, c, z) in e {
        if r <= c {
            t.push((r, c, z.re));
            if !real {
                t.push((r + n, c + n, z.re));
            }
        }
        if !real && z.im != 0.0 {
            t.push((r, c + n, -z.im));
        }
    }
    SparseSym::from_triples(if real { n } else { 2 * n }, t)
}

fn add_entries(m: &mut ComplexMatrix, e: &Entries, s: f64) {
    for &(i, j, z) in e {
        m[(i, j)] += z * s;
    }
}

fn assemble(terms: &[Term], y: &[f64], n: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n, n);
    for (t, &v) in terms.iter().zip(y) {
        add_entries(&mut m, &t.full, v);
    }
    m.hermitian_part()
}

fn assemble_plain(gens: &[Entries], y: &[f64], n: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n, n);
    for (g, &v) in gens.iter().zip(y) {
        add_entries(&mut m, g, v);
    }
    m.hermitian_part()
}

/// Membership of a dual witness in S⊗L(A'): distance of Y from the span.
pub fn dual_witness_residual(s: &OperatorSpace, y: &ComplexMatrix) -> Result<f64> {
    let d = s.ambient_dim();
    let ext = s.tensor(&OperatorSpace::full(d))?;
    Ok(ext.distance(y) / (1.0 + y.hs_norm()))
}

/// ϑ̃ of an intersection against the product of the parts, for the open
/// question whether ϑ̃(S₁∩S₂) ≤ ϑ̃(S₁)ϑ̃(S₂). Returns
/// (ϑ̃(S₁), ϑ̃(S₂), ϑ̃(S₁∩S₂)). Purely exploratory.
pub fn intersection_experiment(s1: &OperatorSpace, s2: &OperatorSpace, opts: &SolveOptions) -> Result<(f64, f64, f64)> {
    let meet = s1.intersection(s2)?;
    Ok((theta_tilde(s1, opts)?.value, theta_tilde(s2, opts)?.value, theta_tilde(&meet, opts)?.value))
}
