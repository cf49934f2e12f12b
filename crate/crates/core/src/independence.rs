//! Independence numbers of non-commutative graphs. Vectors φ₁..φ_N form an
//! independent set of S when they are orthonormal and |φ_m⟩⟨φ_m'| ∈ S⊥ for
//! all m ≠ m'. Exact values are out of reach in general, so this module
//! verifies candidates, searches for them heuristically, and collects the
//! certified upper bounds.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::{alpha_brute_capped, Graph, ALPHA_MAX_VERTICES};
use crate::matrix::{polar_isometry, ComplexMatrix, NUMERIC_TOL, ZERO};
use crate::par;
use crate::random::{random_isometry, seeded};
use crate::sdp::SolveOptions;
use crate::space::OperatorSpace;
use crate::theta::theta_tilde;

/// Tolerance a search result must pass before it is returned.
pub const SEARCH_VERIFY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct IndependentSetCandidate {
    pub vectors: Vec<Vec<Complex64>>,
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Verification {
    pub ok: bool,
    /// max over m ≠ m' of ‖Π_S(|φ_m⟩⟨φ_m'|)‖_HS
    pub residual: f64,
    /// max |⟨φ_m|φ_m'⟩ − δ_mm'|
    pub orthonormality: f64,
}

pub fn verify_independent_set(s: &OperatorSpace, vectors: &[Vec<Complex64>], tol: f64) -> Result<Verification> {
    let d = s.ambient_dim();
    if let Some(v) = vectors.iter().find(|v| v.len() != d) {
        return Err(Error::DimensionMismatch(format!("vector of length {} in dimension {d}", v.len())));
    }
    let mut orthonormality: f64 = 0.0;
    let mut residual: f64 = 0.0;
    for (a, u) in vectors.iter().enumerate() {
        for (b, v) in vectors.iter().enumerate() {
            let ip: Complex64 = u.iter().zip(v).map(|(x, y)| x.conj() * y).sum();
            let target = if a == b { 1.0 } else { 0.0 };
            orthonormality = orthonormality.max((ip - target).norm());
            if a != b {
                residual = residual.max(s.project(&ComplexMatrix::outer(u, v)).hs_norm());
            }
        }
    }
    Ok(Verification { ok: residual <= tol && orthonormality <= tol, residual, orthonormality })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    pub restarts: usize,
    pub iters: usize,
    /// Initial step; halved on rejected steps, grown by 1.2 on accepted ones.
    pub step: f64,
    pub seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { restarts: 50, iters: 200, step: 0.1, seed: 0 }
    }
}

/// Searches for `target` independent vectors by minimizing
/// f = Σ_{m≠m'} ‖Π_S(|φ_m⟩⟨φ_m'|)‖² over orthonormal frames: gradient steps
/// followed by polar re-orthonormalization. Only candidates that pass
/// `verify_independent_set` at 1e-8 are returned; `None` proves nothing.
pub fn alpha_lower_search(
    s: &OperatorSpace,
    target: usize,
    opts: &SearchOptions,
) -> Result<Option<IndependentSetCandidate>> {
    s.require_nc_graph()?;
    let d = s.ambient_dim();
    if target == 0 || target > d {
        return Err(Error::InvalidInput(format!("target {target} outside 1..={d}")));
    }
    let basis = s.basis().to_vec();
    let adjoints: Vec<ComplexMatrix> = basis.iter().map(|f| f.adjoint()).collect();
    let seeds: Vec<u64> = (0..opts.restarts.max(1) as u64).map(|r| opts.seed.wrapping_add(r)).collect();
    let found = par::map(&seeds, |&seed| {
        let mut rng = seeded(seed);
        let frame = descend(&basis, &adjoints, random_isometry(&mut rng, d, target), opts);
        let vectors: Vec<Vec<Complex64>> = (0..target).map(|m| frame.column(m)).collect();
        let v = verify_independent_set(s, &vectors, SEARCH_VERIFY_TOL).ok()?;
        v.ok.then(|| IndependentSetCandidate { vectors, residual: v.residual.max(v.orthonormality) })
    });
    Ok(found.into_iter().flatten().next())
}

fn penalty(basis: &[ComplexMatrix], frame: &ComplexMatrix) -> f64 {
    let n = frame.cols();
    let cols: Vec<Vec<Complex64>> = (0..n).map(|m| frame.column(m)).collect();
    let mut f = 0.0;
    for fk in basis {
        let images: Vec<Vec<Complex64>> = cols.iter().map(|v| fk.apply(v)).collect();
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    let g: Complex64 = cols[a].iter().zip(&images[b]).map(|(x, y)| x.conj() * y).sum();
                    f += g.norm_sqr();
                }
            }
        }
    }
    f
}

/// ∂f/∂φ̄_m = Σ_k Σ_{m'≠m} [ conj(φ_m†F_kφ_m') F_kφ_m' + (φ_m'†F_kφ_m) F_k†φ_m' ]
fn gradient(basis: &[ComplexMatrix], adjoints: &[ComplexMatrix], frame: &ComplexMatrix) -> ComplexMatrix {
    let (d, n) = frame.shape();
    let cols: Vec<Vec<Complex64>> = (0..n).map(|m| frame.column(m)).collect();
    let mut grad = ComplexMatrix::zeros(d, n);
    for (fk, fkd) in basis.iter().zip(adjoints) {
        let img: Vec<Vec<Complex64>> = cols.iter().map(|v| fk.apply(v)).collect();
        let img_d: Vec<Vec<Complex64>> = cols.iter().map(|v| fkd.apply(v)).collect();
        for m in 0..n {
            for mp in 0..n {
                if m == mp {
                    continue;
                }
                let g: Complex64 = cols[m].iter().zip(&img[mp]).map(|(x, y)| x.conj() * y).sum();
                let h: Complex64 = cols[mp].iter().zip(&img[m]).map(|(x, y)| x.conj() * y).sum();
                for i in 0..d {
                    grad[(i, m)] += g.conj() * img[mp][i] + h * img_d[mp][i];
                }
            }
        }
    }
    grad
}

fn descend(basis: &[ComplexMatrix], adjoints: &[ComplexMatrix], mut frame: ComplexMatrix, opts: &SearchOptions) -> ComplexMatrix {
    let mut f = penalty(basis, &frame);
    let mut step = opts.step;
    for _ in 0..opts.iters {
        if f < 1e-24 {
            break;
        }
        let g = gradient(basis, adjoints, &frame);
        let mut trial = frame.clone();
        trial.axpy(Complex64::new(-step, 0.0), &g);
        let Some(trial) = polar_isometry(&trial) else {
            step *= 0.5;
            continue;
        };
        let ft = penalty(basis, &trial);
        if ft < f {
            frame = trial;
            f = ft;
            step = (step * 1.2).min(10.0);
        } else {
            step *= 0.5;
            if step < 1e-12 {
                break;
            }
        }
    }
    frame
}

/// Largest k with k(k−1) ≤ dim S⊥, capped at d.
pub fn pair_dim_upper(s: &OperatorSpace) -> usize {
    let perp = s.ambient_dim() * s.ambient_dim() - s.dim();
    let mut k = 1;
    while (k + 1) * k <= perp {
        k += 1;
    }
    k.min(s.ambient_dim())
}

/// 1 + dim S⊥
pub fn alpha_hat_upper(s: &OperatorSpace) -> usize {
    1 + s.ambient_dim() * s.ambient_dim() - s.dim()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KlCheck {
    pub ok: bool,
    pub code_dim: usize,
    /// max over basis elements F of ‖PFP − λ_F P‖_HS
    pub residual: f64,
}

/// Knill-Laflamme condition PFP = λ_F P for every basis element F of S.
pub fn verify_kl_projector(s: &OperatorSpace, p: &ComplexMatrix, tol: f64) -> Result<KlCheck> {
    let d = s.ambient_dim();
    if p.shape() != (d, d) {
        return Err(Error::DimensionMismatch(format!("projector must be {d}x{d}")));
    }
    let defect = (&p.matmul(p) - p).hs_norm().max((p - &p.adjoint()).hs_norm());
    if defect > tol.max(NUMERIC_TOL) {
        return Err(Error::NotProjector { residual: defect });
    }
    let tr = p.trace().re;
    let code_dim = tr.round().max(0.0) as usize;
    if code_dim == 0 {
        return Ok(KlCheck { ok: true, code_dim, residual: 0.0 });
    }
    let mut residual: f64 = 0.0;
    for f in s.basis() {
        let pfp = p.matmul(f).matmul(p);
        let lambda = pfp.trace() / tr;
        residual = residual.max((&pfp - &p.scale(lambda)).hs_norm());
    }
    Ok(KlCheck { ok: residual <= tol, code_dim, residual })
}

/// Best independent set found: exact via `alpha_brute` for spaces spanned
/// by matrix units, otherwise by increasing-target search.
pub fn best_alpha_lower(s: &OperatorSpace, opts: &SearchOptions) -> Result<(usize, Vec<Vec<Complex64>>)> {
    s.require_nc_graph()?;
    let d = s.ambient_dim();
    if let Some(g) = Graph::from_operator_space(s).filter(|g| g.n() <= ALPHA_MAX_VERTICES) {
        let (a, set) = alpha_brute_capped(&g, ALPHA_MAX_VERTICES)?;
        let vectors = set
            .iter()
            .map(|&v| (0..d).map(|i| if i == v { Complex64::new(1.0, 0.0) } else { ZERO }).collect())
            .collect();
        return Ok((a, vectors));
    }
    let mut e0 = vec![ZERO; d];
    e0[0] = Complex64::new(1.0, 0.0);
    let mut best = (1, vec![e0]);
    let cap = pair_dim_upper(s);
    for target in 2..=cap {
        match alpha_lower_search(s, target, opts)? {
            Some(c) => best = (target, c.vectors),
            None => break,
        }
    }
    Ok(best)
}

#[derive(Debug, Clone)]
pub struct BoundsReport {
    pub alpha_lower: usize,
    pub witness: Vec<Vec<Complex64>>,
    /// Exact α when S is a classical graph space.
    pub alpha_exact: Option<usize>,
    pub theta_tilde_upper: f64,
    pub pair_dim_upper: usize,
    pub alpha_hat_upper: usize,
    pub ambient_upper: usize,
    /// min of ⌊ϑ̃ + 1e-6⌋, the pair bound and d
    pub alpha_upper: usize,
    /// min of ⌊ϑ̃ + 1e-6⌋ and 1 + dim S⊥, bounding the entanglement-assisted α̃
    pub alpha_tilde_upper: usize,
}

pub fn bounds(s: &OperatorSpace, solve: &SolveOptions, search: &SearchOptions) -> Result<BoundsReport> {
    s.require_nc_graph()?;
    let d = s.ambient_dim();
    let theta = theta_tilde(s, solve)?.value;
    let theta_floor = (theta + 1e-6).floor().max(0.0) as usize;
    let pair = pair_dim_upper(s);
    let hat = alpha_hat_upper(s);
    let (alpha_lower, witness) = best_alpha_lower(s, search)?;
    let alpha_exact = Graph::from_operator_space(s).map(|_| alpha_lower);
    Ok(BoundsReport {
        alpha_lower,
        witness,
        alpha_exact,
        theta_tilde_upper: theta,
        pair_dim_upper: pair,
        alpha_hat_upper: hat,
        ambient_upper: d,
        alpha_upper: theta_floor.min(pair).min(d).min(hat),
        alpha_tilde_upper: theta_floor.min(hat),
    })
}

/// Random space in L(C^d) containing 𝟙 and admitting the planted
/// independent pair (|0⟩, |1⟩): random Hermitian directions orthogonal to
/// |0⟩⟨1| and |1⟩⟨0|.
pub fn planted_pair_space(d: usize, dim: usize, seed: u64) -> Result<OperatorSpace> {
    if d < 2 || dim == 0 || dim > d * d - 2 {
        return Err(Error::Infeasible(format!("no planted space of dimension {dim} in L(C^{d})")));
    }
    let mut rng = seeded(seed);
    let mut mats = vec![ComplexMatrix::identity(d)];
    let mut s = OperatorSpace::span(&mats, NUMERIC_TOL)?;
    let mut guard = 0;
    while s.dim() < dim && guard < 1000 {
        guard += 1;
        let mut h = crate::random::random_hermitian(&mut rng, d);
        h[(0, 1)] = ZERO;
        h[(1, 0)] = ZERO;
        mats.push(h);
        s = OperatorSpace::span(&mats, NUMERIC_TOL)?;
    }
    Ok(s)
}
