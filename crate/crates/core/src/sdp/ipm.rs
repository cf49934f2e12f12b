//! Infeasible-start primal-dual path following with Nesterov-Todd scaling
//! and Mehrotra predictor-corrector steps.
//!
//! The LMI min cᵀy s.t. F(y) = F₀ + Σ yᵢFᵢ ⪰ 0 is the dual of the standard
//! form SDP
//!
//!   (P) min ⟨F₀, X⟩  s.t. ⟨Fᵢ, X⟩ = cᵢ, X ⪰ 0
//!   (D) max −cᵀy     s.t. F(y) = Z ⪰ 0
//!
//! so the slack Z is F(y) and ⟨F₀, X⟩ bounds −cᵀy from above. Maximization
//! problems are solved with −c.

use crate::error::Result;
use crate::matrix::{cholesky_in_place, cholesky_solve, RealMatrix};
use crate::par;

use super::{validate, LmiProblem, LmiSolution, Sense, SolveOptions, SolveStatus, SparseSym};

const STEP_FRACTION: f64 = 0.98;
const DIVERGENCE: f64 = 1e8;
const REFINE_STEPS: usize = 4;

struct Scaling {
    g: RealMatrix,
    w: RealMatrix,
    d: Vec<f64>,
}

struct Direction {
    dy: Vec<f64>,
    dx_s: Vec<RealMatrix>,
    dz_s: Vec<RealMatrix>,
}

/// Solves the LMI. Structural problems in `p` are errors; numerical
/// outcomes are reported through the solution status.
pub fn solve(p: &LmiProblem, opts: &SolveOptions) -> Result<LmiSolution> {
    p.check()?;
    let sign = match p.sense {
        Sense::Minimize => 1.0,
        Sense::Maximize => -1.0,
    };
    let nb = p.blocks.len();

    // Variables that touch no block are fixed at zero, or make the
    // objective unbounded when they carry cost.
    let mut active = Vec::new();
    let mut unbounded = false;
    for i in 0..p.num_vars {
        if p.blocks.iter().any(|b| !b.coeffs[i].is_empty()) {
            active.push(i);
        } else if p.objective[i] != 0.0 {
            unbounded = true;
        }
    }
    let m = active.len();
    let c: Vec<f64> = active.iter().map(|&i| sign * p.objective[i]).collect();
    let coeff = |b: usize, k: usize| -> &SparseSym { &p.blocks[b].coeffs[active[k]] };
    let block_vars: Vec<Vec<usize>> =
        (0..nb).map(|b| (0..m).filter(|&k| !coeff(b, k).is_empty()).collect()).collect();
    let sizes: Vec<usize> = p.blocks.iter().map(|b| b.size()).collect();
    let total: usize = sizes.iter().sum();

    let expand = |y: &[f64]| -> Vec<f64> {
        let mut full = vec![0.0; p.num_vars];
        for (k, &i) in active.iter().enumerate() {
            full[i] = y[k];
        }
        full
    };

    if unbounded || m == 0 || total == 0 {
        let y = vec![0.0; p.num_vars];
        let v = validate(p, &y)?;
        let status = if unbounded {
            SolveStatus::DualInfeasible
        } else if v.min_eig() < -opts.feas_tol {
            SolveStatus::PrimalInfeasible
        } else {
            SolveStatus::Optimal
        };
        return Ok(LmiSolution {
            value: 0.0,
            bound: 0.0,
            status,
            gap: 0.0,
            iterations: 0,
            min_block_eigs: v.min_block_eigs,
            complementarity: Vec::new(),
            multipliers: sizes.iter().map(|&n| RealMatrix::zeros(n, n)).collect(),
            y,
        });
    }

    // Starting point: y = 0, X = ξI, Z = ηI.
    let mut x: Vec<RealMatrix> = Vec::with_capacity(nb);
    let mut z: Vec<RealMatrix> = Vec::with_capacity(nb);
    for (b, &n) in sizes.iter().enumerate() {
        let nf = n as f64;
        let mut xi = 10.0f64.max(nf.sqrt());
        let mut eta = xi.max(1.0 + p.blocks[b].f0.frobenius());
        for &k in &block_vars[b] {
            let fnorm = coeff(b, k).frobenius();
            xi = xi.max(nf * (1.0 + c[k].abs()) / (1.0 + fnorm));
            eta = eta.max(1.0 + fnorm);
        }
        x.push(RealMatrix::identity(n).scale(xi));
        z.push(RealMatrix::identity(n).scale(eta));
    }
    let mut y = vec![0.0; m];
    let x0_norm = norm_blocks(&x).max(1.0);
    let z0_norm = norm_blocks(&z).max(1.0);
    let c_norm = c.iter().map(|v| v * v).sum::<f64>().sqrt();
    let f0_norm = p.blocks.iter().map(|b| b.f0.frobenius().powi(2)).sum::<f64>().sqrt();

    let mut status = SolveStatus::IterationLimit;
    let mut history = Vec::new();
    let mut iterations = 0;
    let mut pobj = 0.0;
    let mut stalls = 0;

    for iter in 0..=opts.max_iter {
        iterations = iter;
        // Residuals.
        let y_full = expand(&y);
        let fy: Vec<RealMatrix> = p.blocks.iter().map(|b| b.evaluate(&y_full)).collect();
        let rd: Vec<RealMatrix> = (0..nb).map(|b| fy[b].sub(&z[b])).collect();
        let rp: Vec<f64> = (0..m)
            .map(|k| {
                -c[k]
                    + (0..nb)
                        .filter(|&b| !coeff(b, k).is_empty())
                        .map(|b| coeff(b, k).dot_dense(&x[b]))
                        .sum::<f64>()
            })
            .collect();
        pobj = (0..nb).map(|b| p.blocks[b].f0.dot_dense(&x[b])).sum();
        let dobj: f64 = -c.iter().zip(&y).map(|(a, b)| a * b).sum::<f64>();
        let xz: f64 = (0..nb).map(|b| x[b].dot(&z[b])).sum();
        let mu = xz / total as f64;
        let pinf = rp.iter().map(|v| v * v).sum::<f64>().sqrt() / (1.0 + c_norm);
        let dinf = norm_blocks(&rd) / (1.0 + f0_norm);
        let gap = (pobj - dobj).abs() / (1.0 + dobj.abs());
        history.push(xz);

        if pinf <= opts.feas_tol && dinf <= opts.feas_tol && gap <= opts.gap_tol && xz / (1.0 + dobj.abs()) <= opts.gap_tol {
            let min_eig = fy.iter().map(|f| f.min_eigenvalue()).fold(f64::INFINITY, f64::min);
            if min_eig >= -opts.feas_tol {
                status = SolveStatus::Optimal;
                break;
            }
        }
        if norm_blocks(&x) > DIVERGENCE * x0_norm {
            status = SolveStatus::PrimalInfeasible;
            break;
        }
        let ynorm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        if ynorm + norm_blocks(&z) > DIVERGENCE * z0_norm {
            status = SolveStatus::DualInfeasible;
            break;
        }
        if iter == opts.max_iter {
            break;
        }

        let Some(scal) = (0..nb).map(|b| nt_scaling(&x[b], &z[b])).collect::<Option<Vec<_>>>() else {
            status = SolveStatus::NumericalTrouble;
            break;
        };

        // Schur complement M_kl = ⟨F_k, W F_l W⟩, row-parallel.
        let rows: Vec<Vec<(usize, f64)>> = par::map_range(m, |k| {
            let mut row = vec![0.0; m];
            for b in 0..nb {
                let fk = coeff(b, k);
                if fk.is_empty() {
                    continue;
                }
                let wfw = sandwich(&scal[b].w, fk);
                let vars = &block_vars[b];
                let start = vars.partition_point(|&l| l < k);
                for &l in &vars[start..] {
                    row[l] += coeff(b, l).dot_dense(&wfw);
                }
            }
            row.into_iter().enumerate().skip(k).filter(|t| t.1 != 0.0).collect()
        });
        let mut schur = vec![0.0; m * m];
        for (k, row) in rows.into_iter().enumerate() {
            for (l, v) in row {
                schur[k * m + l] = v;
                schur[l * m + k] = v;
            }
        }
        let pristine = schur.clone();
        if cholesky_in_place(&mut schur, m).is_err() {
            // One regularized retry before giving up.
            let diag_max = (0..m).map(|k| pristine[k * m + k]).fold(0.0, f64::max);
            schur = pristine.clone();
            for k in 0..m {
                schur[k * m + k] += 1e-12 * diag_max;
            }
            if cholesky_in_place(&mut schur, m).is_err() {
                status = SolveStatus::NumericalTrouble;
                break;
            }
        }

        // A(W R_d W) enters every right-hand side.
        let wrdw: Vec<RealMatrix> = (0..nb).map(|b| scal[b].w.matmul(&rd[b]).matmul(&scal[b].w)).collect();

        let direction = |rs: &[RealMatrix]| -> Direction {
            let grg: Vec<RealMatrix> = (0..nb).map(|b| scal[b].g.matmul(&rs[b]).matmul_t(&scal[b].g)).collect();
            let mut dy: Vec<f64> = (0..m)
                .map(|k| {
                    let mut r = rp[k];
                    for b in 0..nb {
                        let f = coeff(b, k);
                        if !f.is_empty() {
                            r += f.dot_dense(&grg[b]) - f.dot_dense(&wrdw[b]);
                        }
                    }
                    r
                })
                .collect();
            let rhs = dy.clone();
            cholesky_solve(&schur, m, &mut dy);
            // Iterative refinement against the unfactored matrix while the
            // residual keeps shrinking; A(ΔX) inherits this residual.
            let residual = |dy: &[f64]| -> Vec<f64> {
                par::map_range(m, |k| rhs[k] - pristine[k * m..(k + 1) * m].iter().zip(dy).map(|(a, b)| a * b).sum::<f64>())
            };
            let mut res = residual(&dy);
            let mut res_norm = res.iter().map(|v| v * v).sum::<f64>();
            for _ in 0..REFINE_STEPS {
                cholesky_solve(&schur, m, &mut res);
                let trial: Vec<f64> = dy.iter().zip(&res).map(|(v, r)| v + r).collect();
                let next = residual(&trial);
                let next_norm = next.iter().map(|v| v * v).sum::<f64>();
                if next_norm >= res_norm {
                    break;
                }
                dy = trial;
                res = next;
                res_norm = next_norm;
            }
            let mut dx_s = Vec::with_capacity(nb);
            let mut dz_s = Vec::with_capacity(nb);
            for b in 0..nb {
                // ΔZ = R_d + Σ Δyₖ Fₖ
                let mut dz = rd[b].clone();
                for &k in &block_vars[b] {
                    coeff(b, k).add_to(&mut dz, dy[k]);
                }
                let g = &scal[b].g;
                let dzt = g.transpose().matmul(&dz).matmul(g).symmetrized();
                let dxt = rs[b].sub(&dzt);
                dx_s.push(dxt);
                dz_s.push(dzt);
            }
            Direction { dy, dx_s, dz_s }
        };

        // Predictor.
        let rs_aff: Vec<RealMatrix> = scal.iter().map(|s| RealMatrix::diag(&s.d.iter().map(|v| -v).collect::<Vec<_>>())).collect();
        let aff = direction(&rs_aff);
        let ap = max_step(&scal, &aff.dx_s).min(1.0);
        let ad = max_step(&scal, &aff.dz_s).min(1.0);
        let mu_aff: f64 = (0..nb)
            .map(|b| {
                let d = RealMatrix::diag(&scal[b].d);
                let xa = {
                    let mut t = d.clone();
                    t.axpy(ap, &aff.dx_s[b]);
                    t
                };
                let mut za = d;
                za.axpy(ad, &aff.dz_s[b]);
                xa.dot(&za)
            })
            .sum::<f64>()
            / total as f64;
        let sigma = (mu_aff / mu).clamp(0.0, 1.0).powi(3);

        // Corrector.
        let rs_cor: Vec<RealMatrix> = (0..nb)
            .map(|b| {
                let d = &scal[b].d;
                let n = d.len();
                let xz = aff.dx_s[b].matmul(&aff.dz_s[b]);
                RealMatrix::from_fn(n, n, |i, j| {
                    let mut r = -0.5 * (xz[(i, j)] + xz[(j, i)]);
                    if i == j {
                        r += sigma * mu - d[i] * d[i];
                    }
                    2.0 * r / (d[i] + d[j])
                })
            })
            .collect();
        let dir = direction(&rs_cor);
        let ap = (STEP_FRACTION * max_step(&scal, &dir.dx_s)).min(1.0);
        let ad = (STEP_FRACTION * max_step(&scal, &dir.dz_s)).min(1.0);

        if ap < 1e-10 && ad < 1e-10 {
            stalls += 1;
            if stalls >= 5 {
                status = SolveStatus::NumericalTrouble;
                break;
            }
        } else {
            stalls = 0;
        }

        for b in 0..nb {
            let g = &scal[b].g;
            let dx = g.matmul(&dir.dx_s[b]).matmul_t(g);
            x[b].axpy(ap, &dx);
            x[b] = x[b].symmetrized();
            let mut dz = rd[b].clone();
            for &k in &block_vars[b] {
                coeff(b, k).add_to(&mut dz, dir.dy[k]);
            }
            z[b].axpy(ad, &dz);
            z[b] = z[b].symmetrized();
        }
        for k in 0..m {
            y[k] += ad * dir.dy[k];
        }
    }

    let y_full = expand(&y);
    let v = validate(p, &y_full)?;
    let value = v.objective;
    let bound = -sign * pobj;
    Ok(LmiSolution {
        gap: (value - bound).abs() / (1.0 + value.abs()),
        value,
        bound,
        status,
        iterations,
        min_block_eigs: v.min_block_eigs,
        complementarity: history,
        multipliers: x,
        y: y_full,
    })
}

fn norm_blocks(ms: &[RealMatrix]) -> f64 {
    ms.iter().map(|m| m.frobenius().powi(2)).sum::<f64>().sqrt()
}

/// X = LLᵀ, LᵀZL = QΛQᵀ, G = LQΛ^{-1/4}. Then GᵀZG = G⁻¹XG⁻ᵀ = Λ^{1/2} = D
/// and W = GGᵀ satisfies WZW = X.
fn nt_scaling(x: &RealMatrix, z: &RealMatrix) -> Option<Scaling> {
    let n = x.rows();
    let l = x.cholesky()?;
    let t = l.transpose().matmul(z).matmul(&l).symmetrized();
    let eig = t.sym_eig();
    if !(eig.values.first().copied().unwrap_or(1.0) > 0.0) || eig.values.iter().any(|v| !v.is_finite()) {
        return None;
    }
    let lq = l.matmul(&eig.vectors);
    let g = RealMatrix::from_fn(n, n, |i, j| lq[(i, j)] * eig.values[j].powf(-0.25));
    let w = g.matmul_t(&g).symmetrized();
    let d = eig.values.iter().map(|v| v.sqrt()).collect();
    Some(Scaling { g, w, d })
}

/// W F W for sparse symmetric F.
fn sandwich(w: &RealMatrix, f: &SparseSym) -> RealMatrix {
    let n = w.rows();
    if 2 * f.nnz() > n {
        let fw = {
            let mut t = RealMatrix::zeros(n, n);
            for (i, j, v) in f.entries() {
                let (wi, wj) = (w.row(i).to_vec(), w.row(j).to_vec());
                let ti = t.data_mut();
                for k in 0..n {
                    ti[i * n + k] += v * wj[k];
                }
                if i != j {
                    for k in 0..n {
                        ti[j * n + k] += v * wi[k];
                    }
                }
            }
            t
        };
        return w.matmul(&fw);
    }
    let mut out = RealMatrix::zeros(n, n);
    let data = out.data_mut();
    for (p, q, v) in f.entries() {
        let wp = w.row(p);
        let wq = w.row(q);
        for a in 0..n {
            let row = &mut data[a * n..(a + 1) * n];
            if p == q {
                let s = v * wp[a];
                if s != 0.0 {
                    for (o, &b) in row.iter_mut().zip(wp) {
                        *o += s * b;
                    }
                }
            } else {
                let s1 = v * wp[a];
                let s2 = v * wq[a];
                for k in 0..n {
                    row[k] += s1 * wq[k] + s2 * wp[k];
                }
            }
        }
    }
    out
}

/// Largest α with D + αΔ ⪰ 0 in every block, ∞ if unconstrained.
fn max_step(scal: &[Scaling], delta: &[RealMatrix]) -> f64 {
    let mut alpha = f64::INFINITY;
    for (s, dm) in scal.iter().zip(delta) {
        let n = s.d.len();
        let isq: Vec<f64> = s.d.iter().map(|v| 1.0 / v.sqrt()).collect();
        let scaled = RealMatrix::from_fn(n, n, |i, j| isq[i] * dm[(i, j)] * isq[j]);
        let lmin = scaled.min_eigenvalue();
        if lmin < 0.0 {
            alpha = alpha.min(-1.0 / lmin);
        }
    }
    alpha
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sdp::LmiBlock;

    fn dense_sparse(m: &RealMatrix) -> SparseSym {
        SparseSym::from_dense(m, 0.0)
    }

    /// min t s.t. t𝟙 − A ⪰ 0
    fn lambda_max_problem(a: &RealMatrix) -> LmiProblem {
        let n = a.rows();
        let mut p = LmiProblem::new(vec![1.0], Sense::Minimize);
        let mut b = LmiBlock::new(n, 1);
        b.f0 = dense_sparse(&a.scale(-1.0));
        b.coeffs[0] = SparseSym::identity(n);
        p.add_block(b).unwrap();
        p
    }

    #[test]
    fn two_by_two() {
        let mut p = LmiProblem::new(vec![1.0], Sense::Minimize);
        let mut b = LmiBlock::new(2, 1);
        b.f0 = SparseSym::from_triples(2, [(0, 1, 1.0)]);
        b.coeffs[0] = SparseSym::identity(2);
        p.add_block(b).unwrap();
        let s = solve(&p, &SolveOptions::default()).unwrap();
        assert_eq!(s.status, SolveStatus::Optimal);
        assert!((s.value - 1.0).abs() < 1e-7, "{}", s.value);
    }

    #[test]
    fn lambda_max_small() {
        let a = RealMatrix::from_vec(3, 3, vec![2.0, 1.0, 0.0, 1.0, 2.0, 1.0, 0.0, 1.0, 2.0]);
        let s = solve(&lambda_max_problem(&a), &SolveOptions::default()).unwrap();
        assert_eq!(s.status, SolveStatus::Optimal);
        let expected = 2.0 + 2.0f64.sqrt();
        assert!((s.value - expected).abs() < 1e-7);
        assert!((s.bound - expected).abs() < 1e-7);
    }

    #[test]
    fn maximize_is_negated_minimize() {
        // max y s.t. 1 − y ≥ 0 and y + 3 ≥ 0
        let mut p = LmiProblem::new(vec![1.0], Sense::Maximize);
        let mut b = LmiBlock::new(2, 1);
        b.f0 = SparseSym::from_triples(2, [(0, 0, 1.0), (1, 1, 3.0)]);
        b.coeffs[0] = SparseSym::from_triples(2, [(0, 0, -1.0), (1, 1, 1.0)]);
        p.add_block(b).unwrap();
        let s = solve(&p, &SolveOptions::default()).unwrap();
        assert_eq!(s.status, SolveStatus::Optimal);
        assert!((s.value - 1.0).abs() < 1e-7);
    }

    #[test]
    fn detects_infeasible_lmi() {
        // y ≥ 0 and −1 − y ≥ 0
        let mut p = LmiProblem::new(vec![1.0], Sense::Minimize);
        let mut b = LmiBlock::new(2, 1);
        b.f0 = SparseSym::from_triples(2, [(1, 1, -1.0)]);
        b.coeffs[0] = SparseSym::from_triples(2, [(0, 0, 1.0), (1, 1, -1.0)]);
        p.add_block(b).unwrap();
        let s = solve(&p, &SolveOptions::default()).unwrap();
        assert_eq!(s.status, SolveStatus::PrimalInfeasible);
    }

    #[test]
    fn detects_unbounded_lmi() {
        // min y s.t. 1 − y ≥ 0
        let mut p = LmiProblem::new(vec![1.0], Sense::Minimize);
        let mut b = LmiBlock::new(1, 1);
        b.f0 = SparseSym::identity(1);
        b.coeffs[0] = SparseSym::identity(1).scaled(-1.0);
        p.add_block(b).unwrap();
        let s = solve(&p, &SolveOptions::default()).unwrap();
        assert_eq!(s.status, SolveStatus::DualInfeasible);

        let mut p = LmiProblem::new(vec![1.0, 1.0], Sense::Minimize);
        let mut b = LmiBlock::new(1, 2);
        b.f0 = SparseSym::identity(1);
        b.coeffs[0] = SparseSym::identity(1);
        p.add_block(b).unwrap();
        let s = solve(&p, &SolveOptions::default()).unwrap();
        assert_eq!(s.status, SolveStatus::DualInfeasible);
    }

    #[test]
    fn sandwich_matches_dense() {
        let n = 5;
        let w = RealMatrix::from_fn(n, n, |i, j| 1.0 / (1.0 + i as f64 + j as f64));
        for f in [
            SparseSym::from_triples(n, [(0, 3, 1.5), (2, 2, -0.5)]),
            SparseSym::from_dense(&RealMatrix::from_fn(n, n, |i, j| (i * j) as f64 + 1.0), 0.0),
        ] {
            let dense = w.matmul(&f.to_dense()).matmul(&w);
            let s = sandwich(&w, &f);
            assert!(s.sub(&dense).frobenius() < 1e-12);
        }
    }
}
