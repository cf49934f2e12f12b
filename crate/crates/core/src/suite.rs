//! The reproduction table: twelve criteria, each a list of checks with an
//! expected value, a computed value and a tolerance. Expected values come
//! from closed forms or from independent oracles (brute-force α,
//! eigendecomposition, the classical ϑ program), never from the code path
//! under test.

use std::time::Instant;

use rand::Rng;
use serde_json::{json, Value};

use crate::catalog;
use crate::error::{Error, Result};
use crate::graph::{all_graphs, alpha_brute, Graph};
use crate::independence::{
    alpha_hat_upper, alpha_lower_search, bounds, pair_dim_upper, planted_pair_space, SearchOptions,
};
use crate::io::sig9;
use crate::matrix::{eigh, ComplexMatrix, RealMatrix};
use crate::par;
use crate::random::{random_isometry, seeded};
use crate::sdp::{solve, validate, LmiBlock, LmiProblem, Sense, SolveOptions, SolveStatus, SparseSym};
use crate::space::{random_nc_graph, random_nested_pair, OperatorSpace};
use crate::theta::{
    check_identity_witness, identity_witness, theta_classical, theta_classical_programs, theta_tilde,
    theta_tilde_programs,
};

#[derive(Debug, Clone, Copy, Default)]
pub struct SuiteConfig {
    pub solve: SolveOptions,
    pub search: SearchOptions,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub label: String,
    pub expected: String,
    pub computed: String,
    pub tolerance: String,
    pub pass: bool,
}

fn fmt(x: f64) -> String {
    format!("{}", sig9(x))
}

impl Check {
    pub fn close(label: impl Into<String>, expected: f64, computed: f64, tol: f64) -> Self {
        Self {
            label: label.into(),
            expected: fmt(expected),
            computed: fmt(computed),
            tolerance: format!("±{tol:e}"),
            pass: (expected - computed).abs() <= tol,
        }
    }

    pub fn equal(label: impl Into<String>, expected: usize, computed: usize) -> Self {
        Self {
            label: label.into(),
            expected: expected.to_string(),
            computed: computed.to_string(),
            tolerance: "exact".into(),
            pass: expected == computed,
        }
    }

    /// computed ≤ limit
    pub fn at_most(label: impl Into<String>, limit: f64, computed: f64) -> Self {
        Self {
            label: label.into(),
            expected: format!("≤ {}", fmt(limit)),
            computed: fmt(computed),
            tolerance: "-".into(),
            pass: computed <= limit,
        }
    }

    /// computed ≥ limit
    pub fn at_least(label: impl Into<String>, limit: f64, computed: f64) -> Self {
        Self {
            label: label.into(),
            expected: format!("≥ {}", fmt(limit)),
            computed: fmt(computed),
            tolerance: "-".into(),
            pass: computed >= limit,
        }
    }

    pub fn count(label: impl Into<String>, failures: usize, total: usize) -> Self {
        Self {
            label: label.into(),
            expected: format!("0 of {total}"),
            computed: format!("{failures} of {total}"),
            tolerance: "-".into(),
            pass: failures == 0,
        }
    }

    fn error(label: impl Into<String>, e: &Error) -> Self {
        Self { label: label.into(), expected: "-".into(), computed: format!("error: {e}"), tolerance: "-".into(), pass: false }
    }
}

pub struct Criterion {
    pub id: usize,
    pub name: &'static str,
    /// Extra words `--filter` matches on.
    pub keywords: &'static [&'static str],
    pub time_limit: Option<f64>,
    run: fn(&SuiteConfig) -> Result<Vec<Check>>,
}

#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub id: usize,
    pub name: &'static str,
    pub checks: Vec<Check>,
    pub seconds: f64,
}

impl CriterionReport {
    pub fn pass(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "name": self.name,
            "pass": self.pass(),
            "seconds": sig9(self.seconds),
            "checks": self.checks.iter().map(|c| json!({
                "label": c.label,
                "expected": c.expected,
                "computed": c.computed,
                "tolerance": c.tolerance,
                "pass": c.pass,
            })).collect::<Vec<_>>(),
        })
    }
}

impl Criterion {
    pub fn matches(&self, filter: &str) -> bool {
        let f = filter.to_lowercase();
        f.parse::<usize>().map(|id| id == self.id).unwrap_or(false)
            || self.name.contains(&f)
            || self.keywords.iter().any(|k| k.contains(&f))
    }

    pub fn run(&self, cfg: &SuiteConfig) -> CriterionReport {
        let start = Instant::now();
        let mut checks = match (self.run)(cfg) {
            Ok(c) => c,
            Err(e) => vec![Check::error(self.name, &e)],
        };
        let seconds = start.elapsed().as_secs_f64();
        if let Some(limit) = self.time_limit {
            checks.push(Check::at_most("runtime (s)", limit, seconds));
        }
        CriterionReport { id: self.id, name: self.name, checks, seconds }
    }
}

pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion { id: 1, name: "pentagon", keywords: &["c5", "cycle"], time_limit: Some(5.0), run: pentagon },
        Criterion { id: 2, name: "identity-channel", keywords: &["superdense", "witness"], time_limit: None, run: identity },
        Criterion { id: 3, name: "complete-graph", keywords: &["full"], time_limit: None, run: complete },
        Criterion { id: 4, name: "dephasing-qubit", keywords: &["qubit"], time_limit: None, run: dephasing },
        Criterion { id: 5, name: "delta-complement", keywords: &["delta", "qubit"], time_limit: None, run: delta },
        Criterion { id: 6, name: "duan-channel", keywords: &["duan"], time_limit: Some(60.0), run: duan },
        Criterion { id: 7, name: "multiplicativity", keywords: &["tensor", "product"], time_limit: None, run: multiplicativity },
        Criterion { id: 8, name: "unions", keywords: &["additivity", "dsum", "cunion"], time_limit: None, run: unions },
        Criterion {
            id: 9,
            name: "classical-consistency",
            keywords: &["graphs", "classical"],
            time_limit: Some(600.0),
            run: classical_consistency,
        },
        Criterion { id: 10, name: "bound-chain", keywords: &["bounds", "alpha"], time_limit: None, run: bound_chain },
        Criterion { id: 11, name: "monotonicity", keywords: &["subgraph", "isometry"], time_limit: None, run: monotonicity },
        Criterion { id: 12, name: "solver-soundness", keywords: &["sdp", "solver", "lambda"], time_limit: None, run: soundness },
    ]
}

/// Runs every criterion matching `filter` (all when `None`), concurrently
/// when the `parallel` feature is on.
pub fn run(filter: Option<&str>, cfg: &SuiteConfig) -> Vec<CriterionReport> {
    let selected: Vec<Criterion> = criteria().into_iter().filter(|c| filter.is_none_or(|f| c.matches(f))).collect();
    par::map(&selected, |c| c.run(cfg))
}

pub fn suite_to_json(reports: &[CriterionReport]) -> Value {
    json!({
        "kind": "paper_suite",
        "pass": reports.iter().all(|r| r.pass()),
        "criteria": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
    })
}

/// One line per check plus a PASS/FAIL header per criterion.
pub fn render_table(reports: &[CriterionReport]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&format!(
            "[{}] {:>2} {} ({:.1} s)\n",
            if r.pass() { "PASS" } else { "FAIL" },
            r.id,
            r.name,
            r.seconds
        ));
        for c in &r.checks {
            out.push_str(&format!(
                "       {} {:<52} expected {:<18} computed {:<18} tol {}\n",
                if c.pass { "ok  " } else { "FAIL" },
                c.label,
                c.expected,
                c.computed,
                c.tolerance
            ));
        }
    }
    out
}

fn tilde(s: &OperatorSpace, cfg: &SuiteConfig) -> Result<f64> {
    Ok(theta_tilde(s, &cfg.solve)?.value)
}

fn classical(g: &Graph, cfg: &SuiteConfig) -> Result<f64> {
    Ok(theta_classical(g, &cfg.solve)?.value)
}

fn pentagon(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let c5 = catalog::pentagon();
    let th = classical(&c5, cfg)?;
    let tt = tilde(&c5.to_operator_space(), cfg)?;
    Ok(vec![
        Check::close("ϑ(C5) = √5", 5f64.sqrt(), th, 1e-5),
        Check::close("ϑ̃(C5 space) = ϑ(C5)", th, tt, 1e-5),
        Check::equal("α(C5)", 2, alpha_brute(&c5)?.0),
        Check::equal("α(C5⊠C5)", 5, alpha_brute(&c5.strong_product(&c5)?)?.0),
    ])
}

fn identity(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for d in 2..=3 {
        let v = tilde(&OperatorSpace::scalars(d), cfg)?;
        checks.push(Check::close(format!("ϑ̃(span{{𝟙_{d}}}) = d²"), (d * d) as f64, v, 1e-4));
    }
    for d in 1..=4 {
        let w = check_identity_witness(d)?;
        // independent membership oracle: the projection onto span{𝟙}⊗L(C^d) vanishes
        let t = identity_witness(d);
        let ext = OperatorSpace::scalars(d).tensor(&OperatorSpace::full(d))?;
        checks.push(Check::at_most(format!("d={d}: ‖tr_A T‖"), 1e-9, w.membership_residual));
        checks.push(Check::at_most(format!("d={d}: ‖Π(span{{𝟙}}⊗L)(T)‖"), 1e-9, ext.project(&t).hs_norm()));
        checks.push(Check::at_least(format!("d={d}: λ_min(𝟙+T)"), -1e-9, w.min_eig));
        checks.push(Check::close(format!("d={d}: ‖𝟙+T‖ = d²"), (d * d) as f64, w.norm, 1e-9));
    }
    Ok(checks)
}

fn complete(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    (2..=4).map(|d| Ok(Check::close(format!("ϑ̃(L(C^{d})) = 1"), 1.0, tilde(&OperatorSpace::full(d), cfg)?, 1e-6))).collect()
}

fn dephasing(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let s = catalog::dephasing_qubit();
    // span{𝟙, Z} is the diagonal algebra, the space of the edgeless graph on 2 vertices
    let oracle = classical(&Graph::empty(2), cfg)?;
    let report = bounds(&s, &cfg.solve, &cfg.search)?;
    let searched = alpha_lower_search(&s, 2, &cfg.search)?.is_some();
    Ok(vec![
        Check::close("ϑ̃(span{𝟙,Z}) = ϑ(edgeless K2)", oracle, tilde(&s, cfg)?, 1e-5),
        Check::close("ϑ̃(span{𝟙,Z}) = 2", 2.0, tilde(&s, cfg)?, 1e-5),
        Check::equal("bounds: alpha_lower", 2, report.alpha_lower),
        Check::equal("search finds an independent pair", 1, searched as usize),
    ])
}

fn delta(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for d in 3..=4 {
        let s = catalog::delta_complement(d);
        checks.push(Check::close(format!("d={d}: ϑ̃(span{{Δ}}⊥) = d"), d as f64, tilde(&s, cfg)?, 1e-4));
        checks.push(Check::equal(format!("d={d}: α̂ upper bound"), 2, alpha_hat_upper(&s)));
        checks.push(Check::equal(format!("d={d}: pair-dimension bound"), 1, pair_dim_upper(&s)));
    }
    let report = bounds(&catalog::delta_complement(4), &cfg.solve, &cfg.search)?;
    checks.push(Check::equal("d=4: bounds alpha_upper (pair bound beats ϑ̃)", 1, report.alpha_upper));
    Ok(checks)
}

fn duan(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let s = catalog::duan(2)?;
    Ok(vec![Check::close("ϑ̃(𝟙₂⊗𝟙₂ + 𝟙₂⊥⊗L(C²)) = 4", 4.0, tilde(&s, cfg)?, 1e-3)])
}

/// Random nc-graph with a random dimension in 1..=d².
fn random_space(rng: &mut impl Rng, d: usize) -> Result<OperatorSpace> {
    let dim = rng.gen_range(1..=d * d);
    random_nc_graph(d, dim, rng.gen())
}

fn multiplicativity(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    const DIMS: [(usize, usize); 3] = [(2, 2), (2, 3), (3, 2)];
    let cases: Vec<u64> = (0..20).collect();
    let results = par::map(&cases, |&k| -> Result<(f64, f64)> {
        let mut rng = seeded(cfg.seed ^ (0x7000 + k));
        let (d1, d2) = DIMS[k as usize % DIMS.len()];
        let s1 = random_space(&mut rng, d1)?;
        let s2 = random_space(&mut rng, d2)?;
        let product = tilde(&s1, cfg)? * tilde(&s2, cfg)?;
        Ok((product, tilde(&s1.tensor(&s2)?, cfg)?))
    });
    let mut worst: f64 = 0.0;
    let mut failures = 0;
    for r in &results {
        match r {
            Ok((p, t)) => {
                let excess = (t - p).abs() - 1e-3 * (1.0 + p);
                worst = worst.max((t - p).abs() / (1.0 + p));
                failures += (excess > 0.0) as usize;
            }
            Err(_) => failures += 1,
        }
    }
    let c5 = catalog::pentagon();
    let th = classical(&c5, cfg)?;
    Ok(vec![
        Check::count("pairs with |ϑ̃(S₁⊗S₂) − ϑ̃(S₁)ϑ̃(S₂)| > 1e-3(1+p)", failures, results.len()),
        Check::at_most("max |ϑ̃(S₁⊗S₂) − p| / (1+p)", 1e-3, worst),
        Check::close("ϑ(C5⊠C5) = ϑ(C5)²", th * th, classical(&c5.strong_product(&c5)?, cfg)?, 1e-5),
    ])
}

fn unions(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let cases: Vec<u64> = (0..20).collect();
    let quantum = par::map(&cases, |&k| -> Result<(f64, f64, f64, f64)> {
        let mut rng = seeded(cfg.seed ^ (0x8000 + k));
        let (d1, d2) = (rng.gen_range(1..=3), rng.gen_range(2..=3));
        let s1 = random_space(&mut rng, d1)?;
        let s2 = random_space(&mut rng, d2)?;
        let (a, b) = (tilde(&s1, cfg)?, tilde(&s2, cfg)?);
        Ok((a, b, tilde(&s1.direct_sum(&s2), cfg)?, tilde(&s1.complete_union(&s2), cfg)?))
    });
    let classical_cases = par::map(&cases, |&k| -> Result<(f64, f64, f64, f64)> {
        let mut rng = seeded(cfg.seed ^ (0x8800 + k));
        let (n1, n2) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let g1 = Graph::erdos_renyi(n1, rng.gen_range(0.2..0.8), rng.gen());
        let g2 = Graph::erdos_renyi(n2, rng.gen_range(0.2..0.8), rng.gen());
        let (a, b) = (classical(&g1, cfg)?, classical(&g2, cfg)?);
        Ok((a, b, classical(&g1.disjoint_union(&g2), cfg)?, classical(&g1.join(&g2), cfg)?))
    });
    let mut checks = Vec::new();
    for (name, results) in [("ϑ̃", quantum), ("ϑ", classical_cases)] {
        let (mut sum_err, mut max_err, mut errors): (f64, f64, usize) = (0.0, 0.0, 0);
        for r in &results {
            match r {
                Ok((a, b, ds, cu)) => {
                    sum_err = sum_err.max((ds - (a + b)).abs());
                    max_err = max_err.max((cu - a.max(*b)).abs());
                }
                Err(_) => errors += 1,
            }
        }
        checks.push(Check::count(format!("{name}: solver failures"), errors, results.len()));
        checks.push(Check::close(format!("{name}: max |f(S⊕S') − f(S) − f(S')|"), 0.0, sum_err, 1e-4));
        checks.push(Check::close(format!("{name}: max |f(S⊞S') − max(f(S), f(S'))|"), 0.0, max_err, 1e-4));
    }
    Ok(checks)
}

fn classical_consistency(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let graphs: Vec<Graph> = (1..=6).flat_map(all_graphs).collect();
    let diffs = par::map(&graphs, |g| -> Result<f64> {
        Ok((classical(g, cfg)? - tilde(&g.to_operator_space(), cfg)?).abs())
    });
    let errors = diffs.iter().filter(|d| d.is_err()).count();
    let worst = diffs.iter().filter_map(|d| d.as_ref().ok()).fold(0.0f64, |a, &b| a.max(b));
    Ok(vec![
        Check::equal("non-isomorphic graphs with 1 ≤ n ≤ 6", 208, graphs.len()),
        Check::count("solver failures", errors, graphs.len()),
        Check::close("max |ϑ(G) − ϑ̃(S_G)|", 0.0, worst, 1e-5),
    ])
}

/// Paper examples, small classical graphs, random and planted spaces.
pub fn bounds_corpus(seed: u64) -> Result<Vec<(String, OperatorSpace)>> {
    let mut corpus: Vec<(String, OperatorSpace)> = vec![
        ("C5".into(), catalog::pentagon().to_operator_space()),
        ("P4".into(), Graph::path(4).to_operator_space()),
        ("K3".into(), Graph::complete(3).to_operator_space()),
        ("span{𝟙₂}".into(), OperatorSpace::scalars(2)),
        ("span{𝟙₃}".into(), OperatorSpace::scalars(3)),
        ("L(C³)".into(), OperatorSpace::full(3)),
        ("span{𝟙,Z}".into(), catalog::dephasing_qubit()),
        ("span{Δ₃}⊥".into(), catalog::delta_complement(3)),
        ("span{Δ₄}⊥".into(), catalog::delta_complement(4)),
        ("duan(2)".into(), catalog::duan(2)?),
    ];
    let mut rng = seeded(seed ^ 0xa000);
    for k in 0..10 {
        let d = 2 + k % 2;
        corpus.push((format!("random d={d} #{k}"), random_space(&mut rng, d)?));
    }
    for k in 0..3 {
        corpus.push((format!("planted pair d=3 #{k}"), planted_pair_space(3, 3 + k as usize, seed + k)?));
    }
    Ok(corpus)
}

fn bound_chain(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let corpus = bounds_corpus(cfg.seed)?;
    let reports = par::map(&corpus, |(_, s)| bounds(s, &cfg.solve, &cfg.search));
    let mut checks = Vec::new();
    let mut violations = Vec::new();
    let mut errors = 0;
    for ((name, _), r) in corpus.iter().zip(&reports) {
        match r {
            Ok(b) => {
                let floor = (b.theta_tilde_upper + 1e-6).floor() as usize;
                if b.alpha_lower > floor || b.alpha_lower > b.pair_dim_upper || b.alpha_lower > b.alpha_hat_upper {
                    violations.push(name.clone());
                }
            }
            Err(_) => errors += 1,
        }
    }
    checks.push(Check::count("corpus: bounds() failures", errors, corpus.len()));
    checks.push(Check::count("corpus: alpha_lower above ⌊ϑ̃+1e-6⌋, pair or α̂ bound", violations.len(), corpus.len()));

    let cases: Vec<u64> = (0..50).collect();
    let classical_pairs = par::map(&cases, |&k| -> Result<(usize, f64)> {
        let mut rng = seeded(cfg.seed ^ (0xb000 + k));
        let n = rng.gen_range(2..=10);
        let g = Graph::erdos_renyi(n, rng.gen_range(0.1..0.9), rng.gen());
        Ok((alpha_brute(&g)?.0, classical(&g, cfg)?))
    });
    let mut bad = 0;
    let mut slack = f64::INFINITY;
    for r in &classical_pairs {
        match r {
            Ok((a, th)) => {
                bad += (*a as f64 > th + 1e-6) as usize;
                slack = slack.min(th - *a as f64);
            }
            Err(_) => bad += 1,
        }
    }
    checks.push(Check::count("random graphs n ≤ 10 with α(G) > ϑ(G)", bad, cases.len()));
    checks.push(Check::at_least("min ϑ(G) − α(G)", -1e-6, slack));
    Ok(checks)
}

fn monotonicity(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let cases: Vec<u64> = (0..20).collect();
    let nested = par::map(&cases, |&k| -> Result<f64> {
        let mut rng = seeded(cfg.seed ^ (0xc000 + k));
        let d = rng.gen_range(2..=3);
        let large = rng.gen_range(2..=d * d);
        let small = rng.gen_range(1..=large);
        let (s, big) = random_nested_pair(d, small, large, rng.gen())?;
        // ϑ̃(S) ≥ ϑ̃(S') − 1e-5; report the violation margin
        Ok(tilde(&big, cfg)? - tilde(&s, cfg)?)
    });
    let induced = par::map(&cases, |&k| -> Result<f64> {
        let mut rng = seeded(cfg.seed ^ (0xc800 + k));
        let d = rng.gen_range(2..=4);
        let s = if k % 2 == 0 && d <= 3 {
            random_space(&mut rng, d)?
        } else {
            Graph::erdos_renyi(d, 0.5, rng.gen()).to_operator_space()
        };
        let d0 = rng.gen_range(1..=d);
        let u = random_isometry(&mut rng, d, d0);
        Ok(tilde(&s.induced_subgraph(&u)?, cfg)? - tilde(&s, cfg)?)
    });
    let mut checks = Vec::new();
    for (label, results) in
        [("nested S ≤ S': max ϑ̃(S') − ϑ̃(S)", nested), ("isometries: max ϑ̃(U†SU) − ϑ̃(S)", induced)]
    {
        let errors = results.iter().filter(|r| r.is_err()).count();
        let worst = results.iter().filter_map(|r| r.as_ref().ok()).fold(f64::NEG_INFINITY, |a, &b| a.max(b));
        checks.push(Check::count(format!("{label}: solver failures"), errors, results.len()));
        checks.push(Check::at_most(label, 1e-5, worst));
    }
    Ok(checks)
}

/// min t s.t. t𝟙 − A ⪰ 0, whose optimum is λ_max(A).
pub fn lambda_max_problem(a: &RealMatrix) -> LmiProblem {
    let n = a.rows();
    let mut p = LmiProblem::new(vec![1.0], Sense::Minimize);
    let mut b = LmiBlock::new(n, 1);
    b.f0 = SparseSym::from_dense(&a.scale(-1.0), 0.0);
    b.coeffs[0] = SparseSym::identity(n);
    p.add_block(b).expect("consistent sizes");
    p
}

fn soundness(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut programs: Vec<LmiProblem> = Vec::new();
    let mut spaces = bounds_corpus(cfg.seed)?;
    spaces.retain(|(_, s)| s.ambient_dim() <= 4);
    for (_, s) in &spaces {
        let (p, d) = theta_tilde_programs(s)?;
        programs.push(p);
        programs.push(d);
    }
    for g in all_graphs(5) {
        let (p, d) = theta_classical_programs(&g)?;
        programs.push(p);
        programs.push(d);
    }
    let outcomes = par::map(&programs, |p| -> Result<Option<(f64, f64)>> {
        let sol = solve(p, &cfg.solve)?;
        if sol.status != SolveStatus::Optimal {
            return Ok(None);
        }
        Ok(Some((validate(p, &sol.y)?.min_eig(), sol.gap)))
    });
    let (mut min_eig, mut max_gap, mut not_optimal, mut errors) = (f64::INFINITY, 0.0f64, 0, 0);
    for o in &outcomes {
        match o {
            Ok(Some((e, g))) => {
                min_eig = min_eig.min(*e);
                max_gap = max_gap.max(*g);
            }
            Ok(None) => not_optimal += 1,
            Err(_) => errors += 1,
        }
    }
    let cross = par::map(&spaces, |(_, s)| -> Result<f64> {
        let r = theta_tilde(s, &cfg.solve)?;
        let (p, d) = (r.primal.unwrap_or(r.value), r.dual.unwrap_or(r.value));
        Ok((p - d).abs() / (1.0 + d.abs()))
    });
    let cross_err = cross.iter().filter(|r| r.is_err()).count();
    let cross_gap = cross.iter().filter_map(|r| r.as_ref().ok()).fold(0.0f64, |a, &b| a.max(b));

    let cases: Vec<u64> = (0..100).collect();
    let lam = par::map(&cases, |&k| -> Result<f64> {
        let mut rng = seeded(cfg.seed ^ (0xd000 + k));
        let n = rng.gen_range(1..=8);
        let a = RealMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0)).symmetrized();
        let sol = solve(&lambda_max_problem(&a), &cfg.solve)?;
        if sol.status != SolveStatus::Optimal {
            return Err(Error::Solver { status: sol.status });
        }
        let oracle = eigh(&ComplexMatrix::from_real(n, n, a.data()))?.max();
        Ok((sol.value - oracle).abs())
    });
    let lam_err = lam.iter().filter(|r| r.is_err()).count();
    let lam_worst = lam.iter().filter_map(|r| r.as_ref().ok()).fold(0.0f64, |a, &b| a.max(b));

    Ok(vec![
        Check::count("LMI solves returning an error", errors, programs.len()),
        Check::count("LMI solves not Optimal", not_optimal, programs.len()),
        Check::at_least("min block eigenvalue over Optimal solves (validate)", -1e-8, min_eig),
        Check::at_most("max relative solver gap over Optimal solves", 1e-5, max_gap),
        Check::count("ϑ̃ primal/dual cross-checks failing", cross_err, spaces.len()),
        Check::at_most("max ϑ̃ primal/dual relative gap", 1e-5, cross_gap),
        Check::count("λ_max problems not Optimal", lam_err, cases.len()),
        Check::at_most("max |λ_max(SDP) − λ_max(eigh)|", 1e-7, lam_worst),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filters() {
        let all = criteria();
        assert_eq!(all.len(), 12);
        assert_eq!(all.iter().filter(|c| c.matches("pentagon")).count(), 1);
        assert_eq!(all.iter().filter(|c| c.matches("7")).count(), 1);
        assert!(all.iter().filter(|c| c.matches("qubit")).count() >= 2);
    }

    #[test]
    fn pentagon_row_passes() {
        let r = run(Some("pentagon"), &SuiteConfig::default());
        assert_eq!(r.len(), 1);
        assert!(r[0].pass(), "{}", render_table(&r));
    }
}
