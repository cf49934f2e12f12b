//! Finite simple graphs, strong products, exact independence numbers and
//! the embedding of a graph as the operator space
//! span{|x⟩⟨x'| : x = x' or x ~ x'}.

use std::collections::HashSet;

use rand::Rng;

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, MAX_AMBIENT_DIM, NUMERIC_TOL};
use crate::random::seeded;
use crate::space::OperatorSpace;

/// Default vertex cap for `alpha_brute`.
pub const ALPHA_DEFAULT_CAP: usize = 30;
/// Hard limit of the bitset representation.
pub const ALPHA_MAX_VERTICES: usize = 64;

/// Simple undirected graph on vertices 0..n.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self { n, adj: vec![false; n * n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n);
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidInput(format!("edge ({a}, {b}) out of range for n = {n}")));
            }
            if a == b {
                return Err(Error::InvalidInput(format!("self-loop at vertex {a}")));
            }
            g.set_edge(a, b, true);
        }
        Ok(g)
    }

    /// Builds from a symmetric adjacency predicate; the diagonal is ignored.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Self::empty(n);
        for a in 0..n {
            for b in a + 1..n {
                if f(a, b) {
                    g.set_edge(a, b, true);
                }
            }
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        Self::from_fn(n, |_, _| true)
    }

    /// Cₙ; for n < 3 this is the path on n vertices.
    pub fn cycle(n: usize) -> Self {
        Self::from_fn(n, |a, b| b == a + 1 || (n >= 3 && a == 0 && b == n - 1))
    }

    pub fn path(n: usize) -> Self {
        Self::from_fn(n, |a, b| b == a + 1)
    }

    /// G(n, p), deterministic in `seed`.
    pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Self {
        let mut rng = seeded(seed);
        Self::from_fn(n, |_, _| rng.gen::<f64>() < p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a * self.n + b]
    }

    /// Adjacent or equal.
    pub fn confusable(&self, a: usize, b: usize) -> bool {
        a == b || self.has_edge(a, b)
    }

    pub fn set_edge(&mut self, a: usize, b: usize, on: bool) {
        if a != b {
            self.adj[a * self.n + b] = on;
            self.adj[b * self.n + a] = on;
        }
    }

    /// Each edge once, as (a, b) with a < b, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|a| (a + 1..self.n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.has_edge(a, b))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().filter(|&&e| e).count() / 2
    }

    pub fn degree(&self, a: usize) -> usize {
        (0..self.n).filter(|&b| self.has_edge(a, b)).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|a| self.degree(a)).collect()
    }

    pub fn complement(&self) -> Self {
        Self::from_fn(self.n, |a, b| !self.has_edge(a, b))
    }

    /// Vertex (x, y) is x·|h| + y. Distinct pairs are adjacent iff each
    /// coordinate is adjacent or equal.
    pub fn strong_product(&self, h: &Graph) -> Result<Self> {
        let n = self.n.checked_mul(h.n).filter(|&n| n <= MAX_AMBIENT_DIM).ok_or(Error::DimensionOverflow {
            dim: self.n.saturating_mul(h.n),
            max: MAX_AMBIENT_DIM,
        })?;
        let m = h.n;
        Ok(Self::from_fn(n, |u, v| self.confusable(u / m, v / m) && h.confusable(u % m, v % m)))
    }

    /// Block-diagonal adjacency: vertices of `self` first.
    pub fn disjoint_union(&self, h: &Graph) -> Self {
        let n0 = self.n;
        Self::from_fn(n0 + h.n, |a, b| match (a < n0, b < n0) {
            (true, true) => self.has_edge(a, b),
            (false, false) => h.has_edge(a - n0, b - n0),
            _ => false,
        })
    }

    /// Disjoint union plus every edge between the two parts.
    pub fn join(&self, h: &Graph) -> Self {
        let n0 = self.n;
        Self::from_fn(n0 + h.n, |a, b| match (a < n0, b < n0) {
            (true, true) => self.has_edge(a, b),
            (false, false) => h.has_edge(a - n0, b - n0),
            _ => true,
        })
    }

    pub fn induced(&self, vertices: &[usize]) -> Self {
        Self::from_fn(vertices.len(), |a, b| self.has_edge(vertices[a], vertices[b]))
    }

    /// Graph with vertex v renamed perm[v].
    pub fn relabel(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let mut g = Self::empty(self.n);
        for (a, b) in self.edges() {
            g.set_edge(perm[a], perm[b], true);
        }
        g
    }

    /// Vertices at distance ≤ t become adjacent.
    pub fn power(&self, t: usize) -> Self {
        let n = self.n;
        let mut reach: Vec<Vec<bool>> = (0..n).map(|a| (0..n).map(|b| self.confusable(a, b)).collect()).collect();
        let step = reach.clone();
        for _ in 1..t {
            reach = (0..n)
                .map(|a| (0..n).map(|b| (0..n).any(|k| reach[a][k] && step[k][b])).collect())
                .collect();
        }
        Self::from_fn(n, |a, b| reach[a][b])
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter().enumerate().all(|(i, &a)| set[i + 1..].iter().all(|&b| a != b && !self.has_edge(a, b)))
    }

    /// span{|x⟩⟨x'| : x = x' or x ~ x'}, orthonormal in the matrix units.
    pub fn to_operator_space(&self) -> OperatorSpace {
        let n = self.n;
        let basis = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.confusable(a, b))
            .map(|(a, b)| ComplexMatrix::unit(n, n, a, b))
            .collect();
        OperatorSpace::from_orthonormal(n, n, basis)
    }

    /// Recognizes spaces spanned by matrix units on a symmetric pattern
    /// containing the diagonal.
    pub fn from_operator_space(s: &OperatorSpace) -> Option<Self> {
        if !s.is_nc_graph() {
            return None;
        }
        let d = s.ambient_dim();
        let mut support = vec![false; d * d];
        for f in s.basis() {
            let cut = NUMERIC_TOL * f.max_abs().max(1.0);
            for (k, v) in f.data().iter().enumerate() {
                if v.norm() > cut {
                    support[k] = true;
                }
            }
        }
        let count = support.iter().filter(|&&b| b).count();
        let symmetric = (0..d).all(|a| support[a * d + a] && (0..d).all(|b| support[a * d + b] == support[b * d + a]));
        if count != s.dim() || !symmetric {
            return None;
        }
        Some(Self::from_fn(d, |a, b| support[a * d + b]))
    }

    fn bitsets(&self) -> Vec<u64> {
        (0..self.n)
            .map(|a| (0..self.n).filter(|&b| self.has_edge(a, b)).fold(0u64, |m, b| m | (1 << b)))
            .collect()
    }
}

/// Maximum independent set by branch and bound with a greedy colouring
/// bound. Returns α and a witness in increasing order.
pub fn alpha_brute(g: &Graph) -> Result<(usize, Vec<usize>)> {
    alpha_brute_capped(g, ALPHA_DEFAULT_CAP)
}

pub fn alpha_brute_capped(g: &Graph, cap: usize) -> Result<(usize, Vec<usize>)> {
    let cap = cap.min(ALPHA_MAX_VERTICES);
    if g.n > cap {
        return Err(Error::SizeCapExceeded { size: g.n, cap });
    }
    // An independent set of g is a clique of the complement.
    let comp = g.complement().bitsets();
    let mut best = Vec::new();
    let mut current = Vec::new();
    let all = if g.n == 64 { u64::MAX } else { (1u64 << g.n) - 1 };
    expand_clique(&comp, all, &mut current, &mut best);
    best.sort_unstable();
    Ok((best.len(), best))
}

fn expand_clique(adj: &[u64], mut cand: u64, current: &mut Vec<usize>, best: &mut Vec<usize>) {
    if cand == 0 {
        if current.len() > best.len() {
            *best = current.clone();
        }
        return;
    }
    let (order, colors) = greedy_colour(adj, cand);
    for idx in (0..order.len()).rev() {
        if current.len() + colors[idx] <= best.len() {
            return;
        }
        let v = order[idx];
        current.push(v);
        expand_clique(adj, cand & adj[v], current, best);
        current.pop();
        cand &= !(1u64 << v);
    }
}

/// Sequential colouring of the candidate set; colors[i] bounds the
/// clique size among order[..=i].
fn greedy_colour(adj: &[u64], cand: u64) -> (Vec<usize>, Vec<usize>) {
    let mut order = Vec::with_capacity(cand.count_ones() as usize);
    let mut colors = Vec::with_capacity(order.capacity());
    let mut uncolored = cand;
    let mut color = 0;
    while uncolored != 0 {
        color += 1;
        let mut avail = uncolored;
        while avail != 0 {
            let v = avail.trailing_zeros() as usize;
            avail &= !(1u64 << v) & !adj[v];
            uncolored &= !(1u64 << v);
            order.push(v);
            colors.push(color);
        }
    }
    (order, colors)
}

/// One representative of every isomorphism class of graphs on n vertices
/// (n ≤ 8), ordered by canonical code.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 8, "exhaustive enumeration is limited to n <= 8");
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let index = |a: usize, b: usize| -> usize {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        pairs.iter().position(|&p| p == (a, b)).unwrap()
    };
    let perms = permutations(n);
    let maps: Vec<Vec<usize>> =
        perms.iter().map(|p| pairs.iter().map(|&(a, b)| index(p[a], p[b])).collect()).collect();
    let canonical = |mask: u32| -> u32 {
        maps.iter()
            .map(|map| {
                let mut out = 0u32;
                let mut m = mask;
                while m != 0 {
                    let k = m.trailing_zeros() as usize;
                    out |= 1 << map[k];
                    m &= m - 1;
                }
                out
            })
            .min()
            .unwrap_or(mask)
    };
    let mut seen = HashSet::new();
    let mut codes = Vec::new();
    for mask in 0..(1u32 << pairs.len()) {
        let code = canonical(mask);
        if seen.insert(code) {
            codes.push(code);
        }
    }
    codes.sort_unstable();
    codes
        .into_iter()
        .map(|code| {
            let mut g = Graph::empty(n);
            for (k, &(a, b)) in pairs.iter().enumerate() {
                if code & (1 << k) != 0 {
                    g.set_edge(a, b, true);
                }
            }
            g
        })
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    heap_permute(n, &mut p, &mut out);
    out
}

fn heap_permute(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(p.clone());
        return;
    }
    for i in 0..k {
        heap_permute(k - 1, p, out);
        if k.is_multiple_of(2) {
            p.swap(i, k - 1);
        } else {
            p.swap(0, k - 1);
        }
    }
}
