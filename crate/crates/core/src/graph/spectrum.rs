//! Adjacency spectra: full dense eigendecomposition for small graphs, and a
//! Lanczos estimate of the largest nontrivial |λ| for large regular graphs.
//!
//! The iterative estimate is certified by an explicitly computed residual:
//! for a unit vector `y` and `θ = yᵀAy`, some eigenvalue of `A` lies within
//! `‖Ay − θy‖` of `θ`. That residual, recomputed from the assembled Ritz
//! vector rather than read off the tridiagonal matrix, is the interval
//! half-width reported.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest vertex count handled by the dense eigensolver.
pub const DENSE_CAP: usize = 5000;
/// Default acceptance slack for interval-mode Ramanujan checks.
pub const ITERATIVE_TOLERANCE: f64 = 1e-3;
const MAX_LANCZOS_STEPS: usize = 1280;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpectrumMethod {
    ExactDense,
    IterativeBound,
}

#[derive(Debug, Clone, Serialize)]
pub struct Spectrum {
    /// Sorted descending.
    pub eigenvalues: Vec<f64>,
    pub method: SpectrumMethod,
    pub tolerance: f64,
    /// Largest `‖Av − λv‖` over the computed eigenpairs.
    pub max_residual: f64,
}

impl Spectrum {
    pub fn largest(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn smallest(&self) -> f64 {
        *self.eigenvalues.last().unwrap()
    }

    /// Eigenvalues are symmetric about zero (pairwise, within `tol`).
    pub fn is_symmetric(&self, tol: f64) -> bool {
        let n = self.eigenvalues.len();
        (0..n).all(|i| (self.eigenvalues[i] + self.eigenvalues[n - 1 - i]).abs() <= tol)
    }
}

pub fn adjacency_matrix(g: &Graph) -> DMatrix<f64> {
    let n = g.vertex_count();
    let mut a = DMatrix::zeros(n, n);
    for (u, v) in g.edges() {
        a[(u, v)] = 1.0;
        a[(v, u)] = 1.0;
    }
    a
}

pub fn adjacency_spectrum(g: &Graph) -> Result<Spectrum> {
    adjacency_spectrum_capped(g, DENSE_CAP)
}

pub fn adjacency_spectrum_capped(g: &Graph, cap: usize) -> Result<Spectrum> {
    let n = g.vertex_count();
    if n > cap {
        return Err(Error::DenseCapExceeded { n, cap });
    }
    let eig = SymmetricEigen::new(adjacency_matrix(g));
    let mut max_residual: f64 = 0.0;
    let mut av = vec![0.0; n];
    for (j, &lambda) in eig.eigenvalues.iter().enumerate() {
        let v: Vec<f64> = eig.eigenvectors.column(j).iter().copied().collect();
        apply_adjacency(g, &v, &mut av);
        let r = av.iter().zip(&v).map(|(a, x)| (a - lambda * x).powi(2)).sum::<f64>().sqrt();
        max_residual = max_residual.max(r);
    }
    let mut eigenvalues: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    eigenvalues.sort_by(|a, b| b.total_cmp(a));
    Ok(Spectrum {
        eigenvalues,
        method: SpectrumMethod::ExactDense,
        tolerance: 1e-8 * g.max_degree().max(1) as f64,
        max_residual,
    })
}

fn apply_adjacency(g: &Graph, x: &[f64], y: &mut [f64]) {
    let row = |u: usize| g.neighbors(u).iter().map(|&v| x[v as usize]).sum::<f64>();
    if x.len() >= 1 << 14 {
        y.par_iter_mut().enumerate().for_each(|(u, out)| *out = row(u));
    } else {
        for (u, out) in y.iter_mut().enumerate() {
            *out = row(u);
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Removes the components along the (orthonormal) vectors in `basis`.
fn deflate(x: &mut [f64], basis: &[Vec<f64>]) {
    for b in basis {
        let c = dot(x, b);
        x.iter_mut().zip(b).for_each(|(xi, bi)| *xi -= c * bi);
    }
}

/// Interval for the largest |λ| of `A` on the complement of its trivial eigenvectors.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct EigenInterval {
    pub estimate: f64,
    pub lower: f64,
    pub upper: f64,
    /// Half-width: the certified residual of the reporting Ritz pair.
    pub residual: f64,
    pub converged: bool,
    pub steps: usize,
}

impl EigenInterval {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }
}

struct Lanczos<'a> {
    graph: &'a Graph,
    trivial: Vec<Vec<f64>>,
    start: Vec<f64>,
    alpha: Vec<f64>,
    beta: Vec<f64>,
    prev: Vec<f64>,
    cur: Vec<f64>,
    exhausted: bool,
}

impl<'a> Lanczos<'a> {
    fn new(graph: &'a Graph, trivial: Vec<Vec<f64>>, seed: u64) -> Self {
        let n = graph.vertex_count();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut start: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        deflate(&mut start, &trivial);
        let s = norm(&start);
        start.iter_mut().for_each(|x| *x /= s);
        Lanczos {
            graph,
            trivial,
            cur: start.clone(),
            start,
            alpha: Vec::new(),
            beta: Vec::new(),
            prev: vec![0.0; n],
            exhausted: false,
        }
    }

    /// One three-term recurrence step; returns the next basis vector.
    fn step(&self, prev: &[f64], cur: &[f64], beta_prev: f64) -> (f64, f64, Vec<f64>) {
        let mut w = vec![0.0; cur.len()];
        apply_adjacency(self.graph, cur, &mut w);
        w.iter_mut().zip(prev).for_each(|(wi, pi)| *wi -= beta_prev * pi);
        let a = dot(&w, cur);
        w.iter_mut().zip(cur).for_each(|(wi, ci)| *wi -= a * ci);
        deflate(&mut w, &self.trivial);
        let b = norm(&w);
        (a, b, w)
    }

    fn extend_to(&mut self, steps: usize) {
        while self.alpha.len() < steps && !self.exhausted {
            let beta_prev = self.beta.last().copied().unwrap_or(0.0);
            let (a, b, mut w) = self.step(&self.prev, &self.cur, beta_prev);
            self.alpha.push(a);
            if b < 1e-10 {
                self.exhausted = true;
                break;
            }
            self.beta.push(b);
            w.iter_mut().for_each(|x| *x /= b);
            self.prev = std::mem::replace(&mut self.cur, w);
        }
    }

    /// Regenerates the basis to assemble `Σ s_j v_j`.
    fn ritz_vector(&self, coeffs: &[f64]) -> Vec<f64> {
        let n = self.start.len();
        let mut y = vec![0.0; n];
        let mut prev = vec![0.0; n];
        let mut cur = self.start.clone();
        for (j, &c) in coeffs.iter().enumerate() {
            y.iter_mut().zip(&cur).for_each(|(yi, vi)| *yi += c * vi);
            if j + 1 == coeffs.len() {
                break;
            }
            let beta_prev = if j == 0 { 0.0 } else { self.beta[j - 1] };
            let (_, b, mut w) = self.step(&prev, &cur, beta_prev);
            w.iter_mut().for_each(|x| *x /= b);
            prev = std::mem::replace(&mut cur, w);
        }
        y
    }

    /// Rayleigh quotient and true residual of a unit-normalized vector.
    fn certify(&self, mut y: Vec<f64>) -> (f64, f64) {
        deflate(&mut y, &self.trivial);
        let s = norm(&y);
        y.iter_mut().for_each(|x| *x /= s);
        let mut ay = vec![0.0; y.len()];
        apply_adjacency(self.graph, &y, &mut ay);
        let theta = dot(&y, &ay);
        let r = ay.iter().zip(&y).map(|(a, x)| (a - theta * x).powi(2)).sum::<f64>().sqrt();
        (theta, r)
    }

    fn extremes(&self) -> EigenInterval {
        let m = self.alpha.len();
        let mut t = DMatrix::zeros(m, m);
        for i in 0..m {
            t[(i, i)] = self.alpha[i];
            if i + 1 < m {
                t[(i, i + 1)] = self.beta[i];
                t[(i + 1, i)] = self.beta[i];
            }
        }
        let eig = SymmetricEigen::new(t);
        let (imax, _) = eig.eigenvalues.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap();
        let (imin, _) = eig.eigenvalues.iter().enumerate().min_by(|a, b| a.1.total_cmp(b.1)).unwrap();
        let mut best: Option<(f64, f64)> = None;
        for idx in [imax, imin] {
            let coeffs: Vec<f64> = eig.eigenvectors.column(idx).iter().copied().collect();
            let (theta, r) = self.certify(self.ritz_vector(&coeffs));
            if best.is_none_or(|(bt, _)| theta.abs() > bt) {
                best = Some((theta.abs(), r));
            }
        }
        let (est, r) = best.unwrap();
        EigenInterval { estimate: est, lower: (est - r).max(0.0), upper: est + r, residual: r, converged: false, steps: m }
    }
}

/// Trivial eigenvectors of a connected regular graph: the constant vector and,
/// when bipartite, the ±1 bipartition vector.
fn trivial_vectors(g: &Graph) -> Vec<Vec<f64>> {
    let n = g.vertex_count();
    let s = 1.0 / (n as f64).sqrt();
    let mut out = vec![vec![s; n]];
    if let Some(color) = g.two_coloring() {
        out.push(color.iter().map(|&c| if c == 0 { s } else { -s }).collect());
    }
    out
}

/// Interval for max |λ| over the nontrivial spectrum (excluding `d`, and `−d`
/// when bipartite) of a connected regular graph. On non-convergence within the
/// step budget the wider interval is returned with `converged = false`.
pub fn second_eigenvalue_bound(g: &Graph, tolerance: f64, seed: u64) -> Result<EigenInterval> {
    let d = g.regular_degree().ok_or(Error::NotRegular)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let trivial = trivial_vectors(g);
    let dim = g.vertex_count().saturating_sub(trivial.len());
    if dim == 0 {
        return Ok(EigenInterval { estimate: 0.0, lower: 0.0, upper: 0.0, residual: 0.0, converged: true, steps: 0 });
    }
    let mut lz = Lanczos::new(g, trivial, seed);
    let mut steps = 20usize.min(dim);
    loop {
        lz.extend_to(steps);
        let mut iv = lz.extremes();
        iv.upper = iv.upper.min(d as f64);
        if 2.0 * iv.residual <= tolerance || lz.exhausted && iv.residual <= tolerance {
            iv.converged = true;
            return Ok(iv);
        }
        if lz.exhausted || steps >= MAX_LANCZOS_STEPS.min(dim) {
            return Ok(iv);
        }
        steps = (steps * 2).min(MAX_LANCZOS_STEPS).min(dim);
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RamanujanVerdict {
    pub ramanujan: bool,
    /// Largest nontrivial |λ| (dense mode) or the interval estimate.
    pub witness: f64,
    pub threshold: f64,
    pub degree: usize,
    pub bipartite: bool,
    pub method: SpectrumMethod,
    pub interval: Option<EigenInterval>,
}

/// `|λ| ≤ 2√(d−1)` for every eigenvalue other than `d` (and `−d` when the graph
/// is bipartite and `allow_bipartite`). Dense below [`DENSE_CAP`], interval above.
pub fn is_ramanujan(g: &Graph, allow_bipartite: bool) -> Result<RamanujanVerdict> {
    if g.vertex_count() <= DENSE_CAP {
        is_ramanujan_dense(g, allow_bipartite)
    } else {
        is_ramanujan_iterative(g, allow_bipartite, ITERATIVE_TOLERANCE, 0)
    }
}

fn regular_connected(g: &Graph) -> Result<usize> {
    let d = g.regular_degree().ok_or(Error::NotRegular)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(d)
}

pub fn is_ramanujan_dense(g: &Graph, allow_bipartite: bool) -> Result<RamanujanVerdict> {
    let d = regular_connected(g)?;
    let threshold = 2.0 * ((d as f64) - 1.0).max(0.0).sqrt();
    let spec = adjacency_spectrum(g)?;
    let bipartite = g.is_bipartite();
    let mut rest = &spec.eigenvalues[1..];
    if bipartite && allow_bipartite && !rest.is_empty() {
        rest = &rest[..rest.len() - 1];
    }
    let witness = rest.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    Ok(RamanujanVerdict {
        ramanujan: witness <= threshold + 1e-9,
        witness,
        threshold,
        degree: d,
        bipartite,
        method: SpectrumMethod::ExactDense,
        interval: None,
    })
}

pub fn is_ramanujan_iterative(g: &Graph, allow_bipartite: bool, tolerance: f64, seed: u64) -> Result<RamanujanVerdict> {
    let d = regular_connected(g)?;
    let threshold = 2.0 * ((d as f64) - 1.0).max(0.0).sqrt();
    let bipartite = g.is_bipartite();
    if bipartite && !allow_bipartite {
        // −d is then a nontrivial eigenvalue
        return Ok(RamanujanVerdict {
            ramanujan: d as f64 <= threshold + 1e-9,
            witness: d as f64,
            threshold,
            degree: d,
            bipartite,
            method: SpectrumMethod::IterativeBound,
            interval: None,
        });
    }
    let iv = second_eigenvalue_bound(g, tolerance, seed)?;
    Ok(RamanujanVerdict {
        ramanujan: iv.converged && iv.upper <= threshold + tolerance,
        witness: iv.estimate,
        threshold,
        degree: d,
        bipartite,
        method: SpectrumMethod::IterativeBound,
        interval: Some(iv),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube() -> Graph {
        Graph::from_edges(8, (0..8usize).flat_map(|x| (0..3).map(move |i| (x, x ^ (1 << i)))).filter(|&(a, b)| a < b))
            .unwrap()
    }

    fn assert_close(a: &[f64], b: &[f64]) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() < 1e-9, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn dense_spectra_of_small_graphs() {
        let k3 = adjacency_spectrum(&Graph::complete(3)).unwrap();
        assert_close(&k3.eigenvalues, &[2.0, -1.0, -1.0]);
        let c = adjacency_spectrum(&cube()).unwrap();
        assert_close(&c.eigenvalues, &[3.0, 1.0, 1.0, 1.0, -1.0, -1.0, -1.0, -3.0]);
        assert!(c.max_residual <= c.tolerance);
        assert!(c.is_symmetric(1e-9));
        assert!(!k3.is_symmetric(1e-9));
    }

    #[test]
    fn dense_cap_enforced() {
        assert_eq!(
            adjacency_spectrum_capped(&Graph::cycle(10), 5).unwrap_err(),
            Error::DenseCapExceeded { n: 10, cap: 5 }
        );
    }

    #[test]
    fn trace_identities() {
        for g in [cube(), Graph::cycle(9), Graph::complete(6)] {
            let s = adjacency_spectrum(&g).unwrap();
            let sum: f64 = s.eigenvalues.iter().sum();
            let sq: f64 = s.eigenvalues.iter().map(|x| x * x).sum();
            assert!(sum.abs() < 1e-9);
            assert!((sq - 2.0 * g.edge_count() as f64).abs() < 1e-9);
        }
    }

    #[test]
    fn iterative_bounds() {
        let iv = second_eigenvalue_bound(&cube(), 1e-6, 1).unwrap();
        assert!(iv.converged && iv.contains(1.0) && iv.width() <= 1e-6, "{iv:?}");
        let iv = second_eigenvalue_bound(&Graph::cycle(8), 1e-6, 1).unwrap();
        assert!(iv.converged && iv.contains(2f64.sqrt()), "{iv:?}");
        assert_eq!(second_eigenvalue_bound(&Graph::path(3), 1e-6, 1).unwrap_err(), Error::NotRegular);
    }

    #[test]
    fn ramanujan_small() {
        let k4 = is_ramanujan(&Graph::complete(4), false).unwrap();
        assert!(k4.ramanujan);
        assert!((k4.witness - 1.0).abs() < 1e-9);
        assert!(is_ramanujan(&Graph::cycle(8), true).unwrap().ramanujan);
        // for d = 2 the bound 2√(d−1) equals d, so −2 passes either way
        assert!(is_ramanujan(&Graph::cycle(8), false).unwrap().ramanujan);
        assert!(is_ramanujan(&cube(), true).unwrap().ramanujan);
        assert!(!is_ramanujan(&cube(), false).unwrap().ramanujan);
        let two_triangles = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_eq!(is_ramanujan(&two_triangles, true).unwrap_err(), Error::Disconnected);
    }

    #[test]
    fn dense_and_iterative_agree() {
        for g in [cube(), Graph::cycle(12), Graph::complete(7)] {
            for bip in [false, true] {
                let a = is_ramanujan_dense(&g, bip).unwrap();
                let b = is_ramanujan_iterative(&g, bip, 1e-6, 3).unwrap();
                assert_eq!(a.ramanujan, b.ramanujan);
                if let Some(iv) = b.interval {
                    assert!(iv.contains(a.witness) || (iv.estimate - a.witness).abs() < 1e-6, "{iv:?} vs {}", a.witness);
                }
            }
        }
    }
}
