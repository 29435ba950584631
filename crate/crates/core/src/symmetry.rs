//! Generator-symmetric bipartite Cayley graphs and the Cayley realization of
//! their symmetric Alon–Capalbo products.
//!
//! A [`SymmetryDatum`] `(G, S, s₀, K, H, θ, T)` describes a Cayley graph
//! Cay(G, S), an index-2 subgroup `K` disjoint from `S`, a group `H` acting
//! simply transitively on `S` through `θ: H → Aut(G)`, and a symmetric subset
//! `T ⊆ H ∖ {1}`. From it we build
//!
//! * `Γ`: a graph on the edges of Cay(G, S), where the star of each vertex `g`
//!   is labelled by `H` through `e_g` and labels `h`, `ht` (`t ∈ T`) are joined;
//! * `X = Cay(K ⋊_θ H, Σ₁ᵀ ∪ Σ₂ᵀ)`;
//! * the bijection `f(k, h) = {k, k·θ_h(s₀)}` which carries `X` onto `Γ`.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::group::{closure, FiniteGroup, GroupRef, Subgroup};
use crate::algebra::semidirect::{check_action_homomorphism, semidirect_product, Automorphism, SemidirectElement, SemidirectProduct};
use crate::error::{Error, Result};
use crate::graph::{cayley_graph, CayleyGraph, Graph, VertexLabel};

#[derive(Clone)]
pub struct SymmetryDatum {
    pub g: GroupRef,
    pub s: Vec<usize>,
    pub s0: usize,
    pub k: Arc<Subgroup>,
    pub h: GroupRef,
    /// `theta[h]` is θ_h as a map on elements of `G`.
    pub theta: Arc<Vec<Automorphism>>,
    pub t: Vec<usize>,
}

impl std::fmt::Debug for SymmetryDatum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SymmetryDatum")
            .field("|G|", &self.g.order())
            .field("S", &self.s)
            .field("s0", &self.s0)
            .field("|K|", &self.k.order())
            .field("|H|", &self.h.order())
            .field("T", &self.t)
            .finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymmetryReport {
    pub checks: Vec<Check>,
}

impl SymmetryReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| !c.pass).map(|c| c.name).collect()
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Checks every invariant of the datum and reports each one separately.
pub fn verify_symmetry_datum(d: &SymmetryDatum) -> SymmetryReport {
    let mut checks = Vec::new();
    let mut push = |name, pass: bool, detail: String| checks.push(Check { name, pass, detail });
    let (g, h) = (d.g.as_ref(), d.h.as_ref());
    let mut s_sorted = d.s.clone();
    s_sorted.sort_unstable();
    s_sorted.dedup();
    let in_s = |x: usize| s_sorted.binary_search(&x).is_ok();

    push("s_distinct", s_sorted.len() == d.s.len(), format!("{} listed, {} distinct", d.s.len(), s_sorted.len()));
    let asym: Vec<usize> = d.s.iter().copied().filter(|&x| !in_s(g.inv(x))).collect();
    push("s_symmetric", asym.is_empty(), format!("{} generators lack their inverse", asym.len()));
    push("identity_not_in_s", !in_s(g.identity()), String::new());
    let reached = closure(g, &d.s).len();
    push("s_generates", reached == g.order(), format!("generated {reached} of {}", g.order()));
    push("s0_in_s", in_s(d.s0), format!("s0 = {}", g.label(d.s0)));

    let theta_ok = d.theta.len() == h.order() && d.theta.iter().all(|a| a.len() == g.order());
    let auts = theta_ok && d.theta.iter().all(|a| a.verify(g).is_ok());
    push("theta_automorphisms", auts, format!("{} maps for |H| = {}", d.theta.len(), h.order()));
    let hom = theta_ok && check_action_homomorphism(h, &d.theta).is_ok();
    push("theta_homomorphism", hom, String::new());
    let preserves = theta_ok && d.theta.iter().all(|a| d.s.iter().all(|&x| in_s(a.apply(x))));
    push("theta_preserves_s", preserves, String::new());

    let orbit: Vec<usize> = if theta_ok { (0..h.order()).map(|x| d.theta[x].apply(d.s0)).collect() } else { Vec::new() };
    let mut orbit_sorted = orbit.clone();
    orbit_sorted.sort_unstable();
    orbit_sorted.dedup();
    push(
        "action_transitive",
        theta_ok && orbit_sorted == s_sorted,
        format!("orbit of s0 has {} elements, |S| = {}", orbit_sorted.len(), s_sorted.len()),
    );
    // for a transitive action, trivial stabilizers everywhere ⇔ |orbit map| injective
    let free = theta_ok
        && s_sorted.iter().all(|&x| (0..h.order()).filter(|&y| d.theta[y].apply(x) == x).count() == 1);
    push("action_free", free, format!("|H| = {}, |S| = {}", h.order(), s_sorted.len()));

    let same_parent = Arc::ptr_eq(d.k.parent(), &d.g) || d.k.parent().order() == g.order();
    push("k_index_two", same_parent && d.k.order() * 2 == g.order(), format!("|K| = {}", d.k.order()));
    push("k_disjoint_from_s", same_parent && d.s.iter().all(|&x| !d.k.contains(x)), String::new());
    let k_inv = theta_ok && same_parent && d.theta.iter().all(|a| d.k.members().iter().all(|&x| d.k.contains(a.apply(x))));
    push("k_theta_invariant", k_inv, String::new());

    let t_range = d.t.iter().all(|&x| x < h.order());
    push("t_subset_of_h", t_range, format!("T = {:?}", d.t));
    let t_sym = t_range && d.t.iter().all(|&x| d.t.contains(&h.inv(x)));
    push("t_symmetric", t_sym, String::new());
    push("identity_not_in_t", !d.t.contains(&h.identity()), String::new());
    let mut t_sorted = d.t.clone();
    t_sorted.sort_unstable();
    t_sorted.dedup();
    push("t_distinct", t_sorted.len() == d.t.len(), String::new());

    SymmetryReport { checks }
}

/// A datum that passed [`verify_symmetry_datum`], with derived tables.
#[derive(Clone)]
pub struct CheckedDatum {
    datum: SymmetryDatum,
    /// `direction[h] = θ_h(s₀)`.
    direction: Vec<usize>,
    /// `h` with `θ_h(s₀) = s`, indexed by group element (usize::MAX off S).
    direction_inv: Vec<usize>,
    cayley: CayleyGraph,
    product: Arc<SemidirectProduct>,
}

impl std::fmt::Debug for CheckedDatum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.datum.fmt(f)
    }
}

impl SymmetryDatum {
    pub fn check(self) -> Result<CheckedDatum> {
        let report = verify_symmetry_datum(&self);
        if !report.all_pass() {
            return Err(Error::InvalidDatum(report.failures().join(", ")));
        }
        let direction: Vec<usize> = (0..self.h.order()).map(|x| self.theta[x].apply(self.s0)).collect();
        let mut direction_inv = vec![usize::MAX; self.g.order()];
        for (x, &s) in direction.iter().enumerate() {
            direction_inv[s] = x;
        }
        let cayley = cayley_graph(self.g.clone(), &self.s)?;
        let theta_k = self.theta.iter().map(|a| a.restrict(&self.k)).collect::<Result<Vec<_>>>()?;
        let kref: GroupRef = self.k.clone();
        let product = Arc::new(semidirect_product(kref, self.h.clone(), theta_k)?);
        Ok(CheckedDatum { datum: self, direction, direction_inv, cayley, product })
    }

    /// Same datum with a different `T`.
    pub fn with_t(&self, t: Vec<usize>) -> SymmetryDatum {
        SymmetryDatum { t, ..self.clone() }
    }
}

impl CheckedDatum {
    pub fn datum(&self) -> &SymmetryDatum {
        &self.datum
    }

    pub fn cayley(&self) -> &CayleyGraph {
        &self.cayley
    }

    /// `K ⋊_θ H`.
    pub fn product(&self) -> &Arc<SemidirectProduct> {
        &self.product
    }

    pub fn with_t(&self, t: Vec<usize>) -> Result<CheckedDatum> {
        self.datum.with_t(t).check()
    }

    /// `θ_h(s₀)`.
    pub fn direction(&self, h: usize) -> usize {
        self.direction[h]
    }

    /// The `h` with `θ_h(s₀) = s`.
    pub fn direction_of(&self, s: usize) -> usize {
        self.direction_inv[s]
    }

    /// `σ₁(h) = (1_K, h)`.
    pub fn sigma1(&self, h: usize) -> SemidirectElement {
        SemidirectElement { k: self.datum.k.identity(), h }
    }

    /// `σ₂(h) = (s₀·θ_h(s₀⁻¹), h)`.
    pub fn sigma2(&self, h: usize) -> Result<SemidirectElement> {
        let d = &self.datum;
        let g = d.g.as_ref();
        let first = g.mul(d.s0, d.theta[h].apply(g.inv(d.s0)));
        let k = d.k.from_parent(first).ok_or_else(|| Error::InvalidDatum("s0·θ_h(s0⁻¹) lies outside K".into()))?;
        Ok(SemidirectElement { k, h })
    }

    /// `Σ₁ᵀ ∪ Σ₂ᵀ` as indices of `K ⋊_θ H`, sorted and deduplicated.
    pub fn sigma_set(&self) -> Result<Vec<usize>> {
        let mut out = Vec::with_capacity(2 * self.datum.t.len());
        for &t in &self.datum.t {
            out.push(self.product.index(self.sigma1(t)));
            out.push(self.product.index(self.sigma2(t)?));
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// `e_g(h)` as an ordered pair:
    /// `(g, g·θ_h(s₀))` for `g ∈ K`, `(g·θ_h(s₀⁻¹), g)` for `g ∈ Ks₀`.
    pub fn edge_star(&self, g: usize, h: usize) -> (usize, usize) {
        let d = &self.datum;
        let grp = d.g.as_ref();
        if d.k.contains(g) {
            (g, grp.mul(g, self.direction[h]))
        } else {
            (grp.mul(g, d.theta[h].apply(grp.inv(d.s0))), g)
        }
    }

    /// Index (in Cay(G, S) edge order) of `e_g(h)`.
    pub fn edge_star_index(&self, g: usize, h: usize) -> usize {
        let (a, b) = self.edge_star(g, h);
        self.cayley.graph.edge_index(a, b).expect("e_g(h) is an edge incident to g")
    }

    /// Assignment for [`ac_product`]: at vertex `g`, the edge `e_g(h)` gets Δ-vertex `h`.
    pub fn symmetric_assignment(&self) -> Vec<Vec<usize>> {
        let g = &self.cayley.graph;
        (0..g.vertex_count())
            .map(|v| {
                let mut slot = vec![usize::MAX; g.degree(v)];
                for x in 0..self.datum.h.order() {
                    let (a, b) = self.edge_star(v, x);
                    let other = if a == v { b } else { a };
                    let pos = g.neighbors(v).binary_search(&(other as u32)).expect("incident edge");
                    slot[pos] = x;
                }
                slot
            })
            .collect()
    }
}

/// `Γ(G, S, s₀, K, H, θ, T)`: vertices are the edges of Cay(G, S) in edge order,
/// with `e_g(h) ~ e_g(ht)` for `g ∈ G`, `h ∈ H`, `t ∈ T`.
pub fn gamma_graph(cd: &CheckedDatum) -> Result<Graph> {
    let d = cd.datum();
    let cay = &cd.cayley.graph;
    let hg = d.h.as_ref();
    let mut edges = Vec::with_capacity(cay.vertex_count() * hg.order() * d.t.len());
    for g in 0..d.g.order() {
        let star: Vec<usize> = (0..hg.order()).map(|x| cd.edge_star_index(g, x)).collect();
        for x in 0..hg.order() {
            for &t in &d.t {
                let (a, b) = (star[x], star[hg.mul(x, t)]);
                edges.push((a.min(b), a.max(b)));
            }
        }
    }
    // each undirected edge arises once from t and once from t⁻¹
    edges.sort_unstable();
    edges.dedup();
    let labels = cay.edges().map(|(u, v)| VertexLabel::Edge(u, v)).collect();
    Ok(Graph::from_edges(cay.edge_count(), edges)?.with_labels(labels))
}

/// `X = Cay(K ⋊_θ H, Σ₁ᵀ ∪ Σ₂ᵀ)`.
pub fn x_graph(cd: &CheckedDatum) -> Result<CayleyGraph> {
    let gens = cd.sigma_set()?;
    let group: GroupRef = cd.product.clone();
    cayley_graph(group, &gens).map_err(|e| Error::InvalidDatum(format!("Σ set rejected: {e}")))
}

/// `f(k, h) = {k, k·θ_h(s₀)}` as a map from `K ⋊_θ H` indices to Cay(G, S) edge indices.
pub fn iso_f(cd: &CheckedDatum) -> Vec<usize> {
    let d = cd.datum();
    let g = d.g.as_ref();
    (0..cd.product.order())
        .map(|i| {
            let e = cd.product.element(i);
            let k = d.k.to_parent(e.k);
            cd.cayley.graph.edge_index(k, g.mul(k, cd.direction[e.h])).expect("f lands on an edge")
        })
        .collect()
}

/// Alon–Capalbo product of a `d`-regular `base` with a graph `delta` on `d`
/// vertices. `assignment[v][j]` is the Δ-vertex given to the edge from `v` to
/// its `j`-th neighbor. Vertices of the result are the edges of `base`.
pub fn ac_product(base: &Graph, delta: &Graph, assignment: &[Vec<usize>]) -> Result<Graph> {
    let d = delta.vertex_count();
    if let Some(v) = (0..base.vertex_count()).find(|&v| base.degree(v) != d) {
        return Err(Error::DegreeMismatch { expected: d, found: base.degree(v) });
    }
    if assignment.len() != base.vertex_count() {
        return Err(Error::LengthMismatch { expected: base.vertex_count(), got: assignment.len() });
    }
    let mut edges = Vec::new();
    for (v, slots) in assignment.iter().enumerate() {
        let mut position = vec![usize::MAX; d];
        for (j, &x) in slots.iter().enumerate() {
            if x >= d || position[x] != usize::MAX {
                return Err(Error::NotBijective);
            }
            position[x] = j;
        }
        if slots.len() != d {
            return Err(Error::NotBijective);
        }
        let nb = base.neighbors(v);
        for (a, b) in delta.edges() {
            let ea = base.edge_index(v, nb[position[a]] as usize).unwrap();
            let eb = base.edge_index(v, nb[position[b]] as usize).unwrap();
            edges.push((ea, eb));
        }
    }
    let labels = base.edges().map(|(u, v)| VertexLabel::Edge(u, v)).collect();
    Ok(Graph::from_edges(base.edge_count(), edges)?.with_labels(labels))
}

/// Independent random bijections per vertex, seeded.
pub fn random_assignment(base: &Graph, seed: u64) -> Vec<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..base.vertex_count())
        .map(|v| {
            let mut p: Vec<usize> = (0..base.degree(v)).collect();
            p.shuffle(&mut rng);
            p
        })
        .collect()
}
