//! Tanner codes on graphs, Cayley codes, the orbit presentation of symmetric
//! Cayley codes, and symmetry checks for codes under group actions.
//!
//! Coordinates of a code on a graph are its edges in [`Graph::edges`] order.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::group::{generating_set, FiniteGroup, GroupRef};
use crate::algebra::semidirect::semidirect_product;
use crate::bits::BitVec;
use crate::codes::LinearCode;
use crate::error::{Error, Result};
use crate::graph::{CayleyGraph, Graph};
use crate::symmetry::CheckedDatum;

/// For each vertex `v`, the bijection `h ↦ e(v, h)` from local coordinates onto the star of `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceAssignment {
    /// `edges[v][h]` is the edge index of `e(v, h)`.
    pub edges: Vec<Vec<usize>>,
}

impl IncidenceAssignment {
    pub fn new(graph: &Graph, edges: Vec<Vec<usize>>) -> Result<Self> {
        if edges.len() != graph.vertex_count() {
            return Err(Error::LengthMismatch { expected: graph.vertex_count(), got: edges.len() });
        }
        for (v, star) in edges.iter().enumerate() {
            let mut expected: Vec<usize> = graph.neighbors(v).iter().map(|&w| graph.edge_index(v, w as usize).unwrap()).collect();
            let mut got = star.clone();
            expected.sort_unstable();
            got.sort_unstable();
            if expected != got {
                return Err(Error::NotBijective);
            }
        }
        Ok(IncidenceAssignment { edges })
    }

    /// `e(v, j)` is the edge to the `j`-th neighbor of `v` in ascending order.
    pub fn sorted_neighbors(graph: &Graph) -> Self {
        let edges = (0..graph.vertex_count())
            .map(|v| graph.neighbors(v).iter().map(|&w| graph.edge_index(v, w as usize).unwrap()).collect())
            .collect();
        IncidenceAssignment { edges }
    }

    /// `e(v, h) = (v, v·directions[h])`.
    pub fn cayley(cg: &CayleyGraph, directions: &[usize]) -> Result<Self> {
        let mut d = directions.to_vec();
        let mut s = cg.generators.clone();
        d.sort_unstable();
        s.sort_unstable();
        if d != s {
            return Err(Error::NotBijective);
        }
        let g = cg.group.as_ref();
        let edges = (0..g.order())
            .map(|v| directions.iter().map(|&s| cg.graph.edge_index(v, g.mul(v, s)).expect("Cayley edge")).collect())
            .collect();
        Ok(IncidenceAssignment { edges })
    }

    /// `e(v, h) = (v, v·θ_h(s₀))`.
    pub fn symmetric(cd: &CheckedDatum) -> Self {
        let dirs: Vec<usize> = (0..cd.datum().h.order()).map(|h| cd.direction(h)).collect();
        Self::cayley(cd.cayley(), &dirs).expect("θ_h(s₀) enumerates S")
    }

    /// The local view `(w_{e(v,h)})_h`.
    pub fn local_view(&self, word: &BitVec, v: usize) -> BitVec {
        BitVec::from_bools(&self.edges[v].iter().map(|&e| word.get(e)).collect::<Vec<_>>())
    }
}

/// Words on the edges whose local view at every vertex lies in `b`. One
/// constraint row per (vertex, row of `b`), in that order.
pub fn tanner_code(graph: &Graph, b: &LinearCode, assignment: &IncidenceAssignment) -> Result<LinearCode> {
    let l = b.len();
    if let Some(v) = (0..graph.vertex_count()).find(|&v| graph.degree(v) != l) {
        return Err(Error::DegreeMismatch { expected: l, found: graph.degree(v) });
    }
    if assignment.edges.len() != graph.vertex_count() {
        return Err(Error::LengthMismatch { expected: graph.vertex_count(), got: assignment.edges.len() });
    }
    let m = graph.edge_count();
    let rows: Vec<BitVec> = assignment
        .edges
        .par_iter()
        .flat_map_iter(|star| b.constraints().iter().map(move |r| BitVec::from_indices(m, r.ones().map(|h| star[h]))))
        .collect();
    LinearCode::from_constraints(m, rows)
}

/// `Cay(G, S, B)` with `e(v, h) = (v, v·directions[h])`.
pub fn cayley_code(cg: &CayleyGraph, b: &LinearCode, directions: &[usize]) -> Result<LinearCode> {
    if directions.len() != b.len() {
        return Err(Error::LengthMismatch { expected: b.len(), got: directions.len() });
    }
    tanner_code(&cg.graph, b, &IncidenceAssignment::cayley(cg, directions)?)
}

/// Permutation of `H` coordinates by left translation `x ↦ hx`.
pub fn left_translation(h: &dyn FiniteGroup, by: usize) -> Vec<usize> {
    (0..h.order()).map(|x| h.mul(by, x)).collect()
}

/// `B` (on coordinates indexed by `H`) is closed under every left translation.
pub fn is_translation_invariant(h: &dyn FiniteGroup, b: &LinearCode) -> bool {
    b.len() == h.order()
        && generating_set(h).iter().all(|&g| {
            let perm = left_translation(h, g);
            b.generators().iter().all(|w| b.contains(&w.permute(&perm)))
        })
}

/// The Cayley code with `h ↦ θ_h(s₀)`, for `B` invariant under `H`-translation.
pub fn symmetric_cayley_code(cd: &CheckedDatum, b: &LinearCode) -> Result<LinearCode> {
    let h = cd.datum().h.as_ref();
    if b.len() != h.order() {
        return Err(Error::LengthMismatch { expected: h.order(), got: b.len() });
    }
    if !is_translation_invariant(h, b) {
        return Err(Error::NotTranslationInvariant);
    }
    tanner_code(&cd.cayley().graph, b, &IncidenceAssignment::symmetric(cd))
}

/// Code on `H` whose constraints are the translates `h·T` (as indicators), one per `h`.
pub fn single_orbit_code(h: &dyn FiniteGroup, t: &[usize]) -> Result<LinearCode> {
    let n = h.order();
    if let Some(&x) = t.iter().find(|&&x| x >= n) {
        return Err(Error::VertexOutOfRange(x));
    }
    let rows = if t.is_empty() {
        Vec::new()
    } else {
        (0..n).map(|x| BitVec::from_indices(n, t.iter().map(|&y| h.mul(x, y)))).collect()
    };
    LinearCode::from_constraints(n, rows)
}

/// Code on the coordinates `K ⋊_θ H` defined by the left-translation orbits of
/// `Σ_{t∈T} w_{(1,t)}` and `Σ_{t∈T} w_{σ₂(t)}`: one row `Σ_t w_{x·σᵢ(t)}` per
/// `x` and `i`.
pub fn orbit_code(cd: &CheckedDatum) -> Result<LinearCode> {
    let p = cd.product();
    let n = p.order();
    let t = &cd.datum().t;
    let sig1: Vec<usize> = t.iter().map(|&x| p.index(cd.sigma1(x))).collect();
    let sig2: Vec<usize> = t.iter().map(|&x| cd.sigma2(x).map(|e| p.index(e))).collect::<Result<_>>()?;
    let rows: Vec<BitVec> = if t.is_empty() {
        Vec::new()
    } else {
        (0..n)
            .into_par_iter()
            .flat_map_iter(|x| {
                [&sig1, &sig2].map(|sig| BitVec::from_indices(n, sig.iter().map(|&s| p.mul(x, s))))
            })
            .collect()
    };
    LinearCode::from_constraints(n, rows)
}

/// A group acting on `0..len`, tabulated: `table[g·len + x] = g·x`.
#[derive(Clone)]
pub struct GroupCodeAction {
    pub group: GroupRef,
    pub len: usize,
    table: Vec<u32>,
}

impl std::fmt::Debug for GroupCodeAction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GroupCodeAction(|G|={}, len={})", self.group.order(), self.len)
    }
}

impl GroupCodeAction {
    /// Tabulates `act` and checks the action laws.
    pub fn new(group: GroupRef, len: usize, act: impl Fn(usize, usize) -> usize + Sync) -> Result<Self> {
        let order = group.order();
        let table: Vec<u32> = (0..order)
            .into_par_iter()
            .flat_map_iter(|g| (0..len).map(move |x| (g, x)).collect::<Vec<_>>())
            .map(|(g, x)| act(g, x) as u32)
            .collect();
        let a = GroupCodeAction { group, len, table };
        a.check_laws()?;
        Ok(a)
    }

    #[inline]
    pub fn apply(&self, g: usize, x: usize) -> usize {
        self.table[g * self.len + x] as usize
    }

    pub fn permutation(&self, g: usize) -> Vec<usize> {
        (0..self.len).map(|x| self.apply(g, x)).collect()
    }

    fn check_laws(&self) -> Result<()> {
        let g = self.group.as_ref();
        if self.table.iter().any(|&y| y as usize >= self.len) {
            return Err(Error::MalformedAction("image out of range".into()));
        }
        if (0..self.len).any(|x| self.apply(g.identity(), x) != x) {
            return Err(Error::MalformedAction("identity acts nontrivially".into()));
        }
        // compatibility for generators against all elements implies it for all pairs
        for a in generating_set(g) {
            for b in 0..g.order() {
                let ab = g.mul(a, b);
                if (0..self.len).any(|x| self.apply(ab, x) != self.apply(a, self.apply(b, x))) {
                    return Err(Error::MalformedAction(format!("(gh)x != g(hx) for g={a}, h={b}")));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeSymmetryReport {
    pub invariant: bool,
    pub transitive: bool,
    pub free: bool,
    pub simply_symmetric: bool,
    pub group_order: usize,
    pub length: usize,
}

pub fn check_symmetry(code: &LinearCode, action: &GroupCodeAction) -> Result<CodeSymmetryReport> {
    if code.len() != action.len {
        return Err(Error::LengthMismatch { expected: action.len, got: code.len() });
    }
    let g = action.group.as_ref();
    let gens = generating_set(g);
    let invariant = gens.par_iter().all(|&a| {
        let perm = action.permutation(a);
        code.generators().iter().all(|w| code.contains(&w.permute(&perm)))
    });
    let mut seen = vec![false; action.len];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for &a in &gens {
            let y = action.apply(a, x);
            if !std::mem::replace(&mut seen[y], true) {
                stack.push(y);
            }
        }
    }
    let transitive = seen.iter().all(|&b| b);
    let free = (0..g.order()).into_par_iter().filter(|&a| a != g.identity()).all(|a| (0..action.len).all(|x| action.apply(a, x) != x));
    Ok(CodeSymmetryReport {
        invariant,
        transitive,
        free,
        simply_symmetric: invariant && transitive && free,
        group_order: g.order(),
        length: action.len,
    })
}

/// `K ⋊_θ H` acting on itself by left translation.
pub fn product_left_action(cd: &CheckedDatum) -> Result<GroupCodeAction> {
    let p = cd.product().clone();
    let n = p.order();
    let grp: GroupRef = p.clone();
    GroupCodeAction::new(grp, n, move |a, x| p.mul(a, x))
}

/// `G ⋊_θ H` acting on the edges of Cay(G, S) by `(g, h)·{u, v} = {g·θ_h(u), g·θ_h(v)}`.
pub fn full_edge_action(cd: &CheckedDatum) -> Result<GroupCodeAction> {
    let d = cd.datum();
    let gp = semidirect_product(d.g.clone(), d.h.clone(), d.theta.as_ref().clone())?;
    let graph = cd.cayley().graph.clone();
    let edges: Vec<(usize, usize)> = graph.edges().collect();
    let g = d.g.clone();
    let theta = d.theta.clone();
    let hord = d.h.order();
    let grp: GroupRef = std::sync::Arc::new(gp);
    GroupCodeAction::new(grp, edges.len(), move |a, e| {
        let (x, h) = (a / hord, a % hord);
        let (u, v) = edges[e];
        let (u2, v2) = (g.mul(x, theta[h].apply(u)), g.mul(x, theta[h].apply(v)));
        graph.edge_index(u2, v2).expect("θ_h preserves S")
    })
}

/// Cyclic group `C_n` rotating coordinates of a length-`n` code.
pub fn rotation_action(n: usize) -> Result<GroupCodeAction> {
    let grp: GroupRef = std::sync::Arc::new(crate::algebra::group::CyclicGroup::new(n));
    GroupCodeAction::new(grp, n, move |a, x| (a + x) % n)
}

/// Every local view of `word` is zero or has weight at least `d`.
pub fn local_subwords_ok(word: &BitVec, assignment: &IncidenceAssignment, d: usize) -> bool {
    (0..assignment.edges.len()).all(|v| {
        let w = assignment.local_view(word, v).weight();
        w == 0 || w >= d
    })
}

/// `rate(C) ≥ 2·rate(B) − 1`.
pub fn rate_bound_holds(code: &LinearCode, b: &LinearCode) -> bool {
    code.rate() >= b.rate() * 2 - 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{codes_equal, min_distance_exhaustive, parity, repetition};
    use crate::fixtures::hypercube_datum;
    use crate::symmetry::iso_f;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cube(t: Vec<usize>) -> CheckedDatum {
        hypercube_datum(3, t).unwrap().check().unwrap()
    }

    /// Independent oracle: the cycle space has dimension |E| − |V| + #components.
    fn cycle_space_dim(g: &Graph) -> usize {
        g.edge_count() - g.vertex_count() + g.component_count()
    }

    #[test]
    fn cube_parity_is_cycle_space() {
        let cd = cube(vec![1, 2]);
        let g = &cd.cayley().graph;
        let b = parity(3).unwrap();
        let c = tanner_code(g, &b, &IncidenceAssignment::sorted_neighbors(g)).unwrap();
        assert_eq!((c.len(), c.dimension()), (12, 5));
        assert_eq!(c.dimension(), cycle_space_dim(g));
        assert_eq!(c.constraints().len(), 8);
        assert!(rate_bound_holds(&c, &b));
        let cay = cayley_code(cd.cayley(), &b, &[1, 2, 4]).unwrap();
        assert!(cay.same_code(&c));
        let sym = symmetric_cayley_code(&cd, &b).unwrap();
        assert!(sym.same_code(&c));
    }

    #[test]
    fn degenerate_local_codes() {
        let cd = cube(vec![1, 2]);
        let g = &cd.cayley().graph;
        let a = IncidenceAssignment::sorted_neighbors(g);
        let full = tanner_code(g, &LinearCode::full(3).unwrap(), &a).unwrap();
        assert_eq!(full.dimension(), 12);
        let zero = LinearCode::from_constraints(3, (0..3).map(|i| BitVec::from_indices(3, [i])).collect()).unwrap();
        assert_eq!(tanner_code(g, &zero, &a).unwrap().dimension(), 0);
        assert!(tanner_code(g, &parity(4).unwrap(), &a).is_err());
    }

    #[test]
    fn assignment_validation() {
        let g = Graph::cycle(4);
        assert!(IncidenceAssignment::new(&g, vec![vec![0, 1]; 4]).is_err());
        let ok = IncidenceAssignment::sorted_neighbors(&g);
        assert!(IncidenceAssignment::new(&g, ok.edges.clone()).is_ok());
    }

    #[test]
    fn non_invariant_b_rejected() {
        let cd = cube(vec![1, 2]);
        let b = LinearCode::from_constraints(3, vec![BitVec::parse("110").unwrap()]).unwrap();
        assert_eq!(symmetric_cayley_code(&cd, &b).unwrap_err(), Error::NotTranslationInvariant);
    }

    #[test]
    fn orbit_code_matches_symmetric_cayley_code_on_cubes() {
        for dim in 3..=6u32 {
            let t: Vec<usize> = (1..dim as usize).collect();
            let cd = hypercube_datum(dim, t).unwrap().check().unwrap();
            let b = single_orbit_code(cd.datum().h.as_ref(), &cd.datum().t).unwrap();
            let sym = symmetric_cayley_code(&cd, &b).unwrap();
            let orb = orbit_code(&cd).unwrap();
            assert!(codes_equal(&orb, &sym, &iso_f(&cd)).unwrap(), "dim {dim}");
        }
    }

    #[test]
    fn empty_t_gives_full_space() {
        let cd = cube(vec![]);
        assert_eq!(orbit_code(&cd).unwrap().dimension(), 12);
    }

    #[test]
    fn symmetry_reports() {
        let cd = cube(vec![1, 2]);
        let orb = orbit_code(&cd).unwrap();
        let r = check_symmetry(&orb, &product_left_action(&cd).unwrap()).unwrap();
        assert!(r.simply_symmetric && r.group_order == 12 && r.length == 12);
        let b = single_orbit_code(cd.datum().h.as_ref(), &cd.datum().t).unwrap();
        let sym = symmetric_cayley_code(&cd, &b).unwrap();
        let r = check_symmetry(&sym, &full_edge_action(&cd).unwrap()).unwrap();
        assert!(r.invariant && r.transitive && !r.free && !r.simply_symmetric);
        assert_eq!(r.group_order, 24);
        let b2 = crate::codes::build_b_double_prime();
        let r = check_symmetry(&b2.code, &rotation_action(79).unwrap()).unwrap();
        assert!(r.simply_symmetric);
    }

    #[test]
    fn cayley_code_need_not_be_symmetric() {
        let cd = cube(vec![1, 2]);
        let b = LinearCode::from_constraints(3, vec![BitVec::parse("110").unwrap()]).unwrap();
        let c = cayley_code(cd.cayley(), &b, &[1, 2, 4]).unwrap();
        let r = check_symmetry(&c, &full_edge_action(&cd).unwrap()).unwrap();
        assert!(!r.invariant && r.transitive);
    }

    #[test]
    fn malformed_action_detected() {
        let grp: GroupRef = std::sync::Arc::new(crate::algebra::group::CyclicGroup::new(4));
        let err = GroupCodeAction::new(grp.clone(), 4, |a, x| (x + a * a) % 4).unwrap_err();
        assert!(matches!(err, Error::MalformedAction(_)));
        assert!(GroupCodeAction::new(grp, 4, |a, x| (x + 3 * a) % 4).is_ok());
    }

    #[test]
    fn rotation_invariance_fails_for_non_cyclic() {
        let c = repetition(4).unwrap();
        assert!(check_symmetry(&c, &rotation_action(4).unwrap()).unwrap().invariant);
        let c = LinearCode::from_constraints(4, vec![BitVec::parse("1100").unwrap()]).unwrap();
        assert!(!check_symmetry(&c, &rotation_action(4).unwrap()).unwrap().invariant);
    }

    #[test]
    fn local_subwords_on_cube() {
        let cd = cube(vec![1, 2]);
        let b = parity(3).unwrap();
        let a = IncidenceAssignment::symmetric(&cd);
        let c = tanner_code(&cd.cayley().graph, &b, &a).unwrap();
        let d = min_distance_exhaustive(&b).unwrap().upper;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let w = c.random_codeword(&mut rng);
            assert!(local_subwords_ok(&w, &a, d));
        }
        assert!(!local_subwords_ok(&BitVec::from_indices(12, [0]), &a, d));
    }
}
