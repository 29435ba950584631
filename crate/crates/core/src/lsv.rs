//! Simply-generator-symmetric bipartite Ramanujan Cayley graphs on PGL2(q^n).
//!
//! The generators are the orbit `S = {t^h b t^{−h}}` of a seed element `b`
//! under conjugation by the nonsplit torus `C_{q+1} = ⟨t⟩`. The seed is found
//! by a deterministic scan over PGL2(q^n) ∖ PSL2(q^n) in canonical element
//! order, starting at a seed-derived offset. A candidate is accepted when its
//! orbit is free (size q+1), closed under inversion, generates the group, and
//! the resulting Cayley graph passes the Ramanujan test.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::field::{prime_power, Field, FieldElement};
use crate::algebra::group::{closure, CyclicGroup, FiniteGroup, GroupRef, Subgroup};
use crate::algebra::pgl2::{psl2_subgroup, Pgl2};
use crate::algebra::semidirect::{check_action_homomorphism, inner_automorphism, Automorphism};
use crate::algebra::torus::{nonsplit_torus_embedding, TorusEmbedding};
use crate::error::{Error, Result};
use crate::graph::spectrum::{is_ramanujan_dense, is_ramanujan_iterative, EigenInterval, DENSE_CAP, ITERATIVE_TOLERANCE};
use crate::graph::{bipartite_subgroup, cayley_graph, CayleyGraph};
use crate::symmetry::SymmetryDatum;

pub const SUMMARY_SCHEMA_VERSION: u32 = 1;
/// Spectral tests attempted before giving up.
pub const MAX_SPECTRAL_ATTEMPTS: usize = 64;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum RamanujanCertificate {
    Exact { bound: f64, threshold: f64 },
    Interval { bound: f64, lower: f64, residual: f64, threshold: f64 },
    Unverified,
}

impl RamanujanCertificate {
    pub fn is_certified(&self) -> bool {
        !matches!(self, RamanujanCertificate::Unverified)
    }
}

/// PGL2(q^n) with the torus action θ: C_{q+1} → Aut(PGL2(q^n)) by conjugation.
#[derive(Clone)]
pub struct TorusAction {
    pub q: u64,
    pub n: u32,
    pub group: Arc<Pgl2>,
    pub torus: TorusEmbedding,
    pub theta: Arc<Vec<Automorphism>>,
}

/// Builds PGL2(q^n) and `θ_h = conjugation by t^h`.
pub fn torus_action(q: u64, n: u32) -> Result<TorusAction> {
    let (p, m) = prime_power(q).filter(|&(p, _)| p != 2).ok_or(Error::NotOddPrimePower(q))?;
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    if n > 1 && m != 1 {
        return Err(Error::InvalidParameter(format!("n > 1 requires prime q, got {q}")));
    }
    let field = Arc::new(Field::with_default_modulus(p, m * n)?);
    let group = Arc::new(Pgl2::new(field)?);
    let torus = nonsplit_torus_embedding(&group, q)?;
    let theta: Vec<Automorphism> = torus.images.iter().map(|&t| inner_automorphism(group.as_ref(), t)).collect();
    check_action_homomorphism(&CyclicGroup::new(q as usize + 1), &theta)?;
    Ok(TorusAction { q, n, group, torus, theta: Arc::new(theta) })
}

impl TorusAction {
    pub fn orbit(&self, b: usize) -> Vec<usize> {
        self.theta.iter().map(|a| a.apply(b)).collect()
    }

    /// The structural conditions on a seed: outside PSL2, free orbit, symmetric orbit,
    /// orbit generates. Returns the orbit when all hold.
    pub fn admissible(&self, b: usize) -> Option<Vec<usize>> {
        let g = self.group.as_ref();
        if g.in_psl2(b) {
            return None;
        }
        let orbit = self.orbit(b);
        let mut sorted = orbit.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != orbit.len() {
            return None;
        }
        if sorted.binary_search(&g.inv(b)).is_err() {
            return None;
        }
        (closure(g, &orbit).len() == g.order()).then_some(orbit)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedCandidate {
    pub b: usize,
    pub orbit: Vec<usize>,
    /// Position in the scan (number of elements examined, including this one).
    pub scanned: usize,
}

/// Scan start for a given seed.
pub fn scan_offset(order: usize, seed: u64) -> usize {
    ChaCha8Rng::seed_from_u64(seed).gen_range(0..order)
}

/// First admissible seed element at or after scan position `from`.
pub fn search_seed_from(action: &TorusAction, seed: u64, from: usize) -> Result<SeedCandidate> {
    let order = action.group.order();
    let offset = scan_offset(order, seed);
    for pos in from..order {
        let b = (offset + pos) % order;
        if let Some(orbit) = action.admissible(b) {
            return Ok(SeedCandidate { b, orbit, scanned: pos + 1 });
        }
    }
    Err(Error::SearchExhausted { tried: order.saturating_sub(from) })
}

pub fn search_seed(action: &TorusAction, seed: u64) -> Result<SeedCandidate> {
    search_seed_from(action, seed, 0)
}

#[derive(Clone)]
pub struct LsvGraphDatum {
    pub action: TorusAction,
    pub seed: u64,
    pub b: usize,
    /// `orbit[h] = θ_h(b)`.
    pub orbit: Vec<usize>,
    pub psl2: Arc<Subgroup>,
    pub cayley: CayleyGraph,
    pub certificate: RamanujanCertificate,
    pub candidates_tried: usize,
}

impl std::fmt::Debug for LsvGraphDatum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LsvGraphDatum(q={}, n={}, b={})", self.action.q, self.action.n, self.action.group.label(self.b))
    }
}

impl std::fmt::Debug for TorusAction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TorusAction(q={}, n={})", self.q, self.n)
    }
}

fn certify(cayley: &CayleyGraph, seed: u64) -> Result<(bool, RamanujanCertificate)> {
    let g = &cayley.graph;
    if g.vertex_count() <= DENSE_CAP {
        let v = is_ramanujan_dense(g, true)?;
        Ok((v.ramanujan, RamanujanCertificate::Exact { bound: v.witness, threshold: v.threshold }))
    } else {
        let v = is_ramanujan_iterative(g, true, ITERATIVE_TOLERANCE, seed)?;
        let iv: EigenInterval = v.interval.expect("interval mode");
        Ok((
            v.ramanujan,
            RamanujanCertificate::Interval { bound: iv.upper, lower: iv.lower, residual: iv.residual, threshold: v.threshold },
        ))
    }
}

fn assemble(action: TorusAction, seed: u64, b: usize, orbit: Vec<usize>) -> Result<(LsvGraphDatum, Arc<Subgroup>)> {
    let group: GroupRef = action.group.clone();
    let cayley = cayley_graph(group, &orbit)?;
    let psl2 = Arc::new(psl2_subgroup(&action.group)?);
    let bip = bipartite_subgroup(&cayley)?.ok_or_else(|| Error::InvalidDatum("Cayley graph is not bipartite".into()))?;
    if bip.members() != psl2.members() {
        return Err(Error::InvalidDatum("bipartition differs from PSL2".into()));
    }
    let datum = LsvGraphDatum {
        action,
        seed,
        b,
        orbit,
        psl2: psl2.clone(),
        cayley,
        certificate: RamanujanCertificate::Unverified,
        candidates_tried: 0,
    };
    Ok((datum, psl2))
}

/// Searches, verifies and certifies `Cay(PGL2(q^n), S(n))`. Candidates failing the
/// spectral test are skipped; the search fails explicitly after
/// [`MAX_SPECTRAL_ATTEMPTS`] rejections.
pub fn build_lsv(q: u64, n: u32, seed: u64) -> Result<LsvGraphDatum> {
    let action = torus_action(q, n)?;
    let mut from = 0;
    let mut attempts = 0;
    loop {
        let cand = match search_seed_from(&action, seed, from) {
            Ok(c) => c,
            Err(Error::SearchExhausted { .. }) => return Err(Error::NoRamanujanSeed { tried: attempts }),
            Err(e) => return Err(e),
        };
        attempts += 1;
        let (mut datum, _) = assemble(action.clone(), seed, cand.b, cand.orbit)?;
        let (ok, cert) = certify(&datum.cayley, seed)?;
        if ok {
            datum.certificate = cert;
            datum.candidates_tried = attempts;
            let report = crate::symmetry::verify_symmetry_datum(&datum.symmetry_datum(Vec::new()));
            if !report.all_pass() {
                return Err(Error::InvalidDatum(report.failures().join(", ")));
            }
            return Ok(datum);
        }
        if attempts >= MAX_SPECTRAL_ATTEMPTS {
            return Err(Error::NoRamanujanSeed { tried: attempts });
        }
        from = cand.scanned;
    }
}

/// Rebuilds the datum for a known seed element, re-checking the structural
/// conditions. The Ramanujan certificate is recomputed only when `certify_spectrum`.
pub fn rebuild_lsv(q: u64, n: u32, b_entries: [u32; 4], seed: u64, certify_spectrum: bool) -> Result<LsvGraphDatum> {
    let action = torus_action(q, n)?;
    let b = action
        .group
        .find(&b_entries.map(FieldElement))
        .ok_or_else(|| Error::InvalidParameter("seed matrix is singular or out of range".into()))?;
    let orbit = action.admissible(b).ok_or_else(|| Error::InvalidDatum("seed element fails the orbit conditions".into()))?;
    let (mut datum, _) = assemble(action, seed, b, orbit)?;
    if certify_spectrum {
        let (ok, cert) = certify(&datum.cayley, seed)?;
        if !ok {
            return Err(Error::NoRamanujanSeed { tried: 1 });
        }
        datum.certificate = cert;
    }
    Ok(datum)
}

impl LsvGraphDatum {
    pub fn q(&self) -> u64 {
        self.action.q
    }

    pub fn n(&self) -> u32 {
        self.action.n
    }

    pub fn group(&self) -> &Arc<Pgl2> {
        &self.action.group
    }

    /// `(PGL2(q^n), S(n), b, PSL2(q^n), C_{q+1}, θ, T)`.
    pub fn symmetry_datum(&self, t: Vec<usize>) -> SymmetryDatum {
        SymmetryDatum {
            g: self.action.group.clone(),
            s: self.orbit.clone(),
            s0: self.b,
            k: self.psl2.clone(),
            h: Arc::new(CyclicGroup::new(self.q() as usize + 1)),
            theta: self.action.theta.clone(),
            t,
        }
    }

    pub fn summary(&self) -> LsvSummary {
        let g = self.group();
        LsvSummary {
            schema_version: SUMMARY_SCHEMA_VERSION,
            q: self.q(),
            n: self.n(),
            seed: self.seed,
            group_order: g.order(),
            field_modulus: g.field().modulus().to_vec(),
            b: g.matrix(self.b).0.map(|e| e.0),
            orbit: self.orbit.iter().map(|&s| g.matrix(s).0.map(|e| e.0)).collect(),
            bipartite: true,
            degree: self.orbit.len(),
            vertices: self.cayley.graph.vertex_count(),
            edges: self.cayley.graph.edge_count(),
            candidates_tried: self.candidates_tried,
            ramanujan: self.certificate.clone(),
        }
    }
}

/// Machine-readable record of a built graph. Field elements are written as
/// integers `a_0 + a_1 p + …` in the basis of the listed modulus.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct LsvSummary {
    pub schema_version: u32,
    pub q: u64,
    pub n: u32,
    pub seed: u64,
    pub group_order: usize,
    pub field_modulus: Vec<u32>,
    pub b: [u32; 4],
    pub orbit: Vec<[u32; 4]>,
    pub bipartite: bool,
    pub degree: usize,
    pub vertices: usize,
    pub edges: usize,
    pub candidates_tried: usize,
    pub ramanujan: RamanujanCertificate,
}
