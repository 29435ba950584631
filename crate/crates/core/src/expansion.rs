//! Unique-neighbor expansion, induced average degree, and bound calculators.

use num_rational::Ratio;
use rand::{seq::index::sample, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const UNE_SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_SAMPLES_PER_SIZE: usize = 10_000;
/// Default cap on exhaustive work, in neighbor visits.
pub const DEFAULT_BUDGET: f64 = 2e10;

fn check_vertices(g: &Graph, x: &[usize]) -> Result<()> {
    match x.iter().find(|&&v| v >= g.vertex_count()) {
        Some(&v) => Err(Error::VertexOutOfRange(v)),
        None => Ok(()),
    }
}

/// Vertices outside `x` with exactly one neighbor in `x`, ascending.
pub fn unique_neighbors(g: &Graph, x: &[usize]) -> Result<Vec<usize>> {
    check_vertices(g, x)?;
    let mut inside = vec![false; g.vertex_count()];
    for &v in x {
        inside[v] = true;
    }
    let mut count = vec![0u32; g.vertex_count()];
    for v in (0..g.vertex_count()).filter(|&v| inside[v]) {
        for &w in g.neighbors(v) {
            count[w as usize] += 1;
        }
    }
    Ok((0..g.vertex_count()).filter(|&w| !inside[w] && count[w] == 1).collect())
}

/// Incremental unique-neighbor counter for a set built by push/pop.
struct Tracker<'a> {
    g: &'a Graph,
    count: Vec<u32>,
    inside: Vec<bool>,
    unique: usize,
}

impl<'a> Tracker<'a> {
    fn new(g: &'a Graph) -> Self {
        Tracker { g, count: vec![0; g.vertex_count()], inside: vec![false; g.vertex_count()], unique: 0 }
    }

    fn push(&mut self, v: usize) {
        if self.count[v] == 1 {
            self.unique -= 1;
        }
        self.inside[v] = true;
        for &w in self.g.neighbors(v) {
            let w = w as usize;
            self.count[w] += 1;
            if !self.inside[w] {
                match self.count[w] {
                    1 => self.unique += 1,
                    2 => self.unique -= 1,
                    _ => {}
                }
            }
        }
    }

    fn pop(&mut self, v: usize) {
        for &w in self.g.neighbors(v) {
            let w = w as usize;
            self.count[w] -= 1;
            if !self.inside[w] {
                match self.count[w] {
                    0 => self.unique -= 1,
                    1 => self.unique += 1,
                    _ => {}
                }
            }
        }
        self.inside[v] = false;
        if self.count[v] == 1 {
            self.unique += 1;
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum TestMode {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Witness {
    pub size: usize,
    pub unique: usize,
    pub ratio: f64,
    pub witness: Vec<usize>,
}

impl Witness {
    /// Smaller ratio first, then smaller set, then lexicographic.
    fn better_than(&self, other: &Witness) -> bool {
        let a = self.unique as u128 * other.size as u128;
        let b = other.unique as u128 * self.size as u128;
        (a, self.size, &self.witness) < (b, other.size, &other.witness)
    }
}

fn pick(a: Option<Witness>, b: Option<Witness>) -> Option<Witness> {
    match (a, b) {
        (Some(a), Some(b)) => Some(if b.better_than(&a) { b } else { a }),
        (a, None) => a,
        (None, b) => b,
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SizeResult {
    pub size: usize,
    pub mode: TestMode,
    pub tested: u64,
    pub violations: u64,
    pub worst: Witness,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct UneConfig {
    pub alpha: f64,
    pub epsilon: f64,
    pub exhaustive_max: usize,
    pub samples_per_size: usize,
    pub seed: u64,
    /// Refuse exhaustive runs estimated above this many neighbor visits.
    pub budget: f64,
}

impl UneConfig {
    pub fn new(alpha: f64, epsilon: f64) -> Self {
        UneConfig { alpha, epsilon, exhaustive_max: 2, samples_per_size: DEFAULT_SAMPLES_PER_SIZE, seed: 0, budget: DEFAULT_BUDGET }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct UneReport {
    pub schema_version: u32,
    pub graph: String,
    pub vertices: usize,
    pub alpha: f64,
    pub epsilon: f64,
    pub max_size: usize,
    pub exhaustive_max: usize,
    pub sample_sizes: Vec<usize>,
    pub samples_per_size: usize,
    pub seed: u64,
    pub pass: bool,
    /// Largest size for which every subset was tested.
    pub proven_up_to: usize,
    pub worst: Option<Witness>,
    pub violation: Option<Witness>,
    pub per_size: Vec<SizeResult>,
    pub note: String,
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Estimated neighbor visits for exhaustive enumeration up to size `m`.
pub fn exhaustive_cost(g: &Graph, m: usize) -> f64 {
    let d = g.max_degree().max(1) as f64;
    (1..=m.min(g.vertex_count())).map(|k| binomial(g.vertex_count(), k) * d).sum()
}

fn violates(unique: usize, size: usize, epsilon: f64) -> bool {
    (unique as f64) < epsilon * size as f64 - 1e-12
}

fn witness(t: &Tracker, set: &[usize]) -> Witness {
    let mut w = set.to_vec();
    w.sort_unstable();
    Witness { size: set.len(), unique: t.unique, ratio: t.unique as f64 / set.len() as f64, witness: w }
}

fn exhaustive_size(g: &Graph, size: usize, epsilon: f64) -> SizeResult {
    let n = g.vertex_count();
    let (tested, violations, worst) = (0..=n - size)
        .into_par_iter()
        .map(|first| {
            let mut t = Tracker::new(g);
            let mut stack = vec![first];
            t.push(first);
            let mut acc = (0u64, 0u64, None::<Witness>);
            fn rec(g: &Graph, t: &mut Tracker, stack: &mut Vec<usize>, size: usize, eps: f64, acc: &mut (u64, u64, Option<Witness>)) {
                if stack.len() == size {
                    acc.0 += 1;
                    if violates(t.unique, size, eps) {
                        acc.1 += 1;
                    }
                    let better = match &acc.2 {
                        None => true,
                        Some(w) => t.unique < w.unique,
                    };
                    if better {
                        acc.2 = Some(witness(t, stack));
                    }
                    return;
                }
                let start = stack.last().unwrap() + 1;
                let remaining = size - stack.len();
                for v in start..=g.vertex_count() - remaining {
                    t.push(v);
                    stack.push(v);
                    rec(g, t, stack, size, eps, acc);
                    stack.pop();
                    t.pop(v);
                }
            }
            rec(g, &mut t, &mut stack, size, epsilon, &mut acc);
            acc
        })
        .reduce(|| (0, 0, None), |a, b| (a.0 + b.0, a.1 + b.1, pick(a.2, b.2)));
    SizeResult { size, mode: TestMode::Exhaustive, tested, violations, worst: worst.expect("at least one subset") }
}

fn sample_rng(seed: u64, size: usize, i: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((size as u64) << 32) | i as u64);
    rng
}

fn sampled_size(g: &Graph, size: usize, samples: usize, epsilon: f64, seed: u64) -> SizeResult {
    let n = g.vertex_count();
    let (tested, violations, worst) = (0..samples)
        .into_par_iter()
        .map_init(
            || Tracker::new(g),
            |t, i| {
                let set = sample(&mut sample_rng(seed, size, i), n, size).into_vec();
                for &v in &set {
                    t.push(v);
                }
                let w = witness(t, &set);
                for &v in &set {
                    t.pop(v);
                }
                (1u64, violates(w.unique, size, epsilon) as u64, Some(w))
            },
        )
        .reduce(|| (0, 0, None), |a, b| (a.0 + b.0, a.1 + b.1, pick(a.2, b.2)));
    SizeResult { size, mode: TestMode::Sampled, tested, violations, worst: worst.expect("samples > 0") }
}

/// Tests `|U(X)| ≥ ε|X|` for every `X` with `|X| ≤ exhaustive_max` and on random
/// samples at sizes `2^i` up to `⌊α|V|⌋`. A violation disproves expansion at that
/// size; a pass above the exhaustive range is evidence only.
pub fn certify_une(g: &Graph, graph_id: &str, cfg: &UneConfig) -> Result<UneReport> {
    if !(0.0..=1.0).contains(&cfg.alpha) {
        return Err(Error::InvalidParameter(format!("alpha must lie in [0, 1], got {}", cfg.alpha)));
    }
    if cfg.epsilon.is_nan() || cfg.epsilon < 0.0 {
        return Err(Error::InvalidParameter(format!("epsilon must be non-negative, got {}", cfg.epsilon)));
    }
    let n = g.vertex_count();
    let max_size = ((cfg.alpha * n as f64) + 1e-9).floor() as usize;
    let max_size = max_size.min(n);
    let exhaustive_max = cfg.exhaustive_max.min(max_size);
    let cost = exhaustive_cost(g, exhaustive_max);
    if cost > cfg.budget {
        return Err(Error::BudgetExceeded { estimated: cost, budget: cfg.budget });
    }
    let mut per_size: Vec<SizeResult> = (1..=exhaustive_max).map(|s| exhaustive_size(g, s, cfg.epsilon)).collect();
    let sample_sizes: Vec<usize> = if cfg.samples_per_size == 0 {
        Vec::new()
    } else {
        std::iter::successors(Some(1usize), |s| s.checked_mul(2)).take_while(|&s| s <= max_size).filter(|&s| s > exhaustive_max).collect()
    };
    per_size.extend(sample_sizes.iter().map(|&s| sampled_size(g, s, cfg.samples_per_size, cfg.epsilon, cfg.seed)));

    let worst = per_size.iter().fold(None, |acc, r| pick(acc, Some(r.worst.clone())));
    let violation = per_size
        .iter()
        .filter(|r| r.violations > 0)
        .fold(None, |acc, r| pick(acc, Some(r.worst.clone())));
    let pass = violation.is_none();
    let note = if pass {
        format!("every subset of size <= {exhaustive_max} checked; sampled sizes are evidence, not proof")
    } else {
        "violation found: the witness set disproves expansion at its size".to_string()
    };
    Ok(UneReport {
        schema_version: UNE_SCHEMA_VERSION,
        graph: graph_id.to_string(),
        vertices: n,
        alpha: cfg.alpha,
        epsilon: cfg.epsilon,
        max_size,
        exhaustive_max,
        sample_sizes,
        samples_per_size: cfg.samples_per_size,
        seed: cfg.seed,
        pass,
        proven_up_to: exhaustive_max,
        worst,
        violation,
        per_size,
        note,
    })
}

/// `2|E(Γ[X])| / |X|`.
pub fn induced_avg_degree(g: &Graph, x: &[usize]) -> Result<Ratio<u64>> {
    if x.is_empty() {
        return Err(Error::EmptySet);
    }
    check_vertices(g, x)?;
    let mut inside = vec![false; g.vertex_count()];
    for &v in x {
        inside[v] = true;
    }
    let distinct = inside.iter().filter(|&&b| b).count() as u64;
    let twice_edges: u64 = (0..g.vertex_count())
        .filter(|&v| inside[v])
        .map(|v| g.neighbors(v).iter().filter(|&&w| inside[w as usize]).count() as u64)
        .sum();
    Ok(Ratio::new(twice_edges, distinct))
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct KahaleBoundDatum {
    pub k: u64,
    pub d: f64,
    pub epsilon: f64,
    pub c: f64,
    pub delta: f64,
    pub alpha: f64,
    pub log10_alpha: f64,
    /// `1 + √(k−1) + ε`, which must lie below `d`.
    pub threshold: f64,
    /// Exact `(δ, α)` when `√(k−1)`, `ε`, `C` are rational and `1/δ` is an integer.
    pub exact: Option<(Ratio<i128>, Ratio<i128>)>,
}

fn small_rational(x: f64) -> Option<Ratio<i128>> {
    let r = Ratio::<i64>::approximate_float(x)?;
    (*r.denom() <= 1_000_000 && (*r.numer() as f64 / *r.denom() as f64) == x).then(|| Ratio::new(*r.numer() as i128, *r.denom() as i128))
}

fn exact_kahale(k: u64, eps: f64, c: f64) -> Option<(Ratio<i128>, Ratio<i128>)> {
    let root = (k - 1).isqrt();
    if root * root != k - 1 {
        return None;
    }
    let (eps, c) = (small_rational(eps)?, small_rational(c)?);
    let delta = eps / (c * Ratio::from_integer(1 + root as i128));
    let inv = delta.recip();
    if !inv.is_integer() {
        return None;
    }
    let e = u32::try_from(inv.to_integer() + 1).ok()?;
    let den = (k as i128).checked_pow(e)?;
    Some((delta, Ratio::new(1, den)))
}

/// `δ = ε / (C(1+√(k−1)))` and `α = k^(−1/δ−1)`.
pub fn kahale_alpha(k: u64, d: f64, epsilon: f64, c: f64) -> Result<KahaleBoundDatum> {
    if k < 3 {
        return Err(Error::BoundInapplicable(format!("k = {k} < 3")));
    }
    if epsilon.is_nan() || c.is_nan() || epsilon <= 0.0 || c <= 0.0 {
        return Err(Error::BoundInapplicable("epsilon and C must be positive".into()));
    }
    let spectral = 1.0 + ((k - 1) as f64).sqrt();
    let threshold = spectral + epsilon;
    if d.is_nan() || d <= threshold {
        return Err(Error::BoundInapplicable(format!("d = {d} does not exceed 1 + sqrt(k-1) + epsilon = {threshold:.6}")));
    }
    let inv_delta = c * spectral / epsilon;
    let log10_alpha = -(inv_delta + 1.0) * (k as f64).log10();
    Ok(KahaleBoundDatum {
        k,
        d,
        epsilon,
        c,
        delta: 1.0 / inv_delta,
        alpha: 10f64.powf(log10_alpha),
        log10_alpha,
        threshold,
        exact: exact_kahale(k, epsilon, c),
    })
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SsBounds {
    pub rate_bound: Ratio<i64>,
    /// `((d−λ)/(k−λ))²`, absent when `d ≤ λ`.
    pub distance_bound: Option<f64>,
    pub applicable: bool,
}

/// Rate `2·rate(B) − 1` and normalized distance `((d−λ)/(k−λ))²`.
pub fn ss_bounds(rate_b: Ratio<i64>, d: f64, lambda: f64, k: f64) -> Result<SsBounds> {
    if rate_b < Ratio::from_integer(0) || rate_b > Ratio::from_integer(1) {
        return Err(Error::InvalidParameter("rate must lie in [0, 1]".into()));
    }
    if !(k > lambda && lambda >= 0.0) {
        return Err(Error::InvalidParameter("need k > lambda >= 0".into()));
    }
    let rate_bound = rate_b * 2 - 1;
    let applicable = d > lambda;
    let distance_bound = applicable.then(|| ((d - lambda) / (k - lambda)).powi(2));
    Ok(SsBounds { rate_bound, distance_bound, applicable })
}
