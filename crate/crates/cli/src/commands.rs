use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use symexp::algebra::group::FiniteGroup;
use symexp::codes::{
    build_b_double_prime, build_b_prime, codes_equal, deinterleave, hamming_7_4, interleave_pair, min_distance_bz,
    min_distance_exhaustive, LinearCode, DEFAULT_BZ_BUDGET,
};
use symexp::bits::BitVec;
use symexp::expansion::{certify_une, UneConfig, DEFAULT_BUDGET};
use symexp::fixtures::hypercube_datum;
use symexp::graph::{verify_isomorphism, Graph};
use symexp::lsv::{build_lsv as build, rebuild_lsv, LsvGraphDatum, LsvSummary, SUMMARY_SCHEMA_VERSION};
use symexp::symmetry::{gamma_graph, iso_f, x_graph, CheckedDatum, SymmetryDatum};
use symexp::tanner::{
    check_symmetry as symmetry_report, full_edge_action, orbit_code, product_left_action, rotation_action,
    single_orbit_code, symmetric_cayley_code,
};

use crate::output::{CliError, Report};

fn write(path: &Path, contents: &str) -> Result<String, CliError> {
    fs::write(path, contents).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    Ok(path.display().to_string())
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

fn stem(q: u64, n: u32) -> String {
    format!("lsv-q{q}-n{n}")
}

fn t_label(t: &[usize]) -> String {
    t.iter().map(usize::to_string).collect::<Vec<_>>().join(".")
}

/// `T` must be a symmetric subset of `C_order ∖ {0}` without repeats.
fn validate_t(order: usize, t: &[usize]) -> Result<(), CliError> {
    let mut sorted = t.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != t.len() {
        return Err(CliError::usage(format!("T = {t:?} has repeated elements")));
    }
    if let Some(x) = t.iter().find(|&&x| x == 0 || x >= order) {
        return Err(CliError::usage(format!("T element {x} is not a nonidentity element of C{order}")));
    }
    if let Some(x) = t.iter().find(|&&x| !t.contains(&((order - x) % order))) {
        return Err(CliError::usage(format!("T = {t:?} is not symmetric: {x} has no inverse in T")));
    }
    Ok(())
}

pub fn build_lsv(q: u64, n: u32, seed: u64, out: &Path) -> Result<Report, CliError> {
    let start = Instant::now();
    let datum = build(q, n, seed)?;
    fs::create_dir_all(out)?;
    let summary = datum.summary();
    let graph_path = write(&out.join(format!("{}.graph", stem(q, n))), &datum.cayley.graph.to_text())?;
    let json = serde_json::to_string_pretty(&summary)? + "\n";
    let summary_path = write(&out.join(format!("{}.json", stem(q, n))), &json)?;
    let g = &datum.cayley.graph;
    Ok(Report::new("build-lsv", summary.ramanujan.is_certified())
        .with("parameters", serde_json::json!({"q": q, "n": n, "seed": seed}))
        .with("vertices", g.vertex_count())
        .with("edges", g.edge_count())
        .with("degree", summary.degree)
        .with("bipartite", g.is_bipartite())
        .with("ramanujan", &summary.ramanujan)
        .with("candidates_tried", summary.candidates_tried)
        .with("artifacts", [graph_path, summary_path])
        .with("elapsed_ms", start.elapsed().as_millis() as u64))
}

pub fn load_lsv(path: &Path) -> Result<LsvGraphDatum, CliError> {
    let summary: LsvSummary = serde_json::from_str(&read(path)?)?;
    if summary.schema_version != SUMMARY_SCHEMA_VERSION {
        return Err(CliError::usage(format!("unsupported summary schema {}", summary.schema_version)));
    }
    let datum = rebuild_lsv(summary.q, summary.n, summary.b, summary.seed, false)?;
    let modulus: Vec<u32> = datum.group().field().modulus().to_vec();
    if modulus != summary.field_modulus {
        return Err(CliError::usage("field modulus in summary differs from the default presentation"));
    }
    Ok(datum)
}

fn checked(datum: SymmetryDatum) -> Result<CheckedDatum, CliError> {
    validate_t(datum.h.order(), &datum.t)?;
    Ok(datum.check()?)
}

fn prop1(cd: &CheckedDatum) -> Result<(Graph, bool), CliError> {
    let x = x_graph(cd)?;
    let gamma = gamma_graph(cd)?;
    let ok = verify_isomorphism(&iso_f(cd), &x.graph, &gamma)?;
    Ok((gamma, ok))
}

pub fn build_gamma(lsv_file: &Path, t: Vec<usize>, out: &Path) -> Result<Report, CliError> {
    let lsv = load_lsv(lsv_file)?;
    let cd = checked(lsv.symmetry_datum(t.clone()))?;
    let (gamma, ok) = prop1(&cd)?;
    fs::create_dir_all(out)?;
    let path = write(&out.join(format!("gamma-q{}-n{}-T{}.graph", lsv.q(), lsv.n(), t_label(&t))), &gamma.to_text())?;
    Ok(Report::new("build-gamma", ok)
        .with("T", &t)
        .with("vertices", gamma.vertex_count())
        .with("edges", gamma.edge_count())
        .with("degree", gamma.regular_degree())
        .with("x_group_order", cd.product().order())
        .with("prop1", if ok { "pass" } else { "fail" })
        .with("artifacts", [path]))
}

pub fn verify_prop1(lsv_file: Option<&Path>, hypercube: Option<u32>, t: Vec<usize>) -> Result<Report, CliError> {
    let datum = match (lsv_file, hypercube) {
        (Some(f), _) => load_lsv(f)?.symmetry_datum(t.clone()),
        (None, Some(d)) => hypercube_datum(d, t.clone())?,
        (None, None) => return Err(CliError::usage("give --lsv-file or --hypercube")),
    };
    let cd = checked(datum)?;
    let (gamma, ok) = prop1(&cd)?;
    Ok(Report::new("verify-prop1", ok)
        .with("T", &t)
        .with("vertices", gamma.vertex_count())
        .with("degree", gamma.regular_degree())
        .with("prop1", if ok { "pass" } else { "fail" }))
}

pub fn une(
    graph: &Path,
    alpha: f64,
    epsilon: f64,
    exhaustive_max: usize,
    samples: usize,
    seed: u64,
    out: Option<&Path>,
) -> Result<Report, CliError> {
    let g = Graph::from_text(&read(graph)?)?;
    let id = graph.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let cfg = UneConfig { alpha, epsilon, exhaustive_max, samples_per_size: samples, seed, budget: DEFAULT_BUDGET };
    let r = certify_une(&g, &id, &cfg)?;
    let mut report = Report::new("une", r.pass);
    if let serde_json::Value::Object(m) = serde_json::to_value(&r)? {
        for (k, v) in m {
            if k != "pass" {
                report.body.insert(k, v);
            }
        }
    }
    if let Some(path) = out {
        write(path, &(serde_json::to_string_pretty(&r)? + "\n"))?;
    }
    Ok(report)
}

fn load_code(name: &str) -> Result<LinearCode, CliError> {
    match name {
        "b2prime" => Ok(build_b_double_prime().code),
        "bprime" => Ok(build_b_prime().code),
        "hamming" => Ok(hamming_7_4()),
        path => Ok(LinearCode::from_parity_check_text(&read(&PathBuf::from(path))?)?),
    }
}

fn rate(c: &LinearCode) -> String {
    c.rate().to_string()
}

/// `d(B′)` from `d(B″)`: checks `B′ = {interleave(c₁, c₂)}` on bases, then lifts the `B″` witness.
fn b_prime_distance() -> Result<(usize, bool), CliError> {
    let b2 = build_b_double_prime();
    let b1 = build_b_prime();
    let zero = BitVec::zeros(79);
    let mut ok = b1.code.dimension() == 2 * b2.code.dimension();
    for g in b2.code.generators() {
        ok &= b1.code.contains(&interleave_pair(g, &zero)?) && b1.code.contains(&interleave_pair(&zero, g)?);
    }
    for g in b1.code.generators() {
        let (x, y) = deinterleave(g)?;
        ok &= b2.code.contains(&x) && b2.code.contains(&y);
    }
    let d = min_distance_bz(&b2.code, DEFAULT_BZ_BUDGET)?;
    Ok((d.upper, ok && d.exact))
}

pub fn named_code(name: &str, out: Option<&Path>) -> Result<Report, CliError> {
    let datum = if name == "b2prime" { build_b_double_prime() } else { build_b_prime() };
    let c = &datum.code;
    let (distance, method, exact) = if name == "b2prime" {
        let d = min_distance_bz(c, DEFAULT_BZ_BUDGET)?;
        (d.upper, "brouwer-zimmermann", d.exact)
    } else {
        let (d, exact) = b_prime_distance()?;
        (d, "interleaving of two B'' codewords", exact)
    };
    let mut report = Report::new(name, exact)
        .with("length", c.len())
        .with("dimension", c.dimension())
        .with("rate", rate(c))
        .with("density", c.density())
        .with("distance", distance)
        .with("distance_method", method)
        .with("g", datum.g.to_exponent_string())
        .with("h", datum.h.to_exponent_string())
        .with("h_weight", datum.h.weight());
    if let Some(path) = out {
        let p = write(path, &c.to_parity_check_text())?;
        report = report.with("artifacts", [p]);
    }
    Ok(report)
}

pub fn min_distance(name: &str, bz: bool, budget: Option<f64>) -> Result<Report, CliError> {
    let c = load_code(name)?;
    let r = if bz { min_distance_bz(&c, budget.unwrap_or(DEFAULT_BZ_BUDGET))? } else { min_distance_exhaustive(&c)? };
    Ok(Report::new("min-distance", r.exact)
        .with("code", name)
        .with("length", c.len())
        .with("dimension", c.dimension())
        .with("distance", r.distance())
        .with("lower", r.lower)
        .with("upper", r.upper)
        .with("result", &r))
}

pub fn density(name: &str) -> Result<Report, CliError> {
    let c = load_code(name)?;
    Ok(Report::new("density", true)
        .with("code", name)
        .with("density", c.density())
        .with("rows", c.constraints().len())
        .with("length", c.len()))
}

pub enum DatumSpec {
    Lsv { q: u64, n: u32, seed: u64 },
    Hypercube(u32),
}

impl DatumSpec {
    pub fn new(q: Option<u64>, n: u32, seed: u64, hypercube: Option<u32>) -> Result<Self, CliError> {
        match (q, hypercube) {
            (Some(q), None) => Ok(DatumSpec::Lsv { q, n, seed }),
            (None, Some(d)) => Ok(DatumSpec::Hypercube(d)),
            _ => Err(CliError::usage("give exactly one of --q or --hypercube")),
        }
    }

    fn datum(&self, t: Vec<usize>) -> Result<CheckedDatum, CliError> {
        let d = match *self {
            DatumSpec::Lsv { q, n, seed } => build(q, n, seed)?.symmetry_datum(t),
            DatumSpec::Hypercube(d) => hypercube_datum(d, t)?,
        };
        checked(d)
    }

    fn default_t(&self) -> Vec<usize> {
        match *self {
            DatumSpec::Lsv { .. } => vec![1, 4, 7],
            DatumSpec::Hypercube(d) => {
                let mut t = vec![1, d as usize - 1];
                t.dedup();
                t
            }
        }
    }
}

pub fn check_prop51(src: DatumSpec, t: Vec<usize>, out: Option<&Path>) -> Result<Report, CliError> {
    let cd = src.datum(t.clone())?;
    let b = single_orbit_code(cd.datum().h.as_ref(), &t)?;
    let sym = symmetric_cayley_code(&cd, &b)?;
    let orb = orbit_code(&cd)?;
    let equal = codes_equal(&orb, &sym, &iso_f(&cd))?;
    let mut report = Report::new("check-prop51", equal)
        .with("T", &t)
        .with("equal", equal)
        .with("length", sym.len())
        .with("dimension", sym.dimension())
        .with("local_dimension", b.dimension())
        .with("density", sym.density());
    if let Some(dir) = out {
        fs::create_dir_all(dir)?;
        let a = write(&dir.join("symmetric-cayley.pcm"), &sym.to_parity_check_text())?;
        let o = write(&dir.join("orbit.pcm"), &orb.to_parity_check_text())?;
        report = report.with("artifacts", [a, o]);
    }
    Ok(report)
}

pub fn check_symmetry(src: DatumSpec, t: Vec<usize>, full: bool) -> Result<Report, CliError> {
    let t = if t.is_empty() { src.default_t() } else { t };
    let cd = src.datum(t.clone())?;
    let (code, action, label) = if full {
        let b = single_orbit_code(cd.datum().h.as_ref(), &t)?;
        (symmetric_cayley_code(&cd, &b)?, full_edge_action(&cd)?, "G x| H on edges")
    } else {
        (orbit_code(&cd)?, product_left_action(&cd)?, "K x| H left translation")
    };
    let r = symmetry_report(&code, &action)?;
    let pass = if full { r.invariant && r.transitive } else { r.simply_symmetric };
    Ok(Report::new("check-symmetry", pass)
        .with("T", &t)
        .with("action", label)
        .with("invariant", r.invariant)
        .with("transitive", r.transitive)
        .with("free", r.free)
        .with("simply_symmetric", r.simply_symmetric)
        .with("group_order", r.group_order)
        .with("length", r.length))
}

pub fn check_cyclic_symmetry(name: &str) -> Result<Report, CliError> {
    let c = load_code(name)?;
    let r = symmetry_report(&c, &rotation_action(c.len())?)?;
    Ok(Report::new("check-symmetry", r.simply_symmetric)
        .with("code", name)
        .with("action", "cyclic rotation")
        .with("invariant", r.invariant)
        .with("transitive", r.transitive)
        .with("free", r.free)
        .with("simply_symmetric", r.simply_symmetric)
        .with("group_order", r.group_order)
        .with("length", r.length))
}
