//! Acceptance suite: one PASS/FAIL line per criterion.

use std::sync::Arc;
use std::time::Instant;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use symexp::algebra::group::{CyclicGroup, FiniteGroup};
use symexp::algebra::GF2Poly;
use symexp::bits::BitVec;
use symexp::codes::{
    build_b_double_prime, build_b_prime, codes_equal, deinterleave, hamming_7_4, interleave_pair, min_distance_bz,
    min_distance_exhaustive, parity, LinearCode, DEFAULT_BZ_BUDGET,
};
use symexp::expansion::{certify_une, kahale_alpha, ss_bounds, UneConfig};
use symexp::fixtures::{all_but_identity, hypercube_datum};
use symexp::graph::{adjacency_spectrum, cayley_graph, line_graph, verify_isomorphism};
use symexp::lsv::{build_lsv, LsvGraphDatum};
use symexp::symmetry::{ac_product, gamma_graph, iso_f, x_graph, CheckedDatum};
use symexp::tanner::{
    check_symmetry, full_edge_action, local_subwords_ok, orbit_code, product_left_action, rate_bound_holds,
    single_orbit_code, symmetric_cayley_code, tanner_code, IncidenceAssignment,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn(&Fixtures) -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

struct Fixtures {
    lsv: LsvGraphDatum,
    gamma1: CheckedDatum,
}

fn fixtures() -> Fixtures {
    let lsv = build_lsv(7, 1, 0).expect("LSV q=7 n=1");
    let gamma1 = lsv.symmetry_datum(vec![1, 4, 7]).check().expect("valid datum");
    Fixtures { lsv, gamma1 }
}

fn cube(dim: u32, t: Vec<usize>) -> CheckedDatum {
    hypercube_datum(dim, t).unwrap().check().unwrap()
}

fn c1_check_polynomial(_: &Fixtures) -> Outcome {
    let (h, r) = GF2Poly::x_n_minus_one(79).divmod(&GF2Poly::g79()).map_err(e)?;
    ensure(r.is_zero(), "nonzero remainder")?;
    ensure(h.weight() == 20, format!("weight of h = {}", h.weight()))?;
    ensure(&h * &GF2Poly::g79() == GF2Poly::x_n_minus_one(79), "g*h != X^79+1")?;
    Ok(format!("remainder 0, weight(h) = {}", h.weight()))
}

fn c2_b_double_prime(_: &Fixtures) -> Outcome {
    let b = build_b_double_prime();
    let c = &b.code;
    ensure(c.len() == 79 && c.dimension() == 40, format!("[{}, {}]", c.len(), c.dimension()))?;
    ensure(c.density() == 20, format!("density {}", c.density()))?;
    let d = min_distance_bz(c, DEFAULT_BZ_BUDGET).map_err(e)?;
    ensure(d.distance() == Some(15), format!("BZ result {}..{}", d.lower, d.upper))?;
    ensure(c.contains(&d.witness) && d.witness.weight() == 15, "witness invalid")?;
    Ok(format!("[79, 40, 15], density 20, BZ exact after {} codewords", d.enumerated))
}

fn c3_b_prime(_: &Fixtures) -> Outcome {
    let b2 = build_b_double_prime();
    let b1 = build_b_prime();
    let c = &b1.code;
    ensure(c.len() == 158 && c.dimension() == 80, format!("[{}, {}]", c.len(), c.dimension()))?;
    ensure(c.rate() == Ratio::new(40, 79), "rate")?;
    ensure(c.density() == 20, format!("density {}", c.density()))?;
    // B′ = {interleave(c₁, c₂)}: basis in both directions, then random samples
    for g in b2.code.generators() {
        let z = BitVec::zeros(79);
        ensure(c.contains(&interleave_pair(g, &z).map_err(e)?), "interleave(g, 0) not in B'")?;
        ensure(c.contains(&interleave_pair(&z, g).map_err(e)?), "interleave(0, g) not in B'")?;
    }
    for g in c.generators() {
        let (x, y) = deinterleave(g).map_err(e)?;
        ensure(b2.code.contains(&x) && b2.code.contains(&y), "basis vector halves outside B''")?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10_000 {
        let w = c.random_codeword(&mut rng);
        let (x, y) = deinterleave(&w).map_err(e)?;
        ensure(b2.code.contains(&x) && b2.code.contains(&y), "sampled codeword halves outside B''")?;
        let v = interleave_pair(&b2.code.random_codeword(&mut rng), &b2.code.random_codeword(&mut rng)).map_err(e)?;
        ensure(c.contains(&v), "interleaved pair outside B'")?;
    }
    // 80 = 40 + 40 and the inclusion above give equality; then the minimum weight
    // is attained with one half zero, so d(B′) = d(B″)
    let d2 = min_distance_bz(&b2.code, DEFAULT_BZ_BUDGET).map_err(e)?;
    ensure(d2.exact, "d(B'') not exact")?;
    let lifted = interleave_pair(&d2.witness, &BitVec::zeros(79)).map_err(e)?;
    ensure(c.contains(&lifted) && lifted.weight() == d2.upper, "lifted witness")?;
    let d = d2.upper;
    ensure(d == 15, format!("distance {d}"))?;
    Ok("[158, 80, 15], rate 40/79, density 20; interleave characterization on basis + 10^4 samples".into())
}

fn prop31(cd: &CheckedDatum) -> Result<(), String> {
    let x = x_graph(cd).map_err(e)?;
    let gamma = gamma_graph(cd).map_err(e)?;
    let f = iso_f(cd);
    ensure(verify_isomorphism(&f, &x.graph, &gamma).map_err(e)?, "iso_f is not an isomorphism")
}

fn c4_prop31(fx: &Fixtures) -> Outcome {
    for dim in 3..=6u32 {
        for t in [vec![1, dim as usize - 1], all_but_identity(dim as usize)] {
            let mut t = t;
            t.sort_unstable();
            t.dedup();
            prop31(&cube(dim, t.clone())).map_err(|m| format!("cube d={dim} T={t:?}: {m}"))?;
        }
    }
    prop31(&fx.gamma1).map_err(|m| format!("LSV: {m}"))?;
    Ok(format!("cubes d=3..6 and LSV q=7 ({} vertices)", fx.gamma1.product().order()))
}

fn c5_line_graph(fx: &Fixtures) -> Outcome {
    for dim in 3..=6u32 {
        let cd = cube(dim, all_but_identity(dim as usize));
        let gamma = gamma_graph(&cd).map_err(e)?;
        ensure(gamma.same_edges(&line_graph(&cd.cayley().graph)), format!("cube d={dim}"))?;
    }
    let cd = fx.gamma1.with_t(all_but_identity(8)).map_err(e)?;
    let gamma = gamma_graph(&cd).map_err(e)?;
    ensure(gamma.same_edges(&line_graph(&cd.cayley().graph)), "LSV")?;
    Ok("T = H \\ {1} gives the line graph on cubes d=3..6 and LSV q=7".into())
}

fn c6_lsv_spectrum(fx: &Fixtures) -> Outcome {
    let g = &fx.lsv.cayley.graph;
    ensure(g.vertex_count() == 336, "vertex count")?;
    ensure(g.regular_degree() == Some(8), "not 8-regular")?;
    ensure(g.is_connected() && g.is_bipartite(), "not connected bipartite")?;
    let spec = adjacency_spectrum(g).map_err(e)?;
    ensure(spec.max_residual <= 1e-6, format!("residual {}", spec.max_residual))?;
    let ev = &spec.eigenvalues;
    ensure((ev[0] - 8.0).abs() < 1e-6 && (ev[ev.len() - 1] + 8.0).abs() < 1e-6, "trivial eigenvalues")?;
    let worst = ev[1..ev.len() - 1].iter().map(|x| x.abs()).fold(0.0, f64::max);
    let bound = 2.0 * 7f64.sqrt();
    ensure(worst <= bound + 1e-6, format!("nontrivial |λ| = {worst} > {bound}"))?;
    Ok(format!("max nontrivial |λ| = {worst:.6} <= 2√7 = {bound:.6}, residual {:.1e}", spec.max_residual))
}

fn c7_gamma1(fx: &Fixtures) -> Outcome {
    let gamma = gamma_graph(&fx.gamma1).map_err(e)?;
    ensure(gamma.vertex_count() == 1344, format!("{} vertices", gamma.vertex_count()))?;
    ensure(gamma.regular_degree() == Some(6), "not 6-regular")?;
    let x = x_graph(&fx.gamma1).map_err(e)?;
    ensure(x.group.order() == 1344 && x.group.order() == 168 * 8, "group order")?;
    ensure(x.graph.regular_degree() == Some(6), "X not 6-regular")?;
    let delta = cayley_graph(Arc::new(CyclicGroup::new(8)), &[1, 4, 7]).map_err(e)?.graph;
    let ac = ac_product(&fx.gamma1.cayley().graph, &delta, &fx.gamma1.symmetric_assignment()).map_err(e)?;
    ensure(ac.same_edges(&gamma), "AC product differs")?;
    Ok("1344 vertices, 6-regular, Cayley graph on PSL2(7) x| C8 of order 1344".into())
}

fn c8_une(fx: &Fixtures) -> Outcome {
    let gamma = gamma_graph(&fx.gamma1).map_err(e)?;
    let mut cfg = UneConfig::new(0.1, 0.1);
    cfg.exhaustive_max = 2;
    cfg.samples_per_size = 10_000;
    cfg.seed = 1;
    let r = certify_une(&gamma, "gamma1", &cfg).map_err(e)?;
    ensure(r.sample_sizes == vec![4, 8, 16, 32, 64, 128], format!("sizes {:?}", r.sample_sizes))?;
    let w = r.worst.clone().ok_or("no subsets tested")?;
    ensure(r.pass, format!("violation {:?}", r.violation))?;
    Ok(format!("exhaustive |X| <= 2, 10^4 samples at sizes 4..128; worst ratio {:.3} at |X| = {}", w.ratio, w.size))
}

/// `T = {1, 4, 7}` makes the single-orbit code on C8 zero (x + x^4 + x^7 is a unit
/// modulo (x + 1)^8), so two sets with nonzero local codes are checked as well.
const LSV_TS: [&[usize]; 3] = [&[1, 4, 7], &[1, 7], &[1, 3, 5, 7]];

fn lsv_datum(fx: &Fixtures, t: &[usize]) -> Result<CheckedDatum, String> {
    fx.gamma1.with_t(t.to_vec()).map_err(e)
}

fn orbit_codes(cd: &CheckedDatum) -> Result<(LinearCode, LinearCode, LinearCode), String> {
    let b = single_orbit_code(cd.datum().h.as_ref(), &cd.datum().t).map_err(e)?;
    let sym = symmetric_cayley_code(cd, &b).map_err(e)?;
    let orb = orbit_code(cd).map_err(e)?;
    Ok((b, sym, orb))
}

fn c9_prop51(fx: &Fixtures) -> Outcome {
    let cd = cube(3, vec![1, 2]);
    let b = single_orbit_code(cd.datum().h.as_ref(), &cd.datum().t).map_err(e)?;
    let sym = symmetric_cayley_code(&cd, &b).map_err(e)?;
    let orb = orbit_code(&cd).map_err(e)?;
    ensure(orb.len() == 12 && codes_equal(&orb, &sym, &iso_f(&cd)).map_err(e)?, "cube")?;
    let mut dims = Vec::new();
    for t in LSV_TS {
        let cd = lsv_datum(fx, t)?;
        let (_, sym, orb) = orbit_codes(&cd)?;
        ensure(orb.len() == 1344, "length")?;
        ensure(codes_equal(&orb, &sym, &iso_f(&cd)).map_err(e)?, format!("LSV T={t:?}"))?;
        dims.push(format!("T={t:?}: dim {}", sym.dimension()));
    }
    Ok(format!("row spaces equal on the cube (12) and LSV q=7 (1344; {})", dims.join(", ")))
}

fn c10_simple_symmetry(fx: &Fixtures) -> Outcome {
    let mut data = vec![cube(3, vec![1, 2])];
    for t in LSV_TS {
        data.push(lsv_datum(fx, t)?);
    }
    for cd in data {
        let orb = orbit_code(&cd).map_err(e)?;
        let r = check_symmetry(&orb, &product_left_action(&cd).map_err(e)?).map_err(e)?;
        ensure(r.simply_symmetric && r.group_order == r.length, format!("K x| H: {r:?}"))?;
        let b = single_orbit_code(cd.datum().h.as_ref(), &cd.datum().t).map_err(e)?;
        let sym = symmetric_cayley_code(&cd, &b).map_err(e)?;
        let r = check_symmetry(&sym, &full_edge_action(&cd).map_err(e)?).map_err(e)?;
        ensure(r.invariant && r.transitive && !r.free && r.group_order == 2 * r.length, format!("G x| H: {r:?}"))?;
    }
    Ok("K x| H simply transitive (12, 1344); G x| H transitive, not free (24, 2688)".into())
}

fn c11_rate_bound(fx: &Fixtures) -> Outcome {
    let cd = cube(3, vec![1, 2]);
    let g = &cd.cayley().graph;
    let par = parity(3).map_err(e)?;
    let c = tanner_code(g, &par, &IncidenceAssignment::sorted_neighbors(g)).map_err(e)?;
    ensure(c.rate() == Ratio::new(5, 12), format!("cube rate {}", c.rate()))?;
    ensure(par.rate() * 2 - 1 == Ratio::new(1, 3), "2 rate(B) - 1")?;
    let mut built = vec![(c, par)];
    let b = single_orbit_code(cd.datum().h.as_ref(), &cd.datum().t).map_err(e)?;
    built.push((symmetric_cayley_code(&cd, &b).map_err(e)?, b));
    for t in LSV_TS {
        let (b, sym, _) = orbit_codes(&lsv_datum(fx, t)?)?;
        built.push((sym, b));
    }
    for (code, b) in &built {
        ensure(rate_bound_holds(code, b), format!("rate {} < 2·{} − 1", code.rate(), b.rate()))?;
    }
    Ok(format!("{} instances; cube 5/12 >= 1/3", built.len()))
}

fn c12_bounds(_: &Fixtures) -> Outcome {
    let k = kahale_alpha(5, 5.0, 1.0, 1.0).map_err(e)?;
    ensure(k.exact == Some((Ratio::new(1, 3), Ratio::new(1, 625))), format!("{:?}", k.exact))?;
    let s = ss_bounds(Ratio::new(40, 79), 15.0, 2.0 * 157f64.sqrt(), 158.0).map_err(e)?;
    ensure(!s.applicable && s.distance_bound.is_none(), "distance bound should be inapplicable")?;
    ensure(s.rate_bound == Ratio::new(1, 79), "rate bound")?;
    Ok("delta = 1/3, alpha = 1/625; (15, 2√157, 158) inapplicable".into())
}

fn c13_oracles(_: &Fixtures) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut done = 0;
    while done < 25 {
        let n = rng.gen_range(4..=24);
        let k = rng.gen_range(1..=12.min(n - 1));
        let gens = (0..k).map(|_| BitVec::from_bools(&(0..n).map(|_| rng.gen_bool(0.5)).collect::<Vec<_>>())).collect();
        let c = LinearCode::from_generators(n, gens).map_err(e)?;
        if c.dimension() == 0 {
            continue;
        }
        let ex = min_distance_exhaustive(&c).map_err(e)?;
        let bz = min_distance_bz(&c, DEFAULT_BZ_BUDGET).map_err(e)?;
        ensure(bz.exact && bz.upper == ex.upper, format!("[{n}, {}]: exhaustive {} vs BZ {}..{}", c.dimension(), ex.upper, bz.lower, bz.upper))?;
        done += 1;
    }
    let h = hamming_7_4();
    let (ex, bz) = (min_distance_exhaustive(&h).map_err(e)?, min_distance_bz(&h, DEFAULT_BZ_BUDGET).map_err(e)?);
    ensure(ex.upper == 3 && bz.distance() == Some(3), "Hamming")?;
    Ok("25 random codes agree; [7,4] Hamming = 3".into())
}

fn c14_local_subwords(fx: &Fixtures) -> Outcome {
    let cd = cube(3, vec![1, 2]);
    let g = &cd.cayley().graph;
    let par = parity(3).map_err(e)?;
    let a = IncidenceAssignment::sorted_neighbors(g);
    let cube_code = tanner_code(g, &par, &a).map_err(e)?;
    let mut cases = vec![(cube_code, a, min_distance_exhaustive(&par).map_err(e)?.upper)];
    for t in &LSV_TS[1..] {
        let cd = lsv_datum(fx, t)?;
        let (b, sym, _) = orbit_codes(&cd)?;
        ensure(sym.dimension() > 0, format!("T={t:?}: zero code"))?;
        cases.push((sym, IncidenceAssignment::symmetric(&cd), min_distance_exhaustive(&b).map_err(e)?.upper));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for (code, assign, d) in &cases {
        let mut sampled = 0;
        while sampled < 1000 {
            let w = code.random_codeword(&mut rng);
            if w.is_zero() {
                continue;
            }
            ensure(local_subwords_ok(&w, assign, *d), "local view of weight in (0, d)")?;
            sampled += 1;
        }
    }
    let ds: Vec<String> = cases.iter().map(|c| c.2.to_string()).collect();
    Ok(format!("10^3 nonzero codewords each on the cube and LSV q=7 with T={:?}, {:?}; d(B) = {}", LSV_TS[1], LSV_TS[2], ds.join(", ")))
}

fn main() {
    let t0 = Instant::now();
    let fx = fixtures();
    let criteria: [Criterion; 14] = [
        ("check polynomial h has weight 20", c1_check_polynomial),
        ("B'' = [79, 40, 15], density 20", c2_b_double_prime),
        ("B' = [158, 80, 15], density 20", c3_b_prime),
        ("iso_f is an isomorphism X -> Gamma", c4_prop31),
        ("T = H \\ {1} gives the line graph", c5_line_graph),
        ("LSV q=7 n=1 Ramanujan certificate", c6_lsv_spectrum),
        ("Gamma_1 structure", c7_gamma1),
        ("unique-neighbor evidence on Gamma_1", c8_une),
        ("orbit code equals symmetric Cayley code", c9_prop51),
        ("simple symmetry of orbit codes", c10_simple_symmetry),
        ("rate >= 2 rate(B) - 1", c11_rate_bound),
        ("bound calculators", c12_bounds),
        ("BZ agrees with exhaustive search", c13_oracles),
        ("local-subword property", c14_local_subwords),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = f(&fx);
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS [{:>2}] {name}: {detail} ({secs:.1}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL [{:>2}] {name}: {msg} ({secs:.1}s)", i + 1)
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed ({:.1}s)", criteria.len() - failed, t0.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
