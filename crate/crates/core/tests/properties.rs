use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use symexp::algebra::field::{Field, FieldElement};
use symexp::algebra::group::{check_axioms, CyclicGroup, FiniteGroup};
use symexp::algebra::pgl2::Pgl2;
use symexp::bits::BitVec;
use symexp::codes::LinearCode;
use symexp::fixtures::hypercube_datum;
use symexp::graph::{cayley_graph, line_graph, verify_isomorphism, Graph};
use symexp::symmetry::{gamma_graph, iso_f, x_graph};
use symexp::tanner::{rate_bound_holds, tanner_code, IncidenceAssignment};

fn random_symmetric_t(d: usize, mask: u32) -> Vec<usize> {
    let mut t: Vec<usize> = (1..d).filter(|&x| mask >> x & 1 == 1 || mask >> (d - x) & 1 == 1).collect();
    t.dedup();
    t
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn field_axioms(pi in 0usize..4, n in 1u32..4, a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let p = [2u64, 3, 5, 7][pi];
        let f = Field::with_default_modulus(p, n).unwrap();
        let q = f.order();
        let (a, b, c) = (FieldElement(a % q), FieldElement(b % q), FieldElement(c % q));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        if let Some(inv) = f.inv(a) {
            prop_assert_eq!(f.mul(a, inv), f.from_int(1));
        }
    }

    #[test]
    fn pgl2_axioms(qi in 0usize..4, seed in any::<u64>()) {
        // orders above 400 are checked on sampled triples
        let q = [3u64, 5, 9, 11][qi];
        let g = Pgl2::of_order(q).unwrap();
        prop_assert_eq!(g.order() as u64, q * (q * q - 1));
        check_axioms(&g, 200, seed).unwrap();
    }

    #[test]
    fn graph_text_round_trip(seed in any::<u64>(), n in 2usize..30) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let edges: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(0.3)).collect();
        let g = Graph::from_edges(n, edges).unwrap();
        let back = Graph::from_text(&g.to_text()).unwrap();
        prop_assert!(back.same_edges(&g));
        let l = line_graph(&g);
        // |E(L(G))| = Σ_v C(deg v, 2)
        let expected: usize = (0..n).map(|v| g.degree(v) * g.degree(v).saturating_sub(1) / 2).sum();
        prop_assert_eq!(l.edge_count(), expected);
    }

    #[test]
    fn cyclic_cayley_graphs_are_regular(n in 3usize..40, mask in any::<u64>()) {
        let s: Vec<usize> = (1..n).filter(|&x| mask >> (x.min(n - x) % 64) & 1 == 1).collect();
        prop_assume!(!s.is_empty());
        let c = cayley_graph(Arc::new(CyclicGroup::new(n)), &s).unwrap();
        prop_assert_eq!(c.graph.regular_degree(), Some(s.len()));
    }

    #[test]
    fn iso_f_on_random_hypercube_data(d in 3u32..7, mask in any::<u32>()) {
        let t = random_symmetric_t(d as usize, mask);
        let cd = hypercube_datum(d, t.clone()).unwrap().check().unwrap();
        let x = x_graph(&cd).unwrap();
        let gamma = gamma_graph(&cd).unwrap();
        prop_assert!(verify_isomorphism(&iso_f(&cd), &x.graph, &gamma).unwrap());
        prop_assert_eq!(x.group.order(), (1usize << (d - 1)) * d as usize);
    }

    #[test]
    fn tanner_rate_bound_on_random_local_codes(d in 3u32..6, seed in any::<u64>()) {
        let cd = hypercube_datum(d, vec![]).unwrap().check().unwrap();
        let g = &cd.cayley().graph;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = d as usize;
        let rows: Vec<BitVec> = (0..rng.gen_range(0..l)).map(|_| BitVec::from_bools(&(0..l).map(|_| rng.gen()).collect::<Vec<_>>())).collect();
        let b = LinearCode::from_constraints(l, rows).unwrap();
        let c = tanner_code(g, &b, &IncidenceAssignment::sorted_neighbors(g)).unwrap();
        prop_assert!(rate_bound_holds(&c, &b));
        // rank bound: dim ≥ |E| − |V|·(l − dim B)
        prop_assert!(c.dimension() as i64 >= g.edge_count() as i64 - (g.vertex_count() * (l - b.dimension())) as i64);
    }
}
