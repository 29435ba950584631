//! Cayley graphs Cay(G, S) with edges {g, g·s}.

use std::collections::VecDeque;

use crate::algebra::group::{GroupRef, Subgroup};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexLabel};

/// A Cayley graph; vertex `i` is group element `i`.
#[derive(Debug, Clone)]
pub struct CayleyGraph {
    pub group: GroupRef,
    pub generators: Vec<usize>,
    pub graph: Graph,
}

pub fn cayley_graph(group: GroupRef, generators: &[usize]) -> Result<CayleyGraph> {
    let mut gens = generators.to_vec();
    gens.sort_unstable();
    gens.dedup();
    if gens.len() != generators.len() {
        return Err(Error::InvalidParameter("repeated generator".into()));
    }
    if gens.contains(&group.identity()) {
        return Err(Error::IdentityInGenerators);
    }
    if gens.iter().any(|&s| gens.binary_search(&group.inv(s)).is_err()) {
        return Err(Error::AsymmetricGenerators);
    }
    let n = group.order();
    let adj: Vec<Vec<u32>> = (0..n)
        .map(|g| {
            let mut list: Vec<u32> = gens.iter().map(|&s| group.mul(g, s) as u32).collect();
            list.sort_unstable();
            list
        })
        .collect();
    // S = S⁻¹ and 1 ∉ S make the lists symmetric and loop-free
    let graph = Graph::from_adjacency(adj)
        .expect("valid Cayley data yields a simple graph")
        .with_labels((0..n).map(VertexLabel::Element).collect());
    Ok(CayleyGraph { group, generators: generators.to_vec(), graph })
}

impl CayleyGraph {
    pub fn degree(&self) -> usize {
        self.generators.len()
    }

    /// Breadth-first distances from the identity; `None` for unreachable elements.
    pub fn distances_from_identity(&self) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.group.order()];
        let id = self.group.identity();
        dist[id] = Some(0);
        let mut queue = VecDeque::from([id]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &v in self.graph.neighbors(u) {
                if dist[v as usize].is_none() {
                    dist[v as usize] = Some(du + 1);
                    queue.push_back(v as usize);
                }
            }
        }
        dist
    }
}

/// The index-2 subgroup of elements at even distance from the identity when the
/// Cayley graph is bipartite; `None` when it is not. Errors if S does not generate G.
pub fn bipartite_subgroup(cg: &CayleyGraph) -> Result<Option<Subgroup>> {
    let dist = cg.distances_from_identity();
    let reached = dist.iter().filter(|d| d.is_some()).count();
    if reached != cg.group.order() {
        return Err(Error::NotGenerating { reached, order: cg.group.order() });
    }
    for (u, du) in dist.iter().enumerate() {
        let du = du.unwrap();
        if cg.graph.neighbors(u).iter().any(|&v| dist[v as usize].unwrap() % 2 == du % 2) {
            return Ok(None);
        }
    }
    let even: Vec<usize> = (0..dist.len()).filter(|&g| dist[g].unwrap().is_multiple_of(2)).collect();
    let k = Subgroup::new(cg.group.clone(), even)?;
    debug_assert!(cg.generators.iter().all(|&s| !k.contains(s)));
    Ok(Some(k))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::group::{BinaryVectorGroup, CyclicGroup};

    /// Independent oracle: try every 2-coloring.
    fn brute_force_bipartite(g: &Graph) -> bool {
        let n = g.vertex_count();
        (0u32..1 << n).any(|mask| g.edges().all(|(u, v)| (mask >> u & 1) != (mask >> v & 1)))
    }

    #[test]
    fn delta_graph_on_c8() {
        let cg = cayley_graph(Arc::new(CyclicGroup::new(8)), &[1, 4, 7]).unwrap();
        assert_eq!(cg.graph.regular_degree(), Some(3));
        for i in 0..8 {
            let mut expect = vec![(i + 7) % 8, (i + 1) % 8, (i + 4) % 8];
            expect.sort();
            assert_eq!(cg.graph.neighbors(i).iter().map(|&x| x as usize).collect::<Vec<_>>(), expect);
        }
        assert!(bipartite_subgroup(&cg).unwrap().is_none());
        assert!(!brute_force_bipartite(&cg.graph));
    }

    #[test]
    fn cube_bipartition_is_even_weight() {
        let cg = cayley_graph(Arc::new(BinaryVectorGroup::new(3)), &[1, 2, 4]).unwrap();
        assert_eq!(cg.graph.edge_count(), 12);
        let k = bipartite_subgroup(&cg).unwrap().unwrap();
        assert_eq!(k.members(), &[0, 3, 5, 6]);
        assert!(brute_force_bipartite(&cg.graph));
    }

    #[test]
    fn invalid_generator_sets() {
        let c4: GroupRef = Arc::new(CyclicGroup::new(4));
        assert_eq!(cayley_graph(c4.clone(), &[1]).unwrap_err(), Error::AsymmetricGenerators);
        assert_eq!(cayley_graph(c4.clone(), &[0, 2]).unwrap_err(), Error::IdentityInGenerators);
        let cg = cayley_graph(c4, &[2]).unwrap();
        assert!(matches!(bipartite_subgroup(&cg), Err(Error::NotGenerating { reached: 2, order: 4 })));
    }

    #[test]
    fn bipartite_subgroup_agrees_with_brute_force() {
        for n in 3..=12usize {
            let c: GroupRef = Arc::new(CyclicGroup::new(n));
            for mask in 1u32..(1 << (n / 2 + 1)) {
                let mut gens: Vec<usize> = (1..=n / 2).filter(|i| mask >> i & 1 == 1).collect();
                if gens.is_empty() {
                    continue;
                }
                let inv: Vec<usize> = gens.iter().map(|&s| c.inv(s)).collect();
                gens.extend(inv);
                gens.sort();
                gens.dedup();
                let cg = cayley_graph(c.clone(), &gens).unwrap();
                match bipartite_subgroup(&cg) {
                    Ok(k) => assert_eq!(k.is_some(), brute_force_bipartite(&cg.graph), "n={n} S={gens:?}"),
                    Err(_) => assert!(!cg.graph.is_connected()),
                }
            }
        }
    }
}
