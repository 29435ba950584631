//! Small reference instances: the hypercube family Cay(F2^d, {e_i}) with C_d
//! rotating coordinates.

use std::sync::Arc;

use crate::algebra::group::{BinaryVectorGroup, CyclicGroup, GroupRef, Subgroup};
use crate::algebra::semidirect::Automorphism;
use crate::error::{Error, Result};
use crate::symmetry::SymmetryDatum;

/// `G = F2^d`, `S = {e_0, …, e_{d−1}}`, `s₀ = e_0`, `K` = even-weight vectors,
/// `H = C_d` acting by cyclic rotation of coordinates.
pub fn hypercube_datum(dim: u32, t: Vec<usize>) -> Result<SymmetryDatum> {
    if !(2..=12).contains(&dim) {
        return Err(Error::InvalidParameter(format!("hypercube dimension {dim} outside 2..=12")));
    }
    let v = BinaryVectorGroup::new(dim);
    let g: GroupRef = Arc::new(v);
    let k = Subgroup::filter(g.clone(), |x| x.count_ones() % 2 == 0)?;
    let theta = (0..dim as usize)
        .map(|h| Automorphism::from_table((0..1usize << dim).map(|x| v.rotate(x, h) as u32).collect()))
        .collect();
    Ok(SymmetryDatum {
        g,
        s: (0..dim).map(|i| 1usize << i).collect(),
        s0: 1,
        k: Arc::new(k),
        h: Arc::new(CyclicGroup::new(dim as usize)),
        theta: Arc::new(theta),
        t,
    })
}

/// `H ∖ {1_H}` for the cyclic group of order `n`.
pub fn all_but_identity(n: usize) -> Vec<usize> {
    (1..n).collect()
}
