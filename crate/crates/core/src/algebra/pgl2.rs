//! PGL2(q) and PSL2(q) over odd-characteristic finite fields.

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::field::{Field, FieldElement};
use crate::algebra::group::{FiniteGroup, GroupRef, Subgroup};
use crate::error::{Error, Result};

/// Row-major 2x2 matrix entries `[a, b, c, d]` for `[[a, b], [c, d]]`.
pub type Matrix2 = [FieldElement; 4];

/// A projective matrix in canonical form: the first nonzero entry (row-major) is 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectiveMatrix(pub Matrix2);

enum Lookup {
    Dense(Vec<u32>),
    Hashed(HashMap<u64, u32>),
}

/// PGL2(F), enumerated in ascending canonical-representative order.
pub struct Pgl2 {
    field: Arc<Field>,
    elems: Vec<ProjectiveMatrix>,
    lookup: Lookup,
    inverse: Vec<u32>,
    identity: usize,
}

impl std::fmt::Debug for Pgl2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Pgl2(q={}, order={})", self.field.order(), self.elems.len())
    }
}

/// `(q^2 - 1)(q^2 - q)/(q - 1) = q(q^2 - 1)`.
pub fn pgl2_order(q: u64) -> u64 {
    (q * q - 1) * (q * q - q) / (q - 1)
}

impl Pgl2 {
    pub fn new(field: Arc<Field>) -> Result<Self> {
        if field.characteristic() == 2 {
            return Err(Error::InvalidParameter("PGL2 requires odd characteristic".into()));
        }
        let q = field.order();
        let mut elems = Vec::with_capacity(pgl2_order(q as u64) as usize);
        let fe = FieldElement;
        // a = 0 forces b = 1 (b = 0 would make the matrix singular)
        for c in 1..q {
            for d in 0..q {
                elems.push(ProjectiveMatrix([fe(0), fe(1), fe(c), fe(d)]));
            }
        }
        for b in 0..q {
            for c in 0..q {
                for d in 0..q {
                    let m = [fe(1), fe(b), fe(c), fe(d)];
                    if det_raw(&field, &m).0 != 0 {
                        elems.push(ProjectiveMatrix(m));
                    }
                }
            }
        }
        let key_space = (q as u64).pow(4);
        let lookup = if key_space <= 1 << 24 {
            let mut v = vec![u32::MAX; key_space as usize];
            for (i, m) in elems.iter().enumerate() {
                v[key(q, &m.0) as usize] = i as u32;
            }
            Lookup::Dense(v)
        } else {
            Lookup::Hashed(elems.iter().enumerate().map(|(i, m)| (key(q, &m.0), i as u32)).collect())
        };
        let mut g = Pgl2 { field, elems, lookup, inverse: Vec::new(), identity: 0 };
        let one = g.field.one();
        let zero = g.field.zero();
        g.identity = g.find(&[one, zero, zero, one]).expect("identity is invertible");
        g.inverse = (0..g.elems.len())
            .map(|i| {
                let [a, b, c, d] = g.elems[i].0;
                let f = &g.field;
                g.find(&[d, f.neg(b), f.neg(c), a]).expect("adjugate of invertible matrix") as u32
            })
            .collect();
        Ok(g)
    }

    /// PGL2 over the field of order `q` with its default modulus.
    pub fn of_order(q: u64) -> Result<Self> {
        match crate::algebra::field::prime_power(q) {
            Some((p, _)) if p != 2 => Pgl2::new(Arc::new(Field::of_order(q)?)),
            _ => Err(Error::NotOddPrimePower(q)),
        }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn matrix(&self, i: usize) -> ProjectiveMatrix {
        self.elems[i]
    }

    /// Index of the class of an arbitrary invertible matrix.
    pub fn find(&self, m: &Matrix2) -> Option<usize> {
        let c = canonicalize(&self.field, m)?;
        let k = key(self.field.order(), &c.0);
        let idx = match &self.lookup {
            Lookup::Dense(v) => v[k as usize],
            Lookup::Hashed(h) => *h.get(&k)?,
        };
        (idx != u32::MAX).then_some(idx as usize)
    }

    /// Index of the class of an integer matrix (entries reduced into the prime field).
    pub fn find_int(&self, m: [i64; 4]) -> Option<usize> {
        let f = &self.field;
        self.find(&[f.from_int(m[0]), f.from_int(m[1]), f.from_int(m[2]), f.from_int(m[3])])
    }

    /// Determinant of the canonical representative.
    pub fn det(&self, i: usize) -> FieldElement {
        det_raw(&self.field, &self.elems[i].0)
    }

    /// Membership in PSL2: the determinant square class is well defined
    /// because scaling by λ multiplies the determinant by λ².
    pub fn in_psl2(&self, i: usize) -> bool {
        self.field.is_square(self.det(i))
    }
}

fn key(q: u32, m: &Matrix2) -> u64 {
    m.iter().fold(0u64, |acc, e| acc * q as u64 + e.0 as u64)
}

fn det_raw(f: &Field, m: &Matrix2) -> FieldElement {
    f.sub(f.mul(m[0], m[3]), f.mul(m[1], m[2]))
}

/// Scales so the first nonzero entry is 1; `None` for singular input.
pub fn canonicalize(f: &Field, m: &Matrix2) -> Option<ProjectiveMatrix> {
    if det_raw(f, m).0 == 0 {
        return None;
    }
    let lead = m.iter().find(|e| e.0 != 0)?;
    let s = f.inv(*lead)?;
    Some(ProjectiveMatrix([f.mul(m[0], s), f.mul(m[1], s), f.mul(m[2], s), f.mul(m[3], s)]))
}

pub fn mat_mul(f: &Field, x: &Matrix2, y: &Matrix2) -> Matrix2 {
    [
        f.add(f.mul(x[0], y[0]), f.mul(x[1], y[2])),
        f.add(f.mul(x[0], y[1]), f.mul(x[1], y[3])),
        f.add(f.mul(x[2], y[0]), f.mul(x[3], y[2])),
        f.add(f.mul(x[2], y[1]), f.mul(x[3], y[3])),
    ]
}

impl FiniteGroup for Pgl2 {
    fn order(&self) -> usize {
        self.elems.len()
    }
    fn identity(&self) -> usize {
        self.identity
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        let m = mat_mul(&self.field, &self.elems[a].0, &self.elems[b].0);
        self.find(&m).expect("product of invertible matrices")
    }
    fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }
    fn label(&self, a: usize) -> String {
        let [x, y, z, w] = self.elems[a].0;
        format!("[[{},{}],[{},{}]]", x.0, y.0, z.0, w.0)
    }
}

/// PSL2 as the index-2 subgroup of square-determinant classes.
pub fn psl2_subgroup(pgl2: &Arc<Pgl2>) -> Result<Subgroup> {
    let g = pgl2.clone();
    let parent: GroupRef = pgl2.clone();
    Subgroup::filter(parent, move |i| g.in_psl2(i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::group::check_axioms;

    #[test]
    fn orders_match_formula() {
        assert_eq!(pgl2_order(7), 336);
        assert_eq!(pgl2_order(49), 117_600);
        let g = Arc::new(Pgl2::of_order(7).unwrap());
        assert_eq!(g.order(), 336);
        let k = psl2_subgroup(&g).unwrap();
        assert_eq!(k.order(), 168);
        assert_eq!(k.index_in_parent(), 2);
        assert!(k.contains(g.identity()));
        let g5 = Pgl2::of_order(5).unwrap();
        assert_eq!(g5.order(), 120);
    }

    #[test]
    fn pgl2_7_axioms_exhaustive() {
        let g = Pgl2::of_order(7).unwrap();
        check_axioms(&g, 0, 0).unwrap();
    }

    #[test]
    fn canonical_form_and_equality() {
        let g = Pgl2::of_order(7).unwrap();
        let a = g.find_int([2, 6, 2, 2]).unwrap();
        let b = g.find_int([1, 3, 1, 1]).unwrap();
        assert_eq!(a, b);
        assert_eq!(g.matrix(a).0.map(|e| e.0), [1, 3, 1, 1]);
        assert!(g.find_int([1, 2, 2, 4]).is_none());
    }

    #[test]
    fn char_two_and_non_prime_power_rejected() {
        assert!(Pgl2::of_order(4).is_err());
        assert_eq!(Pgl2::of_order(6).unwrap_err(), Error::NotOddPrimePower(6));
    }

    #[test]
    fn pgl2_49_enumerates() {
        let g = Arc::new(Pgl2::of_order(49).unwrap());
        assert_eq!(g.order(), 117_600);
        check_axioms(g.as_ref(), 10_000, 7).unwrap();
        let k = psl2_subgroup(&g).unwrap();
        assert_eq!(k.order(), 58_800);
    }
}
