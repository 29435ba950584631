//! Automorphisms and semidirect products K ⋊_θ H.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::group::{FiniteGroup, GroupRef, Subgroup};
use crate::error::{Error, Result};

/// Pairs checked exhaustively up to this many; beyond it, random pairs.
const EXHAUSTIVE_PAIRS: usize = 1 << 22;
const SAMPLED_PAIRS: usize = 100_000;

/// A bijection of group elements, stored as an index table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Automorphism {
    map: Vec<u32>,
}

impl Automorphism {
    pub fn identity(order: usize) -> Self {
        Automorphism { map: (0..order as u32).collect() }
    }

    /// Wraps `map` after checking it is a bijection that preserves multiplication.
    pub fn new(group: &dyn FiniteGroup, map: Vec<usize>) -> Result<Self> {
        let a = Automorphism { map: map.into_iter().map(|x| x as u32).collect() };
        a.verify(group)?;
        Ok(a)
    }

    pub(crate) fn from_table(map: Vec<u32>) -> Self {
        Automorphism { map }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x] as usize
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism { map: other.map.iter().map(|&x| self.map[x as usize]).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// Bijectivity, and `φ(ab) = φ(a)φ(b)` on all pairs (random pairs for large groups).
    pub fn verify(&self, group: &dyn FiniteGroup) -> Result<()> {
        let n = group.order();
        if self.map.len() != n {
            return Err(Error::NotHomomorphism(format!("map has {} entries for a group of order {n}", self.map.len())));
        }
        let mut hit = vec![false; n];
        for &x in &self.map {
            if x as usize >= n || std::mem::replace(&mut hit[x as usize], true) {
                return Err(Error::NotBijective);
            }
        }
        let check = |a: usize, b: usize| -> Result<()> {
            if self.apply(group.mul(a, b)) != group.mul(self.apply(a), self.apply(b)) {
                return Err(Error::NotHomomorphism(format!(
                    "φ({}·{}) ≠ φ({})·φ({})",
                    group.label(a),
                    group.label(b),
                    group.label(a),
                    group.label(b)
                )));
            }
            Ok(())
        };
        if n * n <= EXHAUSTIVE_PAIRS {
            for a in 0..n {
                for b in 0..n {
                    check(a, b)?;
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..SAMPLED_PAIRS {
                check(rng.gen_range(0..n), rng.gen_range(0..n))?;
            }
        }
        Ok(())
    }

    /// Restriction to a subgroup, which must be mapped into itself.
    pub fn restrict(&self, sub: &Subgroup) -> Result<Automorphism> {
        let map = sub
            .members()
            .iter()
            .map(|&g| {
                sub.from_parent(self.apply(g)).map(|x| x as u32).ok_or_else(|| {
                    Error::SubgroupNotPreserved(format!("{} leaves the subgroup", sub.parent().label(g)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Automorphism { map })
    }
}

/// Conjugation `x ↦ g x g⁻¹`.
pub fn inner_automorphism(group: &dyn FiniteGroup, g: usize) -> Automorphism {
    let gi = group.inv(g);
    Automorphism::from_table((0..group.order()).map(|x| group.mul(group.mul(g, x), gi) as u32).collect())
}

/// Exhaustive check that `h ↦ θ_h` is a homomorphism `H → Aut(K)`.
pub fn check_action_homomorphism(h: &dyn FiniteGroup, theta: &[Automorphism]) -> Result<()> {
    if theta.len() != h.order() {
        return Err(Error::NotHomomorphism(format!("{} automorphisms for |H| = {}", theta.len(), h.order())));
    }
    if !theta[h.identity()].is_identity() {
        return Err(Error::NotHomomorphism("θ(1) is not the identity".into()));
    }
    for a in 0..h.order() {
        for b in 0..h.order() {
            if theta[h.mul(a, b)] != theta[a].compose(&theta[b]) {
                return Err(Error::NotHomomorphism(format!(
                    "θ({}·{}) ≠ θ({})∘θ({})",
                    h.label(a),
                    h.label(b),
                    h.label(a),
                    h.label(b)
                )));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SemidirectElement {
    pub k: usize,
    pub h: usize,
}

/// `K ⋊_θ H` with `(k₁,h₁)(k₂,h₂) = (k₁·θ_{h₁}(k₂), h₁h₂)`; element `(k, h)` has index `k·|H| + h`.
#[derive(Clone)]
pub struct SemidirectProduct {
    k: GroupRef,
    h: GroupRef,
    theta: Arc<Vec<Automorphism>>,
}

impl std::fmt::Debug for SemidirectProduct {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SemidirectProduct(|K|={}, |H|={})", self.k.order(), self.h.order())
    }
}

/// Builds `K ⋊_θ H`, verifying that θ is a homomorphism into Aut(K).
pub fn semidirect_product(k: GroupRef, h: GroupRef, theta: Vec<Automorphism>) -> Result<SemidirectProduct> {
    for t in &theta {
        t.verify(k.as_ref())?;
    }
    check_action_homomorphism(h.as_ref(), &theta)?;
    Ok(SemidirectProduct { k, h, theta: Arc::new(theta) })
}

impl SemidirectProduct {
    pub fn kernel_group(&self) -> &GroupRef {
        &self.k
    }

    pub fn acting_group(&self) -> &GroupRef {
        &self.h
    }

    pub fn theta(&self, h: usize) -> &Automorphism {
        &self.theta[h]
    }

    #[inline]
    pub fn index(&self, e: SemidirectElement) -> usize {
        e.k * self.h.order() + e.h
    }

    #[inline]
    pub fn element(&self, i: usize) -> SemidirectElement {
        SemidirectElement { k: i / self.h.order(), h: i % self.h.order() }
    }

    /// The projection `(k, h) ↦ h`.
    pub fn project(&self, i: usize) -> usize {
        i % self.h.order()
    }
}

impl FiniteGroup for SemidirectProduct {
    fn order(&self) -> usize {
        self.k.order() * self.h.order()
    }
    fn identity(&self) -> usize {
        self.index(SemidirectElement { k: self.k.identity(), h: self.h.identity() })
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.element(a), self.element(b));
        self.index(SemidirectElement {
            k: self.k.mul(x.k, self.theta[x.h].apply(y.k)),
            h: self.h.mul(x.h, y.h),
        })
    }
    fn inv(&self, a: usize) -> usize {
        let x = self.element(a);
        let hi = self.h.inv(x.h);
        self.index(SemidirectElement { k: self.theta[hi].apply(self.k.inv(x.k)), h: hi })
    }
    fn label(&self, a: usize) -> String {
        let x = self.element(a);
        format!("({}, {})", self.k.label(x.k), self.h.label(x.h))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::group::{check_axioms, is_abelian, BinaryVectorGroup, CyclicGroup};
    use crate::algebra::pgl2::Pgl2;

    fn rotation_action(v: &BinaryVectorGroup, k: &Subgroup, d: usize) -> Vec<Automorphism> {
        (0..d)
            .map(|h| {
                let full = Automorphism::from_table((0..v.order()).map(|x| v.rotate(x, h) as u32).collect());
                full.restrict(k).unwrap()
            })
            .collect()
    }

    #[test]
    fn trivial_action_is_direct_product() {
        let k: GroupRef = Arc::new(CyclicGroup::new(4));
        let h: GroupRef = Arc::new(CyclicGroup::new(3));
        let theta = vec![Automorphism::identity(4); 3];
        let g = semidirect_product(k, h, theta).unwrap();
        assert_eq!(g.order(), 12);
        check_axioms(&g, 0, 0).unwrap();
        assert!(is_abelian(&g));
        let a = g.index(SemidirectElement { k: 1, h: 2 });
        let b = g.index(SemidirectElement { k: 3, h: 2 });
        assert_eq!(g.element(g.mul(a, b)), SemidirectElement { k: 0, h: 1 });
    }

    #[test]
    fn even_weight_by_rotation_has_order_12() {
        let v = BinaryVectorGroup::new(3);
        let vref: GroupRef = Arc::new(v);
        let k = Subgroup::filter(vref, |x| x.count_ones() % 2 == 0).unwrap();
        let theta = rotation_action(&v, &k, 3);
        let g = semidirect_product(Arc::new(k), Arc::new(CyclicGroup::new(3)), theta).unwrap();
        assert_eq!(g.order(), 12);
        check_axioms(&g, 0, 0).unwrap();
        assert!(!is_abelian(&g));
        // projection onto H is a homomorphism
        for a in 0..12 {
            for b in 0..12 {
                assert_eq!(g.project(g.mul(a, b)), (g.project(a) + g.project(b)) % 3);
            }
        }
    }

    #[test]
    fn non_homomorphic_action_rejected() {
        let v = BinaryVectorGroup::new(3);
        let k = Subgroup::filter(Arc::new(v), |x| x.count_ones() % 2 == 0).unwrap();
        let mut theta = rotation_action(&v, &k, 3);
        theta[2] = theta[1].clone();
        // θ(1)∘θ(1) is rotation by 2, but θ(2) is now rotation by 1
        let err = semidirect_product(Arc::new(k), Arc::new(CyclicGroup::new(3)), theta).unwrap_err();
        assert!(matches!(err, Error::NotHomomorphism(_)));
    }

    #[test]
    fn restriction_outside_subgroup_rejected() {
        let v = BinaryVectorGroup::new(3);
        let vref: GroupRef = Arc::new(v);
        let k = Subgroup::filter(vref, |x| x == 0 || x == 0b011).unwrap();
        let rot = Automorphism::from_table((0..8).map(|x| v.rotate(x, 1) as u32).collect());
        assert!(matches!(rot.restrict(&k), Err(Error::SubgroupNotPreserved(_))));
    }

    #[test]
    fn inner_automorphisms() {
        let g = Pgl2::of_order(7).unwrap();
        assert!(inner_automorphism(&g, g.identity()).is_identity());
        let c = CyclicGroup::new(9);
        assert!((0..9).all(|x| inner_automorphism(&c, x).is_identity()));
        // PGL2(q) has trivial center, so every non-identity element acts nontrivially
        for x in 0..g.order() {
            let phi = inner_automorphism(&g, x);
            assert_eq!(phi.is_identity(), x == g.identity());
        }
        let a = 17;
        let b = 200;
        let lhs = inner_automorphism(&g, a).compose(&inner_automorphism(&g, b));
        assert_eq!(lhs, inner_automorphism(&g, g.mul(a, b)));
        inner_automorphism(&g, a).verify(&g).unwrap();
    }
}
