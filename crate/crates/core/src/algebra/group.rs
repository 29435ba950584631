//! Finite groups with elements addressed by dense indices `0..order`.

use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// A finite group whose elements are the indices `0..order()`.
pub trait FiniteGroup: Send + Sync {
    fn order(&self) -> usize;
    fn identity(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inv(&self, a: usize) -> usize;

    /// Human-readable name of an element.
    fn label(&self, a: usize) -> String {
        a.to_string()
    }
}

pub type GroupRef = Arc<dyn FiniteGroup>;

impl fmt::Debug for dyn FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order={})", self.order())
    }
}

pub fn pow(g: &dyn FiniteGroup, a: usize, e: usize) -> usize {
    let mut acc = g.identity();
    let mut base = a;
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = g.mul(acc, base);
        }
        base = g.mul(base, base);
        e >>= 1;
    }
    acc
}

pub fn element_order(g: &dyn FiniteGroup, a: usize) -> usize {
    let id = g.identity();
    let mut x = a;
    let mut k = 1;
    while x != id {
        x = g.mul(x, a);
        k += 1;
    }
    k
}

/// `a b a^{-1} b^{-1} == 1` for all pairs.
pub fn is_abelian(g: &dyn FiniteGroup) -> bool {
    (0..g.order()).all(|a| (0..g.order()).all(|b| g.mul(a, b) == g.mul(b, a)))
}

/// Elements reachable from the identity by right multiplication with `gens`,
/// in breadth-first order. This is the subgroup generated by `gens`.
pub fn closure(g: &dyn FiniteGroup, gens: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; g.order()];
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    let id = g.identity();
    seen[id] = true;
    queue.push_back(id);
    while let Some(x) = queue.pop_front() {
        out.push(x);
        for &s in gens {
            let y = g.mul(x, s);
            if !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    out
}

/// Greedy small generating set: walk the elements in index order and keep
/// each one that enlarges the generated subgroup.
pub fn generating_set(g: &dyn FiniteGroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut inside = vec![false; g.order()];
    inside[g.identity()] = true;
    for a in 0..g.order() {
        if !inside[a] {
            gens.push(a);
            for x in closure(g, &gens) {
                inside[x] = true;
            }
        }
    }
    gens
}

/// Checks identity and inverse laws on every element, and associativity on
/// every triple when `order <= 400`, otherwise on `samples` random triples.
pub fn check_axioms(g: &dyn FiniteGroup, samples: usize, seed: u64) -> Result<()> {
    let n = g.order();
    let id = g.identity();
    for a in 0..n {
        if g.mul(id, a) != a || g.mul(a, id) != a {
            return Err(Error::GroupAxiom(format!("identity law fails at {}", g.label(a))));
        }
        let ai = g.inv(a);
        if g.mul(a, ai) != id || g.mul(ai, a) != id {
            return Err(Error::GroupAxiom(format!("inverse law fails at {}", g.label(a))));
        }
    }
    let assoc = |a: usize, b: usize, c: usize| -> Result<()> {
        if g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)) {
            return Err(Error::GroupAxiom(format!(
                "associativity fails at ({}, {}, {})",
                g.label(a),
                g.label(b),
                g.label(c)
            )));
        }
        Ok(())
    };
    if n <= 400 {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    assoc(a, b, c)?;
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            assoc(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))?;
        }
    }
    Ok(())
}

/// Cyclic group `Z/n` written additively; element `i` is the residue `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CyclicGroup {
    n: usize,
}

impl CyclicGroup {
    pub fn new(n: usize) -> Self {
        assert!(n > 0, "cyclic group of order 0");
        CyclicGroup { n }
    }
}

impl FiniteGroup for CyclicGroup {
    fn order(&self) -> usize {
        self.n
    }
    fn identity(&self) -> usize {
        0
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        (a + b) % self.n
    }
    fn inv(&self, a: usize) -> usize {
        (self.n - a) % self.n
    }
}

/// The elementary abelian group F2^d; element = bit mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BinaryVectorGroup {
    dim: u32,
}

impl BinaryVectorGroup {
    pub fn new(dim: u32) -> Self {
        assert!(dim < 24, "F2^{dim} too large to enumerate");
        BinaryVectorGroup { dim }
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// Rotates coordinates: bit i moves to bit (i + by) mod d.
    pub fn rotate(&self, x: usize, by: usize) -> usize {
        let d = self.dim as usize;
        (0..d).filter(|i| x >> i & 1 == 1).fold(0, |acc, i| acc | 1 << ((i + by) % d))
    }
}

impl FiniteGroup for BinaryVectorGroup {
    fn order(&self) -> usize {
        1 << self.dim
    }
    fn identity(&self) -> usize {
        0
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        a ^ b
    }
    fn inv(&self, a: usize) -> usize {
        a
    }
    fn label(&self, a: usize) -> String {
        (0..self.dim).map(|i| if a >> i & 1 == 1 { '1' } else { '0' }).collect()
    }
}

/// A group given by its full multiplication table.
#[derive(Debug, Clone)]
pub struct TableGroup {
    n: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    identity: usize,
}

impl TableGroup {
    /// Tabulates any group; intended for orders up to a few thousand.
    pub fn tabulate(g: &dyn FiniteGroup) -> Self {
        let n = g.order();
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(g.mul(a, b) as u32);
            }
        }
        TableGroup { n, table, inverse: (0..n).map(|a| g.inv(a) as u32).collect(), identity: g.identity() }
    }
}

impl FiniteGroup for TableGroup {
    fn order(&self) -> usize {
        self.n
    }
    fn identity(&self) -> usize {
        self.identity
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }
    fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }
}

/// A subgroup of a parent group, re-indexed densely in ascending parent order.
#[derive(Clone)]
pub struct Subgroup {
    parent: GroupRef,
    members: Vec<usize>,
    position: Vec<u32>,
    identity: usize,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order={}, parent_order={})", self.members.len(), self.parent.order())
    }
}

impl Subgroup {
    /// Builds the subgroup from its member list, verifying closure.
    pub fn new(parent: GroupRef, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        let mut position = vec![u32::MAX; parent.order()];
        for (i, &m) in members.iter().enumerate() {
            position[m] = i as u32;
        }
        let id = parent.identity();
        if position[id] == u32::MAX {
            return Err(Error::GroupAxiom("subgroup misses the identity".into()));
        }
        // closure of a greedy generating set must stay inside the member list
        let mut gens = Vec::new();
        let mut inside = vec![false; parent.order()];
        inside[id] = true;
        for &m in &members {
            if inside[m] {
                continue;
            }
            gens.push(m);
            for x in closure(parent.as_ref(), &gens) {
                if position[x] == u32::MAX {
                    return Err(Error::GroupAxiom(format!("subset not closed: {} escapes", parent.label(x))));
                }
                inside[x] = true;
            }
        }
        let identity = position[id] as usize;
        Ok(Subgroup { parent, members, position, identity })
    }

    /// Subgroup of elements satisfying `pred`.
    pub fn filter(parent: GroupRef, pred: impl Fn(usize) -> bool) -> Result<Self> {
        let members = (0..parent.order()).filter(|&a| pred(a)).collect();
        Subgroup::new(parent, members)
    }

    pub fn parent(&self) -> &GroupRef {
        &self.parent
    }

    pub fn contains(&self, parent_elem: usize) -> bool {
        self.position[parent_elem] != u32::MAX
    }

    pub fn to_parent(&self, a: usize) -> usize {
        self.members[a]
    }

    pub fn from_parent(&self, g: usize) -> Option<usize> {
        let p = self.position[g];
        (p != u32::MAX).then_some(p as usize)
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn index_in_parent(&self) -> usize {
        self.parent.order() / self.members.len()
    }
}

impl FiniteGroup for Subgroup {
    fn order(&self) -> usize {
        self.members.len()
    }
    fn identity(&self) -> usize {
        self.identity
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        self.position[self.parent.mul(self.members[a], self.members[b])] as usize
    }
    fn inv(&self, a: usize) -> usize {
        self.position[self.parent.inv(self.members[a])] as usize
    }
    fn label(&self, a: usize) -> String {
        self.parent.label(self.members[a])
    }
}
