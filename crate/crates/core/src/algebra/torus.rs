//! The nonsplit torus C_{q+1} ≅ F_{q²}^×/F_q^× inside PGL2.
//!
//! Write F_{q²} = F_q[x]/(x² − r) with r the first non-square of F_q. Multiplication
//! by `a + x` on the basis {1, x} has matrix `[[a, r], [1, a]]`; the classes of
//! `a + x` (a ∈ F_q) together with the identity are all of F_{q²}^×/F_q^×, so
//! a generator is found by scanning `a` upwards.

use crate::algebra::field::{is_prime, prime_power, Field};
use crate::algebra::group::{element_order, pow, FiniteGroup};
use crate::algebra::pgl2::{Matrix2, Pgl2};
use crate::error::{Error, Result};

/// Injective homomorphism C_{q+1} → PGL2(F); `images[h]` is the index of `t^h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusEmbedding {
    pub q: u64,
    /// Entries of the generator `[[a, r], [1, a]]` over F_q.
    pub generator: Matrix2,
    pub images: Vec<usize>,
}

impl TorusEmbedding {
    pub fn order(&self) -> usize {
        self.images.len()
    }
}

/// Generator matrix over F_q of the nonsplit torus in PGL2(q).
pub fn torus_generator(pgl_q: &Pgl2) -> Result<Matrix2> {
    let f = pgl_q.field();
    let q = f.order() as usize;
    let r = f.elements().find(|&e| e.0 != 0 && !f.is_square(e)).ok_or(Error::NotOddPrimePower(q as u64))?;
    for a in f.elements() {
        let m = [a, r, f.one(), a];
        let idx = pgl_q.find(&m).expect("a + x is invertible");
        if element_order(pgl_q, idx) == q + 1 {
            return Ok(m);
        }
    }
    unreachable!("F_{{q²}}^×/F_q^× is cyclic of order q + 1")
}

/// Embeds C_{q+1} into `target` = PGL2(q^n). For n > 1 the base `q` must be
/// the prime characteristic of `target`, and the torus matrices are carried
/// over through the prime subfield.
pub fn nonsplit_torus_embedding(target: &Pgl2, q: u64) -> Result<TorusEmbedding> {
    let (p, _) = prime_power(q).filter(|&(p, _)| p != 2).ok_or(Error::NotOddPrimePower(q))?;
    let tf = target.field();
    if tf.characteristic() as u64 != p {
        return Err(Error::InvalidParameter(format!("q = {q} does not match characteristic {}", tf.characteristic())));
    }
    let generator_idx;
    let generator;
    if tf.order() as u64 == q {
        generator = torus_generator(target)?;
        generator_idx = target.find(&generator).expect("invertible");
    } else {
        if !is_prime(q) {
            return Err(Error::InvalidParameter(format!("extension embedding needs prime q, got {q}")));
        }
        let base = Pgl2::new(std::sync::Arc::new(Field::with_default_modulus(p, 1)?))?;
        generator = torus_generator(&base)?;
        // prime-field elements share their integer encoding in every extension
        generator_idx = target.find(&generator).expect("invertible");
    }
    let images: Vec<usize> = (0..=q as usize).map(|h| pow(target, generator_idx, h)).collect();
    if pow(target, generator_idx, q as usize + 1) != target.identity() {
        return Err(Error::GroupAxiom("torus generator order does not divide q + 1".into()));
    }
    let mut sorted = images.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != images.len() {
        return Err(Error::GroupAxiom("torus embedding not injective".into()));
    }
    Ok(TorusEmbedding { q, generator, images })
}
