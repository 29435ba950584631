use crate::algebra::GF2Poly;
use crate::bits::BitVec;
use crate::error::{Error, Result};

use super::LinearCode;

/// A cyclic code with generator `g`, check polynomial `h = (Xⁿ−1)/g`, and the
/// `n` cyclic shifts of the reversed `h` as defining constraints.
#[derive(Debug, Clone)]
pub struct CyclicCodeDatum {
    pub n: usize,
    pub g: GF2Poly,
    pub h: GF2Poly,
    pub code: LinearCode,
}

pub fn cyclic_code(n: usize, g: &GF2Poly) -> Result<CyclicCodeDatum> {
    if n == 0 {
        return Err(Error::EmptyLength);
    }
    let (h, r) = GF2Poly::x_n_minus_one(n).divmod(g)?;
    if !r.is_zero() {
        return Err(Error::NotDivisor(n));
    }
    // row k is j ↦ h_{(k−j) mod n}: the coefficient of X^k in c(X)h(X) mod Xⁿ−1
    let reversed = BitVec::from_indices(n, h.exponents().map(|e| (n - e) % n));
    let rows = (0..n).map(|k| reversed.rotate(k)).collect();
    let code = LinearCode::from_constraints(n, rows)?;
    Ok(CyclicCodeDatum { n, g: g.clone(), h, code })
}

impl CyclicCodeDatum {
    /// Coefficient vector of `g` (index 0 = constant term).
    pub fn generator_word(&self) -> BitVec {
        self.g.to_bitvec(self.n)
    }
}

/// The `[79, 40]` cyclic code generated by the embedded degree-39 polynomial.
pub fn build_b_double_prime() -> CyclicCodeDatum {
    cyclic_code(79, &GF2Poly::g79()).expect("g divides X^79 - 1")
}

/// The `[158, 80]` cyclic code generated by the square of that polynomial.
pub fn build_b_prime() -> CyclicCodeDatum {
    cyclic_code(158, &GF2Poly::g79().square()).expect("g^2 divides X^158 - 1")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{deinterleave, interleave_pair};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn hamming_presentation() {
        let c = cyclic_code(7, &GF2Poly::from_exponents([0, 1, 3])).unwrap();
        assert_eq!(c.code.dimension(), 4);
        assert_eq!(c.h, GF2Poly::from_exponents([0, 1, 2, 4]));
        assert_eq!(c.code.density(), 4);
        assert!(c.code.contains(&c.generator_word()));
    }

    #[test]
    fn non_divisor_rejected() {
        assert_eq!(cyclic_code(5, &GF2Poly::from_exponents([0, 1, 3])).unwrap_err(), Error::NotDivisor(5));
    }

    #[test]
    fn shift_closure() {
        let c = cyclic_code(15, &GF2Poly::from_exponents([0, 1, 4])).unwrap();
        // dimension 11: exhaustive
        for m in 0u32..(1 << c.code.dimension()) {
            let msg = BitVec::from_indices(c.code.dimension(), (0..11).filter(|i| m >> i & 1 == 1));
            let w = c.code.encode(&msg).unwrap();
            assert!(c.code.contains(&w.rotate(1)));
        }
    }

    #[test]
    fn b_double_prime_parameters() {
        let b = build_b_double_prime();
        assert_eq!(b.g.weight(), 23);
        assert_eq!(b.h.weight(), 20);
        assert_eq!(&b.g * &b.h, GF2Poly::x_n_minus_one(79));
        assert_eq!(b.code.len(), 79);
        assert_eq!(b.code.dimension(), 40);
        assert_eq!(b.code.density(), 20);
        assert!(b.code.contains(&b.generator_word()));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let w = b.code.random_codeword(&mut rng);
            assert!(b.code.contains(&w.rotate(rng.gen_range(0..79))));
        }
    }

    #[test]
    fn b_prime_is_interleaved_b_double_prime() {
        let b2 = build_b_double_prime();
        let b1 = build_b_prime();
        assert_eq!(b1.code.len(), 158);
        assert_eq!(b1.code.dimension(), 80);
        assert_eq!(b1.code.density(), 20);
        let g = b2.generator_word();
        let w = interleave_pair(&g, &BitVec::zeros(79)).unwrap();
        assert!(b1.code.contains(&w));
        assert_eq!(w.weight(), 23);
        for gen in b1.code.generators() {
            let (a, c) = deinterleave(gen).unwrap();
            assert!(b2.code.contains(&a) && b2.code.contains(&c));
        }
        let bad = interleave_pair(&BitVec::from_indices(79, [0]), &BitVec::zeros(79)).unwrap();
        assert!(!b1.code.contains(&bad));
    }
}
