//! Polynomials over F2, stored as packed coefficient bits (bit i = coefficient of X^i).

use std::fmt;
use std::ops::{Add, Mul};

use crate::bits::BitVec;
use crate::error::{Error, Result};

/// Exponents of the degree-39 generator of the [79, 40, 15] cyclic code.
pub const G79_EXPONENTS: [usize; 23] =
    [0, 1, 2, 4, 5, 11, 13, 14, 16, 18, 19, 20, 21, 24, 25, 26, 27, 29, 30, 31, 35, 36, 39];

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GF2Poly {
    // no trailing zero words; empty = zero polynomial
    words: Vec<u64>,
}

impl GF2Poly {
    pub fn zero() -> Self {
        GF2Poly { words: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    pub fn monomial(exp: usize) -> Self {
        let mut words = vec![0u64; exp / 64 + 1];
        words[exp / 64] = 1 << (exp % 64);
        GF2Poly { words }
    }

    /// Builds a polynomial from exponents; repeated exponents cancel.
    pub fn from_exponents(exps: impl IntoIterator<Item = usize>) -> Self {
        let mut p = Self::zero();
        for e in exps {
            p.flip(e);
        }
        p
    }

    /// The generator g(X) of the length-79 cyclic code.
    pub fn g79() -> Self {
        Self::from_exponents(G79_EXPONENTS)
    }

    /// `X^n + 1` (equal to `X^n - 1` over F2).
    pub fn x_n_minus_one(n: usize) -> Self {
        Self::from_exponents([0, n])
    }

    /// Parses the comma-separated ascending exponent list, e.g. `"0,1,3"`.
    pub fn parse_exponents(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::zero());
        }
        let mut prev: Option<usize> = None;
        let mut p = Self::zero();
        for tok in s.split(',') {
            let e: usize = tok.trim().parse().map_err(|_| Error::PolyParse(s.to_string()))?;
            if prev.is_some_and(|q| q >= e) {
                return Err(Error::PolyParse(s.to_string()));
            }
            prev = Some(e);
            p.flip(e);
        }
        Ok(p)
    }

    pub fn to_exponent_string(&self) -> String {
        self.exponents().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
    }

    fn flip(&mut self, exp: usize) {
        if self.words.len() <= exp / 64 {
            self.words.resize(exp / 64 + 1, 0);
        }
        self.words[exp / 64] ^= 1 << (exp % 64);
        self.normalize();
    }

    fn normalize(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let top = *self.words.last()?;
        Some((self.words.len() - 1) * 64 + 63 - top.leading_zeros() as usize)
    }

    pub fn coeff(&self, exp: usize) -> bool {
        self.words.get(exp / 64).is_some_and(|w| (w >> (exp % 64)) & 1 == 1)
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn exponents(&self) -> impl Iterator<Item = usize> + '_ {
        let deg = self.degree().map_or(0, |d| d + 1);
        (0..deg).filter(|&e| self.coeff(e))
    }

    fn shifted(&self, by: usize) -> Self {
        GF2Poly::from_exponents(self.exponents().map(|e| e + by))
    }

    pub fn divmod(&self, divisor: &GF2Poly) -> Result<(GF2Poly, GF2Poly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let mut rem = self.clone();
        let mut quot = GF2Poly::zero();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let shift = rd - dd;
            quot.flip(shift);
            rem = &rem + &divisor.shifted(shift);
        }
        Ok((quot, rem))
    }

    pub fn square(&self) -> Self {
        // Frobenius: (sum a_i X^i)^2 = sum a_i X^{2i}
        GF2Poly::from_exponents(self.exponents().map(|e| 2 * e))
    }

    /// Reversal `X^deg * p(1/X)`.
    pub fn reciprocal(&self) -> Self {
        match self.degree() {
            None => Self::zero(),
            Some(d) => GF2Poly::from_exponents(self.exponents().map(|e| d - e)),
        }
    }

    /// Coefficient vector of length `n` (index 0 = constant term).
    pub fn to_bitvec(&self, n: usize) -> BitVec {
        assert!(self.degree().is_none_or(|d| d < n), "polynomial does not fit in length {n}");
        BitVec::from_indices(n, self.exponents())
    }

    pub fn from_bitvec(v: &BitVec) -> Self {
        GF2Poly::from_exponents(v.ones())
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Add for &GF2Poly {
    type Output = GF2Poly;
    fn add(self, rhs: &GF2Poly) -> GF2Poly {
        let n = self.words.len().max(rhs.words.len());
        let mut words = vec![0u64; n];
        for (i, w) in words.iter_mut().enumerate() {
            *w = self.words.get(i).copied().unwrap_or(0) ^ rhs.words.get(i).copied().unwrap_or(0);
        }
        let mut p = GF2Poly { words };
        p.normalize();
        p
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for &GF2Poly {
    type Output = GF2Poly;
    fn mul(self, rhs: &GF2Poly) -> GF2Poly {
        let mut acc = GF2Poly::zero();
        for e in self.exponents() {
            acc = &acc + &rhs.shifted(e);
        }
        acc
    }
}

impl fmt::Debug for GF2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF2Poly[{}]", self.to_exponent_string())
    }
}

impl fmt::Display for GF2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .exponents()
            .collect::<Vec<_>>()
            .into_iter()
            .rev()
            .map(|e| match e {
                0 => "1".to_string(),
                1 => "X".to_string(),
                _ => format!("X^{e}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(exps: &[usize]) -> GF2Poly {
        GF2Poly::from_exponents(exps.iter().copied())
    }

    #[test]
    fn hamming_generator_divides_x7_plus_1() {
        let (q, r) = p(&[0, 7]).divmod(&p(&[0, 1, 3])).unwrap();
        assert_eq!(q, p(&[0, 1, 2, 4]));
        assert!(r.is_zero());
    }

    #[test]
    fn unit_divisor_and_zero_divisor() {
        let f = p(&[0, 3, 5, 70]);
        assert_eq!(f.divmod(&GF2Poly::one()).unwrap(), (f.clone(), GF2Poly::zero()));
        assert_eq!(f.divmod(&GF2Poly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn g79_check_polynomial_has_weight_20() {
        let g = GF2Poly::g79();
        assert_eq!(g.weight(), 23);
        assert_eq!(g.degree(), Some(39));
        let (h, r) = GF2Poly::x_n_minus_one(79).divmod(&g).unwrap();
        assert!(r.is_zero());
        assert_eq!(h.weight(), 20);
        assert_eq!(&g * &h, GF2Poly::x_n_minus_one(79));
    }

    #[test]
    fn exponent_text_format() {
        let f = GF2Poly::parse_exponents("0,1,3").unwrap();
        assert_eq!(f, p(&[0, 1, 3]));
        assert_eq!(f.to_exponent_string(), "0,1,3");
        assert_eq!(f.to_string(), "X^3 + X + 1");
        assert!(GF2Poly::parse_exponents("3,1").is_err());
        assert!(GF2Poly::parse_exponents("a").is_err());
        assert!(GF2Poly::parse_exponents("").unwrap().is_zero());
        assert_eq!(GF2Poly::g79().to_exponent_string(), "0,1,2,4,5,11,13,14,16,18,19,20,21,24,25,26,27,29,30,31,35,36,39");
    }

    #[test]
    fn square_is_frobenius() {
        let g = GF2Poly::g79();
        assert_eq!(g.square(), &g * &g);
    }

    proptest! {
        #[test]
        fn divmod_round_trip(f in proptest::collection::vec(0usize..150, 0..40),
                             g in proptest::collection::vec(0usize..90, 1..30)) {
            let f = GF2Poly::from_exponents(f);
            let g = GF2Poly::from_exponents(g);
            prop_assume!(!g.is_zero());
            let (q, r) = f.divmod(&g).unwrap();
            prop_assert_eq!(&(&q * &g) + &r, f);
            if let Some(rd) = r.degree() {
                prop_assert!(rd < g.degree().unwrap());
            }
        }
    }
}
