//! Finite fields F_{p^n} with elements encoded as base-p digit strings.
//!
//! An element `a_0 + a_1 x + ... + a_{n-1} x^{n-1}` (residue modulo the field
//! modulus) is stored as the integer `a_0 + a_1 p + ... + a_{n-1} p^{n-1}`, so the
//! prime subfield is exactly the range `0..p`. Multiplication goes through
//! discrete log tables built once at construction.

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest field order we are willing to tabulate.
pub const MAX_FIELD_ORDER: u64 = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
pub struct FieldElement(pub u32);

#[derive(Debug, Clone)]
pub struct Field {
    p: u32,
    n: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `(p, n)` with `q = p^n` if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut n = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        n += 1;
    }
    (rest == 1).then_some((p, n))
}

/// Polynomials over F_p as ascending coefficient vectors, trimmed.
mod fp_poly {
    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        trim(out.into_iter().map(|c| c as u32).collect())
    }

    /// Remainder of `a` modulo the monic polynomial `m`.
    pub fn rem_monic(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = trim(a.to_vec());
        let dm = m.len() - 1;
        while r.len() > dm {
            let lead = *r.last().unwrap() as u64;
            let shift = r.len() - 1 - dm;
            for (i, &c) in m.iter().enumerate() {
                let sub = lead * c as u64 % p as u64;
                r[shift + i] = ((r[shift + i] as u64 + p as u64 - sub) % p as u64) as u32;
            }
            r = trim(r);
        }
        r
    }

    /// Monic polynomial of degree `deg` whose lower coefficients are the base-p digits of `code`.
    pub fn monic_from_code(code: u64, deg: usize, p: u32) -> Vec<u32> {
        let mut c = code;
        let mut v = Vec::with_capacity(deg + 1);
        for _ in 0..deg {
            v.push((c % p as u64) as u32);
            c /= p as u64;
        }
        v.push(1);
        v
    }

    /// Trial division by every monic polynomial of degree 1..=deg/2.
    pub fn is_irreducible(m: &[u32], p: u32) -> bool {
        let deg = m.len() - 1;
        for d in 1..=deg / 2 {
            for code in 0..(p as u64).pow(d as u32) {
                let f = monic_from_code(code, d, p);
                if rem_monic(m, &f, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

impl Field {
    /// Builds F_{p^n} from an explicit monic modulus given as ascending coefficients mod `p`.
    pub fn new(p: u64, n: u32, modulus: &[u64]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::InvalidParameter("extension degree must be at least 1".into()));
        }
        let q = p.checked_pow(n).filter(|&q| q <= MAX_FIELD_ORDER).ok_or(Error::FieldTooLarge(p.saturating_pow(n)))?;
        let m: Vec<u32> = fp_poly::trim(modulus.iter().map(|&c| (c % p) as u32).collect());
        if m.len() != n as usize + 1 || m[n as usize] != 1 {
            return Err(Error::BadModulus { expected: n as usize, got: m.len().saturating_sub(1) });
        }
        let p32 = p as u32;
        if !fp_poly::is_irreducible(&m, p32) {
            return Err(Error::ReducibleModulus { p });
        }
        let mut field = Field { p: p32, n, q: q as u32, modulus: m, exp: Vec::new(), log: Vec::new() };
        field.build_log_tables();
        Ok(field)
    }

    /// F_{p^n} with the default modulus: `X^2 - 3` for F_49, otherwise the least
    /// monic irreducible (lower coefficients read as a base-p integer, ascending).
    pub fn with_default_modulus(p: u64, n: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if (p, n) == (7, 2) {
            return Field::new(7, 2, &[4, 0, 1]);
        }
        let p32 = p as u32;
        let count = p.checked_pow(n).filter(|&q| q <= MAX_FIELD_ORDER).ok_or(Error::FieldTooLarge(p.saturating_pow(n)))?;
        for code in 0..count {
            let m = fp_poly::monic_from_code(code, n as usize, p32);
            if fp_poly::is_irreducible(&m, p32) {
                let coeffs: Vec<u64> = m.iter().map(|&c| c as u64).collect();
                return Field::new(p, n, &coeffs);
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    /// Field of order `q`, which must be a prime power.
    pub fn of_order(q: u64) -> Result<Self> {
        let (p, n) = prime_power(q).ok_or(Error::NotOddPrimePower(q))?;
        Field::with_default_modulus(p, n)
    }

    fn digits(&self, a: u32) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.n as usize);
        let mut a = a;
        for _ in 0..self.n {
            v.push(a % self.p);
            a /= self.p;
        }
        fp_poly::trim(v)
    }

    fn digits_to_index(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let prod = fp_poly::mul(&self.digits(a), &self.digits(b), self.p);
        self.digits_to_index(&fp_poly::rem_monic(&prod, &self.modulus, self.p))
    }

    fn build_log_tables(&mut self) {
        let q = self.q;
        let one = 1u32;
        for g in 1..q {
            let mut exp = Vec::with_capacity(q as usize - 1);
            let mut x = one;
            loop {
                exp.push(x);
                x = self.mul_slow(x, g);
                if x == one || exp.len() >= q as usize {
                    break;
                }
            }
            if exp.len() == q as usize - 1 {
                let mut log = vec![u32::MAX; q as usize];
                for (i, &e) in exp.iter().enumerate() {
                    log[e as usize] = i as u32;
                }
                self.exp = exp;
                self.log = log;
                return;
            }
        }
        unreachable!("multiplicative group of a finite field is cyclic")
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> FieldElement {
        FieldElement(v.rem_euclid(self.p as i64) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    /// Primitive element used for the log tables.
    pub fn generator(&self) -> FieldElement {
        FieldElement(self.exp[1 % self.exp.len()])
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.n == 1 {
            return FieldElement((a.0 + b.0) % self.p);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0, 1);
        for _ in 0..self.n {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.n == 1 {
            return FieldElement((self.p - a.0) % self.p);
        }
        let (mut x, mut out, mut place) = (a.0, 0, 1);
        for _ in 0..self.n {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement(0);
        }
        let s = self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64;
        FieldElement(self.exp[(s % (self.q as u64 - 1)) as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.0 == 0 {
            return None;
        }
        let l = self.log[a.0 as usize];
        Some(FieldElement(self.exp[((self.q - 1 - l) % (self.q - 1)) as usize]))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return self.one();
        }
        if a.0 == 0 {
            return self.zero();
        }
        let l = self.log[a.0 as usize] as u64;
        FieldElement(self.exp[((l * (e % (self.q as u64 - 1))) % (self.q as u64 - 1)) as usize])
    }

    /// Nonzero squares are exactly the even powers of the primitive element (odd characteristic).
    pub fn is_square(&self, a: FieldElement) -> bool {
        a.0 == 0 || self.p == 2 || self.log[a.0 as usize].is_multiple_of(2)
    }

    pub fn to_digits(&self, a: FieldElement) -> Vec<u32> {
        let mut v = self.digits(a.0);
        v.resize(self.n as usize, 0);
        v
    }
}
