//! Binary linear codes presented by defining constraints.

mod cyclic;
mod distance;

pub use cyclic::{build_b_double_prime, build_b_prime, cyclic_code, CyclicCodeDatum};
pub use distance::{min_distance_bz, min_distance_exhaustive, DistanceResult, DEFAULT_BZ_BUDGET, EXHAUSTIVE_DIM_CAP};

use num_rational::Ratio;
use rand::Rng;

use crate::bits::BitVec;
use crate::error::{Error, Result};

/// Reduced row echelon form: nonzero rows with their pivot columns, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon {
    pub rows: Vec<BitVec>,
    pub pivots: Vec<usize>,
}

/// Fully reduced echelon form of the span of `rows`, pivots chosen in `column_order`.
pub fn echelon_in_order(len: usize, rows: &[BitVec], column_order: &[usize]) -> Echelon {
    let mut m: Vec<BitVec> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for &c in column_order {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| m[i].get(c)) else { continue };
        m.swap(r, p);
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row.get(c) {
                row.xor_assign(&pivot);
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    debug_assert!(m.iter().all(|row| row.len() == len));
    Echelon { rows: m, pivots }
}

pub fn echelon(len: usize, rows: &[BitVec]) -> Echelon {
    let order: Vec<usize> = (0..len).collect();
    echelon_in_order(len, rows, &order)
}

#[derive(Clone, PartialEq, Eq)]
pub struct LinearCode {
    n: usize,
    constraints: Vec<BitVec>,
    check: Echelon,
    generators: Vec<BitVec>,
}

impl std::fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LinearCode[{}, {}] ({} constraints)", self.n, self.dimension(), self.constraints.len())
    }
}

impl LinearCode {
    /// The code `{x : ⟨r, x⟩ = 0 for every r in rows}`.
    pub fn from_constraints(n: usize, rows: Vec<BitVec>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyLength);
        }
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::LengthMismatch { expected: n, got: r.len() });
        }
        let check = echelon(n, &rows);
        let mut is_pivot = vec![false; n];
        for &p in &check.pivots {
            is_pivot[p] = true;
        }
        let generators = (0..n)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut g = BitVec::zeros(n);
                g.set(f, true);
                for (row, &p) in check.rows.iter().zip(&check.pivots) {
                    if row.get(f) {
                        g.set(p, true);
                    }
                }
                g
            })
            .collect();
        Ok(LinearCode { n, constraints: rows, check, generators })
    }

    /// The code spanned by `rows`, presented by a basis of its dual.
    pub fn from_generators(n: usize, rows: Vec<BitVec>) -> Result<Self> {
        let dual = LinearCode::from_constraints(n, rows)?;
        LinearCode::from_constraints(n, dual.generators)
    }

    /// Full space `F₂ⁿ`.
    pub fn full(n: usize) -> Result<Self> {
        Self::from_constraints(n, Vec::new())
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dimension(&self) -> usize {
        self.generators.len()
    }

    pub fn rank(&self) -> usize {
        self.check.rows.len()
    }

    pub fn rate(&self) -> Ratio<i64> {
        Ratio::new(self.dimension() as i64, self.n as i64)
    }

    pub fn constraints(&self) -> &[BitVec] {
        &self.constraints
    }

    /// Basis of the code, systematic on the non-pivot columns of the constraint echelon form.
    pub fn generators(&self) -> &[BitVec] {
        &self.generators
    }

    pub fn check_echelon(&self) -> &Echelon {
        &self.check
    }

    /// Coordinates on which the generator basis is the identity.
    pub fn information_set(&self) -> Vec<usize> {
        self.generators.iter().map(|g| g.ones().find(|i| !self.check.pivots.contains(i)).unwrap()).collect()
    }

    /// Membership by the defining constraints.
    pub fn contains(&self, x: &BitVec) -> bool {
        x.len() == self.n && self.check.rows.iter().all(|r| !r.dot(x))
    }

    /// Membership by expressing `x` in the generator basis.
    pub fn contains_by_basis(&self, x: &BitVec) -> bool {
        if x.len() != self.n {
            return false;
        }
        let mut acc = BitVec::zeros(self.n);
        for (g, i) in self.generators.iter().zip(self.information_set()) {
            if x.get(i) {
                acc.xor_assign(g);
            }
        }
        &acc == x
    }

    /// `Σ msg_i · g_i`.
    pub fn encode(&self, msg: &BitVec) -> Result<BitVec> {
        if msg.len() != self.dimension() {
            return Err(Error::LengthMismatch { expected: self.dimension(), got: msg.len() });
        }
        let mut acc = BitVec::zeros(self.n);
        for i in msg.ones() {
            acc.xor_assign(&self.generators[i]);
        }
        Ok(acc)
    }

    pub fn random_codeword<R: Rng>(&self, rng: &mut R) -> BitVec {
        let mut acc = BitVec::zeros(self.n);
        for g in &self.generators {
            if rng.gen() {
                acc.xor_assign(g);
            }
        }
        acc
    }

    /// Maximal weight of a presented constraint row.
    pub fn density(&self) -> usize {
        self.constraints.iter().map(BitVec::weight).max().unwrap_or(0)
    }

    /// `C⊥`, presented by the generator basis of `C`.
    pub fn dual(&self) -> LinearCode {
        LinearCode::from_constraints(self.n, self.generators.clone()).expect("same length")
    }

    /// Same set of codewords.
    pub fn same_code(&self, other: &LinearCode) -> bool {
        self.n == other.n && self.check.rows == other.check.rows
    }

    /// Relabels coordinates: coordinate `i` moves to `map[i]`.
    pub fn permute_coordinates(&self, map: &[usize]) -> Result<LinearCode> {
        if map.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, got: map.len() });
        }
        let mut seen = vec![false; self.n];
        for &m in map {
            if m >= self.n || std::mem::replace(&mut seen[m], true) {
                return Err(Error::NotBijective);
            }
        }
        LinearCode::from_constraints(self.n, self.constraints.iter().map(|r| r.permute(map)).collect())
    }

    /// `n=<len> rows=<r>` then one line of 0/1 characters per constraint row.
    pub fn to_parity_check_text(&self) -> String {
        let mut s = format!("n={} rows={}\n", self.n, self.constraints.len());
        for r in &self.constraints {
            s.push_str(&r.to_string());
            s.push('\n');
        }
        s
    }

    pub fn from_parity_check_text(text: &str) -> Result<LinearCode> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty file".into()))?;
        let mut fields = header.split_whitespace();
        let mut field = |key: &str| -> Result<usize> {
            fields
                .next()
                .and_then(|f| f.strip_prefix(key))
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad header {header:?}")))
        };
        let n = field("n=")?;
        let r = field("rows=")?;
        let rows: Vec<BitVec> = lines
            .map(|l| BitVec::parse(l.trim()).ok_or_else(|| Error::Parse(format!("bad row {l:?}"))))
            .collect::<Result<_>>()?;
        if rows.len() != r {
            return Err(Error::Parse(format!("header says {r} rows, found {}", rows.len())));
        }
        LinearCode::from_constraints(n, rows)
    }
}

/// Codes equal after moving coordinate `i` of `c1` to `map[i]`.
pub fn codes_equal(c1: &LinearCode, c2: &LinearCode, map: &[usize]) -> Result<bool> {
    if c1.len() != c2.len() {
        return Err(Error::LengthMismatch { expected: c2.len(), got: c1.len() });
    }
    Ok(c1.permute_coordinates(map)?.same_code(c2))
}

/// `c₁` on even positions, `c₂` on odd positions.
pub fn interleave_pair(c1: &BitVec, c2: &BitVec) -> Result<BitVec> {
    if c1.len() != c2.len() {
        return Err(Error::LengthMismatch { expected: c1.len(), got: c2.len() });
    }
    Ok(BitVec::from_indices(2 * c1.len(), c1.ones().map(|i| 2 * i).chain(c2.ones().map(|i| 2 * i + 1))))
}

pub fn deinterleave(w: &BitVec) -> Result<(BitVec, BitVec)> {
    if !w.len().is_multiple_of(2) {
        return Err(Error::LengthMismatch { expected: w.len() + 1, got: w.len() });
    }
    let half = w.len() / 2;
    let even = BitVec::from_indices(half, w.ones().filter(|i| i % 2 == 0).map(|i| i / 2));
    let odd = BitVec::from_indices(half, w.ones().filter(|i| i % 2 == 1).map(|i| i / 2));
    Ok((even, odd))
}

/// Hamming `[7, 4, 3]`, cyclic presentation.
pub fn hamming_7_4() -> LinearCode {
    cyclic_code(7, &crate::algebra::GF2Poly::from_exponents([0, 1, 3])).expect("X^3+X+1 divides X^7-1").code
}

/// Extended Hamming `[8, 4, 4]`.
pub fn extended_hamming_8_4() -> LinearCode {
    let h = hamming_7_4();
    let gens = h
        .generators()
        .iter()
        .map(|g| {
            let mut e = BitVec::from_indices(8, g.ones());
            if g.weight() % 2 == 1 {
                e.set(7, true);
            }
            e
        })
        .collect();
    LinearCode::from_generators(8, gens).expect("length 8")
}

pub fn repetition(n: usize) -> Result<LinearCode> {
    LinearCode::from_constraints(n, (0..n.saturating_sub(1)).map(|i| BitVec::from_indices(n, [i, i + 1])).collect())
}

pub fn parity(n: usize) -> Result<LinearCode> {
    LinearCode::from_constraints(n, vec![BitVec::from_indices(n, 0..n)])
}
