//! Minimum distance: exhaustive Gray-code enumeration and Brouwer–Zimmermann.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::BitVec;
use crate::error::{Error, Result};

use super::{echelon_in_order, LinearCode};

/// Largest dimension accepted by [`min_distance_exhaustive`].
pub const EXHAUSTIVE_DIM_CAP: usize = 24;
/// Default cap on codewords enumerated by [`min_distance_bz`].
pub const DEFAULT_BZ_BUDGET: f64 = 2e9;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct DistanceResult {
    pub method: String,
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
    /// A codeword of weight `upper`.
    #[serde(serialize_with = "ser_bits", deserialize_with = "de_bits")]
    pub witness: BitVec,
    pub enumerated: u64,
    /// Number of new coordinates in each information set, in processing order.
    pub info_set_ranks: Vec<usize>,
    /// Largest message weight fully enumerated in every active information set.
    pub weight_reached: usize,
}

fn ser_bits<S: serde::Serializer>(b: &BitVec, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&b.to_string())
}

fn de_bits<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<BitVec, D::Error> {
    let s = String::deserialize(d)?;
    BitVec::parse(&s).ok_or_else(|| serde::de::Error::custom("expected 0/1 string"))
}

impl DistanceResult {
    pub fn distance(&self) -> Option<usize> {
        self.exact.then_some(self.upper)
    }
}

fn nonzero_code(code: &LinearCode) -> Result<()> {
    if code.dimension() == 0 {
        return Err(Error::InvalidParameter("the zero code has no minimum distance".into()));
    }
    Ok(())
}

fn sum_rows(rows: &[BitVec], pick: impl Iterator<Item = usize>, len: usize) -> BitVec {
    let mut acc = BitVec::zeros(len);
    for i in pick {
        acc.xor_assign(&rows[i]);
    }
    acc
}

/// Minimum weight over all `2^k − 1` nonzero codewords.
pub fn min_distance_exhaustive(code: &LinearCode) -> Result<DistanceResult> {
    nonzero_code(code)?;
    let k = code.dimension();
    if k > EXHAUSTIVE_DIM_CAP {
        return Err(Error::DimensionCap { dim: k, cap: EXHAUSTIVE_DIM_CAP });
    }
    let gens: Vec<&[u64]> = code.generators().iter().map(BitVec::words).collect();
    let words = gens[0].len();
    let high = k.min(6);
    let low = k - high;
    // (weight, chunk, gray index)
    let best = (0u64..1 << high)
        .into_par_iter()
        .map(|chunk| {
            let mut acc = vec![0u64; words];
            for b in 0..high {
                if chunk >> b & 1 == 1 {
                    for (a, g) in acc.iter_mut().zip(gens[low + b]) {
                        *a ^= g;
                    }
                }
            }
            let weight = |acc: &[u64]| acc.iter().map(|w| w.count_ones() as usize).sum::<usize>();
            let mut best = (usize::MAX, chunk, 0u64);
            if chunk != 0 {
                best = (weight(&acc), chunk, 0);
            }
            for i in 1u64..1 << low {
                let bit = i.trailing_zeros() as usize;
                for (a, g) in acc.iter_mut().zip(gens[bit]) {
                    *a ^= g;
                }
                let w = weight(&acc);
                if w < best.0 {
                    best = (w, chunk, i);
                }
            }
            best
        })
        .min()
        .expect("nonempty");
    let gray = best.2 ^ (best.2 >> 1);
    let pick = (0..low).filter(|&b| gray >> b & 1 == 1).chain((0..high).filter(|&b| best.1 >> b & 1 == 1).map(|b| low + b));
    let witness = sum_rows(code.generators(), pick, code.len());
    debug_assert_eq!(witness.weight(), best.0);
    Ok(DistanceResult {
        method: "exhaustive".into(),
        lower: best.0,
        upper: best.0,
        exact: true,
        witness,
        enumerated: (1u64 << k) - 1,
        info_set_ranks: vec![k],
        weight_reached: k,
    })
}

fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Generator matrices systematic on successive information sets, chosen greedily
/// to cover unused coordinates first. Returns `(rows, new coordinates)` per set.
fn information_sets(code: &LinearCode) -> Vec<(Vec<BitVec>, usize)> {
    let n = code.len();
    let k = code.dimension();
    let mut used = vec![false; n];
    let mut out = Vec::new();
    loop {
        let order: Vec<usize> = (0..n).filter(|&c| !used[c]).chain((0..n).filter(|&c| used[c])).collect();
        let e = echelon_in_order(n, code.generators(), &order);
        debug_assert_eq!(e.rows.len(), k);
        let fresh = e.pivots.iter().filter(|&&p| !used[p]).count();
        if fresh == 0 {
            break;
        }
        for &p in &e.pivots {
            used[p] = true;
        }
        out.push((e.rows, fresh));
    }
    out
}

/// Minimum weight of `Σ_{i∈I} rows[i]` over `|I| = w`, with the lexicographically first minimizer.
fn enumerate_weight(rows: &[Vec<u64>], w: usize) -> Option<(usize, Vec<usize>)> {
    let k = rows.len();
    if w == 0 || w > k {
        return None;
    }
    let words = rows[0].len();
    (0..=k - w)
        .into_par_iter()
        .map(|first| {
            let mut stack = vec![vec![0u64; words]; w];
            stack[0].copy_from_slice(&rows[first]);
            let mut idx = vec![first; w];
            let mut best: Option<(usize, Vec<usize>)> = None;
            fn rec(rows: &[Vec<u64>], stack: &mut [Vec<u64>], idx: &mut [usize], depth: usize, best: &mut Option<(usize, Vec<usize>)>) {
                let w = stack.len();
                if depth == w {
                    let wt: usize = stack[w - 1].iter().map(|x| x.count_ones() as usize).sum();
                    if best.as_ref().is_none_or(|b| wt < b.0) {
                        *best = Some((wt, idx.to_vec()));
                    }
                    return;
                }
                let remaining = w - depth;
                for i in idx[depth - 1] + 1..=rows.len() - remaining {
                    idx[depth] = i;
                    let (prev, cur) = stack.split_at_mut(depth);
                    for ((c, p), r) in cur[0].iter_mut().zip(&prev[depth - 1]).zip(&rows[i]) {
                        *c = p ^ r;
                    }
                    rec(rows, stack, idx, depth + 1, best);
                }
            }
            rec(rows, &mut stack, &mut idx, 1, &mut best);
            best
        })
        .reduce(|| None, |a, b| match (a, b) {
            (Some(a), Some(b)) => Some(if b.0 < a.0 { b } else { a }),
            (a, None) => a,
            (None, b) => b,
        })
}

/// Brouwer–Zimmermann. After enumerating all messages of weight `≤ w_j` in the
/// `j`-th systematic matrix (with `r_j` new coordinates), every codeword not yet
/// seen has weight at least `Σ_j max(0, w_j + 1 − (k − r_j))`. Stops when this
/// lower bound meets the best weight found, or when the next level would exceed
/// `budget` enumerated codewords, returning the certified interval.
pub fn min_distance_bz(code: &LinearCode, budget: f64) -> Result<DistanceResult> {
    nonzero_code(code)?;
    let k = code.dimension();
    let n = code.len();
    let sets = information_sets(code);
    let ranks: Vec<usize> = sets.iter().map(|s| s.1).collect();
    let packed: Vec<Vec<Vec<u64>>> = sets.iter().map(|(rows, _)| rows.iter().map(|r| r.words().to_vec()).collect()).collect();

    let (mut upper, mut witness) = sets[0].0.iter().map(|r| (r.weight(), r.clone())).min().expect("k > 0");
    let mut done = vec![0usize; sets.len()];
    let mut enumerated = 0u64;
    let lower_of = |done: &[usize]| -> usize {
        sets.iter().zip(done).map(|((_, r), &wj)| (wj + 1).saturating_sub(k - r)).sum::<usize>().max(1)
    };
    let mut lower = lower_of(&done);
    let mut w = 0;
    while lower < upper && w < k {
        w += 1;
        // sets contribute from the level where w + 1 > k − r_j
        let active: Vec<usize> = (0..sets.len()).filter(|&j| w + 1 > k - sets[j].1).collect();
        let cost: f64 = active.iter().map(|&j| (done[j] + 1..=w).map(|x| binomial(k, x)).sum::<f64>()).sum();
        if enumerated as f64 + cost > budget {
            w -= 1;
            break;
        }
        for &j in &active {
            for x in done[j] + 1..=w {
                if let Some((wt, idx)) = enumerate_weight(&packed[j], x) {
                    if wt < upper {
                        upper = wt;
                        witness = sum_rows(&sets[j].0, idx.into_iter(), n);
                    }
                }
                enumerated += binomial(k, x) as u64;
            }
            done[j] = w;
        }
        lower = lower_of(&done);
    }
    let exact = lower >= upper;
    Ok(DistanceResult {
        method: "brouwer-zimmermann".into(),
        lower: lower.min(upper),
        upper,
        exact,
        witness,
        enumerated,
        info_set_ranks: ranks,
        weight_reached: w,
    })
}
