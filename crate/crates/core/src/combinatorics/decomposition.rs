use super::WeightVector;
use crate::{Error, Result};

/// An `r`-decomposition `(l_0, …, l_{r-1})` of a target `l ∈ Z_{≥0}^h`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Decomposition {
    /// `parts[α][j]`.
    pub parts: Vec<Vec<u32>>,
}

impl Decomposition {
    pub fn rank(&self) -> usize {
        self.parts.len()
    }

    /// `Σ_α l_α`.
    pub fn target(&self) -> Vec<u32> {
        let h = self.parts.first().map_or(0, Vec::len);
        (0..h).map(|j| self.parts.iter().map(|p| p[j]).sum()).collect()
    }

    /// `co = Σ_α α·|l_α|`.
    pub fn co(&self) -> u32 {
        self.parts
            .iter()
            .enumerate()
            .map(|(alpha, p)| alpha as u32 * p.iter().sum::<u32>())
            .sum()
    }
}

/// The bijection `B(l, r) → Dec(l, r)`: `(l_α)_j` counts the entries of block
/// `j` equal to `α`.
pub fn dec_of_weights(blocks: &[WeightVector], r: u32) -> Result<Decomposition> {
    let mut parts = vec![vec![0; blocks.len()]; r as usize];
    for (j, v) in blocks.iter().enumerate() {
        if !v.is_decreasing() {
            return Err(Error::precondition(format!("{v} is not decreasing")));
        }
        for &x in v.entries() {
            if x >= r {
                return Err(Error::WeightOutOfRange { entry: x, rank: r });
            }
            parts[x as usize][j] += 1;
        }
    }
    Ok(Decomposition { parts })
}

/// Inverse of [`dec_of_weights`].
pub fn weights_of_dec(dec: &Decomposition) -> Vec<WeightVector> {
    let target = dec.target();
    (0..target.len())
        .map(|j| {
            let mut v = Vec::with_capacity(target[j] as usize);
            for alpha in (0..dec.rank()).rev() {
                v.extend(std::iter::repeat_n(alpha as u32, dec.parts[alpha][j] as usize));
            }
            WeightVector(v)
        })
        .collect()
}

/// `Dec(l, r)` for a single-block target `l`, as count vectors
/// `(l_0, …, l_{r-1})` in lexicographic order.
pub fn enumerate_dec(l: u32, r: u32) -> Vec<Vec<u32>> {
    fn go(remaining: u32, slots: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 1 {
            cur.push(remaining);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for x in 0..=remaining {
            cur.push(x);
            go(remaining - x, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if r > 0 {
        go(l, r, &mut Vec::new(), &mut out);
    }
    out
}

/// Decreasing vectors of length `n` with `v_1 ≤ r - 1` (when `r` is given) and
/// `co ≤ max_co` (when given), ordered by `co` then lexicographically. At
/// least one bound is required.
pub fn enumerate_b(n: usize, r: Option<u32>, max_co: Option<u32>) -> Result<Vec<WeightVector>> {
    let top = match (r, max_co) {
        (None, None) => return Err(Error::precondition("B(n, ∞) needs a co bound")),
        (Some(r), Some(c)) => r.saturating_sub(1).min(c),
        (Some(r), None) => r.saturating_sub(1),
        (None, Some(c)) => c,
    };
    if r == Some(0) {
        return Ok(Vec::new());
    }
    let cap = max_co.unwrap_or(u32::MAX);
    let mut out = Vec::new();
    fn go(n: usize, ceiling: u32, budget: u32, cur: &mut Vec<u32>, out: &mut Vec<WeightVector>) {
        if cur.len() == n {
            out.push(WeightVector(cur.clone()));
            return;
        }
        for x in 0..=ceiling.min(budget) {
            cur.push(x);
            go(n, x, budget - x, cur, out);
            cur.pop();
        }
    }
    go(n, top, cap, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| (a.co(), &a.0).cmp(&(b.co(), &b.0)));
    Ok(out)
}
