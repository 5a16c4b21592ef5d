use std::fmt;

use super::{Perm, SubsetTuple, WeightVector};
use crate::{Error, Result};

/// `L = (l_1, …, l_n)` with `l_j ∈ Z_{≥0}^j`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TupleSequence {
    rows: Vec<Vec<u32>>,
}

/// Which way the permutation enters the sum constraint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum SumConvention {
    /// `Σ_j l_j = σ(u)`.
    #[default]
    SumIsSigmaU,
    /// `σ(Σ_j l_j) = u`.
    SigmaOfSumIsU,
}

/// Which pair of partial sums the ordering condition compares.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum WindowConvention {
    /// `l(h) = Σ_{j≤h} l_j` against `l(h−1)`.
    #[default]
    Ascending,
    /// `v^(h) = target − Σ_{α≥h} l_α` against `v^(h−1)`.
    Descending,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct TConvention {
    pub sum: SumConvention,
    pub window: WindowConvention,
}

impl TConvention {
    pub const ALL: [TConvention; 4] = [
        TConvention {
            sum: SumConvention::SumIsSigmaU,
            window: WindowConvention::Ascending,
        },
        TConvention {
            sum: SumConvention::SigmaOfSumIsU,
            window: WindowConvention::Ascending,
        },
        TConvention {
            sum: SumConvention::SumIsSigmaU,
            window: WindowConvention::Descending,
        },
        TConvention {
            sum: SumConvention::SigmaOfSumIsU,
            window: WindowConvention::Descending,
        },
    ];
}

impl fmt::Display for TConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sum = match self.sum {
            SumConvention::SumIsSigmaU => "sum=sigma(u)",
            SumConvention::SigmaOfSumIsU => "sigma(sum)=u",
        };
        let window = match self.window {
            WindowConvention::Ascending => "ascending",
            WindowConvention::Descending => "descending",
        };
        write!(f, "{sum}, {window}")
    }
}

impl TupleSequence {
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        for (j, row) in rows.iter().enumerate() {
            if row.len() != j + 1 {
                return Err(Error::precondition(format!(
                    "row {} has {} entries",
                    j + 1,
                    row.len()
                )));
            }
        }
        Ok(TupleSequence { rows })
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// Row `l_j`, 1-based.
    pub fn row(&self, j: usize) -> &[u32] {
        &self.rows[j - 1]
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// `Ŝ(l_j) = s(l_j) ∪ {j}` as a bitmask.
    pub fn s_hat_mask(&self, j: usize) -> u64 {
        let mut m = 1u64 << j;
        for (i, &x) in self.row(j).iter().enumerate() {
            if x != 0 {
                m |= 1 << (i + 1);
            }
        }
        m
    }

    /// `ρ_j(L) = |l_j| − |Ŝ(l_j)| + 1`.
    pub fn rho(&self, j: usize) -> i64 {
        let size: u32 = self.row(j).iter().sum();
        size as i64 - self.s_hat_mask(j).count_ones() as i64 + 1
    }

    /// `𝓘(L) = (Ŝ(l_1), …, Ŝ(l_n))`.
    pub fn incidence(&self) -> SubsetTuple {
        SubsetTuple::from_masks((1..=self.n()).map(|j| self.s_hat_mask(j)).collect())
            .expect("Ŝ sets are nonempty")
    }

    /// `l(h) = Σ_{j≤h} l_j` padded to length `n`.
    pub fn partial_sum(&self, h: usize) -> Vec<u32> {
        let mut out = vec![0; self.n()];
        for row in &self.rows[..h] {
            for (i, &x) in row.iter().enumerate() {
                out[i] += x;
            }
        }
        out
    }

    /// `Σ_j l_j`.
    pub fn total(&self) -> Vec<u32> {
        self.partial_sum(self.n())
    }

    /// Independent re-check of the three defining conditions.
    pub fn satisfies(&self, u: &WeightVector, sigma: &Perm, conv: TConvention) -> bool {
        let n = self.n();
        if u.len() != n || sigma.len() != n {
            return false;
        }
        if self.total() != target(u, sigma, conv.sum) {
            return false;
        }
        if self.incidence().classify().keys().any(|&b| b >= 2) {
            return false;
        }
        // sums[h] = l(h) for h = 0..=n; the descending window reads v^(β) = l(β−1)
        let sums: Vec<Vec<u32>> = (0..=n).map(|h| self.partial_sum(h)).collect();
        let zero = vec![0; n];
        let at = |k: isize| if k < 0 { &zero } else { &sums[k as usize] };
        (1..=n).all(|h| {
            let h = h as isize;
            let (now, before) = match conv.window {
                WindowConvention::Ascending => (at(h), at(h - 1)),
                WindowConvention::Descending => (at(h - 1), at(h - 2)),
            };
            ordering_holds(self.s_hat_mask(h as usize), now, before)
        })
    }
}

impl fmt::Display for TupleSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (j, row) in self.rows.iter().enumerate() {
            if j > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", WeightVector(row.clone()))?;
        }
        f.write_str(")")
    }
}

fn target(u: &WeightVector, sigma: &Perm, conv: SumConvention) -> Vec<u32> {
    match conv {
        SumConvention::SumIsSigmaU => sigma.apply(u.entries()),
        SumConvention::SigmaOfSumIsU => sigma.inverse().apply(u.entries()),
    }
}

/// For `i, j ∈ S`: `now_i ≠ now_j`, and `now_j < now_i ⇒ now_j ≤ before_i`.
fn ordering_holds(set: u64, now: &[u32], before: &[u32]) -> bool {
    let members: Vec<usize> = (1..=now.len()).filter(|i| set & (1 << i) != 0).collect();
    for &i in &members {
        for &j in &members {
            if i == j {
                continue;
            }
            let (ni, nj) = (now[i - 1], now[j - 1]);
            if ni == nj {
                return false;
            }
            if nj < ni && nj > before[i - 1] {
                return false;
            }
        }
    }
    true
}

/// `T(u, σ)`: rows are chosen from `l_n` down to `l_1`, each row exhausting
/// its own slot of the remaining budget; the result is deterministic.
pub fn enumerate_t(u: &WeightVector, sigma: &Perm, conv: TConvention) -> Result<Vec<TupleSequence>> {
    if !u.is_decreasing() {
        return Err(Error::precondition(format!("{u} is not decreasing")));
    }
    let n = u.len();
    if sigma.len() != n {
        return Err(Error::precondition("permutation size differs from weight length"));
    }
    let mut out = Vec::new();
    let mut rows: Vec<Vec<u32>> = vec![Vec::new(); n];
    let remaining = target(u, sigma, conv.sum);
    descend(n, remaining, &mut rows, &mut |rows| {
        let l = TupleSequence { rows: rows.to_vec() };
        if l.satisfies(u, sigma, conv) {
            out.push(l);
        }
    });
    Ok(out)
}

fn descend(j: usize, remaining: Vec<u32>, rows: &mut Vec<Vec<u32>>, emit: &mut impl FnMut(&[Vec<u32>])) {
    if j == 0 {
        emit(rows);
        return;
    }
    // row j takes all of slot j and any part of slots < j
    let mut row = vec![0u32; j];
    row[j - 1] = remaining[j - 1];
    loop {
        let mut next = remaining.clone();
        for (i, &x) in row.iter().enumerate() {
            next[i] -= x;
        }
        rows[j - 1] = row.clone();
        descend(j - 1, next, rows, emit);
        // odometer over entries 0..j-1, lexicographic
        let mut k = j - 1;
        loop {
            if k == 0 {
                rows[j - 1].clear();
                return;
            }
            k -= 1;
            if row[k] < remaining[k] {
                row[k] += 1;
                for x in row.iter_mut().take(j - 1).skip(k + 1) {
                    *x = 0;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(rows: &[&[u32]]) -> TupleSequence {
        TupleSequence::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn n2_examples() {
        let u = WeightVector(vec![1, 0]);
        let conv = TConvention::default();
        let id = enumerate_t(&u, &Perm::identity(2), conv).unwrap();
        let mut expected = vec![seq(&[&[1], &[0, 0]]), seq(&[&[0], &[1, 0]])];
        expected.sort();
        let mut got = id.clone();
        got.sort();
        assert_eq!(got, expected);
        let swap = enumerate_t(&u, &Perm::transposition(2, 0, 1), conv).unwrap();
        assert_eq!(swap, vec![seq(&[&[0], &[0, 1]])]);
    }

    #[test]
    fn zero_weight_has_one_tuple() {
        for sigma in Perm::all(3) {
            for conv in TConvention::ALL {
                let t = enumerate_t(&WeightVector::zeros(3), &sigma, conv).unwrap();
                assert_eq!(t, vec![seq(&[&[0], &[0, 0], &[0, 0, 0]])]);
            }
        }
    }

    #[test]
    fn rho_and_incidence() {
        let l = seq(&[&[0], &[1, 0], &[0, 1, 2]]);
        assert_eq!(l.rho(1), 0);
        assert_eq!(l.rho(2), 0);
        assert_eq!(l.rho(3), 2);
        assert_eq!(l.incidence(), SubsetTuple::new(&[&[1], &[1, 2], &[2, 3]]).unwrap());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(enumerate_t(&WeightVector(vec![0, 1]), &Perm::identity(2), TConvention::default()).is_err());
        assert!(TupleSequence::new(vec![vec![0, 0]]).is_err());
    }
}
