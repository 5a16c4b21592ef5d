use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::Perm;
use crate::{Error, Result};

/// Element of `Z_{≥0}^n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector(pub Vec<u32>);

impl WeightVector {
    pub fn zeros(n: usize) -> Self {
        WeightVector(vec![0; n])
    }

    /// `l · e_i` (1-based `i`) in length `n`.
    pub fn unit(n: usize, i: usize, l: u32) -> Self {
        let mut v = vec![0; n];
        v[i - 1] = l;
        WeightVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// `co(v) = Σ v_i`.
    pub fn co(&self) -> u32 {
        self.0.iter().sum()
    }

    /// 1-based indices of nonzero entries.
    pub fn support(&self) -> Vec<usize> {
        (1..=self.len()).filter(|&i| self.0[i - 1] != 0).collect()
    }

    /// 1-based index of the last nonzero entry.
    pub fn last_nonzero(&self) -> Option<usize> {
        self.0.iter().rposition(|&x| x != 0).map(|p| p + 1)
    }

    /// Descending reordering.
    pub fn nor(&self) -> Self {
        let mut v = self.0.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        WeightVector(v)
    }

    pub fn is_decreasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    /// `|St(v)| = Π (multiplicity)!`.
    pub fn stabilizer_order(&self) -> u64 {
        let mut sorted = self.0.clone();
        sorted.sort_unstable();
        let mut order = 1u64;
        let mut run = 0u64;
        for (i, x) in sorted.iter().enumerate() {
            run = if i > 0 && sorted[i - 1] == *x { run + 1 } else { 1 };
            order *= run;
        }
        order
    }

    /// Componentwise `≤`.
    pub fn leq0(&self, other: &WeightVector) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `σ·v` with `(σv)_{σ(p)} = v_p`.
    pub fn permuted(&self, sigma: &Perm) -> Self {
        WeightVector(sigma.apply(&self.0))
    }

    /// `τ_{i,j} v`, 1-based.
    pub fn swapped(&self, i: usize, j: usize) -> Self {
        let mut v = self.0.clone();
        v.swap(i - 1, j - 1);
        WeightVector(v)
    }

    pub fn plus_unit(&self, i: usize, by: i64) -> Option<Self> {
        let mut v = self.0.clone();
        let x = v[i - 1] as i64 + by;
        if x < 0 {
            return None;
        }
        v[i - 1] = x as u32;
        Some(WeightVector(v))
    }

    /// All vectors in `[0, bound)^n` (lexicographic).
    pub fn all_below(n: usize, bound: u32) -> Vec<WeightVector> {
        let mut out = vec![Vec::new()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|v: Vec<u32>| {
                    (0..bound).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        out.into_iter().map(WeightVector).collect()
    }

    /// All vectors of length `n` with `co ≤ max_co` (lexicographic).
    pub fn all_with_co(n: usize, max_co: u32) -> Vec<WeightVector> {
        Self::all_below(n, max_co + 1)
            .into_iter()
            .filter(|v| v.co() <= max_co)
            .collect()
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for WeightVector {
    type Err = Error;

    /// Comma-separated entries, optionally parenthesized.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if body.is_empty() {
            return Ok(WeightVector(Vec::new()));
        }
        body.split(',')
            .map(|x| {
                x.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::precondition(format!("bad weight entry `{}`", x.trim())))
            })
            .collect::<Result<Vec<_>>>()
            .map(WeightVector)
    }
}

impl From<Vec<u32>> for WeightVector {
    fn from(v: Vec<u32>) -> Self {
        WeightVector(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[u32]) -> WeightVector {
        WeightVector(v.to_vec())
    }

    #[test]
    fn basic_statistics() {
        assert_eq!(w(&[0, 2, 1]).nor(), w(&[2, 1, 0]));
        assert_eq!(w(&[1, 1, 0]).stabilizer_order(), 2);
        assert_eq!(w(&[0, 0, 0]).stabilizer_order(), 6);
        assert_eq!(w(&[2, 1, 2, 1]).stabilizer_order(), 4);
        assert!(w(&[1, 0]).leq0(&w(&[1, 2])));
        assert!(!w(&[2, 0]).leq0(&w(&[1, 2])));
        assert_eq!(w(&[0, 3, 1]).co(), 4);
        assert_eq!(w(&[0, 3, 1]).support(), vec![2, 3]);
        assert_eq!(w(&[0, 3, 0]).last_nonzero(), Some(2));
    }

    #[test]
    fn parse_and_display() {
        let v: WeightVector = "0,2".parse().unwrap();
        assert_eq!(v, w(&[0, 2]));
        assert_eq!(v.to_string(), "(0,2)");
        assert_eq!("(1, 0)".parse::<WeightVector>().unwrap(), w(&[1, 0]));
        assert!("1,x".parse::<WeightVector>().is_err());
    }

    #[test]
    fn stabilizer_order_matches_group() {
        for v in WeightVector::all_below(4, 3) {
            assert_eq!(Perm::stabilizer(v.entries()).len() as u64, v.stabilizer_order(), "{v}");
        }
    }
}
