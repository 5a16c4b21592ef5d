//! Exact rank computations by fraction-free elimination on sparse integer
//! rows.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::{Monomial, RingElement};

type Row = BTreeMap<usize, BigInt>;

/// Incremental row echelon form over `Z`, rows normalized by their content.
#[derive(Default, Debug, Clone)]
pub struct RankAccumulator {
    pivots: BTreeMap<usize, Row>,
}

impl RankAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Adds a row; returns whether it enlarged the span.
    pub fn insert(&mut self, mut row: Row) -> bool {
        row.retain(|_, c| !c.is_zero());
        loop {
            let Some((&lead, lead_coeff)) = row.iter().next() else {
                return false;
            };
            let Some(pivot) = self.pivots.get(&lead) else {
                normalize(&mut row);
                self.pivots.insert(lead, row);
                return true;
            };
            // row ← p·row − c·pivot kills the leading entry
            let p = &pivot[&lead];
            let g = p.gcd(lead_coeff);
            let (a, b) = (p / &g, lead_coeff / &g);
            let mut next: Row = BTreeMap::new();
            for (&k, c) in &row {
                next.insert(k, c * &a);
            }
            for (&k, c) in pivot {
                let e = next.entry(k).or_insert_with(BigInt::zero);
                *e -= c * &b;
            }
            next.retain(|_, c| !c.is_zero());
            normalize(&mut next);
            row = next;
        }
    }
}

fn normalize(row: &mut Row) {
    let mut g = BigInt::zero();
    for c in row.values() {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    if g.is_zero() {
        return;
    }
    let flip = row.values().next().is_some_and(|c| c.is_negative());
    for c in row.values_mut() {
        *c = &*c / &g;
        if flip {
            *c = -&*c;
        }
    }
}

/// Assigns dense column indices to monomials on first sight.
#[derive(Default, Debug)]
pub struct MonomialIndex {
    index: HashMap<Monomial, usize>,
}

impl MonomialIndex {
    pub fn new() -> Self {
        Self::default()
    }

    /// Integer row proportional to `x` (denominators cleared).
    pub fn row(&mut self, x: &RingElement) -> Row {
        let mut lcm = BigInt::one();
        for (_, c) in x.terms() {
            lcm = lcm.lcm(c.denom());
        }
        let mut row = Row::new();
        for (m, c) in x.terms() {
            let next = self.index.len();
            let k = *self.index.entry(m.clone()).or_insert(next);
            row.insert(k, c.numer() * (&lcm / c.denom()));
        }
        row
    }
}

/// Rank over `Q` of a family of elements.
pub fn rank_of<'a>(elements: impl IntoIterator<Item = &'a RingElement>) -> usize {
    let mut index = MonomialIndex::new();
    let mut acc = RankAccumulator::new();
    for x in elements {
        acc.insert(index.row(x));
    }
    acc.rank()
}

/// Keeps a maximal independent subfamily, in input order.
pub fn independent_subset(elements: Vec<RingElement>) -> Vec<RingElement> {
    let mut index = MonomialIndex::new();
    let mut acc = RankAccumulator::new();
    elements
        .into_iter()
        .filter(|x| acc.insert(index.row(x)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(entries: &[(usize, i64)]) -> Row {
        entries.iter().map(|&(k, c)| (k, BigInt::from(c))).collect()
    }

    #[test]
    fn small_ranks() {
        let mut acc = RankAccumulator::new();
        assert!(acc.insert(row(&[(0, 2), (1, 4)])));
        assert!(!acc.insert(row(&[(0, -1), (1, -2)])));
        assert!(acc.insert(row(&[(0, 3), (2, 1)])));
        assert!(!acc.insert(row(&[(1, 6), (2, -1), (0, 0)])));
        assert!(!acc.insert(row(&[])));
        assert_eq!(acc.rank(), 2);
    }

    #[test]
    fn vandermonde_is_full_rank() {
        let mut acc = RankAccumulator::new();
        for x in 1..=6i64 {
            let r: Row = (0..6).map(|k| (k, BigInt::from(x.pow(k as u32)))).collect();
            assert!(acc.insert(r));
        }
        assert_eq!(acc.rank(), 6);
    }
}
