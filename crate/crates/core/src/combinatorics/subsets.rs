use std::collections::BTreeMap;
use std::fmt;

use crate::{Error, Result};

/// Ordered tuple `(I_1, …, I_h)` of nonempty subsets of `[1, n]`, each stored
/// as a bitmask with bit `i` standing for element `i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubsetTuple {
    sets: Vec<u64>,
}

fn mask_of(set: &[usize]) -> u64 {
    set.iter().fold(0, |m, &i| m | (1 << i))
}

pub(crate) fn elements(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask & (1 << i) != 0).collect()
}

impl SubsetTuple {
    pub fn new(sets: &[&[usize]]) -> Result<Self> {
        Self::from_masks(sets.iter().map(|s| mask_of(s)).collect())
    }

    pub fn from_masks(sets: Vec<u64>) -> Result<Self> {
        if sets.contains(&0) {
            return Err(Error::precondition("empty subset in tuple"));
        }
        if sets.iter().any(|&m| m & 1 != 0) {
            return Err(Error::precondition("subset elements are 1-based"));
        }
        Ok(SubsetTuple { sets })
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn masks(&self) -> &[u64] {
        &self.sets
    }

    pub fn sets(&self) -> Vec<Vec<usize>> {
        self.sets.iter().map(|&m| elements(m)).collect()
    }

    /// `S(𝓘) = ∪ I_j`.
    pub fn support(&self) -> Vec<usize> {
        elements(self.support_mask())
    }

    pub fn support_mask(&self) -> u64 {
        self.sets.iter().fold(0, |a, &m| a | m)
    }

    /// Components of the relation generated by `I_a ∩ I_b ≠ ∅`, each keeping
    /// the original order of its sets; components ordered by first set.
    pub fn connected_components(&self) -> Vec<SubsetTuple> {
        let h = self.sets.len();
        let mut label: Vec<usize> = (0..h).collect();
        fn find(label: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while label[r] != r {
                r = label[r];
            }
            label[x] = r;
            r
        }
        for a in 0..h {
            for b in a + 1..h {
                if self.sets[a] & self.sets[b] != 0 {
                    let (ra, rb) = (find(&mut label, a), find(&mut label, b));
                    if ra != rb {
                        label[ra.max(rb)] = ra.min(rb);
                    }
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<u64>> = BTreeMap::new();
        for a in 0..h {
            let r = find(&mut label, a);
            groups.entry(r).or_default().push(self.sets[a]);
        }
        groups.into_values().map(|sets| SubsetTuple { sets }).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// First Betti number of the incidence graph, `Σ|I_j| − h − |S| + 1`.
    pub fn betti_b1(&self) -> Result<i64> {
        if !self.is_connected() {
            return Err(Error::precondition("b1 of a disconnected tuple"));
        }
        let edges: i64 = self.sets.iter().map(|m| m.count_ones() as i64).sum();
        let vertices = self.sets.len() as i64 + self.support_mask().count_ones() as i64;
        Ok(edges - vertices + 1)
    }

    /// Components grouped by `b_1`.
    pub fn classify(&self) -> BTreeMap<i64, Vec<SubsetTuple>> {
        let mut out: BTreeMap<i64, Vec<SubsetTuple>> = BTreeMap::new();
        for c in self.connected_components() {
            let b = c.betti_b1().expect("components are connected");
            out.entry(b).or_default().push(c);
        }
        out
    }
}

impl fmt::Display for SubsetTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, s) in self.sets().iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            f.write_str("{")?;
            for (i, x) in s.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("}")?;
        }
        f.write_str(")")
    }
}
