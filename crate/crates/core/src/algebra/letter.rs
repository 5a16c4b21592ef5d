use std::fmt;

/// Basis element of `H*(C)`: `1`, `α_k`, `β_k` (`1 ≤ k ≤ g`) or the point class.
///
/// The derived order (`Unit < Alpha < Beta < Point`, then by index) is the
/// letter order used for canonical serialization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CurveLetter {
    Unit,
    Alpha(u16),
    Beta(u16),
    Point,
}

impl CurveLetter {
    pub fn degree(self) -> u32 {
        match self {
            CurveLetter::Unit => 0,
            CurveLetter::Alpha(_) | CurveLetter::Beta(_) => 1,
            CurveLetter::Point => 2,
        }
    }

    pub fn is_odd(self) -> bool {
        self.degree() % 2 == 1
    }

    /// Product in `H*(C)`: `α_k β_k = pt = -β_k α_k`, all other products of
    /// positive-degree letters vanish. Returns the letter and whether the sign
    /// is negative.
    pub fn mul(self, other: CurveLetter) -> Option<(CurveLetter, bool)> {
        use CurveLetter::*;
        match (self, other) {
            (Unit, z) | (z, Unit) => Some((z, false)),
            (Alpha(i), Beta(j)) if i == j => Some((Point, false)),
            (Beta(i), Alpha(j)) if i == j => Some((Point, true)),
            _ => None,
        }
    }

    /// The basis of `H*(C)` in canonical order.
    pub fn basis(genus: u32) -> Vec<CurveLetter> {
        let g = genus as u16;
        let mut out = vec![CurveLetter::Unit];
        out.extend((1..=g).map(CurveLetter::Alpha));
        out.extend((1..=g).map(CurveLetter::Beta));
        out.push(CurveLetter::Point);
        out
    }

    pub(crate) fn index(self) -> Option<u16> {
        match self {
            CurveLetter::Alpha(k) | CurveLetter::Beta(k) => Some(k),
            _ => None,
        }
    }
}

impl fmt::Display for CurveLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveLetter::Unit => f.write_str("one"),
            CurveLetter::Alpha(k) => write!(f, "a{k}"),
            CurveLetter::Beta(k) => write!(f, "b{k}"),
            CurveLetter::Point => f.write_str("pt"),
        }
    }
}
