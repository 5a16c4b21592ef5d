use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::{Error, Result};

/// Number of torus parameters `t_0..t_{r-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rank {
    /// `Finite(0)` is the non-equivariant setting.
    Finite(u32),
    /// t-variables are indexed on demand and weight entries are unrestricted.
    Unbounded,
}

impl Rank {
    pub fn is_equivariant(self) -> bool {
        self != Rank::Finite(0)
    }

    /// Largest admissible weight entry plus one, if bounded.
    pub fn bound(self) -> Option<u32> {
        match self {
            Rank::Finite(0) | Rank::Unbounded => None,
            Rank::Finite(r) => Some(r),
        }
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rank::Finite(r) => write!(f, "{r}"),
            Rank::Unbounded => f.write_str("inf"),
        }
    }
}

impl FromStr for Rank {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "unbounded" => Ok(Rank::Unbounded),
            other => other
                .parse::<u32>()
                .map(Rank::Finite)
                .map_err(|_| Error::InvalidContext(format!("bad rank `{other}`"))),
        }
    }
}

/// Global parameters shared by every element of a ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingContext {
    genus: u32,
    factors: usize,
    rank: Rank,
    degrees: Vec<i64>,
}

impl RingContext {
    /// Non-equivariant context with trivial line bundles.
    pub fn new(genus: u32, factors: usize) -> Arc<Self> {
        Arc::new(RingContext {
            genus,
            factors,
            rank: Rank::Finite(0),
            degrees: Vec::new(),
        })
    }

    /// Full constructor. For a finite rank the degree list must be empty (all
    /// zero) or have exactly `rank` entries; an unbounded rank accepts any
    /// prefix, later degrees being zero.
    pub fn with(genus: u32, factors: usize, rank: Rank, degrees: Vec<i64>) -> Result<Arc<Self>> {
        let degrees = match rank {
            Rank::Finite(0) if !degrees.is_empty() => {
                return Err(Error::InvalidContext(
                    "line-bundle degrees need a positive rank".into(),
                ))
            }
            Rank::Finite(r) if degrees.is_empty() => vec![0; r as usize],
            Rank::Finite(r) if degrees.len() != r as usize => {
                return Err(Error::InvalidContext(format!(
                    "expected {r} degrees, got {}",
                    degrees.len()
                )))
            }
            _ => degrees,
        };
        Ok(Arc::new(RingContext {
            genus,
            factors,
            rank,
            degrees,
        }))
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn factors(&self) -> usize {
        self.factors
    }

    pub fn rank(&self) -> Rank {
        self.rank
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    /// `deg L_α`; zero past the configured list.
    pub fn degree_of(&self, alpha: u32) -> i64 {
        self.degrees.get(alpha as usize).copied().unwrap_or(0)
    }

    pub fn has_trivial_degrees(&self) -> bool {
        self.degrees.iter().all(|&d| d == 0)
    }

    /// Same parameters with a different number of factors.
    pub fn with_factors(&self, factors: usize) -> Arc<Self> {
        Arc::new(RingContext {
            factors,
            ..self.clone()
        })
    }

    /// Same parameters with the t-variables switched off.
    pub fn non_equivariant(&self) -> Arc<Self> {
        Arc::new(RingContext {
            rank: Rank::Finite(0),
            degrees: Vec::new(),
            ..self.clone()
        })
    }

    /// `b_1 = dim H^1(C)`.
    pub fn b1(&self) -> u32 {
        2 * self.genus
    }

    pub(crate) fn check_factor(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.factors {
            Err(Error::IndexOutOfRange {
                index: i,
                max: self.factors,
            })
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_t_index(&self, alpha: u32) -> Result<()> {
        match self.rank {
            Rank::Finite(0) => Err(Error::NotEquivariant),
            Rank::Finite(r) if alpha >= r => Err(Error::WeightOutOfRange { entry: alpha, rank: r }),
            _ => Ok(()),
        }
    }

    /// Checks weight entries against a bounded rank.
    pub fn check_weight(&self, v: &[u32]) -> Result<()> {
        if v.len() != self.factors {
            return Err(Error::precondition(format!(
                "weight of length {} in a context with {} factors",
                v.len(),
                self.factors
            )));
        }
        if let Some(r) = self.rank.bound() {
            if let Some(&entry) = v.iter().find(|&&x| x >= r) {
                return Err(Error::WeightOutOfRange { entry, rank: r });
            }
        }
        Ok(())
    }
}
