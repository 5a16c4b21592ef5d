//! Exact arithmetic in the cohomology rings of complete filt schemes and quot
//! schemes of points on a smooth projective curve.
//!
//! The ambient ring is `H*(C^n; Q)[ω_1..ω_n][t_0..t_{r-1}]`, modelled as sparse
//! rational combinations of tensor monomials ([`algebra`]). On top of it sit the
//! torus fixed-point classes `ξ(v)` ([`xi`]), the pullback of quot-scheme
//! classes computed both by symmetrization and by a closed combinatorial
//! formula ([`quot`]), restriction to fixed points ([`restriction`]) and the
//! Poincaré series bookkeeping ([`poincare`]). [`verify`] bundles the identity
//! checks into named suites.

pub mod algebra;
pub mod combinatorics;
mod error;
pub mod linalg;
pub mod poincare;
pub mod quot;
pub mod restriction;
pub mod verify;
pub mod xi;

pub use algebra::{CurveLetter, Degree, Monomial, Rank, RingContext, RingElement};
pub use combinatorics::{Perm, SubsetTuple, TupleSequence, WeightVector};
pub use error::{Error, Result};
pub use xi::XiEngine;
