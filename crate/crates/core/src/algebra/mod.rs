//! Graded-commutative arithmetic in `H*(C^n) ⊗ Q[ω] ⊗ Q[t]`.

mod context;
mod element;
mod letter;
mod monomial;
mod text;

pub use context::{Rank, RingContext};
pub use element::{Degree, RingElement};
pub use letter::CurveLetter;
pub use monomial::Monomial;
pub use text::parse;

/// Exact coefficient type.
pub type Coeff = num_rational::BigRational;
