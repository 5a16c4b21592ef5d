//! Weight vectors, permutations, decompositions and the subset-tuple data
//! behind the combinatorial pullback formula.

mod decomposition;
mod perm;
mod subsets;
mod tuples;
mod weight;

pub use decomposition::{dec_of_weights, enumerate_b, enumerate_dec, weights_of_dec, Decomposition};
pub use perm::Perm;
pub use subsets::SubsetTuple;
pub use tuples::{enumerate_t, SumConvention, TConvention, TupleSequence, WindowConvention};
pub use weight::WeightVector;
