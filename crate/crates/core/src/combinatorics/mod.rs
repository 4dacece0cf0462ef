//! Weights, permutations, coset representatives and the multiset index
//! sets used to label every basis in the crate.

mod cosets;
mod perm;
mod tuples;
mod weights;

pub use cosets::{
    coset_rep_of_sequence, double_coset_rep, ldj_product, sequence_of, shortest_coset_reps, weight_pairs,
    split_right_coset, CosetData, Side,
};
pub use perm::Perm;
pub use tuples::{
    binomial, enumerate_matrix_tuples, enumerate_multisets, factorial, matrix_factorial_binomial,
    odd_inversion_parity, permute_word, MatrixShape, MatrixTuple, Monomial, Word,
};
pub use weights::{enumerate_colored_weights, enumerate_weights, ColoredWeight, MatrixWeight, Weight};
