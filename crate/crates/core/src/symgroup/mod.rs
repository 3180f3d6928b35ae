//! Symmetric groups: permutations, partitions, characters and interleavings.

pub mod interleaving;
pub mod partition;
pub mod permutation;

pub use interleaving::{interleavings, Interleaving};
pub use partition::{decompose_into_irreducibles, factorial, irreducible_character, partitions, Partition};
pub use permutation::{all_permutations, all_permutations_up_to, Permutation, DEFAULT_MAX_N};
