//! Generators for the explicit objects used by the verification suites.

pub mod family;
pub mod flat;
pub mod jameson;
pub mod mpb;
pub mod subsequence;

pub use family::{almost_disjoint_family, AlmostDisjointFamily, Branch};
pub use flat::{flat_bounds_power, flat_norm_power, flat_vector, flat_vector_powers};
pub use jameson::jameson_extremal;
pub use mpb::{lemma63_witness, l_set, mpb_partition, verify_corollary64, DivergenceWitness, MpbPartition};
pub use subsequence::{doubling_blocks, dominated_subsequence, DoublingGroup, DoublingOutput, Selection};
