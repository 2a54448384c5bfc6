//! Executable combinatorics of Schreier and Baernstein sequence spaces.
//!
//! The crate evaluates Schreier (`S_p`) and Baernstein (`B_p`) norms exactly
//! together with optimal witnesses, computes Schreier covering numbers and
//! truncated Gasparis-Leung indices, builds the explicit vectors and interval
//! partitions used in the theory, and checks the quantitative inequalities on
//! desk-scale instances.

pub mod constructions;
pub mod error;
pub mod gl_index;
pub mod harness;
pub mod interval;
pub mod norms;
pub mod scalar;
pub mod schreier;
pub mod vector;

pub use error::{Error, Result};
pub use gl_index::{IndexSet, TruncatedGlIndex};
pub use interval::IntervalSet;
pub use norms::{NormResult, Space, Witness};
pub use scalar::{Exponent, Mode, Rational, Scalar};
pub use schreier::{CoveringCertificate, SchreierChain, SchreierSet};
pub use vector::{BlockSequence, CoeffVector, Run};
