//! Brute-force enumeration of roots of unity `ζ` with `f(ζ)` a root of unity,
//! and the pigeonhole decomposition of pairs of roots of unity.

mod char0;
mod charp;
mod decompose;

pub use char0::{enumerate_char0, evaluate_char0, Char0Record, DEFAULT_PHI_CEILING};
pub use charp::{enumerate_charp, CharpRecord};
pub use decompose::{
    check_decomposition, decompose_pair, verify_decomposition_exhaustive, DecompositionReport,
    RouDecomposition,
};
