//! Simulator for quantum sketching protocols in the simultaneous message
//! passing model: approximate Hamming distance via sparse GF(2) sketches
//! and swap tests, graph vertex distance through hypercube scale
//! embeddings, l1 vector distance through unary encoding, and the
//! greater-than reduction used for the matching lower bound.

pub mod bits;
pub mod error;
pub mod fingerprint;
pub mod graph;
pub mod jl;
pub mod ladder;
pub mod reduction;
pub mod report;
pub mod seed;
pub mod sketch;
pub mod unary;

pub use bits::{hamming_distance, weight, BitString};
pub use error::{Error, Result};
pub use ladder::{build_schedule, run_ham_epsilon, LadderConfig, ProtocolResult};
