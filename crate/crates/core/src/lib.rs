//! Fixed-width entry compression.
//!
//! An entry is a pair of elements drawn independently from two known
//! distributions. It is stored by concatenating a codeword for each field
//! and zero-padding the result to a memory word of `L` bits; entries whose
//! codewords do not fit are reported as failures and would go to slower
//! overflow storage. This crate designs codes that maximize the probability
//! of success and provides the matching encoder and decoder.
//!
//! * [`distribution`]: validated element and entry distributions.
//! * [`codebook`]: codewords, length vectors and code construction.
//! * [`codec`]: the bit-exact encoder and decoder for a two-code scheme.
//! * [`opt_pair`]: optimal schemes with a different code per field.
//! * [`opt_shared`]: optimal single codes shared by both fields.
//! * [`baseline`]: Huffman and naive fixed-length comparators.
//! * [`oracle`]: exhaustive enumeration for small instances.
//! * [`sweep`]: parameter sweeps over Zipf distributions.
//! * [`cli`]: the command-line front end.

pub mod baseline;
pub mod cli;
pub mod codebook;
pub mod codec;
pub mod distribution;
pub mod error;
pub mod opt_pair;
pub mod opt_shared;
pub mod oracle;
pub mod sweep;

pub use codebook::{CodeKind, Codebook, Codeword, LengthVector};
pub use codec::{success_probability, EncodedWord, EntryScheme, SchemeDoc};
pub use distribution::{ElementDistribution, EntryDistribution};
pub use error::{Error, Result};
pub use opt_pair::{optimal_pair_scheme, PairSolution};
pub use opt_shared::{optimal_shared_code, SharedSolution};
