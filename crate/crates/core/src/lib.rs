//! Exact, desk-scale information distance of multisets.
//!
//! * [`multiset`]: canonical multisets of bit strings and their
//!   self-delimiting encoding.
//! * [`machine`]: a prefix-free toy machine with exhaustive searches for
//!   halting sets, conditional complexity and information distance.
//! * [`labeling`]: the bipartite multiset/element graph, greedy edge
//!   labeling, verification, resolution and a brute-force minimum.
//! * [`codec`]: bit-exact label encoders in the reversed-index layout and a
//!   fixed-width canonical layout.
//! * [`estimator`]: compression-based distance and mutual information
//!   estimates, plus the XOR overlap construction.

pub mod bits;
pub mod codec;
pub mod error;
pub mod estimator;
pub mod gamma;
pub mod labeling;
pub mod machine;
pub mod multiset;

pub use bits::BitString;
pub use error::{Error, Result};
pub use multiset::{canonicalize, decode_multiset, encode_multiset, StringMultiset};
