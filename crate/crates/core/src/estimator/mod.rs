//! Compression-based stand-ins for the incomputable quantities.
//!
//! A real compressor's output size `C(x)` upper-bounds `K(x)` up to the
//! decompressor's constant, so differences of compressed sizes approximate
//! conditional and mutual information. Concatenations `xy` always use the
//! canonical (length, then bytes) order so every pairwise value is exactly
//! symmetric.

pub mod compressor;
pub mod matrix;
pub mod ncd;
pub mod overlap;

pub use compressor::{Compressor, Deflate};
pub use matrix::{distance_matrix, DistanceMatrix, Distances, LeaveOneOut, Mode};
pub use ncd::{mutual_information_est, ncd_multiset, ncd_pair, NcdReport};
pub use overlap::{xor_overlap, XorOverlap};
