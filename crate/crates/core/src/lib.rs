//! Succinct wavelet-tree indexes for integer sequences.
//!
//! The crate answers range quantile (and median), range counting, and
//! coloured range-reporting queries on a sequence of unsigned integers via a
//! levelwise balanced [`WaveletTree`], backed by rank-directory
//! [`BitVector`]s. On top of it, [`doclist`] builds a document-listing index
//! from a suffix array and a wavelet tree over the document array.
//!
//! The core is generic over the unsigned symbol type; concrete aliases
//! ([`WaveletTree8`] through [`WaveletTree64`]) are provided at the crate
//! root. The [`oracle`] module holds independent brute-force references used
//! by the test suites and the CLI's check mode.

use std::fmt;

use num_traits::{PrimInt, Unsigned};

pub mod bitvector;
pub mod doclist;
mod error;
pub mod io;
pub mod oracle;
pub mod suffix;
pub mod wavelet_tree;

pub use bitvector::{BitBuffer, BitVector};
pub use doclist::{DocIndex, SaInterval};
pub use error::{Error, Result};
pub use wavelet_tree::{AlphabetMap, DistinctItem, QuantileTraceStep, WaveletTree};

/// An unsigned integer usable as a wavelet-tree symbol.
pub trait Symbol:
    PrimInt + Unsigned + fmt::Debug + fmt::Display + Send + Sync + 'static
{
}

impl<T> Symbol for T where
    T: PrimInt + Unsigned + fmt::Debug + fmt::Display + Send + Sync + 'static
{
}

pub type WaveletTree8 = WaveletTree<u8>;
pub type WaveletTree16 = WaveletTree<u16>;
pub type WaveletTree32 = WaveletTree<u32>;
pub type WaveletTree64 = WaveletTree<u64>;
