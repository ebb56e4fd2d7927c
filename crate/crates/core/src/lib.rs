//! Run-length compressed rank/select for strings over large alphabets.
//!
//! The main structure is [`RunLengthString`]: it stores a string with `r` runs
//! in space proportional to `r log(n sigma / r)` and answers `access`,
//! `rank_c` and `select_c`. The building blocks are a plain rank/select
//! bitvector ([`PlainBitVector`]), a sampled Elias–Fano sparse bitvector
//! ([`EliasFanoBitVector`]), a wavelet tree over run heads ([`HeaderString`])
//! and a sorted predecessor index ([`PredecessorIndex`]).
//!
//! [`BcgprIndex`] is a simpler per-letter binary-search baseline and
//! [`NaiveSequence`] a plain-array reference; all three implement
//! [`RankSelect`].
//!
//! Conventions: `rank_c(i)` counts occurrences in positions `0..=i`;
//! `select_c(j)` is 1-based and returns -1 when `j < 1` or fewer than `j`
//! occurrences exist.

pub mod bcgpr;
pub mod bitvec;
pub mod container;
pub mod elias_fano;
pub mod error;
pub mod harness;
pub mod header;
pub mod io;
pub mod oracle;
pub mod packed;
pub mod predecessor;
pub mod rle;
pub mod workload;

pub use bcgpr::BcgprIndex;
pub use bitvec::PlainBitVector;
pub use container::{AnyIndex, SequenceFile, SpaceReport, StructureKind};
pub use elias_fano::EliasFanoBitVector;
pub use error::{Error, Result};
pub use header::{HeaderString, SymbolIndex};
pub use io::Persist;
pub use oracle::NaiveSequence;
pub use packed::PackedIntArray;
pub use predecessor::PredecessorIndex;
pub use rle::RunLengthString;
pub use workload::Query;

/// Access, rank and select over a string on the alphabet `[0..sigma)`.
///
/// Positions outside `0..len` and symbols `>= sigma` are rejected with an
/// error. `select` takes any `j` and answers -1 when there is no `j`-th
/// occurrence.
pub trait RankSelect {
    fn len(&self) -> usize;
    fn sigma(&self) -> u32;
    fn access(&self, i: usize) -> Result<u32>;
    fn rank(&self, c: u32, i: usize) -> Result<usize>;
    fn select(&self, c: u32, j: i64) -> Result<i64>;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Answers a parsed workload query as a single integer.
    fn answer(&self, query: &Query) -> Result<i64> {
        match *query {
            Query::Access(i) => self.access(i).map(i64::from),
            Query::Rank(c, i) => self.rank(c, i).map(|r| r as i64),
            Query::Select(c, j) => self.select(c, j),
        }
    }
}
