//! Rank/select/access over the run-head string.
//!
//! [`HeaderString`] is a balanced, pointerless wavelet tree: one plain
//! bitvector per level, level `l` holding bit `l` (most significant first) of
//! each symbol, with the nodes of a level concatenated left to right. A node
//! occupies the same interval on every level below it, so node boundaries are
//! recovered with two rank queries per level instead of being stored.

use crate::bitvec::PlainBitVector;
use crate::error::{Error, Result};
use crate::io::{put_u32, put_u64, Persist, Reader};

/// Query interface the run-length structure needs from its head string.
///
/// Conventions match the rest of the crate: rank is inclusive and 0 at -1,
/// select is 1-based with a -1 sentinel. Callers guarantee `c < sigma` and
/// in-range positions.
pub trait SymbolIndex {
    fn len(&self) -> usize;
    fn sigma(&self) -> u32;
    fn access(&self, i: usize) -> u32;
    fn rank(&self, c: u32, i: i64) -> usize;
    fn select(&self, c: u32, j: i64) -> i64;
    fn space_bits(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Number of wavelet levels for an alphabet of size `sigma`.
fn level_count(sigma: u32) -> usize {
    if sigma <= 1 {
        0
    } else {
        (32 - (sigma - 1).leading_zeros()) as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeaderString {
    len: usize,
    sigma: u32,
    levels: Vec<PlainBitVector>,
}

impl HeaderString {
    pub fn new(symbols: &[u32], sigma: u32) -> Result<Self> {
        if sigma == 0 {
            return Err(Error::invalid("alphabet size must be at least 1"));
        }
        if let Some(&bad) = symbols.iter().find(|&&c| c >= sigma) {
            return Err(Error::SymbolOutOfRange { symbol: bad as u64, sigma: sigma as u64 });
        }
        let depth = level_count(sigma);
        let mut levels = Vec::with_capacity(depth);
        let mut order = symbols.to_vec();
        for level in 0..depth {
            let shift = depth - 1 - level;
            levels.push(order.iter().map(|&c| (c >> shift) & 1 == 1).collect());
            // Stable sort on the prefix so far places children under parents.
            order.sort_by_key(|&c| c >> shift);
        }
        Ok(HeaderString { len: symbols.len(), sigma, levels })
    }

    /// Builds from run heads, additionally requiring adjacent symbols to differ.
    pub fn from_run_heads(heads: &[u32], sigma: u32) -> Result<Self> {
        if let Some(i) = heads.windows(2).position(|w| w[0] == w[1]) {
            return Err(Error::invalid(format!(
                "run heads {i} and {} are equal",
                i + 1
            )));
        }
        Self::new(heads, sigma)
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[PlainBitVector] {
        &self.levels
    }

    pub fn try_access(&self, i: usize) -> Result<u32> {
        if i >= self.len {
            return Err(Error::OutOfRange { index: i as i64, len: self.len });
        }
        Ok(self.access(i))
    }

    pub fn try_rank(&self, c: u32, i: i64) -> Result<usize> {
        self.check_symbol(c)?;
        if i < -1 || i >= self.len as i64 {
            return Err(Error::OutOfRange { index: i, len: self.len });
        }
        Ok(self.rank(c, i))
    }

    pub fn try_select(&self, c: u32, j: i64) -> Result<i64> {
        self.check_symbol(c)?;
        Ok(self.select(c, j))
    }

    fn check_symbol(&self, c: u32) -> Result<()> {
        if c >= self.sigma {
            return Err(Error::SymbolOutOfRange { symbol: c as u64, sigma: self.sigma as u64 });
        }
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.len).map(move |i| self.access(i))
    }

    /// Zeros inside the node interval `start..end` of `bv`.
    #[inline]
    fn node_zeros(bv: &PlainBitVector, start: usize, end: usize) -> usize {
        (end - start) - (bv.rank1(end as i64 - 1) - bv.rank1(start as i64 - 1))
    }
}

impl SymbolIndex for HeaderString {
    fn len(&self) -> usize {
        self.len
    }

    fn sigma(&self) -> u32 {
        self.sigma
    }

    fn access(&self, i: usize) -> u32 {
        assert!(i < self.len, "access position {i} out of range for length {}", self.len);
        let (mut start, mut end, mut pos) = (0usize, self.len, i);
        let mut symbol = 0u32;
        for bv in &self.levels {
            let ones_before = bv.rank1(start as i64 - 1);
            let ones_in = bv.rank1(end as i64 - 1) - ones_before;
            let zeros_in = (end - start) - ones_in;
            let ones_upto = bv.rank1(pos as i64) - ones_before;
            symbol <<= 1;
            if bv.get(pos) {
                symbol |= 1;
                pos = start + zeros_in + ones_upto - 1;
                start += zeros_in;
            } else {
                pos = start + (pos - start + 1 - ones_upto) - 1;
                end = start + zeros_in;
            }
        }
        symbol
    }

    fn rank(&self, c: u32, i: i64) -> usize {
        debug_assert!(c < self.sigma && i >= -1 && i < self.len as i64);
        let depth = self.levels.len();
        let (mut start, mut end) = (0usize, self.len);
        let mut prefix = (i + 1) as usize;
        for (level, bv) in self.levels.iter().enumerate() {
            if prefix == 0 {
                return 0;
            }
            let ones_before = bv.rank1(start as i64 - 1);
            let ones_in = bv.rank1(end as i64 - 1) - ones_before;
            let ones_prefix = bv.rank1((start + prefix) as i64 - 1) - ones_before;
            let zeros_in = (end - start) - ones_in;
            if (c >> (depth - 1 - level)) & 1 == 1 {
                prefix = ones_prefix;
                start += zeros_in;
            } else {
                prefix -= ones_prefix;
                end = start + zeros_in;
            }
        }
        prefix
    }

    fn select(&self, c: u32, j: i64) -> i64 {
        debug_assert!(c < self.sigma);
        if j < 1 || j as u64 > self.len as u64 {
            return -1;
        }
        let depth = self.levels.len();
        let mut starts = [0usize; 33];
        let (mut start, mut end) = (0usize, self.len);
        for (level, bv) in self.levels.iter().enumerate() {
            starts[level] = start;
            let zeros_in = Self::node_zeros(bv, start, end);
            if (c >> (depth - 1 - level)) & 1 == 1 {
                start += zeros_in;
            } else {
                end = start + zeros_in;
            }
            if start == end {
                return -1;
            }
        }
        if j as usize > end - start {
            return -1;
        }
        let mut pos = start + j as usize - 1;
        let mut child_start = start;
        for level in (0..depth).rev() {
            let bv = &self.levels[level];
            let node_start = starts[level];
            let bit = (c >> (depth - 1 - level)) & 1 == 1;
            let before = bv.rank(bit, node_start as i64 - 1).expect("node start in range");
            let target = before + (pos - child_start) + 1;
            pos = bv.select(bit, target as i64) as usize;
            child_start = node_start;
        }
        pos as i64
    }

    fn space_bits(&self) -> usize {
        self.levels.iter().map(PlainBitVector::space_bits).sum()
    }
}

impl Persist for HeaderString {
    fn write_to(&self, out: &mut Vec<u8>) {
        put_u32(out, self.sigma);
        put_u64(out, self.len as u64);
        for bv in &self.levels {
            bv.write_to(out);
        }
    }

    fn read_from(input: &mut Reader<'_>) -> Result<Self> {
        let sigma = input.u32()?;
        let len = input.len_field()?;
        if sigma == 0 {
            return Err(Error::format("header string with empty alphabet"));
        }
        let depth = level_count(sigma);
        let mut levels = Vec::with_capacity(depth);
        for _ in 0..depth {
            let bv = PlainBitVector::read_from(input)?;
            if bv.len() != len {
                return Err(Error::format("wavelet level length mismatch"));
            }
            levels.push(bv);
        }
        let h = HeaderString { len, sigma, levels };
        if let Some(i) = (0..len).find(|&i| h.access(i) >= sigma) {
            return Err(Error::format(format!("header symbol at {i} exceeds alphabet")));
        }
        Ok(h)
    }
}
