//! Plain bitvector with a two-level rank directory and sampled select hints.
//!
//! Bit `i` lives in bit `i % 64` of word `i / 64`. The rank directory stores an
//! absolute 64-bit count per 2048-bit superblock and a 16-bit count relative to
//! the superblock for each 256-bit block, so a rank query touches one directory
//! entry of each kind plus at most four payload words.
//!
//! Select starts from the superblock recorded for every 2^13-th one (or zero),
//! binary-searches superblocks up to the next hint, then scans blocks and words.
//!
//! Conventions used across the crate: `rank(i)` counts positions `0..=i` and is
//! 0 at `i = -1`; `select(j)` is 1-based and returns -1 when `j < 1` or fewer
//! than `j` matching bits exist.

use crate::error::{Error, Result};
use crate::io::{put_u64, put_words, Persist, Reader};

const WORD_BITS: usize = 64;
const BLOCK_WORDS: usize = 4;
const BLOCK_BITS: usize = BLOCK_WORDS * WORD_BITS;
const SUPERBLOCK_BLOCKS: usize = 8;
const SUPERBLOCK_WORDS: usize = BLOCK_WORDS * SUPERBLOCK_BLOCKS;
const SUPERBLOCK_BITS: usize = SUPERBLOCK_WORDS * WORD_BITS;
const SELECT_SAMPLE: usize = 1 << 13;

/// Position (0..64) of the `k`-th set bit of `word`, counting from 0.
#[inline]
pub(crate) fn select_in_word(mut word: u64, mut k: u32) -> u32 {
    debug_assert!(k < word.count_ones());
    let mut shift = 0;
    loop {
        let c = (word & 0xff).count_ones();
        if k < c {
            break;
        }
        k -= c;
        word >>= 8;
        shift += 8;
    }
    for _ in 0..k {
        word &= word - 1;
    }
    shift + word.trailing_zeros()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlainBitVector {
    len: usize,
    ones: usize,
    words: Vec<u64>,
    superblocks: Vec<u64>,
    blocks: Vec<u16>,
    select1_hints: Vec<u32>,
    select0_hints: Vec<u32>,
}

impl Default for PlainBitVector {
    fn default() -> Self {
        Self::from_words(Vec::new(), 0)
    }
}

impl FromIterator<bool> for PlainBitVector {
    fn from_iter<T: IntoIterator<Item = bool>>(iter: T) -> Self {
        let mut words = Vec::new();
        let mut len = 0;
        for bit in iter {
            if len % WORD_BITS == 0 {
                words.push(0);
            }
            if bit {
                *words.last_mut().unwrap() |= 1 << (len % WORD_BITS);
            }
            len += 1;
        }
        Self::from_words(words, len)
    }
}

impl PlainBitVector {
    /// Builds from packed words. Bits at positions `>= len` are cleared.
    pub fn from_words(mut words: Vec<u64>, len: usize) -> Self {
        words.resize(len.div_ceil(WORD_BITS), 0);
        if !len.is_multiple_of(WORD_BITS) {
            *words.last_mut().unwrap() &= (1u64 << (len % WORD_BITS)) - 1;
        }
        let mut bv = PlainBitVector {
            len,
            ones: 0,
            words,
            superblocks: Vec::new(),
            blocks: Vec::new(),
            select1_hints: Vec::new(),
            select0_hints: Vec::new(),
        };
        bv.build_directory();
        bv
    }

    /// Builds a vector of length `len` with ones exactly at `positions`.
    pub fn from_ones(positions: impl IntoIterator<Item = usize>, len: usize) -> Result<Self> {
        let mut words = vec![0u64; len.div_ceil(WORD_BITS)];
        for p in positions {
            if p >= len {
                return Err(Error::OutOfRange { index: p as i64, len });
            }
            words[p / WORD_BITS] |= 1 << (p % WORD_BITS);
        }
        Ok(Self::from_words(words, len))
    }

    /// Parses a string of `0`/`1` characters.
    pub fn parse(bits: &str) -> Result<Self> {
        bits.chars()
            .map(|ch| match ch {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::invalid(format!("unexpected bit character {other:?}"))),
            })
            .collect()
    }

    fn build_directory(&mut self) {
        let n_words = self.words.len();
        let n_blocks = n_words.div_ceil(BLOCK_WORDS);
        let n_super = n_words.div_ceil(SUPERBLOCK_WORDS);
        self.superblocks = Vec::with_capacity(n_super);
        self.blocks = Vec::with_capacity(n_blocks);
        self.select1_hints.clear();
        self.select0_hints.clear();

        let mut total = 0usize;
        for sb in 0..n_super {
            self.superblocks.push(total as u64);
            let sb_ones_before = total;
            let first_block = sb * SUPERBLOCK_BLOCKS;
            let last_block = (first_block + SUPERBLOCK_BLOCKS).min(n_blocks);
            for blk in first_block..last_block {
                self.blocks.push((total - sb_ones_before) as u16);
                let w0 = blk * BLOCK_WORDS;
                let w1 = (w0 + BLOCK_WORDS).min(n_words);
                total += self.words[w0..w1]
                    .iter()
                    .map(|w| w.count_ones() as usize)
                    .sum::<usize>();
            }
            // Hints record the superblock holding ones/zeros number m * 2^13 + 1.
            let sb_end = ((sb + 1) * SUPERBLOCK_BITS).min(self.len);
            let zeros_through = sb_end - total;
            while self.select1_hints.len() * SELECT_SAMPLE < total {
                self.select1_hints.push(sb as u32);
            }
            while self.select0_hints.len() * SELECT_SAMPLE < zeros_through {
                self.select0_hints.push(sb as u32);
            }
        }
        self.ones = total;
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn count_ones(&self) -> usize {
        self.ones
    }

    pub fn count_zeros(&self) -> usize {
        self.len - self.ones
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1)
    }

    /// Number of ones in positions `0..p` for `p <= len`.
    #[inline]
    fn rank_exclusive(&self, p: usize) -> usize {
        debug_assert!(p <= self.len);
        if p == self.len {
            return self.ones;
        }
        let blk = p / BLOCK_BITS;
        let mut r = self.superblocks[p / SUPERBLOCK_BITS] as usize + self.blocks[blk] as usize;
        let word = p / WORD_BITS;
        for w in &self.words[blk * BLOCK_WORDS..word] {
            r += w.count_ones() as usize;
        }
        let bit = p % WORD_BITS;
        if bit != 0 {
            r += (self.words[word] & ((1u64 << bit) - 1)).count_ones() as usize;
        }
        r
    }

    /// Inclusive rank of ones; `i = -1` yields 0.
    ///
    /// Panics if `i < -1` or `i >= len`.
    #[inline]
    pub fn rank1(&self, i: i64) -> usize {
        assert!(
            i >= -1 && i < self.len as i64,
            "rank position {i} out of range for length {}",
            self.len
        );
        self.rank_exclusive((i + 1) as usize)
    }

    #[inline]
    pub fn rank0(&self, i: i64) -> usize {
        (i + 1) as usize - self.rank1(i)
    }

    /// Checked inclusive rank for either bit value.
    pub fn rank(&self, bit: bool, i: i64) -> Result<usize> {
        if i < -1 || i >= self.len as i64 {
            return Err(Error::OutOfRange { index: i, len: self.len });
        }
        Ok(if bit { self.rank1(i) } else { self.rank0(i) })
    }

    pub fn select(&self, bit: bool, j: i64) -> i64 {
        if bit {
            self.select1(j)
        } else {
            self.select0(j)
        }
    }

    /// Position of the `j`-th one, or -1.
    pub fn select1(&self, j: i64) -> i64 {
        if j < 1 || j as u64 > self.ones as u64 {
            return -1;
        }
        let j = j as usize;
        let hint = (j - 1) / SELECT_SAMPLE;
        let mut lo = self.select1_hints[hint] as usize;
        let mut hi = match self.select1_hints.get(hint + 1) {
            Some(&h) => h as usize,
            None => self.superblocks.len() - 1,
        };
        // Last superblock with fewer than j ones before it.
        while lo < hi {
            let mid = (lo + hi).div_ceil(2);
            if (self.superblocks[mid] as usize) < j {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        let sb = lo;
        let mut rem = j - self.superblocks[sb] as usize;
        let first_block = sb * SUPERBLOCK_BLOCKS;
        let last_block = (first_block + SUPERBLOCK_BLOCKS).min(self.blocks.len());
        let mut blk = first_block;
        while blk + 1 < last_block && (self.blocks[blk + 1] as usize) < rem {
            blk += 1;
        }
        rem -= self.blocks[blk] as usize;
        let mut w = blk * BLOCK_WORDS;
        loop {
            let c = self.words[w].count_ones() as usize;
            if rem <= c {
                break;
            }
            rem -= c;
            w += 1;
        }
        (w * WORD_BITS + select_in_word(self.words[w], rem as u32 - 1) as usize) as i64
    }

    /// Position of the `j`-th zero, or -1.
    pub fn select0(&self, j: i64) -> i64 {
        let zeros = self.len - self.ones;
        if j < 1 || j as u64 > zeros as u64 {
            return -1;
        }
        let j = j as usize;
        let zeros_before_sb = |sb: usize| sb * SUPERBLOCK_BITS - self.superblocks[sb] as usize;
        let hint = (j - 1) / SELECT_SAMPLE;
        let mut lo = self.select0_hints[hint] as usize;
        let mut hi = match self.select0_hints.get(hint + 1) {
            Some(&h) => h as usize,
            None => self.superblocks.len() - 1,
        };
        while lo < hi {
            let mid = (lo + hi).div_ceil(2);
            if zeros_before_sb(mid) < j {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        let sb = lo;
        let mut rem = j - zeros_before_sb(sb);
        let first_block = sb * SUPERBLOCK_BLOCKS;
        let last_block = (first_block + SUPERBLOCK_BLOCKS).min(self.blocks.len());
        let zeros_before_block =
            |blk: usize| (blk - first_block) * BLOCK_BITS - self.blocks[blk] as usize;
        let mut blk = first_block;
        while blk + 1 < last_block && zeros_before_block(blk + 1) < rem {
            blk += 1;
        }
        rem -= zeros_before_block(blk);
        let mut w = blk * BLOCK_WORDS;
        loop {
            let c = self.words[w].count_zeros() as usize;
            if rem <= c {
                break;
            }
            rem -= c;
            w += 1;
        }
        (w * WORD_BITS + select_in_word(!self.words[w], rem as u32 - 1) as usize) as i64
    }

    /// Bits of raw payload (whole words).
    pub fn payload_bits(&self) -> usize {
        self.words.len() * WORD_BITS
    }

    /// Bits spent on the rank directory and select hints.
    pub fn directory_bits(&self) -> usize {
        self.superblocks.len() * 64
            + self.blocks.len() * 16
            + (self.select1_hints.len() + self.select0_hints.len()) * 32
    }

    pub fn space_bits(&self) -> usize {
        self.payload_bits() + self.directory_bits()
    }
}

impl Persist for PlainBitVector {
    fn write_to(&self, out: &mut Vec<u8>) {
        put_u64(out, self.len as u64);
        put_words(out, &self.words);
    }

    fn read_from(input: &mut Reader<'_>) -> Result<Self> {
        let len = input.len_field()?;
        let words = input.words(len.div_ceil(WORD_BITS))?;
        if len % WORD_BITS != 0 && words.last().unwrap() >> (len % WORD_BITS) != 0 {
            return Err(Error::format("bitvector has set bits past its length"));
        }
        Ok(Self::from_words(words, len))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn naive_rank(bits: &[bool], bit: bool, i: i64) -> usize {
        bits[..(i + 1) as usize].iter().filter(|&&b| b == bit).count()
    }

    fn naive_select(bits: &[bool], bit: bool, j: i64) -> i64 {
        if j < 1 {
            return -1;
        }
        bits.iter()
            .enumerate()
            .filter(|(_, &b)| b == bit)
            .nth(j as usize - 1)
            .map_or(-1, |(p, _)| p as i64)
    }

    fn check_against_scan(bits: &[bool]) {
        let bv: PlainBitVector = bits.iter().copied().collect();
        assert_eq!(bv.len(), bits.len());
        for bit in [false, true] {
            let mut count = 0;
            assert_eq!(bv.rank(bit, -1).unwrap(), 0);
            for (i, &b) in bits.iter().enumerate() {
                if b == bit {
                    count += 1;
                    assert_eq!(bv.select(bit, count as i64), i as i64);
                }
                assert_eq!(bv.rank(bit, i as i64).unwrap(), count);
            }
            assert_eq!(bv.select(bit, count as i64 + 1), -1);
            assert_eq!(bv.select(bit, 0), -1);
        }
    }

    #[test]
    fn unary_bucket_example() {
        let bv = PlainBitVector::parse("001101").unwrap();
        assert_eq!(bv.len(), 6);
        assert_eq!(bv.count_ones(), 3);
        assert_eq!(bv.rank1(3), 2);
        assert_eq!(bv.rank1(-1), 0);
        assert_eq!(bv.rank0(5), 3);
        assert_eq!(bv.select1(2), 3);
        assert_eq!(bv.select1(0), -1);
        assert_eq!(bv.select1(4), -1);
        assert_eq!(bv.select0(3), 4);
    }

    #[test]
    fn empty_vector() {
        let bv = PlainBitVector::default();
        assert!(bv.is_empty());
        assert_eq!(bv.rank1(-1), 0);
        assert_eq!(bv.select1(1), -1);
        assert_eq!(bv.select0(1), -1);
        assert!(bv.rank(true, 0).is_err());
    }

    #[test]
    fn rank_rejects_out_of_range() {
        let bv = PlainBitVector::parse("0101").unwrap();
        assert!(matches!(bv.rank(true, 4), Err(Error::OutOfRange { .. })));
        assert!(matches!(bv.rank(false, -2), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn directory_matches_recount() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let bits: Vec<bool> = (0..100_000).map(|_| rng.random_bool(0.3)).collect();
        let bv: PlainBitVector = bits.iter().copied().collect();
        let mut ones = 0usize;
        for (i, &b) in bits.iter().enumerate() {
            if i % SUPERBLOCK_BITS == 0 {
                assert_eq!(bv.superblocks[i / SUPERBLOCK_BITS] as usize, ones);
            }
            if i % BLOCK_BITS == 0 {
                let sb_start = bv.superblocks[i / SUPERBLOCK_BITS] as usize;
                assert_eq!(bv.blocks[i / BLOCK_BITS] as usize, ones - sb_start);
            }
            ones += b as usize;
        }
        assert_eq!(bv.count_ones(), ones);
        assert_eq!(bv.rank1(bits.len() as i64 - 1), ones);
    }

    #[test]
    fn select_hints_span_many_samples() {
        // Dense and sparse regions so that hint windows vary in width.
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut bits = Vec::new();
        for region in 0..8 {
            let p = if region % 2 == 0 { 0.95 } else { 0.01 };
            bits.extend((0..40_000).map(|_| rng.random_bool(p)));
        }
        check_against_scan(&bits);
    }

    #[test]
    fn all_ones_and_all_zeros() {
        for len in [1, 63, 64, 65, 256, 2048, 2049, 20_000] {
            check_against_scan(&vec![true; len]);
            check_against_scan(&vec![false; len]);
        }
    }

    #[test]
    fn directory_overhead_is_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in [1 << 16, 1 << 18, 1_000_003] {
            let bv: PlainBitVector = (0..n).map(|_| rng.random_bool(0.5)).collect();
            assert!(
                (bv.directory_bits() as f64) <= 0.25 * n as f64,
                "n={n}: {} directory bits",
                bv.directory_bits()
            );
        }
    }

    #[test]
    fn random_vectors_match_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..500 {
            let n = rng.random_range(0..=10_000);
            let density = rng.random::<f64>();
            let bits: Vec<bool> = (0..n).map(|_| rng.random_bool(density)).collect();
            let bv: PlainBitVector = bits.iter().copied().collect();
            for _ in 0..50 {
                let bit = rng.random_bool(0.5);
                if n > 0 {
                    let i = rng.random_range(-1..n as i64);
                    assert_eq!(bv.rank(bit, i).unwrap(), naive_rank(&bits, bit, i));
                }
                let j = rng.random_range(-1..=n as i64 + 1);
                assert_eq!(bv.select(bit, j), naive_select(&bits, bit, j));
            }
        }
    }

    #[test]
    fn serialization_layout() {
        let bv = PlainBitVector::parse("001101").unwrap();
        let bytes = bv.to_bytes();
        assert_eq!(&bytes[..8], &6u64.to_le_bytes());
        assert_eq!(&bytes[8..], &0b101100u64.to_le_bytes());
        assert_eq!(PlainBitVector::from_bytes(&bytes).unwrap(), bv);
        assert!(PlainBitVector::from_bytes(&bytes[..12]).is_err());
    }

    proptest! {
        #[test]
        fn rank_select_inverse(bits in prop::collection::vec(any::<bool>(), 0..3000)) {
            let bv: PlainBitVector = bits.iter().copied().collect();
            for bit in [false, true] {
                let total = if bit { bv.count_ones() } else { bv.count_zeros() };
                for j in 1..=total as i64 {
                    let p = bv.select(bit, j);
                    prop_assert_eq!(bv.rank(bit, p).unwrap(), j as usize);
                }
                for i in 0..bits.len() as i64 {
                    let r = bv.rank(bit, i).unwrap();
                    let p = bv.select(bit, r as i64);
                    prop_assert!(p <= i);
                    prop_assert_eq!(p == i, bits[i as usize] == bit);
                    prop_assert_eq!(bv.rank(false, i).unwrap() + bv.rank(true, i).unwrap(), i as usize + 1);
                }
            }
        }

        #[test]
        fn round_trip(bits in prop::collection::vec(any::<bool>(), 0..700)) {
            let bv: PlainBitVector = bits.iter().copied().collect();
            let back = PlainBitVector::from_bytes(&bv.to_bytes()).unwrap();
            prop_assert_eq!(back.iter().collect::<Vec<_>>(), bits);
        }
    }
}
