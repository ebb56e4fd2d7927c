//! Run-length compressed rank/select over a general alphabet.
//!
//! A string `s` of length `n` with `r` runs over `[0..sigma)` is held as
//!
//! * `R`: Elias–Fano bit array marking the last position of every run,
//! * `H`: the run heads, one symbol per run,
//! * `C`: for each letter `c`, `n_c` zeros then a one, where `n_c` counts the
//!   runs of `c`,
//! * samples of the prefix sums of `S`, the run lengths listed letter by
//!   letter.
//!
//! `S` itself is never stored: `S[i]` is recovered from `R`, `H` and `C` with a
//! constant number of rank/select calls (see [`RunLengthString::run_length`]).

use crate::bitvec::PlainBitVector;
use crate::elias_fano::EliasFanoBitVector;
use crate::error::{Error, Result};
use crate::header::{HeaderString, SymbolIndex};
use crate::predecessor::PredecessorIndex;
use crate::RankSelect;

/// Maximal runs of `symbols` as `(head, length)` pairs.
pub fn runs_of(symbols: &[u32]) -> Vec<(u32, usize)> {
    let mut runs: Vec<(u32, usize)> = Vec::new();
    for &c in symbols {
        match runs.last_mut() {
            Some((head, len)) if *head == c => *len += 1,
            _ => runs.push((c, 1)),
        }
    }
    runs
}

/// Smallest alphabet size covering every symbol (`max + 1`, at least 1).
pub fn effective_sigma(symbols: &[u32]) -> u32 {
    symbols.iter().copied().max().map_or(1, |m| m + 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunLengthString<H = HeaderString> {
    pub(crate) n: usize,
    pub(crate) sigma: u32,
    pub(crate) r: usize,
    pub(crate) tau: u32,
    pub(crate) run_ends: EliasFanoBitVector,
    pub(crate) heads: H,
    pub(crate) run_counts: PlainBitVector,
    pub(crate) samples: PredecessorIndex,
}

/// The explicit grouped run-length array, as computed at build time.
pub fn grouped_run_lengths(runs: &[(u32, usize)], sigma: u32) -> Vec<u64> {
    let mut by_letter: Vec<Vec<u64>> = vec![Vec::new(); sigma as usize];
    for &(c, len) in runs {
        by_letter[c as usize].push(len as u64);
    }
    by_letter.concat()
}

/// Unary per-letter run counts.
fn run_count_bits(runs: &[(u32, usize)], sigma: u32) -> PlainBitVector {
    let mut counts = vec![0usize; sigma as usize];
    for &(c, _) in runs {
        counts[c as usize] += 1;
    }
    counts
        .iter()
        .flat_map(|&count| std::iter::repeat_n(false, count).chain(std::iter::once(true)))
        .collect()
}

/// Prefix sums `S[0] + ... + S[j * step]` for every `j` with `j * step < r`.
fn sampled_prefix_sums(lengths: &[u64], step: usize) -> Vec<u64> {
    let mut samples = Vec::with_capacity(lengths.len().div_ceil(step));
    let mut total = 0;
    for (i, &len) in lengths.iter().enumerate() {
        total += len;
        if i % step == 0 {
            samples.push(total);
        }
    }
    samples
}

impl RunLengthString<HeaderString> {
    /// Builds the structure for `symbols` over `[0..sigma)`.
    pub fn new(symbols: &[u32], sigma: u32, tau: u32) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::invalid("cannot index an empty string"));
        }
        if sigma == 0 {
            return Err(Error::invalid("alphabet size must be at least 1"));
        }
        if tau == 0 {
            return Err(Error::invalid("sampling parameter tau must be at least 1"));
        }
        if let Some(&bad) = symbols.iter().find(|&&c| c >= sigma) {
            return Err(Error::SymbolOutOfRange { symbol: bad as u64, sigma: sigma as u64 });
        }
        let runs = runs_of(symbols);
        let heads: Vec<u32> = runs.iter().map(|&(c, _)| c).collect();
        let heads = HeaderString::from_run_heads(&heads, sigma)?;
        Self::from_runs(&runs, heads, sigma, tau)
    }
}

impl<H: SymbolIndex> RunLengthString<H> {
    /// Assembles the structure around an already built head index.
    pub fn from_runs(runs: &[(u32, usize)], heads: H, sigma: u32, tau: u32) -> Result<Self> {
        if runs.is_empty() || tau == 0 || sigma == 0 {
            return Err(Error::invalid("need at least one run, tau >= 1 and sigma >= 1"));
        }
        if heads.len() != runs.len() || heads.sigma() != sigma {
            return Err(Error::invalid("head index does not match the runs"));
        }
        let mut ends = Vec::with_capacity(runs.len());
        let mut pos = 0usize;
        for &(_, len) in runs {
            if len == 0 {
                return Err(Error::invalid("runs must be non-empty"));
            }
            pos += len;
            ends.push(pos - 1);
        }
        let lengths = grouped_run_lengths(runs, sigma);
        let rls = RunLengthString {
            n: pos,
            sigma,
            r: runs.len(),
            tau,
            run_ends: EliasFanoBitVector::new(&ends, pos, tau)?,
            heads,
            run_counts: run_count_bits(runs, sigma),
            samples: PredecessorIndex::new(&sampled_prefix_sums(&lengths, tau as usize))?,
        };
        #[cfg(debug_assertions)]
        for (i, &len) in lengths.iter().enumerate() {
            debug_assert_eq!(rls.run_length(i) as u64, len, "implicit S[{i}] mismatch");
        }
        Ok(rls)
    }

    pub(crate) fn from_parts(
        n: usize,
        sigma: u32,
        tau: u32,
        run_ends: EliasFanoBitVector,
        heads: H,
        run_counts: PlainBitVector,
        samples: PredecessorIndex,
    ) -> Result<Self> {
        let r = run_ends.count_ones();
        let consistent = run_ends.len() == n
            && run_ends.select1(r as i64) == n as i64 - 1
            && heads.len() == r
            && heads.sigma() == sigma
            && run_counts.count_zeros() == r
            && run_counts.count_ones() == sigma as usize
            && samples.len() == r.div_ceil(tau as usize);
        if !consistent {
            return Err(Error::format("run-length components are inconsistent"));
        }
        let rls = RunLengthString { n, sigma, r, tau, run_ends, heads, run_counts, samples };
        if rls.prefix_sum(r) != n {
            return Err(Error::format("run lengths do not sum to the string length"));
        }
        Ok(rls)
    }

    pub fn runs(&self) -> usize {
        self.r
    }

    pub fn tau(&self) -> u32 {
        self.tau
    }

    pub fn run_ends(&self) -> &EliasFanoBitVector {
        &self.run_ends
    }

    pub fn heads(&self) -> &H {
        &self.heads
    }

    pub fn run_counts(&self) -> &PlainBitVector {
        &self.run_counts
    }

    pub fn prefix_samples(&self) -> &PredecessorIndex {
        &self.samples
    }

    #[inline]
    fn step(&self) -> usize {
        self.tau as usize
    }

    /// Index in `S` of the first run of letter `c`.
    #[inline]
    fn first_run_of(&self, c: u32) -> usize {
        (self.run_counts.select1(c as i64) - c as i64 + 1) as usize
    }

    /// `S[i]`: the length of the `i`-th run in letter-grouped order.
    ///
    /// Panics if `i >= r`.
    pub fn run_length(&self, i: usize) -> usize {
        assert!(i < self.r, "run index {i} out of range for {} runs", self.r);
        let c = self.run_counts.rank1(self.run_counts.select0(i as i64 + 1)) as u32;
        let k = i - self.first_run_of(c) + 1;
        let run = self.heads.select(c, k as i64) + 1;
        (self.run_ends.select1(run) - self.run_ends.select1(run - 1)) as usize
    }

    pub fn try_run_length(&self, i: usize) -> Result<usize> {
        if i >= self.r {
            return Err(Error::OutOfRange { index: i as i64, len: self.r });
        }
        Ok(self.run_length(i))
    }

    /// `S[0] + ... + S[j - 1]` for `j` in `0..=r`.
    pub fn prefix_sum(&self, j: usize) -> usize {
        assert!(j <= self.r, "prefix length {j} out of range for {} runs", self.r);
        if j == 0 {
            return 0;
        }
        let step = self.step();
        let sample = (j - 1) / step;
        let mut total = self.samples.get(sample) as usize;
        for i in sample * step + 1..j {
            total += self.run_length(i);
        }
        total
    }

    pub fn try_prefix_sum(&self, j: usize) -> Result<usize> {
        if j > self.r {
            return Err(Error::OutOfRange { index: j as i64, len: self.r + 1 });
        }
        Ok(self.prefix_sum(j))
    }

    /// Largest `i` with `S[0] + ... + S[i] < x`, or -1.
    pub fn pred(&self, x: u64) -> i64 {
        let sample = self.samples.pred_index(x);
        if sample < 0 {
            return -1;
        }
        let step = self.step();
        let mut i = sample as usize * step;
        let mut total = self.samples.get(sample as usize);
        // The next sample is already >= x, so the answer lies before it.
        let stop = ((sample as usize + 1) * step - 1).min(self.r - 1);
        while i < stop {
            let next = total + self.run_length(i + 1) as u64;
            if next >= x {
                break;
            }
            total = next;
            i += 1;
        }
        i as i64
    }

    fn check_symbol(&self, c: u32) -> Result<()> {
        if c >= self.sigma {
            return Err(Error::SymbolOutOfRange { symbol: c as u64, sigma: self.sigma as u64 });
        }
        Ok(())
    }

    fn check_position(&self, i: usize) -> Result<()> {
        if i >= self.n {
            return Err(Error::OutOfRange { index: i as i64, len: self.n });
        }
        Ok(())
    }

    /// Heap size of each component, directories included.
    pub fn component_bits(&self) -> ComponentBits {
        ComponentBits {
            run_ends: self.run_ends.space_bits(),
            heads: self.heads.space_bits(),
            run_counts: self.run_counts.space_bits(),
            samples: self.samples.space_bits(),
        }
    }
}

/// In-memory sizes of the four components, in bits.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ComponentBits {
    pub run_ends: usize,
    pub heads: usize,
    pub run_counts: usize,
    pub samples: usize,
}

impl ComponentBits {
    pub fn total(&self) -> usize {
        self.run_ends + self.heads + self.run_counts + self.samples
    }
}

impl<H: SymbolIndex> RankSelect for RunLengthString<H> {
    fn len(&self) -> usize {
        self.n
    }

    fn sigma(&self) -> u32 {
        self.sigma
    }

    fn access(&self, i: usize) -> Result<u32> {
        self.check_position(i)?;
        Ok(self.heads.access(self.run_ends.rank1(i as i64 - 1)))
    }

    fn rank(&self, c: u32, i: usize) -> Result<usize> {
        self.check_symbol(c)?;
        self.check_position(i)?;
        let j = self.first_run_of(c);
        // Runs that end before position i.
        let m = self.run_ends.rank1(i as i64 - 1);
        let k = self.heads.rank(c, m as i64 - 1);
        let before = if k == 0 {
            0
        } else {
            self.prefix_sum(j + k) - self.prefix_sum(j)
        };
        if self.heads.access(m) == c {
            Ok(before + (i as i64 - self.run_ends.select1(m as i64)) as usize)
        } else {
            Ok(before)
        }
    }

    fn select(&self, c: u32, i: i64) -> Result<i64> {
        self.check_symbol(c)?;
        if i < 1 {
            return Ok(-1);
        }
        let j = self.first_run_of(c);
        let j_next = if c == self.sigma - 1 { self.r } else { self.first_run_of(c + 1) };
        if j == j_next {
            return Ok(-1);
        }
        let t = self.prefix_sum(j);
        if i as u64 > (self.prefix_sum(j_next) - t) as u64 {
            return Ok(-1);
        }
        let k = (self.pred(t as u64 + i as u64) - j as i64 + 1) as usize;
        debug_assert_eq!(
            self.run_counts.rank1(self.run_counts.select0((j + k + 1) as i64)),
            c as usize
        );
        let t2 = if k == 0 { t } else { self.prefix_sum(j + k) };
        let p = i - (t2 - t) as i64;
        let run = self.heads.select(c, k as i64 + 1);
        Ok(self.run_ends.select1(run) + p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::NaiveSequence;

    const EXAMPLE: &str = "aaaabbbadddddaaaaaddbaaaa";

    fn letters(s: &str) -> Vec<u32> {
        s.bytes().map(|b| (b - b'a') as u32).collect()
    }

    fn example(tau: u32) -> RunLengthString {
        RunLengthString::new(&letters(EXAMPLE), 4, tau).unwrap()
    }

    #[test]
    fn components_of_worked_example() {
        let q = example(4);
        assert_eq!(q.len(), 25);
        assert_eq!(q.runs(), 8);
        assert_eq!(q.run_ends().ones().collect::<Vec<_>>(), vec![3, 6, 7, 12, 17, 19, 20, 24]);
        assert_eq!(q.heads().iter().collect::<Vec<_>>(), vec![0, 1, 0, 3, 0, 3, 1, 0]);
        assert_eq!(q.run_counts(), &PlainBitVector::parse("000010011001").unwrap());
        let s: Vec<usize> = (0..8).map(|i| q.run_length(i)).collect();
        assert_eq!(s, vec![4, 1, 5, 4, 3, 1, 5, 2]);
    }

    #[test]
    fn single_run_and_alternating() {
        let q = RunLengthString::new(&[0, 0, 0, 0], 1, 2).unwrap();
        assert_eq!(q.runs(), 1);
        assert_eq!(q.run_ends().ones().collect::<Vec<_>>(), vec![3]);
        assert_eq!(q.run_counts(), &PlainBitVector::parse("01").unwrap());
        assert_eq!(q.run_length(0), 4);
        assert_eq!(q.select(0, 4).unwrap(), 3);
        assert_eq!(q.select(0, 5).unwrap(), -1);
        assert_eq!(q.rank(0, 2).unwrap(), 3);

        let q = RunLengthString::new(&[0, 1, 0, 1], 2, 1).unwrap();
        assert_eq!(q.heads().iter().collect::<Vec<_>>(), vec![0, 1, 0, 1]);
        assert_eq!(q.run_counts(), &PlainBitVector::parse("001001").unwrap());
        assert_eq!((0..4).map(|i| q.run_length(i)).collect::<Vec<_>>(), vec![1; 4]);
    }

    #[test]
    fn access_examples() {
        let q = example(4);
        assert_eq!(q.access(12).unwrap(), 3);
        assert_eq!(q.access(0).unwrap(), 0);
        assert_eq!(q.access(24).unwrap(), 0);
        assert!(q.access(25).is_err());
    }

    #[test]
    fn prefix_sums_and_pred() {
        for tau in [1, 2, 3, 4, 8] {
            let q = example(tau);
            assert_eq!(q.run_length(0), 4);
            assert_eq!(q.run_length(4), 3);
            assert_eq!(q.run_length(7), 2);
            assert_eq!(q.pred(24), 6);
            assert_eq!(q.pred(4), -1);
            assert_eq!(q.pred(26), 7);
            assert_eq!(q.prefix_sum(0), 0);
            assert_eq!(q.prefix_sum(6), 18);
            assert_eq!(q.prefix_sum(8), 25);
            assert!(q.try_prefix_sum(9).is_err());
            assert!(q.try_run_length(8).is_err());
        }
    }

    #[test]
    fn rank_and_select_examples() {
        let q = example(4);
        assert_eq!(q.select(3, 6).unwrap(), 18);
        assert_eq!(q.select(2, 0).unwrap(), -1);
        assert_eq!(q.select(1, 5).unwrap(), -1);
        assert_eq!(q.rank(3, 10).unwrap(), 3);
        assert_eq!(q.rank(2, 24).unwrap(), 0);
        assert_eq!(q.rank(0, 24).unwrap(), 14);
        assert!(q.rank(4, 0).is_err());
        assert!(q.select(4, 1).is_err());
    }

    #[test]
    fn exhaustive_against_scan() {
        let s = letters(EXAMPLE);
        let naive = NaiveSequence::new(s.clone(), 4).unwrap();
        for tau in [1, 2, 4, 16] {
            let q = example(tau);
            for i in 0..s.len() {
                assert_eq!(q.access(i).unwrap(), naive.access(i).unwrap());
                for c in 0..4 {
                    assert_eq!(q.rank(c, i).unwrap(), naive.rank(c, i).unwrap());
                }
            }
            for c in 0..4 {
                for j in -1..30 {
                    assert_eq!(q.select(c, j).unwrap(), naive.select(c, j).unwrap());
                }
            }
        }
    }

    #[test]
    fn sigma_larger_than_runs() {
        let q = RunLengthString::new(&[7, 7, 2, 2, 2, 9], 20, 3).unwrap();
        assert_eq!(q.rank(9, 5).unwrap(), 1);
        assert_eq!(q.select(2, 3).unwrap(), 4);
        assert_eq!(q.select(19, 1).unwrap(), -1);
        assert_eq!(q.rank(0, 5).unwrap(), 0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(RunLengthString::new(&[], 1, 1).is_err());
        assert!(RunLengthString::new(&[0, 3], 3, 1).is_err());
        assert!(RunLengthString::new(&[0], 1, 0).is_err());
    }

    #[test]
    fn helpers() {
        assert_eq!(runs_of(&[1, 1, 0, 1]), vec![(1, 2), (0, 1), (1, 1)]);
        assert_eq!(effective_sigma(&[3, 0, 2]), 4);
        assert_eq!(effective_sigma(&[]), 1);
        let runs = runs_of(&letters(EXAMPLE));
        assert_eq!(grouped_run_lengths(&runs, 4), vec![4, 1, 5, 4, 3, 1, 5, 2]);
        assert_eq!(sampled_prefix_sums(&[4, 1, 5, 4, 3, 1, 5, 2], 3), vec![4, 14, 23]);
    }
}
