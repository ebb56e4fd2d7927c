//! Per-letter binary-search baseline.
//!
//! For every letter `c` the index keeps the sorted start positions of the runs
//! of `c` and, for each of those runs, how many `c`s precede it. Rank and select
//! binary-search these arrays; run extents and `access` come from the run-end
//! bit array `R` and the head string `H` shared with [`RunLengthString`].
//!
//! [`RunLengthString`]: crate::RunLengthString

use crate::elias_fano::EliasFanoBitVector;
use crate::error::{Error, Result};
use crate::header::{HeaderString, SymbolIndex};
use crate::io::{put_u32, Persist, Reader};
use crate::packed::{bit_width, PackedIntArray};
use crate::rle::runs_of;
use crate::RankSelect;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BcgprIndex {
    n: usize,
    sigma: u32,
    run_ends: EliasFanoBitVector,
    heads: HeaderString,
    tables: LetterTables,
}

/// Concatenated per-letter arrays; letter `c` owns `bounds[c]..bounds[c + 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LetterTables {
    sigma: u32,
    bounds: PackedIntArray,
    starts: PackedIntArray,
    counts: PackedIntArray,
}

impl BcgprIndex {
    pub fn new(symbols: &[u32], sigma: u32, tau: u32) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::invalid("cannot index an empty string"));
        }
        if sigma == 0 {
            return Err(Error::invalid("alphabet size must be at least 1"));
        }
        if let Some(&bad) = symbols.iter().find(|&&c| c >= sigma) {
            return Err(Error::SymbolOutOfRange { symbol: bad as u64, sigma: sigma as u64 });
        }
        let runs = runs_of(symbols);
        let n = symbols.len();

        let mut per_letter: Vec<Vec<(u64, u64)>> = vec![Vec::new(); sigma as usize];
        let mut seen = vec![0u64; sigma as usize];
        let mut ends = Vec::with_capacity(runs.len());
        let mut pos = 0usize;
        for &(c, len) in &runs {
            per_letter[c as usize].push((pos as u64, seen[c as usize]));
            seen[c as usize] += len as u64;
            pos += len;
            ends.push(pos - 1);
        }
        let mut bounds = Vec::with_capacity(sigma as usize + 1);
        let (mut starts, mut counts) = (Vec::new(), Vec::new());
        bounds.push(0);
        for list in &per_letter {
            for &(s, k) in list {
                starts.push(s);
                counts.push(k);
            }
            bounds.push(starts.len() as u64);
        }
        let width = bit_width(n as u64);
        let tables = LetterTables {
            sigma,
            bounds: PackedIntArray::from_values(&bounds, bit_width(runs.len() as u64))?,
            starts: PackedIntArray::from_values(&starts, width)?,
            counts: PackedIntArray::from_values(&counts, width)?,
        };
        let heads: Vec<u32> = runs.iter().map(|&(c, _)| c).collect();
        Ok(BcgprIndex {
            n,
            sigma,
            run_ends: EliasFanoBitVector::new(&ends, n, tau)?,
            heads: HeaderString::from_run_heads(&heads, sigma)?,
            tables,
        })
    }

    pub(crate) fn from_parts(
        run_ends: EliasFanoBitVector,
        heads: HeaderString,
        tables: LetterTables,
    ) -> Result<Self> {
        let r = run_ends.count_ones();
        if heads.len() != r
            || heads.sigma() != tables.sigma
            || tables.starts.len() != r
            || tables.counts.len() != r
            || tables.bounds.len() != tables.sigma as usize + 1
            || tables.bounds.get(tables.sigma as usize) as usize != r
        {
            return Err(Error::format("baseline components are inconsistent"));
        }
        Ok(BcgprIndex { n: run_ends.len(), sigma: tables.sigma, run_ends, heads, tables })
    }

    pub fn run_ends(&self) -> &EliasFanoBitVector {
        &self.run_ends
    }

    pub fn heads(&self) -> &HeaderString {
        &self.heads
    }

    pub fn tables(&self) -> &LetterTables {
        &self.tables
    }

    /// Start positions of the runs of `c`.
    pub fn starts(&self, c: u32) -> Vec<u64> {
        let (lo, hi) = self.tables.range(c);
        (lo..hi).map(|i| self.tables.starts.get(i)).collect()
    }

    /// Occurrences of `c` before each run of `c`.
    pub fn counts(&self, c: u32) -> Vec<u64> {
        let (lo, hi) = self.tables.range(c);
        (lo..hi).map(|i| self.tables.counts.get(i)).collect()
    }

    /// Last position of the run starting at `start`.
    fn run_end_from(&self, start: usize) -> usize {
        let run = self.run_ends.rank1(start as i64 - 1);
        self.run_ends.select1(run as i64 + 1) as usize
    }

    fn check_symbol(&self, c: u32) -> Result<()> {
        if c >= self.sigma {
            return Err(Error::SymbolOutOfRange { symbol: c as u64, sigma: self.sigma as u64 });
        }
        Ok(())
    }
}

impl LetterTables {
    fn range(&self, c: u32) -> (usize, usize) {
        (self.bounds.get(c as usize) as usize, self.bounds.get(c as usize + 1) as usize)
    }

    pub fn space_bits(&self) -> usize {
        self.bounds.space_bits() + self.starts.space_bits() + self.counts.space_bits()
    }
}

impl Persist for LetterTables {
    fn write_to(&self, out: &mut Vec<u8>) {
        put_u32(out, self.sigma);
        self.bounds.write_to(out);
        self.starts.write_to(out);
        self.counts.write_to(out);
    }

    fn read_from(input: &mut Reader<'_>) -> Result<Self> {
        let sigma = input.u32()?;
        let bounds = PackedIntArray::read_from(input)?;
        let starts = PackedIntArray::read_from(input)?;
        let counts = PackedIntArray::read_from(input)?;
        if bounds.len() != sigma as usize + 1 || bounds.iter().zip(bounds.iter().skip(1)).any(|(a, b)| a > b)
        {
            return Err(Error::format("bad letter bounds in baseline tables"));
        }
        Ok(LetterTables { sigma, bounds, starts, counts })
    }
}

impl RankSelect for BcgprIndex {
    fn len(&self) -> usize {
        self.n
    }

    fn sigma(&self) -> u32 {
        self.sigma
    }

    fn access(&self, i: usize) -> Result<u32> {
        if i >= self.n {
            return Err(Error::OutOfRange { index: i as i64, len: self.n });
        }
        Ok(self.heads.access(self.run_ends.rank1(i as i64 - 1)))
    }

    fn rank(&self, c: u32, i: usize) -> Result<usize> {
        self.check_symbol(c)?;
        if i >= self.n {
            return Err(Error::OutOfRange { index: i as i64, len: self.n });
        }
        let (lo, hi) = self.tables.range(c);
        let q = self.tables.starts.count_less_in(lo, hi, i as u64 + 1);
        if q == 0 {
            return Ok(0);
        }
        let start = self.tables.starts.get(lo + q - 1) as usize;
        let before = self.tables.counts.get(lo + q - 1) as usize;
        let end = self.run_end_from(start);
        Ok(before + i.min(end) - start + 1)
    }

    fn select(&self, c: u32, j: i64) -> Result<i64> {
        self.check_symbol(c)?;
        if j < 1 {
            return Ok(-1);
        }
        let (lo, hi) = self.tables.range(c);
        let q = self.tables.counts.count_less_in(lo, hi, j as u64);
        if q == 0 {
            return Ok(-1);
        }
        let start = self.tables.starts.get(lo + q - 1) as usize;
        let offset = j as u64 - self.tables.counts.get(lo + q - 1);
        let pos = start as u64 + offset - 1;
        if pos > self.run_end_from(start) as u64 {
            return Ok(-1);
        }
        Ok(pos as i64)
    }
}
