//! On-disk formats: the `RLSQ` sequence file and the `RLRS` index container.
//!
//! Sequence file: `"RLSQ"`, version byte, symbol width in bits (8, 16 or 32),
//! `n` (u64), `sigma` (u32), then `n` little-endian symbols.
//!
//! Index container: `"RLRS"`, version byte, `n` (u64), `sigma` (u32), `r`
//! (u64), `tau` (u32), then fragments of `tag (u8) | length (u64) | payload`.
//! The run-length structure writes fragments `R`, `H`, `C`, `S`; the baseline
//! writes `R`, `H`, `B`. All integers are little-endian.

use std::fmt;
use std::str::FromStr;

use crate::bcgpr::{BcgprIndex, LetterTables};
use crate::bitvec::PlainBitVector;
use crate::elias_fano::EliasFanoBitVector;
use crate::error::{Error, Result};
use crate::header::HeaderString;
use crate::io::{put_u32, put_u64, put_u8, Persist, Reader};
use crate::predecessor::PredecessorIndex;
use crate::rle::RunLengthString;
use crate::RankSelect;

pub const SEQUENCE_MAGIC: &[u8; 4] = b"RLSQ";
pub const INDEX_MAGIC: &[u8; 4] = b"RLRS";
pub const FORMAT_VERSION: u8 = 1;

const TAG_RUN_ENDS: u8 = b'R';
const TAG_HEADS: u8 = b'H';
const TAG_RUN_COUNTS: u8 = b'C';
const TAG_SAMPLES: u8 = b'S';
const TAG_BASELINE: u8 = b'B';

/// Size of the fixed container header in bytes.
pub const INDEX_HEADER_BYTES: usize = 4 + 1 + 8 + 4 + 8 + 4;
/// Per-fragment framing (tag + length) in bytes.
pub const FRAGMENT_HEADER_BYTES: usize = 1 + 8;

/// A symbol sequence as stored in an `RLSQ` file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceFile {
    pub symbols: Vec<u32>,
    pub sigma: u32,
}

impl SequenceFile {
    pub fn new(symbols: Vec<u32>, sigma: u32) -> Result<Self> {
        if sigma == 0 {
            return Err(Error::invalid("alphabet size must be at least 1"));
        }
        if let Some(&bad) = symbols.iter().find(|&&c| c >= sigma) {
            return Err(Error::SymbolOutOfRange { symbol: bad as u64, sigma: sigma as u64 });
        }
        Ok(SequenceFile { symbols, sigma })
    }

    /// Headerless byte input; `sigma` is the largest byte plus one.
    pub fn from_raw_bytes(bytes: &[u8]) -> Self {
        let symbols: Vec<u32> = bytes.iter().map(|&b| b as u32).collect();
        let sigma = crate::rle::effective_sigma(&symbols);
        SequenceFile { symbols, sigma }
    }

    /// Narrowest symbol width that holds `sigma - 1`.
    pub fn symbol_width(&self) -> u8 {
        match self.sigma - 1 {
            0..=0xff => 8,
            0x100..=0xffff => 16,
            _ => 32,
        }
    }

    pub fn encode(&self) -> Vec<u8> {
        let width = self.symbol_width();
        let mut out = Vec::with_capacity(18 + self.symbols.len() * width as usize / 8);
        out.extend_from_slice(SEQUENCE_MAGIC);
        put_u8(&mut out, FORMAT_VERSION);
        put_u8(&mut out, width);
        put_u64(&mut out, self.symbols.len() as u64);
        put_u32(&mut out, self.sigma);
        for &c in &self.symbols {
            match width {
                8 => out.push(c as u8),
                16 => out.extend_from_slice(&(c as u16).to_le_bytes()),
                _ => out.extend_from_slice(&c.to_le_bytes()),
            }
        }
        out
    }

    pub fn decode(bytes: &[u8]) -> Result<Self> {
        let mut input = Reader::new(bytes);
        if input.take(4)? != SEQUENCE_MAGIC {
            return Err(Error::format("not a sequence file (bad magic)"));
        }
        let version = input.u8()?;
        if version != FORMAT_VERSION {
            return Err(Error::format(format!("unsupported sequence file version {version}")));
        }
        let width = input.u8()?;
        if !matches!(width, 8 | 16 | 32) {
            return Err(Error::format(format!("unsupported symbol width {width}")));
        }
        let n = input.len_field()?;
        let sigma = input.u32()?;
        let bytes_per = width as usize / 8;
        if input.remaining() != n.saturating_mul(bytes_per) {
            return Err(Error::format(format!(
                "payload holds {} bytes, expected {} symbols of {width} bits",
                input.remaining(),
                n
            )));
        }
        let payload = input.take(n * bytes_per)?;
        let symbols: Vec<u32> = match width {
            8 => payload.iter().map(|&b| b as u32).collect(),
            16 => payload
                .chunks_exact(2)
                .map(|c| u16::from_le_bytes([c[0], c[1]]) as u32)
                .collect(),
            _ => payload
                .chunks_exact(4)
                .map(|c| u32::from_le_bytes(c.try_into().unwrap()))
                .collect(),
        };
        SequenceFile::new(symbols, sigma).map_err(|e| Error::format(e.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StructureKind {
    Rlrs,
    Bcgpr,
}

impl fmt::Display for StructureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StructureKind::Rlrs => "rlrs",
            StructureKind::Bcgpr => "bcgpr",
        })
    }
}

impl FromStr for StructureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rlrs" => Ok(StructureKind::Rlrs),
            "bcgpr" => Ok(StructureKind::Bcgpr),
            other => Err(Error::invalid(format!("unknown structure {other:?}"))),
        }
    }
}

/// Either indexed structure, as loaded from a container.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyIndex {
    Rlrs(RunLengthString),
    Bcgpr(BcgprIndex),
}

/// Serialized sizes, in bits, of one index container.
///
/// Component fields count fragment payloads; `bits_total` is the whole
/// container, so it also includes the header and fragment framing. For the
/// baseline, the per-letter tables are reported under `bits_s` and `bits_c` is 0.
#[derive(Clone, Debug, PartialEq)]
pub struct SpaceReport {
    pub structure: StructureKind,
    pub n: usize,
    pub sigma: u32,
    pub r: usize,
    pub tau: u32,
    pub bits_r: usize,
    pub bits_h: usize,
    pub bits_c: usize,
    pub bits_s: usize,
    pub bits_total: usize,
}

impl SpaceReport {
    pub fn bits_per_run(&self) -> f64 {
        self.bits_total as f64 / self.r as f64
    }

    /// `log2(n * sigma / r)`, the per-run entropy-style reference.
    pub fn log_n_sigma_over_r(&self) -> f64 {
        (self.n as f64 * self.sigma as f64 / self.r as f64).log2()
    }

    /// `r * log2(n * sigma / r)`.
    pub fn reference_bits(&self) -> f64 {
        self.r as f64 * self.log_n_sigma_over_r()
    }

    /// Leading term of the space bound per run, `(1 + 1/tau) log2(n sigma / r)`.
    pub fn leading_term_per_run(&self) -> f64 {
        (1.0 + 1.0 / self.tau.max(1) as f64) * self.log_n_sigma_over_r()
    }

    pub fn container_overhead(&self) -> usize {
        self.bits_total - (self.bits_r + self.bits_h + self.bits_c + self.bits_s)
    }
}

fn put_fragment(out: &mut Vec<u8>, tag: u8, payload: &[u8]) {
    put_u8(out, tag);
    put_u64(out, payload.len() as u64);
    out.extend_from_slice(payload);
}

impl AnyIndex {
    pub fn build(kind: StructureKind, symbols: &[u32], sigma: u32, tau: u32) -> Result<Self> {
        Ok(match kind {
            StructureKind::Rlrs => AnyIndex::Rlrs(RunLengthString::new(symbols, sigma, tau)?),
            StructureKind::Bcgpr => AnyIndex::Bcgpr(BcgprIndex::new(symbols, sigma, tau)?),
        })
    }

    pub fn kind(&self) -> StructureKind {
        match self {
            AnyIndex::Rlrs(_) => StructureKind::Rlrs,
            AnyIndex::Bcgpr(_) => StructureKind::Bcgpr,
        }
    }

    fn as_dyn(&self) -> &dyn RankSelect {
        match self {
            AnyIndex::Rlrs(q) => q,
            AnyIndex::Bcgpr(b) => b,
        }
    }

    pub fn runs(&self) -> usize {
        self.run_ends().count_ones()
    }

    pub fn tau(&self) -> u32 {
        self.run_ends().tau()
    }

    fn run_ends(&self) -> &EliasFanoBitVector {
        match self {
            AnyIndex::Rlrs(q) => q.run_ends(),
            AnyIndex::Bcgpr(b) => b.run_ends(),
        }
    }

    fn fragments(&self) -> Vec<(u8, Vec<u8>)> {
        match self {
            AnyIndex::Rlrs(q) => vec![
                (TAG_RUN_ENDS, q.run_ends().to_bytes()),
                (TAG_HEADS, q.heads().to_bytes()),
                (TAG_RUN_COUNTS, q.run_counts().to_bytes()),
                (TAG_SAMPLES, q.prefix_samples().to_bytes()),
            ],
            AnyIndex::Bcgpr(b) => vec![
                (TAG_RUN_ENDS, b.run_ends().to_bytes()),
                (TAG_HEADS, b.heads().to_bytes()),
                (TAG_BASELINE, b.tables().to_bytes()),
            ],
        }
    }

    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend_from_slice(INDEX_MAGIC);
        put_u8(&mut out, FORMAT_VERSION);
        put_u64(&mut out, self.len() as u64);
        put_u32(&mut out, self.sigma());
        put_u64(&mut out, self.runs() as u64);
        put_u32(&mut out, self.tau());
        for (tag, payload) in self.fragments() {
            put_fragment(&mut out, tag, &payload);
        }
        out
    }

    pub fn decode(bytes: &[u8]) -> Result<Self> {
        let mut input = Reader::new(bytes);
        if input.take(4)? != INDEX_MAGIC {
            return Err(Error::format("not an index container (bad magic)"));
        }
        let version = input.u8()?;
        if version != FORMAT_VERSION {
            return Err(Error::format(format!("unsupported index version {version}")));
        }
        let n = input.len_field()?;
        let sigma = input.u32()?;
        let r = input.len_field()?;
        let tau = input.u32()?;

        let mut slots: [Option<&[u8]>; 5] = [None; 5];
        while input.remaining() > 0 {
            let tag = input.u8()?;
            let len = input.len_field()?;
            let payload = input.take(len)?;
            let slot = match tag {
                TAG_RUN_ENDS => 0,
                TAG_HEADS => 1,
                TAG_RUN_COUNTS => 2,
                TAG_SAMPLES => 3,
                TAG_BASELINE => 4,
                other => return Err(Error::format(format!("unknown fragment tag {other:#04x}"))),
            };
            if slots[slot].replace(payload).is_some() {
                return Err(Error::format(format!("duplicate fragment {:?}", tag as char)));
            }
        }
        let need = |slot: usize, name: char| {
            slots[slot].ok_or_else(|| Error::format(format!("missing fragment {name:?}")))
        };
        let run_ends = EliasFanoBitVector::from_bytes(need(0, 'R')?)?;
        let heads = HeaderString::from_bytes(need(1, 'H')?)?;
        let index = if slots[4].is_some() {
            if slots[2].is_some() || slots[3].is_some() {
                return Err(Error::format("container mixes baseline and run-length fragments"));
            }
            let tables = LetterTables::from_bytes(need(4, 'B')?)?;
            AnyIndex::Bcgpr(BcgprIndex::from_parts(run_ends, heads, tables)?)
        } else {
            let run_counts = PlainBitVector::from_bytes(need(2, 'C')?)?;
            let samples = PredecessorIndex::from_bytes(need(3, 'S')?)?;
            AnyIndex::Rlrs(RunLengthString::from_parts(
                n, sigma, tau, run_ends, heads, run_counts, samples,
            )?)
        };
        if index.len() != n || index.sigma() != sigma || index.runs() != r || index.tau() != tau {
            return Err(Error::format("container header disagrees with its fragments"));
        }
        Ok(index)
    }

    /// Serialized sizes of each fragment and of the whole container.
    pub fn space_report(&self) -> SpaceReport {
        let mut report = SpaceReport {
            structure: self.kind(),
            n: self.len(),
            sigma: self.sigma(),
            r: self.runs(),
            tau: self.tau(),
            bits_r: 0,
            bits_h: 0,
            bits_c: 0,
            bits_s: 0,
            bits_total: INDEX_HEADER_BYTES * 8,
        };
        for (tag, payload) in self.fragments() {
            let bits = payload.len() * 8;
            match tag {
                TAG_RUN_ENDS => report.bits_r = bits,
                TAG_HEADS => report.bits_h = bits,
                TAG_RUN_COUNTS => report.bits_c = bits,
                _ => report.bits_s = bits,
            }
            report.bits_total += bits + FRAGMENT_HEADER_BYTES * 8;
        }
        report
    }
}

impl RankSelect for AnyIndex {
    fn len(&self) -> usize {
        self.as_dyn().len()
    }

    fn sigma(&self) -> u32 {
        self.as_dyn().sigma()
    }

    fn access(&self, i: usize) -> Result<u32> {
        self.as_dyn().access(i)
    }

    fn rank(&self, c: u32, i: usize) -> Result<usize> {
        self.as_dyn().rank(c, i)
    }

    fn select(&self, c: u32, j: i64) -> Result<i64> {
        self.as_dyn().select(c, j)
    }
}
