//! Reference answers, instance generation and run counting.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::RankSelect;

/// Uncompressed sequence answering queries by linear scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaiveSequence {
    symbols: Vec<u32>,
    sigma: u32,
}

impl NaiveSequence {
    pub fn new(symbols: Vec<u32>, sigma: u32) -> Result<Self> {
        if let Some(&bad) = symbols.iter().find(|&&c| c >= sigma) {
            return Err(Error::SymbolOutOfRange { symbol: bad as u64, sigma: sigma as u64 });
        }
        Ok(NaiveSequence { symbols, sigma })
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    /// Occurrences of every letter.
    pub fn counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.sigma as usize];
        for &c in &self.symbols {
            counts[c as usize] += 1;
        }
        counts
    }

    fn check_symbol(&self, c: u32) -> Result<()> {
        if c >= self.sigma {
            return Err(Error::SymbolOutOfRange { symbol: c as u64, sigma: self.sigma as u64 });
        }
        Ok(())
    }
}

impl RankSelect for NaiveSequence {
    fn len(&self) -> usize {
        self.symbols.len()
    }

    fn sigma(&self) -> u32 {
        self.sigma
    }

    fn access(&self, i: usize) -> Result<u32> {
        self.symbols
            .get(i)
            .copied()
            .ok_or(Error::OutOfRange { index: i as i64, len: self.symbols.len() })
    }

    fn rank(&self, c: u32, i: usize) -> Result<usize> {
        self.check_symbol(c)?;
        if i >= self.symbols.len() {
            return Err(Error::OutOfRange { index: i as i64, len: self.symbols.len() });
        }
        Ok(self.symbols[..=i].iter().filter(|&&x| x == c).count())
    }

    fn select(&self, c: u32, j: i64) -> Result<i64> {
        self.check_symbol(c)?;
        if j < 1 {
            return Ok(-1);
        }
        Ok(self
            .symbols
            .iter()
            .enumerate()
            .filter(|(_, &x)| x == c)
            .nth(j as usize - 1)
            .map_or(-1, |(p, _)| p as i64))
    }
}

/// Deterministic string of length `n` over `[0..sigma)` with exactly
/// `runs` maximal runs.
///
/// Run boundaries are `runs - 1` distinct cut points drawn uniformly from
/// `1..n`, so run lengths are spacings of a uniform sample: roughly geometric
/// with mean `n / runs`, and they sum to `n` exactly. Each run head differs from
/// its predecessor.
pub fn gen_instance(n: usize, sigma: u32, runs: usize, seed: u64) -> Result<Vec<u32>> {
    if n == 0 || runs == 0 || runs > n {
        return Err(Error::invalid(format!("cannot make {runs} runs in a string of length {n}")));
    }
    if sigma == 0 || (sigma == 1 && runs > 1) {
        return Err(Error::invalid(format!(
            "alphabet of size {sigma} cannot produce {runs} runs"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cuts: Vec<usize> = index::sample(&mut rng, n - 1, runs - 1)
        .into_iter()
        .map(|c| c + 1)
        .collect();
    cuts.sort_unstable();
    cuts.push(n);

    let mut out = Vec::with_capacity(n);
    let mut head = rng.random_range(0..sigma);
    for (k, &end) in cuts.iter().enumerate() {
        if k > 0 {
            let next = rng.random_range(0..sigma - 1);
            head = if next >= head { next + 1 } else { next };
        }
        out.resize(end, head);
    }
    Ok(out)
}

/// Number of maximal runs in `symbols`.
pub fn count_runs(symbols: &[u32]) -> usize {
    if symbols.is_empty() {
        return 0;
    }
    1 + symbols.windows(2).filter(|w| w[0] != w[1]).count()
}

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Strings of length `n` over `sigma` letters with exactly `r` runs:
/// `C(n-1, r-1) * sigma * (sigma-1)^(r-1)`. Zero when `r` is infeasible.
pub fn count_strings_with_runs(n: u64, sigma: u64, r: u64) -> u128 {
    if n == 0 || r == 0 || r > n || sigma == 0 {
        return 0;
    }
    binomial(n - 1, r - 1) * sigma as u128 * (sigma as u128 - 1).pow(r as u32 - 1)
}

/// Exhaustive count of strings with exactly `r` runs, for `sigma^n <= 10^7`.
pub fn enumerate_strings_with_runs(n: usize, sigma: u32, r: usize) -> Result<u128> {
    let total = (sigma as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if total > 10_000_000 {
        return Err(Error::invalid(format!("{sigma}^{n} strings is too many to enumerate")));
    }
    let mut digits = vec![0u32; n];
    let mut count = 0u128;
    for _ in 0..total {
        if n > 0 && count_runs(&digits) == r {
            count += 1;
        }
        for d in digits.iter_mut() {
            *d += 1;
            if *d < sigma {
                break;
            }
            *d = 0;
        }
    }
    Ok(count)
}
