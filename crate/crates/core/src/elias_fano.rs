//! Elias–Fano sparse bitvector with sampled in-bucket predecessor search.
//!
//! A bit array of length `n` with `k` ones is cut into `k` buckets of width
//! `ceil(n / k)`. `B` holds one unary code per bucket (one zero per one in the
//! bucket, then a terminating one) and `A` holds the offset of every one inside
//! its bucket. The `i`-th one lives in bucket `select0(i, B) - i + 1`, which
//! gives constant-time `select1`.
//!
//! `rank1(i)` counts the ones in earlier buckets from `B` and then counts the
//! offsets `<= i mod width` inside the bucket of `i`. Buckets holding at most
//! `rho = 2 * tau` ones are binary-searched directly. Larger buckets keep every
//! `rho`-th offset in a predecessor index; the query finds the sampled
//! predecessor and binary-searches the `rho - 1` offsets that follow it.

use crate::bitvec::PlainBitVector;
use crate::error::{Error, Result};
use crate::io::{put_u32, put_u64, Persist, Reader};
use crate::packed::{ceil_log2_min1, PackedIntArray};
use crate::predecessor::PredecessorIndex;

/// Ratio between the bucket sampling threshold and the sampling parameter.
pub const RHO_PER_TAU: usize = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliasFanoBitVector {
    n: usize,
    k: usize,
    tau: u32,
    bucket_width: usize,
    buckets: PlainBitVector,
    offsets: PackedIntArray,
    rho: usize,
    sample_marks: PlainBitVector,
    bucket_preds: PredecessorIndex,
}

impl EliasFanoBitVector {
    /// Builds from the strictly increasing positions of the ones.
    pub fn new(ones: &[usize], n: usize, tau: u32) -> Result<Self> {
        if tau == 0 {
            return Err(Error::invalid("sampling parameter tau must be at least 1"));
        }
        let k = ones.len();
        if k == 0 {
            return Err(Error::invalid("Elias-Fano vector needs at least one set bit"));
        }
        if let Some(w) = ones.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::invalid(format!(
                "one positions not strictly increasing at index {}",
                w + 1
            )));
        }
        let last = ones[k - 1];
        if last >= n {
            return Err(Error::OutOfRange { index: last as i64, len: n });
        }

        let bucket_width = n.div_ceil(k);
        let mut offsets = PackedIntArray::zeroed(k, ceil_log2_min1(bucket_width as u64))?;
        let mut unary = Vec::with_capacity(2 * k);
        let mut next = 0;
        for bucket in 0..k {
            let end = (bucket + 1) * bucket_width;
            while next < k && ones[next] < end {
                offsets.set(next, (ones[next] - bucket * bucket_width) as u64)?;
                unary.push(false);
                next += 1;
            }
            unary.push(true);
        }
        let buckets: PlainBitVector = unary.into_iter().collect();
        Ok(Self::assemble(n, k, tau, buckets, offsets))
    }

    /// Builds from an explicit bit array.
    pub fn from_bits(bits: &PlainBitVector, tau: u32) -> Result<Self> {
        let ones: Vec<usize> = (1..=bits.count_ones() as i64)
            .map(|j| bits.select1(j) as usize)
            .collect();
        Self::new(&ones, bits.len(), tau)
    }

    fn assemble(
        n: usize,
        k: usize,
        tau: u32,
        buckets: PlainBitVector,
        offsets: PackedIntArray,
    ) -> Self {
        let rho = RHO_PER_TAU * tau as usize;
        let mut marks = Vec::new();
        let mut sampled = Vec::new();
        let mut start = 0usize;
        let mut prev_end = -1i64;
        for bucket in 1..=k as i64 {
            let end = buckets.select1(bucket);
            let count = (end - prev_end - 1) as usize;
            if count > rho {
                for m in (0..count).step_by(rho) {
                    marks.push(start + m);
                    sampled.push(offsets.get(start + m));
                }
            }
            start += count;
            prev_end = end;
        }
        let sample_marks = PlainBitVector::from_ones(marks, k).expect("marks lie in 0..k");
        let bucket_preds = PredecessorIndex::from_segments(&sampled);
        EliasFanoBitVector {
            n,
            k,
            tau,
            bucket_width: n.div_ceil(k),
            buckets,
            offsets,
            rho,
            sample_marks,
            bucket_preds,
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn count_ones(&self) -> usize {
        self.k
    }

    pub fn tau(&self) -> u32 {
        self.tau
    }

    pub fn bucket_width(&self) -> usize {
        self.bucket_width
    }

    pub fn rho(&self) -> usize {
        self.rho
    }

    /// The unary bucket array `B`.
    pub fn bucket_bits(&self) -> &PlainBitVector {
        &self.buckets
    }

    /// The in-bucket offsets `A`.
    pub fn offsets(&self) -> &PackedIntArray {
        &self.offsets
    }

    /// Number of offsets held in the sampled predecessor structures.
    pub fn sampled_offsets(&self) -> usize {
        self.bucket_preds.len()
    }

    /// Position of the `i`-th one (1-based), or -1.
    #[inline]
    pub fn select1(&self, i: i64) -> i64 {
        if i < 1 || i as u64 > self.k as u64 {
            return -1;
        }
        let bucket = (self.buckets.select0(i) - i + 1) as usize;
        (bucket * self.bucket_width) as i64 + self.offsets.get(i as usize - 1) as i64
    }

    /// Inclusive count of ones in `0..=i`; 0 at `i = -1`.
    ///
    /// Panics if `i < -1` or `i >= len`.
    pub fn rank1(&self, i: i64) -> usize {
        assert!(
            i >= -1 && i < self.n as i64,
            "rank position {i} out of range for length {}",
            self.n
        );
        if i < 0 {
            return 0;
        }
        let i = i as usize;
        // 1-based bucket of position i.
        let b = (i / self.bucket_width + 1) as i64;
        let prev_end = self.buckets.select1(b - 1);
        let end = self.buckets.select1(b);
        let d = (prev_end - b + 2) as usize;
        let count = (end - prev_end - 1) as usize;
        let limit = (i % self.bucket_width) as u64 + 1;

        let within = if count <= self.rho {
            self.offsets.count_less_in(d, d + count, limit)
        } else {
            let first = self.sample_marks.rank1(d as i64 - 1);
            let samples = count.div_ceil(self.rho);
            match self.bucket_preds.pred_in_range(first, first + samples, limit) {
                -1 => 0,
                m => {
                    let m = m as usize;
                    let lo = d + m * self.rho;
                    let hi = (lo + self.rho).min(d + count);
                    m * self.rho + 1 + self.offsets.count_less_in(lo + 1, hi, limit)
                }
            }
        };
        d + within
    }

    pub fn rank0(&self, i: i64) -> usize {
        (i + 1) as usize - self.rank1(i)
    }

    /// Checked inclusive rank for either bit value.
    pub fn rank(&self, bit: bool, i: i64) -> Result<usize> {
        if i < -1 || i >= self.n as i64 {
            return Err(Error::OutOfRange { index: i, len: self.n });
        }
        Ok(if bit { self.rank1(i) } else { self.rank0(i) })
    }

    pub fn get(&self, i: usize) -> bool {
        self.rank1(i as i64) != self.rank1(i as i64 - 1)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=self.k as i64).map(move |i| self.select1(i) as usize)
    }

    /// Bits of `B` plus `A` (the persistent encoding).
    pub fn payload_bits(&self) -> usize {
        self.buckets.len() + self.offsets.payload_bits()
    }

    /// In-memory size including rank/select directories and samples.
    pub fn space_bits(&self) -> usize {
        self.buckets.space_bits()
            + self.offsets.space_bits()
            + self.sample_marks.space_bits()
            + self.bucket_preds.space_bits()
    }
}

impl Persist for EliasFanoBitVector {
    fn write_to(&self, out: &mut Vec<u8>) {
        put_u64(out, self.n as u64);
        put_u64(out, self.k as u64);
        put_u32(out, self.tau);
        self.buckets.write_to(out);
        self.offsets.write_to(out);
    }

    fn read_from(input: &mut Reader<'_>) -> Result<Self> {
        let n = input.len_field()?;
        let k = input.len_field()?;
        let tau = input.u32()?;
        let buckets = PlainBitVector::read_from(input)?;
        let offsets = PackedIntArray::read_from(input)?;
        if k == 0 || tau == 0 || n < k {
            return Err(Error::format(format!("bad Elias-Fano header n={n} k={k} tau={tau}")));
        }
        if buckets.len() != 2 * k || buckets.count_ones() != k {
            return Err(Error::format("Elias-Fano bucket array does not match k"));
        }
        let width = n.div_ceil(k);
        if offsets.len() != k || offsets.width() != ceil_log2_min1(width as u64) {
            return Err(Error::format("Elias-Fano offset array does not match k"));
        }
        let ef = Self::assemble(n, k, tau, buckets, offsets);
        let mut prev = -1i64;
        for i in 1..=k as i64 {
            let p = ef.select1(i);
            if p <= prev || p >= n as i64 {
                return Err(Error::format("Elias-Fano positions are not increasing"));
            }
            prev = p;
        }
        Ok(ef)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const EXAMPLE_RUN_ENDS: [usize; 8] = [3, 6, 7, 12, 17, 19, 20, 24];

    #[test]
    fn three_bucket_example() {
        let ef = EliasFanoBitVector::new(&[0, 2, 7], 9, 4).unwrap();
        assert_eq!(ef.bucket_width(), 3);
        assert_eq!(ef.bucket_bits(), &PlainBitVector::parse("001101").unwrap());
        assert_eq!(ef.offsets().iter().collect::<Vec<_>>(), vec![0, 2, 1]);
        assert_eq!(ef.select1(3), 7);
        assert_eq!(ef.select1(0), -1);
        assert_eq!(ef.select1(4), -1);
        assert_eq!(ef.rank1(7), 3);
        assert_eq!(ef.rank1(-1), 0);
        assert_eq!(ef.rank0(8), 6);
    }

    #[test]
    fn run_end_marks() {
        let ef = EliasFanoBitVector::new(&EXAMPLE_RUN_ENDS, 25, 4).unwrap();
        assert_eq!(ef.count_ones(), 8);
        assert_eq!(ef.bucket_width(), 4);
        assert_eq!(ef.select1(5), 17);
        assert_eq!(ef.rank1(9), 3);
        let marks: String = (0..25).map(|i| if ef.get(i) { '1' } else { '0' }).collect();
        assert_eq!(marks, "0001001100001000010110001");
    }

    #[test]
    fn singleton() {
        let ef = EliasFanoBitVector::new(&[0], 1, 1).unwrap();
        assert_eq!(ef.select1(1), 0);
        assert_eq!(ef.rank1(0), 1);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(EliasFanoBitVector::new(&[], 5, 1).is_err());
        assert!(EliasFanoBitVector::new(&[2, 2], 5, 1).is_err());
        assert!(EliasFanoBitVector::new(&[3, 1], 5, 1).is_err());
        assert!(EliasFanoBitVector::new(&[5], 5, 1).is_err());
        assert!(EliasFanoBitVector::new(&[1], 5, 0).is_err());
        let ef = EliasFanoBitVector::new(&[1], 5, 1).unwrap();
        assert!(ef.rank(true, 5).is_err());
        assert!(ef.rank(true, -2).is_err());
    }

    #[test]
    fn large_buckets_use_samples() {
        // 200 ones clustered in the first bucket, the rest spread out.
        let mut ones: Vec<usize> = (0..200).collect();
        ones.extend((1..50).map(|i| 10_000 + i * 100));
        let n = 20_000;
        let bits = PlainBitVector::from_ones(ones.iter().copied(), n).unwrap();
        for tau in [1, 4, 16, 32] {
            let ef = EliasFanoBitVector::new(&ones, n, tau).unwrap();
            assert!(ef.sampled_offsets() > 0);
            for i in -1..n as i64 {
                assert_eq!(ef.rank1(i), bits.rank1(i), "tau={tau} i={i}");
            }
        }
    }

    #[test]
    fn space_accounting() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let n = rng.random_range(2..50_000);
            let k = rng.random_range(1..=n.min(1000));
            let mut ones: Vec<usize> =
                rand::seq::index::sample(&mut rng, n, k).into_iter().collect();
            ones.sort_unstable();
            let ef = EliasFanoBitVector::new(&ones, n, 4).unwrap();
            let width = n.div_ceil(k);
            assert_eq!(ef.bucket_bits().len(), 2 * k);
            assert_eq!(ef.bucket_bits().count_zeros(), k);
            if width >= 2 {
                let log = (width as f64).log2().ceil() as usize;
                assert_eq!(ef.offsets().payload_bits(), k * log);
            }
        }
    }

    #[test]
    fn round_trip_rebuilds_samples() {
        let mut ones: Vec<usize> = (0..100).map(|i| i * 2).collect();
        ones.push(5000);
        let ef = EliasFanoBitVector::new(&ones, 6000, 2).unwrap();
        let back = EliasFanoBitVector::from_bytes(&ef.to_bytes()).unwrap();
        assert_eq!(back, ef);
        let mut bytes = ef.to_bytes();
        bytes.truncate(bytes.len() - 3);
        assert!(EliasFanoBitVector::from_bytes(&bytes).is_err());
    }
}
