//! Fixed-width integer array packed into 64-bit words.

use crate::error::{Error, Result};
use crate::io::{put_u64, put_u8, put_words, Persist, Reader};

/// Number of bits needed to store `value` (at least 1).
pub fn bit_width(value: u64) -> u32 {
    (64 - value.leading_zeros()).max(1)
}

/// `ceil(log2(x))` with a floor of 1, for `x >= 1`.
pub fn ceil_log2_min1(x: u64) -> u32 {
    debug_assert!(x >= 1);
    if x <= 2 {
        1
    } else {
        64 - (x - 1).leading_zeros()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackedIntArray {
    len: usize,
    width: u32,
    data: Vec<u64>,
}

impl PackedIntArray {
    /// An all-zero array of `len` entries.
    pub fn zeroed(len: usize, width: u32) -> Result<Self> {
        if !(1..=64).contains(&width) {
            return Err(Error::invalid(format!("packed width {width} not in 1..=64")));
        }
        let words = (len as u128 * width as u128).div_ceil(64) as usize;
        Ok(PackedIntArray { len, width, data: vec![0; words] })
    }

    pub fn from_values(values: &[u64], width: u32) -> Result<Self> {
        let mut a = Self::zeroed(values.len(), width)?;
        for (i, &v) in values.iter().enumerate() {
            a.set(i, v)?;
        }
        Ok(a)
    }

    /// Packs `values` at the narrowest width that holds the maximum.
    pub fn from_values_min_width(values: &[u64]) -> Self {
        let max = values.iter().copied().max().unwrap_or(0);
        Self::from_values(values, bit_width(max)).expect("width fits maximum")
    }

    fn mask(&self) -> u64 {
        if self.width == 64 {
            u64::MAX
        } else {
            (1u64 << self.width) - 1
        }
    }

    pub fn set(&mut self, i: usize, value: u64) -> Result<()> {
        if i >= self.len {
            return Err(Error::OutOfRange { index: i as i64, len: self.len });
        }
        if value & !self.mask() != 0 {
            return Err(Error::ValueTooWide { value, width: self.width });
        }
        let bit = i * self.width as usize;
        let (word, offset) = (bit / 64, bit % 64);
        self.data[word] &= !(self.mask() << offset);
        self.data[word] |= value << offset;
        if offset + self.width as usize > 64 {
            let spill = 64 - offset;
            self.data[word + 1] &= !(self.mask() >> spill);
            self.data[word + 1] |= value >> spill;
        }
        Ok(())
    }

    /// Entry `i`. Panics when `i >= len`.
    #[inline]
    pub fn get(&self, i: usize) -> u64 {
        assert!(i < self.len, "packed index {i} out of range for length {}", self.len);
        let bit = i * self.width as usize;
        let (word, offset) = (bit / 64, bit % 64);
        let mut v = self.data[word] >> offset;
        if offset + self.width as usize > 64 {
            v |= self.data[word + 1] << (64 - offset);
        }
        v & self.mask()
    }

    pub fn try_get(&self, i: usize) -> Result<u64> {
        if i >= self.len {
            return Err(Error::OutOfRange { index: i as i64, len: self.len });
        }
        Ok(self.get(i))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Number of entries in `lo..hi` that are `< x`, assuming that range is sorted.
    pub fn count_less_in(&self, lo: usize, hi: usize, x: u64) -> usize {
        let (mut a, mut b) = (lo, hi);
        while a < b {
            let mid = a + (b - a) / 2;
            if self.get(mid) < x {
                a = mid + 1;
            } else {
                b = mid;
            }
        }
        a - lo
    }

    /// Bits occupied by the packed entries, `len * width`.
    pub fn payload_bits(&self) -> usize {
        self.len * self.width as usize
    }

    pub fn space_bits(&self) -> usize {
        self.data.len() * 64
    }
}

impl Persist for PackedIntArray {
    fn write_to(&self, out: &mut Vec<u8>) {
        put_u64(out, self.len as u64);
        put_u8(out, self.width as u8);
        put_words(out, &self.data);
    }

    fn read_from(input: &mut Reader<'_>) -> Result<Self> {
        let len = input.len_field()?;
        let width = input.u8()? as u32;
        let mut a = Self::zeroed(len, width).map_err(|e| Error::format(e.to_string()))?;
        let words = input.words(a.data.len())?;
        a.data = words;
        Ok(a)
    }
}
