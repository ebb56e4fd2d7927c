//! Strict predecessor search over a non-decreasing integer sequence.

use crate::error::{Error, Result};
use crate::io::{Persist, Reader};
use crate::packed::PackedIntArray;

/// Sorted values answering `max { i : values[i] < x }` by binary search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredecessorIndex {
    values: PackedIntArray,
}

impl PredecessorIndex {
    pub fn new(values: &[u64]) -> Result<Self> {
        if let Some(w) = values.windows(2).position(|w| w[0] > w[1]) {
            return Err(Error::invalid(format!(
                "predecessor values decrease at index {}",
                w + 1
            )));
        }
        Ok(Self::from_segments(values))
    }

    /// Concatenation of independently sorted segments, queried with
    /// [`pred_in_range`](Self::pred_in_range) one segment at a time.
    pub(crate) fn from_segments(values: &[u64]) -> Self {
        PredecessorIndex { values: PackedIntArray::from_values_min_width(values) }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, i: usize) -> u64 {
        self.values.get(i)
    }

    /// Largest index `i` with `values[i] < x`, or -1.
    pub fn pred_index(&self, x: u64) -> i64 {
        self.values.count_less_in(0, self.values.len(), x) as i64 - 1
    }

    /// Strict predecessor restricted to the sorted range `lo..hi`, as an index
    /// relative to `lo`; -1 when no value in the range is below `x`.
    pub fn pred_in_range(&self, lo: usize, hi: usize, x: u64) -> i64 {
        self.values.count_less_in(lo, hi, x) as i64 - 1
    }

    pub fn space_bits(&self) -> usize {
        self.values.space_bits()
    }
}

impl Persist for PredecessorIndex {
    fn write_to(&self, out: &mut Vec<u8>) {
        self.values.write_to(out);
    }

    fn read_from(input: &mut Reader<'_>) -> Result<Self> {
        let values = PackedIntArray::read_from(input)?;
        let v: Vec<u64> = values.iter().collect();
        if v.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::format("predecessor values are not sorted"));
        }
        Ok(PredecessorIndex { values })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const EXAMPLE_PREFIX: [u64; 8] = [4, 5, 10, 14, 17, 18, 23, 25];

    fn scan(values: &[u64], x: u64) -> i64 {
        values.iter().rposition(|&v| v < x).map_or(-1, |i| i as i64)
    }

    #[test]
    fn prefix_sum_examples() {
        let p = PredecessorIndex::new(&EXAMPLE_PREFIX).unwrap();
        assert_eq!(p.pred_index(24), 6);
        assert_eq!(p.pred_index(4), -1);
        assert_eq!(p.pred_index(1000), 7);
        assert_eq!(p.pred_index(5), 0);
    }

    #[test]
    fn ties_return_last_index() {
        let p = PredecessorIndex::new(&[1, 3, 3, 3, 8]).unwrap();
        assert_eq!(p.pred_index(4), 3);
        assert_eq!(p.pred_index(3), 0);
    }

    #[test]
    fn empty_and_unsorted() {
        let p = PredecessorIndex::new(&[]).unwrap();
        assert_eq!(p.pred_index(7), -1);
        assert!(PredecessorIndex::new(&[2, 1]).is_err());
    }

    #[test]
    fn ranged_queries() {
        let p = PredecessorIndex::from_segments(&[0, 5, 9, 1, 2, 7]);
        assert_eq!(p.pred_in_range(3, 6, 3), 1);
        assert_eq!(p.pred_in_range(3, 6, 1), -1);
        assert_eq!(p.pred_in_range(0, 3, 100), 2);
    }

    fn sorted_values() -> impl Strategy<Value = Vec<u64>> {
        prop::collection::vec(0u64..5000, 0..1000).prop_map(|mut v| {
            v.sort_unstable();
            v
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn matches_scan_and_boundary_law(values in sorted_values(), x in 0u64..5100) {
            let p = PredecessorIndex::new(&values).unwrap();
            let i = p.pred_index(x);
            prop_assert_eq!(i, scan(&values, x));
            if i >= 0 {
                prop_assert!(values[i as usize] < x);
            }
            let next = (i + 1) as usize;
            prop_assert!(next == values.len() || values[next] >= x);
        }

        #[test]
        fn monotone(values in sorted_values(), a in 0u64..5100, b in 0u64..5100) {
            let p = PredecessorIndex::new(&values).unwrap();
            let (lo, hi) = (a.min(b), a.max(b));
            prop_assert!(p.pred_index(lo) <= p.pred_index(hi));
        }
    }
}
