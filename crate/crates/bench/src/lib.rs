//! Shared fixtures for the criterion benchmarks.

use runrank::oracle::gen_instance;
use runrank::workload::{random_queries, Query, QueryKind};
use runrank::{AnyIndex, Result, StructureKind};

/// A generated instance with both structures built over it.
pub struct Fixture {
    pub rlrs: Vec<(u32, AnyIndex)>,
    pub bcgpr: AnyIndex,
    pub occurrences: Vec<usize>,
}

impl Fixture {
    pub fn new(n: usize, sigma: u32, runs: usize, taus: &[u32]) -> Result<Self> {
        let s = gen_instance(n, sigma, runs, 3)?;
        let rlrs = taus
            .iter()
            .map(|&tau| Ok((tau, AnyIndex::build(StructureKind::Rlrs, &s, sigma, tau)?)))
            .collect::<Result<Vec<_>>>()?;
        let bcgpr = AnyIndex::build(StructureKind::Bcgpr, &s, sigma, 4)?;
        let mut occurrences = vec![0; sigma as usize];
        for &c in &s {
            occurrences[c as usize] += 1;
        }
        Ok(Fixture { rlrs, bcgpr, occurrences })
    }

    pub fn queries(&self, kind: QueryKind, count: usize) -> Vec<Query> {
        random_queries(kind, count, &self.occurrences, 17)
    }
}
