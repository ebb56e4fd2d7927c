//! Query workloads: the one-query-per-line text format and seeded random
//! generation.
//!
//! Text lines are `a <i>`, `r <c> <i>` or `s <c> <j>`. Blank lines and lines
//! starting with `#` are skipped.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Query {
    Access(usize),
    Rank(u32, usize),
    Select(u32, i64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QueryKind {
    Access,
    Rank,
    Select,
}

impl QueryKind {
    pub const ALL: [QueryKind; 3] = [QueryKind::Access, QueryKind::Rank, QueryKind::Select];

    pub fn name(self) -> &'static str {
        match self {
            QueryKind::Access => "access",
            QueryKind::Rank => "rank",
            QueryKind::Select => "select",
        }
    }
}

impl Query {
    pub fn kind(&self) -> QueryKind {
        match self {
            Query::Access(_) => QueryKind::Access,
            Query::Rank(..) => QueryKind::Rank,
            Query::Select(..) => QueryKind::Select,
        }
    }

    /// Parses one workload line.
    pub fn parse(line: &str) -> Result<Self> {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let num = |s: &str, what: &str| -> Result<i64> {
            s.parse::<i64>()
                .map_err(|_| Error::invalid(format!("bad {what} {s:?}")))
        };
        let unsigned = |s: &str, what: &str| -> Result<u64> {
            let v = num(s, what)?;
            u64::try_from(v).map_err(|_| Error::invalid(format!("{what} must be non-negative")))
        };
        match fields.as_slice() {
            ["a", i] => Ok(Query::Access(unsigned(i, "position")? as usize)),
            ["r", c, i] => Ok(Query::Rank(
                symbol(unsigned(c, "symbol")?)?,
                unsigned(i, "position")? as usize,
            )),
            ["s", c, j] => Ok(Query::Select(symbol(unsigned(c, "symbol")?)?, num(j, "occurrence")?)),
            _ => Err(Error::invalid(format!("unrecognized query {line:?}"))),
        }
    }
}

fn symbol(v: u64) -> Result<u32> {
    u32::try_from(v).map_err(|_| Error::invalid(format!("symbol {v} exceeds 32 bits")))
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Query::Access(i) => write!(f, "a {i}"),
            Query::Rank(c, i) => write!(f, "r {c} {i}"),
            Query::Select(c, j) => write!(f, "s {c} {j}"),
        }
    }
}

/// Parses a workload, reporting the 1-based line number of the first bad line.
pub fn parse_workload(text: &str) -> Result<Vec<Query>> {
    let mut out = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let q = Query::parse(line).map_err(|e| Error::invalid(format!("line {}: {e}", no + 1)))?;
        out.push(q);
    }
    Ok(out)
}

/// Seeded random queries of one kind over a string of length `n` whose letter
/// `c` occurs `occurrences[c]` times.
///
/// Rank and select draw their letter uniformly among letters that occur;
/// select draws `j` uniformly from `1..=occurrences[c]`.
pub fn random_queries(kind: QueryKind, count: usize, occurrences: &[usize], seed: u64) -> Vec<Query> {
    let n: usize = occurrences.iter().sum();
    assert!(n > 0, "cannot draw queries over an empty string");
    let present: Vec<u32> = (0..occurrences.len() as u32)
        .filter(|&c| occurrences[c as usize] > 0)
        .collect();
    let stream = match kind {
        QueryKind::Access => 1,
        QueryKind::Rank => 2,
        QueryKind::Select => 3,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    (0..count)
        .map(|_| match kind {
            QueryKind::Access => Query::Access(rng.random_range(0..n)),
            QueryKind::Rank => {
                let c = present[rng.random_range(0..present.len())];
                Query::Rank(c, rng.random_range(0..n))
            }
            QueryKind::Select => {
                let c = present[rng.random_range(0..present.len())];
                Query::Select(c, rng.random_range(1..=occurrences[c as usize] as i64))
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_lines() {
        assert_eq!(Query::parse("a 0").unwrap(), Query::Access(0));
        assert_eq!(Query::parse("r 3 10").unwrap(), Query::Rank(3, 10));
        assert_eq!(Query::parse("s 2  1").unwrap(), Query::Select(2, 1));
        assert_eq!(Query::parse("s 2 -4").unwrap(), Query::Select(2, -4));
        assert!(Query::parse("r 3").is_err());
        assert!(Query::parse("a -1").is_err());
        assert!(Query::parse("x 1").is_err());
        assert!(Query::parse("r 5000000000 1").is_err());
    }

    #[test]
    fn workload_reports_line_numbers() {
        let qs = parse_workload("# header\na 1\n\nr 0 2\n").unwrap();
        assert_eq!(qs, vec![Query::Access(1), Query::Rank(0, 2)]);
        let err = parse_workload("a 1\nr x 2\n").unwrap_err().to_string();
        assert!(err.contains("line 2"), "{err}");
    }

    #[test]
    fn display_round_trips() {
        for q in [Query::Access(7), Query::Rank(2, 9), Query::Select(1, 0)] {
            assert_eq!(Query::parse(&q.to_string()).unwrap(), q);
        }
    }

    #[test]
    fn random_queries_are_seeded_and_in_bounds() {
        let occ = [14, 4, 0, 7];
        for kind in QueryKind::ALL {
            let a = random_queries(kind, 500, &occ, 42);
            assert_eq!(a, random_queries(kind, 500, &occ, 42));
            assert_ne!(a, random_queries(kind, 500, &occ, 43));
            for q in a {
                match q {
                    Query::Access(i) => assert!(i < 25),
                    Query::Rank(c, i) => assert!(c != 2 && i < 25),
                    Query::Select(c, j) => assert!(c != 2 && j >= 1 && j as usize <= occ[c as usize]),
                }
            }
        }
    }
}
