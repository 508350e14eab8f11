//! The `(p, q)` index of an induced norm.

use std::fmt;
use std::str::FromStr;

use crate::dense::NormIndex;
use crate::error::{Error, Result};

/// Domain norm `p` and codomain norm `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormPair {
    pub p: NormIndex,
    pub q: NormIndex,
}

impl NormPair {
    pub const fn new(p: NormIndex, q: NormIndex) -> Self {
        NormPair { p, q }
    }

    /// All nine pairs, row-major with `p` as the row.
    pub const ALL: [NormPair; 9] = {
        use NormIndex::*;
        [
            NormPair::new(One, One),
            NormPair::new(One, Two),
            NormPair::new(One, Infinity),
            NormPair::new(Two, One),
            NormPair::new(Two, Two),
            NormPair::new(Two, Infinity),
            NormPair::new(Infinity, One),
            NormPair::new(Infinity, Two),
            NormPair::new(Infinity, Infinity),
        ]
    };

    /// `(2,1)`, `(∞,1)` and `(∞,2)` need sign enumeration.
    pub fn is_exponential(&self) -> bool {
        use NormIndex::*;
        matches!((self.p, self.q), (Two, One) | (Infinity, One) | (Infinity, Two))
    }

    /// Exponent of the enumeration for an `m x n` matrix, if any.
    pub fn enumeration_exponent(&self, rows: usize, cols: usize) -> Option<usize> {
        use NormIndex::*;
        match (self.p, self.q) {
            (Two, One) => Some(rows),
            (Infinity, One) | (Infinity, Two) => Some(cols),
            _ => None,
        }
    }
}

impl fmt::Display for NormPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.p, self.q)
    }
}

impl FromStr for NormPair {
    type Err = Error;

    /// Parses `p,q`, e.g. `2,inf`.
    fn from_str(s: &str) -> Result<Self> {
        let (p, q) = s
            .split_once(',')
            .ok_or_else(|| Error::Unsupported(format!("norm pair {s:?} (expected p,q)")))?;
        Ok(NormPair::new(p.parse()?, q.parse()?))
    }
}
