//! Compositions of positive integers ("indices") and their combinatorics:
//! weight, depth, admissibility, reversal, and the Hoffman dual.

use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IndexError {
    #[error("cannot parse `{0}` as an index part")]
    Parse(String),
    #[error("index parts must be positive")]
    InvalidPart,
    #[error("operation is undefined for the empty index")]
    Empty,
}

/// A finite sequence of positive integers `(k_1, ..., k_r)`, possibly empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Index {
    parts: Vec<u32>,
}

impl Index {
    pub fn new(parts: Vec<u32>) -> Result<Self, IndexError> {
        if parts.iter().any(|&p| p == 0) {
            return Err(IndexError::InvalidPart);
        }
        Ok(Self { parts })
    }

    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    pub fn single(k: u32) -> Self {
        Self::new(vec![k]).expect("positive part")
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Sum of the parts.
    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    /// Number of parts.
    pub fn depth(&self) -> usize {
        self.parts.len()
    }

    /// Empty, or last part at least 2.
    pub fn is_admissible(&self) -> bool {
        self.parts.last().map_or(true, |&p| p >= 2)
    }

    /// `(k_r, ..., k_1)`.
    pub fn reversed(&self) -> Self {
        let mut parts = self.parts.clone();
        parts.reverse();
        Self { parts }
    }

    /// The Hoffman dual: write the index as weight-many 1s separated by
    /// `weight - 1` gap symbols, `+` inside a part and `,` between parts,
    /// then swap the two symbols and reassemble.
    ///
    /// Internally the gaps are a bit string (true = part boundary) and the
    /// dual is its complement, which makes the involution obvious.
    pub fn hoffman_dual(&self) -> Result<Self, IndexError> {
        if self.parts.is_empty() {
            return Err(IndexError::Empty);
        }
        let mut boundaries = Vec::with_capacity(self.weight() as usize - 1);
        for (idx, &part) in self.parts.iter().enumerate() {
            for _ in 1..part {
                boundaries.push(false);
            }
            if idx + 1 < self.parts.len() {
                boundaries.push(true);
            }
        }
        let mut parts = Vec::new();
        let mut current = 1u32;
        for gap in boundaries {
            // complemented bit: an in-part gap becomes a boundary
            if !gap {
                parts.push(current);
                current = 1;
            } else {
                current += 1;
            }
        }
        parts.push(current);
        Ok(Self { parts })
    }
}

/// All indices of total weight `w`, in lexicographic order of their parts;
/// the weight-0 list holds just the empty index. There are `2^(w-1)`
/// compositions for `w >= 1`.
pub fn compositions(w: u32) -> Vec<Index> {
    if w == 0 {
        return vec![Index::empty()];
    }
    let mut out = Vec::with_capacity(1 << (w - 1).min(20));
    for first in 1..=w {
        for rest in compositions(w - first) {
            let mut parts = vec![first];
            parts.extend_from_slice(rest.parts());
            out.push(Index { parts });
        }
    }
    out
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "empty");
        }
        let text = self
            .parts
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",");
        write!(f, "{text}")
    }
}

impl FromStr for Index {
    type Err = IndexError;

    /// Parses `"k1,k2,...,kr"`; the empty string and the literal `empty`
    /// both denote the empty index.
    fn from_str(s: &str) -> Result<Self, IndexError> {
        let s = s.trim();
        if s.is_empty() || s == "empty" {
            return Ok(Self::empty());
        }
        let mut parts = Vec::new();
        for token in s.split(',') {
            let token = token.trim();
            let value: i64 = token
                .parse()
                .map_err(|_| IndexError::Parse(token.to_string()))?;
            if value <= 0 || value > u32::MAX as i64 {
                return Err(IndexError::InvalidPart);
            }
            parts.push(value as u32);
        }
        Ok(Self { parts })
    }
}
