//! Compositions: ordered lists of positive integer parts, the seed of every
//! poset in this crate.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A composition `(b_1, ..., b_s)` of `m = b_1 + ... + b_s` into positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<u32>,
}

impl Composition {
    /// Builds a composition, rejecting empty part lists and zero parts.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidComposition("no parts".into()));
        }
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidComposition("parts must be positive".into()));
        }
        Ok(Self { parts })
    }

    /// Convenience constructor from a slice literal; panics on invalid input.
    /// Intended for fixtures and examples where the parts are spelled out.
    pub fn of(parts: &[u32]) -> Self {
        Self::new(parts.to_vec()).expect("literal composition must be valid")
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of parts `s`.
    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    /// Sum of the parts.
    pub fn total(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// The reversal `(b_s, ..., b_1)`. An involution.
    pub fn reversed(&self) -> Self {
        let mut parts = self.parts.clone();
        parts.reverse();
        Self { parts }
    }

    /// Reversal for circular (even-parts) compositions: the first part stays
    /// anchored and the rest reverse, `(b_1, b_s, b_{s-1}, ..., b_2)`. This is
    /// the composition of the mirrored circular fence read from the same base
    /// element. An involution.
    pub fn circular_reversed(&self) -> Self {
        let mut parts = Vec::with_capacity(self.parts.len());
        parts.push(self.parts[0]);
        parts.extend(self.parts[1..].iter().rev().copied());
        Self { parts }
    }
}

impl FromStr for Composition {
    type Err = Error;

    /// Parses the comma-separated form, e.g. `"6,2,1,2,3,1,6"`.
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<u32>()
                    .map_err(|_| Error::InvalidComposition(format!("bad part {tok:?}")))
            })
            .collect::<Result<Vec<u32>>>()?;
        Composition::new(parts)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in &self.parts {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

/// All compositions with total in `1..=max_total`, ordered by total and then
/// lexicographically by parts. The order is the canonical sweep order used by
/// the CLI, so findings are resumable.
pub fn compositions(max_total: u32) -> impl Iterator<Item = Composition> {
    (1..=max_total).flat_map(|m| compositions_of_total(m))
}

/// All compositions of exactly `total`, in lexicographic order.
pub fn compositions_of_total(total: u32) -> Vec<Composition> {
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    fill(total, &mut prefix, &mut out);
    out
}

fn fill(remaining: u32, prefix: &mut Vec<u32>, out: &mut Vec<Composition>) {
    if remaining == 0 {
        out.push(Composition {
            parts: prefix.clone(),
        });
        return;
    }
    for p in 1..=remaining {
        prefix.push(p);
        fill(remaining - p, prefix, out);
        prefix.pop();
    }
}
