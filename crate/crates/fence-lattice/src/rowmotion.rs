//! Rowmotion on the ideal lattice: the generator sends an ideal to the
//! complement of the filter generated by its maximal elements. Orbit
//! decomposition and exact orbit-average checks for statistics.

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::poset::{ElementSet, Poset};
use crate::rank::enumerate_ideals;

/// One rowmotion step. The maximal elements of `ideal` generate a filter
/// `U`; the result is the complement of `U` in the ground set, which is again
/// an ideal.
pub fn rho(poset: &Poset, ideal: &ElementSet) -> Result<ElementSet> {
    if !poset.is_ideal(ideal) {
        return Err(Error::NotAnIdeal);
    }
    let n = poset.n();
    // maximal elements of the ideal
    let mut frontier: Vec<usize> = ideal
        .iter()
        .filter(|&x| !poset.upper_covers(x).iter().any(|&u| ideal.contains(u)))
        .collect();
    // upward closure
    let mut filter = ElementSet::empty();
    while let Some(x) = frontier.pop() {
        if filter.contains(x) {
            continue;
        }
        filter.insert(x);
        frontier.extend(poset.upper_covers(x));
    }
    let result = filter.complement(n);
    debug_assert!(poset.is_ideal(&result));
    Ok(result)
}

/// A rowmotion orbit: the cyclic list of ideals visited from its canonical
/// representative (the lexicographically smallest member).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    ideals: Vec<ElementSet>,
}

impl Orbit {
    pub fn ideals(&self) -> &[ElementSet] {
        &self.ideals
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    /// Sum of `#I` over the orbit.
    pub fn size_total(&self) -> u64 {
        self.ideals.iter().map(|s| s.len() as u64).sum()
    }

    pub fn statistic_total(&self, stat: impl Fn(&ElementSet) -> u64) -> u64 {
        self.ideals.iter().map(stat).sum()
    }

    pub fn average_size(&self) -> Rational64 {
        Rational64::new(self.size_total() as i64, self.len() as i64)
    }
}

/// Decomposes the full set of ideals into rowmotion orbits. Orbits are listed
/// by their canonical representative in lexicographic order.
pub fn orbits(poset: &Poset) -> Result<Vec<Orbit>> {
    let all: Vec<ElementSet> = enumerate_ideals(poset)?.collect();
    let mut visited = std::collections::HashSet::new();
    let mut out = Vec::new();
    for &start in &all {
        if visited.contains(&start.bits()) {
            continue;
        }
        let mut ideals = Vec::new();
        let mut cur = start;
        loop {
            let fresh = visited.insert(cur.bits());
            assert!(fresh, "rowmotion orbits must not overlap");
            ideals.push(cur);
            cur = rho(poset, &cur)?;
            if cur == start {
                break;
            }
        }
        out.push(Orbit { ideals });
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct OrbitAverage {
    pub length: usize,
    pub total: u64,
    pub average: Rational64,
}

#[derive(Debug, Clone)]
pub struct MesicReport {
    pub constant: Rational64,
    pub orbits: Vec<OrbitAverage>,
    /// True iff every orbit average equals the constant exactly.
    pub pass: bool,
}

/// Checks whether `stat` averages to `c` over every rowmotion orbit.
pub fn check_mesic(
    poset: &Poset,
    stat: impl Fn(&ElementSet) -> u64,
    c: Rational64,
) -> Result<MesicReport> {
    let mut rows = Vec::new();
    let mut pass = true;
    for orbit in orbits(poset)? {
        let total = orbit.statistic_total(&stat);
        let average = Rational64::new(total as i64, orbit.len() as i64);
        pass &= average == c;
        rows.push(OrbitAverage {
            length: orbit.len(),
            total,
            average,
        });
    }
    Ok(MesicReport {
        constant: c,
        orbits: rows,
        pass,
    })
}

/// The orbit-average check for ideal size against `n/2`.
pub fn check_size_mesic(poset: &Poset) -> Result<MesicReport> {
    let c = Rational64::new(poset.n() as i64, 2);
    check_mesic(poset, |s| s.len() as u64, c)
}
