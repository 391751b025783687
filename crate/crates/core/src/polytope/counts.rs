//! Closed-form face counts of the root polytope and the Voronoi cell of the
//! root lattices, and the comparison table against enumeration.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;

use serde::{Deserialize, Serialize};

use super::FaceLattice;
use crate::coxeter::{Family, LatticeSpec};
use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountTarget {
    RootPolytope,
    VoronoiCell,
}

fn factorial(n: u32) -> u128 {
    (1..=n as u128).product()
}

fn binomial(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Number of `d`-faces predicted by the closed formulas.
///
/// For `D_n` the piecewise lines overlap at `n = 3, d = 1`; there the
/// result is `OutOfValidityRange` and enumeration is authoritative.
pub fn facet_counts_formula(spec: &LatticeSpec, target: CountTarget, d: usize) -> Result<u128, Error> {
    spec.require_root()?;
    let n = spec.rank();
    if d >= n {
        return Err(Error::OutOfValidityRange(format!("d = {d} for rank {n}")));
    }
    let (n, d) = (n as u32, d as u32);
    match (spec.family(), target) {
        (Family::A, CountTarget::RootPolytope) => {
            Ok(factorial(n + 1) / (factorial(n - 1 - d) * factorial(d + 2)) * ((1u128 << (d + 2)) - 2))
        }
        (Family::A, CountTarget::VoronoiCell) => {
            Ok(factorial(n + 1) / (factorial(n + 1 - d) * factorial(d)) * ((1u128 << (n + 1 - d)) - 2))
        }
        (Family::D, CountTarget::RootPolytope) => d_root_count(n, d),
        (Family::D, CountTarget::VoronoiCell) => d_root_count(n, n - d - 1),
    }
}

fn d_root_count(n: u32, d: u32) -> Result<u128, Error> {
    let n128 = n as u128;
    let mut hits: alloc::vec::Vec<u128> = alloc::vec::Vec::new();
    if d == 0 {
        hits.push(2 * n128 * (n128 - 1));
    }
    if d == 1 {
        hits.push(4 * n128 * (n128 - 1) * (n128 - 2));
    }
    if (2..=n.saturating_sub(3)).contains(&d) {
        let k = n - d - 1;
        hits.push((1u128 << (d + 1)) * binomial(n, k) * (2 * k as u128 + 1));
    }
    if d == n - 2 {
        hits.push(3 * (1u128 << (n - 1)) * n128);
    }
    if d == n - 1 {
        hits.push((1u128 << n) + 2 * n128);
    }
    match hits.as_slice() {
        [one] => Ok(*one),
        [] => Err(Error::OutOfValidityRange(format!("no D_{n} line for d = {d}"))),
        _ => Err(Error::OutOfValidityRange(format!(
            "D_{n} lines collide at d = {d}: {hits:?}"
        ))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountEntry {
    pub formula: Option<u128>,
    pub enumerated: Option<u128>,
    /// `Some(true/false)` when both values exist.
    pub agree: Option<bool>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetCountTable {
    pub counts: BTreeMap<usize, CountEntry>,
}

impl FacetCountTable {
    /// Dimensions where formula and enumeration disagree.
    pub fn disagreements(&self) -> impl Iterator<Item = (&usize, &CountEntry)> {
        self.counts.iter().filter(|(_, e)| e.agree == Some(false))
    }

    pub fn enumerated(&self, d: usize) -> Option<u128> {
        self.counts.get(&d).and_then(|e| e.enumerated)
    }
}

/// Formula values (root lattices only) against enumerated counts.
pub fn facet_count_table(
    spec: &LatticeSpec,
    target: CountTarget,
    lattice: Option<&FaceLattice>,
) -> FacetCountTable {
    let mut counts = BTreeMap::new();
    let dims = lattice.map_or(spec.rank(), |l| l.dim);
    let enumerated = lattice.map(FaceLattice::counts);
    for d in 0..dims {
        let (formula, note) = match facet_counts_formula(spec, target, d) {
            Ok(v) => (Some(v), None),
            Err(e) => (None, Some(format!("{e}"))),
        };
        let enumerated = enumerated
            .as_ref()
            .and_then(|c| c.get(d).copied().flatten())
            .map(|c| c as u128);
        let agree = match (formula, enumerated) {
            (Some(a), Some(b)) => Some(a == b),
            _ => None,
        };
        counts.insert(
            d,
            CountEntry {
                formula,
                enumerated,
                agree,
                note,
            },
        );
    }
    FacetCountTable { counts }
}

/// `Σ (−1)^d N_d = 1 − (−1)^n` over enumerated counts, falling back to the
/// formula value where no enumeration is present.
pub fn euler_check(table: &FacetCountTable, n: usize) -> Result<bool, Error> {
    let mut sum: i128 = 0;
    for d in 0..n {
        let entry = table.counts.get(&d).ok_or(Error::MissingCounts(d))?;
        let v = entry
            .enumerated
            .or(entry.formula)
            .ok_or(Error::MissingCounts(d))? as i128;
        sum += if d % 2 == 0 { v } else { -v };
    }
    let expected = if n % 2 == 0 { 0 } else { 2 };
    Ok(sum == expected)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: usize) -> LatticeSpec {
        LatticeSpec::root(Family::A, n).unwrap()
    }

    fn d(n: usize) -> LatticeSpec {
        LatticeSpec::root(Family::D, n).unwrap()
    }

    fn row(spec: &LatticeSpec, t: CountTarget) -> alloc::vec::Vec<u128> {
        (0..spec.rank())
            .map(|k| facet_counts_formula(spec, t, k).unwrap())
            .collect()
    }

    #[test]
    fn a4_tables() {
        assert_eq!(row(&a(4), CountTarget::RootPolytope), [20, 60, 70, 30]);
        assert_eq!(row(&a(4), CountTarget::VoronoiCell), [30, 70, 60, 20]);
    }

    #[test]
    fn d_tables() {
        assert_eq!(row(&d(4), CountTarget::RootPolytope), [24, 96, 96, 24]);
        assert_eq!(row(&d(5), CountTarget::RootPolytope), [40, 240, 400, 240, 42]);
        assert_eq!(row(&d(5), CountTarget::VoronoiCell), [42, 240, 400, 240, 40]);
        let spec = d(6);
        assert_eq!(facet_counts_formula(&spec, CountTarget::VoronoiCell, 0).unwrap(), 64 + 12);
        assert_eq!(facet_counts_formula(&spec, CountTarget::VoronoiCell, 5).unwrap(), 60);
    }

    #[test]
    fn d3_collision_is_reported() {
        assert!(matches!(
            facet_counts_formula(&d(3), CountTarget::RootPolytope, 1),
            Err(Error::OutOfValidityRange(_))
        ));
        assert_eq!(facet_counts_formula(&d(3), CountTarget::RootPolytope, 2).unwrap(), 14);
    }

    #[test]
    fn euler_on_formulas() {
        for n in 2..=8 {
            for t in [CountTarget::RootPolytope, CountTarget::VoronoiCell] {
                assert!(euler_check(&facet_count_table(&a(n), t, None), n).unwrap());
            }
        }
        for n in 4..=8 {
            assert!(euler_check(&facet_count_table(&d(n), CountTarget::RootPolytope, None), n).unwrap());
        }
        let hex = FacetCountTable {
            counts: [(0, 6), (1, 6)]
                .into_iter()
                .map(|(k, v)| {
                    (k, CountEntry { formula: None, enumerated: Some(v), agree: None, note: None })
                })
                .collect(),
        };
        assert!(euler_check(&hex, 2).unwrap());
        assert_eq!(euler_check(&hex, 3), Err(Error::MissingCounts(2)));
    }
}
