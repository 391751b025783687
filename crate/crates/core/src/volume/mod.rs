//! Exact volumes from closed forms and recurrences, the numeric oracle, and
//! the identities that tie them together.

mod oracle;

pub use oracle::{hull_facets, numeric_volume_oracle};

use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::coxeter::{fundamental_weights, highest_root, Family, LatticeSpec, Variant};
use crate::error::Error;
use crate::exactnum::{ExactScalar, SurdValue};
use crate::polytope::{
    delone_cells_at_origin, facet_counts_formula, facet_geometry_a, facet_geometry_d, CountTarget,
};

fn q(p: i64, d: i64) -> ExactScalar {
    ExactScalar::new(p, d).expect("nonzero denominator")
}

fn factorial(n: usize) -> ExactScalar {
    (1..=n as i64).fold(ExactScalar::one(), |acc, k| &acc * &ExactScalar::from_integer(k))
}

fn pow2(k: usize) -> ExactScalar {
    ExactScalar::from_integer(2).pow(k as i32)
}

/// Regular `n`-simplex of edge `√2`, by `Vol(α_n) = (1/n)√((n+1)/n) Vol(α_{n−1})`
/// from `Vol(α_1) = √2`.
pub fn simplex_volume(n: usize) -> SurdValue {
    (2..=n).fold(SurdValue::sqrt_int(2), |acc, k| {
        let step = SurdValue::sqrt_rational(&q(k as i64 + 1, k as i64)).scale(&q(1, k as i64));
        &acc * &step
    })
}

/// Cross-polytope `{±l_i}`: `2^n` pyramids of height `1/√n` over `α_{n−1}`.
pub fn cross_polytope_volume(n: usize) -> ExactScalar {
    let base = if n == 1 {
        SurdValue::from_integer(1)
    } else {
        simplex_volume(n - 1)
    };
    let height = SurdValue::sqrt_rational(&q(1, n as i64));
    let v = (&base * &height).scale(&(&pow2(n) / &ExactScalar::from_integer(n as i64)));
    v.as_rational().cloned().expect("rational volume")
}

/// Hemicube `(ω_n)_{d_n}`: from `Vol(hγ_3) = 1/3`, each step adds
/// `2^{k−2}(k−2)/k!`.
pub fn hemicube_volume(n: usize) -> Result<ExactScalar, Error> {
    if n < 3 {
        return Err(Error::RankTooSmall { rank: n, min: 3 });
    }
    Ok((4..=n).fold(q(1, 3), |acc, k| {
        let step = &(&pow2(k - 2) * &ExactScalar::from_integer(k as i64 - 2)) / &factorial(k);
        &acc + &step
    }))
}

/// Volume of `V(0)`: `√(n+1)` for `A_n`, `2` for `D_n`, `1/√(n+1)` for
/// `A_n*`, `1/2` for `D_n*`.
pub fn voronoi_volume(spec: &LatticeSpec) -> SurdValue {
    let n = spec.rank();
    match (spec.family(), spec.variant()) {
        (Family::A, Variant::Root) if n == 1 => {
            // the segment [-ω, ω]
            let w = &fundamental_weights(spec)[0];
            SurdValue::sqrt_rational(&w.norm_squared()).scale(&ExactScalar::from_integer(2))
        }
        (_, Variant::Root) => pyramid_volume_identity(spec).expect("root lattice").total,
        (Family::A, Variant::Weight) => SurdValue::sqrt_int(n as u64 + 1)
            .recip()
            .expect("nonzero"),
        (Family::D, Variant::Weight) => SurdValue::rational(q(1, 2)),
    }
}

/// `1/(n!√(n+1))` for `A_n`, `1/(2^{n−2} n!)` for `D_n`.
pub fn fundamental_simplex_volume(spec: &LatticeSpec) -> Result<SurdValue, Error> {
    spec.require_root()?;
    let n = spec.rank();
    let fact = factorial(n);
    Ok(match spec.family() {
        Family::A => SurdValue::sqrt_int(n as u64 + 1)
            .scale(&fact)
            .recip()
            .expect("nonzero"),
        Family::D => SurdValue::rational((&pow2(n - 2) * &fact).recip().expect("nonzero")),
    })
}

/// Exact value next to an oracle value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VolumeResult {
    pub symbolic: Option<SurdValue>,
    pub numeric: Option<f64>,
    pub relative_gap: Option<f64>,
}

impl VolumeResult {
    pub fn new(symbolic: Option<SurdValue>, numeric: Option<f64>) -> Self {
        let relative_gap = match (&symbolic, numeric) {
            (Some(s), Some(x)) => Some(relative_gap(x, s.to_f64())),
            _ => None,
        };
        VolumeResult {
            symbolic,
            numeric,
            relative_gap,
        }
    }

    pub fn within(&self, tolerance: f64) -> bool {
        self.relative_gap.is_some_and(|g| g <= tolerance)
    }
}

/// `|x − y| / max(1, |y|)`.
pub fn relative_gap(x: f64, y: f64) -> f64 {
    Float::abs(x - y) / Float::abs(y).max(1.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellVolume {
    pub label: String,
    pub vertices: usize,
    pub numeric: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeloneSumReport {
    pub spec: LatticeSpec,
    pub cells: Vec<CellVolume>,
    pub sum: f64,
    pub voronoi: SurdValue,
    pub relative_gap: f64,
}

impl DeloneSumReport {
    pub fn agrees(&self, tolerance: f64) -> bool {
        self.relative_gap <= tolerance
    }
}

/// Oracle volumes of the Delone cells at the origin against `Vol V(0)`.
pub fn delone_volume_sum_check(spec: &LatticeSpec) -> Result<DeloneSumReport, Error> {
    spec.require_root()?;
    let mut cells = Vec::new();
    for cell in delone_cells_at_origin(spec)? {
        let numeric = numeric_volume_oracle(&cell.vertices)?;
        cells.push(CellVolume {
            label: cell.label.clone(),
            vertices: cell.vertex_count(),
            numeric,
        });
    }
    let sum: f64 = cells.iter().map(|c| c.numeric).sum();
    let voronoi = voronoi_volume(spec);
    Ok(DeloneSumReport {
        spec: *spec,
        relative_gap: relative_gap(sum, voronoi.to_f64()),
        cells,
        sum,
        voronoi,
    })
}

/// `Vol V(0)` as facets × (1/n) × (centre distance) × (facet volume). The
/// facet normals are `ω_1 + ω_n` for `A_n` and the highest root for `D_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PyramidReport {
    pub spec: LatticeSpec,
    pub facets: u128,
    pub height: SurdValue,
    pub facet_volume: SurdValue,
    pub total: SurdValue,
    pub expected: SurdValue,
    pub agrees: bool,
}

pub fn pyramid_volume_identity(spec: &LatticeSpec) -> Result<PyramidReport, Error> {
    spec.require_root()?;
    let n = spec.rank();
    let weights = fundamental_weights(spec);
    let facets = facet_counts_formula(spec, CountTarget::VoronoiCell, n - 1)?;
    let (normal, facet_volume, expected) = match spec.family() {
        Family::A => (
            &weights[0] + &weights[n - 1],
            facet_geometry_a(n)?.volume,
            SurdValue::sqrt_int(n as u64 + 1),
        ),
        Family::D => (
            highest_root(spec),
            facet_geometry_d(n)?.volume,
            SurdValue::from_integer(2),
        ),
    };
    let height = SurdValue::sqrt_rational(&normal.norm_squared()).scale(&q(1, 2));
    let count = ExactScalar::from_integer(i64::try_from(facets).expect("facet count fits i64"));
    let total = (&height * &facet_volume).scale(&(&count / &ExactScalar::from_integer(n as i64)));
    Ok(PyramidReport {
        spec: *spec,
        facets,
        agrees: total == expected,
        height,
        facet_volume,
        total,
        expected,
    })
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

    #[test]
    fn simplex_values() {
        assert_eq!(simplex_volume(1), SurdValue::sqrt_int(2));
        assert_eq!(simplex_volume(2), SurdValue::sqrt_int(3).scale(&q(1, 2)));
        assert_eq!(simplex_volume(4), SurdValue::sqrt_int(5).scale(&q(1, 24)));
    }

    #[test]
    fn cross_and_hemicube_values() {
        assert_eq!(cross_polytope_volume(1), q(2, 1));
        assert_eq!(cross_polytope_volume(3), q(4, 3));
        assert_eq!(cross_polytope_volume(4), q(2, 3));
        assert_eq!(hemicube_volume(3).unwrap(), q(1, 3));
        assert_eq!(hemicube_volume(4).unwrap(), q(2, 3));
        assert_eq!(hemicube_volume(5).unwrap(), q(13, 15));
        assert_eq!(hemicube_volume(2), Err(Error::RankTooSmall { rank: 2, min: 3 }));
    }

    #[test]
    fn voronoi_values() {
        assert_eq!(voronoi_volume(&a(4)), SurdValue::sqrt_int(5));
        assert_eq!(voronoi_volume(&a(2)), SurdValue::sqrt_int(3));
        assert_eq!(voronoi_volume(&a(1)), SurdValue::sqrt_int(2));
        assert_eq!(voronoi_volume(&d(7)), SurdValue::from_integer(2));
        let a4w = LatticeSpec::weight(Family::A, 4).unwrap();
        assert_eq!(voronoi_volume(&a4w), SurdValue::sqrt_int(5).scale(&q(1, 5)));
    }

    #[test]
    fn fundamental_simplex_values() {
        assert_eq!(
            fundamental_simplex_volume(&a(4)).unwrap(),
            SurdValue::sqrt_int(5).scale(&q(1, 120))
        );
        assert_eq!(fundamental_simplex_volume(&d(4)).unwrap(), SurdValue::rational(q(1, 96)));
        assert_eq!(fundamental_simplex_volume(&d(3)).unwrap(), SurdValue::rational(q(1, 12)));
    }

    #[test]
    fn pyramid_identities() {
        let r = pyramid_volume_identity(&a(4)).unwrap();
        assert_eq!(r.facets, 20);
        assert!(r.agrees);
        let r = pyramid_volume_identity(&d(3)).unwrap();
        assert_eq!(r.facets, 12);
        // each pyramid has volume 1/6
        let one_pyramid = (&r.height * &r.facet_volume).scale(&q(1, 3));
        assert_eq!(one_pyramid, SurdValue::rational(q(1, 6)));
        assert!(r.agrees);
        let r = pyramid_volume_identity(&d(4)).unwrap();
        let one_pyramid = (&r.height * &r.facet_volume).scale(&q(1, 4));
        assert_eq!(one_pyramid, SurdValue::rational(q(1, 12)));
    }
}
