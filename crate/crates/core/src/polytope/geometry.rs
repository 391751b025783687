//! Facets of the root-lattice Voronoi cells: the `A_n` rhombohedron and the
//! `D_n` dipyramid.

use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::coxeter::{fundamental_weights, orbit_vectors, Family, LatticeSpec};
use crate::error::Error;
use crate::exactnum::{dot, ExactScalar, ExactVector, SurdValue};
use crate::linalg;

/// Facet of the `A_n` Voronoi cell orthogonal to `ω_1 + ω_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RhombohedronFacet {
    pub n: usize,
    /// `2^{n−1}` vertices, sorted.
    pub vertices: Vec<ExactVector>,
    /// Edge generators `k_i = ω_i − ω_{i+1}`, `i = 1..n−1`.
    pub generators: Vec<ExactVector>,
    pub gram: Vec<Vec<ExactScalar>>,
    pub gram_determinant: ExactScalar,
    /// `cos φ` between any two generators.
    pub cos_angle: ExactScalar,
    /// Rows `k_i` in the orthonormal basis `u_m / ‖u_m‖`, `m = 2..n`.
    pub generator_matrix: Vec<Vec<SurdValue>>,
    pub determinant: SurdValue,
    pub volume: SurdValue,
}

/// `u_m = l_1 + l_{n+1} + Σ_{j=2}^{m−1} l_j − m l_m`, an orthogonal basis of
/// the facet hyperplane direction.
fn primed_basis(n: usize) -> Vec<ExactVector> {
    (2..=n)
        .map(|m| {
            let mut c = alloc::vec![0i64; n + 1];
            c[0] = 1;
            c[n] = 1;
            for slot in c.iter_mut().take(m - 1).skip(1) {
                *slot = 1;
            }
            c[m - 1] = -(m as i64);
            ExactVector::from_integers(&c)
        })
        .collect()
}

pub fn facet_geometry_a(n: usize) -> Result<RhombohedronFacet, Error> {
    if n < 2 {
        return Err(Error::RankTooSmall { rank: n, min: 2 });
    }
    let spec = LatticeSpec::root(Family::A, n)?;
    let weights = fundamental_weights(&spec);
    let gens: Vec<usize> = (1..n - 1).collect();
    let vertices = orbit_vectors(&spec, &weights, &gens, None)?;

    let generators: Vec<ExactVector> = weights.windows(2).map(|w| &w[0] - &w[1]).collect();
    let gram = linalg::gram(&generators);
    let gram_determinant = linalg::determinant(&gram);
    let cos_angle = if n >= 3 {
        &gram[0][1] / &gram[0][0]
    } else {
        ExactScalar::zero()
    };

    let basis = primed_basis(n);
    let generator_matrix: Vec<Vec<SurdValue>> = generators
        .iter()
        .map(|k| {
            basis
                .iter()
                .map(|u| {
                    let c = dot(k, u).expect("same dimension");
                    let unit = SurdValue::sqrt_rational(&(&(&c * &c) / &u.norm_squared()));
                    if c.is_negative() {
                        -unit
                    } else {
                        unit
                    }
                })
                .collect()
        })
        .collect();
    // the matrix is upper triangular, so the determinant is the diagonal product
    debug_assert!(generator_matrix
        .iter()
        .enumerate()
        .all(|(r, row)| row[..r].iter().all(SurdValue::is_zero)));
    let determinant = (0..n - 1).fold(SurdValue::from_integer(1), |acc, r| {
        &acc * &generator_matrix[r][r]
    });
    let volume = if determinant.coefficient().is_negative() {
        -determinant.clone()
    } else {
        determinant.clone()
    };
    Ok(RhombohedronFacet {
        n,
        vertices,
        generators,
        gram,
        gram_determinant,
        cos_angle,
        generator_matrix,
        determinant,
        volume,
    })
}

/// Facet of the `D_n` Voronoi cell orthogonal to `ω_2`: a dipyramid with
/// apexes `l_1`, `l_2` over the `(n−2)`-cube `½(l_1 + l_2 ± l_3 … ± l_n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DipyramidFacet {
    pub n: usize,
    pub apexes: Vec<ExactVector>,
    pub base: Vec<ExactVector>,
    pub center: ExactVector,
    /// All vertices, sorted.
    pub vertices: Vec<ExactVector>,
    /// Distance from each apex to the base.
    pub height: SurdValue,
    pub base_volume: ExactScalar,
    pub volume: SurdValue,
}

pub fn facet_geometry_d(n: usize) -> Result<DipyramidFacet, Error> {
    if n < 3 {
        return Err(Error::RankTooSmall { rank: n, min: 3 });
    }
    let apexes = alloc::vec![ExactVector::unit(n, 0), ExactVector::unit(n, 1)];
    let half = ExactScalar::new(1, 2).expect("nonzero");
    let base: Vec<ExactVector> = (0..1u64 << (n - 2))
        .map(|bits| {
            let mut c = alloc::vec![1i64; n];
            for (j, slot) in c.iter_mut().enumerate().skip(2) {
                if bits >> (j - 2) & 1 == 1 {
                    *slot = -1;
                }
            }
            ExactVector::from_scaled(&c, 2).expect("nonzero")
        })
        .collect();
    let center = (&apexes[0] + &apexes[1]).scale(&half);
    let height = SurdValue::sqrt_rational(&(&apexes[0] - &center).norm_squared());
    // base vertices differing in one sign are adjacent
    let edge2 = (&base[0] - &base[1]).norm_squared();
    let edge = SurdValue::sqrt_rational(&edge2)
        .as_rational()
        .cloned()
        .expect("cube edge is rational");
    let base_volume = edge.pow((n - 2) as i32);
    let pyramid = height.scale(&(&base_volume / &ExactScalar::from_integer(n as i64 - 1)));
    let volume = pyramid.scale(&ExactScalar::from_integer(2));
    let mut vertices: Vec<ExactVector> = apexes.iter().chain(&base).cloned().collect();
    vertices.sort();
    Ok(DipyramidFacet {
        n,
        apexes,
        base,
        center,
        vertices,
        height,
        base_volume,
        volume,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> ExactScalar {
        ExactScalar::new(p, d).unwrap()
    }

    #[test]
    fn a4_rhombohedron() {
        let f = facet_geometry_a(4).unwrap();
        assert_eq!(f.vertices.len(), 8);
        assert!(f.generators.iter().all(|k| k.norm_squared() == q(4, 5)));
        assert_eq!(f.cos_angle, q(-1, 4));
        assert_eq!(f.volume, SurdValue::sqrt_rational(&q(2, 5)));
        assert_eq!(f.gram_determinant, q(2, 5));
    }

    #[test]
    fn generator_matrix_pattern() {
        for n in 2..=8 {
            let f = facet_geometry_a(n).unwrap();
            for i in 1..n {
                for m in 2..=n {
                    let expect = if m == i + 1 {
                        SurdValue::sqrt_rational(&q(m as i64, m as i64 + 1))
                    } else if m > i + 1 {
                        -SurdValue::sqrt_rational(&q(1, (m * (m + 1)) as i64))
                    } else {
                        SurdValue::zero()
                    };
                    assert_eq!(f.generator_matrix[i - 1][m - 2], expect, "n={n} i={i} m={m}");
                }
            }
            assert_eq!(f.determinant.square(), q(2, n as i64 + 1));
        }
    }

    #[test]
    fn facet_vertices_on_bisector() {
        let f = facet_geometry_a(5).unwrap();
        let w = fundamental_weights(&LatticeSpec::root(Family::A, 5).unwrap());
        let theta = &w[0] + &w[4];
        let target = &theta.norm_squared() / &ExactScalar::from_integer(2);
        assert!(f.vertices.iter().all(|v| dot(v, &theta).unwrap() == target));
        assert_eq!(f.vertices.len(), 16);
    }

    #[test]
    fn dipyramids() {
        let f4 = facet_geometry_d(4).unwrap();
        assert_eq!(f4.vertices.len(), 6);
        assert_eq!(f4.volume, SurdValue::sqrt_int(2).scale(&q(1, 3)));
        let f5 = facet_geometry_d(5).unwrap();
        assert_eq!(f5.volume, SurdValue::sqrt_int(2).scale(&q(1, 4)));
        let apex_to_base = (&f5.apexes[0] - &f5.base[0]).norm_squared();
        assert_eq!(apex_to_base, q(5, 4));
        let f3 = facet_geometry_d(3).unwrap();
        assert_eq!(f3.vertices.len(), 4);
        // rhombus with diagonals 1 and sqrt(2)
        assert_eq!((&f3.apexes[0] - &f3.apexes[1]).norm_squared(), q(2, 1));
        assert_eq!((&f3.base[0] - &f3.base[1]).norm_squared(), q(1, 1));
        assert_eq!(f3.volume, SurdValue::sqrt_int(2).scale(&q(1, 2)));
        assert!(matches!(facet_geometry_d(2), Err(Error::RankTooSmall { .. })));
    }
}
