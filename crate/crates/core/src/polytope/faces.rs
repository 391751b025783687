//! Face enumeration from supporting hyperplanes.
//!
//! Facets are the argmax sets of candidate normals taken from the Weyl
//! orbits of the fundamental weights and of the highest root, widened to
//! adjacent weight sums when that set fails the certificate. Lower faces
//! come from intersecting each `d`-face with every facet and keeping the
//! intersections of affine rank `d − 1`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::OrbitPolytope;
use crate::coxeter::{fundamental_weights, highest_root, orbit_vectors};
use crate::error::Error;
use crate::exactnum::{ExactScalar, ExactVector};
use crate::linalg;

/// A face: sorted vertex indices plus a supporting hyperplane
/// `(x, normal) = offset` that is `≥` every other vertex value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub vertices: Vec<usize>,
    pub normal: ExactVector,
    pub offset: ExactScalar,
}

/// Faces by dimension, `faces_by_dim[d]` for `0 ≤ d < dim`. When
/// `complete` is false only vertices and facets were computed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceLattice {
    pub dim: usize,
    pub faces_by_dim: Vec<Vec<Face>>,
    pub complete: bool,
}

impl FaceLattice {
    pub fn faces(&self, d: usize) -> &[Face] {
        self.faces_by_dim.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn facets(&self) -> &[Face] {
        match self.dim {
            0 => &[],
            d => self.faces(d - 1),
        }
    }

    /// Face count per dimension; `None` where not computed.
    pub fn counts(&self) -> Vec<Option<usize>> {
        (0..self.dim)
            .map(|d| {
                let known = self.complete || d == 0 || d + 1 == self.dim;
                known.then(|| self.faces(d).len())
            })
            .collect()
    }
}

/// Limits for [`enumerate_faces_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceBudget {
    pub max_vertices: usize,
    /// Largest rank for which the full face lattice is built.
    pub full_max_rank: usize,
}

impl Default for FaceBudget {
    fn default() -> Self {
        FaceBudget {
            max_vertices: 50_000,
            full_max_rank: 6,
        }
    }
}

pub fn enumerate_faces(poly: &OrbitPolytope) -> Result<FaceLattice, Error> {
    enumerate_faces_with(poly, &FaceBudget::default())
}

type RawFace = (Vec<usize>, Vec<i64>);

pub fn enumerate_faces_with(poly: &OrbitPolytope, budget: &FaceBudget) -> Result<FaceLattice, Error> {
    let m = poly.vertices.len();
    if m > budget.max_vertices {
        return Err(Error::BudgetExceeded(format!(
            "{m} vertices above limit {}",
            budget.max_vertices
        )));
    }
    if m == 0 {
        return Err(Error::DegenerateInput("empty vertex set".into()));
    }
    let (scale, rows) = linalg::common_integer_frame(&poly.vertices);
    let all: Vec<usize> = (0..m).collect();
    let dim = affine_rank(&rows, &all);
    if dim == 0 {
        return Ok(FaceLattice {
            dim: 0,
            faces_by_dim: Vec::new(),
            complete: true,
        });
    }

    let complete = poly.spec.rank() <= budget.full_max_rank;
    let levels = match build_levels(poly, &rows, dim, m, complete, false) {
        Ok(levels) => levels,
        Err(Error::IncompleteFacets(_)) => build_levels(poly, &rows, dim, m, complete, true)?,
        Err(e) => return Err(e),
    };

    let faces_by_dim = levels
        .into_iter()
        .map(|level| {
            level
                .into_iter()
                .map(|(vertices, normal)| to_face(vertices, normal, &rows, &scale))
                .collect()
        })
        .collect();
    Ok(FaceLattice {
        dim,
        faces_by_dim,
        complete,
    })
}

fn build_levels(
    poly: &OrbitPolytope,
    rows: &[Vec<i64>],
    dim: usize,
    m: usize,
    complete: bool,
    extended: bool,
) -> Result<Vec<Vec<RawFace>>, Error> {
    let facets = find_facets(poly, rows, dim, extended)?;
    let mut levels: Vec<Vec<RawFace>> = alloc::vec![Vec::new(); dim];
    levels[dim - 1] = facets.clone();
    if complete {
        for d in (1..dim).rev() {
            levels[d - 1] = lower_faces(&levels[d], &facets, rows, d);
        }
        check_diamonds(&levels, dim)?;
    } else {
        levels[0] = extreme_vertices(&facets, m);
        check_ridges(&facets, rows, dim)?;
    }
    Ok(levels)
}

fn to_face(vertices: Vec<usize>, normal: Vec<i64>, rows: &[Vec<i64>], scale: &BigInt) -> Face {
    let top = dot_i(&rows[vertices[0]], &normal);
    let offset = ExactScalar::from_big(BigInt::from(top), scale.clone()).expect("positive scale");
    Face {
        vertices,
        normal: ExactVector::from_integers(&normal),
        offset,
    }
}

fn dot_i(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

fn affine_rank(rows: &[Vec<i64>], idx: &[usize]) -> usize {
    let Some((&first, rest)) = idx.split_first() else {
        return 0;
    };
    let diffs: Vec<Vec<i64>> = rest
        .iter()
        .map(|&i| rows[i].iter().zip(&rows[first]).map(|(a, b)| a - b).collect())
        .collect();
    linalg::int_rank(&diffs)
}

fn argmax(rows: &[Vec<i64>], normal: &[i64]) -> Vec<usize> {
    let vals: Vec<i128> = rows.iter().map(|r| dot_i(r, normal)).collect();
    let best = vals.iter().copied().max().unwrap_or(0);
    (0..rows.len()).filter(|&i| vals[i] == best).collect()
}

/// Orbits of the fundamental weights and the highest root; the extended
/// tier adds `ω_i + ω_{i+1}`, needed e.g. by the diplo-simplex of `A_{2k}*`.
fn candidate_normals(poly: &OrbitPolytope, extended: bool) -> Result<Vec<Vec<i64>>, Error> {
    let spec = &poly.spec;
    let weights = fundamental_weights(spec);
    let mut seeds = weights.clone();
    seeds.push(highest_root(spec));
    if extended {
        seeds.extend(weights.windows(2).map(|w| &w[0] + &w[1]));
    }
    let all: Vec<usize> = (0..spec.rank()).collect();
    let orbit = orbit_vectors(spec, &seeds, &all, None)?;
    let mut out = BTreeSet::new();
    for v in &orbit {
        let row = linalg::integer_row(v)
            .iter()
            .map(|x| x.to_i64().expect("small normal"))
            .collect::<Vec<i64>>();
        out.insert(row);
    }
    Ok(out.into_iter().collect())
}

fn find_facets(poly: &OrbitPolytope, rows: &[Vec<i64>], dim: usize, extended: bool) -> Result<Vec<RawFace>, Error> {
    let mut facets: BTreeMap<Vec<usize>, Vec<i64>> = BTreeMap::new();
    let mut rejected: BTreeSet<Vec<usize>> = BTreeSet::new();
    for a in candidate_normals(poly, extended)? {
        let s = argmax(rows, &a);
        if s.len() < dim || facets.contains_key(&s) || rejected.contains(&s) {
            continue;
        }
        if affine_rank(rows, &s) == dim - 1 {
            facets.insert(s, a);
        } else {
            rejected.insert(s);
        }
    }
    if facets.is_empty() {
        return Err(Error::IncompleteFacets("no candidate normal supports a facet".into()));
    }
    Ok(facets.into_iter().collect())
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

fn primitive(mut v: Vec<i64>) -> Vec<i64> {
    let g = v.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
    if g > 1 {
        v.iter_mut().for_each(|x| *x /= g);
    }
    v
}

/// `(d − 1)`-faces from the `d`-faces. Each normal is the sum of the
/// normals of the facets containing the face.
fn lower_faces(upper: &[RawFace], facets: &[RawFace], rows: &[Vec<i64>], d: usize) -> Vec<RawFace> {
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut rejected: BTreeSet<Vec<usize>> = BTreeSet::new();
    for (f, _) in upper {
        for (g, _) in facets {
            if is_subset(f, g) {
                continue;
            }
            let s = intersect(f, g);
            if s.len() < d || found.contains(&s) || rejected.contains(&s) {
                continue;
            }
            if affine_rank(rows, &s) + 1 == d {
                found.insert(s);
            } else {
                rejected.insert(s);
            }
        }
    }
    let dim = rows[0].len();
    found
        .into_iter()
        .map(|s| {
            let mut normal = alloc::vec![0i64; dim];
            for (g, a) in facets {
                if is_subset(&s, g) {
                    normal.iter_mut().zip(a).for_each(|(x, y)| *x += y);
                }
            }
            (s, primitive(normal))
        })
        .collect()
}

/// Vertices equal to the intersection of the facets through them.
fn extreme_vertices(facets: &[RawFace], m: usize) -> Vec<RawFace> {
    (0..m)
        .filter_map(|i| {
            let mut through = facets.iter().filter(|(f, _)| f.binary_search(&i).is_ok());
            let (first, a0) = through.next()?;
            let mut common = first.clone();
            let mut normal = a0.clone();
            for (f, a) in through {
                common = intersect(&common, f);
                normal.iter_mut().zip(a).for_each(|(x, y)| *x += y);
            }
            (common == [i]).then(|| (common, primitive(normal)))
        })
        .collect()
}

/// Every face of dimension `d ≥ 1` must be bounded by its `(d − 1)`-faces:
/// an edge has two vertices, and inside a larger face each `(d − 2)`-face
/// lies in exactly two `(d − 1)`-faces. A missing facet breaks this at some
/// level.
fn check_diamonds(levels: &[Vec<RawFace>], dim: usize) -> Result<(), Error> {
    let top: Vec<usize> = {
        let mut s: BTreeSet<usize> = BTreeSet::new();
        levels[0].iter().for_each(|(f, _)| s.extend(f.iter().copied()));
        s.into_iter().collect()
    };
    for d in 1..=dim {
        let parents: Vec<&Vec<usize>> = if d == dim {
            alloc::vec![&top]
        } else {
            levels[d].iter().map(|(f, _)| f).collect()
        };
        for phi in parents {
            let sub: Vec<&Vec<usize>> = levels[d - 1]
                .iter()
                .map(|(f, _)| f)
                .filter(|f| is_subset(f, phi))
                .collect();
            if d == 1 {
                if sub.len() != 2 {
                    return Err(Error::IncompleteFacets(format!(
                        "edge {phi:?} has {} vertices",
                        sub.len()
                    )));
                }
                continue;
            }
            if sub.len() < d + 1 {
                return Err(Error::IncompleteFacets(format!(
                    "{d}-face {phi:?} has only {} subfaces",
                    sub.len()
                )));
            }
            for (g, _) in &levels[d - 2] {
                if !is_subset(g, phi) {
                    continue;
                }
                let k = sub.iter().filter(|f| is_subset(g, f)).count();
                if k != 2 {
                    return Err(Error::IncompleteFacets(format!(
                        "{}-face {g:?} lies in {k} faces of {d}-face {phi:?}",
                        d - 2
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Facets-only certificate: every pairwise intersection of facets with
/// affine rank `dim − 2` lies in exactly two facets.
fn check_ridges(facets: &[RawFace], rows: &[Vec<i64>], dim: usize) -> Result<(), Error> {
    if dim < 2 {
        return Ok(());
    }
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    for (i, (f, _)) in facets.iter().enumerate() {
        for (g, _) in &facets[i + 1..] {
            let s = intersect(f, g);
            if s.len() + 1 < dim || !seen.insert(s.clone()) {
                continue;
            }
            if affine_rank(rows, &s) + 2 != dim {
                continue;
            }
            let k = facets.iter().filter(|(h, _)| is_subset(&s, h)).count();
            if k != 2 {
                return Err(Error::IncompleteFacets(format!("ridge {s:?} lies in {k} facets")));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{Family, LatticeSpec};
    use crate::polytope::{root_polytope, voronoi_cell};

    fn counts(p: &OrbitPolytope) -> Vec<usize> {
        enumerate_faces(p)
            .unwrap()
            .counts()
            .into_iter()
            .map(Option::unwrap)
            .collect()
    }

    #[test]
    fn hexagon() {
        let spec = LatticeSpec::root(Family::A, 2).unwrap();
        assert_eq!(counts(&voronoi_cell(&spec).unwrap()), [6, 6]);
    }

    #[test]
    fn segment() {
        let spec = LatticeSpec::root(Family::A, 1).unwrap();
        assert_eq!(counts(&voronoi_cell(&spec).unwrap()), [2]);
    }

    #[test]
    fn cuboctahedron_and_rhombic_dodecahedron() {
        let spec = LatticeSpec::root(Family::D, 3).unwrap();
        assert_eq!(counts(&root_polytope(&spec).unwrap()), [12, 24, 14]);
        assert_eq!(counts(&voronoi_cell(&spec).unwrap()), [14, 24, 12]);
    }

    #[test]
    fn supporting_hyperplanes_hold() {
        let spec = LatticeSpec::root(Family::A, 3).unwrap();
        let v = voronoi_cell(&spec).unwrap();
        let lat = enumerate_faces(&v).unwrap();
        for d in 0..lat.dim {
            for f in lat.faces(d) {
                for (i, x) in v.vertices.iter().enumerate() {
                    let val = crate::exactnum::dot(x, &f.normal).unwrap();
                    if f.vertices.binary_search(&i).is_ok() {
                        assert_eq!(val, f.offset);
                    } else {
                        assert!(val < f.offset);
                    }
                }
            }
        }
    }

    #[test]
    fn facets_only_mode() {
        let spec = LatticeSpec::root(Family::D, 4).unwrap();
        let budget = FaceBudget {
            max_vertices: 100,
            full_max_rank: 3,
        };
        let lat = enumerate_faces_with(&root_polytope(&spec).unwrap(), &budget).unwrap();
        assert_eq!(lat.counts(), [Some(24), None, None, Some(24)]);
        let tight = FaceBudget {
            max_vertices: 10,
            ..budget
        };
        assert!(matches!(
            enumerate_faces_with(&root_polytope(&spec).unwrap(), &tight),
            Err(Error::BudgetExceeded(_))
        ));
    }
}
