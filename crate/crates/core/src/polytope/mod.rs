//! Named polytopes of the `A_n`/`D_n` lattices and their face structure.

mod counts;
mod faces;
mod geometry;

pub use counts::{euler_check, facet_count_table, facet_counts_formula, CountEntry, CountTarget, FacetCountTable};
pub use faces::{enumerate_faces, enumerate_faces_with, Face, FaceBudget, FaceLattice};
pub use geometry::{facet_geometry_a, facet_geometry_d, DipyramidFacet, RhombohedronFacet};

use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};

use serde::{Deserialize, Serialize};

use crate::coxeter::{
    fundamental_weights, highest_root, orbit_vectors, Family, LatticeSpec, OrbitSeed, Variant,
    WeightCoord,
};
use crate::error::Error;
use crate::exactnum::{ExactScalar, ExactVector};
use crate::linalg;

/// Vertex set of a Weyl orbit, a union of orbits, or an explicitly listed
/// cell. `generating_weights` is empty for cells that are not orbits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitPolytope {
    pub spec: LatticeSpec,
    pub label: String,
    pub generating_weights: Vec<OrbitSeed>,
    pub vertices: Vec<ExactVector>,
}

impl OrbitPolytope {
    /// Union of the full Weyl orbits of the seeds.
    pub fn from_seeds(spec: &LatticeSpec, label: &str, seeds: Vec<OrbitSeed>) -> Result<Self, Error> {
        Self::from_seeds_limited(spec, label, seeds, None)
    }

    pub fn from_seeds_limited(
        spec: &LatticeSpec,
        label: &str,
        seeds: Vec<OrbitSeed>,
        limit: Option<usize>,
    ) -> Result<Self, Error> {
        let vecs = seeds
            .iter()
            .map(|s| s.to_vector(spec))
            .collect::<Result<Vec<_>, _>>()?;
        let all: Vec<usize> = (0..spec.rank()).collect();
        let vertices = orbit_vectors(spec, &vecs, &all, limit)?;
        Ok(OrbitPolytope {
            spec: *spec,
            label: label.into(),
            generating_weights: seeds,
            vertices,
        })
    }

    /// Explicit vertex list; sorted and deduplicated.
    pub fn from_vertices(spec: &LatticeSpec, label: &str, mut vertices: Vec<ExactVector>) -> Self {
        vertices.sort();
        vertices.dedup();
        OrbitPolytope {
            spec: *spec,
            label: label.into(),
            generating_weights: Vec::new(),
            vertices,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Dimension of the affine hull.
    pub fn dim(&self) -> usize {
        linalg::affine_rank(&self.vertices).unwrap_or(0)
    }

    pub fn contains_vertex(&self, v: &ExactVector) -> bool {
        self.vertices.binary_search(v).is_ok()
    }

    pub fn vertex_index(&self, v: &ExactVector) -> Option<usize> {
        self.vertices.binary_search(v).ok()
    }

    /// Exact vertex centroid.
    pub fn centroid(&self) -> ExactVector {
        centroid(&self.vertices)
    }
}

pub(crate) fn centroid(points: &[ExactVector]) -> ExactVector {
    let dim = points.first().map_or(0, ExactVector::ambient_dim);
    let sum = points
        .iter()
        .fold(ExactVector::zeros(dim), |acc, p| &acc + p);
    let n = ExactScalar::from_integer(points.len() as i64);
    sum.scale(&n.recip().expect("nonempty point set"))
}

fn seed(rank: usize, i: usize) -> OrbitSeed {
    OrbitSeed::fundamental(rank, i)
}

/// Orbit of the highest root.
pub fn root_polytope(spec: &LatticeSpec) -> Result<OrbitPolytope, Error> {
    spec.require_root()?;
    let theta = WeightCoord::from_vector(spec, &highest_root(spec))?;
    OrbitPolytope::from_seeds(spec, "root polytope", vec![OrbitSeed::unit(theta)])
}

/// Seeds whose joint orbit is the vertex set of `V(0)`.
pub fn voronoi_seeds(spec: &LatticeSpec) -> Vec<OrbitSeed> {
    let n = spec.rank();
    match (spec.family(), spec.variant()) {
        (Family::A, Variant::Root) => (0..n).map(|i| seed(n, i)).collect(),
        (Family::D, Variant::Root) => vec![seed(n, 0), seed(n, n - 2), seed(n, n - 1)],
        (Family::A, Variant::Weight) => vec![OrbitSeed {
            weight: WeightCoord::new(vec![1; n]),
            scale: ExactScalar::new(1, n as i64 + 1).expect("nonzero"),
        }],
        (Family::D, Variant::Weight) => {
            let mut c = vec![0u32; n];
            let scale;
            if n == 3 {
                // circumcenter of the fundamental simplex, (1/2, 1/4, 0)
                c = vec![1, 1, 1];
                scale = ExactScalar::new(1, 4).expect("nonzero");
            } else if n % 2 == 0 {
                c[n / 2 - 1] = 1;
                scale = ExactScalar::new(1, 2).expect("nonzero");
            } else {
                let t = n / 2;
                c[t - 1] = 1;
                c[t] = 1;
                scale = ExactScalar::new(1, 4).expect("nonzero");
            }
            vec![OrbitSeed {
                weight: WeightCoord::new(c),
                scale,
            }]
        }
    }
}

pub fn voronoi_cell(spec: &LatticeSpec) -> Result<OrbitPolytope, Error> {
    OrbitPolytope::from_seeds(spec, "voronoi cell", voronoi_seeds(spec))
}

/// Delone cells meeting the origin. Root lattices give the orbit polytopes
/// of the fundamental weights; weight lattices give the cell at the
/// dominant hole.
pub fn delone_cells_at_origin(spec: &LatticeSpec) -> Result<Vec<OrbitPolytope>, Error> {
    let n = spec.rank();
    match (spec.family(), spec.variant()) {
        (Family::A, Variant::Root) => (0..n)
            .map(|i| {
                let label = if i == 0 || i == n - 1 {
                    format!("simplex (w{})", i + 1)
                } else {
                    format!("ambo-simplex (w{})", i + 1)
                };
                OrbitPolytope::from_seeds(spec, &label, vec![seed(n, i)])
            })
            .collect(),
        (Family::D, Variant::Root) => Ok(vec![
            OrbitPolytope::from_seeds(spec, "cross-polytope (w1)", vec![seed(n, 0)])?,
            OrbitPolytope::from_seeds(spec, &format!("hemicube (w{})", n - 1), vec![seed(n, n - 2)])?,
            OrbitPolytope::from_seeds(spec, &format!("hemicube (w{n})"), vec![seed(n, n - 1)])?,
        ]),
        (Family::A, Variant::Weight) => Ok(vec![OrbitPolytope::from_vertices(
            spec,
            "fundamental simplex",
            simplex_points(spec),
        )]),
        (Family::D, Variant::Weight) => {
            let voronoi = voronoi_cell(spec)?;
            let hole = voronoi_seeds(spec)[0].to_vector(spec)?;
            let cell = crate::tessellate::delone_cell_at(spec, &voronoi, &hole)?;
            let label = match cell.kind {
                crate::tessellate::CellKind::SeparatedJoin => "separated join of hypercubes",
                _ => "join of hypercubes",
            };
            Ok(vec![OrbitPolytope::from_vertices(spec, label, cell.vertices)])
        }
    }
}

/// Root polytope for root lattices; for weight lattices the union of the
/// orbits of the shortest fundamental weights.
pub fn contact_polytope(spec: &LatticeSpec) -> Result<OrbitPolytope, Error> {
    if spec.variant() == Variant::Root {
        let mut p = root_polytope(spec)?;
        p.label = "contact polytope".into();
        return Ok(p);
    }
    let norms: Vec<ExactScalar> = fundamental_weights(spec)
        .iter()
        .map(ExactVector::norm_squared)
        .collect();
    let min = norms.iter().min().expect("rank >= 1").clone();
    let seeds = norms
        .iter()
        .enumerate()
        .filter(|(_, m)| **m == min)
        .map(|(i, _)| seed(spec.rank(), i))
        .collect();
    OrbitPolytope::from_seeds(spec, "contact polytope", seeds)
}

/// `{0, ω_1, …, ω_n}` for `A_n`; `{0, ω_1, ω_2/2, …, ω_{n−2}/2, ω_{n−1}, ω_n}`
/// for `D_n`.
pub fn fundamental_simplex(spec: &LatticeSpec) -> Result<Vec<ExactVector>, Error> {
    spec.require_root()?;
    Ok(simplex_points(spec))
}

fn simplex_points(spec: &LatticeSpec) -> Vec<ExactVector> {
    let n = spec.rank();
    let half = ExactScalar::new(1, 2).expect("nonzero");
    let mut pts = vec![ExactVector::zeros(spec.ambient_dim())];
    for (i, w) in fundamental_weights(spec).into_iter().enumerate() {
        let halve = spec.family() == Family::D && i >= 1 && i + 2 < n;
        pts.push(if halve { w.scale(&half) } else { w });
    }
    pts
}
