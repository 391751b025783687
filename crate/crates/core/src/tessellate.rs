//! Lattice membership, Delone cells at the holes around `V(0)`, and the
//! local tessellation checks.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::coxeter::{fundamental_weights, orbit_of_vector, simple_roots, Family, LatticeSpec, Variant};
use crate::error::Error;
use crate::exactnum::{dot, ExactScalar, ExactVector, SurdValue};
use crate::linalg;
use crate::polytope::{centroid, voronoi_cell, voronoi_seeds, OrbitPolytope};
use crate::volume::{numeric_volume_oracle, relative_gap};

pub fn lattice_contains(spec: &LatticeSpec, v: &ExactVector) -> Result<bool, Error> {
    if v.ambient_dim() != spec.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: spec.ambient_dim(),
            found: v.ambient_dim(),
        });
    }
    let c = v.coords();
    Ok(match (spec.family(), spec.variant()) {
        (Family::A, Variant::Root) => c.iter().all(ExactScalar::is_integer) && v.sum().is_zero(),
        (Family::D, Variant::Root) => {
            c.iter().all(ExactScalar::is_integer) && {
                let s = v.sum().to_i64().expect("integer sum");
                s % 2 == 0
            }
        }
        (Family::A, Variant::Weight) => {
            let n1 = ExactScalar::from_integer(spec.ambient_dim() as i64);
            v.sum().is_zero()
                && c.iter().all(|x| (x * &n1).is_integer())
                && c.windows(2).all(|w| (&w[0] - &w[1]).is_integer())
        }
        (Family::D, Variant::Weight) => {
            let half = ExactScalar::new(1, 2).expect("nonzero");
            c.iter().all(ExactScalar::is_integer)
                || c.iter().all(|x| (x - &half).is_integer())
        }
    })
}

/// A lattice point with its integer coordinates in the simple-root basis
/// (root lattices) or the fundamental-weight basis (weight lattices).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticePoint {
    pub vector: ExactVector,
    pub basis_coeffs: Vec<i64>,
}

impl LatticePoint {
    pub fn new(spec: &LatticeSpec, v: &ExactVector) -> Result<Self, Error> {
        if !lattice_contains(spec, v)? {
            return Err(Error::InvalidWeight(format!("{v} is not in {spec}")));
        }
        let duals = match spec.variant() {
            Variant::Root => fundamental_weights(spec),
            Variant::Weight => simple_roots(spec),
        };
        let basis_coeffs = duals
            .iter()
            .map(|d| dot(v, d).ok().and_then(|x| x.to_i64()))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidWeight(format!("{v} has non-integral coordinates")))?;
        Ok(LatticePoint {
            vector: v.clone(),
            basis_coeffs,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CellKind {
    Simplex,
    Ambo,
    CrossPolytope,
    Hemicube,
    Join,
    SeparatedJoin,
    Other,
}

/// A Delone cell placed at a hole. `center` is the vertex centroid and
/// `hole` the Voronoi vertex it belongs to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlacedCell {
    pub center: ExactVector,
    pub hole: ExactVector,
    pub vertices: Vec<ExactVector>,
    pub kind: CellKind,
}

/// Lattice points nearest to the Voronoi vertex `hole`: the points
/// `hole − x` with `x` a vertex of `V(0)` of the same norm.
pub fn delone_cell_at(
    spec: &LatticeSpec,
    voronoi: &OrbitPolytope,
    hole: &ExactVector,
) -> Result<PlacedCell, Error> {
    if !voronoi.contains_vertex(hole) {
        return Err(Error::VerificationFailure(format!("{hole} is not a vertex of V(0)")));
    }
    let r2 = hole.norm_squared();
    let mut vertices = Vec::new();
    for x in &voronoi.vertices {
        if x.norm_squared() != r2 {
            continue;
        }
        let p = hole - x;
        if lattice_contains(spec, &p)? {
            vertices.push(p);
        }
    }
    vertices.sort();
    let center = centroid(&vertices);
    let kind = classify(spec, &vertices, &center);
    Ok(PlacedCell {
        center,
        hole: hole.clone(),
        vertices,
        kind,
    })
}

fn is_cross_polytope(vertices: &[ExactVector], center: &ExactVector, dim: usize) -> bool {
    if vertices.len() != 2 * dim {
        return false;
    }
    let rel: Vec<ExactVector> = vertices.iter().map(|v| v - center).collect();
    let r2 = rel[0].norm_squared();
    rel.iter().all(|u| {
        u.norm_squared() == r2
            && rel.iter().all(|w| {
                let d = dot(u, w).expect("same dimension");
                d.is_zero() || d == r2 || d == -r2.clone()
            })
    })
}

fn classify(spec: &LatticeSpec, vertices: &[ExactVector], center: &ExactVector) -> CellKind {
    let dim = linalg::affine_rank(vertices).unwrap_or(0);
    if vertices.len() == dim + 1 {
        return CellKind::Simplex;
    }
    if is_cross_polytope(vertices, center, dim) {
        return CellKind::CrossPolytope;
    }
    match (spec.family(), spec.variant()) {
        (Family::A, Variant::Root) => CellKind::Ambo,
        (Family::D, Variant::Root) => CellKind::Hemicube,
        (Family::D, Variant::Weight) => {
            // integral and half-integral vertices span the two hypercubes
            let (whole, half): (Vec<ExactVector>, Vec<ExactVector>) = vertices
                .iter()
                .cloned()
                .partition(|v| v.coords().iter().all(ExactScalar::is_integer));
            if whole.is_empty() || half.is_empty() {
                CellKind::Other
            } else if crate::polytope::centroid(&whole) == crate::polytope::centroid(&half) {
                CellKind::Join
            } else {
                CellKind::SeparatedJoin
            }
        }
        _ => CellKind::Other,
    }
}

/// Delone cells at every vertex of `V(0)`, in vertex order.
pub fn delone_neighbors(spec: &LatticeSpec) -> Result<Vec<PlacedCell>, Error> {
    spec.require_root()?;
    let voronoi = voronoi_cell(spec)?;
    voronoi
        .vertices
        .iter()
        .map(|c| delone_cell_at(spec, &voronoi, c))
        .collect()
}

/// Fractional parts of the basis coordinates: the class of `v` modulo the
/// lattice.
fn residue(spec: &LatticeSpec, v: &ExactVector) -> Vec<ExactScalar> {
    let duals = match spec.variant() {
        Variant::Root => fundamental_weights(spec),
        Variant::Weight => simple_roots(spec),
    };
    duals
        .iter()
        .map(|d| dot(v, d).expect("same dimension").fract_pos())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// One orbit of Voronoi vertices: its cells, their volume and the number of
/// holes of this type per fundamental domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HoleType {
    pub representative: ExactVector,
    pub vertices: usize,
    pub kind: CellKind,
    pub cell_vertices: usize,
    pub per_domain: usize,
    pub cell_volume: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TessellationReport {
    pub spec: LatticeSpec,
    pub cells: usize,
    pub kinds: BTreeMap<CellKind, usize>,
    pub hole_types: Vec<HoleType>,
    pub covolume: SurdValue,
    pub volume_sum: f64,
    pub checks: Vec<Check>,
}

impl TessellationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.pass)
    }
}

/// Largest rank accepted by [`tessellation_report`].
pub const MAX_TESSELLATION_RANK: usize = 6;

/// Runs all tessellation checks and returns the report whether or not
/// they pass.
pub fn tessellation_report(spec: &LatticeSpec) -> Result<TessellationReport, Error> {
    spec.require_root()?;
    if spec.rank() > MAX_TESSELLATION_RANK {
        return Err(Error::BudgetExceeded(format!(
            "tessellation checks run for rank <= {MAX_TESSELLATION_RANK}"
        )));
    }
    let voronoi = voronoi_cell(spec)?;
    let cells = delone_neighbors(spec)?;
    let mut checks = Vec::new();

    // (a) vertices in the lattice
    let mut bad = None;
    for cell in &cells {
        for v in &cell.vertices {
            if !lattice_contains(spec, v)? {
                bad = Some(format!("{v} in cell at {}", cell.hole));
                break;
            }
        }
        if bad.is_some() {
            break;
        }
        if cell.vertices.len() < spec.rank() + 1 {
            bad = Some(format!("cell at {} has {} vertices", cell.hole, cell.vertices.len()));
            break;
        }
    }
    checks.push(Check {
        name: "vertices in lattice".into(),
        pass: bad.is_none(),
        detail: bad.unwrap_or_else(|| format!("{} cells", cells.len())),
    });

    // (b) centres are Voronoi vertices
    let off: Vec<&PlacedCell> = cells
        .iter()
        .filter(|c| !voronoi.contains_vertex(&c.center))
        .collect();
    checks.push(Check {
        name: "centers are voronoi vertices".into(),
        pass: off.is_empty(),
        detail: off
            .first()
            .map_or_else(|| "all centers match".into(), |c| format!("center {}", c.center)),
    });

    // (c) every Voronoi vertex carries a cell
    let centers: BTreeSet<&ExactVector> = cells.iter().map(|c| &c.center).collect();
    let missing = voronoi.vertices.iter().filter(|v| !centers.contains(v)).count();
    checks.push(Check {
        name: "centers cover voronoi vertices".into(),
        pass: missing == 0,
        detail: format!("{} of {} covered", voronoi.vertex_count() - missing, voronoi.vertex_count()),
    });

    // (d) volume accounting per fundamental domain
    let mut hole_types = Vec::new();
    let mut classes_seen: BTreeSet<Vec<ExactScalar>> = BTreeSet::new();
    let mut overlap = false;
    for seed in voronoi_seeds(spec) {
        let rep = seed.to_vector(spec)?;
        let orbit = orbit_of_vector(spec, &rep)?;
        let classes: BTreeSet<Vec<ExactScalar>> = orbit.iter().map(|v| residue(spec, v)).collect();
        for c in &classes {
            overlap |= !classes_seen.insert(c.clone());
        }
        let cell = delone_cell_at(spec, &voronoi, &rep)?;
        hole_types.push(HoleType {
            vertices: orbit.len(),
            kind: cell.kind,
            cell_vertices: cell.vertices.len(),
            per_domain: classes.len(),
            cell_volume: numeric_volume_oracle(&cell.vertices)?,
            representative: rep,
        });
    }
    let covolume = SurdValue::sqrt_rational(&crate::coxeter::cartan_matrix(spec).determinant());
    let volume_sum: f64 = hole_types
        .iter()
        .map(|h| h.per_domain as f64 * h.cell_volume)
        .sum();
    let gap = relative_gap(volume_sum, covolume.to_f64());
    checks.push(Check {
        name: "volume accounting".into(),
        pass: !overlap && gap <= 1e-9,
        detail: format!("sum {volume_sum:.12} against covolume {covolume} (gap {gap:.2e})"),
    });

    let mut kinds = BTreeMap::new();
    for c in &cells {
        *kinds.entry(c.kind).or_insert(0) += 1;
    }
    Ok(TessellationReport {
        spec: *spec,
        cells: cells.len(),
        kinds,
        hole_types,
        covolume,
        volume_sum,
        checks,
    })
}

/// Like [`tessellation_report`] but fails on the first violated check.
pub fn verify_tessellation(spec: &LatticeSpec) -> Result<TessellationReport, Error> {
    let report = tessellation_report(spec)?;
    if let Some(c) = report.first_failure() {
        return Err(Error::VerificationFailure(format!("{}: {}", c.name, c.detail)));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(f: Family, n: usize, v: Variant) -> LatticeSpec {
        LatticeSpec::new(f, n, v).unwrap()
    }

    #[test]
    fn membership() {
        let d4 = spec(Family::D, 4, Variant::Root);
        assert!(lattice_contains(&d4, &ExactVector::from_integers(&[1, 1, 0, 0])).unwrap());
        assert!(!lattice_contains(&d4, &ExactVector::from_integers(&[1, 0, 0, 0])).unwrap());
        let a2 = spec(Family::A, 2, Variant::Root);
        assert!(lattice_contains(&a2, &ExactVector::from_integers(&[1, -1, 0])).unwrap());
        let a4w = spec(Family::A, 4, Variant::Weight);
        let w1 = ExactVector::from_scaled(&[4, -1, -1, -1, -1], 5).unwrap();
        assert!(lattice_contains(&a4w, &w1).unwrap());
        assert!(!lattice_contains(&a4w, &ExactVector::from_scaled(&[1, -1, 0, 0, 0], 2).unwrap()).unwrap());
        assert!(lattice_contains(&a2, &ExactVector::from_integers(&[1, 0])).is_err());
        let d3w = spec(Family::D, 3, Variant::Weight);
        assert!(lattice_contains(&d3w, &ExactVector::from_scaled(&[1, -1, 3], 2).unwrap()).unwrap());
        assert!(!lattice_contains(&d3w, &ExactVector::from_scaled(&[1, 0, 1], 2).unwrap()).unwrap());
    }

    #[test]
    fn lattice_point_coefficients() {
        let a2 = spec(Family::A, 2, Variant::Root);
        let p = LatticePoint::new(&a2, &ExactVector::from_integers(&[1, 0, -1])).unwrap();
        assert_eq!(p.basis_coeffs, [1, 1]);
        let a2w = spec(Family::A, 2, Variant::Weight);
        let w = fundamental_weights(&a2w)[1].clone();
        assert_eq!(LatticePoint::new(&a2w, &w).unwrap().basis_coeffs, [0, 1]);
    }

    #[test]
    fn d3_neighbors() {
        let cells = delone_neighbors(&spec(Family::D, 3, Variant::Root)).unwrap();
        assert_eq!(cells.len(), 14);
        let oct = cells.iter().filter(|c| c.kind == CellKind::CrossPolytope).count();
        let tet = cells.iter().filter(|c| c.kind == CellKind::Simplex).count();
        assert_eq!((oct, tet), (6, 8));
    }

    #[test]
    fn a2_triangles() {
        let r = verify_tessellation(&spec(Family::A, 2, Variant::Root)).unwrap();
        assert_eq!(r.cells, 6);
        assert_eq!(r.kinds.get(&CellKind::Simplex), Some(&6));
    }

    #[test]
    fn d_cell_at_spin_weight() {
        for n in 3..=6 {
            let s = spec(Family::D, n, Variant::Root);
            let v = voronoi_cell(&s).unwrap();
            let w = fundamental_weights(&s)[n - 1].clone();
            assert_eq!(delone_cell_at(&s, &v, &w).unwrap().vertices.len(), 1 << (n - 1));
        }
    }

    #[test]
    fn weight_lattice_rejected() {
        assert!(matches!(
            verify_tessellation(&spec(Family::A, 3, Variant::Weight)),
            Err(Error::VariantMismatch { .. })
        ));
    }
}
