//! Coxeter-plane projection, tile classification and cut-and-project
//! tiling patches. Exact arithmetic stops at the ambient coordinates; all
//! work here is in `f64`.

use alloc::collections::btree_map::Entry;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_traits::{Float, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::coxeter::{coxeter_element, coxeter_number, simple_roots, LatticeSpec};
use crate::error::Error;
use crate::exactnum::ExactVector;
use crate::linalg;
use crate::polytope::{enumerate_faces, root_polytope, voronoi_cell, FaceLattice, OrbitPolytope};

pub type Point2 = [f64; 2];
pub type Polygon = Vec<Point2>;

/// Orthonormal basis `(u, v)` of the plane on which the Coxeter element
/// rotates by `2π/h`, oriented so that `c u = cos θ u + sin θ v`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoxeterPlane {
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub h: usize,
}

impl CoxeterPlane {
    pub fn project(&self, x: &[f64]) -> Point2 {
        [dot(x, &self.u), dot(x, &self.v)]
    }

    pub fn project_exact(&self, x: &ExactVector) -> Point2 {
        self.project(&x.to_f64())
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    Float::sqrt(dot(a, a))
}

fn axpy(y: &mut [f64], alpha: f64, x: &[f64]) {
    y.iter_mut().zip(x).for_each(|(yi, xi)| *yi += alpha * xi);
}

/// Matrix of `c = r_1 … r_n` in the ambient basis, as columns `c(l_j)`.
pub fn coxeter_matrix(spec: &LatticeSpec) -> Result<Vec<Vec<f64>>, Error> {
    let dim = spec.ambient_dim();
    (0..dim)
        .map(|j| Ok(coxeter_element(&ExactVector::unit(dim, j), spec)?.to_f64()))
        .collect()
}

fn apply(cols: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    let mut y = vec![0.0; x.len()];
    for (c, &xj) in cols.iter().zip(x) {
        axpy(&mut y, xj, c);
    }
    y
}

/// Fourier projection of a generic vector onto the `e^{2πi/h}` eigenspace
/// of the Coxeter element.
pub fn coxeter_plane(spec: &LatticeSpec) -> Result<CoxeterPlane, Error> {
    let h = coxeter_number(spec);
    let cols = coxeter_matrix(spec)?;
    let dim = spec.ambient_dim();
    let theta = 2.0 * PI / h as f64;
    let mut x: Vec<f64> = (0..dim)
        .map(|j| Float::sqrt((j + 2) as f64) + Float::powi(0.5, j as i32))
        .collect();
    let mut u0 = vec![0.0; dim];
    let mut v0 = vec![0.0; dim];
    for k in 0..h {
        let a = theta * k as f64;
        axpy(&mut u0, Float::cos(a), &x);
        axpy(&mut v0, Float::sin(a), &x);
        x = apply(&cols, &x);
    }
    let nu = norm(&u0);
    if nu < 1e-9 {
        return Err(Error::NumericalFailure(format!("no rotation plane of angle 2pi/{h}")));
    }
    let u: Vec<f64> = u0.iter().map(|a| a / nu).collect();
    let mut v = v0;
    let proj = dot(&v, &u);
    axpy(&mut v, -proj, &u);
    let nv = norm(&v);
    if nv < 1e-9 {
        return Err(Error::NumericalFailure(format!("no rotation plane of angle 2pi/{h}")));
    }
    v.iter_mut().for_each(|a| *a /= nv);

    let (c, s) = (Float::cos(theta), Float::sin(theta));
    let cu = apply(&cols, &u);
    let cv = apply(&cols, &v);
    let err_u: f64 = (0..dim).map(|i| Float::abs(cu[i] - (c * u[i] + s * v[i]))).fold(0.0, f64::max);
    let err_v: f64 = (0..dim).map(|i| Float::abs(cv[i] - (c * v[i] - s * u[i]))).fold(0.0, f64::max);
    if err_u > 1e-9 || err_v > 1e-9 {
        return Err(Error::NumericalFailure(format!(
            "plane is not invariant (residual {:.1e})",
            err_u.max(err_v)
        )));
    }
    Ok(CoxeterPlane { u, v, h })
}

fn sub2(a: Point2, b: Point2) -> Point2 {
    [a[0] - b[0], a[1] - b[1]]
}

fn len2(a: Point2) -> f64 {
    Float::sqrt(a[0] * a[0] + a[1] * a[1])
}

/// Sorts points by angle about their centroid and drops near-duplicates.
/// Returns `None` for collinear or degenerate input.
pub fn convex_polygon(points: &[Point2]) -> Option<Polygon> {
    let n = points.len() as f64;
    let cx = points.iter().map(|p| p[0]).sum::<f64>() / n;
    let cy = points.iter().map(|p| p[1]).sum::<f64>() / n;
    let mut pts: Vec<Point2> = points.to_vec();
    pts.sort_by(|a, b| {
        let ta = Float::atan2(a[1] - cy, a[0] - cx);
        let tb = Float::atan2(b[1] - cy, b[0] - cx);
        ta.total_cmp(&tb)
    });
    let mut out: Polygon = Vec::with_capacity(pts.len());
    for p in pts {
        if out.last().is_none_or(|q| len2(sub2(p, *q)) > 1e-9) {
            out.push(p);
        }
    }
    while out.len() > 1 && len2(sub2(out[0], *out.last().expect("nonempty"))) <= 1e-9 {
        out.pop();
    }
    if out.len() < 3 || Float::abs(area(&out)) < 1e-9 {
        return None;
    }
    Some(out)
}

/// Signed shoelace area.
pub fn area(poly: &[Point2]) -> f64 {
    let n = poly.len();
    (0..n)
        .map(|i| {
            let (a, b) = (poly[i], poly[(i + 1) % n]);
            a[0] * b[1] - a[1] * b[0]
        })
        .sum::<f64>()
        / 2.0
}

/// Projections of the 2-faces; collinear images are dropped.
pub fn project_faces(poly: &OrbitPolytope, faces: &FaceLattice, plane: &CoxeterPlane) -> Vec<Polygon> {
    let projected: Vec<Point2> = poly.vertices.iter().map(|v| plane.project_exact(v)).collect();
    faces
        .faces(2)
        .iter()
        .filter_map(|f| {
            let pts: Vec<Point2> = f.vertices.iter().map(|&i| projected[i]).collect();
            convex_polygon(&pts)
        })
        .collect()
}

/// Sorted edge lengths and sorted interior angles (radians).
pub fn shape_signature(poly: &[Point2]) -> (Vec<f64>, Vec<f64>) {
    let n = poly.len();
    let mut edges: Vec<f64> = (0..n).map(|i| len2(sub2(poly[(i + 1) % n], poly[i]))).collect();
    let mut angles: Vec<f64> = (0..n)
        .map(|i| {
            let a = sub2(poly[(i + n - 1) % n], poly[i]);
            let b = sub2(poly[(i + 1) % n], poly[i]);
            let c = (a[0] * b[0] + a[1] * b[1]) / (len2(a) * len2(b));
            Float::acos(c.clamp(-1.0, 1.0))
        })
        .collect();
    edges.sort_by(f64::total_cmp);
    angles.sort_by(f64::total_cmp);
    (edges, angles)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TileClass {
    pub edge_lengths: Vec<f64>,
    pub angles: Vec<f64>,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tile {
    pub polygon: Polygon,
    pub class_id: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TilePatch {
    pub tiles: Vec<Tile>,
    pub classes: Vec<TileClass>,
}

/// Matching tolerance for edge lengths and angles.
pub const SHAPE_TOLERANCE: f64 = 1e-6;

fn same_shape(a: &(Vec<f64>, Vec<f64>), b: &(Vec<f64>, Vec<f64>)) -> bool {
    let close = |x: &[f64], y: &[f64]| {
        x.len() == y.len() && x.iter().zip(y).all(|(p, q)| Float::abs(p - q) <= SHAPE_TOLERANCE)
    };
    close(&a.0, &b.0) && close(&a.1, &b.1)
}

/// Groups polygons by shape; class ids run by decreasing frequency, ties by
/// first appearance.
pub fn classify_tiles(polygons: &[Polygon]) -> TilePatch {
    let mut reps: Vec<((Vec<f64>, Vec<f64>), usize)> = Vec::new();
    let mut raw_ids = Vec::with_capacity(polygons.len());
    for p in polygons {
        let sig = shape_signature(p);
        let id = match reps.iter().position(|(r, _)| same_shape(r, &sig)) {
            Some(i) => i,
            None => {
                reps.push((sig, 0));
                reps.len() - 1
            }
        };
        reps[id].1 += 1;
        raw_ids.push(id);
    }
    let mut order: Vec<usize> = (0..reps.len()).collect();
    order.sort_by(|&a, &b| reps[b].1.cmp(&reps[a].1).then(a.cmp(&b)));
    let mut rank = vec![0; reps.len()];
    for (new, &old) in order.iter().enumerate() {
        rank[old] = new;
    }
    let classes = order
        .iter()
        .map(|&i| TileClass {
            edge_lengths: reps[i].0 .0.clone(),
            angles: reps[i].0 .1.clone(),
            count: reps[i].1,
        })
        .collect();
    let tiles = polygons
        .iter()
        .zip(raw_ids)
        .map(|(p, id)| Tile {
            polygon: p.clone(),
            class_id: rank[id],
        })
        .collect();
    TilePatch { tiles, classes }
}

/// Largest distance from a rotated point to its nearest original point.
pub fn rotation_defect(points: &[Point2], angle: f64) -> f64 {
    let (c, s) = (Float::cos(angle), Float::sin(angle));
    points
        .iter()
        .map(|p| {
            let r = [c * p[0] - s * p[1], s * p[0] + c * p[1]];
            points
                .iter()
                .map(|q| len2(sub2(r, *q)))
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max)
}

/// Projected vertices of the root polytope.
pub fn projected_root_polytope(spec: &LatticeSpec) -> Result<Vec<Point2>, Error> {
    let plane = coxeter_plane(spec)?;
    Ok(root_polytope(spec)?
        .vertices
        .iter()
        .map(|v| plane.project_exact(v))
        .collect())
}

/// Orthonormal basis of the part of the root span orthogonal to the plane.
fn perpendicular_basis(spec: &LatticeSpec, plane: &CoxeterPlane) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = vec![plane.u.clone(), plane.v.clone()];
    let mut perp = Vec::new();
    for r in simple_roots(spec) {
        let mut x = r.to_f64();
        for b in &basis {
            let c = dot(&x, b);
            axpy(&mut x, -c, b);
        }
        let n = norm(&x);
        if n > 1e-9 {
            x.iter_mut().for_each(|a| *a /= n);
            basis.push(x.clone());
            perp.push(x);
        }
    }
    perp
}

/// Convex window in perpendicular space, as half-spaces `(a, x) ≤ b`; a
/// ball when the brute-force hull would be too large.
enum Window {
    Everything,
    HalfSpaces(Vec<(Vec<f64>, f64)>),
    Ball(f64),
}

impl Window {
    fn contains(&self, x: &[f64]) -> bool {
        match self {
            Window::Everything => true,
            Window::HalfSpaces(hs) => hs.iter().all(|(a, b)| dot(a, x) <= b + 1e-9),
            Window::Ball(r) => norm(x) <= r + 1e-9,
        }
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Unit normal of the hyperplane through `m` points in `R^m`.
fn hyperplane_normal(pts: &[&Vec<f64>]) -> Option<Vec<f64>> {
    let m = pts[0].len();
    let rows: Vec<Vec<f64>> = pts[1..]
        .iter()
        .map(|p| p.iter().zip(pts[0].iter()).map(|(a, b)| a - b).collect())
        .collect();
    // null vector of the (m-1) x m system by Gram-Schmidt on the unit basis
    let mut ortho: Vec<Vec<f64>> = Vec::new();
    for r in rows {
        let mut x = r;
        for b in &ortho {
            let c = dot(&x, b);
            axpy(&mut x, -c, b);
        }
        let n = norm(&x);
        if n < 1e-9 {
            return None;
        }
        x.iter_mut().for_each(|a| *a /= n);
        ortho.push(x);
    }
    for j in 0..m {
        let mut x = vec![0.0; m];
        x[j] = 1.0;
        for b in &ortho {
            let c = dot(&x, b);
            axpy(&mut x, -c, b);
        }
        let n = norm(&x);
        if n > 1e-6 {
            x.iter_mut().for_each(|a| *a /= n);
            return Some(x);
        }
    }
    None
}

fn hull_window(points: &[Vec<f64>]) -> Window {
    let m = points.first().map_or(0, Vec::len);
    if m == 0 {
        return Window::Everything;
    }
    let reach = points.iter().map(|p| norm(p)).fold(0.0, f64::max);
    if binomial(points.len(), m) > 2e6 {
        return Window::Ball(reach);
    }
    let mut halfspaces: Vec<(Vec<f64>, f64)> = Vec::new();
    let mut idx: Vec<usize> = (0..m).collect();
    loop {
        let subset: Vec<&Vec<f64>> = idx.iter().map(|&i| &points[i]).collect();
        if let Some(a) = hyperplane_normal(&subset) {
            let b = dot(&a, subset[0]);
            let vals: Vec<f64> = points.iter().map(|p| dot(&a, p) - b).collect();
            let above = vals.iter().any(|&x| x > 1e-9);
            let below = vals.iter().any(|&x| x < -1e-9);
            let oriented = match (above, below) {
                (false, true) => Some((a, b)),
                (true, false) => Some((a.iter().map(|x| -x).collect(), -b)),
                _ => None,
            };
            if let Some((a, b)) = oriented {
                let dup = halfspaces.iter().any(|(a2, b2)| {
                    Float::abs(b - b2) < 1e-9 && a.iter().zip(a2).all(|(x, y)| Float::abs(x - y) < 1e-9)
                });
                if !dup {
                    halfspaces.push((a, b));
                }
            }
        }
        // next m-subset in lexicographic order
        let n = points.len();
        let mut i = m;
        loop {
            if i == 0 {
                return Window::HalfSpaces(halfspaces);
            }
            i -= 1;
            if idx[i] < n - m + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..m {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// How a cut-and-project patch picks its 2-faces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WindowRule {
    /// `p + F` is kept when a fixed generic point of perpendicular space
    /// lies in `π⊥(p + F*)`, `F*` being the Delone face dual to `F`. Tiles
    /// then cover the plane exactly once.
    Dual,
    /// `p + F` is kept when the perpendicular image of its centre lies in
    /// `π⊥(V(0))`. Cheaper, but tiles overlap.
    FaceCentre,
}

/// Offset of the selection point from the origin of perpendicular space;
/// small and irrational so no window boundary passes through it.
fn generic_offset(m: usize) -> Vec<f64> {
    (1..=m).map(|i| 1e-3 * (i as f64 * 0.618_033_988_749_895).fract()).collect()
}

/// [`tiling_patch_with`] using [`WindowRule::Dual`].
pub fn tiling_patch(spec: &LatticeSpec, radius: f64, window_scale: f64) -> Result<TilePatch, Error> {
    tiling_patch_with(spec, radius, window_scale, WindowRule::Dual)
}

/// Cut-and-project patch of the projected 2-faces of the Voronoi cells
/// `V(p)`, restricted to tiles whose projected vertices lie within
/// `radius` of the origin. Each window is scaled by `window_scale` about
/// its centroid.
pub fn tiling_patch_with(
    spec: &LatticeSpec,
    radius: f64,
    window_scale: f64,
    rule: WindowRule,
) -> Result<TilePatch, Error> {
    spec.require_root()?;
    if !(radius > 0.0) || !(window_scale > 0.0) {
        return Err(Error::EmptyWindow);
    }
    let plane = coxeter_plane(spec)?;
    let perp = perpendicular_basis(spec, &plane);
    let voronoi = voronoi_cell(spec)?;
    let lattice = enumerate_faces(&voronoi)?;
    if !lattice.complete {
        return Err(Error::BudgetExceeded("2-faces need the full face lattice".into()));
    }

    let to_perp = |x: &[f64]| -> Vec<f64> { perp.iter().map(|b| dot(x, b)).collect() };
    let scaled = |pts: Vec<Vec<f64>>| -> Vec<Vec<f64>> {
        let k = pts.len() as f64;
        let mut c = vec![0.0; pts[0].len()];
        pts.iter().for_each(|q| axpy(&mut c, 1.0 / k, q));
        pts.into_iter()
            .map(|q| q.iter().zip(&c).map(|(x, m)| m + window_scale * (x - m)).collect())
            .collect()
    };
    let (scale, rows) = linalg::common_integer_frame(&voronoi.vertices);
    let s = scale.to_i64().expect("small scale");
    let vf: Vec<Vec<f64>> = voronoi.vertices.iter().map(ExactVector::to_f64).collect();
    let gamma = generic_offset(perp.len());

    // Per face, the window is expressed as a condition on π⊥(p).
    struct FaceData {
        idx: Vec<usize>,
        window: Window,
    }
    let mut faces = Vec::new();
    let mut perp_reach: f64 = 0.0;
    let shared = match rule {
        WindowRule::FaceCentre => Some(scaled(vf.iter().map(|v| to_perp(v)).collect())),
        WindowRule::Dual => None,
    };
    let mut delone = BTreeMap::new();
    for f in lattice.faces(2) {
        let window = match &shared {
            Some(pts) => {
                let k = f.vertices.len() as f64;
                let mut c = vec![0.0; spec.ambient_dim()];
                f.vertices.iter().for_each(|&i| axpy(&mut c, 1.0 / k, &vf[i]));
                let centre = to_perp(&c);
                let base = pts.iter().map(|p| norm(p)).fold(0.0, f64::max);
                perp_reach = perp_reach.max(base + norm(&centre));
                // centre + π⊥(p) ∈ W  ⇔  π⊥(p) ∈ W − centre
                let shifted: Vec<Vec<f64>> = pts
                    .iter()
                    .map(|q| q.iter().zip(&centre).map(|(a, b)| a - b).collect())
                    .collect();
                hull_window(&shifted)
            }
            None => {
                let mut common: Option<BTreeSet<ExactVector>> = None;
                for &i in &f.vertices {
                    let cell: &BTreeSet<ExactVector> = match delone.entry(i) {
                        Entry::Occupied(e) => e.into_mut(),
                        Entry::Vacant(e) => {
                            let cell = crate::tessellate::delone_cell_at(spec, &voronoi, &voronoi.vertices[i])?;
                            e.insert(cell.vertices.into_iter().collect())
                        }
                    };
                    common = Some(match common {
                        None => cell.clone(),
                        Some(c) => c.intersection(cell).cloned().collect(),
                    });
                }
                let pts = scaled(
                    common
                        .unwrap_or_default()
                        .iter()
                        .map(|x| to_perp(&x.to_f64()))
                        .collect(),
                );
                perp_reach = perp_reach.max(pts.iter().map(|p| norm(p)).fold(0.0, f64::max) + norm(&gamma));
                // γ − π⊥(p) ∈ W  ⇔  π⊥(p) ∈ γ − W
                let reflected: Vec<Vec<f64>> = pts
                    .iter()
                    .map(|q| q.iter().zip(&gamma).map(|(a, g)| g - a).collect())
                    .collect();
                hull_window(&reflected)
            }
        };
        faces.push(FaceData {
            idx: f.vertices.clone(),
            window,
        });
    }

    let par_reach = vf.iter().map(|v| len2(plane.project(v))).fold(0.0, f64::max);
    let step = Float::sqrt(2.0);

    let roots: Vec<Vec<i64>> = root_polytope(spec)?
        .vertices
        .iter()
        .map(|r| r.coords().iter().map(|c| c.to_i64().expect("integral root")).collect())
        .collect();
    let dim = spec.ambient_dim();
    let mut visited: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut frontier = vec![vec![0i64; dim]];
    visited.insert(frontier[0].clone());
    while let Some(p) = frontier.pop() {
        for r in &roots {
            let q: Vec<i64> = p.iter().zip(r).map(|(a, b)| a + b).collect();
            if visited.contains(&q) {
                continue;
            }
            let qf: Vec<f64> = q.iter().map(|&x| x as f64).collect();
            let par = len2(plane.project(&qf));
            let per = norm(&to_perp(&qf));
            if par <= radius + par_reach + step && per <= perp_reach + step {
                visited.insert(q.clone());
                frontier.push(q);
            }
        }
    }

    let mut seen: BTreeSet<Vec<Vec<i64>>> = BTreeSet::new();
    let mut polygons = Vec::new();
    for p in &visited {
        let pf: Vec<f64> = p.iter().map(|&x| x as f64).collect();
        let p_perp = to_perp(&pf);
        let p_par = plane.project(&pf);
        for f in &faces {
            if !f.window.contains(&p_perp) {
                continue;
            }
            let pts: Vec<Point2> = f
                .idx
                .iter()
                .map(|&i| {
                    let q = plane.project(&vf[i]);
                    [q[0] + p_par[0], q[1] + p_par[1]]
                })
                .collect();
            if pts.iter().any(|q| len2(*q) > radius) {
                continue;
            }
            let mut key: Vec<Vec<i64>> = f
                .idx
                .iter()
                .map(|&i| rows[i].iter().zip(p).map(|(a, b)| a + b * s).collect())
                .collect();
            key.sort();
            if !seen.insert(key) {
                continue;
            }
            if let Some(poly) = convex_polygon(&pts) {
                polygons.push(poly);
            }
        }
    }
    if polygons.is_empty() {
        return Err(Error::EmptyWindow);
    }
    Ok(classify_tiles(&polygons))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::Family;

    #[test]
    fn plane_is_orthonormal() {
        for (f, n) in [(Family::A, 4), (Family::D, 5), (Family::A, 2), (Family::D, 4)] {
            let spec = LatticeSpec::root(f, n).unwrap();
            let p = coxeter_plane(&spec).unwrap();
            assert!(Float::abs(norm(&p.u) - 1.0) < 1e-12);
            assert!(Float::abs(norm(&p.v) - 1.0) < 1e-12);
            assert!(Float::abs(dot(&p.u, &p.v)) < 1e-12);
        }
    }

    #[test]
    fn a1_has_no_rotation_plane() {
        let spec = LatticeSpec::root(Family::A, 1).unwrap();
        assert!(matches!(coxeter_plane(&spec), Err(Error::NumericalFailure(_))));
    }

    #[test]
    fn single_square() {
        let sq = vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
        let patch = classify_tiles(&[sq]);
        assert_eq!(patch.classes.len(), 1);
        assert!(patch.classes[0].angles.iter().all(|a| Float::abs(a - PI / 2.0) < 1e-12));
    }

    #[test]
    fn collinear_dropped() {
        assert!(convex_polygon(&[[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]]).is_none());
    }

    #[test]
    fn zero_radius_is_empty() {
        let spec = LatticeSpec::root(Family::A, 4).unwrap();
        assert_eq!(tiling_patch(&spec, 0.0, 1.0), Err(Error::EmptyWindow));
    }
}
