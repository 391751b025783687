//! Named pass/fail checks for one lattice. `verify` runs them for a single
//! lattice and `report` for every lattice up to a rank.

use std::f64::consts::PI;

use serde::Serialize;

use coxcell_core::coxeter::{
    cartan_matrix, coxeter_element, coxeter_number, fundamental_weights, group_order, orbit,
    simple_roots, stabilizer_order, Family, LatticeSpec, Variant, WeightCoord,
};
use coxcell_core::exactnum::{dot, ExactScalar, ExactVector, SurdValue};
use coxcell_core::linalg;
use coxcell_core::polytope::{
    contact_polytope, delone_cells_at_origin, enumerate_faces, euler_check, facet_count_table,
    facet_geometry_a, facet_geometry_d, fundamental_simplex, root_polytope, voronoi_cell,
    CountTarget, FaceLattice,
};
use coxcell_core::project::{
    classify_tiles, coxeter_plane, project_faces, projected_root_polytope, rotation_defect,
};
use coxcell_core::tessellate::{tessellation_report, MAX_TESSELLATION_RANK};
use coxcell_core::volume::{
    fundamental_simplex_volume, numeric_volume_oracle, pyramid_volume_identity, relative_gap,
    voronoi_volume,
};
use coxcell_core::Error;

/// Root lattices above this rank skip the numeric oracle and full face
/// lattices.
pub const ROOT_ORACLE_MAX_RANK: usize = 6;
/// Same bound for weight lattices, whose Voronoi cells grow like `(n+1)!`.
pub const WEIGHT_ORACLE_MAX_RANK: usize = 5;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub lattice: String,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

struct Collector {
    lattice: String,
    out: Vec<CheckResult>,
}

impl Collector {
    fn push(&mut self, name: &str, result: Result<(bool, String), Error>) {
        let (pass, detail) = result.unwrap_or_else(|e| (false, format!("error: {e}")));
        self.out.push(CheckResult {
            id: format!("{}/{name}", self.lattice),
            lattice: self.lattice.clone(),
            name: name.to_string(),
            pass,
            detail,
        });
    }
}

fn q(p: i64, d: i64) -> ExactScalar {
    ExactScalar::new(p, d).expect("nonzero denominator")
}

fn oracle_detail(found: f64, exact: &SurdValue, tol: f64) -> (bool, String) {
    let gap = relative_gap(found, exact.to_f64());
    (gap <= tol, format!("oracle {found:.12} vs {exact}, gap {gap:.1e}"))
}

fn counts_text(l: &FaceLattice) -> String {
    let parts: Vec<String> = l
        .counts()
        .iter()
        .map(|c| c.map_or("?".into(), |c| c.to_string()))
        .collect();
    parts.join("/")
}

fn euler_text(l: &FaceLattice) -> (bool, String) {
    let counts = l.counts();
    if counts.iter().any(Option::is_none) {
        return (false, format!("incomplete lattice {}", counts_text(l)));
    }
    let chi: i64 = counts
        .iter()
        .enumerate()
        .map(|(d, c)| {
            let c = c.expect("complete") as i64;
            if d % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .sum();
    let expect = if l.dim % 2 == 0 { 0 } else { 2 };
    (chi == expect, format!("{} gives chi = {chi}", counts_text(l)))
}

/// Every check that applies to `spec`, in a fixed order.
pub fn lattice_checks(spec: &LatticeSpec, tolerance: f64) -> Vec<CheckResult> {
    let mut c = Collector {
        lattice: spec.to_string(),
        out: Vec::new(),
    };
    common_checks(&mut c, spec);
    match spec.variant() {
        Variant::Root => root_checks(&mut c, spec, tolerance),
        Variant::Weight => weight_checks(&mut c, spec, tolerance),
    }
    c.out
}

fn common_checks(c: &mut Collector, spec: &LatticeSpec) {
    let n = spec.rank();
    c.push("cartan_determinant", {
        let det = cartan_matrix(spec).determinant();
        let expect = match spec.family() {
            Family::A => n as i64 + 1,
            Family::D => 4,
        };
        Ok((det == ExactScalar::from_integer(expect), format!("det C = {det}")))
    });
    c.push("weight_root_duality", {
        let (w, a) = (fundamental_weights(spec), simple_roots(spec));
        let bad = w.iter().enumerate().find_map(|(i, wi)| {
            a.iter().enumerate().find_map(|(j, aj)| {
                let v = dot(wi, aj).ok()?;
                (v != ExactScalar::from_integer((i == j) as i64)).then(|| format!("(w{}, a{}) = {v}", i + 1, j + 1))
            })
        });
        Ok((bad.is_none(), bad.unwrap_or_else(|| format!("{n}x{n} pairings are the identity"))))
    });
    c.push("coxeter_element_order", coxeter_order(spec));
    c.push("orbit_stabilizer", (|| {
        let mut sizes = Vec::new();
        for i in 0..n {
            let hw = WeightCoord::fundamental(n, i);
            let size = orbit(spec, &hw)?.vertex_count() as u128;
            if size * stabilizer_order(spec, &hw) != group_order(spec) {
                return Ok((false, format!("w{} orbit {size}", i + 1)));
            }
            sizes.push(size.to_string());
        }
        Ok((true, format!("orbits {} times stabilizers = {}", sizes.join("/"), group_order(spec))))
    })());
}

fn coxeter_order(spec: &LatticeSpec) -> Result<(bool, String), Error> {
    // a generic point of the root span
    let x = simple_roots(spec)
        .iter()
        .enumerate()
        .fold(ExactVector::zeros(spec.ambient_dim()), |acc, (i, a)| {
            &acc + &a.scale(&q((i * i + 2) as i64, (i + 3) as i64))
        });
    let h = coxeter_number(spec);
    let mut y = x.clone();
    for k in 1..=4 * h {
        y = coxeter_element(&y, spec)?;
        if y == x {
            return Ok((k == h, format!("order {k}, h = {h}")));
        }
    }
    Ok((false, format!("order exceeds {}", 4 * h)))
}

fn root_checks(c: &mut Collector, spec: &LatticeSpec, tol: f64) {
    let n = spec.rank();
    let full = n <= ROOT_ORACLE_MAX_RANK;
    c.push("root_polytope_vertices", (|| {
        let m = root_polytope(spec)?.vertex_count();
        let expect = match spec.family() {
            Family::A => n * (n + 1),
            Family::D => 2 * n * (n - 1),
        };
        Ok((m == expect, format!("{m} roots, expected {expect}")))
    })());
    let voronoi = voronoi_cell(spec);
    c.push("voronoi_vertices", (|| {
        let m = voronoi.clone()?.vertex_count();
        let expect = match spec.family() {
            Family::A => (1usize << (n + 1)) - 2,
            Family::D => (1usize << n) + 2 * n,
        };
        Ok((m == expect, format!("{m} vertices, expected {expect}")))
    })());
    if n == 1 {
        c.push("a1_voronoi_segment", (|| {
            let v = voronoi.clone()?;
            let w = &fundamental_weights(spec)[0];
            let expect = vec![-w, w.clone()];
            let mut got = v.vertices.clone();
            got.sort();
            let mut e = expect.clone();
            e.sort();
            Ok((got == e, format!("V(0) = conv {got:?}")))
        })());
    }

    for (name, target) in [
        ("root_polytope_face_counts", CountTarget::RootPolytope),
        ("voronoi_face_counts", CountTarget::VoronoiCell),
    ] {
        c.push(name, (|| {
            let poly = match target {
                CountTarget::RootPolytope => root_polytope(spec)?,
                CountTarget::VoronoiCell => voronoi.clone()?,
            };
            let lattice = enumerate_faces(&poly)?;
            let table = facet_count_table(spec, target, Some(&lattice));
            let bad: Vec<String> = table
                .disagreements()
                .map(|(d, e)| format!("d={d}: formula {:?} enumerated {:?}", e.formula, e.enumerated))
                .collect();
            let notes: Vec<String> = table
                .counts
                .iter()
                .filter_map(|(d, e)| e.note.as_ref().map(|m| format!("d={d} {m}")))
                .collect();
            let mut detail = format!("enumerated {}", counts_text(&lattice));
            if !notes.is_empty() {
                detail.push_str(&format!("; no formula: {}", notes.join(", ")));
            }
            if !bad.is_empty() {
                detail.push_str(&format!("; {}", bad.join(", ")));
            }
            Ok((bad.is_empty(), detail))
        })());
        if full {
            c.push(&format!("{name}_euler"), (|| {
                let poly = match target {
                    CountTarget::RootPolytope => root_polytope(spec)?,
                    CountTarget::VoronoiCell => voronoi.clone()?,
                };
                Ok(euler_text(&enumerate_faces(&poly)?))
            })());
        }
    }
    if spec.family() == Family::D && n == 3 {
        c.push("d3_rhombic_dodecahedron", (|| {
            let l = enumerate_faces(&voronoi.clone()?)?;
            let counts = l.counts();
            let rhombi = l.faces(2).iter().all(|f| f.vertices.len() == 4);
            let ok = counts == vec![Some(14), Some(24), Some(12)] && rhombi;
            Ok((ok, format!("{} with rhombic faces: {rhombi}", counts_text(&l))))
        })());
    }
    if n >= 2 && !(spec.family() == Family::D && n < 4) {
        c.push("formula_euler", (|| {
            let mut ok = true;
            for target in [CountTarget::RootPolytope, CountTarget::VoronoiCell] {
                ok &= euler_check(&facet_count_table(spec, target, None), n)?;
            }
            Ok((ok, "closed-form tables of both polytopes".into()))
        })());
    }

    let exact = voronoi_volume(spec);
    if n >= 2 {
        c.push("pyramid_identity", (|| {
            let r = pyramid_volume_identity(spec)?;
            Ok((
                r.agrees,
                format!("{} pyramids of height {} over {} give {}", r.facets, r.height, r.facet_volume, r.total),
            ))
        })());
    }
    c.push("fundamental_simplex_identity", (|| {
        let s = fundamental_simplex_volume(spec)?;
        let order = i64::try_from(group_order(spec)).map_err(|_| Error::BudgetExceeded("group order".into()))?;
        let total = s.scale(&ExactScalar::from_integer(order));
        Ok((total == exact, format!("|W| * {s} = {total}, Vol V(0) = {exact}")))
    })());
    c.push("facet_geometry", facet_geometry_check(spec));

    if full {
        c.push("voronoi_volume_oracle", (|| {
            let v = numeric_volume_oracle(&voronoi.clone()?.vertices)?;
            Ok(oracle_detail(v, &exact, tol))
        })());
        c.push("fundamental_simplex_oracle", (|| {
            let v = numeric_volume_oracle(&fundamental_simplex(spec)?)?;
            Ok(oracle_detail(v, &fundamental_simplex_volume(spec)?, tol))
        })());
        c.push("delone_volume_sum", (|| {
            let mut parts = Vec::new();
            let mut sum = 0.0;
            for cell in delone_cells_at_origin(spec)? {
                let v = numeric_volume_oracle(&cell.vertices)?;
                parts.push(format!("{} {v:.9}", cell.label));
                sum += v;
            }
            let (pass, detail) = oracle_detail(sum, &exact, tol);
            Ok((pass, format!("{}; {detail}", parts.join(" + "))))
        })());
    }
    if n <= MAX_TESSELLATION_RANK {
        c.push("tessellation", (|| {
            let r = tessellation_report(spec)?;
            let kinds: Vec<String> = r.kinds.iter().map(|(k, m)| format!("{m} {k:?}")).collect();
            let detail = match r.first_failure() {
                Some(f) => format!("{} failed: {}", f.name, f.detail),
                None => format!("{} cells around V(0): {}", r.cells, kinds.join(", ")),
            };
            Ok((r.passed(), detail))
        })());
    }
    if n >= 2 {
        c.push("projection_symmetry", (|| {
            let pts = projected_root_polytope(spec)?;
            let h = coxeter_number(spec);
            let defect = rotation_defect(&pts, 2.0 * PI / h as f64);
            Ok((defect <= 1e-9, format!("{h}-fold rotation defect {defect:.1e}")))
        })());
    }
    if (spec.family(), n) == (Family::A, 4) {
        c.push("penrose_rhombi", (|| {
            let v = voronoi.clone()?;
            let tiles = project_faces(&v, &enumerate_faces(&v)?, &coxeter_plane(spec)?);
            let patch = classify_tiles(&tiles);
            let ok = patch.classes.len() == 2 && patch.classes.iter().all(|k| k.angles.len() == 4);
            Ok((ok, format!("{} tiles in {} classes", tiles.len(), patch.classes.len())))
        })());
    }
    if (spec.family(), n) == (Family::D, 5) {
        c.push("octagonal_triangles", d5_triangles(spec));
    }
}

fn facet_geometry_check(spec: &LatticeSpec) -> Result<(bool, String), Error> {
    let n = spec.rank();
    match spec.family() {
        Family::A if n >= 2 => {
            let f = facet_geometry_a(n)?;
            let m = n as i64 + 1;
            let mut ok = true;
            for (i, row) in f.gram.iter().enumerate() {
                for (j, g) in row.iter().enumerate() {
                    let expect = if i == j { q(n as i64, m) } else { q(-1, m) };
                    ok &= *g == expect;
                }
            }
            let vol = SurdValue::sqrt_rational(&q(2, m));
            ok &= f.determinant.square() == q(2, m) && f.volume == vol;
            Ok((ok, format!("|k|^2 = {n}/{m}, facet volume {}", f.volume)))
        }
        Family::A => Ok((true, "facet is a point".into())),
        Family::D => {
            let f = facet_geometry_d(n)?;
            let expect = SurdValue::sqrt_int(2).scale(&q(1, n as i64 - 1));
            Ok((f.volume == expect, format!("dipyramid volume {}", f.volume)))
        }
    }
}

fn d5_triangles(spec: &LatticeSpec) -> Result<(bool, String), Error> {
    let v = voronoi_cell(spec)?;
    let mut faces = enumerate_faces(&v)?;
    // triangles of the facet orthogonal to l1 + l2
    let normal = ExactVector::from_integers(&[1, 1, 0, 0, 0]);
    let on = |i: &usize| dot(&v.vertices[*i], &normal).map(|x| x == ExactScalar::one()).unwrap_or(false);
    faces.faces_by_dim[2].retain(|f| f.vertices.len() == 3 && f.vertices.iter().all(on));
    let patch = classify_tiles(&project_faces(&v, &faces, &coxeter_plane(spec)?));
    let eighth = |k: f64| k * PI / 8.0;
    let expect = [
        [eighth(1.0), eighth(1.0), eighth(6.0)],
        [eighth(1.0), eighth(2.0), eighth(5.0)],
    ];
    let matches = |angles: &[f64], e: &[f64; 3]| {
        angles.len() == 3 && angles.iter().zip(e).all(|(a, b)| (a - b).abs() <= 1e-6)
    };
    let ok = patch.classes.len() == 2
        && expect
            .iter()
            .all(|e| patch.classes.iter().any(|k| matches(&k.angles, e)));
    Ok((ok, format!("{} facet triangles in {} classes", patch.tiles.len(), patch.classes.len())))
}

fn weight_checks(c: &mut Collector, spec: &LatticeSpec, tol: f64) {
    let n = spec.rank();
    let full = n <= WEIGHT_ORACLE_MAX_RANK;
    let voronoi = voronoi_cell(spec);
    c.push("voronoi_vertices", (|| {
        let m = voronoi.clone()?.vertex_count();
        let expect = match (spec.family(), n) {
            (Family::A, _) => Some((1..=n + 1).product::<usize>()),
            (Family::D, 3) | (Family::D, 4) => Some(24),
            (Family::D, 5) => Some(240),
            (Family::D, 6) => Some(160),
            _ => None,
        };
        Ok(match expect {
            Some(e) => (m == e, format!("{m} vertices, expected {e}")),
            None => (m > 0, format!("{m} vertices")),
        })
    })());
    c.push("covolume", (|| {
        let gram = linalg::gram(&fundamental_weights(spec));
        let det = linalg::determinant(&gram);
        let vol = voronoi_volume(spec);
        Ok((vol.square() == det, format!("Vol V(0) = {vol}, Gram det {det}")))
    })());
    c.push("contact_vertices", (|| {
        let m = contact_polytope(spec)?.vertex_count();
        let expect = match (spec.family(), n) {
            (Family::A, 1) => 2,
            (Family::A, _) => 2 * (n + 1),
            (Family::D, 3) => 8,
            (Family::D, 4) => 24,
            (Family::D, _) => 2 * n,
        };
        Ok((m == expect, format!("{m} vertices, expected {expect}")))
    })());
    c.push("delone_cell", (|| {
        let cells = delone_cells_at_origin(spec)?;
        let m = cells[0].vertex_count();
        let expect = match spec.family() {
            Family::A => n + 1,
            Family::D => 1 << (n / 2 + 1),
        };
        Ok((m == expect, format!("{} with {m} vertices, expected {expect}", cells[0].label)))
    })());
    if full {
        c.push("voronoi_euler", (|| Ok(euler_text(&enumerate_faces(&voronoi.clone()?)?)))());
        c.push("contact_euler", (|| Ok(euler_text(&enumerate_faces(&contact_polytope(spec)?)?)))());
        c.push("voronoi_volume_oracle", (|| {
            let v = numeric_volume_oracle(&voronoi.clone()?.vertices)?;
            Ok(oracle_detail(v, &voronoi_volume(spec), tol))
        })());
    }
}
