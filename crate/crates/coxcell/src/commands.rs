//! Command dispatch. Each command builds a document that renders as a text
//! summary, JSON, and where meaningful CSV, OFF or SVG.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use serde::Serialize;

use coxcell_core::coxeter::{
    cartan_matrix, coxeter_number, fundamental_weights, group_order, highest_root, orbit,
    simple_roots, LatticeSpec, Variant,
};
use coxcell_core::exactnum::{ExactScalar, ExactVector, SurdValue};
use coxcell_core::polytope::{
    contact_polytope, delone_cells_at_origin, enumerate_faces_with, euler_check, facet_count_table,
    fundamental_simplex, root_polytope, voronoi_cell, CountTarget, FaceLattice, FacetCountTable,
    OrbitPolytope,
};
use coxcell_core::project::{tiling_patch_with, TilePatch, WindowRule};
use coxcell_core::volume::{
    delone_volume_sum_check, fundamental_simplex_volume, numeric_volume_oracle,
    pyramid_volume_identity, relative_gap, voronoi_volume, DeloneSumReport, PyramidReport,
};

use crate::checks::{lattice_checks, CheckResult};
use crate::config::{Command, Format, RunConfig, Target};
use crate::export::{to_csv, to_json, to_off, to_svg};
use crate::report::{report_all, Dossier};
use crate::CliError;

/// Result of a successful dispatch. `status` is 1 when a check failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub written: Vec<PathBuf>,
}

#[derive(Debug, Serialize)]
pub struct InfoDoc {
    pub lattice: String,
    pub ambient_dim: usize,
    pub cartan_matrix: Vec<Vec<i64>>,
    pub cartan_determinant: ExactScalar,
    pub group_order: u128,
    pub coxeter_number: usize,
    pub simple_roots: Vec<ExactVector>,
    pub fundamental_weights: Vec<ExactVector>,
    pub highest_root: ExactVector,
}

#[derive(Debug, Serialize)]
pub struct PolytopeDoc {
    pub lattice: String,
    pub label: String,
    pub dim: usize,
    pub vertex_count: usize,
    /// Faces per dimension; `null` where only facets were enumerated.
    pub face_counts: Option<Vec<Option<usize>>>,
    pub vertices: Vec<ExactVector>,
}

#[derive(Debug, Serialize)]
pub struct DeloneCellDoc {
    pub label: String,
    pub vertex_count: usize,
    pub volume_oracle: f64,
    pub vertices: Vec<ExactVector>,
}

#[derive(Debug, Serialize)]
pub struct DeloneDoc {
    pub lattice: String,
    pub cells: Vec<DeloneCellDoc>,
    pub volume_sum: f64,
}

#[derive(Debug, Serialize)]
pub struct FacetTableDoc {
    pub polytope: String,
    pub table: FacetCountTable,
    pub euler: Option<bool>,
    pub facet_types: Vec<FacetType>,
}

#[derive(Debug, Serialize)]
pub struct FacetsDoc {
    pub lattice: String,
    pub tables: Vec<FacetTableDoc>,
}

/// Facets grouped by vertex count and squared distance of the centroid.
#[derive(Debug, Serialize)]
pub struct FacetType {
    pub vertices: usize,
    pub centroid_norm_squared: ExactScalar,
    pub count: usize,
}

#[derive(Debug, Serialize)]
pub struct VolumeDoc {
    pub lattice: String,
    pub voronoi_exact: SurdValue,
    pub voronoi_oracle: Option<f64>,
    pub relative_gap: Option<f64>,
    pub fundamental_simplex: Option<SurdValue>,
    pub fundamental_simplex_oracle: Option<f64>,
    pub pyramid: Option<PyramidReport>,
    pub delone: Option<DeloneSumReport>,
}

#[derive(Debug, Serialize)]
pub struct ChecksDoc {
    pub lattice: String,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

#[derive(Debug, Serialize)]
pub struct ProjectDoc {
    pub lattice: String,
    pub radius: f64,
    pub window_scale: f64,
    pub window_rule: WindowRule,
    pub coxeter_number: usize,
    pub patch: TilePatch,
}

enum Doc {
    Info(InfoDoc),
    Polytope(PolytopeDoc, OrbitPolytope, Option<FaceLattice>),
    Delone(DeloneDoc),
    Facets(FacetsDoc),
    Volume(VolumeDoc),
    Checks(ChecksDoc),
    Project(ProjectDoc),
    Report(Dossier),
}

pub fn run(config: &RunConfig) -> Result<Outcome, CliError> {
    let doc = match config.command {
        Command::Info => info(&config.spec()),
        Command::Orbit => {
            let spec = config.spec();
            let hw = config.weight.as_ref().expect("validated");
            polytope(config, orbit(&spec, hw)?)?
        }
        Command::Root => polytope(config, root_polytope(&config.spec())?)?,
        Command::Voronoi => polytope(config, voronoi_cell(&config.spec())?)?,
        Command::Contact => polytope(config, contact_polytope(&config.spec())?)?,
        Command::Delone => delone(&config.spec())?,
        Command::Facets => facets(config)?,
        Command::Volume => volume(&config.spec(), config.oracle)?,
        Command::Verify => {
            let spec = config.spec();
            let checks = lattice_checks(&spec, config.tolerance);
            Doc::Checks(ChecksDoc {
                lattice: spec.to_string(),
                passed: checks.iter().all(|c| c.pass),
                checks,
            })
        }
        Command::Project => {
            let spec = config.spec();
            let patch = tiling_patch_with(&spec, config.radius, config.window_scale, config.window_rule)?;
            Doc::Project(ProjectDoc {
                lattice: spec.to_string(),
                radius: config.radius,
                window_scale: config.window_scale,
                window_rule: config.window_rule,
                coxeter_number: coxeter_number(&spec),
                patch,
            })
        }
        Command::Report => Doc::Report(report_all(config.max_rank, config.tolerance)),
    };

    let status = match &doc {
        Doc::Checks(c) if !c.passed => 1,
        Doc::Report(d) if !d.all_passed() => 1,
        _ => 0,
    };
    let mut written = Vec::new();
    let mut stdout = String::new();
    match (&config.out, config.format) {
        (Some(path), Some(format)) => {
            std::fs::write(path, render(&doc, format, config)?)?;
            written.push(path.clone());
            stdout.push_str(&summary(&doc));
        }
        (None, Some(format)) => stdout.push_str(&render(&doc, format, config)?),
        _ => stdout.push_str(&summary(&doc)),
    }
    if let (Some(path), Doc::Project(p)) = (&config.json_out, &doc) {
        std::fs::write(path, to_json(p)?)?;
        written.push(path.clone());
    }
    Ok(Outcome {
        status,
        stdout,
        written,
    })
}

fn info(spec: &LatticeSpec) -> Doc {
    let c = cartan_matrix(spec);
    Doc::Info(InfoDoc {
        lattice: spec.to_string(),
        ambient_dim: spec.ambient_dim(),
        cartan_matrix: c.entries().to_vec(),
        cartan_determinant: c.determinant(),
        group_order: group_order(spec),
        coxeter_number: coxeter_number(spec),
        simple_roots: simple_roots(spec),
        fundamental_weights: fundamental_weights(spec),
        highest_root: highest_root(spec),
    })
}

fn polytope(config: &RunConfig, poly: OrbitPolytope) -> Result<Doc, CliError> {
    let lattice = match enumerate_faces_with(&poly, &config.budget) {
        Ok(l) => Some(l),
        Err(coxcell_core::Error::BudgetExceeded(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let doc = PolytopeDoc {
        lattice: poly.spec.to_string(),
        label: poly.label.clone(),
        dim: lattice.as_ref().map_or(poly.dim(), |l| l.dim),
        vertex_count: poly.vertex_count(),
        face_counts: lattice.as_ref().map(FaceLattice::counts),
        vertices: poly.vertices.clone(),
    };
    Ok(Doc::Polytope(doc, poly, lattice))
}

fn delone(spec: &LatticeSpec) -> Result<Doc, CliError> {
    let mut cells = Vec::new();
    for cell in delone_cells_at_origin(spec)? {
        cells.push(DeloneCellDoc {
            label: cell.label.clone(),
            vertex_count: cell.vertex_count(),
            volume_oracle: numeric_volume_oracle(&cell.vertices)?,
            vertices: cell.vertices,
        });
    }
    let volume_sum = cells.iter().map(|c| c.volume_oracle).sum();
    Ok(Doc::Delone(DeloneDoc {
        lattice: spec.to_string(),
        cells,
        volume_sum,
    }))
}

fn facets(config: &RunConfig) -> Result<Doc, CliError> {
    let spec = config.spec();
    let mut tables = Vec::new();
    let targets: Vec<(Target, CountTarget)> = match config.target {
        Some(Target::RootPolytope) => vec![(Target::RootPolytope, CountTarget::RootPolytope)],
        Some(Target::Voronoi) => vec![(Target::Voronoi, CountTarget::VoronoiCell)],
        None => vec![
            (Target::RootPolytope, CountTarget::RootPolytope),
            (Target::Voronoi, CountTarget::VoronoiCell),
        ],
    };
    for (target, count_target) in targets {
        let (name, poly) = match (target, spec.variant()) {
            (Target::RootPolytope, Variant::Root) => ("root polytope", root_polytope(&spec)?),
            (Target::RootPolytope, Variant::Weight) => ("contact polytope", contact_polytope(&spec)?),
            (Target::Voronoi, _) => ("voronoi cell", voronoi_cell(&spec)?),
        };
        let lattice = enumerate_faces_with(&poly, &config.budget)?;
        let table = if spec.variant() == Variant::Root {
            facet_count_table(&spec, count_target, Some(&lattice))
        } else {
            // no closed forms for weight lattices
            let mut t = facet_count_table(&spec, count_target, Some(&lattice));
            t.counts.values_mut().for_each(|e| e.note = None);
            t
        };
        let euler = euler_check(&table, lattice.dim).ok();
        tables.push(FacetTableDoc {
            polytope: name.into(),
            table,
            euler,
            facet_types: facet_types(&poly, &lattice),
        });
    }
    Ok(Doc::Facets(FacetsDoc {
        lattice: spec.to_string(),
        tables,
    }))
}

fn facet_types(poly: &OrbitPolytope, lattice: &FaceLattice) -> Vec<FacetType> {
    let mut groups: BTreeMap<(usize, ExactScalar), usize> = BTreeMap::new();
    if lattice.dim == 0 {
        return Vec::new();
    }
    for f in lattice.facets() {
        let mut c = ExactVector::zeros(poly.spec.ambient_dim());
        for &i in &f.vertices {
            c = &c + &poly.vertices[i];
        }
        let k = ExactScalar::from_integer(f.vertices.len() as i64);
        let c = c.scale(&k.recip().expect("nonempty facet"));
        *groups.entry((f.vertices.len(), c.norm_squared())).or_default() += 1;
    }
    groups
        .into_iter()
        .map(|((vertices, centroid_norm_squared), count)| FacetType {
            vertices,
            centroid_norm_squared,
            count,
        })
        .collect()
}

fn volume(spec: &LatticeSpec, with_oracle: bool) -> Result<Doc, CliError> {
    let exact = voronoi_volume(spec);
    let oracle = if with_oracle {
        Some(numeric_volume_oracle(&voronoi_cell(spec)?.vertices)?)
    } else {
        None
    };
    let root = spec.variant() == Variant::Root;
    let simplex = if root { Some(fundamental_simplex_volume(spec)?) } else { None };
    let simplex_oracle = if root && with_oracle {
        Some(numeric_volume_oracle(&fundamental_simplex(spec)?)?)
    } else {
        None
    };
    let pyramid = if root && spec.rank() >= 2 {
        Some(pyramid_volume_identity(spec)?)
    } else {
        None
    };
    let delone = if root && with_oracle {
        Some(delone_volume_sum_check(spec)?)
    } else {
        None
    };
    Ok(Doc::Volume(VolumeDoc {
        lattice: spec.to_string(),
        relative_gap: oracle.map(|o| relative_gap(o, exact.to_f64())),
        voronoi_exact: exact,
        voronoi_oracle: oracle,
        fundamental_simplex: simplex,
        fundamental_simplex_oracle: simplex_oracle,
        pyramid,
        delone,
    }))
}

fn check_rows(checks: &[CheckResult]) -> Vec<Vec<String>> {
    checks
        .iter()
        .map(|c| vec![c.id.clone(), c.pass.to_string(), c.detail.clone()])
        .collect()
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or(String::new(), T::to_string)
}

fn render(doc: &Doc, format: Format, config: &RunConfig) -> Result<String, CliError> {
    let unsupported = |what: &str| {
        Err(CliError::Usage(format!(
            "--format {} is not available for {what}",
            format!("{format:?}").to_lowercase()
        )))
    };
    match (format, doc) {
        (Format::Json, Doc::Info(d)) => to_json(d),
        (Format::Json, Doc::Polytope(d, _, _)) => to_json(d),
        (Format::Json, Doc::Delone(d)) => to_json(d),
        (Format::Json, Doc::Facets(d)) => to_json(d),
        (Format::Json, Doc::Volume(d)) => to_json(d),
        (Format::Json, Doc::Checks(d)) => to_json(d),
        (Format::Json, Doc::Project(d)) => to_json(d),
        (Format::Json, Doc::Report(d)) => to_json(d),
        (Format::Off, Doc::Polytope(_, poly, Some(lattice))) => to_off(poly, lattice),
        (Format::Off, Doc::Polytope(..)) => unsupported("polytopes without a face lattice"),
        (Format::Svg, Doc::Project(d)) => Ok(to_svg(&d.patch, config.radius, &d.lattice)),
        (Format::Csv, Doc::Info(d)) => {
            let mut rows = Vec::new();
            for (kind, vs) in [("simple_root", &d.simple_roots), ("fundamental_weight", &d.fundamental_weights)] {
                for (i, v) in vs.iter().enumerate() {
                    rows.push(vec![kind.into(), (i + 1).to_string(), v.to_string()]);
                }
            }
            rows.push(vec!["highest_root".into(), String::new(), d.highest_root.to_string()]);
            to_csv(&["kind", "index", "vector"], &rows)
        }
        (Format::Csv, Doc::Polytope(d, _, _)) => {
            let dim = d.vertices.first().map_or(0, ExactVector::ambient_dim);
            let header: Vec<String> = std::iter::once("index".to_string())
                .chain((1..=dim).map(|i| format!("x{i}")))
                .collect();
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            let rows: Vec<Vec<String>> = d
                .vertices
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    std::iter::once(i.to_string())
                        .chain(v.coords().iter().map(ExactScalar::to_string))
                        .collect()
                })
                .collect();
            to_csv(&header, &rows)
        }
        (Format::Csv, Doc::Delone(d)) => {
            let rows: Vec<Vec<String>> = d
                .cells
                .iter()
                .map(|c| vec![c.label.clone(), c.vertex_count.to_string(), format!("{:.15e}", c.volume_oracle)])
                .collect();
            to_csv(&["label", "vertices", "volume_oracle"], &rows)
        }
        (Format::Csv, Doc::Facets(d)) => {
            let mut rows = Vec::new();
            for t in &d.tables {
                for (dim, e) in &t.table.counts {
                    rows.push(vec![
                        t.polytope.clone(),
                        dim.to_string(),
                        opt(&e.formula),
                        opt(&e.enumerated),
                        opt(&e.agree),
                    ]);
                }
            }
            to_csv(&["polytope", "d", "formula", "enumerated", "agree"], &rows)
        }
        (Format::Csv, Doc::Volume(d)) => {
            let float = |x: Option<f64>| x.map_or(String::new(), |x| format!("{x:.15e}"));
            let mut rows = vec![vec![
                "voronoi".to_string(),
                d.voronoi_exact.to_string(),
                float(d.voronoi_oracle),
            ]];
            if let Some(s) = &d.fundamental_simplex {
                rows.push(vec!["fundamental_simplex".into(), s.to_string(), float(d.fundamental_simplex_oracle)]);
            }
            to_csv(&["quantity", "exact", "oracle"], &rows)
        }
        (Format::Csv, Doc::Checks(d)) => to_csv(&["id", "pass", "detail"], &check_rows(&d.checks)),
        (Format::Csv, Doc::Report(d)) => to_csv(&["id", "pass", "detail"], &check_rows(&d.checks)),
        (Format::Csv, Doc::Project(d)) => {
            let mut rows = Vec::new();
            for (i, t) in d.patch.tiles.iter().enumerate() {
                for p in &t.polygon {
                    rows.push(vec![
                        i.to_string(),
                        t.class_id.to_string(),
                        format!("{:.12}", p[0]),
                        format!("{:.12}", p[1]),
                    ]);
                }
            }
            to_csv(&["tile", "class", "x", "y"], &rows)
        }
        (Format::Off, _) => unsupported("this command"),
        (Format::Svg, _) => unsupported("this command"),
    }
}

fn summary(doc: &Doc) -> String {
    let mut s = String::new();
    let w = &mut s;
    match doc {
        Doc::Info(d) => {
            let _ = writeln!(w, "{}  ambient dimension {}", d.lattice, d.ambient_dim);
            let _ = writeln!(w, "det C = {}, |W| = {}, h = {}", d.cartan_determinant, d.group_order, d.coxeter_number);
            for (i, (a, o)) in d.simple_roots.iter().zip(&d.fundamental_weights).enumerate() {
                let _ = writeln!(w, "a{} = {a}   w{} = {o}", i + 1, i + 1);
            }
            let _ = writeln!(w, "highest root {}", d.highest_root);
        }
        Doc::Polytope(d, _, _) => {
            let _ = writeln!(w, "{} {}: {} vertices, dimension {}", d.lattice, d.label, d.vertex_count, d.dim);
            if let Some(c) = &d.face_counts {
                let parts: Vec<String> = c.iter().map(|x| x.map_or("?".into(), |x| x.to_string())).collect();
                let _ = writeln!(w, "faces by dimension: {}", parts.join("/"));
            }
        }
        Doc::Delone(d) => {
            for c in &d.cells {
                let _ = writeln!(w, "{}: {} vertices, volume {:.12}", c.label, c.vertex_count, c.volume_oracle);
            }
            let _ = writeln!(w, "sum {:.12}", d.volume_sum);
        }
        Doc::Facets(d) => {
            for t in &d.tables {
                let _ = writeln!(w, "{} {}", d.lattice, t.polytope);
                let _ = writeln!(w, "{:>3} {:>12} {:>12}  agree", "d", "formula", "enumerated");
                for (dim, e) in &t.table.counts {
                    let agree = match e.agree {
                        Some(true) => "yes".to_string(),
                        Some(false) => "NO".to_string(),
                        None => e.note.clone().map_or("-".into(), |n| format!("- ({n})")),
                    };
                    let _ = writeln!(w, "{dim:>3} {:>12} {:>12}  {agree}", opt(&e.formula), opt(&e.enumerated));
                }
                if let Some(ok) = t.euler {
                    let _ = writeln!(w, "euler characteristic {}", if ok { "holds" } else { "FAILS" });
                }
                for f in &t.facet_types {
                    let _ = writeln!(w, "{} facets with {} vertices, centroid norm^2 {}", f.count, f.vertices,
                        f.centroid_norm_squared);
                }
            }
        }
        Doc::Volume(d) => {
            let _ = writeln!(w, "{}", d.voronoi_exact);
            if let (Some(o), Some(g)) = (d.voronoi_oracle, d.relative_gap) {
                let _ = writeln!(w, "oracle {o:.15} (relative gap {g:.1e})");
            }
            match (&d.fundamental_simplex, d.fundamental_simplex_oracle) {
                (Some(s), Some(o)) => {
                    let _ = writeln!(w, "fundamental simplex {s}, oracle {o:.15}");
                }
                (Some(s), None) => {
                    let _ = writeln!(w, "fundamental simplex {s}");
                }
                _ => {}
            }
            if let Some(p) = &d.pyramid {
                let _ = writeln!(w, "pyramids: {} x {} x {} / {} = {} ({})", p.facets, p.height, p.facet_volume,
                    p.spec.rank(), p.total, if p.agrees { "agrees" } else { "DISAGREES" });
            }
            if let Some(r) = &d.delone {
                let _ = writeln!(w, "delone cells at origin sum to {:.15}", r.sum);
            }
        }
        Doc::Checks(d) => {
            for c in &d.checks {
                let _ = writeln!(w, "{} {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.id, c.detail);
            }
            let failed = d.checks.iter().filter(|c| !c.pass).count();
            let _ = writeln!(w, "{} checks, {failed} failed", d.checks.len());
        }
        Doc::Project(d) => {
            let _ = writeln!(w, "{} patch radius {} window scale {}: {} tiles", d.lattice, d.radius, d.window_scale, d.patch.tiles.len());
            for (i, c) in d.patch.classes.iter().enumerate() {
                let deg: Vec<String> = c.angles.iter().map(|a| format!("{:.2}", a.to_degrees())).collect();
                let _ = writeln!(w, "class {i}: {} tiles, angles {}", c.count, deg.join(", "));
            }
        }
        Doc::Report(d) => {
            for c in d.checks.iter().filter(|c| !c.pass) {
                let _ = writeln!(w, "FAIL {}: {}", c.id, c.detail);
            }
            let _ = writeln!(w, "{} checks up to rank {}: {} passed, {} failed", d.total, d.max_rank, d.passed, d.failed);
        }
    }
    s
}
