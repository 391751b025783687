//! File formats: JSON, CSV, OFF and SVG.

use std::fmt::Write as _;

use serde::Serialize;

use coxcell_core::polytope::{FaceLattice, OrbitPolytope};
use coxcell_core::project::TilePatch;

use crate::CliError;

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// CSV with a header row; fields are quoted as needed.
pub fn to_csv(header: &[&str], rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// 17 significant digits, without negative zero.
fn coord(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn mean(points: &[&Vec<f64>]) -> Vec<f64> {
    let k = points.len() as f64;
    let mut c = vec![0.0; points[0].len()];
    for p in points {
        c.iter_mut().zip(p.iter()).for_each(|(s, x)| *s += x / k);
    }
    c
}

/// Orders the vertices of a planar polygon cyclically.
fn cyclic_order(idx: &[usize], pts: &[Vec<f64>]) -> Vec<usize> {
    let members: Vec<&Vec<f64>> = idx.iter().map(|&i| &pts[i]).collect();
    let c = mean(&members);
    let e1 = sub(members[0], &c);
    let n1 = dot(&e1, &e1).sqrt();
    let e1: Vec<f64> = e1.iter().map(|x| x / n1).collect();
    let e2 = members
        .iter()
        .map(|p| {
            let d = sub(p, &c);
            let t = dot(&d, &e1);
            d.iter().zip(&e1).map(|(x, y)| x - t * y).collect::<Vec<f64>>()
        })
        .max_by(|a, b| dot(a, a).total_cmp(&dot(b, b)))
        .expect("nonempty face");
    let mut order: Vec<(f64, usize)> = idx
        .iter()
        .map(|&i| {
            let d = sub(&pts[i], &c);
            (dot(&d, &e2).atan2(dot(&d, &e1)), i)
        })
        .collect();
    order.sort_by(|a, b| a.0.total_cmp(&b.0));
    order.into_iter().map(|(_, i)| i).collect()
}

/// OFF for ambient dimension at most 4. Polytopes of dimension up to 3
/// list cyclically ordered polygons; 4-polytopes (`4OFF`) list their
/// 3-cells as vertex tuples.
pub fn to_off(poly: &OrbitPolytope, lattice: &FaceLattice) -> Result<String, CliError> {
    let ambient = poly.spec.ambient_dim();
    if ambient > 4 {
        return Err(CliError::Usage(format!(
            "--format off needs ambient dimension <= 4, {} has {ambient}",
            poly.spec
        )));
    }
    let pts: Vec<Vec<f64>> = poly.vertices.iter().map(|v| v.to_f64()).collect();
    let all: Vec<usize> = (0..pts.len()).collect();
    let faces: Vec<Vec<usize>> = match lattice.dim {
        0 => Vec::new(),
        1 => vec![all],
        2 => vec![cyclic_order(&all, &pts)],
        3 => {
            let centre = mean(&pts.iter().collect::<Vec<_>>());
            lattice
                .faces(2)
                .iter()
                .map(|f| {
                    let mut cyc = cyclic_order(&f.vertices, &pts);
                    if ambient == 3 && !outward(&cyc, &pts, &centre) {
                        cyc.reverse();
                    }
                    cyc
                })
                .collect()
        }
        _ => lattice.facets().iter().map(|f| f.vertices.clone()).collect(),
    };
    let edges = if lattice.complete && lattice.dim >= 2 {
        lattice.faces(1).len()
    } else {
        0
    };
    let mut s = String::new();
    let width = if ambient == 4 { 4 } else { 3 };
    s.push_str(if ambient == 4 { "4OFF\n" } else { "OFF\n" });
    writeln!(s, "# {} {}", poly.spec, poly.label).expect("string write");
    writeln!(s, "{} {} {edges}", pts.len(), faces.len()).expect("string write");
    for p in &pts {
        let cols: Vec<String> = (0..width).map(|i| coord(p.get(i).copied().unwrap_or(0.0))).collect();
        writeln!(s, "{}", cols.join(" ")).expect("string write");
    }
    for f in &faces {
        let cols: Vec<String> = f.iter().map(usize::to_string).collect();
        writeln!(s, "{} {}", f.len(), cols.join(" ")).expect("string write");
    }
    Ok(s)
}

fn outward(cyc: &[usize], pts: &[Vec<f64>], centre: &[f64]) -> bool {
    let (a, b, c) = (&pts[cyc[0]], &pts[cyc[1]], &pts[cyc[2]]);
    let (u, v) = (sub(b, a), sub(c, a));
    let n = [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ];
    dot(&n, &sub(a, centre)) > 0.0
}

/// Pixels per lattice unit.
pub const SVG_SCALE: f64 = 100.0;

const PALETTE: [&str; 8] = [
    "#e8b04b", "#4b8be8", "#6cc46a", "#d9605a", "#9b6ad9", "#4fc2c0", "#c9c94f", "#a0a0a0",
];

/// One fill colour per tile class; `y` points up.
pub fn to_svg(patch: &TilePatch, radius: f64, title: &str) -> String {
    let half = radius * SVG_SCALE + 10.0;
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{w:.0}" viewBox="{x:.0} {x:.0} {w:.0} {w:.0}">"#,
        w = 2.0 * half,
        x = -half
    )
    .expect("string write");
    writeln!(s, "<title>{title}</title>").expect("string write");
    for t in &patch.tiles {
        let pts: Vec<String> = t
            .polygon
            .iter()
            .map(|p| format!("{:.3},{:.3}", p[0] * SVG_SCALE + 0.0, -p[1] * SVG_SCALE + 0.0))
            .collect();
        writeln!(
            s,
            r##"<polygon class="c{}" points="{}" fill="{}" stroke="#222" stroke-width="1"/>"##,
            t.class_id,
            pts.join(" "),
            PALETTE[t.class_id % PALETTE.len()]
        )
        .expect("string write");
    }
    s.push_str("</svg>\n");
    s
}
