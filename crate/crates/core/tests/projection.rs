use std::f64::consts::PI;

use coxcell_core::coxeter::{Family, LatticeSpec};
use coxcell_core::exactnum::{dot, ExactScalar, ExactVector};
use coxcell_core::polytope::{enumerate_faces, voronoi_cell};
use coxcell_core::project::{
    classify_tiles, coxeter_plane, project_faces, projected_root_polytope, rotation_defect,
    shape_signature, tiling_patch, Polygon,
};

fn close_multiset(found: &[f64], expect: &[f64]) -> bool {
    let mut e = expect.to_vec();
    e.sort_by(f64::total_cmp);
    found.len() == e.len() && found.iter().zip(&e).all(|(a, b)| (a - b).abs() <= 1e-6)
}

fn voronoi_tiles(f: Family, n: usize) -> Vec<Polygon> {
    let spec = LatticeSpec::root(f, n).unwrap();
    let cell = voronoi_cell(&spec).unwrap();
    let faces = enumerate_faces(&cell).unwrap();
    project_faces(&cell, &faces, &coxeter_plane(&spec).unwrap())
}

#[test]
fn a4_rhombi_fall_into_two_classes() {
    let patch = classify_tiles(&voronoi_tiles(Family::A, 4));
    assert_eq!(patch.classes.len(), 2);
    for class in &patch.classes {
        assert_eq!(class.angles.len(), 4);
        for a in &class.angles {
            let k = a / (PI / 5.0);
            assert!((k - k.round()).abs() < 1e-6, "angle {a} not a multiple of pi/5");
        }
    }
}

#[test]
fn d5_triangles_have_eighth_angles() {
    // triangles of the facet orthogonal to l1 + l2
    let spec = LatticeSpec::root(Family::D, 5).unwrap();
    let cell = voronoi_cell(&spec).unwrap();
    let faces = enumerate_faces(&cell).unwrap();
    let normal = ExactVector::from_integers(&[1, 1, 0, 0, 0]);
    let target = ExactScalar::from_integer(1);
    let on_facet = |i: &usize| dot(&cell.vertices[*i], &normal).unwrap() == target;
    let mut facet_faces = faces.clone();
    facet_faces.faces_by_dim[2].retain(|f| f.vertices.len() == 3 && f.vertices.iter().all(on_facet));
    assert_eq!(facet_faces.faces(2).len(), 24);
    let tris = project_faces(&cell, &facet_faces, &coxeter_plane(&spec).unwrap());
    assert!(!tris.is_empty());
    let a = [PI / 8.0, PI / 8.0, 6.0 * PI / 8.0];
    let b = [PI / 8.0, 2.0 * PI / 8.0, 5.0 * PI / 8.0];
    let mut seen = [false, false];
    for t in &tris {
        let (edges, angles) = shape_signature(t);
        if close_multiset(&angles, &a) {
            seen[0] = true;
        } else if close_multiset(&angles, &b) {
            seen[1] = true;
            let s: Vec<f64> = [1.0, 2.0, 3.0].iter().map(|k| (k * PI / 8.0).sin()).collect();
            let ratio = edges[0] / s[0];
            assert!(edges.iter().zip(&s).all(|(e, x)| (e / x - ratio).abs() < 1e-6));
        } else {
            panic!("unexpected triangle angles {angles:?}");
        }
    }
    assert_eq!(seen, [true, true]);
    assert_eq!(classify_tiles(&tris).classes.len(), 2);
}

#[test]
fn root_polytope_projection_is_symmetric() {
    for (f, n) in [(Family::A, 4), (Family::A, 3), (Family::D, 5), (Family::D, 4)] {
        let spec = LatticeSpec::root(f, n).unwrap();
        let pts = projected_root_polytope(&spec).unwrap();
        let h = coxeter_plane(&spec).unwrap().h as f64;
        assert!(rotation_defect(&pts, 2.0 * PI / h) <= 1e-9, "{spec}");
    }
}

#[test]
fn a4_patch_has_both_rhombi() {
    let spec = LatticeSpec::root(Family::A, 4).unwrap();
    let patch = tiling_patch(&spec, 5.0, 1.0).unwrap();
    assert!(patch.classes.len() >= 2);
    let rhombi = patch.classes.iter().filter(|c| c.angles.len() == 4).count();
    assert_eq!(rhombi, 2);
    for c in &patch.classes {
        for a in &c.angles {
            let k = a / (PI / 5.0);
            assert!((k - k.round()).abs() < 1e-6);
        }
    }
    assert_eq!(patch, tiling_patch(&spec, 5.0, 1.0).unwrap());
}

#[test]
fn d5_patch_has_both_triangles() {
    let spec = LatticeSpec::root(Family::D, 5).unwrap();
    let patch = tiling_patch(&spec, 5.0, 1.0).unwrap();
    let a = [PI / 8.0, PI / 8.0, 6.0 * PI / 8.0];
    let b = [PI / 8.0, 2.0 * PI / 8.0, 5.0 * PI / 8.0];
    for expect in [a, b] {
        assert!(
            patch.classes.iter().any(|c| close_multiset(&c.angles, &expect)),
            "{expect:?} missing"
        );
    }
    for t in &patch.tiles {
        let (edges, angles) = shape_signature(&t.polygon);
        let c = &patch.classes[t.class_id];
        assert!(close_multiset(&angles, &c.angles));
        assert!(close_multiset(&edges, &c.edge_lengths));
    }
}

fn inside(poly: &Polygon, q: [f64; 2]) -> bool {
    let k = poly.len();
    let sides: Vec<f64> = (0..k)
        .map(|i| {
            let (a, b) = (poly[i], poly[(i + 1) % k]);
            (b[0] - a[0]) * (q[1] - a[1]) - (b[1] - a[1]) * (q[0] - a[0])
        })
        .collect();
    sides.iter().all(|&s| s > 0.0) || sides.iter().all(|&s| s < 0.0)
}

#[test]
fn patches_cover_the_disk_once() {
    let radius = 5.0;
    for (f, n) in [(Family::A, 3), (Family::A, 4), (Family::D, 4), (Family::D, 5)] {
        let spec = LatticeSpec::root(f, n).unwrap();
        let patch = tiling_patch(&spec, radius, 1.0).unwrap();
        // points on a sunflower spiral inside the disk of radius R - 2
        let inner: f64 = radius - 2.0;
        for i in 0..400 {
            let r = inner * ((i as f64 + 0.5) / 400.0).sqrt();
            let t = i as f64 * 2.399_963_229_728_653;
            let q = [r * t.cos(), r * t.sin()];
            let hits = patch.tiles.iter().filter(|t| inside(&t.polygon, q)).count();
            assert_eq!(hits, 1, "{spec}: point {q:?} covered {hits} times");
        }
    }
}
