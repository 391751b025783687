//! Values checked against computations that do not share code with the
//! closed forms: brute-force nearest-point searches, matrix inverses, the
//! numeric hull oracle on hand-written coordinates.

use coxcell_core::coxeter::{
    cartan_matrix, coxeter_element, coxeter_number, fundamental_weights, simple_roots, Family,
    LatticeSpec,
};
use coxcell_core::exactnum::{ExactScalar, ExactVector, SurdValue};
use coxcell_core::linalg;
use coxcell_core::polytope::voronoi_cell;
use coxcell_core::tessellate::lattice_contains;
use coxcell_core::volume::{
    cross_polytope_volume, hemicube_volume, numeric_volume_oracle, simplex_volume,
};

fn q(p: i64, d: i64) -> ExactScalar {
    ExactScalar::new(p, d).unwrap()
}

fn specs(max: usize) -> Vec<LatticeSpec> {
    let mut out = Vec::new();
    for n in 1..=max {
        out.push(LatticeSpec::root(Family::A, n).unwrap());
        if n >= 3 {
            out.push(LatticeSpec::root(Family::D, n).unwrap());
        }
    }
    out
}

#[test]
fn weights_are_inverse_cartan_rows() {
    for spec in specs(8) {
        let c = cartan_matrix(&spec).as_exact();
        let inv = linalg::inverse(&c).unwrap();
        let roots = simple_roots(&spec);
        let weights = fundamental_weights(&spec);
        for (i, w) in weights.iter().enumerate() {
            let combo = roots
                .iter()
                .zip(&inv[i])
                .fold(ExactVector::zeros(spec.ambient_dim()), |acc, (a, c)| &acc + &a.scale(c));
            assert_eq!(&combo, w, "{spec} weight {i}");
        }
    }
}

#[test]
fn coxeter_element_has_order_h() {
    for spec in specs(8).into_iter().filter(|s| s.rank() >= 2) {
        let dim = spec.ambient_dim();
        let x = ExactVector::new((0..dim).map(|i| q((i * i + 3 * i + 1) as i64, 7)).collect());
        // project onto the root span so the identity part does not hide the order
        let roots = simple_roots(&spec);
        let basis: Vec<(ExactVector, ExactScalar)> = linalg::orthogonal_basis(&roots)
            .into_iter()
            .map(|b| {
                let n = b.norm_squared();
                (b, n)
            })
            .collect();
        let perp = linalg::residual_against(&x, &basis);
        let x = &x - &perp;
        let mut y = x.clone();
        let mut order = 0;
        loop {
            y = coxeter_element(&y, &spec).unwrap();
            order += 1;
            if y == x {
                break;
            }
            assert!(order <= 100);
        }
        assert_eq!(order, coxeter_number(&spec), "{spec}");
    }
}

/// Voronoi vertices by brute force: grid points whose nearest lattice
/// points are at least as close as the origin and affinely span the space.
fn brute_force_voronoi_vertices(spec: &LatticeSpec, den: i64) -> usize {
    let dim = spec.ambient_dim();
    let is_a = spec.family() == Family::A;
    let free = if is_a { dim - 1 } else { dim };
    let lattice: Vec<Vec<i64>> = cube(dim, 2)
        .into_iter()
        .filter(|p| lattice_contains(spec, &ExactVector::from_integers(p)).unwrap())
        .collect();
    let mut count = 0;
    for mut x in cube(free, den) {
        if is_a {
            let s: i64 = x.iter().sum();
            x.push(-s);
        }
        let d2 = |p: &[i64]| -> i64 { x.iter().zip(p).map(|(a, b)| (a - b * den).pow(2)).sum() };
        let d0 = d2(&vec![0; dim]);
        let near: Vec<&Vec<i64>> = lattice.iter().filter(|p| d2(p) <= d0).collect();
        if near.iter().any(|p| d2(p) < d0) {
            continue;
        }
        let rows: Vec<Vec<i64>> = near[1..]
            .iter()
            .map(|p| p.iter().zip(near[0]).map(|(a, b)| a - b).collect())
            .collect();
        if linalg::int_rank(&rows) == spec.rank() {
            count += 1;
        }
    }
    count
}

fn cube(dim: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|p| {
                (-r..=r).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    out
}

#[test]
fn voronoi_vertex_counts_by_brute_force() {
    let cases = [
        (LatticeSpec::root(Family::A, 2).unwrap(), 3),
        (LatticeSpec::root(Family::A, 3).unwrap(), 4),
        (LatticeSpec::root(Family::D, 3).unwrap(), 2),
        (LatticeSpec::root(Family::D, 4).unwrap(), 2),
    ];
    for (spec, den) in cases {
        let brute = brute_force_voronoi_vertices(&spec, den);
        assert_eq!(brute, voronoi_cell(&spec).unwrap().vertex_count(), "{spec}");
    }
}

fn close(x: f64, y: f64) -> bool {
    (x - y).abs() <= 1e-9 * y.abs().max(1.0)
}

#[test]
fn oracle_on_explicit_coordinates() {
    // octahedron ±l_i
    let mut octa = Vec::new();
    for i in 0..3 {
        octa.push(ExactVector::unit(3, i));
        octa.push(-&ExactVector::unit(3, i));
    }
    assert!(close(numeric_volume_oracle(&octa).unwrap(), 4.0 / 3.0));
    assert_eq!(cross_polytope_volume(3), q(4, 3));

    // 5-hemicube: even-weight vertices of the cube [-1/2, 1/2]^5
    let hemi: Vec<ExactVector> = (0u32..32)
        .filter(|b| b.count_ones() % 2 == 0)
        .map(|b| {
            let c: Vec<i64> = (0..5).map(|j| if b >> j & 1 == 1 { 1 } else { -1 }).collect();
            ExactVector::from_scaled(&c, 2).unwrap()
        })
        .collect();
    assert!(close(numeric_volume_oracle(&hemi).unwrap(), 13.0 / 15.0));
    assert_eq!(hemicube_volume(5).unwrap(), q(13, 15));

    // simplex of edge sqrt 2: unit vectors of R^{n+1}
    for n in 1..=6 {
        let pts: Vec<ExactVector> = (0..=n).map(|i| ExactVector::unit(n + 1, i)).collect();
        let exact = simplex_volume(n);
        assert!(close(numeric_volume_oracle(&pts).unwrap(), exact.to_f64()));
    }
}

#[test]
fn closed_forms_agree_with_direct_formulas() {
    let fact = |n: i64| (1..=n).product::<i64>();
    for n in 1..=10usize {
        let f = fact(n as i64);
        let expect = SurdValue::sqrt_int(n as u64 + 1).scale(&q(1, f));
        assert_eq!(simplex_volume(n), expect, "simplex {n}");
        assert_eq!(cross_polytope_volume(n), q(1 << n, f), "cross {n}");
        if n >= 3 {
            let h = &ExactScalar::one() - &q(1 << (n - 1), f);
            assert_eq!(hemicube_volume(n).unwrap(), h, "hemicube {n}");
        }
    }
}
