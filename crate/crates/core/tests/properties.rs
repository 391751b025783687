use proptest::prelude::*;

use coxcell_core::coxeter::{
    fundamental_weights, group_order, orbit, reflect, simple_roots, stabilizer_order, Family,
    LatticeSpec, WeightCoord,
};
use coxcell_core::exactnum::{dot, ExactScalar, ExactVector, SurdValue};
use coxcell_core::polytope::{
    contact_polytope, enumerate_faces, euler_check, facet_count_table, root_polytope, voronoi_cell,
    CountTarget,
};
use coxcell_core::project::{classify_tiles, Polygon};
use coxcell_core::tessellate::lattice_contains;

fn scalar() -> impl Strategy<Value = ExactScalar> {
    (-50i64..50, 1i64..20).prop_map(|(p, q)| ExactScalar::new(p, q).unwrap())
}

fn spec_strategy(max: usize) -> impl Strategy<Value = LatticeSpec> {
    (prop_oneof![Just(Family::A), Just(Family::D)], 1..=max, any::<bool>()).prop_filter_map(
        "D needs rank 3",
        |(f, n, weight)| {
            let spec = if weight { LatticeSpec::weight(f, n) } else { LatticeSpec::root(f, n) };
            spec.ok()
        },
    )
}

fn vector_for(spec: LatticeSpec) -> impl Strategy<Value = (LatticeSpec, ExactVector)> {
    proptest::collection::vec(scalar(), spec.ambient_dim())
        .prop_map(move |c| (spec, ExactVector::new(c)))
}

fn square_free(m: u64) -> bool {
    (2..).take_while(|p| p * p <= m).all(|p| m % (p * p) != 0)
}

proptest! {
    #[test]
    fn scalar_ring_laws(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, ExactScalar::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.recip().unwrap(), ExactScalar::one());
        }
    }

    #[test]
    fn surd_radicands_are_square_free(p in 0i64..400, q in 1i64..60) {
        let s = SurdValue::sqrt_rational(&ExactScalar::new(p, q).unwrap());
        prop_assert!(s.is_zero() || square_free(s.radicand()));
        prop_assert_eq!(s.square(), ExactScalar::new(p, q).unwrap());
    }

    #[test]
    fn dot_is_bilinear(u in proptest::collection::vec(scalar(), 5),
                       v in proptest::collection::vec(scalar(), 5),
                       w in proptest::collection::vec(scalar(), 5),
                       s in scalar()) {
        let (u, v, w) = (ExactVector::new(u), ExactVector::new(v), ExactVector::new(w));
        prop_assert_eq!(dot(&(&u + &v), &w).unwrap(), &dot(&u, &w).unwrap() + &dot(&v, &w).unwrap());
        prop_assert_eq!(dot(&u.scale(&s), &w).unwrap(), &s * &dot(&u, &w).unwrap());
        prop_assert_eq!(dot(&u, &v).unwrap(), dot(&v, &u).unwrap());
    }

    #[test]
    fn lattice_closed_under_translation(seed in spec_strategy(6), a in proptest::collection::vec(-3i64..=3, 6),
                                        b in proptest::collection::vec(-3i64..=3, 6)) {
        // integer combinations of the simple roots (root) or weights (weight)
        let basis = match seed.variant() {
            coxcell_core::coxeter::Variant::Root => simple_roots(&seed),
            coxcell_core::coxeter::Variant::Weight => fundamental_weights(&seed),
        };
        let combo = |c: &[i64]| basis.iter().zip(c).fold(
            ExactVector::zeros(seed.ambient_dim()),
            |acc, (v, &k)| &acc + &v.scale(&ExactScalar::from_integer(k)),
        );
        let (x, y) = (combo(&a), combo(&b));
        prop_assert!(lattice_contains(&seed, &x).unwrap());
        prop_assert!(lattice_contains(&seed, &(&x + &y)).unwrap());
        prop_assert!(lattice_contains(&seed, &(&x - &y)).unwrap());
    }

    #[test]
    fn tile_classes_stable_under_rigid_motion(angle in 0.0f64..6.3, dx in -10.0f64..10.0, dy in -10.0f64..10.0) {
        let shapes: Vec<Polygon> = vec![
            vec![[0.0, 0.0], [1.0, 0.0], [1.3, 0.9], [0.3, 0.9]],
            vec![[0.0, 0.0], [1.0, 0.0], [0.5, 0.2]],
            vec![[0.0, 0.0], [1.0, 0.0], [1.8, 0.6], [0.8, 0.6]],
            vec![[2.0, 2.0], [3.0, 2.0], [3.3, 2.9], [2.3, 2.9]],
        ];
        let (c, s) = (angle.cos(), angle.sin());
        let moved: Vec<Polygon> = shapes.iter().map(|p| p.iter()
            .map(|q| [c * q[0] - s * q[1] + dx, s * q[0] + c * q[1] + dy]).collect()).collect();
        let ids = |ps: &[Polygon]| classify_tiles(ps).tiles.iter().map(|t| t.class_id).collect::<Vec<_>>();
        prop_assert_eq!(ids(&shapes), ids(&moved));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn reflections_are_isometric_involutions(
        (spec, v) in spec_strategy(8).prop_flat_map(vector_for),
        i in 0usize..8,
    ) {
        let i = i % spec.rank();
        let r = reflect(&v, i, &spec).unwrap();
        prop_assert_eq!(reflect(&r, i, &spec).unwrap(), v.clone());
        prop_assert_eq!(r.norm_squared(), v.norm_squared());
    }
}

fn all_specs(max: usize) -> Vec<LatticeSpec> {
    let mut out = Vec::new();
    for n in 1..=max {
        for f in [Family::A, Family::D] {
            if let Ok(s) = LatticeSpec::root(f, n) {
                out.push(s);
            }
        }
    }
    out
}

#[test]
fn orbit_stabilizer_for_fundamental_weights() {
    for spec in all_specs(6) {
        for i in 0..spec.rank() {
            let hw = WeightCoord::fundamental(spec.rank(), i);
            let size = orbit(&spec, &hw).unwrap().vertex_count() as u128;
            assert_eq!(size * stabilizer_order(&spec, &hw), group_order(&spec), "{spec} w{i}");
        }
    }
}

#[test]
fn weights_dual_to_roots() {
    for spec in all_specs(8) {
        let (w, a) = (fundamental_weights(&spec), simple_roots(&spec));
        for (i, wi) in w.iter().enumerate() {
            for (j, aj) in a.iter().enumerate() {
                let expect = ExactScalar::from_integer((i == j) as i64);
                assert_eq!(dot(wi, aj).unwrap(), expect, "{spec} ({i},{j})");
            }
        }
    }
}

#[test]
fn euler_characteristic_of_enumerated_lattices() {
    let mut polys = Vec::new();
    for spec in all_specs(5) {
        polys.push(root_polytope(&spec).unwrap());
        polys.push(voronoi_cell(&spec).unwrap());
        let w = spec.with_variant(coxcell_core::coxeter::Variant::Weight);
        polys.push(voronoi_cell(&w).unwrap());
        polys.push(contact_polytope(&w).unwrap());
    }
    for p in polys {
        let lattice = enumerate_faces(&p).unwrap_or_else(|e| panic!("{} {}: {e:?}", p.spec, p.label));
        let counts = lattice.counts();
        let chi: i64 = counts
            .iter()
            .enumerate()
            .map(|(d, c)| {
                let c = c.expect("complete lattice") as i64;
                if d % 2 == 0 { c } else { -c }
            })
            .sum();
        let n = lattice.dim;
        let expect = 1 - if n % 2 == 0 { 1 } else { -1 };
        assert_eq!(chi, expect, "{} {}", p.spec, p.label);
    }
}

#[test]
fn euler_holds_for_formula_tables() {
    for spec in all_specs(8).into_iter().filter(|s| s.rank() >= 2) {
        if spec.family() == Family::D && spec.rank() < 4 {
            continue;
        }
        for target in [CountTarget::RootPolytope, CountTarget::VoronoiCell] {
            let table = facet_count_table(&spec, target, None);
            assert!(euler_check(&table, spec.rank()).unwrap(), "{spec} {target:?}");
        }
    }
}
