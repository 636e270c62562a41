use proptest::prelude::*;

use tropical::arith::Integer;
use tropical::cycles::TropicalCycle;
use tropical::functions::{parse_polynomial, polynomial_divisor, Mode, TropicalPolynomial};
use tropical::intersection::stable_intersect;

fn polynomial(n: usize) -> impl Strategy<Value = TropicalPolynomial> {
    let term = (prop::collection::vec(-2i64..=2, n), -3i64..=3);
    (prop::collection::vec(term, 1..=5), any::<bool>()).prop_map(move |(terms, max)| {
        let mode = if max { Mode::Max } else { Mode::Min };
        TropicalPolynomial::from_i64(mode, &terms).unwrap()
    })
}

fn surface() -> TropicalCycle {
    let f = parse_polynomial("max(1,x,y,z,-x,-y,-z)").unwrap();
    polynomial_divisor(&f, &TropicalCycle::whole_space(3)).unwrap()
}

#[test]
fn surface_curve_pipeline() {
    let x = surface();
    assert_eq!(x.dim(), 2);
    assert!(x.is_balanced());
    let g = parse_polynomial("max(3x+4,x-y-z,y+z+3)").unwrap();
    let c = polynomial_divisor(&g, &x).unwrap();
    assert_eq!(c.dim(), 1);
    assert!(!c.is_empty());
    assert!(c.is_balanced());
    assert!(c.cells().iter().all(|s| s.dim() == 1));
}

#[test]
fn divisors_commute() {
    let x = surface();
    let f = parse_polynomial("max(0,x+y,z-1)").unwrap();
    let g = parse_polynomial("min(2x,y,1)").unwrap();
    let fg = polynomial_divisor(&g, &polynomial_divisor(&f, &x).unwrap()).unwrap();
    let gf = polynomial_divisor(&f, &polynomial_divisor(&g, &x).unwrap()).unwrap();
    assert!(fg.equivalent(&gf));
}

#[test]
fn divisor_equals_intersection_with_hypersurface() {
    // On R^n the divisor of a polynomial is its tropical hypersurface.
    let f = parse_polynomial("max(0,x,y,2x+y-1)").unwrap();
    let g = parse_polynomial("max(1,x-1,y)").unwrap();
    let hf = polynomial_divisor(&f, &TropicalCycle::whole_space(2)).unwrap();
    let hg = polynomial_divisor(&g, &TropicalCycle::whole_space(2)).unwrap();
    let by_divisor = polynomial_divisor(&g, &hf).unwrap();
    let by_product = stable_intersect(&hf, &hg).unwrap();
    assert!(by_divisor.equivalent(&by_product));
}

#[test]
fn weight_of_doubled_function() {
    let f = parse_polynomial("max(0,x,y)").unwrap();
    let two = TropicalPolynomial::new(
        Mode::Max,
        2,
        f.terms().iter().map(|(e, c)| (e.iter().map(|a| a * Integer::from(2)).collect(), c * Integer::from(2))).collect(),
    )
    .unwrap();
    let a = polynomial_divisor(&f, &TropicalCycle::whole_space(2)).unwrap();
    let b = polynomial_divisor(&two, &TropicalCycle::whole_space(2)).unwrap();
    assert!(b.equivalent(&a.scaled(2)));
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn divisors_on_the_plane_are_balanced(f in polynomial(2)) {
        let d = polynomial_divisor(&f, &TropicalCycle::whole_space(2)).unwrap();
        prop_assert!(d.is_balanced());
        prop_assert!(d.is_empty() || d.dim() == 1);
    }

    #[test]
    fn divisors_in_space_are_balanced(f in polynomial(3)) {
        let d = polynomial_divisor(&f, &TropicalCycle::whole_space(3)).unwrap();
        prop_assert!(d.is_balanced());
    }

    #[test]
    fn divisors_on_the_surface_are_balanced(f in polynomial(3)) {
        let d = polynomial_divisor(&f, &surface()).unwrap();
        prop_assert!(d.is_balanced());
        prop_assert!(d.is_empty() || d.dim() == 1);
    }
}

#[test]
fn divisor_weights_are_local() {
    use tropical::arith::rat_vec;
    use tropical::polyhedra::Polyhedron;
    let x = surface();
    let v = Polyhedron::polytope(3, &[rat_vec(&[1, 1, 1])]);
    let (cells, weights): (Vec<Polyhedron>, Vec<i64>) = x
        .cells()
        .iter()
        .zip(x.weights())
        .filter(|(c, _)| c.contains_polyhedron(&v))
        .map(|(c, w)| (c.clone(), *w))
        .unzip();
    assert_eq!(cells.len(), 6);
    let local = TropicalCycle::from_cells(3, cells, weights).unwrap().with_local_cone(Some(v));
    assert!(local.is_balanced());
    let f = parse_polynomial("max(x,y,z-1)").unwrap();
    let global = polynomial_divisor(&f, &x).unwrap();
    let near = polynomial_divisor(&f, &local).unwrap();
    assert!(!near.is_empty());
    for c in near.cells() {
        let p = c.relative_interior_point();
        assert_eq!(global.weight_at(&p), near.weight_at(&p));
    }
}
