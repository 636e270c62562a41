use proptest::prelude::*;

use tropical::arith::{rank, rat_vec, Rational};
use tropical::cycles::{CycleDocument, PolyhedralComplex, TropicalCycle};
use tropical::functions::{parse_polynomial, polynomial_divisor};
use tropical::polyhedra::Polyhedron;

fn orthants() -> TropicalCycle {
    TropicalCycle::fan(
        2,
        &[vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]],
        &[vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]],
        &[],
        vec![1; 4],
    )
    .unwrap()
}

fn six_rays() -> TropicalCycle {
    TropicalCycle::fan(
        2,
        &[vec![1, 0], vec![1, 1], vec![0, 1], vec![-1, 0], vec![-1, -1], vec![0, -1]],
        &[vec![0], vec![1], vec![2], vec![3], vec![4], vec![5]],
        &[],
        vec![1; 6],
    )
    .unwrap()
}

#[test]
fn balancing_session() {
    assert!(orthants().is_balanced());
    let bad = orthants().with_weights(vec![1, 2, 1, 1]).unwrap();
    assert!(!bad.is_balanced());
}

#[test]
fn irreducibility_session() {
    let x = six_rays();
    assert!(!x.is_irreducible());
    let ws = x.weight_space();
    assert_eq!(ws.dimension, 4);
    let mut stacked: Vec<Vec<Rational>> = ws.basis.clone();
    stacked.extend([
        rat_vec(&[1, -1, 1, 0, 0, 0]),
        rat_vec(&[0, 0, 1, 0, 0, 1]),
        rat_vec(&[1, 0, 0, 1, 0, 0]),
        rat_vec(&[0, 1, 0, 0, 1, 0]),
    ]);
    assert_eq!(rank(&stacked), 4);
}

#[test]
fn weight_space_survives_refinement() {
    let x = six_rays();
    let cut = PolyhedralComplex::new(2, 2, vec![
        Polyhedron::from_homogeneous_h(2, &[tropical::arith::int_vec(&[2, 1, 0])], &[]),
        Polyhedron::from_homogeneous_h(2, &[tropical::arith::int_vec(&[-2, -1, 0])], &[]),
    ])
    .unwrap();
    let r = x.refine(&cut).unwrap();
    assert!(r.cells().len() > x.cells().len());
    assert!(r.is_balanced());
    assert_eq!(r.weight_space().dimension, x.weight_space().dimension);
    assert!(r.equivalent(&x));
}

#[test]
fn documents_round_trip() {
    let f = parse_polynomial("max(1,x,y,z,-x,-y,-z)").unwrap();
    let x = polynomial_divisor(&f, &TropicalCycle::whole_space(3)).unwrap();
    for c in [orthants(), six_rays(), x] {
        let text = CycleDocument::from_cycle(&c).to_json();
        let back = CycleDocument::from_json(&text).unwrap().to_cycle().unwrap();
        assert!(back.equivalent(&c));
        assert_eq!(CycleDocument::from_cycle(&back).to_json(), text);
    }
}

#[test]
fn skeleton_and_f_vector() {
    let x = orthants();
    assert_eq!(x.complex().f_vector(), vec![1, 4, 4]);
    assert_eq!(x.k_skeleton(1).cells().len(), 4);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, ..ProptestConfig::default() })]

    #[test]
    fn scaling_preserves_balance(k in 1i64..5, w in 1i64..4) {
        let x = six_rays().with_weights(vec![w; 6]).unwrap().scaled(k);
        prop_assert!(x.is_balanced());
        prop_assert_eq!(x.is_irreducible(), false);
    }
}
