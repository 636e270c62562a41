use num_integer::Integer as _;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tropical::arith::rat_vec;
use tropical::cycles::TropicalCycle;
use tropical::functions::{parse_polynomial, polynomial_divisor};
use tropical::intersection::{diagonal_intersect, intersection_witnesses, stable_intersect};
use tropical::polyhedra::Polyhedron;

/// A balanced one-dimensional fan in the plane with at most `max_rays` rays.
fn random_fan_curve(rng: &mut ChaCha8Rng, max_rays: usize) -> TropicalCycle {
    loop {
        let k = rng.gen_range(2..max_rays);
        let mut rays: Vec<(i64, i64, i64)> = Vec::new();
        let push = |x: i64, y: i64, rays: &mut Vec<(i64, i64, i64)>| {
            let g = x.gcd(&y);
            let (px, py, w) = (x / g, y / g, g);
            match rays.iter_mut().find(|r| r.0 == px && r.1 == py) {
                Some(r) => r.2 += w,
                None => rays.push((px, py, w)),
            }
        };
        let (mut sx, mut sy) = (0, 0);
        for _ in 0..k {
            let (x, y) = (rng.gen_range(-3..=3), rng.gen_range(-3..=3));
            if (x, y) == (0, 0) {
                continue;
            }
            sx += x;
            sy += y;
            push(x, y, &mut rays);
        }
        if (sx, sy) == (0, 0) || rays.len() + 1 > max_rays {
            continue;
        }
        push(-sx, -sy, &mut rays);
        let dirs: Vec<Vec<i64>> = rays.iter().map(|r| vec![r.0, r.1]).collect();
        let cones: Vec<Vec<usize>> = (0..dirs.len()).map(|i| vec![i]).collect();
        let w = rays.iter().map(|r| r.2).collect();
        let c = TropicalCycle::fan(2, &dirs, &cones, &[], w).unwrap();
        assert!(c.is_balanced());
        return c;
    }
}

fn translated(c: &TropicalCycle, v: &[i64]) -> TropicalCycle {
    let cells = c.cells().iter().map(|s| s.translate(&rat_vec(v))).collect();
    TropicalCycle::from_cells(2, cells, c.weights().to_vec()).unwrap()
}

#[test]
fn stable_matches_diagonal_on_random_fans() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..25 {
        let a = random_fan_curve(&mut rng, 6);
        let b = random_fan_curve(&mut rng, 6);
        let s = stable_intersect(&a, &b).unwrap();
        let d = diagonal_intersect(&a, &b).unwrap();
        assert!(s.equivalent(&d), "{:?} vs {:?}", s.weights(), d.weights());
    }
}

#[test]
fn translated_curves_have_bezout_total() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..10 {
        let a = random_fan_curve(&mut rng, 5);
        let b = random_fan_curve(&mut rng, 5);
        let fixed = stable_intersect(&a, &b).unwrap();
        let moved = stable_intersect(&a, &translated(&b, &[1, 2])).unwrap();
        let total = |c: &TropicalCycle| c.weights().iter().sum::<i64>();
        assert_eq!(total(&fixed), total(&moved));
        assert!(moved.equivalent(&diagonal_intersect(&a, &translated(&b, &[1, 2])).unwrap()));
    }
}

#[test]
fn intersection_is_commutative() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..10 {
        let a = random_fan_curve(&mut rng, 6);
        let b = translated(&random_fan_curve(&mut rng, 6), &[2, -1]);
        assert!(stable_intersect(&a, &b).unwrap().equivalent(&stable_intersect(&b, &a).unwrap()));
    }
}

#[test]
fn surfaces_in_three_space() {
    let x = polynomial_divisor(&parse_polynomial("max(0,x,y,z)").unwrap(), &TropicalCycle::whole_space(3)).unwrap();
    let y = polynomial_divisor(&parse_polynomial("max(1,x,y-1,z+2)").unwrap(), &TropicalCycle::whole_space(3)).unwrap();
    let s = stable_intersect(&x, &y).unwrap();
    assert_eq!(s.dim(), 1);
    assert!(s.is_balanced());
    assert!(s.equivalent(&diagonal_intersect(&x, &y).unwrap()));
}

#[test]
fn witnesses_explain_weights() {
    let line = TropicalCycle::fan(2, &[vec![-1, 0], vec![0, -1], vec![1, 1]], &[vec![0], vec![1], vec![2]], &[], vec![1; 3])
        .unwrap();
    let w = intersection_witnesses(&line, &line).unwrap();
    let origin = Polyhedron::polytope(2, &[rat_vec(&[0, 0])]);
    let at_origin: Vec<_> = w.iter().filter(|x| x.cell == origin).collect();
    assert_eq!(at_origin.len(), 1);
    assert_eq!(at_origin[0].weight(), 1);
    assert_eq!(at_origin[0].pairs.len(), 1);
}
