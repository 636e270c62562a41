use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tropical::arith::{rat_vec, Rational};
use tropical::matroids::{bergman_fan_normal, bergman_fan_rincon, BergmanFan, Matroid, MatroidDocument};

fn matroids() -> Vec<(&'static str, Matroid)> {
    vec![
        ("U(2,3)", Matroid::uniform(2, 3).unwrap()),
        ("U(2,4)", Matroid::uniform(2, 4).unwrap()),
        ("U(3,4)", Matroid::uniform(3, 4).unwrap()),
        ("U(3,5)", Matroid::uniform(3, 5).unwrap()),
        ("K4", Matroid::complete_graph(4).unwrap()),
        ("matrix", Matroid::from_matrix(vec![rat_vec(&[1, -1, 0, 0]), rat_vec(&[0, 0, 1, -1])]).unwrap()),
    ]
}

/// Half the points are drawn from cones of `f`, the rest uniformly.
fn sample(f: &BergmanFan, n: usize, rng: &mut ChaCha8Rng) -> Vec<Rational> {
    let cells = f.cycle.cells();
    if rng.gen_bool(0.5) {
        let c = &cells[rng.gen_range(0..cells.len())];
        let mut p = vec![Rational::from_integer(0.into()); n];
        for r in c.rays() {
            let t = Rational::new(rng.gen_range(0..6).into(), rng.gen_range(1..4).into());
            for (x, y) in p.iter_mut().zip(&r) {
                *x += &t * Rational::from_integer(y.clone());
            }
        }
        let t = Rational::from_integer(rng.gen_range(-3..4).into());
        for x in p.iter_mut() {
            *x += &t;
        }
        if rng.gen_bool(0.2) {
            p[rng.gen_range(0..n)] += Rational::new(1.into(), 5.into());
        }
        p
    } else {
        (0..n).map(|_| Rational::new(rng.gen_range(-4..5).into(), rng.gen_range(1..3).into())).collect()
    }
}

#[test]
fn rincon_agrees_with_normal_fan() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, m) in matroids() {
        let a = bergman_fan_rincon(&m).unwrap();
        let b = bergman_fan_normal(&m).unwrap();
        for f in [&a, &b] {
            assert!(f.cycle.is_balanced(), "{name}");
            assert!(f.cycle.weights().iter().all(|&w| w == 1), "{name}");
        }
        assert!(a.cycle.equivalent(&b.cycle), "{name}");
        for _ in 0..500 {
            let p = sample(&a, m.ground_size(), &mut rng);
            let inside = a.contains(&p);
            assert_eq!(inside, b.contains(&p), "{name} at {p:?}");
            assert_eq!(inside, m.max_bases_loop_free(&p), "{name} at {p:?}");
            assert_eq!(inside, m.circuit_criterion(&p, &m.circuits()), "{name} at {p:?}");
        }
    }
}

#[test]
fn document_round_trip() {
    for (_, m) in matroids() {
        let doc = MatroidDocument::from_matroid(&m);
        let back = MatroidDocument::from_json(&doc.to_json()).unwrap().to_matroid().unwrap();
        assert_eq!(back.bases(), m.bases());
    }
}

#[test]
fn dimensions() {
    for (name, m) in matroids() {
        let f = bergman_fan_rincon(&m).unwrap();
        assert_eq!(f.cycle.dim() as usize, m.rank(), "{name}");
    }
}
