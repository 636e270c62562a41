//! Double description for cones `{x : A x >= 0, E x = 0}`.

use num_traits::{Signed, Zero};

use super::bitset::BitSet;
use crate::arith::{dot_int, int_rank, kernel, primitive, primitive_int, solve, to_rationals, Integer, Rational};

/// Extreme rays and a lineality basis of `{x in R^d : A x >= 0, E x = 0}`.
///
/// The lineality `L` is split off first and the search runs on the pointed
/// cone inside `ker E ∩ L^⊥`, so the returned rays are orthogonal to `L`
/// and lie in `ker E`.
pub(crate) fn cone_generators(
    ineqs: &[Vec<Integer>],
    eqs: &[Vec<Integer>],
    d: usize,
) -> (Vec<Vec<Integer>>, Vec<Vec<Integer>>) {
    let mut all: Vec<Vec<Rational>> = ineqs.iter().map(|r| to_rationals(r)).collect();
    all.extend(eqs.iter().map(|r| to_rationals(r)));
    let lineality: Vec<Vec<Integer>> = kernel(&all, d).iter().map(|v| primitive(v)).collect();

    let mut sub: Vec<Vec<Rational>> = eqs.iter().map(|r| to_rationals(r)).collect();
    sub.extend(lineality.iter().map(|r| to_rationals(r)));
    let w: Vec<Vec<Integer>> = kernel(&sub, d).iter().map(|v| primitive(v)).collect();
    let m = w.len();
    if m == 0 {
        return (Vec::new(), lineality);
    }

    let mat: Vec<Vec<Integer>> =
        ineqs.iter().map(|a| w.iter().map(|wj| dot_int(a, wj)).collect()).collect();
    let rays = pointed_cone_rays(&mat, m);
    let rays = rays
        .into_iter()
        .map(|t| {
            let mut x = vec![Integer::zero(); d];
            for (tj, wj) in t.iter().zip(&w) {
                if tj.is_zero() {
                    continue;
                }
                for (xi, wi) in x.iter_mut().zip(wj) {
                    *xi += tj * wi;
                }
            }
            primitive_int(&x)
        })
        .collect();
    (rays, lineality)
}

struct Ray {
    v: Vec<Integer>,
    tight: BitSet,
}

/// Extreme rays of the pointed cone `{t in R^m : M t >= 0}`; `M` has rank `m`.
fn pointed_cone_rays(mat: &[Vec<Integer>], m: usize) -> Vec<Vec<Integer>> {
    let k = mat.len();
    let mut basis: Vec<usize> = Vec::with_capacity(m);
    let mut chosen: Vec<Vec<Integer>> = Vec::with_capacity(m);
    for (i, row) in mat.iter().enumerate() {
        if basis.len() == m {
            break;
        }
        if row.iter().all(Zero::is_zero) {
            continue;
        }
        chosen.push(row.clone());
        if int_rank(&chosen) == chosen.len() {
            basis.push(i);
        } else {
            chosen.pop();
        }
    }
    assert_eq!(basis.len(), m, "cone is not pointed after removing lineality");

    let bmat: Vec<Vec<Rational>> = chosen.iter().map(|r| to_rationals(r)).collect();
    let mut rays: Vec<Ray> = Vec::with_capacity(m);
    for j in 0..m {
        let mut e = vec![Rational::zero(); m];
        e[j] = Rational::from_integer(1.into());
        let r = solve(&bmat, &e, m).expect("basis rows are independent");
        let mut tight = BitSet::new(k);
        for (jj, &row) in basis.iter().enumerate() {
            if jj != j {
                tight.insert(row);
            }
        }
        rays.push(Ray { v: primitive(&r), tight });
    }

    let in_basis = {
        let mut b = BitSet::new(k);
        for &i in &basis {
            b.insert(i);
        }
        b
    };
    for i in 0..k {
        if in_basis.contains(i) {
            continue;
        }
        let a = &mat[i];
        let vals: Vec<Integer> = rays.iter().map(|r| dot_int(a, &r.v)).collect();
        if vals.iter().all(|v| !v.is_negative()) {
            for (r, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    r.tight.insert(i);
                }
            }
            continue;
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&j| vals[j].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&j| vals[j].is_negative()).collect();
        let mut fresh = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].tight.intersection(&rays[q].tight);
                if common.count() + 2 < m {
                    continue;
                }
                let blocked = (0..rays.len())
                    .any(|r| r != p && r != q && common.is_subset(&rays[r].tight));
                if blocked {
                    continue;
                }
                let vp = &vals[p];
                let vq = -&vals[q];
                let v: Vec<Integer> =
                    rays[q].v.iter().zip(&rays[p].v).map(|(x, y)| vp * x + &vq * y).collect();
                let mut tight = common;
                tight.insert(i);
                fresh.push(Ray { v: primitive_int(&v), tight });
            }
        }
        let mut next = Vec::with_capacity(rays.len() + fresh.len());
        for (mut r, v) in rays.into_iter().zip(vals) {
            if v.is_zero() {
                r.tight.insert(i);
                next.push(r);
            } else if v.is_positive() {
                next.push(r);
            }
        }
        next.extend(fresh);
        rays = next;
    }
    rays.into_iter().map(|r| r.v).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int_vec;

    #[test]
    fn orthant() {
        let (rays, lin) = cone_generators(&[int_vec(&[1, 0]), int_vec(&[0, 1])], &[], 2);
        assert!(lin.is_empty());
        let mut rays = rays;
        rays.sort();
        assert_eq!(rays, vec![int_vec(&[0, 1]), int_vec(&[1, 0])]);
    }

    #[test]
    fn half_plane_has_lineality() {
        let (rays, lin) = cone_generators(&[int_vec(&[0, 1])], &[], 2);
        assert_eq!(lin.len(), 1);
        assert_eq!(rays, vec![int_vec(&[0, 1])]);
    }

    #[test]
    fn square_cone() {
        // homogenized unit square: x0 >= 0 and 0 <= x, y <= x0
        let ineqs = [
            int_vec(&[1, 0, 0]),
            int_vec(&[0, 1, 0]),
            int_vec(&[0, 0, 1]),
            int_vec(&[1, -1, 0]),
            int_vec(&[1, 0, -1]),
        ];
        let (rays, lin) = cone_generators(&ineqs, &[], 3);
        assert!(lin.is_empty());
        assert_eq!(rays.len(), 4);
    }
}
