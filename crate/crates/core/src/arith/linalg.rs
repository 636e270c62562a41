use num_integer::Integer as _;
use num_traits::{One, Zero};

use super::{Integer, Rational};

pub fn to_rationals(v: &[Integer]) -> Vec<Rational> {
    v.iter().map(|x| Rational::from_integer(x.clone())).collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    let mut s = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x * y;
        }
    }
    s
}

pub fn dot_int(a: &[Integer], b: &[Integer]) -> Integer {
    let mut s = Integer::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x * y;
        }
    }
    s
}

/// Divides an integer vector by the gcd of its entries.
pub fn primitive_int(v: &[Integer]) -> Vec<Integer> {
    let mut g = Integer::zero();
    for x in v {
        g = g.gcd(x);
        if g.is_one() {
            return v.to_vec();
        }
    }
    if g.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Smallest positive integer multiple of a rational vector, made primitive.
pub fn primitive(v: &[Rational]) -> Vec<Integer> {
    let mut l = Integer::one();
    for x in v {
        if !x.is_zero() {
            l = l.lcm(x.denom());
        }
    }
    let ints: Vec<Integer> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    primitive_int(&ints)
}

/// Reduced row echelon form in place. Zero rows are removed; returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<Rational>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        if !inv.is_one() {
            for x in rows[r].iter_mut().skip(c) {
                *x *= &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Rank of an integer matrix by fraction-free elimination.
pub fn int_rank(rows: &[Vec<Integer>]) -> usize {
    let mut m: Vec<Vec<Integer>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (top, rest) = m.split_at_mut(r + 1);
        let pr = &top[r];
        for row in rest.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let g = pr[c].gcd(&row[c]);
            let a = &pr[c] / &g;
            let b = &row[c] / &g;
            for j in c..ncols {
                row[j] = &row[j] * &a - &pr[j] * &b;
            }
            let reduced = primitive_int(row);
            *row = reduced;
        }
        r += 1;
    }
    r
}

/// Basis of the null space `{x : rows * x = 0}` in `Q^ncols`.
pub fn kernel(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Some solution of `rows * x = rhs`, or `None` if inconsistent.
pub fn solve(rows: &[Vec<Rational>], rhs: &[Rational], ncols: usize) -> Option<Vec<Rational>> {
    let mut aug: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut v = r.clone();
            v.push(b.clone());
            v
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[r][ncols].clone();
    }
    Some(x)
}

/// Orthogonal projection of `v` onto the complement of the span of `basis`.
pub fn project_onto_complement(v: &[Rational], basis: &[Vec<Rational>]) -> Vec<Rational> {
    let p = project_onto(v, basis);
    v.iter().zip(p).map(|(a, b)| a - b).collect()
}

/// Orthogonal projection of `v` onto the span of the independent rows `basis`.
pub fn project_onto(v: &[Rational], basis: &[Vec<Rational>]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); v.len()];
    if basis.is_empty() {
        return out;
    }
    // Solve the Gram system G c = B v; the projection is B^T c.
    let k = basis.len();
    let gram: Vec<Vec<Rational>> =
        (0..k).map(|i| (0..k).map(|j| dot(&basis[i], &basis[j])).collect()).collect();
    let rhs: Vec<Rational> = basis.iter().map(|b| dot(b, v)).collect();
    let c = solve(&gram, &rhs, k).expect("projection basis must be independent");
    for (ci, b) in c.iter().zip(basis) {
        if ci.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(b) {
            *o += ci * x;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int_vec, rat_vec};

    #[test]
    fn kernel_of_plane() {
        let k = kernel(&[rat_vec(&[1, 1, 1])], 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(dot(&rat_vec(&[1, 1, 1]), v).is_zero());
        }
    }

    #[test]
    fn ranks_agree() {
        let m = [int_vec(&[2, 4, 6]), int_vec(&[1, 2, 3]), int_vec(&[0, 1, 5])];
        let q: Vec<_> = m.iter().map(|r| to_rationals(r)).collect();
        assert_eq!(int_rank(&m), 2);
        assert_eq!(rank(&q), 2);
    }

    #[test]
    fn primitive_scaling() {
        let v = vec![Rational::new(1.into(), 2.into()), Rational::new((-3).into(), 4.into())];
        assert_eq!(primitive(&v), int_vec(&[2, -3]));
        assert_eq!(primitive_int(&int_vec(&[0, 6, -9])), int_vec(&[0, 2, -3]));
    }

    #[test]
    fn projection_is_orthogonal() {
        let b = vec![rat_vec(&[1, 1, 0])];
        let p = project_onto_complement(&rat_vec(&[3, 1, 2]), &b);
        assert_eq!(p, rat_vec(&[1, -1, 2]));
    }

    #[test]
    fn inconsistent_system() {
        let rows = vec![rat_vec(&[1, 1]), rat_vec(&[2, 2])];
        assert!(solve(&rows, &rat_vec(&[1, 3]), 2).is_none());
        assert_eq!(solve(&rows, &rat_vec(&[1, 2]), 2), Some(rat_vec(&[1, 0])));
    }
}
