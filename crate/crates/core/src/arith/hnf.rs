use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::{Integer, IntegerMatrix};

/// Column-style Hermite normal form `input * transform = hnf`.
#[derive(Clone, Debug)]
pub struct HnfResult {
    pub hnf: IntegerMatrix,
    pub transform: IntegerMatrix,
    /// Rank of the input. The last `rank` columns of `hnf` hold the triangular block.
    pub rank: usize,
    /// Row index of the pivot in each of the last `rank` columns, left to right.
    pub pivot_rows: Vec<usize>,
}

/// Returns `(g, s, t)` with `g = gcd(a, b) >= 0` and `s*a + t*b = g`.
fn ext_gcd(a: &Integer, b: &Integer) -> (Integer, Integer, Integer) {
    if b.is_zero() {
        return if a.is_negative() {
            (-a, -Integer::one(), Integer::zero())
        } else {
            (a.clone(), Integer::one(), Integer::zero())
        };
    }
    if !a.is_zero() && b.is_multiple_of(a) {
        let s = if a.is_negative() { -Integer::one() } else { Integer::one() };
        return (a.abs(), s, Integer::zero());
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Integer::one(), Integer::zero());
    let (mut t0, mut t1) = (Integer::zero(), Integer::one());
    while !r1.is_zero() {
        let q = r0.div_floor(&r1);
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let s2 = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.is_negative() {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Hermite normal form by unimodular column operations.
///
/// Rows are processed bottom-up. Each row with a nonzero entry among the
/// still free columns receives a positive pivot in the rightmost free
/// column, and the entries to the right of the pivot are reduced into
/// `[0, pivot)`. Rows without such an entry are dependent on the rows
/// below and receive no pivot, so for rank-deficient input the triangular
/// block has `rank` columns and the remaining columns are zero.
pub fn hnf(m: &IntegerMatrix) -> HnfResult {
    let (rows, n) = (m.rows(), m.cols());
    let mut a: Vec<Vec<Integer>> = (0..n).map(|j| m.column(j)).collect();
    let mut u: Vec<Vec<Integer>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { Integer::one() } else { Integer::zero() }).collect())
        .collect();
    let mut k = n;
    let mut pivot_rows = Vec::new();

    for i in (0..rows).rev() {
        if k == 0 {
            break;
        }
        let p = k - 1;
        for j in 0..p {
            if a[j][i].is_zero() {
                continue;
            }
            let x = a[p][i].clone();
            let y = a[j][i].clone();
            let (g, s, t) = ext_gcd(&x, &y);
            let yg = &y / &g;
            let xg = &x / &g;
            combine(&mut a, p, j, &s, &t, &yg, &xg);
            combine(&mut u, p, j, &s, &t, &yg, &xg);
        }
        if a[p][i].is_zero() {
            continue;
        }
        if a[p][i].is_negative() {
            negate(&mut a[p]);
            negate(&mut u[p]);
        }
        let pivot = a[p][i].clone();
        for j in k..n {
            let q = a[j][i].div_floor(&pivot);
            if !q.is_zero() {
                sub_multiple(&mut a, j, p, &q);
                sub_multiple(&mut u, j, p, &q);
            }
        }
        pivot_rows.push(i);
        k -= 1;
    }
    pivot_rows.reverse();

    HnfResult {
        hnf: IntegerMatrix::from_columns(&a, rows),
        transform: IntegerMatrix::from_columns(&u, n),
        rank: n - k,
        pivot_rows,
    }
}

/// `(c_p, c_j) <- (s c_p + t c_j, -yg c_p + xg c_j)`, a determinant one step.
fn combine(
    cols: &mut [Vec<Integer>],
    p: usize,
    j: usize,
    s: &Integer,
    t: &Integer,
    yg: &Integer,
    xg: &Integer,
) {
    let len = cols[p].len();
    for r in 0..len {
        let cp = &cols[p][r];
        let cj = &cols[j][r];
        if cp.is_zero() && cj.is_zero() {
            continue;
        }
        let np = s * cp + t * cj;
        let nj = xg * cj - yg * cp;
        cols[p][r] = np;
        cols[j][r] = nj;
    }
}

fn negate(col: &mut [Integer]) {
    for x in col.iter_mut() {
        *x = -std::mem::take(x);
    }
}

fn sub_multiple(cols: &mut [Vec<Integer>], j: usize, p: usize, q: &Integer) {
    let len = cols[p].len();
    for r in 0..len {
        if !cols[p][r].is_zero() {
            let d = q * &cols[p][r];
            cols[j][r] -= d;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_shape(m: &IntegerMatrix, r: &HnfResult) {
        assert_eq!(m.mul(&r.transform), r.hnf);
        assert_eq!(r.transform.determinant().abs(), Integer::one());
        let n = m.cols();
        let free = n - r.rank;
        for j in 0..free {
            assert!(r.hnf.column(j).iter().all(Zero::is_zero));
        }
        for (c, &pr) in r.pivot_rows.iter().enumerate() {
            let col = free + c;
            let piv = r.hnf.get(pr, col);
            assert!(piv.is_positive());
            for &later in &r.pivot_rows[c + 1..] {
                assert!(r.hnf.get(later, col).is_zero());
            }
            for j in col + 1..n {
                let x = r.hnf.get(pr, j);
                assert!(!x.is_negative() && x < piv);
            }
        }
    }

    #[test]
    fn identity_is_fixed() {
        let m = IntegerMatrix::identity(3);
        let r = hnf(&m);
        assert_eq!(r.hnf, m);
        assert_eq!(r.transform, m);
    }

    #[test]
    fn diagonal_two() {
        let m = IntegerMatrix::from_i64(&[&[2, 0], &[0, 2]]);
        let r = hnf(&m);
        assert_eq!(r.hnf, m);
        assert_eq!(r.transform, IntegerMatrix::identity(2));
    }

    #[test]
    fn zero_matrix() {
        let m = IntegerMatrix::zeros(2, 3);
        let r = hnf(&m);
        assert_eq!(r.rank, 0);
        assert!(r.hnf.is_zero());
        assert_eq!(r.transform, IntegerMatrix::identity(3));
    }

    #[test]
    fn wide_matrix_shape() {
        let m = IntegerMatrix::from_i64(&[&[3, -5, 7, 2], &[4, 6, -1, 9]]);
        let r = hnf(&m);
        assert_eq!(r.rank, 2);
        check_shape(&m, &r);
        // triangular: the pivot of the top row sits left of the bottom one
        assert!(r.hnf.get(1, 2).is_zero());
    }

    #[test]
    fn rank_deficient() {
        let m = IntegerMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        let r = hnf(&m);
        assert_eq!(r.rank, 2);
        check_shape(&m, &r);
    }

    #[test]
    fn ext_gcd_identities() {
        for a in -12i64..=12 {
            for b in -12i64..=12 {
                let (g, s, t) = ext_gcd(&Integer::from(a), &Integer::from(b));
                assert_eq!(&s * a + &t * b, g);
                assert_eq!(g, Integer::from(a).gcd(&Integer::from(b)));
            }
        }
    }
}
