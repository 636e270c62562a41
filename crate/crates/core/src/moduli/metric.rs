//! Metric vectors `d(C)_{ij}` and tree reconstruction.

use num_traits::{One, Signed, Zero};

use super::{leaf_bit, RationalCurve, Set};
use crate::arith::Rational;
use crate::error::{Error, Result};

/// Position of `d(i,j)` in the order `d(1,2), d(1,3), …, d(n-1,n)`.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    (i - 1) * (2 * n - i) / 2 + (j - i - 1)
}

/// `d_ij` is the total length of the splits separating `i` and `j`.
pub fn curve_to_metric(c: &RationalCurve) -> Vec<Rational> {
    let n = c.n();
    let mut d = vec![Rational::zero(); n * (n - 1) / 2];
    for i in 1..=n {
        for j in i + 1..=n {
            let k = pair_index(n, i, j);
            for (s, l) in &c.splits {
                if (s & leaf_bit(i) != 0) != (s & leaf_bit(j) != 0) {
                    d[k] += l;
                }
            }
        }
    }
    d
}

fn leaf_count(len: usize) -> Result<usize> {
    let n = (1..=64).find(|n| n * (n - 1) / 2 >= len).unwrap_or(0);
    if n < 3 || n * (n - 1) / 2 != len {
        return Err(Error::InvalidInput(format!("{len} entries is not C(n,2) for any n >= 3")));
    }
    Ok(n)
}

/// `Err(witness)` with a 1-based quadruple where the condition fails.
pub fn four_point_check(d: &[Rational]) -> Result<std::result::Result<(), [usize; 4]>> {
    let n = leaf_count(d.len())?;
    let at = |i, j| &d[pair_index(n, i, j)];
    for x in 1..=n {
        for y in x + 1..=n {
            for z in y + 1..=n {
                for t in z + 1..=n {
                    let mut s = [at(x, y) + at(z, t), at(x, z) + at(y, t), at(x, t) + at(y, z)];
                    s.sort();
                    if s[1] != s[2] {
                        return Ok(Err([x, y, z, t]));
                    }
                }
            }
        }
    }
    Ok(Ok(()))
}

/// `a` with `d = Φ_n(a)`, i.e. `d_ij = a_i + a_j`, if one exists.
fn phi_preimage(n: usize, d: &[Rational]) -> Option<Vec<Rational>> {
    let at = |i, j| &d[pair_index(n, i, j)];
    let two = Rational::from_integer(2.into());
    let a: Vec<Rational> = (1..=n)
        .map(|i| {
            let (j, k) = match i {
                1 => (2, 3),
                2 => (1, 3),
                _ => (1, 2),
            };
            (at(i, j) + at(i, k) - at(j, k)) / &two
        })
        .collect();
    let ok = (1..=n).all(|i| (i + 1..=n).all(|j| *at(i, j) == &a[i - 1] + &a[j - 1]));
    ok.then_some(a)
}

struct Node {
    leaves: Set,
    internal: bool,
}

/// Buneman reconstruction of the curve whose metric agrees with `d` up to
/// `Im Φ_n`.
pub fn metric_to_curve(d: &[Rational]) -> Result<RationalCurve> {
    let n = leaf_count(d.len())?;
    if let Err(w) = four_point_check(d)? {
        return Err(Error::NotATreeMetric(w));
    }
    let half = Rational::new(1.into(), 2.into());
    // Shift so every pendant edge is positive.
    let pendant = |i: usize| {
        let mut best: Option<Rational> = None;
        for j in (1..=n).filter(|&j| j != i) {
            for k in (j + 1..=n).filter(|&k| k != i) {
                let v = (&d[pair_index(n, i, j)] + &d[pair_index(n, i, k)] - &d[pair_index(n, j, k)]) * &half;
                if best.as_ref().is_none_or(|b| v < *b) {
                    best = Some(v);
                }
            }
        }
        best.expect("n >= 3")
    };
    let min_pendant = (1..=n).map(pendant).min().expect("n >= 3");
    let shift = if min_pendant.is_positive() {
        Rational::zero()
    } else {
        (-min_pendant).floor() + Rational::one()
    };
    let mut dist: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rational::zero()
                    } else {
                        &d[pair_index(n, i + 1, j + 1)] + &shift + &shift
                    }
                })
                .collect()
        })
        .collect();
    let mut nodes: Vec<Node> = (1..=n).map(|i| Node { leaves: leaf_bit(i), internal: false }).collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut splits: Vec<(Set, Rational)> = Vec::new();
    let record = |splits: &mut Vec<(Set, Rational)>, node: &Node, len: &Rational| {
        if node.internal && len.is_positive() {
            splits.push((node.leaves, len.clone()));
        }
    };

    while active.len() > 3 {
        let mut best: Option<(Rational, usize, usize, usize)> = None;
        for &p in &active {
            for &q in &active {
                for &r in &active {
                    if p == q || q == r || p == r {
                        continue;
                    }
                    let v = &dist[p][r] + &dist[q][r] - &dist[p][q];
                    if best.as_ref().map_or(true, |b| v > b.0) {
                        best = Some((v, p, q, r));
                    }
                }
            }
        }
        let (_, p, q, r) = best.expect("at least three active nodes");
        let dtp = (&dist[p][q] + &dist[p][r] - &dist[q][r]) * &half;
        let dtq = &dist[p][q] - &dtp;
        record(&mut splits, &nodes[p], &dtp);
        record(&mut splits, &nodes[q], &dtq);
        let t = nodes.len();
        let row: Vec<Rational> = (0..t)
            .map(|x| if x == p { dtp.clone() } else if x == q { dtq.clone() } else { &dist[p][x] - &dtp })
            .collect();
        for (x, v) in row.iter().enumerate() {
            dist[x].push(v.clone());
        }
        let mut own = row;
        own.push(Rational::zero());
        dist.push(own);
        nodes.push(Node { leaves: nodes[p].leaves | nodes[q].leaves, internal: true });
        active.retain(|&x| x != p && x != q);
        if let Some(pos) = active.iter().position(|&x| dist[t][x].is_zero()) {
            let x = active[pos];
            if !nodes[x].internal {
                return Err(Error::InvalidInput("metric identifies an internal vertex with a leaf".into()));
            }
            nodes[x].leaves |= nodes[t].leaves;
        } else {
            active.push(t);
        }
    }

    if active.len() == 3 {
        let (a, b, c) = (active[0], active[1], active[2]);
        for (x, y, z) in [(a, b, c), (b, a, c), (c, a, b)] {
            let len = (&dist[x][y] + &dist[x][z] - &dist[y][z]) * &half;
            record(&mut splits, &nodes[x], &len);
        }
    } else if active.len() == 2 {
        let (a, b) = (active[0], active[1]);
        if nodes[a].internal && nodes[b].internal {
            record(&mut splits, &nodes[a], &dist[a][b]);
        }
    }

    let curve = RationalCurve::from_masks(n, splits)
        .map_err(|e| Error::InvalidInput(format!("reconstructed tree is not a curve: {e}")))?;
    let diff: Vec<Rational> = curve_to_metric(&curve).iter().zip(d).map(|(x, y)| x - y).collect();
    if phi_preimage(n, &diff).is_none() {
        return Err(Error::InvalidInput("input is not a tree metric modulo Im Φ_n".into()));
    }
    Ok(curve)
}

/// `Φ_n(a)`.
pub fn phi(a: &[Rational]) -> Vec<Rational> {
    let n = a.len();
    (0..n).flat_map(|i| (i + 1..n).map(move |j| &a[i] + &a[j])).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_vec};

    #[test]
    fn six_leaf_example() {
        let c = RationalCurve::from_sets(6, &[vec![1, 2, 3, 4]]).unwrap();
        let d = curve_to_metric(&c);
        assert_eq!(d, rat_vec(&[0, 0, 0, 1, 1, 0, 0, 1, 1, 0, 1, 1, 1, 1, 0]));
        assert_eq!(metric_to_curve(&d).unwrap(), c);
    }

    #[test]
    fn zero_metric() {
        let c = metric_to_curve(&vec![Rational::zero(); 6]).unwrap();
        assert_eq!(c.dim(), 0);
    }

    #[test]
    fn shifted_round_trip() {
        let c = RationalCurve::new(7, vec![(vec![1, 2], rat(1, 2)), (vec![1, 2, 3], rat(3, 1)), (vec![5, 6], rat(2, 3))])
            .unwrap();
        let shift = phi(&rat_vec(&[-4, 2, 0, 7, -1, 3, -9]));
        let d: Vec<Rational> = curve_to_metric(&c).iter().zip(&shift).map(|(x, y)| x + y).collect();
        assert_eq!(metric_to_curve(&d).unwrap(), c);
    }

    #[test]
    fn four_point_failure() {
        // d(1,2)+d(3,4) strictly largest.
        let d = rat_vec(&[5, 1, 1, 1, 1, 5]);
        assert_eq!(four_point_check(&d).unwrap(), Err([1, 2, 3, 4]));
        assert_eq!(metric_to_curve(&d).unwrap_err(), Error::NotATreeMetric([1, 2, 3, 4]));
    }

    #[test]
    fn pair_order() {
        assert_eq!(pair_index(6, 1, 2), 0);
        assert_eq!(pair_index(6, 2, 3), 5);
        assert_eq!(pair_index(6, 6, 5), 14);
    }
}
