//! Intersection products of cycles in `R^n`.
//!
//! The primary method works locally: at a point `p` of a candidate cell the
//! weight is a sum over pairs of cones of the two stars whose difference
//! `ρ1 - ρ2` contains a fixed generic vector `v`, weighted by the lattice
//! index of `Λ_ρ1 + Λ_ρ2` in `Z^n`. The diagonal construction serves as an oracle.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{dot_int, lattice_index, Integer, Rational};
use crate::cycles::{int_to_i64, PolyhedralComplex, TropicalCycle};
use crate::error::{Error, Result};
use crate::functions::{polynomial_divisor, Mode, TropicalPolynomial};
use crate::par::par_map;
use crate::polyhedra::Polyhedron;

/// One pair of local cones contributing at a cell.
#[derive(Clone, Debug)]
pub struct Contribution {
    pub rho1: Polyhedron,
    pub rho2: Polyhedron,
    pub lattice_index: Integer,
    pub term: i64,
}

/// How the weight of one cell of `X · Y` arises.
#[derive(Clone, Debug)]
pub struct IntersectionWitness {
    pub cell: Polyhedron,
    pub point: Vec<Rational>,
    pub displacement: Vec<Integer>,
    pub pairs: Vec<Contribution>,
}

impl IntersectionWitness {
    pub fn weight(&self) -> i64 {
        self.pairs.iter().map(|c| c.term).sum()
    }
}

fn identity(n: usize) -> Vec<Vec<Integer>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Integer::one() } else { Integer::zero() }).collect())
        .collect()
}

/// First point `(1, t, t², …)` with `t = 1, 2, …` off every given hyperplane.
fn generic_vector(n: usize, hyperplanes: &[Vec<Integer>]) -> Vec<Integer> {
    let mut t = Integer::one();
    loop {
        let mut v = Vec::with_capacity(n);
        let mut x = Integer::one();
        for _ in 0..n {
            v.push(x.clone());
            x *= &t;
        }
        if hyperplanes.iter().all(|h| !dot_int(h, &v).is_zero()) {
            return v;
        }
        t += 1;
    }
}

/// Candidate cells: `m`-dimensional faces of the pairwise intersections.
fn candidate_cells(x: &TropicalCycle, y: &TropicalCycle, m: usize) -> Vec<Polyhedron> {
    let pairs: Vec<(usize, usize)> =
        (0..x.cells().len()).flat_map(|i| (0..y.cells().len()).map(move |j| (i, j))).collect();
    let faces = par_map(&pairs, |&(i, j)| {
        let c = x.cells()[i].intersect(&y.cells()[j]);
        if c.dim() < m as isize {
            Vec::new()
        } else {
            c.faces(m)
        }
    });
    let set: BTreeSet<Polyhedron> = faces.into_iter().flatten().collect();
    set.into_iter().collect()
}

fn witness_at(x: &TropicalCycle, y: &TropicalCycle, cell: &Polyhedron) -> Result<IntersectionWitness> {
    let n = x.ambient_dim();
    let p = cell.relative_interior_point();
    let sx = x.star_at_point(&p);
    let sy = y.star_at_point(&p);
    let mut diffs = Vec::new();
    let mut hyperplanes = Vec::new();
    for (a, wa) in &sx {
        for (b, wb) in &sy {
            let d = a.minkowski_sum(b, true);
            if d.dim() == n as isize {
                hyperplanes.extend(d.homogeneous_facets().iter().map(|f| f[1..].to_vec()));
                diffs.push((a, *wa, b, *wb, d));
            } else {
                hyperplanes.extend(d.homogeneous_equations().iter().map(|f| f[1..].to_vec()));
            }
        }
    }
    hyperplanes.retain(|h| h.iter().any(|x| !x.is_zero()));
    let v = generic_vector(n, &hyperplanes);
    let mut hv = vec![Integer::one()];
    hv.extend(v.iter().cloned());
    let mut pairs = Vec::new();
    for (a, wa, b, wb, d) in diffs {
        if !d.homogeneous_facets().iter().all(|f| dot_int(f, &hv) > BigInt::zero()) {
            continue;
        }
        let mut gens = a.lattice_basis().to_vec();
        gens.extend(b.lattice_basis().iter().cloned());
        let index = lattice_index(&gens, &identity(n))?;
        let term = wa * wb * int_to_i64(&index);
        pairs.push(Contribution { rho1: a.clone(), rho2: b.clone(), lattice_index: index, term });
    }
    Ok(IntersectionWitness { cell: cell.clone(), point: p, displacement: v, pairs })
}

/// Witnesses for every candidate cell, including those of weight zero.
pub fn intersection_witnesses(x: &TropicalCycle, y: &TropicalCycle) -> Result<Vec<IntersectionWitness>> {
    let n = x.ambient_dim();
    if n != y.ambient_dim() {
        return Err(Error::AmbientMismatch(n, y.ambient_dim()));
    }
    let (x, y) = (x.normalized(), y.normalized());
    let m = x.dim() + y.dim() - n as isize;
    if m < 0 || x.is_empty() || y.is_empty() {
        return Ok(Vec::new());
    }
    let cells = candidate_cells(&x, &y, m as usize);
    par_map(&cells, |c| witness_at(&x, &y, c)).into_iter().collect()
}

/// Stable intersection `X · Y`; empty when `dim X + dim Y < n`.
pub fn stable_intersect(x: &TropicalCycle, y: &TropicalCycle) -> Result<TropicalCycle> {
    let n = x.ambient_dim();
    let witnesses = intersection_witnesses(x, y)?;
    let m = (x.dim() + y.dim() - n as isize).max(-1);
    let (cells, weights): (Vec<Polyhedron>, Vec<i64>) =
        witnesses.into_iter().map(|w| (w.weight(), w)).filter(|(wt, _)| *wt != 0).map(|(wt, w)| (w.cell, wt)).unzip();
    TropicalCycle::new(PolyhedralComplex::new(n, m, cells)?, weights)
}

/// `π_*(ψ_1 ⋯ ψ_n · (X × Y))` with `ψ_i = max(x_i, y_i)`.
pub fn diagonal_intersect(x: &TropicalCycle, y: &TropicalCycle) -> Result<TropicalCycle> {
    let n = x.ambient_dim();
    if n != y.ambient_dim() {
        return Err(Error::AmbientMismatch(n, y.ambient_dim()));
    }
    let m = x.dim() + y.dim() - n as isize;
    if m < 0 || x.is_empty() || y.is_empty() {
        return Ok(TropicalCycle::empty(n, m.max(-1)));
    }
    let mut p = x.normalized().cartesian_product(&y.normalized());
    for i in 0..n {
        let mut a = vec![0i64; 2 * n];
        let mut b = vec![0i64; 2 * n];
        a[i] = 1;
        b[n + i] = 1;
        let psi = TropicalPolynomial::from_i64(Mode::Max, &[(a, 0), (b, 0)])?;
        p = polynomial_divisor(&psi, &p)?;
    }
    pushforward_forget_coordinates(&p, n)
}

/// Image under projection to the first `keep` coordinates; weights are
/// multiplied by `[Λ_{πσ} : π Λ_σ]` and equal images are merged.
pub fn pushforward_forget_coordinates(x: &TropicalCycle, keep: usize) -> Result<TropicalCycle> {
    let rows = identity(x.ambient_dim())[..keep].to_vec();
    let images = par_map(x.cells(), |c| -> Result<(Polyhedron, Integer)> {
        let img = c.linear_image(&rows);
        if img.dim() != c.dim() {
            return Err(Error::NotInjective);
        }
        let projected: Vec<Vec<Integer>> = c.lattice_basis().iter().map(|b| b[..keep].to_vec()).collect();
        let index = lattice_index(&projected, img.lattice_basis())?;
        Ok((img, index))
    });
    let mut merged: BTreeMap<Polyhedron, i64> = BTreeMap::new();
    for (r, &w) in images.into_iter().zip(x.weights()) {
        let (img, index) = r?;
        *merged.entry(img).or_default() += w * int_to_i64(&index);
    }
    let (cells, weights): (Vec<Polyhedron>, Vec<i64>) = merged.into_iter().filter(|(_, w)| *w != 0).unzip();
    TropicalCycle::new(PolyhedralComplex::new(keep, x.dim(), cells)?, weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_vec;

    fn line() -> TropicalCycle {
        TropicalCycle::fan(2, &[vec![-1, 0], vec![0, -1], vec![1, 1]], &[vec![0], vec![1], vec![2]], &[], vec![1; 3])
            .unwrap()
    }

    fn origin_point() -> TropicalCycle {
        TropicalCycle::from_cells(2, vec![Polyhedron::polytope(2, &[rat_vec(&[0, 0])])], vec![1]).unwrap()
    }

    #[test]
    fn line_self_intersection() {
        let s = stable_intersect(&line(), &line()).unwrap();
        assert!(s.equivalent(&origin_point()));
        let d = diagonal_intersect(&line(), &line()).unwrap();
        assert!(d.equivalent(&origin_point()));
    }

    #[test]
    fn whole_space_is_identity() {
        let s = stable_intersect(&TropicalCycle::whole_space(2), &line()).unwrap();
        assert!(s.equivalent(&line()));
        let s = stable_intersect(&line(), &TropicalCycle::whole_space(2)).unwrap();
        assert!(s.equivalent(&line()));
    }

    #[test]
    fn low_dimension_gives_empty() {
        let s = stable_intersect(&origin_point(), &line()).unwrap();
        assert!(s.is_empty());
        assert!(diagonal_intersect(&origin_point(), &line()).unwrap().is_empty());
    }

    #[test]
    fn degree_two_curve_meets_line_twice() {
        let conic = TropicalCycle::fan(2, &[vec![-1, 0], vec![0, -1], vec![1, 1]], &[vec![0], vec![1], vec![2]], &[], vec![2; 3])
            .unwrap();
        let shifted = line().cells().iter().map(|c| c.translate(&rat_vec(&[1, 2]))).collect();
        let l2 = TropicalCycle::from_cells(2, shifted, vec![1; 3]).unwrap();
        let s = stable_intersect(&conic, &l2).unwrap();
        let total: i64 = s.weights().iter().sum();
        assert_eq!(total, 2);
        assert!(s.equivalent(&diagonal_intersect(&conic, &l2).unwrap()));
    }

    #[test]
    fn ambient_mismatch() {
        let e = stable_intersect(&line(), &TropicalCycle::whole_space(3)).unwrap_err();
        assert_eq!(e, Error::AmbientMismatch(2, 3));
    }
}
