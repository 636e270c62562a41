//! Weighted pure polyhedral complexes and their balancing.

mod io;
mod normal;
mod weights;

use std::collections::{HashMap, HashSet};
use std::sync::OnceLock;

use num_integer::Integer as _;
use num_traits::{ToPrimitive, Zero};

pub use io::{CycleDocument, Encoded};
pub(crate) use io::{build_cell, parse_row, row_generator};
pub use normal::{lattice_normal_direct, lattice_normal_vector, LatticeNormal};
pub use weights::WeightSpace;

use crate::arith::{dot_int, Integer, Rational};
use crate::error::{Error, Result};
use crate::par::par_map;
use crate::polyhedra::Polyhedron;

/// A pure polyhedral complex given by its maximal cells.
#[derive(Clone, Debug)]
pub struct PolyhedralComplex {
    ambient: usize,
    dim: isize,
    cells: Vec<Polyhedron>,
    local: Option<Polyhedron>,
    codim_one: OnceLock<CodimOne>,
}

/// Codimension-one cells with the maximal cells adjacent to each.
#[derive(Clone, Debug)]
pub struct CodimOne {
    pub cells: Vec<Polyhedron>,
    pub adjacent: Vec<Vec<usize>>,
}

impl PolyhedralComplex {
    /// `dim` is only consulted when `cells` is empty.
    pub fn new(ambient: usize, dim: isize, cells: Vec<Polyhedron>) -> Result<Self> {
        let dim = cells.first().map_or(dim, Polyhedron::dim);
        for c in &cells {
            if c.ambient_dim() != ambient {
                return Err(Error::AmbientMismatch(ambient, c.ambient_dim()));
            }
            if c.dim() != dim {
                return Err(Error::InvalidInput(format!(
                    "complex is not pure: cells of dimension {dim} and {}",
                    c.dim()
                )));
            }
        }
        Ok(PolyhedralComplex { ambient, dim, cells, local: None, codim_one: OnceLock::new() })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> isize {
        self.dim
    }

    pub fn cells(&self) -> &[Polyhedron] {
        &self.cells
    }

    pub fn local_cone(&self) -> Option<&Polyhedron> {
        self.local.as_ref()
    }

    pub fn with_local_cone(mut self, local: Option<Polyhedron>) -> Self {
        self.local = local;
        self.codim_one = OnceLock::new();
        self
    }

    /// Codimension-one cells, deduplicated by canonical form.
    pub fn codim_one(&self) -> &CodimOne {
        self.codim_one.get_or_init(|| {
            let facets = par_map(&self.cells, |c| c.facet_faces());
            let mut index: HashMap<Polyhedron, usize> = HashMap::new();
            let mut out = CodimOne { cells: Vec::new(), adjacent: Vec::new() };
            for (i, fs) in facets.into_iter().enumerate() {
                for f in fs {
                    let k = *index.entry(f.clone()).or_insert_with(|| {
                        out.cells.push(f);
                        out.adjacent.push(Vec::new());
                        out.cells.len() - 1
                    });
                    out.adjacent[k].push(i);
                }
            }
            out
        })
    }

    /// Codimension-one cells relevant for balancing: all of them, or those
    /// containing the local cone.
    pub fn relevant_codim_one(&self) -> Vec<usize> {
        let c1 = self.codim_one();
        (0..c1.cells.len())
            .filter(|&t| self.local.as_ref().is_none_or(|l| c1.cells[t].contains_polyhedron(l)))
            .collect()
    }

    pub fn contains_point(&self, x: &[Rational]) -> bool {
        self.cells.iter().any(|c| c.contains(x))
    }

    /// All `k`-dimensional faces of the cells.
    pub fn k_skeleton(&self, k: usize) -> PolyhedralComplex {
        let cells = crate::polyhedra::skeleton(&self.cells, k);
        PolyhedralComplex::new(self.ambient, k as isize, cells).expect("faces share the ambient space")
    }

    /// Lineality shared by all cells, if they all have the same one.
    pub fn common_lineality(&self) -> Option<Vec<Vec<Integer>>> {
        let first = self.cells.first()?.lineality();
        self.cells.iter().all(|c| c.lineality() == first).then_some(first)
    }

    /// Number of faces in each dimension `0..=dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        if self.dim < 0 {
            return Vec::new();
        }
        (0..=self.dim as usize)
            .map(|k| crate::polyhedra::skeleton(&self.cells, k).len())
            .collect()
    }
}

/// Common refinement of two complexes with the parent cell of each piece.
#[derive(Clone, Debug)]
pub struct Refinement {
    pub complex: PolyhedralComplex,
    pub x_parent: Vec<usize>,
    pub y_parent: Vec<usize>,
}

/// Intersections `σ ∩ σ'` of dimension `min(dim x, dim y)`.
pub fn common_refinement(x: &PolyhedralComplex, y: &PolyhedralComplex) -> Result<Refinement> {
    if x.ambient != y.ambient {
        return Err(Error::AmbientMismatch(x.ambient, y.ambient));
    }
    let target = x.dim.min(y.dim);
    let pairs: Vec<(usize, usize)> =
        (0..x.cells.len()).flat_map(|i| (0..y.cells.len()).map(move |j| (i, j))).collect();
    let pieces = par_map(&pairs, |&(i, j)| {
        let c = x.cells[i].intersect(&y.cells[j]);
        (c.dim() == target).then_some(c)
    });
    let mut cells = Vec::new();
    let (mut xp, mut yp) = (Vec::new(), Vec::new());
    let mut seen: HashSet<Polyhedron> = HashSet::new();
    for ((i, j), c) in pairs.into_iter().zip(pieces) {
        if let Some(c) = c {
            // a piece on the common boundary of several cells of y appears once
            if !seen.insert(c.clone()) {
                continue;
            }
            cells.push(c);
            xp.push(i);
            yp.push(j);
        }
    }
    Ok(Refinement {
        complex: PolyhedralComplex::new(x.ambient, target, cells)?,
        x_parent: xp,
        y_parent: yp,
    })
}

/// A tropical cycle: a pure complex with integer weights on its maximal cells.
#[derive(Clone, Debug)]
pub struct TropicalCycle {
    complex: PolyhedralComplex,
    weights: Vec<i64>,
}

/// Outcome of a balancing check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalanceReport {
    pub balanced: bool,
    /// Offending codimension-one cells (indices into `codim_one().cells`).
    pub offending: Vec<usize>,
}

impl TropicalCycle {
    pub fn new(complex: PolyhedralComplex, weights: Vec<i64>) -> Result<Self> {
        if complex.cells.len() != weights.len() {
            return Err(Error::InvalidInput(format!(
                "{} cells but {} weights",
                complex.cells.len(),
                weights.len()
            )));
        }
        Ok(TropicalCycle { complex, weights })
    }

    pub fn from_cells(ambient: usize, cells: Vec<Polyhedron>, weights: Vec<i64>) -> Result<Self> {
        Self::new(PolyhedralComplex::new(ambient, 0, cells)?, weights)
    }

    pub fn empty(ambient: usize, dim: isize) -> Self {
        TropicalCycle {
            complex: PolyhedralComplex::new(ambient, dim, Vec::new()).expect("empty complex"),
            weights: Vec::new(),
        }
    }

    /// Fan from integer rays, cones as index lists, and an optional common lineality.
    pub fn fan(
        ambient: usize,
        rays: &[Vec<i64>],
        cones: &[Vec<usize>],
        lineality: &[Vec<i64>],
        weights: Vec<i64>,
    ) -> Result<Self> {
        let to_int = |v: &Vec<i64>| v.iter().map(|&x| Integer::from(x)).collect::<Vec<Integer>>();
        let lin: Vec<Vec<Integer>> = lineality.iter().map(to_int).collect();
        let mut cells = Vec::with_capacity(cones.len());
        for cone in cones {
            let mut rs = Vec::with_capacity(cone.len());
            for &i in cone {
                let r = rays.get(i).ok_or_else(|| Error::InvalidInput(format!("ray index {i} out of range")))?;
                rs.push(to_int(r));
            }
            cells.push(Polyhedron::cone(ambient, &rs, &lin));
        }
        Self::from_cells(ambient, cells, weights)
    }

    /// `R^n` with weight one.
    pub fn whole_space(ambient: usize) -> Self {
        Self::from_cells(ambient, vec![Polyhedron::whole_space(ambient)], vec![1]).expect("valid")
    }

    pub fn complex(&self) -> &PolyhedralComplex {
        &self.complex
    }

    pub fn cells(&self) -> &[Polyhedron] {
        &self.complex.cells
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn dim(&self) -> isize {
        self.complex.dim
    }

    pub fn ambient_dim(&self) -> usize {
        self.complex.ambient
    }

    pub fn is_empty(&self) -> bool {
        self.complex.cells.is_empty()
    }

    pub fn local_cone(&self) -> Option<&Polyhedron> {
        self.complex.local.as_ref()
    }

    pub fn with_local_cone(self, local: Option<Polyhedron>) -> Self {
        TropicalCycle { complex: self.complex.with_local_cone(local), weights: self.weights }
    }

    pub fn with_weights(&self, weights: Vec<i64>) -> Result<Self> {
        Self::new(self.complex.clone(), weights)
    }

    pub fn scaled(&self, k: i64) -> Self {
        TropicalCycle { complex: self.complex.clone(), weights: self.weights.iter().map(|w| w * k).collect() }
    }

    /// Drops cells of weight zero.
    pub fn normalized(&self) -> Self {
        if self.weights.iter().all(|&w| w != 0) {
            return self.clone();
        }
        let (cells, weights): (Vec<Polyhedron>, Vec<i64>) = self
            .complex
            .cells
            .iter()
            .zip(&self.weights)
            .filter(|(_, &w)| w != 0)
            .map(|(c, &w)| (c.clone(), w))
            .unzip();
        let complex = PolyhedralComplex::new(self.complex.ambient, self.complex.dim, cells)
            .expect("subcomplex")
            .with_local_cone(self.complex.local.clone());
        TropicalCycle { complex, weights }
    }

    /// Lattice normal `u_{σ/τ}` for a maximal cell `sigma` and codimension-one cell `tau`.
    pub fn lattice_normal(&self, tau: usize, sigma: usize) -> Result<LatticeNormal> {
        let c1 = self.complex.codim_one();
        let t = c1.cells.get(tau).ok_or(Error::NotAFace)?;
        let s = self.complex.cells.get(sigma).ok_or(Error::NotAFace)?;
        let vector = lattice_normal_vector(s, t)?;
        Ok(LatticeNormal { tau, sigma, vector })
    }

    /// `Σ ω(σ) u_{σ/τ}` over the maximal cells adjacent to `tau`.
    pub fn weighted_normal_sum(&self, tau: usize) -> Vec<Integer> {
        let c1 = self.complex.codim_one();
        let mut sum = vec![Integer::zero(); self.complex.ambient];
        for &s in &c1.adjacent[tau] {
            let u = lattice_normal_vector(&self.complex.cells[s], &c1.cells[tau]).expect("adjacent cell");
            let w = Integer::from(self.weights[s]);
            for (a, b) in sum.iter_mut().zip(&u) {
                *a += &w * b;
            }
        }
        sum
    }

    pub fn balance_report(&self) -> BalanceReport {
        let norm = self.normalized();
        let c1 = norm.complex.codim_one();
        let relevant = norm.complex.relevant_codim_one();
        let bad = par_map(&relevant, |&t| {
            let sum = norm.weighted_normal_sum(t);
            let eqs = c1.cells[t].linear_equations();
            (!eqs.iter().all(|e| dot_int(e, &sum).is_zero())).then_some(t)
        });
        let offending: Vec<usize> = bad.into_iter().flatten().collect();
        BalanceReport { balanced: offending.is_empty(), offending }
    }

    pub fn is_balanced(&self) -> bool {
        self.balance_report().balanced
    }

    /// Star around a cell `tau` of the complex: cones `R_{≥0}(σ - p)` for
    /// maximal `σ ⊇ tau`, with `V_τ` added to the lineality.
    pub fn star(&self, tau: &Polyhedron) -> Result<TropicalCycle> {
        if tau.is_empty() {
            return Err(Error::NotAFace);
        }
        let p = tau.relative_interior_point();
        let vt = tau.lattice_basis().to_vec();
        let mut cells = Vec::new();
        let mut weights = Vec::new();
        for (c, &w) in self.complex.cells.iter().zip(&self.weights) {
            if c.contains_polyhedron(tau) {
                cells.push(c.cone_at(&p, &vt));
                weights.push(w);
            }
        }
        if cells.is_empty() {
            return Err(Error::NotAFace);
        }
        Self::from_cells(self.complex.ambient, cells, weights)
    }

    /// Local fan at a point: cones `R_{≥0}(σ - p)` for cells containing `p`.
    pub fn star_at_point(&self, p: &[Rational]) -> Vec<(Polyhedron, i64)> {
        self.complex
            .cells
            .iter()
            .zip(&self.weights)
            .filter(|(c, _)| c.contains(p))
            .map(|(c, &w)| (c.cone_at(p, &[]), w))
            .collect()
    }

    pub fn cartesian_product(&self, other: &TropicalCycle) -> TropicalCycle {
        let ambient = self.ambient_dim() + other.ambient_dim();
        let mut cells = Vec::new();
        let mut weights = Vec::new();
        for (a, &wa) in self.cells().iter().zip(&self.weights) {
            for (b, &wb) in other.cells().iter().zip(&other.weights) {
                cells.push(a.cartesian_product(b));
                weights.push(wa * wb);
            }
        }
        let complex = PolyhedralComplex::new(ambient, self.dim() + other.dim(), cells).expect("product cells are pure");
        let local = match (self.local_cone(), other.local_cone()) {
            (Some(a), Some(b)) => Some(a.cartesian_product(b)),
            _ => None,
        };
        TropicalCycle { complex: complex.with_local_cone(local), weights }
    }

    /// Refines along `y` (with `|self| ⊆ |y|`), keeping the weights.
    pub fn refine(&self, y: &PolyhedralComplex) -> Result<TropicalCycle> {
        let r = common_refinement(&self.complex, y)?;
        let weights = r.x_parent.iter().map(|&i| self.weights[i]).collect();
        let complex = r.complex.with_local_cone(self.complex.local.clone());
        Self::new(complex, weights)
    }

    pub fn k_skeleton(&self, k: usize) -> PolyhedralComplex {
        self.complex.k_skeleton(k)
    }

    pub fn weight_space(&self) -> WeightSpace {
        weights::weight_space(self)
    }

    /// Irreducible iff the weights have gcd one and the weight space is a line.
    pub fn is_irreducible(&self) -> bool {
        let norm = self.normalized();
        if norm.is_empty() {
            return false;
        }
        let g = norm.weights.iter().fold(0i64, |g, &w| g.gcd(&w));
        g == 1 && norm.weight_space().dimension == 1
    }

    /// Nonnegative balanced weight vectors, as a cone in `R^N`.
    pub fn weight_cone(&self) -> Polyhedron {
        weights::weight_cone(self)
    }

    /// Same support and same weights on a common refinement.
    pub fn equivalent(&self, other: &TropicalCycle) -> bool {
        let (a, b) = (self.normalized(), other.normalized());
        if a.ambient_dim() != b.ambient_dim() {
            return false;
        }
        if a.is_empty() || b.is_empty() {
            return a.is_empty() && b.is_empty();
        }
        if a.dim() != b.dim() {
            return false;
        }
        let Ok(r) = common_refinement(&a.complex, &b.complex) else {
            return false;
        };
        let pieces = r.complex.cells();
        for (k, _) in pieces.iter().enumerate() {
            if a.weights[r.x_parent[k]] != b.weights[r.y_parent[k]] {
                return false;
            }
        }
        let covered = |cells: &[Polyhedron], parent: &[usize]| {
            (0..cells.len()).all(|i| {
                let mine: Vec<&Polyhedron> =
                    parent.iter().enumerate().filter(|(_, &p)| p == i).map(|(k, _)| &pieces[k]).collect();
                covers(&cells[i], &mine)
            })
        };
        covered(a.cells(), &r.x_parent) && covered(b.cells(), &r.y_parent)
    }

    /// Support membership.
    pub fn contains_point(&self, x: &[Rational]) -> bool {
        self.complex.contains_point(x)
    }

    /// Weight of the cell containing `x` in its relative interior, if any.
    pub fn weight_at(&self, x: &[Rational]) -> Option<i64> {
        self.cells()
            .iter()
            .zip(&self.weights)
            .find(|(c, _)| c.relative_interior_contains(x))
            .map(|(_, &w)| w)
    }
}

/// Whether full-dimensional pieces of `sigma` cover it: every facet of a piece
/// that meets the relative interior of `sigma` must be shared with another piece.
pub(crate) fn covers(sigma: &Polyhedron, pieces: &[&Polyhedron]) -> bool {
    if pieces.is_empty() {
        return false;
    }
    if pieces.contains(&sigma) {
        return true;
    }
    let mut count: HashMap<Polyhedron, usize> = HashMap::new();
    for p in pieces {
        for f in p.facet_faces() {
            *count.entry(f).or_default() += 1;
        }
    }
    count.iter().all(|(f, &c)| {
        c >= 2
            || sigma.homogeneous_facets().iter().any(|row| {
                f.homogeneous_generators()
                    .iter()
                    .chain(f.homogeneous_lineality())
                    .all(|g| dot_int(row, g).is_zero())
            })
    })
}

pub(crate) fn to_i64(q: &Rational) -> Result<i64> {
    if !q.is_integer() {
        return Err(Error::NonIntegralWeight);
    }
    q.to_integer().to_i64().ok_or(Error::NonIntegralWeight)
}

pub(crate) fn int_to_i64(x: &Integer) -> i64 {
    x.to_i64().expect("weight fits in i64")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orthants() -> TropicalCycle {
        TropicalCycle::fan(
            2,
            &[vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]],
            &[vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]],
            &[],
            vec![1, 1, 1, 1],
        )
        .unwrap()
    }

    pub(crate) fn standard_line() -> TropicalCycle {
        TropicalCycle::fan(2, &[vec![-1, 0], vec![0, -1], vec![1, 1]], &[vec![0], vec![1], vec![2]], &[], vec![1, 1, 1])
            .unwrap()
    }

    #[test]
    fn four_orthants_balanced() {
        assert!(orthants().is_balanced());
    }

    #[test]
    fn single_ray_unbalanced() {
        let r = TropicalCycle::fan(2, &[vec![1, 0]], &[vec![0]], &[], vec![1]).unwrap();
        let rep = r.balance_report();
        assert!(!rep.balanced);
        assert_eq!(rep.offending.len(), 1);
    }

    #[test]
    fn line_is_irreducible() {
        let l = standard_line();
        assert!(l.is_balanced());
        assert!(l.is_irreducible());
        assert!(!l.scaled(2).is_irreducible());
        assert_eq!(l.weight_space().dimension, 1);
    }

    #[test]
    fn star_of_balanced_is_balanced() {
        let x = orthants();
        let c1 = x.complex().codim_one().cells.clone();
        for t in &c1 {
            assert!(x.star(t).unwrap().is_balanced());
        }
    }

    #[test]
    fn equivalence_after_refinement() {
        let l = standard_line();
        let orth = orthants();
        let refined = l.refine(orth.complex()).unwrap();
        assert!(refined.equivalent(&l));
        assert!(!l.scaled(2).equivalent(&l));
        let half = TropicalCycle::fan(2, &[vec![-1, 0], vec![0, -1]], &[vec![0], vec![1]], &[], vec![1, 1]).unwrap();
        assert!(!half.equivalent(&l));
    }
}
