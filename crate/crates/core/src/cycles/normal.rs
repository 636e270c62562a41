use num_traits::{Signed, Zero};

use crate::arith::{dot_int, hnf, Integer, IntegerMatrix};
use crate::error::{Error, Result};
use crate::polyhedra::Polyhedron;

/// Primitive normal vector of a codimension-one cell `tau` of a maximal cell `sigma`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeNormal {
    pub tau: usize,
    pub sigma: usize,
    /// Representative of `u_{σ/τ}` modulo `Λ_τ`.
    pub vector: Vec<Integer>,
}

/// Linear part of the facet inequality of `sigma` cutting out `tau`.
fn facet_form(sigma: &Polyhedron, tau: &Polyhedron) -> Result<Vec<Integer>> {
    let row = sigma.facet_row_for(tau).ok_or(Error::NotAFace)?;
    let g = row[1..].to_vec();
    if g.iter().all(Zero::is_zero) {
        return Err(Error::NotAFace);
    }
    Ok(g)
}

/// `u_{σ/τ}` by projecting onto `Λ_σ`: with a lattice basis `B` of `Λ_σ`,
/// the HNF of the single row `g B` puts the generator of `Λ_σ/Λ_τ` in the
/// last column of the transform.
pub fn lattice_normal_vector(sigma: &Polyhedron, tau: &Polyhedron) -> Result<Vec<Integer>> {
    let g = facet_form(sigma, tau)?;
    let basis = sigma.lattice_basis();
    let gb: Vec<Integer> = basis.iter().map(|b| dot_int(&g, b)).collect();
    let r = hnf(&IntegerMatrix::from_rows(&[gb], basis.len()));
    if r.rank != 1 {
        return Err(Error::NotAFace);
    }
    let col = r.transform.column(basis.len() - 1);
    let mut u = vec![Integer::zero(); sigma.ambient_dim()];
    for (c, b) in col.iter().zip(basis) {
        if c.is_zero() {
            continue;
        }
        for (ui, bi) in u.iter_mut().zip(b) {
            *ui += c * bi;
        }
    }
    debug_assert!(dot_int(&g, &u).is_positive());
    Ok(u)
}

/// `u_{σ/τ}` from the HNF of the full matrix with rows `g` and the equations of `σ`.
pub fn lattice_normal_direct(sigma: &Polyhedron, tau: &Polyhedron) -> Result<Vec<Integer>> {
    let g = facet_form(sigma, tau)?;
    let n = sigma.ambient_dim();
    let mut rows = vec![g.clone()];
    rows.extend(sigma.linear_equations());
    let r = hnf(&IntegerMatrix::from_rows(&rows, n));
    if r.pivot_rows.first() != Some(&0) {
        return Err(Error::NotAFace);
    }
    let u = r.transform.column(n - r.rank);
    if dot_int(&g, &u).is_negative() {
        return Ok(u.iter().map(|x| -x).collect());
    }
    Ok(u)
}
