use num_integer::Integer as _;
use num_traits::{One, Zero};

use super::{hnf, Integer, IntegerMatrix};
use crate::error::{Error, Result};

/// Lattice basis of `ker(m) ∩ Z^cols`: the first `cols - rank` columns of the HNF transform.
pub fn kernel_lattice_basis(m: &IntegerMatrix) -> Vec<Vec<Integer>> {
    let r = hnf(m);
    (0..m.cols() - r.rank).map(|j| r.transform.column(j)).collect()
}

/// Lattice basis of `span(vectors) ∩ Z^n`, in canonical (HNF) form.
pub fn lattice_basis_of_span(vectors: &[Vec<Integer>]) -> Vec<Vec<Integer>> {
    let Some(n) = vectors.first().map(Vec::len) else {
        return Vec::new();
    };
    let v = IntegerMatrix::from_rows(vectors, n);
    let normals = kernel_lattice_basis(&v);
    let saturated = kernel_lattice_basis(&IntegerMatrix::from_rows(&normals, n));
    canonical_basis(&saturated, n)
}

/// HNF column basis of the lattice generated by `gens`, nonzero columns only.
pub(crate) fn canonical_basis(gens: &[Vec<Integer>], n: usize) -> Vec<Vec<Integer>> {
    if gens.is_empty() {
        return Vec::new();
    }
    let r = hnf(&IntegerMatrix::from_columns(gens, n));
    let free = gens.len() - r.rank;
    (free..gens.len()).map(|j| r.hnf.column(j)).collect()
}

/// Index `[B : A]` of the lattice generated by `a` in the lattice generated by `b`.
pub fn lattice_index(a: &[Vec<Integer>], b: &[Vec<Integer>]) -> Result<Integer> {
    let n = a.first().or(b.first()).map_or(0, Vec::len);
    let ha = hnf_data(a, n);
    let hb = hnf_data(b, n);
    if ha.0.len() != hb.0.len() {
        return Err(Error::SpanMismatch);
    }
    let mut both = a.to_vec();
    both.extend(b.iter().cloned());
    if hnf_data(&both, n).0.len() != ha.0.len() {
        return Err(Error::SpanMismatch);
    }
    // Equal spans put the pivots on the same rows, so each lattice projects
    // isomorphically onto those coordinates and the covolumes are pivot products.
    let (pa, qa) = ha;
    let (pb, qb) = hb;
    if pa != pb {
        return Err(Error::SpanMismatch);
    }
    let (q, r) = qa.div_rem(&qb);
    if !r.is_zero() {
        return Err(Error::NotSublattice);
    }
    Ok(q)
}

/// Pivot rows and the product of the pivots of the lattice generated by `gens`.
fn hnf_data(gens: &[Vec<Integer>], n: usize) -> (Vec<usize>, Integer) {
    if gens.is_empty() {
        return (Vec::new(), Integer::one());
    }
    let r = hnf(&IntegerMatrix::from_columns(gens, n));
    let free = gens.len() - r.rank;
    let mut prod = Integer::one();
    for (c, &row) in r.pivot_rows.iter().enumerate() {
        prod *= r.hnf.get(row, free + c);
    }
    (r.pivot_rows, prod)
}
