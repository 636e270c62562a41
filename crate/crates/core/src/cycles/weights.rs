use num_traits::Zero;

use super::TropicalCycle;
use crate::arith::{kernel, lattice_basis_of_span, primitive, rref, Integer, Rational};
use crate::par::par_map;
use crate::polyhedra::{with_leading_zero, Polyhedron};

/// Balanced weight assignments on the maximal cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSpace {
    pub dimension: usize,
    /// Row-reduced rational basis of `V_X ⊆ R^N`.
    pub basis: Vec<Vec<Rational>>,
    /// HNF-canonical lattice basis of `Λ_X = V_X ∩ Z^N`.
    pub lattice_basis: Vec<Vec<Integer>>,
}

/// Linear conditions on `ω ∈ R^N` imposed at one codimension-one cell.
///
/// With `M_τ = (u_1 … u_k l_1 … l_{d-1})` the projection of `ker M_τ` onto
/// the first `k` coordinates is `V_X^τ`; its orthogonal complement, padded
/// with zeros outside the adjacent cells, gives the conditions.
fn conditions_at(x: &TropicalCycle, tau: usize) -> Vec<Vec<Rational>> {
    let c1 = x.complex().codim_one();
    let adj = &c1.adjacent[tau];
    let k = adj.len();
    let n = x.ambient_dim();
    let normals: Vec<Vec<Integer>> = adj
        .iter()
        .map(|&s| super::lattice_normal_vector(&x.cells()[s], &c1.cells[tau]).expect("adjacent cell"))
        .collect();
    let lin = c1.cells[tau].lattice_basis();
    let cols = k + lin.len();
    let m: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            normals
                .iter()
                .chain(lin.iter())
                .map(|v| Rational::from_integer(v[i].clone()))
                .collect()
        })
        .collect();
    let ker = kernel(&m, cols);
    let mut projected: Vec<Vec<Rational>> = ker.iter().map(|v| v[..k].to_vec()).collect();
    rref(&mut projected);
    let complement = kernel(&projected, k);
    let total = x.cells().len();
    complement
        .into_iter()
        .map(|c| {
            let mut row = vec![Rational::zero(); total];
            for (ci, &s) in c.into_iter().zip(adj) {
                row[s] += ci;
            }
            row
        })
        .collect()
}

fn all_conditions(x: &TropicalCycle) -> Vec<Vec<Rational>> {
    let relevant = x.complex().relevant_codim_one();
    par_map(&relevant, |&t| conditions_at(x, t)).into_iter().flatten().collect()
}

pub(super) fn weight_space(x: &TropicalCycle) -> WeightSpace {
    let total = x.cells().len();
    let conds = all_conditions(x);
    let mut basis = kernel(&conds, total);
    rref(&mut basis);
    let ints: Vec<Vec<Integer>> = basis.iter().map(|v| primitive(v)).collect();
    let lattice_basis = lattice_basis_of_span(&ints);
    WeightSpace { dimension: basis.len(), basis, lattice_basis }
}

pub(super) fn weight_cone(x: &TropicalCycle) -> Polyhedron {
    let total = x.cells().len();
    let eqs: Vec<Vec<Integer>> =
        all_conditions(x).iter().map(|r| with_leading_zero(&primitive(r))).collect();
    let ineqs: Vec<Vec<Integer>> = (0..total)
        .map(|i| {
            let mut v = vec![Integer::zero(); total + 1];
            v[i + 1] = Integer::from(1);
            v
        })
        .collect();
    Polyhedron::from_homogeneous_h(total, &ineqs, &eqs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int_vec, rat_vec};

    fn six_rays() -> TropicalCycle {
        TropicalCycle::fan(
            2,
            &[vec![1, 0], vec![1, 1], vec![0, 1], vec![-1, 0], vec![-1, -1], vec![0, -1]],
            &[vec![0], vec![1], vec![2], vec![3], vec![4], vec![5]],
            &[],
            vec![1; 6],
        )
        .unwrap()
    }

    #[test]
    fn six_valent_curve() {
        let x = six_rays();
        assert!(x.is_balanced());
        assert!(!x.is_irreducible());
        let ws = x.weight_space();
        assert_eq!(ws.dimension, 4);
        for v in &ws.lattice_basis {
            let w: Vec<i64> = v.iter().map(|a| i64::try_from(a).unwrap()).collect();
            assert!(x.with_weights(w).unwrap().is_balanced());
        }
        let reference = [
            rat_vec(&[1, -1, 1, 0, 0, 0]),
            rat_vec(&[0, 0, 1, 0, 0, 1]),
            rat_vec(&[1, 0, 0, 1, 0, 0]),
            rat_vec(&[0, 1, 0, 0, 1, 0]),
        ];
        let mut stacked = ws.basis.clone();
        stacked.extend(reference.iter().cloned());
        assert_eq!(crate::arith::rank(&stacked), 4);
    }

    #[test]
    fn weight_cone_of_line() {
        let l = TropicalCycle::fan(2, &[vec![-1, 0], vec![0, -1], vec![1, 1]], &[vec![0], vec![1], vec![2]], &[], vec![1; 3])
            .unwrap();
        let c = l.weight_cone();
        assert_eq!(c.dim(), 1);
        assert_eq!(c.rays(), vec![int_vec(&[1, 1, 1])]);
    }
}
