//! Local structure of `M0,n` around a cone `τ`.

use num_traits::One;

use super::{
    coordinate_dim, cycle_of, enumerate_m0n_cones, leaf_bit, pair_index, pruefer_to_curve, ray_vector,
    RationalCurve, Set, Vertex,
};
use crate::arith::{int_rank, Integer, Rational};
use crate::cycles::TropicalCycle;
use crate::error::Result;

/// `B_τ` in matroid coordinates together with `dim V(τ)`.
#[derive(Clone, Debug)]
pub struct LocalBasis {
    pub tau: RationalCurve,
    pub vectors: Vec<Vec<Integer>>,
    pub dim: usize,
}

impl LocalBasis {
    /// `dim τ + Σ_p (C(val p, 2) - val p)`.
    pub fn expected_dim(&self) -> usize {
        self.tau.dim() + self.tau.valences().iter().map(|&s| s * (s - 1) / 2 - s).sum::<usize>()
    }

    /// Whether `v` lies in the span of the basis and the lineality.
    pub fn spans(&self, v: &[Integer]) -> bool {
        let mut rows = self.with_ones();
        let r = int_rank(&rows);
        rows.push(v.to_vec());
        int_rank(&rows) == r
    }

    fn with_ones(&self) -> Vec<Vec<Integer>> {
        let mut rows = self.vectors.clone();
        rows.push(vec![Integer::one(); coordinate_dim(self.tau.n())]);
        rows
    }
}

fn high_valence(tau: &RationalCurve) -> Vec<Vertex> {
    tau.tree().vertices.into_iter().filter(|v| v.branches.len() >= 4).collect()
}

/// `B_p = W_p \ {v_{I_2 ∪ I_3}}` for each vertex of valence at least four,
/// plus the rays of `τ`.
pub fn local_basis(tau: &RationalCurve) -> LocalBasis {
    let n = tau.n();
    let mut vectors = Vec::new();
    for v in high_valence(tau) {
        let b = &v.branches;
        for i in 1..b.len() {
            for j in i + 1..b.len() {
                if (i, j) != (1, 2) {
                    vectors.push(ray_vector(n, b[i] | b[j]));
                }
            }
        }
    }
    vectors.extend(tau.masks().map(|s| ray_vector(n, s)));
    let mut basis = LocalBasis { tau: tau.combinatorial_type(), vectors, dim: 0 };
    basis.dim = int_rank(&basis.with_ones()) - 1;
    basis
}

/// Maximal cones of `M0,n` containing `τ`, one factor `M0,val(p)` per vertex.
pub fn local_m0n_curves(tau: &RationalCurve) -> Result<Vec<RationalCurve>> {
    let n = tau.n();
    let base: Vec<Set> = tau.masks().collect();
    let mut products: Vec<Vec<Set>> = vec![base];
    for v in high_valence(tau) {
        let s = v.branches.len();
        let mut local = Vec::new();
        for p in enumerate_m0n_cones(s)? {
            let c = pruefer_to_curve(&p)?;
            // Local leaf i < s is branch I_{i+1}; leaf s is I_1.
            let sets: Vec<Set> = c
                .masks()
                .map(|m| (0..s - 1).filter(|&i| m & (1 << i) != 0).fold(0, |a, i| a | v.branches[i + 1]))
                .collect();
            local.push(sets);
        }
        products = products
            .into_iter()
            .flat_map(|prefix| {
                local.iter().map(move |l| {
                    let mut x = prefix.clone();
                    x.extend(l.iter().copied());
                    x
                })
            })
            .collect();
    }
    let mut out = products
        .into_iter()
        .map(|sets| RationalCurve::from_masks(n, sets.into_iter().map(|s| (s, Rational::one())).collect()))
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

/// The star of `τ` in `M0,n`, marked local at `τ`.
pub fn local_m0n(tau: &RationalCurve) -> Result<TropicalCycle> {
    let curves = local_m0n_curves(tau)?;
    let w = vec![1; curves.len()];
    cycle_of(tau.n(), &curves, w, Some(tau.combinatorial_type().cone()))
}

/// Outcome of checking the linear relations among the `v_I` at every vertex
/// of valence at least four.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LemmaReport {
    pub vertices: usize,
    /// `Σ_{2≤i<j} δ_{I_i ∪ I_j} = (s-3) Σ_{j≥2} δ_{I_j} + δ_{I_1}`.
    pub sum_identity: bool,
    /// Number of branch unions checked against the second identity.
    pub unions: usize,
    /// `δ_I = Σ_{pairs} δ_{S ∪ S'} - (m-2) Σ δ_S` for every union `I`.
    pub union_identity: bool,
    /// The corrections lie in the span of `τ`'s splits and `Im Φ_n`.
    pub corrections_in_span: bool,
}

impl LemmaReport {
    pub fn ok(&self) -> bool {
        self.sum_identity && self.union_identity && self.corrections_in_span
    }
}

/// Cut metric of a split in `R^{C(n,2)}`.
fn cut(n: usize, s: Set) -> Vec<i64> {
    let mut d = vec![0; n * (n - 1) / 2];
    for i in 1..=n {
        for j in i + 1..=n {
            if (s & leaf_bit(i) != 0) != (s & leaf_bit(j) != 0) {
                d[pair_index(n, i, j)] = 1;
            }
        }
    }
    d
}

fn add(acc: &mut [i64], v: &[i64], k: i64) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a += k * b;
    }
}

/// Evaluates both identities exactly on cut metrics, where `δ_{{i}} = Φ_n(e_i)`.
pub fn lemma_relations_check(tau: &RationalCurve) -> LemmaReport {
    let n = tau.n();
    let mut span: Vec<Vec<Integer>> = tau.masks().map(|s| to_int(&cut(n, s))).collect();
    span.extend((1..=n).map(|i| to_int(&cut(n, leaf_bit(i)))));
    let span_rank = int_rank(&span);
    let in_span = |v: &[i64]| {
        let mut rows = span.clone();
        rows.push(to_int(v));
        int_rank(&rows) == span_rank
    };
    let mut report = LemmaReport { sum_identity: true, union_identity: true, corrections_in_span: true, ..Default::default() };
    for v in high_valence(tau) {
        report.vertices += 1;
        let b = &v.branches;
        let s = b.len();
        let mut lhs = vec![0; n * (n - 1) / 2];
        for i in 1..s {
            for j in i + 1..s {
                add(&mut lhs, &cut(n, b[i] | b[j]), 1);
            }
        }
        let mut rhs = cut(n, b[0]);
        let mut corrections = vec![0; n * (n - 1) / 2];
        for bj in &b[1..] {
            add(&mut rhs, &cut(n, *bj), s as i64 - 3);
            add(&mut corrections, &cut(n, *bj), 1);
        }
        report.sum_identity &= lhs == rhs;
        report.corrections_in_span &= in_span(&corrections) && in_span(&cut(n, b[0]));

        let others = s - 1;
        for mask in 1u64..(1 << others) {
            let chosen: Vec<Set> = (0..others).filter(|&i| mask >> i & 1 == 1).map(|i| b[i + 1]).collect();
            let m = chosen.len();
            if m < 3 || m == others {
                continue;
            }
            report.unions += 1;
            let union = chosen.iter().fold(0, |a, c| a | c);
            let mut rhs = vec![0; n * (n - 1) / 2];
            let mut single = vec![0; n * (n - 1) / 2];
            for x in 0..m {
                for y in x + 1..m {
                    add(&mut rhs, &cut(n, chosen[x] | chosen[y]), 1);
                }
                add(&mut single, &cut(n, chosen[x]), 1);
            }
            add(&mut rhs, &single, -(m as i64 - 2));
            report.union_identity &= rhs == cut(n, union);
            report.corrections_in_span &= in_span(&single);
        }
    }
    report
}

fn to_int(v: &[i64]) -> Vec<Integer> {
    v.iter().map(|&x| Integer::from(x)).collect()
}
