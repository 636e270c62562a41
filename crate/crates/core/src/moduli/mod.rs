//! Rational n-marked tropical curves and the moduli fans `M0,n`.
//!
//! Leaves are labelled `1..=n`. A split is stored as the side not containing
//! leaf `n`. Matroid coordinates live in `R^{C(n-1,2)}`, indexed by the edges
//! `{a,b}` of `K_{n-1}` in lexicographic order, with `v_I = Σ_{a<b ∈ I} e_ab`
//! and lineality `(1,…,1)`.

mod local;
mod metric;
mod pruefer;
mod psi;

use std::fmt;

use num_traits::{One, Signed, Zero};

pub use local::{lemma_relations_check, local_basis, local_m0n, local_m0n_curves, LemmaReport, LocalBasis};
pub use metric::{curve_to_metric, four_point_check, metric_to_curve, pair_index, phi};
pub use pruefer::{curve_to_pruefer, enumerate_m0n_cones, m0n_cone_count, pruefer_to_curve, PrueferSequence};
pub use psi::{psi_product, psi_product_curves, psi_weight};

use crate::arith::{format_rational, parse_rational, Integer, Rational};
use crate::cycles::TropicalCycle;
use crate::error::{Error, Result};
use crate::par::par_map;
use crate::polyhedra::Polyhedron;

pub(crate) type Set = u64;

pub(crate) fn leaf_bit(i: usize) -> Set {
    1 << (i - 1)
}

pub(crate) fn set_of(leaves: &[usize]) -> Set {
    leaves.iter().fold(0, |m, &i| m | leaf_bit(i))
}

pub(crate) fn leaves_of(s: Set) -> Vec<usize> {
    (1..=64).filter(|&i| s >> (i - 1) & 1 == 1).collect()
}

pub(crate) fn full_set(n: usize) -> Set {
    if n == 64 {
        u64::MAX
    } else {
        (1 << n) - 1
    }
}

/// A rational tropical curve given by its bounded edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalCurve {
    n: usize,
    splits: Vec<(Set, Rational)>,
}

fn compatible(a: Set, b: Set) -> bool {
    a & b == 0 || a & !b == 0 || b & !a == 0
}

impl RationalCurve {
    /// Normalizes each split to the side without `n` and sorts them.
    pub fn new(n: usize, splits: Vec<(Vec<usize>, Rational)>) -> Result<Self> {
        let masks = splits
            .into_iter()
            .map(|(s, l)| {
                if s.iter().any(|&i| i == 0 || i > n) {
                    return Err(Error::InvalidCurve(format!("leaf out of range in {s:?}")));
                }
                Ok((set_of(&s), l))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_masks(n, masks)
    }

    pub(crate) fn from_masks(n: usize, splits: Vec<(Set, Rational)>) -> Result<Self> {
        if !(3..=63).contains(&n) {
            return Err(Error::InvalidCurve(format!("need 3 <= n <= 63 leaves, got {n}")));
        }
        let full = full_set(n);
        let mut out: Vec<(Set, Rational)> = Vec::with_capacity(splits.len());
        for (s, l) in splits {
            let s = if s & leaf_bit(n) != 0 { full & !s } else { s };
            let size = s.count_ones() as usize;
            if size < 2 || size > n - 2 {
                return Err(Error::InvalidCurve(format!("split {:?} is not a bounded edge", leaves_of(s))));
            }
            if !l.is_positive() {
                return Err(Error::InvalidCurve("split lengths must be positive".into()));
            }
            if out.iter().any(|(t, _)| *t == s) {
                return Err(Error::InvalidCurve(format!("split {:?} repeated", leaves_of(s))));
            }
            if let Some((t, _)) = out.iter().find(|(t, _)| !compatible(*t, s)) {
                return Err(Error::InvalidCurve(format!(
                    "splits {:?} and {:?} are incompatible",
                    leaves_of(*t),
                    leaves_of(s)
                )));
            }
            out.push((s, l));
        }
        out.sort();
        Ok(RationalCurve { n, splits: out })
    }

    /// Unit lengths.
    pub fn from_sets(n: usize, sets: &[Vec<usize>]) -> Result<Self> {
        Self::new(n, sets.iter().map(|s| (s.clone(), Rational::one())).collect())
    }

    /// Parses `(2,3) + (2,3,4) + (1,5):1/2`; a missing length means one.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let t = text.trim();
        if t.is_empty() {
            return Self::new(n, Vec::new());
        }
        let mut splits = Vec::new();
        let mut offset = text.len() - text.trim_start().len();
        for part in t.split('+') {
            let err = |m: &str| Error::Parse { position: offset, message: m.to_string() };
            let p = part.trim();
            let (set, len) = match p.split_once(':') {
                Some((a, b)) => (a.trim(), parse_rational(b).ok_or_else(|| err("bad length"))?),
                None => (p, Rational::one()),
            };
            let inner = set.strip_prefix('(').and_then(|s| s.strip_suffix(')')).ok_or_else(|| err("expected (…)"))?;
            let leaves = inner
                .split(',')
                .map(|x| x.trim().parse::<usize>().map_err(|_| err("expected leaf number")))
                .collect::<Result<Vec<_>>>()?;
            splits.push((leaves, len));
            offset += part.len() + 1;
        }
        Self::new(n, splits)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of bounded edges.
    pub fn dim(&self) -> usize {
        self.splits.len()
    }

    pub fn splits(&self) -> Vec<(Vec<usize>, Rational)> {
        self.splits.iter().map(|(s, l)| (leaves_of(*s), l.clone())).collect()
    }

    pub fn split_sets(&self) -> Vec<Vec<usize>> {
        self.splits.iter().map(|(s, _)| leaves_of(*s)).collect()
    }

    pub(crate) fn masks(&self) -> impl Iterator<Item = Set> + '_ {
        self.splits.iter().map(|(s, _)| *s)
    }

    /// Same curve with all lengths one.
    pub fn combinatorial_type(&self) -> RationalCurve {
        RationalCurve { n: self.n, splits: self.splits.iter().map(|(s, _)| (*s, Rational::one())).collect() }
    }

    /// Whether `self` is a face of `other`'s cone.
    pub fn is_face_of(&self, other: &RationalCurve) -> bool {
        self.n == other.n && self.masks().all(|s| other.masks().any(|t| t == s))
    }

    /// Relabels leaf `i` as `perm[i-1]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<RationalCurve> {
        let map = |s: Set| leaves_of(s).iter().fold(0, |m, &i| m | leaf_bit(perm[i - 1]));
        Self::from_masks(self.n, self.splits.iter().map(|(s, l)| (map(*s), l.clone())).collect())
    }

    pub(crate) fn tree(&self) -> Tree {
        Tree::new(self.n, self.masks().collect())
    }

    /// Valences of the vertices, root vertex (adjacent to `n`) first.
    pub fn valences(&self) -> Vec<usize> {
        self.tree().vertices.iter().map(|v| v.branches.len()).collect()
    }

    /// Leaves attached directly to each vertex, root vertex first.
    pub fn vertex_leaves(&self) -> Vec<Vec<usize>> {
        self.tree()
            .vertices
            .iter()
            .map(|v| v.branches.iter().filter(|b| b.count_ones() == 1).map(|&b| leaves_of(b)[0]).collect())
            .collect()
    }

    /// Cone of this type in matroid coordinates.
    pub fn cone(&self) -> Polyhedron {
        let rays: Vec<Vec<Integer>> = self.masks().map(|s| ray_vector(self.n, s)).collect();
        Polyhedron::cone(coordinate_dim(self.n), &rays, &[vec![Integer::one(); coordinate_dim(self.n)]])
    }

    /// `Σ α_I v_I` in matroid coordinates.
    pub fn moduli_vector(&self) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); coordinate_dim(self.n)];
        for (s, l) in &self.splits {
            for (x, r) in v.iter_mut().zip(ray_vector(self.n, *s)) {
                *x += l * Rational::from_integer(r);
            }
        }
        v
    }
}

impl fmt::Display for RationalCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .splits
            .iter()
            .map(|(s, l)| {
                let set: Vec<String> = leaves_of(*s).iter().map(|i| i.to_string()).collect();
                if l.is_one() {
                    format!("({})", set.join(","))
                } else {
                    format!("({}):{}", set.join(","), format_rational(l))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// An internal vertex with its branches; the first contains leaf `n`, the
/// rest are ordered by their smallest leaf.
#[derive(Clone, Debug)]
pub(crate) struct Vertex {
    pub branches: Vec<Set>,
}

/// The tree of a curve, rooted at the vertex next to leaf `n`.
#[derive(Clone, Debug)]
pub(crate) struct Tree {
    pub vertices: Vec<Vertex>,
    /// Parent vertex of each non-root vertex.
    pub parent: Vec<Option<usize>>,
}

impl Tree {
    fn new(n: usize, splits: Vec<Set>) -> Tree {
        let full = full_set(n);
        let root_set = full & !leaf_bit(n);
        let mut sets = vec![root_set];
        let mut sorted = splits;
        sorted.sort_by_key(|s| std::cmp::Reverse(s.count_ones()));
        sets.extend(sorted);
        let parent: Vec<Option<usize>> = (0..sets.len())
            .map(|i| {
                (i > 0).then(|| {
                    (0..sets.len())
                        .filter(|&j| j != i && sets[i] & !sets[j] == 0 && sets[j] != sets[i])
                        .min_by_key(|&j| sets[j].count_ones())
                        .expect("the root contains every split")
                })
            })
            .collect();
        let vertices = (0..sets.len())
            .map(|v| {
                let mut others: Vec<Set> = (0..sets.len()).filter(|&c| parent[c] == Some(v)).map(|c| sets[c]).collect();
                let covered = others.iter().fold(0, |a, b| a | b);
                others.extend(leaves_of(sets[v] & !covered).into_iter().map(leaf_bit));
                others.sort_by_key(|s| s.trailing_zeros());
                let mut branches = vec![full & !sets[v]];
                branches.extend(others);
                Vertex { branches }
            })
            .collect();
        Tree { vertices, parent }
    }
}

/// `C(n-1, 2)`.
pub fn coordinate_dim(n: usize) -> usize {
    (n - 1) * (n - 2) / 2
}

/// Edges of `K_{n-1}` on leaves `1..n-1`, lexicographic.
pub fn coordinate_edges(n: usize) -> Vec<(usize, usize)> {
    (1..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
}

/// Matroid coordinates of `v_I` for `I` not containing `n`.
pub(crate) fn ray_vector(n: usize, s: Set) -> Vec<Integer> {
    coordinate_edges(n)
        .into_iter()
        .map(|(a, b)| if s & leaf_bit(a) != 0 && s & leaf_bit(b) != 0 { Integer::one() } else { Integer::zero() })
        .collect()
}

/// Matroid coordinates of `v_I`; `I` may be given from either side.
pub fn split_vector(n: usize, leaves: &[usize]) -> Vec<Integer> {
    let s = set_of(leaves);
    let s = if s & leaf_bit(n) != 0 { full_set(n) & !s } else { s };
    ray_vector(n, s)
}

fn cycle_of(n: usize, curves: &[RationalCurve], weights: Vec<i64>, local: Option<Polyhedron>) -> Result<TropicalCycle> {
    let cells = par_map(curves, RationalCurve::cone);
    Ok(TropicalCycle::from_cells(coordinate_dim(n), cells, weights)?.with_local_cone(local))
}

/// `M0,n` as a fan in matroid coordinates with all weights one.
pub fn m0n(n: usize) -> Result<TropicalCycle> {
    let curves: Vec<RationalCurve> =
        enumerate_m0n_cones(n)?.iter().map(pruefer_to_curve).collect::<Result<_>>()?;
    let w = vec![1; curves.len()];
    cycle_of(n, &curves, w, None)
}

/// Curves with fixed weights, e.g. from a Psi-class product.
pub fn curves_to_cycle(n: usize, curves: &[(RationalCurve, i64)]) -> Result<TropicalCycle> {
    let (cs, ws): (Vec<RationalCurve>, Vec<i64>) = curves.iter().cloned().unzip();
    cycle_of(n, &cs, ws, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    const M013: &str = "(2,3) + (2,3,4) + (1,12) + (1,2,3,4,12) + (9,10) + (8,9,10) + (11,13) + (8,9,10,11,13)";

    #[test]
    fn parse_and_display() {
        let c = RationalCurve::parse(M013, 13).unwrap();
        assert_eq!(c.dim(), 8);
        let again = RationalCurve::parse(&c.to_string(), 13).unwrap();
        assert_eq!(again, c);
        let d = RationalCurve::parse("(1,2):1/2 + (1,2,3)", 6).unwrap();
        assert_eq!(d.splits()[0].1, rat(1, 2));
        assert_eq!(d.to_string(), "(1,2):1/2 + (1,2,3)");
    }

    #[test]
    fn invalid_curves() {
        assert!(RationalCurve::parse("(1,2) + (2,3)", 6).is_err());
        assert!(RationalCurve::parse("(1)", 6).is_err());
        assert!(RationalCurve::parse("(1,2,3,4,5)", 6).is_err());
        assert!(RationalCurve::parse("(1,2", 6).is_err());
        assert!(RationalCurve::parse("(1,2):0", 6).is_err());
    }

    #[test]
    fn valences_of_thirteen_leaf_curve() {
        let c = RationalCurve::parse(M013, 13).unwrap();
        let mut v = c.valences();
        v.sort_unstable();
        assert_eq!(v, vec![3, 3, 3, 3, 3, 3, 3, 3, 5]);
    }

    #[test]
    fn m0n_small() {
        let m = m0n(5).unwrap();
        assert_eq!(m.cells().len(), 15);
        assert!(m.is_balanced());
        assert_eq!(m.dim(), 3);
    }
}
