//! Matroids given by bases or by a matrix, and their Bergman fans.
//!
//! Convention: `w ∈ B(M)` iff on every circuit the minimum of `w` is attained
//! at least twice, equivalently iff the matroid `M_w` of bases of maximal
//! `w`-weight has no loops.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{format_rational, parse_rational, rank, solve, Integer, Rational};
use crate::cycles::TropicalCycle;
use crate::error::{Error, Result};
use crate::par::par_map;
use crate::polyhedra::{normal_fan, skeleton, Polyhedron};

type Set = u64;

fn mask(s: &[usize]) -> Set {
    s.iter().fold(0, |m, &i| m | (1 << i))
}

fn elements(m: Set) -> Vec<usize> {
    (0..64).filter(|&i| m >> i & 1 == 1).collect()
}

/// Ground sets larger than this skip the basis exchange check.
pub const EXCHANGE_CHECK_LIMIT: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matroid {
    n: usize,
    rank: usize,
    bases: Vec<Set>,
    matrix: Option<Vec<Vec<Rational>>>,
    exchange_checked: bool,
}

fn combinations(n: usize, k: usize) -> Vec<Set> {
    fn rec(start: usize, n: usize, k: usize, cur: Set, out: &mut Vec<Set>) {
        if k == 0 {
            out.push(cur);
            return;
        }
        for i in start..=n - k {
            rec(i + 1, n, k - 1, cur | (1 << i), out);
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, 0, &mut out);
    }
    out
}

impl Matroid {
    pub fn from_bases(n: usize, bases: &[Vec<usize>]) -> Result<Self> {
        if n > 63 {
            return Err(Error::InvalidMatroid("at most 63 elements are supported".into()));
        }
        let Some(first) = bases.first() else {
            return Err(Error::InvalidMatroid("no bases".into()));
        };
        let r = first.len();
        let mut set: BTreeSet<Set> = BTreeSet::new();
        for b in bases {
            if b.iter().any(|&i| i >= n) {
                return Err(Error::InvalidMatroid(format!("basis {b:?} leaves the ground set")));
            }
            let m = mask(b);
            if m.count_ones() as usize != r || b.len() != r {
                return Err(Error::InvalidMatroid("bases of different sizes".into()));
            }
            set.insert(m);
        }
        let m = Matroid { n, rank: r, bases: set.into_iter().collect(), matrix: None, exchange_checked: n <= EXCHANGE_CHECK_LIMIT };
        if m.exchange_checked {
            m.check_exchange()?;
        }
        Ok(m)
    }

    fn check_exchange(&self) -> Result<()> {
        let all: BTreeSet<Set> = self.bases.iter().copied().collect();
        for &a in &self.bases {
            for &b in &self.bases {
                for x in elements(a & !b) {
                    let ok = elements(b & !a).into_iter().any(|y| all.contains(&(a & !(1 << x) | 1 << y)));
                    if !ok {
                        return Err(Error::InvalidMatroid(format!(
                            "basis exchange fails for {:?} and {:?}",
                            elements(a),
                            elements(b)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Column matroid of a rational matrix.
    pub fn from_matrix(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.first().map_or(0, Vec::len);
        if n == 0 || n > 63 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidMatroid("matrix must be rectangular with 1..=63 columns".into()));
        }
        let r = rank(&rows);
        if r == 0 {
            return Err(Error::InvalidMatroid("zero matrix".into()));
        }
        let cols: Vec<Vec<Rational>> = (0..n).map(|j| rows.iter().map(|row| row[j].clone()).collect()).collect();
        let bases: Vec<Set> = combinations(n, r)
            .into_iter()
            .filter(|&s| rank(&elements(s).iter().map(|&j| cols[j].clone()).collect::<Vec<_>>()) == r)
            .collect();
        Ok(Matroid { n, rank: r, bases, matrix: Some(rows), exchange_checked: false })
    }

    pub fn uniform(r: usize, n: usize) -> Result<Self> {
        if r > n || n > 63 {
            return Err(Error::InvalidMatroid(format!("no uniform matroid U({r},{n})")));
        }
        Ok(Matroid { n, rank: r, bases: combinations(n, r), matrix: None, exchange_checked: false })
    }

    /// Graphic matroid of `K_k`; edges `{a,b}`, `a < b`, in lexicographic order.
    pub fn complete_graph(k: usize) -> Result<Self> {
        let edges = complete_graph_edges(k);
        if edges.is_empty() || edges.len() > 63 {
            return Err(Error::InvalidMatroid(format!("K_{k} is not supported")));
        }
        let r = k - 1;
        let bases = combinations(edges.len(), r)
            .into_iter()
            .filter(|&s| {
                let mut parent: Vec<usize> = (0..k).collect();
                fn find(p: &mut [usize], x: usize) -> usize {
                    let mut x = x;
                    while p[x] != x {
                        p[x] = p[p[x]];
                        x = p[x];
                    }
                    x
                }
                elements(s).into_iter().all(|e| {
                    let (a, b) = edges[e];
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    parent[ra] = rb;
                    ra != rb
                })
            })
            .collect();
        Ok(Matroid { n: edges.len(), rank: r, bases, matrix: None, exchange_checked: false })
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Bases in lexicographic order.
    pub fn bases(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self.bases.iter().map(|&b| elements(b)).collect();
        out.sort();
        out
    }

    pub fn matrix(&self) -> Option<&[Vec<Rational>]> {
        self.matrix.as_deref()
    }

    /// Whether the basis exchange axiom was verified on construction.
    pub fn exchange_checked(&self) -> bool {
        self.exchange_checked
    }

    pub fn rank_of(&self, s: &[usize]) -> usize {
        let m = mask(s);
        self.bases.iter().map(|b| (b & m).count_ones() as usize).max().unwrap_or(0)
    }

    pub fn is_independent(&self, s: &[usize]) -> bool {
        let m = mask(s);
        self.bases.iter().any(|b| b & m == m)
    }

    fn independent_mask(&self, m: Set) -> bool {
        self.bases.iter().any(|b| b & m == m)
    }

    pub fn loops(&self) -> Vec<usize> {
        let all = self.bases.iter().fold(0, |a, b| a | b);
        (0..self.n).filter(|&i| all >> i & 1 == 0).collect()
    }

    /// Minimal dependent sets, by size and then lexicographically.
    pub fn circuits(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for k in 1..=(self.rank + 1).min(self.n) {
            for s in combinations(self.n, k) {
                if self.independent_mask(s) {
                    continue;
                }
                if elements(s).iter().all(|&x| self.independent_mask(s & !(1 << x))) {
                    out.push(elements(s));
                }
            }
        }
        out
    }

    /// `C(e, I) = {e} ∪ {i ∈ I : (I \ i) ∪ e independent}`; solved linearly
    /// when a matrix is known.
    pub fn fundamental_circuit(&self, independent: &[usize], e: usize) -> Result<Vec<usize>> {
        let i = mask(independent);
        if !self.independent_mask(i) || e >= self.n {
            return Err(Error::InvalidInput("fundamental circuit needs an independent set and an element".into()));
        }
        if i >> e & 1 == 1 || self.independent_mask(i | 1 << e) {
            return Err(Error::NotDependent);
        }
        if let Some(rows) = &self.matrix {
            let cols = elements(i);
            let sys: Vec<Vec<Rational>> = rows.iter().map(|r| cols.iter().map(|&j| r[j].clone()).collect()).collect();
            let rhs: Vec<Rational> = rows.iter().map(|r| r[e].clone()).collect();
            let coef = solve(&sys, &rhs, cols.len()).expect("e lies in the span of I");
            let mut c: Vec<usize> = cols.into_iter().zip(coef).filter(|(_, a)| !a.is_zero()).map(|(j, _)| j).collect();
            c.push(e);
            c.sort_unstable();
            return Ok(c);
        }
        let mut c: Vec<usize> =
            elements(i).into_iter().filter(|&x| self.independent_mask(i & !(1 << x) | 1 << e)).collect();
        c.push(e);
        c.sort_unstable();
        Ok(c)
    }

    fn fundamental_mask(&self, basis: Set, e: usize) -> Set {
        if self.matrix.is_some() {
            return mask(&self.fundamental_circuit(&elements(basis), e).expect("basis plus e is dependent"));
        }
        elements(basis)
            .into_iter()
            .filter(|&x| self.independent_mask(basis & !(1 << x) | 1 << e))
            .fold(1 << e, |m, x| m | 1 << x)
    }

    /// Convex hull of the basis indicator vectors.
    pub fn polytope(&self) -> Polyhedron {
        let pts: Vec<Vec<Rational>> = self
            .bases
            .iter()
            .map(|&b| (0..self.n).map(|i| if b >> i & 1 == 1 { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        Polyhedron::polytope(self.n, &pts)
    }

    /// Minimum attained at least twice on every circuit.
    pub fn circuit_criterion(&self, w: &[Rational], circuits: &[Vec<usize>]) -> bool {
        circuits.iter().all(|c| {
            let min = c.iter().map(|&i| &w[i]).min().expect("nonempty circuit");
            c.iter().filter(|&&i| &w[i] == min).count() >= 2
        })
    }

    /// Bases of maximal `w`-weight cover the ground set.
    pub fn max_bases_loop_free(&self, w: &[Rational]) -> bool {
        self.loops_of_max_bases(w) == 0
    }

    fn loops_of_max_bases(&self, w: &[Rational]) -> Set {
        let weight = |b: Set| -> Rational { elements(b).iter().map(|&i| w[i].clone()).sum() };
        let ws: Vec<Rational> = self.bases.iter().map(|&b| weight(b)).collect();
        let max = ws.iter().max().expect("bases are nonempty").clone();
        let cover = self.bases.iter().zip(&ws).filter(|(_, x)| **x == max).fold(0, |a, (b, _)| a | b);
        ((1u64 << self.n) - 1) & !cover
    }
}

pub fn complete_graph_edges(k: usize) -> Vec<(usize, usize)> {
    (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).collect()
}

/// A Bergman fan: all weights one.
#[derive(Clone, Debug)]
pub struct BergmanFan {
    pub cycle: TropicalCycle,
}

fn ones_lineality(n: usize) -> Vec<Integer> {
    vec![Integer::one(); n]
}

fn unit_diff(n: usize, hi: usize, lo: usize) -> Vec<Integer> {
    let mut v = vec![Integer::zero(); n + 1];
    v[hi + 1] += 1;
    v[lo + 1] -= 1;
    v
}

/// Cone of one basis and one choice `b(e) ∈ C(e,B) \ e`, keyed by its
/// classes and the transitive closure of the order on them.
type ConeKey = (Vec<Set>, Vec<(usize, usize)>);

fn no_loops(m: &Matroid) -> Result<()> {
    match m.loops().first() {
        Some(&e) => Err(Error::HasLoops(e)),
        None => Ok(()),
    }
}

fn rincon_keys(m: &Matroid, basis: Set) -> BTreeSet<ConeKey> {
    let bel = elements(basis);
    let r = bel.len();
    let pos: BTreeMap<usize, usize> = bel.iter().enumerate().map(|(k, &x)| (x, k)).collect();
    let outside: Vec<usize> = (0..m.n).filter(|&e| basis >> e & 1 == 0).collect();
    let circuits: Vec<Vec<usize>> = outside
        .iter()
        .map(|&e| elements(m.fundamental_mask(basis, e) & !(1 << e)).iter().map(|x| pos[x]).collect())
        .collect();
    let mut keys = BTreeSet::new();
    // above[a] is the set of classes forced to be >= class a
    let mut above = vec![0u64; r];
    let mut choice = vec![0usize; outside.len()];

    fn reaches(above: &[u64], from: usize, to: usize) -> bool {
        let mut seen = 0u64;
        let mut stack = vec![from];
        while let Some(x) = stack.pop() {
            if x == to {
                return true;
            }
            if seen >> x & 1 == 1 {
                continue;
            }
            seen |= 1 << x;
            stack.extend(elements(above[x]));
        }
        false
    }

    #[allow(clippy::too_many_arguments)]
    fn rec(
        k: usize,
        r: usize,
        bel: &[usize],
        outside: &[usize],
        circuits: &[Vec<usize>],
        above: &mut Vec<u64>,
        choice: &mut Vec<usize>,
        keys: &mut BTreeSet<ConeKey>,
    ) {
        if k == outside.len() {
            let mut classes: Vec<Set> = bel.iter().map(|&x| 1 << x).collect();
            for (j, &e) in outside.iter().enumerate() {
                classes[choice[j]] |= 1 << e;
            }
            let mut order = Vec::new();
            for a in 0..r {
                for b in 0..r {
                    if a != b && reaches(above, a, b) {
                        order.push((classes[a], classes[b]));
                    }
                }
            }
            let mut idx: Vec<usize> = (0..r).collect();
            idx.sort_by_key(|&a| classes[a]);
            let sorted: Vec<Set> = idx.iter().map(|&a| classes[a]).collect();
            let mut order: Vec<(usize, usize)> = order
                .into_iter()
                .map(|(lo, hi)| (sorted.binary_search(&lo).unwrap(), sorted.binary_search(&hi).unwrap()))
                .collect();
            order.sort_unstable();
            keys.insert((sorted, order));
            return;
        }
        for &b in &circuits[k] {
            let saved = above.clone();
            let mut ok = true;
            for &i in &circuits[k] {
                if i == b {
                    continue;
                }
                if reaches(above, i, b) {
                    ok = false;
                    break;
                }
                above[b] |= 1 << i;
            }
            if ok {
                choice[k] = b;
                rec(k + 1, r, bel, outside, circuits, above, choice, keys);
            }
            *above = saved;
        }
    }

    rec(0, r, &bel, &outside, &circuits, &mut above, &mut choice, &mut keys);
    keys
}

fn cone_from_key(n: usize, key: &ConeKey) -> Polyhedron {
    let (classes, order) = key;
    let mut eqs = Vec::new();
    for &c in classes {
        let el = elements(c);
        for w in el.windows(2) {
            eqs.push(unit_diff(n, w[1], w[0]));
        }
    }
    let rep = |c: Set| elements(c)[0];
    let ineqs: Vec<Vec<Integer>> =
        order.iter().map(|&(lo, hi)| unit_diff(n, rep(classes[hi]), rep(classes[lo]))).collect();
    Polyhedron::from_homogeneous_h(n, &ineqs, &eqs)
}

fn fan_from_cells(n: usize, cells: Vec<Polyhedron>) -> Result<BergmanFan> {
    let w = vec![1; cells.len()];
    Ok(BergmanFan { cycle: TropicalCycle::from_cells(n, cells, w)? })
}

/// Bergman fan from fundamental circuits of all bases.
pub fn bergman_fan_rincon(m: &Matroid) -> Result<BergmanFan> {
    no_loops(m)?;
    let keys: BTreeSet<ConeKey> = par_map(&m.bases, |&b| rincon_keys(m, b)).into_iter().flatten().collect();
    let keys: Vec<ConeKey> = keys.into_iter().collect();
    let mut cells: Vec<Polyhedron> = par_map(&keys, |k| cone_from_key(m.n, k));
    cells.sort();
    cells.dedup();
    fan_from_cells(m.n, cells)
}

/// Bergman fan as the cones of dimension `rank` in the normal fan of the
/// matroid polytope whose maximizing bases have no loop.
pub fn bergman_fan_normal(m: &Matroid) -> Result<BergmanFan> {
    no_loops(m)?;
    let fan = normal_fan(&m.polytope())?;
    let cones = skeleton(&fan, m.rank);
    let keep = par_map(&cones, |c| m.max_bases_loop_free(&c.relative_interior_point()));
    let cells = cones.into_iter().zip(keep).filter(|(_, k)| *k).map(|(c, _)| c).collect();
    fan_from_cells(m.n, cells)
}

impl BergmanFan {
    pub fn lineality(&self) -> Vec<Integer> {
        ones_lineality(self.cycle.ambient_dim())
    }

    pub fn contains(&self, w: &[Rational]) -> bool {
        self.cycle.contains_point(w)
    }
}

/// JSON form: either `n` and `bases`, or `matrix` with rational entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatroidDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bases: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<String>>>,
}

impl MatroidDocument {
    pub fn from_matroid(m: &Matroid) -> Self {
        MatroidDocument {
            n: Some(m.n),
            rank: Some(m.rank),
            bases: Some(m.bases()),
            matrix: m.matrix.as_ref().map(|rows| rows.iter().map(|r| r.iter().map(format_rational).collect()).collect()),
        }
    }

    pub fn to_matroid(&self) -> Result<Matroid> {
        if let Some(rows) = &self.matrix {
            let rows: Vec<Vec<Rational>> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|s| parse_rational(s).ok_or_else(|| Error::InvalidMatroid(format!("bad rational {s:?}"))))
                        .collect()
                })
                .collect::<Result<_>>()?;
            return Matroid::from_matrix(rows);
        }
        let (Some(n), Some(bases)) = (self.n, &self.bases) else {
            return Err(Error::InvalidMatroid("need `n` and `bases`, or `matrix`".into()));
        };
        let m = Matroid::from_bases(n, bases)?;
        if self.rank.is_some_and(|r| r != m.rank) {
            return Err(Error::InvalidMatroid("rank does not match the bases".into()));
        }
        Ok(m)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse { position: e.column(), message: e.to_string() })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_vec};

    fn two_pair_matrix() -> Matroid {
        Matroid::from_matrix(vec![rat_vec(&[1, -1, 0, 0]), rat_vec(&[0, 0, 1, -1])]).unwrap()
    }

    #[test]
    fn uniform_circuits() {
        assert_eq!(Matroid::uniform(2, 3).unwrap().circuits(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn matrix_circuits() {
        assert_eq!(two_pair_matrix().circuits(), vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn k4_has_seven_circuits() {
        let m = Matroid::complete_graph(4).unwrap();
        assert_eq!(m.rank(), 3);
        assert_eq!(m.bases().len(), 16);
        let c = m.circuits();
        assert_eq!(c.iter().filter(|c| c.len() == 3).count(), 4);
        assert_eq!(c.iter().filter(|c| c.len() == 4).count(), 3);
    }

    #[test]
    fn fundamental_circuits_agree() {
        let m = two_pair_matrix();
        let plain = Matroid::from_bases(4, &m.bases()).unwrap();
        assert_eq!(m.fundamental_circuit(&[0, 2], 1).unwrap(), vec![0, 1]);
        assert_eq!(plain.fundamental_circuit(&[0, 2], 1).unwrap(), vec![0, 1]);
        assert_eq!(m.fundamental_circuit(&[0], 2).unwrap_err(), Error::NotDependent);
    }

    #[test]
    fn bad_bases_rejected() {
        assert!(Matroid::from_bases(4, &[vec![0, 1], vec![2, 3]]).is_err());
        assert!(Matroid::from_bases(3, &[vec![0, 1], vec![2]]).is_err());
    }

    #[test]
    fn loops_rejected() {
        let m = Matroid::from_bases(3, &[vec![0, 1]]).unwrap();
        assert_eq!(bergman_fan_rincon(&m).unwrap_err(), Error::HasLoops(2));
    }

    #[test]
    fn u23_is_the_line() {
        let b = bergman_fan_rincon(&Matroid::uniform(2, 3).unwrap()).unwrap();
        assert_eq!(b.cycle.cells().len(), 3);
        assert_eq!(b.cycle.dim(), 2);
        assert!(b.cycle.is_balanced());
        assert!(b.contains(&rat_vec(&[0, 0, 5])));
        assert!(!b.contains(&rat_vec(&[0, 1, 2])));
    }

    #[test]
    fn criteria_agree() {
        let m = Matroid::complete_graph(4).unwrap();
        let circuits = m.circuits();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    let w = vec![rat(a, 1), rat(b, 1), rat(c, 1), rat(0, 1), rat(1, 1), rat(a, 1)];
                    assert_eq!(m.circuit_criterion(&w, &circuits), m.max_bases_loop_free(&w));
                }
            }
        }
    }

    #[test]
    fn fan_counts() {
        let k4 = Matroid::complete_graph(4).unwrap();
        assert_eq!(bergman_fan_rincon(&k4).unwrap().cycle.cells().len(), 15);
        assert_eq!(bergman_fan_normal(&k4).unwrap().cycle.cells().len(), 15);
        let u35 = Matroid::uniform(3, 5).unwrap();
        assert_eq!(bergman_fan_rincon(&u35).unwrap().cycle.cells().len(), 10);
        assert_eq!(bergman_fan_normal(&u35).unwrap().cycle.cells().len(), 10);
    }

    #[test]
    fn document_round_trip() {
        let m = two_pair_matrix();
        let doc = MatroidDocument::from_matroid(&m);
        assert_eq!(MatroidDocument::from_json(&doc.to_json()).unwrap().to_matroid().unwrap(), m);
    }
}
