//! Prüfer sequences of rational curves.
//!
//! A curve with `n` leaves and `L` internal vertices is a labelled tree on
//! `n + L` nodes; internal vertices get the labels `n+1..=n+L`. Its sequence
//! has length `n + L - 2` and every internal label occurs at least twice. The
//! ordered representative labels internal vertices by first occurrence.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::One;

use super::{leaf_bit, RationalCurve, Set};
use crate::arith::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrueferSequence {
    n: usize,
    entries: Vec<usize>,
}

impl PrueferSequence {
    pub fn new(n: usize, entries: Vec<usize>) -> Result<Self> {
        let p = PrueferSequence { n, entries };
        p.validate()?;
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// Number of internal vertices.
    pub fn labels(&self) -> usize {
        self.entries.iter().collect::<BTreeSet<_>>().len()
    }

    fn validate(&self) -> Result<()> {
        let n = self.n;
        if !(3..=63).contains(&n) {
            return Err(Error::InvalidSequence(format!("need 3 <= n <= 63, got {n}")));
        }
        let l = self.labels();
        if l == 0 || self.entries.len() != n + l - 2 {
            return Err(Error::InvalidSequence(format!(
                "length {} does not fit {n} leaves and {l} internal vertices",
                self.entries.len()
            )));
        }
        let mut count = vec![0usize; l];
        for &e in &self.entries {
            if e <= n || e > n + l {
                return Err(Error::InvalidSequence(format!("entry {e} outside {}..={}", n + 1, n + l)));
            }
            count[e - n - 1] += 1;
        }
        if count.iter().any(|&c| c < 2) {
            return Err(Error::InvalidSequence("every entry must occur at least twice".into()));
        }
        Ok(())
    }

    /// First occurrences appear in ascending order.
    pub fn is_ordered(&self) -> bool {
        let mut next = self.n + 1;
        for &e in &self.entries {
            if e == next {
                next += 1;
            } else if e > next {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for PrueferSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Ordered sequence of the combinatorial type of `c`.
pub fn curve_to_pruefer(c: &RationalCurve) -> PrueferSequence {
    let n = c.n();
    let tree = c.tree();
    let nv = tree.vertices.len();
    // Nodes 0..n are leaves 1..=n, n.. are tree vertices.
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n + nv];
    for (v, vert) in tree.vertices.iter().enumerate() {
        for &b in &vert.branches {
            if b.count_ones() == 1 {
                let leaf = b.trailing_zeros() as usize;
                adj[n + v].push(leaf);
                adj[leaf].push(n + v);
            }
        }
        if let Some(p) = tree.parent[v] {
            adj[n + v].push(n + p);
            adj[n + p].push(n + v);
        }
    }
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut label: Vec<Option<usize>> = (0..n + nv).map(|i| (i < n).then_some(i + 1)).collect();
    let mut removed = vec![false; n + nv];
    let mut next = n + 1;
    let mut entries = Vec::with_capacity(n + nv - 2);
    for _ in 0..n + nv - 2 {
        let leaf = (0..n + nv)
            .filter(|&i| !removed[i] && degree[i] == 1)
            .min_by_key(|&i| label[i].expect("leaves are labelled before removal"))
            .expect("a tree has a leaf");
        let nb = *adj[leaf].iter().find(|&&j| !removed[j]).expect("leaf has a neighbour");
        let l = *label[nb].get_or_insert_with(|| {
            next += 1;
            next - 1
        });
        entries.push(l);
        removed[leaf] = true;
        degree[nb] -= 1;
    }
    PrueferSequence { n, entries }
}

/// Standard Prüfer decoding to the edge list of the labelled tree.
fn decode(p: &PrueferSequence) -> Vec<(usize, usize)> {
    let total = p.entries.len() + 2;
    let mut degree = vec![1usize; total + 1];
    degree[0] = 0;
    for &e in &p.entries {
        degree[e] += 1;
    }
    let mut leaves: BTreeSet<usize> = (1..=total).filter(|&i| degree[i] == 1).collect();
    let mut edges = Vec::with_capacity(total - 1);
    for &e in &p.entries {
        let leaf = leaves.pop_first().expect("valid sequence");
        edges.push((leaf, e));
        degree[e] -= 1;
        if degree[e] == 1 {
            leaves.insert(e);
        }
    }
    let rest: Vec<usize> = leaves.into_iter().collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Combinatorial type with unit lengths.
pub fn pruefer_to_curve(p: &PrueferSequence) -> Result<RationalCurve> {
    p.validate()?;
    let n = p.n;
    let total = p.entries.len() + 2;
    let mut adj = vec![Vec::new(); total + 1];
    for (a, b) in decode(p) {
        adj[a].push(b);
        adj[b].push(a);
    }
    // Leaves behind each node as seen from leaf n.
    let mut below: Vec<Set> = vec![0; total + 1];
    let mut parent = vec![0usize; total + 1];
    let mut order = vec![n];
    let mut seen = vec![false; total + 1];
    seen[n] = true;
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                parent[w] = v;
                order.push(w);
            }
        }
        i += 1;
    }
    for &v in order.iter().rev() {
        if v <= n {
            below[v] |= leaf_bit(v);
        }
        if v != n {
            let b = below[v];
            below[parent[v]] |= b;
        }
    }
    let splits = order
        .iter()
        .filter(|&&v| v > n && parent[v] > n)
        .map(|&v| (below[v], Rational::one()))
        .collect();
    RationalCurve::from_masks(n, splits)
}

/// `(2n-5)!!`.
pub fn m0n_cone_count(n: usize) -> u64 {
    (1..=(2 * n as u64).saturating_sub(5)).step_by(2).product()
}

/// Ordered sequences of the maximal cones of `M0,n`, sorted.
pub fn enumerate_m0n_cones(n: usize) -> Result<Vec<PrueferSequence>> {
    if !(3..=63).contains(&n) {
        return Err(Error::InvalidInput(format!("need 3 <= n <= 63, got {n}")));
    }
    let mut out = Vec::new();
    let mut slots = vec![0usize; 2 * n - 4];
    fill_pairs(n, &mut slots, n + 1, &mut out);
    out.sort();
    Ok(out)
}

fn fill_pairs(n: usize, slots: &mut [usize], label: usize, out: &mut Vec<PrueferSequence>) {
    let Some(first) = slots.iter().position(|&s| s == 0) else {
        out.push(PrueferSequence { n, entries: slots.to_vec() });
        return;
    };
    slots[first] = label;
    for j in first + 1..slots.len() {
        if slots[j] == 0 {
            slots[j] = label;
            fill_pairs(n, slots, label + 1, out);
            slots[j] = 0;
        }
    }
    slots[first] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_leaf_example() {
        let c = RationalCurve::from_sets(4, &[vec![1, 3]]).unwrap();
        assert_eq!(curve_to_pruefer(&c).entries(), &[5, 6, 5, 6]);
        let p = PrueferSequence::new(4, vec![5, 6, 5, 6]).unwrap();
        assert_eq!(pruefer_to_curve(&p).unwrap(), c);
    }

    #[test]
    fn star_curve() {
        let c = RationalCurve::from_sets(4, &[]).unwrap();
        assert_eq!(curve_to_pruefer(&c).entries(), &[5, 5, 5]);
        let p = PrueferSequence::new(4, vec![5, 5, 5]).unwrap();
        assert_eq!(pruefer_to_curve(&p).unwrap().dim(), 0);
    }

    #[test]
    fn eight_leaf_example() {
        let p = PrueferSequence::new(8, vec![9, 9, 10, 10, 11, 11, 12, 12, 13, 13, 14, 14]).unwrap();
        let c = pruefer_to_curve(&p).unwrap();
        let expected =
            RationalCurve::from_sets(8, &[vec![1, 2], vec![3, 4], vec![5, 6], vec![7, 8], vec![1, 2, 3, 4]]).unwrap();
        assert_eq!(c, expected);
        assert_eq!(curve_to_pruefer(&c), p);
    }

    #[test]
    fn counts() {
        for n in 4..=8 {
            assert_eq!(enumerate_m0n_cones(n).unwrap().len() as u64, m0n_cone_count(n));
        }
        assert_eq!(m0n_cone_count(8), 10395);
    }

    #[test]
    fn invalid_sequences() {
        assert!(PrueferSequence::new(4, vec![5, 6, 5]).is_err());
        assert!(PrueferSequence::new(4, vec![5, 5, 4]).is_err());
        assert!(PrueferSequence::new(4, vec![5, 6, 6, 5, 5]).is_err());
        assert!(!PrueferSequence::new(4, vec![6, 5, 6, 5]).unwrap().is_ordered());
    }
}
