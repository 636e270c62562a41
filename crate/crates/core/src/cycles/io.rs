//! Interchange format for complexes and cycles.
//!
//! Rows are homogeneous: a vertex row starts with `1`, a ray row with `0`.
//! Cells whose lineality differs from the shared one list it as a pair of
//! opposite rays. A cell without a vertex row gets the origin as apex.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{PolyhedralComplex, TropicalCycle};
use crate::arith::{format_rational, parse_rational, primitive, to_rationals, Integer, Rational};
use crate::error::{Error, Result};
use crate::polyhedra::{homogenize, with_leading_zero, Polyhedron};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleDocument {
    pub ambient_dim: usize,
    pub rays: Vec<Vec<String>>,
    #[serde(default)]
    pub lineality: Vec<Vec<String>>,
    pub maximal_cells: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub local_cone: Option<Vec<usize>>,
    /// Only written for complexes without cells.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<isize>,
}

/// A complex flattened onto a sorted pool of homogeneous rows.
#[derive(Clone, Debug)]
pub struct Encoded {
    pub rows: Vec<Vec<Rational>>,
    pub lineality: Vec<Vec<Integer>>,
    pub cells: Vec<Vec<usize>>,
    pub local: Option<Vec<usize>>,
}

fn cell_rows(c: &Polyhedron, shared: bool) -> Vec<Vec<Rational>> {
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for v in c.vertices() {
        let mut r = vec![Rational::from_integer(1.into())];
        r.extend(v);
        rows.push(r);
    }
    for r in c.rays() {
        rows.push(to_rationals(&with_leading_zero(&r)));
    }
    if !shared {
        for l in c.lineality() {
            rows.push(to_rationals(&with_leading_zero(&l)));
            let neg: Vec<Integer> = l.iter().map(|x| -x).collect();
            rows.push(to_rationals(&with_leading_zero(&neg)));
        }
    }
    rows
}

impl Encoded {
    pub fn new(complex: &PolyhedralComplex) -> Self {
        let shared = complex.common_lineality();
        let lineality = shared.clone().unwrap_or_default();
        let per_cell: Vec<Vec<Vec<Rational>>> =
            complex.cells().iter().map(|c| cell_rows(c, shared.is_some())).collect();
        let local_rows = complex
            .local_cone()
            .map(|l| cell_rows(l, shared.is_some() && l.lineality() == lineality));
        let mut pool: BTreeMap<Vec<Rational>, usize> = BTreeMap::new();
        for r in per_cell.iter().flatten().chain(local_rows.iter().flatten()) {
            pool.insert(r.clone(), 0);
        }
        for (i, v) in pool.values_mut().enumerate() {
            *v = i;
        }
        let index = |rows: &Vec<Vec<Rational>>| {
            let mut ix: Vec<usize> = rows.iter().map(|r| pool[r]).collect();
            ix.sort_unstable();
            ix.dedup();
            ix
        };
        let cells = per_cell.iter().map(index).collect();
        let local = local_rows.as_ref().map(index);
        Encoded { rows: pool.into_keys().collect(), lineality, cells, local }
    }
}

pub(crate) fn parse_row(row: &[String], len: usize, what: &str) -> Result<Vec<Rational>> {
    if row.len() != len {
        return Err(Error::InvalidInput(format!("{what} row has {} entries, expected {len}", row.len())));
    }
    row.iter()
        .map(|s| parse_rational(s).ok_or_else(|| Error::InvalidInput(format!("bad rational {s:?}"))))
        .collect()
}

/// Homogeneous integer generator for a parsed row.
pub(crate) fn row_generator(row: &[Rational]) -> Result<Vec<Integer>> {
    let lead = &row[0];
    if lead.is_negative() {
        return Err(Error::InvalidInput("negative leading coordinate".into()));
    }
    if lead.is_zero() {
        return Ok(primitive(row));
    }
    let p: Vec<Rational> = row[1..].iter().map(|x| x / lead).collect();
    Ok(homogenize(&p))
}

pub(crate) fn decode_cells(
    ambient: usize,
    rows: &[Vec<String>],
    lineality: &[Vec<String>],
    cells: &[Vec<usize>],
) -> Result<(Vec<Vec<Rational>>, Vec<Polyhedron>, Vec<Vec<Integer>>)> {
    let parsed: Vec<Vec<Rational>> =
        rows.iter().map(|r| parse_row(r, ambient + 1, "ray")).collect::<Result<_>>()?;
    let gens: Vec<Vec<Integer>> = parsed.iter().map(|r| row_generator(r)).collect::<Result<_>>()?;
    let mut lin = Vec::new();
    for l in lineality {
        let r = parse_row(l, ambient + 1, "lineality")?;
        if !r[0].is_zero() {
            return Err(Error::InvalidInput("lineality rows must start with 0".into()));
        }
        lin.push(primitive(&r));
    }
    let mut polys = Vec::with_capacity(cells.len());
    for cell in cells {
        polys.push(build_cell(ambient, &gens, &lin, cell)?);
    }
    Ok((parsed, polys, lin))
}

pub(crate) fn build_cell(
    ambient: usize,
    gens: &[Vec<Integer>],
    lin: &[Vec<Integer>],
    cell: &[usize],
) -> Result<Polyhedron> {
    let mut g = Vec::with_capacity(cell.len() + 1);
    for &i in cell {
        g.push(gens.get(i).cloned().ok_or_else(|| Error::InvalidInput(format!("row index {i} out of range")))?);
    }
    if !g.iter().any(|r| r[0].is_positive()) {
        let mut origin = vec![Integer::zero(); ambient + 1];
        origin[0] = Integer::from(1);
        g.push(origin);
    }
    Ok(Polyhedron::from_generators(ambient, g, lin.to_vec()))
}

fn format_row(r: &[Rational]) -> Vec<String> {
    r.iter().map(format_rational).collect()
}

impl CycleDocument {
    pub fn from_cycle(x: &TropicalCycle) -> Self {
        let mut doc = Self::from_complex(x.complex());
        doc.weights = Some(x.weights().to_vec());
        doc
    }

    pub fn from_complex(c: &PolyhedralComplex) -> Self {
        let e = Encoded::new(c);
        CycleDocument {
            ambient_dim: c.ambient_dim(),
            rays: e.rows.iter().map(|r| format_row(r)).collect(),
            lineality: e.lineality.iter().map(|l| format_row(&to_rationals(&with_leading_zero(l)))).collect(),
            maximal_cells: e.cells,
            weights: None,
            local_cone: e.local,
            dim: c.cells().is_empty().then_some(c.dim()),
        }
    }

    /// Builds the cycle; missing weights default to one.
    pub fn to_cycle(&self) -> Result<TropicalCycle> {
        let (parsed, cells, lin) = decode_cells(self.ambient_dim, &self.rays, &self.lineality, &self.maximal_cells)?;
        let gens: Vec<Vec<Integer>> = parsed.iter().map(|r| row_generator(r)).collect::<Result<_>>()?;
        let local = match &self.local_cone {
            Some(ix) => Some(build_cell(self.ambient_dim, &gens, &lin, ix)?),
            None => None,
        };
        let weights = self.weights.clone().unwrap_or_else(|| vec![1; cells.len()]);
        let dim = cells.first().map_or(self.dim.unwrap_or(0), Polyhedron::dim);
        let complex = PolyhedralComplex::new(self.ambient_dim, dim, cells)?.with_local_cone(local);
        TropicalCycle::new(complex, weights)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse { position: e.column(), message: e.to_string() })
    }
}

impl TropicalCycle {
    pub fn to_json(&self) -> String {
        CycleDocument::from_cycle(self).to_json()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        CycleDocument::from_json(text)?.to_cycle()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_bit_exact() {
        let l = TropicalCycle::fan(2, &[vec![-1, 0], vec![0, -1], vec![1, 1]], &[vec![0], vec![1], vec![2]], &[], vec![1, 2, 3])
            .unwrap();
        let text = l.to_json();
        let back = TropicalCycle::from_json(&text).unwrap();
        assert_eq!(back.to_json(), text);
        assert_eq!(back.cells(), l.cells());
        assert_eq!(back.weights(), l.weights());
    }

    #[test]
    fn mixed_lineality_uses_ray_pairs() {
        let a = Polyhedron::cone(2, &[vec![0.into(), 1.into()]], &[vec![1.into(), 0.into()]]);
        let b = Polyhedron::cone(2, &[vec![0.into(), (-1).into()], vec![1.into(), 0.into()]], &[]);
        let x = TropicalCycle::from_cells(2, vec![a, b], vec![1, 1]).unwrap();
        let doc = CycleDocument::from_cycle(&x);
        assert!(doc.lineality.is_empty());
        let back = doc.to_cycle().unwrap();
        assert_eq!(back.cells(), x.cells());
    }
}
