//! Tropical polynomials, piecewise affine functions and their divisors.

mod polynomial;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub use polynomial::{parse_polynomial, parse_polynomial_in, Mode, NewtonData, TropicalPolynomial};

use crate::arith::{dot, format_rational, parse_rational, solve, to_rationals, Integer, Rational};
use crate::cycles::{
    build_cell, common_refinement, covers, lattice_normal_vector, parse_row, row_generator, to_i64, CycleDocument,
    Encoded, PolyhedralComplex, TropicalCycle,
};
use crate::error::{Error, Result};
use crate::par::par_map;
use crate::polyhedra::Polyhedron;

/// `x ↦ c + ⟨l, x⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffinePiece {
    pub constant: Rational,
    pub linear: Vec<Rational>,
}

impl AffinePiece {
    pub fn evaluate(&self, x: &[Rational]) -> Rational {
        dot(&self.linear, x) + &self.constant
    }

    pub fn slope(&self, u: &[Integer]) -> Rational {
        dot(&self.linear, &to_rationals(u))
    }

    fn combine(&self, a: &Rational, other: &AffinePiece, b: &Rational) -> AffinePiece {
        AffinePiece {
            constant: a * &self.constant + b * &other.constant,
            linear: self.linear.iter().zip(&other.linear).map(|(x, y)| a * x + b * y).collect(),
        }
    }
}

/// A function on the support of a complex, affine on every cell.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    domain: PolyhedralComplex,
    pieces: Vec<AffinePiece>,
}

impl RationalFunction {
    /// Checks that every piece has integer slopes on its cell's lattice.
    pub fn new(domain: PolyhedralComplex, pieces: Vec<AffinePiece>) -> Result<Self> {
        if pieces.len() != domain.cells().len() {
            return Err(Error::InvalidInput(format!(
                "{} pieces for {} cells",
                pieces.len(),
                domain.cells().len()
            )));
        }
        for (k, (c, p)) in domain.cells().iter().zip(&pieces).enumerate() {
            if p.linear.len() != domain.ambient_dim() {
                return Err(Error::InconsistentFunction(k));
            }
            if c.lattice_basis().iter().any(|b| !p.slope(b).is_integer()) {
                return Err(Error::InvalidInput(format!("non-integral slope on cell {k}")));
            }
        }
        Ok(RationalFunction { domain, pieces })
    }

    pub fn from_polynomial(phi: &TropicalPolynomial) -> Self {
        let nd = phi.linearity_complex();
        let pieces = nd
            .term_of_cell
            .iter()
            .map(|&i| {
                let (v, a) = &phi.terms()[i];
                AffinePiece { constant: a.clone(), linear: to_rationals(v) }
            })
            .collect();
        RationalFunction { domain: nd.complex, pieces }
    }

    /// Interpolates from homogeneous rows: a value for each vertex row, a
    /// slope for each ray row and for each lineality row.
    pub fn from_values(
        ambient: usize,
        rows: &[Vec<Rational>],
        lineality: &[Vec<Rational>],
        cells: &[Vec<usize>],
        row_values: &[Rational],
        lineality_values: &[Rational],
    ) -> Result<Self> {
        if row_values.len() != rows.len() || lineality_values.len() != lineality.len() {
            return Err(Error::InvalidInput("one value per row is required".into()));
        }
        let gens: Vec<Vec<Integer>> = rows.iter().map(|r| row_generator(r)).collect::<Result<_>>()?;
        let lin: Vec<Vec<Integer>> = lineality.iter().map(|r| row_generator(r)).collect::<Result<_>>()?;
        let mut polys = Vec::with_capacity(cells.len());
        let mut pieces = Vec::with_capacity(cells.len());
        for (k, cell) in cells.iter().enumerate() {
            polys.push(build_cell(ambient, &gens, &lin, cell)?);
            let mut sys: Vec<Vec<Rational>> = Vec::new();
            let mut rhs: Vec<Rational> = Vec::new();
            let mut has_vertex = false;
            for &i in cell {
                let r = &rows[i];
                if r[0].is_positive() {
                    has_vertex = true;
                    sys.push(r.iter().map(|x| x / &r[0]).collect());
                } else {
                    sys.push(r.clone());
                }
                rhs.push(row_values[i].clone());
            }
            if !has_vertex {
                let mut origin = vec![Rational::zero(); ambient + 1];
                origin[0] = Rational::one();
                sys.push(origin);
                rhs.push(Rational::zero());
            }
            sys.extend(lineality.iter().cloned());
            rhs.extend(lineality_values.iter().cloned());
            let sol = solve(&sys, &rhs, ambient + 1).ok_or(Error::InconsistentFunction(k))?;
            pieces.push(AffinePiece { constant: sol[0].clone(), linear: sol[1..].to_vec() });
        }
        let dim = polys.first().map_or(0, Polyhedron::dim);
        Self::new(PolyhedralComplex::new(ambient, dim, polys)?, pieces)
    }

    pub fn domain(&self) -> &PolyhedralComplex {
        &self.domain
    }

    pub fn pieces(&self) -> &[AffinePiece] {
        &self.pieces
    }

    pub fn ambient_dim(&self) -> usize {
        self.domain.ambient_dim()
    }

    pub fn evaluate(&self, x: &[Rational]) -> Option<Rational> {
        self.domain.cells().iter().position(|c| c.contains(x)).map(|k| self.pieces[k].evaluate(x))
    }

    /// `Σ c_i f_i` on the common refinement of the domains.
    pub fn linear_combination(terms: &[(i64, &RationalFunction)]) -> Result<RationalFunction> {
        let Some(((c0, f0), rest)) = terms.split_first() else {
            return Err(Error::InvalidInput("empty linear combination".into()));
        };
        let c0 = Rational::from_integer((*c0).into());
        let zero = AffinePiece { constant: Rational::zero(), linear: vec![Rational::zero(); f0.ambient_dim()] };
        let mut acc = RationalFunction {
            domain: f0.domain.clone(),
            pieces: f0.pieces.iter().map(|p| p.combine(&c0, &zero, &Rational::zero())).collect(),
        };
        for (c, f) in rest {
            let r = common_refinement(&acc.domain, &f.domain)?;
            let c = Rational::from_integer((*c).into());
            let pieces = r
                .x_parent
                .iter()
                .zip(&r.y_parent)
                .map(|(&i, &j)| acc.pieces[i].combine(&Rational::one(), &f.pieces[j], &c))
                .collect();
            acc = RationalFunction { domain: r.complex, pieces };
        }
        Ok(acc)
    }

    pub fn to_document(&self) -> FunctionDocument {
        let e = Encoded::new(&self.domain);
        let mut vertex_values = Vec::new();
        let mut ray_slopes = Vec::new();
        for (i, row) in e.rows.iter().enumerate() {
            let k = e.cells.iter().position(|c| c.contains(&i)).expect("row belongs to a cell");
            let p = &self.pieces[k];
            if row[0].is_zero() {
                ray_slopes.push(format_rational(&dot(&p.linear, &row[1..])));
            } else {
                vertex_values.push(format_rational(&p.evaluate(&row[1..])));
            }
        }
        for l in &e.lineality {
            ray_slopes.push(format_rational(&self.pieces[0].slope(l)));
        }
        FunctionDocument { domain: CycleDocument::from_complex(&self.domain), vertex_values, ray_slopes }
    }

    pub fn from_document(doc: &FunctionDocument) -> Result<Self> {
        let d = &doc.domain;
        let n = d.ambient_dim;
        let rows: Vec<Vec<Rational>> = d.rays.iter().map(|r| parse_row(r, n + 1, "ray")).collect::<Result<_>>()?;
        let lin: Vec<Vec<Rational>> =
            d.lineality.iter().map(|r| parse_row(r, n + 1, "lineality")).collect::<Result<_>>()?;
        let parse = |s: &String| parse_rational(s).ok_or_else(|| Error::InvalidInput(format!("bad rational {s:?}")));
        let vals: Vec<Rational> = doc.vertex_values.iter().map(parse).collect::<Result<_>>()?;
        let slopes: Vec<Rational> = doc.ray_slopes.iter().map(parse).collect::<Result<_>>()?;
        let n_rays = rows.iter().filter(|r| r[0].is_zero()).count();
        if vals.len() + n_rays != rows.len() || slopes.len() != n_rays + lin.len() {
            return Err(Error::InvalidInput("value and slope counts do not match the rows".into()));
        }
        let (mut vi, mut si) = (vals.into_iter(), slopes.into_iter());
        let row_values: Vec<Rational> = rows
            .iter()
            .map(|r| if r[0].is_zero() { si.next() } else { vi.next() }.expect("counted"))
            .collect();
        let lin_values: Vec<Rational> = si.collect();
        Self::from_values(n, &rows, &lin, &d.maximal_cells, &row_values, &lin_values)
    }
}

/// A domain in the cycle format with one value per vertex row and one
/// slope per ray row followed by one per lineality row, in order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionDocument {
    #[serde(flatten)]
    pub domain: CycleDocument,
    pub vertex_values: Vec<String>,
    pub ray_slopes: Vec<String>,
}

impl FunctionDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse { position: e.column(), message: e.to_string() })
    }
}

/// Refines `x` until `f` is affine on every cell; returns the piece index per cell.
fn refine_along(f: &RationalFunction, x: &TropicalCycle) -> Result<(TropicalCycle, Vec<usize>)> {
    let dom = f.domain.cells();
    let direct: Vec<Option<usize>> = par_map(x.cells(), |c| dom.iter().position(|d| d.contains_polyhedron(c)));
    if direct.iter().all(Option::is_some) {
        return Ok((x.clone(), direct.into_iter().map(Option::unwrap).collect()));
    }
    let r = common_refinement(x.complex(), &f.domain)?;
    let pieces = r.complex.cells();
    for (i, sigma) in x.cells().iter().enumerate() {
        let mine: Vec<&Polyhedron> =
            r.x_parent.iter().zip(pieces).filter(|(&p, _)| p == i).map(|(_, c)| c).collect();
        if !covers(sigma, &mine) {
            return Err(Error::SupportNotContained);
        }
    }
    let weights = r.x_parent.iter().map(|&i| x.weights()[i]).collect();
    let refined = TropicalCycle::new(r.complex.with_local_cone(x.local_cone().cloned()), weights)?;
    Ok((refined, r.y_parent))
}

/// The divisor `f · x`; cells of weight zero are dropped.
pub fn divisor(f: &RationalFunction, x: &TropicalCycle) -> Result<TropicalCycle> {
    if f.ambient_dim() != x.ambient_dim() {
        return Err(Error::AmbientMismatch(x.ambient_dim(), f.ambient_dim()));
    }
    let x = x.normalized();
    if x.dim() <= 0 {
        return Ok(TropicalCycle::empty(x.ambient_dim(), x.dim() - 1).with_local_cone(x.local_cone().cloned()));
    }
    let (xr, piece) = refine_along(f, &x)?;
    let c1 = xr.complex().codim_one();
    let relevant = xr.complex().relevant_codim_one();
    let n = xr.ambient_dim();
    let computed = par_map(&relevant, |&t| -> Result<i64> {
        let adj = &c1.adjacent[t];
        let mut total = Rational::zero();
        let mut sum = vec![Integer::zero(); n];
        for &s in adj {
            let u = lattice_normal_vector(&xr.cells()[s], &c1.cells[t])?;
            let w = Integer::from(xr.weights()[s]);
            total += f.pieces[piece[s]].slope(&u) * Rational::from_integer(w.clone());
            for (a, b) in sum.iter_mut().zip(&u) {
                *a += &w * b;
            }
        }
        total -= f.pieces[piece[adj[0]]].slope(&sum);
        to_i64(&total)
    });
    let mut cells = Vec::new();
    let mut weights = Vec::new();
    for (&t, w) in relevant.iter().zip(computed) {
        let w = w?;
        if w != 0 {
            cells.push(c1.cells[t].clone());
            weights.push(w);
        }
    }
    let complex = PolyhedralComplex::new(n, xr.dim() - 1, cells)?.with_local_cone(x.local_cone().cloned());
    TropicalCycle::new(complex, weights)
}

/// Divisor of a tropical polynomial, read in the ambient space of `x`.
pub fn polynomial_divisor(phi: &TropicalPolynomial, x: &TropicalCycle) -> Result<TropicalCycle> {
    let phi = phi.with_vars(x.ambient_dim())?;
    divisor(&RationalFunction::from_polynomial(&phi), x)
}

/// `f^k · x`.
pub fn divisor_power(f: &RationalFunction, k: usize, x: &TropicalCycle) -> Result<TropicalCycle> {
    let mut out = x.clone();
    for _ in 0..k {
        out = divisor(f, &out)?;
    }
    Ok(out)
}
