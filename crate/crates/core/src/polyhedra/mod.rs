//! Rational polyhedra with both descriptions, kept in canonical form.
//!
//! Everything is stored in homogeneous coordinates in `R^{n+1}`: a vertex
//! `p` becomes a positive multiple of `(1, p)`, rays and lineality vectors
//! get a leading `0`, and an inequality `<a, x> >= b` is the row `(-b, a)`
//! that must be nonnegative on every generator.

mod bitset;
mod dd;

use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};

pub(crate) use bitset::BitSet;

use crate::arith::{
    dot_int, int_rank, kernel, kernel_lattice_basis, lattice_basis_of_span, primitive, primitive_int,
    project_onto, project_onto_complement, rref, to_rationals, Integer, IntegerMatrix, Rational,
};
use crate::error::{Error, Result};

/// Inequalities `<x, normal> >= offset` and equations `<x, normal> = offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HDescription {
    pub inequalities: Vec<(Vec<Rational>, Rational)>,
    pub equations: Vec<(Vec<Rational>, Rational)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VDescription {
    pub vertices: Vec<Vec<Rational>>,
    pub rays: Vec<Vec<Integer>>,
    pub lineality: Vec<Vec<Integer>>,
}

#[derive(Clone)]
pub struct Polyhedron {
    ambient: usize,
    dim: isize,
    /// Points first, then rays; all primitive and orthogonal to the lineality.
    generators: Vec<Vec<Integer>>,
    points: usize,
    lineality: Vec<Vec<Integer>>,
    facets: Vec<Vec<Integer>>,
    equations: Vec<Vec<Integer>>,
    lattice: OnceLock<Vec<Vec<Integer>>>,
}

impl PartialEq for Polyhedron {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient
            && self.generators == other.generators
            && self.lineality == other.lineality
    }
}

impl Eq for Polyhedron {}

impl Hash for Polyhedron {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ambient.hash(state);
        self.generators.hash(state);
        self.lineality.hash(state);
    }
}

impl PartialOrd for Polyhedron {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Polyhedron {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.ambient, self.dim, &self.generators, &self.lineality).cmp(&(
            other.ambient,
            other.dim,
            &other.generators,
            &other.lineality,
        ))
    }
}

impl fmt::Debug for Polyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &[Integer]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        write!(f, "Polyhedron(dim {}; ", self.dim)?;
        let gens: Vec<String> = self.generators.iter().map(|g| show(g)).collect();
        write!(f, "gens [{}]", gens.join(", "))?;
        if !self.lineality.is_empty() {
            let lin: Vec<String> = self.lineality.iter().map(|g| show(g)).collect();
            write!(f, "; lin [{}]", lin.join(", "))?;
        }
        write!(f, ")")
    }
}

fn unit(d: usize, i: usize) -> Vec<Integer> {
    let mut v = vec![Integer::zero(); d];
    v[i] = Integer::one();
    v
}

/// `primitive((1, p))`.
pub(crate) fn homogenize(p: &[Rational]) -> Vec<Integer> {
    let mut v = Vec::with_capacity(p.len() + 1);
    v.push(Rational::one());
    v.extend(p.iter().cloned());
    primitive(&v)
}

pub(crate) fn with_leading_zero(v: &[Integer]) -> Vec<Integer> {
    let mut out = Vec::with_capacity(v.len() + 1);
    out.push(Integer::zero());
    out.extend(v.iter().cloned());
    out
}

fn dehomogenize(g: &[Integer]) -> Vec<Rational> {
    g[1..].iter().map(|x| Rational::new(x.clone(), g[0].clone())).collect()
}

/// Row-reduced basis of the row space, each row made primitive.
fn canonical_rows(rows: &[Vec<Rational>]) -> Vec<Vec<Integer>> {
    let mut m = rows.to_vec();
    rref(&mut m);
    m.iter().map(|r| primitive(r)).collect()
}

fn affine_row(normal: &[Rational], offset: &Rational) -> Vec<Integer> {
    let mut v = Vec::with_capacity(normal.len() + 1);
    v.push(-offset.clone());
    v.extend(normal.iter().cloned());
    primitive(&v)
}

impl Polyhedron {
    pub fn empty(ambient: usize) -> Self {
        Polyhedron {
            ambient,
            dim: -1,
            generators: Vec::new(),
            points: 0,
            lineality: Vec::new(),
            facets: Vec::new(),
            equations: vec![unit(ambient + 1, 0)],
            lattice: OnceLock::new(),
        }
    }

    /// All of `R^n`.
    pub fn whole_space(ambient: usize) -> Self {
        let lin: Vec<Vec<Integer>> = (1..=ambient).map(|i| unit(ambient + 1, i)).collect();
        Self::from_generators(ambient, vec![unit(ambient + 1, 0)], lin)
    }

    /// Polyhedron from homogeneous rows: every row of `ineqs` is nonnegative
    /// and every row of `eqs` vanishes on `(1, x)`.
    pub fn from_homogeneous_h(ambient: usize, ineqs: &[Vec<Integer>], eqs: &[Vec<Integer>]) -> Self {
        let d = ambient + 1;
        let mut all = ineqs.to_vec();
        all.push(unit(d, 0));
        let (gens, lin) = dd::cone_generators(&all, eqs, d);
        if !gens.iter().any(|g| g[0].is_positive()) {
            return Self::empty(ambient);
        }
        Self::finish(ambient, gens, lin, ineqs)
    }

    /// Polyhedron generated by homogeneous points (leading entry > 0), rays and
    /// lineality (leading entry 0). Redundant generators are allowed.
    pub fn from_generators(ambient: usize, gens: Vec<Vec<Integer>>, lineality: Vec<Vec<Integer>>) -> Self {
        if !gens.iter().any(|g| g[0].is_positive()) {
            return Self::empty(ambient);
        }
        let d = ambient + 1;
        let (facets, eqs) = dd::cone_generators(&gens, &lineality, d);
        let mut all_rows: Vec<Vec<Rational>> = facets.iter().map(|r| to_rationals(r)).collect();
        all_rows.extend(eqs.iter().map(|r| to_rationals(r)));
        let lin: Vec<Vec<Integer>> = kernel(&all_rows, d).iter().map(|v| primitive(v)).collect();
        let lin_q: Vec<Vec<Rational>> = lin.iter().map(|r| to_rationals(r)).collect();
        let target = d - lin.len() - 1;
        let mut extreme: BTreeSet<Vec<Integer>> = BTreeSet::new();
        for g in &gens {
            let p = primitive(&project_onto_complement(&to_rationals(g), &lin_q));
            if p.iter().all(Zero::is_zero) || extreme.contains(&p) {
                continue;
            }
            let mut tight: Vec<Vec<Integer>> =
                facets.iter().filter(|f| dot_int(f, &p).is_zero()).cloned().collect();
            tight.extend(eqs.iter().cloned());
            if int_rank(&tight) == target {
                extreme.insert(p);
            }
        }
        Self::finish(ambient, extreme.into_iter().collect(), lin, &facets)
    }

    /// Canonicalizes extreme generators and selects facets among `candidates`.
    fn finish(
        ambient: usize,
        gens: Vec<Vec<Integer>>,
        lin: Vec<Vec<Integer>>,
        candidates: &[Vec<Integer>],
    ) -> Self {
        let d = ambient + 1;
        let lineality = lattice_basis_of_span(&lin);
        let lin_q: Vec<Vec<Rational>> = lineality.iter().map(|r| to_rationals(r)).collect();
        let mut pts: BTreeSet<(Vec<Rational>, Vec<Integer>)> = BTreeSet::new();
        let mut rays: BTreeSet<Vec<Integer>> = BTreeSet::new();
        for g in gens {
            let p = if lin_q.is_empty() {
                primitive_int(&g)
            } else {
                primitive(&project_onto_complement(&to_rationals(&g), &lin_q))
            };
            if p[0].is_positive() {
                pts.insert((dehomogenize(&p), p));
            } else if p.iter().any(|x| !x.is_zero()) {
                rays.insert(p);
            }
        }
        if pts.is_empty() {
            return Self::empty(ambient);
        }
        let points = pts.len();
        let mut generators: Vec<Vec<Integer>> = pts.into_iter().map(|(_, p)| p).collect();
        generators.extend(rays);

        let mut span: Vec<Vec<Rational>> = generators.iter().map(|r| to_rationals(r)).collect();
        span.extend(lin_q.iter().cloned());
        let eq_space = kernel(&span, d);
        let equations = canonical_rows(&eq_space);
        let eq_q: Vec<Vec<Rational>> = equations.iter().map(|r| to_rationals(r)).collect();
        let cone_dim = d - equations.len();
        // Project onto whichever of the span and its complement is smaller.
        let mut span_basis = span;
        rref(&mut span_basis);
        span_basis.retain(|r| r.iter().any(|x| !x.is_zero()));
        let reduce = |c: &[Integer]| {
            if eq_q.len() <= span_basis.len() {
                project_onto_complement(&to_rationals(c), &eq_q)
            } else {
                project_onto(&to_rationals(c), &span_basis)
            }
        };

        let mut facets: BTreeSet<Vec<Integer>> = BTreeSet::new();
        for c in candidates {
            let f = primitive(&reduce(c));
            if f.iter().all(Zero::is_zero) || facets.contains(&f) {
                continue;
            }
            let tight: Vec<usize> =
                (0..generators.len()).filter(|&i| dot_int(&f, &generators[i]).is_zero()).collect();
            if !tight.iter().any(|&i| i < points) {
                continue;
            }
            let mut rows: Vec<Vec<Integer>> = tight.iter().map(|&i| generators[i].clone()).collect();
            rows.extend(lineality.iter().cloned());
            if int_rank(&rows) + 1 == cone_dim {
                facets.insert(f);
            }
        }

        Polyhedron {
            ambient,
            dim: cone_dim as isize - 1,
            generators,
            points,
            lineality,
            facets: facets.into_iter().collect(),
            equations,
            lattice: OnceLock::new(),
        }
    }

    pub fn from_h(ambient: usize, h: &HDescription) -> Self {
        let ineqs: Vec<Vec<Integer>> = h.inequalities.iter().map(|(a, b)| affine_row(a, b)).collect();
        let eqs: Vec<Vec<Integer>> = h.equations.iter().map(|(a, b)| affine_row(a, b)).collect();
        Self::from_homogeneous_h(ambient, &ineqs, &eqs)
    }

    pub fn from_v(ambient: usize, v: &VDescription) -> Self {
        let mut gens: Vec<Vec<Integer>> = v.vertices.iter().map(|p| homogenize(p)).collect();
        gens.extend(v.rays.iter().map(|r| with_leading_zero(r)));
        let lin = v.lineality.iter().map(|r| with_leading_zero(r)).collect();
        Self::from_generators(ambient, gens, lin)
    }

    /// Cone with apex at the origin.
    pub fn cone(ambient: usize, rays: &[Vec<Integer>], lineality: &[Vec<Integer>]) -> Self {
        let mut gens = vec![unit(ambient + 1, 0)];
        gens.extend(rays.iter().map(|r| with_leading_zero(r)));
        let lin = lineality.iter().map(|r| with_leading_zero(r)).collect();
        Self::from_generators(ambient, gens, lin)
    }

    pub fn polytope(ambient: usize, vertices: &[Vec<Rational>]) -> Self {
        let gens = vertices.iter().map(|p| homogenize(p)).collect();
        Self::from_generators(ambient, gens, Vec::new())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> isize {
        self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.dim < 0
    }

    pub fn is_bounded(&self) -> bool {
        self.generators.len() == self.points && self.lineality.is_empty()
    }

    /// Homogeneous generators: points first, then rays.
    pub fn homogeneous_generators(&self) -> &[Vec<Integer>] {
        &self.generators
    }

    pub fn num_points(&self) -> usize {
        self.points
    }

    pub fn homogeneous_lineality(&self) -> &[Vec<Integer>] {
        &self.lineality
    }

    /// Homogeneous facet rows `(b0, a)` meaning `b0 + <a, x> >= 0`.
    pub fn homogeneous_facets(&self) -> &[Vec<Integer>] {
        &self.facets
    }

    pub fn homogeneous_equations(&self) -> &[Vec<Integer>] {
        &self.equations
    }

    pub fn vertices(&self) -> Vec<Vec<Rational>> {
        self.generators[..self.points].iter().map(|g| dehomogenize(g)).collect()
    }

    pub fn rays(&self) -> Vec<Vec<Integer>> {
        self.generators[self.points..].iter().map(|g| g[1..].to_vec()).collect()
    }

    pub fn lineality(&self) -> Vec<Vec<Integer>> {
        self.lineality.iter().map(|g| g[1..].to_vec()).collect()
    }

    pub fn v_description(&self) -> VDescription {
        VDescription { vertices: self.vertices(), rays: self.rays(), lineality: self.lineality() }
    }

    pub fn h_description(&self) -> HDescription {
        let split = |r: &Vec<Integer>| {
            let normal = to_rationals(&r[1..]);
            (normal, Rational::from_integer(-r[0].clone()))
        };
        HDescription {
            inequalities: self.facets.iter().map(split).collect(),
            equations: self.equations.iter().map(split).collect(),
        }
    }

    /// Whether this is a cone with apex at the origin.
    pub fn is_cone(&self) -> bool {
        self.points == 1 && self.generators[0][1..].iter().all(Zero::is_zero)
    }

    fn evaluate(row: &[Integer], x: &[Rational]) -> Rational {
        let mut s = Rational::from_integer(row[0].clone());
        for (a, xi) in row[1..].iter().zip(x) {
            if !a.is_zero() {
                s += xi * a;
            }
        }
        s
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        !self.is_empty()
            && self.equations.iter().all(|e| Self::evaluate(e, x).is_zero())
            && self.facets.iter().all(|f| !Self::evaluate(f, x).is_negative())
    }

    pub fn relative_interior_contains(&self, x: &[Rational]) -> bool {
        !self.is_empty()
            && self.equations.iter().all(|e| Self::evaluate(e, x).is_zero())
            && self.facets.iter().all(|f| Self::evaluate(f, x).is_positive())
    }

    /// Whether `other` is a subset of `self`.
    pub fn contains_polyhedron(&self, other: &Polyhedron) -> bool {
        if other.is_empty() {
            return true;
        }
        if self.is_empty() {
            return false;
        }
        let zero_on = |row: &Vec<Integer>| {
            other.generators.iter().chain(&other.lineality).all(|g| dot_int(row, g).is_zero())
        };
        self.equations.iter().all(zero_on)
            && self.facets.iter().all(|f| {
                other.generators.iter().all(|g| !dot_int(f, g).is_negative())
                    && other.lineality.iter().all(|l| dot_int(f, l).is_zero())
            })
    }

    /// Vertex barycenter plus the sum of the primitive rays.
    pub fn relative_interior_point(&self) -> Vec<Rational> {
        assert!(!self.is_empty(), "empty polyhedron has no interior point");
        let mut p = vec![Rational::zero(); self.ambient];
        for v in self.vertices() {
            for (pi, vi) in p.iter_mut().zip(v) {
                *pi += vi;
            }
        }
        let k = Rational::from_integer(Integer::from(self.points));
        for pi in p.iter_mut() {
            *pi /= &k;
        }
        for r in &self.generators[self.points..] {
            for (pi, ri) in p.iter_mut().zip(&r[1..]) {
                *pi += Rational::from_integer(ri.clone());
            }
        }
        p
    }

    /// Linear parts of the equations: `V_σ` is their common kernel.
    pub fn linear_equations(&self) -> Vec<Vec<Integer>> {
        if self.is_empty() {
            return Vec::new();
        }
        let rows: Vec<Vec<Rational>> = self.equations.iter().map(|e| to_rationals(&e[1..])).collect();
        canonical_rows(&rows)
    }

    /// Lattice basis of `Λ_σ = V_σ ∩ Z^n`, computed once.
    pub fn lattice_basis(&self) -> &[Vec<Integer>] {
        self.lattice.get_or_init(|| {
            let eqs = self.linear_equations();
            if eqs.is_empty() {
                (0..self.ambient).map(|i| unit(self.ambient, i)).collect()
            } else {
                let b = kernel_lattice_basis(&IntegerMatrix::from_rows(&eqs, self.ambient));
                crate::arith::lattice_basis_of_span(&b)
            }
        })
    }

    /// Direction vectors spanning `V_σ`: rays, lineality and vertex differences.
    pub fn span_directions(&self) -> Vec<Vec<Rational>> {
        let verts = self.vertices();
        let mut out: Vec<Vec<Rational>> = Vec::new();
        if let Some(v0) = verts.first() {
            for v in &verts[1..] {
                out.push(v.iter().zip(v0).map(|(a, b)| a - b).collect());
            }
        }
        out.extend(self.rays().iter().map(|r| to_rationals(r)));
        out.extend(self.lineality().iter().map(|r| to_rationals(r)));
        out
    }

    pub fn intersect(&self, other: &Polyhedron) -> Polyhedron {
        assert_eq!(self.ambient, other.ambient, "ambient dimension mismatch");
        if self.is_empty() || other.is_empty() {
            return Self::empty(self.ambient);
        }
        if self.contains_polyhedron(other) {
            return other.clone();
        }
        if other.contains_polyhedron(self) {
            return self.clone();
        }
        let mut ineqs = self.facets.clone();
        ineqs.extend(other.facets.iter().cloned());
        let mut eqs = self.equations.clone();
        eqs.extend(other.equations.iter().cloned());
        Self::from_homogeneous_h(self.ambient, &ineqs, &eqs)
    }

    /// Indices of generators on which `row` vanishes.
    fn tight_set(&self, row: &[Integer]) -> BitSet {
        let mut b = BitSet::new(self.generators.len());
        for (i, g) in self.generators.iter().enumerate() {
            if dot_int(row, g).is_zero() {
                b.insert(i);
            }
        }
        b
    }

    fn subset_dim(&self, set: &BitSet) -> isize {
        let mut rows: Vec<Vec<Integer>> = set.iter().map(|i| self.generators[i].clone()).collect();
        rows.extend(self.lineality.iter().cloned());
        int_rank(&rows) as isize - 1
    }

    fn face_from_set(&self, set: &BitSet) -> Polyhedron {
        let gens: Vec<Vec<Integer>> = set.iter().map(|i| self.generators[i].clone()).collect();
        Self::finish(self.ambient, gens, self.lineality.clone(), &self.facets)
    }

    /// All faces of dimension `k`.
    pub fn faces(&self, k: usize) -> Vec<Polyhedron> {
        let k = k as isize;
        if self.is_empty() || k > self.dim {
            return Vec::new();
        }
        if k == self.dim {
            return vec![self.clone()];
        }
        let tight: Vec<BitSet> = self.facets.iter().map(|f| self.tight_set(f)).collect();
        let mut all = BitSet::new(self.generators.len());
        for i in 0..self.generators.len() {
            all.insert(i);
        }
        let mut level: BTreeSet<BitSet> = BTreeSet::from([all]);
        for j in ((k + 1)..=self.dim).rev() {
            let mut next = BTreeSet::new();
            for g in &level {
                for t in &tight {
                    let sub = g.intersection(t);
                    if &sub == g || next.contains(&sub) {
                        continue;
                    }
                    if !sub.iter().next().is_some_and(|i| i < self.points) {
                        continue;
                    }
                    if self.subset_dim(&sub) == j - 1 {
                        next.insert(sub);
                    }
                }
            }
            level = next;
        }
        let mut out: Vec<Polyhedron> = level.iter().map(|s| self.face_from_set(s)).collect();
        out.sort();
        out
    }

    /// Faces of codimension one.
    pub fn facet_faces(&self) -> Vec<Polyhedron> {
        if self.dim <= 0 {
            return Vec::new();
        }
        let mut out: Vec<Polyhedron> = self
            .facets
            .iter()
            .map(|f| self.face_from_set(&self.tight_set(f)))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// The facet row of `self` whose face is `tau`, if `tau` is a facet.
    pub fn facet_row_for(&self, tau: &Polyhedron) -> Option<&Vec<Integer>> {
        if tau.dim != self.dim - 1 || !self.contains_polyhedron(tau) {
            return None;
        }
        self.facets.iter().find(|f| {
            tau.generators.iter().chain(&tau.lineality).all(|g| dot_int(f, g).is_zero())
        })
    }

    /// Image under `x ↦ x - p`.
    pub fn translate(&self, p: &[Rational]) -> Polyhedron {
        let gens = self
            .generators
            .iter()
            .map(|g| {
                if g[0].is_zero() {
                    return g.clone();
                }
                let v: Vec<Rational> = dehomogenize(g).iter().zip(p).map(|(a, b)| a - b).collect();
                homogenize(&v)
            })
            .collect();
        Self::from_generators(self.ambient, gens, self.lineality.clone())
    }

    /// The cone generated by `self - p` for a point `p` of `self`, with extra lineality.
    pub fn cone_at(&self, p: &[Rational], extra_lineality: &[Vec<Integer>]) -> Polyhedron {
        let mut rays: Vec<Vec<Integer>> = Vec::new();
        for g in &self.generators {
            let r = if g[0].is_zero() {
                g[1..].to_vec()
            } else {
                let v: Vec<Rational> = dehomogenize(g).iter().zip(p).map(|(a, b)| a - b).collect();
                primitive(&v)
            };
            if r.iter().any(|x| !x.is_zero()) {
                rays.push(r);
            }
        }
        let mut lin = self.lineality();
        lin.extend(extra_lineality.iter().cloned());
        Self::cone(self.ambient, &rays, &lin)
    }

    /// Minkowski sum; with `negate_other` the second summand is reflected.
    pub fn minkowski_sum(&self, other: &Polyhedron, negate_other: bool) -> Polyhedron {
        assert_eq!(self.ambient, other.ambient, "ambient dimension mismatch");
        if self.is_empty() || other.is_empty() {
            return Self::empty(self.ambient);
        }
        let sign = |v: &[Integer]| -> Vec<Integer> {
            if negate_other {
                v.iter().map(|x| -x).collect()
            } else {
                v.to_vec()
            }
        };
        let mut gens = Vec::new();
        for p in self.vertices() {
            for q in other.vertices() {
                let qs: Vec<Rational> = if negate_other { q.iter().map(|x| -x).collect() } else { q };
                let s: Vec<Rational> = p.iter().zip(&qs).map(|(a, b)| a + b).collect();
                gens.push(homogenize(&s));
            }
        }
        gens.extend(self.generators[self.points..].iter().cloned());
        gens.extend(other.generators[other.points..].iter().map(|r| {
            let mut v = sign(r);
            v[0] = Integer::zero();
            v
        }));
        let mut lin = self.lineality.clone();
        lin.extend(other.lineality.iter().cloned());
        Self::from_generators(self.ambient, gens, lin)
    }

    pub fn cartesian_product(&self, other: &Polyhedron) -> Polyhedron {
        let (n, m) = (self.ambient, other.ambient);
        if self.is_empty() || other.is_empty() {
            return Self::empty(n + m);
        }
        let embed = |v: &[Integer], first: bool| -> Vec<Integer> {
            let mut out = vec![Integer::zero(); n + m + 1];
            out[0] = v[0].clone();
            if first {
                out[1..=n].clone_from_slice(&v[1..]);
            } else {
                out[n + 1..].clone_from_slice(&v[1..]);
            }
            out
        };
        let mut gens = Vec::new();
        for p in &self.generators[..self.points] {
            for q in &other.generators[..other.points] {
                let mut v = Vec::with_capacity(n + m + 1);
                v.push(&p[0] * &q[0]);
                v.extend(p[1..].iter().map(|x| x * &q[0]));
                v.extend(q[1..].iter().map(|x| x * &p[0]));
                gens.push(primitive_int(&v));
            }
        }
        gens.extend(self.generators[self.points..].iter().map(|r| embed(r, true)));
        gens.extend(other.generators[other.points..].iter().map(|r| embed(r, false)));
        let mut lin: Vec<Vec<Integer>> = self.lineality.iter().map(|r| embed(r, true)).collect();
        lin.extend(other.lineality.iter().map(|r| embed(r, false)));
        let mut candidates: Vec<Vec<Integer>> = self.facets.iter().map(|r| embed(r, true)).collect();
        candidates.extend(other.facets.iter().map(|r| embed(r, false)));
        Self::finish(n + m, gens, lin, &candidates)
    }

    /// Image under the linear map `x ↦ M x` with `M` given by rows.
    pub fn linear_image(&self, rows: &[Vec<Integer>]) -> Polyhedron {
        let target = rows.len();
        let apply = |g: &Vec<Integer>| -> Vec<Integer> {
            let mut out = Vec::with_capacity(target + 1);
            out.push(g[0].clone());
            out.extend(rows.iter().map(|r| dot_int(r, &g[1..])));
            out
        };
        if self.is_empty() {
            return Self::empty(target);
        }
        let gens = self.generators.iter().map(apply).collect();
        let lin = self.lineality.iter().map(apply).filter(|v: &Vec<Integer>| v.iter().any(|x| !x.is_zero())).collect();
        Self::from_generators(target, gens, lin)
    }
}

/// Normal fan of a polytope: one cone per vertex, the closure of the linear
/// forms maximized at that vertex.
pub fn normal_fan(polytope: &Polyhedron) -> Result<Vec<Polyhedron>> {
    if polytope.is_empty() {
        return Err(Error::EmptyPolyhedron);
    }
    if !polytope.is_bounded() {
        return Err(Error::InvalidInput("normal fan needs a bounded polytope".into()));
    }
    let n = polytope.ambient;
    let verts = polytope.vertices();
    let mut cones = Vec::with_capacity(verts.len());
    for (i, v) in verts.iter().enumerate() {
        let mut rows = Vec::with_capacity(verts.len());
        for (j, u) in verts.iter().enumerate() {
            if i != j {
                let diff: Vec<Rational> = v.iter().zip(u).map(|(a, b)| a - b).collect();
                rows.push(with_leading_zero(&primitive(&diff)));
            }
        }
        cones.push(Polyhedron::from_homogeneous_h(n, &rows, &[]));
    }
    Ok(cones)
}

/// All `k`-dimensional faces of the given cells, deduplicated and sorted.
pub fn skeleton(cells: &[Polyhedron], k: usize) -> Vec<Polyhedron> {
    let mut out: BTreeSet<Polyhedron> = BTreeSet::new();
    for c in cells {
        out.extend(c.faces(k));
    }
    out.into_iter().collect()
}

pub fn h_to_v(ambient: usize, h: &HDescription) -> Result<VDescription> {
    let p = Polyhedron::from_h(ambient, h);
    if p.is_empty() {
        return Err(Error::EmptyPolyhedron);
    }
    Ok(p.v_description())
}

pub fn v_to_h(ambient: usize, v: &VDescription) -> Result<HDescription> {
    let p = Polyhedron::from_v(ambient, v);
    if p.is_empty() {
        return Err(Error::EmptyPolyhedron);
    }
    Ok(p.h_description())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int_vec, rat_vec};

    fn square() -> Polyhedron {
        Polyhedron::polytope(2, &[rat_vec(&[0, 0]), rat_vec(&[1, 0]), rat_vec(&[0, 1]), rat_vec(&[1, 1])])
    }

    #[test]
    fn orthant_h_to_v() {
        let h = HDescription {
            inequalities: vec![(rat_vec(&[1, 0]), Rational::zero()), (rat_vec(&[0, 1]), Rational::zero())],
            equations: vec![],
        };
        let v = h_to_v(2, &h).unwrap();
        assert_eq!(v.vertices, vec![rat_vec(&[0, 0])]);
        assert_eq!(v.rays, vec![int_vec(&[0, 1]), int_vec(&[1, 0])]);
    }

    #[test]
    fn square_has_four_facets() {
        let s = square();
        assert_eq!(s.dim(), 2);
        assert_eq!(s.homogeneous_facets().len(), 4);
        assert_eq!(s.faces(1).len(), 4);
        assert_eq!(s.faces(0).len(), 4);
    }

    #[test]
    fn infeasible_is_empty() {
        let h = HDescription {
            inequalities: vec![
                (rat_vec(&[1]), Rational::one()),
                (rat_vec(&[-1]), Rational::zero()),
            ],
            equations: vec![],
        };
        assert_eq!(h_to_v(1, &h), Err(Error::EmptyPolyhedron));
    }

    #[test]
    fn redundant_generators_dropped() {
        let c = Polyhedron::cone(2, &[int_vec(&[1, 0]), int_vec(&[0, 1]), int_vec(&[1, 1])], &[]);
        assert_eq!(c.rays(), vec![int_vec(&[0, 1]), int_vec(&[1, 0])]);
        let line = Polyhedron::cone(2, &[int_vec(&[1, 0]), int_vec(&[-1, 0])], &[]);
        assert_eq!(line.dim(), 1);
        assert_eq!(line.lineality(), vec![int_vec(&[1, 0])]);
        assert!(line.rays().is_empty());
    }

    #[test]
    fn segment_normal_fan() {
        let seg = Polyhedron::polytope(1, &[rat_vec(&[0]), rat_vec(&[1])]);
        let fan = normal_fan(&seg).unwrap();
        let mut rays: Vec<_> = fan.iter().flat_map(|c| c.rays()).collect();
        rays.sort();
        assert_eq!(rays, vec![int_vec(&[-1]), int_vec(&[1])]);
    }

    #[test]
    fn unbounded_faces_need_a_vertex() {
        let c = Polyhedron::cone(2, &[int_vec(&[1, 0]), int_vec(&[0, 1])], &[]);
        assert_eq!(c.homogeneous_facets().len(), 2);
        assert_eq!(c.faces(0).len(), 1);
        assert_eq!(c.faces(1).len(), 2);
    }

    #[test]
    fn interior_point() {
        let s = square();
        let p = s.relative_interior_point();
        assert_eq!(p, vec![Rational::new(1.into(), 2.into()); 2]);
        assert!(s.relative_interior_contains(&p));
    }

    #[test]
    fn intersection_and_product() {
        let a = Polyhedron::cone(2, &[int_vec(&[1, 0]), int_vec(&[0, 1])], &[]);
        let b = Polyhedron::cone(2, &[int_vec(&[1, 1]), int_vec(&[-1, 1])], &[]);
        let c = a.intersect(&b);
        assert_eq!(c.rays(), vec![int_vec(&[0, 1]), int_vec(&[1, 1])]);
        let p = square().cartesian_product(&square());
        assert_eq!(p.dim(), 4);
        assert_eq!(p.num_points(), 16);
        assert_eq!(p.homogeneous_facets().len(), 8);
    }
}
