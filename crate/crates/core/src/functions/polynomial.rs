use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::arith::{dot, primitive, to_rationals, Integer, Rational};
use crate::cycles::PolyhedralComplex;
use crate::error::{Error, Result};
use crate::polyhedra::Polyhedron;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Max,
    Min,
}

/// `max` or `min` of affine terms `⟨v_i, x⟩ + α_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalPolynomial {
    mode: Mode,
    nvars: usize,
    terms: Vec<(Vec<Integer>, Rational)>,
}

impl TropicalPolynomial {
    /// Terms with equal exponents keep the dominating coefficient.
    pub fn new(mode: Mode, nvars: usize, terms: Vec<(Vec<Integer>, Rational)>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidInput("polynomial needs at least one term".into()));
        }
        let mut merged: BTreeMap<Vec<Integer>, Rational> = BTreeMap::new();
        for (v, a) in terms {
            if v.len() != nvars {
                return Err(Error::InvalidInput(format!("exponent of length {} in {nvars} variables", v.len())));
            }
            match merged.get_mut(&v) {
                Some(b) => {
                    let better = match mode {
                        Mode::Max => a > *b,
                        Mode::Min => a < *b,
                    };
                    if better {
                        *b = a;
                    }
                }
                None => {
                    merged.insert(v, a);
                }
            }
        }
        Ok(TropicalPolynomial { mode, nvars, terms: merged.into_iter().collect() })
    }

    pub fn from_i64(mode: Mode, terms: &[(Vec<i64>, i64)]) -> Result<Self> {
        let nvars = terms.first().map_or(0, |t| t.0.len());
        let terms = terms
            .iter()
            .map(|(v, a)| (v.iter().map(|&x| Integer::from(x)).collect(), Rational::from_integer((*a).into())))
            .collect();
        Self::new(mode, nvars, terms)
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn num_vars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Vec<Integer>, Rational)] {
        &self.terms
    }

    /// Same polynomial read in `n ≥ num_vars` variables.
    pub fn with_vars(&self, n: usize) -> Result<Self> {
        if n < self.nvars {
            return Err(Error::AmbientMismatch(n, self.nvars));
        }
        let terms = self
            .terms
            .iter()
            .map(|(v, a)| {
                let mut v = v.clone();
                v.resize(n, Integer::zero());
                (v, a.clone())
            })
            .collect();
        Ok(TropicalPolynomial { mode: self.mode, nvars: n, terms })
    }

    pub fn term_value(&self, i: usize, x: &[Rational]) -> Rational {
        let (v, a) = &self.terms[i];
        dot(&to_rationals(v), x) + a
    }

    pub fn evaluate(&self, x: &[Rational]) -> Rational {
        let vals = (0..self.terms.len()).map(|i| self.term_value(i, x));
        match self.mode {
            Mode::Max => vals.max(),
            Mode::Min => vals.min(),
        }
        .expect("nonempty")
    }

    /// Region where term `i` is optimal, as homogeneous inequality rows.
    fn region_rows(&self, i: usize) -> Vec<Vec<Integer>> {
        let (vi, ai) = &self.terms[i];
        let sign = match self.mode {
            Mode::Max => Rational::one(),
            Mode::Min => -Rational::one(),
        };
        self.terms
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, (vj, aj))| {
                let mut row = vec![&sign * (ai - aj)];
                row.extend(vi.iter().zip(vj).map(|(a, b)| &sign * Rational::from_integer(a - b)));
                primitive(&row)
            })
            .collect()
    }

    /// Newton polytope and the complex of domains of linearity.
    pub fn linearity_complex(&self) -> NewtonData {
        let points: Vec<Vec<Rational>> = self
            .terms
            .iter()
            .map(|(v, a)| {
                let mut p = to_rationals(v);
                p.push(a.clone());
                p
            })
            .collect();
        let polytope = Polyhedron::polytope(self.nvars + 1, &points);
        let n = self.nvars as isize;
        let mut cells = Vec::new();
        let mut term_of_cell = Vec::new();
        for i in 0..self.terms.len() {
            let c = Polyhedron::from_homogeneous_h(self.nvars, &self.region_rows(i), &[]);
            if c.dim() == n {
                cells.push(c);
                term_of_cell.push(i);
            }
        }
        let complex = PolyhedralComplex::new(self.nvars, n, cells).expect("cells are full-dimensional");
        NewtonData { polytope, complex, term_of_cell }
    }
}

/// Newton polytope `conv{(v_i, α_i)}` with the induced complete complex.
#[derive(Clone, Debug)]
pub struct NewtonData {
    pub polytope: Polyhedron,
    pub complex: PolyhedralComplex,
    /// Optimal term on each maximal cell.
    pub term_of_cell: Vec<usize>,
}

impl fmt::Display for TropicalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = |i: usize| -> String {
            if self.nvars <= 3 {
                ["x", "y", "z"][i].to_string()
            } else {
                format!("x{}", i + 1)
            }
        };
        let mode = match self.mode {
            Mode::Max => "max",
            Mode::Min => "min",
        };
        write!(f, "{mode}(")?;
        for (k, (v, a)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            let mut s = String::new();
            for (i, c) in v.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if c.is_negative() {
                    s.push('-');
                } else if !s.is_empty() {
                    s.push('+');
                }
                if c.abs() != Integer::one() {
                    s.push_str(&c.abs().to_string());
                }
                s.push_str(&names(i));
            }
            if !a.is_zero() || s.is_empty() {
                if !s.is_empty() && !a.is_negative() {
                    s.push('+');
                }
                s.push_str(&crate::arith::format_rational(a));
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, message: &str) -> Result<T> {
        Err(Error::Parse { position: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(&format!("expected '{}'", c as char))
        }
    }

    fn digits(&mut self) -> Option<Integer> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().unwrap())
    }

    /// Variable index, if a variable starts here.
    fn variable(&mut self) -> Result<Option<usize>> {
        self.skip_ws();
        let Some(&c) = self.s.get(self.pos) else { return Ok(None) };
        let base = match c {
            b'x' => 0,
            b'y' => 1,
            b'z' => 2,
            _ => return Ok(None),
        };
        self.pos += 1;
        if base == 0 {
            if let Some(k) = self.digits() {
                let k: usize = match usize::try_from(&k) {
                    Ok(k) if k >= 1 => k,
                    _ => return self.err("variable index must be at least 1"),
                };
                return Ok(Some(k - 1));
            }
        }
        Ok(Some(base))
    }

    /// One affine term as a sparse exponent map and a constant.
    fn term(&mut self) -> Result<(BTreeMap<usize, Integer>, Rational)> {
        let mut exps: BTreeMap<usize, Integer> = BTreeMap::new();
        let mut constant = Rational::zero();
        let mut first = true;
        loop {
            let neg = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            first = false;
            self.skip_ws();
            let num = self.digits();
            let sign = if neg { -Integer::one() } else { Integer::one() };
            if self.peek() == Some(b'/') {
                let Some(p) = num else { return self.err("expected numerator") };
                self.pos += 1;
                self.skip_ws();
                let Some(q) = self.digits() else { return self.err("expected denominator") };
                if q.is_zero() {
                    return self.err("zero denominator");
                }
                constant += Rational::new(sign * p, q);
                continue;
            }
            let had_star = num.is_some() && self.peek() == Some(b'*');
            if had_star {
                self.pos += 1;
            }
            match self.variable()? {
                Some(i) => {
                    let c = sign * num.unwrap_or_else(Integer::one);
                    *exps.entry(i).or_insert_with(Integer::zero) += c;
                }
                None if had_star => return self.err("expected variable after '*'"),
                None => match num {
                    Some(p) => constant += Rational::from_integer(sign * p),
                    None => return self.err("expected number or variable"),
                },
            }
        }
        Ok((exps, constant))
    }
}

/// Parses `max(...)` or `min(...)`; the number of variables is the largest index used.
pub fn parse_polynomial(text: &str) -> Result<TropicalPolynomial> {
    parse_impl(text, None)
}

/// Parses in exactly `n` variables.
pub fn parse_polynomial_in(text: &str, n: usize) -> Result<TropicalPolynomial> {
    parse_impl(text, Some(n))
}

fn parse_impl(text: &str, n: Option<usize>) -> Result<TropicalPolynomial> {
    let mut p = Parser { s: text.as_bytes(), pos: 0 };
    p.skip_ws();
    let mode = if text[p.pos..].starts_with("max") {
        Mode::Max
    } else if text[p.pos..].starts_with("min") {
        Mode::Min
    } else {
        return p.err("expected 'max' or 'min'");
    };
    p.pos += 3;
    p.expect(b'(')?;
    let mut raw = Vec::new();
    loop {
        raw.push(p.term()?);
        match p.peek() {
            Some(b',') => p.pos += 1,
            Some(b')') => {
                p.pos += 1;
                break;
            }
            _ => return p.err("expected ',' or ')'"),
        }
    }
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    let used = raw.iter().filter_map(|(e, _)| e.keys().next_back()).max().map_or(0, |m| m + 1);
    let nvars = match n {
        Some(n) if n < used => {
            return Err(Error::Parse { position: 0, message: format!("variable index {used} exceeds {n}") })
        }
        Some(n) => n,
        None => used,
    };
    let terms = raw
        .into_iter()
        .map(|(e, a)| {
            let mut v = vec![Integer::zero(); nvars];
            for (i, c) in e {
                v[i] = c;
            }
            (v, a)
        })
        .collect();
    TropicalPolynomial::new(mode, nvars, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int_vec, rat, rat_vec};

    #[test]
    fn parses_session_string() {
        let p = parse_polynomial("max(1,x,y,z,-x,-y,-z)").unwrap();
        assert_eq!(p.terms().len(), 7);
        assert_eq!(p.num_vars(), 3);
        assert_eq!(p.mode(), Mode::Max);
    }

    #[test]
    fn parses_indexed_min() {
        let p = parse_polynomial("min(2x1+1/2, x2)").unwrap();
        assert_eq!(p.mode(), Mode::Min);
        assert_eq!(p.terms().len(), 2);
        assert!(p.terms().contains(&(int_vec(&[2, 0]), rat(1, 2))));
    }

    #[test]
    fn parses_affine_terms() {
        let p = parse_polynomial("max(3x+4,x-y-z,y+z+3)").unwrap();
        assert!(p.terms().contains(&(int_vec(&[3, 0, 0]), rat(4, 1))));
        assert!(p.terms().contains(&(int_vec(&[1, -1, -1]), rat(0, 1))));
        assert_eq!(p.evaluate(&rat_vec(&[0, 0, 0])), rat(4, 1));
    }

    #[test]
    fn duplicate_exponents_merge() {
        let p = parse_polynomial("max(x+1, x+3, 2*y)").unwrap();
        assert_eq!(p.terms().len(), 2);
        assert!(p.terms().contains(&(int_vec(&[1, 0]), rat(3, 1))));
        let q = parse_polynomial("min(x+1, x+3)").unwrap();
        assert_eq!(q.terms(), &[(int_vec(&[1]), rat(1, 1))]);
    }

    #[test]
    fn parse_errors_have_positions() {
        match parse_polynomial("max(x,,y)") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 6),
            other => panic!("{other:?}"),
        }
        assert!(parse_polynomial("mix(x)").is_err());
        assert!(parse_polynomial("max(x").is_err());
        assert!(parse_polynomial("max(1/2x)").is_err());
        assert!(parse_polynomial("max(x0)").is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["max(3x+4,x-y-z,y+z+3)", "min(2x1+1/2,x2)", "max(0,x,y)"] {
            let p = parse_polynomial(s).unwrap();
            assert_eq!(parse_polynomial(&p.to_string()).unwrap(), p);
        }
    }

    #[test]
    fn linearity_complex_of_line() {
        let p = parse_polynomial("max(0,x,y)").unwrap();
        let nd = p.linearity_complex();
        assert_eq!(nd.complex.cells().len(), 3);
        assert_eq!(nd.polytope.dim(), 2);
    }

    #[test]
    fn hidden_terms_are_dropped() {
        // x is optimal only at the origin
        let p = parse_polynomial("max(0, x, 2x)").unwrap();
        let nd = p.linearity_complex();
        assert_eq!(nd.complex.cells().len(), 2);
    }
}
