//! Exact rational and integer linear algebra.

mod hnf;
mod lattice;
mod linalg;
mod matrix;

pub use hnf::{hnf, HnfResult};
pub use lattice::{kernel_lattice_basis, lattice_basis_of_span, lattice_index};
pub use linalg::{
    dot, dot_int, int_rank, kernel, primitive, primitive_int, project_onto, project_onto_complement, rank, rref,
    solve, to_rationals,
};
pub use matrix::IntegerMatrix;

pub use num_bigint::BigInt as Integer;
pub use num_rational::BigRational as Rational;

use num_traits::{One, Zero};

pub fn int(v: i64) -> Integer {
    Integer::from(v)
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(Integer::from(n), Integer::from(d))
}

pub fn rat_from_int(v: &Integer) -> Rational {
    Rational::from_integer(v.clone())
}

pub fn int_vec(v: &[i64]) -> Vec<Integer> {
    v.iter().map(|&x| Integer::from(x)).collect()
}

pub fn rat_vec(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from_integer(Integer::from(x))).collect()
}

/// Formats a rational as `p` or `p/q` in lowest terms.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: Integer = n.trim().parse().ok()?;
            let d: Integer = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}
