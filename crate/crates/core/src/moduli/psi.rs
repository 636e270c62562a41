//! Products of Psi classes on `M0,n`.
//!
//! The product `ψ_1^{k_1} ⋯ ψ_n^{k_n}` is the subfan of curves whose vertices
//! satisfy `val(V) = K(I_V) + 3`, with weight `∏ K(I_V)! / ∏ k_i!`. In a
//! Prüfer sequence each internal label `a` then occupies a set `J` of slots
//! with `|J| = 2 + Σ_{j ∈ J} k_j`, where slot `j ≤ n` belongs to leaf `j`.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use super::{curves_to_cycle, pruefer_to_curve, PrueferSequence, RationalCurve};
use crate::cycles::TropicalCycle;
use crate::error::{Error, Result};

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |a, i| a * i)
}

/// `∏_V K(I_V)! / ∏ k_i!` from the vertex leaves of `c`.
pub fn psi_weight(c: &RationalCurve, k: &[usize]) -> i64 {
    let num = c
        .vertex_leaves()
        .iter()
        .map(|ls| factorial(ls.iter().map(|&i| k[i - 1]).sum()))
        .fold(BigInt::one(), |a, b| a * b);
    let den = k.iter().map(|&x| factorial(x)).fold(BigInt::one(), |a, b| a * b);
    (num / den).to_i64().expect("psi weight fits in i64")
}

/// Curves with weights; `k[i]` is the exponent of `ψ_{i+1}`.
pub fn psi_product_curves(n: usize, k: &[usize]) -> Result<Vec<(RationalCurve, i64)>> {
    if k.len() != n {
        return Err(Error::InvalidInput(format!("expected {n} exponents, got {}", k.len())));
    }
    if !(3..=63).contains(&n) {
        return Err(Error::InvalidInput(format!("need 3 <= n <= 63, got {n}")));
    }
    let total: usize = k.iter().sum();
    if total > n - 3 {
        return Err(Error::DegreeTooLarge(total, n - 3));
    }
    // Sorted position p holds original leaf perm[p].
    let mut perm: Vec<usize> = (1..=n).collect();
    perm.sort_by_key(|&i| std::cmp::Reverse(k[i - 1]));
    let sorted: Vec<usize> = perm.iter().map(|&i| k[i - 1]).collect();
    let m = 2 * n - 4 - total;
    let slot_k: Vec<usize> = (0..m).map(|j| if j < n { sorted[j] } else { 0 }).collect();
    let mut sequences = Vec::new();
    let mut slots = vec![0usize; m];
    place(n, &slot_k, &mut slots, n + 1, &mut sequences);
    let mut out = Vec::with_capacity(sequences.len());
    for s in sequences {
        let c = pruefer_to_curve(&PrueferSequence::new(n, s)?)?.relabel(&perm)?;
        let w = psi_weight(&c, k);
        out.push((c, w));
    }
    out.sort();
    Ok(out)
}

/// The first empty slot takes the next label together with later empty slots
/// `J` satisfying `|J| = 2 + Σ_J k`.
fn place(n: usize, k: &[usize], slots: &mut [usize], label: usize, out: &mut Vec<Vec<usize>>) {
    let Some(first) = slots.iter().position(|&s| s == 0) else {
        out.push(slots.to_vec());
        return;
    };
    let free: Vec<usize> = (first + 1..slots.len()).filter(|&j| slots[j] == 0).collect();
    slots[first] = label;
    extend(n, k, slots, label, &free, 0, 1, k[first], out);
    slots[first] = 0;
}

#[allow(clippy::too_many_arguments)]
fn extend(
    n: usize,
    k: &[usize],
    slots: &mut [usize],
    label: usize,
    free: &[usize],
    from: usize,
    size: usize,
    weight: usize,
    out: &mut Vec<Vec<usize>>,
) {
    if size == 2 + weight {
        place(n, k, slots, label + 1, out);
    }
    let slack: usize = free[from.min(free.len())..].iter().map(|&j| k[j].saturating_sub(1)).sum();
    if size > 2 + weight + slack {
        return;
    }
    for (i, &j) in free.iter().enumerate().skip(from) {
        slots[j] = label;
        extend(n, k, slots, label, free, i + 1, size + 1, weight + k[j], out);
        slots[j] = 0;
    }
}

/// The product as a weighted subfan of `M0,n`.
pub fn psi_product(n: usize, k: &[usize]) -> Result<TropicalCycle> {
    curves_to_cycle(n, &psi_product_curves(n, k)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moduli::enumerate_m0n_cones;

    #[test]
    fn nine_leaf_point() {
        let r = psi_product_curves(9, &[3, 2, 0, 0, 0, 1, 0, 0, 0]).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].0.dim(), 0);
        assert_eq!(r[0].1, 60);
    }

    #[test]
    fn empty_product_is_m0n() {
        let r = psi_product_curves(6, &[0; 6]).unwrap();
        assert_eq!(r.len(), enumerate_m0n_cones(6).unwrap().len());
        assert!(r.iter().all(|(_, w)| *w == 1));
    }

    #[test]
    fn degree_too_large() {
        assert_eq!(psi_product_curves(5, &[1, 1, 1, 0, 0]).unwrap_err(), Error::DegreeTooLarge(3, 2));
    }
}
