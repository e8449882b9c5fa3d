//! Janet and Pommaret assignments, and recognition of Pommaret divisions on
//! slices.

use crate::division::RelDivision;
use crate::error::{Error, Result};
use crate::term::{check_permutation, enumerate_terms, Term, VarSet};

/// Pommaret division on `T_degree` with the variables ordered
/// `order[0] < order[1] < ... < order[n-1]`. The identity order is `[0, 1, .., n-1]`.
///
/// `M(t)` is every variable not larger than the smallest variable of `t`.
pub fn pommaret_on_slice(n: usize, degree: u32, order: &[usize]) -> Result<RelDivision> {
    if n == 0 {
        return Err(Error::NoAmbientVariables);
    }
    check_permutation(order, n)?;
    let entries = enumerate_terms(n, degree)
        .into_iter()
        .map(|t| {
            let m = pommaret_set(&t, order);
            (t, m)
        })
        .collect::<Vec<_>>();
    RelDivision::slice(n, degree, entries)
}

fn pommaret_set(t: &Term, order: &[usize]) -> VarSet {
    match order.iter().position(|&v| t.exponent(v) > 0) {
        Some(r) => VarSet::from_indices(order[..=r].iter().copied()),
        None => VarSet::full(order.len()),
    }
}

fn identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}

/// Pommaret assignment on an arbitrary finite support. Not necessarily a valid
/// division.
pub fn pommaret_general(support: &[Term], n: usize) -> Result<RelDivision> {
    let order = identity(n);
    RelDivision::general(n, support.iter().map(|t| (t.clone(), pommaret_set(t, &order))))
}

/// Janet assignment: `x_j` is multiplicative for `t` unless some other member
/// agrees with `t` on every variable above `x_j` and has a larger `x_j` exponent.
pub fn janet_general(support: &[Term], n: usize) -> Result<RelDivision> {
    for t in support {
        if t.n() != n {
            return Err(Error::DimensionMismatch { expected: n, found: t.n() });
        }
    }
    let entries = support.iter().map(|t| {
        let m = VarSet::from_indices((0..n).filter(|&j| {
            !support.iter().any(|u| {
                u.exponent(j) > t.exponent(j) && (j + 1..n).all(|k| u.exponent(k) == t.exponent(k))
            })
        }));
        (t.clone(), m)
    });
    RelDivision::general(n, entries.collect::<Vec<_>>())
}

/// Janet assignment on the full slice, tagged as a slice division.
pub fn janet_on_slice(n: usize, degree: u32) -> Result<RelDivision> {
    let general = janet_general(&enumerate_terms(n, degree), n)?;
    RelDivision::slice(n, degree, general.entries().map(|(t, m)| (t.clone(), m)).collect::<Vec<_>>())
}

/// If `div` is a Pommaret division for some ordering of the variables,
/// returns that ordering (smallest variable first).
///
/// The multiplicative sets must form a chain under inclusion; the ordering is
/// read off the pure powers, sorted by the size of their multiplicative sets,
/// and confirmed by rebuilding the Pommaret division.
pub fn detect_pommaret(div: &RelDivision) -> Result<Option<Vec<usize>>> {
    div.require_valid_slice()?;
    let n = div.n();
    let degree = div.degree().expect("slice kind");

    let mut sets: Vec<VarSet> = div.entries().map(|(_, m)| m).collect();
    sets.sort_by_key(|m| (m.len(), m.bits()));
    if sets.windows(2).any(|w| !w[0].is_subset(w[1])) {
        return Ok(None);
    }

    let mut order = identity(n);
    if degree > 0 {
        order.sort_by_key(|&i| {
            let p = Term::pure_power(i, degree, n);
            (div.multiplicative_set(&p).expect("pure power in slice").len(), i)
        });
    }
    let rebuilt = pommaret_on_slice(n, degree, &order)?;
    Ok((rebuilt == *div).then_some(order))
}
