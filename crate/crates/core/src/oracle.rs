//! Bounded brute-force verifiers.
//!
//! Everything here scans explicit terms degree by degree and uses its own cone
//! test, so it shares no logic with the exact validator or the closure code it
//! is meant to check.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::division::{RelDivision, ValidationReport, Violation};
use crate::error::{Error, Result};
use crate::term::{terms_in_degree_range, Term, TermSet, VarSet};

pub const DEFAULT_MARGIN: u32 = 3;

/// Outcome of a bounded check, with the first counterexample found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict<C> {
    pub holds: bool,
    pub counterexample: Option<C>,
}

impl<C> Verdict<C> {
    fn from_counterexample(c: Option<C>) -> Self {
        Verdict { holds: c.is_none(), counterexample: c }
    }
}

fn in_cone(vertex: &Term, mult: VarSet, w: &Term) -> bool {
    for i in 0..w.n() {
        let (a, b) = (vertex.exponent(i), w.exponent(i));
        if b < a || (b > a && !mult.contains(i)) {
            return false;
        }
    }
    true
}

fn cones_containing<'a>(div: &'a RelDivision, w: &Term) -> impl Iterator<Item = &'a Term> + 'a {
    let w = w.clone();
    div.entries().filter(move |(v, m)| in_cone(v, *m, &w)).map(|(v, _)| v)
}

fn in_union(div: &RelDivision, members: &TermSet, w: &Term) -> Result<bool> {
    for m in members {
        if in_cone(m, div.multiplicative_set(m)?, w) {
            return Ok(true);
        }
    }
    Ok(false)
}

fn lowest_degree(div: &RelDivision) -> u32 {
    div.degree().unwrap_or_else(|| div.support().iter().map(Term::degree).min().unwrap_or(0))
}

fn check_members(div: &RelDivision, members: &TermSet) -> Result<()> {
    match members.iter().find(|m| div.index_of(m).is_none()) {
        Some(m) => Err(Error::NotInSupport(m.to_string())),
        None => Ok(()),
    }
}

/// Checks that every term in the scanned range lies in exactly one cone.
///
/// Slice divisions are scanned on degrees `D..=D+k`; general supports on every
/// multiple of the support up to the largest support degree plus `k`.
pub fn verify_division_covering(div: &RelDivision, k: u32) -> ValidationReport {
    let n = div.n();
    let (lo, hi) = match div.degree() {
        Some(d) => (d, d + k),
        None => {
            let degrees = div.support().iter().map(Term::degree);
            (degrees.clone().min().unwrap_or(0), degrees.max().unwrap_or(0) + k)
        }
    };
    let general = div.degree().is_none();
    let mut violations = Vec::new();
    for w in terms_in_degree_range(n, lo, hi) {
        if general && !div.support().iter().any(|u| u.divides(&w).unwrap_or(false)) {
            continue;
        }
        let mut found = cones_containing(div, &w);
        match (found.next(), found.next()) {
            (None, _) => violations.push(Violation::Uncovered { term: w }),
            (Some(_), None) => {}
            (Some(u), Some(v)) => violations.push(Violation::DoubleCovered {
                term: w.clone(),
                u: u.clone(),
                v: v.clone(),
            }),
        }
    }
    ValidationReport::new(violations, false)
}

/// Checks that the ideal generated by `members` equals the union of their
/// cones on degrees `D..=D+k`.
pub fn verify_ideal_equality(div: &RelDivision, members: &TermSet, k: u32) -> Result<Verdict<Term>> {
    check_members(div, members)?;
    let lo = lowest_degree(div);
    for w in terms_in_degree_range(div.n(), lo, lo + k) {
        let in_ideal = members.iter().any(|m| m.divides(&w).unwrap_or(false));
        if in_ideal != in_union(div, members, &w)? {
            return Ok(Verdict::from_counterexample(Some(w)));
        }
    }
    Ok(Verdict::from_counterexample(None))
}

/// Divisors of `w` with degree at least `lo`, by descending degree and then
/// degree-lex order.
fn divisors_from(w: &Term, lo: u32) -> Vec<Term> {
    let mut out = vec![Vec::new()];
    for &e in w.exponents() {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u32>| {
                (0..=e).map(move |a| {
                    let mut p = prefix.clone();
                    p.push(a);
                    p
                })
            })
            .collect();
    }
    let mut divisors: Vec<Term> =
        out.into_iter().map(Term::new).filter(|d| d.degree() >= lo).collect();
    divisors.sort_by(|a, b| b.degree().cmp(&a.degree()).then_with(|| a.cmp(b)));
    divisors
}

/// Checks that the union of the cones of `members` (together with everything
/// below degree `D`) is closed under division on degrees `D..=D+k`.
/// A counterexample is a pair `(w, divisor)`.
pub fn verify_order_ideal(div: &RelDivision, members: &TermSet, k: u32) -> Result<Verdict<(Term, Term)>> {
    check_members(div, members)?;
    let lo = lowest_degree(div);
    for w in terms_in_degree_range(div.n(), lo, lo + k) {
        if !in_union(div, members, &w)? {
            continue;
        }
        for d in divisors_from(&w, lo) {
            if !in_union(div, members, &d)? {
                return Ok(Verdict::from_counterexample(Some((w, d))));
            }
        }
    }
    Ok(Verdict::from_counterexample(None))
}

/// Closure of `seed` under `t in M => X(s, t) in M` for every `s` in the support.
pub fn brute_compliant(div: &RelDivision, seed: &TermSet) -> Result<TermSet> {
    check_members(div, seed)?;
    let mut closed: BTreeSet<Term> = seed.clone();
    loop {
        let mut added = Vec::new();
        for t in &closed {
            for s in div.support() {
                let l = s.lcm(t)?;
                let x = cones_containing(div, &l)
                    .next()
                    .ok_or_else(|| Error::NoInvolutiveDivisor(l.to_string()))?;
                if !closed.contains(x) {
                    added.push(x.clone());
                }
            }
        }
        if added.is_empty() {
            return Ok(closed);
        }
        closed.extend(added);
    }
}
