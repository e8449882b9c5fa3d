//! Graph-free closure operators.
//!
//! A set `M` is compliant when `s in M` and `X(s, t) = t` imply `t in M`; the
//! cones of a compliant set are exactly the ideal it generates. Dually `N` is
//! revenant when `t in N` and `X(t, s) = t` imply `s in N`; the cones of a
//! revenant set, with everything below degree `D`, form an order ideal.

use std::collections::VecDeque;

use serde::Serialize;

use crate::division::{RelDivision, XTable};
use crate::error::{Error, Result};
use crate::oracle::{verify_ideal_equality, verify_order_ideal};
use crate::term::{Term, TermSet};

/// One closure step: `added` joined because `X(s, t) = vertex`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub added: Term,
    pub s: Term,
    pub t: Term,
    pub lcm: Term,
    pub vertex: Term,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureReport {
    pub seed: TermSet,
    pub closure: TermSet,
    pub witnesses: Vec<Witness>,
}

impl ClosureReport {
    /// Seed plus every witnessed term; equals `closure` for a well-formed report.
    pub fn replay(&self) -> TermSet {
        let mut out = self.seed.clone();
        out.extend(self.witnesses.iter().map(|w| w.added.clone()));
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Direction {
    Compliant,
    Revenant,
}

fn seed_indices(div: &RelDivision, seed: &TermSet) -> Result<Vec<usize>> {
    seed.iter()
        .map(|t| div.index_of(t).ok_or_else(|| Error::NotInSupport(t.to_string())))
        .collect()
}

#[allow(clippy::needless_range_loop)]
fn close(div: &RelDivision, x: &XTable, seed: &TermSet, dir: Direction) -> Result<ClosureReport> {
    let start = seed_indices(div, seed)?;
    let mut member = vec![false; div.len()];
    let mut queue = VecDeque::new();
    for i in start {
        member[i] = true;
        queue.push_back(i);
    }
    let mut witnesses = Vec::new();
    while let Some(a) = queue.pop_front() {
        for b in 0..div.len() {
            if member[b] {
                continue;
            }
            // compliant: a = s in M, b = t with X(s,t) = t
            // revenant:  a = t in N, b = s with X(t,s) = t
            let vertex = match dir {
                Direction::Compliant => b,
                Direction::Revenant => a,
            };
            if x.get(a, b) != vertex {
                continue;
            }
            member[b] = true;
            queue.push_back(b);
            let (s, t) = match dir {
                Direction::Compliant => (a, b),
                Direction::Revenant => (b, a),
            };
            let (s, t) = (div.term_at(s).clone(), div.term_at(t).clone());
            witnesses.push(Witness {
                added: div.term_at(b).clone(),
                lcm: s.lcm(&t)?,
                vertex: div.term_at(vertex).clone(),
                s,
                t,
            });
        }
    }
    let closure = (0..div.len()).filter(|&i| member[i]).map(|i| div.term_at(i).clone()).collect();
    Ok(ClosureReport { seed: seed.clone(), closure, witnesses })
}

/// Least compliant superset of `seed`.
pub fn compliant_closure(div: &RelDivision, seed: &TermSet) -> Result<ClosureReport> {
    close(div, &div.x_table()?, seed, Direction::Compliant)
}

/// Least revenant superset of `seed`.
pub fn revenant_closure(div: &RelDivision, seed: &TermSet) -> Result<ClosureReport> {
    close(div, &div.x_table()?, seed, Direction::Revenant)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealResult {
    pub generators: TermSet,
    pub certified: bool,
    pub report: ClosureReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EscalierResult {
    pub slice: TermSet,
    pub certified: bool,
    pub report: ClosureReport,
}

/// Generators whose cones partition the ideal they generate, checked by the
/// oracle up to degree `D + margin`.
pub fn ideal_from_seed(div: &RelDivision, seed: &TermSet, margin: u32) -> Result<IdealResult> {
    let report = compliant_closure(div, seed)?;
    let certified = verify_ideal_equality(div, &report.closure, margin)?.holds;
    Ok(IdealResult { generators: report.closure.clone(), certified, report })
}

/// Degree-`D` slice of an order ideal containing `seed`, checked by the oracle
/// up to degree `D + margin`.
pub fn escalier_from_seed(div: &RelDivision, seed: &TermSet, margin: u32) -> Result<EscalierResult> {
    let report = revenant_closure(div, seed)?;
    let certified = verify_order_ideal(div, &report.closure, margin)?.holds;
    Ok(EscalierResult { slice: report.closure.clone(), certified, report })
}

/// Whether `set` is closed under replacing a variable of a term by a larger one.
pub fn is_borel_fixed_slice(set: &TermSet, n: usize) -> Result<bool> {
    let mut degrees = set.iter().map(Term::degree);
    if let Some(d) = degrees.next() {
        if degrees.any(|e| e != d) {
            return Err(Error::MixedDegrees);
        }
    }
    for t in set {
        if t.n() != n {
            return Err(Error::DimensionMismatch { expected: n, found: t.n() });
        }
        for i in t.support().iter() {
            let lowered = t.div_var(i).expect("i divides t");
            if (i + 1..n).any(|j| !set.contains(&lowered.mul_var(j))) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
