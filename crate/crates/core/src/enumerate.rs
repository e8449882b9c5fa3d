//! Exhaustive enumeration of divisions on `T_D` by constraint propagation.
//!
//! A [`PartialAssignment`] tracks, per term, the variables forced into or out
//! of its multiplicative set, "not all of these" groups, and how many terms may
//! still receive `k` multiplicative variables. Assigning a set propagates the
//! pairwise disjointness criterion to every other term.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::binomial::sigma_expected;
use crate::division::{cones_overlap, RelDivision};
use crate::error::{Error, Result};
use crate::term::{all_permutations, enumerate_terms, var_names, Term, VarSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialAssignment {
    n: usize,
    degree: u32,
    terms: Vec<Term>,
    forced_in: Vec<VarSet>,
    forced_out: Vec<VarSet>,
    /// Forbidden supersets: `M(u)` may not contain any of these sets.
    groups: Vec<Vec<VarSet>>,
    assigned: Vec<Option<VarSet>>,
    /// `budget[k-1]` terms may still get exactly `k` multiplicative variables.
    budget: Vec<usize>,
}

/// Initial state: every variable multiplicative for its own pure power, and
/// the budget set to the forced profile.
pub fn seed_constraints(n: usize, degree: u32) -> Result<PartialAssignment> {
    if n == 0 {
        return Err(Error::NoAmbientVariables);
    }
    let terms = enumerate_terms(n, degree);
    let size = terms.len();
    let mut forced_in = vec![VarSet::EMPTY; size];
    if degree > 0 {
        for (i, t) in terms.iter().enumerate() {
            if t.is_pure_power() {
                forced_in[i] = t.support();
            }
        }
    }
    Ok(PartialAssignment {
        n,
        degree,
        terms,
        forced_in,
        forced_out: vec![VarSet::EMPTY; size],
        groups: vec![Vec::new(); size],
        assigned: vec![None; size],
        budget: sigma_expected(n, degree),
    })
}

impl PartialAssignment {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn index_of(&self, t: &Term) -> Result<usize> {
        self.terms.binary_search(t).map_err(|_| Error::NotInSupport(t.to_string()))
    }

    pub fn forced_in(&self, i: usize) -> VarSet {
        self.forced_in[i]
    }

    pub fn forced_out(&self, i: usize) -> VarSet {
        self.forced_out[i]
    }

    pub fn groups(&self, i: usize) -> &[VarSet] {
        &self.groups[i]
    }

    pub fn assigned(&self, i: usize) -> Option<VarSet> {
        self.assigned[i]
    }

    pub fn budget(&self) -> &[usize] {
        &self.budget
    }

    pub fn is_complete(&self) -> bool {
        self.assigned.iter().all(Option::is_some)
    }

    fn admits(&self, i: usize, m: VarSet) -> bool {
        !m.is_empty()
            && self.forced_in[i].is_subset(m)
            && m.intersection(self.forced_out[i]).is_empty()
            && !self.groups[i].iter().any(|g| g.is_subset(m))
            && self.budget[m.len() - 1] > 0
    }

    /// Multiplicative sets still open to term `i`, smallest first.
    pub fn candidates(&self, i: usize) -> Vec<VarSet> {
        if self.assigned[i].is_some() {
            return Vec::new();
        }
        VarSet::all_subsets(self.n).into_iter().filter(|&m| self.admits(i, m)).collect()
    }

    fn describe(&self, i: usize, m: VarSet) -> String {
        format!("M({}) = {{{}}}", self.terms[i], var_names(m, self.n).join(","))
    }

    /// Assigns `M(t) = m` and propagates its consequences to every other term.
    pub fn propagate(&self, t: &Term, m: VarSet) -> Result<PartialAssignment> {
        let i = self.index_of(t)?;
        let n = self.n;
        if !m.is_subset(VarSet::full(n)) {
            return Err(Error::VariableOutOfRange { index: m.iter().last().unwrap_or(n), n });
        }
        if self.assigned[i].is_some() {
            return Err(Error::Conflict(format!("{t} is already assigned")));
        }
        if m.is_empty() {
            return Err(Error::Conflict(format!("{t} needs at least one multiplicative variable")));
        }
        let what = self.describe(i, m);
        let missing = self.forced_in[i].difference(m);
        if !missing.is_empty() {
            return Err(Error::Conflict(format!(
                "{what} drops forced variable(s) {}",
                var_names(missing, n).join(",")
            )));
        }
        let clash = m.intersection(self.forced_out[i]);
        if !clash.is_empty() {
            return Err(Error::Conflict(format!(
                "{what} uses forbidden variable(s) {}",
                var_names(clash, n).join(",")
            )));
        }
        if let Some(g) = self.groups[i].iter().find(|g| g.is_subset(m)) {
            return Err(Error::Conflict(format!(
                "{what} contains all of {{{}}}, which may not occur together",
                var_names(*g, n).join(",")
            )));
        }
        if self.budget[m.len() - 1] == 0 {
            return Err(Error::Conflict(format!(
                "{what}: no term may take {} more multiplicative variable(s)",
                m.len()
            )));
        }

        let mut next = self.clone();
        next.assigned[i] = Some(m);
        next.budget[m.len() - 1] -= 1;
        for u in 0..self.terms.len() {
            if u == i {
                continue;
            }
            if let Some(mu) = next.assigned[u] {
                if cones_overlap(t, m, &self.terms[u], mu) {
                    return Err(Error::Conflict(format!(
                        "{what} makes the cones of {t} and {} overlap",
                        self.terms[u]
                    )));
                }
                continue;
            }
            let g = t.gcd_unchecked(&self.terms[u]);
            let own = self.terms[u].quotient(&g).expect("gcd divides").support();
            if !own.is_subset(m) {
                continue;
            }
            // the cones would meet unless some variable of t/g stays out of M(u)
            let f = t.quotient(&g).expect("gcd divides").support();
            if f.len() == 1 {
                next.forced_out[u] = next.forced_out[u].union(f);
                if !next.forced_in[u].intersection(f).is_empty() {
                    return Err(Error::Conflict(format!(
                        "{what} forbids a forced variable of {}",
                        self.terms[u]
                    )));
                }
                let out = next.forced_out[u];
                next.groups[u].retain(|grp| grp.intersection(out).is_empty());
            } else if f.intersection(next.forced_out[u]).is_empty()
                && !next.groups[u].iter().any(|grp| grp.is_subset(f))
            {
                next.groups[u].retain(|grp| !f.is_subset(*grp));
                next.groups[u].push(f);
            }
        }
        Ok(next)
    }

    /// The finished division. Every term must be assigned.
    pub fn to_division(&self) -> Result<RelDivision> {
        if let Some(i) = self.assigned.iter().position(Option::is_none) {
            return Err(Error::Conflict(format!("{} is not assigned", self.terms[i])));
        }
        RelDivision::slice(
            self.n,
            self.degree,
            self.terms.iter().cloned().zip(self.assigned.iter().map(|m| m.unwrap())).collect::<Vec<_>>(),
        )
    }

    /// Term to branch on: the peak first, then fewest candidates (degree-lex on ties).
    fn branch_term(&self) -> Option<(usize, Vec<VarSet>)> {
        let mut best: Option<(usize, Vec<VarSet>)> = None;
        for i in 0..self.terms.len() {
            if self.assigned[i].is_some() {
                continue;
            }
            let c = self.candidates(i);
            if best.as_ref().is_none_or(|(_, b)| c.len() < b.len()) {
                let empty = c.is_empty();
                best = Some((i, c));
                if empty {
                    break;
                }
            }
        }
        best
    }

    /// Children for the peak branch: each term that can still take every variable.
    fn peak_children(&self) -> Vec<PartialAssignment> {
        let full = VarSet::full(self.n);
        (0..self.terms.len())
            .filter(|&i| self.assigned[i].is_none() && self.admits(i, full))
            .filter_map(|i| self.propagate(&self.terms[i], full).ok())
            .collect()
    }

    fn peak_open(&self) -> bool {
        self.budget[self.n - 1] > 0
    }
}

fn search(pa: PartialAssignment, out: &mut Vec<RelDivision>) {
    if pa.is_complete() {
        let div = pa.to_division().expect("complete assignment");
        debug_assert!(div.validate().valid, "{div:?}");
        out.push(div);
        return;
    }
    if pa.peak_open() {
        for child in pa.peak_children() {
            search(child, out);
        }
        return;
    }
    let Some((i, candidates)) = pa.branch_term() else { return };
    let t = pa.terms[i].clone();
    for m in candidates {
        if let Ok(child) = pa.propagate(&t, m) {
            search(child, out);
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct EnumerateOptions {
    pub up_to_symmetry: bool,
    /// Explore the peak branches on the rayon pool; output order is unchanged.
    pub parallel: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnumerationSummary {
    pub count: usize,
    /// Orbit size of each emitted division, in emission order (all ones when
    /// symmetry reduction is off).
    pub orbit_sizes: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    pub divisions: Vec<RelDivision>,
    pub summary: EnumerationSummary,
}

/// Every valid division on `T_degree`, each exactly once, in a deterministic order.
pub fn all_divisions(n: usize, degree: u32, parallel: bool) -> Result<Vec<RelDivision>> {
    let root = seed_constraints(n, degree)?;
    let branches = if root.peak_open() { root.peak_children() } else { vec![root] };
    let chunks: Vec<Vec<RelDivision>> = if parallel {
        branches
            .into_par_iter()
            .map(|b| {
                let mut out = Vec::new();
                search(b, &mut out);
                out
            })
            .collect()
    } else {
        branches
            .into_iter()
            .map(|b| {
                let mut out = Vec::new();
                search(b, &mut out);
                out
            })
            .collect()
    };
    Ok(chunks.into_iter().flatten().collect())
}

pub fn enumerate_divisions(n: usize, degree: u32, opts: EnumerateOptions) -> Result<Enumeration> {
    let all = all_divisions(n, degree, opts.parallel)?;
    if !opts.up_to_symmetry {
        let count = all.len();
        return Ok(Enumeration {
            divisions: all,
            summary: EnumerationSummary { count, orbit_sizes: vec![1; count] },
        });
    }
    let sym = Symmetry::new(n, degree);
    let mut seen: HashMap<Vec<u8>, usize> = HashMap::new();
    let mut divisions = Vec::new();
    let mut orbit_sizes = Vec::new();
    for div in &all {
        let (form, perm) = sym.canonical(div);
        match seen.get(&form) {
            Some(&slot) => orbit_sizes[slot] += 1,
            None => {
                seen.insert(form, divisions.len());
                divisions.push(div.permute(&perm)?);
                orbit_sizes.push(1);
            }
        }
    }
    Ok(Enumeration {
        summary: EnumerationSummary { count: divisions.len(), orbit_sizes },
        divisions,
    })
}

/// Action of all variable permutations on `T_D`, precomputed as index maps.
struct Symmetry {
    perms: Vec<Vec<usize>>,
    /// `image[p][i]` is the slice index of `terms[i]` under `perms[p]`.
    image: Vec<Vec<usize>>,
}

impl Symmetry {
    fn new(n: usize, degree: u32) -> Self {
        let terms = enumerate_terms(n, degree);
        let perms = all_permutations(n);
        let image = perms
            .iter()
            .map(|p| {
                terms
                    .iter()
                    .map(|t| terms.binary_search(&t.permute(p)).expect("slice is symmetric"))
                    .collect()
            })
            .collect();
        Symmetry { perms, image }
    }

    fn encode(&self, div: &RelDivision, p: usize) -> Vec<u8> {
        let perm = &self.perms[p];
        let mut mult = vec![VarSet::EMPTY; div.len()];
        for (i, (_, m)) in div.entries().enumerate() {
            mult[self.image[p][i]] = m.permute(perm);
        }
        // the support is the whole slice, so the M-sets in order determine the division
        let mut bytes = Vec::with_capacity(div.len() * 3);
        for m in mult {
            bytes.extend(m.iter().map(|v| v as u8));
            bytes.push(0xFF);
        }
        bytes
    }

    /// Minimal encoding over the orbit and the first permutation reaching it.
    fn canonical(&self, div: &RelDivision) -> (Vec<u8>, Vec<usize>) {
        let (form, p) = (0..self.perms.len())
            .map(|p| (self.encode(div, p), p))
            .min()
            .expect("at least the identity");
        (form, self.perms[p].clone())
    }

    fn orbit_size(&self, div: &RelDivision) -> usize {
        let own = self.encode(div, 0);
        let stabilizer = (0..self.perms.len()).filter(|&p| self.encode(div, p) == own).count();
        self.perms.len() / stabilizer
    }
}

/// Byte string identifying the orbit of a slice division under variable
/// permutations.
pub fn canonical_form(div: &RelDivision) -> Result<Vec<u8>> {
    let degree = div.degree().ok_or(Error::NotSliceKind)?;
    Ok(Symmetry::new(div.n(), degree).canonical(div).0)
}

/// Number of distinct divisions in the orbit of `div`.
pub fn orbit_size(div: &RelDivision) -> Result<usize> {
    let degree = div.degree().ok_or(Error::NotSliceKind)?;
    Ok(Symmetry::new(div.n(), degree).orbit_size(div))
}
