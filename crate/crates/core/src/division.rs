//! Relative involutive divisions on a finite set of terms.
//!
//! A division assigns to each `u` of a finite support `U` a set `M(u)` of
//! multiplicative variables. The cone of `u` is the set of multiples `u*w`
//! where `w` only involves variables of `M(u)`. The assignment is a relative
//! involutive division when the cones are pairwise disjoint and cover every
//! multiple of `U`.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::binomial::{sigma_expected, slice_size};
use crate::error::{Error, Result};
use crate::term::{check_permutation, var_name, Term, VarSet, MAX_VARS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DivisionKind {
    /// The support is exactly `T_D`.
    Slice { degree: u32 },
    /// An arbitrary finite support.
    General,
}

#[derive(Clone, PartialEq, Eq)]
pub struct RelDivision {
    n: usize,
    kind: DivisionKind,
    support: Vec<Term>,
    mult: Vec<VarSet>,
    index: HashMap<Term, usize>,
}

/// `w` lies in the cone of `vertex` with multiplicative set `mult`.
pub(crate) fn in_cone(vertex: &Term, mult: VarSet, w: &Term) -> bool {
    vertex
        .exponents()
        .iter()
        .zip(w.exponents())
        .enumerate()
        .all(|(i, (&v, &e))| e == v || (e > v && mult.contains(i)))
}

/// Whether the cones of `u` and `v` intersect, decided on `lcm(u, v)`.
///
/// The cones meet iff every variable of `u / gcd` is multiplicative for `v`
/// and every variable of `v / gcd` is multiplicative for `u`.
pub fn cones_overlap(u: &Term, mu: VarSet, v: &Term, mv: VarSet) -> bool {
    let g = u.gcd_unchecked(v);
    let u_part = u.quotient(&g).expect("gcd divides").support();
    let v_part = v.quotient(&g).expect("gcd divides").support();
    u_part.is_subset(mv) && v_part.is_subset(mu)
}

impl RelDivision {
    pub fn new<I>(n: usize, entries: I, kind: DivisionKind) -> Result<Self>
    where
        I: IntoIterator<Item = (Term, VarSet)>,
    {
        if n == 0 {
            return Err(Error::NoAmbientVariables);
        }
        if n > MAX_VARS {
            return Err(Error::TooManyVariables(n));
        }
        let mut pairs: Vec<(Term, VarSet)> = entries.into_iter().collect();
        for (t, m) in &pairs {
            if t.n() != n {
                return Err(Error::DimensionMismatch { expected: n, found: t.n() });
            }
            if !m.is_subset(VarSet::full(n)) {
                let index = m.iter().find(|&i| i >= n).unwrap_or(n);
                return Err(Error::VariableOutOfRange { index, n });
            }
        }
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        if let Some(w) = pairs.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::DuplicateTerm(w[0].0.to_string()));
        }
        if let DivisionKind::Slice { degree } = kind {
            if let Some((t, _)) = pairs.iter().find(|(t, _)| t.degree() != degree) {
                return Err(Error::NotFullSlice {
                    degree,
                    reason: format!("{t} has degree {}", t.degree()),
                });
            }
            let expected = slice_size(n, degree);
            if pairs.len() != expected {
                return Err(Error::NotFullSlice {
                    degree,
                    reason: format!("{} terms instead of {expected}", pairs.len()),
                });
            }
        }
        let (support, mult): (Vec<Term>, Vec<VarSet>) = pairs.into_iter().unzip();
        let index = support.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        Ok(RelDivision { n, kind, support, mult, index })
    }

    /// A division on the full slice `T_degree`.
    pub fn slice<I>(n: usize, degree: u32, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Term, VarSet)>,
    {
        Self::new(n, entries, DivisionKind::Slice { degree })
    }

    pub fn general<I>(n: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Term, VarSet)>,
    {
        Self::new(n, entries, DivisionKind::General)
    }

    /// Builds a division from textual rows such as `("x^2", "x,y")`.
    /// `degree = None` gives a general-kind division.
    pub fn from_rows(n: usize, degree: Option<u32>, rows: &[(&str, &str)]) -> Result<Self> {
        let entries = rows
            .iter()
            .map(|(t, m)| Ok((Term::parse(t, n)?, VarSet::parse(m, n)?)))
            .collect::<Result<Vec<_>>>()?;
        match degree {
            Some(d) => Self::slice(n, d, entries),
            None => Self::general(n, entries),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> DivisionKind {
        self.kind
    }

    pub fn degree(&self) -> Option<u32> {
        match self.kind {
            DivisionKind::Slice { degree } => Some(degree),
            DivisionKind::General => None,
        }
    }

    /// The support in degree-lex order.
    pub fn support(&self) -> &[Term] {
        &self.support
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn index_of(&self, t: &Term) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn term_at(&self, i: usize) -> &Term {
        &self.support[i]
    }

    pub fn mult_at(&self, i: usize) -> VarSet {
        self.mult[i]
    }

    /// `(term, M(term))` pairs in degree-lex order.
    pub fn entries(&self) -> impl Iterator<Item = (&Term, VarSet)> + '_ {
        self.support.iter().zip(self.mult.iter().copied())
    }

    fn lookup(&self, t: &Term) -> Result<usize> {
        self.index_of(t).ok_or_else(|| Error::NotInSupport(t.to_string()))
    }

    /// `M(t, U)`.
    pub fn multiplicative_set(&self, t: &Term) -> Result<VarSet> {
        Ok(self.mult[self.lookup(t)?])
    }

    /// `NM(t, U)`, the complement of [`Self::multiplicative_set`].
    pub fn non_multiplicative_set(&self, t: &Term) -> Result<VarSet> {
        Ok(self.multiplicative_set(t)?.complement(self.n))
    }

    pub fn cone_contains(&self, vertex: &Term, w: &Term) -> Result<bool> {
        let i = self.lookup(vertex)?;
        if w.n() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: w.n() });
        }
        Ok(in_cone(vertex, self.mult[i], w))
    }

    /// Index of the first vertex (degree-lex) whose cone contains `w`.
    pub fn divisor_index(&self, w: &Term) -> Option<usize> {
        if w.n() != self.n {
            return None;
        }
        (0..self.support.len()).find(|&i| in_cone(&self.support[i], self.mult[i], w))
    }

    /// The vertex whose cone contains `w`, unique on a valid division.
    pub fn involutive_divisor(&self, w: &Term) -> Option<&Term> {
        self.divisor_index(w).map(|i| &self.support[i])
    }

    /// `X(s, t)`: the vertex of the cone holding `lcm(s, t)`.
    pub fn x_of(&self, s: &Term, t: &Term) -> Result<Term> {
        self.lookup(s)?;
        self.lookup(t)?;
        let l = s.lcm_unchecked(t);
        self.involutive_divisor(&l)
            .cloned()
            .ok_or_else(|| Error::NoInvolutiveDivisor(l.to_string()))
    }

    /// Counts `a_k = #{u : |M(u)| = k}` for `k = 1..=n`.
    pub fn sigma_profile(&self) -> Vec<usize> {
        let mut profile = vec![0; self.n];
        for m in &self.mult {
            if !m.is_empty() {
                profile[m.len() - 1] += 1;
            }
        }
        profile
    }

    /// Exact validation: pairwise disjointness of cones and, for slices, the
    /// forced profile, pure powers and a unique peak.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for i in 0..self.support.len() {
            for j in i + 1..self.support.len() {
                let (u, v) = (&self.support[i], &self.support[j]);
                if cones_overlap(u, self.mult[i], v, self.mult[j]) {
                    violations.push(Violation::Overlap {
                        u: u.clone(),
                        v: v.clone(),
                        witness: u.lcm_unchecked(v),
                    });
                }
            }
        }
        match self.kind {
            DivisionKind::Slice { degree } => {
                let observed = self.sigma_profile();
                let expected = sigma_expected(self.n, degree);
                if observed != expected {
                    violations.push(Violation::ProfileMismatch { observed, expected });
                }
                if degree > 0 {
                    for i in 0..self.n {
                        let p = Term::pure_power(i, degree, self.n);
                        if !self.mult[self.index[&p]].contains(i) {
                            violations.push(Violation::PurePower { variable: i });
                        }
                    }
                }
                let full = VarSet::full(self.n);
                let peaks: Vec<Term> =
                    self.entries().filter(|(_, m)| *m == full).map(|(t, _)| t.clone()).collect();
                match peaks.len() {
                    0 => violations.push(Violation::NoPeak),
                    1 => {}
                    _ => violations.push(Violation::MultiplePeaks { peaks }),
                }
                ValidationReport::new(violations, false)
            }
            DivisionKind::General => ValidationReport::new(violations, true),
        }
    }

    /// Fails unless this is a valid full-slice division.
    pub fn require_valid_slice(&self) -> Result<()> {
        if self.degree().is_none() {
            return Err(Error::NotSliceKind);
        }
        let report = self.validate();
        if report.valid {
            Ok(())
        } else {
            Err(Error::InvalidDivision(report.summary(self.n)))
        }
    }

    /// The unique term with every variable multiplicative.
    pub fn peak(&self) -> Result<Term> {
        self.require_valid_slice()?;
        let full = VarSet::full(self.n);
        Ok(self.entries().find(|(_, m)| *m == full).map(|(t, _)| t.clone()).expect("valid slice has a peak"))
    }

    /// Renames variable `i` to `perm[i]` in every term and multiplicative set.
    pub fn permute(&self, perm: &[usize]) -> Result<RelDivision> {
        check_permutation(perm, self.n)?;
        RelDivision::new(
            self.n,
            self.entries().map(|(t, m)| (t.permute(perm), m.permute(perm))),
            self.kind,
        )
    }

    /// Table of `X(s, t)` as support indices. Requires a valid slice.
    pub fn x_table(&self) -> Result<XTable> {
        self.require_valid_slice()?;
        let size = self.support.len();
        let mut table = vec![0; size * size];
        for i in 0..size {
            for j in i..size {
                let l = self.support[i].lcm_unchecked(&self.support[j]);
                let x = self
                    .divisor_index(&l)
                    .ok_or_else(|| Error::NoInvolutiveDivisor(l.to_string()))?;
                table[i * size + j] = x;
                table[j * size + i] = x;
            }
        }
        Ok(XTable { size, table })
    }
}

impl fmt::Debug for RelDivision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (t, s) in self.entries() {
            let names: Vec<String> = s.iter().map(|i| var_name(i, self.n)).collect();
            m.entry(&t.to_string(), &names.join(","));
        }
        m.finish()
    }
}

/// Precomputed `X(s, t)` over a valid slice division, indexed by support position.
#[derive(Clone, Debug)]
pub struct XTable {
    size: usize,
    table: Vec<usize>,
}

impl XTable {
    pub fn get(&self, s: usize, t: usize) -> usize {
        self.table[s * self.size + t]
    }

    pub fn size(&self) -> usize {
        self.size
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    Overlap { u: Term, v: Term, witness: Term },
    ProfileMismatch { observed: Vec<usize>, expected: Vec<usize> },
    PurePower { variable: usize },
    MultiplePeaks { peaks: Vec<Term> },
    NoPeak,
    Uncovered { term: Term },
    DoubleCovered { term: Term, u: Term, v: Term },
}

impl Violation {
    pub fn describe(&self, n: usize) -> String {
        match self {
            Violation::Overlap { u, v, witness } => {
                format!("overlap: cones of {u} and {v} share {witness}")
            }
            Violation::ProfileMismatch { observed, expected } => {
                format!("profile-mismatch: observed {observed:?}, expected {expected:?}")
            }
            Violation::PurePower { variable } => {
                let x = var_name(*variable, n);
                format!("pure-power: {x} is not multiplicative for the pure power of {x}")
            }
            Violation::MultiplePeaks { peaks } => {
                let names: Vec<String> = peaks.iter().map(|p| p.to_string()).collect();
                format!("multiple-peaks: {}", names.join(", "))
            }
            Violation::NoPeak => "no-peak: no term has every variable multiplicative".into(),
            Violation::Uncovered { term } => format!("uncovered: {term}"),
            Violation::DoubleCovered { term, u, v } => {
                format!("double-covered: {term} lies in the cones of {u} and {v}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
    /// Set when coverage of all multiples was not checked (general supports).
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub coverage_unverified: bool,
}

impl ValidationReport {
    pub fn new(violations: Vec<Violation>, coverage_unverified: bool) -> Self {
        ValidationReport { valid: violations.is_empty(), violations, coverage_unverified }
    }

    pub fn summary(&self, n: usize) -> String {
        if self.valid {
            return "valid".into();
        }
        self.violations.iter().map(|v| v.describe(n)).collect::<Vec<_>>().join("; ")
    }
}

impl Serialize for Term {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
