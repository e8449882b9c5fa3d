//! Terms (exponent vectors), variable sets and the degree-lexicographic order.
//!
//! Variables are indexed from zero internally and ordered `x1 < x2 < ... < xn`.
//! For `n <= 4` they are displayed as `x, y, z, t`, otherwise as `x1 .. xn`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported number of variables (a [`VarSet`] is a 32-bit mask).
pub const MAX_VARS: usize = 32;

const SHORT_NAMES: [&str; 4] = ["x", "y", "z", "t"];

/// Display name of variable `index` in an ambient space of `n` variables.
pub fn var_name(index: usize, n: usize) -> String {
    if n <= SHORT_NAMES.len() {
        SHORT_NAMES[index].to_string()
    } else {
        format!("x{}", index + 1)
    }
}

/// Inverse of [`var_name`]. The indexed spelling `x<k>` is accepted for every `n`.
pub fn parse_var(name: &str, n: usize) -> Result<usize> {
    let name = name.trim();
    if n <= SHORT_NAMES.len() {
        if let Some(i) = SHORT_NAMES[..n].iter().position(|s| *s == name) {
            return Ok(i);
        }
    }
    if let Some(digits) = name.strip_prefix('x') {
        if let Ok(k) = digits.parse::<usize>() {
            if (1..=n).contains(&k) {
                return Ok(k - 1);
            }
            return Err(Error::VariableOutOfRange { index: k.wrapping_sub(1), n });
        }
    }
    Err(Error::Parse(format!("unknown variable {name:?} for {n} variables")))
}

/// Sorted set of variable names, e.g. `["x", "z"]`.
pub fn var_names(set: VarSet, n: usize) -> Vec<String> {
    set.iter().map(|i| var_name(i, n)).collect()
}

/// A set of variable indices, stored as a bit mask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarSet(u32);

impl VarSet {
    pub const EMPTY: VarSet = VarSet(0);

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VARS);
        if n == MAX_VARS {
            VarSet(u32::MAX)
        } else {
            VarSet((1u32 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        VarSet(1 << i)
    }

    pub fn from_bits(bits: u32) -> Self {
        VarSet(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        VarSet(it.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    /// Parses a comma or whitespace separated list of variable names.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let mut set = VarSet::EMPTY;
        for tok in s.split(|c: char| c == ',' || c.is_whitespace()) {
            if tok.is_empty() {
                continue;
            }
            set.insert(parse_var(tok, n)?);
        }
        Ok(set)
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1 << i);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: VarSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: VarSet) -> VarSet {
        VarSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VarSet) -> VarSet {
        VarSet(self.0 & other.0)
    }

    pub fn difference(self, other: VarSet) -> VarSet {
        VarSet(self.0 & !other.0)
    }

    /// Complement inside `{0..n}`.
    pub fn complement(self, n: usize) -> VarSet {
        VarSet::full(n).difference(self)
    }

    /// Ascending indices.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..MAX_VARS).filter(move |i| bits >> i & 1 == 1)
    }

    /// Image under a variable renaming `i -> perm[i]`.
    pub fn permute(self, perm: &[usize]) -> VarSet {
        VarSet::from_indices(self.iter().map(|i| perm[i]))
    }

    /// All subsets of `{0..n}` ordered by size, then by mask value.
    pub fn all_subsets(n: usize) -> Vec<VarSet> {
        let mut v: Vec<VarSet> = (0..(1u64 << n)).map(|b| VarSet(b as u32)).collect();
        v.sort_by_key(|s| (s.len(), s.0));
        v
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A term `x1^g1 * ... * xn^gn`, identified with its exponent vector.
///
/// The derived order is degree-lexicographic: lower total degree first, ties
/// broken lexicographically with the last variable most significant. On
/// `T_2` in three variables this gives `x^2 < xy < y^2 < xz < yz < z^2`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Term {
    exps: Vec<u32>,
}

pub type TermSet = BTreeSet<Term>;

impl Term {
    pub fn new(exps: Vec<u32>) -> Self {
        Term { exps }
    }

    pub fn one(n: usize) -> Self {
        Term { exps: vec![0; n] }
    }

    pub fn var(i: usize, n: usize) -> Self {
        let mut exps = vec![0; n];
        exps[i] = 1;
        Term { exps }
    }

    /// `x_i^d`.
    pub fn pure_power(i: usize, d: u32, n: usize) -> Self {
        let mut exps = vec![0; n];
        exps[i] = d;
        Term { exps }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i]
    }

    /// Number of ambient variables.
    pub fn n(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// Variables with positive exponent.
    pub fn support(&self) -> VarSet {
        VarSet::from_indices(self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i))
    }

    pub fn is_pure_power(&self) -> bool {
        self.support().len() == 1
    }

    fn check_dim(&self, other: &Term) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), found: other.n() });
        }
        Ok(())
    }

    /// Componentwise maximum.
    pub fn lcm(&self, other: &Term) -> Result<Term> {
        self.check_dim(other)?;
        Ok(self.lcm_unchecked(other))
    }

    /// Componentwise minimum.
    pub fn gcd(&self, other: &Term) -> Result<Term> {
        self.check_dim(other)?;
        Ok(self.gcd_unchecked(other))
    }

    /// `self | other`.
    pub fn divides(&self, other: &Term) -> Result<bool> {
        self.check_dim(other)?;
        Ok(self.divides_unchecked(other))
    }

    pub(crate) fn lcm_unchecked(&self, other: &Term) -> Term {
        debug_assert_eq!(self.n(), other.n());
        Term { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect() }
    }

    pub(crate) fn gcd_unchecked(&self, other: &Term) -> Term {
        debug_assert_eq!(self.n(), other.n());
        Term { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect() }
    }

    pub(crate) fn divides_unchecked(&self, other: &Term) -> bool {
        debug_assert_eq!(self.n(), other.n());
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Term) -> Result<Term> {
        self.check_dim(other)?;
        Ok(Term { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect() })
    }

    /// `self / other` when `other | self`.
    pub fn quotient(&self, other: &Term) -> Option<Term> {
        if self.n() != other.n() || !other.divides_unchecked(self) {
            return None;
        }
        Some(Term { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect() })
    }

    pub fn mul_var(&self, i: usize) -> Term {
        let mut exps = self.exps.clone();
        exps[i] += 1;
        Term { exps }
    }

    pub fn div_var(&self, i: usize) -> Option<Term> {
        if self.exps[i] == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[i] -= 1;
        Some(Term { exps })
    }

    /// Smallest variable dividing the term.
    pub fn min_var(&self) -> Result<usize> {
        self.exps.iter().position(|&e| e > 0).ok_or(Error::NoVariables)
    }

    /// Largest variable dividing the term.
    pub fn max_var(&self) -> Result<usize> {
        self.exps.iter().rposition(|&e| e > 0).ok_or(Error::NoVariables)
    }

    /// Renames variable `i` to `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Term {
        let mut exps = vec![0; self.n()];
        for (i, &e) in self.exps.iter().enumerate() {
            exps[perm[i]] = e;
        }
        Term { exps }
    }

    /// Parses either a named product (`x^2*y`, `xz`, `x2^3*x5`, `1`) or a bare
    /// exponent array (`[2,1,0]`).
    pub fn parse(s: &str, n: usize) -> Result<Term> {
        let s = s.trim();
        if s.starts_with('[') {
            let inner = s
                .strip_prefix('[')
                .and_then(|r| r.strip_suffix(']'))
                .ok_or_else(|| Error::Parse(format!("unterminated exponent array {s:?}")))?;
            let exps = inner
                .split(',')
                .map(|p| p.trim())
                .filter(|p| !p.is_empty())
                .map(|p| p.parse::<u32>().map_err(|e| Error::Parse(format!("{p:?}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            if exps.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: exps.len() });
            }
            return Ok(Term { exps });
        }
        if s == "1" {
            return Ok(Term::one(n));
        }
        if s.is_empty() {
            return Err(Error::Parse("empty term".into()));
        }
        let mut exps = vec![0u32; n];
        let chars: Vec<char> = s.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            if c == '*' || c.is_whitespace() {
                i += 1;
                continue;
            }
            if !c.is_ascii_alphabetic() {
                return Err(Error::Parse(format!("unexpected {c:?} in term {s:?}")));
            }
            let mut name = c.to_string();
            i += 1;
            if c == 'x' {
                // indexed spelling x<k>
                while i < chars.len() && chars[i].is_ascii_digit() {
                    name.push(chars[i]);
                    i += 1;
                }
            }
            let var = parse_var(&name, n)?;
            let mut power = 1u32;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                power = digits
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in term {s:?}")))?;
            }
            exps[var] += power;
        }
        Ok(Term { exps })
    }
}

impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.iter().rev().cmp(other.exps.iter().rev()))
            .then_with(|| self.n().cmp(&other.n()))
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n();
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(&var_name(i, n))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All terms of degree exactly `degree` in `n` variables, in degree-lex order.
pub fn enumerate_terms(n: usize, degree: u32) -> Vec<Term> {
    fn rec(k: usize, remaining: u32, exps: &mut Vec<u32>, out: &mut Vec<Term>) {
        if k == 0 {
            exps[0] = remaining;
            out.push(Term { exps: exps.clone() });
            exps[0] = 0;
            return;
        }
        for e in 0..=remaining {
            exps[k] = e;
            rec(k - 1, remaining - e, exps, out);
        }
        exps[k] = 0;
    }
    if n == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    rec(n - 1, degree, &mut vec![0; n], &mut out);
    out
}

/// Terms of every degree in `lo..=hi`, degree by degree.
pub fn terms_in_degree_range(n: usize, lo: u32, hi: u32) -> Vec<Term> {
    (lo..=hi).flat_map(|d| enumerate_terms(n, d)).collect()
}

/// Checks that `perm` is a permutation of `0..n`.
pub fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if perm.len() != n {
        return Err(Error::BadPermutation(n));
    }
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::BadPermutation(n));
        }
        seen[p] = true;
    }
    Ok(())
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}
