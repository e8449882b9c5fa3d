//! Step-by-step construction of a division on `T_D`, as driven by the `build`
//! command. Each choice goes through [`PartialAssignment::propagate`]; rejected
//! choices leave the state untouched.

use crate::division::RelDivision;
use crate::enumerate::{seed_constraints, PartialAssignment};
use crate::error::{Error, Result};
use crate::term::{var_name, Term, VarSet};

/// Parses a choice line `term: v1,v2,...`. Blank lines and `#` comments give `None`.
pub fn parse_choice(line: &str, n: usize) -> Result<Option<(Term, VarSet)>> {
    let line = line.split('#').next().unwrap_or("").trim();
    if line.is_empty() {
        return Ok(None);
    }
    let (term, vars) = line
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("expected `term: variables`, got {line:?}")))?;
    Ok(Some((Term::parse(term, n)?, VarSet::parse(vars, n)?)))
}

#[derive(Clone, Debug)]
pub struct Builder {
    state: PartialAssignment,
    history: Vec<(Term, VarSet)>,
}

impl Builder {
    pub fn new(n: usize, degree: u32) -> Result<Self> {
        Ok(Builder { state: seed_constraints(n, degree)?, history: Vec::new() })
    }

    pub fn state(&self) -> &PartialAssignment {
        &self.state
    }

    /// Choices accepted so far, including automatic ones.
    pub fn history(&self) -> &[(Term, VarSet)] {
        &self.history
    }

    pub fn is_complete(&self) -> bool {
        self.state.is_complete()
    }

    pub fn choose(&mut self, t: &Term, m: VarSet) -> Result<()> {
        self.state = self.state.propagate(t, m)?;
        self.history.push((t.clone(), m));
        Ok(())
    }

    /// Applies one script line; returns the accepted choice, if the line had one.
    pub fn apply_line(&mut self, line: &str) -> Result<Option<(Term, VarSet)>> {
        let Some((t, m)) = parse_choice(line, self.state.n())? else { return Ok(None) };
        self.choose(&t, m)?;
        Ok(Some((t, m)))
    }

    /// Unassigned terms left with no admissible set.
    pub fn dead_terms(&self) -> Vec<Term> {
        (0..self.state.terms().len())
            .filter(|&i| self.state.assigned(i).is_none() && self.state.candidates(i).is_empty())
            .map(|i| self.state.terms()[i].clone())
            .collect()
    }

    /// Assigns every term that has exactly one admissible set left, repeating
    /// until nothing changes.
    pub fn autocomplete(&mut self) -> Result<Vec<(Term, VarSet)>> {
        let mut done = Vec::new();
        'outer: loop {
            for i in 0..self.state.terms().len() {
                if self.state.assigned(i).is_some() {
                    continue;
                }
                if let [only] = self.state.candidates(i)[..] {
                    let t = self.state.terms()[i].clone();
                    self.choose(&t, only)?;
                    done.push((t, only));
                    continue 'outer;
                }
            }
            return Ok(done);
        }
    }

    /// The finished, validated division.
    pub fn finish(&self) -> Result<RelDivision> {
        if !self.is_complete() {
            let open: Vec<String> = (0..self.state.terms().len())
                .filter(|&i| self.state.assigned(i).is_none())
                .map(|i| self.state.terms()[i].to_string())
                .collect();
            return Err(Error::Conflict(format!("incomplete: no choice for {}", open.join(", "))));
        }
        let div = self.state.to_division()?;
        let report = div.validate();
        if !report.valid {
            return Err(Error::InvalidDivision(report.summary(div.n())));
        }
        Ok(div)
    }

    /// The term-by-variable table. Unassigned rows show forced variables by
    /// name, `×` for excluded, `/` for members of a not-all-together group and
    /// `?` for free; assigned rows show their multiplicative variables.
    pub fn render_table(&self, color: bool) -> String {
        let pa = &self.state;
        let n = pa.n();
        let names: Vec<String> = (0..n).map(|i| var_name(i, n)).collect();
        let cell_w = names.iter().map(|s| s.len()).max().unwrap_or(1);
        let term_w = pa.terms().iter().map(|t| t.to_string().len()).max().unwrap_or(1).max(4);
        let paint = |s: String, code: &str| if color { format!("\x1b[{code}m{s}\x1b[0m") } else { s };

        let mut out = format!("{:term_w$} |", "term");
        for name in &names {
            out.push_str(&format!(" {name:cell_w$}"));
        }
        out.push('\n');
        out.push_str(&"-".repeat(term_w + 1));
        out.push('+');
        out.push_str(&"-".repeat((cell_w + 1) * n));
        out.push('\n');

        for (i, t) in pa.terms().iter().enumerate() {
            out.push_str(&format!("{:term_w$} |", t.to_string()));
            for (v, name) in names.iter().enumerate() {
                let cell = match pa.assigned(i) {
                    Some(m) if m.contains(v) => paint(format!("{name:cell_w$}"), "32"),
                    Some(_) => " ".repeat(cell_w),
                    None if pa.forced_in(i).contains(v) => paint(format!("{name:cell_w$}"), "36"),
                    None if pa.forced_out(i).contains(v) => paint(format!("{:cell_w$}", "×"), "31"),
                    None if pa.groups(i).iter().any(|g| g.contains(v)) => {
                        paint(format!("{:cell_w$}", "/"), "33")
                    }
                    None => format!("{:cell_w$}", "?"),
                };
                out.push(' ');
                out.push_str(&cell);
            }
            match pa.assigned(i) {
                Some(_) => out.push_str("  (assigned)"),
                None => {
                    let c = pa.candidates(i).len();
                    out.push_str(&format!("  ({c} option{})", if c == 1 { "" } else { "s" }));
                }
            }
            out.push('\n');
        }
        let budget: Vec<String> = pa.budget().iter().map(usize::to_string).collect();
        out.push_str(&format!("remaining by size: ({})\n", budget.join(",")));
        out
    }
}
