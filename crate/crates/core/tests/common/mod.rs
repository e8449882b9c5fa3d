#![allow(dead_code)]

use std::path::PathBuf;

use rand::Rng;

use reldiv::graphs::LabeledDigraph;
use reldiv::{RelDivision, Term, TermSet};

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

pub fn read_data(name: &str) -> String {
    std::fs::read_to_string(data_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn load(name: &str) -> RelDivision {
    RelDivision::from_json(&read_data(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn term(s: &str, n: usize) -> Term {
    Term::parse(s, n).unwrap()
}

pub fn set(terms: &[&str], n: usize) -> TermSet {
    terms.iter().map(|s| term(s, n)).collect()
}

/// Non-comment lines of a data file.
pub fn data_lines(name: &str) -> Vec<String> {
    read_data(name)
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(String::from)
        .collect()
}

/// Divisions on T_2 in three variables written as `term: vars; term: vars; ...`.
pub fn slice32_representatives() -> Vec<RelDivision> {
    data_lines("slice32_representatives.txt")
        .iter()
        .map(|line| {
            let rows: Vec<(&str, &str)> = line
                .split(';')
                .map(|cell| cell.split_once(':').expect("term: vars"))
                .map(|(t, m)| (t.trim(), m.trim()))
                .collect();
            RelDivision::from_rows(3, Some(2), &rows).unwrap()
        })
        .collect()
}

/// The sparse reference graph for the four-variable fixture.
pub fn reference_graph(div: &RelDivision) -> LabeledDigraph {
    let edges = data_lines("four_vars_reference_edges.txt")
        .iter()
        .map(|l| {
            let (a, b) = l.split_once("->").unwrap();
            (term(a, div.n()), term(b, div.n()), None)
        })
        .collect::<Vec<_>>();
    LabeledDigraph::new(div.n(), div.support().to_vec(), edges).unwrap()
}

/// Random subset of `terms`, each kept with probability 1/3.
pub fn random_subset(rng: &mut impl Rng, terms: &[Term]) -> TermSet {
    terms.iter().filter(|_| rng.gen_ratio(1, 3)).cloned().collect()
}
