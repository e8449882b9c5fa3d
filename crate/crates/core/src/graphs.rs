//! Directed graphs on the support of a division that propagate cone membership.
//!
//! * Ufnarovsky-like graph: `t -x-> s` when `x` is non-multiplicative for `s`
//!   and `s*x` lies in the cone of `t`.
//! * Redundant graph: `t -> s` whenever `X(s, t) = t`.
//! * Generalized graph: a sparsification of the redundant graph with the same
//!   reachability, built by skipping pairs already joined by a path.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write;

use serde::Serialize;

use crate::division::RelDivision;
use crate::error::{Error, Result};
use crate::term::{var_name, Term, TermSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledDigraph {
    n: usize,
    nodes: Vec<Term>,
    /// `(tail, head, label)` as node indices, sorted.
    edges: BTreeSet<(usize, usize, Option<usize>)>,
}

#[derive(Serialize)]
struct EdgeList {
    edges: Vec<(String, String, Option<String>)>,
}

impl LabeledDigraph {
    /// A graph on `nodes` (sorted internally). Self-loops and unknown endpoints
    /// are rejected.
    pub fn new<I>(n: usize, nodes: Vec<Term>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Term, Term, Option<usize>)>,
    {
        let mut g = LabeledDigraph { n, nodes, edges: BTreeSet::new() };
        g.nodes.sort();
        g.nodes.dedup();
        for (tail, head, label) in edges {
            let (a, b) = (g.lookup(&tail)?, g.lookup(&head)?);
            if a == b {
                return Err(Error::Parse(format!("self-loop at {tail}")));
            }
            if let Some(x) = label {
                if x >= n {
                    return Err(Error::VariableOutOfRange { index: x, n });
                }
            }
            g.edges.insert((a, b, label));
        }
        Ok(g)
    }

    fn empty(n: usize, nodes: Vec<Term>) -> Self {
        LabeledDigraph { n, nodes, edges: BTreeSet::new() }
    }

    fn lookup(&self, t: &Term) -> Result<usize> {
        self.nodes.binary_search(t).map_err(|_| Error::UnknownNode(t.to_string()))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nodes(&self) -> &[Term] {
        &self.nodes
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges `(tail, head, label)` sorted by tail, head and label.
    pub fn edges(&self) -> impl Iterator<Item = (&Term, &Term, Option<usize>)> + '_ {
        self.edges.iter().map(|&(a, b, l)| (&self.nodes[a], &self.nodes[b], l))
    }

    pub fn has_edge(&self, tail: &Term, head: &Term) -> bool {
        match (self.lookup(tail), self.lookup(head)) {
            (Ok(a), Ok(b)) => self.edges.range((a, b, None)..=(a, b, Some(usize::MAX))).next().is_some(),
            _ => false,
        }
    }

    fn adjacency(&self, reverse: bool) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for &(a, b, _) in &self.edges {
            if reverse {
                adj[b].push(a);
            } else {
                adj[a].push(b);
            }
        }
        adj
    }

    fn reach(&self, seed: &TermSet, reverse: bool) -> Result<TermSet> {
        let adj = self.adjacency(reverse);
        let mut seen = vec![false; self.nodes.len()];
        let mut queue = VecDeque::new();
        for t in seed {
            let i = self.lookup(t)?;
            if !seen[i] {
                seen[i] = true;
                queue.push_back(i);
            }
        }
        while let Some(i) = queue.pop_front() {
            for &j in &adj[i] {
                if !seen[j] {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        Ok(self.nodes.iter().zip(seen).filter(|(_, s)| *s).map(|(t, _)| t.clone()).collect())
    }

    /// `seed` plus everything reachable along edges.
    pub fn reachable_forward(&self, seed: &TermSet) -> Result<TermSet> {
        self.reach(seed, false)
    }

    /// `seed` plus everything that reaches it.
    pub fn reachable_backward(&self, seed: &TermSet) -> Result<TermSet> {
        self.reach(seed, true)
    }

    /// Transitive closure as a reachability matrix (reflexive).
    pub fn closure_matrix(&self) -> Vec<Vec<bool>> {
        let adj = self.adjacency(false);
        (0..self.nodes.len()).map(|i| reach_from(&adj, i, self.nodes.len())).collect()
    }

    pub fn reachability_equivalent(&self, other: &LabeledDigraph) -> Result<bool> {
        if self.nodes != other.nodes {
            return Err(Error::NodeMismatch);
        }
        Ok(self.closure_matrix() == other.closure_matrix())
    }

    /// Graphviz rendering; nodes in degree-lex order, edges sorted.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph G {\n");
        for t in &self.nodes {
            writeln!(out, "  \"{t}\";").unwrap();
        }
        for (tail, head, label) in self.edges() {
            match label {
                Some(x) => writeln!(out, "  \"{tail}\" -> \"{head}\" [label=\"{}\"];", var_name(x, self.n)),
                None => writeln!(out, "  \"{tail}\" -> \"{head}\";"),
            }
            .unwrap();
        }
        out.push_str("}\n");
        out
    }

    /// `{"edges": [[tail, head, label|null], ...]}`.
    pub fn to_json(&self) -> String {
        let list = EdgeList {
            edges: self
                .edges()
                .map(|(a, b, l)| (a.to_string(), b.to_string(), l.map(|x| var_name(x, self.n))))
                .collect(),
        };
        serde_json::to_string(&list).expect("edge list serializes")
    }
}

fn reach_from(adj: &[Vec<usize>], start: usize, size: usize) -> Vec<bool> {
    let mut seen = vec![false; size];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(i) = stack.pop() {
        for &j in &adj[i] {
            if !seen[j] {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen
}

pub fn ufnarovsky_graph(div: &RelDivision) -> Result<LabeledDigraph> {
    div.require_valid_slice()?;
    let mut g = LabeledDigraph::empty(div.n(), div.support().to_vec());
    for (s, (term, m)) in div.entries().enumerate() {
        for x in m.complement(div.n()).iter() {
            let w = term.mul_var(x);
            let t = div
                .divisor_index(&w)
                .ok_or_else(|| Error::NoInvolutiveDivisor(w.to_string()))?;
            g.edges.insert((t, s, Some(x)));
        }
    }
    Ok(g)
}

pub fn redundant_graph(div: &RelDivision) -> Result<LabeledDigraph> {
    let x = div.x_table()?;
    let mut g = LabeledDigraph::empty(div.n(), div.support().to_vec());
    for t in 0..div.len() {
        for s in 0..div.len() {
            if s != t && x.get(s, t) == t {
                g.edges.insert((t, s, None));
            }
        }
    }
    Ok(g)
}

/// Pairs with `X(s, t) = t` are visited in degree-lex order of `(t, s)`; the
/// edge `t -> s` is added only if `s` is not already reachable from `t`.
pub fn generalized_graph(div: &RelDivision) -> Result<LabeledDigraph> {
    let x = div.x_table()?;
    let size = div.len();
    let mut g = LabeledDigraph::empty(div.n(), div.support().to_vec());
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); size];
    for t in 0..size {
        for s in 0..size {
            if s == t || x.get(s, t) != t {
                continue;
            }
            if !reach_from(&adj, t, size)[s] {
                adj[t].push(s);
                g.edges.insert((t, s, None));
            }
        }
    }
    Ok(g)
}
