//! Bounded equivalence checking of conditions.
//!
//! Equivalence of nested conditions quantifies over every host graph, which
//! cannot be decided by enumeration. The checks here are oracles over a finite
//! corpus of hosts, and every verdict records the bound it was obtained under.

use std::collections::HashSet;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::canon::canonical_form;
use crate::condition::{condition_iso, eval, simplify, Condition, Node};
use crate::error::{Error, Result};
use crate::graph::{Flavor, Graph, Id};
use crate::matching::enumerate_monos;
use crate::morphism::{same_graph, Morphism};
use crate::rule::{is_admissible, Rule, RuleWC, Semantics};
use crate::smallgraphs::all_graphs;

/// Which host graphs an equivalence check ranges over.
#[derive(Debug, Clone)]
pub struct CorpusSpec {
    /// Every graph up to this many vertices / edges.
    pub max_vertices: usize,
    pub max_edges: usize,
    /// The root extended by up to this many fresh vertices and edges.
    pub extension_vertices: usize,
    pub extension_edges: usize,
    /// Include the targets of all existentials of the compared conditions.
    pub pattern_hosts: bool,
    /// User-supplied hosts.
    pub extra: Vec<Arc<Graph>>,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec {
            max_vertices: 4,
            max_edges: 4,
            extension_vertices: 1,
            extension_edges: 1,
            pattern_hosts: true,
            extra: Vec::new(),
        }
    }
}

impl CorpusSpec {
    /// A cheaper corpus for large randomized sweeps.
    pub fn small() -> Self {
        CorpusSpec { max_vertices: 3, max_edges: 3, ..Default::default() }
    }

    pub fn describe(&self) -> String {
        format!(
            "all graphs <= {}v/{}e; root + <= {}v/{}e; pattern hosts: {}; {} extra",
            self.max_vertices,
            self.max_edges,
            self.extension_vertices,
            self.extension_edges,
            self.pattern_hosts,
            self.extra.len()
        )
    }

    /// Host graphs for conditions over `root`, deduplicated up to
    /// isomorphism, in deterministic order.
    pub fn hosts(&self, root: &Graph, conds: &[&Condition]) -> Vec<Arc<Graph>> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        let mut push = |g: Arc<Graph>, out: &mut Vec<Arc<Graph>>| {
            if g.vertex_count() >= root.vertex_count()
                && g.edge_count() >= root.edge_count()
                && seen.insert(canonical_form(&g))
            {
                out.push(g);
            }
        };
        if self.pattern_hosts {
            push(Arc::new(root.clone()), &mut out);
            for c in conds {
                for g in pattern_graphs(c) {
                    push(g, &mut out);
                }
            }
        }
        for g in root_extensions(root, self.extension_vertices, self.extension_edges) {
            push(Arc::new(g), &mut out);
        }
        for g in all_graphs(root.flavor(), self.max_vertices, self.max_edges).iter() {
            push(g.clone(), &mut out);
        }
        for g in &self.extra {
            if g.flavor() == root.flavor() {
                push(g.clone(), &mut out);
            }
        }
        out
    }
}

/// Targets of every existential in `c`, at any depth.
pub fn pattern_graphs(c: &Condition) -> Vec<Arc<Graph>> {
    let mut out = Vec::new();
    fn walk(c: &Condition, out: &mut Vec<Arc<Graph>>) {
        match c.node() {
            Node::True | Node::False => {}
            Node::Exists(a, sub) => {
                out.push(a.cod().clone());
                walk(sub, out);
            }
            Node::Not(sub) => walk(sub, out),
            Node::And(cs) | Node::Or(cs) => cs.iter().for_each(|c| walk(c, out)),
        }
    }
    walk(c, &mut out);
    out
}

/// The root with up to `kv` fresh vertices and then up to `ke` fresh edges
/// anywhere.
pub fn root_extensions(root: &Graph, kv: usize, ke: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for a in 0..=kv {
        let mut base = root.clone();
        for _ in 0..a {
            base.add_vertex();
        }
        let vs = base.vertices().to_vec();
        let slots: Vec<(Id, Id)> = vs
            .iter()
            .flat_map(|&s| vs.iter().map(move |&t| (s, t)))
            .filter(|&(s, t)| root.flavor() == Flavor::Directed || s <= t)
            .collect();
        let mut pick: Vec<usize> = Vec::new();
        extend(&base, &slots, 0, ke, &mut pick, &mut out);
    }
    out
}

fn extend(base: &Graph, slots: &[(Id, Id)], from: usize, left: usize, pick: &mut Vec<usize>, out: &mut Vec<Graph>) {
    let mut g = base.clone();
    for &k in pick.iter() {
        g.add_edge(slots[k].0, slots[k].1).expect("endpoints exist");
    }
    out.push(Graph::from_unsorted_parts(g.flavor(), g.vertices().to_vec(), g.edges().to_vec()));
    if left == 0 {
        return;
    }
    for k in from..slots.len() {
        pick.push(k);
        extend(base, slots, k, left - 1, pick, out);
        pick.pop();
    }
}

#[derive(Debug, Clone)]
pub enum EquivMode {
    Plain,
    /// Only matches admissible for the (condition-free) rule count.
    Dot(Rule, Semantics),
}

#[derive(Debug, Clone, Serialize)]
pub enum Verdict {
    /// No disagreement on the corpus; `structural` when settled by
    /// isomorphism of the simplified conditions.
    EquivalentOnCorpus { hosts: usize, morphisms: usize, structural: bool, bound: String },
    Counterexample { host: String, morphism: String, lhs: bool, rhs: bool },
}

impl Verdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Verdict::EquivalentOnCorpus { .. })
    }
}

fn in_scope(mode: &EquivMode, p: &Morphism, plain: &Option<RuleWC>) -> bool {
    match (mode, plain) {
        (EquivMode::Plain, _) => true,
        (EquivMode::Dot(_, sem), Some(r)) => is_admissible(r, p, *sem).unwrap_or(false),
        (EquivMode::Dot(..), None) => unreachable!(),
    }
}

/// Compares `c1` and `c2` on every (admissible) mono from their root into
/// every corpus host.
pub fn check_equivalence(c1: &Condition, c2: &Condition, corpus: &CorpusSpec, mode: &EquivMode) -> Result<Verdict> {
    if !same_graph(c1.root(), c2.root()) {
        return Err(Error::RootMismatch);
    }
    let plain = match mode {
        EquivMode::Plain => None,
        EquivMode::Dot(r, _) => {
            if !same_graph(r.input(), c1.root()) {
                return Err(Error::RootMismatch);
            }
            Some(RuleWC::plain(r.clone()))
        }
    };
    let s1 = simplify(c1);
    let s2 = simplify(c2);
    let hosts = corpus.hosts(c1.root(), &[c1, c2]);
    if condition_iso(&s1, &s2) {
        return Ok(Verdict::EquivalentOnCorpus {
            hosts: hosts.len(),
            morphisms: 0,
            structural: true,
            bound: corpus.describe(),
        });
    }
    let root = c1.root();
    let results: Vec<std::result::Result<usize, (String, String, bool, bool)>> = hosts
        .par_iter()
        .map(|h| {
            let mut n = 0;
            for p in enumerate_monos(root, h).expect("flavors agree") {
                if !in_scope(mode, &p, &plain) {
                    continue;
                }
                n += 1;
                let l = eval(&p, &s1);
                let r = eval(&p, &s2);
                if l != r {
                    return Err((h.to_string(), format!("{p:?}"), l, r));
                }
            }
            Ok(n)
        })
        .collect();
    let mut total = 0;
    for r in results {
        match r {
            Ok(n) => total += n,
            Err((host, morphism, lhs, rhs)) => return Ok(Verdict::Counterexample { host, morphism, lhs, rhs }),
        }
    }
    Ok(Verdict::EquivalentOnCorpus { hosts: hosts.len(), morphisms: total, structural: false, bound: corpus.describe() })
}

/// Whether some corpus morphism satisfies `c`.
pub fn satisfiable_on_corpus(c: &Condition, corpus: &CorpusSpec) -> bool {
    let s = simplify(c);
    if s.is_false() {
        return false;
    }
    let hosts = corpus.hosts(c.root(), &[c]);
    hosts
        .par_iter()
        .any(|h| enumerate_monos(c.root(), h).expect("flavors agree").iter().any(|p| eval(p, &s)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_conditions_agree() {
        let p = Arc::new(Graph::discrete(Flavor::Directed, 1));
        let a = Arc::new(Graph::path(Flavor::Directed, 2));
        let c = Condition::exists_plain(Morphism::inclusion(p, a).unwrap()).unwrap();
        let v = check_equivalence(&c, &c, &CorpusSpec::small(), &EquivMode::Plain).unwrap();
        assert!(v.is_equivalent());
    }

    #[test]
    fn true_and_false_differ() {
        let p = Arc::new(Graph::discrete(Flavor::Directed, 1));
        let v = check_equivalence(&Condition::tt(p.clone()), &Condition::ff(p), &CorpusSpec::small(), &EquivMode::Plain)
            .unwrap();
        assert!(matches!(v, Verdict::Counterexample { lhs: true, rhs: false, .. }));
    }

    #[test]
    fn root_extensions_cover_small_additions() {
        let r = Graph::discrete(Flavor::Directed, 1);
        // + nothing, + loop, + vertex, + vertex & each of 4 edges
        let ext = root_extensions(&r, 1, 1);
        assert_eq!(ext.len(), 2 + 1 + 4);
    }
}
