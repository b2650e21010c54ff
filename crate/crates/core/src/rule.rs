//! Linear rules, transport of conditions, and DPO / SqPO rule application.
//!
//! A rule is a span of monos `O <-o- K -i-> I`, applied right to left: a
//! match `m: I -> X` selects the input, the right square removes `I \ K`
//! and the left square glues in `O \ K`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::catops::{
    final_pullback_complement, pullback, pushout, pushout_complement, Complement, SquareKind, SquareWitness,
};
use crate::condition::{eval, Condition};
use crate::error::{Error, Result};
use crate::graph::{Flavor, Graph};
use crate::matching::enumerate_monos;
use crate::morphism::{same_graph, Morphism};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Semantics {
    Dpo,
    Sqpo,
}

impl std::fmt::Display for Semantics {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Semantics::Dpo => "dpo",
            Semantics::Sqpo => "sqpo",
        })
    }
}

/// `O <-o- K -i-> I` with both legs mono.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    o: Morphism,
    i: Morphism,
}

impl Rule {
    pub fn new(o: Morphism, i: Morphism) -> Result<Rule> {
        if o.flavor() != i.flavor() {
            return Err(Error::FlavorMismatch);
        }
        if !same_graph(o.dom(), i.dom()) {
            return Err(Error::DomainMismatch);
        }
        if !o.is_mono() || !i.is_mono() {
            return Err(Error::NotMono);
        }
        let i = i.with_dom(o.dom().clone());
        Ok(Rule { o, i })
    }

    pub fn o(&self) -> &Morphism {
        &self.o
    }

    pub fn i(&self) -> &Morphism {
        &self.i
    }

    pub fn output(&self) -> &Arc<Graph> {
        self.o.cod()
    }

    pub fn interface(&self) -> &Arc<Graph> {
        self.o.dom()
    }

    pub fn input(&self) -> &Arc<Graph> {
        self.i.cod()
    }

    pub fn flavor(&self) -> Flavor {
        self.o.flavor()
    }

    /// `X <- X -> X`.
    pub fn identity(x: Arc<Graph>) -> Rule {
        let id = Morphism::identity(x);
        Rule { o: id.clone(), i: id }
    }

    /// The rule on the empty graph.
    pub fn trivial(flavor: Flavor) -> Rule {
        Rule::identity(Arc::new(Graph::empty(flavor)))
    }

    /// `(I <- K -> O)`.
    pub fn inverted(&self) -> Rule {
        Rule { o: self.i.clone(), i: self.o.clone() }
    }

    /// Adds an edge `0 -> 1` between two existing vertices.
    pub fn edge_addition(flavor: Flavor) -> Rule {
        let k = Arc::new(Graph::discrete(flavor, 2));
        let o = Arc::new(Graph::path(flavor, 2));
        Rule {
            o: Morphism::inclusion(k.clone(), o).unwrap(),
            i: Morphism::identity(k),
        }
    }

    /// Deletes an edge `0 -> 1`, keeping its endpoints.
    pub fn edge_deletion(flavor: Flavor) -> Rule {
        Rule::edge_addition(flavor).inverted()
    }

    /// Deletes a single vertex.
    pub fn vertex_deletion(flavor: Flavor) -> Rule {
        let k = Arc::new(Graph::empty(flavor));
        let v = Arc::new(Graph::discrete(flavor, 1));
        Rule {
            o: Morphism::identity(k.clone()),
            i: Morphism::initial(v).with_dom(k),
        }
    }

    /// Creates a single vertex.
    pub fn vertex_creation(flavor: Flavor) -> Rule {
        Rule::vertex_deletion(flavor).inverted()
    }

    /// Span composite "first `self`, then `s`": for `self = (C <-b- B -a-> A)`
    /// and `s = (E <-d- D -c-> C)` this is `(E <- F -> A)` with
    /// `F = PB(D -c-> C <-b- B)`.
    pub fn then_rule(&self, s: &Rule) -> Result<Rule> {
        if !same_graph(self.output(), s.input()) {
            return Err(Error::DomainMismatch);
        }
        let pb = pullback(&s.i.with_cod(self.output().clone()), &self.o)?;
        let o = pb.to_left.then(&s.o)?;
        let i = pb.to_right.then(&self.i)?;
        Rule::new(o, i)
    }
}

/// A rule with a condition over its input, i.e. in standard form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleWC {
    pub rule: Rule,
    pub cond: Condition,
}

impl RuleWC {
    pub fn new(rule: Rule, cond: Condition) -> Result<RuleWC> {
        if !same_graph(rule.input(), cond.root()) {
            return Err(Error::RootMismatch);
        }
        let cond = cond.with_root(rule.input().clone());
        Ok(RuleWC { rule, cond })
    }

    /// A rule whose condition is `true`.
    pub fn plain(rule: Rule) -> RuleWC {
        let cond = Condition::tt(rule.input().clone());
        RuleWC { rule, cond }
    }

    /// A rule with a condition authored over its output, transported to
    /// standard form.
    pub fn from_output_condition(rule: Rule, c_o: &Condition) -> Result<RuleWC> {
        let cond = trans(&rule, c_o)?;
        RuleWC::new(rule, cond)
    }

    pub fn trivial(flavor: Flavor) -> RuleWC {
        RuleWC::plain(Rule::trivial(flavor))
    }
}

/// Transport of a condition over `O` to a condition over `I`.
///
/// `∃(a: O -> O', c')` becomes `∃(a*: I -> I', trans(r', c'))` when the
/// pushout complement `K'` of `K -o-> O -a-> O'` exists (with
/// `I' = PO(K' <- K -> I)` and `r' = (O' <- K' -> I')`), and `false`
/// otherwise. The same construction serves both semantics.
pub fn trans(r: &Rule, c: &Condition) -> Result<Condition> {
    if !same_graph(r.output(), c.root()) {
        return Err(Error::RootMismatch);
    }
    trans_rec(r, c)
}

fn trans_rec(r: &Rule, c: &Condition) -> Result<Condition> {
    let root = r.input().clone();
    c.map_exists(&root, &mut |a, sub| {
        let a = a.with_dom(r.output().clone());
        let Some(kc) = pushout_complement(&r.o, &a)? else {
            return Ok(Condition::ff(root.clone()));
        };
        let po = pushout(&kc.k, &r.i)?;
        let r2 = Rule::new(kc.j.clone(), po.from_left.clone())?;
        let inner = trans_rec(&r2, sub)?;
        Condition::exists(po.from_right, inner)
    })
}

/// `trans((I <- K -> I), c_I)`: the condition with every requirement that
/// is impossible under DPO admissibility pruned to `false`.
pub fn compress_condition(r: &RuleWC) -> Result<Condition> {
    let mirror = Rule::new(r.rule.i.clone(), r.rule.i.clone())?;
    trans(&mirror, &r.cond)
}

/// Whether `m` is an admissible match of `r` under `sem`.
pub fn is_admissible(r: &RuleWC, m: &Morphism, sem: Semantics) -> Result<bool> {
    if !same_graph(m.dom(), r.rule.input()) {
        return Err(Error::RootMismatch);
    }
    if !m.is_mono() {
        return Ok(false);
    }
    if sem == Semantics::Dpo && pushout_complement(&r.rule.i, &m.with_dom(r.rule.input().clone()))?.is_none() {
        return Ok(false);
    }
    Ok(eval(m, &r.cond))
}

/// Admissible matches of `r` into `x`, in deterministic order.
pub fn enumerate_matches(r: &RuleWC, x: &Graph, sem: Semantics) -> Result<Vec<Morphism>> {
    let x = Arc::new(x.clone());
    enumerate_matches_arc(r, &x, sem)
}

pub fn enumerate_matches_arc(r: &RuleWC, x: &Arc<Graph>, sem: Semantics) -> Result<Vec<Morphism>> {
    let mut out = Vec::new();
    for m in enumerate_monos(r.rule.input(), x)? {
        if is_admissible(r, &m, sem)? {
            out.push(m);
        }
    }
    Ok(out)
}

/// A single rewriting step `X => X'` with its witness squares.
#[derive(Debug, Clone)]
pub struct RewriteStep {
    pub rule: RuleWC,
    pub semantics: Semantics,
    pub host: Arc<Graph>,
    pub m: Morphism,
    /// `K -> K'` and `K' -> X` from the right square.
    pub context: Complement,
    pub result: Arc<Graph>,
    pub comatch: Morphism,
    /// `K' -> X'`
    pub h: Morphism,
}

impl RewriteStep {
    /// Right square: pushout complement (DPO) or final pullback complement (SqPO).
    pub fn right_square(&self) -> SquareWitness {
        let kind = match self.semantics {
            Semantics::Dpo => SquareKind::PushoutComplement,
            Semantics::Sqpo => SquareKind::Fpc,
        };
        self.context.square(&self.rule.rule.i, &self.m, kind)
    }

    /// Left square: the pushout of `K' <- K -> O`.
    pub fn left_square(&self) -> SquareWitness {
        SquareWitness {
            top: self.rule.rule.o.clone(),
            left: self.context.k.clone(),
            right: self.comatch.clone(),
            bottom: self.h.clone(),
            kind: SquareKind::Pushout,
        }
    }

    /// Track of the host context into the result: the span `X <- K' -> X'`.
    pub fn trace(&self) -> (&Morphism, &Morphism) {
        (&self.context.j, &self.h)
    }
}

/// Applies `r` at the admissible match `m`.
pub fn apply(r: &RuleWC, x: &Graph, m: &Morphism, sem: Semantics) -> Result<RewriteStep> {
    if !same_graph(m.cod(), &Arc::new(x.clone())) {
        return Err(Error::DomainMismatch);
    }
    if !same_graph(m.dom(), r.rule.input()) {
        return Err(Error::RootMismatch);
    }
    if !m.is_mono() {
        return Err(Error::InadmissibleMatch("match is not a monomorphism".into()));
    }
    let m = m.with_dom(r.rule.input().clone());
    let context = match sem {
        Semantics::Dpo => pushout_complement(&r.rule.i, &m)?
            .ok_or_else(|| Error::InadmissibleMatch("dangling edges: no pushout complement".into()))?,
        Semantics::Sqpo => final_pullback_complement(&r.rule.i, &m)?,
    };
    if !eval(&m, &r.cond) {
        return Err(Error::InadmissibleMatch("application condition is not satisfied".into()));
    }
    let po = pushout(&r.rule.o, &context.k)?;
    Ok(RewriteStep {
        rule: r.clone(),
        semantics: sem,
        host: m.cod().clone(),
        m,
        context,
        result: po.object,
        comatch: po.from_left,
        h: po.from_right,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::condition::satisfies;
    use crate::graph::Id;
    use crate::matching::are_isomorphic;
    use std::collections::BTreeMap;

    const D: Flavor = Flavor::Directed;

    fn g(vs: &[Id], es: &[(Id, Id, Id)]) -> Arc<Graph> {
        Arc::new(Graph::new(D, vs.iter().copied(), es.iter().copied()).unwrap())
    }

    fn no_edge_rule() -> RuleWC {
        let r = Rule::edge_addition(D);
        let i = r.input().clone();
        let with_edge = g(&[0, 1], &[(0, 0, 1)]);
        let c = Condition::not(Condition::exists_plain(Morphism::inclusion(i, with_edge).unwrap()).unwrap());
        RuleWC::new(r, c).unwrap()
    }

    #[test]
    fn vertex_deletion_dpo_vs_sqpo() {
        let r = RuleWC::plain(Rule::vertex_deletion(D));
        let x = g(&[1, 2], &[(0, 1, 2)]);
        assert!(enumerate_matches(&r, &x, Semantics::Dpo).unwrap().is_empty());
        let ms = enumerate_matches(&r, &x, Semantics::Sqpo).unwrap();
        assert_eq!(ms.len(), 2);
        let step = apply(&r, &x, &ms[0], Semantics::Sqpo).unwrap();
        assert_eq!(step.result.vertices(), &[2]);
        let err = apply(&r, &x, &ms[0], Semantics::Dpo).unwrap_err();
        assert!(matches!(err, Error::InadmissibleMatch(_)));
    }

    #[test]
    fn edge_addition_creates_parallel_edge() {
        let r = RuleWC::plain(Rule::edge_addition(D));
        let x = g(&[1, 2], &[(0, 1, 2)]);
        let m = Morphism::new(r.rule.input().clone(), x.clone(), &BTreeMap::from([(0, 1), (1, 2)]), &BTreeMap::new()).unwrap();
        let step = apply(&r, &x, &m, Semantics::Dpo).unwrap();
        assert_eq!(step.result.edge_count(), 2);
        assert_eq!(step.result.edges_between(1, 2).count(), 2);
        assert!(step.comatch.is_mono());
    }

    #[test]
    fn no_edge_condition_filters_matches() {
        let r = no_edge_rule();
        let disc = g(&[1, 2], &[]);
        assert_eq!(enumerate_matches(&r, &disc, Semantics::Dpo).unwrap().len(), 2);
        let edge = g(&[1, 2], &[(0, 1, 2)]);
        let ms = enumerate_matches(&r, &edge, Semantics::Dpo).unwrap();
        assert_eq!(ms.len(), 1);
        assert_eq!((ms[0].v(0), ms[0].v(1)), (2, 1));
    }

    #[test]
    fn identity_rule_step_is_trivial() {
        let x = g(&[0, 1], &[(0, 0, 1)]);
        let r = RuleWC::plain(Rule::identity(x.clone()));
        let m = Morphism::identity(x.clone());
        let step = apply(&r, &x, &m, Semantics::Dpo).unwrap();
        assert!(are_isomorphic(&step.result, &x).unwrap().is_some());
        assert_eq!(step.comatch.vmap(), m.vmap());
    }

    #[test]
    fn trans_of_parallel_edge_requirement() {
        // O = 0->1, c = ∃(O ↪ O + parallel edge) becomes ∃(I ↪ I + edge)
        let r = Rule::edge_addition(D);
        let o2 = g(&[0, 1], &[(0, 0, 1), (1, 0, 1)]);
        let c = Condition::exists_plain(Morphism::inclusion(r.output().clone(), o2).unwrap()).unwrap();
        let t = trans(&r, &c).unwrap();
        let crate::condition::Node::Exists(a, _) = t.node() else { panic!("expected ∃, got {t}") };
        assert_eq!(a.cod().vertex_count(), 2);
        assert_eq!(a.cod().edge_count(), 1);
    }

    #[test]
    fn trans_yields_false_without_complement() {
        // vertex creation: O = {a}; c = ∃(O ↪ a->b) would need to delete a
        // with an attached edge
        let r = Rule::vertex_creation(D);
        let big = g(&[0, 1], &[(0, 0, 1)]);
        let c = Condition::exists_plain(Morphism::inclusion(r.output().clone(), big).unwrap()).unwrap();
        assert!(trans(&r, &c).unwrap().is_false());
    }

    #[test]
    fn dpo_steps_invert() {
        let r = RuleWC::plain(Rule::edge_deletion(D));
        let x = g(&[1, 2, 3], &[(0, 1, 2), (1, 2, 3)]);
        for m in enumerate_matches(&r, &x, Semantics::Dpo).unwrap() {
            let step = apply(&r, &x, &m, Semantics::Dpo).unwrap();
            let back = RuleWC::plain(r.rule.inverted());
            let undo = apply(&back, &step.result, &step.comatch, Semantics::Dpo).unwrap();
            assert!(are_isomorphic(&undo.result, &x).unwrap().is_some());
        }
    }

    #[test]
    fn trans_contract_on_edge_addition() {
        let r = Rule::edge_addition(D);
        let o3 = g(&[0, 1, 2], &[(0, 0, 1), (1, 1, 2)]);
        let c = Condition::exists_plain(Morphism::inclusion(r.output().clone(), o3).unwrap()).unwrap();
        let t = trans(&r, &c).unwrap();
        let plain = RuleWC::plain(r.clone());
        let x = g(&[1, 2, 3], &[(0, 2, 3)]);
        for m in enumerate_matches(&plain, &x, Semantics::Dpo).unwrap() {
            let step = apply(&plain, &x, &m, Semantics::Dpo).unwrap();
            assert_eq!(satisfies(&step.comatch, &c).unwrap(), satisfies(&m, &t).unwrap());
        }
    }

    #[test]
    fn span_composition_of_add_then_delete() {
        let add = Rule::edge_addition(D);
        let del = Rule::edge_deletion(D);
        let comp = add.then_rule(&del).unwrap();
        assert_eq!(comp.interface().vertex_count(), 2);
        assert_eq!(comp.input().edge_count(), 0);
        assert_eq!(comp.output().edge_count(), 0);
    }
}
