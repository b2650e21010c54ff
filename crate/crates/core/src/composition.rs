//! Sequential composition of rules with conditions.
//!
//! `R2 ∘_μ R1` glues the input `I2` of the second rule to the output `O1`
//! of the first along a span of monos `I2 <- M -> O1`:
//!
//! ```text
//!   O2 <- K2 -> I2          O1 <- K1 -> I1
//!   |      |      \        /      |      |
//!   O21 <- K2' ---> N21 <--- K1' -> I21
//!             \             /
//!                   K21
//! ```
//!
//! The left side is a DPO (or SqPO) application of `R2` at `I2 -> N21`, the
//! right side an inverse DPO application of `R1` at `O1 -> N21`.

use std::collections::BTreeSet;
use std::sync::Arc;

use rayon::prelude::*;

use crate::catops::{
    final_pullback_complement, pullback, pushout, pushout_complement, Complement, SquareKind, SquareWitness,
};
use crate::condition::{simplify, Condition};
use crate::equivalence::{satisfiable_on_corpus, CorpusSpec};
use crate::error::{Error, Result};
use crate::graph::{Graph, Id};
use crate::matching::{mono_extensions, Pins};
use crate::morphism::{Morphism, Span};
use crate::rule::{trans, Rule, RuleWC, Semantics};
use crate::shift::shift;
use crate::smallgraphs::subgraphs_containing;

/// Every overlap `I2 <- M -> O1` of monos, up to span isomorphism.
///
/// `M` ranges over the subgraphs of `I2` (its left leg is the inclusion),
/// and the right leg over all monos into `O1`; distinct pairs are never
/// isomorphic spans. The empty overlap comes first.
pub fn enumerate_rule_overlaps(r2: &RuleWC, r1: &RuleWC) -> Result<Vec<Span>> {
    if r2.rule.flavor() != r1.rule.flavor() {
        return Err(Error::FlavorMismatch);
    }
    let i2 = r2.rule.input();
    let o1 = r1.rule.output();
    let subs = subgraphs_containing(i2, &BTreeSet::new(), &BTreeSet::new(), o1.vertex_count(), o1.edge_count());
    let mut out = Vec::new();
    for m in subs {
        if m.vertex_count() > o1.vertex_count() || m.edge_count() > o1.edge_count() {
            continue;
        }
        let m = Arc::new(m);
        let left = Morphism::inclusion(m.clone(), i2.clone())?;
        for right in mono_extensions(&m, o1, &Pins::new())? {
            out.push(Span { left: left.clone(), right });
        }
    }
    Ok(out)
}

/// Full witness of a composition `R2 ∘_μ R1`.
#[derive(Debug, Clone)]
pub struct CompositeDiagram {
    pub r2: RuleWC,
    pub r1: RuleWC,
    pub semantics: Semantics,
    /// `m2: M -> I2`, `m1: M -> O1`
    pub mu: Span,
    pub n21: Arc<Graph>,
    /// `I2 -> N21`
    pub m2p: Morphism,
    /// `O1 -> N21`
    pub m1p: Morphism,
    /// `K2 -> K2' -> N21`
    pub left_context: Complement,
    /// `K1 -> K1' -> N21`
    pub right_context: Complement,
    /// `O2 -> O21` and `K2' -> O21`
    pub o2_in: Morphism,
    pub k2p_in: Morphism,
    /// `I1 -> I21` and `K1' -> I21`
    pub p1: Morphism,
    pub k1p_in: Morphism,
    /// `K21 -> K2'` and `K21 -> K1'`
    pub k21_left: Morphism,
    pub k21_right: Morphism,
    /// The composite rule `O21 <- K21 -> I21` with its condition.
    pub composite: RuleWC,
    /// Notes from strict mode.
    pub warnings: Vec<String>,
}

impl CompositeDiagram {
    pub fn o21(&self) -> &Arc<Graph> {
        self.composite.rule.output()
    }

    pub fn k21(&self) -> &Arc<Graph> {
        self.composite.rule.interface()
    }

    pub fn i21(&self) -> &Arc<Graph> {
        self.composite.rule.input()
    }

    /// Every square of the construction, tagged with the kind of universal
    /// property it must have.
    pub fn squares(&self) -> Vec<SquareWitness> {
        let left_kind = match self.semantics {
            Semantics::Dpo => SquareKind::PushoutComplement,
            Semantics::Sqpo => SquareKind::Fpc,
        };
        vec![
            // N21 = PO(I2 <- M -> O1)
            SquareWitness {
                top: self.mu.left.clone(),
                left: self.mu.right.clone(),
                right: self.m2p.clone(),
                bottom: self.m1p.clone(),
                kind: SquareKind::Pushout,
            },
            self.left_context.square(self.r2.rule.i(), &self.m2p, left_kind),
            self.right_context.square(self.r1.rule.o(), &self.m1p, SquareKind::PushoutComplement),
            SquareWitness {
                top: self.r2.rule.o().clone(),
                left: self.left_context.k.clone(),
                right: self.o2_in.clone(),
                bottom: self.k2p_in.clone(),
                kind: SquareKind::Pushout,
            },
            SquareWitness {
                top: self.r1.rule.i().clone(),
                left: self.right_context.k.clone(),
                right: self.p1.clone(),
                bottom: self.k1p_in.clone(),
                kind: SquareKind::Pushout,
            },
            SquareWitness {
                top: self.k21_left.clone(),
                left: self.k21_right.clone(),
                right: self.left_context.j.clone(),
                bottom: self.right_context.j.clone(),
                kind: SquareKind::Pullback,
            },
        ]
    }
}

/// Composes `R2` after `R1` along `mu`; `None` when a required pushout
/// complement does not exist or the composite condition simplifies to
/// `false`.
pub fn compose(r2: &RuleWC, mu: &Span, r1: &RuleWC, sem: Semantics) -> Result<Option<CompositeDiagram>> {
    compose_inner(r2, mu, r1, sem, None)
}

/// As [`compose`], additionally probing the composite condition for
/// satisfiability on `corpus` and recording a warning when no host
/// satisfies it. Such composites are still returned.
pub fn compose_strict(
    r2: &RuleWC,
    mu: &Span,
    r1: &RuleWC,
    sem: Semantics,
    corpus: &CorpusSpec,
) -> Result<Option<CompositeDiagram>> {
    compose_inner(r2, mu, r1, sem, Some(corpus))
}

fn compose_inner(
    r2: &RuleWC,
    mu: &Span,
    r1: &RuleWC,
    sem: Semantics,
    strict: Option<&CorpusSpec>,
) -> Result<Option<CompositeDiagram>> {
    if r2.rule.flavor() != r1.rule.flavor() {
        return Err(Error::FlavorMismatch);
    }
    if !mu.left.is_mono() || !mu.right.is_mono() {
        return Err(Error::NotMono);
    }
    let mu = Span {
        left: mu.left.with_cod(r2.rule.input().clone()),
        right: mu.right.with_cod(r1.rule.output().clone()),
    };
    let n = pushout(&mu.left, &mu.right)?;
    let (m2p, m1p) = (n.from_left, n.from_right);

    let left_context = match sem {
        Semantics::Dpo => match pushout_complement(r2.rule.i(), &m2p)? {
            Some(c) => c,
            None => return Ok(None),
        },
        Semantics::Sqpo => final_pullback_complement(r2.rule.i(), &m2p)?,
    };
    let Some(right_context) = pushout_complement(r1.rule.o(), &m1p)? else {
        return Ok(None);
    };

    let out = pushout(r2.rule.o(), &left_context.k)?;
    let inp = pushout(r1.rule.i(), &right_context.k)?;
    let (o2_in, k2p_in) = (out.from_left, out.from_right);
    let (p1, k1p_in) = (inp.from_left, inp.from_right);

    let k21 = pullback(&left_context.j, &right_context.j)?;
    let o21 = k21.to_left.then(&k2p_in)?;
    let i21 = k21.to_right.then(&k1p_in)?;
    let rule = Rule::new(o21, i21)?;

    let back = Rule::new(right_context.j.clone(), k1p_in.clone())?;
    let from_first = shift(&p1, &r1.cond)?;
    let from_second = trans(&back, &shift(&m2p, &r2.cond)?)?;
    let cond = simplify(&Condition::and(p1.cod().clone(), vec![from_first, from_second])?);
    if cond.is_false() {
        return Ok(None);
    }
    let mut warnings = Vec::new();
    if let Some(corpus) = strict {
        if !satisfiable_on_corpus(&cond, corpus) {
            warnings.push(format!("composite condition unsatisfiable on corpus ({})", corpus.describe()));
        }
    }
    let composite = RuleWC::new(rule, cond)?;
    Ok(Some(CompositeDiagram {
        r2: r2.clone(),
        r1: r1.clone(),
        semantics: sem,
        mu,
        n21: n.object,
        m2p,
        m1p,
        left_context,
        right_context,
        o2_in,
        k2p_in,
        p1,
        k1p_in,
        k21_left: k21.to_left,
        k21_right: k21.to_right,
        composite,
        warnings,
    }))
}

/// Every successful composite of `R2` after `R1`, paired with the index of
/// its overlap in [`enumerate_rule_overlaps`].
pub fn compose_all(r2: &RuleWC, r1: &RuleWC, sem: Semantics) -> Result<Vec<(usize, CompositeDiagram)>> {
    let overlaps = enumerate_rule_overlaps(r2, r1)?;
    let results: Vec<Result<Option<CompositeDiagram>>> =
        overlaps.par_iter().map(|mu| compose(r2, mu, r1, sem)).collect();
    let mut out = Vec::new();
    for (k, r) in results.into_iter().enumerate() {
        if let Some(d) = r? {
            out.push((k, d));
        }
    }
    Ok(out)
}

/// Identifier pairs of a span's legs, for reporting.
pub fn span_summary(mu: &Span) -> Vec<(Id, Id, Id)> {
    mu.apex().vertices().iter().map(|&v| (v, mu.left.v(v), mu.right.v(v))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catops::coproduct;
    use crate::equivalence::{check_equivalence, EquivMode};
    use crate::graph::Flavor;
    use crate::matching::are_isomorphic;
    use crate::universal::verify_universal;

    const D: Flavor = Flavor::Directed;

    fn e_plus() -> RuleWC {
        let r = Rule::edge_addition(D);
        let i = r.input().clone();
        let with_edge = Arc::new(Graph::new(D, [0, 1], [(0, 0, 1)]).unwrap());
        let c = Condition::not(Condition::exists_plain(Morphism::inclusion(i, with_edge).unwrap()).unwrap());
        RuleWC::new(r, c).unwrap()
    }

    fn rules_iso(a: &Rule, b: &Rule) -> bool {
        [(a.output(), b.output()), (a.interface(), b.interface()), (a.input(), b.input())]
            .iter()
            .all(|(x, y)| are_isomorphic(x, y).unwrap().is_some())
    }

    #[test]
    fn overlap_counts() {
        let v = RuleWC::plain(Rule::identity(Arc::new(Graph::discrete(D, 1))));
        assert_eq!(enumerate_rule_overlaps(&v, &v).unwrap().len(), 2);
        let t = RuleWC::trivial(D);
        assert_eq!(enumerate_rule_overlaps(&t, &v).unwrap().len(), 1);
        assert_eq!(enumerate_rule_overlaps(&v, &t).unwrap().len(), 1);
        // edge against edge: empty, 4 single vertices, 2 vertex pairings, the edge
        let e = RuleWC::plain(Rule::identity(Arc::new(Graph::path(D, 2))));
        let spans = enumerate_rule_overlaps(&e, &e).unwrap();
        let sizes: Vec<(usize, usize)> = spans.iter().map(|mu| (mu.apex().vertex_count(), mu.apex().edge_count())).collect();
        assert_eq!(spans.len(), 8);
        assert_eq!(sizes.iter().filter(|s| **s == (1, 0)).count(), 4);
        assert_eq!(sizes.iter().filter(|s| **s == (2, 0)).count(), 2);
        assert_eq!(sizes.iter().filter(|s| **s == (2, 1)).count(), 1);
    }

    #[test]
    fn add_then_delete_is_identity_with_condition() {
        let plus = e_plus();
        let minus = RuleWC::plain(Rule::edge_deletion(D));
        let overlaps = enumerate_rule_overlaps(&minus, &plus).unwrap();
        let full = overlaps.iter().find(|mu| mu.apex().edge_count() == 1 && mu.right.v(0) == 0).unwrap();
        let d = compose(&minus, full, &plus, Semantics::Dpo).unwrap().unwrap();
        let two = Arc::new(Graph::discrete(D, 2));
        let id = Rule::identity(two);
        assert!(rules_iso(&d.composite.rule, &id));
        for sq in d.squares() {
            assert!(verify_universal(&sq).unwrap(), "{:?}", sq.kind);
        }
        // condition: no edge between the images of the two vertices
        let want = plus.cond.reroot(&d.p1.inverse().unwrap());
        let mode = EquivMode::Dot(d.composite.rule.clone(), Semantics::Dpo);
        let v = check_equivalence(&want, &d.composite.cond, &CorpusSpec::default(), &mode).unwrap();
        assert!(v.is_equivalent(), "{v:?}");
    }

    #[test]
    fn empty_overlap_is_parallel_composition() {
        let a = RuleWC::plain(Rule::edge_deletion(D));
        let b = RuleWC::plain(Rule::vertex_creation(D));
        let overlaps = enumerate_rule_overlaps(&a, &b).unwrap();
        let d = compose(&a, &overlaps[0], &b, Semantics::Dpo).unwrap().unwrap();
        let ii = coproduct(a.rule.input(), b.rule.input()).unwrap();
        let oo = coproduct(a.rule.output(), b.rule.output()).unwrap();
        assert!(are_isomorphic(d.i21(), &ii.object).unwrap().is_some());
        assert!(are_isomorphic(d.o21(), &oo.object).unwrap().is_some());
    }

    #[test]
    fn neutral_element_both_sides() {
        let r = e_plus();
        let t = RuleWC::trivial(D);
        for sem in [Semantics::Dpo, Semantics::Sqpo] {
            for (x, y) in [(&r, &t), (&t, &r)] {
                let mu = &enumerate_rule_overlaps(x, y).unwrap()[0];
                let d = compose(x, mu, y, sem).unwrap().unwrap();
                assert!(rules_iso(&d.composite.rule, &r.rule));
                let iso = are_isomorphic(d.i21(), r.rule.input()).unwrap().unwrap();
                let moved = r.cond.reroot(&iso);
                let v = check_equivalence(&moved, &d.composite.cond, &CorpusSpec::small(), &EquivMode::Plain).unwrap();
                assert!(v.is_equivalent(), "{v:?}");
            }
        }
    }

    #[test]
    fn trivial_match_condition_collapses() {
        // c_I2 = ¬∃(I2 ↪ I2 + O1): gluing R1's output next to I2 violates it
        let v = Arc::new(Graph::discrete(D, 1));
        let r1 = RuleWC::plain(Rule::vertex_creation(D));
        let cp = coproduct(&v, r1.rule.output()).unwrap();
        let c = Condition::not(Condition::exists_plain(cp.inl.clone()).unwrap());
        let r2 = RuleWC::new(Rule::identity(v), c).unwrap();
        let mu = &enumerate_rule_overlaps(&r2, &r1).unwrap()[0];
        assert!(compose(&r2, mu, &r1, Semantics::Dpo).unwrap().is_none());
    }
}
