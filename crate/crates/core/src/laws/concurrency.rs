//! Synthesis and analysis of two-step derivations.

use std::sync::Arc;

use crate::catops::{factor_through_mono, pullback, pushout_mediator, Pushout};
use crate::composition::{compose, CompositeDiagram};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::morphism::{same_graph, Morphism, Span};
use crate::rule::{apply, is_admissible, RewriteStep, RuleWC, Semantics};

/// Output of [`synthesis`].
#[derive(Debug, Clone)]
pub struct Synthesis {
    pub mu: Span,
    pub m21: Morphism,
    pub comp: CompositeDiagram,
    /// The composite applied at `m21`.
    pub step: RewriteStep,
}

fn fail(msg: impl Into<String>) -> Error {
    Error::NonComposableSteps(msg.into())
}

/// Combines `X0 =R1=> X1 =R2=> X2` into one application of a composite.
///
/// The overlap is the pullback of the second match and the first comatch;
/// the composite match `I21 -> X0` is the mediator out of the pushout `I21`.
pub fn synthesis(s1: &RewriteStep, s2: &RewriteStep, sem: Semantics) -> Result<Synthesis> {
    if s1.semantics != sem || s2.semantics != sem {
        return Err(fail("steps use different semantics"));
    }
    if !same_graph(&s1.result, &s2.host) {
        return Err(fail("second step does not start where the first ends"));
    }
    let m2 = s2.m.with_cod(s1.result.clone());
    let pb = pullback(&m2, &s1.comatch)?;
    let mu = Span::new(pb.to_left, pb.to_right)?;
    let comp = compose(&s2.rule, &mu, &s1.rule, sem)?.ok_or_else(|| fail("the composite is not admissible"))?;

    let n = Pushout { object: comp.n21.clone(), from_left: comp.m2p.clone(), from_right: comp.m1p.clone() };
    let u = pushout_mediator(&n, &m2, &s1.comatch)?;
    let k1p = comp.right_context.j.then(&u)?;
    let into_ctx = factor_through_mono(&k1p, &s1.h).ok_or_else(|| fail("K1' does not land in the context"))?;
    let g = into_ctx.then(&s1.context.j)?;
    let i21 = Pushout { object: comp.i21().clone(), from_left: comp.p1.clone(), from_right: comp.k1p_in.clone() };
    let m21 = pushout_mediator(&i21, &s1.m, &g)?;
    if !m21.is_mono() {
        return Err(fail("induced composite match is not mono"));
    }
    if !is_admissible(&comp.composite, &m21, sem)? {
        return Err(fail("induced composite match is not admissible"));
    }
    let step = apply(&comp.composite, &s1.host, &m21, sem)?;
    Ok(Synthesis { mu, m21, comp, step })
}

/// Splits an application of a composite into its two steps.
pub fn analysis(comp: &CompositeDiagram, m21: &Morphism, x0: &Arc<Graph>) -> Result<(RewriteStep, RewriteStep)> {
    analysis_with(comp, m21, x0, true)
}

/// As [`analysis`]; with `check = false` the rules' conditions are ignored.
pub(crate) fn analysis_with(
    comp: &CompositeDiagram,
    m21: &Morphism,
    x0: &Arc<Graph>,
    check: bool,
) -> Result<(RewriteStep, RewriteStep)> {
    let sem = comp.semantics;
    let (r1, r2) = if check {
        (comp.r1.clone(), comp.r2.clone())
    } else {
        (RuleWC::plain(comp.r1.rule.clone()), RuleWC::plain(comp.r2.rule.clone()))
    };
    let m21 = m21.with_dom(comp.i21().clone()).with_cod(x0.clone());
    let m1 = comp.p1.then(&m21)?;
    let s1 = apply(&r1, x0, &m1, sem)?;
    let k1p = comp.k1p_in.then(&m21)?;
    let into_ctx = factor_through_mono(&k1p, &s1.context.j)
        .ok_or_else(|| Error::InadmissibleMatch("K1' is not preserved by the first step".into()))?;
    let n = Pushout { object: comp.n21.clone(), from_left: comp.right_context.j.clone(), from_right: comp.m1p.clone() };
    let u = pushout_mediator(&n, &into_ctx.then(&s1.h)?, &s1.comatch)?;
    let m2 = comp.m2p.then(&u)?;
    let s2 = apply(&r2, &s1.result, &m2, sem)?;
    Ok((s1, s2))
}

/// The isomorphism `X2' -> X2` between the result of the composite step and
/// the result of its analysis, built from the universal properties of the
/// left squares.
pub fn concurrency_iso(
    comp: &CompositeDiagram,
    composite_step: &RewriteStep,
    s1: &RewriteStep,
    s2: &RewriteStep,
) -> Result<Morphism> {
    let bad = || fail("analysis does not track the composite step");
    // N21 -> X1
    let k1p = comp.k1p_in.then(&composite_step.m)?;
    let k1p_ctx = factor_through_mono(&k1p, &s1.context.j).ok_or_else(bad)?;
    let n = Pushout { object: comp.n21.clone(), from_left: comp.right_context.j.clone(), from_right: comp.m1p.clone() };
    let u = pushout_mediator(&n, &k1p_ctx.then(&s1.h)?, &s1.comatch)?;
    // O21 -> X2
    let k2p = comp.left_context.j.then(&u)?;
    let k2p_ctx = factor_through_mono(&k2p, &s2.context.j).ok_or_else(bad)?;
    let o21 = Pushout { object: comp.o21().clone(), from_left: comp.o2_in.clone(), from_right: comp.k2p_in.clone() };
    let f = pushout_mediator(&o21, &s2.comatch, &k2p_ctx.then(&s2.h)?)?;
    // composite context -> X2: it is a subgraph of the first context
    let ctx = &composite_step.context;
    let in_first = factor_through_mono(&ctx.j, &s1.context.j).ok_or_else(bad)?;
    let in_x1 = in_first.then(&s1.h)?;
    let in_second = factor_through_mono(&in_x1, &s2.context.j).ok_or_else(bad)?;
    let g = in_second.then(&s2.h)?;
    let x2p = Pushout {
        object: composite_step.result.clone(),
        from_left: composite_step.comatch.clone(),
        from_right: composite_step.h.clone(),
    };
    let psi = pushout_mediator(&x2p, &f, &g)?;
    if !psi.is_iso() {
        return Err(bad());
    }
    Ok(psi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Flavor;
    use crate::matching::are_isomorphic;
    use crate::rule::{enumerate_matches_arc, Rule};

    const D: Flavor = Flavor::Directed;

    #[test]
    fn add_then_delete_round_trip() {
        let plus = RuleWC::plain(Rule::edge_addition(D));
        let minus = RuleWC::plain(Rule::edge_deletion(D));
        let x0 = Arc::new(Graph::discrete(D, 2));
        for sem in [Semantics::Dpo, Semantics::Sqpo] {
            let m1 = &enumerate_matches_arc(&plus, &x0, sem).unwrap()[0];
            let s1 = apply(&plus, &x0, m1, sem).unwrap();
            let m2 = s1.comatch.clone();
            let s2 = apply(&minus, &s1.result, &m2, sem).unwrap();
            let syn = synthesis(&s1, &s2, sem).unwrap();
            assert!(are_isomorphic(&syn.step.result, &x0).unwrap().is_some());
            let (t1, t2) = analysis(&syn.comp, &syn.m21, &x0).unwrap();
            assert_eq!(t1.m, s1.m);
            assert_eq!(t2.m, s2.m.with_cod(t1.result.clone()));
            let psi = concurrency_iso(&syn.comp, &syn.step, &t1, &t2).unwrap();
            assert!(psi.is_iso());
        }
    }

    #[test]
    fn sqpo_deletion_then_creation() {
        let del = RuleWC::plain(Rule::vertex_deletion(D));
        let add = RuleWC::plain(Rule::vertex_creation(D));
        let x0 = Arc::new(Graph::new(D, [0, 1], [(0, 0, 1)]).unwrap());
        let sem = Semantics::Sqpo;
        let m1 = &enumerate_matches_arc(&del, &x0, sem).unwrap()[0];
        let s1 = apply(&del, &x0, m1, sem).unwrap();
        let m2 = &enumerate_matches_arc(&add, &s1.result, sem).unwrap()[0];
        let s2 = apply(&add, &s1.result, m2, sem).unwrap();
        let syn = synthesis(&s1, &s2, sem).unwrap();
        assert!(are_isomorphic(&syn.step.result, &s2.result).unwrap().is_some());
    }
}
