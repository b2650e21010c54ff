//! The associativity bijection between the two bracketings of a triple
//! composition.
//!
//! `M_A` collects the admissible pairs `(μ21, μ3(21))` and `M_B` the pairs
//! `(μ32, μ(32)1)`. Two elements correspond when the generic three-step
//! derivations they induce (each final composite applied at the identity of
//! its own input) are isomorphic as derivations; the theorem says every
//! element has exactly one partner, with isomorphic composite rules and
//! dot-equivalent composite conditions.

use std::sync::Arc;

use rayon::prelude::*;
use serde_json::json;

use crate::catops::{factor_through_mono, pushout_mediator, Pushout};
use crate::composition::{compose, enumerate_rule_overlaps, CompositeDiagram};
use crate::equivalence::{check_equivalence, satisfiable_on_corpus, CorpusSpec, EquivMode, Verdict};
use crate::error::Result;
use crate::graph::Graph;
use crate::io::rule_doc;
use crate::laws::concurrency::{analysis_with, concurrency_iso};
use crate::laws::LawReport;
use crate::matching::{isos_extending, mono_extensions, Pins};
use crate::morphism::Morphism;
use crate::rule::{RewriteStep, Rule, RuleWC, Semantics};

/// One bracketing's final composite with the overlap indices that led to it.
#[derive(Debug, Clone)]
pub struct Element {
    pub outer: usize,
    pub inner: usize,
    pub diagram: CompositeDiagram,
}

/// A generic three-step derivation `X0 => X1 => X2 => X3` with
/// `X0 = I_final`.
#[derive(Debug, Clone)]
struct Derivation {
    x0: Arc<Graph>,
    steps: [RewriteStep; 3],
    /// `I3 -> X2`
    m3: Morphism,
}

fn all_composites(r2: &RuleWC, r1: &RuleWC, sem: Semantics) -> Result<Vec<(usize, CompositeDiagram)>> {
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

/// `M_A = {(μ21, μ3(21))}`.
pub fn left_bracketing(r1: &RuleWC, r2: &RuleWC, r3: &RuleWC, sem: Semantics) -> Result<Vec<(Element, CompositeDiagram)>> {
    let mut out = Vec::new();
    for (k, c21) in all_composites(r2, r1, sem)? {
        for (l, c) in all_composites(r3, &c21.composite, sem)? {
            out.push((Element { outer: k, inner: l, diagram: c }, c21.clone()));
        }
    }
    Ok(out)
}

/// `M_B = {(μ32, μ(32)1)}`.
pub fn right_bracketing(r1: &RuleWC, r2: &RuleWC, r3: &RuleWC, sem: Semantics) -> Result<Vec<(Element, CompositeDiagram)>> {
    let mut out = Vec::new();
    for (k, c32) in all_composites(r3, r2, sem)? {
        for (l, c) in all_composites(&c32.composite, r1, sem)? {
            out.push((Element { outer: k, inner: l, diagram: c }, c32.clone()));
        }
    }
    Ok(out)
}

fn derivation_a(outer: &CompositeDiagram, inner: &CompositeDiagram) -> Result<Derivation> {
    // outer = R3 ∘ R21 at id; inner = R2 ∘ R1
    let x0 = outer.i21().clone();
    let id = Morphism::identity(x0.clone());
    let (s21, s3) = analysis_with(outer, &id, &x0, false)?;
    let (s1, s2) = analysis_with(inner, &s21.m, &x0, false)?;
    let psi = concurrency_iso(inner, &s21, &s1, &s2)?;
    let m3 = s3.m.with_cod(s21.result.clone()).then(&psi)?;
    let s3 = crate::rule::apply(&RuleWC::plain(outer.r2.rule.clone()), &s2.result, &m3, outer.semantics)?;
    Ok(Derivation { x0, steps: [s1, s2, s3], m3 })
}

fn derivation_b(outer: &CompositeDiagram, inner: &CompositeDiagram) -> Result<Derivation> {
    // outer = R32 ∘ R1 at id; inner = R3 ∘ R2
    let x0 = outer.i21().clone();
    let id = Morphism::identity(x0.clone());
    let (s1, s32) = analysis_with(outer, &id, &x0, false)?;
    let (s2, s3) = analysis_with(inner, &s32.m, &s1.result, false)?;
    let m3 = s3.m.clone();
    Ok(Derivation { x0, steps: [s1, s2, s3], m3 })
}

/// Isomorphism of the step's result induced by an isomorphism `phi` of its
/// host that carries one match to the other.
fn induced(a: &RewriteStep, b: &RewriteStep, phi: &Morphism) -> Option<Morphism> {
    let ctx = a.context.j.then(phi).ok()?;
    let ctx = factor_through_mono(&ctx, &b.context.j)?;
    let po = Pushout { object: a.result.clone(), from_left: a.comatch.clone(), from_right: a.h.clone() };
    pushout_mediator(&po, &b.comatch, &ctx.then(&b.h).ok()?).ok()
}

/// An isomorphism `X0^a -> X0^b` making the two derivations isomorphic.
fn derivation_iso(a: &Derivation, b: &Derivation) -> Option<Morphism> {
    if a.x0.vertex_count() != b.x0.vertex_count() || a.x0.edge_count() != b.x0.edge_count() {
        return None;
    }
    let pins = Pins::factoring(&a.steps[0].m, &b.steps[0].m);
    let candidates = isos_extending(&a.x0, &b.x0, &pins).ok()?;
    'next: for phi0 in candidates {
        if a.steps[0].m.then(&phi0).ok()? != b.steps[0].m {
            continue;
        }
        let mut phi = phi0.clone();
        let matches = [(&a.steps[1].m, &b.steps[1].m), (&a.m3, &b.m3)];
        for (k, (ma, mb)) in matches.iter().enumerate() {
            let Some(next) = induced(&a.steps[k], &b.steps[k], &phi) else { continue 'next };
            if ma.then(&next).ok()?.sort_key() != mb.sort_key() {
                continue 'next;
            }
            phi = next;
        }
        return Some(phi0);
    }
    None
}

/// Whether two rules are isomorphic through a given isomorphism of inputs.
fn rule_iso_over(a: &Rule, b: &Rule, iota_i: &Morphism) -> bool {
    let Some(iota_k) = factor_through_mono(&a.i().then(iota_i).unwrap(), b.i()) else { return false };
    if !iota_k.is_iso() {
        return false;
    }
    let pins = Pins::factoring(a.o(), &iota_k.then(b.o()).unwrap());
    matches!(mono_extensions(a.output(), b.output(), &pins), Ok(v) if v.iter().any(|m| m.is_iso()))
}

/// Outcome of one associativity instance.
#[derive(Debug, Clone, Default)]
pub struct AssocOutcome {
    pub left: usize,
    pub right: usize,
    /// Elements dropped because their composite condition is unsatisfiable
    /// on every admissible corpus match.
    pub dropped: usize,
    pub failures: Vec<String>,
}

/// Runs the bijection check for one rule triple.
pub fn associativity_outcome(
    r1: &RuleWC,
    r2: &RuleWC,
    r3: &RuleWC,
    sem: Semantics,
    corpus: &CorpusSpec,
) -> Result<AssocOutcome> {
    let ma = left_bracketing(r1, r2, r3, sem)?;
    let mb = right_bracketing(r1, r2, r3, sem)?;
    let mut out = AssocOutcome { left: ma.len(), right: mb.len(), ..Default::default() };

    let da: Vec<Result<Derivation>> = ma.par_iter().map(|(e, inner)| derivation_a(&e.diagram, inner)).collect();
    let db: Vec<Result<Derivation>> = mb.par_iter().map(|(e, inner)| derivation_b(&e.diagram, inner)).collect();
    let da: Vec<Derivation> = match da.into_iter().collect() {
        Ok(v) => v,
        Err(e) => {
            out.failures.push(format!("left bracketing does not decompose: {e}"));
            return Ok(out);
        }
    };
    let db: Vec<Derivation> = match db.into_iter().collect() {
        Ok(v) => v,
        Err(e) => {
            out.failures.push(format!("right bracketing does not decompose: {e}"));
            return Ok(out);
        }
    };

    // partner search
    let pairs: Vec<Vec<(usize, Morphism)>> = da
        .par_iter()
        .map(|a| db.iter().enumerate().filter_map(|(j, b)| derivation_iso(a, b).map(|phi| (j, phi))).collect())
        .collect();
    let mut taken = vec![0usize; db.len()];
    let mut unmatched_a = Vec::new();
    for (i, ps) in pairs.iter().enumerate() {
        match ps.len() {
            0 => unmatched_a.push(i),
            1 => taken[ps[0].0] += 1,
            n => out.failures.push(format!("left element {i} has {n} partners")),
        }
    }
    for (j, &t) in taken.iter().enumerate() {
        if t > 1 {
            out.failures.push(format!("right element {j} is the partner of {t} left elements"));
        }
    }
    let unmatched_b: Vec<usize> = (0..db.len()).filter(|&j| taken[j] == 0).collect();

    // unmatched elements are acceptable only if semantically false
    let vacuous = |d: &CompositeDiagram| !satisfiable_on_corpus(&d.composite.cond, corpus);
    for &i in &unmatched_a {
        if vacuous(&ma[i].0.diagram) {
            out.dropped += 1;
        } else {
            out.failures.push(format!("left element {i} ({}, {}) has no partner", ma[i].0.outer, ma[i].0.inner));
        }
    }
    for &j in &unmatched_b {
        if vacuous(&mb[j].0.diagram) {
            out.dropped += 1;
        } else {
            out.failures.push(format!("right element {j} ({}, {}) has no partner", mb[j].0.outer, mb[j].0.inner));
        }
    }

    // partners: isomorphic rules and dot-equivalent conditions
    let checks: Vec<Option<String>> = pairs
        .par_iter()
        .enumerate()
        .filter(|(_, ps)| ps.len() == 1)
        .map(|(i, ps)| {
            let (j, phi) = &ps[0];
            let a = &ma[i].0.diagram.composite;
            let b = &mb[*j].0.diagram.composite;
            if !rule_iso_over(&a.rule, &b.rule, phi) {
                return Some(format!("left {i} / right {j}: composite rules are not isomorphic"));
            }
            let moved = a.cond.reroot(&phi.inverse().expect("iso"));
            let mode = EquivMode::Dot(b.rule.clone(), sem);
            match check_equivalence(&moved, &b.cond, corpus, &mode) {
                Ok(Verdict::EquivalentOnCorpus { .. }) => None,
                Ok(Verdict::Counterexample { host, morphism, lhs, rhs }) => Some(format!(
                    "left {i} / right {j}: conditions differ on {host} at {morphism} ({lhs} vs {rhs})"
                )),
                Err(e) => Some(format!("left {i} / right {j}: {e}")),
            }
        })
        .collect();
    out.failures.extend(checks.into_iter().flatten());
    Ok(out)
}

fn rules_json(r1: &RuleWC, r2: &RuleWC, r3: &RuleWC) -> serde_json::Value {
    serde_json::Value::Array(
        [r1, r2, r3]
            .iter()
            .map(|r| serde_json::to_value(rule_doc(&r.rule, Some(&r.cond))).expect("documents serialize"))
            .collect(),
    )
}

/// [`associativity_outcome`] packaged as a report with the rules attached to
/// any failure.
pub fn associativity_check(
    r1: &RuleWC,
    r2: &RuleWC,
    r3: &RuleWC,
    sem: Semantics,
    corpus: &CorpusSpec,
) -> LawReport {
    let mut report = LawReport::new(format!("associativity-{sem}"));
    report.bound = Some(corpus.describe());
    report.instances = 1;
    match associativity_outcome(r1, r2, r3, sem, corpus) {
        Ok(o) if o.failures.is_empty() => {}
        Ok(o) => report.failures.push(json!({
            "rules": rules_json(r1, r2, r3),
            "left": o.left,
            "right": o.right,
            "problems": o.failures,
        })),
        Err(e) => report.failures.push(json!({
            "rules": rules_json(r1, r2, r3),
            "error": e.to_string(),
        })),
    }
    report
}
