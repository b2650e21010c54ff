//! Shifting conditions along monomorphisms.
//!
//! `shift(p: P -> Q, c)` is a condition over `Q` with `n ⊨ shift(p, c)` iff
//! `n ∘ p ⊨ c`. Existentials `∃(a: P -> A, c_A)` become a disjunction over
//! the overlap spans `Q <- X -> A` of `p` and `a`, each glued by a pushout.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::catops::pushout;
use crate::condition::{condition_iso, Condition};
use crate::error::{Error, Result};
use crate::graph::Id;
use crate::matching::{mono_extensions, Pins};
use crate::morphism::{same_graph, Morphism};
use crate::smallgraphs::subgraphs_containing;

/// A span `Q <-to_q- X -to_a-> A` under `P`, with `to_q ∘ x = p` and
/// `to_a ∘ x = a`. `X` is a subgraph of `Q` and `to_q` its inclusion.
#[derive(Debug, Clone)]
pub struct OverlapSpan {
    pub x: Morphism,
    pub to_q: Morphism,
    pub to_a: Morphism,
}

/// An overlap span together with its pushout `Q -r-> E <-s- A`.
#[derive(Debug, Clone)]
pub struct ShiftCospan {
    pub span: OverlapSpan,
    pub r: Morphism,
    pub s: Morphism,
}

fn check_pair(p: &Morphism, a: &Morphism) -> Result<()> {
    if !same_graph(p.dom(), a.dom()) {
        return Err(Error::DomainMismatch);
    }
    if p.flavor() != a.flavor() {
        return Err(Error::FlavorMismatch);
    }
    if !p.is_mono() || !a.is_mono() {
        return Err(Error::NotMono);
    }
    Ok(())
}

/// Every mono span over `(p, a)` up to isomorphism, including `X = P`.
///
/// Candidate apexes are the subgraphs of `Q` containing `p(P)`; their
/// embeddings into `A` must agree with `a` on `P`. Distinct (subgraph,
/// embedding) pairs are never isomorphic as spans, so no deduplication is
/// needed.
pub fn enumerate_overlap_spans(p: &Morphism, a: &Morphism) -> Result<Vec<OverlapSpan>> {
    check_pair(p, a)?;
    let q = p.cod();
    let big_a = a.cod();
    let base_v: BTreeSet<Id> = p.vmap().iter().copied().collect();
    let base_e: BTreeSet<Id> = p.emap().iter().copied().collect();
    let room_v = big_a.vertex_count() - p.dom().vertex_count();
    let room_e = big_a.edge_count() - p.dom().edge_count();
    let pins = Pins {
        vertices: p.vmap().iter().copied().zip(a.vmap().iter().copied()).collect(),
        edges: p.emap().iter().copied().zip(a.emap().iter().copied()).collect(),
    };
    let mut out = Vec::new();
    for xg in subgraphs_containing(q, &base_v, &base_e, room_v, room_e) {
        let xg = Arc::new(xg);
        for to_a in mono_extensions(&xg, big_a, &pins)? {
            let to_q = Morphism::inclusion(xg.clone(), q.clone()).expect("subgraph");
            let x = Morphism::unchecked(p.dom().clone(), xg.clone(), p.vmap().to_vec(), p.emap().to_vec());
            out.push(OverlapSpan { x, to_q, to_a });
        }
    }
    Ok(out)
}

/// Pushouts of every overlap span; `E` keeps the identifiers of `Q`.
pub fn shift_cospans(p: &Morphism, a: &Morphism) -> Result<Vec<ShiftCospan>> {
    enumerate_overlap_spans(p, a)?
        .into_iter()
        .map(|span| {
            let po = pushout(&span.to_a, &span.to_q)?;
            Ok(ShiftCospan { span, r: po.from_right, s: po.from_left })
        })
        .collect()
}

/// The shift of `c` along the mono `p`.
pub fn shift(p: &Morphism, c: &Condition) -> Result<Condition> {
    if !same_graph(p.dom(), c.root()) {
        return Err(Error::RootMismatch);
    }
    if !p.is_mono() {
        return Err(Error::NotMono);
    }
    shift_rec(p, c)
}

fn shift_rec(p: &Morphism, c: &Condition) -> Result<Condition> {
    let q = p.cod().clone();
    c.map_exists(&q, &mut |a, sub| {
        let a = a.with_dom(p.dom().clone());
        let mut disjuncts: Vec<Condition> = Vec::new();
        for cs in shift_cospans(p, &a)? {
            let inner = shift_rec(&cs.s, sub)?;
            let d = Condition::exists(cs.r.with_dom(q.clone()), inner)?;
            if !disjuncts.iter().any(|x| condition_iso(x, &d)) {
                disjuncts.push(d);
            }
        }
        Condition::or(q.clone(), disjuncts)
    })
}

/// Convenience: shift of `∃(a, true)` where only the pattern matters.
pub fn shift_exists(p: &Morphism, a: &Morphism) -> Result<Condition> {
    shift(p, &Condition::exists_plain(a.clone())?)
}
