//! The classic construction of `shift`: all jointly epic mono cospans,
//! obtained as quotients of the pushout `Q +_P A`.
//!
//! Used only as an oracle for the overlap-span construction in
//! [`crate::shift`].

use std::collections::HashMap;
use std::sync::Arc;

use crate::catops::pushout;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Id};
use crate::morphism::{Cospan, Morphism};

/// Every mono cospan `Q -r-> E <-s- A` with `r ∘ p = s ∘ a` and `E` covered
/// by the images of `r` and `s`, one per isomorphism class.
pub fn classic_shift_oracle(p: &Morphism, a: &Morphism) -> Result<Vec<Cospan>> {
    if !p.is_mono() || !a.is_mono() {
        return Err(Error::NotMono);
    }
    let po = pushout(p, a)?;
    let s_obj = &po.object;
    // items of S that lie only in the image of Q, resp. only of A
    let in_q_v: Vec<bool> = s_obj.vertices().iter().map(|&v| po.from_left.vmap().contains(&v)).collect();
    let in_a_v: Vec<bool> = s_obj.vertices().iter().map(|&v| po.from_right.vmap().contains(&v)).collect();
    let q_only: Vec<Id> = s_obj.vertices().iter().zip(&in_q_v).zip(&in_a_v).filter(|((_, &q), &a)| q && !a).map(|((v, _), _)| *v).collect();
    let a_only: Vec<Id> = s_obj.vertices().iter().zip(&in_q_v).zip(&in_a_v).filter(|((_, &q), &a)| !q && a).map(|((v, _), _)| *v).collect();
    let qe: Vec<Id> = s_obj.edges().iter().filter(|e| po.from_left.emap().contains(&e.id) && !po.from_right.emap().contains(&e.id)).map(|e| e.id).collect();
    let ae: Vec<Id> = s_obj.edges().iter().filter(|e| !po.from_left.emap().contains(&e.id) && po.from_right.emap().contains(&e.id)).map(|e| e.id).collect();

    let mut out = Vec::new();
    let mut vmerge: HashMap<Id, Id> = HashMap::new();
    vertex_matchings(&q_only, &a_only, 0, &mut vmerge, &mut |vm| {
        let rep = |v: Id| *vm.get(&v).unwrap_or(&v);
        let mut emerge: HashMap<Id, Id> = HashMap::new();
        edge_matchings(s_obj, &qe, &ae, 0, &rep, &mut emerge, &mut |em| {
            out.push(quotient(&po.from_left, &po.from_right, &rep, em));
        });
    });
    Ok(out)
}

// Partial injections from `a_only` into `q_only`, as a map a-vertex -> q-vertex.
fn vertex_matchings(
    q_only: &[Id],
    a_only: &[Id],
    k: usize,
    acc: &mut HashMap<Id, Id>,
    emit: &mut dyn FnMut(&HashMap<Id, Id>),
) {
    if k == a_only.len() {
        emit(acc);
        return;
    }
    vertex_matchings(q_only, a_only, k + 1, acc, emit);
    for &q in q_only {
        if acc.values().any(|&x| x == q) {
            continue;
        }
        acc.insert(a_only[k], q);
        vertex_matchings(q_only, a_only, k + 1, acc, emit);
        acc.remove(&a_only[k]);
    }
}

fn edge_matchings(
    s: &Graph,
    qe: &[Id],
    ae: &[Id],
    k: usize,
    rep: &dyn Fn(Id) -> Id,
    acc: &mut HashMap<Id, Id>,
    emit: &mut dyn FnMut(&HashMap<Id, Id>),
) {
    if k == ae.len() {
        emit(acc);
        return;
    }
    edge_matchings(s, qe, ae, k + 1, rep, acc, emit);
    let ea = s.edge(ae[k]).unwrap();
    let ends_a = s.flavor().normalize(rep(ea.src), rep(ea.tgt));
    for &q in qe {
        if acc.values().any(|&x| x == q) {
            continue;
        }
        let eq = s.edge(q).unwrap();
        if s.flavor().normalize(rep(eq.src), rep(eq.tgt)) != ends_a {
            continue;
        }
        acc.insert(ae[k], q);
        edge_matchings(s, qe, ae, k + 1, rep, acc, emit);
        acc.remove(&ae[k]);
    }
}

fn quotient(r: &Morphism, s: &Morphism, vrep: &dyn Fn(Id) -> Id, emerge: &HashMap<Id, Id>) -> Cospan {
    let obj = r.cod();
    let erep = |e: Id| *emerge.get(&e).unwrap_or(&e);
    let vertices: Vec<Id> = obj.vertices().iter().copied().filter(|&v| vrep(v) == v).collect();
    let edges: Vec<Edge> = obj
        .edges()
        .iter()
        .filter(|e| erep(e.id) == e.id)
        .map(|e| Edge { id: e.id, src: vrep(e.src), tgt: vrep(e.tgt) })
        .collect();
    let e = Arc::new(Graph::new(obj.flavor(), vertices, edges.iter().map(|e| (e.id, e.src, e.tgt))).expect("quotient"));
    let push = |m: &Morphism| {
        Morphism::from_vecs(
            m.dom().clone(),
            e.clone(),
            m.vmap().iter().map(|&v| vrep(v)).collect(),
            m.emap().iter().map(|&x| erep(x)).collect(),
        )
        .expect("quotient map")
    };
    Cospan::new(push(r), push(s)).expect("shared target")
}

/// Whether two cospans out of the same pair of graphs are isomorphic: an
/// isomorphism of targets commuting with both legs. Both must be jointly
/// epic.
pub fn cospans_isomorphic(c1: &Cospan, c2: &Cospan) -> bool {
    let (t1, t2) = (c1.target(), c2.target());
    if t1.vertex_count() != t2.vertex_count() || t1.edge_count() != t2.edge_count() {
        return false;
    }
    let mut vm: HashMap<Id, Id> = HashMap::new();
    let mut em: HashMap<Id, Id> = HashMap::new();
    for (x, y) in [(&c1.left, &c2.left), (&c1.right, &c2.right)] {
        for (a, b) in x.vmap().iter().zip(y.vmap()) {
            if *vm.entry(*a).or_insert(*b) != *b {
                return false;
            }
        }
        for (a, b) in x.emap().iter().zip(y.emap()) {
            if *em.entry(*a).or_insert(*b) != *b {
                return false;
            }
        }
    }
    if vm.len() != t1.vertex_count() || em.len() != t1.edge_count() {
        return false;
    }
    let vmap: Vec<Id> = t1.vertices().iter().map(|v| vm[v]).collect();
    let emap: Vec<Id> = t1.edges().iter().map(|e| em[&e.id]).collect();
    Morphism::from_vecs(t1.clone(), t2.clone(), vmap, emap).is_ok_and(|m| m.is_iso())
}
