//! Pushouts, pullbacks, pushout complements and final pullback complements.
//!
//! Identifier policy: a pushout along a mono `f: A -> B` keeps every
//! identifier of the other codomain `C` and allocates fresh identifiers for
//! `B \ f(A)`; a pullback whose leg `g` is mono reuses the identifiers of
//! the other leg's domain; complements are subgraphs of the host.

use std::collections::{hash_map::Entry, BTreeSet, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{Edge, Flavor, Graph, Id};
use crate::morphism::{same_graph, Cospan, Morphism, Span};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum SquareKind {
    Pushout,
    Pullback,
    PushoutComplement,
    Fpc,
}

/// A commuting square
///
/// ```text
///   A --top--> B
///   |          |
///  left      right
///   v          v
///   C -bottom-> D
/// ```
///
/// For complements the roles are `A = K`, `B = I`, `C = K'`, `D = X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareWitness {
    pub top: Morphism,
    pub left: Morphism,
    pub right: Morphism,
    pub bottom: Morphism,
    pub kind: SquareKind,
}

impl SquareWitness {
    pub fn new(top: Morphism, left: Morphism, right: Morphism, bottom: Morphism, kind: SquareKind) -> Result<Self> {
        let sq = SquareWitness { top, left, right, bottom, kind };
        if !sq.commutes() {
            return Err(Error::DomainMismatch);
        }
        Ok(sq)
    }

    pub fn commutes(&self) -> bool {
        match (self.top.then(&self.right), self.left.then(&self.bottom)) {
            (Ok(a), Ok(b)) => a.vmap() == b.vmap() && a.emap() == b.emap(),
            _ => false,
        }
    }

    pub fn retag(mut self, kind: SquareKind) -> Self {
        self.kind = kind;
        self
    }
}

#[derive(Debug, Clone)]
pub struct Pushout {
    pub object: Arc<Graph>,
    /// `B -> D`
    pub from_left: Morphism,
    /// `C -> D`
    pub from_right: Morphism,
}

/// Pushout of `B <-f- A -g-> C`; at least one leg must be mono.
pub fn pushout(f: &Morphism, g: &Morphism) -> Result<Pushout> {
    if !same_graph(f.dom(), g.dom()) {
        return Err(Error::DomainMismatch);
    }
    if f.flavor() != g.flavor() {
        return Err(Error::FlavorMismatch);
    }
    if f.is_mono() {
        Ok(pushout_keep_right(f, g))
    } else if g.is_mono() {
        let po = pushout_keep_right(g, f);
        Ok(Pushout { object: po.object, from_left: po.from_right, from_right: po.from_left })
    } else {
        Err(Error::NoMonoLeg)
    }
}

// `f` mono: D = C plus fresh copies of B \ f(A).
fn pushout_keep_right(f: &Morphism, g: &Morphism) -> Pushout {
    let b = f.cod();
    let c = g.cod();
    let mut vimg: HashMap<Id, Id> = HashMap::with_capacity(b.vertex_count());
    for (av, bv) in f.vertex_pairs() {
        vimg.insert(bv, g.v(av));
    }
    let mut eimg: HashMap<Id, Id> = HashMap::with_capacity(b.edge_count());
    for (ae, be) in f.edge_pairs() {
        eimg.insert(be, g.e(ae));
    }
    let mut vertices = c.vertices().to_vec();
    let mut next = c.next_vertex_id();
    for &v in b.vertices() {
        vimg.entry(v).or_insert_with(|| {
            vertices.push(next);
            next += 1;
            next - 1
        });
    }
    let mut edges = c.edges().to_vec();
    let mut next = c.next_edge_id();
    for e in b.edges() {
        if let Entry::Vacant(slot) = eimg.entry(e.id) {
            slot.insert(next);
            edges.push(Edge { id: next, src: vimg[&e.src], tgt: vimg[&e.tgt] });
            next += 1;
        }
    }
    let d = Arc::new(Graph::from_unsorted_parts(c.flavor(), vertices, edges));
    let from_left = Morphism::unchecked(
        b.clone(),
        d.clone(),
        b.vertices().iter().map(|v| vimg[v]).collect(),
        b.edges().iter().map(|e| eimg[&e.id]).collect(),
    );
    let from_right = Morphism::unchecked(
        c.clone(),
        d.clone(),
        c.vertices().to_vec(),
        c.edges().iter().map(|e| e.id).collect(),
    );
    Pushout { object: d, from_left, from_right }
}

/// Pushout of a span, returned as a cospan plus its witness square.
pub fn pushout_span(s: &Span) -> Result<(Cospan, SquareWitness)> {
    let po = pushout(&s.left, &s.right)?;
    let sq = SquareWitness {
        top: s.left.clone(),
        left: s.right.clone(),
        right: po.from_left.clone(),
        bottom: po.from_right.clone(),
        kind: SquareKind::Pushout,
    };
    Ok((Cospan { left: po.from_left, right: po.from_right }, sq))
}

#[derive(Debug, Clone)]
pub struct Pullback {
    pub apex: Arc<Graph>,
    /// `P -> B`
    pub to_left: Morphism,
    /// `P -> C`
    pub to_right: Morphism,
}

/// Pullback of `B -f-> D <-g- C`.
pub fn pullback(f: &Morphism, g: &Morphism) -> Result<Pullback> {
    if !same_graph(f.cod(), g.cod()) {
        return Err(Error::DomainMismatch);
    }
    if f.flavor() != g.flavor() {
        return Err(Error::FlavorMismatch);
    }
    let b = f.dom();
    let c = g.dom();
    let flavor = f.flavor();
    let mut gv: HashMap<Id, Vec<Id>> = HashMap::new();
    for (x, y) in g.vertex_pairs() {
        gv.entry(y).or_default().push(x);
    }
    let mut ge: HashMap<Id, Vec<Id>> = HashMap::new();
    for (x, y) in g.edge_pairs() {
        ge.entry(y).or_default().push(x);
    }
    // which side's identifiers to reuse
    let policy = if g.is_mono() { 0 } else if f.is_mono() { 1 } else { 2 };
    let pick = |counter: &mut Id, x: Id, y: Id| match policy {
        0 => x,
        1 => y,
        _ => {
            *counter += 1;
            *counter - 1
        }
    };

    let mut vpairs: Vec<(Id, Id, Id)> = Vec::new();
    let mut vid: HashMap<(Id, Id), Id> = HashMap::new();
    let mut counter = 0;
    for (x, img) in f.vertex_pairs() {
        for &y in gv.get(&img).map(Vec::as_slice).unwrap_or(&[]) {
            let id = pick(&mut counter, x, y);
            vid.insert((x, y), id);
            vpairs.push((id, x, y));
        }
    }
    let mut epairs: Vec<(Id, Id, Id)> = Vec::new();
    let mut edges = Vec::new();
    let mut counter = 0;
    for (ex, img) in f.edge_pairs() {
        for &ey in ge.get(&img).map(Vec::as_slice).unwrap_or(&[]) {
            let bx = b.edge(ex).unwrap();
            let cy = c.edge(ey).unwrap();
            let straight = f.v(bx.src) == g.v(cy.src) && f.v(bx.tgt) == g.v(cy.tgt);
            let crossed = flavor == Flavor::Undirected
                && f.v(bx.src) == g.v(cy.tgt)
                && f.v(bx.tgt) == g.v(cy.src);
            let mut ends = Vec::with_capacity(2);
            if straight {
                ends.push(((bx.src, cy.src), (bx.tgt, cy.tgt)));
            }
            // two non-loops over a loop pair up both ways
            if crossed && (!straight || (bx.src != bx.tgt && cy.src != cy.tgt)) {
                ends.push(((bx.src, cy.tgt), (bx.tgt, cy.src)));
            }
            for (s, t) in ends {
                let id = pick(&mut counter, ex, ey);
                edges.push(Edge { id, src: vid[&s], tgt: vid[&t] });
                epairs.push((id, ex, ey));
            }
        }
    }
    let apex = Arc::new(Graph::from_unsorted_parts(flavor, vpairs.iter().map(|p| p.0).collect(), edges));
    vpairs.sort_unstable();
    epairs.sort_unstable();
    let to_left = Morphism::unchecked(
        apex.clone(),
        b.clone(),
        vpairs.iter().map(|p| p.1).collect(),
        epairs.iter().map(|p| p.1).collect(),
    );
    let to_right = Morphism::unchecked(
        apex.clone(),
        c.clone(),
        vpairs.iter().map(|p| p.2).collect(),
        epairs.iter().map(|p| p.2).collect(),
    );
    Ok(Pullback { apex, to_left, to_right })
}

/// Pullback of a cospan, returned as a span plus its witness square.
pub fn pullback_cospan(c: &Cospan) -> Result<(Span, SquareWitness)> {
    let pb = pullback(&c.left, &c.right)?;
    let sq = SquareWitness {
        top: pb.to_left.clone(),
        left: pb.to_right.clone(),
        right: c.left.clone(),
        bottom: c.right.clone(),
        kind: SquareKind::Pullback,
    };
    Ok((Span { left: pb.to_left, right: pb.to_right }, sq))
}

/// Result of a pushout or final pullback complement of `K -i-> I -m-> X`.
#[derive(Debug, Clone)]
pub struct Complement {
    pub object: Arc<Graph>,
    /// `K -> K'`
    pub k: Morphism,
    /// `K' -> X`
    pub j: Morphism,
}

impl Complement {
    pub fn square(&self, i: &Morphism, m: &Morphism, kind: SquareKind) -> SquareWitness {
        SquareWitness { top: i.clone(), left: self.k.clone(), right: m.clone(), bottom: self.j.clone(), kind }
    }
}

struct Deleted {
    vertices: BTreeSet<Id>,
    edges: BTreeSet<Id>,
}

fn deleted_part(i: &Morphism, m: &Morphism) -> Result<Deleted> {
    if !same_graph(i.cod(), m.dom()) {
        return Err(Error::DomainMismatch);
    }
    if !i.is_mono() || !m.is_mono() {
        return Err(Error::NotMono);
    }
    let i_dom = i.cod();
    let kept_v: BTreeSet<Id> = i.vmap().iter().copied().collect();
    let kept_e: BTreeSet<Id> = i.emap().iter().copied().collect();
    let vertices = i_dom.vertices().iter().filter(|v| !kept_v.contains(v)).map(|&v| m.v(v)).collect();
    let edges = i_dom.edges().iter().filter(|e| !kept_e.contains(&e.id)).map(|e| m.e(e.id)).collect();
    Ok(Deleted { vertices, edges })
}

fn complement_from(i: &Morphism, m: &Morphism, keep_e: BTreeSet<Id>, del_v: &BTreeSet<Id>) -> Complement {
    let x = m.cod();
    let keep_v: BTreeSet<Id> = x.vertices().iter().copied().filter(|v| !del_v.contains(v)).collect();
    let obj = Arc::new(x.subgraph(&keep_v, &keep_e).expect("complement is a subgraph"));
    let k = Morphism::unchecked(
        i.dom().clone(),
        obj.clone(),
        i.vmap().iter().map(|&v| m.v(v)).collect(),
        i.emap().iter().map(|&e| m.e(e)).collect(),
    );
    let j = Morphism::inclusion(obj.clone(), x.clone()).expect("subgraph inclusion");
    Complement { object: obj, k, j }
}

/// Pushout complement of `K -i-> I -m-> X` (both mono); `None` when the
/// dangling condition fails.
pub fn pushout_complement(i: &Morphism, m: &Morphism) -> Result<Option<Complement>> {
    let del = deleted_part(i, m)?;
    let x = m.cod();
    let mut keep_e = BTreeSet::new();
    for e in x.edges() {
        if del.edges.contains(&e.id) {
            continue;
        }
        if del.vertices.contains(&e.src) || del.vertices.contains(&e.tgt) {
            return Ok(None);
        }
        keep_e.insert(e.id);
    }
    Ok(Some(complement_from(i, m, keep_e, &del.vertices)))
}

/// Final pullback complement of `K -i-> I -m-> X` (both mono): deletes the
/// matched items and every edge left dangling.
pub fn final_pullback_complement(i: &Morphism, m: &Morphism) -> Result<Complement> {
    let del = deleted_part(i, m)?;
    let x = m.cod();
    let keep_e = x
        .edges()
        .iter()
        .filter(|e| !del.edges.contains(&e.id) && !del.vertices.contains(&e.src) && !del.vertices.contains(&e.tgt))
        .map(|e| e.id)
        .collect();
    Ok(complement_from(i, m, keep_e, &del.vertices))
}

/// `f = m ∘ e` with `e` epi onto the image subgraph and `m` its inclusion.
pub fn epi_mono_factorize(f: &Morphism) -> (Morphism, Morphism) {
    let vs: BTreeSet<Id> = f.vmap().iter().copied().collect();
    let es: BTreeSet<Id> = f.emap().iter().copied().collect();
    let img = Arc::new(f.cod().subgraph(&vs, &es).expect("image is a subgraph"));
    let e = Morphism::unchecked(f.dom().clone(), img.clone(), f.vmap().to_vec(), f.emap().to_vec());
    let m = Morphism::inclusion(img, f.cod().clone()).expect("subgraph inclusion");
    (e, m)
}

#[derive(Debug, Clone)]
pub struct Coproduct {
    pub object: Arc<Graph>,
    pub inl: Morphism,
    pub inr: Morphism,
}

/// Disjoint union; identifiers of `a` are kept, those of `b` are shifted.
pub fn coproduct(a: &Arc<Graph>, b: &Arc<Graph>) -> Result<Coproduct> {
    if a.flavor() != b.flavor() {
        return Err(Error::FlavorMismatch);
    }
    let dv = a.next_vertex_id();
    let de = a.next_edge_id();
    let mut vertices = a.vertices().to_vec();
    vertices.extend(b.vertices().iter().map(|v| v + dv));
    let mut edges = a.edges().to_vec();
    edges.extend(b.edges().iter().map(|e| Edge { id: e.id + de, src: e.src + dv, tgt: e.tgt + dv }));
    let obj = Arc::new(Graph::from_sorted_parts(a.flavor(), vertices, edges));
    let inl = Morphism::inclusion(a.clone(), obj.clone()).expect("left injection");
    let inr = Morphism::unchecked(
        b.clone(),
        obj.clone(),
        b.vertices().iter().map(|v| v + dv).collect(),
        b.edges().iter().map(|e| e.id + de).collect(),
    );
    Ok(Coproduct { object: obj, inl, inr })
}

/// Copairing `[f, g]: A + B -> T` for a coproduct built by [`coproduct`].
pub fn copair(cp: &Coproduct, f: &Morphism, g: &Morphism) -> Result<Morphism> {
    if !same_graph(f.cod(), g.cod()) {
        return Err(Error::DomainMismatch);
    }
    let mut vmap = f.vmap().to_vec();
    vmap.extend_from_slice(g.vmap());
    let mut emap = f.emap().to_vec();
    emap.extend_from_slice(g.emap());
    Morphism::from_vecs(cp.object.clone(), f.cod().clone(), vmap, emap)
}

/// Unique mediating map out of a pushout object: `u` with
/// `u ∘ from_left = f` and `u ∘ from_right = g`.
pub fn pushout_mediator(po: &Pushout, f: &Morphism, g: &Morphism) -> Result<Morphism> {
    let d = &po.object;
    let mut vm: HashMap<Id, Id> = HashMap::new();
    let mut em: HashMap<Id, Id> = HashMap::new();
    for (leg, h) in [(&po.from_left, f), (&po.from_right, g)] {
        for ((_, x), (_, y)) in leg.vertex_pairs().zip(h.vertex_pairs()) {
            if *vm.entry(x).or_insert(y) != y {
                return Err(Error::DomainMismatch);
            }
        }
        for ((_, x), (_, y)) in leg.edge_pairs().zip(h.edge_pairs()) {
            if *em.entry(x).or_insert(y) != y {
                return Err(Error::DomainMismatch);
            }
        }
    }
    let vmap = d.vertices().iter().map(|v| vm.get(v).copied().ok_or(Error::DomainMismatch)).collect::<Result<_>>()?;
    let emap = d.edges().iter().map(|e| em.get(&e.id).copied().ok_or(Error::DomainMismatch)).collect::<Result<_>>()?;
    Morphism::from_vecs(d.clone(), f.cod().clone(), vmap, emap)
}

/// Mediating map into a pullback apex: `u` with `to_left ∘ u = x` and
/// `to_right ∘ u = y`.
pub fn pullback_mediator(pb: &Pullback, x: &Morphism, y: &Morphism) -> Result<Morphism> {
    let mut vidx: HashMap<(Id, Id), Id> = HashMap::new();
    for ((p, l), (_, r)) in pb.to_left.vertex_pairs().zip(pb.to_right.vertex_pairs()) {
        vidx.insert((l, r), p);
    }
    let mut eidx: HashMap<(Id, Id), Id> = HashMap::new();
    for ((p, l), (_, r)) in pb.to_left.edge_pairs().zip(pb.to_right.edge_pairs()) {
        eidx.insert((l, r), p);
    }
    let vmap = x
        .vmap()
        .iter()
        .zip(y.vmap())
        .map(|(a, b)| vidx.get(&(*a, *b)).copied().ok_or(Error::DomainMismatch))
        .collect::<Result<_>>()?;
    let emap = x
        .emap()
        .iter()
        .zip(y.emap())
        .map(|(a, b)| eidx.get(&(*a, *b)).copied().ok_or(Error::DomainMismatch))
        .collect::<Result<_>>()?;
    Morphism::from_vecs(x.dom().clone(), pb.apex.clone(), vmap, emap)
}

/// The map `a` restricted to its image inside a mono `m` it factors through:
/// returns `u` with `m ∘ u = a`, if any.
pub fn factor_through_mono(a: &Morphism, m: &Morphism) -> Option<Morphism> {
    if !same_graph(a.cod(), m.cod()) {
        return None;
    }
    let vinv: HashMap<Id, Id> = m.vertex_pairs().map(|(x, y)| (y, x)).collect();
    let einv: HashMap<Id, Id> = m.edge_pairs().map(|(x, y)| (y, x)).collect();
    let vmap = a.vmap().iter().map(|v| vinv.get(v).copied()).collect::<Option<Vec<_>>>()?;
    let emap = a.emap().iter().map(|e| einv.get(e).copied()).collect::<Option<Vec<_>>>()?;
    Morphism::from_vecs(a.dom().clone(), m.dom().clone(), vmap, emap).ok()
}
