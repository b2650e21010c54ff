//! Backtracking enumeration of graph morphisms.
//!
//! Vertices are assigned first, in a connectivity-driven order, with pairwise
//! edge-multiplicity pruning. Edges are then assigned explicitly, so a pattern
//! edge facing two parallel host edges yields two distinct morphisms.

use std::sync::Arc;

use crate::canon;
use crate::error::{Error, Result};
use crate::graph::{Flavor, Graph, Id};
use crate::morphism::Morphism;

/// Partial assignment that every enumerated morphism must extend.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Pins {
    pub vertices: Vec<(Id, Id)>,
    pub edges: Vec<(Id, Id)>,
}

impl Pins {
    pub fn new() -> Pins {
        Pins::default()
    }

    /// Pins requiring `q ∘ a = p` for the unknown `q: cod(a) -> cod(p)`.
    pub fn factoring(a: &Morphism, p: &Morphism) -> Pins {
        Pins {
            vertices: a.vmap().iter().copied().zip(p.vmap().iter().copied()).collect(),
            edges: a.emap().iter().copied().zip(p.emap().iter().copied()).collect(),
        }
    }
}

struct Host<'a> {
    g: &'a Graph,
    n: usize,
    // edges grouped by stored endpoint indices
    between: Vec<Vec<Id>>,
    out_deg: Vec<usize>,
    in_deg: Vec<usize>,
}

impl<'a> Host<'a> {
    fn new(g: &'a Graph) -> Host<'a> {
        let n = g.vertex_count();
        let mut between = vec![Vec::new(); n * n];
        let mut out_deg = vec![0; n];
        let mut in_deg = vec![0; n];
        for e in g.edges() {
            let s = g.vertex_index(e.src).unwrap();
            let t = g.vertex_index(e.tgt).unwrap();
            between[s * n + t].push(e.id);
            out_deg[s] += 1;
            in_deg[t] += 1;
        }
        Host { g, n, between, out_deg, in_deg }
    }

    #[inline]
    fn edges(&self, s: usize, t: usize) -> &[Id] {
        let (s, t) = match self.g.flavor() {
            Flavor::Directed => (s, t),
            Flavor::Undirected => (s.min(t), s.max(t)),
        };
        &self.between[s * self.n + t]
    }
}

struct PairCheck {
    earlier: usize,
    fwd: usize,
    bwd: usize,
}

struct Plan {
    order: Vec<usize>,
    checks: Vec<Vec<PairCheck>>,
    fixed: Vec<Option<usize>>,
    out_deg: Vec<usize>,
    in_deg: Vec<usize>,
}

fn plan(a: &Graph, pinned: &[Option<usize>]) -> Plan {
    let n = a.vertex_count();
    let mut adj = vec![vec![0usize; n]; n];
    let mut out_deg = vec![0; n];
    let mut in_deg = vec![0; n];
    for e in a.edges() {
        let s = a.vertex_index(e.src).unwrap();
        let t = a.vertex_index(e.tgt).unwrap();
        adj[s][t] += 1;
        out_deg[s] += 1;
        in_deg[t] += 1;
    }
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    for (i, p) in pinned.iter().enumerate() {
        if p.is_some() {
            order.push(i);
            placed[i] = true;
        }
    }
    while order.len() < n {
        let best = (0..n)
            .filter(|&i| !placed[i])
            .max_by_key(|&i| {
                let links: usize = order.iter().map(|&j| adj[i][j] + adj[j][i]).sum();
                (links, out_deg[i] + in_deg[i], std::cmp::Reverse(i))
            })
            .unwrap();
        placed[best] = true;
        order.push(best);
    }
    let undirected = a.flavor() == Flavor::Undirected;
    let checks = (0..n)
        .map(|k| {
            let u = order[k];
            (0..=k)
                .filter_map(|j| {
                    let w = order[j];
                    let (fwd, bwd) = if j == k {
                        (adj[u][u], 0)
                    } else if undirected {
                        (adj[w][u] + adj[u][w], 0)
                    } else {
                        (adj[w][u], adj[u][w])
                    };
                    (fwd + bwd > 0).then_some(PairCheck { earlier: j, fwd, bwd })
                })
                .collect()
        })
        .collect();
    let fixed = order.iter().map(|&i| pinned[i]).collect();
    Plan { order, checks, fixed, out_deg, in_deg }
}

/// Core search. The visitor receives positional vertex and edge maps and
/// returns `false` to stop the enumeration.
fn search(
    a: &Graph,
    b: &Graph,
    pins: &Pins,
    injective: bool,
    visit: &mut dyn FnMut(&[Id], &[Id]) -> bool,
) -> Result<()> {
    if a.flavor() != b.flavor() {
        return Err(Error::FlavorMismatch);
    }
    if injective && (a.vertex_count() > b.vertex_count() || a.edge_count() > b.edge_count()) {
        return Ok(());
    }
    let host = Host::new(b);
    let mut pinned_v: Vec<Option<usize>> = vec![None; a.vertex_count()];
    for &(x, y) in &pins.vertices {
        let (Some(i), Some(j)) = (a.vertex_index(x), b.vertex_index(y)) else {
            return Ok(());
        };
        match pinned_v[i] {
            Some(k) if k != j => return Ok(()),
            _ => pinned_v[i] = Some(j),
        }
    }
    let mut pinned_e: Vec<Option<Id>> = vec![None; a.edge_count()];
    for &(x, y) in &pins.edges {
        let (Some(i), true) = (a.edge_index(x), b.has_edge(y)) else {
            return Ok(());
        };
        match pinned_e[i] {
            Some(k) if k != y => return Ok(()),
            _ => pinned_e[i] = Some(y),
        }
    }
    let plan = plan(a, &pinned_v);
    let n = a.vertex_count();
    let mut assign = vec![usize::MAX; n];
    let mut used = vec![false; host.n];
    let mut st = State { a, host: &host, plan: &plan, injective, pinned_e: &pinned_e, visit, stop: false };
    st.vertices(0, &mut assign, &mut used);
    Ok(())
}

struct State<'s, 'h> {
    a: &'s Graph,
    host: &'s Host<'h>,
    plan: &'s Plan,
    injective: bool,
    pinned_e: &'s [Option<Id>],
    visit: &'s mut dyn FnMut(&[Id], &[Id]) -> bool,
    stop: bool,
}

impl State<'_, '_> {
    fn fits(&self, k: usize, x: usize, assign: &[usize]) -> bool {
        let u = self.plan.order[k];
        if self.injective {
            let (po, pi, ho, hi) = (self.plan.out_deg[u], self.plan.in_deg[u], self.host.out_deg[x], self.host.in_deg[x]);
            let short = match self.a.flavor() {
                Flavor::Directed => po > ho || pi > hi,
                // stored orientation is arbitrary: compare total degree
                Flavor::Undirected => po + pi > ho + hi,
            };
            if short {
                return false;
            }
        }
        for c in &self.plan.checks[k] {
            let y = if c.earlier == k { x } else { assign[self.plan.order[c.earlier]] };
            let (f, b) = if c.earlier == k {
                (self.host.edges(x, x).len(), 0)
            } else {
                (self.host.edges(y, x).len(), if c.bwd > 0 { self.host.edges(x, y).len() } else { 0 })
            };
            if self.injective {
                if self.a.flavor() == Flavor::Undirected && c.earlier != k {
                    if c.fwd > f {
                        return false;
                    }
                } else if c.fwd > f || c.bwd > b {
                    return false;
                }
            } else if (c.fwd > 0 && f == 0) || (c.bwd > 0 && b == 0) {
                return false;
            }
        }
        true
    }

    fn vertices(&mut self, k: usize, assign: &mut [usize], used: &mut [bool]) {
        if self.stop {
            return;
        }
        if k == self.plan.order.len() {
            let vmap: Vec<Id> = assign.iter().map(|&x| self.host.g.vertices()[x]).collect();
            let mut emap = vec![0; self.a.edge_count()];
            let mut used_e = Vec::new();
            self.edges(0, assign, &vmap, &mut emap, &mut used_e);
            return;
        }
        let u = self.plan.order[k];
        let candidates: Vec<usize> = match self.plan.fixed[k] {
            Some(x) => vec![x],
            None => (0..self.host.n).collect(),
        };
        for x in candidates {
            if self.injective && used[x] {
                continue;
            }
            if !self.fits(k, x, assign) {
                continue;
            }
            assign[u] = x;
            used[x] = true;
            self.vertices(k + 1, assign, used);
            used[x] = false;
            assign[u] = usize::MAX;
            if self.stop {
                return;
            }
        }
    }

    fn edges(&mut self, j: usize, assign: &[usize], vmap: &[Id], emap: &mut [Id], used: &mut Vec<Id>) {
        if self.stop {
            return;
        }
        if j == self.a.edge_count() {
            if !(self.visit)(vmap, emap) {
                self.stop = true;
            }
            return;
        }
        let e = self.a.edges()[j];
        let s = assign[self.a.vertex_index(e.src).unwrap()];
        let t = assign[self.a.vertex_index(e.tgt).unwrap()];
        let cands = self.host.edges(s, t);
        if let Some(y) = self.pinned_e[j] {
            if cands.contains(&y) && !(self.injective && used.contains(&y)) {
                emap[j] = y;
                used.push(y);
                self.edges(j + 1, assign, vmap, emap, used);
                used.pop();
            }
            return;
        }
        for &y in cands {
            if self.injective && used.contains(&y) {
                continue;
            }
            emap[j] = y;
            used.push(y);
            self.edges(j + 1, assign, vmap, emap, used);
            used.pop();
            if self.stop {
                return;
            }
        }
    }
}

fn collect(a: &Arc<Graph>, b: &Arc<Graph>, pins: &Pins, injective: bool) -> Result<Vec<Morphism>> {
    let mut out = Vec::new();
    search(a, b, pins, injective, &mut |v, e| {
        out.push(Morphism::unchecked(a.clone(), b.clone(), v.to_vec(), e.to_vec()));
        true
    })?;
    out.sort_by_key(|m| m.sort_key());
    Ok(out)
}

/// All monomorphisms `a -> b`, sorted by their map encoding.
pub fn enumerate_monos(a: &Arc<Graph>, b: &Arc<Graph>) -> Result<Vec<Morphism>> {
    collect(a, b, &Pins::new(), true)
}

/// All homomorphisms `a -> b`, sorted by their map encoding.
pub fn enumerate_homs(a: &Arc<Graph>, b: &Arc<Graph>) -> Result<Vec<Morphism>> {
    collect(a, b, &Pins::new(), false)
}

/// Monomorphisms `a -> b` extending the given pins.
pub fn mono_extensions(a: &Arc<Graph>, b: &Arc<Graph>, pins: &Pins) -> Result<Vec<Morphism>> {
    collect(a, b, pins, true)
}

/// Homomorphisms `a -> b` extending the given pins.
pub fn hom_extensions(a: &Arc<Graph>, b: &Arc<Graph>, pins: &Pins) -> Result<Vec<Morphism>> {
    collect(a, b, pins, false)
}

/// Whether some mono extending `pins` satisfies `pred`; stops at the first hit.
pub fn any_mono_extension(
    a: &Arc<Graph>,
    b: &Arc<Graph>,
    pins: &Pins,
    mut pred: impl FnMut(&Morphism) -> bool,
) -> Result<bool> {
    let mut found = false;
    search(a, b, pins, true, &mut |v, e| {
        let m = Morphism::unchecked(a.clone(), b.clone(), v.to_vec(), e.to_vec());
        found = pred(&m);
        !found
    })?;
    Ok(found)
}

/// Number of monomorphisms, without materializing them.
pub fn count_monos(a: &Graph, b: &Graph) -> Result<usize> {
    let mut n = 0;
    search(a, b, &Pins::new(), true, &mut |_, _| {
        n += 1;
        true
    })?;
    Ok(n)
}

/// A witnessing isomorphism, if the graphs are isomorphic.
pub fn are_isomorphic(a: &Arc<Graph>, b: &Arc<Graph>) -> Result<Option<Morphism>> {
    if a.flavor() != b.flavor() {
        return Err(Error::FlavorMismatch);
    }
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return Ok(None);
    }
    if **a == **b {
        return Ok(Some(Morphism::identity(a.clone()).with_cod(b.clone())));
    }
    Ok(canon::isomorphism(a, b))
}

/// First isomorphism extending the pins, in enumeration order.
pub fn iso_extending(a: &Arc<Graph>, b: &Arc<Graph>, pins: &Pins) -> Result<Option<Morphism>> {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return Ok(None);
    }
    let mut hit = None;
    search(a, b, pins, true, &mut |v, e| {
        hit = Some(Morphism::unchecked(a.clone(), b.clone(), v.to_vec(), e.to_vec()));
        false
    })?;
    Ok(hit)
}

/// Every isomorphism `a -> b` extending the pins.
pub fn isos_extending(a: &Arc<Graph>, b: &Arc<Graph>, pins: &Pins) -> Result<Vec<Morphism>> {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return Ok(Vec::new());
    }
    mono_extensions(a, b, pins)
}
