//! Graph homomorphisms, spans and cospans.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result, Sort};
use crate::graph::{Flavor, Graph, Id};

/// A structure-preserving map between two graphs of the same flavor.
///
/// The vertex and edge maps are stored positionally: `vmap[i]` is the image
/// of `dom.vertices()[i]`, and likewise for edges.
#[derive(Clone)]
pub struct Morphism {
    dom: Arc<Graph>,
    cod: Arc<Graph>,
    vmap: Vec<Id>,
    emap: Vec<Id>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub is_mono: bool,
    pub is_epi: bool,
    pub is_iso: bool,
}

#[inline]
pub(crate) fn same_graph(a: &Arc<Graph>, b: &Arc<Graph>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Morphism {
    /// Validated constructor from identifier maps.
    pub fn new(
        dom: Arc<Graph>,
        cod: Arc<Graph>,
        vmap: &BTreeMap<Id, Id>,
        emap: &BTreeMap<Id, Id>,
    ) -> Result<Morphism> {
        let mut vs = Vec::with_capacity(dom.vertex_count());
        for &v in dom.vertices() {
            let w = *vmap.get(&v).ok_or(Error::NotTotal { sort: Sort::Vertex, id: v })?;
            vs.push(w);
        }
        let mut es = Vec::with_capacity(dom.edge_count());
        for e in dom.edges() {
            let w = *emap.get(&e.id).ok_or(Error::NotTotal { sort: Sort::Edge, id: e.id })?;
            es.push(w);
        }
        Morphism::from_vecs(dom, cod, vs, es)
    }

    /// Validated constructor from positional maps.
    pub fn from_vecs(dom: Arc<Graph>, cod: Arc<Graph>, vmap: Vec<Id>, emap: Vec<Id>) -> Result<Morphism> {
        if dom.flavor() != cod.flavor() {
            return Err(Error::FlavorMismatch);
        }
        if vmap.len() != dom.vertex_count() {
            let id = dom.vertices().get(vmap.len()).copied().unwrap_or_default();
            return Err(Error::NotTotal { sort: Sort::Vertex, id });
        }
        if emap.len() != dom.edge_count() {
            let id = dom.edges().get(emap.len()).map(|e| e.id).unwrap_or_default();
            return Err(Error::NotTotal { sort: Sort::Edge, id });
        }
        for (&v, &w) in dom.vertices().iter().zip(&vmap) {
            if !cod.has_vertex(w) {
                return Err(Error::UnknownImage { sort: Sort::Vertex, id: v });
            }
        }
        let m = Morphism { dom, cod, vmap, emap };
        for (i, e) in m.dom.edges().iter().enumerate() {
            let Some(img) = m.cod.edge(m.emap[i]) else {
                return Err(Error::UnknownImage { sort: Sort::Edge, id: e.id });
            };
            let want = m.dom.flavor().normalize(m.v(e.src), m.v(e.tgt));
            if want != img.ends() {
                return Err(Error::IncidenceViolation { edge: e.id });
            }
        }
        Ok(m)
    }

    /// Constructor for maps built by this crate's own algorithms.
    pub(crate) fn unchecked(dom: Arc<Graph>, cod: Arc<Graph>, vmap: Vec<Id>, emap: Vec<Id>) -> Morphism {
        let m = Morphism { dom, cod, vmap, emap };
        debug_assert!(
            Morphism::from_vecs(m.dom.clone(), m.cod.clone(), m.vmap.clone(), m.emap.clone()).is_ok(),
            "invalid internal morphism {m:?}"
        );
        m
    }

    pub fn identity(g: Arc<Graph>) -> Morphism {
        let vmap = g.vertices().to_vec();
        let emap = g.edges().iter().map(|e| e.id).collect();
        Morphism { dom: g.clone(), cod: g, vmap, emap }
    }

    /// Inclusion of a subgraph `sub` into `g` (identifiers are shared).
    pub fn inclusion(sub: Arc<Graph>, g: Arc<Graph>) -> Result<Morphism> {
        let vmap = sub.vertices().to_vec();
        let emap = sub.edges().iter().map(|e| e.id).collect();
        Morphism::from_vecs(sub, g, vmap, emap)
    }

    /// The unique morphism out of the empty graph.
    pub fn initial(g: Arc<Graph>) -> Morphism {
        Morphism {
            dom: Arc::new(Graph::empty(g.flavor())),
            cod: g,
            vmap: Vec::new(),
            emap: Vec::new(),
        }
    }

    pub fn dom(&self) -> &Arc<Graph> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<Graph> {
        &self.cod
    }

    pub fn flavor(&self) -> Flavor {
        self.dom.flavor()
    }

    pub fn vmap(&self) -> &[Id] {
        &self.vmap
    }

    pub fn emap(&self) -> &[Id] {
        &self.emap
    }

    /// Image of a vertex. Panics when `v` is not a vertex of the domain.
    #[inline]
    pub fn v(&self, v: Id) -> Id {
        self.vmap[self.dom.vertex_index(v).expect("vertex of the domain")]
    }

    /// Image of an edge. Panics when `e` is not an edge of the domain.
    #[inline]
    pub fn e(&self, e: Id) -> Id {
        self.emap[self.dom.edge_index(e).expect("edge of the domain")]
    }

    pub fn vertex_pairs(&self) -> impl Iterator<Item = (Id, Id)> + '_ {
        self.dom.vertices().iter().copied().zip(self.vmap.iter().copied())
    }

    pub fn edge_pairs(&self) -> impl Iterator<Item = (Id, Id)> + '_ {
        self.dom.edges().iter().map(|e| e.id).zip(self.emap.iter().copied())
    }

    pub fn vertex_map(&self) -> BTreeMap<Id, Id> {
        self.vertex_pairs().collect()
    }

    pub fn edge_map(&self) -> BTreeMap<Id, Id> {
        self.edge_pairs().collect()
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &Morphism) -> Result<Morphism> {
        if !same_graph(&self.cod, &g.dom) {
            return Err(Error::DomainMismatch);
        }
        let vmap = self.vmap.iter().map(|&v| g.v(v)).collect();
        let emap = self.emap.iter().map(|&e| g.e(e)).collect();
        Ok(Morphism { dom: self.dom.clone(), cod: g.cod.clone(), vmap, emap })
    }

    pub fn is_mono(&self) -> bool {
        injective(&self.vmap) && injective(&self.emap)
    }

    pub fn is_epi(&self) -> bool {
        surjective(&self.vmap, self.cod.vertex_count()) && surjective(&self.emap, self.cod.edge_count())
    }

    pub fn is_iso(&self) -> bool {
        self.dom.vertex_count() == self.cod.vertex_count()
            && self.dom.edge_count() == self.cod.edge_count()
            && self.is_mono()
    }

    pub fn classify(&self) -> Classification {
        let is_mono = self.is_mono();
        let is_epi = self.is_epi();
        Classification { is_mono, is_epi, is_iso: is_mono && is_epi }
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Option<Morphism> {
        if !self.is_iso() {
            return None;
        }
        let mut vs: Vec<(Id, Id)> = self.vertex_pairs().map(|(a, b)| (b, a)).collect();
        vs.sort_unstable();
        let mut es: Vec<(Id, Id)> = self.edge_pairs().map(|(a, b)| (b, a)).collect();
        es.sort_unstable();
        Some(Morphism {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            vmap: vs.into_iter().map(|p| p.1).collect(),
            emap: es.into_iter().map(|p| p.1).collect(),
        })
    }

    /// Same maps, with the codomain replaced by a structurally equal graph.
    pub fn with_cod(&self, cod: Arc<Graph>) -> Morphism {
        debug_assert!(*cod == *self.cod);
        Morphism { dom: self.dom.clone(), cod, vmap: self.vmap.clone(), emap: self.emap.clone() }
    }

    /// Same maps, with the domain replaced by a structurally equal graph.
    pub fn with_dom(&self, dom: Arc<Graph>) -> Morphism {
        debug_assert!(*dom == *self.dom);
        Morphism { dom, cod: self.cod.clone(), vmap: self.vmap.clone(), emap: self.emap.clone() }
    }

    /// Whether a vertex of the codomain lies in the image.
    pub fn covers_vertex(&self, v: Id) -> bool {
        self.vmap.contains(&v)
    }

    pub fn covers_edge(&self, e: Id) -> bool {
        self.emap.contains(&e)
    }

    /// Encoding used for deterministic ordering of enumeration results.
    pub fn sort_key(&self) -> (Vec<Id>, Vec<Id>) {
        (self.vmap.clone(), self.emap.clone())
    }
}

fn injective(xs: &[Id]) -> bool {
    let mut v = xs.to_vec();
    v.sort_unstable();
    v.windows(2).all(|w| w[0] != w[1])
}

fn surjective(xs: &[Id], n: usize) -> bool {
    let mut v = xs.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len() == n
}

impl PartialEq for Morphism {
    fn eq(&self, other: &Self) -> bool {
        self.vmap == other.vmap
            && self.emap == other.emap
            && same_graph(&self.dom, &other.dom)
            && same_graph(&self.cod, &other.cod)
    }
}

impl Eq for Morphism {}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} => {} [", self.dom, self.cod)?;
        for (a, b) in self.vertex_pairs() {
            write!(f, " {a}>{b}")?;
        }
        write!(f, " |")?;
        for (a, b) in self.edge_pairs() {
            write!(f, " {a}>{b}")?;
        }
        write!(f, " ]")
    }
}

/// Two morphisms out of a shared apex: `left.cod <- apex -> right.cod`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Span {
    pub left: Morphism,
    pub right: Morphism,
}

impl Span {
    pub fn new(left: Morphism, right: Morphism) -> Result<Span> {
        if !same_graph(left.dom(), right.dom()) {
            return Err(Error::DomainMismatch);
        }
        if left.flavor() != right.flavor() {
            return Err(Error::FlavorMismatch);
        }
        Ok(Span { left, right })
    }

    pub fn apex(&self) -> &Arc<Graph> {
        self.left.dom()
    }
}

/// Two morphisms into a shared target: `left.dom -> target <- right.dom`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cospan {
    pub left: Morphism,
    pub right: Morphism,
}

impl Cospan {
    pub fn new(left: Morphism, right: Morphism) -> Result<Cospan> {
        if !same_graph(left.cod(), right.cod()) {
            return Err(Error::DomainMismatch);
        }
        if left.flavor() != right.flavor() {
            return Err(Error::FlavorMismatch);
        }
        Ok(Cospan { left, right })
    }

    pub fn target(&self) -> &Arc<Graph> {
        self.left.cod()
    }
}
