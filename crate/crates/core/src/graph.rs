//! Finite directed and undirected multigraphs.
//!
//! Vertices and edges carry opaque `u32` identifiers. Vertices are kept
//! sorted, edges are kept sorted by identifier, and undirected edges store
//! their endpoints as an ordered pair `(min, max)`. Self-loops and parallel
//! edges are allowed in both flavors.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Sort};

pub type Id = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Directed,
    Undirected,
}

impl Flavor {
    /// Endpoint pair in the stored orientation.
    #[inline]
    pub fn normalize(self, src: Id, tgt: Id) -> (Id, Id) {
        match self {
            Flavor::Directed => (src, tgt),
            Flavor::Undirected => (src.min(tgt), src.max(tgt)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub id: Id,
    pub src: Id,
    pub tgt: Id,
}

impl Edge {
    pub fn ends(&self) -> (Id, Id) {
        (self.src, self.tgt)
    }

    pub fn is_loop(&self) -> bool {
        self.src == self.tgt
    }

    pub fn touches(&self, v: Id) -> bool {
        self.src == v || self.tgt == v
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    flavor: Flavor,
    vertices: Vec<Id>,
    edges: Vec<Edge>,
}

impl Graph {
    /// Builds a validated graph. Edge endpoints are given as `(id, src, tgt)`.
    pub fn new(
        flavor: Flavor,
        vertices: impl IntoIterator<Item = Id>,
        edges: impl IntoIterator<Item = (Id, Id, Id)>,
    ) -> Result<Graph> {
        let mut vs: Vec<Id> = vertices.into_iter().collect();
        vs.sort_unstable();
        if let Some(w) = vs.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateId { sort: Sort::Vertex, id: w[0] });
        }
        let mut es = Vec::new();
        for (id, s, t) in edges {
            for v in [s, t] {
                if vs.binary_search(&v).is_err() {
                    return Err(Error::DanglingEndpoint { edge: id, vertex: v });
                }
            }
            let (src, tgt) = flavor.normalize(s, t);
            es.push(Edge { id, src, tgt });
        }
        es.sort_unstable_by_key(|e| e.id);
        if let Some(w) = es.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(Error::DuplicateId { sort: Sort::Edge, id: w[0].id });
        }
        Ok(Graph { flavor, vertices: vs, edges: es })
    }

    /// Construction from parts that are already known to be consistent.
    pub(crate) fn from_sorted_parts(flavor: Flavor, vertices: Vec<Id>, edges: Vec<Edge>) -> Graph {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges.windows(2).all(|w| w[0].id < w[1].id));
        debug_assert!(edges.iter().all(|e| {
            vertices.binary_search(&e.src).is_ok()
                && vertices.binary_search(&e.tgt).is_ok()
                && flavor.normalize(e.src, e.tgt) == (e.src, e.tgt)
        }));
        Graph { flavor, vertices, edges }
    }

    pub(crate) fn from_unsorted_parts(flavor: Flavor, mut vertices: Vec<Id>, mut edges: Vec<Edge>) -> Graph {
        vertices.sort_unstable();
        for e in edges.iter_mut() {
            let (s, t) = flavor.normalize(e.src, e.tgt);
            e.src = s;
            e.tgt = t;
        }
        edges.sort_unstable_by_key(|e| e.id);
        Graph::from_sorted_parts(flavor, vertices, edges)
    }

    pub fn empty(flavor: Flavor) -> Graph {
        Graph { flavor, vertices: Vec::new(), edges: Vec::new() }
    }

    /// `n` isolated vertices `0..n`.
    pub fn discrete(flavor: Flavor, n: u32) -> Graph {
        Graph { flavor, vertices: (0..n).collect(), edges: Vec::new() }
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn vertices(&self) -> &[Id] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    #[inline]
    pub fn vertex_index(&self, v: Id) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    #[inline]
    pub fn edge_index(&self, e: Id) -> Option<usize> {
        self.edges.binary_search_by_key(&e, |x| x.id).ok()
    }

    pub fn has_vertex(&self, v: Id) -> bool {
        self.vertex_index(v).is_some()
    }

    pub fn has_edge(&self, e: Id) -> bool {
        self.edge_index(e).is_some()
    }

    pub fn edge(&self, e: Id) -> Option<&Edge> {
        self.edge_index(e).map(|i| &self.edges[i])
    }

    pub fn next_vertex_id(&self) -> Id {
        self.vertices.last().map_or(0, |v| v + 1)
    }

    pub fn next_edge_id(&self) -> Id {
        self.edges.last().map_or(0, |e| e.id + 1)
    }

    /// Edges whose endpoints are `(a, b)` in stored orientation.
    pub fn edges_between(&self, a: Id, b: Id) -> impl Iterator<Item = &Edge> + '_ {
        let (s, t) = self.flavor.normalize(a, b);
        self.edges.iter().filter(move |e| e.src == s && e.tgt == t)
    }

    /// The subgraph spanned by the given vertex and edge identifiers.
    /// Edges whose endpoints are not kept are rejected.
    pub fn subgraph(&self, vertices: &BTreeSet<Id>, edges: &BTreeSet<Id>) -> Result<Graph> {
        let vs: Vec<Id> = self.vertices.iter().copied().filter(|v| vertices.contains(v)).collect();
        let mut es = Vec::with_capacity(edges.len());
        for e in self.edges.iter().filter(|e| edges.contains(&e.id)) {
            for v in [e.src, e.tgt] {
                if !vertices.contains(&v) {
                    return Err(Error::DanglingEndpoint { edge: e.id, vertex: v });
                }
            }
            es.push(*e);
        }
        Ok(Graph::from_sorted_parts(self.flavor, vs, es))
    }

    /// Adds a fresh vertex and returns its identifier.
    pub fn add_vertex(&mut self) -> Id {
        let v = self.next_vertex_id();
        self.vertices.push(v);
        v
    }

    /// Adds a fresh edge between existing vertices and returns its identifier.
    pub fn add_edge(&mut self, src: Id, tgt: Id) -> Result<Id> {
        let id = self.next_edge_id();
        for v in [src, tgt] {
            if !self.has_vertex(v) {
                return Err(Error::DanglingEndpoint { edge: id, vertex: v });
            }
        }
        let (src, tgt) = self.flavor.normalize(src, tgt);
        self.edges.push(Edge { id, src, tgt });
        Ok(id)
    }

    /// Directed cycle (or undirected ring) on `n >= 1` vertices.
    pub fn cycle(flavor: Flavor, n: u32) -> Graph {
        let es = (0..n).map(|i| (i, i, (i + 1) % n));
        Graph::new(flavor, 0..n, es).expect("cycle is well formed")
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(flavor: Flavor, n: u32) -> Graph {
        let es = (0..n.saturating_sub(1)).map(|i| (i, i, i + 1));
        Graph::new(flavor, 0..n, es).expect("path is well formed")
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arrow = match self.flavor {
            Flavor::Directed => "->",
            Flavor::Undirected => "--",
        };
        write!(f, "{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, " |")?;
        for e in &self.edges {
            write!(f, " {}:{}{}{}", e.id, e.src, arrow, e.tgt)?;
        }
        write!(f, "}}")
    }
}
