//! Canonical forms for small multigraphs.
//!
//! Individualization/refinement: colors are refined to an equitable
//! partition, then the first non-singleton cell is split by individualizing
//! each of its vertices in turn. Interchangeable vertices (twins) are tried
//! once per cell, since swapping twins is an automorphism. The canonical form
//! is the lexicographically least adjacency-multiplicity matrix over all
//! leaves of the search tree.

use std::collections::HashMap;
use std::sync::Arc;

use crate::graph::{Flavor, Graph, Id};
use crate::morphism::Morphism;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonForm {
    pub flavor: Flavor,
    pub vertex_count: usize,
    /// Row-major multiplicities in canonical vertex order.
    pub matrix: Vec<u16>,
}

/// Canonical form together with the labeling that realizes it:
/// `order[k]` is the vertex index placed at canonical position `k`.
#[derive(Debug, Clone)]
pub struct Labeling {
    pub form: CanonForm,
    pub order: Vec<usize>,
}

struct Ctx {
    n: usize,
    adj: Vec<u16>,
}

impl Ctx {
    #[inline]
    fn m(&self, i: usize, j: usize) -> u16 {
        self.adj[i * self.n + j]
    }

    fn refine(&self, mut colors: Vec<usize>) -> Vec<usize> {
        let n = self.n;
        let mut cells = count_distinct(&colors);
        loop {
            let sigs: Vec<(usize, Vec<(usize, u16, u16)>)> = (0..n)
                .map(|i| {
                    let mut nb: Vec<(usize, u16, u16)> = (0..n)
                        .filter(|&j| j != i && (self.m(i, j) > 0 || self.m(j, i) > 0))
                        .map(|j| (colors[j], self.m(i, j), self.m(j, i)))
                        .collect();
                    nb.sort_unstable();
                    (colors[i], nb)
                })
                .collect();
            let mut distinct: Vec<&(usize, Vec<(usize, u16, u16)>)> = sigs.iter().collect();
            distinct.sort();
            distinct.dedup();
            colors = sigs
                .iter()
                .map(|s| distinct.binary_search(&s).unwrap())
                .collect();
            let now = distinct.len();
            if now == cells {
                return colors;
            }
            cells = now;
        }
    }

    fn twins(&self, v: usize, w: usize) -> bool {
        if self.m(v, v) != self.m(w, w) || self.m(v, w) != self.m(w, v) {
            return false;
        }
        (0..self.n)
            .filter(|&x| x != v && x != w)
            .all(|x| self.m(v, x) == self.m(w, x) && self.m(x, v) == self.m(x, w))
    }

    fn encode(&self, colors: &[usize]) -> (Vec<u16>, Vec<usize>) {
        let mut order = vec![0; self.n];
        for (i, &c) in colors.iter().enumerate() {
            order[c] = i;
        }
        let mut mat = Vec::with_capacity(self.n * self.n);
        for &i in &order {
            for &j in &order {
                mat.push(self.m(i, j));
            }
        }
        (mat, order)
    }

    fn search(&self, colors: Vec<usize>, best: &mut Option<(Vec<u16>, Vec<usize>)>) {
        let colors = self.refine(colors);
        let n = self.n;
        // pick the first non-singleton cell
        let mut size = vec![0usize; n];
        for &c in &colors {
            size[c] += 1;
        }
        let Some(target) = (0..n).find(|&c| size[c] > 1) else {
            let (mat, order) = self.encode(&colors);
            if best.as_ref().is_none_or(|(b, _)| mat < *b) {
                *best = Some((mat, order));
            }
            return;
        };
        let cell: Vec<usize> = (0..n).filter(|&i| colors[i] == target).collect();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cell {
            if tried.iter().any(|&w| self.twins(v, w)) {
                continue;
            }
            tried.push(v);
            let next: Vec<usize> = colors
                .iter()
                .enumerate()
                .map(|(i, &c)| if i == v { 2 * c } else { 2 * c + 1 })
                .collect();
            self.search(next, best);
        }
    }
}

fn count_distinct(xs: &[usize]) -> usize {
    let mut v = xs.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

pub fn labeling(g: &Graph) -> Labeling {
    let n = g.vertex_count();
    let mut adj = vec![0u16; n * n];
    for e in g.edges() {
        let s = g.vertex_index(e.src).unwrap();
        let t = g.vertex_index(e.tgt).unwrap();
        adj[s * n + t] += 1;
        if g.flavor() == Flavor::Undirected && s != t {
            adj[t * n + s] += 1;
        }
    }
    let ctx = Ctx { n, adj };
    let mut best = None;
    ctx.search(vec![0; n], &mut best);
    let (matrix, order) = best.unwrap_or_default();
    Labeling { form: CanonForm { flavor: g.flavor(), vertex_count: n, matrix }, order }
}

pub fn canonical_form(g: &Graph) -> CanonForm {
    labeling(g).form
}

/// Isomorphism between graphs with equal canonical forms.
pub fn isomorphism(a: &Arc<Graph>, b: &Arc<Graph>) -> Option<Morphism> {
    let la = labeling(a);
    let lb = labeling(b);
    if la.form != lb.form {
        return None;
    }
    let mut vmap = vec![0; a.vertex_count()];
    for (k, &i) in la.order.iter().enumerate() {
        vmap[i] = b.vertices()[lb.order[k]];
    }
    let img = |v: Id| vmap[a.vertex_index(v).unwrap()];
    let mut pool: HashMap<(Id, Id), Vec<Id>> = HashMap::new();
    for e in b.edges().iter().rev() {
        pool.entry(e.ends()).or_default().push(e.id);
    }
    let mut emap = Vec::with_capacity(a.edge_count());
    for e in a.edges() {
        let key = a.flavor().normalize(img(e.src), img(e.tgt));
        emap.push(pool.get_mut(&key)?.pop()?);
    }
    Some(Morphism::unchecked(a.clone(), b.clone(), vmap, emap))
}

/// Structure-only copy of `g` relabeled into canonical order, with
/// vertices `0..n` and edges numbered by canonical position.
pub fn canonical_graph(g: &Graph) -> Graph {
    let l = labeling(g);
    let n = l.form.vertex_count;
    let mut edges = Vec::new();
    let mut id = 0;
    for i in 0..n {
        let lo = if g.flavor() == Flavor::Undirected { i } else { 0 };
        for j in lo..n {
            for _ in 0..l.form.matrix[i * n + j] {
                edges.push((id, i as Id, j as Id));
                id += 1;
            }
        }
    }
    Graph::new(g.flavor(), 0..n as Id, edges).expect("canonical graph is well formed")
}
