//! Exhaustive generation of small graphs up to isomorphism.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

use crate::canon::{canonical_form, CanonForm};
use crate::graph::{Flavor, Graph, Id};

type Key = (Flavor, usize, usize);

fn cache() -> &'static Mutex<HashMap<Key, Arc<Vec<Arc<Graph>>>>> {
    static CACHE: OnceLock<Mutex<HashMap<Key, Arc<Vec<Arc<Graph>>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// One representative per isomorphism class of graphs with at most
/// `max_v` vertices and `max_e` edges, ordered by size then canonical form.
/// Results are memoized per bound.
pub fn all_graphs(flavor: Flavor, max_v: usize, max_e: usize) -> Arc<Vec<Arc<Graph>>> {
    let key = (flavor, max_v, max_e);
    if let Some(v) = cache().lock().unwrap().get(&key) {
        return v.clone();
    }
    let out = Arc::new(generate(flavor, max_v, max_e));
    cache().lock().unwrap().insert(key, out.clone());
    out
}

fn generate(flavor: Flavor, max_v: usize, max_e: usize) -> Vec<Arc<Graph>> {
    let mut out: Vec<(usize, usize, CanonForm, Graph)> = Vec::new();
    let mut seen: HashSet<CanonForm> = HashSet::new();
    for n in 0..=max_v {
        let slots: Vec<(Id, Id)> = (0..n as Id)
            .flat_map(|i| (0..n as Id).map(move |j| (i, j)))
            .filter(|&(i, j)| flavor == Flavor::Directed || i <= j)
            .collect();
        let mut pick = Vec::new();
        multisets(&slots, 0, max_e, &mut pick, &mut |chosen| {
            let edges = chosen.iter().enumerate().map(|(k, &(s, t))| (k as Id, s, t));
            let g = Graph::new(flavor, 0..n as Id, edges).expect("generated graph is valid");
            let f = canonical_form(&g);
            if seen.insert(f.clone()) {
                out.push((n, chosen.len(), f, g));
            }
        });
    }
    out.sort_by(|a, b| (a.0, a.1, &a.2).cmp(&(b.0, b.1, &b.2)));
    out.into_iter().map(|t| Arc::new(t.3)).collect()
}

fn multisets(
    slots: &[(Id, Id)],
    from: usize,
    left: usize,
    pick: &mut Vec<(Id, Id)>,
    emit: &mut dyn FnMut(&[(Id, Id)]),
) {
    emit(pick);
    if left == 0 {
        return;
    }
    for k in from..slots.len() {
        pick.push(slots[k]);
        multisets(slots, k, left - 1, pick, emit);
        pick.pop();
    }
}

/// Subgraphs of `g` that contain the given vertices and edges, with at most
/// `max_v` / `max_e` further vertices / edges, in deterministic order.
pub fn subgraphs_containing(
    g: &Graph,
    base_v: &BTreeSet<Id>,
    base_e: &BTreeSet<Id>,
    max_v: usize,
    max_e: usize,
) -> Vec<Graph> {
    let extra_v: Vec<Id> = g.vertices().iter().copied().filter(|v| !base_v.contains(v)).collect();
    let mut out = Vec::new();
    for vs in subsets(extra_v.len(), max_v) {
        let mut keep_v = base_v.clone();
        keep_v.extend(vs.iter().map(|&k| extra_v[k]));
        let extra_e: Vec<Id> = g
            .edges()
            .iter()
            .filter(|e| !base_e.contains(&e.id) && keep_v.contains(&e.src) && keep_v.contains(&e.tgt))
            .map(|e| e.id)
            .collect();
        for es in subsets(extra_e.len(), max_e) {
            let mut keep_e = base_e.clone();
            keep_e.extend(es.iter().map(|&k| extra_e[k]));
            out.push(g.subgraph(&keep_v, &keep_e).expect("edges are closed under endpoints"));
        }
    }
    out
}

/// All subsets of `0..n` with at most `max` elements, by size then lexicographically.
pub fn subsets(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for k in 1..=max.min(n) {
        let mut cur: Vec<usize> = (0..k).collect();
        loop {
            out.push(cur.clone());
            let mut i = k;
            while i > 0 && cur[i - 1] == n - k + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            cur[i - 1] += 1;
            for j in i..k {
                cur[j] = cur[j - 1] + 1;
            }
        }
    }
    out
}
