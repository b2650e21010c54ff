//! Brute-force verification of universal properties.
//!
//! This is a test oracle: every cone or cocone into (or out of) a probe graph
//! is enumerated and checked for a unique mediating morphism. Probes are all
//! graphs up to a size bound plus the graphs of the square itself.

use std::collections::HashMap;
use std::sync::Arc;

use crate::canon::canonical_form;
use crate::catops::{pullback, SquareKind, SquareWitness};
use crate::error::{Error, Result};
use crate::graph::{Graph, Id};
use crate::matching::enumerate_homs;
use crate::morphism::Morphism;
use crate::smallgraphs::all_graphs;

#[derive(Debug, Clone)]
pub struct ProbeConfig {
    pub max_vertices: usize,
    pub max_edges: usize,
    /// Upper bound on the number of probe graphs.
    pub cap: usize,
    pub extra: Vec<Arc<Graph>>,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig { max_vertices: 3, max_edges: 3, cap: 2000, extra: Vec::new() }
    }
}

impl ProbeConfig {
    fn probes(&self, w: &SquareWitness) -> Result<Vec<Arc<Graph>>> {
        let flavor = w.top.flavor();
        let mut out: Vec<Arc<Graph>> = all_graphs(flavor, self.max_vertices, self.max_edges).to_vec();
        out.extend(self.extra.iter().filter(|g| g.flavor() == flavor).cloned());
        for g in [w.top.dom(), w.top.cod(), w.left.cod(), w.right.cod()] {
            out.push(g.clone());
        }
        let mut seen = std::collections::HashSet::new();
        out.retain(|g| seen.insert(canonical_form(g)));
        if out.len() > self.cap {
            return Err(Error::ProbeSetTooLarge { size: out.len(), cap: self.cap });
        }
        Ok(out)
    }
}

type Key = (Vec<Id>, Vec<Id>);

fn key(m: &Morphism) -> Key {
    (m.vmap().to_vec(), m.emap().to_vec())
}

fn after(f: &Morphism, g: &Morphism) -> Key {
    let h = f.then(g).expect("composable");
    key(&h)
}

/// Checks the universal property named by the square's kind against the
/// default probe set.
pub fn verify_universal(w: &SquareWitness) -> Result<bool> {
    verify_universal_with(w, &ProbeConfig::default())
}

pub fn verify_universal_with(w: &SquareWitness, cfg: &ProbeConfig) -> Result<bool> {
    if !w.commutes() {
        return Ok(false);
    }
    let probes = cfg.probes(w)?;
    Ok(match w.kind {
        SquareKind::Pushout | SquareKind::PushoutComplement => is_pushout(w, &probes),
        SquareKind::Pullback => is_pullback(w, &probes),
        SquareKind::Fpc => is_pullback(w, &probes) && is_final(w, &probes),
    })
}

fn is_pushout(w: &SquareWitness, probes: &[Arc<Graph>]) -> bool {
    let b = w.top.cod();
    let c = w.left.cod();
    let d = w.right.cod();
    for t in probes {
        let fs = enumerate_homs(b, t).unwrap();
        let gs = enumerate_homs(c, t).unwrap();
        let us = enumerate_homs(d, t).unwrap();
        let mut by_key: HashMap<Key, Vec<usize>> = HashMap::new();
        for (k, g) in gs.iter().enumerate() {
            by_key.entry(after(&w.left, g)).or_default().push(k);
        }
        let mut mediators: HashMap<(Key, Key), usize> = HashMap::new();
        for u in &us {
            *mediators.entry((after(&w.right, u), after(&w.bottom, u))).or_default() += 1;
        }
        for f in &fs {
            let Some(ks) = by_key.get(&after(&w.top, f)) else { continue };
            for &k in ks {
                if mediators.get(&(key(f), key(&gs[k]))).copied() != Some(1) {
                    return false;
                }
            }
        }
    }
    true
}

fn is_pullback(w: &SquareWitness, probes: &[Arc<Graph>]) -> bool {
    let a = w.top.dom();
    let b = w.top.cod();
    let c = w.left.cod();
    for p in probes {
        let xs = enumerate_homs(p, b).unwrap();
        let ys = enumerate_homs(p, c).unwrap();
        let us = enumerate_homs(p, a).unwrap();
        let mut by_key: HashMap<Key, Vec<usize>> = HashMap::new();
        for (k, y) in ys.iter().enumerate() {
            by_key.entry(after(y, &w.bottom)).or_default().push(k);
        }
        let mut mediators: HashMap<(Key, Key), usize> = HashMap::new();
        for u in &us {
            *mediators.entry((after(u, &w.top), after(u, &w.left))).or_default() += 1;
        }
        for x in &xs {
            let Some(ks) = by_key.get(&after(x, &w.right)) else { continue };
            for &k in ks {
                if mediators.get(&(key(x), key(&ys[k]))).copied() != Some(1) {
                    return false;
                }
            }
        }
    }
    true
}

// Finality of a pullback complement: roles are A = K, B = I, C = K̄, D = X
// with a = top, c = right, b = left, d = bottom. For every z: Q -> X with
// pullback (x, y) of (c, z) and every w with a ∘ w = x there must be exactly
// one w*: Q -> K̄ with d ∘ w* = z and w* ∘ y = b ∘ w.
fn is_final(w: &SquareWitness, probes: &[Arc<Graph>]) -> bool {
    let k = w.top.dom();
    let kbar = w.left.cod();
    let x = w.right.cod();
    for q in probes {
        let zs = enumerate_homs(q, x).unwrap();
        let stars = enumerate_homs(q, kbar).unwrap();
        let mut stars_by_z: HashMap<Key, Vec<&Morphism>> = HashMap::new();
        for s in &stars {
            stars_by_z.entry(after(s, &w.bottom)).or_default().push(s);
        }
        for z in &zs {
            let pb = pullback(&w.right, z).unwrap();
            let ws = enumerate_homs(&pb.apex, k).unwrap();
            let xk = key(&pb.to_left);
            let candidates = stars_by_z.get(&key(z)).map(Vec::as_slice).unwrap_or(&[]);
            for wm in ws.iter().filter(|wm| after(wm, &w.top) == xk) {
                let want = after(wm, &w.left);
                let n = candidates
                    .iter()
                    .filter(|s| after(&pb.to_right, s) == want)
                    .count();
                if n != 1 {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catops::{final_pullback_complement, pushout, pushout_complement};
    use crate::graph::Flavor;
    use std::collections::BTreeMap;

    fn small() -> ProbeConfig {
        ProbeConfig { max_vertices: 2, max_edges: 2, ..Default::default() }
    }

    fn g(vs: &[Id], es: &[(Id, Id, Id)]) -> Arc<Graph> {
        Arc::new(Graph::new(Flavor::Directed, vs.iter().copied(), es.iter().copied()).unwrap())
    }

    #[test]
    fn constructed_pushout_verifies_as_pushout_pullback_and_fpc() {
        let k = g(&[0, 1], &[]);
        let i = g(&[0, 1], &[(0, 0, 1)]);
        let o = g(&[0, 1, 2], &[(0, 1, 2)]);
        let il = Morphism::inclusion(k.clone(), i).unwrap();
        let ol = Morphism::inclusion(k, o).unwrap();
        let po = pushout(&il, &ol).unwrap();
        let sq = SquareWitness {
            top: il,
            left: ol,
            right: po.from_left,
            bottom: po.from_right,
            kind: SquareKind::Pushout,
        };
        assert!(verify_universal_with(&sq, &small()).unwrap());
        assert!(verify_universal_with(&sq.clone().retag(SquareKind::Pullback), &small()).unwrap());
        assert!(verify_universal_with(&sq.retag(SquareKind::Fpc), &small()).unwrap());
    }

    #[test]
    fn non_final_pullback_complement_is_rejected() {
        let k = g(&[], &[]);
        let i = g(&[0], &[]);
        let x = g(&[1, 2], &[]);
        let kbar = g(&[], &[]);
        let top = Morphism::initial(i.clone()).with_dom(k.clone());
        let m = Morphism::new(i, x.clone(), &BTreeMap::from([(0, 1)]), &BTreeMap::new()).unwrap();
        let left = Morphism::identity(k);
        let bottom = Morphism::initial(x).with_dom(kbar);
        let sq = SquareWitness { top, left, right: m, bottom, kind: SquareKind::Fpc };
        assert!(sq.commutes());
        assert!(verify_universal_with(&sq.clone().retag(SquareKind::Pullback), &small()).unwrap());
        assert!(!verify_universal_with(&sq, &small()).unwrap());
    }

    #[test]
    fn complements_verify() {
        let k = g(&[0], &[]);
        let i = g(&[0, 1], &[]);
        let x = g(&[1, 2, 3], &[(0, 1, 2), (1, 2, 3)]);
        let il = Morphism::inclusion(k, i.clone()).unwrap();
        let m = Morphism::new(i, x, &BTreeMap::from([(0, 1), (1, 3)]), &BTreeMap::new()).unwrap();
        assert!(pushout_complement(&il, &m).unwrap().is_none());
        let f = final_pullback_complement(&il, &m).unwrap();
        assert!(verify_universal_with(&f.square(&il, &m, SquareKind::Fpc), &small()).unwrap());
    }

    #[test]
    fn probe_cap_is_enforced() {
        let k = g(&[0], &[]);
        let sq = SquareWitness {
            top: Morphism::identity(k.clone()),
            left: Morphism::identity(k.clone()),
            right: Morphism::identity(k.clone()),
            bottom: Morphism::identity(k),
            kind: SquareKind::Pushout,
        };
        let cfg = ProbeConfig { cap: 3, ..Default::default() };
        assert!(matches!(verify_universal_with(&sq, &cfg), Err(Error::ProbeSetTooLarge { .. })));
    }
}
