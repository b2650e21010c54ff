//! Seeded random generators for graphs, monos, conditions and rules.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::condition::Condition;
use crate::graph::{Flavor, Graph, Id};
use crate::morphism::Morphism;
use crate::rule::{Rule, RuleWC};

/// Size bounds for generated instances.
#[derive(Debug, Clone)]
pub struct GenConfig {
    pub max_vertices: usize,
    pub max_edges: usize,
    /// Nesting depth of existentials in generated conditions.
    pub cond_depth: usize,
    /// Fresh vertices / edges an existential may add to its root.
    pub ext_vertices: usize,
    pub ext_edges: usize,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig { max_vertices: 3, max_edges: 3, cond_depth: 2, ext_vertices: 1, ext_edges: 1 }
    }
}

pub fn flavor<R: Rng>(rng: &mut R) -> Flavor {
    if rng.gen_bool(0.5) {
        Flavor::Directed
    } else {
        Flavor::Undirected
    }
}

/// Adds up to `kv` vertices, then up to `ke` edges anywhere.
pub fn grow<R: Rng>(rng: &mut R, g: &mut Graph, kv: usize, ke: usize) {
    for _ in 0..rng.gen_range(0..=kv) {
        g.add_vertex();
    }
    if g.vertex_count() == 0 {
        return;
    }
    for _ in 0..rng.gen_range(0..=ke) {
        let vs = g.vertices();
        let s = *vs.choose(rng).unwrap();
        let t = *vs.choose(rng).unwrap();
        g.add_edge(s, t).expect("endpoints exist");
    }
}

pub fn graph<R: Rng>(rng: &mut R, flavor: Flavor, max_v: usize, max_e: usize) -> Graph {
    let mut g = Graph::empty(flavor);
    grow(rng, &mut g, max_v, max_e);
    g
}

/// A random subgraph of `g`.
pub fn subgraph<R: Rng>(rng: &mut R, g: &Graph) -> Graph {
    let vs: BTreeSet<Id> = g.vertices().iter().copied().filter(|_| rng.gen_bool(0.6)).collect();
    let es: BTreeSet<Id> = g
        .edges()
        .iter()
        .filter(|e| vs.contains(&e.src) && vs.contains(&e.tgt))
        .map(|e| e.id)
        .filter(|_| rng.gen_bool(0.6))
        .collect();
    g.subgraph(&vs, &es).expect("closed under endpoints")
}

/// An inclusion `p ↪ p + (≤ kv vertices, ≤ ke edges)`.
pub fn extension<R: Rng>(rng: &mut R, p: &Arc<Graph>, kv: usize, ke: usize) -> Morphism {
    let mut q = (**p).clone();
    grow(rng, &mut q, kv, ke);
    Morphism::inclusion(p.clone(), Arc::new(q)).expect("extension contains its base")
}

/// A random mono `p -> q`, not necessarily an inclusion: the extension is
/// followed by a random relabeling of the target.
pub fn mono<R: Rng>(rng: &mut R, p: &Arc<Graph>, kv: usize, ke: usize) -> Morphism {
    let inc = extension(rng, p, kv, ke);
    let q = inc.cod();
    let mut vids: Vec<Id> = (0..q.vertex_count() as Id * 2).collect();
    vids.shuffle(rng);
    vids.truncate(q.vertex_count());
    let mut eids: Vec<Id> = (0..q.edge_count() as Id * 2).collect();
    eids.shuffle(rng);
    eids.truncate(q.edge_count());
    let vm = |v: Id| vids[q.vertex_index(v).unwrap()];
    let relabeled = Graph::new(
        q.flavor(),
        q.vertices().iter().map(|&v| vm(v)),
        q.edges().iter().enumerate().map(|(k, e)| (eids[k], vm(e.src), vm(e.tgt))),
    )
    .expect("relabeling is a bijection");
    let relabeled = Arc::new(relabeled);
    let r = Morphism::from_vecs(q.clone(), relabeled, q.vertices().iter().map(|&v| vm(v)).collect(), eids.clone())
        .expect("relabeling is a morphism");
    inc.then(&r).expect("composable")
}

/// A random condition over `root` with existentials nested at most `depth`
/// deep; operators are drawn uniformly from true, false, ∃, ¬, ∧, ∨.
pub fn condition<R: Rng>(rng: &mut R, root: &Arc<Graph>, depth: usize, cfg: &GenConfig) -> Condition {
    node(rng, root, depth, 2, cfg)
}

fn node<R: Rng>(rng: &mut R, root: &Arc<Graph>, depth: usize, fuel: usize, cfg: &GenConfig) -> Condition {
    let ops: &[u8] = match (depth > 0, fuel > 0) {
        (true, true) => &[0, 1, 2, 3, 4, 5],
        (true, false) => &[0, 1, 2],
        (false, true) => &[0, 1, 3, 4, 5],
        (false, false) => &[0, 1],
    };
    match *ops.choose(rng).unwrap() {
        0 => Condition::tt(root.clone()),
        1 => Condition::ff(root.clone()),
        2 => {
            let a = extension(rng, root, cfg.ext_vertices, cfg.ext_edges);
            let sub = node(rng, &a.cod().clone(), depth - 1, fuel, cfg);
            Condition::exists(a, sub).expect("mono with matching root")
        }
        3 => Condition::not(node(rng, root, depth, fuel - 1, cfg)),
        op => {
            let kids = (0..2).map(|_| node(rng, root, depth, fuel - 1, cfg)).collect();
            if op == 4 {
                Condition::and(root.clone(), kids).expect("same root")
            } else {
                Condition::or(root.clone(), kids).expect("same root")
            }
        }
    }
}

/// A condition that is never a bare literal: an existential, possibly negated.
pub fn existential<R: Rng>(rng: &mut R, root: &Arc<Graph>, depth: usize, cfg: &GenConfig) -> Condition {
    let a = extension(rng, root, cfg.ext_vertices.max(1), cfg.ext_edges.max(1));
    let sub = condition(rng, &a.cod().clone(), depth.saturating_sub(1), cfg);
    let c = Condition::exists(a, sub).expect("mono with matching root");
    if rng.gen_bool(0.5) {
        Condition::not(c)
    } else {
        c
    }
}

/// A rule `O <- K -> I` with `K` a random subgraph of `I` and `O` a random
/// extension of `K`, all within the size bounds.
pub fn rule<R: Rng>(rng: &mut R, flavor: Flavor, cfg: &GenConfig) -> Rule {
    let i = Arc::new(graph(rng, flavor, cfg.max_vertices, cfg.max_edges));
    let k = Arc::new(subgraph(rng, &i));
    let room_v = cfg.max_vertices - k.vertex_count();
    let room_e = cfg.max_edges - k.edge_count();
    let o = extension(rng, &k, room_v, room_e);
    let i_leg = Morphism::inclusion(k.clone(), i).expect("subgraph");
    Rule::new(o, i_leg).expect("monic legs")
}

/// A rule on `input` (fixed), as for the second rule of a span composition.
pub fn rule_on<R: Rng>(rng: &mut R, input: &Arc<Graph>, cfg: &GenConfig) -> Rule {
    let k = Arc::new(subgraph(rng, input));
    let o = extension(rng, &k, cfg.ext_vertices, cfg.ext_edges);
    Rule::new(o, Morphism::inclusion(k, input.clone()).expect("subgraph")).expect("monic legs")
}

/// A rule with a random condition over its input; the condition is
/// existential with probability 3/4.
pub fn rule_wc<R: Rng>(rng: &mut R, flavor: Flavor, cfg: &GenConfig) -> RuleWC {
    let r = rule(rng, flavor, cfg);
    let c = if rng.gen_bool(0.25) {
        Condition::tt(r.input().clone())
    } else {
        // keep composite conditions tractable: one level for rules
        existential(rng, r.input(), 1, cfg)
    };
    RuleWC::new(r, c).expect("condition over the input")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_respect_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let cfg = GenConfig::default();
        for _ in 0..200 {
            let f = flavor(&mut rng);
            let r = rule(&mut rng, f, &cfg);
            assert!(r.input().vertex_count() <= 3 && r.output().vertex_count() <= 3);
            assert!(r.input().edge_count() <= 3 && r.output().edge_count() <= 3);
            let p = Arc::new(graph(&mut rng, f, 2, 2));
            let m = mono(&mut rng, &p, 1, 1);
            assert!(m.is_mono());
            let c = condition(&mut rng, &p, 2, &cfg);
            assert!(c.depth() <= 2, "{c}");
        }
    }

    #[test]
    fn seeds_reproduce() {
        let cfg = GenConfig::default();
        let a = rule(&mut ChaCha8Rng::seed_from_u64(9), Flavor::Directed, &cfg);
        let b = rule(&mut ChaCha8Rng::seed_from_u64(9), Flavor::Directed, &cfg);
        assert_eq!(a, b);
    }
}
