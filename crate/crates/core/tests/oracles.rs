//! The core constructions compared against naive reimplementations.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use acrewrite::catops::{final_pullback_complement, pushout, pushout_complement};
use acrewrite::graph::Edge;
use acrewrite::matching::{are_isomorphic, enumerate_monos};
use acrewrite::prelude::*;
use acrewrite::smallgraphs::all_graphs;

fn ends_match(fl: Flavor, (s, t): (Id, Id), e: &Edge) -> bool {
    (e.src, e.tgt) == (s, t) || (fl == Flavor::Undirected && (e.src, e.tgt) == (t, s))
}

/// Number of injective incidence-preserving maps, by trying every injective
/// vertex map and counting injective edge assignments.
fn count_monos(a: &Graph, b: &Graph) -> usize {
    fn edges(a: &Graph, b: &Graph, vm: &BTreeMap<Id, Id>, k: usize, used: &mut Vec<bool>) -> usize {
        let Some(e) = a.edges().get(k) else { return 1 };
        let want = (vm[&e.src], vm[&e.tgt]);
        let mut n = 0;
        for (j, f) in b.edges().iter().enumerate() {
            if !used[j] && ends_match(a.flavor(), want, f) {
                used[j] = true;
                n += edges(a, b, vm, k + 1, used);
                used[j] = false;
            }
        }
        n
    }
    fn verts(a: &Graph, b: &Graph, vm: &mut BTreeMap<Id, Id>, k: usize) -> usize {
        let Some(&v) = a.vertices().get(k) else {
            return edges(a, b, vm, 0, &mut vec![false; b.edge_count()]);
        };
        let mut n = 0;
        for &w in b.vertices() {
            if !vm.values().any(|&x| x == w) {
                vm.insert(v, w);
                n += verts(a, b, vm, k + 1);
                vm.remove(&v);
            }
        }
        n
    }
    verts(a, b, &mut BTreeMap::new(), 0)
}

#[test]
fn mono_counts_agree_with_exhaustive_maps() {
    for fl in [Flavor::Directed, Flavor::Undirected] {
        let small = all_graphs(fl, 3, 3);
        let hosts = all_graphs(fl, 4, 4);
        for a in small.iter().filter(|g| g.vertex_count() <= 2 && g.edge_count() <= 2) {
            for b in hosts.iter() {
                let got = enumerate_monos(a, b).unwrap().len();
                assert_eq!(got, count_monos(a, b), "{a} into {b}");
            }
        }
        for a in small.iter() {
            for b in small.iter() {
                assert_eq!(enumerate_monos(a, b).unwrap().len(), count_monos(a, b), "{a} into {b}");
            }
        }
    }
}

/// Disjoint union of `B` and `C`, then merge along `f(x) ~ g(x)` with a
/// union-find; returns vertex and edge counts of the quotient.
fn pushout_sizes(f: &Morphism, g: &Morphism) -> (usize, usize) {
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            x = p[x];
        }
        x
    }
    let (b, c) = (f.cod(), g.cod());
    let nb = b.vertex_count();
    let mut pv: Vec<usize> = (0..nb + c.vertex_count()).collect();
    for &x in f.dom().vertices() {
        let i = b.vertex_index(f.v(x)).unwrap();
        let j = nb + c.vertex_index(g.v(x)).unwrap();
        let (ri, rj) = (find(&mut pv, i), find(&mut pv, j));
        pv[ri] = rj;
    }
    let eb = b.edge_count();
    let mut pe: Vec<usize> = (0..eb + c.edge_count()).collect();
    for e in f.dom().edges() {
        let i = b.edge_index(f.e(e.id)).unwrap();
        let j = eb + c.edge_index(g.e(e.id)).unwrap();
        let (ri, rj) = (find(&mut pe, i), find(&mut pe, j));
        pe[ri] = rj;
    }
    let vs: BTreeSet<usize> = (0..pv.len()).map(|x| find(&mut pv, x)).collect();
    let es: BTreeSet<usize> = (0..pe.len()).map(|x| find(&mut pe, x)).collect();
    (vs.len(), es.len())
}

/// Pairs of monos out of a common small graph.
fn mono_pairs(fl: Flavor) -> Vec<(Morphism, Morphism)> {
    let gs = all_graphs(fl, 3, 2);
    let mut out = Vec::new();
    for p in gs.iter().filter(|g| g.vertex_count() <= 2 && g.edge_count() <= 1) {
        for b in gs.iter() {
            for c in gs.iter().filter(|g| g.vertex_count() >= p.vertex_count()) {
                let fs = enumerate_monos(p, b).unwrap();
                let gs2 = enumerate_monos(p, c).unwrap();
                if let (Some(f), Some(g)) = (fs.first(), gs2.last()) {
                    out.push((f.clone(), g.clone()));
                }
            }
        }
    }
    out
}

#[test]
fn pushouts_agree_with_union_find_gluing() {
    for fl in [Flavor::Directed, Flavor::Undirected] {
        for (f, g) in mono_pairs(fl) {
            let po = pushout(&f, &g).unwrap();
            assert_eq!(
                (po.object.vertex_count(), po.object.edge_count()),
                pushout_sizes(&f, &g),
                "{f:?} / {g:?}"
            );
            assert_eq!(f.then(&po.from_left).unwrap(), g.then(&po.from_right).unwrap());
        }
    }
}

#[test]
fn worked_pushout_example() {
    // Q = {1, 2} <- P = {v} -> A = (v -> w), v ~ 1: three vertices, one edge 1 -> w
    let fl = Flavor::Directed;
    let p = Arc::new(Graph::discrete(fl, 1));
    let q = Arc::new(Graph::new(fl, [1, 2], []).unwrap());
    let a = Arc::new(Graph::path(fl, 2));
    let f = Morphism::new(p.clone(), q, &BTreeMap::from([(0, 1)]), &BTreeMap::new()).unwrap();
    let g = Morphism::inclusion(p, a).unwrap();
    let po = pushout(&f, &g).unwrap();
    let want = Arc::new(Graph::new(fl, [0, 1, 2], [(0, 0, 2)]).unwrap());
    assert!(are_isomorphic(&po.object, &want).unwrap().is_some());
}

/// Items of `X` in the image of `m` but not of `m ∘ i`.
fn deleted(i: &Morphism, m: &Morphism) -> (BTreeSet<Id>, BTreeSet<Id>) {
    let kept_v: BTreeSet<Id> = i.vmap().iter().map(|&v| m.v(v)).collect();
    let kept_e: BTreeSet<Id> = i.emap().iter().map(|&e| m.e(e)).collect();
    let dv = m.vmap().iter().copied().filter(|v| !kept_v.contains(v)).collect();
    let de = m.emap().iter().copied().filter(|e| !kept_e.contains(e)).collect();
    (dv, de)
}

fn rule_and_matches(fl: Flavor) -> Vec<(Morphism, Morphism)> {
    let gs = all_graphs(fl, 3, 3);
    let mut out = Vec::new();
    for big in gs.iter().filter(|g| g.vertex_count() <= 2) {
        // K: drop the last vertex (with its edges) or the last edge
        let mut keeps = Vec::new();
        let all_v: BTreeSet<Id> = big.vertices().iter().copied().collect();
        let all_e: BTreeSet<Id> = big.edges().iter().map(|e| e.id).collect();
        if let Some(&last) = big.vertices().last() {
            let v: BTreeSet<Id> = all_v.iter().copied().filter(|&x| x != last).collect();
            let e = big.edges().iter().filter(|e| !e.touches(last)).map(|e| e.id).collect();
            keeps.push((v, e));
        }
        if let Some(last) = big.edges().last() {
            let e = all_e.iter().copied().filter(|&x| x != last.id).collect();
            keeps.push((all_v.clone(), e));
        }
        for (v, e) in keeps {
            let k = Arc::new(big.subgraph(&v, &e).unwrap());
            let i = Morphism::inclusion(k, big.clone()).unwrap();
            for x in gs.iter() {
                for m in enumerate_monos(big, x).unwrap() {
                    out.push((i.clone(), m));
                }
            }
        }
    }
    out
}

#[test]
fn pushout_complement_is_removal_when_nothing_dangles() {
    for fl in [Flavor::Directed, Flavor::Undirected] {
        for (i, m) in rule_and_matches(fl) {
            let x = m.cod();
            let (dv, de) = deleted(&i, &m);
            let dangling = x.edges().iter().any(|e| !de.contains(&e.id) && (dv.contains(&e.src) || dv.contains(&e.tgt)));
            let poc = pushout_complement(&i, &m).unwrap();
            assert_eq!(poc.is_some(), !dangling, "{i:?} {m:?}");
            if let Some(c) = poc {
                assert_eq!(c.object.vertex_count(), x.vertex_count() - dv.len());
                assert_eq!(c.object.edge_count(), x.edge_count() - de.len());
                assert!(c.j.is_mono());
            }
        }
    }
}

#[test]
fn fpc_removes_deleted_items_and_dangling_edges() {
    for fl in [Flavor::Directed, Flavor::Undirected] {
        for (i, m) in rule_and_matches(fl) {
            let x = m.cod();
            let (dv, de) = deleted(&i, &m);
            let gone_e = x
                .edges()
                .iter()
                .filter(|e| de.contains(&e.id) || dv.contains(&e.src) || dv.contains(&e.tgt))
                .count();
            let c = final_pullback_complement(&i, &m).unwrap();
            assert_eq!(c.object.vertex_count(), x.vertex_count() - dv.len());
            assert_eq!(c.object.edge_count(), x.edge_count() - gone_e);
            assert_eq!(i.then(&m).unwrap(), c.k.then(&c.j).unwrap());
        }
    }
}

/// `Hom(T, B ×_D C)` is in bijection with the pairs `(T -> B, T -> C)` that
/// agree in `D`; checked for the edge, the loop and the vertex as `T`.
#[test]
fn pullbacks_represent_compatible_pairs() {
    use acrewrite::catops::pullback;
    use acrewrite::matching::enumerate_homs;
    for fl in [Flavor::Directed, Flavor::Undirected] {
        let probes = [
            Arc::new(Graph::discrete(fl, 1)),
            Arc::new(Graph::path(fl, 2)),
            Arc::new(Graph::new(fl, [0], [(0, 0, 0)]).unwrap()),
        ];
        let gs = all_graphs(fl, 2, 2);
        for d in gs.iter().filter(|g| !g.is_empty()) {
            for b in gs.iter() {
                for c in gs.iter() {
                    let (Some(f), Some(g)) = (
                        enumerate_homs(b, d).unwrap().into_iter().last(),
                        enumerate_homs(c, d).unwrap().into_iter().next(),
                    ) else {
                        continue;
                    };
                    let pb = pullback(&f, &g).unwrap();
                    for t in &probes {
                        let pairs = enumerate_homs(t, b)
                            .unwrap()
                            .iter()
                            .flat_map(|x| enumerate_homs(t, c).unwrap().into_iter().map(move |y| (x.clone(), y)))
                            .filter(|(x, y)| x.then(&f).unwrap() == y.then(&g).unwrap())
                            .count();
                        assert_eq!(enumerate_homs(t, &pb.apex).unwrap().len(), pairs, "{f:?} / {g:?} probed by {t}");
                    }
                }
            }
        }
    }
}
