//! Structural invariants of the constructions, on generated instances.

use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use acrewrite::catops::{factor_through_mono, pushout, pushout_mediator};
use acrewrite::laws::classic_shift_oracle;
use acrewrite::laws::cospans_isomorphic;
use acrewrite::laws::gen::{self, GenConfig};
use acrewrite::matching::{are_isomorphic, enumerate_homs};
use acrewrite::prelude::*;
use acrewrite::shift::shift_cospans;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn iso(a: &Arc<Graph>, b: &Arc<Graph>) -> bool {
    are_isomorphic(a, b).unwrap().is_some()
}

fn random_hom(r: &mut ChaCha8Rng, a: &Arc<Graph>, b: &Arc<Graph>) -> Option<Morphism> {
    enumerate_homs(a, b).unwrap().choose(r).cloned()
}

fn subsets<T: Copy + Ord>(items: &[T]) -> impl Iterator<Item = BTreeSet<T>> + '_ {
    (0..1u32 << items.len()).map(move |bits| items.iter().enumerate().filter(|(k, _)| bits >> k & 1 == 1).map(|(_, &x)| x).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn monos_decompose_and_bijections_are_isos(seed in any::<u64>()) {
        let mut r = rng(seed);
        let fl = gen::flavor(&mut r);
        let a = Arc::new(gen::graph(&mut r, fl, 2, 2));
        let b = Arc::new(gen::graph(&mut r, fl, 3, 3));
        let c = Arc::new(gen::graph(&mut r, fl, 3, 3));
        let (Some(f), Some(g)) = (random_hom(&mut r, &a, &b), random_hom(&mut r, &b, &c)) else { return Ok(()) };
        if f.then(&g).unwrap().is_mono() {
            prop_assert!(f.is_mono());
        }
        for h in [&f, &g] {
            if h.is_mono() && h.is_epi() {
                prop_assert!(h.is_iso());
                prop_assert!(h.inverse().is_some());
            }
        }
    }

    /// Every subgraph of `X` that completes `K -> I -> X` to a pushout is
    /// isomorphic to the constructed complement.
    #[test]
    fn pushout_complements_are_unique(seed in any::<u64>()) {
        let mut r = rng(seed);
        let fl = gen::flavor(&mut r);
        let k = Arc::new(gen::graph(&mut r, fl, 2, 1));
        let i = gen::mono(&mut r, &k, 1, 1);
        let m = gen::mono(&mut r, i.cod(), 1, 1);
        let Some(ours) = pushout_complement(&i, &m).unwrap() else { return Ok(()) };
        let x = m.cod();
        let edges: Vec<Id> = x.edges().iter().map(|e| e.id).collect();
        let km = i.then(&m).unwrap();
        let mut found = 0;
        for vs in subsets(x.vertices()) {
            for es in subsets(&edges) {
                let Ok(s) = x.subgraph(&vs, &es) else { continue };
                let j = Morphism::inclusion(Arc::new(s), x.clone()).unwrap();
                let Some(kk) = factor_through_mono(&km, &j) else { continue };
                let po = pushout(&i, &kk).unwrap();
                let Ok(u) = pushout_mediator(&po, &m, &j) else { continue };
                if u.is_iso() {
                    found += 1;
                    prop_assert!(iso(j.dom(), &ours.object));
                }
            }
        }
        prop_assert!(found >= 1);
    }

    #[test]
    fn simplification_preserves_satisfaction(seed in any::<u64>()) {
        let mut r = rng(seed);
        let fl = gen::flavor(&mut r);
        let p = Arc::new(gen::graph(&mut r, fl, 2, 2));
        let c = gen::condition(&mut r, &p, 2, &GenConfig::default());
        let v = check_equivalence(&c, &simplify(&c), &CorpusSpec::small(), &EquivMode::Plain).unwrap();
        prop_assert!(v.is_equivalent(), "{c} vs {}: {v:?}", simplify(&c));
    }

    #[test]
    fn rewrite_steps_are_witnessed(seed in any::<u64>()) {
        let mut r = rng(seed);
        let fl = gen::flavor(&mut r);
        let rule = RuleWC::plain(gen::rule(&mut r, fl, &GenConfig::default()));
        let host = Arc::new(gen::graph(&mut r, fl, 4, 4));
        for sem in [Semantics::Dpo, Semantics::Sqpo] {
            let ms = enumerate_matches(&rule, &host, sem).unwrap();
            let Some(m) = ms.choose(&mut r) else { continue };
            let step = apply(&rule, &host, m, sem).unwrap();
            prop_assert!(verify_universal(&step.right_square()).unwrap());
            prop_assert!(verify_universal(&step.left_square()).unwrap());
            prop_assert!(step.comatch.is_mono());
            if sem == Semantics::Dpo {
                let back = RuleWC::plain(rule.rule.inverted());
                let undo = apply(&back, &step.result, &step.comatch, sem).unwrap();
                prop_assert!(iso(&undo.result, &host));
            }
        }
    }

    #[test]
    fn composites_are_witnessed(seed in any::<u64>()) {
        let mut r = rng(seed);
        let fl = gen::flavor(&mut r);
        let g = GenConfig { max_vertices: 2, max_edges: 2, ..GenConfig::default() };
        let r1 = gen::rule_wc(&mut r, fl, &g);
        let r2 = gen::rule_wc(&mut r, fl, &g);
        let overlaps = enumerate_rule_overlaps(&r2, &r1).unwrap();
        let mu = overlaps.choose(&mut r).unwrap();
        for sem in [Semantics::Dpo, Semantics::Sqpo] {
            let Some(d) = compose(&r2, mu, &r1, sem).unwrap() else { continue };
            for w in d.squares() {
                prop_assert!(verify_universal(&w).unwrap(), "{:?} square fails", w.kind);
            }
            prop_assert!(d.composite.rule.o().is_mono() && d.composite.rule.i().is_mono());
            prop_assert!(!simplify(&d.composite.cond).is_false());
        }
    }

    /// Along the empty overlap the composite is the parallel rule.
    #[test]
    fn empty_overlap_gives_the_coproduct_rule(seed in any::<u64>()) {
        let mut r = rng(seed);
        let fl = gen::flavor(&mut r);
        let g = GenConfig::default();
        let r1 = RuleWC::plain(gen::rule(&mut r, fl, &g));
        let r2 = RuleWC::plain(gen::rule(&mut r, fl, &g));
        let mu = &enumerate_rule_overlaps(&r2, &r1).unwrap()[0];
        prop_assert!(mu.apex().is_empty());
        let d = compose(&r2, mu, &r1, Semantics::Dpo).unwrap().unwrap();
        let sum = |a: &Arc<Graph>, b: &Arc<Graph>| coproduct(a, b).unwrap().object;
        prop_assert!(iso(d.o21(), &sum(r2.rule.output(), r1.rule.output())));
        prop_assert!(iso(d.k21(), &sum(r2.rule.interface(), r1.rule.interface())));
        prop_assert!(iso(d.i21(), &sum(r2.rule.input(), r1.rule.input())));
    }

    /// A second rule that deletes nothing composes the same way under both
    /// semantics.
    #[test]
    fn non_deleting_second_rules_compose_alike(seed in any::<u64>()) {
        let mut r = rng(seed);
        let fl = gen::flavor(&mut r);
        let g = GenConfig { max_vertices: 2, max_edges: 2, ..GenConfig::default() };
        let r1 = gen::rule_wc(&mut r, fl, &g);
        let k2 = Arc::new(gen::graph(&mut r, fl, 2, 2));
        let grow = gen::mono(&mut r, &k2, 1, 1);
        let r2 = RuleWC::plain(Rule::new(grow, Morphism::identity(k2)).unwrap());
        for mu in enumerate_rule_overlaps(&r2, &r1).unwrap() {
            let dpo = compose(&r2, &mu, &r1, Semantics::Dpo).unwrap();
            let sqpo = compose(&r2, &mu, &r1, Semantics::Sqpo).unwrap();
            prop_assert_eq!(dpo.is_some(), sqpo.is_some());
            let (Some(a), Some(b)) = (dpo, sqpo) else { continue };
            prop_assert!(iso(a.o21(), b.o21()) && iso(a.k21(), b.k21()) && iso(a.i21(), b.i21()));
            let phi = are_isomorphic(a.i21(), b.i21()).unwrap().unwrap();
            let mode = EquivMode::Dot(b.composite.rule.clone(), Semantics::Dpo);
            let v = check_equivalence(&a.composite.cond.reroot(&phi), &b.composite.cond, &CorpusSpec::small(), &mode).unwrap();
            prop_assert!(v.is_equivalent(), "{v:?}");
        }
    }

    /// Each jointly epic cospan is reached from the pushout of exactly one
    /// overlap span by an epimorphism.
    #[test]
    fn classic_cospans_factor_epically(seed in any::<u64>()) {
        let mut r = rng(seed);
        let fl = gen::flavor(&mut r);
        let p = Arc::new(gen::graph(&mut r, fl, 2, 1));
        let q = gen::mono(&mut r, &p, 1, 1);
        let a = gen::mono(&mut r, &p, 1, 1);
        let refined = shift_cospans(&q, &a).unwrap();
        for k in classic_shift_oracle(&q, &a).unwrap() {
            let mut hits = 0;
            for cs in &refined {
                let po = pushout(&cs.span.to_q, &cs.span.to_a).unwrap();
                if let Ok(u) = pushout_mediator(&po, &k.left, &k.right) {
                    prop_assert!(u.is_epi());
                    if u.is_iso() {
                        hits += 1;
                        prop_assert!(cospans_isomorphic(&k, &Cospan::new(cs.r.clone(), cs.s.clone()).unwrap()));
                    }
                }
            }
            prop_assert_eq!(hits, 1);
        }
    }
}
