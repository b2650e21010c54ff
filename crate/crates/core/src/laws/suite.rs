//! The law suite: every randomized invariant, each with its own seeded
//! instance stream.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::classic::{classic_shift_oracle, cospans_isomorphic};
use super::concurrency::{analysis, concurrency_iso, synthesis};
use super::gen::{self, GenConfig};
use super::{associativity_outcome, LawReport};
use crate::catops::{
    copair, coproduct, factor_through_mono, final_pullback_complement, pullback, pullback_cospan, pushout,
    pushout_complement, pushout_span, SquareKind, SquareWitness,
};
use crate::composition::{compose, enumerate_rule_overlaps};
use crate::condition::{eval, Condition, Node};
use crate::equivalence::{check_equivalence, satisfiable_on_corpus, CorpusSpec, EquivMode, Verdict};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::io::{condition_doc, graph_doc, morphism_doc, rule_doc};
use crate::matching::{are_isomorphic, enumerate_homs, iso_extending, Pins};
use crate::morphism::{Morphism, Span};
use crate::rule::{apply, enumerate_matches_arc, trans, RewriteStep, Rule, RuleWC, Semantics};
use crate::shift::{shift, shift_cospans, shift_exists};
use crate::universal::verify_universal;

/// Instance counts per law family.
#[derive(Debug, Clone)]
pub struct Counts {
    pub squares: usize,
    pub coproduct: usize,
    pub shift_unit: usize,
    pub shift_comp: usize,
    pub shift_semantic: usize,
    pub trans_contract: usize,
    pub trans_unit: usize,
    pub trans_comp: usize,
    pub shift_trans: usize,
    pub classic_shift: usize,
    pub concurrency: usize,
    pub associativity: usize,
    pub fixtures: usize,
    /// Double-square pasting and decomposition lemmas.
    pub pasting: usize,
}

impl Default for Counts {
    fn default() -> Self {
        Counts {
            squares: 500,
            coproduct: 100,
            shift_unit: 100,
            shift_comp: 100,
            shift_semantic: 500,
            trans_contract: 300,
            trans_unit: 100,
            trans_comp: 100,
            shift_trans: 100,
            classic_shift: 100,
            concurrency: 200,
            associativity: 50,
            fixtures: 20,
            pasting: 100,
        }
    }
}

impl Counts {
    /// Every count multiplied by `f`, keeping at least one instance.
    pub fn scaled(&self, f: f64) -> Counts {
        let s = |n: usize| ((n as f64 * f).ceil() as usize).max(1);
        Counts {
            squares: s(self.squares),
            coproduct: s(self.coproduct),
            shift_unit: s(self.shift_unit),
            shift_comp: s(self.shift_comp),
            shift_semantic: s(self.shift_semantic),
            trans_contract: s(self.trans_contract),
            trans_unit: s(self.trans_unit),
            trans_comp: s(self.trans_comp),
            shift_trans: s(self.shift_trans),
            classic_shift: s(self.classic_shift),
            concurrency: s(self.concurrency),
            associativity: s(self.associativity),
            fixtures: s(self.fixtures),
            pasting: s(self.pasting),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub seed: u64,
    pub counts: Counts,
    pub gen: GenConfig,
    /// Hosts for equivalence verdicts.
    pub corpus: CorpusSpec,
    /// Only run laws whose name contains one of these strings.
    pub only: Vec<String>,
    /// Test fixture: replaces pushouts by a deliberately wrong construction.
    pub broken_pushout: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            counts: Counts::default(),
            gen: GenConfig::default(),
            corpus: CorpusSpec::small(),
            only: Vec::new(),
            broken_pushout: false,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        let g = &self.gen;
        if g.max_vertices == 0 || g.max_vertices > 4 || g.max_edges > 4 {
            return Err(Error::ConfigInvalid("generator bounds must lie in 1..=4 vertices, 0..=4 edges".into()));
        }
        if g.cond_depth > 3 || g.ext_vertices > 2 || g.ext_edges > 2 {
            return Err(Error::ConfigInvalid("condition depth <= 3 and extensions <= 2 required".into()));
        }
        if self.corpus.max_vertices > 5 {
            return Err(Error::ConfigInvalid("corpus bound above 5 vertices is impractical".into()));
        }
        Ok(())
    }

    fn wants(&self, law: &str) -> bool {
        self.only.is_empty() || self.only.iter().any(|o| law.contains(o.as_str()))
    }
}

type Check = std::result::Result<(), Value>;

// Stable across platforms and toolchains, unlike `DefaultHasher`.
fn fnv(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3))
}

const ATTEMPTS: usize = 64;

/// Runs `n` instances of `law`. `f` returns `None` when the random input is
/// unusable, in which case the instance is regenerated from the same stream.
pub fn run_law<F>(law: &str, seed: u64, n: usize, f: F) -> LawReport
where
    F: Fn(&mut ChaCha8Rng) -> Option<Check> + Sync,
{
    let start = Instant::now();
    let base = seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ fnv(law);
    let results: Vec<Option<Check>> = (0..n)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(base.wrapping_add(k as u64));
            (0..ATTEMPTS).find_map(|_| f(&mut rng))
        })
        .collect();
    let mut report = LawReport::new(law);
    for (k, r) in results.into_iter().enumerate() {
        match r {
            None => report.skipped += 1,
            Some(Ok(())) => report.instances += 1,
            Some(Err(v)) => {
                report.instances += 1;
                report.failures.push(json!({ "instance": k, "details": v }));
            }
        }
    }
    report.elapsed = start.elapsed();
    report
}

fn cond_json(c: &Condition) -> Value {
    serde_json::to_value(condition_doc(c)).expect("documents serialize")
}

fn morph_json(m: &Morphism) -> Value {
    serde_json::to_value(morphism_doc(m)).expect("documents serialize")
}

fn graph_json(g: &Graph) -> Value {
    serde_json::to_value(graph_doc(g)).expect("documents serialize")
}

fn rule_json(r: &RuleWC) -> Value {
    serde_json::to_value(rule_doc(&r.rule, Some(&r.cond))).expect("documents serialize")
}

fn equivalent(c1: &Condition, c2: &Condition, corpus: &CorpusSpec, mode: &EquivMode) -> Check {
    match check_equivalence(c1, c2, corpus, mode) {
        Ok(Verdict::EquivalentOnCorpus { .. }) => Ok(()),
        Ok(v) => Err(json!({ "lhs": cond_json(c1), "rhs": cond_json(c2), "verdict": v })),
        Err(e) => Err(json!({ "lhs": cond_json(c1), "rhs": cond_json(c2), "error": e.to_string() })),
    }
}

fn random_hom(rng: &mut ChaCha8Rng, a: &Arc<Graph>, b: &Arc<Graph>) -> Option<Morphism> {
    enumerate_homs(a, b).ok()?.choose(rng).cloned()
}

fn random_match(rng: &mut ChaCha8Rng, r: &RuleWC, x: &Arc<Graph>, sem: Semantics) -> Option<Morphism> {
    enumerate_matches_arc(r, x, sem).ok()?.choose(rng).cloned()
}

/// Adds an isolated vertex to the pushout object: commutes, but fails
/// uniqueness of mediators.
fn break_square(mut w: SquareWitness) -> SquareWitness {
    let mut d = (**w.right.cod()).clone();
    d.add_vertex();
    let into = Morphism::inclusion(w.right.cod().clone(), Arc::new(d)).expect("old object is a subgraph");
    w.right = w.right.then(&into).expect("composable");
    w.bottom = w.bottom.then(&into).expect("composable");
    w
}

fn square_check(w: &SquareWitness, as_kind: SquareKind) -> Check {
    let w2 = w.clone().retag(as_kind);
    match verify_universal(&w2) {
        Ok(true) => Ok(()),
        Ok(false) => Err(json!({
            "kind": as_kind,
            "top": morph_json(&w.top),
            "left": morph_json(&w.left),
            "right": morph_json(&w.right),
            "bottom": morph_json(&w.bottom),
        })),
        Err(e) => Err(json!({ "kind": as_kind, "error": e.to_string() })),
    }
}

// ---------------------------------------------------------------------------
// categorical substrate

fn squares(cfg: &SuiteConfig, out: &mut Vec<LawReport>) {
    let n = cfg.counts.squares;
    let broken = cfg.broken_pushout;
    let law = |name: &str, f: &(dyn Fn(&mut ChaCha8Rng) -> Option<Check> + Sync)| {
        if cfg.wants(name) {
            Some(run_law(name, cfg.seed, n, f))
        } else {
            None
        }
    };
    // random span with a mono left leg
    let span = |rng: &mut ChaCha8Rng| -> Option<Span> {
        let fl = gen::flavor(rng);
        let a = Arc::new(gen::graph(rng, fl, 2, 1));
        let f = gen::mono(rng, &a, 1, 1);
        let c = Arc::new(gen::graph(rng, fl, 2, 2));
        let g = random_hom(rng, &a, &c)?;
        Span::new(f, g).ok()
    };
    let po = |rng: &mut ChaCha8Rng| -> Option<Check> {
        let s = span(rng)?;
        let (_, w) = pushout_span(&s).ok()?;
        let w = if broken { break_square(w) } else { w };
        Some(square_check(&w, SquareKind::Pushout))
    };
    let po_pb = |rng: &mut ChaCha8Rng| -> Option<Check> {
        let (_, w) = pushout_span(&span(rng)?).ok()?;
        Some(square_check(&w, SquareKind::Pullback))
    };
    let po_fpc = |rng: &mut ChaCha8Rng| -> Option<Check> {
        let (_, w) = pushout_span(&span(rng)?).ok()?;
        Some(square_check(&w, SquareKind::Fpc))
    };
    let pb = |rng: &mut ChaCha8Rng| -> Option<Check> {
        let fl = gen::flavor(rng);
        let d = Arc::new(gen::graph(rng, fl, 2, 2));
        let b = Arc::new(gen::graph(rng, fl, 2, 2));
        let c = Arc::new(gen::graph(rng, fl, 2, 2));
        let f = random_hom(rng, &b, &d)?;
        let g = random_hom(rng, &c, &d)?;
        let (_, w) = pullback_cospan(&crate::morphism::Cospan::new(f, g).ok()?).ok()?;
        Some(square_check(&w, SquareKind::Pullback))
    };
    let complement = |rng: &mut ChaCha8Rng, fpc: bool| -> Option<Check> {
        let fl = gen::flavor(rng);
        let k = Arc::new(gen::graph(rng, fl, 2, 1));
        let i = gen::mono(rng, &k, 1, 1);
        let m = gen::mono(rng, i.cod(), 1, 2);
        if fpc {
            let c = final_pullback_complement(&i, &m).ok()?;
            Some(square_check(&c.square(&i, &m, SquareKind::Fpc), SquareKind::Fpc))
        } else {
            let c = pushout_complement(&i, &m).ok()??;
            Some(square_check(&c.square(&i, &m, SquareKind::PushoutComplement), SquareKind::PushoutComplement))
        }
    };
    let poc = |rng: &mut ChaCha8Rng| complement(rng, false);
    let fpc = |rng: &mut ChaCha8Rng| complement(rng, true);
    out.extend(law("pushout-universal", &po));
    out.extend(law("pullback-universal", &pb));
    out.extend(law("pushout-complement-universal", &poc));
    out.extend(law("fpc-universal", &fpc));
    out.extend(law("pushout-along-mono-is-pullback", &po_pb));
    out.extend(law("pushout-is-fpc", &po_fpc));

    let name = "mono-into-coproduct";
    if cfg.wants(name) {
        out.push(run_law(name, cfg.seed, cfg.counts.coproduct, |rng| {
            let fl = gen::flavor(rng);
            let a = Arc::new(gen::graph(rng, fl, 2, 2));
            let b = Arc::new(gen::graph(rng, fl, 2, 2));
            let cp = coproduct(&a, &b).ok()?;
            let sub = Arc::new(gen::subgraph(rng, &cp.object));
            let m = Morphism::inclusion(sub, cp.object.clone()).ok()?;
            let pa = pullback(&m, &cp.inl).ok()?;
            let pb = pullback(&m, &cp.inr).ok()?;
            let parts = coproduct(&pa.apex, &pb.apex).ok()?;
            let back = copair(&parts, &pa.to_left, &pb.to_left).ok()?;
            Some(if back.is_iso() {
                Ok(())
            } else {
                Err(json!({ "mono": morph_json(&m) }))
            })
        }));
    }
}

/// The union of the images of `ms` as a subgraph of their common codomain,
/// with each map restricted to it and the inclusion.
fn joint_image(ms: &[&Morphism]) -> Option<(Vec<Morphism>, Morphism)> {
    let f = ms[0].cod();
    let vs: BTreeSet<_> = ms.iter().flat_map(|m| m.vmap().iter().copied()).collect();
    let es: BTreeSet<_> = ms.iter().flat_map(|m| m.emap().iter().copied()).collect();
    let d = Morphism::inclusion(Arc::new(f.subgraph(&vs, &es).ok()?), f.clone()).ok()?;
    let parts = ms.iter().map(|m| factor_through_mono(m, &d)).collect::<Option<Vec<_>>>()?;
    Some((parts, d))
}

fn square(top: &Morphism, left: &Morphism, right: &Morphism, bottom: &Morphism, kind: SquareKind) -> Option<SquareWitness> {
    SquareWitness::new(top.clone(), left.clone(), right.clone(), bottom.clone(), kind).ok()
}

fn holds(w: &SquareWitness, kind: SquareKind) -> Option<bool> {
    verify_universal(&w.clone().retag(kind)).ok()
}

fn pasting_laws(cfg: &SuiteConfig, out: &mut Vec<LawReport>) {
    let n = cfg.counts.pasting;
    let law = |name: &str, f: &(dyn Fn(&mut ChaCha8Rng) -> Option<Check> + Sync)| {
        if cfg.wants(name) {
            Some(run_law(name, cfg.seed, n, f))
        } else {
            None
        }
    };

    // two pullbacks side by side paste to a pullback
    let pb_paste = |rng: &mut ChaCha8Rng| -> Option<Check> {
        let fl = gen::flavor(rng);
        let d = Arc::new(gen::graph(rng, fl, 2, 2));
        let b = Arc::new(gen::graph(rng, fl, 2, 2));
        let c = Arc::new(gen::graph(rng, fl, 2, 1));
        let e = Arc::new(gen::graph(rng, fl, 2, 1));
        let f = random_hom(rng, &b, &d)?;
        let g = random_hom(rng, &c, &d)?;
        let h = random_hom(rng, &e, &c)?;
        let inner = pullback(&f, &g).ok()?;
        let outer = pullback(&inner.to_right, &h).ok()?;
        let w = square(
            &outer.to_left.then(&inner.to_left).ok()?,
            &outer.to_right,
            &f,
            &h.then(&g).ok()?,
            SquareKind::Pullback,
        )?;
        Some(square_check(&w, SquareKind::Pullback))
    };

    // two pushouts side by side paste to a pushout
    let po_paste = |rng: &mut ChaCha8Rng| -> Option<Check> {
        let fl = gen::flavor(rng);
        let a = Arc::new(gen::graph(rng, fl, 2, 1));
        let f = gen::mono(rng, &a, 1, 1);
        let c = Arc::new(gen::graph(rng, fl, 2, 1));
        let g = random_hom(rng, &a, &c)?;
        let h = gen::mono(rng, &c, 1, 1);
        let first = pushout(&f, &g).ok()?;
        let second = pushout(&first.from_right, &h).ok()?;
        let w = square(
            &g.then(&h).ok()?,
            &f,
            &second.from_right,
            &first.from_left.then(&second.from_left).ok()?,
            SquareKind::Pushout,
        )?;
        Some(square_check(&w, SquareKind::Pushout))
    };

    // C -e-> B -d-> A over C' -e'-> B' -d'-> A': the outer square a pushout,
    // the left one a pullback with d' mono, so both are pushouts
    let po_pb_dec = |rng: &mut ChaCha8Rng| -> Option<Check> {
        let fl = gen::flavor(rng);
        let cg = Arc::new(gen::graph(rng, fl, 2, 1));
        let e = gen::mono(rng, &cg, 1, 1);
        let d = gen::mono(rng, e.cod(), 1, 1);
        let c2 = Arc::new(gen::graph(rng, fl, 2, 1));
        let c = random_hom(rng, &cg, &c2)?;
        let outer = pushout(&e.then(&d).ok()?, &c).ok()?;
        let a = outer.from_left;
        let (parts, d2) = joint_image(&[&d.then(&a).ok()?, &outer.from_right])?;
        let (b, e2) = (&parts[0], &parts[1]);
        let left = square(&d, b, &a, &d2, SquareKind::Pullback)?;
        if !holds(&left, SquareKind::Pullback)? {
            return None;
        }
        let right = square(&e, &c, b, e2, SquareKind::Pushout)?;
        let ok = holds(&left, SquareKind::Pushout)? && holds(&right, SquareKind::Pushout)?;
        Some(if ok {
            Ok(())
        } else {
            Err(json!({ "e": morph_json(&e), "d": morph_json(&d), "c": morph_json(&c) }))
        })
    };

    // Z' -z-> Z on top of Y' -y-> Y on top of X' -x-> X; the upper square a
    // pushout and the whole an FPC of (z, v∘w): the lower square is an FPC and v is mono
    let fpc_po_dec = |rng: &mut ChaCha8Rng| -> Option<Check> {
        let fl = gen::flavor(rng);
        let zk = Arc::new(gen::graph(rng, fl, 2, 1));
        let z = gen::mono(rng, &zk, 1, 1);
        let w2 = gen::mono(rng, &zk, 1, 1);
        let upper = pushout(&z, &w2).ok()?;
        let (w, y) = (upper.from_left, upper.from_right);
        let x_big = gen::mono(rng, &upper.object, 1, 1);
        let v = random_hom(rng, &upper.object, x_big.cod())?;
        let vw = w.then(&v).ok()?;
        if !vw.is_mono() {
            return None;
        }
        let whole = final_pullback_complement(&z, &vw).ok()?;
        let v2 = factor_through_mono(&y.then(&v).ok()?, &whole.j)?;
        if !v2.is_mono() || w2.then(&v2).ok()? != whole.k {
            return None;
        }
        let lower = square(&y, &v2, &v, &whole.j, SquareKind::Fpc)?;
        let ok = v.is_mono() && holds(&lower, SquareKind::Fpc)?;
        Some(if ok {
            Ok(())
        } else {
            Err(json!({ "z": morph_json(&z), "w'": morph_json(&w2), "v": morph_json(&v) }))
        })
    };

    // A -> B over A + C -> B + C is a pushout and a pullback
    let cop_square = |rng: &mut ChaCha8Rng| -> Option<Check> {
        let fl = gen::flavor(rng);
        let a = Arc::new(gen::graph(rng, fl, 2, 1));
        let ab = gen::mono(rng, &a, 1, 1);
        let c = Arc::new(gen::graph(rng, fl, 2, 1));
        let ac = coproduct(&a, &c).ok()?;
        let bc = coproduct(ab.cod(), &c).ok()?;
        let bottom = copair(&ac, &ab.then(&bc.inl).ok()?, &bc.inr).ok()?;
        let w = square(&ab, &ac.inl, &bc.inl, &bottom, SquareKind::Pushout)?;
        Some(square_check(&w, SquareKind::Pushout).and_then(|()| square_check(&w, SquareKind::Pullback)))
    };

    out.extend(law("pullback-pasting", &pb_paste));
    out.extend(law("pushout-pasting", &po_paste));
    out.extend(law("pushout-pullback-decomposition", &po_pb_dec));
    out.extend(law("vertical-fpc-pushout-decomposition", &fpc_po_dec));
    out.extend(law("coproduct-square", &cop_square));
}

// ---------------------------------------------------------------------------
// shift

fn shift_laws(cfg: &SuiteConfig, out: &mut Vec<LawReport>) {
    let g = &cfg.gen;
    let corpus = &cfg.corpus;
    let plain = EquivMode::Plain;
    let small = |rng: &mut ChaCha8Rng| {
        let fl = gen::flavor(rng);
        Arc::new(gen::graph(rng, fl, 2, 1))
    };
    if cfg.wants("shift-unit") {
        out.push(run_law("shift-unit", cfg.seed, cfg.counts.shift_unit, |rng| {
            let p = small(rng);
            let c = gen::condition(rng, &p, g.cond_depth, g);
            let s = shift(&Morphism::identity(p), &c).ok()?;
            Some(equivalent(&s, &c, corpus, &plain))
        }));
    }
    if cfg.wants("shift-comp") {
        out.push(run_law("shift-comp", cfg.seed, cfg.counts.shift_comp, |rng| {
            let p0 = small(rng);
            let c = gen::condition(rng, &p0, g.cond_depth, g);
            let p = gen::mono(rng, &p0, 1, 1);
            let q = gen::mono(rng, p.cod(), 1, 1);
            let lhs = shift(&q, &shift(&p, &c).ok()?).ok()?;
            let rhs = shift(&p.then(&q).ok()?, &c).ok()?;
            Some(equivalent(&lhs, &rhs, corpus, &plain))
        }));
    }
    if cfg.wants("shift-semantic") {
        out.push(run_law("shift-semantic", cfg.seed, cfg.counts.shift_semantic, |rng| {
            let p0 = small(rng);
            let c = gen::condition(rng, &p0, g.cond_depth, g);
            let p = gen::mono(rng, &p0, 1, 1);
            let n = gen::mono(rng, p.cod(), 2, 2);
            let s = shift(&p, &c).ok()?;
            let lhs = eval(&n, &s);
            let rhs = eval(&p.then(&n).ok()?, &c);
            Some(if lhs == rhs {
                Ok(())
            } else {
                Err(json!({ "p": morph_json(&p), "n": morph_json(&n), "c": cond_json(&c), "shifted": lhs }))
            })
        }));
    }
    if cfg.wants("classic-shift") {
        out.push(run_law("classic-shift", cfg.seed, cfg.counts.classic_shift, |rng| {
            let fl = gen::flavor(rng);
            let p0 = Arc::new(gen::graph(rng, fl, 2, 1));
            let room = 3 - p0.vertex_count();
            let p = gen::mono(rng, &p0, room, 2);
            let a = gen::mono(rng, &p0, room, 2);
            Some(classic_agrees(&p, &a))
        }));
    }
}

fn classic_agrees(p: &Morphism, a: &Morphism) -> Check {
    let bundle = || json!({ "p": morph_json(p), "a": morph_json(a) });
    let refined = shift_cospans(p, a).map_err(|e| json!({ "error": e.to_string() }))?;
    let classic = classic_shift_oracle(p, a).map_err(|e| json!({ "error": e.to_string() }))?;
    let cospans: Vec<_> = refined
        .iter()
        .map(|c| crate::morphism::Cospan { left: c.r.clone(), right: c.s.clone() })
        .collect();
    if cospans.len() != classic.len() {
        return Err(json!({ "instance": bundle(), "refined": cospans.len(), "classic": classic.len() }));
    }
    let mut used = vec![false; classic.len()];
    for c in &cospans {
        let hit = classic.iter().enumerate().find(|(k, d)| !used[*k] && cospans_isomorphic(c, d));
        match hit {
            Some((k, _)) => used[k] = true,
            None => return Err(json!({ "instance": bundle(), "unmatched": morph_json(&c.left) })),
        }
    }
    // the disjuncts of the shifted condition are the classic cospans up to
    // isomorphism under Q
    let s = shift_exists(p, a).map_err(|e| json!({ "error": e.to_string() }))?;
    let disjuncts: Vec<Morphism> = match s.node() {
        Node::Or(cs) => cs
            .iter()
            .filter_map(|c| match c.node() {
                Node::Exists(r, _) => Some(r.clone()),
                _ => None,
            })
            .collect(),
        Node::Exists(r, _) => vec![r.clone()],
        _ => Vec::new(),
    };
    let same_under_q = |r1: &Morphism, r2: &Morphism| {
        let pins = Pins::factoring(r1, r2);
        matches!(iso_extending(r1.cod(), r2.cod(), &pins), Ok(Some(_)))
    };
    let mut classes: Vec<&Morphism> = Vec::new();
    for c in &classic {
        if !classes.iter().any(|r| same_under_q(r, &c.left)) {
            classes.push(&c.left);
        }
    }
    let covered = classes.iter().all(|r| disjuncts.iter().any(|d| same_under_q(d, r)))
        && disjuncts.iter().all(|d| classes.iter().any(|r| same_under_q(d, r)));
    if !covered && !s.is_true() {
        return Err(json!({ "instance": bundle(), "disjuncts": disjuncts.len(), "classes": classes.len() }));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// trans

fn trans_laws(cfg: &SuiteConfig, out: &mut Vec<LawReport>) {
    let g = &cfg.gen;
    let corpus = &cfg.corpus;
    let small_rule = |rng: &mut ChaCha8Rng| {
        let fl = gen::flavor(rng);
        let small = GenConfig { max_vertices: 2, max_edges: 2, ..g.clone() };
        gen::rule(rng, fl, &small)
    };
    for sem in [Semantics::Dpo, Semantics::Sqpo] {
        let name = format!("trans-contract-{sem}");
        if cfg.wants(&name) {
            out.push(run_law(&name, cfg.seed, cfg.counts.trans_contract, |rng| {
                let r = small_rule(rng);
                let c = gen::condition(rng, r.output(), g.cond_depth, g);
                let m = gen::mono(rng, r.input(), 2, 2);
                let step = apply(&RuleWC::plain(r.clone()), m.cod(), &m, sem).ok()?;
                let t = trans(&r, &c).ok()?;
                let before = eval(&m, &t);
                let after = eval(&step.comatch, &c);
                Some(if before == after {
                    Ok(())
                } else {
                    Err(json!({
                        "rule": rule_json(&RuleWC::plain(r)),
                        "c": cond_json(&c),
                        "match": morph_json(&m),
                        "trans": before,
                        "comatch": after,
                    }))
                })
            }));
        }
    }
    if cfg.wants("trans-unit") {
        out.push(run_law("trans-unit", cfg.seed, cfg.counts.trans_unit, |rng| {
            let fl = gen::flavor(rng);
            let x = Arc::new(gen::graph(rng, fl, 2, 2));
            let c = gen::condition(rng, &x, g.cond_depth, g);
            let t = trans(&Rule::identity(x), &c).ok()?;
            Some(equivalent(&t, &c, corpus, &EquivMode::Plain))
        }));
    }
    if cfg.wants("trans-comp") {
        out.push(run_law("trans-comp", cfg.seed, cfg.counts.trans_comp, |rng| {
            let r1 = small_rule(rng);
            let r2 = gen::rule_on(rng, r1.output(), g);
            let c = gen::condition(rng, r2.output(), g.cond_depth, g);
            let both = r1.then_rule(&r2).ok()?;
            let lhs = trans(&r1, &trans(&r2, &c).ok()?).ok()?;
            let rhs = trans(&both, &c).ok()?;
            let lhs = lhs.reroot(&Morphism::identity(both.input().clone()));
            Some(equivalent(&lhs, &rhs, corpus, &EquivMode::Dot(both, Semantics::Dpo)))
        }));
    }
    for sem in [Semantics::Dpo, Semantics::Sqpo] {
        let name = format!("shift-trans-{sem}");
        if cfg.wants(&name) {
            out.push(run_law(&name, cfg.seed, cfg.counts.shift_trans, |rng| {
                let r = small_rule(rng);
                let c = gen::condition(rng, r.output(), g.cond_depth, g);
                let p = gen::mono(rng, r.input(), 1, 1);
                let step = apply(&RuleWC::plain(r.clone()), p.cod(), &p, sem).ok()?;
                let r2 = Rule::new(step.h.clone(), step.context.j.clone()).ok()?;
                let lhs = shift(&p, &trans(&r, &c).ok()?).ok()?;
                let rhs = trans(&r2, &shift(&step.comatch, &c).ok()?).ok()?;
                let mode = match sem {
                    Semantics::Dpo => EquivMode::Dot(r2, sem),
                    Semantics::Sqpo => EquivMode::Plain,
                };
                Some(equivalent(&lhs, &rhs, corpus, &mode))
            }));
        }
    }
}

// ---------------------------------------------------------------------------
// concurrency

fn step_json(s: &RewriteStep) -> Value {
    json!({
        "rule": rule_json(&s.rule),
        "host": graph_json(&s.host),
        "match": morph_json(&s.m),
        "result": graph_json(&s.result),
    })
}

fn iso(a: &Arc<Graph>, b: &Arc<Graph>) -> bool {
    matches!(are_isomorphic(a, b), Ok(Some(_)))
}

/// Random two-step derivation.
fn derivation(rng: &mut ChaCha8Rng, g: &GenConfig, sem: Semantics) -> Option<(RewriteStep, RewriteStep)> {
    let fl = gen::flavor(rng);
    let r1 = gen::rule_wc(rng, fl, g);
    let r2 = gen::rule_wc(rng, fl, g);
    let x0 = gen::mono(rng, r1.rule.input(), 2, 2).cod().clone();
    let m1 = random_match(rng, &r1, &x0, sem)?;
    let s1 = apply(&r1, &x0, &m1, sem).ok()?;
    let m2 = random_match(rng, &r2, &s1.result, sem)?;
    let s2 = apply(&r2, &s1.result, &m2, sem).ok()?;
    Some((s1, s2))
}

/// synthesis, then analysis, then synthesis again.
pub fn concurrency_round_trip(s1: &RewriteStep, s2: &RewriteStep, sem: Semantics) -> Check {
    let bundle = |msg: &str| json!({ "problem": msg, "step1": step_json(s1), "step2": step_json(s2) });
    let syn = synthesis(s1, s2, sem).map_err(|e| bundle(&e.to_string()))?;
    if !iso(&syn.step.result, &s2.result) {
        return Err(bundle("composite result differs from the two-step result"));
    }
    let (t1, t2) = analysis(&syn.comp, &syn.m21, &s1.host).map_err(|e| bundle(&format!("analysis: {e}")))?;
    if t1.m != s1.m || !iso(&t1.result, &s1.result) {
        return Err(bundle("analysis changed the first step"));
    }
    if t2.m.sort_key() != s2.m.sort_key() || !iso(&t2.result, &s2.result) {
        return Err(bundle("analysis changed the second step"));
    }
    concurrency_iso(&syn.comp, &syn.step, &t1, &t2).map_err(|e| bundle(&e.to_string()))?;
    let again = synthesis(&t1, &t2, sem).map_err(|e| bundle(&format!("re-synthesis: {e}")))?;
    if again.mu.left != syn.mu.left || again.mu.right != syn.mu.right {
        return Err(bundle("re-synthesis found a different overlap"));
    }
    if again.m21 != syn.m21 || again.comp.composite.rule != syn.comp.composite.rule {
        return Err(bundle("re-synthesis found a different composite match"));
    }
    Ok(())
}

/// analysis of a random composite application, then synthesis.
fn analysis_round_trip(rng: &mut ChaCha8Rng, g: &GenConfig, sem: Semantics) -> Option<Check> {
    let fl = gen::flavor(rng);
    let r1 = gen::rule_wc(rng, fl, g);
    let r2 = gen::rule_wc(rng, fl, g);
    let overlaps = enumerate_rule_overlaps(&r2, &r1).ok()?;
    let mu = overlaps.choose(rng)?;
    let comp = compose(&r2, mu, &r1, sem).ok()??;
    let x0 = gen::mono(rng, comp.i21(), 1, 1).cod().clone();
    let m21 = random_match(rng, &comp.composite, &x0, sem)?;
    let bundle = |msg: &str| {
        json!({
            "problem": msg,
            "r1": rule_json(&r1),
            "r2": rule_json(&r2),
            "overlap": [morph_json(&mu.left), morph_json(&mu.right)],
            "host": graph_json(&x0),
            "m21": morph_json(&m21),
        })
    };
    let direct = apply(&comp.composite, &x0, &m21, sem).ok()?;
    let (t1, t2) = match analysis(&comp, &m21, &x0) {
        Ok(s) => s,
        Err(e) => return Some(Err(bundle(&format!("analysis: {e}")))),
    };
    if !iso(&t2.result, &direct.result) {
        return Some(Err(bundle("two-step result differs from the composite result")));
    }
    let syn = match synthesis(&t1, &t2, sem) {
        Ok(s) => s,
        Err(e) => return Some(Err(bundle(&format!("synthesis: {e}")))),
    };
    if syn.mu.left != comp.mu.left || syn.mu.right != comp.mu.right {
        return Some(Err(bundle("synthesis found a different overlap")));
    }
    if syn.m21.sort_key() != m21.sort_key() || !iso(&syn.step.result, &direct.result) {
        return Some(Err(bundle("synthesis found a different composite match")));
    }
    Some(Ok(()))
}

fn concurrency_laws(cfg: &SuiteConfig, out: &mut Vec<LawReport>) {
    for sem in [Semantics::Dpo, Semantics::Sqpo] {
        let name = format!("concurrency-{sem}");
        if cfg.wants(&name) {
            out.push(run_law(&name, cfg.seed, cfg.counts.concurrency, |rng| {
                let (s1, s2) = derivation(rng, &cfg.gen, sem)?;
                let first = concurrency_round_trip(&s1, &s2, sem);
                if first.is_err() {
                    return Some(first);
                }
                // and the other direction, drawn from the same stream
                (0..ATTEMPTS).find_map(|_| analysis_round_trip(rng, &cfg.gen, sem))
            }));
        }
    }
}

// ---------------------------------------------------------------------------
// associativity and fixtures

fn associativity_laws(cfg: &SuiteConfig, out: &mut Vec<LawReport>) {
    let small = cfg.gen.clone();
    for sem in [Semantics::Dpo, Semantics::Sqpo] {
        let name = format!("associativity-{sem}");
        if cfg.wants(&name) {
            let mut report = run_law(&name, cfg.seed, cfg.counts.associativity, |rng| {
                let fl = gen::flavor(rng);
                let rules: Vec<RuleWC> = (0..3).map(|_| gen::rule_wc(rng, fl, &small)).collect();
                let o = associativity_outcome(&rules[0], &rules[1], &rules[2], sem, &cfg.corpus).ok()?;
                Some(if o.failures.is_empty() {
                    Ok(())
                } else {
                    Err(json!({
                        "rules": rules.iter().map(rule_json).collect::<Vec<_>>(),
                        "left": o.left,
                        "right": o.right,
                        "problems": o.failures,
                    }))
                })
            });
            report.bound = Some(cfg.corpus.describe());
            out.push(report);
        }
    }
}

fn rules_iso(a: &Rule, b: &Rule) -> bool {
    iso(a.output(), b.output()) && iso(a.interface(), b.interface()) && iso(a.input(), b.input())
}

fn fixture_laws(cfg: &SuiteConfig, out: &mut Vec<LawReport>) {
    let g = &cfg.gen;
    if cfg.wants("neutral-element") {
        out.push(run_law("neutral-element", cfg.seed, cfg.counts.fixtures, |rng| {
            let fl = gen::flavor(rng);
            let r = gen::rule_wc(rng, fl, g);
            let t = RuleWC::trivial(fl);
            for sem in [Semantics::Dpo, Semantics::Sqpo] {
                for (x, y) in [(&r, &t), (&t, &r)] {
                    let mu = &enumerate_rule_overlaps(x, y).ok()?[0];
                    let Some(d) = compose(x, mu, y, sem).ok()? else {
                        // a composite condition of literal false is only right for an unsatisfiable one
                        if satisfiable_on_corpus(&r.cond, &cfg.corpus) {
                            return Some(Err(json!({ "rule": rule_json(&r), "problem": "composition failed" })));
                        }
                        continue;
                    };
                    if !rules_iso(&d.composite.rule, &r.rule) {
                        return Some(Err(json!({ "rule": rule_json(&r), "problem": "composite rule differs" })));
                    }
                    let moved = r.cond.reroot(&neutral_iso(&d, std::ptr::eq(x, &r))?);
                    if let Err(v) = equivalent(&moved, &d.composite.cond, &cfg.corpus, &EquivMode::Plain) {
                        return Some(Err(v));
                    }
                }
            }
            Some(Ok(()))
        }));
    }
    if cfg.wants("trivial-match-false") {
        out.push(run_law("trivial-match-false", cfg.seed, cfg.counts.fixtures, |rng| {
            let fl = gen::flavor(rng);
            let r1 = RuleWC::plain(gen::rule(rng, fl, g));
            let r2 = gen::rule(rng, fl, g);
            let cp = coproduct(r2.input(), r1.rule.output()).ok()?;
            if r1.rule.output().is_empty() {
                return None;
            }
            let c = Condition::not(Condition::exists_plain(cp.inl).ok()?);
            let r2 = RuleWC::new(r2, c).ok()?;
            let mu = &enumerate_rule_overlaps(&r2, &r1).ok()?[0];
            for sem in [Semantics::Dpo, Semantics::Sqpo] {
                if compose(&r2, mu, &r1, sem).ok()?.is_some() {
                    return Some(Err(json!({ "r1": rule_json(&r1), "r2": rule_json(&r2), "semantics": sem })));
                }
            }
            Some(Ok(()))
        }));
    }
}

/// `I21 -> I` for a composite of `R` with the trivial rule: through the
/// context `K1' = N21 = I2` when `R` comes second, through `p1` otherwise.
fn neutral_iso(d: &crate::composition::CompositeDiagram, r_second: bool) -> Option<Morphism> {
    if r_second {
        let back = d.k1p_in.inverse()?;
        back.then(&d.right_context.j).ok()?.then(&d.m2p.inverse()?).ok()
    } else {
        d.p1.inverse()
    }
}

/// Runs every law selected by `cfg`, in a fixed order.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Vec<LawReport>> {
    cfg.validate()?;
    let mut out = Vec::new();
    squares(cfg, &mut out);
    pasting_laws(cfg, &mut out);
    shift_laws(cfg, &mut out);
    trans_laws(cfg, &mut out);
    concurrency_laws(cfg, &mut out);
    associativity_laws(cfg, &mut out);
    fixture_laws(cfg, &mut out);
    Ok(out)
}
