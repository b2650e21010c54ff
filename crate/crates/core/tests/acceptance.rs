//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::sync::Arc;
use std::time::{Duration, Instant};

use acrewrite::condition::Node;
use acrewrite::laws::{classic_shift_oracle, cospans_isomorphic, run_suite, LawReport, SuiteConfig};
use acrewrite::matching::are_isomorphic;
use acrewrite::prelude::*;
use acrewrite::shift::shift_cospans;

type Outcome = std::result::Result<String, String>;

fn iso(a: &Arc<Graph>, b: &Arc<Graph>) -> bool {
    are_isomorphic(a, b).unwrap().is_some()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e_plus() -> RuleWC {
    let r = Rule::edge_addition(Flavor::Directed);
    let linked = Arc::new(Graph::path(Flavor::Directed, 2));
    let c = Condition::not(Condition::exists_plain(Morphism::inclusion(r.input().clone(), linked).unwrap()).unwrap());
    RuleWC::new(r, c).unwrap()
}

fn motivating_example() -> Outcome {
    let plus = e_plus();
    let minus = RuleWC::plain(Rule::edge_deletion(Flavor::Directed));
    let overlaps = enumerate_rule_overlaps(&minus, &plus).map_err(|e| e.to_string())?;
    // the created edge is the deleted one, endpoints in order
    let full = overlaps
        .iter()
        .find(|mu| mu.apex().edge_count() == 1 && mu.right.v(0) == 0)
        .ok_or("no overlap along the full edge")?;
    let d = compose(&minus, full, &plus, Semantics::Dpo)
        .map_err(|e| e.to_string())?
        .ok_or("composite is not admissible")?;
    let r = &d.composite.rule;
    let two = Arc::new(Graph::discrete(Flavor::Directed, 2));
    ensure(r.o().is_iso() && r.i().is_iso() && iso(r.input(), &two), || {
        format!("composite span is not the identity on two vertices: {} <- {} -> {}", r.output(), r.interface(), r.input())
    })?;
    let want = plus.cond.reroot(&d.p1.inverse().ok_or("p1 is not invertible")?);
    let mode = EquivMode::Dot(r.clone(), Semantics::Dpo);
    let v = check_equivalence(&want, &d.composite.cond, &CorpusSpec::default(), &mode).map_err(|e| e.to_string())?;
    ensure(v.is_equivalent(), || format!("{v:?}"))?;
    Ok("identity span, condition ≐ ¬∃(edge) on all graphs <= 4v/4e".into())
}

fn dpo_vs_sqpo() -> Outcome {
    let fl = Flavor::Directed;
    let host = Arc::new(Graph::path(fl, 2));
    let r = RuleWC::plain(Rule::vertex_deletion(fl));
    let dpo = enumerate_matches(&r, &host, Semantics::Dpo).map_err(|e| e.to_string())?;
    let sqpo = enumerate_matches(&r, &host, Semantics::Sqpo).map_err(|e| e.to_string())?;
    ensure(dpo.is_empty() && sqpo.len() == 2, || format!("{} DPO / {} SqPO matches", dpo.len(), sqpo.len()))?;
    let single = Arc::new(Graph::discrete(fl, 1));
    for m in &sqpo {
        let step = apply(&r, &host, m, Semantics::Sqpo).map_err(|e| e.to_string())?;
        ensure(iso(&step.result, &single), || format!("result {}", step.result))?;
    }
    Ok("0 DPO, 2 SqPO matches; each SqPO result is a single vertex".into())
}

fn shift_coproduct() -> Outcome {
    let fl = Flavor::Undirected;
    let pattern = Arc::new(Graph::path(fl, 2));
    let square = Arc::new(Graph::cycle(fl, 4));
    let vertex = Arc::new(Graph::discrete(fl, 1));
    let q = coproduct(&pattern, &square).map_err(|e| e.to_string())?;
    let a = coproduct(&pattern, &vertex).map_err(|e| e.to_string())?;
    let c = Condition::exists_plain(a.inl.clone()).map_err(|e| e.to_string())?;
    let shifted = shift(&q.inl, &c).map_err(|e| e.to_string())?;
    let Node::Or(ds) = shifted.node() else {
        return Err(format!("not a disjunction: {shifted}"));
    };
    ensure(ds.len() == 2, || format!("{} disjuncts", ds.len()))?;

    // pictured targets: the pattern and square beside a fresh vertex, or the
    // extra vertex found in the square itself
    let disjoint = coproduct(&q.object, &vertex).map_err(|e| e.to_string())?.object;
    let shared = q.object.clone();
    let mut seen = (0, 0);
    for d in ds {
        let Node::Exists(r, sub) = d.node() else {
            return Err(format!("disjunct is not existential: {d}"));
        };
        ensure(sub.is_true(), || format!("nested condition {sub}"))?;
        if iso(r.cod(), &disjoint) {
            seen.0 += 1;
        } else if iso(r.cod(), &shared) && r.is_iso() {
            seen.1 += 1;
        } else {
            return Err(format!("unexpected target {}", r.cod()));
        }
    }
    ensure(seen == (1, 1), || format!("targets {seen:?}"))?;

    // every raw overlap is one of the classic jointly epic cospans
    let raw = shift_cospans(&q.inl, &a.inl).map_err(|e| e.to_string())?;
    let classic = classic_shift_oracle(&q.inl, &a.inl).map_err(|e| e.to_string())?;
    ensure(raw.len() == classic.len(), || format!("{} overlaps vs {} classic cospans", raw.len(), classic.len()))?;
    for cs in &raw {
        let k = Cospan::new(cs.r.clone(), cs.s.clone()).map_err(|e| e.to_string())?;
        ensure(classic.iter().filter(|c| cospans_isomorphic(c, &k)).count() == 1, || "unmatched cospan".into())?;
    }
    Ok(format!("2 disjuncts (disjoint, one shared vertex) from {} overlaps", raw.len()))
}

/// Runs the named laws and checks that each completed at least `min` instances
/// without failures.
fn laws(names: &[(&str, usize)]) -> Outcome {
    let cfg = SuiteConfig { only: names.iter().map(|(n, _)| n.to_string()).collect(), ..Default::default() };
    let reports = run_suite(&cfg).map_err(|e| e.to_string())?;
    let mut parts = Vec::new();
    for &(name, min) in names {
        let r: &LawReport = reports.iter().find(|r| r.law == name).ok_or_else(|| format!("{name} did not run"))?;
        ensure(r.passed(), || {
            let first = serde_json::to_string(&r.failures[0]).unwrap();
            format!("{}; first: {}", r.summary(), &first[..first.len().min(600)])
        })?;
        ensure(r.instances >= min, || format!("{name}: only {} instances", r.instances))?;
        parts.push(format!("{name} {}", r.instances));
    }
    Ok(parts.join(", "))
}

fn fixtures() -> Outcome {
    let fl = Flavor::Directed;
    // neutral element: e+ composed with the trivial rule, both orders and semantics
    let r = e_plus();
    let t = RuleWC::trivial(fl);
    for sem in [Semantics::Dpo, Semantics::Sqpo] {
        for (x, y, second) in [(&r, &t, true), (&t, &r, false)] {
            let mu = &enumerate_rule_overlaps(x, y).map_err(|e| e.to_string())?[0];
            ensure(mu.apex().is_empty(), || "first overlap is not empty".into())?;
            let d = compose(x, mu, y, sem).map_err(|e| e.to_string())?.ok_or("composite missing")?;
            let c = &d.composite;
            ensure(
                iso(c.rule.input(), r.rule.input())
                    && iso(c.rule.interface(), r.rule.interface())
                    && iso(c.rule.output(), r.rule.output()),
                || format!("{sem}: composite rule differs"),
            )?;
            let phi = are_isomorphic(d.i21(), r.rule.input()).unwrap().ok_or("inputs differ")?;
            let v = check_equivalence(&r.cond.reroot(&phi), &c.cond, &CorpusSpec::default(), &EquivMode::Plain)
                .map_err(|e| e.to_string())?;
            ensure(v.is_equivalent(), || format!("{sem}, e+ {}: {v:?}", if second { "second" } else { "first" }))?;
        }
    }
    // trivial match: a second rule that forbids the first one's output
    // anywhere beside its own input can never follow it along the empty overlap
    let r1 = RuleWC::plain(Rule::vertex_creation(fl));
    let del = Rule::vertex_deletion(fl);
    let cp = coproduct(del.input(), r1.rule.output()).map_err(|e| e.to_string())?;
    let forbid = Condition::not(Condition::exists_plain(cp.inl).map_err(|e| e.to_string())?);
    let r2 = RuleWC::new(del, forbid).map_err(|e| e.to_string())?;
    let mu = &enumerate_rule_overlaps(&r2, &r1).map_err(|e| e.to_string())?[0];
    ensure(mu.apex().is_empty(), || "first overlap is not empty".into())?;
    for sem in [Semantics::Dpo, Semantics::Sqpo] {
        let d = compose(&r2, mu, &r1, sem).map_err(|e| e.to_string())?;
        ensure(d.is_none(), || format!("{sem}: composite along the trivial match exists"))?;
    }
    // the same along the shared vertex is fine
    let shared = enumerate_rule_overlaps(&r2, &r1).map_err(|e| e.to_string())?;
    ensure(shared.len() == 2, || format!("{} overlaps", shared.len()))?;
    ensure(compose(&r2, &shared[1], &r1, Semantics::Dpo).map_err(|e| e.to_string())?.is_some(), || {
        "composite along the shared vertex is missing".into()
    })?;
    Ok("neutral element in both orders and semantics; trivial-match composite is false".into())
}

fn main() {
    let criteria: Vec<(&str, Duration, Box<dyn Fn() -> Outcome>)> = vec![
        ("motivating example", Duration::from_secs(1), Box::new(motivating_example)),
        ("DPO vs SqPO", Duration::from_secs(1), Box::new(dpo_vs_sqpo)),
        ("shift along a coproduct injection", Duration::from_secs(1), Box::new(shift_coproduct)),
        (
            "shift laws",
            Duration::from_secs(120),
            Box::new(|| laws(&[("shift-unit", 100), ("shift-comp", 100), ("shift-semantic", 500)])),
        ),
        (
            "trans laws",
            Duration::from_secs(180),
            Box::new(|| {
                laws(&[
                    ("trans-contract-dpo", 300),
                    ("trans-contract-sqpo", 300),
                    ("trans-unit", 100),
                    ("trans-comp", 100),
                    ("shift-trans-dpo", 100),
                    ("shift-trans-sqpo", 100),
                ])
            }),
        ),
        ("refined vs classic shift", Duration::from_secs(60), Box::new(|| laws(&[("classic-shift", 100)]))),
        (
            "concurrency",
            Duration::from_secs(180),
            Box::new(|| laws(&[("concurrency-dpo", 200), ("concurrency-sqpo", 200)])),
        ),
        (
            "associativity",
            Duration::from_secs(300),
            Box::new(|| laws(&[("associativity-dpo", 50), ("associativity-sqpo", 50)])),
        ),
        (
            "neutral element and trivial matches",
            Duration::from_secs(60),
            Box::new(|| {
                let start = Instant::now();
                let exact = fixtures()?;
                let took = start.elapsed();
                ensure(took < Duration::from_secs(1), || format!("exact fixtures took {took:.2?}"))?;
                let suite = laws(&[("neutral-element", 20), ("trivial-match-false", 20)])?;
                Ok(format!("{exact} ({took:.2?}); {suite}"))
            }),
        ),
        (
            "categorical substrate",
            Duration::from_secs(120),
            Box::new(|| {
                laws(&[
                    ("pushout-universal", 500),
                    ("pullback-universal", 500),
                    ("pushout-complement-universal", 500),
                    ("fpc-universal", 500),
                    ("pushout-along-mono-is-pullback", 500),
                    ("pushout-is-fpc", 500),
                    ("mono-into-coproduct", 100),
                    ("pullback-pasting", 50),
                    ("pushout-pasting", 50),
                    ("pushout-pullback-decomposition", 50),
                    ("vertical-fpc-pushout-decomposition", 50),
                    ("coproduct-square", 50),
                ])
            }),
        ),
    ];

    let mut failed = 0;
    for (k, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(s) if took > *limit => Err(format!("{s}; took {took:.2?}, limit {limit:?}")),
            o => o,
        };
        match outcome {
            Ok(s) => println!("criterion {:>2} PASS  {name} ({took:.2?}): {s}", k + 1),
            Err(s) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({took:.2?}): {s}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
