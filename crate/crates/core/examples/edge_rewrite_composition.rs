//! Composing "add an edge between two unlinked vertices" with "delete that
//! edge" along the full overlap: the composite does nothing, but may still
//! only fire at two vertices that are not yet linked.

use std::sync::Arc;

use acrewrite::composition::compose_all;
use acrewrite::prelude::*;

fn main() -> Result<()> {
    let fl = Flavor::Directed;
    let add = Rule::edge_addition(fl);
    let linked = Arc::new(Graph::path(fl, 2));
    let no_edge = Condition::not(Condition::exists_plain(Morphism::inclusion(add.input().clone(), linked.clone())?)?);
    let e_plus = RuleWC::new(add, no_edge.clone())?;
    let e_minus = RuleWC::plain(Rule::edge_deletion(fl));

    let overlaps = enumerate_rule_overlaps(&e_minus, &e_plus)?;
    println!("{} overlaps of e- after e+", overlaps.len());
    for (k, d) in compose_all(&e_minus, &e_plus, Semantics::Dpo)? {
        let r = &d.composite.rule;
        println!(
            "  #{k}: O21 {}  K21 {}  I21 {}\n       condition {}",
            r.output(),
            r.interface(),
            r.input(),
            simplify(&d.composite.cond)
        );
    }

    // the overlap along the whole created edge
    let full = overlaps
        .iter()
        .find(|mu| mu.apex().edge_count() == 1 && mu.right.v(0) == 0)
        .expect("some overlap shares the edge");
    let d = compose(&e_minus, full, &e_plus, Semantics::Dpo)?.expect("admissible");
    let expected = no_edge.reroot(&d.p1.inverse().expect("I1 ≅ I21 here"));
    let mode = EquivMode::Dot(d.composite.rule.clone(), Semantics::Dpo);
    let verdict = check_equivalence(&d.composite.cond, &expected, &CorpusSpec::default(), &mode)?;
    println!("full-overlap composite condition vs ¬∃(edge): {verdict:?}");
    Ok(())
}
