//! Two consecutive steps fused into one application of a composite rule, and
//! split back again.

use std::sync::Arc;

use acrewrite::laws::{analysis, synthesis};
use acrewrite::prelude::*;

fn main() -> Result<()> {
    let fl = Flavor::Directed;
    let sem = Semantics::Dpo;
    let x0 = Arc::new(Graph::discrete(fl, 3));

    // add an edge between two of the vertices, then delete it again
    let add = RuleWC::plain(Rule::edge_addition(fl));
    let m1 = &enumerate_matches(&add, &x0, sem)?[0];
    let s1 = apply(&add, &x0, m1, sem)?;
    let del = RuleWC::plain(Rule::edge_deletion(fl));
    let m2 = &enumerate_matches(&del, &s1.result, sem)?[0];
    let s2 = apply(&del, &s1.result, m2, sem)?;
    println!("X0 = {}\nX1 = {}\nX2 = {}", s1.host, s1.result, s2.result);

    let syn = synthesis(&s1, &s2, sem)?;
    let r = &syn.comp.composite.rule;
    println!("overlap {}", syn.mu.apex());
    println!("composite O21 {} <- K21 {} -> I21 {}", r.output(), r.interface(), r.input());
    println!("one-step result {}", syn.step.result);

    let (t1, t2) = analysis(&syn.comp, &syn.m21, &x0)?;
    println!("analysed: X1' = {}, X2' = {}", t1.result, t2.result);
    assert!(are_isomorphic(&t2.result, &s2.result)?.is_some());
    Ok(())
}
