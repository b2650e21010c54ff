//! Moving a condition from the output side of a rule to its input side.
//!
//! For edge deletion `(• •) <- (• •) -> (•->•)`, "no edge from 0 to 1 after
//! the step" becomes a condition on the match of the input edge: the
//! deleted edge is the only one allowed.

use std::sync::Arc;

use acrewrite::prelude::*;
use acrewrite::rule::is_admissible;

fn main() -> Result<()> {
    let fl = Flavor::Directed;
    let del = Rule::edge_deletion(fl);
    let linked = Arc::new(Graph::path(fl, 2));
    let after = Condition::not(Condition::exists_plain(Morphism::inclusion(del.output().clone(), linked)?)?);
    println!("condition on the output: {after}");

    let before = trans(&del, &after)?;
    println!("transported to the input: {}", simplify(&before));

    let r = RuleWC::new(del.clone(), before)?;
    let one = Arc::new(Graph::path(fl, 2));
    let two = Arc::new(Graph::new(fl, [0, 1], [(0, 0, 1), (1, 0, 1)])?);
    for host in [one, two] {
        for m in enumerate_monos(del.input(), &host)? {
            let ok = is_admissible(&r, &m, Semantics::Dpo)?;
            let step = apply(&RuleWC::plain(del.clone()), &host, &m, Semantics::Dpo)?;
            let holds = satisfies(&step.comatch, &after)?;
            println!("host {host}: admissible {ok}, output condition holds {holds}");
            assert_eq!(ok, holds);
        }
    }
    Ok(())
}
