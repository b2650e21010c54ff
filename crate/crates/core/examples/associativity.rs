//! Both bracketings of a three-fold composition, matched up one to one.

use std::sync::Arc;

use acrewrite::laws::associativity_outcome;
use acrewrite::prelude::*;

fn main() -> Result<()> {
    let fl = Flavor::Directed;
    let v = Arc::new(Graph::discrete(fl, 1));
    let add_v = RuleWC::plain(Rule::vertex_creation(fl));
    let keep = RuleWC::plain(Rule::identity(v));
    let del_v = RuleWC::plain(Rule::vertex_deletion(fl));

    for sem in [Semantics::Dpo, Semantics::Sqpo] {
        let o = associativity_outcome(&add_v, &keep, &del_v, sem, &CorpusSpec::small())?;
        println!(
            "{sem}: |M_A| = {}, |M_B| = {}, dropped {}, failures {:?}",
            o.left, o.right, o.dropped, o.failures
        );
    }
    Ok(())
}
