//! Deleting a vertex that still has an incident edge: DPO refuses the match,
//! SqPO deletes the dangling edge along with it.

use std::sync::Arc;

use acrewrite::prelude::*;

fn main() -> Result<()> {
    let host = Arc::new(Graph::path(Flavor::Directed, 2));
    let rule = RuleWC::plain(Rule::vertex_deletion(Flavor::Directed));
    println!("host: {host}");

    for sem in [Semantics::Dpo, Semantics::Sqpo] {
        let ms = enumerate_matches(&rule, &host, sem)?;
        println!("{sem}: {} admissible match(es)", ms.len());
        for m in &ms {
            let step = apply(&rule, &host, m, sem)?;
            println!("  {m:?}\n    result {}", step.result);
        }
    }
    Ok(())
}
