//! Shifting "there is one more vertex" from an edge pattern to the pattern
//! placed next to a square: the extra vertex is either fresh or one of the
//! square's vertices.

use std::sync::Arc;

use acrewrite::condition::Node;
use acrewrite::prelude::*;
use acrewrite::shift::shift_cospans;

fn main() -> Result<()> {
    let fl = Flavor::Undirected;
    let pattern = Arc::new(Graph::path(fl, 2));
    let square = Arc::new(Graph::cycle(fl, 4));
    let q = coproduct(&pattern, &square)?;
    let a = coproduct(&pattern, &Arc::new(Graph::discrete(fl, 1)))?;

    let raw = shift_cospans(&q.inl, &a.inl)?;
    println!("{} overlap spans", raw.len());
    for cs in &raw {
        println!("  shared {}  ->  E = {}", cs.span.to_q.dom(), cs.r.cod());
    }

    let c = Condition::exists_plain(a.inl.clone())?;
    let shifted = shift(&q.inl, &c)?;
    println!("shift = {shifted}");
    if let Node::Or(ds) = shifted.node() {
        println!("{} disjuncts up to isomorphism", ds.len());
    }
    // the square already has four vertices, so the shifted condition is trivial
    println!("simplified: {}", simplify(&shifted));
    Ok(())
}
