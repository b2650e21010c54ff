//! Pushouts, pullbacks and complements, checked against their universal
//! properties by brute force over small test graphs.

use std::collections::BTreeMap;
use std::sync::Arc;

use acrewrite::catops::Complement;
use acrewrite::prelude::*;

fn main() -> Result<()> {
    let fl = Flavor::Directed;
    // glue an edge 0 -> 1 onto the pair {1, 2} along vertex 0 ~ 1
    let p = Arc::new(Graph::discrete(fl, 1));
    let q = Arc::new(Graph::new(fl, [1, 2], [])?);
    let a = Arc::new(Graph::path(fl, 2));
    let to_q = Morphism::new(p.clone(), q, &BTreeMap::from([(0, 1)]), &BTreeMap::new())?;
    let to_a = Morphism::inclusion(p, a)?;
    let po = pushout(&to_q, &to_a)?;
    println!("pushout {}", po.object);
    let sq = SquareWitness {
        top: to_q.clone(),
        left: to_a.clone(),
        right: po.from_left.clone(),
        bottom: po.from_right.clone(),
        kind: SquareKind::Pushout,
    };
    println!("  universal: {}", verify_universal(&sq)?);

    let pb = pullback(&po.from_left, &po.from_right)?;
    println!("pullback of its legs {}", pb.apex);

    // deleting a vertex with an incident edge: no pushout complement, but an FPC
    let host = Arc::new(Graph::path(fl, 2));
    let del = Rule::vertex_deletion(fl);
    let m = Morphism::new(del.input().clone(), host, &BTreeMap::from([(0, 0)]), &BTreeMap::new())?;
    println!("pushout complement exists: {}", pushout_complement(del.i(), &m)?.is_some());
    let Complement { object, .. } = final_pullback_complement(del.i(), &m)?;
    println!("final pullback complement {object}");
    Ok(())
}
