//! Loading the bundled documents, applying a rule and exporting the result.

use std::path::Path;

use acrewrite::io::{self, Document};
use acrewrite::prelude::*;

fn main() -> std::result::Result<(), Box<dyn std::error::Error>> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    let rule = io::load(data.join("vertex_deletion.json"))?.into_rulewc()?;
    let host = io::load(data.join("edge.json"))?.into_graph()?;

    let ms = enumerate_matches(&rule, &host, Semantics::Sqpo)?;
    let step = apply(&rule, &host, &ms[0], Semantics::Sqpo)?;
    print!("{}", io::serialize(&Document::Trace(io::trace_doc(&step))));
    print!("{}", io::to_dot(&step.result, "result"));

    // every bundled file is already in canonical form
    let mut paths: Vec<_> = std::fs::read_dir(&data)?.map(|e| e.map(|e| e.path())).collect::<std::result::Result<_, _>>()?;
    paths.sort();
    for path in paths {
        let text = std::fs::read_to_string(&path)?;
        let same = io::canonicalize(&text)? == text;
        println!("{}: {}", path.file_name().unwrap().to_string_lossy(), if same { "canonical" } else { "rewritten" });
    }
    Ok(())
}
