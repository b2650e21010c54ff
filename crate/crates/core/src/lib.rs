//! Compositional graph rewriting with nested application conditions.
//!
//! The crate works over finite directed or undirected multigraphs with
//! monomorphic matches and provides:
//!
//! * graphs, morphisms and canonical forms ([`graph`], [`morphism`], [`canon`]),
//! * pushouts, pullbacks, pushout complements and final pullback complements,
//!   with a brute-force universal-property oracle ([`catops`], [`universal`]),
//! * nested conditions with satisfaction, simplification and the `shift`
//!   construction ([`condition`], [`shift`], [`equivalence`]),
//! * rules in standard form, transport of conditions (`trans`), DPO and SqPO
//!   rule application ([`rule`]),
//! * sequential rule composition ([`composition`]),
//! * executable law suites for concurrency and associativity ([`laws`]),
//! * a versioned JSON document format ([`io`]).
//!
//! ```
//! use acrewrite::prelude::*;
//!
//! // delete a vertex from the graph 1 -> 2
//! let host = Graph::new(Flavor::Directed, [1, 2], [(0, 1, 2)]).unwrap();
//! let rule = RuleWC::plain(Rule::vertex_deletion(Flavor::Directed));
//! assert!(enumerate_matches(&rule, &host, Semantics::Dpo).unwrap().is_empty());
//! let ms = enumerate_matches(&rule, &host, Semantics::Sqpo).unwrap();
//! let step = apply(&rule, &host, &ms[0], Semantics::Sqpo).unwrap();
//! assert_eq!(step.result.vertex_count(), 1);
//! ```

pub mod canon;
pub mod catops;
pub mod composition;
pub mod condition;
pub mod equivalence;
pub mod error;
pub mod graph;
pub mod io;
pub mod laws;
pub mod matching;
pub mod morphism;
pub mod rule;
pub mod shift;
pub mod smallgraphs;
pub mod universal;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::catops::{
        coproduct, epi_mono_factorize, final_pullback_complement, pullback, pushout, pushout_complement,
        SquareKind, SquareWitness,
    };
    pub use crate::composition::{compose, enumerate_rule_overlaps, CompositeDiagram};
    pub use crate::condition::{satisfies, satisfies_object, simplify, Condition};
    pub use crate::equivalence::{check_equivalence, CorpusSpec, EquivMode, Verdict};
    pub use crate::error::{Error, Result};
    pub use crate::graph::{Flavor, Graph, Id};
    pub use crate::matching::{are_isomorphic, enumerate_monos};
    pub use crate::morphism::{Cospan, Morphism, Span};
    pub use crate::rule::{apply, compress_condition, enumerate_matches, trans, RewriteStep, Rule, RuleWC, Semantics};
    pub use crate::shift::{enumerate_overlap_spans, shift};
    pub use crate::universal::{verify_universal, ProbeConfig};
}
