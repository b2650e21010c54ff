//! Versioned JSON documents and DOT export.
//!
//! Every file is an envelope `{"format_version": 1, "kind": ..., "payload": ...}`.
//! Graphs are `{flavor, vertices: [id], edges: [{id, ends: [v, v]}]}`;
//! morphisms carry `vmap` / `emap` objects keyed by source identifier, with
//! their domain and codomain either inline or named (`"K"`, `"O"`, `"I"` inside
//! rule documents); conditions are nested `{op, morphism?, children?}`
//! objects whose existential morphisms name only their target graph.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::condition::{Condition, Node};
use crate::graph::{Flavor, Graph, Id};
use crate::laws::LawReport;
use crate::morphism::Morphism;
use crate::rule::{RewriteStep, Rule, RuleWC, Semantics};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("i/o error on {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("unsupported format version {found} (expected {FORMAT_VERSION})")]
    SchemaVersionMismatch { found: u32 },
    #[error("invalid {field}: {source}")]
    InvariantViolation { field: String, source: crate::Error },
    #[error("expected a {expected} document, found {found}")]
    WrongKind { expected: &'static str, found: &'static str },
}

impl IoError {
    /// Short machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            IoError::Io { .. } => "Io",
            IoError::Parse { .. } => "ParseError",
            IoError::SchemaVersionMismatch { .. } => "SchemaVersionMismatch",
            IoError::InvariantViolation { .. } => "InvariantViolation",
            IoError::WrongKind { .. } => "WrongKind",
        }
    }
}

fn invalid(field: impl Into<String>) -> impl FnOnce(crate::Error) -> IoError {
    let field = field.into();
    move |source| IoError::InvariantViolation { field, source }
}

// ---------------------------------------------------------------------------
// wire types

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub flavor: Flavor,
    pub vertices: Vec<Id>,
    pub edges: Vec<EdgeDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub id: Id,
    pub ends: [Id; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GraphSlot {
    Named(String),
    Inline(GraphDoc),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dom: Option<GraphSlot>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cod: Option<GraphSlot>,
    pub vmap: BTreeMap<Id, Id>,
    #[serde(default)]
    pub emap: BTreeMap<Id, Id>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Op {
    True,
    False,
    Exists,
    Not,
    And,
    Or,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConditionNodeDoc {
    pub op: Op,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub morphism: Option<MorphismDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<ConditionNodeDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConditionDoc {
    pub root: GraphDoc,
    pub condition: ConditionNodeDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(non_snake_case)]
pub struct RuleDoc {
    pub O: GraphDoc,
    pub K: GraphDoc,
    pub I: GraphDoc,
    pub o: MorphismDoc,
    pub i: MorphismDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub condition: Option<ConditionNodeDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceDoc {
    pub semantics: Semantics,
    pub host: GraphDoc,
    pub result: GraphDoc,
    /// `I -> host`
    #[serde(rename = "match")]
    pub m: MorphismDoc,
    /// `O -> result`
    pub comatch: MorphismDoc,
    /// the context `K'` with `K' -> host` and `K' -> result`
    pub context: GraphDoc,
    pub context_in_host: MorphismDoc,
    pub context_in_result: MorphismDoc,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Body {
    Graph(GraphDoc),
    Morphism(MorphismDoc),
    Rule(RuleDoc),
    Rulewc(RuleDoc),
    Condition(ConditionDoc),
    Trace(TraceDoc),
    Report(Vec<LawReport>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Graph,
    Morphism,
    Rule,
    Rulewc,
    Condition,
    Trace,
    Report,
}

/// The on-disk envelope; the payload is decoded according to `kind`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Envelope {
    pub format_version: u32,
    pub kind: Kind,
    pub payload: serde_json::Value,
}

impl Body {
    fn to_envelope(&self) -> Envelope {
        let v = |x: serde_json::Result<serde_json::Value>| x.expect("documents serialize");
        let (kind, payload) = match self {
            Body::Graph(d) => (Kind::Graph, v(serde_json::to_value(d))),
            Body::Morphism(d) => (Kind::Morphism, v(serde_json::to_value(d))),
            Body::Rule(d) => (Kind::Rule, v(serde_json::to_value(d))),
            Body::Rulewc(d) => (Kind::Rulewc, v(serde_json::to_value(d))),
            Body::Condition(d) => (Kind::Condition, v(serde_json::to_value(d))),
            Body::Trace(d) => (Kind::Trace, v(serde_json::to_value(d))),
            Body::Report(d) => (Kind::Report, v(serde_json::to_value(d))),
        };
        Envelope { format_version: FORMAT_VERSION, kind, payload }
    }

    fn from_envelope(env: Envelope) -> serde_json::Result<Body> {
        use serde_json::from_value as f;
        let p = env.payload;
        Ok(match env.kind {
            Kind::Graph => Body::Graph(f(p)?),
            Kind::Morphism => Body::Morphism(f(p)?),
            Kind::Rule => Body::Rule(f(p)?),
            Kind::Rulewc => Body::Rulewc(f(p)?),
            Kind::Condition => Body::Condition(f(p)?),
            Kind::Trace => Body::Trace(f(p)?),
            Kind::Report => Body::Report(f(p)?),
        })
    }
}

// ---------------------------------------------------------------------------
// domain <-> wire

/// A validated document.
#[derive(Debug, Clone)]
pub enum Document {
    Graph(Graph),
    Morphism(Morphism),
    Rule(Rule),
    RuleWC(RuleWC),
    Condition(Condition),
    Trace(TraceDoc),
    Report(Vec<LawReport>),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Graph(_) => "graph",
            Document::Morphism(_) => "morphism",
            Document::Rule(_) => "rule",
            Document::RuleWC(_) => "rulewc",
            Document::Condition(_) => "condition",
            Document::Trace(_) => "trace",
            Document::Report(_) => "report",
        }
    }

    pub fn into_graph(self) -> Result<Graph, IoError> {
        match self {
            Document::Graph(g) => Ok(g),
            d => Err(IoError::WrongKind { expected: "graph", found: d.kind() }),
        }
    }

    pub fn into_morphism(self) -> Result<Morphism, IoError> {
        match self {
            Document::Morphism(m) => Ok(m),
            d => Err(IoError::WrongKind { expected: "morphism", found: d.kind() }),
        }
    }

    /// Rules without a condition are promoted to `RuleWC` with `true`.
    pub fn into_rulewc(self) -> Result<RuleWC, IoError> {
        match self {
            Document::RuleWC(r) => Ok(r),
            Document::Rule(r) => Ok(RuleWC::plain(r)),
            d => Err(IoError::WrongKind { expected: "rule", found: d.kind() }),
        }
    }

    pub fn into_condition(self) -> Result<Condition, IoError> {
        match self {
            Document::Condition(c) => Ok(c),
            d => Err(IoError::WrongKind { expected: "condition", found: d.kind() }),
        }
    }
}

pub fn graph_doc(g: &Graph) -> GraphDoc {
    GraphDoc {
        flavor: g.flavor(),
        vertices: g.vertices().to_vec(),
        edges: g.edges().iter().map(|e| EdgeDoc { id: e.id, ends: [e.src, e.tgt] }).collect(),
    }
}

pub fn graph_from_doc(d: &GraphDoc, field: &str) -> Result<Graph, IoError> {
    Graph::new(d.flavor, d.vertices.iter().copied(), d.edges.iter().map(|e| (e.id, e.ends[0], e.ends[1])))
        .map_err(invalid(field))
}

fn maps(m: &Morphism) -> (BTreeMap<Id, Id>, BTreeMap<Id, Id>) {
    (m.vertex_map(), m.edge_map())
}

/// A morphism with inline domain and codomain.
pub fn morphism_doc(m: &Morphism) -> MorphismDoc {
    let (vmap, emap) = maps(m);
    MorphismDoc {
        dom: Some(GraphSlot::Inline(graph_doc(m.dom()))),
        cod: Some(GraphSlot::Inline(graph_doc(m.cod()))),
        vmap,
        emap,
    }
}

fn named_morphism_doc(m: &Morphism, dom: &str, cod: &str) -> MorphismDoc {
    let (vmap, emap) = maps(m);
    MorphismDoc { dom: Some(GraphSlot::Named(dom.into())), cod: Some(GraphSlot::Named(cod.into())), vmap, emap }
}

fn bare_morphism_doc(m: &Morphism) -> MorphismDoc {
    let (vmap, emap) = maps(m);
    MorphismDoc { dom: None, cod: None, vmap, emap }
}

fn resolve(
    slot: &Option<GraphSlot>,
    default: Option<&Arc<Graph>>,
    named: &BTreeMap<&str, Arc<Graph>>,
    field: &str,
) -> Result<Arc<Graph>, IoError> {
    match slot {
        Some(GraphSlot::Inline(d)) => Ok(Arc::new(graph_from_doc(d, field)?)),
        Some(GraphSlot::Named(n)) => named.get(n.as_str()).cloned().ok_or_else(|| IoError::Parse {
            line: 0,
            column: 0,
            message: format!("{field}: unknown graph name {n:?}"),
        }),
        None => default.cloned().ok_or_else(|| IoError::Parse {
            line: 0,
            column: 0,
            message: format!("{field}: missing graph"),
        }),
    }
}

fn morphism_from_doc(
    d: &MorphismDoc,
    dom: Option<&Arc<Graph>>,
    cod: Option<&Arc<Graph>>,
    named: &BTreeMap<&str, Arc<Graph>>,
    field: &str,
) -> Result<Morphism, IoError> {
    let dom = resolve(&d.dom, dom, named, &format!("{field}.dom"))?;
    let cod = resolve(&d.cod, cod, named, &format!("{field}.cod"))?;
    Morphism::new(dom, cod, &d.vmap, &d.emap).map_err(invalid(field))
}

fn node_doc(c: &Condition) -> ConditionNodeDoc {
    let leaf = |op| ConditionNodeDoc { op, morphism: None, children: Vec::new() };
    match c.node() {
        Node::True => leaf(Op::True),
        Node::False => leaf(Op::False),
        Node::Exists(a, sub) => {
            let (vmap, emap) = maps(a);
            ConditionNodeDoc {
                op: Op::Exists,
                morphism: Some(MorphismDoc { dom: None, cod: Some(GraphSlot::Inline(graph_doc(a.cod()))), vmap, emap }),
                children: if sub.is_true() { Vec::new() } else { vec![node_doc(sub)] },
            }
        }
        Node::Not(sub) => ConditionNodeDoc { op: Op::Not, morphism: None, children: vec![node_doc(sub)] },
        Node::And(cs) => ConditionNodeDoc { op: Op::And, morphism: None, children: cs.iter().map(node_doc).collect() },
        Node::Or(cs) => ConditionNodeDoc { op: Op::Or, morphism: None, children: cs.iter().map(node_doc).collect() },
    }
}

fn condition_from_node(d: &ConditionNodeDoc, root: &Arc<Graph>, field: &str) -> Result<Condition, IoError> {
    let arity = |n: usize| -> Result<(), IoError> {
        if d.children.len() != n {
            return Err(IoError::Parse {
                line: 0,
                column: 0,
                message: format!("{field}: {:?} takes {n} child(ren), found {}", d.op, d.children.len()),
            });
        }
        Ok(())
    };
    let kids = |root: &Arc<Graph>| -> Result<Vec<Condition>, IoError> {
        d.children
            .iter()
            .enumerate()
            .map(|(k, c)| condition_from_node(c, root, &format!("{field}.children[{k}]")))
            .collect()
    };
    Ok(match d.op {
        Op::True => Condition::tt(root.clone()),
        Op::False => Condition::ff(root.clone()),
        Op::Exists => {
            let md = d.morphism.as_ref().ok_or_else(|| IoError::Parse {
                line: 0,
                column: 0,
                message: format!("{field}: exists needs a morphism"),
            })?;
            let a = morphism_from_doc(md, Some(root), None, &BTreeMap::new(), &format!("{field}.morphism"))?;
            let sub = match d.children.len() {
                0 => Condition::tt(a.cod().clone()),
                1 => condition_from_node(&d.children[0], a.cod(), &format!("{field}.children[0]"))?,
                _ => {
                    arity(1)?;
                    unreachable!()
                }
            };
            Condition::exists(a, sub).map_err(invalid(field))?
        }
        Op::Not => {
            arity(1)?;
            Condition::not(kids(root)?.pop().unwrap())
        }
        Op::And => Condition::and(root.clone(), kids(root)?).map_err(invalid(field))?,
        Op::Or => Condition::or(root.clone(), kids(root)?).map_err(invalid(field))?,
    })
}

pub fn condition_doc(c: &Condition) -> ConditionDoc {
    ConditionDoc { root: graph_doc(c.root()), condition: node_doc(c) }
}

pub fn condition_from_doc(d: &ConditionDoc) -> Result<Condition, IoError> {
    let root = Arc::new(graph_from_doc(&d.root, "root")?);
    condition_from_node(&d.condition, &root, "condition")
}

pub fn rule_doc(r: &Rule, cond: Option<&Condition>) -> RuleDoc {
    RuleDoc {
        O: graph_doc(r.output()),
        K: graph_doc(r.interface()),
        I: graph_doc(r.input()),
        o: bare_morphism_doc(r.o()),
        i: bare_morphism_doc(r.i()),
        condition: cond.map(node_doc),
    }
}

pub fn rule_from_doc(d: &RuleDoc) -> Result<RuleWC, IoError> {
    let o = Arc::new(graph_from_doc(&d.O, "O")?);
    let k = Arc::new(graph_from_doc(&d.K, "K")?);
    let i = Arc::new(graph_from_doc(&d.I, "I")?);
    let named = BTreeMap::from([("O", o.clone()), ("K", k.clone()), ("I", i.clone())]);
    let om = morphism_from_doc(&d.o, Some(&k), Some(&o), &named, "o")?;
    let im = morphism_from_doc(&d.i, Some(&k), Some(&i), &named, "i")?;
    let rule = Rule::new(om, im).map_err(invalid("rule"))?;
    let cond = match &d.condition {
        Some(c) => condition_from_node(c, rule.input(), "condition")?,
        None => Condition::tt(rule.input().clone()),
    };
    RuleWC::new(rule, cond).map_err(invalid("condition"))
}

pub fn trace_doc(step: &RewriteStep) -> TraceDoc {
    TraceDoc {
        semantics: step.semantics,
        host: graph_doc(&step.host),
        result: graph_doc(&step.result),
        m: named_morphism_doc(&step.m, "I", "host"),
        comatch: named_morphism_doc(&step.comatch, "O", "result"),
        context: graph_doc(&step.context.object),
        context_in_host: named_morphism_doc(&step.context.j, "context", "host"),
        context_in_result: named_morphism_doc(&step.h, "context", "result"),
    }
}

impl Document {
    pub fn to_body(&self) -> Body {
        match self {
            Document::Graph(g) => Body::Graph(graph_doc(g)),
            Document::Morphism(m) => Body::Morphism(morphism_doc(m)),
            Document::Rule(r) => Body::Rule(rule_doc(r, None)),
            Document::RuleWC(r) => Body::Rulewc(rule_doc(&r.rule, Some(&r.cond))),
            Document::Condition(c) => Body::Condition(condition_doc(c)),
            Document::Trace(t) => Body::Trace(t.clone()),
            Document::Report(r) => Body::Report(r.clone()),
        }
    }

    pub fn from_body(b: &Body) -> Result<Document, IoError> {
        Ok(match b {
            Body::Graph(g) => Document::Graph(graph_from_doc(g, "payload")?),
            Body::Morphism(m) => Document::Morphism(morphism_from_doc(m, None, None, &BTreeMap::new(), "payload")?),
            Body::Rule(r) => Document::Rule(rule_from_doc(r)?.rule),
            Body::Rulewc(r) => Document::RuleWC(rule_from_doc(r)?),
            Body::Condition(c) => Document::Condition(condition_from_doc(c)?),
            Body::Trace(t) => Document::Trace(t.clone()),
            Body::Report(r) => Document::Report(r.clone()),
        })
    }
}

/// Parses and validates a document.
pub fn parse(text: &str) -> Result<Document, IoError> {
    #[derive(Deserialize)]
    struct Version {
        format_version: u32,
    }
    let parse_err = |e: serde_json::Error| IoError::Parse { line: e.line(), column: e.column(), message: e.to_string() };
    let v: Version = serde_json::from_str(text).map_err(parse_err)?;
    if v.format_version != FORMAT_VERSION {
        return Err(IoError::SchemaVersionMismatch { found: v.format_version });
    }
    let env: Envelope = serde_json::from_str(text).map_err(parse_err)?;
    let body = Body::from_envelope(env)
        .map_err(|e| IoError::Parse { line: 0, column: 0, message: format!("payload: {e}") })?;
    Document::from_body(&body)
}

/// Pretty-printed JSON with a trailing newline.
pub fn serialize(doc: &Document) -> String {
    let env = doc.to_body().to_envelope();
    let mut s = serde_json::to_string_pretty(&env).expect("documents serialize");
    s.push('\n');
    s
}

/// Single-line JSON, for line-delimited streams.
pub fn serialize_line(doc: &Document) -> String {
    let env = doc.to_body().to_envelope();
    serde_json::to_string(&env).expect("documents serialize")
}

/// `serialize(parse(text))`.
pub fn canonicalize(text: &str) -> Result<String, IoError> {
    Ok(serialize(&parse(text)?))
}

pub fn load(path: impl AsRef<Path>) -> Result<Document, IoError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| IoError::Io { path: path.display().to_string(), source })?;
    parse(&text)
}

pub fn save(doc: &Document, path: impl AsRef<Path>) -> Result<(), IoError> {
    let path = path.as_ref();
    std::fs::write(path, serialize(doc)).map_err(|source| IoError::Io { path: path.display().to_string(), source })
}

/// Graphviz rendering of a graph.
pub fn to_dot(g: &Graph, name: &str) -> String {
    let (kw, arrow) = match g.flavor() {
        Flavor::Directed => ("digraph", "->"),
        Flavor::Undirected => ("graph", "--"),
    };
    let mut s = format!("{kw} {name} {{\n");
    for v in g.vertices() {
        let _ = writeln!(s, "  v{v} [label=\"{v}\"];");
    }
    for e in g.edges() {
        let _ = writeln!(s, "  v{} {arrow} v{} [label=\"e{}\"];", e.src, e.tgt, e.id);
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_round_trip() {
        let g = Graph::new(Flavor::Undirected, [3, 1], [(0, 3, 1), (1, 1, 1)]).unwrap();
        let text = serialize(&Document::Graph(g.clone()));
        let back = parse(&text).unwrap().into_graph().unwrap();
        assert_eq!(back, g);
        assert_eq!(canonicalize(&text).unwrap(), text);
    }

    #[test]
    fn unknown_endpoint_is_rejected() {
        let text = r#"{"format_version":1,"kind":"graph","payload":
            {"flavor":"directed","vertices":[0],"edges":[{"id":0,"ends":[0,7]}]}}"#;
        assert!(matches!(parse(text), Err(IoError::InvariantViolation { .. })));
    }

    #[test]
    fn version_is_checked() {
        let text = r#"{"format_version":9,"kind":"graph","payload":{"flavor":"directed","vertices":[],"edges":[]}}"#;
        assert!(matches!(parse(text), Err(IoError::SchemaVersionMismatch { found: 9 })));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse("{\n  \"format_version\": 1,\n  oops\n}").unwrap_err();
        let IoError::Parse { line, .. } = err else { panic!("{err}") };
        assert_eq!(line, 3);
    }

    #[test]
    fn rule_with_condition_round_trip() {
        let r = Rule::edge_addition(Flavor::Directed);
        let e = Arc::new(Graph::new(Flavor::Directed, [0, 1], [(0, 0, 1)]).unwrap());
        let c = Condition::not(Condition::exists_plain(Morphism::inclusion(r.input().clone(), e).unwrap()).unwrap());
        let rw = RuleWC::new(r, c).unwrap();
        let text = serialize(&Document::RuleWC(rw.clone()));
        let back = parse(&text).unwrap().into_rulewc().unwrap();
        assert_eq!(back.rule, rw.rule);
        assert_eq!(back.cond, rw.cond);
    }

    #[test]
    fn dot_lists_everything() {
        let g = Graph::path(Flavor::Directed, 3);
        let d = to_dot(&g, "g");
        assert!(d.starts_with("digraph g {"));
        assert_eq!(d.matches("->").count(), 2);
    }
}
