//! Nested application conditions.
//!
//! A condition is a finite tree rooted at a graph `P`. A mono `p: P -> H`
//! satisfies `∃(a: P -> A, c)` iff some mono `q: A -> H` with `q ∘ a = p`
//! satisfies `c`; the boolean connectives are read classically.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{Graph, Id};
use crate::matching::{any_mono_extension, isos_extending, Pins};
use crate::morphism::{same_graph, Morphism};

#[derive(Clone, PartialEq, Eq)]
pub enum Node {
    True,
    False,
    Exists(Morphism, Box<Condition>),
    Not(Box<Condition>),
    And(Vec<Condition>),
    Or(Vec<Condition>),
}

#[derive(Clone)]
pub struct Condition {
    root: Arc<Graph>,
    node: Node,
}

impl PartialEq for Condition {
    fn eq(&self, other: &Self) -> bool {
        same_graph(&self.root, &other.root) && self.node == other.node
    }
}

impl Eq for Condition {}

impl Condition {
    pub fn tt(root: Arc<Graph>) -> Condition {
        Condition { root, node: Node::True }
    }

    pub fn ff(root: Arc<Graph>) -> Condition {
        Condition { root, node: Node::False }
    }

    /// `∃(a, sub)`; `a` must be mono and `sub` rooted at `cod(a)`.
    pub fn exists(a: Morphism, sub: Condition) -> Result<Condition> {
        if !a.is_mono() {
            return Err(Error::NotMono);
        }
        if !same_graph(a.cod(), &sub.root) {
            return Err(Error::RootMismatch);
        }
        let sub = sub.with_root(a.cod().clone());
        Ok(Condition { root: a.dom().clone(), node: Node::Exists(a, Box::new(sub)) })
    }

    /// `∃a := ∃(a, true)`.
    pub fn exists_plain(a: Morphism) -> Result<Condition> {
        let sub = Condition::tt(a.cod().clone());
        Condition::exists(a, sub)
    }

    /// `∀(a, c) := ¬∃(a, ¬c)`.
    pub fn forall(a: Morphism, sub: Condition) -> Result<Condition> {
        Ok(Condition::not(Condition::exists(a, Condition::not(sub))?))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(c: Condition) -> Condition {
        Condition { root: c.root.clone(), node: Node::Not(Box::new(c)) }
    }

    pub fn and(root: Arc<Graph>, children: Vec<Condition>) -> Result<Condition> {
        let children = Self::adopt(&root, children)?;
        Ok(Condition { root, node: Node::And(children) })
    }

    pub fn or(root: Arc<Graph>, children: Vec<Condition>) -> Result<Condition> {
        let children = Self::adopt(&root, children)?;
        Ok(Condition { root, node: Node::Or(children) })
    }

    fn adopt(root: &Arc<Graph>, children: Vec<Condition>) -> Result<Vec<Condition>> {
        children
            .into_iter()
            .map(|c| {
                if same_graph(root, &c.root) {
                    Ok(c.with_root(root.clone()))
                } else {
                    Err(Error::RootMismatch)
                }
            })
            .collect()
    }

    /// Shares the structurally equal graph `root` as this condition's root.
    pub(crate) fn with_root(mut self, root: Arc<Graph>) -> Condition {
        debug_assert!(same_graph(&self.root, &root));
        if Arc::ptr_eq(&self.root, &root) {
            return self;
        }
        self.root = root.clone();
        self.node = match self.node {
            Node::Exists(a, sub) => Node::Exists(a.with_dom(root), sub),
            Node::Not(c) => Node::Not(Box::new(c.with_root(root))),
            Node::And(cs) => Node::And(cs.into_iter().map(|c| c.with_root(root.clone())).collect()),
            Node::Or(cs) => Node::Or(cs.into_iter().map(|c| c.with_root(root.clone())).collect()),
            n => n,
        };
        self
    }

    pub fn root(&self) -> &Arc<Graph> {
        &self.root
    }

    pub fn node(&self) -> &Node {
        &self.node
    }

    pub fn is_true(&self) -> bool {
        matches!(self.node, Node::True)
    }

    pub fn is_false(&self) -> bool {
        matches!(self.node, Node::False)
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        1 + match &self.node {
            Node::True | Node::False => 0,
            Node::Exists(_, c) | Node::Not(c) => c.size(),
            Node::And(cs) | Node::Or(cs) => cs.iter().map(Condition::size).sum(),
        }
    }

    /// Nesting depth of existential quantifiers.
    pub fn depth(&self) -> usize {
        match &self.node {
            Node::True | Node::False => 0,
            Node::Exists(_, c) => 1 + c.depth(),
            Node::Not(c) => c.depth(),
            Node::And(cs) | Node::Or(cs) => cs.iter().map(Condition::depth).max().unwrap_or(0),
        }
    }

    /// Rebuilds the tree over a new root, applying `f` to every top-level
    /// existential and keeping the boolean skeleton.
    pub fn map_exists(
        &self,
        root: &Arc<Graph>,
        f: &mut dyn FnMut(&Morphism, &Condition) -> Result<Condition>,
    ) -> Result<Condition> {
        let node = match &self.node {
            Node::True => Node::True,
            Node::False => Node::False,
            Node::Exists(a, c) => return f(a, c).map(|c| c.with_root(root.clone())),
            Node::Not(c) => Node::Not(Box::new(c.map_exists(root, f)?)),
            Node::And(cs) => Node::And(cs.iter().map(|c| c.map_exists(root, f)).collect::<Result<_>>()?),
            Node::Or(cs) => Node::Or(cs.iter().map(|c| c.map_exists(root, f)).collect::<Result<_>>()?),
        };
        Ok(Condition { root: root.clone(), node })
    }

    /// Re-roots along an isomorphism `phi: P -> root`: the result is over
    /// `P` and `p ⊨ result` iff `p ∘ phi⁻¹ ⊨ self`.
    pub fn reroot(&self, phi: &Morphism) -> Condition {
        debug_assert!(phi.is_iso() && same_graph(phi.cod(), &self.root));
        self.map_exists(phi.dom(), &mut |a, c| {
            let b = phi.then(a).expect("composable");
            Ok(Condition { root: phi.dom().clone(), node: Node::Exists(b, Box::new(c.clone())) })
        })
        .expect("rerooting cannot fail")
    }

    /// Deterministic structural ordering key.
    fn cmp_key(&self, other: &Condition) -> Ordering {
        fn tag(n: &Node) -> u8 {
            match n {
                Node::True => 0,
                Node::False => 1,
                Node::Exists(..) => 2,
                Node::Not(_) => 3,
                Node::And(_) => 4,
                Node::Or(_) => 5,
            }
        }
        tag(&self.node).cmp(&tag(&other.node)).then_with(|| match (&self.node, &other.node) {
            (Node::Exists(a, c), Node::Exists(b, d)) => graph_key(a.cod())
                .cmp(&graph_key(b.cod()))
                .then_with(|| a.sort_key().cmp(&b.sort_key()))
                .then_with(|| c.cmp_key(d)),
            (Node::Not(c), Node::Not(d)) => c.cmp_key(d),
            (Node::And(cs), Node::And(ds)) | (Node::Or(cs), Node::Or(ds)) => {
                cs.len().cmp(&ds.len()).then_with(|| {
                    cs.iter()
                        .zip(ds)
                        .map(|(c, d)| c.cmp_key(d))
                        .find(|o| o.is_ne())
                        .unwrap_or(Ordering::Equal)
                })
            }
            _ => Ordering::Equal,
        })
    }
}

fn graph_key(g: &Graph) -> (usize, usize, Vec<Id>, Vec<(Id, Id, Id)>) {
    (
        g.vertex_count(),
        g.edge_count(),
        g.vertices().to_vec(),
        g.edges().iter().map(|e| (e.id, e.src, e.tgt)).collect(),
    )
}

/// `p ⊨ c` for a mono `p` with `dom(p) = root(c)`.
pub fn satisfies(p: &Morphism, c: &Condition) -> Result<bool> {
    if !same_graph(p.dom(), &c.root) {
        return Err(Error::RootMismatch);
    }
    if !p.is_mono() {
        return Err(Error::NotMono);
    }
    Ok(eval(p, c))
}

/// `X ⊨ c` for a condition rooted at the empty graph.
pub fn satisfies_object(x: &Arc<Graph>, c: &Condition) -> Result<bool> {
    if !c.root.is_empty() {
        return Err(Error::NonInitialObjectCondition);
    }
    if c.root.flavor() != x.flavor() {
        return Err(Error::FlavorMismatch);
    }
    let p = Morphism::initial(x.clone()).with_dom(c.root.clone());
    Ok(eval(&p, c))
}

pub(crate) fn eval(p: &Morphism, c: &Condition) -> bool {
    match &c.node {
        Node::True => true,
        Node::False => false,
        Node::Exists(a, sub) => {
            let pins = Pins::factoring(a, p);
            any_mono_extension(a.cod(), p.cod(), &pins, |q| eval(q, sub)).expect("flavors agree")
        }
        Node::Not(sub) => !eval(p, sub),
        Node::And(cs) => cs.iter().all(|c| eval(p, c)),
        Node::Or(cs) => cs.iter().any(|c| eval(p, c)),
    }
}

/// Satisfaction-preserving normalization.
///
/// Besides constant folding and double negation, nested conjunctions and
/// disjunctions are flattened, children are deduplicated up to condition
/// isomorphism and sorted, and `∃(a, c)` with `a` an isomorphism is replaced
/// by `c` re-rooted along `a`.
pub fn simplify(c: &Condition) -> Condition {
    let mut cur = simp(c);
    loop {
        let next = simp(&cur);
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

fn simp(c: &Condition) -> Condition {
    let root = c.root.clone();
    match &c.node {
        Node::True | Node::False => c.clone(),
        Node::Not(x) => {
            let x = simp(x);
            match x.node {
                Node::True => Condition::ff(root),
                Node::False => Condition::tt(root),
                Node::Not(y) => *y,
                _ => Condition::not(x),
            }
        }
        Node::Exists(a, x) => {
            let x = simp(x);
            if x.is_false() {
                Condition::ff(root)
            } else if a.is_iso() {
                simp(&x.reroot(a))
            } else {
                Condition { root, node: Node::Exists(a.clone(), Box::new(x)) }
            }
        }
        Node::And(cs) => junction(root, cs, true),
        Node::Or(cs) => junction(root, cs, false),
    }
}

fn junction(root: Arc<Graph>, cs: &[Condition], conj: bool) -> Condition {
    let mut kids: Vec<Condition> = Vec::new();
    let push = |k: Condition, kids: &mut Vec<Condition>| {
        if !kids.iter().any(|x| condition_iso(x, &k)) {
            kids.push(k);
        }
    };
    for c in cs {
        let k = simp(c);
        match (&k.node, conj) {
            (Node::False, true) => return Condition::ff(root),
            (Node::True, false) => return Condition::tt(root),
            (Node::True, true) | (Node::False, false) => {}
            (Node::And(ds), true) | (Node::Or(ds), false) => {
                for d in ds.clone() {
                    push(d, &mut kids);
                }
            }
            _ => push(k, &mut kids),
        }
    }
    kids.sort_by(|a, b| a.cmp_key(b));
    match kids.len() {
        0 if conj => Condition::tt(root),
        0 => Condition::ff(root),
        1 => kids.pop().unwrap(),
        _ if conj => Condition { root, node: Node::And(kids) },
        _ => Condition { root, node: Node::Or(kids) },
    }
}

/// Structural isomorphism of conditions over the same root: existentials
/// match when an isomorphism of their targets commutes with the morphisms
/// and carries one subcondition onto the other; junction children match
/// up to permutation.
pub fn condition_iso(c1: &Condition, c2: &Condition) -> bool {
    match (&c1.node, &c2.node) {
        (Node::True, Node::True) | (Node::False, Node::False) => true,
        (Node::Not(x), Node::Not(y)) => condition_iso(x, y),
        (Node::And(xs), Node::And(ys)) | (Node::Or(xs), Node::Or(ys)) => {
            xs.len() == ys.len() && permutation_match(xs, ys, &mut vec![false; ys.len()], 0)
        }
        (Node::Exists(a1, d1), Node::Exists(a2, d2)) => {
            if a1 == a2 && d1 == d2 {
                return true;
            }
            let a = a1.cod();
            let b = a2.cod();
            if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() || d1.size() != d2.size() {
                return false;
            }
            let pins = Pins::factoring(a1, a2);
            let phis = isos_extending(a, b, &pins).expect("flavors agree");
            phis.iter().any(|phi| {
                let inv = phi.inverse().expect("iso");
                condition_iso(&d1.reroot(&inv), d2)
            })
        }
        _ => false,
    }
}

fn permutation_match(xs: &[Condition], ys: &[Condition], used: &mut Vec<bool>, k: usize) -> bool {
    if k == xs.len() {
        return true;
    }
    for j in 0..ys.len() {
        if !used[j] && condition_iso(&xs[k], &ys[j]) {
            used[j] = true;
            if permutation_match(xs, ys, used, k + 1) {
                return true;
            }
            used[j] = false;
        }
    }
    false
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.node {
            Node::True => write!(f, "true"),
            Node::False => write!(f, "false"),
            Node::Exists(a, c) => {
                write!(f, "∃({} ↪ {}", a.dom(), a.cod())?;
                if !c.is_true() {
                    write!(f, ", {c}")?;
                }
                write!(f, ")")
            }
            Node::Not(c) => write!(f, "¬{c}"),
            Node::And(cs) | Node::Or(cs) => {
                let op = if matches!(self.node, Node::And(_)) { " ∧ " } else { " ∨ " };
                write!(f, "(")?;
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        write!(f, "{op}")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Debug for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
