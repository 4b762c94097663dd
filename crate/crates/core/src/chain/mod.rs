//! Chain formulas.
//!
//! Every chain has a unique formula over the primitive one-edge chain `E`
//! and the two sum operators, once associativity is flattened and flips are
//! pushed down to the leaves (where they vanish, since `flip(E) = E`). A
//! [`Formula`] always holds that canonical form, so chain equality is a
//! structural comparison.
//!
//! Formulas are immutable, reference counted and freely share subtrees,
//! which keeps recursive families such as Koch chains at `O(s)` nodes.

mod builders;
mod enumerate;
mod parse;
mod visibility;

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use thiserror::Error;

pub use builders::*;
pub use enumerate::{
    enumerate_chains, large_schroeder, little_schroeder, ChainEnumerator, ENUMERATION_CAP,
};
pub use parse::{parse_formula, ParseError};
pub use visibility::{
    formula_from_visibility, visibility, visibility_with_cap, VisibilityTriangle, VISIBILITY_CAP,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("chain has {edges} edges, above the cap of {cap}")]
    CapExceeded { edges: usize, cap: usize },
    #[error("visibility triangle is not realizable by a chain: {0}")]
    NotRealizable(String),
}

/// The two ways of concatenating chains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SumKind {
    /// `∨`: every edge between the summands lies above the chain curve.
    Convex,
    /// `∧`: every edge between the summands lies below the chain curve.
    Concave,
}

impl SumKind {
    pub fn flipped(self) -> Self {
        match self {
            SumKind::Convex => SumKind::Concave,
            SumKind::Concave => SumKind::Convex,
        }
    }

    /// Visibility sign given to edges crossing between summands.
    pub fn sign(self) -> i8 {
        match self {
            SumKind::Convex => 1,
            SumKind::Concave => -1,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            SumKind::Convex => "v",
            SumKind::Concave => "^",
        }
    }

    fn tag(self) -> u64 {
        match self {
            SumKind::Convex => 0x9e37_79b9_7f4a_7c15,
            SumKind::Concave => 0xc2b2_ae3d_27d4_eb4f,
        }
    }
}

const PRIM_HASH: u64 = 0x1656_67b1_9e37_79f9;

fn mix(h: u64, v: u64) -> u64 {
    (h.rotate_left(5) ^ v).wrapping_mul(0x517c_c1b7_2722_0a95)
}

enum Node {
    Prim,
    Sum {
        kind: SumKind,
        children: Vec<Formula>,
        edges: usize,
        hash: u64,
        flip_hash: u64,
    },
}

/// A canonical chain formula.
#[derive(Clone)]
pub struct Formula(Arc<Node>);

impl Formula {
    /// The primitive chain `E` with a single chain edge.
    pub fn prim() -> Self {
        Formula(Arc::new(Node::Prim))
    }

    /// An n-ary sum. Children whose root is the same kind of sum are spliced
    /// in, so the result is canonical whenever the children are.
    ///
    /// Panics if fewer than two summands remain.
    pub fn sum(kind: SumKind, parts: impl IntoIterator<Item = Formula>) -> Self {
        let mut children = Vec::new();
        for part in parts {
            match part.sum_kind() {
                Some(k) if k == kind => children.extend(part.children().iter().cloned()),
                _ => children.push(part),
            }
        }
        assert!(children.len() >= 2, "a sum needs at least two summands");
        Self::from_children(kind, children)
    }

    fn from_children(kind: SumKind, children: Vec<Formula>) -> Self {
        let mut edges = 0usize;
        let mut hash = kind.tag();
        let mut flip_hash = kind.flipped().tag();
        for c in &children {
            edges += c.edges();
            hash = mix(hash, c.structural_hash());
            flip_hash = mix(flip_hash, c.flip_hash());
        }
        Formula(Arc::new(Node::Sum {
            kind,
            children,
            edges,
            hash: mix(hash, edges as u64),
            flip_hash: mix(flip_hash, edges as u64),
        }))
    }

    /// Number of chain edges (primitive leaves).
    pub fn edges(&self) -> usize {
        match &*self.0 {
            Node::Prim => 1,
            Node::Sum { edges, .. } => *edges,
        }
    }

    pub fn is_prim(&self) -> bool {
        matches!(&*self.0, Node::Prim)
    }

    pub fn sum_kind(&self) -> Option<SumKind> {
        match &*self.0 {
            Node::Prim => None,
            Node::Sum { kind, .. } => Some(*kind),
        }
    }

    /// Summands of the root; empty for `E`.
    pub fn children(&self) -> &[Formula] {
        match &*self.0 {
            Node::Prim => &[],
            Node::Sum { children, .. } => children,
        }
    }

    /// Upward chains have `V(0,n) >= 0`: `E` and every convex sum.
    pub fn is_upward(&self) -> bool {
        self.sum_kind() != Some(SumKind::Concave)
    }

    /// Structural hash, stable across runs.
    pub fn structural_hash(&self) -> u64 {
        match &*self.0 {
            Node::Prim => PRIM_HASH,
            Node::Sum { hash, .. } => *hash,
        }
    }

    /// The structural hash `flip()` of this formula would have.
    pub fn flip_hash(&self) -> u64 {
        match &*self.0 {
            Node::Prim => PRIM_HASH,
            Node::Sum { flip_hash, .. } => *flip_hash,
        }
    }

    pub fn ptr_eq(&self, other: &Formula) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// The canonical formula of the chain reflected across the x-axis.
    pub fn flip(&self) -> Formula {
        let mut seen = HashMap::new();
        self.flip_shared(&mut seen)
    }

    fn flip_shared(&self, seen: &mut HashMap<*const Node, Formula>) -> Formula {
        let key = Arc::as_ptr(&self.0);
        if let Some(f) = seen.get(&key) {
            return f.clone();
        }
        let out = match &*self.0 {
            Node::Prim => self.clone(),
            Node::Sum { kind, children, .. } => {
                let flipped = children.iter().map(|c| c.flip_shared(seen)).collect();
                Formula::from_children(kind.flipped(), flipped)
            }
        };
        seen.insert(key, out.clone());
        out
    }

    /// Whether `other` is the flip of `self`, without building the flip.
    pub fn is_flip_of(&self, other: &Formula) -> bool {
        if self.flip_hash() != other.structural_hash() || self.edges() != other.edges() {
            return false;
        }
        match (&*self.0, &*other.0) {
            (Node::Prim, Node::Prim) => true,
            (
                Node::Sum {
                    kind: ka,
                    children: ca,
                    ..
                },
                Node::Sum {
                    kind: kb,
                    children: cb,
                    ..
                },
            ) => {
                ka.flipped() == *kb
                    && ca.len() == cb.len()
                    && ca.iter().zip(cb).enumerate().all(|(i, (a, b))| {
                        // repeated shared pairs were already compared
                        (i > 0 && a.ptr_eq(&ca[i - 1]) && b.ptr_eq(&cb[i - 1])) || a.is_flip_of(b)
                    })
            }
            _ => false,
        }
    }

    /// Nesting depth; `E` has depth 0.
    pub fn depth(&self) -> usize {
        let mut memo = HashMap::new();
        self.depth_shared(&mut memo)
    }

    fn depth_shared(&self, memo: &mut HashMap<*const Node, usize>) -> usize {
        let key = Arc::as_ptr(&self.0);
        if let Some(&d) = memo.get(&key) {
            return d;
        }
        let d = match &*self.0 {
            Node::Prim => 0,
            Node::Sum { children, .. } => {
                1 + children
                    .iter()
                    .map(|c| c.depth_shared(memo))
                    .max()
                    .unwrap_or(0)
            }
        };
        memo.insert(key, d);
        d
    }

    fn write_text(&self, out: &mut String) {
        match &*self.0 {
            Node::Prim => out.push('E'),
            Node::Sum { kind, children, .. } => {
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        out.push(' ');
                        out.push_str(kind.symbol());
                        out.push(' ');
                    }
                    if c.is_prim() {
                        out.push('E');
                    } else {
                        out.push('(');
                        c.write_text(out);
                        out.push(')');
                    }
                }
            }
        }
    }
}

impl PartialEq for Formula {
    fn eq(&self, other: &Self) -> bool {
        if self.ptr_eq(other) {
            return true;
        }
        if self.structural_hash() != other.structural_hash() || self.edges() != other.edges() {
            return false;
        }
        match (&*self.0, &*other.0) {
            (Node::Prim, Node::Prim) => true,
            (
                Node::Sum {
                    kind: ka,
                    children: ca,
                    ..
                },
                Node::Sum {
                    kind: kb,
                    children: cb,
                    ..
                },
            ) => {
                ka == kb
                    && ca.len() == cb.len()
                    && ca.iter().zip(cb).enumerate().all(|(i, (a, b))| {
                        (i > 0 && a.ptr_eq(&ca[i - 1]) && b.ptr_eq(&cb[i - 1])) || a == b
                    })
            }
            _ => false,
        }
    }
}

impl Eq for Formula {}

impl Hash for Formula {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.structural_hash());
    }
}

/// Canonical text: `E`, sums joined by ` v ` / ` ^ `, nested sums in parentheses.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write_text(&mut s);
        f.write_str(&s)
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.edges() <= 64 {
            write!(f, "Formula({})", self)
        } else {
            write!(f, "Formula(<{} edges>)", self.edges())
        }
    }
}

/// `F1 ∨ F2`, flattened.
pub fn vee(a: &Formula, b: &Formula) -> Formula {
    Formula::sum(SumKind::Convex, [a.clone(), b.clone()])
}

/// `F1 ∧ F2`, flattened.
pub fn wedge(a: &Formula, b: &Formula) -> Formula {
    Formula::sum(SumKind::Concave, [a.clone(), b.clone()])
}

/// Free-function form of [`Formula::flip`].
pub fn flip(f: &Formula) -> Formula {
    f.flip()
}
