//! Planar rooted trees, grafting, vertex orderings, and the Koszul-sign
//! bookkeeping that makes every differential in the crate well-defined.
//!
//! A tree is always a planar rooted tree; the leaf numbering is induced by the
//! depth-first leftmost traversal. Vertices may have arity 0.

use std::fmt;
use thiserror::Error;

/// A colour from the finite colour set declared by the enclosing context.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Color(pub String);

impl Color {
    pub fn new(name: impl Into<String>) -> Self {
        Color(name.into())
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Output colour plus the ordered word of input colours of an operation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Signature {
    pub output: Color,
    pub inputs: Vec<Color>,
}

impl Signature {
    pub fn new(output: Color, inputs: Vec<Color>) -> Self {
        Signature { output, inputs }
    }

    /// Single-colour signature `c; c,...,c` of the given arity.
    pub fn monochrome(c: &Color, arity: usize) -> Self {
        Signature {
            output: c.clone(),
            inputs: vec![c.clone(); arity],
        }
    }

    pub fn arity(&self) -> usize {
        self.inputs.len()
    }
}

/// A named basis element of a generating collection.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratorSymbol {
    pub name: String,
    pub signature: Signature,
    pub degree: i64,
    /// Extra integer grade preserved by all differentials in this crate
    /// (the φ-weight in the derivation resolutions; 0 elsewhere).
    pub weight: i64,
}

impl GeneratorSymbol {
    pub fn new(name: impl Into<String>, signature: Signature, degree: i64) -> Self {
        GeneratorSymbol {
            name: name.into(),
            signature,
            degree,
            weight: 0,
        }
    }

    pub fn with_weight(mut self, weight: i64) -> Self {
        self.weight = weight;
        self
    }

    pub fn arity(&self) -> usize {
        self.signature.arity()
    }
}

/// A planar rooted tree, represented by its root vertex. Each vertex carries
/// an ordered list of legs; a leg is either a leaf or an edge to a child
/// vertex. The leaf order and the canonical vertex order (root-first
/// depth-first leftmost) are both intrinsic to this representation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlanarTree {
    pub legs: Vec<Leg>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Leg {
    Leaf,
    Child(PlanarTree),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("leaf index {index} out of range 1..={leaves}")]
    LeafOutOfRange { index: usize, leaves: usize },
    #[error("vertex order must be a bijection onto 1..={0}")]
    NotABijection(usize),
    #[error("expected {expected} decorations, got {got}")]
    DecorationCount { expected: usize, got: usize },
    #[error("degree/permutation size mismatch: {degrees} degrees vs {perm} permutation entries")]
    SignSizeMismatch { degrees: usize, perm: usize },
}

impl PlanarTree {
    /// A single vertex with `arity` leaf legs.
    pub fn corolla(arity: usize) -> Self {
        PlanarTree {
            legs: vec![Leg::Leaf; arity],
        }
    }

    pub fn leaf_count(&self) -> usize {
        self.legs
            .iter()
            .map(|l| match l {
                Leg::Leaf => 1,
                Leg::Child(t) => t.leaf_count(),
            })
            .sum()
    }

    pub fn vertex_count(&self) -> usize {
        1 + self
            .legs
            .iter()
            .map(|l| match l {
                Leg::Leaf => 0,
                Leg::Child(t) => t.vertex_count(),
            })
            .sum::<usize>()
    }

    /// Grafts `other` onto the `i`-th leaf (1-based) of `self`.
    pub fn graft(&self, i: usize, other: &PlanarTree) -> Result<PlanarTree, TreeError> {
        let leaves = self.leaf_count();
        if i == 0 || i > leaves {
            return Err(TreeError::LeafOutOfRange { index: i, leaves });
        }
        let mut counter = i;
        Ok(self.graft_inner(&mut counter, other))
    }

    fn graft_inner(&self, counter: &mut usize, other: &PlanarTree) -> PlanarTree {
        let mut legs = Vec::with_capacity(self.legs.len());
        for leg in &self.legs {
            match leg {
                Leg::Leaf => {
                    *counter = counter.wrapping_sub(1);
                    if *counter == 0 {
                        legs.push(Leg::Child(other.clone()));
                        // Poison the counter so no further leaf matches.
                        *counter = usize::MAX;
                    } else {
                        legs.push(Leg::Leaf);
                    }
                }
                Leg::Child(t) => legs.push(Leg::Child(t.graft_inner(counter, other))),
            }
        }
        PlanarTree { legs }
    }

    /// Arities of the vertices in canonical (root-first depth-first leftmost)
    /// order.
    pub fn vertex_arities(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_arities(&mut out);
        out
    }

    fn collect_arities(&self, out: &mut Vec<usize>) {
        out.push(self.legs.len());
        for leg in &self.legs {
            if let Leg::Child(t) = leg {
                t.collect_arities(out);
            }
        }
    }
}

/// A planar tree with a total order on its vertices; `order[k]` is the
/// position (1-based) of the `k`-th vertex in canonical traversal order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedTree {
    pub tree: PlanarTree,
    pub order: Vec<usize>,
}

impl OrderedTree {
    pub fn new(tree: PlanarTree, order: Vec<usize>) -> Result<Self, TreeError> {
        let n = tree.vertex_count();
        let mut seen = vec![false; n];
        if order.len() != n {
            return Err(TreeError::NotABijection(n));
        }
        for &o in &order {
            if o == 0 || o > n || seen[o - 1] {
                return Err(TreeError::NotABijection(n));
            }
            seen[o - 1] = true;
        }
        Ok(OrderedTree { tree, order })
    }
}

/// The canonical vertex order: root first, then depth-first leftmost-leg
/// first. Idempotent by construction (the order is intrinsic to the planar
/// representation, so the assigned ranks are always `1..=n` in traversal
/// order).
pub fn canonical_order(t: &PlanarTree) -> OrderedTree {
    let n = t.vertex_count();
    OrderedTree {
        tree: t.clone(),
        order: (1..=n).collect(),
    }
}

/// Koszul sign of rearranging graded symbols: the symbols currently sit in
/// positions `0..n` with the given degrees, and `perm[i]` is the new position
/// of symbol `i`. The sign is `(-1)^Σ d_i·d_j` over all pairs `i < j` whose
/// relative order is inverted.
pub fn koszul_reorder_sign(degrees: &[i64], perm: &[usize]) -> Result<i64, TreeError> {
    if degrees.len() != perm.len() {
        return Err(TreeError::SignSizeMismatch {
            degrees: degrees.len(),
            perm: perm.len(),
        });
    }
    let mut exp: i64 = 0;
    for i in 0..degrees.len() {
        for j in (i + 1)..degrees.len() {
            if perm[i] > perm[j] {
                exp += degrees[i] * degrees[j];
            }
        }
    }
    Ok(if exp % 2 == 0 { 1 } else { -1 })
}

/// Evaluates the tree composition `T_b(p_1, ..., p_n)` by the inductive
/// scheme: start at the root and repeatedly attach, among the vertices
/// adjacent to the part already built, the one with the smallest order value,
/// composing with the black-box `composer` at the matching input slot.
///
/// `decorations[k]` decorates the `k`-th vertex in canonical traversal order;
/// `composer(a, l, b)` must implement `a ∘_l b` (1-based `l`) of some operad.
pub fn tree_compose<T, E, F>(
    t: &OrderedTree,
    decorations: &[T],
    mut composer: F,
) -> Result<T, ComposeError<E>>
where
    T: Clone,
    F: FnMut(&T, usize, &T) -> Result<T, E>,
{
    let n = t.tree.vertex_count();
    if decorations.len() != n {
        return Err(ComposeError::Tree(TreeError::DecorationCount {
            expected: n,
            got: decorations.len(),
        }));
    }
    // Flatten the tree: for each vertex (canonical order), its legs as
    // leaf-or-child(dfs index).
    let mut vertex_legs: Vec<Vec<Option<usize>>> = Vec::with_capacity(n);
    flatten(&t.tree, &mut vertex_legs);

    let mut attached = vec![false; n];
    attached[0] = true;
    let mut element = decorations[0].clone();
    // Open slots of the partial composite, in planar order: `None` is a true
    // leaf, `Some(c)` is an edge to the not-yet-attached vertex `c`.
    let mut open: Vec<Option<usize>> = vertex_legs[0].clone();
    for _ in 1..n {
        // Frontier vertex with minimal order value.
        let (slot_idx, child) = open
            .iter()
            .enumerate()
            .filter_map(|(idx, slot)| slot.filter(|&c| !attached[c]).map(|c| (idx, c)))
            .min_by_key(|&(_, c)| t.order[c])
            .expect("connected tree always has a frontier vertex");
        element = composer(&element, slot_idx + 1, &decorations[child])
            .map_err(ComposeError::Composer)?;
        attached[child] = true;
        open.splice(slot_idx..=slot_idx, vertex_legs[child].clone());
    }
    Ok(element)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComposeError<E> {
    #[error(transparent)]
    Tree(TreeError),
    #[error("composer failed: {0}")]
    Composer(E),
}

fn flatten(t: &PlanarTree, out: &mut Vec<Vec<Option<usize>>>) {
    let my_idx = out.len();
    out.push(Vec::new());
    let mut legs = Vec::with_capacity(t.legs.len());
    for leg in &t.legs {
        match leg {
            Leg::Leaf => legs.push(None),
            Leg::Child(c) => {
                legs.push(Some(out.len()));
                flatten(c, out);
            }
        }
    }
    out[my_idx] = legs;
}
