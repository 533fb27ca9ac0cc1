//! Clusters and the five ways of merging them.

use std::fmt;

use crate::tree::{LabelId, LabelTable, LabeledTree};

/// How two clusters were merged.
///
/// `A` and `B` are vertical: the shared node is the bottom boundary of the
/// upper (left) cluster and the top boundary of the lower (right) one. With
/// `A` the lower cluster has a bottom boundary, with `B` it does not.
///
/// `C`, `D` and `E` are horizontal: both clusters share their top boundary.
/// With `C` only the left one has a bottom boundary, with `D` only the right
/// one, with `E` neither.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MergeType {
    A,
    B,
    C,
    D,
    E,
}

impl MergeType {
    pub const ALL: [MergeType; 5] = [MergeType::A, MergeType::B, MergeType::C, MergeType::D, MergeType::E];

    #[inline]
    pub fn is_vertical(self) -> bool {
        matches!(self, MergeType::A | MergeType::B)
    }

    /// Whether the merged cluster has a bottom boundary node.
    #[inline]
    pub fn has_bottom(self) -> bool {
        matches!(self, MergeType::A | MergeType::C | MergeType::D)
    }

    pub fn as_char(self) -> char {
        match self {
            MergeType::A => 'a',
            MergeType::B => 'b',
            MergeType::C => 'c',
            MergeType::D => 'd',
            MergeType::E => 'e',
        }
    }

    pub fn from_char(c: char) -> Option<MergeType> {
        Some(match c {
            'a' => MergeType::A,
            'b' => MergeType::B,
            'c' => MergeType::C,
            'd' => MergeType::D,
            'e' => MergeType::E,
            _ => return None,
        })
    }
}

impl fmt::Display for MergeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A node of a top tree or top DAG. Child ids index the same node vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cluster {
    /// A single edge, labeled parent first.
    Leaf { parent: LabelId, child: LabelId },
    Merge { kind: MergeType, left: u32, right: u32 },
}

/// An explicit cluster: its tree pattern plus the local preorder number of
/// its bottom boundary node, when it has one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterPattern {
    pub tree: LabeledTree,
    pub bottom: Option<usize>,
}

/// Scratch arena used when expanding clusters into explicit trees.
pub(crate) struct Expander<'a> {
    nodes: &'a [Cluster],
    pub(crate) label: Vec<LabelId>,
    pub(crate) kids: Vec<Vec<usize>>,
    pub(crate) expanded: usize,
}

impl<'a> Expander<'a> {
    pub(crate) fn new(nodes: &'a [Cluster]) -> Self {
        Expander {
            nodes,
            label: Vec::new(),
            kids: Vec::new(),
            expanded: 0,
        }
    }

    fn node(&mut self, label: LabelId) -> usize {
        self.label.push(label);
        self.kids.push(Vec::new());
        self.label.len() - 1
    }

    /// Expands cluster `id`, returning its top node and its bottom node.
    /// Leaves always report their child as bottom; the enclosing merge type
    /// decides whether that is meaningful.
    pub(crate) fn expand(&mut self, id: u32) -> (usize, Option<usize>) {
        self.expanded += 1;
        match self.nodes[id as usize] {
            Cluster::Leaf { parent, child } => {
                let top = self.node(parent);
                let bottom = self.node(child);
                self.kids[top].push(bottom);
                (top, Some(bottom))
            }
            Cluster::Merge { kind, left, right } => {
                let (top_a, bottom_a) = self.expand(left);
                let (top_b, bottom_b) = self.expand(right);
                if kind.is_vertical() {
                    let shared = bottom_a.expect("upper cluster of a vertical merge has a bottom");
                    self.glue(shared, top_b);
                    let bottom = if kind == MergeType::A { bottom_b } else { None };
                    (top_a, bottom)
                } else {
                    self.glue(top_a, top_b);
                    let bottom = match kind {
                        MergeType::C => bottom_a,
                        MergeType::D => bottom_b,
                        _ => None,
                    };
                    (top_a, bottom)
                }
            }
        }
    }

    /// Moves the children of `from` after the children of `onto`; the two
    /// nodes are the same node of the original tree.
    pub(crate) fn glue(&mut self, onto: usize, from: usize) {
        assert_eq!(
            self.label[onto], self.label[from],
            "glued boundary nodes disagree on their label"
        );
        let moved = std::mem::take(&mut self.kids[from]);
        self.kids[onto].extend(moved);
    }

    pub(crate) fn into_tree(self, root: usize, labels: &LabelTable) -> (LabeledTree, Vec<usize>) {
        let label = self.label;
        LabeledTree::from_shape_mapped(root, &self.kids, |i| labels.name(label[i]))
    }
}

/// Expands cluster `id` of `nodes` into an explicit pattern.
///
/// The bottom boundary reported for a leaf cluster is its child endpoint;
/// whether a leaf actually has a bottom boundary depends on where it is used.
pub fn expand_cluster(nodes: &[Cluster], labels: &LabelTable, id: u32) -> ClusterPattern {
    let mut ex = Expander::new(nodes);
    let (root, bottom) = ex.expand(id);
    let (tree, order) = ex.into_tree(root, labels);
    ClusterPattern {
        tree,
        bottom: bottom.map(|b| order[b]),
    }
}
