//! The top DAG: the minimal DAG of a top tree, augmented for navigation.

use std::collections::HashMap;

use crate::cluster::{expand_cluster, Cluster, ClusterPattern, MergeType};
use crate::construct::{build_top_tree, TopTree};
use crate::tree::{LabelId, LabelTable, LabeledTree};

/// Per-cluster data the navigation queries read.
///
/// Leaf clusters always carry `spine = Some(1)` and `bpos = Some(2)`; those
/// values are only consulted where the enclosing merge guarantees that the
/// leaf's child endpoint is a bottom boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Augmentation {
    /// Nodes in the cluster's tree pattern.
    pub size: usize,
    /// Longest downward path from the top boundary, in edges.
    pub height: usize,
    /// Edge distance from the top to the bottom boundary.
    pub spine: Option<usize>,
    /// Local preorder number of the bottom boundary.
    pub bpos: Option<usize>,
    /// Edge distance from this cluster's top boundary to its right child's.
    pub dist_to_right_top: usize,
}

impl Augmentation {
    const LEAF: Augmentation = Augmentation {
        size: 2,
        height: 1,
        spine: Some(1),
        bpos: Some(2),
        dist_to_right_top: 0,
    };
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DagError {
    #[error("node {node}: child id {child} does not exist ({len} nodes)")]
    DanglingChild { node: usize, child: u32, len: usize },
    #[error("node {node}: child id {child} is not smaller than the node's own id")]
    NotTopological { node: usize, child: u32 },
    #[error("node {node}: label id {label} out of range ({len} labels)")]
    LabelOutOfRange { node: usize, label: u32, len: usize },
    #[error("node {node}: merge type {kind} is inconsistent with its children")]
    InconsistentMerge { node: usize, kind: MergeType },
    #[error("root id {root} out of range ({len} nodes)")]
    BadRoot { root: u32, len: usize },
    #[error("root cluster has {found} nodes but the header says {expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("root cluster must not have a bottom boundary")]
    RootHasBottom,
    #[error("a DAG for a single-node tree carries only the root label")]
    DegenerateShape,
}

/// Minimal DAG of a top tree. Node ids are topological: children precede
/// their parents. A single-node source tree is represented by its root label
/// alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopDag {
    labels: LabelTable,
    nodes: Vec<Cluster>,
    aug: Vec<Augmentation>,
    root: u32,
    source_n: usize,
    root_label: Option<LabelId>,
}

/// Hash-conses the top tree bottom-up. Also returns the DAG id of every top
/// tree node.
pub fn minimize_with_map(tt: &TopTree) -> (TopDag, Vec<u32>) {
    let mut ids: HashMap<Cluster, u32> = HashMap::with_capacity(tt.len());
    let mut nodes: Vec<Cluster> = Vec::new();
    let mut map = Vec::with_capacity(tt.len());
    for &c in tt.nodes() {
        let key = match c {
            Cluster::Leaf { .. } => c,
            Cluster::Merge { kind, left, right } => Cluster::Merge {
                kind,
                left: map[left as usize],
                right: map[right as usize],
            },
        };
        let id = *ids.entry(key).or_insert_with(|| {
            nodes.push(key);
            (nodes.len() - 1) as u32
        });
        map.push(id);
    }
    let root = map[tt.root() as usize];
    let dag = TopDag::from_parts(tt.labels().clone(), nodes, root, tt.source_n())
        .expect("top trees produce consistent DAGs");
    (dag, map)
}

pub fn minimize_top_tree(tt: &TopTree) -> TopDag {
    minimize_with_map(tt).0
}

impl TopDag {
    /// Compresses `tree` (any size, including a single node).
    pub fn from_tree(tree: &LabeledTree) -> TopDag {
        if tree.len() == 1 {
            return TopDag::single(tree.labels().clone(), tree.label_id(1));
        }
        let tt = build_top_tree(tree).expect("tree has at least two nodes");
        minimize_top_tree(&tt)
    }

    pub(crate) fn single(labels: LabelTable, root_label: LabelId) -> TopDag {
        TopDag {
            labels,
            nodes: Vec::new(),
            aug: Vec::new(),
            root: 0,
            source_n: 1,
            root_label: Some(root_label),
        }
    }

    /// Validates a raw node list and computes its augmentation.
    pub fn from_parts(
        labels: LabelTable,
        nodes: Vec<Cluster>,
        root: u32,
        source_n: usize,
    ) -> Result<TopDag, DagError> {
        let len = nodes.len();
        let mut aug: Vec<Augmentation> = Vec::with_capacity(len);
        // (top label, bottom label) for consistency checks
        let mut ends: Vec<(LabelId, LabelId)> = Vec::with_capacity(len);
        for (i, &c) in nodes.iter().enumerate() {
            match c {
                Cluster::Leaf { parent, child } => {
                    for l in [parent, child] {
                        if l.index() >= labels.len() {
                            return Err(DagError::LabelOutOfRange {
                                node: i,
                                label: l.0,
                                len: labels.len(),
                            });
                        }
                    }
                    aug.push(Augmentation::LEAF);
                    ends.push((parent, child));
                }
                Cluster::Merge { kind, left, right } => {
                    for child in [left, right] {
                        if child as usize >= len {
                            return Err(DagError::DanglingChild { node: i, child, len });
                        }
                        if child as usize >= i {
                            return Err(DagError::NotTopological { node: i, child });
                        }
                    }
                    let bad = DagError::InconsistentMerge { node: i, kind };
                    let (a, b) = (&aug[left as usize], &aug[right as usize]);
                    let (ea, eb) = (ends[left as usize], ends[right as usize]);
                    // A leaf may or may not have a bottom boundary; a merge knows.
                    let may_lack = |id: u32| match nodes[id as usize] {
                        Cluster::Leaf { .. } => true,
                        Cluster::Merge { kind, .. } => !kind.has_bottom(),
                    };
                    let size = a.size + b.size - 1;
                    let (height, spine, bpos, dist, end) = match kind {
                        MergeType::A | MergeType::B => {
                            let sa = a.spine.ok_or(bad.clone())?;
                            if ea.1 != eb.0 {
                                return Err(bad);
                            }
                            let height = a.height.max(sa + b.height);
                            if kind == MergeType::A {
                                let sb = b.spine.ok_or(bad.clone())?;
                                let bpos = a.bpos.expect("spine implies bpos") + b.bpos.expect("spine implies bpos") - 1;
                                (height, Some(sa + sb), Some(bpos), sa, (ea.0, eb.1))
                            } else {
                                if !may_lack(right) {
                                    return Err(bad);
                                }
                                (height, None, None, sa, (ea.0, eb.1))
                            }
                        }
                        MergeType::C | MergeType::D | MergeType::E => {
                            if ea.0 != eb.0 {
                                return Err(bad);
                            }
                            let height = a.height.max(b.height);
                            match kind {
                                MergeType::C => {
                                    if a.spine.is_none() || !may_lack(right) {
                                        return Err(bad);
                                    }
                                    (height, a.spine, a.bpos, 0, ea)
                                }
                                MergeType::D => {
                                    if b.spine.is_none() || !may_lack(left) {
                                        return Err(bad);
                                    }
                                    let bpos = b.bpos.map(|p| p + a.size - 1);
                                    (height, b.spine, bpos, 0, (ea.0, eb.1))
                                }
                                _ => {
                                    if !may_lack(left) || !may_lack(right) {
                                        return Err(bad);
                                    }
                                    (height, None, None, 0, ea)
                                }
                            }
                        }
                    };
                    aug.push(Augmentation {
                        size,
                        height,
                        spine,
                        bpos,
                        dist_to_right_top: dist,
                    });
                    ends.push(end);
                }
            }
        }
        if root as usize >= len {
            return Err(DagError::BadRoot { root, len });
        }
        if let Cluster::Merge { kind, .. } = nodes[root as usize] {
            if kind.has_bottom() {
                return Err(DagError::RootHasBottom);
            }
        }
        let found = aug[root as usize].size;
        if found != source_n {
            return Err(DagError::SizeMismatch {
                expected: source_n,
                found,
            });
        }
        Ok(TopDag {
            labels,
            nodes,
            aug,
            root,
            source_n,
            root_label: None,
        })
    }

    pub fn labels(&self) -> &LabelTable {
        &self.labels
    }

    pub fn nodes(&self) -> &[Cluster] {
        &self.nodes
    }

    pub fn node(&self, id: u32) -> Cluster {
        self.nodes[id as usize]
    }

    pub fn aug(&self, id: u32) -> &Augmentation {
        &self.aug[id as usize]
    }

    pub fn root(&self) -> u32 {
        self.root
    }

    /// Node count of the source tree.
    pub fn source_n(&self) -> usize {
        self.source_n
    }

    /// Label of the root when the source tree is a single node.
    pub fn root_label(&self) -> Option<LabelId> {
        self.root_label
    }

    pub fn node_count(&self) -> usize {
        if self.root_label.is_some() {
            1
        } else {
            self.nodes.len()
        }
    }

    pub fn edge_count(&self) -> usize {
        2 * self
            .nodes
            .iter()
            .filter(|c| matches!(c, Cluster::Merge { .. }))
            .count()
    }

    /// Total size: nodes plus edges.
    pub fn size(&self) -> usize {
        self.node_count() + self.edge_count()
    }

    /// Height of the DAG (equals the height of the top tree it came from).
    pub fn height(&self) -> usize {
        if self.nodes.is_empty() {
            return 0;
        }
        let mut h = vec![0usize; self.nodes.len()];
        for (i, c) in self.nodes.iter().enumerate() {
            if let Cluster::Merge { left, right, .. } = *c {
                h[i] = 1 + h[left as usize].max(h[right as usize]);
            }
        }
        h[self.root as usize]
    }

    pub fn expand(&self, id: u32) -> ClusterPattern {
        expand_cluster(&self.nodes, &self.labels, id)
    }

    /// Decompresses the whole tree.
    pub fn unfold(&self) -> LabeledTree {
        match self.root_label {
            Some(l) => {
                let children = vec![Vec::new()];
                LabeledTree::from_shape(0, &children, |_| self.labels.name(l))
            }
            None => self.expand(self.root).tree,
        }
    }

    /// Children of merge node `id`, or `None` for a leaf.
    #[inline]
    pub(crate) fn children(&self, id: u32) -> Option<(MergeType, u32, u32)> {
        match self.nodes[id as usize] {
            Cluster::Merge { kind, left, right } => Some((kind, left, right)),
            Cluster::Leaf { .. } => None,
        }
    }
}
