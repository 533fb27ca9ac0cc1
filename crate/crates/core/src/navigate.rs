//! Navigation queries answered directly on a [`TopDag`].
//!
//! Every query walks down from the root cluster while tracking *local
//! preorder numbers*: the position of a node in the preorder traversal of the
//! current cluster's tree pattern. Converting a local number between a merged
//! cluster and its two children takes constant time, so a descent costs
//! `O(height)`. Answers are turned back into global preorder numbers by
//! folding the recorded descent path upwards; a DAG node has many parents,
//! so only the recorded path identifies which occurrence was visited.

use crate::cluster::{Cluster, Expander, MergeType};
use crate::topdag::TopDag;
use crate::tree::LabeledTree;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dir {
    Left,
    Right,
}

/// Where a node of a merged cluster lives among its two children.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChildPos {
    Left(usize),
    Right(usize),
    /// The node shared by both children, with its local number in each.
    Both { left: usize, right: usize },
}

impl ChildPos {
    fn in_left(self) -> Option<usize> {
        match self {
            ChildPos::Left(u) | ChildPos::Both { left: u, .. } => Some(u),
            ChildPos::Right(_) => None,
        }
    }

    fn in_right(self) -> Option<usize> {
        match self {
            ChildPos::Right(u) | ChildPos::Both { right: u, .. } => Some(u),
            ChildPos::Left(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QueryError {
    #[error("node {x} out of range 1..={n}")]
    NodeOutOfRange { x: usize, n: usize },
    #[error("level {i} exceeds the depth {depth} of node {x}")]
    LevelOutOfRange { x: usize, i: usize, depth: usize },
    #[error("local preorder number {u} out of range 1..={size} in cluster {cluster}")]
    LocalOutOfRange { cluster: u32, u: usize, size: usize },
    #[error("cluster {0} is a leaf and has no children")]
    NotAMerge(u32),
}

/// Boundary positions of a merged cluster's children, in the merged
/// cluster's local preorder: `left_end` is the last node of the left child,
/// `right_begin..=right_end` are the nodes of the right child.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MergeRanges {
    pub right_begin: usize,
    pub right_end: usize,
    pub left_end: usize,
}

impl TopDag {
    fn merge(&self, c: u32) -> Result<(MergeType, u32, u32), QueryError> {
        self.children(c).ok_or(QueryError::NotAMerge(c))
    }

    pub fn ranges(&self, c: u32) -> Result<MergeRanges, QueryError> {
        let (kind, left, right) = self.merge(c)?;
        Ok(self.ranges_of(c, kind, left, right))
    }

    #[inline]
    fn ranges_of(&self, c: u32, kind: MergeType, left: u32, right: u32) -> MergeRanges {
        let (a, b) = (self.aug(left), self.aug(right));
        if kind.is_vertical() {
            let begin = a.bpos.expect("upper cluster has a bottom boundary");
            MergeRanges {
                right_begin: begin,
                right_end: begin + b.size - 1,
                left_end: self.aug(c).size,
            }
        } else {
            MergeRanges {
                right_begin: 1,
                right_end: self.aug(c).size,
                left_end: a.size,
            }
        }
    }

    #[inline]
    fn locate(&self, c: u32, kind: MergeType, left: u32, right: u32, u: usize) -> ChildPos {
        let r = self.ranges_of(c, kind, left, right);
        debug_assert!(u >= 1 && u <= self.aug(c).size);
        if kind.is_vertical() {
            let shared = r.right_begin;
            if u < shared {
                ChildPos::Left(u)
            } else if u == shared {
                ChildPos::Both { left: shared, right: 1 }
            } else if u <= r.right_end {
                ChildPos::Right(u - shared + 1)
            } else {
                ChildPos::Left(u - r.right_end + shared)
            }
        } else if u == 1 {
            ChildPos::Both { left: 1, right: 1 }
        } else if u <= r.left_end {
            ChildPos::Left(u)
        } else {
            ChildPos::Right(u - r.left_end + 1)
        }
    }

    #[inline]
    fn lift(&self, c: u32, kind: MergeType, left: u32, right: u32, dir: Dir, u: usize) -> usize {
        let r = self.ranges_of(c, kind, left, right);
        match (kind.is_vertical(), dir) {
            (true, Dir::Left) if u <= r.right_begin => u,
            (true, Dir::Left) => u + r.right_end - r.right_begin,
            (true, Dir::Right) => u + r.right_begin - 1,
            (false, Dir::Left) => u,
            (false, Dir::Right) if u == 1 => 1,
            (false, Dir::Right) => u + r.left_end - 1,
        }
    }

    /// Maps local number `u` of merged cluster `c` to its child(ren).
    pub fn to_child(&self, c: u32, u: usize) -> Result<ChildPos, QueryError> {
        let (kind, left, right) = self.merge(c)?;
        let size = self.aug(c).size;
        if u == 0 || u > size {
            return Err(QueryError::LocalOutOfRange { cluster: c, u, size });
        }
        Ok(self.locate(c, kind, left, right, u))
    }

    /// Maps local number `u` of the `dir` child of `c` to its number in `c`.
    pub fn to_parent(&self, c: u32, dir: Dir, u: usize) -> Result<usize, QueryError> {
        let (kind, left, right) = self.merge(c)?;
        let child = if dir == Dir::Left { left } else { right };
        let size = self.aug(child).size;
        if u == 0 || u > size {
            return Err(QueryError::LocalOutOfRange { cluster: child, u, size });
        }
        Ok(self.lift(c, kind, left, right, dir, u))
    }

    pub fn navigator(&self) -> Navigator<'_> {
        Navigator::new(self)
    }
}

/// One descent step: from `node`, into its `dir` child, while the tracked
/// node had local number `local` in `node`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NavStep {
    pub node: u32,
    pub dir: Dir,
    pub local: usize,
}

/// A root-to-cluster descent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NavPath {
    pub steps: Vec<NavStep>,
    /// The cluster the descent ended in.
    pub node: u32,
    /// Local number of the tracked node in `node`.
    pub local: usize,
    /// Depth in the source tree of `node`'s top boundary.
    pub top_depth: usize,
}

impl NavPath {
    fn at_root(dag: &TopDag, x: usize) -> NavPath {
        NavPath {
            steps: Vec::with_capacity(64),
            node: dag.root(),
            local: x,
            top_depth: 0,
        }
    }
}

/// `T(x)` as clusters: `m` is the highest cluster on the descent with `x` as
/// its top boundary, `chain` the clusters hanging below it, top to bottom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentativeSet {
    pub m_path: NavPath,
    pub chain: Vec<u32>,
}

impl RepresentativeSet {
    pub fn m(&self) -> u32 {
        self.m_path.node
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Representatives {
    /// `x` is a leaf of the source tree.
    Leaf,
    Set(RepresentativeSet),
}

/// Query engine over a [`TopDag`]. Counts the clusters it moves into, both
/// going down and coming back up; the root cluster itself is free.
#[derive(Debug, Clone)]
pub struct Navigator<'a> {
    dag: &'a TopDag,
    visits: usize,
}

impl<'a> Navigator<'a> {
    pub fn new(dag: &'a TopDag) -> Self {
        Navigator { dag, visits: 0 }
    }

    pub fn dag(&self) -> &'a TopDag {
        self.dag
    }

    /// Cluster moves since construction or the last [`take_visits`](Self::take_visits).
    pub fn visits(&self) -> usize {
        self.visits
    }

    pub fn take_visits(&mut self) -> usize {
        std::mem::take(&mut self.visits)
    }

    fn check(&self, x: usize) -> Result<(), QueryError> {
        let n = self.dag.source_n();
        if x == 0 || x > n {
            Err(QueryError::NodeOutOfRange { x, n })
        } else {
            Ok(())
        }
    }

    fn single(&self) -> bool {
        self.dag.root_label().is_some()
    }

    fn descend(&mut self, path: &mut NavPath, dir: Dir, local: usize) {
        let (_, left, right) = self.dag.children(path.node).expect("descending from a merge");
        path.steps.push(NavStep {
            node: path.node,
            dir,
            local: path.local,
        });
        if dir == Dir::Right {
            path.top_depth += self.dag.aug(path.node).dist_to_right_top;
            path.node = right;
        } else {
            path.node = left;
        }
        path.local = local;
        self.visits += 1;
    }

    /// Global preorder number of local number `u` in the cluster `path` ends in.
    fn fold(&mut self, path: &NavPath, mut u: usize) -> usize {
        for step in path.steps.iter().rev() {
            let (kind, left, right) = self.dag.children(step.node).expect("path nodes are merges");
            u = self.dag.lift(step.node, kind, left, right, step.dir, u);
            self.visits += 1;
        }
        u
    }

    /// Descends to the leaf cluster containing `x`; shared nodes go left.
    fn descend_to_leaf(&mut self, x: usize) -> NavPath {
        let mut path = NavPath::at_root(self.dag, x);
        while let Some((kind, left, right)) = self.dag.children(path.node) {
            match self.dag.locate(path.node, kind, left, right, path.local) {
                ChildPos::Left(u) | ChildPos::Both { left: u, .. } => self.descend(&mut path, Dir::Left, u),
                ChildPos::Right(u) => self.descend(&mut path, Dir::Right, u),
            }
        }
        path
    }

    /// Descends until `x` is the top boundary of the current cluster (`true`)
    /// or a leaf cluster holds `x` as its child endpoint (`false`). Shared
    /// nodes go right, into the cluster holding their children.
    fn descend_to_top(&mut self, x: usize) -> (NavPath, bool) {
        let mut path = NavPath::at_root(self.dag, x);
        loop {
            if path.local == 1 {
                return (path, true);
            }
            let Some((kind, left, right)) = self.dag.children(path.node) else {
                return (path, false);
            };
            match self.dag.locate(path.node, kind, left, right, path.local) {
                ChildPos::Left(u) => self.descend(&mut path, Dir::Left, u),
                ChildPos::Right(u) | ChildPos::Both { right: u, .. } => self.descend(&mut path, Dir::Right, u),
            }
        }
    }

    pub fn access(&mut self, x: usize) -> Result<&'a str, QueryError> {
        self.check(x)?;
        let labels = self.dag.labels();
        if let Some(l) = self.dag.root_label() {
            return Ok(labels.name(l));
        }
        let path = self.descend_to_leaf(x);
        match self.dag.node(path.node) {
            Cluster::Leaf { parent, child } => Ok(labels.name(if path.local == 1 { parent } else { child })),
            Cluster::Merge { .. } => unreachable!("descent ends in a leaf"),
        }
    }

    pub fn depth(&mut self, x: usize) -> Result<usize, QueryError> {
        self.check(x)?;
        if self.single() {
            return Ok(0);
        }
        let path = self.descend_to_leaf(x);
        Ok(if path.local == 1 { path.top_depth } else { path.top_depth + 1 })
    }

    pub fn first_child(&mut self, x: usize) -> Result<Option<usize>, QueryError> {
        self.check(x)?;
        if self.single() {
            return Ok(None);
        }
        let (path, is_top) = self.descend_to_top(x);
        if !is_top {
            return Ok(None);
        }
        let child = self.fold(&path, 2);
        debug_assert_eq!(child, x + 1, "first child follows its parent in preorder");
        Ok(Some(child))
    }

    pub fn level_ancestor(&mut self, x: usize, i: usize) -> Result<usize, QueryError> {
        self.check(x)?;
        if i == 0 {
            return Ok(x);
        }
        let depth = self.depth(x)?;
        if i > depth {
            return Err(QueryError::LevelOutOfRange { x, i, depth });
        }
        let target = depth - i;
        let dag = self.dag;
        let mut path = NavPath::at_root(dag, x);
        loop {
            if path.top_depth == target {
                return Ok(self.fold(&path, 1));
            }
            let Some((kind, left, right)) = dag.children(path.node) else {
                // The tracked node is the leaf's child endpoint, one below its top.
                debug_assert!(path.local == 2 && path.top_depth + 1 == target);
                return Ok(self.fold(&path, 2));
            };
            let pos = dag.locate(path.node, kind, left, right, path.local);
            if kind.is_vertical() {
                let upper = dag.aug(left);
                let shared_depth = path.top_depth + upper.spine.expect("upper cluster has a spine");
                if pos.in_right().is_some() && shared_depth > target {
                    let bottom = upper.bpos.expect("upper cluster has a bottom boundary");
                    self.descend(&mut path, Dir::Left, bottom);
                    continue;
                }
                match pos {
                    ChildPos::Left(u) => self.descend(&mut path, Dir::Left, u),
                    ChildPos::Right(u) | ChildPos::Both { right: u, .. } => self.descend(&mut path, Dir::Right, u),
                }
            } else {
                match pos {
                    ChildPos::Left(u) | ChildPos::Both { left: u, .. } => self.descend(&mut path, Dir::Left, u),
                    ChildPos::Right(u) => self.descend(&mut path, Dir::Right, u),
                }
            }
        }
    }

    pub fn parent(&mut self, x: usize) -> Result<Option<usize>, QueryError> {
        self.check(x)?;
        if x == 1 {
            return Ok(None);
        }
        self.level_ancestor(x, 1).map(Some)
    }

    /// Nearest common ancestor.
    pub fn nca(&mut self, x: usize, y: usize) -> Result<usize, QueryError> {
        self.check(x)?;
        self.check(y)?;
        if x == y {
            return Ok(x);
        }
        let dag = self.dag;
        let mut path = NavPath::at_root(dag, x);
        let mut other = y;
        loop {
            if path.local == other {
                return Ok(self.fold(&path, other));
            }
            if path.local == 1 || other == 1 {
                return Ok(self.fold(&path, 1));
            }
            let Some((kind, left, right)) = dag.children(path.node) else {
                return Ok(self.fold(&path, 1));
            };
            let px = dag.locate(path.node, kind, left, right, path.local);
            let py = dag.locate(path.node, kind, left, right, other);
            if let (Some(ux), Some(uy)) = (px.in_left(), py.in_left()) {
                self.descend(&mut path, Dir::Left, ux);
                other = uy;
            } else if let (Some(ux), Some(uy)) = (px.in_right(), py.in_right()) {
                self.descend(&mut path, Dir::Right, ux);
                other = uy;
            } else if kind.is_vertical() {
                // Split across the shared node: the lower one is replaced by
                // the shared node, its ancestor in the upper cluster.
                let shared = dag.aug(left).bpos.expect("upper cluster has a bottom boundary");
                let ux = px.in_left().unwrap_or(shared);
                let uy = py.in_left().unwrap_or(shared);
                self.descend(&mut path, Dir::Left, ux);
                other = uy;
            } else {
                return Ok(self.fold(&path, 1));
            }
        }
    }

    /// Returns the representatives of `T(x)` and the depth of `x`.
    fn representatives_and_depth(&mut self, x: usize) -> (Representatives, usize, Option<u32>) {
        let (path, is_top) = self.descend_to_top(x);
        if !is_top {
            let depth = path.top_depth + 1;
            return (Representatives::Leaf, depth, Some(path.node));
        }
        let depth = path.top_depth;
        let mut chain = Vec::new();
        for step in path.steps.iter().rev() {
            let (kind, _, right) = self.dag.children(step.node).expect("path nodes are merges");
            self.visits += 1;
            if kind.is_vertical() && step.dir == Dir::Left {
                chain.push(right);
            }
            let stop = match kind {
                MergeType::C => step.dir == Dir::Right,
                MergeType::D => step.dir == Dir::Left,
                MergeType::B | MergeType::E => true,
                MergeType::A => false,
            };
            if stop {
                break;
            }
        }
        (Representatives::Set(RepresentativeSet { m_path: path, chain }), depth, None)
    }

    pub fn find_representatives(&mut self, x: usize) -> Result<Representatives, QueryError> {
        self.check(x)?;
        if self.single() {
            return Ok(Representatives::Leaf);
        }
        Ok(self.representatives_and_depth(x).0)
    }

    fn size_of(&self, reps: &Representatives) -> usize {
        match reps {
            Representatives::Leaf => 1,
            Representatives::Set(set) => {
                self.dag.aug(set.m()).size + set.chain.iter().map(|&b| self.dag.aug(b).size - 1).sum::<usize>()
            }
        }
    }

    pub fn size(&mut self, x: usize) -> Result<usize, QueryError> {
        self.check(x)?;
        if self.single() {
            return Ok(1);
        }
        let reps = self.representatives_and_depth(x).0;
        Ok(self.size_of(&reps))
    }

    pub fn height(&mut self, x: usize) -> Result<usize, QueryError> {
        self.check(x)?;
        if self.single() {
            return Ok(0);
        }
        let Representatives::Set(set) = self.representatives_and_depth(x).0 else {
            return Ok(0);
        };
        let m = self.dag.aug(set.m());
        let mut height = m.height;
        let mut dist = m.spine.unwrap_or(0);
        for &b in &set.chain {
            let b = self.dag.aug(b);
            height = height.max(dist + b.height);
            dist += b.spine.unwrap_or(0);
        }
        Ok(height)
    }

    pub fn next_sibling(&mut self, x: usize) -> Result<Option<usize>, QueryError> {
        self.check(x)?;
        if x == 1 {
            return Ok(None);
        }
        let (reps, depth, _) = self.representatives_and_depth(x);
        let candidate = x + self.size_of(&reps);
        // The node after T(x) in preorder is the next sibling of x or of one
        // of its ancestors; only the former has the same depth.
        if candidate <= self.dag.source_n() && self.depth(candidate)? == depth {
            Ok(Some(candidate))
        } else {
            Ok(None)
        }
    }

    /// Decompresses `T(x)`, renumbered from 1.
    pub fn decompress_subtree(&mut self, x: usize) -> Result<LabeledTree, QueryError> {
        self.check(x)?;
        if self.single() {
            return Ok(self.dag.unfold());
        }
        let labels = self.dag.labels();
        let (reps, _, leaf_cluster) = self.representatives_and_depth(x);
        let set = match reps {
            Representatives::Leaf => {
                let label = match self.dag.node(leaf_cluster.expect("leaf outcome names its cluster")) {
                    Cluster::Leaf { child, .. } => labels.name(child),
                    Cluster::Merge { .. } => unreachable!("descent ends in a leaf"),
                };
                return Ok(LabeledTree::from_shape(0, &[Vec::new()], |_| label));
            }
            Representatives::Set(set) => set,
        };
        let mut ex = Expander::new(self.dag.nodes());
        let (root, mut bottom) = ex.expand(set.m());
        for &b in &set.chain {
            let (top_b, bottom_b) = ex.expand(b);
            ex.glue(bottom.expect("a chain cluster hangs below a bottom boundary"), top_b);
            bottom = bottom_b;
        }
        self.visits += ex.expanded;
        Ok(ex.into_tree(root, labels).0)
    }
}
