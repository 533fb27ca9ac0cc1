//! Uncompressed rooted, ordered, labeled trees.
//!
//! Nodes are identified by their 1-based preorder number: the root is node
//! `1` and the subtree of `x` occupies the contiguous interval
//! `[x, x + size(x) - 1]`.

use std::collections::HashMap;
use std::fmt;

/// Index into a tree's label table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelId(pub u32);

impl LabelId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for LabelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Bijection between label ids `0..len` and distinct strings.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LabelTable {
    names: Vec<String>,
    index: HashMap<String, LabelId>,
}

impl LabelTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the id of `name`, adding it to the table if it is new.
    pub fn intern(&mut self, name: &str) -> LabelId {
        if let Some(&id) = self.index.get(name) {
            return id;
        }
        let id = LabelId(self.names.len() as u32);
        self.names.push(name.to_owned());
        self.index.insert(name.to_owned(), id);
        id
    }

    pub fn get(&self, name: &str) -> Option<LabelId> {
        self.index.get(name).copied()
    }

    pub fn name(&self, id: LabelId) -> &str {
        &self.names[id.index()]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(String::as_str)
    }
}

impl<S: AsRef<str>> FromIterator<S> for LabelTable {
    /// Builds a table in iteration order. Duplicates keep their first id.
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        let mut table = LabelTable::new();
        for s in iter {
            table.intern(s.as_ref());
        }
        table
    }
}

/// A rooted, ordered, labeled tree indexed by preorder number.
///
/// Every constructor goes through [`TreeBuilder`], which numbers nodes in
/// preorder and fills the label table in first-occurrence order, so two trees
/// with the same shape and label strings compare equal.
#[derive(Clone, PartialEq, Eq)]
pub struct LabeledTree {
    labels: LabelTable,
    // All per-node vectors are indexed by `x - 1`.
    node_label: Vec<LabelId>,
    parent: Vec<u32>,
    subtree_size: Vec<u32>,
    depth: Vec<u32>,
    // CSR children: children of x are child_list[child_start[x-1]..child_start[x]].
    child_start: Vec<u32>,
    child_list: Vec<u32>,
}

impl LabeledTree {
    /// Number of nodes.
    pub fn len(&self) -> usize {
        self.node_label.len()
    }

    /// Trees always have at least one node.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> &LabelTable {
        &self.labels
    }

    /// Alphabet size σ.
    pub fn sigma(&self) -> usize {
        self.labels.len()
    }

    pub fn label_id(&self, x: usize) -> LabelId {
        self.node_label[x - 1]
    }

    pub fn label(&self, x: usize) -> &str {
        self.labels.name(self.node_label[x - 1])
    }

    pub fn parent(&self, x: usize) -> Option<usize> {
        match self.parent[x - 1] {
            0 => None,
            p => Some(p as usize),
        }
    }

    pub fn children(&self, x: usize) -> impl ExactSizeIterator<Item = usize> + '_ {
        let lo = self.child_start[x - 1] as usize;
        let hi = self.child_start[x] as usize;
        self.child_list[lo..hi].iter().map(|&c| c as usize)
    }

    pub fn child_count(&self, x: usize) -> usize {
        (self.child_start[x] - self.child_start[x - 1]) as usize
    }

    pub fn is_leaf(&self, x: usize) -> bool {
        self.child_count(x) == 0
    }

    /// Node count of the subtree rooted at `x`.
    pub fn subtree_size(&self, x: usize) -> usize {
        self.subtree_size[x - 1] as usize
    }

    /// Edge distance from the root.
    pub fn depth(&self, x: usize) -> usize {
        self.depth[x - 1] as usize
    }

    /// Height of the whole tree (edges on the longest root-to-leaf path).
    pub fn height(&self) -> usize {
        self.depth.iter().copied().max().unwrap_or(0) as usize
    }

    pub fn nodes(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.len()
    }

    /// Builds a tree from an arbitrary ordered shape. Nodes of the shape are
    /// identified by indices into `children`; the result is renumbered in
    /// preorder starting from `root`. Nodes unreachable from `root` are ignored.
    pub fn from_shape<'a, F>(root: usize, children: &[Vec<usize>], label_of: F) -> LabeledTree
    where
        F: FnMut(usize) -> &'a str,
    {
        Self::from_shape_mapped(root, children, label_of).0
    }

    /// Like [`from_shape`](Self::from_shape), also returning the preorder
    /// number assigned to each shape node (`0` for unreachable nodes).
    pub fn from_shape_mapped<'a, F>(
        root: usize,
        children: &[Vec<usize>],
        mut label_of: F,
    ) -> (LabeledTree, Vec<usize>)
    where
        F: FnMut(usize) -> &'a str,
    {
        let mut builder = TreeBuilder::with_capacity(children.len());
        let mut order = vec![0usize; children.len()];
        // (shape node, next child index)
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        order[root] = builder.open(label_of(root)).expect("single root");
        while let Some(top) = stack.last_mut() {
            let (v, i) = *top;
            if i < children[v].len() {
                top.1 += 1;
                let c = children[v][i];
                order[c] = builder.open(label_of(c)).expect("single root");
                stack.push((c, 0));
            } else {
                builder.close().expect("balanced by construction");
                stack.pop();
            }
        }
        (builder.finish().expect("shape has a root"), order)
    }

    /// Returns a copy of the subtree rooted at `x`, renumbered from 1.
    pub fn subtree(&self, x: usize) -> LabeledTree {
        let end = x + self.subtree_size(x);
        let mut builder = TreeBuilder::with_capacity(end - x);
        let mut open: Vec<usize> = Vec::new();
        for y in x..end {
            while let Some(&top) = open.last() {
                if top + self.subtree_size(top) <= y {
                    builder.close().expect("balanced");
                    open.pop();
                } else {
                    break;
                }
            }
            builder.open(self.label(y)).expect("single root");
            open.push(y);
        }
        while open.pop().is_some() {
            builder.close().expect("balanced");
        }
        builder.finish().expect("nonempty")
    }

    /// Checks the structural invariants in O(n).
    pub fn check_invariants(&self) -> Result<(), String> {
        let n = self.len();
        if self.parent[0] != 0 {
            return Err("node 1 must be the root".into());
        }
        for x in 2..=n {
            let p = self.parent[x - 1] as usize;
            if p == 0 || p >= x {
                return Err(format!("parent({x}) = {p} violates parent < x"));
            }
            if x >= p + self.subtree_size(p) {
                return Err(format!("node {x} lies outside the interval of its parent {p}"));
            }
        }
        for x in 1..=n {
            let mut expected = x + 1;
            let mut total = 1;
            let mut prev = 0;
            for c in self.children(x) {
                if c <= prev {
                    return Err(format!("children of {x} are not increasing"));
                }
                if c != expected {
                    return Err(format!("child {c} of {x} does not start at {expected}"));
                }
                if self.parent(c) != Some(x) {
                    return Err(format!("child {c} of {x} has a different parent"));
                }
                prev = c;
                expected = c + self.subtree_size(c);
                total += self.subtree_size(c);
            }
            if total != self.subtree_size(x) {
                return Err(format!("subtree size of {x} is inconsistent"));
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LabeledTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LabeledTree({})", crate::text::serialize_tree(self))
    }
}

impl fmt::Display for LabeledTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::serialize_tree(self))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BuildError {
    #[error("tree has no nodes")]
    Empty,
    #[error("a second root was opened after the first one closed")]
    MultipleRoots,
    #[error("close without a matching open")]
    UnbalancedClose,
    #[error("{0} node(s) left open")]
    Unclosed(usize),
}

/// Incremental preorder construction: `open` a node (making it the last child
/// of the currently open node), `close` it once all its children are added.
#[derive(Debug, Default)]
pub struct TreeBuilder {
    labels: LabelTable,
    node_label: Vec<LabelId>,
    parent: Vec<u32>,
    stack: Vec<u32>,
    root_closed: bool,
}

impl TreeBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(n: usize) -> Self {
        TreeBuilder {
            node_label: Vec::with_capacity(n),
            parent: Vec::with_capacity(n),
            ..Self::default()
        }
    }

    /// Opens a new node and returns its preorder number.
    pub fn open(&mut self, label: &str) -> Result<usize, BuildError> {
        if self.root_closed {
            return Err(BuildError::MultipleRoots);
        }
        let id = self.labels.intern(label);
        self.node_label.push(id);
        self.parent.push(self.stack.last().copied().unwrap_or(0));
        let x = self.node_label.len() as u32;
        self.stack.push(x);
        Ok(x as usize)
    }

    pub fn close(&mut self) -> Result<(), BuildError> {
        self.stack.pop().ok_or(BuildError::UnbalancedClose)?;
        if self.stack.is_empty() {
            self.root_closed = true;
        }
        Ok(())
    }

    /// Number of nodes still open.
    pub fn open_depth(&self) -> usize {
        self.stack.len()
    }

    pub fn node_count(&self) -> usize {
        self.node_label.len()
    }

    pub fn finish(self) -> Result<LabeledTree, BuildError> {
        if !self.stack.is_empty() {
            return Err(BuildError::Unclosed(self.stack.len()));
        }
        let n = self.node_label.len();
        if n == 0 {
            return Err(BuildError::Empty);
        }
        let parent = self.parent;

        let mut subtree_size = vec![1u32; n];
        for x in (2..=n).rev() {
            let p = parent[x - 1] as usize;
            subtree_size[p - 1] += subtree_size[x - 1];
        }
        let mut depth = vec![0u32; n];
        for x in 2..=n {
            depth[x - 1] = depth[parent[x - 1] as usize - 1] + 1;
        }
        let mut child_start = vec![0u32; n + 1];
        for x in 2..=n {
            child_start[parent[x - 1] as usize] += 1;
        }
        for i in 1..=n {
            child_start[i] += child_start[i - 1];
        }
        let mut fill = child_start.clone();
        let mut child_list = vec![0u32; n.saturating_sub(1)];
        // Increasing x keeps each child list sorted.
        for x in 2..=n {
            let p = parent[x - 1] as usize;
            child_list[fill[p - 1] as usize] = x as u32;
            fill[p - 1] += 1;
        }

        Ok(LabeledTree {
            labels: self.labels,
            node_label: self.node_label,
            parent,
            subtree_size,
            depth,
            child_start,
            child_list,
        })
    }
}
