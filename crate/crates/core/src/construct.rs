//! Greedy bottom-up top tree construction.
//!
//! The construction keeps an auxiliary tree whose edges stand for the
//! clusters built so far. Each iteration first merges sibling edges
//! (horizontal step), then pairs up edges along maximal unary paths
//! (vertical step). Every iteration shrinks the auxiliary tree by a constant
//! factor, so the top tree has logarithmic height.

use crate::cluster::{expand_cluster, Cluster, ClusterPattern, MergeType};
use crate::tree::{LabelTable, LabeledTree};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructError {
    #[error("top trees need at least 2 nodes, got {0}")]
    TooSmall(usize),
    #[error("iteration made no progress with {0} edges left")]
    NoProgress(usize),
}

const NONE: u32 = u32::MAX;

/// The merge history of a tree: leaves are the edges of the tree, internal
/// nodes merge their two children. Node ids are creation order, so children
/// always precede their parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopTree {
    labels: LabelTable,
    nodes: Vec<Cluster>,
    // Boundary nodes of each cluster in the source tree (preorder numbers,
    // 0 for a missing bottom boundary).
    tops: Vec<u32>,
    bottoms: Vec<u32>,
    root: u32,
    source_n: usize,
}

impl TopTree {
    pub fn nodes(&self) -> &[Cluster] {
        &self.nodes
    }

    pub fn node(&self, id: u32) -> Cluster {
        self.nodes[id as usize]
    }

    pub fn root(&self) -> u32 {
        self.root
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn labels(&self) -> &LabelTable {
        &self.labels
    }

    /// Node count of the source tree.
    pub fn source_n(&self) -> usize {
        self.source_n
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes
            .iter()
            .filter(|c| matches!(c, Cluster::Leaf { .. }))
            .count()
    }

    /// Top and bottom boundary node of cluster `id`, as preorder numbers of
    /// the source tree.
    pub fn boundaries(&self, id: u32) -> (usize, Option<usize>) {
        let b = self.bottoms[id as usize];
        (self.tops[id as usize] as usize, (b != 0).then_some(b as usize))
    }

    /// Height in edges; a single leaf has height 0.
    pub fn height(&self) -> usize {
        let mut h = vec![0usize; self.nodes.len()];
        for (i, c) in self.nodes.iter().enumerate() {
            if let Cluster::Merge { left, right, .. } = *c {
                h[i] = 1 + h[left as usize].max(h[right as usize]);
            }
        }
        h[self.root as usize]
    }

    /// Expands cluster `id` into its explicit tree pattern.
    pub fn expand(&self, id: u32) -> ClusterPattern {
        expand_cluster(&self.nodes, &self.labels, id)
    }
}

/// Top-tree construction in progress.
///
/// Auxiliary-tree nodes are source-tree nodes, stored 0-based. The edge
/// between `v` and its auxiliary parent is stored on `v`.
pub struct Construction<'t> {
    tree: &'t LabeledTree,
    nodes: Vec<Cluster>,
    tops: Vec<u32>,
    bottoms: Vec<u32>,

    parent: Vec<u32>,
    kids: Vec<Vec<u32>>,
    // Position of each node in its parent's child list.
    pos: Vec<u32>,
    cluster: Vec<u32>,
    merged: Vec<bool>,
    removed: Vec<bool>,
    // Child counts at the start of the current iteration.
    start_count: Vec<u32>,
    alive: Vec<u32>,
    edges: usize,
    iterations: usize,
    merges_this_iteration: usize,
}

impl<'t> Construction<'t> {
    pub fn new(tree: &'t LabeledTree) -> Result<Self, ConstructError> {
        let n = tree.len();
        if n < 2 {
            return Err(ConstructError::TooSmall(n));
        }
        let mut c = Construction {
            tree,
            nodes: Vec::with_capacity(2 * n),
            tops: Vec::with_capacity(2 * n),
            bottoms: Vec::with_capacity(2 * n),
            parent: vec![NONE; n],
            kids: vec![Vec::new(); n],
            pos: vec![0; n],
            cluster: vec![NONE; n],
            merged: vec![false; n],
            removed: vec![false; n],
            start_count: vec![0; n],
            alive: (0..n as u32).collect(),
            edges: n - 1,
            iterations: 0,
            merges_this_iteration: 0,
        };
        for x in 1..=n {
            let v = x - 1;
            c.kids[v] = tree.children(x).map(|y| (y - 1) as u32).collect();
            for (i, &k) in c.kids[v].iter().enumerate() {
                c.pos[k as usize] = i as u32;
            }
            if let Some(p) = tree.parent(x) {
                c.parent[v] = (p - 1) as u32;
                let bottom = if tree.is_leaf(x) { 0 } else { x as u32 };
                c.cluster[v] = c.push(
                    Cluster::Leaf {
                        parent: tree.label_id(p),
                        child: tree.label_id(x),
                    },
                    p as u32,
                    bottom,
                );
            }
        }
        c.snapshot();
        Ok(c)
    }

    fn push(&mut self, cluster: Cluster, top: u32, bottom: u32) -> u32 {
        self.nodes.push(cluster);
        self.tops.push(top);
        self.bottoms.push(bottom);
        (self.nodes.len() - 1) as u32
    }

    fn merge(&mut self, kind: MergeType, left: u32, right: u32) -> u32 {
        let (l, r) = (left as usize, right as usize);
        let (top, bottom) = if kind.is_vertical() {
            debug_assert_eq!(self.bottoms[l], self.tops[r]);
            (self.tops[l], if kind == MergeType::A { self.bottoms[r] } else { 0 })
        } else {
            debug_assert_eq!(self.tops[l], self.tops[r]);
            let bottom = match kind {
                MergeType::C => self.bottoms[l],
                MergeType::D => self.bottoms[r],
                _ => 0,
            };
            (self.tops[l], bottom)
        };
        self.merges_this_iteration += 1;
        self.edges -= 1;
        self.push(Cluster::Merge { kind, left, right }, top, bottom)
    }

    #[inline]
    fn is_leaf(&self, v: u32) -> bool {
        self.kids[v as usize].is_empty()
    }

    fn root(&self) -> u32 {
        self.alive[0]
    }

    fn snapshot(&mut self) {
        for &v in &self.alive {
            let v = v as usize;
            self.start_count[v] = self.kids[v].len() as u32;
            self.merged[v] = false;
        }
        self.merges_this_iteration = 0;
    }

    /// Number of edges left in the auxiliary tree.
    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }

    /// Clusters created so far, in creation order.
    pub fn clusters(&self) -> &[Cluster] {
        &self.nodes
    }

    /// Current auxiliary children of source node `x` (preorder numbers).
    pub fn aux_children(&self, x: usize) -> Vec<usize> {
        self.kids[x - 1].iter().map(|&k| k as usize + 1).collect()
    }

    /// Merges pairs of sibling edges where at least one lower endpoint is a
    /// leaf. Child lists are read as of the start of the iteration.
    pub fn horizontal_step(&mut self) {
        for idx in 0..self.alive.len() {
            let v = self.alive[idx] as usize;
            let k = self.kids[v].len();
            if k < 2 {
                continue;
            }
            let old = std::mem::take(&mut self.kids[v]);
            let mut new: Vec<u32> = Vec::with_capacity(k);
            for pair in old.chunks_exact(2) {
                let (x, y) = (pair[0], pair[1]);
                let (leaf_x, leaf_y) = (self.is_leaf(x), self.is_leaf(y));
                if !(leaf_x || leaf_y) {
                    new.extend_from_slice(pair);
                    continue;
                }
                let kind = match (leaf_x, leaf_y) {
                    (false, true) => MergeType::C,
                    (true, false) => MergeType::D,
                    _ => MergeType::E,
                };
                let (survivor, gone) = if leaf_x && !leaf_y { (y, x) } else { (x, y) };
                let c = self.merge(kind, self.cluster[x as usize], self.cluster[y as usize]);
                self.cluster[survivor as usize] = c;
                self.merged[survivor as usize] = true;
                self.removed[gone as usize] = true;
                new.push(survivor);
            }
            if k % 2 == 1 {
                let z = old[k - 1];
                let tail_merge = k >= 3
                    && self.is_leaf(z)
                    && !self.is_leaf(old[k - 3])
                    && !self.is_leaf(old[k - 2]);
                if tail_merge {
                    let y = new.pop().expect("pair before the last child was kept");
                    debug_assert_eq!(y, old[k - 2]);
                    let c = self.merge(MergeType::C, self.cluster[y as usize], self.cluster[z as usize]);
                    self.cluster[y as usize] = c;
                    self.merged[y as usize] = true;
                    self.removed[z as usize] = true;
                    new.push(y);
                } else {
                    new.push(z);
                }
            }
            for (i, &c) in new.iter().enumerate() {
                self.pos[c as usize] = i as u32;
            }
            self.kids[v] = new;
        }
    }

    /// Pairs up edges bottom-up along each maximal path whose interior nodes
    /// had a single child at the start of the iteration.
    pub fn vertical_step(&mut self) {
        let root = self.root();
        let mut paths: Vec<Vec<u32>> = Vec::new();
        for &v in &self.alive {
            if v == root || self.removed[v as usize] || self.start_count[v as usize] == 1 {
                continue;
            }
            let mut path = vec![v];
            let mut cur = v;
            loop {
                let p = self.parent[cur as usize];
                path.push(p);
                if p == root || self.start_count[p as usize] != 1 {
                    break;
                }
                cur = p;
            }
            if path.len() >= 3 {
                paths.push(path);
            }
        }

        for path in paths {
            // Edge j joins path[j] to path[j + 1].
            let edges = path.len() - 1;
            let mut j = 0;
            while j + 1 < edges {
                let (lower, middle, top) = (path[j], path[j + 1], path[j + 2]);
                let topmost = j + 1 == edges - 1;
                if self.merged[middle as usize] {
                    assert!(topmost, "only the topmost path edge can come out of the horizontal step");
                    break;
                }
                debug_assert!(!self.merged[lower as usize]);
                let kind = if self.is_leaf(lower) { MergeType::B } else { MergeType::A };
                let c = self.merge(kind, self.cluster[middle as usize], self.cluster[lower as usize]);
                let slot = self.pos[middle as usize] as usize;
                debug_assert_eq!(self.kids[top as usize][slot], middle);
                self.kids[top as usize][slot] = lower;
                self.pos[lower as usize] = slot as u32;
                self.parent[lower as usize] = top;
                self.cluster[lower as usize] = c;
                self.merged[lower as usize] = true;
                self.removed[middle as usize] = true;
                self.kids[middle as usize].clear();
                j += 2;
            }
        }
    }

    /// One horizontal and one vertical step, then a fresh snapshot.
    pub fn run_iteration(&mut self) -> Result<(), ConstructError> {
        let before = self.edges;
        self.horizontal_step();
        self.vertical_step();
        if self.merges_this_iteration == 0 && before >= 2 {
            return Err(ConstructError::NoProgress(before));
        }
        self.iterations += 1;
        self.collect_alive();
        self.snapshot();
        Ok(())
    }

    fn collect_alive(&mut self) {
        let root = self.root();
        let mut alive = Vec::with_capacity(self.edges + 1);
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            alive.push(v);
            stack.extend(self.kids[v as usize].iter().rev().copied());
        }
        debug_assert_eq!(alive.len(), self.edges + 1);
        self.alive = alive;
    }

    /// Runs iterations until a single edge is left.
    pub fn finish(mut self) -> Result<TopTree, ConstructError> {
        while self.edges >= 2 {
            self.run_iteration()?;
        }
        let root_node = self.root() as usize;
        let only = self.kids[root_node][0];
        let root = self.cluster[only as usize];
        Ok(TopTree {
            labels: self.tree.labels().clone(),
            nodes: self.nodes,
            tops: self.tops,
            bottoms: self.bottoms,
            root,
            source_n: self.tree.len(),
        })
    }
}

/// Builds the top tree of a tree with at least two nodes.
pub fn build_top_tree(tree: &LabeledTree) -> Result<TopTree, ConstructError> {
    Construction::new(tree)?.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_tree;
    use crate::tree::LabelId;

    fn leaf(p: u32, c: u32) -> Cluster {
        Cluster::Leaf {
            parent: LabelId(p),
            child: LabelId(c),
        }
    }

    fn top_tree(s: &str) -> TopTree {
        build_top_tree(&parse_tree(s).unwrap()).unwrap()
    }

    #[test]
    fn single_edge() {
        let tt = top_tree("(a(b))");
        assert_eq!(tt.nodes(), &[leaf(0, 1)]);
        assert_eq!(tt.root(), 0);
        assert_eq!(tt.height(), 0);
    }

    #[test]
    fn two_leaf_siblings_merge_as_e() {
        let tt = top_tree("(a(b)(c))");
        assert_eq!(tt.len(), 3);
        match tt.node(tt.root()) {
            Cluster::Merge { kind, left, right } => {
                assert_eq!(kind, MergeType::E);
                assert_eq!(tt.node(left), leaf(0, 1));
                assert_eq!(tt.node(right), leaf(0, 2));
            }
            other => panic!("unexpected root {other:?}"),
        }
    }

    #[test]
    fn path_of_three_merges_as_b() {
        let tt = top_tree("(a(a(a)))");
        match tt.node(tt.root()) {
            Cluster::Merge { kind, left, right } => {
                assert_eq!(kind, MergeType::B);
                // left is the upper edge (1,2)
                assert_eq!(tt.boundaries(left), (1, Some(2)));
                assert_eq!(tt.boundaries(right), (2, None));
            }
            other => panic!("unexpected root {other:?}"),
        }
    }

    fn merges_after_horizontal(s: &str) -> Vec<Cluster> {
        let t = parse_tree(s).unwrap();
        let mut c = Construction::new(&t).unwrap();
        let base = t.len() - 1;
        c.horizontal_step();
        c.clusters()[base..].to_vec()
    }

    #[test]
    fn horizontal_cases() {
        // v = 1 with [leaf, leaf]
        let m = merges_after_horizontal("(v(x)(y))");
        assert_eq!(m, vec![Cluster::Merge { kind: MergeType::E, left: 0, right: 1 }]);

        // [internal x, leaf y] -> c, survivor x
        let t = parse_tree("(v(x(p))(y))").unwrap();
        let mut c = Construction::new(&t).unwrap();
        c.horizontal_step();
        let kinds: Vec<_> = c.clusters()[3..].to_vec();
        assert_eq!(kinds.len(), 1);
        assert!(matches!(kinds[0], Cluster::Merge { kind: MergeType::C, .. }));
        assert_eq!(c.aux_children(1), vec![2]);

        // [leaf, internal] -> d, survivor is the internal one
        let t = parse_tree("(v(y)(x(p)))").unwrap();
        let mut c = Construction::new(&t).unwrap();
        c.horizontal_step();
        assert!(matches!(c.clusters()[3], Cluster::Merge { kind: MergeType::D, .. }));
        assert_eq!(c.aux_children(1), vec![3]);

        // [internal x, internal y, leaf z]: only (y, z) merges, as c
        let t = parse_tree("(v(x(p))(y(q))(z))").unwrap();
        let mut c = Construction::new(&t).unwrap();
        c.horizontal_step();
        let new = &c.clusters()[t.len() - 1..];
        assert_eq!(new.len(), 1);
        match new[0] {
            Cluster::Merge { kind, left, right } => {
                assert_eq!(kind, MergeType::C);
                // edges are created in preorder of their child endpoint: x=2,p=3,y=4,q=5,z=6
                assert_eq!(left, 2);
                assert_eq!(right, 4);
            }
            _ => unreachable!(),
        }
        assert_eq!(c.aux_children(1), vec![2, 4]);

        // both internal: nothing
        assert!(merges_after_horizontal("(v(x(p))(y(q)))").is_empty());
        // odd k with a mergeable first pair: tail stays
        let m = merges_after_horizontal("(v(x)(y)(z))");
        assert_eq!(m.len(), 1);
    }

    #[test]
    fn vertical_cases() {
        // path v1-v2-v3 (3 nodes, p = 3): one type b merge
        let t = parse_tree("(c(b(a)))").unwrap();
        let mut c = Construction::new(&t).unwrap();
        c.horizontal_step();
        c.vertical_step();
        assert_eq!(c.clusters().len(), 3);
        assert!(matches!(c.clusters()[2], Cluster::Merge { kind: MergeType::B, left: 0, right: 1 }));

        // p = 4: only the bottom pair merges
        let t = parse_tree("(d(c(b(a))))").unwrap();
        let mut c = Construction::new(&t).unwrap();
        c.horizontal_step();
        c.vertical_step();
        assert_eq!(c.clusters().len(), 4);
        assert!(matches!(c.clusters()[3], Cluster::Merge { kind: MergeType::B, left: 1, right: 2 }));
        assert_eq!(c.edge_count(), 2);

        // p = 3 whose top edge came out of the horizontal step: no vertical merge.
        // r has children [u(w(l)), leaf s]; path l-w-u ends at u's edge? no: path l,w,u,r
        // has p = 4. Use r(u(l))(s): path l,u,r with p = 3 and (u,r) merged in step 1.
        let t = parse_tree("(r(u(l))(s))").unwrap();
        let mut c = Construction::new(&t).unwrap();
        c.horizontal_step();
        assert_eq!(c.clusters().len(), 4);
        c.vertical_step();
        assert_eq!(c.clusters().len(), 4, "flagged top edge must not be merged again");
    }

    #[test]
    fn iteration_counts() {
        let star = parse_tree("(r(a)(a)(a)(a)(a)(a)(a)(a))").unwrap();
        let mut c = Construction::new(&star).unwrap();
        c.run_iteration().unwrap();
        assert_eq!(c.edge_count(), 4);

        let path = parse_tree("(a(a(a(a))))").unwrap();
        let mut c = Construction::new(&path).unwrap();
        c.run_iteration().unwrap();
        assert_eq!(c.edge_count(), 2);

        let two = parse_tree("(a(a)(a))").unwrap();
        let mut c = Construction::new(&two).unwrap();
        c.run_iteration().unwrap();
        assert_eq!(c.edge_count(), 1);
    }

    #[test]
    fn rejects_single_node() {
        let t = parse_tree("(a)").unwrap();
        assert_eq!(build_top_tree(&t).unwrap_err(), ConstructError::TooSmall(1));
    }

    #[test]
    fn counts_and_reexpansion() {
        for s in ["(a(b)(c))", "(a(b(d))(c))", "(r(a(b)(c)(d))(e(f(g)))(h))", "(a(a(a(a(a(a))))))"] {
            let t = parse_tree(s).unwrap();
            let tt = build_top_tree(&t).unwrap();
            assert_eq!(tt.leaf_count(), t.len() - 1);
            assert_eq!(tt.len(), 2 * t.len() - 3);
            assert_eq!(tt.expand(tt.root()).tree, t);
            assert_eq!(tt.boundaries(tt.root()), (1, None));
        }
    }
}
