//! Classical subtree-sharing DAG of a tree, used as a compression baseline.

use std::collections::HashMap;

use crate::tree::{LabelId, LabelTable, LabeledTree};

/// One class of identical subtrees.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubtreeClass {
    pub label: LabelId,
    pub children: Vec<u32>,
}

/// The minimal DAG of a tree: every distinct rooted subtree appears once.
/// Class ids are topological (children first).
#[derive(Debug, Clone)]
pub struct MinDag {
    labels: LabelTable,
    classes: Vec<SubtreeClass>,
    root: u32,
}

pub fn minimize_tree_dag(tree: &LabeledTree) -> MinDag {
    let n = tree.len();
    let mut class_of = vec![0u32; n + 1];
    let mut ids: HashMap<SubtreeClass, u32> = HashMap::new();
    let mut classes: Vec<SubtreeClass> = Vec::new();
    // Reverse preorder visits children before parents.
    for x in (1..=n).rev() {
        let key = SubtreeClass {
            label: tree.label_id(x),
            children: tree.children(x).map(|c| class_of[c]).collect(),
        };
        class_of[x] = *ids.entry(key).or_insert_with_key(|k| {
            classes.push(k.clone());
            (classes.len() - 1) as u32
        });
    }
    MinDag {
        labels: tree.labels().clone(),
        classes,
        root: class_of[1],
    }
}

impl MinDag {
    pub fn classes(&self) -> &[SubtreeClass] {
        &self.classes
    }

    pub fn root(&self) -> u32 {
        self.root
    }

    pub fn node_count(&self) -> usize {
        self.classes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.classes.iter().map(|c| c.children.len()).sum()
    }

    /// Nodes plus edges.
    pub fn size(&self) -> usize {
        self.node_count() + self.edge_count()
    }

    pub fn unfold(&self) -> LabeledTree {
        // Expand into an explicit shape, one node per occurrence.
        let mut label = Vec::new();
        let mut kids: Vec<Vec<usize>> = Vec::new();
        let mut stack = vec![(self.root, usize::MAX)];
        while let Some((class, parent)) = stack.pop() {
            let id = label.len();
            label.push(self.classes[class as usize].label);
            kids.push(Vec::new());
            if parent != usize::MAX {
                kids[parent].push(id);
            }
            for &c in self.classes[class as usize].children.iter().rev() {
                stack.push((c, id));
            }
        }
        LabeledTree::from_shape(0, &kids, |i| self.labels.name(label[i]))
    }
}
