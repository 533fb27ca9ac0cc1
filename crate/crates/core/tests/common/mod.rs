#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toptree_core::{generate, LabeledTree, TreeKind};

pub const SIGMAS: [usize; 4] = [1, 2, 4, 26];

pub struct Instance {
    pub name: String,
    pub tree: LabeledTree,
}

/// Trees of every kind and alphabet size, `per_cell` per (kind, sigma),
/// with node counts drawn from `2..=max_n`.
pub fn corpus(per_cell: usize, max_n: usize, seed: u64) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for kind in TreeKind::ALL {
        for sigma in SIGMAS {
            for _ in 0..per_cell {
                let n = rng.random_range(2..=max_n);
                let s = rng.random();
                // Complete binary trees round n down; keep at least 3 nodes.
                let n = if kind == TreeKind::CompleteBinary { n.max(3) } else { n };
                let tree = generate(kind, n, sigma, s).unwrap();
                out.push(Instance {
                    name: format!("{kind} n={} sigma={sigma} seed={s}", tree.len()),
                    tree,
                });
            }
        }
    }
    out
}

/// Tree with parents drawn from `raw` (`parent(i) = raw[i] % i`) and labels
/// from `labels`, cycling.
pub fn tree_from_parents(raw: &[usize], labels: &[u8]) -> LabeledTree {
    let n = raw.len() + 1;
    let mut kids = vec![Vec::new(); n];
    for (i, r) in raw.iter().enumerate() {
        kids[r % (i + 1)].push(i + 1);
    }
    let names: Vec<String> = (0..n)
        .map(|i| ((b'a' + labels.get(i % labels.len().max(1)).copied().unwrap_or(0) % 3) as char).to_string())
        .collect();
    LabeledTree::from_shape(0, &kids, |i| &names[i])
}
