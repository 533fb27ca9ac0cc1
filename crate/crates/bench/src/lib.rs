//! Shared inputs for the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toptree_core::{generate, LabeledTree, Query, TreeKind};

/// Node counts used by the construction benchmarks.
pub const SIZES: [usize; 3] = [1 << 10, 1 << 13, 1 << 16];

pub fn fixture(kind: TreeKind, n: usize, sigma: usize) -> LabeledTree {
    generate(kind, n, sigma, 0x5eed).expect("valid generator arguments")
}

/// `count` random queries of every operation except decompression.
pub fn query_mix(tree: &LabeledTree, count: usize, seed: u64) -> Vec<Query> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = tree.len();
    (0..count)
        .map(|i| {
            let x = rng.random_range(1..=n);
            match i % 9 {
                0 => Query::Access(x),
                1 => Query::Depth(x),
                2 => Query::Height(x),
                3 => Query::Size(x),
                4 => Query::Parent(x),
                5 => Query::FirstChild(x),
                6 => Query::NextSibling(x),
                7 => Query::LevelAncestor(x, rng.random_range(0..=tree.depth(x))),
                _ => Query::Nca(x, rng.random_range(1..=n)),
            }
        })
        .collect()
}
