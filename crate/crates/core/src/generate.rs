//! Deterministic tree families used by tests and benchmarks.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::tree::LabeledTree;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TreeKind {
    /// A chain of `n` nodes.
    Path,
    /// A spine of `⌈n/2⌉` nodes; every spine node but the last has a leaf
    /// after its spine child. For even `n` the last spine node gets one leaf.
    Caterpillar,
    /// The largest complete binary tree with at most `n` nodes.
    CompleteBinary,
    /// Uniform recursive attachment: node `i` becomes the last child of a
    /// uniformly chosen earlier node.
    Random,
}

impl TreeKind {
    pub const ALL: [TreeKind; 4] = [
        TreeKind::Path,
        TreeKind::Caterpillar,
        TreeKind::CompleteBinary,
        TreeKind::Random,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TreeKind::Path => "path",
            TreeKind::Caterpillar => "caterpillar",
            TreeKind::CompleteBinary => "complete_binary",
            TreeKind::Random => "random",
        }
    }
}

impl fmt::Display for TreeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TreeKind {
    type Err = GenerateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "path" => Ok(TreeKind::Path),
            "caterpillar" => Ok(TreeKind::Caterpillar),
            "complete_binary" | "complete-binary" | "binary" => Ok(TreeKind::CompleteBinary),
            "random" => Ok(TreeKind::Random),
            other => Err(GenerateError::UnknownKind(other.to_owned())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenerateError {
    #[error("node count must be at least 1")]
    ZeroNodes,
    #[error("alphabet size must be at least 1")]
    ZeroSigma,
    #[error("unknown tree kind {0:?} (expected path, caterpillar, complete_binary or random)")]
    UnknownKind(String),
}

/// Name of generated label `id`: `a`..`z`, then `a1`..`z1`, and so on.
pub fn label_name(id: usize) -> String {
    let letter = (b'a' + (id % 26) as u8) as char;
    match id / 26 {
        0 => letter.to_string(),
        round => format!("{letter}{round}"),
    }
}

/// Largest `2^k - 1` not exceeding `n` (for `n >= 1`).
pub fn complete_binary_size(n: usize) -> usize {
    let k = usize::BITS - (n + 1).leading_zeros() - 1;
    (1usize << k) - 1
}

pub fn generate(kind: TreeKind, n: usize, sigma: usize, seed: u64) -> Result<LabeledTree, GenerateError> {
    if n == 0 {
        return Err(GenerateError::ZeroNodes);
    }
    if sigma == 0 {
        return Err(GenerateError::ZeroSigma);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let children = match kind {
        TreeKind::Path => (0..n)
            .map(|i| if i + 1 < n { vec![i + 1] } else { vec![] })
            .collect::<Vec<_>>(),
        TreeKind::Caterpillar => {
            let spine = n.div_ceil(2);
            let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
            let mut next_leaf = spine;
            for (i, kids) in children.iter_mut().enumerate().take(spine) {
                if i + 1 < spine {
                    kids.push(i + 1);
                }
                if next_leaf < n {
                    kids.push(next_leaf);
                    next_leaf += 1;
                }
            }
            children
        }
        TreeKind::CompleteBinary => {
            let m = complete_binary_size(n);
            (0..m)
                .map(|i| {
                    if 2 * i + 2 < m {
                        vec![2 * i + 1, 2 * i + 2]
                    } else {
                        vec![]
                    }
                })
                .collect()
        }
        TreeKind::Random => {
            let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
            for i in 1..n {
                let p = rng.random_range(0..i);
                children[p].push(i);
            }
            children
        }
    };

    let names: Vec<String> = (0..children.len())
        .map(|_| if sigma == 1 { 0 } else { rng.random_range(0..sigma) })
        .map(label_name)
        .collect();
    Ok(LabeledTree::from_shape(0, &children, |i| &names[i]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{parse_tree, serialize_tree};

    #[test]
    fn path_of_three() {
        let t = generate(TreeKind::Path, 3, 1, 7).unwrap();
        assert_eq!(t, parse_tree("(a(a(a)))").unwrap());
    }

    #[test]
    fn complete_binary_of_seven() {
        let t = generate(TreeKind::CompleteBinary, 7, 1, 0).unwrap();
        assert_eq!(t, parse_tree("(a(a(a)(a))(a(a)(a)))").unwrap());
        // coerced down to 2^k - 1
        assert_eq!(generate(TreeKind::CompleteBinary, 14, 1, 0).unwrap().len(), 7);
        assert_eq!(generate(TreeKind::CompleteBinary, 15, 1, 0).unwrap().len(), 15);
        assert_eq!(generate(TreeKind::CompleteBinary, 1, 1, 0).unwrap().len(), 1);
    }

    #[test]
    fn caterpillar_shape() {
        let t = generate(TreeKind::Caterpillar, 7, 1, 0).unwrap();
        assert_eq!(t, parse_tree("(a(a(a(a)(a))(a))(a))").unwrap());
        for n in 1..40 {
            let t = generate(TreeKind::Caterpillar, n, 1, 0).unwrap();
            assert_eq!(t.len(), n);
            // non-leaves form a single path
            let internal: Vec<_> = t.nodes().filter(|&x| !t.is_leaf(x)).collect();
            for w in internal.windows(2) {
                assert_eq!(t.parent(w[1]), Some(w[0]));
            }
        }
        assert_eq!(
            generate(TreeKind::Caterpillar, 4, 1, 0).unwrap(),
            parse_tree("(a(a(a))(a))").unwrap()
        );
    }

    #[test]
    fn random_is_deterministic() {
        let a = generate(TreeKind::Random, 100, 4, 42).unwrap();
        let b = generate(TreeKind::Random, 100, 4, 42).unwrap();
        assert_eq!(serialize_tree(&a), serialize_tree(&b));
        let c = generate(TreeKind::Random, 100, 4, 43).unwrap();
        assert_ne!(serialize_tree(&a), serialize_tree(&c));
        assert!(a.sigma() <= 4);
        a.check_invariants().unwrap();
    }

    #[test]
    fn heights() {
        for n in [1, 2, 5, 64] {
            assert_eq!(generate(TreeKind::Path, n, 1, 0).unwrap().height(), n - 1);
        }
        for k in 1..12 {
            let t = generate(TreeKind::CompleteBinary, (1 << k) - 1, 3, 9).unwrap();
            assert_eq!(t.height(), k - 1);
        }
    }

    #[test]
    fn label_names_are_distinct() {
        let names: std::collections::HashSet<_> = (0..200).map(label_name).collect();
        assert_eq!(names.len(), 200);
        assert_eq!(label_name(0), "a");
        assert_eq!(label_name(25), "z");
        assert_eq!(label_name(26), "a1");
    }

    #[test]
    fn rejects_zero() {
        assert_eq!(generate(TreeKind::Path, 0, 1, 0), Err(GenerateError::ZeroNodes));
        assert_eq!(generate(TreeKind::Path, 3, 0, 0), Err(GenerateError::ZeroSigma));
    }
}
