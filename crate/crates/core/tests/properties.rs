mod common;

use common::{corpus, tree_from_parents};
use proptest::prelude::*;
use toptree_core::{
    build_top_tree, generate, load_topdag, minimize_with_map, oracle, parse_tree, serialize_tree, topdag_to_string,
    ChildPos, Cluster, Dir, LabeledTree, MergeType, Query, QueryOp, Representatives, TopDag, TreeKind,
};

fn small_trees() -> Vec<LabeledTree> {
    let mut out: Vec<LabeledTree> = corpus(3, 40, 11).into_iter().map(|i| i.tree).collect();
    for s in ["(a(b))", "(a(b)(c))", "(a(b(c)))", "(a(b(c)(d))(e(f)))", "(r(a)(b)(c)(d)(e)(f)(g)(h))"] {
        out.push(parse_tree(s).unwrap());
    }
    out
}

/// Depth of the deepest node.
fn pattern_height(t: &LabeledTree) -> usize {
    t.nodes().map(|x| t.depth(x)).max().unwrap()
}

#[test]
fn augmentation_matches_expanded_clusters() {
    for t in small_trees() {
        let tt = build_top_tree(&t).unwrap();
        let (dag, map) = minimize_with_map(&tt);
        for id in 0..tt.len() as u32 {
            let pattern = tt.expand(id);
            let aug = dag.aug(map[id as usize]);
            assert_eq!(aug.size, pattern.tree.len(), "size of cluster {id} in {t}");
            assert_eq!(aug.height, pattern_height(&pattern.tree), "height of cluster {id} in {t}");
            let (top, bottom) = tt.boundaries(id);
            if let Some(b) = bottom {
                assert_eq!(aug.spine, Some(t.depth(b) - t.depth(top)), "spine of cluster {id} in {t}");
                assert_eq!(aug.bpos, pattern.bottom, "bottom position of cluster {id} in {t}");
            }
            if let Cluster::Merge { kind, left, .. } = tt.node(id) {
                let expected = if kind.is_vertical() {
                    t.depth(tt.boundaries(left).1.unwrap()) - t.depth(top)
                } else {
                    0
                };
                assert_eq!(aug.dist_to_right_top, expected);
            }
        }
    }
}

#[test]
fn merges_respect_boundaries() {
    for t in small_trees() {
        let tt = build_top_tree(&t).unwrap();
        for id in 0..tt.len() as u32 {
            let Cluster::Merge { kind, left, right } = tt.node(id) else {
                continue;
            };
            let (top, bottom) = tt.boundaries(id);
            let (top_a, bottom_a) = tt.boundaries(left);
            let (top_b, bottom_b) = tt.boundaries(right);
            assert_eq!(top, top_a);
            match kind {
                MergeType::A | MergeType::B => {
                    assert_eq!(bottom_a, Some(top_b));
                    assert_eq!(bottom_b.is_some(), kind == MergeType::A);
                    assert_eq!(bottom, bottom_b);
                }
                MergeType::C => {
                    assert_eq!(top_b, top);
                    assert!(bottom_a.is_some() && bottom_b.is_none());
                    assert_eq!(bottom, bottom_a);
                }
                MergeType::D => {
                    assert_eq!(top_b, top);
                    assert!(bottom_a.is_none() && bottom_b.is_some());
                    assert_eq!(bottom, bottom_b);
                }
                MergeType::E => {
                    assert_eq!(top_b, top);
                    assert!(bottom_a.is_none() && bottom_b.is_none() && bottom.is_none());
                }
            }
        }
        assert_eq!(tt.boundaries(tt.root()), (1, None));
        assert_eq!(tt.len(), 2 * t.len() - 3);
    }
}

#[test]
fn dag_nodes_are_distinct() {
    for t in small_trees() {
        let dag = TopDag::from_tree(&t);
        let distinct: std::collections::HashSet<_> = dag.nodes().iter().collect();
        assert_eq!(distinct.len(), dag.node_count(), "{t}");
    }
}

#[test]
fn local_preorder_conversions_invert() {
    for t in small_trees() {
        let dag = TopDag::from_tree(&t);
        for c in 0..dag.node_count() as u32 {
            if !matches!(dag.node(c), Cluster::Merge { .. }) {
                continue;
            }
            for u in 1..=dag.aug(c).size {
                match dag.to_child(c, u).unwrap() {
                    ChildPos::Left(a) => assert_eq!(dag.to_parent(c, Dir::Left, a).unwrap(), u),
                    ChildPos::Right(b) => assert_eq!(dag.to_parent(c, Dir::Right, b).unwrap(), u),
                    ChildPos::Both { left, right } => {
                        assert_eq!(dag.to_parent(c, Dir::Left, left).unwrap(), u);
                        assert_eq!(dag.to_parent(c, Dir::Right, right).unwrap(), u);
                    }
                }
            }
        }
    }
}

#[test]
fn cross_operation_consistency() {
    for t in small_trees() {
        let dag = TopDag::from_tree(&t);
        let mut nav = dag.navigator();
        for x in 1..=t.len() {
            let mut kids = Vec::new();
            let mut c = nav.first_child(x).unwrap();
            while let Some(k) = c {
                kids.push(k);
                c = nav.next_sibling(k).unwrap();
            }
            let sum: usize = kids.iter().map(|&k| nav.size(k).unwrap()).sum();
            assert_eq!(nav.size(x).unwrap(), 1 + sum);
            if let Some(&first) = kids.first() {
                assert_eq!(first, x + 1);
                assert_eq!(nav.depth(first).unwrap(), nav.depth(x).unwrap() + 1);
                let h = kids.iter().map(|&k| nav.height(k).unwrap()).max().unwrap();
                assert_eq!(nav.height(x).unwrap(), h + 1);
            }
            for &k in &kids {
                assert_eq!(nav.parent(k).unwrap(), Some(x));
            }
        }
    }
}

/// The plain-sum height (no max over intermediate chain clusters) is only a
/// lower bound; report how often it disagrees with the true height.
#[test]
fn plain_sum_height_disagreements() {
    let mut checked = 0;
    let mut differ = 0;
    for t in small_trees() {
        let dag = TopDag::from_tree(&t);
        let mut nav = dag.navigator();
        for x in 1..=t.len() {
            let Representatives::Set(set) = nav.find_representatives(x).unwrap() else {
                continue;
            };
            let mut plain = dag.aug(set.m()).height;
            if let Some((&last, rest)) = set.chain.split_last() {
                plain = dag.aug(set.m()).spine.unwrap()
                    + rest.iter().map(|&b| dag.aug(b).spine.unwrap()).sum::<usize>()
                    + dag.aug(last).height;
            }
            let truth = oracle::height(&t, x).unwrap();
            assert!(plain <= truth || set.chain.is_empty());
            checked += 1;
            if plain != truth {
                differ += 1;
            }
        }
    }
    println!("plain-sum height differs from the true height on {differ} of {checked} internal nodes");
}

#[test]
fn single_node_tree_end_to_end() {
    let t = parse_tree("(solo)").unwrap();
    let dag = TopDag::from_tree(&t);
    assert_eq!(dag.size(), 1);
    let loaded = load_topdag(&topdag_to_string(&dag)).unwrap();
    assert_eq!(loaded.unfold(), t);
    let mut nav = loaded.navigator();
    for op in QueryOp::ALL {
        let q = Query::new(op, &vec![1; op.arity()]).unwrap();
        let expected = oracle::answer(&t, &q);
        assert_eq!(nav.answer(&q), expected, "{q}");
    }
}

fn tree_strategy() -> impl Strategy<Value = LabeledTree> {
    (prop::collection::vec(any::<usize>(), 0..80), prop::collection::vec(0u8..3, 1..8))
        .prop_map(|(raw, labels)| tree_from_parents(&raw, &labels))
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn text_round_trip(t in tree_strategy()) {
        let text = serialize_tree(&t);
        let back = parse_tree(&text).unwrap();
        prop_assert_eq!(serialize_tree(&back), text);
        prop_assert_eq!(back, t);
    }

    #[test]
    fn compress_unfold_round_trip(t in tree_strategy()) {
        let dag = TopDag::from_tree(&t);
        prop_assert_eq!(dag.unfold(), t.clone());
        let text = topdag_to_string(&dag);
        let loaded = load_topdag(&text).unwrap();
        prop_assert_eq!(topdag_to_string(&loaded), text);
        prop_assert_eq!(loaded.unfold(), t);
    }

    #[test]
    fn queries_match_oracle(t in tree_strategy(), pairs in prop::collection::vec((any::<usize>(), any::<usize>()), 8)) {
        let dag = TopDag::from_tree(&t);
        let mut nav = dag.navigator();
        let n = t.len();
        for x in 1..=n {
            for op in QueryOp::ALL {
                if op.arity() == 1 {
                    let q = Query::new(op, &[x]).unwrap();
                    prop_assert_eq!(nav.answer(&q), oracle::answer(&t, &q), "{}", q);
                }
            }
            for i in 0..=t.depth(x) + 1 {
                let q = Query::LevelAncestor(x, i);
                prop_assert_eq!(nav.answer(&q), oracle::answer(&t, &q), "{}", q);
            }
        }
        for (a, b) in pairs {
            let q = Query::Nca(a % n + 1, b % n + 1);
            prop_assert_eq!(nav.answer(&q), oracle::answer(&t, &q), "{}", q);
        }
        let q = Query::Access(n + 1);
        prop_assert!(nav.answer(&q).is_err());
    }

    #[test]
    fn generated_trees_are_valid(kind in prop::sample::select(TreeKind::ALL.to_vec()), n in 1usize..300, sigma in 1usize..30, seed in any::<u64>()) {
        let t = generate(kind, n, sigma, seed).unwrap();
        prop_assert!(t.check_invariants().is_ok());
        prop_assert!(t.sigma() <= sigma);
        if kind != TreeKind::CompleteBinary {
            prop_assert_eq!(t.len(), n);
        }
        prop_assert_eq!(generate(kind, n, sigma, seed).unwrap(), t);
    }
}
