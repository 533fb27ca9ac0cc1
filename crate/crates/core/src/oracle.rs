//! Straightforward query answers on an explicit tree, used as ground truth.

use crate::navigate::QueryError;
use crate::query::{Answer, Query};
use crate::tree::LabeledTree;

fn check(t: &LabeledTree, x: usize) -> Result<(), QueryError> {
    if x == 0 || x > t.len() {
        Err(QueryError::NodeOutOfRange { x, n: t.len() })
    } else {
        Ok(())
    }
}

fn ancestors(t: &LabeledTree, x: usize) -> Vec<usize> {
    let mut out = vec![x];
    let mut cur = x;
    while let Some(p) = t.parent(cur) {
        out.push(p);
        cur = p;
    }
    out
}

pub fn access(t: &LabeledTree, x: usize) -> Result<&str, QueryError> {
    check(t, x)?;
    Ok(t.label(x))
}

pub fn depth(t: &LabeledTree, x: usize) -> Result<usize, QueryError> {
    check(t, x)?;
    Ok(ancestors(t, x).len() - 1)
}

pub fn height(t: &LabeledTree, x: usize) -> Result<usize, QueryError> {
    check(t, x)?;
    let mut best = 0;
    let mut stack = vec![(x, 0)];
    while let Some((v, d)) = stack.pop() {
        best = best.max(d);
        stack.extend(t.children(v).map(|c| (c, d + 1)));
    }
    Ok(best)
}

pub fn size(t: &LabeledTree, x: usize) -> Result<usize, QueryError> {
    check(t, x)?;
    let mut count = 0;
    let mut stack = vec![x];
    while let Some(v) = stack.pop() {
        count += 1;
        stack.extend(t.children(v));
    }
    Ok(count)
}

pub fn parent(t: &LabeledTree, x: usize) -> Result<Option<usize>, QueryError> {
    check(t, x)?;
    Ok(t.parent(x))
}

pub fn first_child(t: &LabeledTree, x: usize) -> Result<Option<usize>, QueryError> {
    check(t, x)?;
    Ok(t.children(x).next())
}

pub fn next_sibling(t: &LabeledTree, x: usize) -> Result<Option<usize>, QueryError> {
    check(t, x)?;
    let Some(p) = t.parent(x) else { return Ok(None) };
    let mut kids = t.children(p).skip_while(|&c| c != x);
    kids.next();
    Ok(kids.next())
}

pub fn level_ancestor(t: &LabeledTree, x: usize, i: usize) -> Result<usize, QueryError> {
    check(t, x)?;
    let chain = ancestors(t, x);
    chain.get(i).copied().ok_or(QueryError::LevelOutOfRange {
        x,
        i,
        depth: chain.len() - 1,
    })
}

pub fn nca(t: &LabeledTree, x: usize, y: usize) -> Result<usize, QueryError> {
    check(t, x)?;
    check(t, y)?;
    let ax = ancestors(t, x);
    let ay: std::collections::HashSet<usize> = ancestors(t, y).into_iter().collect();
    Ok(ax.into_iter().find(|a| ay.contains(a)).expect("the root is a common ancestor"))
}

pub fn decompress_subtree(t: &LabeledTree, x: usize) -> Result<LabeledTree, QueryError> {
    check(t, x)?;
    Ok(t.subtree(x))
}

pub fn answer(t: &LabeledTree, q: &Query) -> Result<Answer, QueryError> {
    Ok(match *q {
        Query::Access(x) => Answer::Label(access(t, x)?.to_owned()),
        Query::Depth(x) => Answer::Count(depth(t, x)?),
        Query::Height(x) => Answer::Count(height(t, x)?),
        Query::Size(x) => Answer::Count(size(t, x)?),
        Query::Parent(x) => Answer::Node(parent(t, x)?),
        Query::FirstChild(x) => Answer::Node(first_child(t, x)?),
        Query::NextSibling(x) => Answer::Node(next_sibling(t, x)?),
        Query::LevelAncestor(x, i) => Answer::Node(Some(level_ancestor(t, x, i)?)),
        Query::Nca(x, y) => Answer::Node(Some(nca(t, x, y)?)),
        Query::Decompress(x) => Answer::Tree(decompress_subtree(t, x)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_tree;

    #[test]
    fn small_tree() {
        let t = parse_tree("(a(b(d)(e))(c))").unwrap();
        assert_eq!(depth(&t, 4).unwrap(), 2);
        assert_eq!(height(&t, 1).unwrap(), 2);
        assert_eq!(size(&t, 2).unwrap(), 3);
        assert_eq!(next_sibling(&t, 3).unwrap(), Some(4));
        assert_eq!(next_sibling(&t, 4).unwrap(), None);
        assert_eq!(next_sibling(&t, 2).unwrap(), Some(5));
        assert_eq!(first_child(&t, 5).unwrap(), None);
        assert_eq!(nca(&t, 3, 5).unwrap(), 1);
        assert_eq!(nca(&t, 3, 4).unwrap(), 2);
        assert_eq!(level_ancestor(&t, 4, 2).unwrap(), 1);
        assert!(level_ancestor(&t, 4, 3).is_err());
        assert_eq!(decompress_subtree(&t, 2).unwrap().to_string(), "(b(d)(e))");
        assert!(access(&t, 6).is_err());
    }
}
