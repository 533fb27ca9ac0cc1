//! Query names, arguments and answers shared by the DAG navigator, the
//! explicit-tree oracle and the command line.

use std::fmt;
use std::str::FromStr;

use crate::navigate::{Navigator, QueryError};
use crate::tree::LabeledTree;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Query {
    Access(usize),
    Depth(usize),
    Height(usize),
    Size(usize),
    Parent(usize),
    FirstChild(usize),
    NextSibling(usize),
    LevelAncestor(usize, usize),
    Nca(usize, usize),
    Decompress(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QueryOp {
    Access,
    Depth,
    Height,
    Size,
    Parent,
    FirstChild,
    NextSibling,
    LevelAncestor,
    Nca,
    Decompress,
}

impl QueryOp {
    pub const ALL: [QueryOp; 10] = [
        QueryOp::Access,
        QueryOp::Depth,
        QueryOp::Height,
        QueryOp::Size,
        QueryOp::Parent,
        QueryOp::FirstChild,
        QueryOp::NextSibling,
        QueryOp::LevelAncestor,
        QueryOp::Nca,
        QueryOp::Decompress,
    ];

    pub fn name(self) -> &'static str {
        match self {
            QueryOp::Access => "access",
            QueryOp::Depth => "depth",
            QueryOp::Height => "height",
            QueryOp::Size => "size",
            QueryOp::Parent => "parent",
            QueryOp::FirstChild => "first_child",
            QueryOp::NextSibling => "next_sibling",
            QueryOp::LevelAncestor => "level_ancestor",
            QueryOp::Nca => "nca",
            QueryOp::Decompress => "decompress",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            QueryOp::LevelAncestor | QueryOp::Nca => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for QueryOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QueryParseError {
    #[error("unknown query operation {0:?}")]
    UnknownOp(String),
    #[error("{op} takes {expected} argument(s), got {got}")]
    Arity { op: QueryOp, expected: usize, got: usize },
    #[error("invalid argument {0:?}: expected a non-negative integer")]
    BadArgument(String),
}

impl FromStr for QueryOp {
    type Err = QueryParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.to_ascii_lowercase().replace('-', "_");
        let op = match norm.as_str() {
            "access" | "label" => QueryOp::Access,
            "depth" => QueryOp::Depth,
            "height" => QueryOp::Height,
            "size" | "subtree_size" => QueryOp::Size,
            "parent" => QueryOp::Parent,
            "first_child" | "firstchild" => QueryOp::FirstChild,
            "next_sibling" | "nextsibling" => QueryOp::NextSibling,
            "level_ancestor" | "levelancestor" | "la" => QueryOp::LevelAncestor,
            "nca" | "lca" => QueryOp::Nca,
            "decompress" | "decompress_subtree" => QueryOp::Decompress,
            _ => return Err(QueryParseError::UnknownOp(s.to_owned())),
        };
        Ok(op)
    }
}

impl Query {
    pub fn op(&self) -> QueryOp {
        match self {
            Query::Access(_) => QueryOp::Access,
            Query::Depth(_) => QueryOp::Depth,
            Query::Height(_) => QueryOp::Height,
            Query::Size(_) => QueryOp::Size,
            Query::Parent(_) => QueryOp::Parent,
            Query::FirstChild(_) => QueryOp::FirstChild,
            Query::NextSibling(_) => QueryOp::NextSibling,
            Query::LevelAncestor(..) => QueryOp::LevelAncestor,
            Query::Nca(..) => QueryOp::Nca,
            Query::Decompress(_) => QueryOp::Decompress,
        }
    }

    pub fn new(op: QueryOp, args: &[usize]) -> Result<Query, QueryParseError> {
        if args.len() != op.arity() {
            return Err(QueryParseError::Arity {
                op,
                expected: op.arity(),
                got: args.len(),
            });
        }
        let x = args[0];
        Ok(match op {
            QueryOp::Access => Query::Access(x),
            QueryOp::Depth => Query::Depth(x),
            QueryOp::Height => Query::Height(x),
            QueryOp::Size => Query::Size(x),
            QueryOp::Parent => Query::Parent(x),
            QueryOp::FirstChild => Query::FirstChild(x),
            QueryOp::NextSibling => Query::NextSibling(x),
            QueryOp::LevelAncestor => Query::LevelAncestor(x, args[1]),
            QueryOp::Nca => Query::Nca(x, args[1]),
            QueryOp::Decompress => Query::Decompress(x),
        })
    }

    /// Parses an operation name and its textual arguments.
    pub fn parse<S: AsRef<str>>(op: &str, args: &[S]) -> Result<Query, QueryParseError> {
        let op: QueryOp = op.parse()?;
        let args = args
            .iter()
            .map(|a| {
                let a = a.as_ref();
                a.parse::<usize>().map_err(|_| QueryParseError::BadArgument(a.to_owned()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Query::new(op, &args)
    }
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Query::LevelAncestor(x, y) | Query::Nca(x, y) => write!(f, "{} {x} {y}", self.op()),
            Query::Access(x)
            | Query::Depth(x)
            | Query::Height(x)
            | Query::Size(x)
            | Query::Parent(x)
            | Query::FirstChild(x)
            | Query::NextSibling(x)
            | Query::Decompress(x) => write!(f, "{} {x}", self.op()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Answer {
    Label(String),
    Count(usize),
    /// A preorder number, or none (no parent, child or sibling).
    Node(Option<usize>),
    Tree(LabeledTree),
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Answer::Label(l) => f.write_str(l),
            Answer::Count(c) => write!(f, "{c}"),
            Answer::Node(Some(x)) => write!(f, "{x}"),
            Answer::Node(None) => f.write_str("none"),
            Answer::Tree(t) => write!(f, "{t}"),
        }
    }
}

impl Navigator<'_> {
    pub fn answer(&mut self, q: &Query) -> Result<Answer, QueryError> {
        Ok(match *q {
            Query::Access(x) => Answer::Label(self.access(x)?.to_owned()),
            Query::Depth(x) => Answer::Count(self.depth(x)?),
            Query::Height(x) => Answer::Count(self.height(x)?),
            Query::Size(x) => Answer::Count(self.size(x)?),
            Query::Parent(x) => Answer::Node(self.parent(x)?),
            Query::FirstChild(x) => Answer::Node(self.first_child(x)?),
            Query::NextSibling(x) => Answer::Node(self.next_sibling(x)?),
            Query::LevelAncestor(x, i) => Answer::Node(Some(self.level_ancestor(x, i)?)),
            Query::Nca(x, y) => Answer::Node(Some(self.nca(x, y)?)),
            Query::Decompress(x) => Answer::Tree(self.decompress_subtree(x)?),
        })
    }
}
