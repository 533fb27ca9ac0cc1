//! Top-tree compression for rooted, ordered, labeled trees.
//!
//! A tree is decomposed into a binary hierarchy of clusters (its top tree),
//! which is then minimized into a DAG by sharing identical cluster subtrees.
//! The resulting top DAG supports navigation queries in time logarithmic in
//! the size of the original tree without decompressing it.

pub mod cluster;
pub mod construct;
pub mod format;
pub mod generate;
pub mod mindag;
pub mod navigate;
pub mod oracle;
pub mod query;
pub mod stats;
pub mod text;
pub mod topdag;
pub mod tree;
pub mod xml;

pub use cluster::{Cluster, ClusterPattern, MergeType};
pub use construct::{build_top_tree, ConstructError, Construction, TopTree};
pub use format::{load_topdag, save_topdag, topdag_to_string, FormatError};
pub use generate::{generate, GenerateError, TreeKind};
pub use mindag::{minimize_tree_dag, MinDag, SubtreeClass};
pub use navigate::{ChildPos, Dir, MergeRanges, NavPath, NavStep, Navigator, QueryError, RepresentativeSet, Representatives};
pub use query::{Answer, Query, QueryOp, QueryParseError};
pub use stats::{stats, stats_with_dag, StatsRecord};
pub use text::{parse_tree, serialize_tree, ParseError};
pub use topdag::{minimize_top_tree, minimize_with_map, Augmentation, DagError, TopDag};
pub use tree::{BuildError, LabelId, LabelTable, LabeledTree, TreeBuilder};
pub use xml::{ingest_xml, XmlError};
