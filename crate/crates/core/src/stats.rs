//! Size statistics comparing a tree, its top DAG and its minimal DAG.

use std::fmt;

use serde::Serialize;

use crate::construct::build_top_tree;
use crate::mindag::minimize_tree_dag;
use crate::topdag::{minimize_top_tree, TopDag};
use crate::tree::LabeledTree;

/// Sizes count nodes plus edges.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StatsRecord {
    #[serde(rename = "n_T")]
    pub n_t: usize,
    #[serde(rename = "e_T")]
    pub e_t: usize,
    /// Top tree node count.
    #[serde(rename = "n_TT")]
    pub n_tt: usize,
    #[serde(rename = "ttHeight")]
    pub tt_height: usize,
    #[serde(rename = "n_TD")]
    pub n_td: usize,
    #[serde(rename = "n_D")]
    pub n_d: usize,
    #[serde(rename = "ratio_T_TD")]
    pub ratio_t_td: f64,
    #[serde(rename = "ratio_D_TD")]
    pub ratio_d_td: f64,
}

impl StatsRecord {
    pub const FIELDS: [&'static str; 8] = ["n_T", "e_T", "n_TT", "ttHeight", "n_TD", "n_D", "ratio_T_TD", "ratio_D_TD"];

    pub fn tsv_header() -> String {
        Self::FIELDS.join("\t")
    }
}

/// Tab-separated, in [`StatsRecord::FIELDS`] order.
impl fmt::Display for StatsRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}\t{}\t{}\t{}\t{}\t{:.6}\t{:.6}",
            self.n_t, self.e_t, self.n_tt, self.tt_height, self.n_td, self.n_d, self.ratio_t_td, self.ratio_d_td
        )
    }
}

/// Compresses `tree` and reports sizes; also returns the top DAG.
pub fn stats_with_dag(tree: &LabeledTree) -> (StatsRecord, TopDag) {
    let n = tree.len();
    let (dag, n_tt, tt_height) = if n == 1 {
        (TopDag::from_tree(tree), 1, 0)
    } else {
        let tt = build_top_tree(tree).expect("tree has at least two nodes");
        (minimize_top_tree(&tt), tt.len(), tt.height())
    };
    let n_td = dag.size();
    let n_d = minimize_tree_dag(tree).size();
    let record = StatsRecord {
        n_t: n,
        e_t: n - 1,
        n_tt,
        tt_height,
        n_td,
        n_d,
        ratio_t_td: n as f64 / n_td as f64,
        ratio_d_td: n_d as f64 / n_td as f64,
    };
    (record, dag)
}

pub fn stats(tree: &LabeledTree) -> StatsRecord {
    stats_with_dag(tree).0
}
