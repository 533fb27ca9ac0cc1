//! `TOPDAG 1` text serialization.
//!
//! ```text
//! TOPDAG 1
//! n <source node count>
//! rootlabel <label>            (single-node trees only; ends the file)
//! labels <k>
//! <label>                      (k lines, id = line order from 0)
//! nodes <m>
//! L <parent label> <child label>
//! M <a|b|c|d|e> <left> <right> (m lines in total, id = line order from 0)
//! root <id>
//! ```
//!
//! The augmentation is not stored; it is recomputed (and thereby validated)
//! on load.

use std::io::{self, Write};

use crate::cluster::{Cluster, MergeType};
use crate::topdag::{DagError, TopDag};
use crate::tree::{LabelId, LabelTable};

pub const MAGIC: &str = "TOPDAG";
pub const VERSION: &str = "1";

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("unsupported format header {0:?} (expected \"TOPDAG 1\")")]
    Version(String),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Dag(#[from] DagError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

pub fn save_topdag<W: Write>(dag: &TopDag, mut out: W) -> io::Result<()> {
    writeln!(out, "{MAGIC} {VERSION}")?;
    writeln!(out, "n {}", dag.source_n())?;
    if let Some(l) = dag.root_label() {
        writeln!(out, "rootlabel {}", dag.labels().name(l))?;
        return Ok(());
    }
    writeln!(out, "labels {}", dag.labels().len())?;
    for name in dag.labels().iter() {
        writeln!(out, "{name}")?;
    }
    writeln!(out, "nodes {}", dag.nodes().len())?;
    for c in dag.nodes() {
        match *c {
            Cluster::Leaf { parent, child } => writeln!(out, "L {parent} {child}")?,
            Cluster::Merge { kind, left, right } => writeln!(out, "M {kind} {left} {right}")?,
        }
    }
    writeln!(out, "root {}", dag.root())
}

pub fn topdag_to_string(dag: &TopDag) -> String {
    let mut buf = Vec::new();
    save_topdag(dag, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("labels are UTF-8")
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    line: usize,
}

impl<'a> Lines<'a> {
    fn next(&mut self, what: &str) -> Result<&'a str, FormatError> {
        match self.inner.next() {
            Some((i, l)) => {
                self.line = i + 1;
                Ok(l.trim_end_matches('\r'))
            }
            None => Err(FormatError::Syntax {
                line: self.line + 1,
                message: format!("unexpected end of input, expected {what}"),
            }),
        }
    }

    fn err(&self, message: impl Into<String>) -> FormatError {
        FormatError::Syntax {
            line: self.line,
            message: message.into(),
        }
    }

    /// Reads `<key> <value>`.
    fn keyed(&mut self, key: &str) -> Result<&'a str, FormatError> {
        let l = self.next(key)?;
        match l.split_once(' ') {
            Some((k, v)) if k == key && !v.is_empty() => Ok(v),
            _ => Err(self.err(format!("expected `{key} <value>`, found {l:?}"))),
        }
    }

    fn number<T: std::str::FromStr>(&self, s: &str) -> Result<T, FormatError> {
        s.parse().map_err(|_| self.err(format!("invalid number {s:?}")))
    }
}

fn check_label(lines: &Lines<'_>, name: &str) -> Result<(), FormatError> {
    if name.is_empty() || name.chars().any(|c| c.is_whitespace() || c == '(' || c == ')') {
        return Err(lines.err(format!("invalid label {name:?}")));
    }
    Ok(())
}

pub fn load_topdag(text: &str) -> Result<TopDag, FormatError> {
    let mut lines = Lines {
        inner: text.lines().enumerate(),
        line: 0,
    };
    let header = lines.next("header")?;
    match header.split_once(' ') {
        Some((MAGIC, VERSION)) => {}
        _ => return Err(FormatError::Version(header.to_owned())),
    }
    let raw = lines.keyed("n")?;
    let n: usize = lines.number(raw)?;
    if n == 0 {
        return Err(lines.err("node count must be positive"));
    }

    if n == 1 {
        let name = lines.keyed("rootlabel")?;
        check_label(&lines, name)?;
        let mut labels = LabelTable::new();
        let id = labels.intern(name);
        expect_end(&mut lines)?;
        return Ok(TopDag::single(labels, id));
    }

    let raw = lines.keyed("labels")?;
    let k: usize = lines.number(raw)?;
    let mut labels = LabelTable::new();
    for _ in 0..k {
        let name = lines.next("label")?;
        check_label(&lines, name)?;
        if labels.get(name).is_some() {
            return Err(lines.err(format!("duplicate label {name:?}")));
        }
        labels.intern(name);
    }

    let raw = lines.keyed("nodes")?;
    let m: usize = lines.number(raw)?;
    let mut nodes = Vec::with_capacity(m);
    for _ in 0..m {
        let l = lines.next("node")?;
        let fields: Vec<&str> = l.split(' ').collect();
        let node = match fields.as_slice() {
            ["L", p, c] => Cluster::Leaf {
                parent: LabelId(lines.number(p)?),
                child: LabelId(lines.number(c)?),
            },
            ["M", t, left, right] => {
                let mut chars = t.chars();
                let kind = match (chars.next().and_then(MergeType::from_char), chars.next()) {
                    (Some(kind), None) => kind,
                    _ => return Err(lines.err(format!("unknown merge type {t:?}"))),
                };
                Cluster::Merge {
                    kind,
                    left: lines.number(left)?,
                    right: lines.number(right)?,
                }
            }
            _ => return Err(lines.err(format!("malformed node line {l:?}"))),
        };
        nodes.push(node);
    }
    let raw = lines.keyed("root")?;
    let root: u32 = lines.number(raw)?;
    expect_end(&mut lines)?;
    Ok(TopDag::from_parts(labels, nodes, root, n)?)
}

fn expect_end(lines: &mut Lines<'_>) -> Result<(), FormatError> {
    for (i, l) in lines.inner.by_ref() {
        if !l.trim().is_empty() {
            lines.line = i + 1;
            return Err(lines.err("trailing content after the last record"));
        }
    }
    Ok(())
}
