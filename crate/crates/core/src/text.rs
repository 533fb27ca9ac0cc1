//! Parenthesized preorder text format: `Tree := '(' Label Tree* ')'`.
//!
//! Labels are runs of characters other than parentheses and whitespace.
//! Whitespace between tokens is ignored on input and never emitted.

use crate::tree::{LabeledTree, TreeBuilder};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
}

fn syntax(offset: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        offset,
        message: message.into(),
    }
}

fn is_label_byte(b: u8) -> bool {
    !(b == b'(' || b == b')' || b.is_ascii_whitespace())
}

pub fn parse_tree(text: &str) -> Result<LabeledTree, ParseError> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };

    skip_ws(&mut pos);
    if pos == bytes.len() {
        return Err(ParseError::Empty);
    }

    let mut builder = TreeBuilder::new();
    loop {
        skip_ws(&mut pos);
        if pos == bytes.len() {
            if builder.open_depth() > 0 {
                return Err(syntax(pos, "unexpected end of input, expected ')'"));
            }
            break;
        }
        match bytes[pos] {
            b'(' => {
                if builder.node_count() > 0 && builder.open_depth() == 0 {
                    return Err(syntax(pos, "trailing input after the root"));
                }
                pos += 1;
                skip_ws(&mut pos);
                let start = pos;
                while pos < bytes.len() && is_label_byte(bytes[pos]) {
                    pos += 1;
                }
                if start == pos {
                    return Err(syntax(pos, "expected a label after '('"));
                }
                // Label bytes never split a UTF-8 sequence: delimiters are ASCII.
                builder
                    .open(&text[start..pos])
                    .map_err(|e| syntax(start, e.to_string()))?;
            }
            b')' => {
                if builder.open_depth() == 0 {
                    return Err(syntax(pos, "unmatched ')'"));
                }
                builder.close().map_err(|e| syntax(pos, e.to_string()))?;
                pos += 1;
            }
            _ => {
                let what = if builder.open_depth() == 0 {
                    "expected '('"
                } else {
                    "expected '(' or ')' (labels must follow '(' directly)"
                };
                return Err(syntax(pos, what));
            }
        }
    }
    builder.finish().map_err(|e| syntax(pos, e.to_string()))
}

/// Canonical form: no whitespace.
pub fn serialize_tree(tree: &LabeledTree) -> String {
    let mut out = String::with_capacity(tree.len() * 4);
    write_tree(tree, &mut out);
    out
}

pub fn write_tree(tree: &LabeledTree, out: &mut String) {
    let mut open: Vec<usize> = Vec::new();
    for x in tree.nodes() {
        while let Some(&top) = open.last() {
            if top + tree.subtree_size(top) <= x {
                out.push(')');
                open.pop();
            } else {
                break;
            }
        }
        out.push('(');
        out.push_str(tree.label(x));
        open.push(x);
    }
    for _ in open {
        out.push(')');
    }
}
