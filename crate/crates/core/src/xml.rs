//! XML element-structure ingestion.
//!
//! One node per element, labeled with the element's qualified name. Text,
//! attributes, comments, CDATA, doctype and processing instructions are dropped.

use quick_xml::events::Event;
use quick_xml::Reader;

use crate::tree::{LabeledTree, TreeBuilder};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum XmlError {
    #[error("malformed XML at byte {offset}: {message}")]
    Malformed { offset: u64, message: String },
    #[error("document has no root element")]
    NoRoot,
    #[error("second root element at byte {offset}")]
    MultipleRoots { offset: u64 },
}

pub fn ingest_xml(text: &str) -> Result<LabeledTree, XmlError> {
    let mut reader = Reader::from_str(text);
    reader.config_mut().check_end_names = true;
    let mut builder = TreeBuilder::new();

    loop {
        let offset = reader.buffer_position();
        let event = reader.read_event().map_err(|e| XmlError::Malformed {
            offset: reader.error_position(),
            message: e.to_string(),
        })?;
        match event {
            Event::Start(e) => {
                open(&mut builder, e.name().as_ref(), offset)?;
            }
            Event::Empty(e) => {
                open(&mut builder, e.name().as_ref(), offset)?;
                builder.close().expect("just opened");
            }
            Event::End(_) => {
                builder.close().map_err(|e| XmlError::Malformed {
                    offset,
                    message: e.to_string(),
                })?;
            }
            Event::Eof => break,
            _ => {}
        }
    }
    if builder.open_depth() > 0 {
        return Err(XmlError::Malformed {
            offset: text.len() as u64,
            message: format!("{} unclosed element(s) at end of input", builder.open_depth()),
        });
    }
    if builder.node_count() == 0 {
        return Err(XmlError::NoRoot);
    }
    Ok(builder.finish().expect("balanced and nonempty"))
}

fn open(builder: &mut TreeBuilder, name: &[u8], offset: u64) -> Result<(), XmlError> {
    if builder.node_count() > 0 && builder.open_depth() == 0 {
        return Err(XmlError::MultipleRoots { offset });
    }
    let name = std::str::from_utf8(name).map_err(|e| XmlError::Malformed {
        offset,
        message: e.to_string(),
    })?;
    builder.open(name).expect("single root checked above");
    Ok(())
}
