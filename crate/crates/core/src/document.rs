//! On-disk JSON form of a decorated graph and the conversions to and from
//! the validated in-memory model. Parsing distinguishes malformed JSON
//! (position-carrying parse errors) from well-formed documents violating the
//! schema (field-naming schema errors).

use crate::manifold::{
    Block, BlockId, BoundaryRef, DecoratedGraph, GraphError, TorusGluing, TorusId,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const FORMAT_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockDoc {
    pub id: u32,
    pub genus: u32,
    pub boundary: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EndDoc {
    pub block: u32,
    pub index: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorusDoc {
    pub id: u32,
    pub plus: EndDoc,
    pub minus: EndDoc,
    pub gluing: [[i64; 2]; 2],
}

/// Serializable decorated-graph document, format version "1".
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub format_version: String,
    pub blocks: Vec<BlockDoc>,
    pub tori: Vec<TorusDoc>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DocumentError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema error in {field}: {message}")]
    Schema { field: String, message: String },
}

fn schema(field: &str, message: impl Into<String>) -> DocumentError {
    DocumentError::Schema {
        field: field.to_string(),
        message: message.into(),
    }
}

/// Pull the backtick-quoted field name out of a serde message, if any.
fn field_from_message(message: &str) -> String {
    let mut parts = message.split('`');
    match (parts.next(), parts.next()) {
        (Some(_), Some(name)) => name.to_string(),
        _ => "document".to_string(),
    }
}

pub fn parse_document(text: &str) -> Result<GraphDocument, DocumentError> {
    let mut de = serde_json::Deserializer::from_str(text);
    match serde_path_to_error::deserialize::<_, GraphDocument>(&mut de) {
        Ok(doc) => Ok(doc),
        Err(e) => {
            let path = e.path().to_string();
            let inner = e.into_inner();
            if inner.is_data() {
                let field = if path == "." {
                    field_from_message(&inner.to_string())
                } else {
                    path
                };
                Err(DocumentError::Schema {
                    field,
                    message: inner.to_string(),
                })
            } else {
                Err(DocumentError::Parse {
                    line: inner.line(),
                    column: inner.column(),
                    message: inner.to_string(),
                })
            }
        }
    }
}

impl GraphDocument {
    pub fn from_graph(g: &DecoratedGraph) -> GraphDocument {
        GraphDocument {
            format_version: FORMAT_VERSION.to_string(),
            blocks: g
                .blocks()
                .iter()
                .map(|b| BlockDoc {
                    id: b.id.0,
                    genus: b.genus,
                    boundary: b.boundary_count,
                })
                .collect(),
            tori: g
                .tori()
                .iter()
                .map(|t| TorusDoc {
                    id: t.id.0,
                    plus: EndDoc {
                        block: t.plus_end.block.0,
                        index: t.plus_end.index,
                    },
                    minus: EndDoc {
                        block: t.minus_end.block.0,
                        index: t.minus_end.index,
                    },
                    gluing: t.gluing,
                })
                .collect(),
        }
    }

    pub fn to_graph(&self) -> Result<DecoratedGraph, DocumentError> {
        if self.format_version != FORMAT_VERSION {
            return Err(schema(
                "format_version",
                format!("unsupported version {:?}, expected {FORMAT_VERSION:?}", self.format_version),
            ));
        }
        let blocks = self
            .blocks
            .iter()
            .map(|b| Block {
                id: BlockId(b.id),
                genus: b.genus,
                boundary_count: b.boundary,
            })
            .collect();
        let tori = self
            .tori
            .iter()
            .map(|t| TorusGluing {
                id: TorusId(t.id),
                plus_end: BoundaryRef {
                    block: BlockId(t.plus.block),
                    index: t.plus.index,
                },
                minus_end: BoundaryRef {
                    block: BlockId(t.minus.block),
                    index: t.minus.index,
                },
                gluing: t.gluing,
            })
            .collect();
        DecoratedGraph::new(blocks, tori).map_err(|e| match &e {
            GraphError::Empty | GraphError::DuplicateBlockId(_) | GraphError::NoBoundary(_) => {
                schema("blocks", e.to_string())
            }
            GraphError::NotUnimodular { torus, det } => schema(
                "tori",
                format!("gluing not unimodular: torus {torus} has determinant {det}"),
            ),
            _ => schema("tori", e.to_string()),
        })
    }

    pub fn to_json(&self, pretty: bool) -> String {
        if pretty {
            serde_json::to_string_pretty(self).expect("document serializes")
        } else {
            serde_json::to_string(self).expect("document serializes")
        }
    }
}

/// Parse and validate in one step.
pub fn parse_graph(text: &str) -> Result<DecoratedGraph, DocumentError> {
    parse_document(text)?.to_graph()
}
