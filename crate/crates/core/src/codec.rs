//! JSON instance and coloring documents.
//!
//! Vertices and elements are 0-based in files; parts and colors are 1-based.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::model::{Coloring, Instance, Mode, RawInstance};
use crate::treewidth::TreeDecomposition;

#[derive(Debug, Clone, Serialize, Deserialize)]
struct InstanceDoc {
    mode: String,
    n: usize,
    edges: Vec<[usize; 2]>,
    k: usize,
    p: usize,
    part_of: Vec<usize>,
    weight: Vec<u64>,
    bounds: Vec<Vec<u64>>,
    allowed: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    profit: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    decomposition: Option<TreeDecomposition>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    metadata: Option<Value>,
}

/// An instance together with the optional fields that travel with it.
#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    pub instance: Instance,
    pub decomposition: Option<TreeDecomposition>,
    pub metadata: Option<Value>,
}

impl Document {
    pub fn new(instance: Instance) -> Self {
        Document {
            instance,
            decomposition: None,
            metadata: None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ColoringDoc {
    color_of: Vec<usize>,
}

fn one_based_to_zero(path: impl Fn() -> String, x: usize) -> Result<usize> {
    x.checked_sub(1)
        .ok_or_else(|| Error::invalid(path(), "indices are 1-based; found 0"))
}

pub fn parse_document(text: &str) -> Result<Document> {
    let doc: InstanceDoc =
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    let mode = match doc.mode.as_str() {
        "vertex" => Mode::Vertex,
        "edge" => Mode::Edge,
        other => return Err(Error::UnknownMode(other.to_string())),
    };
    let part_of = doc
        .part_of
        .iter()
        .enumerate()
        .map(|(e, &h)| one_based_to_zero(|| format!("part_of[{e}]"), h))
        .collect::<Result<Vec<_>>>()?;
    let allowed = doc
        .allowed
        .iter()
        .enumerate()
        .map(|(e, list)| {
            list.iter()
                .map(|&c| one_based_to_zero(|| format!("allowed[{e}]"), c))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let raw = RawInstance {
        mode,
        n: doc.n,
        edges: doc.edges.iter().map(|&[u, v]| (u, v)).collect(),
        k: doc.k,
        p: doc.p,
        part_of,
        weight: doc.weight,
        bounds: doc.bounds,
        allowed,
        profit: doc.profit,
    };
    let instance = Instance::new(raw)?;
    if let Some(dec) = &doc.decomposition {
        dec.check_shape(instance.n())?;
    }
    Ok(Document {
        instance,
        decomposition: doc.decomposition,
        metadata: doc.metadata,
    })
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    parse_document(text).map(|d| d.instance)
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))
}

pub fn read_document(path: impl AsRef<Path>) -> Result<Document> {
    parse_document(&read_file(path.as_ref())?)
}

fn to_doc(d: &Document) -> InstanceDoc {
    let raw = d.instance.raw();
    InstanceDoc {
        mode: raw.mode.as_str().to_string(),
        n: raw.n,
        edges: raw.edges.iter().map(|&(u, v)| [u, v]).collect(),
        k: raw.k,
        p: raw.p,
        part_of: raw.part_of.iter().map(|h| h + 1).collect(),
        weight: raw.weight.clone(),
        bounds: raw.bounds.clone(),
        allowed: raw
            .allowed
            .iter()
            .map(|l| l.iter().map(|c| c + 1).collect())
            .collect(),
        profit: raw.profit.clone(),
        decomposition: d.decomposition.clone(),
        metadata: d.metadata.clone(),
    }
}

pub fn document_to_value(d: &Document) -> Value {
    serde_json::to_value(to_doc(d)).expect("instance documents always serialize")
}

pub fn write_document(d: &Document) -> String {
    serde_json::to_string_pretty(&to_doc(d)).expect("instance documents always serialize")
}

pub fn write_instance(inst: &Instance) -> String {
    write_document(&Document::new(inst.clone()))
}

/// Colors in a coloring document are 1-based; 0 is a structural error.
pub fn parse_coloring(text: &str) -> Result<Coloring> {
    let doc: ColoringDoc =
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    let colors = doc
        .color_of
        .iter()
        .enumerate()
        .map(|(e, &c)| {
            c.checked_sub(1).ok_or_else(|| {
                Error::Structural(format!("element {e} has color 0; colors are 1-based"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Coloring::new(colors))
}

pub fn read_coloring(path: impl AsRef<Path>) -> Result<Coloring> {
    parse_coloring(&read_file(path.as_ref())?)
}

pub fn coloring_to_value(col: &Coloring) -> Value {
    Value::Array(col.as_slice().iter().map(|&c| Value::from(c + 1)).collect())
}

pub fn write_coloring(col: &Coloring) -> String {
    serde_json::json!({ "color_of": coloring_to_value(col) }).to_string()
}
