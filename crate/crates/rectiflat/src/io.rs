//! JSON documents for spaces, interval unions, model arcs and trees, fields
//! and free vectors.

use std::fs;
use std::path::Path;

use rectiflat_core::free::FreeVector;
use rectiflat_core::metric::{FiniteMetricSpace, Norm};
use rectiflat_core::ur::{IntervalUnion, ModelArc, ModelTree, Tag, TreeEdge};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{CliError, Result};

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Read { path: path.into(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json { path: path.into(), source })
}

/// Point identifiers may be strings or numbers.
fn id_string(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(CliError::Input(format!("point id must be a string or number, got {other}"))),
    }
}

/// Resolves an id (or, failing that, a numeric index) to a point index.
pub fn resolve_point(space: &FiniteMetricSpace, token: &str) -> Result<usize> {
    if let Some(i) = space.index_of(token) {
        return Ok(i);
    }
    token
        .parse::<usize>()
        .ok()
        .filter(|&i| i < space.len())
        .ok_or_else(|| CliError::Input(format!("unknown point {token:?}")))
}

fn resolve_value(space: &FiniteMetricSpace, v: &Value) -> Result<usize> {
    resolve_point(space, &id_string(v)?)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpaceDoc {
    points: Option<Vec<Value>>,
    base: Option<Value>,
    dist: Option<Vec<Vec<f64>>>,
    coords: Option<Vec<Vec<f64>>>,
    norm: Option<String>,
}

/// Distance-matrix form of a space as written by the tools.
#[derive(Debug, Serialize)]
pub struct SpaceOut<'a> {
    pub points: &'a [String],
    pub base: &'a str,
    pub dist: Vec<Vec<f64>>,
}

pub fn space_json(space: &FiniteMetricSpace) -> Value {
    serde_json::to_value(SpaceOut {
        points: space.ids(),
        base: &space.ids()[space.base()],
        dist: space.rows(),
    })
    .expect("serializable")
}

/// Loads a space; invalid metrics are refused unless `allow_pseudometric`.
pub fn load_space(path: &Path, allow_pseudometric: bool) -> Result<FiniteMetricSpace> {
    let doc: SpaceDoc = read_json(path)?;
    let rows = match (doc.dist, doc.coords) {
        (Some(d), None) => d,
        (None, Some(c)) => {
            let norm = match doc.norm.as_deref() {
                Some("max") => Norm::Max,
                Some("euclidean") | None => Norm::Euclidean,
                Some(other) => return Err(CliError::Input(format!("unknown norm {other:?}"))),
            };
            if c.iter().any(|x| x.len() != c.first().map_or(0, Vec::len)) {
                return Err(CliError::Input("coordinate vectors of different lengths".into()));
            }
            c.iter().map(|a| c.iter().map(|b| norm.distance(a, b)).collect()).collect()
        }
        _ => return Err(CliError::Input("space needs exactly one of \"dist\" or \"coords\"".into())),
    };
    let ids = match doc.points {
        Some(p) => p.iter().map(id_string).collect::<Result<Vec<_>>>()?,
        None => (0..rows.len()).map(|i| i.to_string()).collect(),
    };
    let base = match &doc.base {
        Some(b) => {
            let b = id_string(b)?;
            ids.iter()
                .position(|s| *s == b)
                .ok_or_else(|| CliError::Input(format!("base {b:?} is not a point")))?
        }
        None => 0,
    };
    let space = if allow_pseudometric {
        FiniteMetricSpace::new_pseudometric(ids, rows, base)?
    } else {
        FiniteMetricSpace::new(ids, rows, base)?
    };
    Ok(space)
}

/// Raw matrix and ids, without any validation beyond JSON shape.
pub fn load_raw_space(path: &Path) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let doc: SpaceDoc = read_json(path)?;
    let rows = doc
        .dist
        .ok_or_else(|| CliError::Input("validation needs a \"dist\" matrix".into()))?;
    let ids = match doc.points {
        Some(p) => p.iter().map(id_string).collect::<Result<Vec<_>>>()?,
        None => (0..rows.len()).map(|i| i.to_string()).collect(),
    };
    Ok((ids, rows))
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntervalUnionDoc {
    pub intervals: Vec<[f64; 2]>,
}

pub fn load_interval_union(path: &Path) -> Result<IntervalUnion> {
    let doc: IntervalUnionDoc = read_json(path)?;
    Ok(IntervalUnion::new(doc.intervals.into_iter().map(|[a, b]| (a, b)).collect())?)
}

pub fn interval_union_json(u: &IntervalUnion) -> Value {
    serde_json::to_value(IntervalUnionDoc { intervals: u.intervals().iter().map(|&(a, b)| [a, b]).collect() })
        .expect("serializable")
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SegmentDoc {
    pub tag: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length: Option<f64>,
}

fn tag_from(doc: &SegmentDoc) -> Result<Tag> {
    match (doc.tag.as_str(), doc.length) {
        ("rectifiable", Some(length)) => Ok(Tag::Rectifiable { length }),
        ("rectifiable", None) => Err(CliError::Input("rectifiable segment needs a length".into())),
        ("sigma_finite", _) => Ok(Tag::SigmaFinite),
        ("fat", _) => Ok(Tag::Fat),
        (other, _) => Err(CliError::Input(format!("unknown segment tag {other:?}"))),
    }
}

fn tag_doc(tag: &Tag) -> SegmentDoc {
    let length = match tag {
        Tag::Rectifiable { length } => Some(*length),
        _ => None,
    };
    SegmentDoc { tag: tag.name().into(), length }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArcDoc {
    pub breakpoints: Vec<f64>,
    pub dist: Vec<Vec<f64>>,
    pub segments: Vec<SegmentDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ids: Option<Vec<usize>>,
}

pub fn load_arc(path: &Path) -> Result<ModelArc> {
    let doc: ArcDoc = read_json(path)?;
    let segments = doc.segments.iter().map(tag_from).collect::<Result<Vec<_>>>()?;
    let ids = doc.ids.unwrap_or_else(|| (0..doc.breakpoints.len()).collect());
    Ok(ModelArc::with_ids(ids, doc.breakpoints, doc.dist, segments)?)
}

pub fn arc_json(arc: &ModelArc) -> Value {
    serde_json::to_value(ArcDoc {
        breakpoints: arc.params().to_vec(),
        dist: arc.rows(),
        segments: arc.segments().iter().map(tag_doc).collect(),
        ids: Some(arc.ids().to_vec()),
    })
    .expect("serializable")
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreeEdgeDoc {
    pub from: usize,
    pub to: usize,
    pub tag: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length: Option<f64>,
}

/// A tree: a global distance matrix over its points and tagged edges.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreeDoc {
    pub dist: Vec<Vec<f64>>,
    pub edges: Vec<TreeEdgeDoc>,
}

pub fn load_tree(path: &Path) -> Result<ModelTree> {
    let doc: TreeDoc = read_json(path)?;
    let edges = doc
        .edges
        .iter()
        .map(|e| {
            let tag = tag_from(&SegmentDoc { tag: e.tag.clone(), length: e.length })?;
            Ok(TreeEdge { from: e.from, to: e.to, tag })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ModelTree::new(doc.dist, edges)?)
}

/// A field file: plain values, values on a subset, or a family.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldDoc {
    pub values: Option<Vec<f64>>,
    pub subset: Option<Vec<Value>>,
    pub family: Option<Vec<Vec<f64>>>,
}

pub fn load_field(path: &Path) -> Result<FieldDoc> {
    read_json(path)
}

pub fn subset_indices(space: &FiniteMetricSpace, ids: &[Value]) -> Result<Vec<usize>> {
    ids.iter().map(|v| resolve_value(space, v)).collect()
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MuDoc {
    terms: Vec<(Value, f64)>,
}

pub fn load_free_vector(path: &Path, space: &FiniteMetricSpace) -> Result<FreeVector> {
    let doc: MuDoc = read_json(path)?;
    let terms = doc
        .terms
        .iter()
        .map(|(id, a)| Ok((resolve_value(space, id)?, *a)))
        .collect::<Result<Vec<_>>>()?;
    Ok(FreeVector::new(space, terms)?)
}
