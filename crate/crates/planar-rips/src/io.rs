//! File formats: point clouds (CSV and JSON), graphs, flag complexes and
//! obstruction catalogs.
//!
//! Every quantity that must stay exact travels as a string-encoded rational
//! (`"3"`, `"-5/7"`, `"1.25"`). Serialization is deterministic — struct
//! fields in a fixed order, edge and facet lists sorted — so a fixed input
//! always produces the same bytes.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::complex::{clique_complex, ComplexError, FlagComplex, Graph};
use crate::geom::{Point2, Rational};
use crate::obstructions::{CatalogEntry, ObstructionStatus};
use crate::rips::{PointCloud, RipsError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}: {msg}")]
    Csv { line: usize, msg: String },
    #[error("point file contains no points")]
    NoPoints,
    #[error("bad rational literal '{0}'")]
    BadRational(String),
    #[error("facet list does not match the clique complex of the skeleton")]
    FacetMismatch,
    #[error("catalog entry '{id}': {msg}")]
    BadCatalogEntry { id: String, msg: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Rips(#[from] RipsError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Parses `"p/q"`, a plain integer, or a terminating decimal, exactly.
pub fn parse_rational(s: &str) -> Result<Rational, IoError> {
    let bad = || IoError::BadRational(s.to_string());
    let t = s.trim();
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = t.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| bad())?;
        let d: BigInt = den.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int_part, frac_part)) = t.split_once('.') {
        let (neg, int_digits) = match int_part.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, int_part.strip_prefix('+').unwrap_or(int_part)),
        };
        if frac_part.is_empty()
            || !frac_part.bytes().all(|b| b.is_ascii_digit())
            || !int_digits.bytes().all(|b| b.is_ascii_digit())
        {
            return Err(bad());
        }
        let scale = BigInt::from(10).pow(frac_part.len() as u32);
        let whole: BigInt = if int_digits.is_empty() {
            BigInt::zero()
        } else {
            int_digits.parse().map_err(|_| bad())?
        };
        let frac: BigInt = frac_part.parse().map_err(|_| bad())?;
        let value = Rational::new(whole * &scale + frac, scale);
        return Ok(if neg { -value } else { value });
    }
    let n: BigInt = t.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

/// Renders a rational as `"p"` or `"p/q"` in lowest terms.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Parses point CSV: a `x,y` header line followed by one point per line,
/// coordinates as rational or decimal literals. Blank lines are skipped.
/// The cloud gets the unit scale.
pub fn parse_points_csv(text: &str) -> Result<PointCloud, IoError> {
    let mut lines = text.lines().enumerate();
    let header = loop {
        match lines.next() {
            Some((i, raw)) => {
                let t = raw.trim();
                if !t.is_empty() {
                    break (i + 1, t);
                }
            }
            None => return Err(IoError::NoPoints),
        }
    };
    if header.1 != "x,y" {
        return Err(IoError::Csv {
            line: header.0,
            msg: format!("expected header 'x,y', got '{}'", header.1),
        });
    }
    let mut points = Vec::new();
    for (i, raw) in lines {
        let line = i + 1;
        let t = raw.trim();
        if t.is_empty() {
            continue;
        }
        let (xs, ys) = t.split_once(',').ok_or_else(|| IoError::Csv {
            line,
            msg: "expected two comma-separated coordinates".to_string(),
        })?;
        if ys.contains(',') {
            return Err(IoError::Csv {
                line,
                msg: "expected exactly two fields".to_string(),
            });
        }
        let x = parse_rational(xs).map_err(|e| IoError::Csv {
            line,
            msg: e.to_string(),
        })?;
        let y = parse_rational(ys).map_err(|e| IoError::Csv {
            line,
            msg: e.to_string(),
        })?;
        points.push(Point2::new(x, y));
    }
    if points.is_empty() {
        return Err(IoError::NoPoints);
    }
    Ok(PointCloud::unit(points)?)
}

/// JSON form of a point cloud: scale and coordinates as rational strings.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CloudJson {
    pub r: String,
    pub points: Vec<[String; 2]>,
}

pub fn cloud_to_json(cloud: &PointCloud) -> CloudJson {
    CloudJson {
        r: format_rational(cloud.r()),
        points: cloud
            .points()
            .iter()
            .map(|p| [format_rational(&p.x), format_rational(&p.y)])
            .collect(),
    }
}

pub fn cloud_from_json(json: &CloudJson) -> Result<PointCloud, IoError> {
    let r = parse_rational(&json.r)?;
    let mut points = Vec::with_capacity(json.points.len());
    for [xs, ys] in &json.points {
        points.push(Point2::new(parse_rational(xs)?, parse_rational(ys)?));
    }
    if points.is_empty() {
        return Err(IoError::NoPoints);
    }
    Ok(PointCloud::new(points, r)?)
}

/// Reads a point file in either format: JSON if the first non-space byte is
/// `{`, CSV otherwise.
pub fn parse_points_file(text: &str) -> Result<PointCloud, IoError> {
    if text.trim_start().starts_with('{') {
        let json: CloudJson = serde_json::from_str(text)?;
        cloud_from_json(&json)
    } else {
        parse_points_csv(text)
    }
}

/// JSON form of a graph: vertex count, sorted edge list, optional labels.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

pub fn graph_to_json(graph: &Graph) -> GraphJson {
    GraphJson {
        n: graph.n(),
        edges: graph.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        labels: graph.labels().map(|l| l.to_vec()),
    }
}

pub fn graph_from_json(json: &GraphJson) -> Result<Graph, IoError> {
    let edges: Vec<(usize, usize)> = json.edges.iter().map(|&[u, v]| (u, v)).collect();
    let mut graph = Graph::from_edges(json.n, &edges)?;
    if let Some(labels) = &json.labels {
        graph = graph.with_labels(labels.clone())?;
    }
    Ok(graph)
}

/// JSON form of a flag complex: the graph fields plus the sorted facet list
/// and the threshold-mode stamp of the build that produced it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub facets: Vec<Vec<usize>>,
    pub mode: String,
}

pub fn complex_to_json(complex: &FlagComplex, mode_label: &str) -> ComplexJson {
    let graph = graph_to_json(complex.skeleton_1());
    let mut facets: Vec<Vec<usize>> = complex
        .facets()
        .iter()
        .map(|s| s.vertices().to_vec())
        .collect();
    facets.sort();
    ComplexJson {
        n: graph.n,
        edges: graph.edges,
        labels: graph.labels,
        facets,
        mode: mode_label.to_string(),
    }
}

/// Rebuilds the complex from its skeleton and checks the stored facets
/// against it: a facet list that is not the clique complex of the skeleton
/// is rejected.
pub fn complex_from_json(json: &ComplexJson) -> Result<(FlagComplex, String), IoError> {
    let graph = graph_from_json(&GraphJson {
        n: json.n,
        edges: json.edges.clone(),
        labels: json.labels.clone(),
    })?;
    let complex = clique_complex(graph);
    let mut expected: Vec<Vec<usize>> = complex
        .facets()
        .iter()
        .map(|s| s.vertices().to_vec())
        .collect();
    expected.sort();
    let mut given = json.facets.clone();
    for f in &mut given {
        f.sort_unstable();
    }
    given.sort();
    if given != expected {
        return Err(IoError::FacetMismatch);
    }
    Ok((complex, json.mode.clone()))
}

/// One obstruction-catalog record.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CatalogEntryJson {
    pub id: String,
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    pub provenance: String,
    pub status: ObstructionStatus,
}

pub fn catalog_to_json(entries: &[CatalogEntry]) -> Vec<CatalogEntryJson> {
    entries
        .iter()
        .map(|e| CatalogEntryJson {
            id: e.id.clone(),
            n: e.graph.n(),
            edges: e.graph.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            provenance: e.provenance.clone(),
            status: e.status,
        })
        .collect()
}

/// Parses a catalog extension file (a JSON list of entries) into entries
/// ready to merge after the built-ins.
pub fn catalog_from_json(text: &str) -> Result<Vec<CatalogEntry>, IoError> {
    let records: Vec<CatalogEntryJson> = serde_json::from_str(text)?;
    let mut entries = Vec::with_capacity(records.len());
    for rec in records {
        let edges: Vec<(usize, usize)> = rec.edges.iter().map(|&[u, v]| (u, v)).collect();
        let graph = Graph::from_edges(rec.n, &edges).map_err(|e| IoError::BadCatalogEntry {
            id: rec.id.clone(),
            msg: e.to_string(),
        })?;
        entries.push(CatalogEntry {
            id: rec.id,
            graph,
            provenance: rec.provenance,
            status: rec.status,
        });
    }
    Ok(entries)
}

/// Short content fingerprint for stamping reports with their input.
pub fn content_fingerprint(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut out = String::with_capacity(23);
    out.push_str("sha256:");
    for b in &digest[..8] {
        write!(out, "{b:02x}").unwrap();
    }
    out
}
