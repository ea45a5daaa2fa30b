//! Text and JSON formats: point clouds, complexes with levels, and the
//! result documents written by the command line tool.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::alpha::{AlphaError, PointCloud};
use crate::baselines::{CycleLoop, FrequencyMap, FrequencyStatus};
use crate::chain::support_vertices;
use crate::complex::{build_order, OrderError, OrderWithLevel, Simplex, SimplexId, SimplicialComplex, TieBreak};
use crate::persistence::PersistencePair;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("input has no points")]
    Empty,
    #[error("invalid complex JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid complex: {0}")]
    Complex(String),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Alpha(#[from] AlphaError),
}

/// Parses one point per line, coordinates separated by whitespace or
/// commas. Blank lines and `#` comments are skipped; a non-numeric first
/// line is taken as a header.
pub fn parse_pointcloud(text: &str) -> Result<PointCloud, IoError> {
    let mut pts: Vec<[f64; 3]> = Vec::new();
    let mut dim = None;
    let mut seen_data = false;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .collect();
        let parsed: Result<Vec<f64>, _> = fields.iter().map(|f| f.parse::<f64>()).collect();
        let coords = match parsed {
            Ok(v) => v,
            Err(_) if !seen_data => {
                seen_data = true;
                continue;
            }
            Err(e) => {
                return Err(IoError::Parse {
                    line: i + 1,
                    msg: e.to_string(),
                })
            }
        };
        seen_data = true;
        if !(2..=3).contains(&coords.len()) {
            return Err(IoError::Parse {
                line: i + 1,
                msg: format!("expected 2 or 3 coordinates, found {}", coords.len()),
            });
        }
        match dim {
            None => dim = Some(coords.len()),
            Some(d) if d != coords.len() => {
                return Err(IoError::Parse {
                    line: i + 1,
                    msg: format!("expected {d} coordinates, found {}", coords.len()),
                })
            }
            _ => {}
        }
        let mut p = [0.0; 3];
        p[..coords.len()].copy_from_slice(&coords);
        pts.push(p);
    }
    let dim = dim.ok_or(IoError::Empty)?;
    Ok(PointCloud::new(dim, pts)?)
}

/// Writes one point per line with full round-trip precision.
pub fn format_pointcloud(points: &PointCloud) -> String {
    let mut out = String::new();
    for i in 0..points.len() {
        let line: Vec<String> = points.coords(i).iter().map(|x| format!("{x:?}")).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// A filtered complex given explicitly: simplices as vertex lists, one
/// level per simplex. Faces must be listed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexDocument {
    pub simplices: Vec<Vec<u32>>,
    pub levels: Vec<f64>,
}

pub fn parse_complex(text: &str) -> Result<OrderWithLevel, IoError> {
    let doc: ComplexDocument = serde_json::from_str(text)?;
    if doc.simplices.len() != doc.levels.len() {
        return Err(IoError::Complex(format!(
            "{} simplices but {} levels",
            doc.simplices.len(),
            doc.levels.len()
        )));
    }
    let mut entries: Vec<(Simplex, f64)> = doc
        .simplices
        .into_iter()
        .zip(doc.levels)
        .map(|(v, l)| Simplex::new(v).map(|s| (s, l)))
        .collect::<Result<_, _>>()
        .map_err(|e| IoError::Complex(e.to_string()))?;
    entries.sort_by(|a, b| a.0.cmp_dim_lex(&b.0));
    let (simplices, levels): (Vec<Simplex>, Vec<f64>) = entries.into_iter().unzip();
    let c = SimplicialComplex::new(simplices).map_err(|e| IoError::Complex(e.to_string()))?;
    Ok(build_order(Arc::new(c), levels, &TieBreak::DimLex)?)
}

/// The pair block shared by volume and loop documents.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairDocument {
    pub degree: usize,
    pub birth: f64,
    pub death: Option<f64>,
    pub birth_simplex: SimplexId,
    pub death_simplex: Option<SimplexId>,
}

impl From<&PersistencePair> for PairDocument {
    fn from(p: &PersistencePair) -> Self {
        PairDocument {
            degree: p.degree,
            birth: p.birth_time,
            death: p.death_time.is_finite().then_some(p.death_time),
            birth_simplex: p.birth,
            death_simplex: p.death,
        }
    }
}

/// A volume or loop: cells, their boundary, and boundary coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VolumeDocument {
    pub method: String,
    pub pair: PairDocument,
    pub epsilon: Option<f64>,
    pub cells: Vec<SimplexId>,
    pub cell_vertices: Vec<Vec<u32>>,
    pub boundary: Vec<SimplexId>,
    pub boundary_vertices: Vec<u32>,
    /// Coordinates of `boundary_vertices` when the input has them.
    pub points: Vec<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub objective: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub status: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight: Option<f64>,
}

impl VolumeDocument {
    pub fn new(
        method: &str,
        order: &OrderWithLevel,
        pair: &PersistencePair,
        epsilon: Option<f64>,
        cells: &[SimplexId],
        boundary: &[SimplexId],
        points: Option<&PointCloud>,
    ) -> Self {
        let c = order.complex();
        let boundary_vertices = support_vertices(c, boundary);
        let coords = points
            .map(|p| {
                boundary_vertices
                    .iter()
                    .filter(|&&v| (v as usize) < p.len())
                    .map(|&v| p.coords(v as usize).to_vec())
                    .collect()
            })
            .unwrap_or_default();
        VolumeDocument {
            method: method.to_string(),
            pair: pair.into(),
            epsilon,
            cells: cells.to_vec(),
            cell_vertices: cells.iter().map(|&id| c.simplex(id).vertices().to_vec()).collect(),
            boundary: boundary.to_vec(),
            boundary_vertices,
            points: coords,
            objective: None,
            status: None,
            weight: None,
        }
    }

    /// A reconstructed loop: its edges are the boundary, there are no cells.
    pub fn from_loop(
        order: &OrderWithLevel,
        pair: &PersistencePair,
        cycle: &CycleLoop,
        points: Option<&PointCloud>,
    ) -> Self {
        let mut edges = cycle.edges.clone();
        edges.sort_unstable();
        let mut doc = VolumeDocument::new("rsc", order, pair, None, &[], &edges, points);
        doc.weight = Some(cycle.weight);
        doc
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointFrequency {
    pub point: usize,
    pub f: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrequencyDocument {
    pub trials: usize,
    pub matched: usize,
    pub failed: usize,
    pub status: FrequencyStatus,
    pub frequencies: Vec<PointFrequency>,
}

impl From<&FrequencyMap> for FrequencyDocument {
    fn from(m: &FrequencyMap) -> Self {
        FrequencyDocument {
            trials: m.trials,
            matched: m.matched,
            failed: m.failed,
            status: m.status,
            frequencies: m
                .frequencies()
                .into_iter()
                .enumerate()
                .map(|(point, f)| PointFrequency { point, f })
                .collect(),
        }
    }
}

/// `epsilon<TAB>size` rows with a header line.
pub fn format_sweep(rows: &[(f64, usize)]) -> String {
    let mut out = String::from("epsilon\tsize\n");
    for (eps, size) in rows {
        out.push_str(&format!("{eps}\t{size}\n"));
    }
    out
}

/// Parses `a:b:step` into an increasing grid including `b` when it lies
/// on the grid (up to round-off).
pub fn parse_grid(spec: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [a, b, step] = parts.as_slice() else {
        return Err(format!("expected a:b:step, got `{spec}`"));
    };
    let num = |s: &str| s.trim().parse::<f64>().map_err(|e| format!("`{s}`: {e}"));
    let (a, b, step) = (num(a)?, num(b)?, num(step)?);
    if !(step > 0.0 && a.is_finite() && b.is_finite() && a <= b && a >= 0.0) {
        return Err(format!("grid needs 0 <= a <= b and step > 0, got `{spec}`"));
    }
    let n = ((b - a) / step + 1e-9).floor() as usize;
    // integer multiples keep values like 0.07 exact to the printed digits
    let decimals = spec
        .split(':')
        .map(|s| s.split('.').nth(1).map_or(0, str::len))
        .max()
        .unwrap_or(0) as i32;
    let scale = 10f64.powi(decimals);
    Ok((0..=n)
        .map(|i| ((a + i as f64 * step) * scale).round() / scale)
        .collect())
}
