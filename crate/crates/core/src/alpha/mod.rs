//! Alpha filtrations of 2D and 3D pointclouds.
//!
//! [`delaunay`] triangulates the pointcloud, [`alpha_levels`] assigns every
//! simplex the smallest radius at which it enters the alpha complex, and
//! [`alpha_filtration`] composes the two into an [`OrderWithLevel`].
//! Levels are radii, not squared radii.

mod delaunay;
mod geometry;
mod levels;

use std::sync::Arc;

use thiserror::Error;

use crate::complex::{build_order, OrderError, OrderWithLevel, SimplicialComplex, TieBreak};

pub use delaunay::delaunay;
pub use geometry::{circumsphere, Circumsphere};
pub use levels::alpha_levels;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlphaError {
    #[error("pointcloud dimension must be 2 or 3, got {0}")]
    UnsupportedDimension(usize),
    #[error("point {index} has a non-finite coordinate")]
    NonFinite { index: usize },
    #[error("points are degenerate even after symbolic jitter: {0}")]
    Degenerate(String),
    #[error("complex is not a Delaunay complex of the pointcloud: {0}")]
    NotDelaunay(String),
    #[error(transparent)]
    Order(#[from] OrderError),
}

/// A finite set of points in the plane or in space.
///
/// Points are stored with three coordinates; planar clouds keep `z = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct PointCloud {
    dim: usize,
    points: Vec<[f64; 3]>,
}

impl PointCloud {
    pub fn new(dim: usize, points: Vec<[f64; 3]>) -> Result<Self, AlphaError> {
        if dim != 2 && dim != 3 {
            return Err(AlphaError::UnsupportedDimension(dim));
        }
        let mut points = points;
        for (index, p) in points.iter_mut().enumerate() {
            if p.iter().any(|c| !c.is_finite()) {
                return Err(AlphaError::NonFinite { index });
            }
            if dim == 2 {
                p[2] = 0.0;
            }
        }
        Ok(PointCloud { dim, points })
    }

    pub fn planar(points: &[[f64; 2]]) -> Self {
        let pts = points.iter().map(|p| [p[0], p[1], 0.0]).collect();
        PointCloud::new(2, pts).expect("finite planar points")
    }

    pub fn spatial(points: &[[f64; 3]]) -> Self {
        PointCloud::new(3, points.to_vec()).expect("finite spatial points")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64; 3] {
        &self.points[i]
    }

    pub fn points(&self) -> &[[f64; 3]] {
        &self.points
    }

    /// Coordinates truncated to the cloud dimension.
    pub fn coords(&self, i: usize) -> &[f64] {
        &self.points[i][..self.dim]
    }

    pub fn scaled(&self, s: f64) -> PointCloud {
        let pts = self
            .points
            .iter()
            .map(|p| [p[0] * s, p[1] * s, p[2] * s])
            .collect();
        PointCloud {
            dim: self.dim,
            points: pts,
        }
    }

    /// Length of the bounding-box diagonal.
    pub fn bbox_diagonal(&self) -> f64 {
        if self.points.is_empty() {
            return 0.0;
        }
        let mut lo = [f64::INFINITY; 3];
        let mut hi = [f64::NEG_INFINITY; 3];
        for p in &self.points {
            for k in 0..3 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        (0..3).map(|k| (hi[k] - lo[k]).powi(2)).sum::<f64>().sqrt()
    }
}

/// A Delaunay complex with alpha radii as levels.
#[derive(Clone, Debug)]
pub struct AlphaFiltration {
    pub points: PointCloud,
    pub order: OrderWithLevel,
}

impl AlphaFiltration {
    pub fn complex(&self) -> &SimplicialComplex {
        self.order.complex()
    }
}

/// Delaunay triangulation, alpha levels and the induced order with level.
pub fn alpha_filtration(points: &PointCloud) -> Result<AlphaFiltration, AlphaError> {
    let complex = Arc::new(delaunay(points)?);
    let levels = alpha_levels(&complex, points)?;
    let order = build_order(complex, levels, &TieBreak::DimLex)?;
    Ok(AlphaFiltration {
        points: points.clone(),
        order,
    })
}
