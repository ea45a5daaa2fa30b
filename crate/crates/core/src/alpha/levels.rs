use super::geometry::{circumsphere, Jitter};
use super::{AlphaError, PointCloud};
use crate::complex::{SimplexId, SimplicialComplex};

// a point counts as inside a circumball only if it is inside by this margin
const GABRIEL_MARGIN: f64 = 1e-10;

/// Alpha radius of every simplex of a Delaunay complex of `points`.
///
/// A simplex whose smallest circumsphere is empty of the opposite vertices
/// of its cofaces enters at its own circumradius; any other simplex enters
/// with its earliest coface. Vertices enter at 0. A final top-down pass
/// clamps every face to the minimum level of its cofaces.
pub fn alpha_levels(
    complex: &SimplicialComplex,
    points: &PointCloud,
) -> Result<Vec<f64>, AlphaError> {
    if let Err(v) = complex.validate() {
        return Err(AlphaError::NotDelaunay(v[0].to_string()));
    }
    let n = points.len();
    for id in complex.ids_of_dim(0) {
        let v = complex.simplex(id).vertices()[0] as usize;
        if v >= n {
            return Err(AlphaError::NotDelaunay(format!(
                "vertex {v} has no coordinates"
            )));
        }
    }
    let Some(top) = complex.dim() else {
        return Ok(Vec::new());
    };
    if top > points.dim() {
        return Err(AlphaError::NotDelaunay(format!(
            "{top}-simplices cannot be embedded in dimension {}",
            points.dim()
        )));
    }
    let jitter = Jitter::new(points.points(), points.dim(), points.bbox_diagonal());

    let sphere = |id: SimplexId| -> Result<super::Circumsphere, AlphaError> {
        let vs = complex.simplex(id).vertices();
        let exact: Vec<&[f64]> = vs.iter().map(|&v| points.coords(v as usize)).collect();
        if let Some(cs) = circumsphere(&exact) {
            return Ok(cs);
        }
        // flat in the original coordinates: only the jitter separates it
        let jittered: Vec<&[f64]> = vs.iter().map(|&v| jitter.coords(v as usize)).collect();
        circumsphere(&jittered).ok_or_else(|| {
            AlphaError::Degenerate(format!("simplex {} is flat", complex.simplex(id)))
        })
    };

    let mut level = vec![f64::NAN; complex.len()];
    for k in (0..=top).rev() {
        for id in complex.ids_of_dim(k) {
            if k == 0 {
                level[id] = 0.0;
                continue;
            }
            let cofaces = complex.cofaces(id);
            let cs = sphere(id)?;
            let r2 = cs.radius * cs.radius;
            let attached = cofaces.iter().any(|&co| {
                let own = complex.simplex(id).vertices();
                complex
                    .simplex(co)
                    .vertices()
                    .iter()
                    .filter(|v| !own.contains(v))
                    .any(|&q| {
                        let d2: f64 = points
                            .coords(q as usize)
                            .iter()
                            .zip(&cs.center)
                            .map(|(a, b)| (a - b).powi(2))
                            .sum();
                        d2 < r2 * (1.0 - GABRIEL_MARGIN)
                    })
            });
            let min_coface = cofaces
                .iter()
                .map(|&co| level[co])
                .fold(f64::INFINITY, f64::min);
            level[id] = if attached { min_coface } else { cs.radius.min(min_coface) };
        }
    }
    Ok(level)
}
