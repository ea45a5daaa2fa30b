//! Floating-point circumspheres and the jittered exact predicates used by
//! the triangulation.

use robust::{Coord, Coord3D};

/// Smallest sphere through the vertices of a simplex (centre in the affine
/// hull of the vertices).
#[derive(Clone, Debug, PartialEq)]
pub struct Circumsphere {
    pub center: Vec<f64>,
    pub radius: f64,
}

/// `None` when the vertices are affinely dependent.
pub fn circumsphere(vertices: &[&[f64]]) -> Option<Circumsphere> {
    let p0 = vertices[0];
    let d = p0.len();
    let k = vertices.len() - 1;
    if k == 0 {
        return Some(Circumsphere {
            center: p0.to_vec(),
            radius: 0.0,
        });
    }
    let edges: Vec<Vec<f64>> = vertices[1..]
        .iter()
        .map(|p| (0..d).map(|j| p[j] - p0[j]).collect())
        .collect();
    // centre = p0 + Σ λ_i e_i with  2 e_i·(Σ λ_j e_j) = |e_i|²
    let mut a = vec![vec![0.0; k + 1]; k];
    for i in 0..k {
        for j in 0..k {
            a[i][j] = 2.0 * dot(&edges[i], &edges[j]);
        }
        a[i][k] = dot(&edges[i], &edges[i]);
    }
    let lambda = solve(a)?;
    let mut center = p0.to_vec();
    for (l, e) in lambda.iter().zip(&edges) {
        for j in 0..d {
            center[j] += l * e[j];
        }
    }
    let radius = (0..d)
        .map(|j| (center[j] - p0[j]).powi(2))
        .sum::<f64>()
        .sqrt();
    radius.is_finite().then_some(Circumsphere { center, radius })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

// Gaussian elimination with partial pivoting on an augmented matrix.
fn solve(mut a: Vec<Vec<f64>>) -> Option<Vec<f64>> {
    let n = a.len();
    let scale = a
        .iter()
        .flat_map(|r| r[..n].iter())
        .fold(0.0f64, |m, x| m.max(x.abs()));
    if scale == 0.0 {
        return None;
    }
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() <= 1e-14 * scale {
            return None;
        }
        a.swap(col, piv);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for j in col..=n {
                a[row][j] -= f * a[col][j];
            }
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut s = a[row][n];
        for j in row + 1..n {
            s -= a[row][j] * x[j];
        }
        x[row] = s / a[row][row];
    }
    Some(x)
}

/// Deterministic per-index perturbation applied only when evaluating
/// predicates. The perturbation of coordinate `k` of point `i` lies in
/// `[-magnitude, magnitude]`.
#[derive(Clone, Debug)]
pub(crate) struct Jitter {
    pub points: Vec<[f64; 3]>,
    pub dim: usize,
}

pub(crate) const JITTER_RELATIVE: f64 = 1e-9;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl Jitter {
    pub fn new(points: &[[f64; 3]], dim: usize, bbox: f64) -> Self {
        let magnitude = JITTER_RELATIVE * if bbox > 0.0 { bbox } else { 1.0 };
        let points = points
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let mut q = *p;
                for (k, c) in q.iter_mut().enumerate().take(dim) {
                    let h = splitmix64((i as u64) * 3 + k as u64);
                    let u = (h >> 11) as f64 / (1u64 << 53) as f64;
                    *c += (2.0 * u - 1.0) * magnitude;
                }
                q
            })
            .collect();
        Jitter { points, dim }
    }

    fn c2(&self, i: u32) -> Coord<f64> {
        let p = &self.points[i as usize];
        Coord { x: p[0], y: p[1] }
    }

    fn c3(&self, i: u32) -> Coord3D<f64> {
        let p = &self.points[i as usize];
        Coord3D {
            x: p[0],
            y: p[1],
            z: p[2],
        }
    }

    /// Sign of the orientation of `dim + 1` points: positive for
    /// counterclockwise triangles and for tetrahedra accepted by
    /// [`robust::insphere`].
    pub fn orient(&self, v: &[u32]) -> f64 {
        match self.dim {
            2 => robust::orient2d(self.c2(v[0]), self.c2(v[1]), self.c2(v[2])),
            _ => robust::orient3d(self.c3(v[0]), self.c3(v[1]), self.c3(v[2]), self.c3(v[3])),
        }
    }

    /// Positive when `q` is strictly inside the circumsphere of the
    /// positively oriented simplex `v`.
    pub fn in_sphere(&self, v: &[u32], q: u32) -> f64 {
        match self.dim {
            2 => robust::incircle(self.c2(v[0]), self.c2(v[1]), self.c2(v[2]), self.c2(q)),
            _ => robust::insphere(
                self.c3(v[0]),
                self.c3(v[1]),
                self.c3(v[2]),
                self.c3(v[3]),
                self.c3(q),
            ),
        }
    }

    pub fn coords(&self, i: usize) -> &[f64] {
        &self.points[i][..self.dim]
    }
}
