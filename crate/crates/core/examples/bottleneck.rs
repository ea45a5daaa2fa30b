//! Bottleneck distances between the annulus diagram and noisy copies stay
//! below the largest point displacement.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stablevol::alpha::{alpha_filtration, PointCloud};
use stablevol::fixtures::annulus;
use stablevol::persistence::{bottleneck, diagram, reduce};

fn main() {
    let pts = annulus(0, 60, 0.5, 1.0);
    let o = alpha_filtration(&pts).unwrap().order;
    let base = diagram(&reduce(&o), &o, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for h in [0.001, 0.01, 0.05] {
        let moved: Vec<[f64; 3]> = pts
            .points()
            .iter()
            .map(|p| [p[0] + rng.random_range(-h..h), p[1] + rng.random_range(-h..h), 0.0])
            .collect();
        let q = alpha_filtration(&PointCloud::new(2, moved).unwrap()).unwrap().order;
        let d = bottleneck(&base, &diagram(&reduce(&q), &q, 1));
        println!("noise {h}: bottleneck {d:.5}");
    }
}
