//! Alpha filtration of a random planar cloud: simplex counts per dimension
//! and the first few simplices in filtration order.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stablevol::alpha::{alpha_filtration, PointCloud};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let pts: Vec<[f64; 2]> = (0..40)
        .map(|_| [rng.random_range(0.0..1.0), rng.random_range(0.0..1.0)])
        .collect();
    let f = alpha_filtration(&PointCloud::planar(&pts)).unwrap();
    let o = &f.order;
    let c = o.complex();
    for k in 0..=2 {
        println!("dimension {k}: {} simplices", c.ids_of_dim(k).count());
    }
    for &id in o.order().iter().skip(40).take(10) {
        println!("{:?} enters at {:.4}", c.simplex(id).vertices(), o.level(id));
    }
    println!("last level {:.4}", o.max_level().unwrap());
}
