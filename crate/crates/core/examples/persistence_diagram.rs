//! Persistence diagrams of the five-point example, in radius and squared
//! radius units.

use stablevol::alpha::alpha_filtration;
use stablevol::fixtures::five_points;
use stablevol::persistence::{diagram, reduce};

fn main() {
    let f = alpha_filtration(&five_points(1.0)).expect("five points are in general position");
    let pairs = reduce(&f.order);
    for k in 0..=2 {
        let d = diagram(&pairs, &f.order, k);
        println!("degree {k}: {} pairs", d.len());
        for p in &d.pairs {
            println!("  ({:.6}, {:.6})   squared ({:.6}, {:.6})", p.birth, p.death, p.birth * p.birth, p.death * p.death);
        }
    }
    let json = serde_json::to_string_pretty(&diagram(&pairs, &f.order, 1)).unwrap();
    println!("{json}");
}
