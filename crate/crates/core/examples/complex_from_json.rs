//! Persistence of a hand-written filtered complex: a hollow square that is
//! filled in two steps.

use stablevol::io::parse_complex;
use stablevol::persistence::{diagram, reduce};

const SQUARE: &str = r#"{
  "simplices": [[0],[1],[2],[3],[0,1],[1,2],[2,3],[0,3],[0,2],[0,1,2],[0,2,3]],
  "levels":    [0,  0,  0,  0,  1,    1,    1,    1,    2,    3,      4]
}"#;

fn main() {
    let o = parse_complex(SQUARE).unwrap();
    let pairs = reduce(&o);
    for k in 0..=1 {
        for p in diagram(&pairs, &o, k).pairs {
            println!("degree {k}: ({}, {})", p.birth, p.death);
        }
    }
}
