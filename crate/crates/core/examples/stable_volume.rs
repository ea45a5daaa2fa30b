//! Stable volumes shrink as the noise bandwidth grows.

use stablevol::alpha::alpha_filtration;
use stablevol::dualgraph::{build_dual_graph, compute_tree, optimal_volume_tree, stable_volume_tree};
use stablevol::fixtures::lattice_2d_defects;

fn main() {
    let f = alpha_filtration(&lattice_2d_defects(1, 30, 0.5, 0.1)).unwrap();
    let o = &f.order;
    let tree = compute_tree(build_dual_graph(o).unwrap(), o);
    let pairs = tree.pairs(o);
    let p = pairs
        .iter()
        .max_by(|a, b| a.persistence().total_cmp(&b.persistence()))
        .unwrap();
    println!("pair ({:.3}, {:.3})", p.birth_time, p.death_time);
    println!("optimal volume: {} triangles", optimal_volume_tree(&tree, p).unwrap().len());
    for eps in [0.0, 0.05, 0.12, 0.2, 0.4] {
        let sv = stable_volume_tree(&tree, o, p, eps).unwrap();
        println!("eps {eps:.2}: {} triangles, {} boundary edges", sv.size, sv.boundary.len());
    }
}
