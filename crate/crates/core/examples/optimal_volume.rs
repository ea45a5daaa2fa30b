//! Optimal volumes from the persistence tree for every degree-1 pair of a
//! noisy planar lattice with defects.

use stablevol::alpha::alpha_filtration;
use stablevol::chain::support_vertices;
use stablevol::dualgraph::{build_dual_graph, compute_tree, optimal_volume_tree};
use stablevol::fixtures::lattice_2d_defects;

fn main() {
    let f = alpha_filtration(&lattice_2d_defects(0, 12, 0.5, 0.1)).unwrap();
    let o = &f.order;
    let tree = compute_tree(build_dual_graph(o).unwrap(), o);
    let mut pairs: Vec<_> = tree.pairs(o).into_iter().filter(|p| p.persistence() > 0.05).collect();
    pairs.sort_by(|a, b| b.persistence().total_cmp(&a.persistence()));
    for p in pairs {
        let cells = optimal_volume_tree(&tree, &p).unwrap();
        let bd = stablevol::chain::z2_boundary(o.complex(), &cells);
        println!(
            "({:.3}, {:.3}): {} triangles, boundary through {} points",
            p.birth_time,
            p.death_time,
            cells.len(),
            support_vertices(o.complex(), &bd).len()
        );
    }
}
