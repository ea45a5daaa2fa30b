//! Reconstructed shortest cycles: the thickening loop tightens as more of
//! the filtration is used; on a defect lattice two bandwidths are compared.

use stablevol::alpha::alpha_filtration;
use stablevol::baselines::{bandwidth_k_index, reconstructed_shortest_cycle, EdgeWeight};
use stablevol::fixtures::{lattice_2d_defects, loop_thickening};
use stablevol::persistence::reduce;

fn main() {
    let fx = loop_thickening();
    let o = &fx.order;
    let p = reduce(o).into_iter().find(|p| p.degree == 1).unwrap();
    for stage in 2..=6 {
        let l = reconstructed_shortest_cycle(o, &p, fx.last_rank_of_stage(stage), EdgeWeight::Hops).unwrap();
        println!("stage {stage}: loop {:?}, {} edges", l.vertices, l.weight);
    }

    let pts = lattice_2d_defects(0, 30, 0.5, 0.1);
    let o = alpha_filtration(&pts).unwrap().order;
    let p = reduce(&o)
        .into_iter()
        .filter(|p| p.degree == 1 && p.death.is_some())
        .max_by(|a, b| a.persistence().total_cmp(&b.persistence()))
        .unwrap();
    for bw in [0.1, 0.3] {
        let k = bandwidth_k_index(&o, &p, bw);
        let l = reconstructed_shortest_cycle(&o, &p, k, EdgeWeight::Euclidean(&pts)).unwrap();
        println!("bandwidth {bw}: {} edges, length {:.3}", l.edges.len(), l.weight);
    }
}
