//! Stable volume size against bandwidth, as TSV, with the widest plateau.

use stablevol::alpha::alpha_filtration;
use stablevol::dualgraph::{build_dual_graph, compute_tree, sweep_sizes};
use stablevol::fixtures::lattice_2d_defects;
use stablevol::io::{format_sweep, parse_grid};

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0);
    let f = alpha_filtration(&lattice_2d_defects(seed, 30, 0.5, 0.1)).unwrap();
    let o = &f.order;
    let tree = compute_tree(build_dual_graph(o).unwrap(), o);
    let pairs = tree.pairs(o);
    let p = pairs
        .iter()
        .max_by(|a, b| a.persistence().total_cmp(&b.persistence()))
        .unwrap();
    let rows = sweep_sizes(&tree, o, p, &parse_grid("0:0.4:0.01").unwrap()).unwrap();
    print!("{}", format_sweep(&rows));
    let (mut best, mut start, mut from) = (0, 0, 0);
    for i in 1..rows.len() {
        if rows[i].1 != rows[start].1 {
            start = i;
        }
        if i - start > best {
            best = i - start;
            from = start;
        }
    }
    eprintln!(
        "widest plateau: [{:.2}, {:.2}] at size {}",
        rows[from].0,
        rows[from + best].0,
        rows[from].1
    );
}
