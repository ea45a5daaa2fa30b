//! Degree-1 volumes in 3D, where there is no tree: optimal, stable and
//! stable sub-volumes from the linear program.

use stablevol::alpha::alpha_filtration;
use stablevol::chain::support_vertices;
use stablevol::fixtures::lattice_3x3x3;
use stablevol::optvol::{lp_volume, VolumeMode, DEFAULT_THRESHOLD};
use stablevol::persistence::reduce;

fn main() {
    let f = alpha_filtration(&lattice_3x3x3(0, 0.05)).unwrap();
    let o = &f.order;
    let c = o.complex();
    let pairs: Vec<_> = reduce(o)
        .into_iter()
        .filter(|p| p.degree == 1 && p.death.is_some() && p.persistence() > 0.0)
        .collect();
    println!("{} degree-1 pairs", pairs.len());
    for p in pairs.iter().take(8) {
        let verts = |mode, eps| match lp_volume(o, p, mode, eps, DEFAULT_THRESHOLD) {
            Ok(v) => support_vertices(c, &v.boundary).len().to_string(),
            Err(e) => format!("error: {e}"),
        };
        println!(
            "({:.3}, {:.3}) boundary points: optimal {}, stable {}, sub {}",
            p.birth_time,
            p.death_time,
            verts(VolumeMode::Optimal, 0.0),
            verts(VolumeMode::Stable, 0.05),
            verts(VolumeMode::Sub, 0.05)
        );
    }
}
