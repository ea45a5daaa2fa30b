//! Resampling baseline: how often each point lies on the optimal cycle of
//! the tracked pair, for four noise levels. Points above 70% are listed.

use stablevol::alpha::alpha_filtration;
use stablevol::baselines::{statistical_frequencies, NoiseModel};
use stablevol::fixtures::lattice_2d_defects;
use stablevol::persistence::reduce;

fn main() {
    let pts = lattice_2d_defects(2, 12, 0.5, 0.1);
    let f = alpha_filtration(&pts).unwrap();
    let target = reduce(&f.order)
        .into_iter()
        .filter(|p| p.degree == 1 && p.death.is_some())
        .max_by(|a, b| a.persistence().total_cmp(&b.persistence()))
        .unwrap();
    println!("target ({:.3}, {:.3})", target.birth_time, target.death_time);
    for (i, hw) in [0.01, 0.03, 0.05, 0.1].into_iter().enumerate() {
        let noise = NoiseModel::new(hw, 100 + i as u64).unwrap();
        let m = statistical_frequencies(&pts, (&target).into(), noise, 50).unwrap();
        println!(
            "noise {hw}: matched {}/{}, {:?}, points above 0.7: {:?}",
            m.matched,
            m.trials,
            m.status,
            m.above(0.7)
        );
    }
}
