//! Writes every built-in point cloud to a directory (default `fixtures/`).

use stablevol::fixtures::{generate, FIXTURE_NAMES};
use stablevol::io::format_pointcloud;

fn main() -> std::io::Result<()> {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "fixtures".into());
    std::fs::create_dir_all(&dir)?;
    for name in FIXTURE_NAMES {
        let pts = generate(name, 0).unwrap();
        let path = format!("{dir}/{name}.txt");
        std::fs::write(&path, format_pointcloud(&pts))?;
        println!("{path}: {} points in {}D", pts.len(), pts.dim());
    }
    Ok(())
}
