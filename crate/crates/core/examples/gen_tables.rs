//! Regenerates the checked-in archetype tables under `tables/`.
//!
//! Usage: `cargo run --release -p modelcat --example gen_tables [dir]`

use modelcat::oracle::{derive_tables, InstanceKind};

fn main() {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "crates/core/tables".to_string());
    for (kind, bound, file) in [
        (InstanceKind::SetMaps, 4, "set.toml"),
        (InstanceKind::PointedMaps, 4, "pointed.toml"),
        (InstanceKind::LinearMapsF2, 2, "vect.toml"),
    ] {
        let started = std::time::Instant::now();
        let tables = derive_tables(kind, bound).expect("derivation");
        let path = format!("{dir}/{file}");
        std::fs::write(&path, tables.to_file_string()).expect("write table file");
        println!(
            "{path}: bound {bound}, stable_from {:?}, {:.1}s",
            tables.stable_from,
            started.elapsed().as_secs_f64()
        );
    }
}
