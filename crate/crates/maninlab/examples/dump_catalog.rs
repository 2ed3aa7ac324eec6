//! Regenerates the JSON tables shipped in `catalog/` from the built-in
//! tables: every variety, plus a few pair descriptors demonstrating the
//! external-catalog format.
//!
//! Run with `cargo run -p maninlab --example dump_catalog`.

use maninlab::height_census::builtin_varieties;
use maninlab::orbit_finiteness::{find_pair, PairSpec};

fn main() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../catalog");

    let varieties = serde_json::to_string_pretty(&builtin_varieties()).unwrap();
    std::fs::write(dir.join("varieties.json"), varieties + "\n").unwrap();

    let samples: Vec<PairSpec> = ["aII-n3-adj", "aII-n4-adj-twisted", "cII-p1q2-sc"]
        .iter()
        .map(|name| PairSpec::from(&find_pair(name).expect("built-in entry")))
        .collect();
    let pairs = serde_json::to_string_pretty(&samples).unwrap();
    std::fs::write(dir.join("pairs.sample.json"), pairs + "\n").unwrap();

    println!("wrote {}", dir.display());
}
