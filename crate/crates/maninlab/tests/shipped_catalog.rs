//! The JSON tables shipped in `catalog/` must stay in sync with the tables
//! compiled into the library (regenerate them with the `dump_catalog`
//! example).

use maninlab::height_census::{builtin_varieties, VarietySpec};
use maninlab::orbit_finiteness::{find_pair, PairSpec};

fn catalog_path(file: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../catalog").join(file)
}

#[test]
fn shipped_varieties_match_the_builtin_tables() {
    let text = std::fs::read_to_string(catalog_path("varieties.json")).unwrap();
    let shipped: Vec<VarietySpec> = serde_json::from_str(&text).unwrap();
    assert_eq!(shipped, builtin_varieties());
    for spec in &shipped {
        spec.validate().unwrap();
    }
}

#[test]
fn shipped_pair_samples_build_and_match_their_catalog_entries() {
    let text = std::fs::read_to_string(catalog_path("pairs.sample.json")).unwrap();
    let shipped: Vec<PairSpec> = serde_json::from_str(&text).unwrap();
    assert!(!shipped.is_empty());
    for spec in shipped {
        let name = spec.name.clone();
        let expected = spec.expected_finite;
        let pair = spec.build().unwrap();
        let builtin = find_pair(&name).expect("sample names exist in the built-in catalog");
        assert_eq!(expected, builtin.expected_finite(), "{name}");
        assert_eq!(
            pair.check_finiteness().is_finite(),
            builtin.check_finiteness().is_finite(),
            "{name}"
        );
    }
}
