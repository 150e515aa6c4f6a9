//! A Weyl reflection pulled back along a base change, acting on sections.

use std::collections::BTreeMap;

use weylns::base_change::RamificationProfile;
use weylns::ns::{build_ns, pullback_ns, SurfaceConfig, UniversalIsometry};

fn main() -> weylns::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/i3_i9_q.json");
    let base = build_ns(&SurfaceConfig::from_json(&std::fs::read_to_string(path).expect("data file"))?)?;
    let s0 = UniversalIsometry {
        weyl: BTreeMap::from([("t0".to_string(), vec![0])]),
        ..UniversalIsometry::identity()
    };
    for lit in ["t0:[2]", "t0:[1,1]", "t0:[2,1]"] {
        let profile = RamificationProfile::parse(lit)?;
        let pb = pullback_ns(&base, &profile)?;
        let lifted = s0.pulled_back(&base, &pb)?;
        println!("profile {lit}: {}", lifted.to_json());
        for name in ["P", "Q"] {
            let d = pb.lattice.parse_divisor(&format!("({name})"))?;
            let image = lifted.act(&pb.lattice, &d)?;
            println!("  ({name}) -> {}", pb.lattice.render(&image));
        }
    }
    Ok(())
}
