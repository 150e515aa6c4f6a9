//! Universal isometries: build, classify and test the Torelli hypotheses.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use weylns::ns::{
    build_ns, check_torelli_hypotheses, classify_isometry, sample_isometry, SurfaceConfig,
    UniversalIsometry,
};

fn main() -> weylns::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/i3_i9_z3.json");
    let l = build_ns(&SurfaceConfig::from_json(&std::fs::read_to_string(path).expect("data file"))?)?;

    let iso = UniversalIsometry {
        sign: -1,
        weyl: BTreeMap::from([("t1".to_string(), vec![2, 4, 2])]),
        translate: Some("P".into()),
        invert: true,
    };
    let m = iso.matrix(&l)?;
    println!("built {}", iso.to_json());
    println!("classified as {:?}", classify_isometry(&l, &m)?);
    println!("Torelli checks: {:?}", check_torelli_hypotheses(&l, &m)?);

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..3 {
        let s = sample_isometry(&l, &mut rng, 5);
        println!("sample {} effective: {}", s.to_json(), s.is_effective(&l)?);
    }
    Ok(())
}
