//! Local pullback of fibral vectors and ramification profiles.

use weylns::base_change::{
    fiber_type_after, pullback_local, pullback_profile, verify_pullback_scaling,
    RamificationProfile,
};
use weylns::lattice::FibralSpace;

fn main() -> weylns::Result<()> {
    let space = FibralSpace::new(3)?;
    let v = space.vector(vec![1, 0, 0])?;
    let w = pullback_local(2, &v)?;
    println!("p*({v}) = {w}, square {} = 2 · {}", w.square(), v.square());

    let profile = RamificationProfile::parse("t0:[2,1];t1:[3]")?;
    println!("profile {profile}, degree {}", profile.degree());
    let local = profile.local_degrees("t0");
    let types: Vec<String> = fiber_type_after(&local, 3).iter().map(ToString::to_string).collect();
    println!("I_3 at t0 becomes {}", types.join(" + "));
    for (y, b) in pullback_profile(&local, &v)?.iter().enumerate() {
        println!("  block {y}: {b}");
    }

    let report = verify_pullback_scaling(5, 3, 200, 7)?;
    println!("scaling law on 200 random pairs: {}", report.is_success());
    Ok(())
}
