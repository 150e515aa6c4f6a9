//! A small verification sweep, the library form of `weylns verify`.

use std::collections::BTreeMap;

use weylns::cli::{run_sweep, Family, SweepSpec};

fn main() -> weylns::Result<()> {
    let spec = SweepSpec {
        n: 3..=5,
        e: 1..=3,
        f: 1..=2,
        families: [Family::Intertwining, Family::Homomorphism, Family::Permutations].into(),
        ..SweepSpec::default()
    };
    let report = run_sweep(&spec)?;
    let mut by_id: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    for r in &report.records {
        let c = by_id.entry(&r.id).or_default();
        c.0 += 1;
        c.1 += usize::from(r.passed());
    }
    for (id, (total, ok)) in by_id {
        println!("{id:<22} {ok:>4} / {total}");
    }
    println!("{} of {} records passed", report.summary.passed, report.summary.total);
    Ok(())
}
