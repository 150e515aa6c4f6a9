//! Matrix and permutation realizations of affine Weyl words.

use weylns::lattice::FibralSpace;
use weylns::weyl::{check_presentation, WeylWord};

fn main() -> weylns::Result<()> {
    let space = FibralSpace::new(3)?;
    let w = WeylWord::parse(space, "0,1,2,1")?;
    println!("w = {w}");
    println!("matrix:\n{}", w.matrix());
    println!("permutation: {}", w.to_permutation());
    // Trivial permutation, nontrivial action.
    println!("w(v1) = {}", w.act(&space.basis(1))?);

    let report = check_presentation(6)?;
    println!("presentation of W_6: {} relations, all hold: {}", report.summary.total, report.is_success());
    Ok(())
}
