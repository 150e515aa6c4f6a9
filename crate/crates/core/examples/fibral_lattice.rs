//! Arcs, reflections and the classification of square -2 vectors in V_n.

use weylns::lattice::{classify_minus_two, reflect, FibralSpace};

fn main() -> weylns::Result<()> {
    let space = FibralSpace::new(5)?;
    let arc = space.arc_root(3, 6)?;
    let v = arc.to_vector();
    println!("arc {arc} = {v}, square {}", v.square());
    println!("reflection word of {arc}: {:?}", arc.reflection_word());

    let x = space.vector(vec![1, 0, 0, 2, 0])?;
    let y = reflect(&v, &x)?;
    println!("s_arc({x}) = {y}");

    let shifted = v.add(&space.fiber().scale(-2))?;
    match classify_minus_two(&shifted) {
        Some((a, r)) => println!("{shifted} = {a} {} {}F", if r < 0 { "-" } else { "+" }, r.abs()),
        None => println!("{shifted} is not a root"),
    }
    Ok(())
}
