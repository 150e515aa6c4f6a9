//! Lifting W_n into W_{ne}: generators, inductive words and permutations.

use weylns::lattice::FibralSpace;
use weylns::lift::{index_set, lift_generator, lift_inductive, lift_word, verify_intertwining};
use weylns::weyl::{equal_elements, WeylWord};

fn main() -> weylns::Result<()> {
    let (n, e) = (3, 2);
    for k in 0..n {
        let g = lift_generator(n, e, k)?;
        println!("R(s{k}) = {} ; permutation {}", g.word, g.permutation());
    }
    println!("arcs for k=1: {:?}", index_set(n, e, 1)?.arcs.iter().map(ToString::to_string).collect::<Vec<_>>());

    let inductive = lift_inductive(n, e, 1)?;
    let direct = lift_generator(n, e, 1)?.word;
    println!("inductive word {inductive} equals the generator: {}", equal_elements(&inductive, &direct)?);

    let w = WeylWord::parse(FibralSpace::new(n)?, "0,1,2")?;
    println!("R(s0 s1 s2) has length {}", lift_word(e, &w)?.len());
    println!("intertwining holds: {}", verify_intertwining(n, e)?.is_success());
    Ok(())
}
