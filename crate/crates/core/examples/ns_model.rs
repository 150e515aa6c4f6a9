//! Néron-Severi lattice of a surface with I_3 + I_9 fibers and 3-torsion.

use weylns::ns::{build_ns, of_block_form, SurfaceConfig};

fn main() -> weylns::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/i3_i9_z3.json");
    let config = SurfaceConfig::from_json(&std::fs::read_to_string(path).expect("data file"))?;
    let l = build_ns(&config)?;
    println!("chi = {}, rank = {}", l.chi(), l.dim());
    let labels: Vec<String> = (0..l.dim()).map(|i| l.basis_label(i)).collect();
    println!("basis: {}", labels.join(" "));

    let p = l.point("P").unwrap();
    let two_p = l.add_points(p, p)?;
    println!("P + P = {}", l.point_name(two_p));
    let d = l.parse_divisor("2*(P) - v[t1,0] + F")?;
    println!("D = {}, D·D = {}", l.render(&d), l.pair(&d.coeffs, &d.coeffs));

    let (_, form) = of_block_form(l.chi())?;
    println!("<O,F> block in an adapted basis:\n{form}");

    match build_ns(&SurfaceConfig::with_fibers(&[5])) {
        Ok(_) => println!("I_5 accepted"),
        Err(e) => println!("I_5 rejected: {e}"),
    }
    Ok(())
}
