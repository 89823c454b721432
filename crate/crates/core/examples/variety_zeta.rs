//! Point counts, Frobenius orbit counts and zeta functions of
//! polynomial-count varieties.

use coloring_zeta::series::Ring;
use coloring_zeta::variety::{gl_order_int, VarietySpec};

fn main() -> coloring_zeta::Result<()> {
    let ring = Ring::numeric(2, 6);
    let sym = Ring::symbolic(4, 12);
    let mut all = VarietySpec::builtins().to_vec();
    // the projective line, N = q + 1, written as a polynomial
    all.push("poly:1,1".parse()?);
    for v in &all {
        let counts: Vec<String> = v.counts(&ring, 5)?.iter().map(|c| c.format(&[])).collect();
        let orbits: Vec<String> = v.orbit_profile(&ring, 5)?.integers()?.iter().map(ToString::to_string).collect();
        println!("{v:<8} N_r at q=2: {:<24} orbits: {}", counts.join(" "), orbits.join(" "));
        println!("         Z = {}", v.zeta_series(&sym)?.format());
        println!("         roots (q^j, n_j): {:?}", v.factored_zeta().factors);
    }
    println!("|GL_3(F_2)| = {}", gl_order_int(3, 2));
    Ok(())
}
