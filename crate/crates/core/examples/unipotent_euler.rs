//! The centralizer coloring set: unipotent counts, the normalization on G_m
//! and Euler's product identity.

use coloring_zeta::coloring::{first_form, ColoringSetup};
use coloring_zeta::oracle::Oracle;
use coloring_zeta::series::Ring;
use coloring_zeta::variety::VarietySpec;
use coloring_zeta::verify::{verify, VerifyParams};

fn main() -> coloring_zeta::Result<()> {
    let cent = ColoringSetup::centralizer();
    let sym = Ring::symbolic(3, 8);
    println!("point: {}", first_form(&cent, &VarietySpec::point(), &sym)?.format());
    println!("G_a:   {}", first_form(&cent, &VarietySpec::ga(), &sym)?.format());
    for q in [2, 3, 4, 5] {
        let c = first_form(&cent, &VarietySpec::gm(), &Ring::numeric(q, 6))?.scalars()?;
        println!("G_m at q={q}: {:?}", c.iter().map(ToString::to_string).collect::<Vec<_>>());
    }
    for (n, q) in [(2usize, 2u64), (3, 2), (3, 3)] {
        println!("unipotent {n}x{n} over F_{q}: {}", Oracle::of_order(q)?.count_unipotent(n)?);
    }
    let report = verify("euler", &VerifyParams { t_max: 8, q_window: 16, ..Default::default() })?;
    println!("{}", report.to_json());
    Ok(())
}
