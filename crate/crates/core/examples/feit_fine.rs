//! Commuting pairs of matrices: the generating series against exhaustive
//! counts over small fields.

use coloring_zeta::coloring::{first_form, ColoringSetup};
use coloring_zeta::oracle::Oracle;
use coloring_zeta::series::Ring;
use coloring_zeta::variety::{gl_order_int, VarietySpec};

fn main() -> coloring_zeta::Result<()> {
    let commuting = ColoringSetup::commuting();
    let z = first_form(&commuting, &VarietySpec::ga(), &Ring::symbolic(3, 10))?;
    println!("Σ γ_n/|G_n| T^n = {}", z.format());

    for (q, n_max) in [(2u64, 4), (3, 3)] {
        let c = first_form(&commuting, &VarietySpec::ga(), &Ring::numeric(q as i64, n_max))?.scalars()?;
        let oracle = Oracle::of_order(q)?;
        for n in 1..=n_max {
            let from_series = &c[n] * num_rational::BigRational::from_integer(gl_order_int(n as u32, q).into());
            println!("q={q} n={n}: γ_n = {from_series} (oracle {})", oracle.gamma(n)?);
        }
    }
    Ok(())
}
