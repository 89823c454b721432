//! Conjugacy classes of GL_n and M_n over F_q: the generating series from
//! the partition coloring set against brute-force Burnside counts.

use coloring_zeta::coloring::{second_form, ColoringSetup};
use coloring_zeta::oracle::Oracle;
use coloring_zeta::series::Ring;
use coloring_zeta::variety::VarietySpec;

fn main() -> coloring_zeta::Result<()> {
    let partition = ColoringSetup::partition();
    println!("GL_n: {}", second_form(&partition, &VarietySpec::gm(), &Ring::symbolic(4, 12))?.format());
    println!("M_n:  {}", second_form(&partition, &VarietySpec::ga(), &Ring::symbolic(4, 12))?.format());

    for q in [2u64, 3, 4] {
        let ring = Ring::numeric(q as i64, 3);
        let oracle = Oracle::of_order(q)?;
        let gl = second_form(&partition, &VarietySpec::gm(), &ring)?.scalars()?;
        let mn = second_form(&partition, &VarietySpec::ga(), &ring)?.scalars()?;
        for n in 1..=3 {
            println!(
                "q={q} n={n}: GL classes {} (oracle {}), M classes {} (oracle {})",
                gl[n],
                oracle.count_classes_gl(n)?,
                mn[n],
                oracle.count_classes_mn(n)?
            );
        }
    }
    Ok(())
}
