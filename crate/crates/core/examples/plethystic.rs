//! Plethystic logarithm and product: the exponents `v_{d,m}` with
//! `Z = Π (1 - q^m T^d)^{-v_{d,m}}`.

use coloring_zeta::coloring::{pleth_log, pleth_product, point_zeta, ColoringSetup};
use coloring_zeta::series::Ring;

fn main() -> coloring_zeta::Result<()> {
    let ring = Ring::symbolic(4, 10);
    for setup in ColoringSetup::builtins() {
        let z = point_zeta(&setup, &ring)?;
        let log = pleth_log(&z)?;
        println!("{}: Z(point) = {}", setup.name(), z.format());
        let mut shown = 0;
        for (key, v) in log.exponents() {
            if shown < 8 {
                println!("  v[T^{}, q^{}] = {v}", key.d, key.exps[0]);
            }
            shown += 1;
        }
        println!("  {shown} exponents, integral: {}", log.is_integral());
        let back = pleth_product(&log)?;
        println!("  product reproduces Z: {}", back.compare(&z)?.equal);
    }
    Ok(())
}
