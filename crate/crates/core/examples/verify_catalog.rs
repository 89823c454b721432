//! Every identity in the catalog, checked symbolically and at q = 2.

use coloring_zeta::series::Mode;
use coloring_zeta::verify::{verify_many, VerifyParams, CATALOG};

fn main() -> coloring_zeta::Result<()> {
    for mode in [Mode::Symbolic, Mode::numeric(2)] {
        let p = VerifyParams { mode: mode.clone(), ..Default::default() };
        for (name, result) in CATALOG.iter().zip(verify_many(&CATALOG, &p)) {
            match result {
                Ok(r) => println!("{name:<12} {:?}: {:?}", mode.q_value().map(ToString::to_string), r.status),
                Err(e) => println!("{name:<12} {:?}: skipped ({e})", mode.q_value().map(ToString::to_string)),
            }
        }
    }
    Ok(())
}
