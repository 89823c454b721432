//! The coloring zeta function computed four ways, plus the direct sum over
//! coloring types, for every built-in coloring set.

use coloring_zeta::coloring::{forms_agree, ColoringSetup};
use coloring_zeta::series::Ring;
use coloring_zeta::variety::VarietySpec;

fn main() -> coloring_zeta::Result<()> {
    for ring in [Ring::symbolic(4, 16), Ring::numeric(2, 4)] {
        for setup in ColoringSetup::builtins() {
            for v in VarietySpec::builtins() {
                let rep = forms_agree(&setup, &v, &ring)?;
                let status = if rep.all_equal() { "agree" } else { "DISAGREE" };
                println!("{:<11} {v:<5} {status}: {}", setup.name(), rep.first.format());
                if let Some((name, cmp)) = rep.first_failure() {
                    println!("  {name}: {:?}", cmp.first_mismatch);
                }
            }
        }
    }
    Ok(())
}
