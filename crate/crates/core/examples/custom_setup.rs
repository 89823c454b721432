//! A user-defined coloring set with an extra graded variable `t`. The
//! weight `W(k) = [k]_q t^k` is homogeneous, so the zeta function is too.

use std::sync::Arc;

use coloring_zeta::coloring::{forms_agree, series_is_homogeneous, Color, ColoringSetup};
use coloring_zeta::series::{Laurent, Mode, Ring, VariableSpec};
use coloring_zeta::variety::VarietySpec;
use num_rational::BigRational;
use num_traits::One;

fn graded() -> ColoringSetup {
    ColoringSetup::new(
        "graded",
        Arc::new(|k| vec![Color::Natural(k)]),
        Arc::new(|c, d, ring| {
            let Color::Natural(k) = *c else { unreachable!() };
            let (k, d) = (k as i64, d as i64);
            // [k]_{q^d}, with W(0) = 1
            let qk = if k == 0 {
                Laurent::one(1)
            } else {
                Laurent::from_terms(1, (0..k).map(|i| (vec![i * d], BigRational::one())))
            };
            let n = ring.nvars();
            let mut t = vec![0; n];
            t[n - 1] = k * d;
            Ok(ring.q_poly(&qk)?.mul(&Laurent::monomial(t, BigRational::one())))
        }),
        true,
    )
}

fn main() -> coloring_zeta::Result<()> {
    let setup = graded();
    let vars = VariableSpec::new(vec!["q".into(), "t".into()], "T")?;
    let ring = Ring::new(vars, Mode::Symbolic, 3, 12)?;
    setup.validate(&ring, 3)?;
    for v in VarietySpec::builtins() {
        let rep = forms_agree(&setup, &v, &ring)?;
        println!("{v}: forms agree {}, homogeneous {}", rep.all_equal(), series_is_homogeneous(&rep.first));
        println!("  {}", rep.first.format());
    }
    Ok(())
}
