//! Truncated series over Laurent coefficients: windows, inverses, log/exp and
//! Adams operations.

use coloring_zeta::series::{Laurent, MonomialKey, Ring};
use num_rational::BigRational;

fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn main() -> coloring_zeta::Result<()> {
    // 1/(q - 1) = -(1 + q + q^2 + ...), known on a window of width 8
    let x = Laurent::from_ints(0, &[-1, 1]).inv(8)?;
    println!("1/(q-1)      = {}  (cap {:?})", x.format(&["q".into()]), x.cap());

    let ring = Ring::symbolic(5, 12);
    // Z(G_m, T) = (1 - T)/(1 - qT)
    let one_minus = |c: Laurent| ring.from_slices(vec![Laurent::one(1), c.neg()]);
    let z = one_minus(Laurent::one(1))?.mul(&one_minus(Laurent::from_ints(1, &[1]))?.inv()?)?;
    println!("Z(G_m)       = {}", z.format());

    let log = z.log()?;
    println!("log Z(G_m)   = {}", log.format());
    println!("exp log      = {}", log.exp()?.format());
    println!("psi_2 Z(G_m) = {}", z.adams(2)?.format());
    println!("T -> qT^2    = {}", z.subst_t_monomial(&MonomialKey::new(2, vec![1]))?.format());

    // windows shrink only as far as the inputs force them to
    let w = z.mul_laurent(&x);
    for (d, l) in w.slices().iter().enumerate() {
        println!("  T^{d}: floor {:?} cap {:?}", l.floor(), l.cap());
    }

    // numeric mode: q is a number, every coefficient is an exact rational
    let num = Ring::numeric(3, 4);
    let zn = num.from_slices(vec![Laurent::constant(0, int(1)), Laurent::constant(0, int(-3))])?.inv()?;
    println!("1/(1-3T)     = {}", zn.format());
    Ok(())
}
