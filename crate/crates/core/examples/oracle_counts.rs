//! Brute-force counts over small finite fields, including the extension
//! fields F_4, F_8 and F_9.

use coloring_zeta::oracle::{MatrixOverGF, Oracle};

fn main() -> coloring_zeta::Result<()> {
    for q in [2u64, 3, 4, 5] {
        let o = Oracle::of_order(q)?;
        println!(
            "F_{q}: modulus {:?}; n=2: GL classes {}, M classes {}, unipotent {}, γ {}, γ' {}",
            o.field().spec().modulus,
            o.count_classes_gl(2)?,
            o.count_classes_mn(2)?,
            o.count_unipotent(2)?,
            o.gamma(2)?,
            o.gamma_prime(2)?
        );
    }
    let f2 = Oracle::of_order(2)?;
    // the (2,1) unipotent in GL_3(F_2)
    let a = MatrixOverGF::new(3, vec![1, 1, 0, 0, 1, 0, 0, 0, 1], f2.field())?;
    println!("A = {a}: dim Z(A) = {}, |C_GL(A)| = {}", f2.commutant_dim(&a), f2.centralizer_order_gl(&a)?);
    for b in f2.field().commutant_basis(&a) {
        println!("  basis {b}");
    }
    // budgets stop runaway enumerations
    let err = Oracle::of_order(3)?.with_budget(1000).gamma(3).unwrap_err();
    println!("with a small budget: {err}");
    Ok(())
}
