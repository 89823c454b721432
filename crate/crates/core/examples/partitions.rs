//! Partitions and the centralizer polynomials `a_λ(q)`.

use coloring_zeta::partitions::{a_lambda, b_lambda, partitions_of, phi};

fn main() {
    let q = ["q".to_string()];
    println!("p(n) for n <= 10: {:?}", (0..=10).map(|n| partitions_of(n).len()).collect::<Vec<_>>());
    println!("phi_2(q) = {}", phi(2).format(&q));
    for n in 1..=3 {
        for l in partitions_of(n) {
            let s = l.stats();
            println!(
                "{l:<10} n(λ)={} <λ,λ>={:<2} b_λ = {:<22} a_λ = {}",
                s.n,
                s.pairing,
                b_lambda(&l).format(&q),
                a_lambda(&l).format(&q)
            );
        }
    }
}
