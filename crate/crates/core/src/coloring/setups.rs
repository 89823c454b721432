use std::sync::Arc;

use num_rational::BigRational;

use super::{Color, ColoringSetup};
use crate::error::Result;
use crate::partitions::{a_lambda, partitions_of};
use crate::series::{rat, Laurent, Ring, TruncatedSeries};

fn partition_colors(k: u32) -> Vec<Color> {
    partitions_of(k).into_iter().map(Color::Partition).collect()
}

fn unit_weight(_: &Color, _: u32, ring: &Ring) -> Result<Laurent> {
    Ok(Laurent::one(ring.nvars()))
}

/// Colors `Z_{>=0}`, `|n| = n`, `W = 1`.
pub fn standard() -> ColoringSetup {
    ColoringSetup::new("standard", Arc::new(|k| vec![Color::Natural(k)]), Arc::new(unit_weight), false)
}

/// Colors are partitions, `W = 1`.
pub fn partition() -> ColoringSetup {
    ColoringSetup::new("partition", Arc::new(partition_colors), Arc::new(unit_weight), false)
}

fn partition_of(c: &Color) -> Result<&crate::partitions::Partition> {
    match c {
        Color::Partition(p) => Ok(p),
        Color::Natural(_) => Err(crate::Error::Invalid("partition setup given a non-partition color".into())),
    }
}

/// `W(λ) = 1 / a_λ(q)`, so a coloring of `G_a` weighs `1/|z_c|`.
pub fn centralizer() -> ColoringSetup {
    ColoringSetup::new(
        "centralizer",
        Arc::new(partition_colors),
        Arc::new(|c, d, ring| {
            let a = ring.q_poly(&a_lambda(partition_of(c)?).adams(d))?;
            a.inv(ring.width)
        }),
        false,
    )
}

/// `W(λ) = q^{<λ,λ>} / a_λ(q)`, the weight counting commuting pairs.
pub fn commuting() -> ColoringSetup {
    ColoringSetup::new(
        "commuting",
        Arc::new(partition_colors),
        Arc::new(|c, d, ring| {
            let p = partition_of(c)?;
            let num = ring.q_poly(&Laurent::from_ints(p.pairing() as i64 * d as i64, &[1]))?;
            let den = ring.q_poly(&a_lambda(p).adams(d))?;
            Laurent::ratio(&num, &den, ring.width)
        }),
        false,
    )
}

/// `(1 - c t^m T^d)^{-v} = Σ_k v(v+1)...(v+k-1)/k! c^k t^{km} T^{dk}`.
pub fn binomial_monomial(ring: &Ring, d: usize, exps: &[i64], c: &BigRational, v: &BigRational) -> TruncatedSeries {
    assert!(d >= 1);
    let nv = ring.nvars();
    let mut slices = vec![Laurent::zero(nv); ring.t_cap + 1];
    slices[0] = Laurent::one(nv);
    let mut coeff = BigRational::from_integer(1.into());
    let mut k = 1usize;
    while d * k <= ring.t_cap {
        coeff = coeff * (v + rat(k as i64 - 1)) * c / rat(k as i64);
        let e: Vec<i64> = exps.iter().map(|x| x * k as i64).collect();
        slices[d * k] = Laurent::monomial(e, coeff.clone());
        k += 1;
    }
    ring.from_slices(slices).expect("slices built from the ring")
}
