//! The plethystic logarithm: exponents `v_{d,m}` with
//! `Z = Π (1 - t^m T^d)^{-v_{d,m}}`, and its inverse.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use super::setups::binomial_monomial;
use crate::arith::mobius;
use crate::error::{Error, Result};
use crate::series::{rat, Exps, Laurent, Mode, MonomialKey, Ring, TruncatedSeries};

/// Sparse exponent table `v_{d,m}`, stored as the series `Log Z = Σ v_{d,m} t^m T^d`
/// whose slice windows say which exponents are known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlethFactorization {
    log: TruncatedSeries,
    /// Numeric mode only: `ψ_j(Log Z)` at the specialized `q`, `j = 1..=T_cap`.
    images: Vec<TruncatedSeries>,
}

impl PlethFactorization {
    /// Exact factorization from an explicit exponent list (symbolic mode, or
    /// numeric mode with `q`-free exponents).
    pub fn from_exponents(ring: &Ring, entries: &[(MonomialKey, BigRational)]) -> Result<Self> {
        let mut slices = vec![BTreeMap::<Exps, BigRational>::new(); ring.t_cap + 1];
        for (k, v) in entries {
            if k.d == 0 {
                return Err(Error::Invalid("exponent with d = 0".into()));
            }
            if k.d <= ring.t_cap {
                *slices[k.d].entry(k.exps.clone()).or_insert_with(BigRational::zero) += v;
            }
        }
        let slices =
            slices.into_iter().map(|m| Laurent::from_terms(ring.nvars(), m)).collect::<Vec<_>>();
        let log = ring.from_slices(slices)?;
        let images = match ring.mode {
            Mode::Symbolic => vec![],
            // q-free exponents: ψ_j only rescales t and T.
            Mode::Numeric(_) => {
                let sym = log.ring().with_mode(Mode::Symbolic);
                let as_sym = sym.from_slices(log.slices().to_vec())?;
                (1..=ring.t_cap as u32)
                    .map(|j| {
                        let a = as_sym.adams(j)?;
                        ring.from_slices(a.slices().to_vec())
                    })
                    .collect::<Result<_>>()?
            }
        };
        Ok(PlethFactorization { log, images })
    }

    /// `Log Z` as a series.
    pub fn series(&self) -> &TruncatedSeries {
        &self.log
    }

    pub fn ring(&self) -> &Ring {
        self.log.ring()
    }

    /// Known non-zero exponents in canonical order.
    pub fn exponents(&self) -> impl Iterator<Item = (MonomialKey, &BigRational)> + '_ {
        self.log.terms()
    }

    pub fn get(&self, key: &MonomialKey) -> Result<BigRational> {
        self.log.coeff(key)
    }

    /// Every known exponent is an integer.
    pub fn is_integral(&self) -> bool {
        self.log.is_integral()
    }

    pub fn require_integral(&self) -> Result<()> {
        match self.exponents().find(|(_, v)| !v.is_integer()) {
            None => Ok(()),
            Some((k, v)) => Err(Error::NonIntegral(format!("v at (d={}, m={:?}) is {v}", k.d, k.exps))),
        }
    }

    /// `ψ_j(Log Z)`.
    pub fn image(&self, j: u32) -> Result<TruncatedSeries> {
        match self.ring().mode {
            Mode::Symbolic => self.log.adams(j),
            Mode::Numeric(_) => {
                if j as usize > self.log.t_cap() {
                    return Ok(self.log.ring().zero());
                }
                Ok(self.images[j as usize - 1].clone())
            }
        }
    }
}

/// Plethystic logarithm of a symbolic series with constant term 1.
///
/// Computed as `Σ_k μ(k)/k ψ_k(log Z)` and, independently, by the recursion
/// `v_{D,M} = L_{D,M} - Σ_{k>=2, k|D, k|M} v_{D/k,M/k}/k` on the coefficients
/// `L` of `log Z`. The routes must agree on the Möbius route's window.
pub fn pleth_log(z: &TruncatedSeries) -> Result<PlethFactorization> {
    if let Mode::Numeric(_) = z.mode() {
        return Err(Error::Mode(
            "numeric Log needs the Adams images of Z at the same q; use pleth_log_family".into(),
        ));
    }
    let ell = z.log()?;
    let t_cap = z.t_cap();
    let mut by_mobius = z.ring().zero();
    for k in 1..=t_cap.max(1) as u32 {
        let mu = mobius(k as u64);
        if mu == 0 {
            continue;
        }
        let term = ell.adams(k)?.scale(&(rat(mu) / rat(k as i64)));
        by_mobius = by_mobius.add(&term)?;
    }

    let recursion = recursive_exponents(&ell);
    for (d, slice) in by_mobius.slices().iter().enumerate() {
        let rec = &recursion[d];
        for (e, v) in rec {
            if slice.in_window(e) && slice.get(e)? != *v {
                return Err(Error::Inconsistent(format!(
                    "plethystic Log routes disagree at T^{d} {e:?}: {} vs {v}",
                    slice.get(e)?
                )));
            }
        }
        for (e, v) in slice.terms() {
            if rec.get(e) != Some(v) {
                return Err(Error::Inconsistent(format!(
                    "plethystic Log routes disagree at T^{d} {e:?}: {v} vs recursion"
                )));
            }
        }
    }
    Ok(PlethFactorization { log: by_mobius, images: vec![] })
}

fn divides(k: i64, e: &[i64]) -> bool {
    e.iter().all(|x| x % k == 0)
}

fn recursive_exponents(ell: &TruncatedSeries) -> Vec<BTreeMap<Exps, BigRational>> {
    let t_cap = ell.t_cap();
    let mut v: Vec<BTreeMap<Exps, BigRational>> = vec![BTreeMap::new(); t_cap + 1];
    for d in 1..=t_cap {
        let mut keys: Vec<Exps> = ell.slices()[d].terms().keys().cloned().collect();
        for k in 2..=d {
            if d % k == 0 {
                keys.extend(v[d / k].keys().map(|e| e.iter().map(|x| x * k as i64).collect()));
            }
        }
        keys.sort();
        keys.dedup();
        let mut row = BTreeMap::new();
        for m in keys {
            let mut val = ell.slices()[d].terms().get(&m).cloned().unwrap_or_else(BigRational::zero);
            for k in 2..=d {
                if d % k == 0 && divides(k as i64, &m) {
                    let sub: Exps = m.iter().map(|x| x / k as i64).collect();
                    if let Some(w) = v[d / k].get(&sub) {
                        val -= w / rat(k as i64);
                    }
                }
            }
            if !val.is_zero() {
                row.insert(m, val);
            }
        }
        v[d] = row;
    }
    v
}

/// Numeric plethystic logarithm. `images[j-1]` must be `ψ_j(Z)` at the
/// specialized `q` (for a coloring setup: the point zeta built from weights at
/// `q^j`), for `j = 1..=T_cap`.
///
/// Routes: `Λ_j = Σ_k μ(k)/k log ψ_{jk} Z` against the top-down recursion
/// `Λ_j = log ψ_j Z - Σ_{k>=2} Λ_{jk}/k`.
pub fn pleth_log_family(images: &[TruncatedSeries]) -> Result<PlethFactorization> {
    let first = images.first().ok_or_else(|| Error::Invalid("empty image family".into()))?;
    let t_cap = first.t_cap();
    if images.len() < t_cap {
        return Err(Error::Invalid(format!("need {t_cap} Adams images, got {}", images.len())));
    }
    let logs = images[..t_cap.max(1)].iter().map(TruncatedSeries::log).collect::<Result<Vec<_>>>()?;
    let ring = first.ring().clone();
    let n = t_cap.max(1);

    let mut mobius_route = Vec::with_capacity(n);
    for j in 1..=n {
        let mut acc = ring.zero();
        for k in 1..=n / j {
            let mu = mobius(k as u64);
            if mu != 0 {
                acc = acc.add(&logs[j * k - 1].scale(&(rat(mu) / rat(k as i64))))?;
            }
        }
        mobius_route.push(acc);
    }

    let mut rec_route = vec![ring.zero(); n];
    for j in (1..=n).rev() {
        let mut acc = logs[j - 1].clone();
        for k in 2..=n / j {
            acc = acc.sub(&rec_route[j * k - 1].scale(&rat(k as i64).recip()))?;
        }
        rec_route[j - 1] = acc;
    }

    for (j, (a, b)) in mobius_route.iter().zip(&rec_route).enumerate() {
        let cmp = a.compare(b)?;
        if !cmp.equal {
            return Err(Error::Inconsistent(format!(
                "numeric Log routes disagree for ψ_{}: {:?}",
                j + 1,
                cmp.first_mismatch
            )));
        }
    }
    Ok(PlethFactorization { log: mobius_route[0].clone(), images: mobius_route })
}

/// Precision-only factor `exp(Σ_k c_k ψ_k(L_unknown))` where `L_unknown` has
/// the windows of `log` and no known terms. Multiplying a product over the
/// known exponents by this series gives it the windows the full infinite
/// product would have.
pub fn plethystic_tail<F>(log: &TruncatedSeries, coeff: F) -> Result<TruncatedSeries>
where
    F: Fn(u32) -> Result<Laurent>,
{
    let unknown = log.unknown_part();
    let mut acc = log.ring().zero();
    for k in 1..=log.t_cap().max(1) as u32 {
        acc = acc.add(&unknown.adams(k)?.mul_laurent(&coeff(k)?))?;
    }
    acc.exp()
}

/// `Π (1 - t^m T^d)^{-v_{d,m}}`.
pub fn pleth_product(f: &PlethFactorization) -> Result<TruncatedSeries> {
    let ring = f.ring().clone();
    match ring.mode {
        Mode::Symbolic => {
            let one = rat(1);
            let mut acc = ring.one();
            for (key, v) in f.exponents() {
                acc = acc.mul(&binomial_monomial(&ring, key.d, &key.exps, &one, v))?;
            }
            let nv = ring.nvars();
            let tail = plethystic_tail(f.series(), |k| Ok(Laurent::constant(nv, rat(k as i64).recip())))?;
            acc.mul(&tail)
        }
        Mode::Numeric(_) => {
            let mut sum = ring.zero();
            for j in 1..=ring.t_cap.max(1) as u32 {
                sum = sum.add(&f.image(j)?.scale(&rat(j as i64).recip()))?;
            }
            sum.exp()
        }
    }
}
