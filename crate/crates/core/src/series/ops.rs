use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{Laurent, Mode, MonomialKey, Ring, TruncatedSeries};
use crate::error::{Error, Result};

fn frac(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl TruncatedSeries {
    fn combined_ring(&self, other: &Self) -> Result<Ring> {
        if self.ring.vars != other.ring.vars {
            return Err(Error::Incompatible(format!(
                "variables {:?} vs {:?}",
                self.ring.vars.laurent(),
                other.ring.vars.laurent()
            )));
        }
        if self.ring.mode != other.ring.mode {
            return Err(Error::Incompatible(format!(
                "modes {:?} vs {:?}",
                self.ring.mode, other.ring.mode
            )));
        }
        Ok(Ring {
            vars: self.ring.vars.clone(),
            mode: self.ring.mode.clone(),
            t_cap: self.ring.t_cap.min(other.ring.t_cap),
            width: self.ring.width.min(other.ring.width),
        })
    }

    /// Drop T-degrees above `t_cap` (never raises the cap).
    pub fn truncate_t(&self, t_cap: usize) -> Self {
        let t_cap = t_cap.min(self.t_cap());
        TruncatedSeries { ring: self.ring.with_t_cap(t_cap), coeffs: self.coeffs[..=t_cap].to_vec() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let ring = self.combined_ring(other)?;
        let coeffs = (0..=ring.t_cap).map(|d| self.coeffs[d].add(&other.coeffs[d])).collect();
        Ok(TruncatedSeries { ring, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_slices(Laurent::neg)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        self.map_slices(|l| l.scale(k))
    }

    /// Multiply every coefficient by an element of the Laurent ring.
    pub fn mul_laurent(&self, c: &Laurent) -> Self {
        self.map_slices(|l| l.mul(c))
    }

    fn map_slices<F: Fn(&Laurent) -> Laurent>(&self, f: F) -> Self {
        TruncatedSeries { ring: self.ring.clone(), coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let ring = self.combined_ring(other)?;
        let n = ring.nvars();
        let coeffs = (0..=ring.t_cap)
            .map(|d| {
                (0..=d).fold(Laurent::zero(n), |acc, i| {
                    acc.add(&self.coeffs[i].mul(&other.coeffs[d - i]))
                })
            })
            .collect();
        Ok(TruncatedSeries { ring, coeffs })
    }

    /// Multiplicative inverse; the T^0 slice must be a unit of the Laurent ring.
    pub fn inv(&self) -> Result<Self> {
        let n = self.ring.nvars();
        let b0 = self.coeffs[0].inv(self.ring.width)?;
        let mut out = vec![b0.clone()];
        for d in 1..=self.t_cap() {
            let s = (1..=d).fold(Laurent::zero(n), |acc, k| acc.add(&self.coeffs[k].mul(&out[d - k])));
            out.push(b0.mul(&s).neg());
        }
        Ok(TruncatedSeries { ring: self.ring.clone(), coeffs: out })
    }

    pub fn pow_int(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.ring.one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// `self^e = exp(e * log self)` for a Laurent-valued exponent.
    pub fn pow_laurent(&self, e: &Laurent) -> Result<Self> {
        self.log()?.mul_laurent(e).exp()
    }

    /// Raise to a rational power through the logarithm.
    pub fn pow_rational(&self, e: &BigRational) -> Result<Self> {
        if e.is_integer() {
            let k = e.to_integer();
            if let Ok(k) = i64::try_from(k) {
                return self.pow_int(k);
            }
        }
        self.log()?.scale(e).exp()
    }

    /// Formal logarithm of a series with constant term exactly 1.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::Invalid("log needs constant term exactly 1".into()));
        }
        let n = self.ring.nvars();
        let mut out = vec![Laurent::zero(n)];
        for d in 1..=self.t_cap() {
            let mut s = self.coeffs[d].scale(&frac(d));
            for k in 1..d {
                s = s.sub(&out[k].mul(&self.coeffs[d - k]).scale(&frac(k)));
            }
            out.push(s.scale(&frac(d).recip()));
        }
        Ok(TruncatedSeries { ring: self.ring.clone(), coeffs: out })
    }

    /// Formal exponential of a series with exactly zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_exact_zero() {
            return Err(Error::Invalid("exp needs an exactly zero constant term".into()));
        }
        let n = self.ring.nvars();
        let mut out = vec![Laurent::one(n)];
        for d in 1..=self.t_cap() {
            let mut s = Laurent::zero(n);
            for k in 1..=d {
                s = s.add(&self.coeffs[k].mul(&out[d - k]).scale(&frac(k)));
            }
            out.push(s.scale(&frac(d).recip()));
        }
        Ok(TruncatedSeries { ring: self.ring.clone(), coeffs: out })
    }

    /// `(t, T) -> (t^k, T^k)`. Symbolic mode only: in numeric mode the value
    /// of `q` would change, see [`TruncatedSeries::adams_to`].
    pub fn adams(&self, k: u32) -> Result<Self> {
        if let Mode::Numeric(_) = self.ring.mode {
            return Err(Error::Mode("adams in numeric mode changes q; use adams_to".into()));
        }
        self.adams_unchecked(k)
    }

    /// Numeric-mode Adams operation: `self` holds values at `q0^k`, the result
    /// is `psi_k(self)` at `q0`.
    pub fn adams_to(&self, k: u32, q0: &BigRational) -> Result<Self> {
        match &self.ring.mode {
            Mode::Numeric(q) if *q == num_traits::pow(q0.clone(), k as usize) => {
                let mut s = self.adams_unchecked(k)?;
                s.ring.mode = Mode::Numeric(q0.clone());
                Ok(s)
            }
            Mode::Numeric(q) => Err(Error::Incompatible(format!("series is at q = {q}, not at {q0}^{k}"))),
            Mode::Symbolic => self.adams(k),
        }
    }

    fn adams_unchecked(&self, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::Invalid("adams index must be positive".into()));
        }
        let n = self.ring.nvars();
        let mut out = vec![Laurent::zero(n); self.t_cap() + 1];
        for (d, l) in self.coeffs.iter().enumerate() {
            let kd = d * k as usize;
            if kd <= self.t_cap() {
                out[kd] = l.adams(k);
            }
        }
        Ok(TruncatedSeries { ring: self.ring.clone(), coeffs: out })
    }

    /// `T -> t^m T^d` with `d >= 1`.
    pub fn subst_t_monomial(&self, key: &MonomialKey) -> Result<Self> {
        if key.d == 0 {
            return Err(Error::Invalid("substitution T -> t^m T^0 is not T-adically convergent".into()));
        }
        if key.exps.len() != self.ring.nvars() {
            return Err(Error::Invalid("monomial exponent length differs from ring".into()));
        }
        let n = self.ring.nvars();
        let mut out = vec![Laurent::zero(n); self.t_cap() + 1];
        for (j, l) in self.coeffs.iter().enumerate() {
            let dj = key.d * j;
            if dj <= self.t_cap() {
                let shift: Vec<i64> = key.exps.iter().map(|x| x * j as i64).collect();
                out[dj] = l.shift(&shift);
            }
        }
        Ok(TruncatedSeries { ring: self.ring.clone(), coeffs: out })
    }

    /// Narrow every slice's caps to `caps[d]` (per T-degree).
    pub fn truncate_windows(&self, caps: &[Vec<Option<i64>>]) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(d, l)| match caps.get(d) {
                Some(c) => l.truncate(c),
                None => l.clone(),
            })
            .collect();
        TruncatedSeries { ring: self.ring.clone(), coeffs }
    }

    /// Same windows, every known value replaced by zero. Multiplying by such a
    /// series changes only precision.
    pub fn unknown_part(&self) -> Self {
        self.map_slices(|l| {
            if l.is_exact() {
                Laurent::zero(l.nvars())
            } else {
                Laurent::unknown(l.effective_floor(), l.cap().to_vec())
            }
        })
    }

    /// Exact comparison on the intersection of the two windows.
    pub fn compare(&self, other: &Self) -> Result<Comparison> {
        let diff = self.sub(other)?;
        let mut first = None;
        for (d, l) in diff.coeffs.iter().enumerate() {
            if let Some((e, _)) = l.terms().iter().next() {
                first = Some(Mismatch {
                    t: d,
                    exps: e.clone(),
                    lhs: self.coeffs[d].get(e)?.to_string(),
                    rhs: other.coeffs[d].get(e)?.to_string(),
                });
                break;
            }
        }
        let window = diff
            .coeffs
            .iter()
            .enumerate()
            .map(|(d, l)| SliceWindow { t: d, floor: l.floor().to_vec(), cap: l.cap().to_vec() })
            .collect::<Vec<_>>();
        let vacuous = diff.coeffs.iter().any(|l| !l.window_nonempty());
        Ok(Comparison { equal: first.is_none(), first_mismatch: first, window, vacuous, t_cap: diff.t_cap() })
    }

    /// Largest absolute value among numeric-mode coefficients.
    pub fn max_abs_scalar(&self) -> Result<BigRational> {
        Ok(self.scalars()?.into_iter().map(|c| c.abs()).fold(BigRational::zero(), |a, b| if b > a { b } else { a }))
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|l| l.terms().is_empty())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    #[serde(rename = "T")]
    pub t: usize,
    pub exps: Vec<i64>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SliceWindow {
    #[serde(rename = "T")]
    pub t: usize,
    pub floor: Vec<i64>,
    pub cap: Vec<Option<i64>>,
}

/// Outcome of comparing two series on their common window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub equal: bool,
    pub first_mismatch: Option<Mismatch>,
    pub window: Vec<SliceWindow>,
    /// Some T-degree had no exponent left to compare.
    pub vacuous: bool,
    #[serde(rename = "T_cap")]
    pub t_cap: usize,
}

impl Comparison {
    /// Smallest number of compared exponents in the first Laurent variable
    /// over all T-degrees with a finite window (None when all exact).
    pub fn min_width(&self) -> Option<i64> {
        self.window
            .iter()
            .filter_map(|w| match (w.cap.first(), w.floor.first()) {
                (Some(Some(c)), Some(f)) => Some(c - f + 1),
                _ => None,
            })
            .min()
    }
}
