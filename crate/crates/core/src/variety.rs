//! Polynomial-count varieties: point counts, Frobenius orbit profiles,
//! zeta functions and their factored form.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::arith::{divisors, mobius};
use crate::error::{Error, Result};
use crate::series::{rat, Laurent, Mode, Ring, TruncatedSeries};

/// A variety identified with its counting polynomial `N_X(q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietySpec {
    name: String,
    /// Coefficients `n_j` of `N_X(q) = Σ n_j q^j`, low degree first.
    coeffs: Vec<i64>,
}

impl VarietySpec {
    pub fn new<S: Into<String>>(name: S, mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        VarietySpec { name: name.into(), coeffs }
    }

    pub fn point() -> Self {
        Self::new("point", vec![1])
    }

    /// The additive group, `N = q`.
    pub fn ga() -> Self {
        Self::new("ga", vec![0, 1])
    }

    /// The multiplicative group, `N = q - 1`.
    pub fn gm() -> Self {
        Self::new("gm", vec![-1, 1])
    }

    pub fn builtins() -> [Self; 3] {
        [Self::point(), Self::ga(), Self::gm()]
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// `N_X` as a univariate Laurent polynomial in `q`.
    pub fn counting_poly(&self) -> Laurent {
        Laurent::from_ints(0, &self.coeffs)
    }

    /// `N_X(q)` as a coefficient of `ring`.
    pub fn count_in(&self, ring: &Ring) -> Result<Laurent> {
        ring.q_poly(&self.counting_poly())
    }

    /// `N_1 .. N_{r_max}` with `N_r = N_X(q^r)`.
    pub fn counts(&self, ring: &Ring, r_max: usize) -> Result<Vec<Laurent>> {
        let n = self.counting_poly();
        (1..=r_max as u32).map(|r| ring.q_poly(&n.adams(r))).collect()
    }

    /// Frobenius orbit counts by Möbius inversion of `N_r = Σ_{d|r} d Ñ_d`.
    pub fn orbit_profile(&self, ring: &Ring, d_max: usize) -> Result<OrbitProfile> {
        let counts = self.counts(ring, d_max)?;
        let nv = ring.nvars();
        let mut orbits = Vec::with_capacity(d_max);
        for d in 1..=d_max as u64 {
            let s = divisors(d).into_iter().fold(Laurent::zero(nv), |acc, e| {
                acc.add(&counts[(d / e) as usize - 1].scale(&rat(mobius(e))))
            });
            let s = s.scale(&rat(d as i64).recip());
            if let Mode::Numeric(_) = ring.mode {
                if !s.is_integral() {
                    return Err(Error::NonIntegral(format!(
                        "orbit count of degree {d} for {} is not an integer",
                        self.name
                    )));
                }
            }
            orbits.push(s);
        }
        Ok(OrbitProfile { mode: ring.mode.clone(), orbits })
    }

    /// `Z(X,T) = Π_j (1 - q^j T)^{-n_j}`.
    pub fn factored_zeta(&self) -> FactoredZeta {
        let factors = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| **c != 0)
            .map(|(j, c)| (j as u32, *c))
            .collect();
        FactoredZeta { factors }
    }

    /// The zeta function, computed from the point counts and from the Euler
    /// product over orbits; the two routes must agree.
    pub fn zeta_series(&self, ring: &Ring) -> Result<TruncatedSeries> {
        let by_counts = self.zeta_from_counts(ring)?;
        let by_orbits = self.zeta_euler_product(ring)?;
        let cmp = by_counts.compare(&by_orbits)?;
        if !cmp.equal {
            return Err(Error::Inconsistent(format!(
                "zeta of {} differs between exp-of-counts and Euler product: {:?}",
                self.name, cmp.first_mismatch
            )));
        }
        Ok(by_counts)
    }

    /// `exp(Σ_r N_r T^r / r)`.
    pub fn zeta_from_counts(&self, ring: &Ring) -> Result<TruncatedSeries> {
        let counts = self.counts(ring, ring.t_cap.max(1))?;
        let mut slices = vec![Laurent::zero(ring.nvars())];
        for (r, n) in counts.iter().enumerate() {
            slices.push(n.scale(&rat(r as i64 + 1).recip()));
        }
        ring.from_slices(slices)?.exp()
    }

    /// `Π_d (1 - T^d)^{-Ñ_d}` expanded with binomial series.
    pub fn zeta_euler_product(&self, ring: &Ring) -> Result<TruncatedSeries> {
        let profile = self.orbit_profile(ring, ring.t_cap.max(1))?;
        let mut acc = ring.one();
        for d in 1..=ring.t_cap {
            acc = acc.mul(&binomial_series(ring, d, profile.get(d)))?;
        }
        Ok(acc)
    }
}

impl fmt::Display for VarietySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl FromStr for VarietySpec {
    type Err = Error;

    /// `point | ga | gm | poly:c0,c1,...` (coefficients low to high).
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "point" => Ok(Self::point()),
            "ga" => Ok(Self::ga()),
            "gm" => Ok(Self::gm()),
            other => {
                let body = other
                    .strip_prefix("poly:")
                    .ok_or_else(|| Error::Invalid(format!("unknown variety {other:?}")))?;
                let coeffs = body
                    .split(',')
                    .map(|c| c.trim().parse::<i64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|e| Error::Invalid(format!("bad polynomial {body:?}: {e}")))?;
                if coeffs.is_empty() {
                    return Err(Error::Invalid("empty counting polynomial".into()));
                }
                Ok(Self::new(other, coeffs))
            }
        }
    }
}

/// `(1 - T^d)^{-a} = Σ_k a(a+1)...(a+k-1)/k! T^{dk}` for a Laurent-valued `a`.
pub fn binomial_series(ring: &Ring, d: usize, a: &Laurent) -> TruncatedSeries {
    let nv = ring.nvars();
    let mut slices = vec![Laurent::zero(nv); ring.t_cap + 1];
    let mut term = Laurent::one(nv);
    slices[0] = term.clone();
    let mut k = 1;
    while d * k <= ring.t_cap {
        let shifted = a.add(&Laurent::constant(nv, rat(k as i64 - 1)));
        term = term.mul(&shifted).scale(&rat(k as i64).recip());
        slices[d * k] = term.clone();
        k += 1;
    }
    ring.from_slices(slices).expect("slices built from the ring")
}

/// Frobenius orbit counts `Ñ_1 .. Ñ_{d_max}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitProfile {
    pub mode: Mode,
    orbits: Vec<Laurent>,
}

impl OrbitProfile {
    /// `Ñ_d` for `1 <= d <= d_max`.
    pub fn get(&self, d: usize) -> &Laurent {
        &self.orbits[d - 1]
    }

    pub fn d_max(&self) -> usize {
        self.orbits.len()
    }

    /// Numeric orbit counts as integers.
    pub fn integers(&self) -> Result<Vec<BigInt>> {
        self.orbits
            .iter()
            .map(|l| {
                let c = l.constant_value()?;
                if !c.is_integer() {
                    return Err(Error::NonIntegral(format!("{c}")));
                }
                Ok(c.to_integer())
            })
            .collect()
    }

    /// Every numeric orbit count is non-negative.
    pub fn is_nonnegative(&self) -> Result<bool> {
        Ok(self.integers()?.iter().all(|n| !n.is_negative()))
    }
}

/// `Z(X,T) = Π (1 - q^j T)^{-n_j}` with monomial roots `q^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredZeta {
    /// Pairs `(j, n_j)` for the root `x = q^j`.
    pub factors: Vec<(u32, i64)>,
}

impl FactoredZeta {
    pub fn series(&self, ring: &Ring) -> Result<TruncatedSeries> {
        let mut acc = ring.one();
        for &(j, n) in &self.factors {
            let mut qj = Laurent::from_ints(j as i64, &[1]);
            qj = ring.q_poly(&qj)?;
            let mut lin = ring.one();
            if ring.t_cap >= 1 {
                lin = lin.sub(&ring.from_slices(vec![Laurent::zero(ring.nvars()), qj])?)?;
            }
            acc = acc.mul(&lin.pow_int(-n)?)?;
        }
        Ok(acc)
    }
}

/// `|GL_n(F_q)| = Π_{k<n} (q^n - q^k)` as a polynomial in `q`.
pub fn gl_order_poly(n: u32) -> Laurent {
    (0..n as i64).fold(Laurent::one(1), |acc, k| {
        acc.mul(&Laurent::from_terms(1, vec![(vec![n as i64], rat(1)), (vec![k], rat(-1))]))
    })
}

/// `|GL_n(F_q)|` in the coefficient ring of `ring`.
pub fn gl_order(n: u32, ring: &Ring) -> Result<Laurent> {
    ring.q_poly(&gl_order_poly(n))
}

/// `|GL_n(F_q)|` for a concrete field size.
pub fn gl_order_int(n: u32, q: u64) -> u128 {
    let q = q as u128;
    (0..n).map(|k| q.pow(n) - q.pow(k)).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[Laurent]) -> Vec<i64> {
        v.iter().map(|l| i64::try_from(l.scalar().unwrap().to_integer()).unwrap()).collect()
    }

    #[test]
    fn point_counts() {
        let r2 = Ring::numeric(2, 4);
        assert_eq!(ints(&VarietySpec::gm().counts(&r2, 4).unwrap()), vec![1, 3, 7, 15]);
        assert_eq!(ints(&VarietySpec::point().counts(&r2, 4).unwrap()), vec![1, 1, 1, 1]);
        let r3 = Ring::numeric(3, 3);
        assert_eq!(ints(&VarietySpec::ga().counts(&r3, 3).unwrap()), vec![3, 9, 27]);
    }

    #[test]
    fn orbit_profiles_by_hand() {
        let r2 = Ring::numeric(2, 4);
        let gm = VarietySpec::gm().orbit_profile(&r2, 4).unwrap();
        assert_eq!(gm.integers().unwrap(), vec![1, 1, 2, 3].into_iter().map(BigInt::from).collect::<Vec<_>>());
        let ga = VarietySpec::ga().orbit_profile(&r2, 4).unwrap();
        assert_eq!(ga.integers().unwrap(), vec![2, 1, 2, 3].into_iter().map(BigInt::from).collect::<Vec<_>>());
        let pt = VarietySpec::point().orbit_profile(&r2, 4).unwrap();
        assert_eq!(pt.integers().unwrap(), vec![1, 0, 0, 0].into_iter().map(BigInt::from).collect::<Vec<_>>());
    }

    #[test]
    fn orbit_round_trip() {
        for v in VarietySpec::builtins() {
            for q in [2, 3, 4, 5] {
                let ring = Ring::numeric(q, 12);
                let prof = v.orbit_profile(&ring, 12).unwrap();
                let counts = v.counts(&ring, 12).unwrap();
                for r in 1..=12u64 {
                    let s = divisors(r).into_iter().fold(Laurent::zero(0), |acc, d| {
                        acc.add(&prof.get(d as usize).scale(&rat(d as i64)))
                    });
                    assert_eq!(s, counts[r as usize - 1]);
                }
                assert!(prof.is_nonnegative().unwrap(), "{v} at q = {q}");
            }
        }
    }

    #[test]
    fn non_integral_orbits_rejected() {
        // q = 1/2 is not a field size: Ñ_1 = 1/2.
        let ring = Ring::new(crate::series::VariableSpec::bare(), Mode::Numeric(num_rational::BigRational::new(1.into(), 2.into())), 3, 8).unwrap();
        let err = VarietySpec::ga().orbit_profile(&ring, 2).unwrap_err();
        assert!(matches!(err, Error::NonIntegral(_)));
    }

    #[test]
    fn zeta_routes_agree() {
        for v in VarietySpec::builtins() {
            for ring in [Ring::symbolic(8, 16), Ring::numeric(2, 8), Ring::numeric(3, 8)] {
                let z = v.zeta_series(&ring).unwrap();
                let f = v.factored_zeta().series(&ring).unwrap();
                assert!(z.compare(&f).unwrap().equal, "{v}");
            }
        }
    }

    #[test]
    fn zeta_of_gm_is_rational() {
        let ring = Ring::symbolic(5, 16);
        let z = VarietySpec::gm().zeta_series(&ring).unwrap();
        // (1 - T)/(1 - qT): coefficient of T^n is q^n - q^{n-1}
        for n in 1..=5 {
            assert_eq!(z.coeff_of_t(n).unwrap(), &Laurent::from_ints(n as i64 - 1, &[-1, 1]));
        }
        let pt = VarietySpec::point().zeta_series(&ring).unwrap();
        assert!(pt.slices().iter().all(|l| l.is_one()));
    }

    #[test]
    fn factored_forms() {
        assert_eq!(VarietySpec::gm().factored_zeta().factors, vec![(1, 1), (0, -1)]);
        assert_eq!(VarietySpec::ga().factored_zeta().factors, vec![(1, 1)]);
        assert_eq!(VarietySpec::point().factored_zeta().factors, vec![(0, 1)]);
    }

    #[test]
    fn gl_orders() {
        assert_eq!(gl_order_poly(1), Laurent::from_ints(0, &[-1, 1]));
        assert_eq!(gl_order_int(2, 2), 6);
        assert_eq!(gl_order_int(3, 2), 168);
        assert_eq!(gl_order_int(2, 3), 48);
        let v = gl_order(3, &Ring::numeric(2, 1)).unwrap();
        assert_eq!(v.scalar().unwrap(), rat(168));
    }

    #[test]
    fn parse_specs() {
        assert_eq!("gm".parse::<VarietySpec>().unwrap(), VarietySpec::gm());
        let p: VarietySpec = "poly:-1,0,1".parse().unwrap();
        assert_eq!(p.coeffs(), &[-1, 0, 1]);
        assert!("torus".parse::<VarietySpec>().is_err());
        assert!("poly:1,x".parse::<VarietySpec>().is_err());
    }
}
