//! The coloring zeta function and its four product formulas, plus the
//! type-by-type enumeration they are all checked against.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use super::pleth::{pleth_log, pleth_log_family, plethystic_tail, PlethFactorization};
use super::setups::binomial_monomial;
use super::{Color, ColoringSetup, ColoringType};
use crate::error::{Error, Result};
use crate::series::{rat, Comparison, Laurent, Mode, MonomialKey, Ring, TruncatedSeries};
use crate::variety::VarietySpec;

/// Largest number of coloring types `direct_enum` will visit for one degree.
pub const DIRECT_ENUM_TYPE_LIMIT: usize = 200_000;

/// `Z_C(•, T) = Σ_λ W(λ) T^{|λ|}`.
pub fn point_zeta(setup: &ColoringSetup, ring: &Ring) -> Result<TruncatedSeries> {
    point_zeta_at(setup, ring, 1)
}

/// `Σ_λ W(λ)(t^d) T^{|λ|}`; in numeric mode the weights are taken at `q^d`.
pub fn point_zeta_at(setup: &ColoringSetup, ring: &Ring, d: u32) -> Result<TruncatedSeries> {
    let nv = ring.nvars();
    let mut slices = vec![Laurent::one(nv)];
    for k in 1..=ring.t_cap as u32 {
        let mut acc = Laurent::zero(nv);
        for c in setup.colors_of_degree(k) {
            acc = acc.add(&setup.weight(&c, d, ring)?);
        }
        slices.push(acc);
    }
    ring.from_slices(slices)
}

fn t_power(ring: &Ring, d: usize) -> MonomialKey {
    MonomialKey::new(d, vec![0; ring.nvars()])
}

fn to_i64(v: &BigRational) -> Result<i64> {
    if !v.is_integer() {
        return Err(Error::NonIntegral(format!("{v}")));
    }
    v.to_integer()
        .to_i64()
        .ok_or_else(|| Error::Invalid(format!("exponent {v} does not fit in 64 bits")))
}

/// `Z_C(X) = Π_d Z_C(•, t^d, T^d)^{Ñ_d}`.
pub fn first_form(setup: &ColoringSetup, variety: &VarietySpec, ring: &Ring) -> Result<TruncatedSeries> {
    let profile = variety.orbit_profile(ring, ring.t_cap.max(1))?;
    let mut acc = ring.one();
    for d in 1..=ring.t_cap {
        let n_d = profile.get(d);
        if n_d.is_exact_zero() {
            continue;
        }
        let z = point_zeta_at(setup, ring, d as u32)?.subst_t_monomial(&t_power(ring, d))?;
        let factor = match ring.mode {
            Mode::Symbolic => z.pow_laurent(n_d)?,
            Mode::Numeric(_) => z.pow_int(to_i64(&n_d.constant_value()?)?)?,
        };
        acc = acc.mul(&factor)?;
    }
    Ok(acc)
}

/// Plethystic logarithm of the point zeta function. Symbolic rings take it
/// directly; numeric rings go through the Adams images `ψ_j Z_C(•)`, which
/// live at `q^j` and are rebuilt from the weights.
pub fn point_log(setup: &ColoringSetup, ring: &Ring) -> Result<PlethFactorization> {
    match ring.mode {
        Mode::Symbolic => pleth_log(&point_zeta(setup, ring)?),
        Mode::Numeric(_) => {
            let images = (1..=ring.t_cap.max(1))
                .map(|j| point_zeta_at(setup, ring, j as u32)?.subst_t_monomial(&t_power(ring, j)))
                .collect::<Result<Vec<_>>>()?;
            pleth_log_family(&images)
        }
    }
}

/// `Π_k exp(c_k ψ_k(Log))` with `c_k = coeff(k) / k`, numeric mode.
fn numeric_exp<F>(f: &PlethFactorization, coeff: F) -> Result<TruncatedSeries>
where
    F: Fn(usize) -> Result<Laurent>,
{
    let ring = f.ring();
    let mut sum = ring.zero();
    for k in 1..=ring.t_cap.max(1) {
        let c = coeff(k)?.scale(&rat(k as i64).recip());
        sum = sum.add(&f.image(k as u32)?.mul_laurent(&c))?;
    }
    sum.exp()
}

/// `Z_C(X) = Π_{d,m} Z(X, t^m T^d)^{v_{d,m}}`.
///
/// Symbolic mode multiplies the finitely many known factors and then a
/// precision tail standing for the exponents outside the window; this needs
/// integral `v`. Numeric mode sums `N_r/r ψ_r(Log)` instead, which is the
/// logarithm of the same product.
pub fn second_form(setup: &ColoringSetup, variety: &VarietySpec, ring: &Ring) -> Result<TruncatedSeries> {
    let f = point_log(setup, ring)?;
    let counts = variety.counts(ring, ring.t_cap.max(1))?;
    match ring.mode {
        Mode::Symbolic => {
            f.require_integral()?;
            let z = variety.zeta_series(ring)?;
            let mut acc = ring.one();
            for (key, v) in f.exponents() {
                acc = acc.mul(&z.subst_t_monomial(&key)?.pow_int(to_i64(v)?)?)?;
            }
            let tail = plethystic_tail(f.series(), |k| {
                Ok(counts[k as usize - 1].scale(&rat(k as i64).recip()))
            })?;
            acc.mul(&tail)
        }
        Mode::Numeric(_) => numeric_exp(&f, |k| Ok(counts[k - 1].clone())),
    }
}

/// `Z_C(X) = Π_i Z_C(x_i, t, T)^{n_i}` over the roots `x_i = q^{j_i}` of the
/// factored zeta function, with `Z_C(u, t, T) = Π (1 - u t^m T^d)^{-v_{d,m}}`.
pub fn third_form(setup: &ColoringSetup, variety: &VarietySpec, ring: &Ring) -> Result<TruncatedSeries> {
    let f = point_log(setup, ring)?;
    let factored = variety.factored_zeta();
    let mut acc = ring.one();
    match &ring.mode {
        Mode::Symbolic => {
            f.require_integral()?;
            let one = BigRational::one();
            for &(j, n_i) in &factored.factors {
                let mut z_u = ring.one();
                for (key, v) in f.exponents() {
                    let mut exps = key.exps.clone();
                    exps[0] += j as i64;
                    z_u = z_u.mul(&binomial_monomial(ring, key.d, &exps, &one, v))?;
                }
                acc = acc.mul(&z_u.pow_int(n_i)?)?;
            }
            let counts = variety.counts(ring, ring.t_cap.max(1))?;
            let tail = plethystic_tail(f.series(), |k| {
                Ok(counts[k as usize - 1].scale(&rat(k as i64).recip()))
            })?;
            acc.mul(&tail)
        }
        Mode::Numeric(q) => {
            for &(j, n_i) in &factored.factors {
                let u = num_traits::pow(q.clone(), j as usize);
                let z_u = numeric_exp(&f, |k| {
                    Ok(Laurent::constant(ring.nvars(), num_traits::pow(u.clone(), k)))
                })?;
                acc = acc.mul(&z_u.pow_int(n_i)?)?;
            }
            Ok(acc)
        }
    }
}

/// `Log Z_C(X) = N_X(q) Log Z_C(•)`, compared on the common window.
/// A window with nothing left to compare is a precision error.
pub fn fourth_form_check(setup: &ColoringSetup, variety: &VarietySpec, ring: &Ring) -> Result<Comparison> {
    if ring.mode != Mode::Symbolic {
        return Err(Error::Mode("the fourth form multiplies Log by the polynomial N_X(q); it needs symbolic q".into()));
    }
    let lhs = pleth_log(&first_form(setup, variety, ring)?)?;
    let rhs = pleth_log(&point_zeta(setup, ring)?)?.series().mul_laurent(&variety.count_in(ring)?);
    let cmp = lhs.series().compare(&rhs)?;
    if cmp.vacuous {
        return Err(Error::Precision(format!(
            "fourth form for {} on {}: window too small to compare",
            setup.name(),
            variety
        )));
    }
    Ok(cmp)
}

/// All coloring types of degree `n`, failing once more than `limit` exist.
pub fn coloring_types(setup: &ColoringSetup, n: u32, limit: usize) -> Result<Vec<ColoringType>> {
    let mut atoms = vec![];
    for d in 1..=n {
        for k in 1..=n / d {
            for c in setup.colors_of_degree(k) {
                atoms.push((d, c));
            }
        }
    }
    let mut out = vec![];
    let mut cur = BTreeMap::new();
    types_rec(&atoms, 0, n, &mut cur, &mut out, limit)?;
    out.into_iter().map(ColoringType::new).collect()
}

fn types_rec(
    atoms: &[(u32, Color)],
    i: usize,
    rem: u32,
    cur: &mut BTreeMap<(u32, Color), u32>,
    out: &mut Vec<BTreeMap<(u32, Color), u32>>,
    limit: usize,
) -> Result<()> {
    if rem == 0 {
        if out.len() >= limit {
            return Err(Error::Budget { needed: limit as u128 + 1, budget: limit as u128 });
        }
        out.push(cur.clone());
        return Ok(());
    }
    if i == atoms.len() {
        return Ok(());
    }
    let (d, c) = &atoms[i];
    let size = d * c.degree();
    types_rec(atoms, i + 1, rem, cur, out, limit)?;
    let mut m = 1;
    while m * size <= rem {
        cur.insert((*d, c.clone()), m);
        types_rec(atoms, i + 1, rem - m * size, cur, out, limit)?;
        m += 1;
    }
    cur.remove(&(*d, c.clone()));
    Ok(())
}

/// `x (x - 1) ... (x - m + 1)`.
fn falling(x: &Laurent, m: u32) -> Laurent {
    let nv = x.nvars();
    (0..m).fold(Laurent::one(nv), |acc, i| acc.mul(&x.sub(&Laurent::constant(nv, rat(i as i64)))))
}

/// `[T^n] Z_C(X)` by summing over coloring types: a type with multiplicities
/// `m_{d,λ}` is realized in `Π_d binom(Ñ_d, m_d) m_d! / Π_λ m_{d,λ}!` ways,
/// each of weight `Π W(λ)(t^d)^{m_{d,λ}}`.
pub fn direct_enum(setup: &ColoringSetup, variety: &VarietySpec, ring: &Ring, n: u32) -> Result<Laurent> {
    direct_enum_limited(setup, variety, ring, n, DIRECT_ENUM_TYPE_LIMIT)
}

pub fn direct_enum_limited(
    setup: &ColoringSetup,
    variety: &VarietySpec,
    ring: &Ring,
    n: u32,
    limit: usize,
) -> Result<Laurent> {
    let nv = ring.nvars();
    if n == 0 {
        return Ok(Laurent::one(nv));
    }
    let profile = variety.orbit_profile(ring, n as usize)?;
    let mut weights: BTreeMap<(u32, Color), Laurent> = BTreeMap::new();
    let mut total = Laurent::zero(nv);
    for ty in coloring_types(setup, n, limit)? {
        let mut orbits: BTreeMap<u32, u32> = BTreeMap::new();
        let mut term = Laurent::one(nv);
        let mut denom = BigRational::one();
        for ((d, c), m) in ty.entries() {
            *orbits.entry(*d).or_insert(0) += m;
            if let std::collections::btree_map::Entry::Vacant(e) = weights.entry((*d, c.clone())) {
                e.insert(setup.weight(c, *d, ring)?);
            }
            term = term.mul(&weights[&(*d, c.clone())].pow(*m));
            denom *= (1..=*m as i64).map(rat).product::<BigRational>();
        }
        for (d, m) in orbits {
            term = term.mul(&falling(profile.get(d as usize), m));
        }
        total = total.add(&term.scale(&denom.recip()));
    }
    Ok(total)
}

/// `direct_enum` for every degree up to the ring's T-cap.
pub fn direct_enum_series(setup: &ColoringSetup, variety: &VarietySpec, ring: &Ring) -> Result<TruncatedSeries> {
    let slices = (0..=ring.t_cap as u32)
        .map(|n| direct_enum(setup, variety, ring, n))
        .collect::<Result<Vec<_>>>()?;
    ring.from_slices(slices)
}

/// Which computation of `Z_C(X)` to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    First,
    Second,
    Third,
    Direct,
}

impl Form {
    pub const ALL: [Form; 4] = [Form::First, Form::Second, Form::Third, Form::Direct];

    pub fn compute(self, setup: &ColoringSetup, variety: &VarietySpec, ring: &Ring) -> Result<TruncatedSeries> {
        match self {
            Form::First => first_form(setup, variety, ring),
            Form::Second => second_form(setup, variety, ring),
            Form::Third => third_form(setup, variety, ring),
            Form::Direct => direct_enum_series(setup, variety, ring),
        }
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Form::First => "first",
            Form::Second => "second",
            Form::Third => "third",
            Form::Direct => "direct",
        };
        f.write_str(s)
    }
}

impl FromStr for Form {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "first" => Ok(Form::First),
            "second" => Ok(Form::Second),
            "third" => Ok(Form::Third),
            "direct" => Ok(Form::Direct),
            other => Err(Error::Invalid(format!("unknown form {other:?}; expected first|second|third|direct"))),
        }
    }
}

/// Every form of one `(setup, X, ring)` case, compared against the first.
#[derive(Clone, Debug)]
pub struct FormsReport {
    pub first: TruncatedSeries,
    /// `(form, its series, comparison with the first form)`.
    pub others: Vec<(Form, TruncatedSeries, Comparison)>,
    /// Symbolic rings only.
    pub fourth: Option<Comparison>,
}

impl FormsReport {
    pub fn all_equal(&self) -> bool {
        self.others.iter().all(|(_, _, c)| c.equal && !c.vacuous)
            && self.fourth.as_ref().is_none_or(|c| c.equal && !c.vacuous)
    }

    /// First failing comparison, if any.
    pub fn first_failure(&self) -> Option<(String, &Comparison)> {
        for (form, _, c) in &self.others {
            if !c.equal || c.vacuous {
                return Some((format!("first vs {form}"), c));
            }
        }
        match &self.fourth {
            Some(c) if !c.equal || c.vacuous => Some(("fourth".into(), c)),
            _ => None,
        }
    }
}

pub fn forms_agree(setup: &ColoringSetup, variety: &VarietySpec, ring: &Ring) -> Result<FormsReport> {
    let first = first_form(setup, variety, ring)?;
    let mut others = vec![];
    for form in [Form::Second, Form::Third, Form::Direct] {
        let s = form.compute(setup, variety, ring)?;
        let c = first.compare(&s)?;
        others.push((form, s, c));
    }
    let fourth = match ring.mode {
        Mode::Symbolic => Some(fourth_form_check(setup, variety, ring)?),
        Mode::Numeric(_) => None,
    };
    Ok(FormsReport { first, others, fourth })
}
