//! Named identities, each checked exactly and reported as JSON.
//!
//! Symbolic checks compare two expansions in `Z((q))[[T]]` on their common
//! window. Numeric checks compare coefficients at `q` against the finite
//! field oracle.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::coloring::{direct_enum, first_form, forms_agree, second_form, ColoringSetup};
use crate::error::{Error, Result};
use crate::oracle::{Oracle, DEFAULT_BUDGET};
use crate::partitions::{a_lambda, partitions_of};
use crate::series::{
    rat, Comparison, Laurent, Mismatch, Mode, Ring, SliceWindow, TruncatedSeries, VariableSpec,
    DEFAULT_WIDTH,
};
use crate::variety::{gl_order_int, VarietySpec};

/// The identity catalog, in report order.
pub const CATALOG: [&str; 8] =
    ["euler", "conj-gl", "conj-mn", "unipotent", "feit-fine", "burnside", "forms-agree", "centr-gm"];

#[derive(Clone, Debug)]
pub struct VerifyParams {
    pub mode: Mode,
    pub t_max: usize,
    pub q_window: i64,
    pub n_max: usize,
    /// `forms-agree` only; all built-in setups when `None`.
    pub setup: Option<String>,
    /// `forms-agree` only; point, G_a and G_m when `None`.
    pub variety: Option<VarietySpec>,
    pub budget: u128,
}

impl Default for VerifyParams {
    fn default() -> Self {
        VerifyParams {
            mode: Mode::Symbolic,
            t_max: 5,
            q_window: DEFAULT_WIDTH,
            n_max: 3,
            setup: None,
            variety: None,
            budget: DEFAULT_BUDGET,
        }
    }
}

impl VerifyParams {
    fn ring(&self) -> Result<Ring> {
        self.ring_with_t(self.t_max)
    }

    fn ring_with_t(&self, t_cap: usize) -> Result<Ring> {
        let vars = match self.mode {
            Mode::Symbolic => VariableSpec::q(),
            Mode::Numeric(_) => VariableSpec::bare(),
        };
        Ring::new(vars, self.mode.clone(), t_cap, self.q_window)
    }

    fn field_size(&self) -> Result<u64> {
        let q = self.mode.q_value().ok_or_else(|| Error::Mode("needs a numeric q".into()))?;
        q.to_integer()
            .to_u64()
            .filter(|_| q.is_integer())
            .ok_or_else(|| Error::Invalid(format!("q = {q} is not a field size")))
    }

    fn oracle(&self) -> Result<Oracle> {
        Ok(Oracle::of_order(self.field_size()?)?.with_budget(self.budget))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Equal,
    Mismatch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WindowReport {
    /// `"symbolic"` or the value of `q`.
    pub q: String,
    #[serde(rename = "T_cap")]
    pub t_cap: usize,
    /// Per-T-degree q-windows of a symbolic comparison.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub slices: Vec<SliceWindow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub identity: String,
    pub status: Status,
    pub first_mismatch: Option<Mismatch>,
    pub window: WindowReport,
    /// Named sub-checks in the order they ran, with their outcome.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    /// Compared values (left-hand side), as decimal strings.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub values: Vec<String>,
}

impl Report {
    pub fn is_equal(&self) -> bool {
        self.status == Status::Equal
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Accumulates sub-checks into one report; the first mismatch wins.
struct Builder {
    identity: String,
    mode: Mode,
    t_cap: usize,
    first_mismatch: Option<Mismatch>,
    slices: Vec<SliceWindow>,
    checks: Vec<Check>,
}

impl Builder {
    fn new(identity: &str, p: &VerifyParams, t_cap: usize) -> Self {
        Builder {
            identity: identity.into(),
            mode: p.mode.clone(),
            t_cap,
            first_mismatch: None,
            slices: vec![],
            checks: vec![],
        }
    }

    fn series(&mut self, name: &str, cmp: Comparison) -> Result<()> {
        if cmp.vacuous {
            return Err(Error::Precision(format!("{}: {name}: q-window too small to compare", self.identity)));
        }
        let status = if cmp.equal { Status::Equal } else { Status::Mismatch };
        if self.first_mismatch.is_none() {
            self.first_mismatch = cmp.first_mismatch;
        }
        if self.slices.is_empty() {
            self.slices = cmp.window;
        }
        self.checks.push(Check { name: name.into(), status, values: vec![] });
        Ok(())
    }

    /// Compare coefficient lists indexed by `n = first, first + 1, ...`.
    fn values(&mut self, name: &str, first: usize, lhs: &[BigRational], rhs: &[BigRational]) {
        let mut status = Status::Equal;
        for (i, (a, b)) in lhs.iter().zip(rhs).enumerate() {
            if a != b {
                status = Status::Mismatch;
                if self.first_mismatch.is_none() {
                    self.first_mismatch =
                        Some(Mismatch { t: first + i, exps: vec![], lhs: a.to_string(), rhs: b.to_string() });
                }
                break;
            }
        }
        if lhs.len() != rhs.len() {
            status = Status::Mismatch;
        }
        self.checks.push(Check { name: name.into(), status, values: lhs.iter().map(ToString::to_string).collect() });
    }

    fn finish(self) -> Report {
        let status = if self.checks.iter().all(|c| c.status == Status::Equal) {
            Status::Equal
        } else {
            Status::Mismatch
        };
        let q = match &self.mode {
            Mode::Symbolic => "symbolic".into(),
            Mode::Numeric(q) => q.to_string(),
        };
        Report {
            identity: self.identity,
            status,
            first_mismatch: self.first_mismatch,
            window: WindowReport { q, t_cap: self.t_cap, slices: self.slices },
            checks: self.checks,
        }
    }
}

/// `Π_{i=1}^{i_max} Π_{n>=1} (1 - q^{n+shift} T^i)` in `Z((q))[[T]]`, with
/// `shift >= 0`. Factors with `q`-exponent above `m` are left out; every term
/// they would touch has `q`-exponent above `m`, so the result is exact up to
/// `q^m` in each positive T-degree.
pub fn q_product(ring: &Ring, i_max: usize, shift: i64, m: i64) -> Result<TruncatedSeries> {
    if shift < 0 {
        return Err(Error::Invalid("q_product needs a non-negative shift".into()));
    }
    let mut caps = vec![vec![None]];
    caps.extend((1..=ring.t_cap).map(|_| vec![Some(m)]));
    let mut acc = ring.one();
    for i in 1..=i_max.min(ring.t_cap) {
        for a in (1 + shift)..=m {
            let factor = ring.from_slices(linear_factor(ring, i, a))?;
            acc = acc.mul(&factor)?.truncate_windows(&caps);
        }
    }
    Ok(acc.truncate_windows(&caps))
}

/// Slices of `1 - q^a T^i`.
fn linear_factor(ring: &Ring, i: usize, a: i64) -> Vec<Laurent> {
    let mut s = vec![Laurent::zero(ring.nvars()); i + 1];
    s[0] = Laurent::one(ring.nvars());
    s[i] = Laurent::monomial(vec![a], rat(-1));
    s
}

fn largest_cap(s: &TruncatedSeries) -> i64 {
    s.slices().iter().filter_map(|l| l.cap()[0]).max().unwrap_or(0)
}

/// `(q^n - 1)(q^{n-1} - 1)...(q - 1)`.
fn q_factorial(n: usize) -> Laurent {
    (1..=n as i64).fold(Laurent::one(1), |acc, i| {
        acc.mul(&Laurent::from_terms(1, vec![(vec![i], rat(1)), (vec![0], rat(-1))]))
    })
}

fn q_power(k: i64) -> Laurent {
    Laurent::from_ints(k, &[1])
}

fn value_at(poly: &Laurent, q: &BigRational) -> Result<BigRational> {
    poly.eval_first(q)?.scalar()
}

/// `Σ_n q^{n(n+1)/2 + shift·n} T^n / ((q^n - 1)...(q - 1))` in `Z((q))[[T]]`.
fn euler_sum(ring: &Ring, shift: i64) -> Result<TruncatedSeries> {
    let slices = (0..=ring.t_cap)
        .map(|n| {
            let e = (n * (n + 1) / 2) as i64 + shift * n as i64;
            Laurent::ratio(&ring.q_poly(&q_power(e))?, &ring.q_poly(&q_factorial(n))?, ring.width)
        })
        .collect::<Result<Vec<_>>>()?;
    ring.from_slices(slices)
}

fn scalars_from(s: &TruncatedSeries, from: usize) -> Result<Vec<BigRational>> {
    Ok(s.scalars()?[from..].to_vec())
}

fn ints(v: impl IntoIterator<Item = u128>) -> Vec<BigRational> {
    v.into_iter().map(|x| BigRational::from_integer(BigInt::from(x))).collect()
}

fn euler(p: &VerifyParams) -> Result<Report> {
    let mut b = Builder::new("euler", p, p.t_max);
    match &p.mode {
        Mode::Symbolic => {
            let ring = p.ring()?;
            let lhs = euler_sum(&ring, 0)?;
            let rhs = q_product(&ring, 1, 0, largest_cap(&lhs))?;
            b.series("sum = product", lhs.compare(&rhs)?)?;
        }
        Mode::Numeric(q) => {
            // Colorings of G_a with the centralizer weight sum to |M_n|/|G_n|;
            // the bare partition sum is the point case u_n/|G_n|.
            let ring = p.ring_with_t(p.n_max)?;
            let cent = ColoringSetup::centralizer();
            let (mut ga_lhs, mut ga_rhs, mut pt_lhs, mut pt_rhs) = (vec![], vec![], vec![], vec![]);
            for n in 1..=p.n_max {
                let den = value_at(&q_factorial(n), q)?;
                ga_lhs.push(direct_enum(&cent, &VarietySpec::ga(), &ring, n as u32)?.scalar()?);
                ga_rhs.push(value_at(&q_power((n * (n + 1) / 2) as i64), q)? / &den);
                let mut s = BigRational::from_integer(0.into());
                for lambda in partitions_of(n as u32) {
                    s += value_at(&a_lambda(&lambda), q)?.recip();
                }
                pt_lhs.push(s);
                pt_rhs.push(value_at(&q_power((n * (n - 1) / 2) as i64), q)? / &den);
            }
            b.values("sum over colorings of G_a = q^{n(n+1)/2}/[n]!", 1, &ga_lhs, &ga_rhs);
            b.values("sum over partitions of 1/a = q^{n(n-1)/2}/[n]!", 1, &pt_lhs, &pt_rhs);
        }
    }
    Ok(b.finish())
}

/// `Π_n (1 - c T^n)^{e}` for `c` a power of `q` (symbolic or numeric).
fn power_product(ring: &Ring, c_exp: i64, e: i64) -> Result<TruncatedSeries> {
    let c = ring.q_poly(&q_power(c_exp))?;
    let mut acc = ring.one();
    for n in 1..=ring.t_cap {
        let mut s = vec![Laurent::zero(ring.nvars()); n + 1];
        s[0] = Laurent::one(ring.nvars());
        s[n] = c.neg();
        acc = acc.mul(&ring.from_slices(s)?.pow_int(e)?)?;
    }
    Ok(acc)
}

fn conj_gl(p: &VerifyParams) -> Result<Report> {
    let setup = ColoringSetup::partition();
    let x = VarietySpec::gm();
    match &p.mode {
        Mode::Symbolic => {
            let mut b = Builder::new("conj-gl", p, p.t_max);
            let ring = p.ring()?;
            let closed = power_product(&ring, 0, 1)?.mul(&power_product(&ring, 1, -1)?)?;
            b.series("second form = prod (1-T^n)/(1-qT^n)", second_form(&setup, &x, &ring)?.compare(&closed)?)?;
            Ok(b.finish())
        }
        Mode::Numeric(_) => {
            let mut b = Builder::new("conj-gl", p, p.n_max);
            let ring = p.ring_with_t(p.n_max)?;
            let lhs = scalars_from(&second_form(&setup, &x, &ring)?, 1)?;
            let o = p.oracle()?;
            let rhs = ints((1..=p.n_max).map(|n| o.count_classes_gl(n)).collect::<Result<Vec<_>>>()?);
            b.values("second form vs GL_n class count", 1, &lhs, &rhs);
            Ok(b.finish())
        }
    }
}

fn conj_mn(p: &VerifyParams) -> Result<Report> {
    let setup = ColoringSetup::partition();
    let x = VarietySpec::ga();
    match &p.mode {
        Mode::Symbolic => {
            let mut b = Builder::new("conj-mn", p, p.t_max);
            let ring = p.ring()?;
            let closed = power_product(&ring, 1, -1)?;
            b.series("second form = prod (1-qT^n)^-1", second_form(&setup, &x, &ring)?.compare(&closed)?)?;
            Ok(b.finish())
        }
        Mode::Numeric(_) => {
            let mut b = Builder::new("conj-mn", p, p.n_max);
            let ring = p.ring_with_t(p.n_max)?;
            let lhs = scalars_from(&power_product(&ring, 1, -1)?, 1)?;
            let o = p.oracle()?;
            let rhs = ints((1..=p.n_max).map(|n| o.count_classes_mn(n)).collect::<Result<Vec<_>>>()?);
            b.values("prod (1-qT^n)^-1 vs M_n class count", 1, &lhs, &rhs);
            b.values("second form vs M_n class count", 1, &scalars_from(&second_form(&setup, &x, &ring)?, 1)?, &rhs);
            Ok(b.finish())
        }
    }
}

fn unipotent(p: &VerifyParams) -> Result<Report> {
    let cent = ColoringSetup::centralizer();
    match &p.mode {
        Mode::Symbolic => {
            // u_n / |G_n| are the coefficients of Euler's sum at T/q.
            let mut b = Builder::new("unipotent", p, p.t_max);
            let ring = p.ring()?;
            let lhs = first_form(&cent, &VarietySpec::point(), &ring)?;
            b.series("point zeta = Euler sum at T/q", lhs.compare(&euler_sum(&ring, -1)?)?)?;
            Ok(b.finish())
        }
        Mode::Numeric(_) => {
            let mut b = Builder::new("unipotent", p, p.n_max);
            let q = p.field_size()?;
            let o = p.oracle()?;
            let counts = ints((1..=p.n_max).map(|n| o.count_unipotent(n)).collect::<Result<Vec<_>>>()?);
            let closed = ints((1..=p.n_max).map(|n| (q as u128).pow((n * n - n) as u32)));
            b.values("oracle u_n = q^{n^2-n}", 1, &counts, &closed);
            let ring = p.ring_with_t(p.n_max)?;
            let zeta = scalars_from(&first_form(&cent, &VarietySpec::point(), &ring)?, 1)?;
            let from_zeta: Vec<BigRational> = zeta
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(gl_order_int(i as u32 + 1, q))))
                .collect();
            b.values("|G_n| [T^n] Z_C(point) = u_n", 1, &from_zeta, &counts);
            Ok(b.finish())
        }
    }
}

fn feit_fine(p: &VerifyParams) -> Result<Report> {
    let setup = ColoringSetup::commuting();
    let x = VarietySpec::ga();
    match &p.mode {
        Mode::Symbolic => {
            let mut b = Builder::new("feit-fine", p, p.t_max);
            let ring = p.ring()?;
            let lhs = first_form(&setup, &x, &ring)?;
            let rhs = q_product(&ring, ring.t_cap, 1, largest_cap(&lhs))?;
            b.series("first form = prod (1-q^{n+1}T^i)", lhs.compare(&rhs)?)?;
            Ok(b.finish())
        }
        Mode::Numeric(_) => {
            let mut b = Builder::new("feit-fine", p, p.n_max);
            let q = p.field_size()?;
            let ring = p.ring_with_t(p.n_max)?;
            let zeta = scalars_from(&first_form(&setup, &x, &ring)?, 1)?;
            let lhs: Vec<BigRational> = zeta
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(gl_order_int(i as u32 + 1, q))))
                .collect();
            let o = p.oracle()?;
            let rhs = ints((1..=p.n_max).map(|n| o.gamma(n)).collect::<Result<Vec<_>>>()?);
            b.values("|G_n| [T^n] first form vs gamma_n", 1, &lhs, &rhs);
            Ok(b.finish())
        }
    }
}

fn burnside(p: &VerifyParams) -> Result<Report> {
    if p.mode == Mode::Symbolic {
        return Err(Error::Mode("burnside compares oracle counts; give a numeric q".into()));
    }
    let mut b = Builder::new("burnside", p, p.n_max);
    let q = p.field_size()?;
    let o = p.oracle()?;
    let mut lhs = vec![];
    let mut rhs = vec![];
    let mut other_side = vec![];
    for n in 1..=p.n_max {
        lhs.push(o.gamma_prime(n)?);
        rhs.push(gl_order_int(n as u32, q) * o.count_classes_mn(n)?);
        other_side.push(o.gamma_prime_by_columns(n)?);
    }
    b.values("gamma'_n = |G_n| #classes(M_n)", 1, &ints(lhs.clone()), &ints(rhs));
    b.values("gamma'_n counted from both factors", 1, &ints(lhs), &ints(other_side));
    Ok(b.finish())
}

fn forms_agree_report(p: &VerifyParams) -> Result<Report> {
    let ring = p.ring()?;
    let setups = match &p.setup {
        Some(name) => vec![ColoringSetup::from_name(name)?],
        None => ColoringSetup::builtins(),
    };
    let varieties = match &p.variety {
        Some(x) => vec![x.clone()],
        None => VarietySpec::builtins().to_vec(),
    };
    let mut b = Builder::new("forms-agree", p, p.t_max);
    for setup in &setups {
        for x in &varieties {
            let report = forms_agree(setup, x, &ring)?;
            for (form, _, cmp) in report.others {
                b.series(&format!("{} on {x}: first = {form}", setup.name()), cmp)?;
            }
            if let Some(cmp) = report.fourth {
                b.series(&format!("{} on {x}: fourth form", setup.name()), cmp)?;
            }
        }
    }
    Ok(b.finish())
}

fn centr_gm(p: &VerifyParams) -> Result<Report> {
    let mut b = Builder::new("centr-gm", p, p.t_max);
    let ring = p.ring()?;
    let setup = ColoringSetup::centralizer();
    let x = VarietySpec::gm();
    let geometric = ring.from_slices(vec![Laurent::one(ring.nvars()); ring.t_cap + 1])?;
    b.series("first form = 1/(1-T)", first_form(&setup, &x, &ring)?.compare(&geometric)?)?;
    let direct = crate::coloring::direct_enum_series(&setup, &x, &ring)?;
    b.series("type enumeration = 1/(1-T)", direct.compare(&geometric)?)?;
    Ok(b.finish())
}

/// Run one identity from the catalog.
pub fn verify(identity: &str, p: &VerifyParams) -> Result<Report> {
    if p.t_max == 0 || p.n_max == 0 || p.q_window < 1 {
        return Err(Error::Invalid("tmax, nmax and qwindow must be positive".into()));
    }
    match identity {
        "euler" => euler(p),
        "conj-gl" => conj_gl(p),
        "conj-mn" => conj_mn(p),
        "unipotent" => unipotent(p),
        "feit-fine" => feit_fine(p),
        "burnside" => burnside(p),
        "forms-agree" => forms_agree_report(p),
        "centr-gm" => centr_gm(p),
        other => Err(Error::Invalid(format!("unknown identity {other:?}; known: {}", CATALOG.join(", ")))),
    }
}

/// Run several identities in parallel; results keep the order given.
pub fn verify_many(identities: &[&str], p: &VerifyParams) -> Vec<Result<Report>> {
    identities.par_iter().map(|id| verify(id, p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_product_small() {
        // (1 - qT)(1 - q^2 T) ... : T coefficient -(q + q^2 + ...), T^2 starts at q^3
        let ring = Ring::symbolic(2, 10);
        let p = q_product(&ring, 1, 0, 6).unwrap();
        let t1 = p.coeff_of_t(1).unwrap();
        for k in 1..=6 {
            assert_eq!(t1.get(&[k]).unwrap(), rat(-1));
        }
        assert!(t1.get(&[7]).is_err());
        let t2 = p.coeff_of_t(2).unwrap();
        assert_eq!(t2.get(&[3]).unwrap(), rat(1));
        assert_eq!(t2.get(&[4]).unwrap(), rat(1));
        assert_eq!(t2.get(&[5]).unwrap(), rat(2));
    }

    #[test]
    fn q_factorial_values() {
        assert_eq!(value_at(&q_factorial(3), &rat(2)).unwrap(), rat(21));
        assert!(q_factorial(0).is_one());
    }

    #[test]
    fn unknown_identity_is_an_error() {
        assert!(verify("nope", &VerifyParams::default()).is_err());
        let p = VerifyParams { mode: Mode::Symbolic, ..Default::default() };
        assert!(matches!(verify("burnside", &p), Err(Error::Mode(_))));
    }
}
