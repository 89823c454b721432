//! Exact truncated series in `R[[T]]` where `R` is a ring of Laurent series
//! in a handful of variables (by convention `q` first when it is tracked).
//!
//! A series stores one [`Laurent`] slice per T-degree up to its T-cap. Each
//! slice carries its own window, so precision follows the actual valuations
//! of each coefficient instead of a single global box.

pub(crate) mod json;
mod laurent;
mod ops;

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use json::SeriesJson;
pub use laurent::{Exps, Laurent};
pub use ops::{Comparison, Mismatch, SliceWindow};

use crate::error::{Error, Result};

/// Default T-cap for pipelines.
pub const DEFAULT_T_CAP: usize = 6;
/// Default number of exponents kept per Laurent variable for infinite expansions.
pub const DEFAULT_WIDTH: i64 = 24;

/// Names of the Laurent variables and of the series variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VariableSpec {
    laurent: Vec<String>,
    series: String,
}

impl VariableSpec {
    pub fn new<S: Into<String>>(laurent: Vec<String>, series: S) -> Result<Self> {
        let series = series.into();
        let mut all: Vec<&String> = laurent.iter().chain(std::iter::once(&series)).collect();
        all.sort();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Invalid("variable names must be distinct".into()));
        }
        if all.iter().any(|s| s.is_empty()) {
            return Err(Error::Invalid("empty variable name".into()));
        }
        Ok(VariableSpec { laurent, series })
    }

    /// `q` tracked symbolically, series variable `T`.
    pub fn q() -> Self {
        VariableSpec { laurent: vec!["q".into()], series: "T".into() }
    }

    /// No Laurent variables at all (numeric mode with no extra gradings).
    pub fn bare() -> Self {
        VariableSpec { laurent: vec![], series: "T".into() }
    }

    pub fn laurent(&self) -> &[String] {
        &self.laurent
    }

    pub fn series(&self) -> &str {
        &self.series
    }

    pub fn nvars(&self) -> usize {
        self.laurent.len()
    }

    pub fn tracks_q(&self) -> bool {
        self.laurent.first().is_some_and(|v| v == "q")
    }
}

/// How `q` enters the coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// `q` is a Laurent variable of the coefficient ring.
    Symbolic,
    /// `q` is specialized to an exact value.
    Numeric(BigRational),
}

impl Mode {
    pub fn numeric(q: i64) -> Self {
        Mode::Numeric(BigRational::from_integer(BigInt::from(q)))
    }

    pub fn q_value(&self) -> Option<&BigRational> {
        match self {
            Mode::Symbolic => None,
            Mode::Numeric(q) => Some(q),
        }
    }
}

/// A monomial `t^m T^d`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonomialKey {
    pub d: usize,
    pub exps: Exps,
}

impl MonomialKey {
    pub fn new(d: usize, exps: Exps) -> Self {
        MonomialKey { d, exps }
    }
}

/// Everything needed to build series that can be combined with each other.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring {
    pub vars: Arc<VariableSpec>,
    pub mode: Mode,
    pub t_cap: usize,
    pub width: i64,
}

impl Ring {
    pub fn new(vars: VariableSpec, mode: Mode, t_cap: usize, width: i64) -> Result<Self> {
        if let Mode::Numeric(_) = mode {
            if vars.tracks_q() {
                return Err(Error::Mode("numeric mode cannot also track q as a variable".into()));
            }
        }
        if width < 1 {
            return Err(Error::Invalid("window width must be positive".into()));
        }
        Ok(Ring { vars: Arc::new(vars), mode, t_cap, width })
    }

    /// Symbolic ring in `q` alone.
    pub fn symbolic(t_cap: usize, width: i64) -> Self {
        Ring::new(VariableSpec::q(), Mode::Symbolic, t_cap, width).unwrap()
    }

    /// Numeric ring at `q`, no Laurent variables.
    pub fn numeric(q: i64, t_cap: usize) -> Self {
        Ring::new(VariableSpec::bare(), Mode::numeric(q), t_cap, DEFAULT_WIDTH).unwrap()
    }

    pub fn nvars(&self) -> usize {
        self.vars.nvars()
    }

    pub fn with_t_cap(&self, t_cap: usize) -> Self {
        Ring { t_cap, ..self.clone() }
    }

    pub fn with_mode(&self, mode: Mode) -> Self {
        Ring { mode, ..self.clone() }
    }

    pub fn zero(&self) -> TruncatedSeries {
        TruncatedSeries {
            ring: self.clone(),
            coeffs: vec![Laurent::zero(self.nvars()); self.t_cap + 1],
        }
    }

    pub fn one(&self) -> TruncatedSeries {
        self.constant(Laurent::one(self.nvars()))
    }

    pub fn constant(&self, c: Laurent) -> TruncatedSeries {
        let mut s = self.zero();
        s.coeffs[0] = c;
        s
    }

    /// `c * t^exps * T^d` (zero if `d` exceeds the T-cap).
    pub fn monomial(&self, d: usize, exps: Exps, c: BigRational) -> TruncatedSeries {
        let mut s = self.zero();
        if d <= self.t_cap {
            s.coeffs[d] = Laurent::monomial(exps, c);
        }
        s
    }

    /// The series with the given T-slices; missing degrees are exact zero and
    /// slices beyond the T-cap are dropped.
    pub fn from_slices(&self, slices: Vec<Laurent>) -> Result<TruncatedSeries> {
        let mut s = self.zero();
        for (d, l) in slices.into_iter().enumerate() {
            if l.nvars() != self.nvars() {
                return Err(Error::Invalid("slice variable count differs from ring".into()));
            }
            if d <= self.t_cap {
                s.coeffs[d] = l;
            }
        }
        Ok(s)
    }

    /// A Laurent coefficient of this ring from integer terms.
    pub fn laurent<I: IntoIterator<Item = (Exps, i64)>>(&self, terms: I) -> Laurent {
        Laurent::from_terms(
            self.nvars(),
            terms.into_iter().map(|(e, c)| (e, BigRational::from_integer(c.into()))),
        )
    }

    /// A polynomial in `q` as a coefficient of this ring: a Laurent polynomial
    /// in symbolic mode, its value in numeric mode.
    pub fn q_poly(&self, poly: &Laurent) -> Result<Laurent> {
        if poly.nvars() != 1 {
            return Err(Error::Invalid("expected a univariate polynomial in q".into()));
        }
        match &self.mode {
            Mode::Symbolic => {
                if !self.vars.tracks_q() {
                    return Err(Error::Mode("symbolic ring does not track q".into()));
                }
                let n = self.nvars();
                Ok(Laurent::from_terms(
                    n,
                    poly.terms().iter().map(|(e, c)| {
                        let mut x = vec![0; n];
                        x[0] = e[0];
                        (x, c.clone())
                    }),
                ))
            }
            Mode::Numeric(q) => {
                let v = poly.eval_first(q)?.scalar()?;
                Ok(Laurent::constant(self.nvars(), v))
            }
        }
    }
}

/// An element of `R[[T]]` known modulo `T^(t_cap + 1)` and up to per-slice
/// Laurent windows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    ring: Ring,
    coeffs: Vec<Laurent>,
}

impl TruncatedSeries {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn t_cap(&self) -> usize {
        self.ring.t_cap
    }

    pub fn width(&self) -> i64 {
        self.ring.width
    }

    pub fn mode(&self) -> &Mode {
        &self.ring.mode
    }

    pub fn vars(&self) -> &VariableSpec {
        &self.ring.vars
    }

    pub fn slices(&self) -> &[Laurent] {
        &self.coeffs
    }

    /// Coefficient of `T^n`. Asking beyond the T-cap is a precision error.
    pub fn coeff_of_t(&self, n: usize) -> Result<&Laurent> {
        self.coeffs.get(n).ok_or_else(|| {
            Error::Precision(format!("T^{n} requested but the series is known only to T^{}", self.t_cap()))
        })
    }

    /// Coefficient of a single monomial `t^exps T^d`.
    pub fn coeff(&self, key: &MonomialKey) -> Result<BigRational> {
        self.coeff_of_t(key.d)?.get(&key.exps)
    }

    /// Terms in canonical order: T-degree, then lexicographic exponents.
    pub fn terms(&self) -> impl Iterator<Item = (MonomialKey, &BigRational)> + '_ {
        self.coeffs.iter().enumerate().flat_map(|(d, l)| {
            l.terms().iter().map(move |(e, c)| (MonomialKey::new(d, e.clone()), c))
        })
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(Laurent::is_integral)
    }

    /// Numeric-mode coefficients as plain rationals (no Laurent variables).
    pub fn scalars(&self) -> Result<Vec<BigRational>> {
        self.coeffs.iter().map(Laurent::scalar).collect()
    }

    pub fn format(&self) -> String {
        let names = self.vars().laurent().to_vec();
        let tv = self.vars().series().to_string();
        let mut parts = vec![];
        for (d, l) in self.coeffs.iter().enumerate() {
            if l.terms().is_empty() {
                continue;
            }
            let c = l.format(&names);
            parts.push(match d {
                0 => format!("({c})"),
                1 => format!("({c})*{tv}"),
                _ => format!("({c})*{tv}^{d}"),
            });
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        format!("{} + O({tv}^{})", parts.join(" + "), self.t_cap() + 1)
    }
}

/// Laurent expansion around `q = 0` of `num / den`, as a series constant in T.
pub fn expand_rational_q(ring: &Ring, num: &Laurent, den: &Laurent) -> Result<TruncatedSeries> {
    if !(ring.mode == Mode::Symbolic && ring.vars.tracks_q()) {
        return Err(Error::Mode("rational expansion needs a symbolic ring tracking q".into()));
    }
    let num = ring.q_poly(num)?;
    let den = ring.q_poly(den)?;
    Ok(ring.constant(Laurent::ratio(&num, &den, ring.width)?))
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

