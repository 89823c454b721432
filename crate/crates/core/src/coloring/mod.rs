//! Coloring data `C = (colors, degree, weight)` and the coloring zeta
//! function `Z_C(X, t, T)` of a polynomial-count variety.
//!
//! Colorings are never materialized point by point. An `F_q`-rational
//! coloring is determined up to the choice of orbits by its type, the
//! multiplicities `m_{d,λ}` of orbits of size `d` colored `λ`, and every
//! computation here works with types or with generating functions.

mod forms;
mod pleth;
mod setups;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::series::{Laurent, Mode, Ring, TruncatedSeries};

pub use forms::{
    coloring_types, direct_enum, direct_enum_limited, direct_enum_series, first_form, forms_agree,
    fourth_form_check, point_log, point_zeta, point_zeta_at, second_form, third_form, Form,
    FormsReport, DIRECT_ENUM_TYPE_LIMIT,
};
pub use pleth::{pleth_log, pleth_log_family, pleth_product, plethystic_tail, PlethFactorization};
pub use setups::binomial_monomial;

/// A color. The degree-0 color is `Natural(0)` or the empty partition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Natural(u32),
    Partition(Partition),
}

impl Color {
    pub fn degree(&self) -> u32 {
        match self {
            Color::Natural(n) => *n,
            Color::Partition(p) => p.size(),
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Color::Natural(n) => write!(f, "{n}"),
            Color::Partition(p) => write!(f, "{p}"),
        }
    }
}

pub type ColorEnumerator = Arc<dyn Fn(u32) -> Vec<Color> + Send + Sync>;

/// `(λ, d, ring) ↦ W(λ)(t^d)`: the weight of color λ on an orbit of size
/// `d`. In numeric mode this is `W(λ)` evaluated at `q^d`.
pub type WeightFn = Arc<dyn Fn(&Color, u32, &Ring) -> Result<Laurent> + Send + Sync>;

/// Coloring data. A setup is plain data, so new ones plug into every form.
#[derive(Clone)]
pub struct ColoringSetup {
    name: String,
    colors: ColorEnumerator,
    weight: WeightFn,
    homogeneous: bool,
}

impl fmt::Debug for ColoringSetup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ColoringSetup")
            .field("name", &self.name)
            .field("homogeneous", &self.homogeneous)
            .finish()
    }
}

impl ColoringSetup {
    pub fn new<S: Into<String>>(name: S, colors: ColorEnumerator, weight: WeightFn, homogeneous: bool) -> Self {
        ColoringSetup { name: name.into(), colors, weight, homogeneous }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    pub fn colors_of_degree(&self, k: u32) -> Vec<Color> {
        (self.colors)(k)
    }

    pub fn weight(&self, color: &Color, d: u32, ring: &Ring) -> Result<Laurent> {
        let w = (self.weight)(color, d, ring)?;
        if w.nvars() != ring.nvars() {
            return Err(Error::Invalid(format!(
                "setup {} produced a weight with {} variables in a ring with {}",
                self.name,
                w.nvars(),
                ring.nvars()
            )));
        }
        Ok(w)
    }

    /// `standard | partition | centralizer | commuting`.
    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "standard" => Ok(setups::standard()),
            "partition" => Ok(setups::partition()),
            "centralizer" => Ok(setups::centralizer()),
            "commuting" => Ok(setups::commuting()),
            other => Err(Error::Invalid(format!("unknown setup {other:?}"))),
        }
    }

    pub fn standard() -> Self {
        setups::standard()
    }

    pub fn partition() -> Self {
        setups::partition()
    }

    pub fn centralizer() -> Self {
        setups::centralizer()
    }

    pub fn commuting() -> Self {
        setups::commuting()
    }

    pub fn builtins() -> Vec<Self> {
        vec![setups::standard(), setups::partition(), setups::centralizer(), setups::commuting()]
    }

    /// Check the coloring-data axioms up to `max_degree`: a unique color of
    /// degree 0 with weight 1, colors listed under their own degree, and
    /// homogeneity of the weights when the setup claims it.
    pub fn validate(&self, ring: &Ring, max_degree: u32) -> Result<()> {
        let zero = self.colors_of_degree(0);
        if zero.len() != 1 {
            return Err(Error::Invalid(format!("{}: need exactly one color of degree 0", self.name)));
        }
        for d in 1..=max_degree.max(1) {
            if !self.weight(&zero[0], d, ring)?.is_one() {
                return Err(Error::Invalid(format!("{}: W(0) must be 1", self.name)));
            }
        }
        for k in 0..=max_degree {
            for c in self.colors_of_degree(k) {
                if c.degree() != k {
                    return Err(Error::Invalid(format!("{}: color {c} listed under degree {k}", self.name)));
                }
                if self.homogeneous {
                    let w = self.weight(&c, 1, ring)?;
                    if !is_homogeneous(&w, ring, k as i64) {
                        return Err(Error::Invalid(format!(
                            "{}: W({c}) is not homogeneous of degree {k}",
                            self.name
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// All terms have total degree `deg` in the graded variables (every Laurent
/// variable except a tracked `q`).
pub fn is_homogeneous(l: &Laurent, ring: &Ring, deg: i64) -> bool {
    let skip = usize::from(ring.mode == Mode::Symbolic && ring.vars.tracks_q());
    l.terms().keys().all(|e| e[skip..].iter().sum::<i64>() == deg)
}

/// Every T-coefficient of `s` is homogeneous of the matching degree.
pub fn series_is_homogeneous(s: &TruncatedSeries) -> bool {
    s.slices().iter().enumerate().all(|(n, l)| is_homogeneous(l, s.ring(), n as i64))
}

/// A coloring type: multiplicities `m_{d,λ}` of orbits of size `d` colored λ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoringType {
    entries: BTreeMap<(u32, Color), u32>,
}

impl ColoringType {
    pub fn new(entries: BTreeMap<(u32, Color), u32>) -> Result<Self> {
        if entries.iter().any(|((d, c), m)| *d == 0 || *m == 0 || c.degree() == 0) {
            return Err(Error::Invalid("type entries need d >= 1, a non-zero color and m >= 1".into()));
        }
        Ok(ColoringType { entries })
    }

    pub fn entries(&self) -> &BTreeMap<(u32, Color), u32> {
        &self.entries
    }

    /// `Σ m_{d,λ} d |λ|`.
    pub fn degree(&self) -> u64 {
        self.entries.iter().map(|((d, c), m)| *m as u64 * *d as u64 * c.degree() as u64).sum()
    }

    /// `m_d = Σ_λ m_{d,λ}`.
    pub fn orbits_of_size(&self, d: u32) -> u32 {
        self.entries.iter().filter(|((e, _), _)| *e == d).map(|(_, m)| m).sum()
    }
}

impl fmt::Display for ColoringType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.entries.iter().map(|((d, c), m)| format!("(d={d}, {c}) x{m}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}
