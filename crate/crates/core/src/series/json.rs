use std::collections::BTreeMap;
use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{Laurent, Mode, Ring, TruncatedSeries, VariableSpec};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub variables: Vec<String>,
    pub series_variable: String,
    /// `"symbolic"` or the exact value of q.
    pub q: String,
    #[serde(rename = "T_cap")]
    pub t_cap: usize,
    pub window: WindowJson,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowJson {
    pub width: i64,
    pub slices: Vec<SliceJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceJson {
    #[serde(rename = "T")]
    pub t: usize,
    pub floor: Vec<i64>,
    pub cap: Vec<Option<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    #[serde(rename = "T")]
    pub t: usize,
    pub exps: Vec<i64>,
    pub coeff: String,
}

impl TruncatedSeries {
    pub fn to_json(&self) -> SeriesJson {
        let q = match self.mode() {
            Mode::Symbolic => "symbolic".to_string(),
            Mode::Numeric(q) => q.to_string(),
        };
        SeriesJson {
            variables: self.vars().laurent().to_vec(),
            series_variable: self.vars().series().to_string(),
            q,
            t_cap: self.t_cap(),
            window: WindowJson {
                width: self.width(),
                slices: self
                    .slices()
                    .iter()
                    .enumerate()
                    .map(|(t, l)| SliceJson { t, floor: l.floor().to_vec(), cap: l.cap().to_vec() })
                    .collect(),
            },
            terms: self
                .terms()
                .map(|(k, c)| TermJson { t: k.d, exps: k.exps, coeff: c.to_string() })
                .collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("series serialization")
    }

    pub fn from_json(j: &SeriesJson) -> Result<Self> {
        let vars = VariableSpec::new(j.variables.clone(), j.series_variable.clone())?;
        let mode = if j.q == "symbolic" {
            Mode::Symbolic
        } else {
            Mode::Numeric(parse_rational(&j.q)?)
        };
        let ring = Ring::new(vars, mode, j.t_cap, j.window.width)?;
        if j.window.slices.len() != j.t_cap + 1 {
            return Err(Error::Invalid("one window entry per T-degree expected".into()));
        }
        let mut terms: Vec<BTreeMap<Vec<i64>, BigRational>> = vec![BTreeMap::new(); j.t_cap + 1];
        for t in &j.terms {
            let slot = terms
                .get_mut(t.t)
                .ok_or_else(|| Error::Invalid(format!("term at T^{} beyond T_cap", t.t)))?;
            if slot.insert(t.exps.clone(), parse_rational(&t.coeff)?).is_some() {
                return Err(Error::Invalid("duplicate term".into()));
            }
        }
        let mut slices = Vec::with_capacity(j.t_cap + 1);
        for (w, tm) in j.window.slices.iter().zip(terms) {
            if w.floor.len() != ring.nvars() || w.cap.len() != ring.nvars() {
                return Err(Error::Invalid("window entry has the wrong number of variables".into()));
            }
            slices.push(Laurent::with_window(tm, w.floor.clone(), w.cap.clone())?);
        }
        ring.from_slices(slices)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: SeriesJson = serde_json::from_str(s).map_err(|e| Error::Invalid(e.to_string()))?;
        Self::from_json(&j)
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational> {
    BigRational::from_str(s.trim()).map_err(|_| Error::Invalid(format!("not a rational number: {s:?}")))
}
