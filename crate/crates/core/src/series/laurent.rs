//! Laurent coefficients: one T-degree slice of a truncated series.
//!
//! A slice is a finite set of exact rational terms together with a box
//! window: for each Laurent variable a declared valuation floor and an
//! optional exponent cap. Every monomial whose exponents lie inside the box
//! is known exactly; monomials above a cap are unknown. A `None` cap means
//! the slice is exact in that variable.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Exps = Vec<i64>;

fn min_opt(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (Some(x), None) | (None, Some(x)) => Some(x),
        (None, None) => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Laurent {
    terms: BTreeMap<Exps, BigRational>,
    floor: Vec<i64>,
    cap: Vec<Option<i64>>,
}

impl Laurent {
    pub fn zero(nvars: usize) -> Self {
        Laurent { terms: BTreeMap::new(), floor: vec![0; nvars], cap: vec![None; nvars] }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn monomial(exps: Exps, c: BigRational) -> Self {
        let n = exps.len();
        let mut s = Self::zero(n);
        s.terms.insert(exps, c);
        s.normalize();
        s
    }

    /// Exact slice from a term list; repeated keys are summed.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exps, BigRational)>,
    {
        let mut s = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            *s.terms.entry(e).or_insert_with(BigRational::zero) += c;
        }
        s.normalize();
        s
    }

    /// Univariate exact polynomial from integer coefficients, low degree first,
    /// starting at exponent `low`.
    pub fn from_ints(low: i64, coeffs: &[i64]) -> Self {
        Self::from_terms(
            1,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (vec![low + i as i64], BigRational::from_integer(BigInt::from(*c)))),
        )
    }

    /// Slice with an explicit window. Terms outside the caps are discarded.
    pub fn with_window(
        terms: BTreeMap<Exps, BigRational>,
        floor: Vec<i64>,
        cap: Vec<Option<i64>>,
    ) -> Result<Self> {
        if floor.len() != cap.len() {
            return Err(Error::Invalid("floor and cap lengths differ".into()));
        }
        for e in terms.keys() {
            if e.len() != floor.len() {
                return Err(Error::Invalid("exponent vector length mismatch".into()));
            }
            if e.iter().zip(&floor).any(|(x, f)| x < f) {
                return Err(Error::Invalid(format!("term {e:?} lies below the declared floor")));
            }
        }
        let mut s = Laurent { terms, floor, cap };
        s.normalize();
        Ok(s)
    }

    /// A slice about which nothing is known except its box.
    pub fn unknown(floor: Vec<i64>, cap: Vec<Option<i64>>) -> Self {
        let mut s = Laurent { terms: BTreeMap::new(), floor, cap };
        s.normalize();
        s
    }

    pub fn nvars(&self) -> usize {
        self.floor.len()
    }

    pub fn terms(&self) -> &BTreeMap<Exps, BigRational> {
        &self.terms
    }

    pub fn floor(&self) -> &[i64] {
        &self.floor
    }

    pub fn cap(&self) -> &[Option<i64>] {
        &self.cap
    }

    pub fn is_exact(&self) -> bool {
        self.cap.iter().all(Option::is_none)
    }

    pub fn is_exact_zero(&self) -> bool {
        self.terms.is_empty() && self.is_exact()
    }

    pub fn is_one(&self) -> bool {
        self.is_exact()
            && self.terms.len() == 1
            && self.terms.get(&vec![0; self.nvars()]).is_some_and(|c| c.is_one())
    }

    /// The window has at least one exponent in every variable.
    pub fn window_nonempty(&self) -> bool {
        self.cap.iter().zip(&self.floor).all(|(c, f)| c.is_none_or(|c| c >= *f))
    }

    pub fn in_window(&self, e: &[i64]) -> bool {
        e.iter().zip(&self.cap).all(|(x, c)| c.is_none_or(|c| *x <= c))
    }

    /// Coefficient of a monomial; asking above a cap is an error, never zero.
    pub fn get(&self, e: &[i64]) -> Result<BigRational> {
        if e.len() != self.nvars() {
            return Err(Error::Invalid("exponent vector length mismatch".into()));
        }
        if !self.in_window(e) {
            return Err(Error::Precision(format!(
                "monomial {e:?} lies outside the known window (caps {:?})",
                self.cap
            )));
        }
        Ok(self.terms.get(e).cloned().unwrap_or_else(BigRational::zero))
    }

    /// The single coefficient of a slice with no Laurent variables.
    pub fn scalar(&self) -> Result<BigRational> {
        if self.nvars() != 0 {
            return Err(Error::Invalid("slice has Laurent variables".into()));
        }
        self.get(&[])
    }

    /// The value of an exact slice that is constant in every variable.
    pub fn constant_value(&self) -> Result<BigRational> {
        let zero = vec![0; self.nvars()];
        if !self.is_exact() || self.terms.keys().any(|e| *e != zero) {
            return Err(Error::Invalid("slice is not an exact constant".into()));
        }
        self.get(&zero)
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    fn normalize(&mut self) {
        let cap = &self.cap;
        self.terms.retain(|e, c| {
            !c.is_zero() && e.iter().zip(cap).all(|(x, cp)| cp.is_none_or(|cp| *x <= cp))
        });
        let n = self.nvars();
        if self.is_exact() {
            for k in 0..n {
                self.floor[k] = self.terms.keys().map(|e| e[k]).min().unwrap_or(0);
            }
        }
    }

    /// Floors tightened by what is known: with a single capped variable the
    /// unknown region is a half-space in that variable, so every term lies at
    /// or above the lowest known term, or above the cap. Products use these.
    pub fn effective_floor(&self) -> Vec<i64> {
        let mut floor = self.floor.clone();
        let capped: Vec<usize> = (0..self.nvars()).filter(|&k| self.cap[k].is_some()).collect();
        if let [k] = capped[..] {
            let c = self.cap[k].unwrap();
            let lo = self.terms.keys().map(|e| e[k]).min().unwrap_or(c + 1).min(c + 1);
            floor[k] = floor[k].max(lo);
        }
        floor
    }

    fn check_nvars(&self, other: &Self) {
        assert_eq!(self.nvars(), other.nvars(), "Laurent variable count mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_nvars(other);
        if other.is_exact_zero() {
            return self.clone();
        }
        if self.is_exact_zero() {
            return other.clone();
        }
        let floor = self.floor.iter().zip(&other.floor).map(|(a, b)| *a.min(b)).collect();
        let cap = self.cap.iter().zip(&other.cap).map(|(a, b)| min_opt(*a, *b)).collect();
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            *terms.entry(e.clone()).or_insert_with(BigRational::zero) += c;
        }
        let mut s = Laurent { terms, floor, cap };
        s.normalize();
        s
    }

    pub fn neg(&self) -> Self {
        let mut s = self.clone();
        for c in s.terms.values_mut() {
            *c = -c.clone();
        }
        s
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        let mut s = self.clone();
        for c in s.terms.values_mut() {
            *c *= k;
        }
        s.normalize();
        s
    }

    /// Product with the precision min-rule applied per variable.
    pub fn mul(&self, other: &Self) -> Self {
        self.check_nvars(other);
        let n = self.nvars();
        if self.is_exact_zero() || other.is_exact_zero() {
            return Self::zero(n);
        }
        let floor: Vec<i64> = (0..n).map(|k| self.floor[k] + other.floor[k]).collect();
        let (fa, fb) = (self.effective_floor(), other.effective_floor());
        let cap: Vec<Option<i64>> = (0..n)
            .map(|k| {
                min_opt(
                    self.cap[k].map(|c| c + fb[k]),
                    other.cap[k].map(|c| c + fa[k]),
                )
            })
            .collect();
        let mut terms: BTreeMap<Exps, BigRational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exps = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                if e.iter().zip(&cap).all(|(x, c)| c.is_none_or(|c| *x <= c)) {
                    *terms.entry(e).or_insert_with(BigRational::zero) += ca * cb;
                }
            }
        }
        let mut s = Laurent { terms, floor, cap };
        s.normalize();
        s
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiply by the monomial with exponent vector `m`.
    pub fn shift(&self, m: &[i64]) -> Self {
        assert_eq!(m.len(), self.nvars());
        if self.is_exact_zero() {
            return self.clone();
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().zip(m).map(|(x, y)| x + y).collect(), c.clone()))
            .collect();
        let floor = self.floor.iter().zip(m).map(|(f, y)| f + y).collect();
        let cap = self.cap.iter().zip(m).map(|(c, y)| c.map(|c| c + y)).collect();
        Laurent { terms, floor, cap }
    }

    /// Substitute every variable by its k-th power.
    pub fn adams(&self, k: u32) -> Self {
        assert!(k >= 1);
        let k = k as i64;
        if self.is_exact_zero() {
            return self.clone();
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().map(|x| x * k).collect(), c.clone()))
            .collect();
        let floor = self.floor.iter().map(|f| f * k).collect();
        // Unknown terms sit at exponent >= c + 1, hence at >= k(c + 1) afterwards.
        let cap = self.cap.iter().map(|c| c.map(|c| k * (c + 1) - 1)).collect();
        Laurent { terms, floor, cap }
    }

    /// Narrow the caps; never widens.
    pub fn truncate(&self, cap: &[Option<i64>]) -> Self {
        let mut s = self.clone();
        for (mine, c) in s.cap.iter_mut().zip(cap) {
            *mine = min_opt(*mine, *c);
        }
        s.normalize();
        s
    }

    /// Multiplicative inverse in the Laurent ring, expanded around zero.
    ///
    /// The lowest term must be a componentwise minimum of the support. Newly
    /// created infinite expansions keep `width` exponents per variable
    /// relative to the leading monomial.
    pub fn inv(&self, width: i64) -> Result<Self> {
        if self.terms.is_empty() {
            return Err(Error::NotInvertible("zero (or unknown) Laurent coefficient".into()));
        }
        let n = self.nvars();
        let lead: Exps = (0..n).map(|k| self.terms.keys().map(|e| e[k]).min().unwrap()).collect();
        let c = self.terms.get(&lead).cloned().ok_or_else(|| {
            Error::NotInvertible(format!("no leading monomial: support has no minimum {lead:?}"))
        })?;
        let eff = self.effective_floor();
        if (0..n).any(|k| eff[k] < lead[k]) {
            return Err(Error::Precision("leading term not certified by the window".into()));
        }
        let neg_lead: Exps = lead.iter().map(|x| -x).collect();
        let inv_c = c.recip();
        let unit = self.shift(&neg_lead).scale(&inv_c);
        let h = unit.sub(&Self::one(n));
        let target: Vec<Option<i64>> = (0..n)
            .map(|k| {
                let moves = h.terms.keys().any(|e| e[k] != 0) || h.cap[k].is_some();
                if moves {
                    Some(width - 1)
                } else {
                    None
                }
            })
            .collect();
        let minus_h = h.truncate(&target).neg();
        let mut acc = Self::one(n).truncate(&target);
        let mut power = Self::one(n);
        loop {
            power = power.mul(&minus_h).truncate(&target);
            acc = acc.add(&power);
            if power.terms.is_empty() {
                break;
            }
        }
        Ok(acc.scale(&inv_c).shift(&neg_lead))
    }

    /// Expansion of `num / den` around zero.
    pub fn ratio(num: &Self, den: &Self, width: i64) -> Result<Self> {
        if den.is_exact_zero() {
            return Err(Error::Invalid("zero denominator".into()));
        }
        Ok(num.mul(&den.inv(width)?))
    }

    /// Specialize the first variable at an exact value. The slice must be
    /// exact in that variable.
    pub fn eval_first(&self, x: &BigRational) -> Result<Self> {
        if self.nvars() == 0 {
            return Err(Error::Invalid("no variable to specialize".into()));
        }
        if self.cap[0].is_some() {
            return Err(Error::Mode("cannot specialize a truncated expansion".into()));
        }
        let mut terms: BTreeMap<Exps, BigRational> = BTreeMap::new();
        for (e, c) in &self.terms {
            let p = if e[0] >= 0 {
                num_traits::pow(x.clone(), e[0] as usize)
            } else {
                if x.is_zero() {
                    return Err(Error::NotInvertible("negative power at zero".into()));
                }
                num_traits::pow(x.recip(), (-e[0]) as usize)
            };
            *terms.entry(e[1..].to_vec()).or_insert_with(BigRational::zero) += c * p;
        }
        Self::with_window(terms, self.floor[1..].to_vec(), self.cap[1..].to_vec())
    }

    /// Lowest stored exponent of variable `k`.
    pub fn valuation(&self, k: usize) -> Option<i64> {
        self.terms.keys().map(|e| e[k]).min()
    }

    /// Largest stored exponent of variable `k`.
    pub fn degree(&self, k: usize) -> Option<i64> {
        self.terms.keys().map(|e| e[k]).max()
    }

    pub fn format(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = e
                .iter()
                .zip(names)
                .filter(|(x, _)| **x != 0)
                .map(|(x, v)| if *x == 1 { v.clone() } else { format!("{v}^{x}") })
                .collect();
            if mono.is_empty() {
                let _ = write!(out, "{a}");
            } else if a.is_one() {
                out.push_str(&mono.join("*"));
            } else {
                let _ = write!(out, "{a}*{}", mono.join("*"));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn inverse_of_q_minus_one() {
        let a = Laurent::from_ints(0, &[-1, 1]);
        let inv = a.inv(10).unwrap();
        assert_eq!(inv.cap(), &[Some(9)]);
        for i in 0..10 {
            assert_eq!(inv.get(&[i]).unwrap(), r(-1));
        }
        assert!(inv.get(&[10]).is_err());
        assert!(a.mul(&inv).sub(&Laurent::one(1)).terms().is_empty());
    }

    #[test]
    fn inverse_with_negative_valuation() {
        // q^2 (1 + q) -> q^-2 (1 - q + q^2 - ...)
        let a = Laurent::from_ints(2, &[1, 1]);
        let inv = a.inv(6).unwrap();
        assert_eq!(inv.floor(), &[-2]);
        assert_eq!(inv.cap(), &[Some(3)]);
        let want = [1, -1, 1, -1, 1, -1];
        for (i, w) in want.iter().enumerate() {
            assert_eq!(inv.get(&[i as i64 - 2]).unwrap(), r(*w));
        }
        let back = a.mul(&inv);
        assert!(back.sub(&Laurent::one(1)).terms().is_empty());
        assert!(back.window_nonempty());
    }

    #[test]
    fn monomial_inverse_stays_exact() {
        let a = Laurent::monomial(vec![3, -1], r(2));
        let inv = a.inv(5).unwrap();
        assert!(inv.is_exact());
        assert_eq!(inv.get(&[-3, 1]).unwrap(), BigRational::new(1.into(), 2.into()));
    }

    #[test]
    fn zero_has_no_inverse() {
        assert!(matches!(Laurent::zero(1).inv(4), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn no_leading_monomial() {
        // q + t has no componentwise-minimal term.
        let a = Laurent::from_terms(2, vec![(vec![1, 0], r(1)), (vec![0, 1], r(1))]);
        assert!(matches!(a.inv(4), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn product_window_min_rule() {
        // (1 + q + ... on [0, 9]) * q^2 exact -> exact on [2, 11]
        let geo = Laurent::from_ints(0, &[1, -1]).inv(10).unwrap();
        let p = geo.mul(&Laurent::from_ints(2, &[1]));
        assert_eq!(p.floor(), &[2]);
        assert_eq!(p.cap(), &[Some(11)]);
        assert_eq!(p.terms().len(), 10);
    }

    #[test]
    fn eval_at_two() {
        // phi_2 = 1 - q - q^2 + q^3 at q = 2 -> 3
        let phi2 = Laurent::from_ints(0, &[1, -1, -1, 1]);
        assert_eq!(phi2.eval_first(&r(2)).unwrap().scalar().unwrap(), r(3));
    }

    #[test]
    fn format_reads_naturally() {
        let a = Laurent::from_ints(0, &[-1, 0, 2]);
        assert_eq!(a.format(&["q".into()]), "-1 + 2*q^2");
    }
}
