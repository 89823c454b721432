//! Brute-force counts over small finite fields: conjugacy classes of `GL_n`
//! and `M_n`, unipotent elements, centralizers and commuting pairs.
//!
//! Every count walks the matrices of `M_n(F_q)` in the row-major base-`q`
//! order of [`MatrixOverGF::from_index`]. The walk is split across threads
//! and reduced by integer addition, so parallel and sequential runs agree
//! exactly.

mod field;
mod matrix;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::variety::gl_order_int;

pub use field::{Field, FieldSpec, DEFAULT_MAX_ORDER};
pub use matrix::{commutant_dim_f2, MatrixOverGF, DEFAULT_MAX_DIM};

/// Default cap on the number of matrices one count may enumerate.
pub const DEFAULT_BUDGET: u128 = 1 << 24;

/// Environment variable holding a global budget cap.
pub const BUDGET_ENV: &str = "COLORING_ZETA_BUDGET";

/// The budget cap from the environment, if set.
pub fn budget_from_env() -> Result<Option<u128>> {
    match std::env::var(BUDGET_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::Invalid(format!("{BUDGET_ENV}={s:?} is not a non-negative integer"))),
        Err(_) => Ok(None),
    }
}

/// Counting oracle over one field.
#[derive(Clone, Debug)]
pub struct Oracle {
    field: Field,
    budget: u128,
    max_dim: usize,
    parallel: bool,
}

impl Oracle {
    pub fn new(field: Field) -> Self {
        Oracle { field, budget: DEFAULT_BUDGET, max_dim: DEFAULT_MAX_DIM, parallel: true }
    }

    /// Oracle over the default field with `q` elements.
    pub fn of_order(q: u64) -> Result<Self> {
        Ok(Self::new(Field::of_order(q)?))
    }

    pub fn with_budget(mut self, budget: u128) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_max_dim(mut self, max_dim: usize) -> Self {
        self.max_dim = max_dim;
        self
    }

    pub fn sequential(mut self) -> Self {
        self.parallel = false;
        self
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.field.order() as u64
    }

    pub fn budget(&self) -> u128 {
        self.budget
    }

    fn charge(&self, needed: u128) -> Result<()> {
        if needed > self.budget {
            return Err(Error::Budget { needed, budget: self.budget });
        }
        Ok(())
    }

    fn space(&self, n: usize) -> Result<u64> {
        if n == 0 || n > self.max_dim {
            return Err(Error::Invalid(format!("matrix size {n} outside 1..={}", self.max_dim)));
        }
        let total = (self.q() as u128).checked_pow((n * n) as u32).unwrap_or(u128::MAX);
        self.charge(total)?;
        Ok(total as u64)
    }

    fn sum_over<F>(&self, n: usize, f: F) -> Result<u128>
    where
        F: Fn(&MatrixOverGF) -> Result<u128> + Sync,
    {
        let total = self.space(n)?;
        let q = self.field.order();
        let one = |i: u64| f(&MatrixOverGF::from_index(i, n, q));
        if self.parallel {
            (0..total).into_par_iter().map(one).try_reduce(|| 0, |a, b| Ok(a + b))
        } else {
            (0..total).map(one).try_fold(0u128, |a, b| Ok(a + b?))
        }
    }

    /// `dim {B : AB = BA}`, through the bit-packed path over `F_2`.
    pub fn commutant_dim(&self, a: &MatrixOverGF) -> usize {
        if self.field.order() == 2 && a.n <= 8 {
            commutant_dim_f2(a)
        } else {
            self.field.commutant_dim(a)
        }
    }

    fn q_pow(&self, e: usize) -> u128 {
        (self.q() as u128).pow(e as u32)
    }

    /// `#{h in GL_n : hA = Ah}` by enumerating the centralizer algebra.
    pub fn centralizer_order_gl(&self, a: &MatrixOverGF) -> Result<u128> {
        if !self.field.is_invertible(a) {
            return Err(Error::Invalid(format!("{a} is not invertible")));
        }
        self.invertibles_in_commutant(a)
    }

    fn invertibles_in_commutant(&self, a: &MatrixOverGF) -> Result<u128> {
        let basis = self.field.commutant_basis(a);
        let size = self.q_pow(basis.len());
        self.charge(size)?;
        let q = self.field.order();
        let n = a.n;
        let mut count = 0u128;
        let mut coeffs = vec![0u8; basis.len()];
        for _ in 0..size {
            let mut m = MatrixOverGF::zero(n);
            for (c, b) in coeffs.iter().zip(&basis) {
                if *c != 0 {
                    for (x, y) in m.entries.iter_mut().zip(&b.entries) {
                        *x = self.field.add(*x, self.field.mul(*c, *y));
                    }
                }
            }
            if self.field.is_invertible(&m) {
                count += 1;
            }
            for c in coeffs.iter_mut() {
                *c += 1;
                if (*c as usize) < q {
                    break;
                }
                *c = 0;
            }
        }
        Ok(count)
    }

    /// `#{A in GL_n : (A - I)^n = 0}`, enumerated as `A = I + N` over all `N`.
    pub fn count_unipotent(&self, n: usize) -> Result<u128> {
        self.sum_over(n, |m| {
            let mut p = m.clone();
            for _ in 1..n {
                p = self.field.mat_mul(&p, m);
            }
            Ok(u128::from(p.entries.iter().all(|&x| x == 0)))
        })
    }

    fn group_order(&self, n: usize) -> u128 {
        gl_order_int(n as u32, self.q())
    }

    fn divide_exact(&self, total: u128, by: u128, what: &str) -> Result<u128> {
        if !total.is_multiple_of(by) {
            return Err(Error::Inconsistent(format!("{what}: Burnside sum {total} not divisible by {by}")));
        }
        Ok(total / by)
    }

    /// Conjugacy classes of `GL_n(F_q)`: `(1/|G|) Σ_g |C_G(g)|`, each
    /// centralizer counted inside the commutant algebra of `g`; scalars
    /// contribute `|G|` directly.
    pub fn count_classes_gl(&self, n: usize) -> Result<u128> {
        let g = self.group_order(n);
        let total = self.sum_over(n, |m| {
            if !self.field.is_invertible(m) {
                return Ok(0);
            }
            if m.is_scalar() {
                return Ok(g);
            }
            self.invertibles_in_commutant(m)
        })?;
        self.divide_exact(total, g, "GL_n classes")
    }

    /// Conjugacy classes of `M_n(F_q)`: `(1/|G|) Σ_{g in G} q^{dim Z_g}`,
    /// since the matrices fixed by conjugation with `g` form its commutant.
    pub fn count_classes_mn(&self, n: usize) -> Result<u128> {
        let total = self.sum_gl_q_dim(n)?;
        self.divide_exact(total, self.group_order(n), "M_n classes")
    }

    fn sum_gl_q_dim(&self, n: usize) -> Result<u128> {
        self.sum_over(n, |m| {
            Ok(if self.field.is_invertible(m) { self.q_pow(self.commutant_dim(m)) } else { 0 })
        })
    }

    /// Commuting pairs in `M_n x M_n`: `Σ_A q^{dim Z_A}`.
    pub fn gamma(&self, n: usize) -> Result<u128> {
        self.sum_over(n, |m| Ok(self.q_pow(self.commutant_dim(m))))
    }

    /// Commuting pairs in `GL_n x M_n`: `Σ_{A in GL_n} q^{dim Z_A}`. The
    /// result is checked against `|G_n|` times the number of conjugation
    /// orbits on `M_n`, counted by walking the orbits.
    pub fn gamma_prime(&self, n: usize) -> Result<u128> {
        let total = self.sum_gl_q_dim(n)?;
        let orbits = self.count_orbits(n, false)?;
        let expected = self.group_order(n) * orbits;
        if total != expected {
            return Err(Error::Inconsistent(format!(
                "gamma'_{n} = {total} but |G_n| * #(M_n / G_n) = {expected}"
            )));
        }
        Ok(total)
    }

    /// Commuting pairs in `GL_n x M_n` counted from the other side:
    /// `Σ_{B in M_n} #(Z_B ∩ GL_n)`.
    pub fn gamma_prime_by_columns(&self, n: usize) -> Result<u128> {
        self.sum_over(n, |m| if m.is_scalar() { Ok(self.group_order(n)) } else { self.invertibles_in_commutant(m) })
    }

    /// Orbits of `GL_n` acting by conjugation on `M_n` (or on `GL_n` itself
    /// when `invertible_only`), found by walking each orbit along a
    /// generating set of the group. Independent of the Burnside sums.
    pub fn count_orbits(&self, n: usize, invertible_only: bool) -> Result<u128> {
        let total = self.space(n)?;
        let q = self.field.order();
        let gens = self.generators(n);
        let mut seen = vec![false; total as usize];
        let mut orbits = 0u128;
        let mut stack = vec![];
        for start in 0..total {
            if seen[start as usize] {
                continue;
            }
            let m = MatrixOverGF::from_index(start, n, q);
            if invertible_only && !self.field.is_invertible(&m) {
                continue;
            }
            orbits += 1;
            seen[start as usize] = true;
            stack.push(m);
            while let Some(x) = stack.pop() {
                for (g, g_inv) in &gens {
                    let y = self.field.mat_mul(&self.field.mat_mul(g, &x), g_inv);
                    let iy = index_of(&y, q);
                    if !seen[iy as usize] {
                        seen[iy as usize] = true;
                        stack.push(y);
                    }
                }
            }
        }
        Ok(orbits)
    }

    /// Elementary matrices `I + a E_ij` and `diag(a, 1, ..., 1)` for all
    /// non-zero `a`, with their inverses; together they generate `GL_n`.
    fn generators(&self, n: usize) -> Vec<(MatrixOverGF, MatrixOverGF)> {
        let f = &self.field;
        let mut gens = vec![];
        for a in 1..f.order() as u8 {
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        let mut g = MatrixOverGF::identity(n);
                        g.entries[i * n + j] = a;
                        let mut gi = MatrixOverGF::identity(n);
                        gi.entries[i * n + j] = f.neg(a);
                        gens.push((g, gi));
                    }
                }
            }
            let mut d = MatrixOverGF::identity(n);
            d.entries[0] = a;
            let mut di = MatrixOverGF::identity(n);
            di.entries[0] = f.inv(a).expect("non-zero");
            gens.push((d, di));
        }
        gens
    }
}

fn index_of(m: &MatrixOverGF, q: usize) -> u64 {
    m.entries.iter().fold(0u64, |acc, &x| acc * q as u64 + x as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn oracle(q: u64) -> Oracle {
        Oracle::of_order(q).unwrap()
    }

    #[test]
    fn unipotent_small() {
        assert_eq!(oracle(2).count_unipotent(1).unwrap(), 1);
        assert_eq!(oracle(2).count_unipotent(2).unwrap(), 4);
        assert_eq!(oracle(3).count_unipotent(3).unwrap(), 729);
    }

    #[test]
    fn class_counts_small() {
        assert_eq!(oracle(2).count_classes_gl(2).unwrap(), 3);
        assert_eq!(oracle(2).count_classes_gl(3).unwrap(), 6);
        assert_eq!(oracle(5).count_classes_gl(1).unwrap(), 4);
        assert_eq!(oracle(2).count_classes_mn(2).unwrap(), 6);
        assert_eq!(oracle(2).count_classes_mn(3).unwrap(), 14);
        assert_eq!(oracle(3).count_classes_mn(1).unwrap(), 3);
    }

    #[test]
    fn burnside_matches_orbit_walk() {
        for (q, n) in [(2, 1), (2, 2), (2, 3), (3, 2), (4, 2), (5, 2)] {
            let o = oracle(q);
            assert_eq!(o.count_classes_gl(n).unwrap(), o.count_orbits(n, true).unwrap(), "GL q={q} n={n}");
            assert_eq!(o.count_classes_mn(n).unwrap(), o.count_orbits(n, false).unwrap(), "M q={q} n={n}");
        }
    }

    #[test]
    fn commuting_pairs() {
        assert_eq!(oracle(3).gamma(1).unwrap(), 9);
        assert_eq!(oracle(2).gamma(2).unwrap(), 88);
        assert_eq!(oracle(2).gamma_prime(1).unwrap(), 2);
        assert_eq!(oracle(2).gamma_prime(2).unwrap(), 36);
        assert_eq!(oracle(3).gamma_prime(2).unwrap(), 48 * 12);
        for (q, n) in [(2, 2), (2, 3), (3, 2)] {
            let o = oracle(q);
            assert_eq!(o.gamma_prime(n).unwrap(), o.gamma_prime_by_columns(n).unwrap());
        }
    }

    #[test]
    fn centralizer_orders() {
        let f2 = oracle(2);
        assert_eq!(f2.centralizer_order_gl(&MatrixOverGF::identity(2)).unwrap(), 6);
        // unipotent of Jordan type (2,1)
        let u = MatrixOverGF::new(3, vec![1, 1, 0, 0, 1, 0, 0, 0, 1], f2.field()).unwrap();
        assert_eq!(f2.centralizer_order_gl(&u).unwrap(), 8);
        let f3 = oracle(3);
        let d = MatrixOverGF::new(2, vec![1, 0, 0, 2], f3.field()).unwrap();
        assert_eq!(f3.centralizer_order_gl(&d).unwrap(), 4);
        assert!(f3.centralizer_order_gl(&MatrixOverGF::zero(2)).is_err());
    }

    #[test]
    fn class_equation() {
        for q in [2u64, 3] {
            let o = oracle(q);
            let n = 2;
            let g = o.group_order(n);
            // pick one representative per orbit by walking orbits again
            let total = o.space(n).unwrap();
            let mut seen = vec![false; total as usize];
            let gens = o.generators(n);
            let mut sum = 0u128;
            for start in 0..total {
                let m = MatrixOverGF::from_index(start, n, q as usize);
                if seen[start as usize] || !o.field().is_invertible(&m) {
                    continue;
                }
                sum += g / o.centralizer_order_gl(&m).unwrap();
                let mut stack = vec![m];
                seen[start as usize] = true;
                while let Some(x) = stack.pop() {
                    for (h, hi) in &gens {
                        let y = o.field().mat_mul(&o.field().mat_mul(h, &x), hi);
                        let iy = index_of(&y, q as usize) as usize;
                        if !seen[iy] {
                            seen[iy] = true;
                            stack.push(y);
                        }
                    }
                }
            }
            assert_eq!(sum, g);
        }
    }

    fn has_cyclic_vector(f: &Field, a: &MatrixOverGF) -> bool {
        let n = a.n;
        let q = f.order();
        (0..(q as u64).pow(n as u32)).any(|idx| {
            let mut v: Vec<u8> = (0..n).map(|i| ((idx / (q as u64).pow(i as u32)) % q as u64) as u8).collect();
            let mut rows = vec![];
            for _ in 0..n {
                rows.push(v.clone());
                v = (0..n)
                    .map(|i| (0..n).fold(0u8, |s, k| f.add(s, f.mul(a.get(i, k), v[k]))))
                    .collect();
            }
            f.rank(&rows, n) == n
        })
    }

    #[test]
    fn commutant_dim_at_least_n_and_equal_iff_cyclic() {
        for q in [2u64, 3] {
            let o = oracle(q);
            for idx in 0..q.pow(4) {
                let a = MatrixOverGF::from_index(idx, 2, q as usize);
                let dim = o.commutant_dim(&a);
                assert!(dim >= 2);
                assert_eq!(dim == 2, has_cyclic_vector(o.field(), &a), "{a}");
            }
        }
    }

    #[test]
    fn parallel_equals_sequential() {
        let par = oracle(3);
        let seq = oracle(3).sequential();
        assert_eq!(par.gamma(2).unwrap(), seq.gamma(2).unwrap());
        assert_eq!(par.count_classes_gl(2).unwrap(), seq.count_classes_gl(2).unwrap());
        assert_eq!(par.count_unipotent(3).unwrap(), seq.count_unipotent(3).unwrap());
    }

    #[test]
    fn budget_is_enforced() {
        let o = oracle(2).with_budget(100);
        assert!(matches!(o.gamma(3), Err(Error::Budget { needed: 512, budget: 100 })));
        assert!(o.gamma(2).is_ok());
        assert!(oracle(2).count_unipotent(5).is_err());
    }
}
