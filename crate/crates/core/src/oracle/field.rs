//! Small finite fields as lookup tables.

use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::error::{Error, Result};

/// Largest field the oracle accepts unless told otherwise.
pub const DEFAULT_MAX_ORDER: u64 = 9;

/// `F_{p^e}`, presented as `F_p[x] / (f)` for a monic irreducible `f` of
/// degree `e`. Elements are indexed by their coefficient vectors read as
/// base-`p` numbers, so the prime field keeps its usual labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub e: u32,
    /// Coefficients of `f`, constant term first; empty for `e = 1`.
    #[serde(default)]
    pub modulus: Vec<u64>,
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1, vec![])
    }

    pub fn new(p: u64, e: u32, modulus: Vec<u64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        if e == 0 {
            return Err(Error::Invalid("extension degree must be at least 1".into()));
        }
        let spec = FieldSpec { p, e, modulus };
        if e > 1 {
            if spec.modulus.len() != e as usize + 1 || spec.modulus[e as usize] != 1 {
                return Err(Error::Invalid(format!("need a monic modulus of degree {e}")));
            }
            if spec.modulus.iter().any(|&c| c >= p) {
                return Err(Error::Invalid("modulus coefficients must be reduced mod p".into()));
            }
            if !is_irreducible(p, &spec.modulus) {
                return Err(Error::Invalid(format!("modulus {:?} is reducible over F_{p}", spec.modulus)));
            }
        }
        Ok(spec)
    }

    /// The field with `q` elements, using the shipped moduli
    /// `x^2+x+1` (q = 4), `x^3+x+1` (q = 8) and `x^2+1` (q = 9).
    pub fn of_order(q: u64) -> Result<Self> {
        match q {
            4 => Self::new(2, 2, vec![1, 1, 1]),
            8 => Self::new(2, 3, vec![1, 1, 0, 1]),
            9 => Self::new(3, 2, vec![1, 0, 1]),
            q if is_prime(q) => Self::prime(q),
            q => Err(Error::Invalid(format!("no default field of order {q}"))),
        }
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.e)
    }
}

fn poly_rem(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p);
    while r.len() > db && !r.is_empty() {
        let c = r[r.len() - 1] * lead_inv % p;
        let shift = r.len() - 1 - db;
        for (i, &bc) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - c * bc % p) % p;
        }
        while r.last() == Some(&0) {
            r.pop();
        }
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    (1..p).find(|x| a * x % p == 1).expect("unit mod p")
}

/// No monic factor of degree `1..=deg/2` divides `f`.
fn is_irreducible(p: u64, f: &[u64]) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        for idx in 0..p.pow(d as u32) {
            let mut g: Vec<u64> = (0..d).map(|i| idx / p.pow(i as u32) % p).collect();
            g.push(1);
            if poly_rem(p, f, &g).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Addition, multiplication and inversion tables of a field.
#[derive(Clone, Debug)]
pub struct Field {
    spec: FieldSpec,
    q: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl Field {
    pub fn new(spec: FieldSpec) -> Result<Self> {
        Self::with_max_order(spec, DEFAULT_MAX_ORDER)
    }

    pub fn with_max_order(spec: FieldSpec, max_order: u64) -> Result<Self> {
        let q = spec.order();
        if q > max_order || q > 256 {
            return Err(Error::Invalid(format!("field order {q} exceeds the bound {max_order}")));
        }
        let (p, e) = (spec.p, spec.e as usize);
        let q = q as usize;
        let digits = |x: usize| -> Vec<u64> { (0..e).map(|i| (x as u64 / p.pow(i as u32)) % p).collect() };
        let index = |v: &[u64]| -> u8 { v.iter().rev().fold(0u64, |acc, &c| acc * p + c) as u8 };
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let s: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = index(&s);
                let mut prod = vec![0u64; 2 * e - 1];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut r = if e == 1 { vec![prod[0] % p] } else { poly_rem(p, &prod, &spec.modulus) };
                r.resize(e, 0);
                mul[a * q + b] = index(&r);
            }
        }
        let neg = (0..q).map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u8).collect();
        let mut inv = vec![0u8; q];
        for a in 1..q {
            inv[a] = (1..q)
                .find(|&b| mul[a * q + b] == 1)
                .ok_or_else(|| Error::Invalid(format!("{a} has no inverse: modulus not irreducible")))?
                as u8;
        }
        Ok(Field { spec, q, add, mul, neg, inv })
    }

    pub fn of_order(q: u64) -> Result<Self> {
        Self::new(FieldSpec::of_order(q)?)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn order(&self) -> usize {
        self.q
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u8) -> Option<u8> {
        (a != 0).then(|| self.inv[a as usize])
    }
}
