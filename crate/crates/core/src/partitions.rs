//! Integer partitions and the centralizer statistics `n(λ)`, `m_i(λ)`,
//! `<λ,λ>`, `φ_m` and `a_λ(q)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::series::Laurent;

/// A partition as a non-increasing list of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: vec![] }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `m_i(λ)`, keyed by part size.
    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// `n(λ) = Σ (i-1) λ_i`.
    pub fn n(&self) -> u64 {
        self.parts.iter().enumerate().map(|(i, &p)| i as u64 * p as u64).sum()
    }

    /// `<λ,λ> = |λ| + 2 n(λ)`.
    pub fn pairing(&self) -> u64 {
        self.size() as u64 + 2 * self.n()
    }

    pub fn stats(&self) -> PartitionStats {
        PartitionStats { n: self.n(), multiplicities: self.multiplicities(), pairing: self.pairing() }
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = String;

    fn try_from(parts: Vec<u32>) -> Result<Self, String> {
        if parts.contains(&0) {
            return Err("partition parts must be positive".into());
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err("partition parts must be non-increasing".into());
        }
        Ok(Partition { parts })
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionStats {
    pub n: u64,
    pub multiplicities: BTreeMap<u32, u32>,
    pub pairing: u64,
}

/// All partitions of `n` in reverse-lexicographic order.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![];
    rec(n, n, &mut vec![], &mut out);
    out
}

/// `φ_m(q) = (1-q)(1-q^2)...(1-q^m)`.
pub fn phi(m: u32) -> Laurent {
    (1..=m as i64).fold(Laurent::one(1), |acc, k| {
        let mut c = vec![0i64; k as usize + 1];
        c[0] = 1;
        c[k as usize] = -1;
        acc.mul(&Laurent::from_ints(0, &c))
    })
}

/// `b_λ(q) = Π_i φ_{m_i(λ)}(q)`.
pub fn b_lambda(lambda: &Partition) -> Laurent {
    lambda.multiplicities().values().fold(Laurent::one(1), |acc, &m| acc.mul(&phi(m)))
}

/// `φ_m(q^{-1})`.
fn phi_inverse_q(m: u32) -> Laurent {
    (1..=m as i64).fold(Laurent::one(1), |acc, k| {
        acc.mul(&Laurent::from_terms(
            1,
            vec![(vec![0], crate::series::rat(1)), (vec![-k], crate::series::rat(-1))],
        ))
    })
}

/// `a_λ(q) = q^{<λ,λ>} b_λ(q^{-1})`: the order of the centralizer in
/// `GL_{|λ|}(F_q)` of a unipotent element of Jordan type λ.
pub fn a_lambda(lambda: &Partition) -> Laurent {
    let b_inv = lambda
        .multiplicities()
        .values()
        .fold(Laurent::one(1), |acc, &m| acc.mul(&phi_inverse_q(m)));
    let a = b_inv.shift(&[lambda.pairing() as i64]);
    assert!(
        a.valuation(0).unwrap_or(0) >= 0,
        "a_lambda must be a polynomial in q: {lambda}"
    );
    a
}
