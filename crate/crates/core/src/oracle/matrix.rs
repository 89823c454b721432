//! Dense matrices over a table field: products, rank, nullspaces and the
//! commutant of a matrix.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::field::Field;
use crate::error::{Error, Result};

/// Largest matrix size the oracle accepts unless told otherwise.
pub const DEFAULT_MAX_DIM: usize = 4;

/// An `n x n` matrix with row-major entries given as field-element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MatrixOverGF {
    pub n: usize,
    pub entries: Vec<u8>,
}

impl MatrixOverGF {
    pub fn new(n: usize, entries: Vec<u8>, field: &Field) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::Invalid(format!("{n}x{n} matrix needs {} entries", n * n)));
        }
        if entries.iter().any(|&x| x as usize >= field.order()) {
            return Err(Error::Invalid("matrix entry outside the field".into()));
        }
        Ok(MatrixOverGF { n, entries })
    }

    pub fn zero(n: usize) -> Self {
        MatrixOverGF { n, entries: vec![0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, 1)
    }

    pub fn scalar(n: usize, c: u8) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = c;
        }
        m
    }

    /// The `idx`-th matrix of the row-major base-`q` counter: entry `(0,0)` is
    /// the most significant digit.
    pub fn from_index(idx: u64, n: usize, q: usize) -> Self {
        let mut entries = vec![0u8; n * n];
        let mut x = idx;
        for e in entries.iter_mut().rev() {
            *e = (x % q as u64) as u8;
            x /= q as u64;
        }
        MatrixOverGF { n, entries }
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.entries[i * self.n + j]
    }

    pub fn is_scalar(&self) -> bool {
        let c = self.entries[0];
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == if i == j { c } else { 0 }))
    }
}

impl fmt::Display for MatrixOverGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .chunks(self.n.max(1))
            .map(|r| r.iter().map(u8::to_string).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

impl Field {
    pub fn mat_mul(&self, a: &MatrixOverGF, b: &MatrixOverGF) -> MatrixOverGF {
        let n = a.n;
        let mut out = MatrixOverGF::zero(n);
        for i in 0..n {
            for j in 0..n {
                let mut s = 0u8;
                for k in 0..n {
                    s = self.add(s, self.mul(a.get(i, k), b.get(k, j)));
                }
                out.entries[i * n + j] = s;
            }
        }
        out
    }

    pub fn mat_sub(&self, a: &MatrixOverGF, b: &MatrixOverGF) -> MatrixOverGF {
        let entries = a.entries.iter().zip(&b.entries).map(|(x, y)| self.sub(*x, *y)).collect();
        MatrixOverGF { n: a.n, entries }
    }

    /// Reduce `rows` (each of length `cols`) to row echelon form in place and
    /// return the pivot columns.
    pub fn echelon(&self, rows: &mut [Vec<u8>], cols: usize) -> Vec<usize> {
        let mut pivots = vec![];
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
            rows.swap(r, p);
            let inv = self.inv(rows[r][c]).expect("non-zero pivot");
            for x in rows[r].iter_mut() {
                *x = self.mul(*x, inv);
            }
            for i in 0..rows.len() {
                if i != r && rows[i][c] != 0 {
                    let f = rows[i][c];
                    for k in 0..cols {
                        let v = self.mul(f, rows[r][k]);
                        rows[i][k] = self.sub(rows[i][k], v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self, rows: &[Vec<u8>], cols: usize) -> usize {
        let mut m = rows.to_vec();
        self.echelon(&mut m, cols).len()
    }

    /// A basis of `{x : M x = 0}` for `M` given by its rows.
    pub fn nullspace(&self, rows: &[Vec<u8>], cols: usize) -> Vec<Vec<u8>> {
        let mut m = rows.to_vec();
        let pivots = self.echelon(&mut m, cols);
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u8; cols];
                v[f] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = self.neg(m[r][f]);
                }
                v
            })
            .collect()
    }

    pub fn is_invertible(&self, a: &MatrixOverGF) -> bool {
        let rows: Vec<Vec<u8>> = a.entries.chunks(a.n).map(<[u8]>::to_vec).collect();
        self.rank(&rows, a.n) == a.n
    }

    /// Rows of the `n^2 x n^2` matrix of `B -> AB - BA` on row-major `B`.
    fn commutator_rows(&self, a: &MatrixOverGF) -> Vec<Vec<u8>> {
        let n = a.n;
        let mut rows = vec![vec![0u8; n * n]; n * n];
        // (AB - BA)_{ij} = Σ_k A_ik B_kj - Σ_k B_ik A_kj
        for i in 0..n {
            for j in 0..n {
                let row = &mut rows[i * n + j];
                for k in 0..n {
                    row[k * n + j] = self.add(row[k * n + j], a.get(i, k));
                    row[i * n + k] = self.sub(row[i * n + k], a.get(k, j));
                }
            }
        }
        rows
    }

    /// Dimension of the centralizer algebra `{B : AB = BA}`.
    pub fn commutant_dim(&self, a: &MatrixOverGF) -> usize {
        let n2 = a.n * a.n;
        n2 - self.rank(&self.commutator_rows(a), n2)
    }

    /// A basis of the centralizer algebra, as row-major matrices.
    pub fn commutant_basis(&self, a: &MatrixOverGF) -> Vec<MatrixOverGF> {
        self.nullspace(&self.commutator_rows(a), a.n * a.n)
            .into_iter()
            .map(|entries| MatrixOverGF { n: a.n, entries })
            .collect()
    }
}

/// Commutant dimension over `F_2` with rows packed into machine words.
/// Requires `n <= 8` so that an `n^2`-bit row fits in a `u64`.
pub fn commutant_dim_f2(a: &MatrixOverGF) -> usize {
    let n = a.n;
    assert!(n * n <= 64, "bit-packed path needs n <= 8");
    let mut rows = vec![0u64; n * n];
    for i in 0..n {
        for j in 0..n {
            let mut row = 0u64;
            for k in 0..n {
                if a.get(i, k) & 1 == 1 {
                    row ^= 1 << (k * n + j);
                }
                if a.get(k, j) & 1 == 1 {
                    row ^= 1 << (i * n + k);
                }
            }
            rows[i * n + j] = row;
        }
    }
    n * n - rank_f2(&mut rows)
}

fn rank_f2(rows: &mut [u64]) -> usize {
    let mut rank = 0;
    for bit in 0..64 {
        let mask = 1u64 << bit;
        let Some(p) = (rank..rows.len()).find(|&i| rows[i] & mask != 0) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank];
        for (i, r) in rows.iter_mut().enumerate() {
            if i != rank && *r & mask != 0 {
                *r ^= pivot;
            }
        }
        rank += 1;
    }
    rank
}
