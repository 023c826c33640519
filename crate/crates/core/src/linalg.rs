//! Sparse matrices over the Laurent ring and exact ranks of their
//! specializations.
//!
//! `rank_at` is exact fraction-free (Bareiss) elimination over the integers.
//! `rank_mod_p` reduces modulo a prime; its result never exceeds the rank
//! over the rationals, so it is a certified lower bound.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::coeff::{LaurentPoly, Rational};
use crate::error::{Error, Result};
use crate::par;

/// Primes just below `2^31`; products of two residues fit in a `u64`.
pub const PRIMES: [u64; 3] = [2_147_483_647, 2_147_483_629, 2_147_483_587];

pub fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Inverse modulo a prime, by Fermat.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// A `rows × cols` matrix over `Z[v, v^{-1}]`, stored column by column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<BTreeMap<usize, LaurentPoly>>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            columns: vec![BTreeMap::new(); cols],
        }
    }

    pub fn from_columns(rows: usize, columns: Vec<BTreeMap<usize, LaurentPoly>>) -> Self {
        debug_assert!(columns.iter().all(|c| c.keys().all(|&r| r < rows)));
        debug_assert!(columns.iter().all(|c| c.values().all(|x| !x.is_zero())));
        Self {
            rows,
            cols: columns.len(),
            columns,
        }
    }

    pub fn identity(n: usize) -> Self {
        let columns = (0..n)
            .map(|k| BTreeMap::from([(k, LaurentPoly::one())]))
            .collect();
        Self::from_columns(n, columns)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, c: usize) -> &BTreeMap<usize, LaurentPoly> {
        &self.columns[c]
    }

    pub fn get(&self, r: usize, c: usize) -> LaurentPoly {
        self.columns[c].get(&r).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, r: usize, c: usize, x: LaurentPoly) {
        if x.is_zero() {
            self.columns[c].remove(&r);
        } else {
            self.columns[c].insert(r, x);
        }
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(BTreeMap::is_empty)
    }

    /// Product `self · rhs`, i.e. apply `rhs` first.
    pub fn compose(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in compose");
        let columns = par::map(&rhs.columns, |col| {
            let mut out: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
            for (&k, b) in col {
                for (&r, a) in &self.columns[k] {
                    *out.entry(r).or_default() += &(a * b);
                }
            }
            out.retain(|_, x| !x.is_zero());
            out
        });
        PolyMatrix::from_columns(self.rows, columns)
    }

    /// First `(row, col)` where the two matrices differ, if any.
    pub fn first_difference(&self, other: &PolyMatrix) -> Option<(usize, usize)> {
        if self.rows != other.rows || self.cols != other.cols {
            return Some((0, 0));
        }
        for c in 0..self.cols {
            let (a, b) = (&self.columns[c], &other.columns[c]);
            if a == b {
                continue;
            }
            let r = a
                .keys()
                .chain(b.keys())
                .copied()
                .filter(|&r| a.get(&r) != b.get(&r))
                .min()
                .expect("columns differ");
            return Some((r, c));
        }
        None
    }

    pub fn specialize(&self, x: &Rational) -> Result<RationalMatrix> {
        if x.is_zero() {
            return Err(Error::NotAUnit);
        }
        let mut entries = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (&r, p) in col {
                entries[r][c] = p.specialize(x)?;
            }
        }
        Ok(RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Row-major residues at `v = x` modulo `p`; `None` if `x` is not a unit mod `p`.
    pub fn reduce_mod(&self, x: &Rational, p: u64) -> Option<Vec<Vec<u64>>> {
        let v = x.residue(p)?;
        if v == 0 {
            return None;
        }
        let v_inv = inv_mod(v, p);
        let mut out = vec![vec![0u64; self.cols]; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (&r, poly) in col {
                out[r][c] = poly.eval_mod(v, v_inv, p);
            }
        }
        Some(out)
    }
}

/// Dense exact rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<Rational>>,
}

impl RationalMatrix {
    pub fn from_rows(entries: Vec<Vec<Rational>>) -> Self {
        let rows = entries.len();
        let cols = entries.first().map_or(0, Vec::len);
        assert!(entries.iter().all(|r| r.len() == cols), "ragged matrix");
        Self {
            rows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r][c]
    }

    /// Exact rank by fraction-free elimination. Each row is first scaled by
    /// the lcm of its denominators, which does not change the rank.
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<BigInt>> = self
            .entries
            .iter()
            .map(|row| {
                let l = row
                    .iter()
                    .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter()
                    .map(|x| x.numer() * (&l / x.denom()))
                    .collect()
            })
            .filter(|row: &Vec<BigInt>| row.iter().any(|x| !x.is_zero()))
            .collect();
        bareiss_rank(&mut a, self.cols)
    }
}

fn bareiss_rank(a: &mut [Vec<BigInt>], cols: usize) -> usize {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = pivot_row[c].clone();
        par::for_each_mut(rest, |row| {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let mut x = &pivot * &row[j];
                if !factor.is_zero() && !pivot_row[j].is_zero() {
                    x -= &factor * &pivot_row[j];
                }
                row[j] = if prev.is_one() { x } else { x / &prev };
            }
        });
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Exact rank of the matrix specialized at `v = x`.
pub fn rank_at(m: &PolyMatrix, x: &Rational) -> Result<usize> {
    Ok(m.specialize(x)?.rank())
}

/// Rank of the reduction modulo `p` at `v = x`; a lower bound for the
/// rational rank. `None` when `x` is not a unit modulo `p`.
pub fn rank_mod_p(m: &PolyMatrix, x: &Rational, p: u64) -> Option<usize> {
    let mut a = m.reduce_mod(x, p)?;
    a.retain(|row| row.iter().any(|&e| e != 0));
    Some(dense_rank_mod_p(&mut a, m.cols, p))
}

fn dense_rank_mod_p(a: &mut [Vec<u64>], cols: usize, p: u64) -> usize {
    let rows = a.len();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = inv_mod(a[rank][c], p);
        for e in a[rank][c..].iter_mut() {
            *e = *e * inv % p;
        }
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        par::for_each_mut(rest, |row| {
            let f = row[c];
            if f == 0 {
                return;
            }
            for j in c..cols {
                let sub = f * pivot_row[j] % p;
                row[j] = (row[j] + p - sub) % p;
            }
        });
        rank += 1;
    }
    rank
}

/// Largest modular rank over [`PRIMES`]: a certified lower bound on the
/// rational rank at `v = x`.
pub fn rank_lower_bound(m: &PolyMatrix, x: &Rational) -> usize {
    PRIMES
        .iter()
        .filter_map(|&p| rank_mod_p(m, x, p))
        .max()
        .unwrap_or(0)
}

/// JSON form of a matrix: nonzero entries as `[row, col, "poly"]`.
#[derive(Clone, Debug, Serialize)]
pub struct MatrixDump {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, String)>,
}

impl From<&PolyMatrix> for MatrixDump {
    fn from(m: &PolyMatrix) -> Self {
        let mut entries = Vec::with_capacity(m.nnz());
        for (c, col) in m.columns.iter().enumerate() {
            for (&r, x) in col {
                entries.push((r, c, x.to_string()));
            }
        }
        entries.sort();
        Self {
            rows: m.rows,
            cols: m.cols,
            entries,
        }
    }
}
