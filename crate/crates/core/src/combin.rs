//! Catalan, Fine and Jacobsthal numbers, first-peak counts, and standard
//! Young tableaux of two-column shapes.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::coeff::Rational;
use crate::error::{Error, Result};

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `C_n = binom(2n, n) - binom(2n, n+1)`.
pub fn catalan(n: usize) -> BigUint {
    let n = n as u64;
    binomial(2 * n, n) - binomial(2 * n, n + 1)
}

/// `B_m(n)`: Dyck paths of semilength `n` whose first peak has height at
/// least `m`, by the closed form `(m+1)/(n+1) · binom(2n-m, n)`.
pub fn first_peak_count_b(n: usize, m: usize) -> BigUint {
    if m > n {
        return BigUint::zero();
    }
    let (n, m) = (n as u64, m as u64);
    binomial(2 * n - m, n) * BigUint::from(m + 1) / BigUint::from(n + 1)
}

/// `F_n = Σ_m (-1)^m B_m(n)`.
pub fn fine(n: usize) -> BigUint {
    let mut acc = BigInt::zero();
    for m in 0..=n {
        let b = BigInt::from(first_peak_count_b(n, m));
        if m % 2 == 0 {
            acc += b;
        } else {
            acc -= b;
        }
    }
    acc.to_biguint().expect("Fine numbers are nonnegative")
}

/// The alternating binomial sum
/// `1/(n+1) [binom(2n,n) - 2 binom(2n-1,n) + 3 binom(2n-2,n) - ... ± (n+1) binom(n,n)]`,
/// evaluated in exact rational arithmetic.
pub fn fine_binomial_sum(n: usize) -> Rational {
    let n = n as u64;
    let mut acc = BigInt::zero();
    for m in 0..=n {
        let term = BigInt::from(binomial(2 * n - m, n)) * BigInt::from(m + 1);
        if m % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Rational::new(acc, BigInt::from(n + 1)).expect("n+1 > 0")
}

/// Number of Dyck paths of semilength `n` with first peak of each height
/// `0..=n`, by walking every path.
pub fn first_peak_histogram(n: usize) -> Vec<u64> {
    fn walk(n: usize, ups: usize, downs: usize, first_peak: Option<usize>, out: &mut [u64]) {
        if ups == n && downs == n {
            out[first_peak.unwrap_or(0)] += 1;
            return;
        }
        if ups < n {
            walk(n, ups + 1, downs, first_peak, out);
        }
        if downs < ups {
            walk(n, ups, downs + 1, first_peak.or(Some(ups)), out);
        }
    }
    let mut out = vec![0u64; n + 1];
    walk(n, 0, 0, None, &mut out);
    out
}

/// Fine number by direct enumeration of paths with even first-peak height.
pub fn fine_by_enumeration(n: usize) -> u64 {
    first_peak_histogram(n).iter().step_by(2).sum()
}

/// `J_n = (2^n - (-1)^n) / 3`.
pub fn jacobsthal_number(n: usize) -> BigUint {
    let two_n = BigInt::one() << n;
    let sign = if n.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
    ((two_n - sign) / BigInt::from(3))
        .to_biguint()
        .expect("nonnegative")
}

/// `J_0 = 0`, `J_1 = 1`, `J_n = J_{n-1} + 2 J_{n-2}`.
pub fn jacobsthal_by_recursion(n: usize) -> BigUint {
    let (mut prev, mut cur) = (BigUint::zero(), BigUint::one());
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = &cur + &prev * 2u32;
        prev = cur;
        cur = next;
    }
    cur
}

/// Compositions of `n` whose last part is odd.
pub fn odd_ending_compositions(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            if cur.last().is_some_and(|c| c % 2 == 1) {
                out.push(cur.clone());
            }
            return;
        }
        for part in (1..=rest).rev() {
            cur.push(part);
            go(rest - part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), &mut out);
    out
}

/// Sequences `l > a_1 > ... > a_r > 0` with `l - a_1` odd, where the empty
/// sequence counts as `a_1 = 0` (so it appears exactly when `l` is odd).
pub fn opposite_parity_sequences(l: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if l == 0 {
        return out;
    }
    let below = l - 1;
    // subsets of {1, ..., l-1}, each read in decreasing order
    for mask in 0u64..(1u64 << below) {
        let seq: Vec<usize> = (1..=below).rev().filter(|a| mask >> (a - 1) & 1 == 1).collect();
        let a1 = seq.first().copied().unwrap_or(0);
        if (l - a1) % 2 == 1 {
            out.push(seq);
        }
    }
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// A partition with at most two columns, given by its column lengths.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TwoColumnPartition {
    c1: usize,
    c2: usize,
}

impl TwoColumnPartition {
    pub fn new(c1: usize, c2: usize) -> Result<Self> {
        if c2 > c1 {
            return Err(Error::InvalidPartition { c1, c2 });
        }
        Ok(Self { c1, c2 })
    }

    /// The single column `1^n`.
    pub fn column(n: usize) -> Self {
        Self { c1: n, c2: 0 }
    }

    pub fn columns(&self) -> (usize, usize) {
        (self.c1, self.c2)
    }

    pub fn size(&self) -> usize {
        self.c1 + self.c2
    }

    /// All two-column partitions of `n`, longest first column first.
    pub fn all(n: usize) -> Vec<Self> {
        (n.div_ceil(2)..=n).rev().map(|c1| Self { c1, c2: n - c1 }).collect()
    }
}

impl fmt::Display for TwoColumnPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.c1, self.c2)
    }
}

/// A standard filling of a two-column shape; columns are read top to bottom.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tableau {
    pub shape: TwoColumnPartition,
    pub col1: Vec<usize>,
    pub col2: Vec<usize>,
}

impl Tableau {
    /// Top entry of the second column; `n + 1` for a single column.
    pub fn second_column_top(&self) -> usize {
        self.col2.first().copied().unwrap_or(self.shape.size() + 1)
    }

    /// Whether the first column starts `1, 2, ..., p`.
    pub fn first_column_starts_with_run(&self, p: usize) -> bool {
        self.col1.len() >= p && self.col1.iter().take(p).copied().eq(1..=p)
    }
}

/// Every standard Young tableau of the shape.
///
/// Entries `1..=n` are placed in order; entry `k` may go to the second
/// column only while that column is shorter than the first, which is the
/// row condition for two columns.
pub fn enumerate_syt(shape: TwoColumnPartition) -> Vec<Tableau> {
    fn go(
        shape: TwoColumnPartition,
        next: usize,
        col1: &mut Vec<usize>,
        col2: &mut Vec<usize>,
        out: &mut Vec<Tableau>,
    ) {
        if next > shape.size() {
            out.push(Tableau {
                shape,
                col1: col1.clone(),
                col2: col2.clone(),
            });
            return;
        }
        if col1.len() < shape.c1 {
            col1.push(next);
            go(shape, next + 1, col1, col2, out);
            col1.pop();
        }
        if col2.len() < shape.c2 && col2.len() < col1.len() {
            col2.push(next);
            go(shape, next + 1, col1, col2, out);
            col2.pop();
        }
    }
    let mut out = Vec::new();
    go(shape, 1, &mut Vec::new(), &mut Vec::new(), &mut out);
    out
}

/// `f^λ`, the number of standard tableaux.
pub fn syt_count(shape: TwoColumnPartition) -> u64 {
    enumerate_syt(shape).len() as u64
}

/// `N_{λ,p}`: tableaux whose first column begins `1, ..., p`.
pub fn count_n(shape: TwoColumnPartition, p: usize) -> u64 {
    enumerate_syt(shape)
        .iter()
        .filter(|t| t.first_column_starts_with_run(p))
        .count() as u64
}

/// Tableaux whose second column has odd top entry (with the single-column
/// convention that the top entry is `n + 1`).
pub fn theorem_c_multiplicity(shape: TwoColumnPartition) -> u64 {
    enumerate_syt(shape)
        .iter()
        .filter(|t| t.second_column_top() % 2 == 1)
        .count() as u64
}

/// `Σ_{k=0}^{n} (-1)^k N_{λ,k}`.
pub fn theorem_c_alternating(shape: TwoColumnPartition) -> i64 {
    let tableaux = enumerate_syt(shape);
    (0..=shape.size())
        .map(|k| {
            let nk = tableaux
                .iter()
                .filter(|t| t.first_column_starts_with_run(k))
                .count() as i64;
            if k % 2 == 0 {
                nk
            } else {
                -nk
            }
        })
        .sum()
}

/// `Σ_λ N_{λ,m} f^λ` over two-column `λ ⊢ n`.
pub fn induced_rank_from_tableaux(n: usize, m: usize) -> u64 {
    TwoColumnPartition::all(n)
        .into_iter()
        .map(|shape| count_n(shape, m) * syt_count(shape))
        .sum()
}

pub fn to_u64(x: &BigUint) -> u64 {
    x.to_u64().expect("fits in u64")
}

pub(crate) fn signed(x: &BigUint) -> i128 {
    let b = BigInt::from(x.clone());
    debug_assert!(!b.is_negative());
    b.to_i128().expect("fits in i128")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    /// Hook-length formula for a two-column shape: `n! / Π hooks`.
    fn hook_length_count(shape: TwoColumnPartition) -> u64 {
        let (c1, c2) = shape.columns();
        let n = (c1 + c2) as u64;
        let mut hooks = 1u128;
        for row in 0..c1 {
            let arm = if row < c2 { 1 } else { 0 };
            hooks *= (arm + (c1 - row - 1) + 1) as u128; // first column box
            if row < c2 {
                hooks *= ((c2 - row - 1) + 1) as u128; // second column box
            }
        }
        let fact: u128 = (1..=n as u128).product();
        (fact / hooks) as u64
    }

    #[test]
    fn catalan_values() {
        assert_eq!(catalan(0), big(1));
        assert_eq!(catalan(3), big(5));
        assert_eq!(catalan(10), big(16796));
        // oracle: (1/(n+1)) binom(2n, n)
        for n in 0..=25u64 {
            assert_eq!(catalan(n as usize), binomial(2 * n, n) / big(n + 1));
        }
    }

    #[test]
    fn b_values() {
        let row: Vec<_> = (0..=3).map(|m| first_peak_count_b(3, m)).collect();
        assert_eq!(row, vec![big(5), big(5), big(3), big(1)]);
        assert_eq!(first_peak_count_b(4, 3), big(4));
        assert_eq!(first_peak_count_b(5, 2), big(28));
        assert_eq!(first_peak_count_b(3, 4), big(0));
        for n in 0..=15 {
            assert_eq!(first_peak_count_b(n, 0), catalan(n));
        }
    }

    #[test]
    fn b_matches_reflection_form_and_enumeration() {
        for n in 0..=12usize {
            let hist = first_peak_histogram(n);
            for m in 0..=n {
                let (nn, mm) = (n as u64, m as u64);
                let reflection = binomial(2 * nn - mm, nn - mm)
                    - if m < n { binomial(2 * nn - mm, nn - mm - 1) } else { big(0) };
                assert_eq!(first_peak_count_b(n, m), reflection);
                let brute: u64 = hist[m..].iter().sum();
                assert_eq!(first_peak_count_b(n, m), big(brute), "n={n} m={m}");
                if m < n {
                    assert!(first_peak_count_b(n, m) >= first_peak_count_b(n, m + 1));
                }
            }
        }
    }

    #[test]
    fn fine_values() {
        assert_eq!(fine(3), big(2));
        assert_eq!(fine(1), big(0));
        assert_eq!(fine(4), big(6));
        let first: Vec<u64> = (0..=8).map(|n| to_u64(&fine(n))).collect();
        assert_eq!(first, vec![1, 0, 1, 2, 6, 18, 57, 186, 622]);
        for n in 0..=12 {
            assert_eq!(fine(n), big(fine_by_enumeration(n)));
        }
    }

    #[test]
    fn binomial_sum_is_fine() {
        for n in 0..=20 {
            let s = fine_binomial_sum(n);
            assert!(s.is_integer());
            assert_eq!(s, Rational::integer(BigInt::from(fine(n))));
        }
    }

    #[test]
    fn jacobsthal_examples() {
        assert_eq!(jacobsthal_number(4), big(5));
        assert_eq!(jacobsthal_number(20), big(349525));
        assert_eq!(
            odd_ending_compositions(4),
            vec![vec![3, 1], vec![2, 1, 1], vec![1, 3], vec![1, 2, 1], vec![1, 1, 1, 1]]
        );
        assert_eq!(
            opposite_parity_sequences(4),
            vec![vec![3, 2, 1], vec![3, 2], vec![3, 1], vec![3], vec![1]]
        );
        assert_eq!(opposite_parity_sequences(1), vec![Vec::<usize>::new()]);
        assert!(opposite_parity_sequences(3).contains(&vec![]));
    }

    #[test]
    fn jacobsthal_four_ways() {
        for n in 1..=20 {
            let j = jacobsthal_number(n);
            assert_eq!(j, jacobsthal_by_recursion(n));
            if n <= 16 {
                assert_eq!(j, big(odd_ending_compositions(n).len() as u64));
            }
            assert_eq!(j, big(opposite_parity_sequences(n).len() as u64));
        }
    }

    #[test]
    fn syt_examples() {
        let t22 = enumerate_syt(TwoColumnPartition::new(2, 2).unwrap());
        assert_eq!(t22.len(), 2);
        let tops: Vec<_> = t22.iter().map(|t| t.second_column_top()).collect();
        assert_eq!(tops, vec![3, 2]);

        let t31 = enumerate_syt(TwoColumnPartition::new(3, 1).unwrap());
        let mut tops: Vec<_> = t31.iter().map(|t| t.col2[0]).collect();
        tops.sort();
        assert_eq!(tops, vec![2, 3, 4]);

        for n in 0..=8 {
            assert_eq!(enumerate_syt(TwoColumnPartition::column(n)).len(), 1);
        }
        assert!(TwoColumnPartition::new(1, 2).is_err());
    }

    #[test]
    fn syt_counts_match_hook_lengths() {
        for n in 0..=14 {
            for shape in TwoColumnPartition::all(n) {
                assert_eq!(syt_count(shape), hook_length_count(shape), "{shape}");
            }
        }
    }

    #[test]
    fn tableaux_are_standard() {
        for shape in TwoColumnPartition::all(7) {
            for t in enumerate_syt(shape) {
                assert!(t.col1.windows(2).all(|w| w[0] < w[1]));
                assert!(t.col2.windows(2).all(|w| w[0] < w[1]));
                for (a, b) in t.col1.iter().zip(&t.col2) {
                    assert!(a < b);
                }
                let mut all: Vec<_> = t.col1.iter().chain(&t.col2).copied().collect();
                all.sort();
                assert_eq!(all, (1..=7).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn n_counts() {
        assert_eq!(count_n(TwoColumnPartition::new(3, 1).unwrap(), 2), 2);
        assert_eq!(count_n(TwoColumnPartition::new(2, 2).unwrap(), 2), 1);
        for n in 0..=6 {
            for p in 0..=n {
                assert_eq!(count_n(TwoColumnPartition::column(n), p), 1);
            }
        }
        for shape in TwoColumnPartition::all(6) {
            assert_eq!(count_n(shape, 0), syt_count(shape));
        }
    }

    #[test]
    fn multiplicities_n4() {
        let shapes = [(2, 2), (3, 1), (4, 0)];
        let mut total = 0;
        for (c1, c2) in shapes {
            let shape = TwoColumnPartition::new(c1, c2).unwrap();
            assert_eq!(theorem_c_multiplicity(shape), 1);
            assert_eq!(theorem_c_alternating(shape), 1);
            total += theorem_c_multiplicity(shape) * syt_count(shape);
        }
        assert_eq!(total, 6);
    }

    #[test]
    fn single_column_multiplicity_by_parity() {
        for n in 1..=12 {
            let m = theorem_c_multiplicity(TwoColumnPartition::column(n));
            assert_eq!(m, if n % 2 == 0 { 1 } else { 0 });
        }
    }

    #[test]
    fn multiplicities_sum_to_fine() {
        for n in 1..=12 {
            let total: u64 = TwoColumnPartition::all(n)
                .into_iter()
                .map(|s| {
                    assert_eq!(theorem_c_multiplicity(s) as i64, theorem_c_alternating(s));
                    theorem_c_multiplicity(s) * syt_count(s)
                })
                .sum();
            assert_eq!(big(total), fine(n), "n={n}");
        }
    }

    #[test]
    fn induction_shadow() {
        for n in 0..=10 {
            for m in 0..=n {
                assert_eq!(big(induced_rank_from_tableaux(n, m)), first_peak_count_b(n, m));
            }
        }
    }
}
