//! Jacobsthal elements of `TL_n` and the check that right multiplication by
//! them reproduces the differentials of `W(n)`.
//!
//! ```text
//! J_l^n = Σ (-1)^{(r-1)+l} ρ^r U_{a_1+n-l} ··· U_{a_r+n-l}
//! ```
//!
//! over `l > a_1 > ... > a_r > 0` with `l - a_1` odd (the empty sequence is
//! allowed for odd `l`), where `ρ = ratio_sign · (μ/λ)`.

use std::fmt;

use serde::Serialize;

use crate::algebra::{word_product, AlgebraElement, GeneratorKind};
use crate::coeff::{Convention, ConventionTag, LaurentPoly, Rational};
use crate::combin::opposite_parity_sequences;
use crate::complex::{build_complex, right_multiplication_matrix, ChainComplexData};
use crate::error::{Error, Result};
use crate::indmod::black_box_basis;
use crate::linalg::{rank_at, rank_lower_bound, PolyMatrix};
use crate::par;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RatioSign {
    Plus,
    Minus,
}

impl RatioSign {
    pub const BOTH: [RatioSign; 2] = [RatioSign::Plus, RatioSign::Minus];

    pub fn value(self) -> i64 {
        match self {
            RatioSign::Plus => 1,
            RatioSign::Minus => -1,
        }
    }
}

impl fmt::Display for RatioSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RatioSign::Plus => "+1",
            RatioSign::Minus => "-1",
        })
    }
}

impl Serialize for RatioSign {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i64(self.value())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobsthalElement {
    pub n: usize,
    pub l: usize,
    pub element: AlgebraElement,
    /// Monomials in the defining sum, before any simplification.
    pub term_count: usize,
    pub ratio_sign: RatioSign,
}

pub fn jacobsthal_element(
    n: usize,
    l: usize,
    c: &Convention,
    ratio_sign: RatioSign,
) -> Result<JacobsthalElement> {
    if l > n {
        return Err(Error::JacobsthalOutOfRange { n, l });
    }
    let rho = c
        .mu_over_lambda()
        .scale(&ratio_sign.value().into());
    let sequences = opposite_parity_sequences(l);
    let mut element = AlgebraElement::zero(n);
    for seq in &sequences {
        let r = seq.len();
        let indices: Vec<usize> = seq.iter().map(|a| a + n - l).collect();
        let mut coeff = rho.pow(r as u32);
        // (r - 1) + l, shifted by 2 to stay non-negative
        if (r + l + 1) % 2 == 1 {
            coeff = -&coeff;
        }
        let monomial = word_product(n, &indices, c, GeneratorKind::U)?;
        element = element.add(&monomial.scale(&coeff))?;
    }
    Ok(JacobsthalElement {
        n,
        l,
        element,
        term_count: sequences.len(),
        ratio_sign,
    })
}

/// The first entry where two matrices disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryMismatch {
    pub row: usize,
    pub col: usize,
    pub differential: String,
    pub jacobsthal: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignComparison {
    pub ratio_sign: RatioSign,
    pub matches: bool,
    pub first_mismatch: Option<EntryMismatch>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeComparison {
    pub degree: usize,
    pub signs: Vec<SignComparison>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremDReport {
    pub n: usize,
    pub convention: ConventionTag,
    pub degrees: Vec<DegreeComparison>,
    /// Signs for which every degree matches.
    pub signs_matching_all: Vec<RatioSign>,
}

impl TheoremDReport {
    /// The sign, when exactly one matches in every degree.
    pub fn unique_sign(&self) -> Option<RatioSign> {
        match self.signs_matching_all.as_slice() {
            [s] => Some(*s),
            _ => None,
        }
    }
}

/// Matrix of right multiplication by `J_{i+1}^n` from degree `i` to degree
/// `i - 1` of `W(n)`.
pub fn jacobsthal_matrix(
    cx: &ChainComplexData,
    i: usize,
    sign: RatioSign,
) -> Result<PolyMatrix> {
    let j = jacobsthal_element(cx.n(), i + 1, cx.convention(), sign)?;
    right_multiplication_matrix(cx.basis(i as i64), cx.basis(i as i64 - 1), &j.element)
}

pub fn verify_theorem_d(n: usize, c: &Convention) -> Result<TheoremDReport> {
    verify_theorem_d_on(&build_complex(n, c)?)
}

pub fn verify_theorem_d_on(cx: &ChainComplexData) -> Result<TheoremDReport> {
    let n = cx.n();
    let degrees = par::map_range(n, |i| -> Result<DegreeComparison> {
        let d = cx.differential(i);
        let mut signs = Vec::with_capacity(2);
        for sign in RatioSign::BOTH {
            let m = jacobsthal_matrix(cx, i, sign)?;
            let first_mismatch = d.first_difference(&m).map(|(row, col)| EntryMismatch {
                row,
                col,
                differential: d.get(row, col).to_string(),
                jacobsthal: m.get(row, col).to_string(),
            });
            signs.push(SignComparison {
                ratio_sign: sign,
                matches: first_mismatch.is_none(),
                first_mismatch,
            });
        }
        Ok(DegreeComparison { degree: i, signs })
    });
    let degrees = degrees.into_iter().collect::<Result<Vec<_>>>()?;
    let signs_matching_all = RatioSign::BOTH
        .into_iter()
        .filter(|s| {
            degrees
                .iter()
                .all(|d| d.signs.iter().any(|c| c.ratio_sign == *s && c.matches))
        })
        .collect();
    Ok(TheoremDReport {
        n,
        convention: cx.convention().tag,
        degrees,
        signs_matching_all,
    })
}

/// Matrix of `x ↦ x · J_n^n` on all of `TL_n`.
pub fn top_jacobsthal_matrix(n: usize, c: &Convention, sign: RatioSign) -> Result<PolyMatrix> {
    let basis = black_box_basis(n, 0)?;
    let j = jacobsthal_element(n, n, c, sign)?;
    right_multiplication_matrix(&basis, &basis, &j.element)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelReport {
    pub n: usize,
    pub convention: ConventionTag,
    pub ratio_sign: RatioSign,
    pub points: Vec<Rational>,
    pub kernel_rank: usize,
    /// Whether the matrix is `d^{n-1}` with zero rows added for the diagrams
    /// that the size-1 box kills.
    pub equals_top_differential: bool,
    /// `certified` or `exact`.
    pub rank_source: String,
}

/// Whether `full` (rows indexed by all of `TL_n`) is `top` (rows indexed by
/// the size-1 box basis) padded with zero rows.
fn is_zero_padding_of(full: &PolyMatrix, top: &PolyMatrix, n: usize) -> Result<bool> {
    if full.cols() != top.cols() {
        return Ok(false);
    }
    let all = black_box_basis(n, 0)?;
    let boxed = black_box_basis(n, 1)?;
    let mut padded = PolyMatrix::zeros(all.len(), top.cols());
    for c in 0..top.cols() {
        for (&r, x) in top.column(c) {
            let row = all.index_of(boxed.get(r)).expect("box basis lies in TL_n");
            padded.set(row, c, x.clone());
        }
    }
    Ok(padded == *full)
}

/// Kernel rank of right multiplication by `J_n^n` on `TL_n` at each point.
///
/// The modular ranks give a lower bound on the rank. When the matrix is a
/// zero-row padding of `d^{n-1}`, its rank is the rank of `d^{n-1}`, and the
/// upper bound from `d∘d = 0` closes the gap; otherwise exact elimination
/// decides.
pub fn jacobsthal_kernel_rank(
    cx: &ChainComplexData,
    points: &[Rational],
    sign: RatioSign,
) -> Result<KernelReport> {
    let n = cx.n();
    let mut distinct = points.to_vec();
    distinct.sort();
    distinct.dedup();
    if distinct.len() < 2 {
        return Err(Error::NotEnoughPoints);
    }
    if points.iter().any(Rational::is_zero) {
        return Err(Error::NotAUnit);
    }
    let m = top_jacobsthal_matrix(n, cx.convention(), sign)?;
    let top = cx.differential(n - 1);
    let padded = is_zero_padding_of(&m, top, n)?;
    // rank of d^{n-2} bounds rank d^{n-1} from above via d∘d = 0
    let prev_rank = |x: &Rational| -> Result<usize> {
        if n < 2 {
            return Ok(0);
        }
        crate::complex::certified_rank(cx, n - 2, x)
    };
    let per_point = par::map(points, |x| -> Result<(usize, bool)> {
        let lower = rank_lower_bound(&m, x);
        if padded {
            let upper = top.cols().min(top.rows() - prev_rank(x)?);
            if lower == upper {
                return Ok((lower, true));
            }
        }
        Ok((rank_at(&m, x)?, false))
    });
    let per_point = per_point.into_iter().collect::<Result<Vec<_>>>()?;
    let ranks: Vec<usize> = per_point.iter().map(|(r, _)| *r).collect();
    if ranks.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::SpecializationDisagreement {
            degree: n as i64 - 1,
            ranks,
        });
    }
    let certified = per_point.iter().all(|(_, c)| *c);
    Ok(KernelReport {
        n,
        convention: cx.convention().tag,
        ratio_sign: sign,
        points: points.to_vec(),
        kernel_rank: m.cols() - ranks[0],
        equals_top_differential: padded,
        rank_source: if certified { "certified" } else { "exact" }.to_string(),
    })
}

/// `J_1^n = 1`, handy for callers that only want the scalar part.
pub fn constant_term(j: &JacobsthalElement) -> LaurentPoly {
    j.element.augment()
}
