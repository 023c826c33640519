//! The complex of planar injective words `W(n)`.
//!
//! Degree `i` (for `-1 <= i <= n-1`) is the induced module with a black box of
//! size `n-i-1`; degree `-1` has box size `n`, which leaves only the identity
//! diagram, so it is the trivial module. The differential `d^i` is right
//! multiplication by
//!
//! ```text
//! D_i = Σ_{j=0}^{i} (-1)^j λ^{-j} s_{n-i+j-1} ··· s_{n-i}
//! ```
//!
//! (indices decreasing left to right) followed by projection to the larger box.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{word_product, AlgebraElement, GeneratorKind};
use crate::coeff::{Convention, ConventionTag, LaurentPoly, Rational};
use crate::diagram::enumerate_diagrams;
use crate::error::{Error, Result};
use crate::indmod::{black_box_basis, project_onto, BlackBoxBasis};
use crate::linalg::{rank_at, rank_lower_bound, MatrixDump, PolyMatrix};
use crate::par;

/// Chain modules and materialized differentials of `W(n)`.
#[derive(Clone, Debug)]
pub struct ChainComplexData {
    n: usize,
    convention: Convention,
    /// `bases[i + 1]` is the basis in degree `i`.
    bases: Vec<Arc<BlackBoxBasis>>,
    /// `differentials[i]` is `d^i` from degree `i` to degree `i - 1`.
    differentials: Vec<PolyMatrix>,
}

/// The element `D_i` whose right action gives `d^i`.
pub fn boundary_element(n: usize, i: usize, c: &Convention) -> Result<AlgebraElement> {
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    let lambda_inv = c.lambda_inv();
    let mut sign_weight = LaurentPoly::one();
    let mut out = AlgebraElement::zero(n);
    for j in 0..=i {
        let indices: Vec<usize> = (n - i..n - i + j).rev().collect();
        let word = word_product(n, &indices, c, GeneratorKind::S)?;
        out = out.add(&word.scale(&sign_weight))?;
        sign_weight = -&(&sign_weight * &lambda_inv);
    }
    Ok(out)
}

/// Matrix of `x ↦ x · elt` followed by projection, from `source` to `target`.
pub fn right_multiplication_matrix(
    source: &BlackBoxBasis,
    target: &Arc<BlackBoxBasis>,
    elt: &AlgebraElement,
) -> Result<PolyMatrix> {
    let columns = par::map(source.diagrams(), |x| -> Result<BTreeMap<usize, LaurentPoly>> {
        let image = AlgebraElement::from_diagram(x.clone()).mul(elt)?;
        let v = project_onto(&image, target)?;
        Ok(v.coords().clone())
    });
    let columns = columns.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(PolyMatrix::from_columns(target.len(), columns))
}

impl ChainComplexData {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn convention(&self) -> &Convention {
        &self.convention
    }

    /// Basis in degree `i`, `-1 <= i <= n-1`.
    pub fn basis(&self, degree: i64) -> &Arc<BlackBoxBasis> {
        &self.bases[(degree + 1) as usize]
    }

    pub fn chain_rank(&self, degree: i64) -> usize {
        self.basis(degree).len()
    }

    /// `d^i`, `0 <= i <= n-1`.
    pub fn differential(&self, i: usize) -> &PolyMatrix {
        &self.differentials[i]
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> {
        -1..self.n as i64
    }

    /// For each `i >= 1`, whether `d^{i-1} ∘ d^i` is the zero matrix.
    pub fn dd_zero(&self) -> Vec<(usize, bool)> {
        (1..self.n)
            .map(|i| {
                let comp = self.differentials[i - 1].compose(&self.differentials[i]);
                (i, comp.is_zero())
            })
            .collect()
    }

    pub fn dump(&self) -> ComplexDump {
        ComplexDump {
            schema: 1,
            n: self.n,
            convention: self.convention.tag,
            bases: self
                .degrees()
                .map(|d| BasisDump {
                    degree: d,
                    box_size: self.basis(d).box_size(),
                    diagrams: self.basis(d).diagrams().iter().map(|x| x.to_string()).collect(),
                })
                .collect(),
            differentials: self
                .differentials
                .iter()
                .enumerate()
                .map(|(i, m)| DifferentialDump {
                    degree: i,
                    matrix: m.into(),
                })
                .collect(),
        }
    }
}

pub fn build_complex(n: usize, c: &Convention) -> Result<ChainComplexData> {
    if n == 0 {
        return Err(Error::IndexOutOfRange { index: 0, n: 0 });
    }
    let bases = (-1..n as i64)
        .map(|d| black_box_basis(n, (n as i64 - d - 1) as usize))
        .collect::<Result<Vec<_>>>()?;
    let differentials = (0..n)
        .map(|i| {
            let elt = boundary_element(n, i, c)?;
            right_multiplication_matrix(&bases[i + 1], &bases[i], &elt)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ChainComplexData {
        n,
        convention: c.clone(),
        bases,
        differentials,
    })
}

/// `Σ_{i=-1}^{n-1} (-1)^i rank C_i`, including the augmentation degree.
pub fn euler_characteristic(cx: &ChainComplexData) -> i64 {
    alternating_sum(cx.degrees().map(|d| (d, cx.chain_rank(d))))
}

fn alternating_sum(ranks: impl Iterator<Item = (i64, usize)>) -> i64 {
    ranks
        .map(|(d, r)| if d.rem_euclid(2) == 0 { r as i64 } else { -(r as i64) })
        .sum()
}

/// Chain module ranks of `W(n)` by counting black-box diagrams, without
/// building any differential. Pairs are `(degree, rank)`.
pub fn chain_module_ranks(n: usize) -> Result<Vec<(i64, usize)>> {
    let all = enumerate_diagrams(n)?;
    let mut by_height = vec![0usize; n + 1];
    for d in &all {
        by_height[d.first_peak_height()] += 1;
    }
    Ok((-1..n as i64)
        .map(|d| {
            let m = (n as i64 - d - 1) as usize;
            (d, by_height[m..].iter().sum())
        })
        .collect())
}

pub fn euler_characteristic_of(n: usize) -> Result<i64> {
    Ok(alternating_sum(chain_module_ranks(n)?.into_iter()))
}

/// How differential ranks are obtained at a specialization point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RankMethod {
    /// Fraction-free elimination over the integers for every differential.
    Exact,
    /// Modular lower bounds squeezed against the upper bounds forced by
    /// `d∘d = 0`; any degree where the bounds do not meet falls back to
    /// exact elimination.
    Certified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeRanks {
    pub degree: i64,
    pub chain_rank: usize,
    /// Rank of `d^i` leaving this degree (0 for degree -1).
    pub differential_rank: usize,
    pub homology_rank: usize,
    /// `certified`, `exact`, or `trivial`.
    pub rank_source: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    pub n: usize,
    pub convention: ConventionTag,
    pub points: Vec<Rational>,
    pub degrees: Vec<DegreeRanks>,
    pub euler_characteristic: i64,
    /// `Σ (-1)^i rank H_i`.
    pub homology_euler_characteristic: i64,
    pub fineberg_rank: usize,
}

impl HomologyReport {
    /// Whether `H_d = 0` for `-1 <= d <= n-2`.
    pub fn acyclic_below_top(&self) -> bool {
        self.degrees
            .iter()
            .filter(|d| d.degree < self.n as i64 - 1)
            .all(|d| d.homology_rank == 0)
    }
}

/// Ranks of every differential at one point. `ranks[i]` is the rank of `d^i`.
fn differential_ranks_at(
    cx: &ChainComplexData,
    x: &Rational,
    method: RankMethod,
) -> Result<(Vec<usize>, Vec<&'static str>)> {
    let n = cx.n;
    match method {
        RankMethod::Exact => {
            let ranks = par::map_range(n, |i| rank_at(&cx.differentials[i], x));
            let ranks = ranks.into_iter().collect::<Result<Vec<_>>>()?;
            Ok((ranks, vec!["exact"; n]))
        }
        RankMethod::Certified => differential_ranks_at_upto(cx, x, n),
    }
}

/// Certified ranks of `d^0, ..., d^{count-1}` at `x`.
fn differential_ranks_at_upto(
    cx: &ChainComplexData,
    x: &Rational,
    count: usize,
) -> Result<(Vec<usize>, Vec<&'static str>)> {
    if x.is_zero() {
        return Err(Error::NotAUnit);
    }
    let lower = par::map_range(count, |i| rank_lower_bound(&cx.differentials[i], x));
    let mut ranks = Vec::with_capacity(count);
    let mut sources = Vec::with_capacity(count);
    let mut prev = 0usize;
    for (i, &low) in lower.iter().enumerate() {
        let d = &cx.differentials[i];
        let upper = d.cols().min(d.rows() - prev);
        let r = if low == upper {
            sources.push("certified");
            upper
        } else {
            sources.push("exact");
            rank_at(d, x)?
        };
        ranks.push(r);
        prev = r;
    }
    Ok((ranks, sources))
}

/// Rank of `d^i` at `x` by the certified squeeze (exact fallback).
pub fn certified_rank(cx: &ChainComplexData, i: usize, x: &Rational) -> Result<usize> {
    let (ranks, _) = differential_ranks_at_upto(cx, x, i + 1)?;
    Ok(ranks[i])
}

pub fn homology_ranks(cx: &ChainComplexData, points: &[Rational]) -> Result<HomologyReport> {
    homology_ranks_with(cx, points, RankMethod::Certified)
}

pub fn homology_ranks_with(
    cx: &ChainComplexData,
    points: &[Rational],
    method: RankMethod,
) -> Result<HomologyReport> {
    let mut distinct = points.to_vec();
    distinct.sort();
    distinct.dedup();
    if distinct.len() < 2 {
        return Err(Error::NotEnoughPoints);
    }
    if points.iter().any(Rational::is_zero) {
        return Err(Error::NotAUnit);
    }
    let n = cx.n;
    let per_point = par::map(points, |x| differential_ranks_at(cx, x, method));
    let per_point = per_point.into_iter().collect::<Result<Vec<_>>>()?;

    for i in 0..n {
        let ranks: Vec<usize> = per_point.iter().map(|(r, _)| r[i]).collect();
        if ranks.windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::SpecializationDisagreement {
                degree: i as i64,
                ranks,
            });
        }
    }
    let (ranks, _) = &per_point[0];
    let mut degrees = Vec::with_capacity(n + 1);
    for d in cx.degrees() {
        let chain_rank = cx.chain_rank(d);
        let out_rank = if d >= 0 { ranks[d as usize] } else { 0 };
        let in_rank = ranks.get((d + 1) as usize).copied().unwrap_or(0);
        let rank_source = if d < 0 {
            "trivial".to_string()
        } else {
            let sources: Vec<&str> = per_point.iter().map(|(_, s)| s[d as usize]).collect();
            if sources.iter().all(|s| *s == "certified") {
                "certified".to_string()
            } else {
                "exact".to_string()
            }
        };
        degrees.push(DegreeRanks {
            degree: d,
            chain_rank,
            differential_rank: out_rank,
            homology_rank: chain_rank - out_rank - in_rank,
            rank_source,
        });
    }
    let euler = euler_characteristic(cx);
    let homology_euler = alternating_sum(degrees.iter().map(|d| (d.degree, d.homology_rank)));
    let fineberg_rank = degrees.last().map_or(0, |d| d.homology_rank);
    Ok(HomologyReport {
        n,
        convention: cx.convention.tag,
        points: points.to_vec(),
        degrees,
        euler_characteristic: euler,
        homology_euler_characteristic: homology_euler,
        fineberg_rank,
    })
}

/// Rank shadow of the alternating-sum formula for the Fineberg module:
/// `(-1)^{n-1} χ(W(n))`, with `χ` from enumerated chain ranks, against
/// `Σ_m (-1)^m B_m(n)` from the closed form. The left side is the Fineberg
/// rank whenever the lower homology vanishes.
pub fn theorem_b_rank_identity(n: usize) -> Result<bool> {
    if n == 0 {
        return Err(Error::IndexOutOfRange { index: 0, n: 0 });
    }
    let chi = euler_characteristic_of(n)?;
    let fineberg = if (n - 1).is_multiple_of(2) { chi } else { -chi };
    let alternating: i128 = (0..=n)
        .map(|m| {
            let b = crate::combin::signed(&crate::combin::first_peak_count_b(n, m));
            if m % 2 == 0 {
                b
            } else {
                -b
            }
        })
        .sum();
    Ok(fineberg as i128 == alternating)
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisDump {
    pub degree: i64,
    pub box_size: usize,
    pub diagrams: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DifferentialDump {
    pub degree: usize,
    pub matrix: MatrixDump,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplexDump {
    pub schema: u32,
    pub n: usize,
    pub convention: ConventionTag,
    pub bases: Vec<BasisDump>,
    pub differentials: Vec<DifferentialDump>,
}
