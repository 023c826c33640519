//! Named check suites over a range of strand counts, collected into a
//! deterministic JSON-serializable report.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{braiding_s, braiding_s_inv, AlgebraElement};
use crate::coeff::{Convention, ConventionTag, LaurentPoly, Rational};
use crate::combin::{
    catalan, count_n, fine_by_enumeration, first_peak_count_b, induced_rank_from_tableaux,
    jacobsthal_number, syt_count, theorem_c_alternating, theorem_c_multiplicity, to_u64,
    TwoColumnPartition,
};
use crate::complex::{
    build_complex, euler_characteristic_of, homology_ranks, theorem_b_rank_identity,
    ChainComplexData, HomologyReport,
};
use crate::diagram::{enumerate_diagrams, Diagram};
use crate::error::{Error, Result};
use crate::indmod::black_box_basis;
use crate::jacobsthal::{jacobsthal_element, jacobsthal_kernel_rank, verify_theorem_d_on, RatioSign};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    Relations,
    Braid,
    Bijection,
    Bcounts,
    Ddzero,
    Euler,
    Homology,
    Hopf,
    ThmB,
    ThmC,
    ThmD,
    Fineberg,
}

impl Check {
    pub const ALL: [Check; 12] = [
        Check::Relations,
        Check::Braid,
        Check::Bijection,
        Check::Bcounts,
        Check::Ddzero,
        Check::Euler,
        Check::Homology,
        Check::Hopf,
        Check::ThmB,
        Check::ThmC,
        Check::ThmD,
        Check::Fineberg,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Relations => "relations",
            Check::Braid => "braid",
            Check::Bijection => "bijection",
            Check::Bcounts => "bcounts",
            Check::Ddzero => "ddzero",
            Check::Euler => "euler",
            Check::Homology => "homology",
            Check::Hopf => "hopf",
            Check::ThmB => "thmB",
            Check::ThmC => "thmC",
            Check::ThmD => "thmD",
            Check::Fineberg => "fineberg",
        }
    }

    fn needs_complex(self) -> bool {
        matches!(
            self,
            Check::Ddzero | Check::Homology | Check::Hopf | Check::ThmD | Check::Fineberg
        )
    }

    fn needs_homology(self) -> bool {
        matches!(self, Check::Homology | Check::Hopf | Check::Fineberg)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown check `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub details: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub tool_version: String,
    pub n_min: usize,
    pub n_max: usize,
    pub convention: ConventionTag,
    pub points: Vec<Rational>,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub n_max: usize,
    pub convention: ConventionTag,
    pub points: Vec<Rational>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            n_max: 4,
            convention: ConventionTag::A,
            points: vec![Rational::integer(2), Rational::integer(3)],
        }
    }
}

/// Per-`n` outcome of one check.
struct Outcome {
    ok: bool,
    details: Value,
}

fn outcome(ok: bool, details: Value) -> Outcome {
    Outcome { ok, details }
}

/// Runs the checks (deduplicated, in canonical order) for `1 <= n <= n_max`.
pub fn run_checks(checks: &[Check], opts: &VerifyOptions) -> Result<VerificationReport> {
    if opts.n_max == 0 {
        return Err(Error::IndexOutOfRange { index: 0, n: 0 });
    }
    let mut selected = checks.to_vec();
    selected.sort();
    selected.dedup();
    let conv = Convention::new(opts.convention);

    let mut per_check: BTreeMap<Check, Vec<(usize, Outcome)>> = BTreeMap::new();
    for n in 1..=opts.n_max {
        let cx = if selected.iter().any(|c| c.needs_complex()) {
            Some(build_complex(n, &conv)?)
        } else {
            None
        };
        let hom = match &cx {
            Some(cx) if selected.iter().any(|c| c.needs_homology()) => {
                Some(homology_ranks(cx, &opts.points)?)
            }
            _ => None,
        };
        for &check in &selected {
            let o = run_one(check, n, &conv, cx.as_ref(), hom.as_ref(), opts)?;
            per_check.entry(check).or_default().push((n, o));
        }
    }

    let mut results = Vec::new();
    for (check, outcomes) in per_check {
        let mut ok = outcomes.iter().all(|(_, o)| o.ok);
        let mut per_n: Vec<Value> = outcomes
            .into_iter()
            .map(|(n, o)| json!({ "n": n, "ok": o.ok, "details": o.details }))
            .collect();
        let mut summary = Value::Null;
        if check == Check::ThmD {
            // one sign must work for every n in the range
            let mut common: Vec<RatioSign> = RatioSign::BOTH.to_vec();
            for entry in &per_n {
                let signs = &entry["details"]["signs_matching_all"];
                common.retain(|s| signs.as_array().is_some_and(|a| a.contains(&json!(s.value()))));
            }
            let consistent = common.len() == 1;
            ok &= consistent;
            summary = json!({ "consistent_sign": common.first().map(|s| s.value()) });
            for entry in &mut per_n {
                entry["ok"] = json!(entry["ok"] == json!(true) && consistent);
            }
        }
        let mut details = json!({ "per_n": per_n });
        if !summary.is_null() {
            details["summary"] = summary;
        }
        results.push(CheckResult {
            name: check.name().to_string(),
            status: Status::from_bool(ok),
            details,
        });
    }

    Ok(VerificationReport {
        schema: SCHEMA,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        n_min: 1,
        n_max: opts.n_max,
        convention: opts.convention,
        points: opts.points.clone(),
        checks: results,
    })
}

fn run_one(
    check: Check,
    n: usize,
    conv: &Convention,
    cx: Option<&ChainComplexData>,
    hom: Option<&HomologyReport>,
    opts: &VerifyOptions,
) -> Result<Outcome> {
    let cx = || cx.expect("complex built for this check");
    let hom = || hom.expect("homology computed for this check");
    Ok(match check {
        Check::Relations => {
            let failures = u_relation_failures(n)?;
            outcome(failures.is_empty(), json!({ "failures": failures }))
        }
        Check::Braid => {
            let failures = braid_relation_failures(n, conv)?;
            outcome(failures.is_empty(), json!({ "failures": failures }))
        }
        Check::Bijection => {
            let all = enumerate_diagrams(n)?;
            let bad = all
                .iter()
                .filter(|d| Diagram::from_dyck(&d.to_dyck()).ok().as_ref() != Some(d))
                .count();
            outcome(bad == 0, json!({ "diagrams": all.len(), "failures": bad }))
        }
        Check::Bcounts => {
            let total = enumerate_diagrams(n)?.len();
            let mut mismatches = Vec::new();
            for m in 0..=n {
                let size = black_box_basis(n, m)?.len() as u64;
                let expect = to_u64(&first_peak_count_b(n, m));
                if size != expect {
                    mismatches.push(json!({ "m": m, "basis": size, "formula": expect }));
                }
            }
            let cat = to_u64(&catalan(n));
            outcome(
                total as u64 == cat && mismatches.is_empty(),
                json!({ "diagrams": total, "catalan": cat, "mismatches": mismatches }),
            )
        }
        Check::Ddzero => {
            let pairs = cx().dd_zero();
            let bad: Vec<usize> = pairs.iter().filter(|(_, z)| !z).map(|(i, _)| *i).collect();
            outcome(bad.is_empty(), json!({ "pairs": pairs.len(), "nonzero_at": bad }))
        }
        Check::Euler => {
            let chi = euler_characteristic_of(n)?;
            let f = fine_by_enumeration(n) as i64;
            let expect = if (n - 1).is_multiple_of(2) { f } else { -f };
            outcome(chi == expect, json!({ "chi": chi, "fine": f }))
        }
        Check::Homology => {
            let h = hom();
            let f = fine_by_enumeration(n) as usize;
            let ranks: Vec<usize> = h.degrees.iter().map(|d| d.homology_rank).collect();
            outcome(
                h.acyclic_below_top() && h.fineberg_rank == f,
                json!({
                    "homology_ranks": ranks,
                    "fineberg_rank": h.fineberg_rank,
                    "fine": f,
                    "rank_sources": h.degrees.iter().map(|d| d.rank_source.clone()).collect::<Vec<_>>(),
                }),
            )
        }
        Check::Hopf => {
            let h = hom();
            outcome(
                h.euler_characteristic == h.homology_euler_characteristic,
                json!({
                    "chain_side": h.euler_characteristic,
                    "homology_side": h.homology_euler_characteristic,
                }),
            )
        }
        Check::ThmB => {
            let ok = theorem_b_rank_identity(n)?;
            let alt: i64 = (0..=n)
                .map(|m| {
                    let b = to_u64(&first_peak_count_b(n, m)) as i64;
                    if m % 2 == 0 {
                        b
                    } else {
                        -b
                    }
                })
                .sum();
            outcome(ok, json!({ "alternating_sum": alt }))
        }
        Check::ThmC => theorem_c_outcome(n),
        Check::ThmD => {
            let rep = verify_theorem_d_on(cx())?;
            let counts_ok = (1..=n).all(|l| {
                jacobsthal_element(n, l, conv, RatioSign::Minus)
                    .map(|j| j.term_count as u64 == to_u64(&jacobsthal_number(l)))
                    .unwrap_or(false)
            });
            let details = json!({
                "signs_matching_all": rep.signs_matching_all,
                "term_counts_ok": counts_ok,
                "degrees": rep.degrees,
            });
            outcome(!rep.signs_matching_all.is_empty() && counts_ok, details)
        }
        Check::Fineberg => {
            let k = jacobsthal_kernel_rank(cx(), &opts.points, RatioSign::Minus)?;
            let f = fine_by_enumeration(n) as usize;
            outcome(
                k.kernel_rank == f && k.kernel_rank == hom().fineberg_rank,
                json!({
                    "kernel_rank": k.kernel_rank,
                    "fineberg_rank": hom().fineberg_rank,
                    "fine": f,
                    "rank_source": k.rank_source,
                }),
            )
        }
    })
}

fn u(n: usize, i: usize) -> Result<AlgebraElement> {
    AlgebraElement::generator_u(n, i)
}

/// `U_i^2 = a U_i`, `U_i U_{i±1} U_i = U_i`, `U_i U_j = U_j U_i` for `|i-j| >= 2`.
pub fn u_relation_failures(n: usize) -> Result<Vec<String>> {
    let mut failures = Vec::new();
    let a = LaurentPoly::loop_value();
    for i in 1..n {
        let ui = u(n, i)?;
        if ui.mul(&ui)? != ui.scale(&a) {
            failures.push(format!("U_{i}^2"));
        }
        for j in 1..n {
            let uj = u(n, j)?;
            if i.abs_diff(j) == 1 && ui.mul(&uj)?.mul(&ui)? != ui {
                failures.push(format!("U_{i} U_{j} U_{i}"));
            }
            if i.abs_diff(j) >= 2 && ui.mul(&uj)? != uj.mul(&ui)? {
                failures.push(format!("U_{i} U_{j} commute"));
            }
        }
    }
    Ok(failures)
}

/// `s_i s_i^{-1} = 1`, `s_i s_{i+1} s_i = s_{i+1} s_i s_{i+1}`, far commutation.
pub fn braid_relation_failures(n: usize, c: &Convention) -> Result<Vec<String>> {
    let mut failures = Vec::new();
    let id = AlgebraElement::identity(n)?;
    for i in 1..n {
        let si = braiding_s(n, i, c)?;
        if si.mul(&braiding_s_inv(n, i, c)?)? != id {
            failures.push(format!("s_{i} s_{i}^-1"));
        }
        if i + 1 < n {
            let sj = braiding_s(n, i + 1, c)?;
            if si.mul(&sj)?.mul(&si)? != sj.mul(&si)?.mul(&sj)? {
                failures.push(format!("braid s_{i} s_{}", i + 1));
            }
        }
        for j in i + 2..n {
            let sj = braiding_s(n, j, c)?;
            if si.mul(&sj)? != sj.mul(&si)? {
                failures.push(format!("s_{i} s_{j} commute"));
            }
        }
    }
    Ok(failures)
}

fn theorem_c_outcome(n: usize) -> Outcome {
    let mut ok = true;
    let mut shapes = Vec::new();
    let mut weighted = 0u64;
    for shape in TwoColumnPartition::all(n) {
        let m = theorem_c_multiplicity(shape);
        let alt = theorem_c_alternating(shape);
        let f = syt_count(shape);
        ok &= m as i64 == alt;
        weighted += m * f;
        shapes.push(json!({
            "shape": shape.to_string(),
            "multiplicity": m,
            "alternating": alt,
            "f": f,
        }));
    }
    let fine = fine_by_enumeration(n);
    ok &= weighted == fine;
    let mut induction = Vec::new();
    for m in 0..=n {
        let b = to_u64(&first_peak_count_b(n, m));
        let t = induced_rank_from_tableaux(n, m);
        ok &= b == t;
        induction.push(json!({ "m": m, "b": b, "tableaux": t }));
    }
    // N_{λ,0} is f^λ
    ok &= TwoColumnPartition::all(n)
        .into_iter()
        .all(|s| count_n(s, 0) == syt_count(s));
    outcome(
        ok,
        json!({ "shapes": shapes, "weighted_sum": weighted, "fine": fine, "induction": induction }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_names_round_trip() {
        for c in Check::ALL {
            assert_eq!(c.name().parse::<Check>().unwrap(), c);
        }
        assert!("nope".parse::<Check>().is_err());
    }

    #[test]
    fn all_checks_pass_small() {
        for tag in ConventionTag::ALL {
            let opts = VerifyOptions {
                n_max: 4,
                convention: tag,
                ..Default::default()
            };
            let rep = run_checks(&Check::ALL, &opts).unwrap();
            for c in &rep.checks {
                assert_eq!(c.status, Status::Pass, "{} {:?}", c.name, c.details);
            }
            assert_eq!(rep.checks.len(), 12);
        }
    }

    #[test]
    fn ratio_sign_needs_two_strands() {
        let opts = VerifyOptions {
            n_max: 1,
            ..Default::default()
        };
        let rep = run_checks(&[Check::ThmD], &opts).unwrap();
        assert_eq!(rep.checks[0].status, Status::Fail);
        let opts = VerifyOptions {
            n_max: 2,
            ..Default::default()
        };
        let rep = run_checks(&[Check::ThmD], &opts).unwrap();
        assert_eq!(rep.checks[0].status, Status::Pass);
        assert_eq!(rep.checks[0].details["summary"]["consistent_sign"], json!(-1));
    }

    #[test]
    fn report_is_deterministic() {
        let opts = VerifyOptions::default();
        let a = serde_json::to_string(&run_checks(&Check::ALL, &opts).unwrap()).unwrap();
        let b = serde_json::to_string(&run_checks(&Check::ALL, &opts).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}
