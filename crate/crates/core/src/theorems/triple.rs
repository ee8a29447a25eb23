//! Checks on a triple `(A, A∖{H}, A^H)` and on single additions.

use serde::Serialize;

use super::{ensure, leftover, remove_one, report, sorted, violation};
use crate::arrangement::{Arrangement, Hyperplane};
use crate::classify::{free_exponents, Verdict, VerdictSummary};
use crate::combinatorics::{
    char_poly, deletion_restriction_check, restriction_size_bound_check, BoundBranch,
    RestrictionBound,
};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct MemberReport {
    pub size: usize,
    pub nvars: usize,
    pub chi: String,
    #[serde(flatten)]
    pub summary: VerdictSummary,
}

impl MemberReport {
    fn of(a: &Arrangement) -> Result<Self> {
        Ok(MemberReport {
            size: a.len(),
            nvars: a.nvars(),
            chi: char_poly(a).chi().to_string(),
            summary: report(a)?.summary(),
        })
    }

    fn free_exponents(&self) -> Option<Vec<u32>> {
        (self.summary.verdict == Verdict::Free)
            .then(|| self.summary.exponents.clone())
            .flatten()
    }

    fn is_strict_with_level(&self, level: i64) -> bool {
        self.summary.verdict == Verdict::StrictPOG
            && self.summary.level.map(i64::from) == Some(level)
    }
}

/// One named implication: whether its hypotheses hold on the instance and,
/// if so, whether the conclusion was confirmed.
#[derive(Clone, Debug, Serialize)]
pub struct CriterionCheck {
    pub name: &'static str,
    pub hypotheses: bool,
    pub confirmed: Option<bool>,
    pub detail: String,
}

impl CriterionCheck {
    fn new(name: &'static str, hypotheses: bool, confirmed: bool, detail: String) -> Self {
        CriterionCheck {
            name,
            hypotheses,
            confirmed: hypotheses.then_some(confirmed),
            detail,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TripleReport {
    pub index: usize,
    pub hyperplane: String,
    pub arrangement: MemberReport,
    pub deletion: MemberReport,
    pub restriction: MemberReport,
    /// `|A′| − |A^H|`.
    pub d: i64,
    pub deletion_restriction_identity: bool,
    /// Freeness of `A`, `A′`, `A^H`.
    pub free: [bool; 3],
    pub checks: Vec<CriterionCheck>,
}

fn fail_on_violation(checks: &[CriterionCheck]) -> Result<()> {
    match checks.iter().find(|c| c.confirmed == Some(false)) {
        Some(c) => Err(violation(format!("{}: {}", c.name, c.detail))),
        None => Ok(()),
    }
}

/// Classify `A`, `A∖{H_i}` and `A^{H_i}` and check every implication among
/// them that applies.
pub fn addition_deletion_check(a: &Arrangement, i: usize) -> Result<TripleReport> {
    let h = a.hyperplane(i)?.clone();
    let del = a.delete(i)?;
    let res = a.restrict(i)?.arrangement;
    let ra = MemberReport::of(a)?;
    let rd = MemberReport::of(&del)?;
    let rr = MemberReport::of(&res)?;
    let d = del.len() as i64 - res.len() as i64;
    let (fa, fd, fr) = (
        ra.free_exponents(),
        rd.free_exponents(),
        rr.free_exponents(),
    );
    let mut checks = Vec::new();

    // All three free with exponents (d_1..d_ℓ), (d_1..d_ℓ − 1), (d_1..d_{ℓ−1}).
    let matches_top = |x: u32, ea: &[u32], ed: &[u32], er: &[u32]| -> bool {
        let Some(rest) = remove_one(ea, x) else {
            return false;
        };
        if x == 0 || sorted(rest.clone()) != sorted(er.to_vec()) {
            return false;
        }
        let mut lowered = rest;
        lowered.push(x - 1);
        sorted(lowered) == sorted(ed.to_vec())
    };
    if let (Some(ea), Some(ed)) = (&fa, &fd) {
        let ok = fr
            .as_ref()
            .is_some_and(|er| ea.iter().any(|&x| matches_top(x, ea, ed, er)));
        checks.push(CriterionCheck::new(
            "addition_deletion_both_free",
            true,
            ok,
            format!("A {ea:?}, A' {ed:?}, A^H {fr:?}"),
        ));
    }
    if let (Some(ea), Some(er)) = (&fa, &fr) {
        if let Some(x) = leftover(ea, er).filter(|&x| x > 0) {
            let ok = fd.as_ref().is_some_and(|ed| matches_top(x, ea, ed, er));
            checks.push(CriterionCheck::new(
                "addition_deletion_restriction",
                true,
                ok,
                format!("expected A' free with top exponent {}", x - 1),
            ));
        }
    }
    if let (Some(ed), Some(er)) = (&fd, &fr) {
        if let Some(y) = leftover(ed, er) {
            let ok = fa.as_ref().is_some_and(|ea| matches_top(y + 1, ea, ed, er));
            checks.push(CriterionCheck::new(
                "addition",
                true,
                ok,
                format!("expected A free with top exponent {}", y + 1),
            ));
        }
    }
    if let Some(ea) = &fa {
        let ok = rd.summary.verdict == Verdict::Free
            || (rd.is_strict_with_level(d) && rd.summary.exponents.as_ref() == Some(ea));
        checks.push(CriterionCheck::new(
            "deletion_dichotomy",
            true,
            ok,
            format!("A free {ea:?}; A' {}", rd.summary),
        ));
    }
    if a.nvars() == 3 {
        let hyp = rd.summary.verdict != Verdict::Free;
        let lhs = fa.is_some();
        let rhs = rd.is_strict_with_level(d);
        let ok = lhs == rhs && (!lhs || fa == rd.summary.exponents);
        checks.push(CriterionCheck::new(
            "plane_deletion",
            hyp,
            ok,
            format!("A free: {lhs}; A' strict with level {d}: {rhs}"),
        ));
        let hyp = ra.summary.verdict != Verdict::Free;
        let level = res.len() as i64 - 1;
        let lhs = fd.as_ref().is_some_and(|e| e.first() == Some(&1));
        let rhs = ra.is_strict_with_level(level);
        let shifted = |e: &[u32]| vec![e[0], e[1] + 1, e[2] + 1];
        let ok = lhs == rhs && (!lhs || ra.summary.exponents == fd.as_deref().map(shifted));
        checks.push(CriterionCheck::new(
            "plane_addition",
            hyp,
            ok,
            format!("A' free: {lhs}; A strict with level {level}: {rhs}"),
        ));
    }
    let out = TripleReport {
        index: i,
        hyperplane: h.to_string(),
        deletion_restriction_identity: deletion_restriction_check(a, i)?,
        free: [fa.is_some(), fd.is_some(), fr.is_some()],
        arrangement: ra,
        deletion: rd,
        restriction: rr,
        d,
        checks,
    };
    ensure(out.deletion_restriction_identity, || {
        "deletion-restriction identity fails".into()
    })?;
    fail_on_violation(&out.checks)?;
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct DivisionReport {
    pub index: usize,
    pub restriction_exponents: Option<Vec<u32>>,
    pub poincare: String,
    pub restriction_poincare: String,
    pub divides: bool,
    pub hypotheses: bool,
    pub exponents: Option<Vec<u32>>,
    pub confirmed: Option<bool>,
}

/// `A^H` free and `π(A^H;t) | π(A;t)` imply `A` free.
pub fn division_check(a: &Arrangement, i: usize) -> Result<DivisionReport> {
    let res = a.restrict(i)?.arrangement;
    let pa = char_poly(a).poincare();
    let pr = char_poly(&res).poincare();
    let divides = pr.divides(&pa);
    let restriction_exponents = free_exponents(&res)?;
    let hypotheses = divides && restriction_exponents.is_some();
    let exponents = free_exponents(a)?;
    let out = DivisionReport {
        index: i,
        restriction_exponents,
        poincare: pa.to_string(),
        restriction_poincare: pr.to_string(),
        divides,
        hypotheses,
        confirmed: hypotheses.then_some(exponents.is_some()),
        exponents,
    };
    ensure(out.confirmed != Some(false), || {
        "division hypotheses hold but A is not free".into()
    })?;
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AdditionCase {
    /// `d = d_ℓ`.
    TopExponent,
    /// `d = d_{ℓ−1} < d_ℓ`.
    SecondExponent,
    /// Any other `d`; no conclusion.
    Outside,
}

#[derive(Clone, Debug, Serialize)]
pub struct MatBchReport {
    pub exponents: Vec<u32>,
    pub restriction_size: usize,
    pub d: i64,
    pub case: AdditionCase,
    pub predicted: Option<Vec<u32>>,
    pub actual: VerdictSummary,
    pub confirmed: Option<bool>,
}

fn added(a_prime: &Arrangement, h: &Hyperplane) -> Result<(Arrangement, usize)> {
    let a = a_prime.add(h.clone())?;
    let idx = a.index_of(h).expect("just added");
    let n = a.restrict(idx)?.arrangement.len();
    Ok((a, n))
}

/// For free `A′` and `A = A′ ∪ {h}` with `d = |A′| − |A^H|`: `d = d_ℓ` or
/// `d = d_{ℓ−1}` force `A` free with one exponent raised, and
/// `d_{ℓ−1} < d < d_ℓ` is impossible.
pub fn mat_bch_check(a_prime: &Arrangement, h: &Hyperplane) -> Result<MatBchReport> {
    let exps = free_exponents(a_prime)?.ok_or(Error::NotFree)?;
    let (a, restriction_size) = added(a_prime, h)?;
    let d = a_prime.len() as i64 - restriction_size as i64;
    let l = exps.len();
    let top = exps[l - 1] as i64;
    let second = if l >= 2 { exps[l - 2] as i64 } else { i64::MIN };
    let raise = |k: usize| {
        let mut e = exps.clone();
        e[k] += 1;
        sorted(e)
    };
    let (case, predicted) = if d == top {
        (AdditionCase::TopExponent, Some(raise(l - 1)))
    } else if d == second {
        (AdditionCase::SecondExponent, Some(raise(l - 2)))
    } else if second < d && d < top {
        return Err(violation(format!(
            "d = {d} strictly between exponents {second} and {top}"
        )));
    } else {
        (AdditionCase::Outside, None)
    };
    let actual = report(&a)?.summary();
    let confirmed = predicted
        .as_ref()
        .map(|p| actual.verdict == Verdict::Free && actual.exponents.as_ref() == Some(p));
    ensure(confirmed != Some(false), || {
        format!("predicted free {predicted:?}, got {actual}")
    })?;
    Ok(MatBchReport {
        exponents: exps,
        restriction_size,
        d,
        case,
        predicted,
        actual,
        confirmed,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct AdditionPrediction {
    pub exponents: Vec<u32>,
    pub restriction_size: usize,
    /// `|A′| − |A^H|`.
    pub d: i64,
    /// `d ≥ d_{ℓ−2}`.
    pub hypothesis: bool,
    pub predicted_poexp: Option<Vec<u32>>,
    pub predicted_level: Option<i64>,
    pub actual: VerdictSummary,
    pub agrees: Option<bool>,
    /// For three variables: free, or strict with exponents `(1, d_1+1,
    /// d_2+1)` and level `|A^H| − 1`.
    pub plane_prediction: Option<bool>,
}

/// Predict the verdict of `A′ ∪ {h}` from the exponents of a free `A′` and
/// compare with its classification.
pub fn addition_classify(a_prime: &Arrangement, h: &Hyperplane) -> Result<AdditionPrediction> {
    let exps = free_exponents(a_prime)?.ok_or(Error::NotFree)?;
    let (a, restriction_size) = added(a_prime, h)?;
    let l = exps.len();
    let d = a_prime.len() as i64 - restriction_size as i64;
    let hypothesis = l < 3 || d >= exps[l - 3] as i64;
    // In three variables the same prediction holds without the hypothesis.
    let predicts = l >= 3 && (hypothesis || l == 3);
    let (predicted_poexp, predicted_level) = if predicts {
        let mut p = exps.clone();
        p[l - 2] += 1;
        p[l - 1] += 1;
        let level =
            (exps[l - 2] + exps[l - 1]) as i64 - a.len() as i64 + restriction_size as i64 + 1;
        (Some(sorted(p)), Some(level))
    } else {
        (None, None)
    };
    let rep = report(&a)?;
    let actual = rep.summary();
    let free_ok = actual.verdict == Verdict::Free
        && actual.exponents.as_ref().is_some_and(|e| {
            (0..l).any(|k| {
                e == &{
                    let mut r = exps.clone();
                    r[k] += 1;
                    sorted(r)
                }
            })
        });
    let pog_ok = actual.verdict == Verdict::StrictPOG
        && actual.exponents == predicted_poexp
        && actual.level.map(i64::from) == predicted_level;
    let agrees = predicts.then_some(free_ok || pog_ok);
    let plane_prediction = (l == 3).then(|| {
        let p = vec![exps[0], exps[1] + 1, exps[2] + 1];
        free_ok
            || (actual.verdict == Verdict::StrictPOG
                && actual.exponents.as_ref() == Some(&p)
                && actual.level.map(i64::from) == Some(restriction_size as i64 - 1))
    });
    ensure(agrees != Some(false), || {
        format!("predicted free or {predicted_poexp:?} level {predicted_level:?}, got {actual}")
    })?;
    ensure(plane_prediction != Some(false), || {
        format!("three-variable addition mismatch: {actual}")
    })?;
    Ok(AdditionPrediction {
        exponents: exps,
        restriction_size,
        d,
        hypothesis,
        predicted_poexp,
        predicted_level,
        actual,
        agrees,
        plane_prediction,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RestrictionBoundReport {
    pub bound: RestrictionBound,
    pub arrangement_free: bool,
    /// Freeness of `A∖{L}` when `L ∈ A`, of `A ∪ {L}` otherwise.
    pub neighbour_free: bool,
    /// Whether the freeness conclusion was asserted (only for `L ∈ A`).
    pub asserted: bool,
}

/// For three variables with `χ(A;t) = (t−1)(t−a)(t−b)`: the number `n_L` of
/// intersection lines on a plane `L` avoids `(a+1, b+1)`, and at the
/// endpoints `A` and `A∖{L}` are free.
pub fn restriction_bound_check(a: &Arrangement, l: &Hyperplane) -> Result<RestrictionBoundReport> {
    let bound = restriction_size_bound_check(a, l)?;
    ensure(bound.branch != BoundBranch::Violated, || {
        format!("n_L = {} inside ({}+1, {}+1)", bound.n_l, bound.a, bound.b)
    })?;
    let arrangement_free = free_exponents(a)?.is_some();
    let neighbour = match a.index_of(l) {
        Some(i) => a.delete(i)?,
        None => a.add(l.clone())?,
    };
    let neighbour_free = free_exponents(&neighbour)?.is_some();
    let asserted = bound.in_arrangement && bound.equality;
    ensure(!asserted || (arrangement_free && neighbour_free), || {
        format!("n_L = {} at an endpoint but freeness fails", bound.n_l)
    })?;
    Ok(RestrictionBoundReport {
        bound,
        arrangement_free,
        neighbour_free,
        asserted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn boolean_triple_all_free() {
        let b = catalog::boolean(3).unwrap();
        let r = addition_deletion_check(&b, 0).unwrap();
        assert_eq!(r.free, [true, true, true]);
        assert_eq!(r.deletion.summary.exponents, Some(vec![0, 1, 1]));
        assert!(r
            .checks
            .iter()
            .any(|c| c.name == "addition_deletion_both_free" && c.confirmed == Some(true)));
    }

    #[test]
    fn factor_triples() {
        let f = catalog::factor();
        let r = addition_deletion_check(&f, 1).unwrap();
        assert_eq!(r.free, [true, false, true]);
        assert_eq!(r.d, 5);
        assert_eq!(r.deletion.summary.verdict, Verdict::StrictPOG);
        let r = addition_deletion_check(&f, 0).unwrap();
        assert!(r.free[0]);
    }

    #[test]
    fn division_examples() {
        let r = division_check(&catalog::factor(), 0).unwrap();
        assert!(r.hypotheses);
        assert_eq!(r.confirmed, Some(true));
        let r = division_check(&catalog::tangent(), 3).unwrap();
        assert!(!r.divides);
        assert_eq!(r.confirmed, None);
    }

    #[test]
    fn mat_examples() {
        let b = catalog::boolean(3).unwrap();
        let r = mat_bch_check(&b, &Hyperplane::from_i64(&[1, 1, 0]).unwrap()).unwrap();
        assert_eq!(r.d, 1);
        assert_eq!(r.case, AdditionCase::TopExponent);
        assert_eq!(r.actual.exponents, Some(vec![1, 1, 2]));
        let r = mat_bch_check(&b, &Hyperplane::from_i64(&[1, 1, 1]).unwrap()).unwrap();
        assert_eq!(r.d, 0);
        assert_eq!(r.case, AdditionCase::Outside);
        assert!(matches!(
            mat_bch_check(
                &catalog::tangent(),
                &Hyperplane::from_i64(&[1, 2, 3]).unwrap()
            ),
            Err(Error::NotFree)
        ));
    }

    #[test]
    fn addition_predictions() {
        let b = catalog::boolean(3).unwrap();
        let r = addition_classify(&b, &Hyperplane::from_i64(&[1, 1, 1]).unwrap()).unwrap();
        assert_eq!(r.predicted_poexp, Some(vec![1, 2, 2]));
        assert_eq!(r.predicted_level, Some(2));
        assert_eq!(r.agrees, Some(true));
        assert_eq!(r.plane_prediction, Some(true));
        assert!(!r.hypothesis);

        let an = catalog::addnot();
        let h = an.hyperplanes()[7].clone();
        let r = addition_classify(&an.delete(7).unwrap(), &h).unwrap();
        assert_eq!((r.d, r.hypothesis, r.agrees), (1, false, None));
        assert_eq!(r.actual.verdict, Verdict::NeitherAtBound);
    }

    #[test]
    fn restriction_bound_examples() {
        let f = catalog::factor();
        for h in f.hyperplanes() {
            let r = restriction_bound_check(&f, h).unwrap();
            assert!(r.arrangement_free);
        }
    }
}
