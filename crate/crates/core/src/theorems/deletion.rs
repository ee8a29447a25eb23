//! Deleting a hyperplane from a free arrangement: the plus-one generator
//! `φ`, relative freeness criteria, the combinatorial deletion criterion and
//! the scan over every hyperplane.

use num_traits::Zero;
use serde::Serialize;

use super::{ensure, report, sorted, violation};
use crate::algebra::{monomial_basis, rat, solve_exact, MonomialBasis, Poly, QMatrix, Rational};
use crate::arrangement::Arrangement;
use crate::classify::{
    free_exponents, generates_through, is_free, is_locally_free, FreenessCertificate,
    POGCertificate, Verdict, VerdictSummary,
};
use crate::combinatorics::{char_poly, intersection_lattice};
use crate::derivations::{
    euler_derivation, push_through, section_product, Derivation, Relation, SliceConstraint,
    SliceEngine,
};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum DeletionOutcome {
    Free(FreenessCertificate),
    Pog(POGCertificate),
}

/// Build `D(A∖{H_i})` from a basis of the free `D(A)`: either the deletion
/// is free, or it is generated by `θ_E, θ_2′, …, θ_ℓ′` and
/// `φ = (Σ f_j θ_j′ − Q′θ_E)/α_H` with the single relation
/// `Q′θ_E − Σ f_j θ_j′ + α_H φ = 0`.
pub fn deletion_construct_pog(a: &Arrangement, i: usize) -> Result<DeletionOutcome> {
    let cert = is_free(a, None, None)?.ok_or(Error::NotFree)?;
    let del = a.delete(i)?;
    let del_report = report(&del)?;
    if let Some(c) = del_report.free() {
        return Ok(DeletionOutcome::Free(c.clone()));
    }
    let n = a.nvars();
    let h = a.hyperplane(i)?;
    let alpha = h.poly();
    let euler = euler_derivation(n);
    let pos = cert
        .basis
        .iter()
        .position(|t| *t == euler)
        .ok_or_else(|| violation("free basis lacks the Euler derivation"))?;
    // θ′ = θ − (θ(α_H)/α_H) θ_E kills α_H.
    let others: Vec<Derivation> = cert
        .basis
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != pos)
        .map(|(_, t)| {
            let q = t.apply(&alpha).div_exact(&alpha)?;
            Ok(t.sub(&euler.mul_poly(&q)))
        })
        .collect::<Result<_>>()?;

    let zr = a.ziegler_restrict(i)?;
    let q = section_product(a, &zr);
    let big_d = (a.len() - zr.restricted.len()) as u32;
    let target = push_through(&euler.mul_poly(&q), &zr.embedding, &zr.left_inverse);
    let images: Vec<Derivation> = others
        .iter()
        .map(|t| push_through(t, &zr.embedding, &zr.left_inverse))
        .collect();

    // Solve target = Σ g_j π(θ_j′) with g_j ∈ S(H)_{D − d_j}.
    let k = n - 1;
    let basis = MonomialBasis::new(k, big_d);
    let mut columns: Vec<Vec<Rational>> = Vec::new();
    let mut owners: Vec<(usize, Vec<u32>)> = Vec::new();
    for (j, pi) in images.iter().enumerate() {
        let dj = pi.degree();
        if dj > big_d {
            continue;
        }
        for e in monomial_basis(k, big_d - dj) {
            let m = Poly::monomial(e.clone(), rat(1));
            columns.push(pi.mul_poly(&m).to_dense(&basis));
            owners.push((j, e));
        }
    }
    let rhs = target.to_dense(&basis);
    let sol = if columns.is_empty() {
        None
    } else {
        solve_exact(&QMatrix::from_rows(rhs.len(), columns).transpose(), &rhs)
    }
    .ok_or_else(|| {
        violation("restricted Euler multiple not in the span of the restricted basis")
    })?;
    let lift_rows = zr.left_inverse.row_vecs();
    let mut fs: Vec<Poly> = vec![Poly::zero(k); others.len()];
    for ((j, e), c) in owners.iter().zip(&sol) {
        if !c.is_zero() {
            fs[*j].add_term(e.clone(), c.clone());
        }
    }
    let fs: Vec<Poly> = fs.iter().map(|g| g.compose_linear(&lift_rows, n)).collect();

    let mut numerator = euler.mul_poly(&q).scale(&rat(-1));
    for (f, t) in fs.iter().zip(&others) {
        if !f.is_zero() {
            numerator = numerator.add(&t.mul_poly(f));
        }
    }
    let phi = numerator
        .div_exact(&alpha)
        .map_err(|_| violation("Σ f_j θ_j′ − Q′θ_E is not divisible by α_H"))?;

    let mut generators = vec![euler.clone()];
    generators.extend(others.iter().cloned());
    generators.push(phi.clone());
    let mut coeffs = vec![q.clone()];
    coeffs.extend(fs.iter().map(|f| f.scale(&rat(-1))));
    coeffs.push(alpha.clone());
    let relation = Relation {
        degree: big_d,
        coeffs,
    };
    ensure(relation.evaluate(&generators).is_zero(), || {
        "relation does not vanish".into()
    })?;
    ensure(phi.is_member(&del, None), || "φ is not in D(A′)".into())?;
    ensure(!phi.is_member(a, None), || "φ lies in D(A)".into())?;
    let top = a.len() as u32;
    if let Err(k) = generates_through(&del, &generators, top)? {
        return Err(violation(format!(
            "D(A) + Sφ differs from D(A′) in degree {k}"
        )));
    }
    let level = big_d - 1;
    let out = POGCertificate {
        poexp: sorted(cert.exponents.clone()),
        level,
        level_index: generators.len() - 1,
        generators,
        relation,
        strict: true,
        level_coefficient: alpha.linear_coefficients().expect("linear form"),
        verified_to: top,
    };
    let summary = del_report.summary();
    ensure(
        summary.verdict == Verdict::StrictPOG
            && summary.exponents.as_ref() == Some(&out.poexp)
            && summary.level == Some(level),
        || {
            format!(
                "construction gives {:?} level {level}, classification {summary:?}",
                out.poexp
            )
        },
    )?;
    Ok(DeletionOutcome::Pog(out))
}

#[derive(Clone, Debug, Serialize)]
pub struct RelativeCriterion {
    pub index: usize,
    /// `|A′| − |A^H|`.
    pub d: i64,
    pub exponents: Option<Vec<u32>>,
    pub deletion: VerdictSummary,
    pub restriction_exponents: Option<Vec<u32>>,
    /// `χ(A^H;t) | χ(A;t)`.
    pub divides: bool,
    /// `A^H` free and the divisibility.
    pub restriction_branch: bool,
    /// `A′` strict with level `d`, and `D(A′)_d ∖ 𝕂φ ⊂ D(A)_d` read
    /// literally (as sets).
    pub literal_branch: bool,
    /// The same with the inclusion read modulo `𝕂φ`:
    /// `D(A′)_d ⊂ D(A)_d + 𝕂φ` for some `φ`.
    pub modular_branch: bool,
    /// `χ(A;t) = ∏(t − d_i)` over integers with `d > d_i` for all `i`.
    pub large_level: bool,
}

/// Relative freeness criterion for the triple at `H_i`, asserted in both
/// directions with the modular reading of the second branch.
pub fn relative_criterion(a: &Arrangement, i: usize) -> Result<RelativeCriterion> {
    let del = a.delete(i)?;
    let res = a.restrict(i)?.arrangement;
    let d = del.len() as i64 - res.len() as i64;
    let exponents = free_exponents(a)?;
    let restriction_exponents = free_exponents(&res)?;
    let chi = char_poly(a);
    let divides = char_poly(&res).chi().divides(chi.chi());
    let restriction_branch = divides && restriction_exponents.is_some();
    let del_report = report(&del)?;
    let deletion = del_report.summary();

    let (mut literal_branch, mut modular_branch) = (false, false);
    if deletion.verdict == Verdict::StrictPOG && deletion.level.map(i64::from) == Some(d) {
        let dd = d as u32;
        let dim_del = SliceEngine::new(&del, None, SliceConstraint::None)?.exact_dim(dd);
        let dim_a = SliceEngine::new(a, None, SliceConstraint::None)?.exact_dim(dd);
        literal_branch = dim_del <= 1 || dim_del == dim_a;
        // D(A)_d ⊂ D(A′)_d, so some φ gives D(A′)_d = D(A)_d + 𝕂φ exactly
        // when the codimension is at most one.
        modular_branch = dim_del <= dim_a + 1;
    }

    let roots = chi.rational_roots();
    let integral: Option<Vec<u32>> = roots.as_ref().and_then(|r| {
        r.iter()
            .map(|x| {
                (x.is_integer() && *x >= Rational::zero())
                    .then(|| x.to_integer().try_into().ok())
                    .flatten()
            })
            .collect()
    });
    let large_level = integral
        .as_ref()
        .is_some_and(|r| r.iter().all(|&x| (x as i64) < d));

    let free = exponents.is_some();
    ensure(free == (restriction_branch || modular_branch), || {
        format!("A free: {free}, restriction branch {restriction_branch}, modular branch {modular_branch}")
    })?;
    if modular_branch {
        ensure(exponents == deletion.exponents, || {
            format!(
                "exp(A) {exponents:?} differs from POexp(A′) {:?}",
                deletion.exponents
            )
        })?;
    }
    if large_level {
        let matches = deletion.verdict == Verdict::StrictPOG
            && deletion.exponents.as_ref().map(|e| sorted(e.clone())) == integral.map(sorted);
        ensure(free == matches, || {
            format!("large level: A free {free}, deletion strict with χ roots {matches}")
        })?;
    }
    Ok(RelativeCriterion {
        index: i,
        d,
        exponents,
        deletion,
        restriction_exponents,
        divides,
        restriction_branch,
        literal_branch,
        modular_branch,
        large_level,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FlatRoot {
    pub members: Vec<usize>,
    pub codim: usize,
    /// `|A_X|`.
    pub size: usize,
    /// `|A_X^H|`.
    pub restriction_size: usize,
    /// `s_X = −(|A_X| − |A_X^H|)^{-1}`.
    pub s: String,
    pub is_root: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CombinatorialDeletion {
    pub index: usize,
    pub flats: Vec<FlatRoot>,
    /// `s_X` is a root of `π(A_X;t)` at every flat in `H`.
    pub predicted_free: bool,
    pub deletion_free: bool,
    /// The condition at the center only.
    pub center_root: bool,
    pub deletion_locally_free: bool,
}

/// `A∖{H_i}` is free iff `−(|A_X| − |A_X^H|)^{-1}` is a root of `π(A_X;t)`
/// for every flat `X ⊂ H_i`; checked against the freeness of the deletion.
pub fn combinatorial_deletion_check(a: &Arrangement, i: usize) -> Result<CombinatorialDeletion> {
    free_exponents(a)?.ok_or(Error::NotFree)?;
    a.hyperplane(i)?;
    let lat = intersection_lattice(a);
    let lines: Vec<&[usize]> = lat
        .flats(2)
        .iter()
        .filter(|f| f.members.binary_search(&i).is_ok())
        .map(|f| f.members.as_slice())
        .collect();
    let mut flats = Vec::new();
    for k in 1..=lat.rank() {
        for f in lat.flats(k) {
            if f.members.binary_search(&i).is_err() {
                continue;
            }
            let size = f.members.len();
            let restriction_size = lines
                .iter()
                .filter(|m| m.iter().all(|x| f.members.binary_search(x).is_ok()))
                .count();
            let s = -Rational::new(1.into(), ((size - restriction_size) as i64).into());
            let pi = char_poly(&a.subarrangement(&f.members)?).poincare();
            flats.push(FlatRoot {
                members: f.members.clone(),
                codim: k,
                size,
                restriction_size,
                s: crate::algebra::format_rational(&s),
                is_root: pi.eval(&s).is_zero(),
            });
        }
    }
    let predicted_free = flats.iter().all(|f| f.is_root);
    let center_root = flats
        .last()
        .is_some_and(|f| f.codim == lat.rank() && f.is_root);
    let del = a.delete(i)?;
    let deletion_free = free_exponents(&del)?.is_some();
    let deletion_locally_free = is_locally_free(&del, None, None)?.holds;
    ensure(predicted_free == deletion_free, || {
        format!("root condition {predicted_free} but deletion free {deletion_free}")
    })?;
    ensure(
        !deletion_locally_free || center_root == deletion_free,
        || {
            format!(
                "locally free deletion: center root {center_root}, deletion free {deletion_free}"
            )
        },
    )?;
    Ok(CombinatorialDeletion {
        index: i,
        flats,
        predicted_free,
        deletion_free,
        center_root,
        deletion_locally_free,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanEntry {
    pub index: usize,
    pub hyperplane: String,
    /// `|A| − |A^H|`.
    pub d: i64,
    pub is_exponent: bool,
    pub exceeds_max: bool,
    pub holds: bool,
    pub deletion_locally_free: bool,
    /// Codimensions `k` at which every `A′_X` with `X ⊂ H`, `X ∈ L_k(A)`, is
    /// free.
    pub local_codims: Vec<usize>,
    pub roots_below_d: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjectureScan {
    pub exponents: Vec<u32>,
    pub entries: Vec<ScanEntry>,
    pub all_hold: bool,
}

/// For each `H`: `d = |A| − |A^H|` is an exponent or exceeds all of them.
/// Asserted when the deletion is locally free; local freeness at
/// codimension `k` along `H` forces `d` to be a root or to have at least
/// `k + 1` roots below it.
pub fn conjecture_scan(a: &Arrangement) -> Result<ConjectureScan> {
    let exponents = free_exponents(a)?.ok_or(Error::NotFree)?;
    let lat = intersection_lattice(a);
    let top = exponents.iter().copied().max().unwrap_or(0) as i64;
    let mut entries = Vec::new();
    for i in 0..a.len() {
        let res = a.restrict(i)?.arrangement;
        let d = a.len() as i64 - res.len() as i64;
        let is_exponent = exponents.iter().any(|&e| e as i64 == d);
        let exceeds_max = d > top;
        let holds = is_exponent || exceeds_max;
        let del = a.delete(i)?;
        let deletion_locally_free = is_locally_free(&del, None, None)?.holds;
        let mut local_codims = Vec::new();
        for k in 1..lat.rank() {
            let mut all = true;
            for f in lat
                .flats(k)
                .iter()
                .filter(|f| f.members.binary_search(&i).is_ok())
            {
                let rest: Vec<usize> = f.members.iter().copied().filter(|&x| x != i).collect();
                if free_exponents(&a.subarrangement(&rest)?)?.is_none() {
                    all = false;
                    break;
                }
            }
            if all {
                local_codims.push(k);
            }
        }
        let roots_below_d = exponents.iter().filter(|&&e| (e as i64) < d).count();
        ensure(!deletion_locally_free || holds, || {
            format!("H_{i}: locally free deletion with d = {d} outside the exponents")
        })?;
        for &k in &local_codims {
            ensure(is_exponent || roots_below_d > k, || {
                format!("H_{i}: locally free at codim {k} but only {roots_below_d} roots below {d}")
            })?;
        }
        entries.push(ScanEntry {
            index: i,
            hyperplane: a.hyperplanes()[i].to_string(),
            d,
            is_exponent,
            exceeds_max,
            holds,
            deletion_locally_free,
            local_codims,
            roots_below_d,
        });
    }
    Ok(ConjectureScan {
        all_hold: entries.iter().all(|e| e.holds),
        exponents,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn factor_deletion_construction() {
        let f = catalog::factor();
        let DeletionOutcome::Pog(c) = deletion_construct_pog(&f, 1).unwrap() else {
            panic!("expected POG");
        };
        assert_eq!(c.poexp, vec![1, 2, 5]);
        assert_eq!(c.level, 5);
        assert_eq!(c.level_element().degree(), 5);
        assert!(matches!(
            deletion_construct_pog(&f, 0).unwrap(),
            DeletionOutcome::Free(_)
        ));
        assert!(matches!(
            deletion_construct_pog(&catalog::tangent(), 0),
            Err(Error::NotFree)
        ));
    }

    #[test]
    fn shi_deletion_construction() {
        let s = catalog::shi_b(2).unwrap();
        let DeletionOutcome::Pog(c) = deletion_construct_pog(&s, 0).unwrap() else {
            panic!("expected POG");
        };
        assert_eq!(
            (c.poexp.clone(), c.level, c.strict),
            (vec![1, 4, 4], 4, true)
        );
    }

    #[test]
    fn relative_criterion_examples() {
        let f = catalog::factor();
        let r = relative_criterion(&f, 1).unwrap();
        assert_eq!(r.d, 5);
        assert!(!r.large_level && r.modular_branch);
        let r = relative_criterion(&catalog::b3(), 1).unwrap();
        assert_eq!(r.d, 8);
        assert!(r.large_level && r.modular_branch);
        let s = catalog::shi_b(2).unwrap();
        let r = relative_criterion(&s, 0).unwrap();
        assert_eq!(r.d, 4);
        assert!(r.modular_branch);
        let b = catalog::boolean(3).unwrap();
        let r = relative_criterion(&b, 0).unwrap();
        assert!(r.restriction_branch);
    }

    #[test]
    fn combinatorial_deletion_examples() {
        let a =
            Arrangement::from_i64(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, -1, 0]]).unwrap();
        let r = combinatorial_deletion_check(&a, 3).unwrap();
        assert!(r.predicted_free && r.deletion_free);
        let r = combinatorial_deletion_check(&catalog::factor(), 1).unwrap();
        assert!(!r.predicted_free);
        let r = combinatorial_deletion_check(&catalog::shi_b(2).unwrap(), 0).unwrap();
        assert!(!r.predicted_free);
    }

    #[test]
    fn conjecture_scan_examples() {
        let f = catalog::factor();
        let s = conjecture_scan(&f).unwrap();
        assert!(s.all_hold);
        assert_eq!(s.entries[1].d, 6);
        assert!(s.entries[1].exceeds_max);
        let s = conjecture_scan(&catalog::shi_b(2).unwrap()).unwrap();
        assert_eq!(s.entries[0].d, 5);
        let s = conjecture_scan(&catalog::boolean(3).unwrap()).unwrap();
        assert!(s.entries.iter().all(|e| e.d == 1 && e.is_exponent));
    }
}
