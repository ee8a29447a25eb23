//! End-to-end acceptance checks, one line per criterion.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use arrfree_core::algebra::{rat, UniPoly};
use arrfree_core::catalog::{self, free_catalog};
use arrfree_core::classify::{
    betti_identities, classify, classify_any, yoshinaga_criterion, ClassifyOptions, Verdict,
    VerdictSummary,
};
use arrfree_core::derivations::{derivation_slice, saito_check, SliceConstraint};
use arrfree_core::theorems::{
    combinatorial_deletion_check, deletion_construct_pog, free_additions, DeletionOutcome,
};
use arrfree_core::{char_poly, Arrangement, Hyperplane};

use common::{random_arrangement, random_plane, slice_dim_oracle, whitney_chi};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check, u64);

macro_rules! expect {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn summary(a: &Arrangement) -> Result<VerdictSummary, String> {
    classify_any(a, ClassifyOptions::default())
        .map(|r| r.summary())
        .map_err(|e| e.to_string())
}

fn is(s: &VerdictSummary, verdict: Verdict, exps: &[u32], level: Option<u32>) -> bool {
    s.verdict == verdict && s.exponents.as_deref() == Some(exps) && s.level == level
}

fn tangent() -> Check {
    let r = classify(&catalog::tangent()).map_err(|e| e.to_string())?;
    let s = r.summary();
    expect!(is(&s, Verdict::StrictPOG, &[1, 2, 2], Some(2)), "got {s}");
    expect!(
        r.syzygy_degrees == [3],
        "syzygy degrees {:?}",
        r.syzygy_degrees
    );
    Ok(format!("{s}, syzygy at degree 3"))
}

fn factor() -> Check {
    let a = catalog::factor();
    let s = summary(&a)?;
    expect!(is(&s, Verdict::Free, &[1, 2, 5], None), "A: {s}");
    let del = a.delete(1).map_err(|e| e.to_string())?;
    let sd = summary(&del)?;
    expect!(is(&sd, Verdict::StrictPOG, &[1, 2, 5], Some(5)), "A': {sd}");
    let pi = char_poly(&del).poincare();
    let one_plus = |c: i64| UniPoly::from_i64(&[1, c]);
    let expected = one_plus(1).mul(&one_plus(3)).mul(&one_plus(3));
    expect!(pi == expected, "pi(A') = {pi}");
    Ok(format!("A {s}; A' {sd}; pi(A') = {pi}"))
}

fn b3() -> Check {
    let a = catalog::b3();
    let s = summary(&a)?;
    expect!(is(&s, Verdict::Free, &[1, 5, 7], None), "A: {s}");
    let del = a.delete(1).map_err(|e| e.to_string())?;
    let sd = summary(&del)?;
    expect!(is(&sd, Verdict::StrictPOG, &[1, 5, 7], Some(8)), "A': {sd}");
    let plus = a
        .add(catalog::b3_generic_plane())
        .map_err(|e| e.to_string())?;
    let sp = summary(&plus)?;
    expect!(
        is(&sp, Verdict::StrictPOG, &[1, 6, 8], Some(12)),
        "A + L: {sp}"
    );

    let y = Hyperplane::from_i64(&[0, 1, 0]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut pool = vec![y.clone()];
    while pool.len() < 20 {
        let h = random_plane(&mut rng, &del, 9);
        if !pool.contains(&h) {
            pool.push(h);
        }
    }
    let rep = free_additions(&del, &pool).map_err(|e| e.to_string())?;
    expect!(rep.candidates == 20, "{} candidates", rep.candidates);
    let hits: Vec<&str> = rep
        .additions
        .iter()
        .map(|f| f.hyperplane.as_str())
        .collect();
    expect!(hits == ["y"], "free additions {hits:?}");
    Ok(format!(
        "A {s}; A' {sd}; A + L {sp}; free additions {hits:?} of 20"
    ))
}

fn shi() -> Check {
    let a = catalog::shi_b(2).map_err(|e| e.to_string())?;
    let s = summary(&a)?;
    expect!(is(&s, Verdict::Free, &[1, 4, 4], None), "A: {s}");
    let sd = summary(&a.delete(0).map_err(|e| e.to_string())?)?;
    expect!(is(&sd, Verdict::StrictPOG, &[1, 4, 4], Some(4)), "A': {sd}");
    let DeletionOutcome::Pog(c) = deletion_construct_pog(&a, 0).map_err(|e| e.to_string())? else {
        return Err("construction returned a free certificate".into());
    };
    let built = (Some(c.poexp.clone()), Some(c.level), Some(c.strict));
    expect!(
        built == (sd.exponents.clone(), sd.level, sd.strict),
        "constructed {built:?} vs classified {sd}"
    );
    Ok(format!("A {s}; A' {sd}; construction agrees"))
}

fn addnot() -> Check {
    let a = catalog::addnot();
    let sd = summary(&a.delete(7).map_err(|e| e.to_string())?)?;
    expect!(is(&sd, Verdict::Free, &[1, 2, 2, 2], None), "A': {sd}");
    let r = classify(&a).map_err(|e| e.to_string())?;
    expect!(r.verdict == Verdict::NeitherAtBound, "A: {}", r.verdict);
    expect!(
        r.generator_degrees == [1, 3, 3, 3, 3, 3, 3],
        "generators {:?}",
        r.generator_degrees
    );
    expect!(
        r.syzygy_degrees.len() >= 2,
        "syzygies {:?}",
        r.syzygy_degrees
    );
    Ok(format!(
        "A' {sd}; A neither, generators {:?}, {} syzygies",
        r.generator_degrees,
        r.syzygy_degrees.len()
    ))
}

fn random_sweep() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut free, mut pog, mut neither) = (0, 0, 0);
    for k in 0..200 {
        let size = 4 + k % 5;
        let a = random_arrangement(&mut rng, 3, size, 2);
        let chi = char_poly(&a);
        let w = whitney_chi(&a);
        let coeffs: Vec<i64> = (0..=3)
            .map(|i| chi.chi().coeff(i).to_integer().try_into().unwrap())
            .collect();
        expect!(coeffs == w, "#{k} {a}: chi {coeffs:?} vs Whitney {w:?}");
        for i in 0..a.len() {
            let wd = whitney_chi(&a.delete(i).unwrap());
            let wr = whitney_chi(&a.restrict(i).unwrap().arrangement);
            let ok = (0..=3).all(|j| w[j] == wd[j] - wr.get(j).copied().unwrap_or(0));
            expect!(ok, "#{k} {a}: deletion-restriction fails at H_{i}");
        }
        let r = classify(&a).map_err(|e| format!("#{k} {a}: {e}"))?;
        match r.verdict {
            Verdict::Free => {
                free += 1;
                let c = r.free().unwrap();
                let saito = saito_check(&a, None, &c.basis).map_err(|e| e.to_string())?;
                expect!(saito.holds, "#{k} {a}: Saito fails");
                let roots: Vec<_> = c.exponents.iter().map(|&d| rat(d as i64)).collect();
                expect!(
                    *chi.chi() == UniPoly::from_roots(&roots),
                    "#{k} {a}: chi does not factor"
                );
            }
            Verdict::StrictPOG | Verdict::POG => {
                pog += 1;
                let c = r.pog().unwrap();
                expect!(c.strict, "#{k} {a}: POG but not strict");
                let top = *c.poexp.iter().max().unwrap();
                expect!(c.level >= top, "#{k} {a}: level {} below {top}", c.level);
                betti_identities(&chi, &c.poexp, c.level).map_err(|e| format!("#{k} {a}: {e}"))?;
            }
            Verdict::NeitherAtBound => neither += 1,
        }
        let is_free = r.verdict == Verdict::Free;
        for i in 0..a.len() {
            let y = yoshinaga_criterion(&a, i).map_err(|e| e.to_string())?;
            expect!(y.gap >= 0, "#{k} {a}: negative gap at H_{i}");
            expect!(
                (y.gap == 0) == is_free,
                "#{k} {a}: gap {} at H_{i}, free {is_free}",
                y.gap
            );
        }
    }
    Ok(format!(
        "200 arrangements: {free} free, {pog} plus-one generated, {neither} neither"
    ))
}

fn deletion_dichotomy() -> Check {
    let mut n = 0;
    for (name, a, exps) in free_catalog() {
        for i in 0..a.len() {
            let del = a.delete(i).unwrap();
            let level = del.len() as u32 - a.restrict(i).unwrap().arrangement.len() as u32;
            let s = summary(&del)?;
            let ok = s.verdict == Verdict::Free || is(&s, Verdict::StrictPOG, &exps, Some(level));
            expect!(
                ok,
                "{name} minus H_{i}: {s}, expected free or strict {exps:?} level {level}"
            );
            n += 1;
        }
    }
    Ok(format!("{n} deletions over the free catalog"))
}

fn combinatorial_deletion() -> Check {
    let mut n = 0;
    for (name, a, _) in free_catalog() {
        for i in 0..a.len() {
            let c =
                combinatorial_deletion_check(&a, i).map_err(|e| format!("{name} H_{i}: {e}"))?;
            let free = summary(&a.delete(i).unwrap())?.verdict == Verdict::Free;
            expect!(
                c.predicted_free == free,
                "{name} H_{i}: predicted {} vs free {free}",
                c.predicted_free
            );
            n += 1;
        }
    }
    Ok(format!("{n} hyperplanes over the free catalog"))
}

fn slice_dimensions() -> Check {
    let entries = ["tangent", "factor", "b3", "shi-b:2", "boolean:3"];
    for name in entries {
        let a = catalog::catalog(name).unwrap();
        for d in 0..=8 {
            let got = derivation_slice(&a, None, d, SliceConstraint::None)
                .map_err(|e| e.to_string())?
                .dim();
            let want = slice_dim_oracle(&a, d);
            expect!(got == want, "{name} degree {d}: {got} vs oracle {want}");
        }
    }
    Ok(format!("{} entries, degrees 0..=8", entries.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("tangent strict POG", tangent, 1),
        ("factor deletion", factor, 5),
        ("B3 deletion, addition, free additions", b3, 60),
        ("Shi B2 deletion construction", shi, 30),
        ("addnot neither", addnot, 120),
        ("random plane arrangements", random_sweep, 600),
        ("deletion dichotomy sweep", deletion_dichotomy, 600),
        ("combinatorial deletion sweep", combinatorial_deletion, 600),
        (
            "slice dimensions vs remainder oracle",
            slice_dimensions,
            600,
        ),
    ];
    let mut failed = 0;
    for (k, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let result = match result {
            Ok(msg) if elapsed > Duration::from_secs(*limit) => {
                Err(format!("{msg}; took {elapsed:.2?}, limit {limit} s"))
            }
            other => other,
        };
        match result {
            Ok(msg) => println!("criterion {} PASS ({elapsed:.2?}) {name}: {msg}", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {} FAIL ({elapsed:.2?}) {name}: {msg}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
