//! Verdicts on `D(A)`: free, (strictly) plus-one generated, or neither up
//! to the degree bound.
//!
//! Level convention: the level is (degree of the unique minimal syzygy) − 1.
//! The level element is the first generator of that degree whose relation
//! coefficient is a nonzero linear form. Strictness asks whether any
//! generator of that degree carries a nonzero linear coefficient, which does
//! not depend on the choice of minimal generators.

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{
    format_rational, homogeneous_dim, kernel, rref_exact, variable_names, Poly, Rational,
};
use crate::arrangement::{Arrangement, Multiplicity};
use crate::combinatorics::{char_poly, intersection_lattice, CharPoly};
use crate::derivations::{
    first_syzygies, free_hilbert, image_rank_exact, image_rank_modp, push_through, saito_check,
    Derivation, GeneratorSet, LogModule, Relation, SliceConstraint, SliceEngine,
};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    Free,
    StrictPOG,
    POG,
    NeitherAtBound,
}

impl Verdict {
    pub fn is_pog(self) -> bool {
        matches!(self, Verdict::StrictPOG | Verdict::POG)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Free => "Free",
            Verdict::StrictPOG => "StrictPOG",
            Verdict::POG => "POG",
            Verdict::NeitherAtBound => "NeitherAtBound",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FreenessCertificate {
    /// Ascending.
    pub exponents: Vec<u32>,
    pub basis: Vec<Derivation>,
    /// `det(θ_i(x_j)) = c·Q(A, m)`.
    pub saito_constant: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct POGCertificate {
    /// Ascending.
    pub poexp: Vec<u32>,
    pub level: u32,
    pub generators: Vec<Derivation>,
    pub relation: Relation,
    pub level_index: usize,
    pub strict: bool,
    /// Linear coefficient of the level element in the relation.
    pub level_coefficient: Vec<Rational>,
    pub verified_to: u32,
}

impl POGCertificate {
    pub fn level_element(&self) -> &Derivation {
        &self.generators[self.level_index]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Certificate {
    Free(FreenessCertificate),
    Pog(POGCertificate),
    None,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassificationReport {
    pub verdict: Verdict,
    pub certificate: Certificate,
    pub generators: Vec<Derivation>,
    pub generator_degrees: Vec<u32>,
    pub syzygy_degrees: Vec<u32>,
    /// Degree bound of the generator search.
    pub bound: u32,
    pub verified_to: u32,
    pub hilbert_checked_to: Option<u32>,
    /// Why the verdict is not Free or POG.
    pub obstruction: Option<String>,
}

/// Stable JSON view of a report.
#[derive(Clone, Debug, Serialize)]
pub struct ReportJson {
    pub verdict: Verdict,
    pub exponents: Option<Vec<u32>>,
    pub level: Option<u32>,
    pub generator_degrees: Vec<u32>,
    pub syzygy_degrees: Vec<u32>,
    pub strict: Option<bool>,
    pub verified_to: u32,
    pub bound: u32,
    pub hilbert_checked_to: Option<u32>,
    pub obstruction: Option<String>,
    pub generators: Vec<String>,
    pub relation: Option<Vec<String>>,
    pub level_index: Option<usize>,
    pub level_coefficient: Option<Vec<String>>,
    pub saito_constant: Option<String>,
}

impl ClassificationReport {
    pub fn free(&self) -> Option<&FreenessCertificate> {
        match &self.certificate {
            Certificate::Free(c) => Some(c),
            _ => None,
        }
    }

    pub fn pog(&self) -> Option<&POGCertificate> {
        match &self.certificate {
            Certificate::Pog(c) => Some(c),
            _ => None,
        }
    }

    /// Exponents when free, plus-one exponents when POG.
    pub fn exponents(&self) -> Option<Vec<u32>> {
        match &self.certificate {
            Certificate::Free(c) => Some(c.exponents.clone()),
            Certificate::Pog(c) => Some(c.poexp.clone()),
            Certificate::None => None,
        }
    }

    pub fn level(&self) -> Option<u32> {
        self.pog().map(|c| c.level)
    }

    pub fn strict(&self) -> Option<bool> {
        self.pog().map(|c| c.strict)
    }

    pub fn to_json(&self) -> ReportJson {
        let names = variable_names(self.generators.first().map_or(0, Derivation::nvars));
        let pog = self.pog();
        ReportJson {
            verdict: self.verdict,
            exponents: self.exponents(),
            level: self.level(),
            generator_degrees: self.generator_degrees.clone(),
            syzygy_degrees: self.syzygy_degrees.clone(),
            strict: self.strict(),
            verified_to: self.verified_to,
            bound: self.bound,
            hilbert_checked_to: self.hilbert_checked_to,
            obstruction: self.obstruction.clone(),
            generators: self
                .generators
                .iter()
                .map(|g| g.format_with(&names))
                .collect(),
            relation: pog.map(|c| {
                c.relation
                    .coeffs
                    .iter()
                    .map(|p| p.format_with(&names))
                    .collect()
            }),
            level_index: pog.map(|c| c.level_index),
            level_coefficient: pog
                .map(|c| c.level_coefficient.iter().map(format_rational).collect()),
            saito_constant: self.free().map(|c| format_rational(&c.saito_constant)),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Generator search bound; default `|A|`.
    pub bound: Option<u32>,
    /// Hilbert-consistency range for POG verdicts; default `2|A|`.
    pub hilbert_to: Option<u32>,
}

fn require_essential(a: &Arrangement) -> Result<()> {
    if a.is_essential() {
        Ok(())
    } else {
        Err(Error::NonEssential)
    }
}

fn size(a: &Arrangement, m: Option<&Multiplicity>) -> u32 {
    m.map_or(a.len(), Multiplicity::total) as u32
}

fn freeness_from(
    a: &Arrangement,
    m: Option<&Multiplicity>,
    gens: &GeneratorSet,
) -> Result<Option<FreenessCertificate>> {
    let l = a.nvars();
    if gens.len() != l || gens.degrees().iter().sum::<u32>() != size(a, m) {
        return Ok(None);
    }
    let v = saito_check(a, m, &gens.generators)?;
    Ok(v.constant.filter(|_| v.holds).map(|c| FreenessCertificate {
        exponents: gens.degrees(),
        basis: gens.generators.clone(),
        saito_constant: c,
    }))
}

/// A basis of `D(A, m)` with its exponents if one exists in degrees ≤ the
/// bound (default `|m|`).
pub fn is_free(
    a: &Arrangement,
    m: Option<&Multiplicity>,
    bound: Option<u32>,
) -> Result<Option<FreenessCertificate>> {
    require_essential(a)?;
    let bound = bound.unwrap_or_else(|| size(a, m));
    let mut module = LogModule::new(a, m, SliceConstraint::None)?;
    module.extend_to(bound);
    freeness_from(a, m, &module.generator_set())
}

pub fn classify(a: &Arrangement) -> Result<ClassificationReport> {
    classify_with(a, ClassifyOptions::default())
}

pub fn classify_with(a: &Arrangement, opts: ClassifyOptions) -> Result<ClassificationReport> {
    require_essential(a)?;
    let l = a.nvars();
    let n = a.len() as u32;
    let bound = opts.bound.unwrap_or(n);
    let mut module = LogModule::new(a, None, SliceConstraint::None)?;
    module.extend_to(bound);
    let gens = module.generator_set();
    let mut report = ClassificationReport {
        verdict: Verdict::NeitherAtBound,
        certificate: Certificate::None,
        generators: gens.generators.clone(),
        generator_degrees: gens.degrees(),
        syzygy_degrees: Vec::new(),
        bound,
        verified_to: gens.verified_to,
        hilbert_checked_to: None,
        obstruction: None,
    };
    if gens.len() < l {
        report.obstruction = Some(format!(
            "only {} generators up to degree {bound}",
            gens.len()
        ));
        return Ok(report);
    }
    if gens.len() == l {
        match freeness_from(a, None, &gens)? {
            Some(cert) => {
                report.verdict = Verdict::Free;
                report.certificate = Certificate::Free(cert);
            }
            None => {
                report.obstruction = Some(format!("further generators above degree {bound}"));
            }
        }
        return Ok(report);
    }
    let syz = first_syzygies(&gens, bound + 1);
    report.syzygy_degrees = syz.degrees();
    if gens.len() > l + 1 {
        report.obstruction = Some(format!("{} minimal generators", gens.len()));
        return Ok(report);
    }
    match syz.relations.len() {
        0 => {
            report.obstruction = Some(format!("no relation up to degree {}", bound + 1));
            return Ok(report);
        }
        1 => {}
        k => {
            report.obstruction = Some(format!("{k} minimal syzygies (projective dimension >= 2)"));
            return Ok(report);
        }
    }
    let relation = syz.relations[0].clone();
    match pog_certificate(a, &mut module, &gens, relation, opts) {
        Ok((cert, checked)) => {
            report.verdict = if cert.strict {
                Verdict::StrictPOG
            } else {
                Verdict::POG
            };
            report.hilbert_checked_to = Some(checked);
            report.certificate = Certificate::Pog(cert);
        }
        Err(reason) => report.obstruction = Some(reason),
    }
    Ok(report)
}

fn pog_certificate(
    a: &Arrangement,
    module: &mut LogModule,
    gens: &GeneratorSet,
    relation: Relation,
    opts: ClassifyOptions,
) -> std::result::Result<(POGCertificate, u32), String> {
    let l = a.nvars();
    let n = a.len() as u32;
    let degrees = gens.degrees();
    let level = relation.degree - 1;
    let same: Vec<usize> = (0..degrees.len())
        .filter(|&j| degrees[j] == level)
        .collect();
    if same.is_empty() {
        return Err(format!(
            "relation in degree {} but no generator of degree {level}",
            relation.degree
        ));
    }
    let coefficient = |j: usize| -> Vec<Rational> {
        relation.coeffs[j]
            .linear_coefficients()
            .expect("coefficient on a degree-d generator is linear")
    };
    let strict_index = same
        .iter()
        .copied()
        .find(|&j| !relation.coeffs[j].is_zero());
    let level_index = strict_index.unwrap_or(same[0]);
    let level_coefficient = coefficient(level_index);
    let mut poexp = degrees.clone();
    poexp.remove(level_index);

    let chi = char_poly(a);
    betti_identities(&chi, &poexp, level)?;

    let hilbert_to = opts.hilbert_to.unwrap_or(2 * n);
    hilbert_consistency(module, gens, &degrees, relation.degree, hilbert_to)?;

    debug_assert_eq!(poexp.len(), l);
    Ok((
        POGCertificate {
            poexp,
            level,
            generators: gens.generators.clone(),
            relation,
            level_index,
            strict: strict_index.is_some(),
            level_coefficient,
            verified_to: gens.verified_to,
        },
        hilbert_to,
    ))
}

/// `b_1 = Σ_{i≥2} d_i` and `b_2 = Σ_{2≤i<j} d_i d_j + d`, with `d_1`
/// the smallest plus-one exponent.
pub fn betti_identities(
    chi: &CharPoly,
    poexp: &[u32],
    level: u32,
) -> std::result::Result<(), String> {
    let rest: Vec<i64> = poexp.iter().skip(1).map(|&d| d as i64).collect();
    let b1: i64 = rest.iter().sum();
    let mut b2 = level as i64;
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            b2 += rest[i] * rest[j];
        }
    }
    if chi.betti(1) != b1 {
        return Err(format!(
            "b1 = {} but plus-one exponents give {b1}",
            chi.betti(1)
        ));
    }
    if chi.betti(2) != b2 {
        return Err(format!(
            "b2 = {} but plus-one exponents and level give {b2}",
            chi.betti(2)
        ));
    }
    Ok(())
}

/// Checks `dim D_k = Σ dim S_{k−d_j} − dim S_{k−s}` and that the generators
/// span `D_k`, for every `k ≤ top`.
fn hilbert_consistency(
    module: &mut LogModule,
    gens: &GeneratorSet,
    degrees: &[u32],
    syz_degree: u32,
    top: u32,
) -> std::result::Result<(), String> {
    let nv = gens.nvars();
    let expected =
        |k: u32| free_hilbert(nv, degrees, k) - homogeneous_dim(nv, k as i64 - syz_degree as i64);
    let known = gens.verified_to;
    for k in 0..=known.min(top) {
        let dim = module.dim(k).expect("processed degree");
        if dim != expected(k) {
            return Err(format!("dim D_{k} = {dim}, expected {}", expected(k)));
        }
    }
    if top <= known {
        return Ok(());
    }
    let ks: Vec<u32> = (known + 1..=top).collect();
    let upper = module.engine().modp_dims(&ks);
    let lower: Vec<Option<usize>> = ks
        .par_iter()
        .map(|&k| image_rank_modp(&gens.generators, k))
        .collect();
    for ((&k, up), low) in ks.iter().zip(upper).zip(lower) {
        let e = expected(k);
        if up == e && low == Some(e) {
            continue;
        }
        let dim = module.engine().exact_dim(k);
        let img = image_rank_exact(&gens.generators, k);
        if dim != e || img != e {
            return Err(format!(
                "dim D_{k} = {dim}, generated part {img}, expected {e}"
            ));
        }
    }
    Ok(())
}

/// Outcome of a local freeness check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalFreeness {
    pub holds: bool,
    pub flats_checked: usize,
    /// Member indices of the first non-free flat (by codimension, then
    /// members).
    pub witness: Option<Vec<usize>>,
    /// Every non-free flat found.
    pub non_free: Vec<Vec<usize>>,
}

/// Whether `A_X` is free for every flat `X` of codimension `< rank(A)` (or
/// `≤ upto_codim`), optionally only those contained in hyperplane `along`.
pub fn is_locally_free(
    a: &Arrangement,
    upto_codim: Option<usize>,
    along: Option<usize>,
) -> Result<LocalFreeness> {
    if let Some(i) = along {
        a.hyperplane(i)?;
    }
    let lat = intersection_lattice(a);
    let r = lat.rank();
    let top = upto_codim
        .unwrap_or(r.saturating_sub(1))
        .min(r.saturating_sub(1));
    let flats: Vec<Vec<usize>> = (1..=top)
        .flat_map(|k| lat.flats(k).iter())
        .filter(|f| along.is_none_or(|i| f.members.binary_search(&i).is_ok()))
        .map(|f| f.members.clone())
        .collect();
    let results: Vec<Result<bool>> = flats
        .par_iter()
        .map(|members| {
            let local = a.subarrangement(members)?.essentialize();
            if local.nvars() <= 2 {
                return Ok(true);
            }
            Ok(is_free(&local, None, None)?.is_some())
        })
        .collect();
    let mut non_free = Vec::new();
    for (members, res) in flats.iter().zip(results) {
        if !res? {
            non_free.push(members.clone());
        }
    }
    Ok(LocalFreeness {
        holds: non_free.is_empty(),
        flats_checked: flats.len(),
        witness: non_free.first().cloned(),
        non_free,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct YoshinagaReport {
    pub index: usize,
    /// Exponents of the Ziegler multirestriction, ascending.
    pub exponents: (u32, u32),
    pub b20: i64,
    pub gap: i64,
    pub free: bool,
}

/// For `ℓ = 3`: `b₂⁰(A) − d_1 d_2 ≥ 0`, zero iff `A` is free, where
/// `(d_1, d_2)` are the exponents of the Ziegler restriction onto `H_i`.
pub fn yoshinaga_criterion(a: &Arrangement, i: usize) -> Result<YoshinagaReport> {
    if a.nvars() != 3 {
        return Err(Error::NotApplicable(format!(
            "needs 3 variables, got {}",
            a.nvars()
        )));
    }
    let zr = a.ziegler_restrict(i)?;
    let cert = is_free(&zr.restricted, Some(&zr.mult), None)?
        .ok_or_else(|| Error::Violation("rank-2 multiarrangement not free".into()))?;
    let (d1, d2) = (cert.exponents[0], cert.exponents[1]);
    let b20 = char_poly(a).betti0(2)?;
    let gap = b20 - (d1 as i64) * (d2 as i64);
    if gap < 0 {
        return Err(Error::Violation(format!("negative gap {gap}")));
    }
    Ok(YoshinagaReport {
        index: i,
        exponents: (d1, d2),
        b20,
        gap,
        free: gap == 0,
    })
}

/// `Σ_{k ≤ bound} dim coker(π: D_H(A)_k → D(A^H, m^H)_k)`.
pub fn ziegler_cokernel_dim(a: &Arrangement, i: usize, bound: u32) -> Result<usize> {
    let zr = a.ziegler_restrict(i)?;
    let mut dh = SliceEngine::new(a, None, SliceConstraint::Kills(i))?;
    let mut target = SliceEngine::new(&zr.restricted, Some(&zr.mult), SliceConstraint::None)?;
    let mut total = 0;
    for k in 0..=bound {
        let images: Vec<Derivation> = dh
            .slice(k)
            .basis
            .iter()
            .map(|t| push_through(t, &zr.embedding, &zr.left_inverse))
            .collect();
        let img = if images.is_empty() {
            0
        } else {
            let basis = target.basis(k).clone();
            let rows = images.iter().map(|d| d.to_dense(&basis)).collect();
            crate::algebra::rank(&crate::algebra::QMatrix::from_rows(
                zr.restricted.nvars() * basis.len(),
                rows,
            ))
        };
        total += target.exact_dim(k) - img;
    }
    Ok(total)
}

/// `χ(A;t) = ∏ (t − d_i)` for the exponents of a free `A`.
pub fn terao_factorization_check(a: &Arrangement) -> Result<bool> {
    let cert = is_free(a, None, None)?.ok_or(Error::NotFree)?;
    let exps: Vec<usize> = cert.exponents.iter().map(|&d| d as usize).collect();
    Ok(char_poly(a).factors_as(&exps))
}

/// Coordinates of the essentialization: `y = R·x` with `R` the reduced
/// echelon form of the form matrix, plus a basis of the center.
struct EssentialCoords {
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
    center: Vec<Vec<Rational>>,
}

impl EssentialCoords {
    fn of(a: &Arrangement) -> Self {
        let fm = a.form_matrix();
        let (r, pivots) = rref_exact(&fm);
        EssentialCoords {
            rows: r.row_vecs(),
            pivots,
            center: kernel(&fm),
        }
    }

    fn lift_poly(&self, p: &Poly, nvars: usize) -> Poly {
        p.compose_linear(&self.rows, nvars)
    }

    /// `Σ g_k(Rx) ∂_{x_{p_k}}`, which acts on each `y_k` as `g_k`.
    fn lift(&self, th: &Derivation, nvars: usize) -> Derivation {
        let mut coeffs = vec![Poly::zero(nvars); nvars];
        for (k, &p) in self.pivots.iter().enumerate() {
            coeffs[p] = self.lift_poly(th.coeff(k), nvars);
        }
        Derivation::new(th.degree(), coeffs).expect("homogeneous")
    }

    fn constants(&self, nvars: usize) -> Vec<Derivation> {
        self.center
            .iter()
            .map(|v| {
                let coeffs = v.iter().map(|c| Poly::constant(nvars, c.clone())).collect();
                Derivation::new(0, coeffs).expect("constant field")
            })
            .collect()
    }
}

/// `classify` for any arrangement: a non-essential one is classified through
/// its essentialization, and the report is lifted back (the center adds
/// degree-0 generators and exponents).
pub fn classify_any(a: &Arrangement, opts: ClassifyOptions) -> Result<ClassificationReport> {
    if a.is_essential() {
        return classify_with(a, opts);
    }
    let l = a.nvars();
    let ec = EssentialCoords::of(a);
    let pad = ec.center.len();
    let constants = ec.constants(l);
    let rep = if a.is_empty() {
        None
    } else {
        Some(classify_with(&a.essentialize(), opts)?)
    };
    let lifted: Vec<Derivation> = rep
        .iter()
        .flat_map(|r| r.generators.iter().map(|g| ec.lift(g, l)))
        .collect();
    let mut generators = constants;
    generators.extend(lifted);
    let padded = |v: &[u32]| -> Vec<u32> {
        std::iter::repeat_n(0, pad)
            .chain(v.iter().copied())
            .collect()
    };
    let Some(rep) = rep else {
        let v = saito_check(a, None, &generators)?;
        let c = v
            .constant
            .ok_or_else(|| Error::Violation("unit fields fail Saito".into()))?;
        return Ok(ClassificationReport {
            verdict: Verdict::Free,
            certificate: Certificate::Free(FreenessCertificate {
                exponents: vec![0; l],
                basis: generators.clone(),
                saito_constant: c,
            }),
            generator_degrees: vec![0; l],
            generators,
            syzygy_degrees: Vec::new(),
            bound: opts.bound.unwrap_or(0),
            verified_to: opts.bound.unwrap_or(0),
            hilbert_checked_to: None,
            obstruction: None,
        });
    };
    let certificate = match &rep.certificate {
        Certificate::Free(c) => {
            let v = saito_check(a, None, &generators)?;
            let constant = v
                .constant
                .filter(|_| v.holds)
                .ok_or_else(|| Error::Violation("lifted basis fails Saito".into()))?;
            Certificate::Free(FreenessCertificate {
                exponents: padded(&c.exponents),
                basis: generators.clone(),
                saito_constant: constant,
            })
        }
        Certificate::Pog(c) => {
            let mut coeffs = vec![Poly::zero(l); pad];
            coeffs.extend(c.relation.coeffs.iter().map(|p| ec.lift_poly(p, l)));
            let alpha = Poly::linear(&c.level_coefficient);
            Certificate::Pog(POGCertificate {
                poexp: padded(&c.poexp),
                level: c.level,
                generators: generators.clone(),
                relation: Relation {
                    degree: c.relation.degree,
                    coeffs,
                },
                level_index: c.level_index + pad,
                strict: c.strict,
                level_coefficient: ec
                    .lift_poly(&alpha, l)
                    .linear_coefficients()
                    .unwrap_or_else(|| vec![<Rational as Zero>::zero(); l]),
                verified_to: c.verified_to,
            })
        }
        Certificate::None => Certificate::None,
    };
    Ok(ClassificationReport {
        verdict: rep.verdict,
        certificate,
        generator_degrees: padded(&rep.generator_degrees),
        generators,
        syzygy_degrees: rep.syzygy_degrees,
        bound: rep.bound,
        verified_to: rep.verified_to,
        hilbert_checked_to: rep.hilbert_checked_to,
        obstruction: rep.obstruction,
    })
}

/// Exponents of `A` if it is free, for any arrangement. Cheaper than
/// `classify_any`: rank ≤ 2 is decided directly, and `χ` must split with
/// nonnegative integer roots before any module is computed.
pub fn free_exponents(a: &Arrangement) -> Result<Option<Vec<u32>>> {
    let l = a.nvars();
    let r = a.rank();
    let pad = l - r;
    let mut exps = vec![0u32; pad];
    match r {
        0 => return Ok(Some(exps)),
        1 => {
            exps.push(1);
            return Ok(Some(exps));
        }
        2 => {
            exps.extend([1, a.len() as u32 - 1]);
            return Ok(Some(exps));
        }
        _ => {}
    }
    let chi = char_poly(a);
    let (roots, rest) = chi.chi().rational_roots();
    let splits =
        rest.degree() == Some(0) && roots.iter().all(|x| x.is_integer() && !x.is_negative());
    if !splits {
        return Ok(None);
    }
    let ess = if pad == 0 {
        a.clone()
    } else {
        a.essentialize()
    };
    Ok(is_free(&ess, None, None)?.map(|c| {
        exps.extend(c.exponents);
        exps
    }))
}

/// Whether the submodule generated by `gens` equals `D(A)` in every degree
/// `≤ top`; returns the first failing degree otherwise.
pub fn generates_through(
    a: &Arrangement,
    gens: &[Derivation],
    top: u32,
) -> Result<std::result::Result<(), u32>> {
    let mut engine = SliceEngine::new(a, None, SliceConstraint::None)?;
    let ks: Vec<u32> = (0..=top).collect();
    let upper = engine.modp_dims(&ks);
    let lower: Vec<Option<usize>> = ks.par_iter().map(|&k| image_rank_modp(gens, k)).collect();
    for ((&k, up), low) in ks.iter().zip(upper).zip(lower) {
        if low == Some(up) {
            continue;
        }
        if engine.exact_dim(k) != image_rank_exact(gens, k) {
            return Ok(Err(k));
        }
    }
    Ok(Ok(()))
}

/// Verdict data of a report, without certificates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictSummary {
    pub verdict: Verdict,
    pub exponents: Option<Vec<u32>>,
    pub level: Option<u32>,
    pub strict: Option<bool>,
}

impl ClassificationReport {
    pub fn summary(&self) -> VerdictSummary {
        VerdictSummary {
            verdict: self.verdict,
            exponents: self.exponents(),
            level: self.level(),
            strict: self.strict(),
        }
    }
}

impl std::fmt::Display for VerdictSummary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.verdict)?;
        if let Some(e) = &self.exponents {
            write!(f, " {e:?}")?;
        }
        if let Some(l) = self.level {
            write!(f, " level {l}")?;
        }
        Ok(())
    }
}
