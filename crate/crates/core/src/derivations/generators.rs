//! Minimal homogeneous generators and minimal first syzygies, degree by
//! degree.
//!
//! Each degree first tries a modular certificate: reducing mod p can only
//! lower ranks, so `rank_p(image) ≤ dim(image) ≤ dim D_d ≤ dim_p ker M_d`.
//! When the two ends meet there is nothing new in that degree and no exact
//! elimination is needed. Otherwise the degree is redone over ℚ.

use num_traits::Zero;

use super::slice::{SliceConstraint, SliceEngine};
use super::{euler_derivation, Derivation};
use crate::algebra::matrix::reduce_against;
use crate::algebra::{
    homogeneous_dim, kernel, monomial_basis, rref_exact, Field, Fp31, Matrix, MonomialBasis, Poly,
    QMatrix, Rational,
};
use crate::arrangement::{Arrangement, Multiplicity};
use crate::error::Result;

/// Minimal generators of `D(A, m)` found up to a degree bound.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    /// Sorted by degree; within a degree in echelon order (θ_E first).
    pub generators: Vec<Derivation>,
    /// Position of θ_E when `m ≡ 1`.
    pub euler_index: Option<usize>,
    /// Every generator of degree ≤ this bound is present.
    pub verified_to: u32,
    /// Exact `dim D_d` for `d = 0..=verified_to`.
    pub slice_dims: Vec<usize>,
}

impl GeneratorSet {
    pub fn degrees(&self) -> Vec<u32> {
        self.generators.iter().map(Derivation::degree).collect()
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn nvars(&self) -> usize {
        self.generators.first().map_or(0, Derivation::nvars)
    }
}

/// Sparse terms `(component, exponent, coefficient)` of a derivation.
type Terms<F> = Vec<(usize, Vec<u32>, F)>;

fn sparse_terms(g: &Derivation) -> Terms<Rational> {
    g.coeffs()
        .iter()
        .enumerate()
        .flat_map(|(i, p)| p.terms().map(move |(e, c)| (i, e.clone(), c.clone())))
        .collect()
}

fn reduce_terms(t: &Terms<Rational>) -> Option<Terms<Fp31>> {
    t.iter()
        .map(|(i, e, c)| Fp31::from_rational(c).map(|v| (*i, e.clone(), v)))
        .collect()
}

/// Rows `x^a · g` in the component-major coordinates of degree `basis`.
fn multiples<F: Field>(terms: &Terms<F>, gdeg: u32, basis: &MonomialBasis, out: &mut Vec<Vec<F>>) {
    let d = basis.degree();
    if gdeg > d {
        return;
    }
    let k = basis.len();
    let n = basis.nvars();
    for a in monomial_basis(n, d - gdeg) {
        let mut row = vec![F::zero(); n * k];
        for (i, e, c) in terms {
            let shifted: Vec<u32> = e.iter().zip(&a).map(|(x, y)| x + y).collect();
            let idx = basis.index_of(&shifted).expect("degree matches");
            row[i * k + idx] = c.clone();
        }
        out.push(row);
    }
}

/// Incremental computation of minimal generators of `D(A, m)`.
#[derive(Clone, Debug)]
pub struct LogModule {
    engine: SliceEngine,
    nvars: usize,
    with_euler: bool,
    generators: Vec<Derivation>,
    exact_terms: Vec<Terms<Rational>>,
    modp_terms: Vec<Option<Terms<Fp31>>>,
    euler_index: Option<usize>,
    dims: Vec<usize>,
}

impl LogModule {
    pub fn new(
        a: &Arrangement,
        m: Option<&Multiplicity>,
        constraint: SliceConstraint,
    ) -> Result<Self> {
        let simple = m.is_none_or(Multiplicity::is_simple);
        Ok(LogModule {
            engine: SliceEngine::new(a, m, constraint)?,
            nvars: a.nvars(),
            with_euler: simple && constraint == SliceConstraint::None,
            generators: Vec::new(),
            exact_terms: Vec::new(),
            modp_terms: Vec::new(),
            euler_index: None,
            dims: Vec::new(),
        })
    }

    pub fn engine(&mut self) -> &mut SliceEngine {
        &mut self.engine
    }

    pub fn generators(&self) -> &[Derivation] {
        &self.generators
    }

    /// Highest degree through which generation is certified.
    pub fn verified_to(&self) -> Option<u32> {
        self.dims.len().checked_sub(1).map(|d| d as u32)
    }

    /// Exact `dim D_d` for a processed degree.
    pub fn dim(&self, d: u32) -> Option<usize> {
        self.dims.get(d as usize).copied()
    }

    fn push_generator(&mut self, g: Derivation) {
        let t = sparse_terms(&g);
        self.modp_terms.push(reduce_terms(&t));
        self.exact_terms.push(t);
        self.generators.push(g);
    }

    fn image_rows_modp(&self, basis: &MonomialBasis) -> Option<Matrix<Fp31>> {
        let mut rows = Vec::new();
        for (g, t) in self.generators.iter().zip(&self.modp_terms) {
            multiples(t.as_ref()?, g.degree(), basis, &mut rows);
        }
        Some(Matrix::from_rows(self.nvars * basis.len(), rows))
    }

    fn image_rows_exact(&self, basis: &MonomialBasis) -> QMatrix {
        let mut rows = Vec::new();
        for (g, t) in self.generators.iter().zip(&self.exact_terms) {
            multiples(t, g.degree(), basis, &mut rows);
        }
        QMatrix::from_rows(self.nvars * basis.len(), rows)
    }

    /// Process every degree up to `bound`.
    pub fn extend_to(&mut self, bound: u32) {
        while self.dims.len() <= bound as usize {
            let d = self.dims.len() as u32;
            self.process_degree(d);
        }
    }

    fn process_degree(&mut self, d: u32) {
        let basis = self.engine.basis(d).clone();
        let euler_due = self.with_euler && d == 1 && self.euler_index.is_none();
        if !euler_due {
            if let Some(img) = self.image_rows_modp(&basis) {
                let lower = img.rank();
                let upper = self.engine.modp_dim(d);
                if lower == upper {
                    self.dims.push(upper);
                    return;
                }
            }
        }
        let kernel_vecs = self.engine.exact_kernel(d);
        self.dims.push(kernel_vecs.len());
        let mut img = self.image_rows_exact(&basis);
        let mut fresh: Vec<Derivation> = Vec::new();
        if euler_due {
            let e = euler_derivation(self.nvars);
            let ev = e.to_dense(&basis);
            let (r, piv) = rref_exact(&img);
            let mut red = ev.clone();
            reduce_against(&mut red, &r, &piv);
            if !super::is_zero_vec(&red) {
                img.push_row(ev);
                fresh.push(e);
            }
        }
        let (r, piv) = rref_exact(&img);
        let remainders: Vec<Vec<Rational>> = kernel_vecs
            .into_iter()
            .filter_map(|mut v| {
                reduce_against(&mut v, &r, &piv);
                (!super::is_zero_vec(&v)).then_some(v)
            })
            .collect();
        if !remainders.is_empty() {
            let (nr, npiv) = rref_exact(&QMatrix::from_rows(self.nvars * basis.len(), remainders));
            for i in 0..npiv.len() {
                fresh.push(Derivation::from_dense(&basis, nr.row(i)));
            }
        }
        for g in fresh {
            if self.with_euler && g == euler_derivation(self.nvars) && self.euler_index.is_none() {
                self.euler_index = Some(self.generators.len());
            }
            self.push_generator(g);
        }
    }

    pub fn generator_set(&self) -> GeneratorSet {
        GeneratorSet {
            generators: self.generators.clone(),
            euler_index: self.euler_index,
            verified_to: self.verified_to().unwrap_or(0),
            slice_dims: self.dims.clone(),
        }
    }
}

/// Minimal homogeneous generators of `D(A, m)` of degree ≤ `bound`.
pub fn minimal_generators(
    a: &Arrangement,
    m: Option<&Multiplicity>,
    bound: u32,
) -> Result<GeneratorSet> {
    let mut module = LogModule::new(a, m, SliceConstraint::None)?;
    module.extend_to(bound);
    Ok(module.generator_set())
}

/// One relation `Σ r_j g_j = 0`; `coeffs[j]` is homogeneous of degree
/// `degree − deg g_j` (or zero).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub degree: u32,
    pub coeffs: Vec<Poly>,
}

impl Relation {
    /// `Σ r_j g_j`, which is zero for a genuine relation.
    pub fn evaluate(&self, gens: &[Derivation]) -> Derivation {
        let n = gens.first().map_or(0, Derivation::nvars);
        let mut acc = Derivation::zero(n, self.degree);
        for (r, g) in self.coeffs.iter().zip(gens) {
            if !r.is_zero() {
                acc = acc.add(&g.mul_poly(r));
            }
        }
        acc
    }
}

/// Minimal first syzygies of a generator list up to a degree bound.
#[derive(Clone, Debug)]
pub struct SyzygySet {
    pub relations: Vec<Relation>,
    /// The relations are a minimal generating set of the syzygies of degree
    /// ≤ `verified_to`.
    pub minimal: bool,
    pub verified_to: u32,
}

impl SyzygySet {
    pub fn degrees(&self) -> Vec<u32> {
        self.relations.iter().map(|r| r.degree).collect()
    }
}

/// Layout of `⊕_j S_{e − d_j}`: offset of each block and its basis.
struct SyzLayout {
    blocks: Vec<Option<MonomialBasis>>,
    offsets: Vec<usize>,
    total: usize,
}

impl SyzLayout {
    fn new(nvars: usize, degrees: &[u32], e: u32) -> Self {
        let mut blocks = Vec::new();
        let mut offsets = Vec::new();
        let mut total = 0;
        for &d in degrees {
            offsets.push(total);
            if d <= e {
                let b = MonomialBasis::new(nvars, e - d);
                total += b.len();
                blocks.push(Some(b));
            } else {
                blocks.push(None);
            }
        }
        SyzLayout {
            blocks,
            offsets,
            total,
        }
    }

    fn relation(&self, v: &[Rational], e: u32, nvars: usize) -> Relation {
        let coeffs = self
            .blocks
            .iter()
            .zip(&self.offsets)
            .map(|(b, &o)| match b {
                Some(b) => Poly::from_dense(b, &v[o..o + b.len()]),
                None => Poly::zero(nvars),
            })
            .collect();
        Relation { degree: e, coeffs }
    }

    /// Rows `x^b · r` for a lower-degree relation `r`.
    fn relation_multiples(&self, r: &Relation, e: u32, nvars: usize, out: &mut Vec<Vec<Rational>>) {
        for b in monomial_basis(nvars, e - r.degree) {
            let mut row = vec![<Rational as Zero>::zero(); self.total];
            for ((p, blk), &o) in r.coeffs.iter().zip(&self.blocks).zip(&self.offsets) {
                let Some(blk) = blk else { continue };
                for (ex, c) in p.terms() {
                    let shifted: Vec<u32> = ex.iter().zip(&b).map(|(x, y)| x + y).collect();
                    row[o + blk.index_of(&shifted).expect("degree matches")] = c.clone();
                }
            }
            out.push(row);
        }
    }
}

fn to_modp(m: &QMatrix) -> Option<Matrix<Fp31>> {
    let rows = (0..m.rows())
        .map(|r| {
            m.row(r)
                .iter()
                .map(Fp31::from_rational)
                .collect::<Option<Vec<_>>>()
        })
        .collect::<Option<Vec<_>>>()?;
    Some(Matrix::from_rows(m.cols(), rows))
}

/// Minimal first syzygies of `gens` in degrees ≤ `bound`.
pub fn first_syzygies(gens: &GeneratorSet, bound: u32) -> SyzygySet {
    let n = gens.nvars();
    let degrees = gens.degrees();
    let terms: Vec<Terms<Rational>> = gens.generators.iter().map(sparse_terms).collect();
    let modp: Vec<Option<Terms<Fp31>>> = terms.iter().map(reduce_terms).collect();
    let mut relations: Vec<Relation> = Vec::new();
    let start = degrees.iter().copied().min().unwrap_or(0);
    for e in start..=bound {
        let layout = SyzLayout::new(n, &degrees, e);
        if layout.total == 0 {
            continue;
        }
        let basis = MonomialBasis::new(n, e);
        let mut lower_rows = Vec::new();
        for r in &relations {
            layout.relation_multiples(r, e, n, &mut lower_rows);
        }
        let lower = QMatrix::from_rows(layout.total, lower_rows);
        // Fast path: rows of the image matrix mod p.
        let modp_rows: Option<Vec<Vec<Fp31>>> = (|| {
            let mut rows = Vec::new();
            for (t, &d) in modp.iter().zip(&degrees) {
                multiples(t.as_ref()?, d, &basis, &mut rows);
            }
            Some(rows)
        })();
        if let (Some(rows), Some(lower_p)) = (modp_rows, to_modp(&lower)) {
            let img = Matrix::from_rows(n * basis.len(), rows);
            let upper = layout.total - img.rank();
            if upper == lower_p.rank() {
                continue;
            }
        }
        let mut rows = Vec::new();
        for (t, &d) in terms.iter().zip(&degrees) {
            multiples(t, d, &basis, &mut rows);
        }
        let img = QMatrix::from_rows(n * basis.len(), rows);
        let syz = kernel(&img.transpose());
        let (r, piv) = rref_exact(&lower);
        let remainders: Vec<Vec<Rational>> = syz
            .into_iter()
            .filter_map(|mut v| {
                reduce_against(&mut v, &r, &piv);
                (!super::is_zero_vec(&v)).then_some(v)
            })
            .collect();
        if remainders.is_empty() {
            continue;
        }
        let (nr, npiv) = rref_exact(&QMatrix::from_rows(layout.total, remainders));
        for i in 0..npiv.len() {
            relations.push(layout.relation(nr.row(i), e, n));
        }
    }
    SyzygySet {
        relations,
        minimal: true,
        verified_to: bound,
    }
}

/// Rank of `{x^a g : deg = k}` mod p, or `None` if a coefficient does not
/// reduce. A lower bound for the exact rank.
pub fn image_rank_modp(gens: &[Derivation], k: u32) -> Option<usize> {
    let n = gens.first()?.nvars();
    let basis = MonomialBasis::new(n, k);
    let mut rows = Vec::new();
    for g in gens {
        multiples(
            &reduce_terms(&sparse_terms(g))?,
            g.degree(),
            &basis,
            &mut rows,
        );
    }
    Some(Matrix::from_rows(n * basis.len(), rows).rank())
}

/// `dim_ℚ` of the degree-`k` part of the submodule generated by `gens`.
pub fn image_rank_exact(gens: &[Derivation], k: u32) -> usize {
    let Some(n) = gens.first().map(Derivation::nvars) else {
        return 0;
    };
    let basis = MonomialBasis::new(n, k);
    let mut rows = Vec::new();
    for g in gens {
        multiples(&sparse_terms(g), g.degree(), &basis, &mut rows);
    }
    crate::algebra::rank(&QMatrix::from_rows(n * basis.len(), rows))
}

/// `Σ_j dim S_{k − d_j}`.
pub fn free_hilbert(nvars: usize, degrees: &[u32], k: u32) -> usize {
    degrees
        .iter()
        .map(|&d| homogeneous_dim(nvars, k as i64 - d as i64))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arr(nvars: usize, forms: &[&[i64]]) -> Arrangement {
        Arrangement::from_i64(nvars, forms).unwrap()
    }

    fn tangent() -> Arrangement {
        arr(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]])
    }

    #[test]
    fn boolean_generators() {
        let b = arr(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let g = minimal_generators(&b, None, 3).unwrap();
        assert_eq!(g.degrees(), vec![1, 1, 1]);
        assert_eq!(g.euler_index, Some(0));
        assert!(first_syzygies(&g, 4).relations.is_empty());
    }

    #[test]
    fn tangent_generators_and_syzygy() {
        let a = tangent();
        let g = minimal_generators(&a, None, 4).unwrap();
        assert_eq!(g.degrees(), vec![1, 2, 2, 2]);
        for th in &g.generators {
            assert!(th.is_member(&a, None));
        }
        let s = first_syzygies(&g, 5);
        assert_eq!(s.degrees(), vec![3]);
        assert!(s.relations[0].evaluate(&g.generators).is_zero());
    }

    #[test]
    fn multiarrangement_generators() {
        let a = arr(2, &[&[1, 0], &[0, 1]]);
        let m = Multiplicity::new(vec![2, 1]).unwrap();
        let g = minimal_generators(&a, Some(&m), 3).unwrap();
        assert_eq!(g.degrees(), vec![1, 2]);
        assert_eq!(g.euler_index, None);
    }

    #[test]
    fn free_hilbert_counts() {
        assert_eq!(free_hilbert(3, &[1, 2, 2], 2), 3 + 2);
    }
}
