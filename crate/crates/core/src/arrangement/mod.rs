//! Arrangements, multiarrangements, deletion, addition, localization and
//! (Ziegler) restriction.

mod io;

pub use io::{parse_arrangement, write_arrangement, ArrangementFile};

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{
    field::primitive_integer_vector, format_rational, kernel, rank, rref_exact, solve_exact,
    variable_names, Poly, QMatrix, Rational,
};
use crate::error::{Error, Result};

/// A linear hyperplane, stored by its form scaled so the first nonzero
/// coefficient is 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane {
    form: Vec<Rational>,
}

impl Hyperplane {
    pub fn new(form: Vec<Rational>) -> Result<Self> {
        let pivot = form
            .iter()
            .position(|c| !c.is_zero())
            .ok_or(Error::ZeroForm)?;
        let lead = form[pivot].clone();
        let form = form.into_iter().map(|c| c / &lead).collect();
        Ok(Hyperplane { form })
    }

    pub fn from_i64(form: &[i64]) -> Result<Self> {
        Hyperplane::new(form.iter().map(|&c| crate::algebra::rat(c)).collect())
    }

    pub fn nvars(&self) -> usize {
        self.form.len()
    }

    pub fn form(&self) -> &[Rational] {
        &self.form
    }

    /// Index of the first nonzero coefficient (which equals 1).
    pub fn pivot(&self) -> usize {
        self.form
            .iter()
            .position(|c| !c.is_zero())
            .expect("nonzero form")
    }

    /// Primitive integer multiple with positive leading coefficient.
    pub fn integer_form(&self) -> Vec<BigInt> {
        primitive_integer_vector(&self.form)
    }

    /// `α_H` as a polynomial, using the primitive integer form.
    pub fn poly(&self) -> Poly {
        let ints: Vec<Rational> = self
            .integer_form()
            .into_iter()
            .map(Rational::from_integer)
            .collect();
        Poly::linear(&ints)
    }

    pub fn eval(&self, v: &[Rational]) -> Rational {
        self.form
            .iter()
            .zip(v)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    /// Pull the form back along the columns of `embedding` (an `ℓ × k` matrix).
    pub fn pullback(&self, embedding: &QMatrix) -> Vec<Rational> {
        (0..embedding.cols())
            .map(|c| {
                (0..embedding.rows()).fold(Rational::zero(), |acc, r| {
                    acc + &self.form[r] * embedding.get(r, c)
                })
            })
            .collect()
    }

    pub fn format_with(&self, names: &[String]) -> String {
        self.poly().format_with(names)
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(&variable_names(self.nvars())))
    }
}

impl fmt::Debug for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hyperplane({self})")
    }
}

impl Serialize for Hyperplane {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.form.iter().map(format_rational))
    }
}

/// Positive integer multiplicities indexed like the hyperplanes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Multiplicity(Vec<u32>);

impl Multiplicity {
    pub fn new(values: Vec<u32>) -> Result<Self> {
        if values.contains(&0) {
            return Err(Error::NotApplicable(
                "multiplicities must be positive".into(),
            ));
        }
        Ok(Multiplicity(values))
    }

    pub fn ones(n: usize) -> Self {
        Multiplicity(vec![1; n])
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|m| = Σ m(H)`
    pub fn total(&self) -> usize {
        self.0.iter().map(|&v| v as usize).sum()
    }

    pub fn is_simple(&self) -> bool {
        self.0.iter().all(|&v| v == 1)
    }
}

/// Central arrangement in `ℓ` variables. Hyperplane order is the input
/// order and indices are stable identifiers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Arrangement {
    nvars: usize,
    hyperplanes: Vec<Hyperplane>,
}

/// Build an arrangement from raw forms, normalizing each and rejecting
/// proportional duplicates.
pub fn make_arrangement(nvars: usize, forms: Vec<Vec<Rational>>) -> Result<Arrangement> {
    let mut hs = Vec::with_capacity(forms.len());
    for f in forms {
        if f.len() != nvars {
            return Err(Error::LengthMismatch {
                expected: nvars,
                found: f.len(),
            });
        }
        hs.push(Hyperplane::new(f)?);
    }
    Arrangement::new(nvars, hs)
}

impl Arrangement {
    pub fn new(nvars: usize, hyperplanes: Vec<Hyperplane>) -> Result<Self> {
        for (i, h) in hyperplanes.iter().enumerate() {
            if h.nvars() != nvars {
                return Err(Error::LengthMismatch {
                    expected: nvars,
                    found: h.nvars(),
                });
            }
            if let Some(j) = hyperplanes[..i].iter().position(|g| g == h) {
                return Err(Error::DuplicateHyperplane {
                    index: i,
                    existing: j,
                });
            }
        }
        Ok(Arrangement { nvars, hyperplanes })
    }

    /// Convenience constructor from small integer forms.
    pub fn from_i64(nvars: usize, forms: &[&[i64]]) -> Result<Self> {
        make_arrangement(
            nvars,
            forms
                .iter()
                .map(|f| f.iter().map(|&c| crate::algebra::rat(c)).collect())
                .collect(),
        )
    }

    pub fn empty(nvars: usize) -> Self {
        Arrangement {
            nvars,
            hyperplanes: Vec::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn hyperplane(&self, i: usize) -> Result<&Hyperplane> {
        self.hyperplanes.get(i).ok_or(Error::IndexOutOfRange {
            index: i,
            len: self.len(),
        })
    }

    pub fn index_of(&self, h: &Hyperplane) -> Option<usize> {
        self.hyperplanes.iter().position(|g| g == h)
    }

    pub fn contains(&self, h: &Hyperplane) -> bool {
        self.index_of(h).is_some()
    }

    /// The `|A| × ℓ` coefficient matrix.
    pub fn form_matrix(&self) -> QMatrix {
        QMatrix::from_rows(
            self.nvars,
            self.hyperplanes.iter().map(|h| h.form.clone()).collect(),
        )
    }

    pub fn rank(&self) -> usize {
        rank(&self.form_matrix())
    }

    pub fn is_essential(&self) -> bool {
        self.rank() == self.nvars
    }

    /// `Q(A, m) = ∏ α_H^{m(H)}` with primitive integer forms.
    pub fn defining_polynomial(&self, m: Option<&Multiplicity>) -> Poly {
        let mut q = Poly::one(self.nvars);
        for (i, h) in self.hyperplanes.iter().enumerate() {
            let k = m.map_or(1, |m| m.get(i));
            q = &q * &h.poly().pow(k);
        }
        q
    }

    pub fn delete(&self, i: usize) -> Result<Arrangement> {
        self.hyperplane(i)?;
        let mut hs = self.hyperplanes.clone();
        hs.remove(i);
        Ok(Arrangement {
            nvars: self.nvars,
            hyperplanes: hs,
        })
    }

    pub fn add(&self, h: Hyperplane) -> Result<Arrangement> {
        if h.nvars() != self.nvars {
            return Err(Error::LengthMismatch {
                expected: self.nvars,
                found: h.nvars(),
            });
        }
        if let Some(j) = self.index_of(&h) {
            return Err(Error::DuplicateHyperplane {
                index: self.len(),
                existing: j,
            });
        }
        let mut hs = self.hyperplanes.clone();
        hs.push(h);
        Ok(Arrangement {
            nvars: self.nvars,
            hyperplanes: hs,
        })
    }

    /// Sub-arrangement on the given indices, in the order given.
    pub fn subarrangement(&self, indices: &[usize]) -> Result<Arrangement> {
        let mut hs = Vec::with_capacity(indices.len());
        for &i in indices {
            hs.push(self.hyperplane(i)?.clone());
        }
        Arrangement::new(self.nvars, hs)
    }

    /// Indices of hyperplanes containing the subspace spanned by `basis`.
    pub fn containing(&self, basis: &[Vec<Rational>]) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| basis.iter().all(|v| self.hyperplanes[i].eval(v).is_zero()))
            .collect()
    }

    /// `A_X` for the subspace `X = span(basis)`. Errors unless `X` is the
    /// intersection of the hyperplanes containing it.
    pub fn localize(&self, basis: &[Vec<Rational>]) -> Result<Arrangement> {
        let members = self.containing(basis);
        let sub = self.subarrangement(&members)?;
        let dim_x = if basis.is_empty() {
            0
        } else {
            rank(&QMatrix::from_rows(self.nvars, basis.to_vec()))
        };
        if self.nvars - sub.rank() != dim_x {
            return Err(Error::NotAFlat);
        }
        Ok(sub)
    }

    /// `A_X` for the flat cut out by the listed hyperplanes.
    pub fn localize_at_members(&self, members: &[usize]) -> Result<Arrangement> {
        let sub = self.subarrangement(members)?;
        let basis = kernel(&sub.form_matrix());
        self.localize(&basis)
    }

    /// Quotient by the center: an essential arrangement in `rank(A)`
    /// variables with the same lattice.
    pub fn essentialize(&self) -> Arrangement {
        if self.is_empty() {
            return Arrangement::empty(0);
        }
        let (_, pivots) = rref_exact(&self.form_matrix());
        let hs = self
            .hyperplanes
            .iter()
            .map(|h| {
                Hyperplane::new(pivots.iter().map(|&p| h.form[p].clone()).collect())
                    .expect("nonzero on the row space")
            })
            .collect();
        Arrangement::new(pivots.len(), hs).expect("distinct hyperplanes stay distinct")
    }

    /// Image under the linear substitution `α ↦ α · M` (an invertible
    /// coordinate change when `M` is invertible).
    pub fn transform(&self, m: &QMatrix) -> Result<Arrangement> {
        if m.rows() != self.nvars {
            return Err(Error::WrongDimension {
                expected: self.nvars,
                found: m.rows(),
            });
        }
        let hs = self
            .hyperplanes
            .iter()
            .map(|h| Hyperplane::new(h.pullback(m)))
            .collect::<Result<Vec<_>>>()?;
        Arrangement::new(m.cols(), hs)
    }

    /// Canonical key: sorted normalized forms.
    pub fn key(&self) -> Vec<Hyperplane> {
        let mut k = self.hyperplanes.clone();
        k.sort();
        k
    }

    /// Restriction to `H_i` in the default coordinates of `H`.
    pub fn restrict(&self, i: usize) -> Result<Restriction> {
        let h = self.hyperplane(i)?;
        let basis = default_basis(h);
        self.restrict_with_basis(i, &basis)
    }

    /// Restriction to `H_i` where `H` is parameterised by the columns of
    /// `embedding` (an `ℓ × (ℓ−1)` matrix whose columns span `H`).
    pub fn restrict_with_basis(&self, i: usize, embedding: &QMatrix) -> Result<Restriction> {
        let h = self.hyperplane(i)?;
        let l = self.nvars;
        if l == 0 || embedding.rows() != l || embedding.cols() != l - 1 {
            return Err(Error::WrongDimension {
                expected: l.saturating_sub(1),
                found: embedding.cols(),
            });
        }
        for c in 0..l - 1 {
            let col: Vec<Rational> = (0..l).map(|r| embedding.get(r, c).clone()).collect();
            if !h.eval(&col).is_zero() {
                return Err(Error::NotApplicable(
                    "embedding columns must lie in H".into(),
                ));
            }
        }
        if rank(embedding) != l - 1 {
            return Err(Error::NotApplicable(
                "embedding must have full column rank".into(),
            ));
        }
        let left_inverse = left_inverse(embedding);
        let mut restricted: Vec<Hyperplane> = Vec::new();
        let mut preimages: Vec<Vec<usize>> = Vec::new();
        for (j, g) in self.hyperplanes.iter().enumerate() {
            if j == i {
                continue;
            }
            let pulled = Hyperplane::new(g.pullback(embedding))
                .expect("distinct hyperplanes meet H in a proper subspace");
            match restricted.iter().position(|r| *r == pulled) {
                Some(k) => preimages[k].push(j),
                None => {
                    restricted.push(pulled);
                    preimages.push(vec![j]);
                }
            }
        }
        Ok(Restriction {
            index: i,
            arrangement: Arrangement {
                nvars: l - 1,
                hyperplanes: restricted,
            },
            embedding: embedding.clone(),
            left_inverse,
            preimages,
        })
    }

    /// The Ziegler restriction `(A^H, m^H)` onto `H_i`.
    pub fn ziegler_restrict(&self, i: usize) -> Result<ZieglerRestriction> {
        let r = self.restrict(i)?;
        Ok(ZieglerRestriction::from_restriction(r))
    }
}

impl fmt::Display for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = variable_names(self.nvars);
        let parts: Vec<String> = self
            .hyperplanes
            .iter()
            .map(|h| format!("({})", h.format_with(&names)))
            .collect();
        write!(f, "{}", parts.join(""))
    }
}

impl fmt::Debug for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Arrangement[{}; {self}]", self.nvars)
    }
}

/// Basis of `H` from the reduced echelon kernel of `α_H`: for each `f`
/// other than the pivot `p`, the vector `e_f − α_f e_p`.
pub fn default_basis(h: &Hyperplane) -> QMatrix {
    let l = h.nvars();
    let row = QMatrix::from_rows(l, vec![h.form.clone()]);
    let ker = kernel(&row);
    QMatrix::from_rows(l, ker).transpose()
}

/// Some `k × ℓ` matrix `L` with `L · E = I` for a full-column-rank `E`.
fn left_inverse(e: &QMatrix) -> QMatrix {
    let k = e.cols();
    let et = e.transpose();
    let mut rows = Vec::with_capacity(k);
    for c in 0..k {
        let mut target = vec![Rational::zero(); k];
        target[c] = Rational::one();
        rows.push(solve_exact(&et, &target).expect("full column rank"));
    }
    QMatrix::from_rows(e.rows(), rows)
}

/// `A^H` with the coordinates used to compute it.
#[derive(Clone, Debug)]
pub struct Restriction {
    /// Index of `H` in the original arrangement.
    pub index: usize,
    pub arrangement: Arrangement,
    /// `ℓ × (ℓ−1)`; columns span `H`.
    pub embedding: QMatrix,
    /// `(ℓ−1) × ℓ` with `left_inverse · embedding = I`.
    pub left_inverse: QMatrix,
    /// For each restricted hyperplane, the original indices mapping onto it
    /// (ascending).
    pub preimages: Vec<Vec<usize>>,
}

/// The Ziegler restriction together with the section `t`.
#[derive(Clone, Debug)]
pub struct ZieglerRestriction {
    pub index: usize,
    pub restricted: Arrangement,
    pub mult: Multiplicity,
    /// Smallest preimage index for each restricted hyperplane.
    pub section: Vec<usize>,
    pub embedding: QMatrix,
    pub left_inverse: QMatrix,
    pub preimages: Vec<Vec<usize>>,
}

impl ZieglerRestriction {
    pub fn from_restriction(r: Restriction) -> Self {
        let mult = Multiplicity(r.preimages.iter().map(|p| p.len() as u32).collect());
        let section = r.preimages.iter().map(|p| p[0]).collect();
        ZieglerRestriction {
            index: r.index,
            restricted: r.arrangement,
            mult,
            section,
            embedding: r.embedding,
            left_inverse: r.left_inverse,
            preimages: r.preimages,
        }
    }
}
