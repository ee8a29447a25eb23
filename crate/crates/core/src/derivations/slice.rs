//! Linear systems cutting out `D(A, m)_d`.
//!
//! For a hyperplane with primitive integer form `a` and pivot `p`, the
//! substitution `σ: x_j ↦ a_p x_j (j ≠ p), x_p ↦ y − Σ_{j≠p} a_j x_j` sends
//! `α_H` to `a_p y`. So `α_H^m | f` exactly when every term of `f∘σ` has
//! `y`-degree at least `m`, and the coefficients of the remaining terms are
//! the linear conditions. The images `σ(x^e)`, truncated to `y`-degree
//! below `m`, are built degree by degree and cached.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use super::Derivation;
use crate::algebra::{kernel, Exponent, Field, Fp31, Matrix, MonomialBasis, QMatrix, Rational};
use crate::arrangement::{Arrangement, Multiplicity};
use crate::error::Result;

/// Extra condition on a slice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SliceConstraint {
    None,
    /// `θ(α_H) = 0` for the hyperplane with this index.
    Kills(usize),
}

#[derive(Clone, Debug)]
struct Condition {
    form: Vec<BigInt>,
    pivot: usize,
    mult: u32,
}

#[derive(Clone, Debug)]
struct Level<F> {
    rows: Vec<Exponent>,
    /// `images[k]` = truncated `σ(x^{e_k})` over `rows`, for the `k`-th
    /// monomial of the degree's basis.
    images: Vec<Vec<F>>,
}

#[derive(Clone, Debug)]
struct Tables<F> {
    coeffs: Vec<F>,
    levels: Vec<Level<F>>,
}

/// Builds and caches the constraint matrices of one (multi)arrangement.
#[derive(Clone, Debug)]
pub struct SliceEngine {
    nvars: usize,
    conds: Vec<Condition>,
    kill: Option<Vec<BigInt>>,
    bases: Vec<MonomialBasis>,
    exact: Vec<Tables<Rational>>,
    modp: Vec<Tables<Fp31>>,
}

fn to_field<F: Field>(v: &BigInt) -> F {
    F::from_rational(&Rational::from_integer(v.clone())).expect("integer maps into every field")
}

impl<F: Field> Tables<F> {
    fn new(cond: &Condition) -> Self {
        Tables {
            coeffs: cond.form.iter().map(to_field).collect(),
            levels: Vec::new(),
        }
    }

    fn ensure(&mut self, cond: &Condition, bases: &[MonomialBasis], degree: u32) {
        let n = cond.form.len();
        while self.levels.len() <= degree as usize {
            let d = self.levels.len();
            let basis = &bases[d];
            let rows: Vec<Exponent> = basis
                .monomials()
                .iter()
                .filter(|e| e[cond.pivot] < cond.mult)
                .cloned()
                .collect();
            let index: HashMap<Exponent, usize> = rows
                .iter()
                .enumerate()
                .map(|(i, e)| (e.clone(), i))
                .collect();
            let images = if d == 0 {
                vec![vec![F::one(); rows.len()]]
            } else {
                let prev_basis = &bases[d - 1];
                let prev = &self.levels[d - 1];
                let p = cond.pivot;
                let ap = self.coeffs[p].clone();
                basis
                    .monomials()
                    .iter()
                    .map(|e| {
                        let k = e.iter().position(|&v| v > 0).expect("positive degree");
                        let mut e2 = e.clone();
                        e2[k] -= 1;
                        let src = &prev.images[prev_basis.index_of(&e2).expect("basis")];
                        let mut out = vec![F::zero(); rows.len()];
                        let mut bump = |t: &Exponent, j: usize, c: F| {
                            let mut t2 = t.clone();
                            t2[j] += 1;
                            if let Some(&r) = index.get(&t2) {
                                out[r] = out[r].add(&c);
                            }
                        };
                        for (r, c) in src.iter().enumerate() {
                            if c.is_zero() {
                                continue;
                            }
                            let t = &prev.rows[r];
                            if k != p {
                                bump(t, k, c.mul(&ap));
                            } else {
                                bump(t, p, c.clone());
                                for j in (0..n).filter(|&j| j != p) {
                                    if !self.coeffs[j].is_zero() {
                                        bump(t, j, c.mul(&self.coeffs[j]).neg());
                                    }
                                }
                            }
                        }
                        out
                    })
                    .collect()
            };
            self.levels.push(Level { rows, images });
        }
    }
}

impl SliceEngine {
    pub fn new(
        a: &Arrangement,
        m: Option<&Multiplicity>,
        constraint: SliceConstraint,
    ) -> Result<Self> {
        let conds = a
            .hyperplanes()
            .iter()
            .enumerate()
            .map(|(i, h)| Condition {
                form: h.integer_form(),
                pivot: h.pivot(),
                mult: m.map_or(1, |m| m.get(i)),
            })
            .collect::<Vec<_>>();
        let kill = match constraint {
            SliceConstraint::None => None,
            SliceConstraint::Kills(i) => Some(a.hyperplane(i)?.integer_form()),
        };
        Ok(SliceEngine {
            nvars: a.nvars(),
            exact: conds.iter().map(Tables::new).collect(),
            modp: conds.iter().map(Tables::new).collect(),
            conds,
            kill,
            bases: Vec::new(),
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    fn ensure_bases(&mut self, degree: u32) {
        while self.bases.len() <= degree as usize {
            let d = self.bases.len() as u32;
            self.bases.push(MonomialBasis::new(self.nvars, d));
        }
    }

    /// Monomial basis of `S_d`.
    pub fn basis(&mut self, degree: u32) -> &MonomialBasis {
        self.ensure_bases(degree);
        &self.bases[degree as usize]
    }

    /// Basis of a degree that has already been requested.
    pub fn cached_basis(&self, degree: u32) -> &MonomialBasis {
        &self.bases[degree as usize]
    }

    fn ensure_exact(&mut self, degree: u32) {
        self.ensure_bases(degree);
        for (t, c) in self.exact.iter_mut().zip(&self.conds) {
            t.ensure(c, &self.bases, degree);
        }
    }

    fn ensure_modp(&mut self, degree: u32) {
        self.ensure_bases(degree);
        for (t, c) in self.modp.iter_mut().zip(&self.conds) {
            t.ensure(c, &self.bases, degree);
        }
    }

    fn build<F: Field>(&self, tables: &[Tables<F>], degree: u32) -> Matrix<F> {
        let basis = &self.bases[degree as usize];
        let k = basis.len();
        let n = self.nvars;
        let mut rows: Vec<Vec<F>> = Vec::new();
        for t in tables {
            let level = &t.levels[degree as usize];
            for r in 0..level.rows.len() {
                let mut row = vec![F::zero(); n * k];
                for (e_idx, img) in level.images.iter().enumerate() {
                    let v = &img[r];
                    if v.is_zero() {
                        continue;
                    }
                    for (i, a) in t.coeffs.iter().enumerate() {
                        if !a.is_zero() {
                            row[i * k + e_idx] = a.mul(v);
                        }
                    }
                }
                rows.push(row);
            }
        }
        if let Some(form) = &self.kill {
            let coeffs: Vec<F> = form.iter().map(to_field).collect();
            for e_idx in 0..k {
                let mut row = vec![F::zero(); n * k];
                for (i, a) in coeffs.iter().enumerate() {
                    row[i * k + e_idx] = a.clone();
                }
                rows.push(row);
            }
        }
        Matrix::from_rows(n * k, rows)
    }

    /// Exact constraint matrix of degree `d`; its kernel is `D_d`.
    pub fn exact_matrix(&mut self, degree: u32) -> QMatrix {
        self.ensure_exact(degree);
        self.build(&self.exact, degree)
    }

    /// The same matrix reduced mod a prime.
    pub fn modp_matrix(&mut self, degree: u32) -> Matrix<Fp31> {
        self.ensure_modp(degree);
        self.build(&self.modp, degree)
    }

    /// Exact basis of `D_d` as dense vectors (component-major).
    pub fn exact_kernel(&mut self, degree: u32) -> Vec<Vec<Rational>> {
        let m = self.exact_matrix(degree);
        if m.rows() == 0 {
            return identity_rows(m.cols());
        }
        kernel(&m)
    }

    /// `dim D_d` computed exactly.
    pub fn exact_dim(&mut self, degree: u32) -> usize {
        let m = self.exact_matrix(degree);
        m.cols() - crate::algebra::rank(&m)
    }

    /// Upper bound for `dim D_d`: the kernel dimension mod p.
    pub fn modp_dim(&mut self, degree: u32) -> usize {
        let m = self.modp_matrix(degree);
        m.cols() - m.rank()
    }

    /// `modp_dim` for several degrees, computed in parallel.
    pub fn modp_dims(&mut self, degrees: &[u32]) -> Vec<usize> {
        if let Some(&top) = degrees.iter().max() {
            self.ensure_modp(top);
        }
        let this = &*self;
        degrees
            .par_iter()
            .map(|&d| {
                let m = this.build(&this.modp, d);
                m.cols() - m.rank()
            })
            .collect()
    }

    /// Basis of `D_d` as derivations.
    pub fn slice(&mut self, degree: u32) -> GradedSlice {
        let vecs = self.exact_kernel(degree);
        let basis = self.cached_basis(degree);
        GradedSlice {
            degree,
            basis: vecs
                .iter()
                .map(|v| Derivation::from_dense(basis, v))
                .collect(),
        }
    }
}

fn identity_rows(n: usize) -> Vec<Vec<Rational>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rational::from_integer(1.into())
                    } else {
                        <Rational as Zero>::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// A ℚ-basis of one graded piece of `D(A, m)`.
#[derive(Clone, Debug)]
pub struct GradedSlice {
    pub degree: u32,
    pub basis: Vec<Derivation>,
}

impl GradedSlice {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// `D(A, m)_d`, optionally intersected with `{θ(α_H) = 0}`.
pub fn derivation_slice(
    a: &Arrangement,
    m: Option<&Multiplicity>,
    degree: u32,
    constraint: SliceConstraint,
) -> Result<GradedSlice> {
    let mut engine = SliceEngine::new(a, m, constraint)?;
    Ok(engine.slice(degree))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{homogeneous_dim, Poly};

    fn arr(nvars: usize, forms: &[&[i64]]) -> Arrangement {
        Arrangement::from_i64(nvars, forms).unwrap()
    }

    #[test]
    fn boolean_and_tangent_degree_one() {
        let b = arr(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(
            derivation_slice(&b, None, 1, SliceConstraint::None)
                .unwrap()
                .dim(),
            3
        );
        let t = arr(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]);
        let s = derivation_slice(&t, None, 1, SliceConstraint::None).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(s.basis[0].is_member(&t, None));
    }

    #[test]
    fn multiarrangement_in_two_variables() {
        let a = arr(2, &[&[1, 0], &[0, 1]]);
        let m = Multiplicity::new(vec![2, 1]).unwrap();
        let s1 = derivation_slice(&a, Some(&m), 1, SliceConstraint::None).unwrap();
        assert_eq!(s1.dim(), 1);
        let y = Poly::var(2, 1);
        assert_eq!(s1.basis[0].coeffs(), &[Poly::zero(2), y]);
        let s2 = derivation_slice(&a, Some(&m), 2, SliceConstraint::None).unwrap();
        // x²∂x plus the multiples of y∂y.
        assert_eq!(s2.dim(), 3);
    }

    #[test]
    fn slices_are_members_and_modp_agrees() {
        let a = arr(
            3,
            &[
                &[1, 0, 0],
                &[0, 1, 0],
                &[0, 0, 1],
                &[0, 1, -1],
                &[1, -1, 0],
                &[1, 1, 0],
                &[1, -2, 0],
                &[1, 2, 0],
            ],
        );
        let mut eng = SliceEngine::new(&a, None, SliceConstraint::None).unwrap();
        for d in 0..7 {
            let s = eng.slice(d);
            for th in &s.basis {
                assert!(th.is_member(&a, None));
            }
            assert_eq!(eng.modp_dim(d), s.dim());
            assert_eq!(eng.exact_dim(d), s.dim());
        }
        // Free with exponents (1,2,5): Hilbert function of S[-1]⊕S[-2]⊕S[-5].
        for d in 0..9u32 {
            let expect: usize = [1, 2, 5]
                .iter()
                .map(|&e| homogeneous_dim(3, d as i64 - e))
                .sum();
            assert_eq!(eng.modp_dim(d), expect, "degree {d}");
        }
    }

    #[test]
    fn kill_constraint_splits_off_euler() {
        let t = arr(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]);
        let mut full = SliceEngine::new(&t, None, SliceConstraint::None).unwrap();
        let mut dh = SliceEngine::new(&t, None, SliceConstraint::Kills(3)).unwrap();
        for d in 1..6u32 {
            assert_eq!(
                full.exact_dim(d),
                dh.exact_dim(d) + homogeneous_dim(3, d as i64 - 1)
            );
        }
    }
}
