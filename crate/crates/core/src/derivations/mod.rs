//! Logarithmic derivation modules `D(A, m)`: graded slices, minimal
//! generators, first syzygies, restriction maps and Saito's criterion.

mod generators;
mod restriction;
mod saito;
mod slice;

pub use generators::{
    first_syzygies, free_hilbert, image_rank_exact, image_rank_modp, minimal_generators,
    GeneratorSet, LogModule, Relation, SyzygySet,
};
pub(crate) use restriction::push_through;
pub use restriction::{
    euler_restriction, section_product, theta_eh, ziegler_map, EulerRestriction,
};
pub use saito::{saito_check, SaitoVerdict};
pub use slice::{derivation_slice, GradedSlice, SliceConstraint, SliceEngine};

use std::fmt;

use num_traits::Zero;

use crate::algebra::{variable_names, MonomialBasis, Poly, Rational};
use crate::arrangement::{Arrangement, Multiplicity};
use crate::error::{Error, Result};

/// `Σ θ_i ∂/∂x_i` with homogeneous coefficients of a common degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Derivation {
    degree: u32,
    coeffs: Vec<Poly>,
}

impl Derivation {
    /// Errors unless every nonzero coefficient is homogeneous of `degree`.
    pub fn new(degree: u32, coeffs: Vec<Poly>) -> Result<Self> {
        let n = coeffs.first().map_or(0, Poly::nvars);
        for c in &coeffs {
            if c.nvars() != n {
                return Err(Error::VariableMismatch {
                    expected: n,
                    found: c.nvars(),
                });
            }
            if !c.is_zero() && (!c.is_homogeneous() || c.total_degree() != Some(degree)) {
                return Err(Error::NotApplicable(format!(
                    "coefficient {c} is not homogeneous of degree {degree}"
                )));
            }
        }
        if coeffs.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: coeffs.len(),
            });
        }
        Ok(Derivation { degree, coeffs })
    }

    /// Infers the degree from the coefficients; errors on the zero derivation.
    pub fn from_coeffs(coeffs: Vec<Poly>) -> Result<Self> {
        let d = coeffs
            .iter()
            .find_map(Poly::total_degree)
            .ok_or_else(|| Error::NotApplicable("degree of the zero derivation".into()))?;
        Derivation::new(d, coeffs)
    }

    pub fn zero(nvars: usize, degree: u32) -> Self {
        Derivation {
            degree,
            coeffs: vec![Poly::zero(nvars); nvars],
        }
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Poly {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    /// `θ(α)` for the linear form with the given coefficients.
    pub fn apply_linear(&self, form: &[Rational]) -> Poly {
        let mut out = Poly::zero(self.nvars());
        for (c, a) in self.coeffs.iter().zip(form) {
            if !a.is_zero() {
                out = &out + &c.scale(a);
            }
        }
        out
    }

    /// `θ(f) = Σ θ_i ∂f/∂x_i`.
    pub fn apply(&self, f: &Poly) -> Poly {
        let n = self.nvars();
        let mut out = Poly::zero(n);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let partial = Poly::from_terms(
                n,
                f.terms().filter(|(e, _)| e[i] > 0).map(|(e, coef)| {
                    let mut e2 = e.clone();
                    e2[i] -= 1;
                    (e2, coef * Rational::from_integer(e[i].into()))
                }),
            );
            if !partial.is_zero() {
                out = &out + &(c * &partial);
            }
        }
        out
    }

    /// `f·θ` for homogeneous `f`.
    pub fn mul_poly(&self, f: &Poly) -> Derivation {
        let fd = f.total_degree().unwrap_or(0);
        Derivation {
            degree: self.degree + fd,
            coeffs: self.coeffs.iter().map(|c| c * f).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Derivation {
        Derivation {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// Sum of derivations of the same degree.
    pub fn add(&self, other: &Derivation) -> Derivation {
        assert!(
            self.is_zero() || other.is_zero() || self.degree == other.degree,
            "adding derivations of different degrees"
        );
        let degree = if self.is_zero() {
            other.degree
        } else {
            self.degree
        };
        Derivation {
            degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Derivation) -> Derivation {
        self.add(&other.scale(&-Rational::from_integer(1.into())))
    }

    /// Exact division of every coefficient by `f`.
    pub fn div_exact(&self, f: &Poly) -> Result<Derivation> {
        let fd = f.total_degree().unwrap_or(0);
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.div_exact(f))
            .collect::<Result<Vec<_>>>()?;
        Ok(Derivation {
            degree: self.degree.saturating_sub(fd),
            coeffs,
        })
    }

    /// Component-major coordinates: index `i · |basis| + monomial`.
    pub fn to_dense(&self, basis: &MonomialBasis) -> Vec<Rational> {
        let mut out = Vec::with_capacity(self.nvars() * basis.len());
        for c in &self.coeffs {
            out.extend(c.to_dense(basis));
        }
        out
    }

    pub fn from_dense(basis: &MonomialBasis, coords: &[Rational]) -> Derivation {
        let n = basis.nvars();
        let k = basis.len();
        assert_eq!(coords.len(), n * k);
        Derivation {
            degree: basis.degree(),
            coeffs: (0..n)
                .map(|i| Poly::from_dense(basis, &coords[i * k..(i + 1) * k]))
                .collect(),
        }
    }

    /// Membership in `D(A, m)` by direct division.
    pub fn is_member(&self, a: &Arrangement, m: Option<&Multiplicity>) -> bool {
        a.hyperplanes().iter().enumerate().all(|(i, h)| {
            let image = self.apply_linear(h.form());
            if image.is_zero() {
                return true;
            }
            let k = m.map_or(1, |m| m.get(i));
            h.poly().pow(k).divides(&image)
        })
    }

    /// First nonzero coefficient scaled to 1; canonical up to scalars.
    pub fn normalized(&self) -> Derivation {
        let lead = self
            .coeffs
            .iter()
            .find_map(|c| c.leading_term().map(|(_, v)| v.clone()));
        match lead {
            Some(v) => self.scale(&v.recip()),
            None => self.clone(),
        }
    }

    pub fn format_with(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .zip(names)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, n)| format!("({})∂{}", c.format_with(names), n))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(&variable_names(self.nvars())))
    }
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Derivation[deg {}]({self})", self.degree)
    }
}

/// `θ_E = Σ x_i ∂/∂x_i`.
pub fn euler_derivation(nvars: usize) -> Derivation {
    Derivation {
        degree: 1,
        coeffs: (0..nvars).map(|i| Poly::var(nvars, i)).collect(),
    }
}

pub(crate) fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}
