//! The Euler restriction `ρ: D(A) → D(A^H)` and the Ziegler map
//! `π: D_H(A) → D(A^H, m^H)`, both "reduce modulo α_H".

use num_traits::Zero;

use super::{euler_derivation, Derivation};
use crate::algebra::{Poly, QMatrix, Rational};
use crate::arrangement::{Arrangement, Restriction, ZieglerRestriction};
use crate::error::{Error, Result};

/// Restrict the coefficients to `H` (via `x = E·u`) and read the vector
/// field in `H`-coordinates through a left inverse of `E`.
pub(crate) fn push_through(
    theta: &Derivation,
    embedding: &QMatrix,
    left_inverse: &QMatrix,
) -> Derivation {
    let l = embedding.rows();
    let k = embedding.cols();
    let images: Vec<Vec<Rational>> = (0..l).map(|j| embedding.row(j).to_vec()).collect();
    let restricted: Vec<Poly> = theta
        .coeffs()
        .iter()
        .map(|c| c.compose_linear(&images, k))
        .collect();
    let coeffs = (0..k)
        .map(|row| {
            let mut acc = Poly::zero(k);
            for (j, p) in restricted.iter().enumerate() {
                let w = left_inverse.get(row, j);
                if !w.is_zero() && !p.is_zero() {
                    acc = &acc + &p.scale(w);
                }
            }
            acc
        })
        .collect();
    Derivation::new(theta.degree(), coeffs).expect("restriction preserves degree")
}

/// Reusable `ρ` for one hyperplane.
#[derive(Clone, Debug)]
pub struct EulerRestriction {
    pub restriction: Restriction,
}

impl EulerRestriction {
    pub fn new(a: &Arrangement, i: usize) -> Result<Self> {
        Ok(EulerRestriction {
            restriction: a.restrict(i)?,
        })
    }

    /// `ρ(θ)`; the caller guarantees `θ ∈ D(A)`.
    pub fn apply(&self, theta: &Derivation) -> Derivation {
        push_through(
            theta,
            &self.restriction.embedding,
            &self.restriction.left_inverse,
        )
    }
}

/// `ρ(θ)` for `θ ∈ D(A)`, a derivation on `A^H`.
pub fn euler_restriction(a: &Arrangement, theta: &Derivation, i: usize) -> Result<Derivation> {
    if !theta.is_member(a, None) {
        return Err(Error::NotInModule(format!("{theta} is not in D(A)")));
    }
    Ok(EulerRestriction::new(a, i)?.apply(theta))
}

/// `π(θ)` for `θ ∈ D_H(A)`, a derivation in `D(A^H, m^H)`.
pub fn ziegler_map(
    a: &Arrangement,
    theta: &Derivation,
    zr: &ZieglerRestriction,
) -> Result<Derivation> {
    let h = a.hyperplane(zr.index)?;
    if !theta.apply_linear(h.form()).is_zero() {
        return Err(Error::NotInModule(format!("{theta} does not kill α_H")));
    }
    if !theta.is_member(a, None) {
        return Err(Error::NotInModule(format!("{theta} is not in D(A)")));
    }
    Ok(push_through(theta, &zr.embedding, &zr.left_inverse))
}

/// `Q′ = ∏_X α_{t(X)}^{m^H(X) − 1}` in the ambient variables.
pub fn section_product(a: &Arrangement, zr: &ZieglerRestriction) -> Poly {
    let mut q = Poly::one(a.nvars());
    for (x, &t) in zr.section.iter().enumerate() {
        let k = zr.mult.get(x) - 1;
        if k > 0 {
            q = &q * &a.hyperplanes()[t].poly().pow(k);
        }
    }
    q
}

/// `θ_E^H = ρ(Q′ θ_E)`, of degree `|A| − |A^H|`.
pub fn theta_eh(a: &Arrangement, i: usize) -> Result<Derivation> {
    let zr = a.ziegler_restrict(i)?;
    let q = section_product(a, &zr);
    let lifted = euler_derivation(a.nvars()).mul_poly(&q);
    Ok(push_through(&lifted, &zr.embedding, &zr.left_inverse))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivations::{derivation_slice, SliceConstraint};

    fn arr(nvars: usize, forms: &[&[i64]]) -> Arrangement {
        Arrangement::from_i64(nvars, forms).unwrap()
    }

    fn boolean3() -> Arrangement {
        arr(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])
    }

    #[test]
    fn euler_restricts_to_euler() {
        let a = arr(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]);
        let r = euler_restriction(&a, &euler_derivation(3), 3).unwrap();
        assert_eq!(r, euler_derivation(2));
        let h = a.hyperplanes()[3].poly();
        let killed = euler_restriction(&a, &euler_derivation(3).mul_poly(&h), 3).unwrap();
        assert!(killed.is_zero());
    }

    #[test]
    fn non_members_are_rejected() {
        let a = boolean3();
        let th = Derivation::new(0, vec![Poly::one(3), Poly::zero(3), Poly::zero(3)]).unwrap();
        assert!(euler_restriction(&a, &th, 0).is_err());
    }

    #[test]
    fn ziegler_on_boolean() {
        let a = boolean3();
        let zr = a.ziegler_restrict(2).unwrap();
        let x = Poly::var(3, 0);
        let th = Derivation::new(1, vec![x, Poly::zero(3), Poly::zero(3)]).unwrap();
        let img = ziegler_map(&a, &th, &zr).unwrap();
        assert_eq!(img.coeffs(), &[Poly::var(2, 0), Poly::zero(2)]);
        assert!(ziegler_map(&a, &euler_derivation(3), &zr).is_err());
    }

    #[test]
    fn theta_eh_boolean_is_euler() {
        let t = theta_eh(&boolean3(), 2).unwrap();
        assert_eq!(t, euler_derivation(2));
    }

    #[test]
    fn ziegler_images_have_multiplicity() {
        // x y z (x - y)(x + y) restricted to z = 0 has no collapse; add
        // x - z so that it meets z = 0 in the line x = 0 twice.
        let a = arr(
            3,
            &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, -1, 0], &[1, 0, -1]],
        );
        let zr = a.ziegler_restrict(2).unwrap();
        assert_eq!(zr.mult.total(), 4);
        for d in 1..5 {
            let s = derivation_slice(&a, None, d, SliceConstraint::Kills(2)).unwrap();
            for th in &s.basis {
                let img = ziegler_map(&a, th, &zr).unwrap();
                assert!(img.is_member(&zr.restricted, Some(&zr.mult)));
            }
        }
        let te = theta_eh(&a, 2).unwrap();
        assert_eq!(te.degree() as usize, a.len() - zr.restricted.len());
        assert!(te.is_member(&zr.restricted, Some(&zr.mult)));
    }
}
