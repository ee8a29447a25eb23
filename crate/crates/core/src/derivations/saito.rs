//! Saito's criterion: `θ_1, …, θ_ℓ ∈ D(A, m)` form a basis iff
//! `det(θ_i(x_j)) = c·Q(A, m)` with `c ≠ 0`.

use num_traits::Zero;
use serde::Serialize;

use super::Derivation;
use crate::algebra::{format_rational, poly_matrix_det, Rational};
use crate::arrangement::{Arrangement, Multiplicity};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SaitoVerdict {
    pub holds: bool,
    /// `c` with `det = c·Q(A, m)` (primitive integer forms), when it exists.
    #[serde(serialize_with = "ser_opt_rational")]
    pub constant: Option<Rational>,
    pub degree_sum: usize,
}

fn ser_opt_rational<S: serde::Serializer>(
    v: &Option<Rational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(q) => s.serialize_some(&format_rational(q)),
        None => s.serialize_none(),
    }
}

pub fn saito_check(
    a: &Arrangement,
    m: Option<&Multiplicity>,
    candidates: &[Derivation],
) -> Result<SaitoVerdict> {
    let l = a.nvars();
    if candidates.len() != l {
        return Err(Error::LengthMismatch {
            expected: l,
            found: candidates.len(),
        });
    }
    for th in candidates {
        if th.nvars() != l {
            return Err(Error::VariableMismatch {
                expected: l,
                found: th.nvars(),
            });
        }
        if !th.is_member(a, m) {
            return Err(Error::NotInModule(format!("{th}")));
        }
    }
    let degree_sum = candidates.iter().map(|t| t.degree() as usize).sum();
    let mat: Vec<Vec<_>> = candidates.iter().map(|t| t.coeffs().to_vec()).collect();
    let det = poly_matrix_det(&mat);
    let q = a.defining_polynomial(m);
    let constant = match (det.leading_term(), q.leading_term()) {
        (Some((de, dc)), Some((qe, qc))) if de == qe => {
            let c: Rational = dc / qc;
            (q.scale(&c) == det).then_some(c)
        }
        _ => None,
    };
    let holds = constant.as_ref().is_some_and(|c| !c.is_zero());
    Ok(SaitoVerdict {
        holds,
        constant,
        degree_sum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, Poly};
    use crate::derivations::{euler_derivation, minimal_generators};

    #[test]
    fn boolean_coordinate_basis() {
        let a = Arrangement::from_i64(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        let z = Poly::zero(3);
        let c: Vec<Derivation> = (0..3)
            .map(|i| {
                let mut v = vec![z.clone(); 3];
                v[i] = Poly::var(3, i);
                Derivation::new(1, v).unwrap()
            })
            .collect();
        let v = saito_check(&a, None, &c).unwrap();
        assert!(v.holds);
        assert_eq!(v.constant, Some(rat(1)));
    }

    #[test]
    fn supersolvable_basis() {
        // Q = xyz(x - y): exponents (1, 1, 2).
        let a =
            Arrangement::from_i64(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, -1, 0]]).unwrap();
        let x = Poly::var(3, 0);
        let y = Poly::var(3, 1);
        let z = Poly::var(3, 2);
        let zero = Poly::zero(3);
        let t2 = Derivation::new(1, vec![zero.clone(), zero.clone(), z.clone()]).unwrap();
        let t3 = Derivation::new(2, vec![&x * &x, &y * &y, zero]).unwrap();
        let v = saito_check(&a, None, &[euler_derivation(3), t2, t3]).unwrap();
        assert!(v.holds);
        assert!(!v.constant.unwrap().is_zero());
    }

    #[test]
    fn tangent_degree_sum_too_big() {
        let a =
            Arrangement::from_i64(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]).unwrap();
        let g = minimal_generators(&a, None, 4).unwrap();
        let v = saito_check(&a, None, &g.generators[..3]).unwrap();
        assert!(!v.holds);
        assert_eq!(v.degree_sum, 5);
        let bad = Derivation::new(0, vec![Poly::one(3), Poly::zero(3), Poly::zero(3)]).unwrap();
        assert!(saito_check(&a, None, &[bad.clone(), bad.clone(), bad]).is_err());
    }
}
