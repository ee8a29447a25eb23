//! Sparse multivariate polynomials over ℚ.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::field::{format_rational, Rational};
use super::monomial::{add_exponents, Exponent, MonomialBasis};
use crate::error::{Error, Result};

/// Polynomial in `nvars` variables, stored sparsely by exponent vector.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Exponent, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Rational::one())
    }

    /// The variable `x_i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Poly::monomial(e, Rational::one())
    }

    pub fn monomial(exp: Exponent, coeff: Rational) -> Self {
        let mut p = Poly::zero(exp.len());
        p.add_term(exp, coeff);
        p
    }

    /// Linear form `Σ c_i x_i`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        let mut p = Poly::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponent, Rational)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length must equal nvars");
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &[u32]) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    /// Largest total degree of a term, `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// True for zero and for polynomials whose terms share one degree.
    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|x| x == d),
        }
    }

    pub fn add_term(&mut self, exp: Exponent, coeff: Rational) {
        debug_assert_eq!(exp.len(), self.nvars);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, exp: &[u32]) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (add_exponents(e, exp), v.clone()))
                .collect(),
        }
    }

    /// Exact product. Errors when the variable counts differ.
    pub fn try_mul(&self, rhs: &Poly) -> Result<Poly> {
        if self.nvars != rhs.nvars {
            return Err(Error::VariableMismatch {
                expected: self.nvars,
                found: rhs.nvars,
            });
        }
        let mut out = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(add_exponents(ea, eb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars);
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    v *= x;
                }
            }
            total += v;
        }
        total
    }

    /// Substitute `x_i ↦ images[i]`, where each image is a linear form in
    /// `new_nvars` variables given by its coefficient vector.
    pub fn compose_linear(&self, images: &[Vec<Rational>], new_nvars: usize) -> Poly {
        assert_eq!(images.len(), self.nvars);
        let forms: Vec<Poly> = images
            .iter()
            .map(|c| {
                assert_eq!(c.len(), new_nvars);
                Poly::linear(c)
            })
            .collect();
        let mut powers: HashMap<(usize, u32), Poly> = HashMap::new();
        let mut out = Poly::zero(new_nvars);
        for (e, c) in &self.terms {
            let mut term = Poly::constant(new_nvars, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let pw = powers
                    .entry((i, k))
                    .or_insert_with(|| forms[i].pow(k))
                    .clone();
                term = &term * &pw;
            }
            out = &out + &term;
        }
        out
    }

    /// Leading term in lexicographic order (`x_1 > x_2 > …`).
    pub fn leading_term(&self) -> Option<(&Exponent, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Division by a single divisor: returns `(q, r)` with
    /// `self = q·divisor + r` and no term of `r` divisible by the lex-leading
    /// term of the divisor. `r = 0` iff the divisor divides `self`.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert_eq!(self.nvars, divisor.nvars);
        let (lt_exp, lt_coeff) = divisor.leading_term().expect("division by zero polynomial");
        let lt_exp = lt_exp.clone();
        let lt_inv = lt_coeff.recip();
        let mut p = self.clone();
        let mut q = Poly::zero(self.nvars);
        let mut r = Poly::zero(self.nvars);
        while let Some((e, c)) = p
            .terms
            .iter()
            .next_back()
            .map(|(e, c)| (e.clone(), c.clone()))
        {
            if e.iter().zip(&lt_exp).all(|(a, b)| a >= b) {
                let shift: Exponent = e.iter().zip(&lt_exp).map(|(a, b)| a - b).collect();
                let factor = &c * &lt_inv;
                q.add_term(shift.clone(), factor.clone());
                for (de, dc) in &divisor.terms {
                    p.add_term(add_exponents(de, &shift), -(dc * &factor));
                }
            } else {
                p.terms.remove(&e);
                r.add_term(e, c);
            }
        }
        (q, r)
    }

    /// Exact quotient; errors when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(divisor);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NotDivisible)
        }
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.div_rem(self).1.is_zero()
    }

    /// Coordinates of a homogeneous polynomial against a monomial basis.
    /// Panics if a term is not in the basis.
    pub fn to_dense(&self, basis: &MonomialBasis) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); basis.len()];
        for (e, c) in &self.terms {
            let i = basis
                .index_of(e)
                .expect("term outside the requested homogeneous degree");
            out[i] = c.clone();
        }
        out
    }

    pub fn from_dense(basis: &MonomialBasis, coords: &[Rational]) -> Poly {
        assert_eq!(coords.len(), basis.len());
        let mut p = Poly::zero(basis.nvars());
        for (i, c) in coords.iter().enumerate() {
            p.add_term(basis.get(i).clone(), c.clone());
        }
        p
    }

    /// Coefficients of a linear polynomial (`None` if not homogeneous linear).
    pub fn linear_coefficients(&self) -> Option<Vec<Rational>> {
        let mut out = vec![Rational::zero(); self.nvars];
        for (e, c) in &self.terms {
            if e.iter().sum::<u32>() != 1 {
                return None;
            }
            let i = e.iter().position(|&k| k == 1)?;
            out[i] = c.clone();
        }
        Some(out)
    }

    /// Render with the given variable names.
    pub fn format_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        names[i].clone()
                    } else {
                        format!("{}^{}", names[i], k)
                    }
                })
                .collect();
            if mono.is_empty() {
                out.push_str(&format_rational(&abs));
            } else {
                if !abs.is_one() {
                    out.push_str(&format_rational(&abs));
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

/// Default variable names: `x, y, z, w` up to four variables, else `x1..xn`.
pub fn variable_names(nvars: usize) -> Vec<String> {
    if nvars <= 4 {
        ["x", "y", "z", "w"][..nvars]
            .iter()
            .map(|s| s.to_string())
            .collect()
    } else {
        (1..=nvars).map(|i| format!("x{i}")).collect()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(&variable_names(self.nvars)))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("variable count mismatch")
    }
}

/// Product of two polynomials; errors on variable-count mismatch.
pub fn poly_mul(a: &Poly, b: &Poly) -> Result<Poly> {
    a.try_mul(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::rat;

    fn x() -> Poly {
        Poly::var(2, 0)
    }
    fn y() -> Poly {
        Poly::var(2, 1)
    }

    #[test]
    fn difference_of_squares() {
        let p = poly_mul(&(&x() + &y()), &(&x() - &y())).unwrap();
        assert_eq!(p, &(&x() * &x()) - &(&y() * &y()));
        assert_eq!(p.to_string(), "x^2 - y^2");
    }

    #[test]
    fn identity_product() {
        let p = &(&x() * &y()) + &x().scale(&rat(3));
        assert_eq!(poly_mul(&Poly::one(2), &p).unwrap(), p);
    }

    #[test]
    fn quartic_expansion() {
        let a = &(&x() * &x()) - &(&y() * &y());
        let b = &(&x() * &x()) - &(&y() * &y()).scale(&rat(4));
        let expected = Poly::from_terms(
            2,
            [
                (vec![4, 0], rat(1)),
                (vec![2, 2], rat(-5)),
                (vec![0, 4], rat(4)),
            ],
        );
        assert_eq!(poly_mul(&a, &b).unwrap(), expected);
    }

    #[test]
    fn mismatch_is_an_error() {
        let err = poly_mul(&Poly::var(2, 0), &Poly::var(3, 0)).unwrap_err();
        assert_eq!(
            err,
            Error::VariableMismatch {
                expected: 2,
                found: 3
            }
        );
    }

    #[test]
    fn exact_division() {
        let f = &(&x() * &x()) - &(&y() * &y());
        let q = f.div_exact(&(&x() - &y())).unwrap();
        assert_eq!(q, &x() + &y());
        assert_eq!(
            f.div_exact(&(&x() - &y().scale(&rat(2)))),
            Err(Error::NotDivisible)
        );
    }

    #[test]
    fn linear_composition() {
        // (x + y)^2 with x -> u, y -> -u gives 0.
        let f = (&x() + &y()).pow(2);
        let g = f.compose_linear(&[vec![rat(1)], vec![rat(-1)]], 1);
        assert!(g.is_zero());
        let h = (&x() * &y()).compose_linear(&[vec![rat(1), rat(1)], vec![rat(1), rat(-1)]], 2);
        assert_eq!(h.to_string(), "x^2 - y^2");
    }
}
