//! Univariate polynomials in `t` over ℚ, used for χ, π and χ₀.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::field::{format_rational, primitive_integer_vector, rat, Rational};

/// Coefficients are stored lowest degree first with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly::default()
    }

    pub fn one() -> Self {
        UniPoly::from_i64(&[1])
    }

    /// `t − r`
    pub fn linear_root(r: Rational) -> Self {
        UniPoly::new(vec![-r, Rational::one()])
    }

    /// `∏ (t − r_i)`
    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a Rational>) -> Self {
        roots.into_iter().fold(UniPoly::one(), |acc, r| {
            acc.mul(&UniPoly::linear_root(r.clone()))
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// Integer coefficients, if every coefficient is an integer.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn add(&self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }

    pub fn sub(&self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }

    pub fn mul(&self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + c)
    }

    /// Quotient and remainder. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    pub fn divides(&self, other: &UniPoly) -> bool {
        other.div_rem(self).1.is_zero()
    }

    /// `(−t)^n · p(−1/t)` for `n ≥ deg p`.
    pub fn reciprocal_signed(&self, n: usize) -> UniPoly {
        assert!(self.degree().is_none_or(|d| d <= n));
        let mut out = vec![Rational::zero(); n + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            // c (−1/t)^k (−t)^n = c (−1)^{n+k}... simplified: (−1)^k (−1)^n t^{n−k}
            let sign_negative = (n + k) % 2 == 1;
            out[n - k] = if sign_negative { -c.clone() } else { c.clone() };
        }
        UniPoly::new(out)
    }

    /// Multiplicity of `r` as a root.
    pub fn root_multiplicity(&self, r: &Rational) -> usize {
        let lin = UniPoly::linear_root(r.clone());
        let mut p = self.clone();
        let mut k = 0;
        while !p.is_zero() {
            let (q, rem) = p.div_rem(&lin);
            if !rem.is_zero() {
                break;
            }
            p = q;
            k += 1;
        }
        k
    }

    /// All rational roots with multiplicity, ascending. The second value
    /// is the cofactor left after removing them.
    pub fn rational_roots(&self) -> (Vec<Rational>, UniPoly) {
        let mut roots = Vec::new();
        let mut p = self.clone();
        if p.is_zero() {
            return (roots, p);
        }
        while p.coeffs[0].is_zero() {
            roots.push(Rational::zero());
            p.coeffs.remove(0);
        }
        let ints = primitive_integer_vector(&p.coeffs);
        let (Some(low), Some(high)) = (ints.first(), ints.last()) else {
            return (roots, p);
        };
        if p.degree() == Some(0) {
            return (roots, p);
        }
        let mut candidates = Vec::new();
        for num in divisors(low) {
            for den in divisors(high) {
                let q = Rational::new(num.clone(), den.clone());
                candidates.push(q.clone());
                candidates.push(-q);
            }
        }
        candidates.sort();
        candidates.dedup();
        for c in candidates {
            let k = p.root_multiplicity(&c);
            for _ in 0..k {
                roots.push(c.clone());
                p = p.div_rem(&UniPoly::linear_root(c.clone())).0;
            }
        }
        roots.sort();
        (roots, p)
    }

    pub fn format_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if mono.is_empty() || !abs.is_one() {
                out.push_str(&format_rational(&abs));
            }
            out.push_str(&mono);
        }
        out
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return Vec::new();
    }
    if let Some(v) = n.to_u64() {
        let mut out = Vec::new();
        let mut i = 1u64;
        while i.saturating_mul(i) <= v {
            if v % i == 0 {
                out.push(BigInt::from(i));
                if i != v / i {
                    out.push(BigInt::from(v / i));
                }
            }
            i += 1;
        }
        return out;
    }
    // Huge constant term: fall back to ±1 and ±n.
    let mut out = vec![BigInt::one(), n.clone()];
    if n.is_even() {
        out.push(BigInt::from(2));
    }
    out
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_in("t"))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

impl Serialize for UniPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(format_rational))
    }
}
