//! Scalar fields used by the linear algebra.
//!
//! [`Rational`] is the field every result lives in. [`Fp`] is a word-sized
//! prime field used for rank bounds: for a matrix with entries in ℚ whose
//! denominators are units mod p, the rank mod p never exceeds the rank over ℚ.
//! Several certification steps rely on exactly that one-sided inequality.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Exact rational scalar.
pub type Rational = BigRational;

/// Build a rational from a small integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Build the rational `n / d`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
    fn from_i64(v: i64) -> Self;
    /// Image of a rational; `None` when the denominator is not invertible.
    fn from_rational(q: &Rational) -> Option<Self>;

    /// `self -= a * b`
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        *self = self.sub(&a.mul(b));
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip()
    }
    fn from_i64(v: i64) -> Self {
        rat(v)
    }
    fn from_rational(q: &Rational) -> Option<Self> {
        Some(q.clone())
    }
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        *self -= a * b;
    }
}

/// Element of ℤ/Pℤ for a prime `P < 2^63`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp<const P: u64>(u64);

/// 2^61 − 1.
pub const PRIME_A: u64 = 2_305_843_009_213_693_951;
/// 2^62 − 57.
pub const PRIME_B: u64 = 4_611_686_018_427_387_847;

/// 2^31 − 1; products fit in a `u64`, which makes this the fast choice.
pub const PRIME_C: u64 = 2_147_483_647;

pub type FpA = Fp<PRIME_A>;
pub type FpB = Fp<PRIME_B>;
pub type Fp31 = Fp<PRIME_C>;

impl<const P: u64> Fp<P> {
    pub fn new(v: u64) -> Self {
        Fp(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp::<P>(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = Field::mul(&acc, &base);
            }
            base = Field::mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn reduce_bigint(n: &BigInt) -> u64 {
        let m = n.mod_floor(&BigInt::from(P));
        m.to_u64().expect("residue fits in u64")
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Field for Fp<P> {
    #[inline]
    fn zero() -> Self {
        Fp(0)
    }
    #[inline]
    fn one() -> Self {
        Fp(1)
    }
    #[inline]
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    #[inline]
    fn add(&self, rhs: &Self) -> Self {
        let s = self.0 + rhs.0;
        Fp(if s >= P { s - P } else { s })
    }
    #[inline]
    fn sub(&self, rhs: &Self) -> Self {
        Fp(if self.0 >= rhs.0 {
            self.0 - rhs.0
        } else {
            self.0 + P - rhs.0
        })
    }
    #[inline]
    fn mul(&self, rhs: &Self) -> Self {
        if P <= u32::MAX as u64 {
            Fp((self.0 * rhs.0) % P)
        } else {
            Fp(((self.0 as u128 * rhs.0 as u128) % P as u128) as u64)
        }
    }
    #[inline]
    fn neg(&self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero in F_p");
        self.pow(P - 2)
    }
    fn from_i64(v: i64) -> Self {
        if v >= 0 {
            Fp(v as u64 % P)
        } else {
            Fp(v.unsigned_abs() % P).neg()
        }
    }
    fn from_rational(q: &Rational) -> Option<Self> {
        let den = Self::reduce_bigint(q.denom());
        if den == 0 {
            return None;
        }
        let num = Self::reduce_bigint(q.numer());
        Some(Field::mul(&Fp(num), &Fp(den).inv()))
    }
    #[inline]
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        *self = Field::sub(self, &Field::mul(a, b));
    }
}

/// Format a rational as `a` or `a/b`.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parse `a`, `-a` or `a/b` (no decimals).
pub fn parse_rational(token: &str) -> Option<Rational> {
    let token = token.trim();
    let (num, den) = match token.split_once('/') {
        Some((n, d)) => (n, d),
        None => (token, "1"),
    };
    let valid = |s: &str, allow_sign: bool| {
        let digits = if allow_sign {
            s.strip_prefix('-')
                .or_else(|| s.strip_prefix('+'))
                .unwrap_or(s)
        } else {
            s
        };
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(num, true) || !valid(den, false) {
        return None;
    }
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = den.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Scale a rational vector to a primitive integer vector (content 1, same
/// direction). The zero vector maps to zeros.
pub fn primitive_integer_vector(values: &[Rational]) -> Vec<BigInt> {
    let den = common_denominator(values);
    let ints: Vec<BigInt> = values
        .iter()
        .map(|q| q.numer() * (&den / q.denom()))
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
    if content.is_zero() {
        return ints;
    }
    ints.into_iter().map(|v| v / &content).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_prime(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
            if n.is_multiple_of(p) {
                return n == p;
            }
        }
        let mut d = n - 1;
        let mut s = 0;
        while d.is_multiple_of(2) {
            d /= 2;
            s += 1;
        }
        let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
        let powmod = |mut b: u64, mut e: u64| {
            let mut r = 1u64;
            while e > 0 {
                if e & 1 == 1 {
                    r = mulmod(r, b);
                }
                b = mulmod(b, b);
                e >>= 1;
            }
            r
        };
        'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
            let mut x = powmod(a, d);
            if x == 1 || x == n - 1 {
                continue;
            }
            for _ in 1..s {
                x = mulmod(x, x);
                if x == n - 1 {
                    continue 'witness;
                }
            }
            return false;
        }
        true
    }

    #[test]
    fn moduli_are_prime() {
        assert!(is_prime(PRIME_A));
        assert!(is_prime(PRIME_B));
        assert!(is_prime(PRIME_C));
    }

    #[test]
    fn fp_arithmetic() {
        let a = FpA::from_i64(-3);
        let b = FpA::from_i64(5);
        assert_eq!(a.add(&b), FpA::from_i64(2));
        assert_eq!(a.mul(&b), FpA::from_i64(-15));
        assert_eq!(b.mul(&b.inv()), FpA::one());
        let half = FpA::from_rational(&ratio(1, 2)).unwrap();
        assert_eq!(half.mul(&FpA::from_i64(2)), FpA::one());
        let c = Fp31::from_i64(-7);
        assert_eq!(c.mul(&c.inv()), Fp31::one());
        assert_eq!(c.mul(&Fp31::from_i64(3)), Fp31::from_i64(-21));
    }

    #[test]
    fn parse_tokens() {
        assert_eq!(parse_rational("-1/2"), Some(ratio(-1, 2)));
        assert_eq!(parse_rational("7"), Some(rat(7)));
        assert_eq!(parse_rational("0.5"), None);
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("1/-2"), None);
        assert_eq!(format_rational(&ratio(6, -4)), "-3/2");
    }

    #[test]
    fn primitive_vectors() {
        let v = primitive_integer_vector(&[ratio(1, 2), ratio(-3, 4), rat(0)]);
        assert_eq!(v, vec![BigInt::from(2), BigInt::from(-3), BigInt::from(0)]);
    }
}
