//! Exact scalar fields.
//!
//! Everything in this crate is generic over [`Field`]. Two implementations
//! ship with it: arbitrary-precision rationals ([`Rational`]) and residues
//! modulo a fixed odd prime ([`Fp`]). Mixing fields is a type error.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::roots;
use crate::upoly::UniPoly;

/// Arbitrary-precision rational number, always reduced with positive denominator.
pub type Rational = BigRational;

/// An exact commutative field.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Short identifier used in reports: `rational` or `fp:<p>`.
    fn field_name() -> String;

    /// Zero for ℚ, the prime otherwise.
    fn characteristic() -> u64;

    fn from_i64(v: i64) -> Self;

    /// Maps a rational into the field. Fails when the denominator vanishes.
    fn from_rational(r: &Rational) -> Result<Self>;

    fn parse_scalar(s: &str) -> Result<Self>;

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::one() / self.clone())
        }
    }

    /// Determinant of a square matrix. The default is plain Gaussian
    /// elimination; ℚ overrides it with Bareiss.
    fn determinant(m: &Matrix<Self>) -> Self {
        m.determinant_by_elimination()
    }

    /// Roots in the field of a squarefree polynomial, sorted by the field's
    /// canonical order and without repetition.
    fn roots_of_squarefree(f: &UniPoly<Self>) -> Vec<Self>;

    /// Total order used to sort report output deterministically.
    fn canonical_cmp(&self, other: &Self) -> std::cmp::Ordering;

    /// Reduction of a matrix modulo [`CHECK_PRIME`], when the field is ℚ and
    /// no denominator is divisible by it.
    fn modular_image(_m: &Matrix<Self>) -> Option<Matrix<Fp<CHECK_PRIME>>> {
        None
    }
}

/// Mersenne prime used for modular rank shortcuts over ℚ.
pub const CHECK_PRIME: u64 = 2_305_843_009_213_693_951;

impl Field for Rational {
    fn field_name() -> String {
        "rational".to_string()
    }

    fn characteristic() -> u64 {
        0
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_rational(r: &Rational) -> Result<Self> {
        Ok(r.clone())
    }

    fn parse_scalar(s: &str) -> Result<Self> {
        parse_rational(s)
    }

    fn determinant(m: &Matrix<Self>) -> Self {
        bareiss_determinant(m)
    }

    fn roots_of_squarefree(f: &UniPoly<Self>) -> Vec<Self> {
        roots::rational_roots(f)
    }

    fn canonical_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.cmp(other)
    }

    fn modular_image(m: &Matrix<Self>) -> Option<Matrix<Fp<CHECK_PRIME>>> {
        let data = m.entries().iter().map(|x| Fp::from_rational(x).ok()).collect::<Option<Vec<_>>>()?;
        Matrix::new(m.rows(), m.cols(), data).ok()
    }
}

/// Parses `"3"`, `"-4/7"` and the like. Zero denominators are rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    match t.split_once('/') {
        None => BigInt::from_str(t).map(BigRational::from_integer).map_err(|_| bad()),
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(n, d))
        }
    }
}

fn bareiss_determinant(m: &Matrix<Rational>) -> Rational {
    let n = m.rows();
    assert_eq!(n, m.cols(), "determinant of a non-square matrix");
    if n == 0 {
        return Rational::one();
    }
    // Clear denominators row by row, run Bareiss over ℤ, then undo the scaling.
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for r in 0..n {
        let lcm = (0..n).fold(BigInt::one(), |acc, c| acc.lcm(m.get(r, c).denom()));
        scale *= &lcm;
        a.push(
            (0..n)
                .map(|c| {
                    let x = m.get(r, c);
                    x.numer() * (&lcm / x.denom())
                })
                .collect(),
        );
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Rational::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    BigRational::new(sign * &a[n - 1][n - 1], scale)
}

/// Residue modulo the odd prime `P` (`P < 2^62`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub const MODULUS: u64 = P;

    pub fn new(v: u64) -> Self {
        Fp(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Deterministic Miller–Rabin, exact for all 64-bit inputs.
    pub fn modulus_is_prime() -> bool {
        is_prime_u64(P)
    }
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
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

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.0, P)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let s = self.0 + rhs.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp(if self.0 >= rhs.0 { self.0 - rhs.0 } else { self.0 + P - rhs.0 })
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 * rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        assert!(rhs.0 != 0, "division by zero in F_{P}");
        self * rhs.pow(P - 2)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn field_name() -> String {
        format!("fp:{P}")
    }

    fn characteristic() -> u64 {
        P
    }

    fn from_i64(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }

    fn from_rational(r: &Rational) -> Result<Self> {
        let p = BigInt::from(P);
        let reduce = |x: &BigInt| Fp::<P>(x.mod_floor(&p).to_u64().expect("residue fits u64"));
        let d = reduce(r.denom());
        if d.is_zero() {
            return Err(Error::BadPrime(format!("{P} divides the denominator of {r}")));
        }
        Ok(reduce(r.numer()) / d)
    }

    fn parse_scalar(s: &str) -> Result<Self> {
        Self::from_rational(&parse_rational(s)?)
    }

    fn roots_of_squarefree(f: &UniPoly<Self>) -> Vec<Self> {
        roots::fp_roots(f)
    }

    fn canonical_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.cmp(&other.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type F7 = Fp<7>;

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3").unwrap(), Rational::from_i64(3));
        assert_eq!(parse_rational("-4/7").unwrap(), BigRational::new(BigInt::from(-4), BigInt::from(7)));
        assert_eq!(parse_rational("2/4").unwrap().to_string(), "1/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn fp_arithmetic() {
        let a = F7::from_i64(3);
        let b = F7::from_i64(5);
        assert_eq!((a + b).value(), 1);
        assert_eq!((a - b).value(), 5);
        assert_eq!((a * b).value(), 1);
        assert_eq!((a / b * b), a);
        assert_eq!((-a).value(), 4);
        assert_eq!(F7::from_i64(-1).value(), 6);
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(F7::from_rational(&half).unwrap().value(), 4);
        let bad = BigRational::new(BigInt::from(1), BigInt::from(7));
        assert!(F7::from_rational(&bad).is_err());
    }

    #[test]
    fn primality() {
        assert!(Fp::<2305843009213693951>::modulus_is_prime());
        assert!(Fp::<1000000007>::modulus_is_prime());
        assert!(!Fp::<1000000005>::modulus_is_prime());
        assert!(is_prime_u64(32003));
        assert!(!is_prime_u64(3215031751));
    }
}
