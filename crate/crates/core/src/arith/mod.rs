//! Exact arithmetic: rationals, cyclotomic numbers, sparse multivariate
//! polynomials, dense univariate polynomials and truncated formal series.
//!
//! Nothing in this crate ever rounds. Every coefficient domain implements
//! [`Coefficient`], which is what lets [`TruncSeries`] and the genus
//! machinery run unchanged over `Q`, `Q(ζ_N)`, `Q[y]` or nested series.

mod cyclotomic;
mod poly;
mod series;
mod upoly;

use std::fmt::Debug;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, CyclotomicNumber};
pub use poly::{Monomial, SparsePoly};
pub use series::{SeriesCtx, TruncSeries};
pub use upoly::UniPoly;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational numerator in {s:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational denominator in {s:?}")))?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(num, den))
}

/// A commutative coefficient ring usable inside series and polynomial
/// evaluation.
///
/// Constants need a context because some domains are parameterized at
/// runtime: the level of `Q(ζ_N)`, or the variable and truncation order of a
/// nested series.
pub trait Coefficient: Clone + PartialEq + Debug {
    type Ctx: Clone + PartialEq + Debug;

    fn ctx(&self) -> Self::Ctx;
    fn zero_in(ctx: &Self::Ctx) -> Self;
    fn one_in(ctx: &Self::Ctx) -> Self;
    fn from_rational(ctx: &Self::Ctx, r: &Rational) -> Self;
    fn vanishes(&self) -> bool;
    fn add(&self, other: &Self) -> Result<Self>;
    fn mul(&self, other: &Self) -> Result<Self>;
    fn neg(&self) -> Self;
    fn scale(&self, r: &Rational) -> Self;
    /// Multiplicative inverse, when one exists in the domain.
    fn inverse(&self) -> Result<Self>;
    /// Text form without any level annotation; compound values are
    /// parenthesized so they can be embedded in a sum.
    fn render(&self) -> String;

    fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::one_in(&self.ctx());
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }
}

impl Coefficient for Rational {
    type Ctx = ();

    fn ctx(&self) -> Self::Ctx {}
    fn zero_in(_: &()) -> Self {
        Rational::zero()
    }
    fn one_in(_: &()) -> Self {
        Rational::one()
    }
    fn from_rational(_: &(), r: &Rational) -> Self {
        r.clone()
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Result<Self> {
        Ok(self + other)
    }
    fn mul(&self, other: &Self) -> Result<Self> {
        Ok(self * other)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn inverse(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

static BERNOULLI_MEMO: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

/// Bernoulli number `B_k` with the `x/(e^x - 1)` convention, so `B_1 = -1/2`.
///
/// Values come from `sum_{j<=k} C(k+1, j) B_j = 0` and are memoized.
pub fn bernoulli(k: usize) -> Rational {
    let mut memo = BERNOULLI_MEMO.lock().unwrap_or_else(|e| e.into_inner());
    if memo.is_empty() {
        memo.push(Rational::one());
    }
    while memo.len() <= k {
        let m = memo.len() as i64;
        let mut acc = Rational::zero();
        for (j, b) in memo.iter().enumerate() {
            acc += Rational::from_integer(binomial(m + 1, j as i64)) * b;
        }
        let b_m = -acc / int(m + 1);
        memo.push(b_m);
    }
    memo[k].clone()
}

/// `gcd` of the absolute values; `gcd(0, 0) = 0`.
pub fn gcd_i64(a: i64, b: i64) -> i64 {
    num_integer::gcd(a, b).abs()
}



#[cfg(test)]
mod tests {
    use super::*;

    fn bernoulli_oracle(k: usize) -> Rational {
        // Coefficients of x/(e^x-1) via inversion of (e^x-1)/x = sum x^j/(j+1)!,
        // written out as a plain triangular solve.
        let c: Vec<Rational> = (0..=k)
            .map(|j| Rational::new(BigInt::one(), factorial(j as u64 + 1)))
            .collect();
        let mut inv = vec![Rational::zero(); k + 1];
        inv[0] = Rational::one();
        for n in 1..=k {
            let mut acc = Rational::zero();
            for j in 1..=n {
                acc += &c[j] * &inv[n - j];
            }
            inv[n] = -acc;
        }
        &inv[k] * Rational::from_integer(factorial(k as u64))
    }

    #[test]
    fn bernoulli_small_values() {
        assert_eq!(bernoulli(0), int(1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(4), rat(-1, 30));
        assert_eq!(bernoulli(12), rat(-691, 2730));
    }

    #[test]
    fn bernoulli_matches_generating_function() {
        for k in 0..24 {
            assert_eq!(bernoulli(k), bernoulli_oracle(k), "B_{k}");
        }
    }

    #[test]
    fn bernoulli_odd_vanish() {
        for k in (3..41).step_by(2) {
            assert!(Zero::is_zero(&bernoulli(k)), "B_{k}");
        }
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(int(5).to_string(), "5");
        assert_eq!(rat(2, -4).to_string(), "-1/2");
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
    }
}
