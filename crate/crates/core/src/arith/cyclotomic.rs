use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{int, parse_rational, Coefficient, Rational, UniPoly};
use crate::error::{Error, Result};

static PHI_MEMO: RwLock<Option<HashMap<u32, Arc<Vec<i64>>>>> = RwLock::new(None);

/// Euler's totient.
pub fn euler_phi(n: u32) -> usize {
    let mut n = n as u64;
    let mut out = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out as usize
}

fn phi_coeffs(n: u32) -> Arc<Vec<i64>> {
    if let Some(map) = PHI_MEMO.read().unwrap_or_else(|e| e.into_inner()).as_ref() {
        if let Some(c) = map.get(&n) {
            return c.clone();
        }
    }
    // x^n - 1 divided by every Φ_d with d a proper divisor of n.
    let mut acc = vec![int(0); n as usize + 1];
    acc[0] = int(-1);
    acc[n as usize] = int(1);
    let mut poly = UniPoly::new('z', acc);
    for d in 1..n {
        if n.is_multiple_of(d) {
            let div = UniPoly::new('z', phi_coeffs(d).iter().map(|&c| int(c)).collect());
            let (q, r) = poly.div_rem(&div).expect("cyclotomic divisor is nonzero");
            debug_assert!(r.is_zero());
            poly = q;
        }
    }
    let coeffs: Vec<i64> = poly
        .coeffs()
        .iter()
        .map(|c| c.to_integer().to_i64().expect("cyclotomic coefficients fit in i64"))
        .collect();
    let coeffs = Arc::new(coeffs);
    let mut guard = PHI_MEMO.write().unwrap_or_else(|e| e.into_inner());
    guard.get_or_insert_with(HashMap::new).insert(n, coeffs.clone());
    coeffs
}

/// The cyclotomic polynomial `Φ_n` in the variable `z`.
pub fn cyclotomic_polynomial(n: u32) -> UniPoly {
    UniPoly::new('z', phi_coeffs(n).iter().map(|&c| int(c)).collect())
}

/// An element of `Q(ζ_N)`, stored as coefficients of `1, ζ, …, ζ^{φ(N)-1}`.
///
/// The representation is canonical, so derived equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CyclotomicNumber {
    level: u32,
    coeffs: Vec<Rational>,
}

impl CyclotomicNumber {
    fn check_level(level: u32) {
        assert!(level >= 1, "cyclotomic level must be positive");
    }

    pub fn zero(level: u32) -> Self {
        Self::check_level(level);
        CyclotomicNumber { level, coeffs: vec![Rational::zero(); euler_phi(level)] }
    }

    pub fn from_rational(level: u32, r: Rational) -> Self {
        let mut out = Self::zero(level);
        out.coeffs[0] = r;
        out
    }

    pub fn from_int(level: u32, n: i64) -> Self {
        Self::from_rational(level, int(n))
    }

    /// `ζ_N^k` for any integer `k`.
    pub fn zeta_pow(level: u32, k: i64) -> Self {
        let e = k.rem_euclid(level as i64) as usize;
        let mut raw = vec![Rational::zero(); e + 1];
        raw[e] = Rational::one();
        Self::reduce(level, raw)
    }

    pub fn zeta(level: u32) -> Self {
        Self::zeta_pow(level, 1)
    }

    /// Reduces an arbitrary polynomial in `ζ` modulo `Φ_N`.
    pub fn from_poly_coeffs(level: u32, raw: Vec<Rational>) -> Self {
        Self::check_level(level);
        Self::reduce(level, raw)
    }

    fn reduce(level: u32, mut raw: Vec<Rational>) -> Self {
        let phi = phi_coeffs(level);
        let d = phi.len() - 1;
        for top in (d..raw.len()).rev() {
            let c = std::mem::take(&mut raw[top]);
            if c.is_zero() {
                continue;
            }
            for (i, &p) in phi[..d].iter().enumerate() {
                if p != 0 {
                    raw[top - d + i] -= &c * BigInt::from(p);
                }
            }
        }
        raw.resize(d, Rational::zero());
        CyclotomicNumber { level, coeffs: raw }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational value, when the number lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| self.coeffs[0].clone())
    }

    fn same_level(&self, other: &Self) -> Result<()> {
        if self.level == other.level {
            Ok(())
        } else {
            Err(Error::LevelMismatch(self.level, other.level))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_level(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CyclotomicNumber { level: self.level, coeffs })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_level(other)?;
        let d = self.coeffs.len();
        if d == 1 {
            return Ok(Self::from_rational(self.level, &self.coeffs[0] * &other.coeffs[0]));
        }
        let mut raw = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        Ok(Self::reduce(self.level, raw))
    }

    pub fn negate(&self) -> Self {
        CyclotomicNumber { level: self.level, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale_by(&self, r: &Rational) -> Self {
        CyclotomicNumber { level: self.level, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    pub fn try_inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::CyclotomicDivisionByZero(self.level));
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(self.level, r.recip()));
        }
        let a = UniPoly::new('z', self.coeffs.clone());
        let (g, s, _) = a.ext_gcd(&cyclotomic_polynomial(self.level))?;
        debug_assert!(g.degree() == Some(0), "Φ_N is irreducible");
        Ok(Self::reduce(self.level, s.coeffs().to_vec()))
    }

    /// Image under the automorphism `ζ ↦ ζ^{-1}` (complex conjugation).
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Image under `ζ ↦ ζ^a`, `a` coprime to the level.
    pub fn galois(&self, a: i64) -> Self {
        let n = self.level as i64;
        let mut raw = vec![Rational::zero(); n as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            raw[(a * i as i64).rem_euclid(n) as usize] += c;
        }
        Self::reduce(self.level, raw)
    }

    /// Polynomial in `z` without the level annotation.
    pub fn render_plain(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let z = match i {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{i}"),
            };
            match (i, mag.is_one()) {
                (0, _) => out.push_str(&mag.to_string()),
                (_, true) => out.push_str(&z),
                (_, false) => out.push_str(&format!("{mag}*{z}")),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    fn is_compound(&self) -> bool {
        self.coeffs.iter().filter(|c| !c.is_zero()).count() > 1
    }

    /// Parses either `"<poly in z> @ Q(zeta_N)"` or a bare polynomial in `z`
    /// at the supplied default level.
    pub fn parse(s: &str, default_level: Option<u32>) -> Result<Self> {
        let (body, level) = match s.split_once('@') {
            Some((body, ann)) => {
                let ann = ann.trim();
                let lvl = ann
                    .strip_prefix("Q(zeta_")
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| Error::Parse(format!("bad level annotation {ann:?}")))?;
                let lvl: u32 = lvl.parse().map_err(|_| Error::Parse(format!("bad level {lvl:?}")))?;
                (body, lvl)
            }
            None => (s, default_level.ok_or_else(|| Error::Parse(format!("missing level in {s:?}")))?),
        };
        if level == 0 {
            return Err(Error::Parse("cyclotomic level must be positive".into()));
        }
        let mut body: String = body.chars().filter(|c| !c.is_whitespace()).collect();
        if body.starts_with('(') && body.ends_with(')') {
            body = body[1..body.len() - 1].to_string();
        }
        if body.is_empty() {
            return Err(Error::Parse("empty cyclotomic number".into()));
        }
        let mut raw: Vec<Rational> = Vec::new();
        let mut start = 0;
        let bytes = body.as_bytes();
        for i in 1..=bytes.len() {
            if i == bytes.len() || bytes[i] == b'+' || bytes[i] == b'-' {
                let (e, c) = parse_term(&body[start..i])?;
                if raw.len() <= e {
                    raw.resize(e + 1, Rational::zero());
                }
                raw[e] += c;
                start = i;
            }
        }
        Ok(Self::reduce(level, raw))
    }
}

fn parse_term(term: &str) -> Result<(usize, Rational)> {
    let (sign, rest) = match term.as_bytes().first() {
        Some(b'+') => (1, &term[1..]),
        Some(b'-') => (-1, &term[1..]),
        _ => (1, term),
    };
    let bad = || Error::Parse(format!("bad cyclotomic term {term:?}"));
    let (coef, zpart) = match rest.find('z') {
        None => (rest, None),
        Some(pos) => {
            let coef = rest[..pos].strip_suffix('*').unwrap_or(&rest[..pos]);
            (coef, Some(&rest[pos + 1..]))
        }
    };
    let coef = if coef.is_empty() {
        if zpart.is_none() {
            return Err(bad());
        }
        Rational::one()
    } else {
        parse_rational(coef).map_err(|_| bad())?
    };
    let e = match zpart {
        None => 0,
        Some("") => 1,
        Some(p) => p.strip_prefix('^').and_then(|x| x.parse().ok()).ok_or_else(bad)?,
    };
    Ok((e, if sign < 0 { -coef } else { coef }))
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_compound() {
            write!(f, "({}) @ Q(zeta_{})", self.render_plain(), self.level)
        } else {
            write!(f, "{} @ Q(zeta_{})", self.render_plain(), self.level)
        }
    }
}

impl Coefficient for CyclotomicNumber {
    type Ctx = u32;

    fn ctx(&self) -> u32 {
        self.level
    }
    fn zero_in(level: &u32) -> Self {
        CyclotomicNumber::zero(*level)
    }
    fn one_in(level: &u32) -> Self {
        CyclotomicNumber::from_int(*level, 1)
    }
    fn from_rational(level: &u32, r: &Rational) -> Self {
        CyclotomicNumber::from_rational(*level, r.clone())
    }
    fn vanishes(&self) -> bool {
        CyclotomicNumber::is_zero(self)
    }
    fn add(&self, other: &Self) -> Result<Self> {
        self.try_add(other)
    }
    fn mul(&self, other: &Self) -> Result<Self> {
        self.try_mul(other)
    }
    fn neg(&self) -> Self {
        self.negate()
    }
    fn scale(&self, r: &Rational) -> Self {
        self.scale_by(r)
    }
    fn inverse(&self) -> Result<Self> {
        self.try_inverse()
    }
    fn render(&self) -> String {
        if self.is_compound() {
            format!("({})", self.render_plain())
        } else {
            self.render_plain()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn cy(level: u32, c: &[i64]) -> CyclotomicNumber {
        CyclotomicNumber::from_poly_coeffs(level, c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn totient_and_cyclotomic_polynomials() {
        assert_eq!((1..=12).map(euler_phi).collect::<Vec<_>>(), [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]);
        assert_eq!(cyclotomic_polynomial(4), UniPoly::from_ints('z', &[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), UniPoly::from_ints('z', &[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), UniPoly::from_ints('z', &[1, 0, -1, 0, 1]));
    }

    #[test]
    fn products() {
        let z3 = CyclotomicNumber::zeta(3);
        assert_eq!(z3.try_mul(&CyclotomicNumber::zeta_pow(3, 2)).unwrap(), cy(3, &[1]));
        let z4 = CyclotomicNumber::zeta(4);
        assert_eq!(z4.try_mul(&z4).unwrap(), cy(4, &[-1]));
        // Hand expansion: (1+z)(1+z^4) = 1 + z + z^4 + z^5 and z^5 = 1.
        let a = cy(5, &[1, 1]);
        let b = CyclotomicNumber::zeta_pow(5, 4).try_add(&cy(5, &[1])).unwrap();
        let expected = cy(5, &[2, 1]).try_add(&CyclotomicNumber::zeta_pow(5, 4)).unwrap();
        assert_eq!(a.try_mul(&b).unwrap(), expected);
        assert_eq!(
            CyclotomicNumber::zeta(3).try_mul(&CyclotomicNumber::zeta(4)),
            Err(Error::LevelMismatch(3, 4))
        );
    }

    #[test]
    fn inverses() {
        assert_eq!(cy(7, &[2]).try_inverse().unwrap(), CyclotomicNumber::from_rational(7, rat(1, 2)));
        let one_minus = |n| cy(n, &[1]).try_add(&CyclotomicNumber::zeta(n).negate()).unwrap();
        assert_eq!(one_minus(2).try_inverse().unwrap(), CyclotomicNumber::from_rational(2, rat(1, 2)));
        // (1 - z)(2 + z) = 2 - z - z^2 = 3 in Q(ζ_3).
        let inv = one_minus(3).try_inverse().unwrap();
        assert_eq!(inv, cy(3, &[2, 1]).scale_by(&rat(1, 3)));
        assert_eq!(one_minus(3).try_mul(&cy(3, &[2, 1])).unwrap(), cy(3, &[3]));
        assert_eq!(CyclotomicNumber::zero(5).try_inverse(), Err(Error::CyclotomicDivisionByZero(5)));
    }

    #[test]
    fn roots_of_unity_relations() {
        for n in 1..=12 {
            let z = CyclotomicNumber::zeta(n);
            assert_eq!(z.pow(n).unwrap(), cy(n, &[1]));
            let phi = cyclotomic_polynomial(n);
            let mut acc = CyclotomicNumber::zero(n);
            for (i, c) in phi.coeffs().iter().enumerate() {
                acc = acc.try_add(&z.pow(i as u32).unwrap().scale_by(c)).unwrap();
            }
            assert!(acc.is_zero(), "Φ_{n}(ζ) != 0");
        }
    }

    #[test]
    fn conjugation() {
        let z = CyclotomicNumber::zeta(5);
        assert_eq!(z.conj(), CyclotomicNumber::zeta_pow(5, 4));
        assert_eq!(z.conj().try_mul(&z).unwrap(), cy(5, &[1]));
    }

    #[test]
    fn display_and_parse() {
        let x = cy(3, &[1, 1]).scale_by(&rat(1, 2));
        assert_eq!(x.to_string(), "(1/2 + 1/2*z) @ Q(zeta_3)");
        assert_eq!(CyclotomicNumber::parse(&x.to_string(), None).unwrap(), x);
        assert_eq!(cy(4, &[0, -1]).render(), "-z");
        assert_eq!(cy(5, &[-3, 0, 2, -1]).render(), "(-3 + 2*z^2 - z^3)");
        for s in ["-z", "-3 + 2*z^2 - z^3", "7/2", "0"] {
            let v = CyclotomicNumber::parse(s, Some(5)).unwrap();
            assert_eq!(v.render_plain(), s);
        }
        assert!(CyclotomicNumber::parse("1 + w", Some(3)).is_err());
        assert!(CyclotomicNumber::parse("1 + z", None).is_err());
    }
}
