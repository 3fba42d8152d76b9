use std::fmt;

use num_traits::{One, Zero};

use super::{int, Coefficient, Rational};
use crate::error::{Error, Result};

/// Dense univariate polynomial over `Q`; `coeffs[i]` is the coefficient of `var^i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UniPoly {
    var: char,
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(var: char, coeffs: Vec<Rational>) -> Self {
        let mut p = UniPoly { var, coeffs };
        p.trim();
        p
    }

    pub fn from_ints(var: char, coeffs: &[i64]) -> Self {
        Self::new(var, coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero(var: char) -> Self {
        UniPoly { var, coeffs: Vec::new() }
    }

    pub fn constant(var: char, c: Rational) -> Self {
        Self::new(var, vec![c])
    }

    /// The monomial `var`.
    pub fn var(var: char) -> Self {
        Self::new(var, vec![Rational::zero(), Rational::one()])
    }

    /// `prod (var - r)` over the given roots.
    pub fn from_roots(var: char, roots: &[Rational]) -> Self {
        roots.iter().fold(Self::constant(var, Rational::one()), |acc, r| {
            acc.mul_poly(&Self::new(var, vec![-r.clone(), Rational::one()]))
        })
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn variable(&self) -> char {
        self.var
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add_poly(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(self.var, (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub_poly(&self, other: &Self) -> Self {
        self.add_poly(&other.neg_poly())
    }

    pub fn neg_poly(&self) -> Self {
        UniPoly { var: self.var, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale_by(&self, r: &Rational) -> Self {
        Self::new(self.var, self.coeffs.iter().map(|c| c * r).collect())
    }

    pub fn mul_poly(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.var);
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(self.var, out)
    }

    /// Euclidean division; returns `(quotient, remainder)`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let d = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead = divisor.coeffs[d].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Ok((Self::zero(self.var), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - d];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + d] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quot[i] = c;
        }
        rem.truncate(d);
        Ok((Self::new(self.var, quot), Self::new(self.var, rem)))
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// `p(-var)`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.var,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Unique polynomial of degree `< nodes.len()` through the given points.
    pub fn interpolate(var: char, nodes: &[(Rational, Rational)]) -> Self {
        let mut acc = Self::zero(var);
        for (i, (xi, yi)) in nodes.iter().enumerate() {
            let others: Vec<Rational> =
                nodes.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, (x, _))| x.clone()).collect();
            let basis = Self::from_roots(var, &others);
            let denom = basis.eval(xi);
            acc = acc.add_poly(&basis.scale_by(&(yi / denom)));
        }
        acc
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> Result<(Self, Self, Self)> {
        let var = self.var;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::constant(var, Rational::one()), Self::zero(var));
        let (mut t0, mut t1) = (Self::zero(var), Self::constant(var, Rational::one()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let s2 = s0.sub_poly(&q.mul_poly(&s1));
            let t2 = t0.sub_poly(&q.mul_poly(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let lead = r0.coeffs.last().cloned().ok_or(Error::DivisionByZero)?;
        let inv = lead.recip();
        Ok((r0.scale_by(&inv), s0.scale_by(&inv), t0.scale_by(&inv)))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rational::zero();
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    write!(f, "{}", self.var)?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Coefficient for UniPoly {
    type Ctx = char;

    fn ctx(&self) -> char {
        self.var
    }
    fn zero_in(ctx: &char) -> Self {
        UniPoly::zero(*ctx)
    }
    fn one_in(ctx: &char) -> Self {
        UniPoly::constant(*ctx, Rational::one())
    }
    fn from_rational(ctx: &char, r: &Rational) -> Self {
        UniPoly::constant(*ctx, r.clone())
    }
    fn vanishes(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, other: &Self) -> Result<Self> {
        Ok(self.add_poly(other))
    }
    fn mul(&self, other: &Self) -> Result<Self> {
        Ok(self.mul_poly(other))
    }
    fn neg(&self) -> Self {
        self.neg_poly()
    }
    fn scale(&self, r: &Rational) -> Self {
        self.scale_by(r)
    }
    fn inverse(&self) -> Result<Self> {
        match self.degree() {
            Some(0) => Ok(UniPoly::constant(self.var, self.coeffs[0].recip())),
            None => Err(Error::DivisionByZero),
            Some(_) => Err(Error::NotInvertible(format!("{self} is not a unit in Q[{}]", self.var))),
        }
    }
    fn render(&self) -> String {
        if self.coeffs.iter().filter(|c| !c.is_zero()).count() > 1 {
            format!("({self})")
        } else {
            self.to_string()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn division_and_display() {
        let p = UniPoly::from_ints('y', &[1, 3, 3, 1]);
        let d = UniPoly::from_ints('y', &[1, 1]);
        let (q, r) = p.div_rem(&d).unwrap();
        assert_eq!(q, UniPoly::from_ints('y', &[1, 2, 1]));
        assert!(r.is_zero());
        assert_eq!(UniPoly::from_ints('y', &[1, -1, 1]).to_string(), "1 - y + y^2");
        assert_eq!(UniPoly::new('x', vec![rat(-1, 2), rat(3, 2)]).to_string(), "-1/2 + 3/2*x");
    }

    #[test]
    fn interpolation_recovers_cubic() {
        let p = UniPoly::from_ints('x', &[2, -1, 0, 5]);
        let nodes: Vec<_> = (0..4).map(|k| (int(k), p.eval(&int(k)))).collect();
        assert_eq!(UniPoly::interpolate('x', &nodes), p);
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = UniPoly::from_ints('x', &[1, 1]);
        let b = UniPoly::from_ints('x', &[1, 1, 1]);
        let (g, s, t) = a.ext_gcd(&b).unwrap();
        assert_eq!(g, UniPoly::from_ints('x', &[1]));
        assert_eq!(s.mul_poly(&a).add_poly(&t.mul_poly(&b)), g);
    }

    #[test]
    fn reflect_is_involution() {
        let p = UniPoly::from_ints('x', &[1, 2, 3, 4]);
        assert_eq!(p.reflect(), UniPoly::from_ints('x', &[1, -2, 3, -4]));
        assert_eq!(p.reflect().reflect(), p);
    }
}
