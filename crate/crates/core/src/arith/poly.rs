use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::{Coefficient, Rational};
use crate::error::{Error, Result};

/// Exponent vector, ordered graded-lexicographically with `x1 > x2 > …`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    fn mul(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    fn div(&self, other: &Self) -> Option<Self> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial over `Q` in a fixed, named list of variables.
///
/// Binary operations require both operands to share the variable list and
/// panic otherwise; mixing variable sets is a programming error.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SparsePoly {
    vars: Arc<Vec<String>>,
    terms: BTreeMap<Monomial, Rational>,
}

impl SparsePoly {
    pub fn zero(vars: Arc<Vec<String>>) -> Self {
        SparsePoly { vars, terms: BTreeMap::new() }
    }

    /// Variables `prefix1 … prefixN`.
    pub fn indexed_vars(prefix: &str, n: usize) -> Arc<Vec<String>> {
        Arc::new((1..=n).map(|i| format!("{prefix}{i}")).collect())
    }

    pub fn constant(vars: Arc<Vec<String>>, c: Rational) -> Self {
        let n = vars.len();
        Self::from_terms(vars, [(Monomial::one(n), c)])
    }

    pub fn var(vars: Arc<Vec<String>>, i: usize) -> Self {
        let n = vars.len();
        assert!(i < n, "variable index {i} out of range");
        Self::from_terms(vars, [(Monomial::var(n, i), Rational::one())])
    }

    pub fn from_terms(vars: Arc<Vec<String>>, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Linear form `Σ c_i x_i`.
    pub fn linear(vars: Arc<Vec<String>>, coeffs: &[i64]) -> Self {
        let n = vars.len();
        assert_eq!(coeffs.len(), n, "linear form length");
        let terms: Vec<_> = coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (Monomial::var(n, i), super::int(c)))
            .collect();
        Self::from_terms(vars, terms)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        assert_eq!(m.0.len(), self.vars.len(), "monomial arity");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &Arc<Vec<String>> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Leading term under graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.leading().map(|(m, _)| m.degree())
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.nvars()))
    }

    /// The value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.degree() {
            None => Some(Rational::zero()),
            Some(0) => Some(self.constant_term()),
            Some(_) => None,
        }
    }

    fn check_vars(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars,
            "polynomials over different variables: {:?} vs {:?}",
            self.vars,
            other.vars
        );
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero(self.vars.clone());
        }
        SparsePoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * r)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(self.vars.clone(), Rational::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, values: &[Rational]) -> Rational {
        assert_eq!(values.len(), self.nvars(), "evaluation point arity");
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in values.iter().zip(&m.0) {
                for _ in 0..e {
                    t *= v;
                }
            }
            acc += t;
        }
        acc
    }

    /// Evaluates in any coefficient domain; powers of each value are cached.
    pub fn eval_in<C: Coefficient>(&self, values: &[C], ctx: &C::Ctx) -> Result<C> {
        if values.len() != self.nvars() {
            return Err(Error::LengthMismatch { expected: self.nvars(), got: values.len() });
        }
        let mut powers: Vec<Vec<C>> = values.iter().map(|_| vec![C::one_in(ctx)]).collect();
        let mut acc = C::zero_in(ctx);
        for (m, c) in &self.terms {
            let mut t = C::from_rational(ctx, c);
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = Coefficient::mul(powers[i].last().expect("nonempty"), &values[i])?;
                    powers[i].push(next);
                }
                t = Coefficient::mul(&t, &powers[i][e as usize])?;
            }
            acc = Coefficient::add(&acc, &t)?;
        }
        Ok(acc)
    }

    /// Substitutes polynomials (over a common variable list) for each variable.
    pub fn substitute(&self, images: &[SparsePoly]) -> Self {
        assert_eq!(images.len(), self.nvars(), "substitution arity");
        let target = images
            .first()
            .map(|p| p.vars.clone())
            .unwrap_or_else(|| Arc::new(Vec::new()));
        let mut powers: Vec<Vec<SparsePoly>> =
            images.iter().map(|_| vec![Self::constant(target.clone(), Rational::one())]).collect();
        let mut acc = Self::zero(target.clone());
        for (m, c) in &self.terms {
            let mut t = Self::constant(target.clone(), c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().expect("nonempty") * &images[i];
                    powers[i].push(next);
                }
                if e > 0 {
                    t = &t * &powers[i][e as usize];
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Applies `x_i ↦ sign_i · x_{perm_i}`.
    pub fn signed_permute(&self, perm: &[usize], signs: &[i8]) -> Self {
        let n = self.nvars();
        assert!(perm.len() == n && signs.len() == n, "signed permutation arity");
        let mut out = Self::zero(self.vars.clone());
        for (m, c) in &self.terms {
            let mut e = vec![0; n];
            let mut negate = false;
            for (i, &k) in m.0.iter().enumerate() {
                e[perm[i]] += k;
                if signs[i] < 0 && k % 2 == 1 {
                    negate = !negate;
                }
            }
            out.add_term(Monomial(e), if negate { -c.clone() } else { c.clone() });
        }
        out
    }

    /// Exact quotient `self / divisor`; fails if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        self.check_vars(divisor);
        let (lm, lc) = divisor.leading().ok_or(Error::DivisionByZero)?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = Self::zero(self.vars.clone());
        while let Some((m, c)) = rem.leading() {
            let Some(qm) = m.div(&lm) else {
                return Err(Error::InexactDivision(format!("{self} by {divisor}")));
            };
            let qc = c / &lc;
            let step = Self::from_terms(self.vars.clone(), [(qm, qc)]);
            rem = &rem - &(&step * divisor);
            quot = &quot + &step;
        }
        Ok(quot)
    }
}

impl Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        self.scale(&-Rational::one())
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        self.check_vars(rhs);
        let mut out = SparsePoly::zero(self.vars.clone());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let factors: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { self.vars[i].clone() } else { format!("{}^{e}", self.vars[i]) })
                .collect();
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}
