use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::One;

use super::{factorial, Coefficient, Rational};
use crate::error::{Error, Result};

/// Shape of a truncated series: variable, exponent denominator, truncation
/// order, Laurent flag and the context of the coefficient domain.
///
/// Exponents and the order are integers counted in units of `var^{1/den}`.
#[derive(Clone, PartialEq, Debug)]
pub struct SeriesCtx<C: Coefficient> {
    pub var: Arc<str>,
    pub den: u32,
    pub order: i64,
    pub laurent: bool,
    pub inner: C::Ctx,
}

impl<C: Coefficient> SeriesCtx<C> {
    /// Power series in `var` with integer exponents, known below `var^order`.
    pub fn new(var: &str, order: i64, inner: C::Ctx) -> Self {
        SeriesCtx { var: Arc::from(var), den: 1, order, laurent: false, inner }
    }

    pub fn laurent(mut self) -> Self {
        self.laurent = true;
        self
    }

    pub fn with_den(mut self, den: u32) -> Self {
        assert!(den >= 1, "exponent denominator must be positive");
        self.order *= den as i64;
        self.den = den;
        self
    }

    pub fn with_order(mut self, order: i64) -> Self {
        self.order = order;
        self
    }
}

/// A formal series `Σ c_e var^{e/den} + O(var^{order/den})`.
#[derive(Clone, PartialEq, Debug)]
pub struct TruncSeries<C: Coefficient> {
    ctx: SeriesCtx<C>,
    coeffs: BTreeMap<i64, C>,
}

impl<C: Coefficient> TruncSeries<C> {
    pub fn zero(ctx: SeriesCtx<C>) -> Self {
        TruncSeries { ctx, coeffs: BTreeMap::new() }
    }

    pub fn one(ctx: SeriesCtx<C>) -> Self {
        let c = C::one_in(&ctx.inner);
        Self::monomial(ctx, 0, c)
    }

    pub fn constant(ctx: SeriesCtx<C>, c: C) -> Self {
        Self::monomial(ctx, 0, c)
    }

    /// `c · var^{e/den}`, dropped if `e` is at or beyond the order.
    pub fn monomial(ctx: SeriesCtx<C>, e: i64, c: C) -> Self {
        Self::from_coeffs(ctx, [(e, c)])
    }

    /// Builds a series, discarding zero coefficients and terms past the order.
    ///
    /// # Panics
    /// On a negative exponent in a series not flagged Laurent.
    pub fn from_coeffs(ctx: SeriesCtx<C>, coeffs: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut s = Self::zero(ctx);
        for (e, c) in coeffs {
            s.add_at(e, c).expect("coefficients share the series domain");
        }
        s
    }

    fn add_at(&mut self, e: i64, c: C) -> Result<()> {
        if e >= self.ctx.order || c.vanishes() {
            return Ok(());
        }
        assert!(self.ctx.laurent || e >= 0, "negative exponent {e} in a power series");
        let next = match self.coeffs.remove(&e) {
            Some(old) => old.add(&c)?,
            None => c,
        };
        if !next.vanishes() {
            self.coeffs.insert(e, next);
        }
        Ok(())
    }

    pub fn ctx(&self) -> &SeriesCtx<C> {
        &self.ctx
    }

    pub fn var(&self) -> &str {
        &self.ctx.var
    }

    /// Truncation order in units of `var^{1/den}`.
    pub fn order(&self) -> i64 {
        self.ctx.order
    }

    pub fn is_laurent(&self) -> bool {
        self.ctx.laurent
    }

    pub fn coeff(&self, e: i64) -> C {
        self.coeffs.get(&e).cloned().unwrap_or_else(|| C::zero_in(&self.ctx.inner))
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &C)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Smallest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Lowers the order to `order` (never raises it).
    pub fn truncate(&self, order: i64) -> Self {
        let order = order.min(self.ctx.order);
        let ctx = self.ctx.clone().with_order(order);
        TruncSeries { ctx, coeffs: self.coeffs.range(..order).map(|(e, c)| (*e, c.clone())).collect() }
    }

    /// Same series, flagged Laurent.
    pub fn into_laurent(mut self) -> Self {
        self.ctx.laurent = true;
        self
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        let (a, b) = (&self.ctx, &other.ctx);
        if a.var != b.var || a.den != b.den {
            return Err(Error::SeriesMismatch(format!(
                "{}^(1/{}) vs {}^(1/{})",
                a.var, a.den, b.var, b.den
            )));
        }
        if a.inner != b.inner {
            return Err(Error::SeriesMismatch(format!("coefficient domains {:?} vs {:?}", a.inner, b.inner)));
        }
        Ok(())
    }

    fn joined_ctx(&self, other: &Self, order: i64) -> SeriesCtx<C> {
        let mut ctx = self.ctx.clone().with_order(order);
        ctx.laurent = self.ctx.laurent || other.ctx.laurent;
        ctx
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let order = self.ctx.order.min(other.ctx.order);
        let mut out = self.truncate(order);
        out.ctx = self.joined_ctx(other, order);
        for (e, c) in other.coeffs.range(..order) {
            out.add_at(*e, c.clone())?;
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.negate())
    }

    pub fn negate(&self) -> Self {
        TruncSeries { ctx: self.ctx.clone(), coeffs: self.coeffs.iter().map(|(e, c)| (*e, c.neg())).collect() }
    }

    pub fn scale_by(&self, r: &Rational) -> Self {
        let coeffs = self.coeffs.iter().map(|(e, c)| (*e, c.scale(r))).filter(|(_, c)| !c.vanishes());
        TruncSeries { ctx: self.ctx.clone(), coeffs: coeffs.collect() }
    }

    /// Multiplies every coefficient by a scalar of the coefficient domain.
    pub fn mul_coeff(&self, c: &C) -> Result<Self> {
        let mut out = Self::zero(self.ctx.clone());
        for (e, a) in &self.coeffs {
            out.add_at(*e, a.mul(c)?)?;
        }
        Ok(out)
    }

    /// Product, known up to the weaker of the two inputs' orders: the
    /// minimum of the orders for power series, and for Laurent series the
    /// minimum of `T_a + min(v_b, 0)` and `T_b + min(v_a, 0)`.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let va = self.valuation().unwrap_or(0).min(0);
        let vb = other.valuation().unwrap_or(0).min(0);
        let order = (self.ctx.order + vb).min(other.ctx.order + va);
        let mut out = Self::zero(self.joined_ctx(other, order));
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &other.coeffs {
                if ea + eb >= order {
                    break;
                }
                out.add_at(ea + eb, ca.mul(cb)?)?;
            }
        }
        Ok(out)
    }

    /// Multiplicative inverse. A series of valuation `v` inverts to one of
    /// valuation `-v` known to order `T - 2v`.
    pub fn try_inverse(&self) -> Result<Self> {
        let Some(v) = self.valuation() else {
            return Err(Error::NotInvertible("zero series".into()));
        };
        if v > 0 && !self.ctx.laurent {
            return Err(Error::NotInvertible(format!(
                "leading term at {}^{} in a power series",
                self.ctx.var, v
            )));
        }
        let lead_inv = self.coeffs[&v].inverse()?;
        let rel = self.ctx.order - v;
        // Unit part u = self / var^v, with u_0 = lead; solve u·w = 1 term by term.
        let mut w: Vec<C> = Vec::with_capacity(rel.max(0) as usize);
        for i in 0..rel {
            let mut acc = if i == 0 { C::one_in(&self.ctx.inner) } else { C::zero_in(&self.ctx.inner) };
            for (e, c) in self.coeffs.range(v + 1..v + i + 1) {
                let j = (e - v) as usize;
                acc = acc.sub(&c.mul(&w[i as usize - j])?)?;
            }
            w.push(acc.mul(&lead_inv)?);
        }
        let mut ctx = self.ctx.clone().with_order(self.ctx.order - 2 * v);
        ctx.laurent = self.ctx.laurent || v != 0;
        Ok(Self::from_coeffs(ctx, w.into_iter().enumerate().map(|(i, c)| (i as i64 - v, c))))
    }

    /// Multiplication by `var^{k/den}`; the order moves with the terms.
    pub fn shift(&self, k: i64) -> Self {
        let mut ctx = self.ctx.clone().with_order(self.ctx.order + k);
        if self.valuation().is_some_and(|v| v + k < 0) || ctx.order < 0 {
            ctx.laurent = true;
        }
        TruncSeries { ctx, coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::one(self.ctx.clone());
        for _ in 0..e {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    /// `exp(a · var) = Σ a^j var^j / j!` to the context's order.
    pub fn exp_linear(ctx: SeriesCtx<C>, a: &Rational) -> Self {
        assert_eq!(ctx.den, 1, "exp_linear needs integer exponents");
        let mut power = Rational::one();
        let mut terms = Vec::new();
        for j in 0..ctx.order.max(0) {
            let c = &power / Rational::from_integer(factorial(j as u64));
            terms.push((j, C::from_rational(&ctx.inner, &c)));
            power *= a;
        }
        Self::from_coeffs(ctx, terms)
    }

    /// Applies `f` to every coefficient, landing in another domain.
    pub fn map_coeffs<D: Coefficient>(&self, inner: D::Ctx, f: impl Fn(&C) -> Result<D>) -> Result<TruncSeries<D>> {
        let ctx = SeriesCtx {
            var: self.ctx.var.clone(),
            den: self.ctx.den,
            order: self.ctx.order,
            laurent: self.ctx.laurent,
            inner,
        };
        let mut out = TruncSeries::zero(ctx);
        for (e, c) in &self.coeffs {
            out.add_at(*e, f(c)?)?;
        }
        Ok(out)
    }

    fn power_label(&self, e: i64) -> String {
        let var = &self.ctx.var;
        let den = self.ctx.den as i64;
        let g = e.gcd(&den);
        let (num, d) = (e / g.max(1), den / g.max(1));
        match (num, d) {
            (0, _) => String::new(),
            (1, 1) => var.to_string(),
            (n, 1) => format!("{var}^{n}"),
            (n, d) => format!("{var}^({n}/{d})"),
        }
    }
}

fn push_term(out: &mut String, coef: String, power: String) {
    let (neg, mag) = match coef.strip_prefix('-') {
        Some(rest) => (true, rest.to_string()),
        None => (false, coef),
    };
    let body = match (power.is_empty(), mag.as_str()) {
        (true, _) => mag,
        (false, "1") => power,
        (false, _) => format!("{mag}*{power}"),
    };
    match (out.is_empty(), neg) {
        (true, true) => out.push('-'),
        (true, false) => {}
        (false, true) => out.push_str(" - "),
        (false, false) => out.push_str(" + "),
    }
    out.push_str(&body);
}

impl<C: Coefficient> fmt::Display for TruncSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (e, c) in &self.coeffs {
            push_term(&mut out, c.render(), self.power_label(*e));
        }
        if out.is_empty() {
            out.push('0');
        }
        let tail = match self.power_label(self.ctx.order) {
            p if p.is_empty() => "1".to_string(),
            p => p,
        };
        write!(f, "{out} + O({tail})")
    }
}

impl<C: Coefficient> Coefficient for TruncSeries<C> {
    type Ctx = SeriesCtx<C>;

    fn ctx(&self) -> SeriesCtx<C> {
        self.ctx.clone()
    }
    fn zero_in(ctx: &SeriesCtx<C>) -> Self {
        TruncSeries::zero(ctx.clone())
    }
    fn one_in(ctx: &SeriesCtx<C>) -> Self {
        TruncSeries::one(ctx.clone())
    }
    fn from_rational(ctx: &SeriesCtx<C>, r: &Rational) -> Self {
        TruncSeries::constant(ctx.clone(), C::from_rational(&ctx.inner, r))
    }
    fn vanishes(&self) -> bool {
        self.coeffs.is_empty()
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
        format!("({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat, CyclotomicNumber};

    type QS = TruncSeries<Rational>;

    fn q(order: i64) -> SeriesCtx<Rational> {
        SeriesCtx::new("q", order, ())
    }

    fn qs(order: i64, c: &[i64]) -> QS {
        QS::from_coeffs(q(order), c.iter().enumerate().map(|(i, &x)| (i as i64, int(x))))
    }

    #[test]
    fn products() {
        assert_eq!(qs(5, &[1, 1]).try_mul(&qs(5, &[1, -1])).unwrap(), qs(5, &[1, 0, -1]));
        let geom = qs(10, &[1; 10]);
        assert_eq!(geom.try_mul(&qs(10, &[1, -1])).unwrap(), qs(10, &[1]));
        let lq = q(3).laurent();
        let a = QS::monomial(lq.clone(), -1, int(1));
        let b = QS::monomial(lq.clone(), 1, int(1));
        let p = a.try_mul(&b).unwrap();
        assert_eq!(p.coeff(0), int(1));
        assert_eq!(p.iter().count(), 1);
        // Laurent product cannot be trusted beyond T + v.
        assert_eq!(p.order(), 2);
    }

    #[test]
    fn order_is_minimum() {
        let p = qs(4, &[1, 2]).try_mul(&qs(7, &[3])).unwrap();
        assert_eq!(p.order(), 4);
        assert_eq!(qs(4, &[1]).try_add(&qs(9, &[0, 0, 0, 0, 0, 5])).unwrap(), qs(4, &[1]));
    }

    #[test]
    fn inverses() {
        assert_eq!(qs(4, &[1, -1]).try_inverse().unwrap(), qs(4, &[1, 1, 1, 1]));
        assert_eq!(qs(4, &[2]).try_inverse().unwrap(), QS::constant(q(4), rat(1, 2)));
        assert!(matches!(qs(4, &[0, 1]).try_inverse(), Err(Error::NotInvertible(_))));
        assert!(matches!(QS::zero(q(4)).try_inverse(), Err(Error::NotInvertible(_))));
        let ctx = SeriesCtx::new("q", 3, 3u32);
        let z = CyclotomicNumber::zeta(3);
        let f = TruncSeries::from_coeffs(ctx.clone(), [(0, CyclotomicNumber::from_int(3, 1)), (1, z.negate())]);
        let expected = TruncSeries::from_coeffs(
            ctx,
            [(0, CyclotomicNumber::from_int(3, 1)), (1, z.clone()), (2, z.try_mul(&z).unwrap())],
        );
        assert_eq!(f.try_inverse().unwrap(), expected);
    }

    #[test]
    fn laurent_inverse_and_shift() {
        let ctx = SeriesCtx::new("s", 6, ()).laurent();
        // s - s^2/2 ... = 1 - e^{-s}
        let e = QS::exp_linear(ctx.clone(), &int(-1));
        let f = QS::one(ctx).try_sub(&e).unwrap();
        let inv = f.try_inverse().unwrap();
        assert_eq!(inv.valuation(), Some(-1));
        assert_eq!(inv.order(), 4);
        // s/(1 - e^{-s}) = 1 + s/2 + s^2/12 + O(s^4)
        let back = inv.shift(1);
        assert_eq!(back.coeff(0), int(1));
        assert_eq!(back.coeff(1), rat(1, 2));
        assert_eq!(back.coeff(2), rat(1, 12));
        assert_eq!(back.coeff(3), int(0));
    }

    #[test]
    fn rendering() {
        let s = QS::from_coeffs(q(6), [(0, rat(1, 12)), (1, int(2)), (3, int(-1))]);
        assert_eq!(s.to_string(), "1/12 + 2*q - q^3 + O(q^6)");
        assert_eq!(QS::zero(q(6)).to_string(), "0 + O(q^6)");
        let frac = QS::from_coeffs(q(2).with_den(3), [(1, int(1)), (3, int(-2))]);
        assert_eq!(frac.to_string(), "q^(1/3) - 2*q + O(q^2)");
        let ctx = SeriesCtx::new("q", 2, 3u32);
        let c = TruncSeries::constant(ctx, CyclotomicNumber::zeta(3).negate().try_add(&CyclotomicNumber::from_int(3, 1)).unwrap());
        assert_eq!(c.to_string(), "(1 - z) + O(q^2)");
    }
}
