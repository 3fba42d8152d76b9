//! q-expansions of the Eisenstein series `G_{k,N}` and of the level-N
//! elliptic-genus power series `Q_N(x) = 1 + a_1 x + a_2 x^2 + …`.
//!
//! Eisenstein series come from their Fourier expansion; `Q_N` comes from its
//! infinite-product form. The two are tied together by `a_k = G_{k,N}`,
//! which [`verify_lemma_eisenstein`] checks coefficient by coefficient.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::{
    bernoulli, factorial, int, CyclotomicNumber, Rational, SeriesCtx, TruncSeries,
};
use crate::error::{Error, Result};

/// A q-series with coefficients in `Q(ζ_N)`.
pub type QSeries = TruncSeries<CyclotomicNumber>;
type XSeries = TruncSeries<CyclotomicNumber>;

/// Identifies `G_{k,N}` computed through `q^{precision-1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct EisensteinKey {
    pub k: u32,
    pub level: u32,
    pub precision: u32,
}

impl EisensteinKey {
    pub fn new(k: u32, level: i64, precision: u32) -> Result<Self> {
        if level < 2 {
            return Err(Error::InvalidLevel(level));
        }
        if k == 0 {
            return Err(Error::InvalidArgument("Eisenstein weight must be at least 1".into()));
        }
        if precision == 0 {
            return Err(Error::InvalidArgument("precision must be at least 1".into()));
        }
        Ok(EisensteinKey { k, level: level as u32, precision })
    }
}

/// Context for q-series at level `n` trusted below `q^precision`.
pub fn q_ctx(level: u32, precision: u32) -> SeriesCtx<CyclotomicNumber> {
    SeriesCtx::new("q", precision as i64, level)
}

static EISENSTEIN_MEMO: RwLock<Option<HashMap<EisensteinKey, Arc<QSeries>>>> = RwLock::new(None);

/// `G_{k,N}` from its Fourier expansion. Results are memoized.
pub fn eisenstein_qexp(key: EisensteinKey) -> Arc<QSeries> {
    if let Some(hit) = EISENSTEIN_MEMO
        .read()
        .unwrap_or_else(|e| e.into_inner())
        .as_ref()
        .and_then(|m| m.get(&key))
    {
        return hit.clone();
    }
    let zeta = CyclotomicNumber::zeta(key.level);
    let series = Arc::new(eisenstein_with_root(key.k, key.level, key.precision, &zeta));
    EISENSTEIN_MEMO
        .write()
        .unwrap_or_else(|e| e.into_inner())
        .get_or_insert_with(HashMap::new)
        .insert(key, series.clone());
    series
}

/// Convenience wrapper validating `(k, N, T)`.
pub fn eisenstein(k: u32, level: i64, precision: u32) -> Result<Arc<QSeries>> {
    Ok(eisenstein_qexp(EisensteinKey::new(k, level, precision)?))
}

/// The Fourier-expansion formula evaluated with an arbitrary primitive root
/// `root` of order `level` in place of `ζ_N`.
pub fn eisenstein_with_root(k: u32, level: u32, precision: u32, root: &CyclotomicNumber) -> QSeries {
    let one = CyclotomicNumber::from_int(level, 1);
    let constant = if k == 1 {
        let num = one.try_add(root).expect("same level");
        let den = one.try_add(&root.negate()).expect("same level").scale_by(&int(2));
        num.try_mul(&den.try_inverse().expect("1 - ζ is a unit")).expect("same level")
    } else {
        CyclotomicNumber::from_rational(level, bernoulli(k as usize) / Rational::from_integer(factorial(k as u64)))
    };
    let inv = root.try_inverse().expect("roots of unity are units");
    let mut pos = vec![one.clone()];
    let mut neg = vec![one];
    for d in 1..precision as usize {
        pos.push(pos[d - 1].try_mul(root).expect("same level"));
        neg.push(neg[d - 1].try_mul(&inv).expect("same level"));
    }
    let sign = if k.is_multiple_of(2) { 1 } else { -1 };
    let scale = -Rational::new(BigInt::from(1), factorial(k as u64 - 1));
    let mut terms = vec![(0, constant)];
    for n in 1..precision as usize {
        let mut acc = CyclotomicNumber::zero(level);
        for d in (1..=n).filter(|d| n % d == 0) {
            let pair = neg[d].try_add(&pos[d].scale_by(&int(sign))).expect("same level");
            let weight = Rational::from_integer(BigInt::from(n / d).pow(k - 1));
            acc = acc.try_add(&pair.scale_by(&weight)).expect("same level");
        }
        terms.push((n as i64, acc.scale_by(&scale)));
    }
    QSeries::from_coeffs(q_ctx(level, precision), terms)
}

/// Coefficients `a_0, a_1, …` of `Q_N(x)` as q-series.
#[derive(Clone, Debug, PartialEq)]
pub struct QnExpansion {
    pub level: u32,
    pub x_order: u32,
    pub q_precision: u32,
    pub coeffs: Vec<QSeries>,
}

impl QnExpansion {
    pub fn coeff(&self, j: usize) -> &QSeries {
        &self.coeffs[j]
    }
}

fn x_ctx(level: u32, x_order: u32) -> SeriesCtx<CyclotomicNumber> {
    SeriesCtx::new("x", x_order as i64, level)
}

/// `x(1 - e^{-x}ζ) / ((1 - e^{-x})(1 - ζ))` as an x-series, the `q → 0`
/// limit of `Q_N`. The simple zero of `1 - e^{-x}` is divided out by hand:
/// `1 - e^{-x} = x·u(x)` with `u = Σ (-1)^i x^i/(i+1)!`.
pub fn classical_prefactor(level: u32, x_order: u32) -> Result<XSeries> {
    let ctx = x_ctx(level, x_order);
    let zeta = CyclotomicNumber::zeta(level);
    let u = XSeries::from_coeffs(
        ctx.clone(),
        (0..x_order as i64).map(|i| {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            let c = Rational::new(BigInt::from(sign), factorial(i as u64 + 1));
            (i, CyclotomicNumber::from_rational(level, c))
        }),
    );
    let e_neg = XSeries::exp_linear(ctx.clone(), &int(-1));
    let numer = XSeries::one(ctx.clone()).try_sub(&e_neg.mul_coeff(&zeta)?)?;
    let one_minus_zeta = CyclotomicNumber::from_int(level, 1).try_add(&zeta.negate())?;
    numer.try_mul(&u.try_inverse()?)?.mul_coeff(&one_minus_zeta.try_inverse()?)
}

/// Multiplies a dense q-series (index = q-exponent) by `1 - c·q^r`.
fn mul_factor(v: &mut [XSeries], c: &XSeries, r: usize) -> Result<()> {
    for e in (r..v.len()).rev() {
        let t = v[e - r].try_mul(c)?;
        v[e] = v[e].try_sub(&t)?;
    }
    Ok(())
}

/// Divides a dense q-series by `1 - c·q^r`.
fn div_factor(v: &mut [XSeries], c: &XSeries, r: usize) -> Result<()> {
    for e in r..v.len() {
        let t = v[e - r].try_mul(c)?;
        v[e] = v[e].try_add(&t)?;
    }
    Ok(())
}

/// `Q_N(x)` through `x^{x_order-1}` and `q^{q_precision-1}` from the product
///
/// `x(1-e^{-x}ζ)/((1-e^{-x})(1-ζ)) · Π_r (1-e^{-x}ζq^r)(1-e^{x}ζ^{-1}q^r)(1-q^r)^2
///  / ((1-e^{-x}q^r)(1-e^{x}q^r)(1-ζq^r)(1-ζ^{-1}q^r))`.
pub fn qn_expansion_via_product(level: u32, x_order: u32, q_precision: u32) -> Result<QnExpansion> {
    if level < 2 {
        return Err(Error::InvalidLevel(level as i64));
    }
    if x_order == 0 || q_precision == 0 {
        return Err(Error::InvalidArgument("orders must be positive".into()));
    }
    let ctx = x_ctx(level, x_order);
    let zeta = CyclotomicNumber::zeta(level);
    let zeta_inv = CyclotomicNumber::zeta_pow(level, -1);
    let e_neg = XSeries::exp_linear(ctx.clone(), &int(-1));
    let e_pos = XSeries::exp_linear(ctx.clone(), &int(1));
    let constant = |c: &CyclotomicNumber| XSeries::constant(ctx.clone(), c.clone());
    let one = XSeries::one(ctx.clone());

    let numer = [e_neg.mul_coeff(&zeta)?, e_pos.mul_coeff(&zeta_inv)?, one.clone(), one];
    let denom = [e_neg, e_pos, constant(&zeta), constant(&zeta_inv)];

    let prec = q_precision as usize;
    let mut v: Vec<XSeries> = vec![XSeries::zero(ctx.clone()); prec];
    v[0] = classical_prefactor(level, x_order)?;
    for r in 1..prec {
        for c in &numer {
            mul_factor(&mut v, c, r)?;
        }
        for c in &denom {
            div_factor(&mut v, c, r)?;
        }
    }

    let coeffs = (0..x_order as i64)
        .map(|j| QSeries::from_coeffs(q_ctx(level, q_precision), v.iter().enumerate().map(|(e, s)| (e as i64, s.coeff(j)))))
        .collect();
    Ok(QnExpansion { level, x_order, q_precision, coeffs })
}

/// First disagreement between `a_k` and `G_{k,N}`.
#[derive(Clone, Debug, PartialEq)]
pub struct LemmaMismatch {
    pub k: u32,
    pub exponent: i64,
    pub from_product: CyclotomicNumber,
    pub from_fourier: CyclotomicNumber,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LemmaReport {
    pub level: u32,
    pub k_max: u32,
    pub precision: u32,
    pub mismatch: Option<LemmaMismatch>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Compares `a_k` of the product expansion with `G_{k,N}` for `1 <= k <= k_max`.
pub fn verify_lemma_eisenstein(level: u32, k_max: u32, precision: u32) -> Result<LemmaReport> {
    let qn = qn_expansion_via_product(level, k_max + 1, precision)?;
    let mut mismatch = None;
    'outer: for k in 1..=k_max {
        let g = eisenstein(k, level as i64, precision)?;
        for e in 0..precision as i64 {
            let (a, b) = (qn.coeffs[k as usize].coeff(e), g.coeff(e));
            if a != b {
                mismatch = Some(LemmaMismatch { k, exponent: e, from_product: a, from_fourier: b });
                break 'outer;
            }
        }
    }
    Ok(LemmaReport { level, k_max, precision, mismatch })
}

/// Wire format of a q-series: `{variable, level, precision, coeffs: [[e, "c"], …]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QSeriesJson {
    pub variable: String,
    pub level: u32,
    pub precision: i64,
    pub coeffs: Vec<(i64, String)>,
}

impl QSeriesJson {
    pub fn from_series(s: &QSeries) -> Self {
        QSeriesJson {
            variable: s.var().to_string(),
            level: s.ctx().inner,
            precision: s.order(),
            coeffs: s.iter().map(|(e, c)| (e, c.render_plain())).collect(),
        }
    }

    pub fn to_series(&self) -> Result<QSeries> {
        if self.level == 0 {
            return Err(Error::Parse("level must be positive".into()));
        }
        let ctx = SeriesCtx::new(&self.variable, self.precision, self.level);
        let mut terms = Vec::with_capacity(self.coeffs.len());
        for (e, c) in &self.coeffs {
            if *e < 0 {
                return Err(Error::Parse(format!("negative exponent {e} in a q-series")));
            }
            terms.push((*e, CyclotomicNumber::parse(c, Some(self.level))?));
        }
        Ok(QSeries::from_coeffs(ctx, terms))
    }
}

/// Σ coefficient·Π G_{j,N}, a helper shared by relation checks. `G_0` is 1.
pub fn eisenstein_product(indices: &[u32], level: u32, precision: u32) -> Result<QSeries> {
    let mut acc = QSeries::one(q_ctx(level, precision));
    for &j in indices {
        if j == 0 {
            continue;
        }
        acc = acc.try_mul(&*eisenstein(j, level as i64, precision)?)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn cy(level: u32, r: Rational) -> CyclotomicNumber {
        CyclotomicNumber::from_rational(level, r)
    }

    #[test]
    fn constant_terms() {
        for n in 2..7 {
            assert_eq!(eisenstein(2, n, 4).unwrap().coeff(0), cy(n as u32, rat(1, 12)));
        }
        assert_eq!(eisenstein(1, 2, 4).unwrap().coeff(0), CyclotomicNumber::zero(2));
        assert!(matches!(eisenstein(2, 1, 4), Err(Error::InvalidLevel(1))));
    }

    #[test]
    fn odd_weight_level_two_vanishes() {
        for k in [1, 3, 5, 7] {
            assert!(eisenstein(k, 2, 20).unwrap().is_zero(), "G_{k},2");
        }
    }

    #[test]
    fn weight_four_level_three_first_coefficient() {
        assert_eq!(eisenstein(4, 3, 3).unwrap().coeff(1), cy(3, rat(1, 6)));
    }

    #[test]
    fn conjugation_matches_inverse_root() {
        for level in 2..9u32 {
            let inv = CyclotomicNumber::zeta_pow(level, -1);
            for k in 1..6 {
                let g = eisenstein(k, level as i64, 8).unwrap();
                let conj = g.map_coeffs(level, |c| Ok(c.conj())).unwrap();
                assert_eq!(conj, eisenstein_with_root(k, level, 8, &inv));
                let signed = if k % 2 == 0 { (*g).clone() } else { g.negate() };
                assert_eq!(conj, signed, "k={k} N={level}");
            }
        }
    }

    #[test]
    fn product_expansion_normalized_and_q0_column() {
        let qn = qn_expansion_via_product(3, 4, 5).unwrap();
        assert_eq!(*qn.coeff(0), QSeries::one(q_ctx(3, 5)));
        assert_eq!(qn.coeff(2).coeff(0), cy(3, rat(1, 12)));
        let pre = classical_prefactor(3, 4).unwrap();
        for j in 0..4 {
            assert_eq!(qn.coeff(j).coeff(0), pre.coeff(j as i64));
        }
    }

    #[test]
    fn lemma_small_grid() {
        for (n, k, p) in [(2, 6, 10), (3, 6, 10), (4, 4, 8), (5, 3, 6)] {
            let report = verify_lemma_eisenstein(n, k, p).unwrap();
            assert!(report.passed(), "{report:?}");
        }
    }

    #[test]
    fn json_round_trip() {
        let g = eisenstein(3, 5, 6).unwrap();
        let json = serde_json::to_string(&QSeriesJson::from_series(&g)).unwrap();
        let back: QSeriesJson = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_series().unwrap(), *g);
    }
}
