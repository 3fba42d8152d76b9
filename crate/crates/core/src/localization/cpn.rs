use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;

use super::{FixedPoint, FixedPointData};
use crate::arith::{binomial, Rational, UniPoly};
use crate::error::{Error, Result};
use crate::modular::{eisenstein, q_ctx, QSeries};

/// Fixed points of `CP^n` under `λ·[z_0 : … : z_n] = [z_0 : λ^{w_1} z_1 : … : λ^{w_n} z_n]`.
///
/// `P_0` carries the weights themselves; `P_j` carries `-w_j` followed by
/// `w_k - w_j` for `k ≠ j`.
pub fn cpn_fixed_points(n: usize, weights: &[i64]) -> Result<FixedPointData> {
    if n == 0 || weights.len() != n {
        return Err(Error::InvalidCpnWeights(format!("need {n} weights, got {}", weights.len())));
    }
    if weights.contains(&0) {
        return Err(Error::InvalidCpnWeights("weights must be nonzero".into()));
    }
    if weights.iter().collect::<BTreeSet<_>>().len() != n {
        return Err(Error::InvalidCpnWeights("weights must be pairwise distinct".into()));
    }
    let mut points = vec![FixedPoint { label: Some("P0".into()), weights: weights.to_vec() }];
    for (j, &wj) in weights.iter().enumerate() {
        let mut w = vec![-wj];
        w.extend(weights.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &wk)| wk - wj));
        points.push(FixedPoint { label: Some(format!("P{}", j + 1)), weights: w });
    }
    let fpd = FixedPointData { n, points, asserted_index: Some(n as u32 + 1) };
    fpd.validate()?;
    Ok(fpd)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DivisionOutcome {
    Quotient(UniPoly),
    Remainder(UniPoly),
}

/// Divides `χ_y` by `1 - y + y^2 - … + (-y)^{k_0 - 1}`.
pub fn divides_chi_y(chi: &UniPoly, k0: u32) -> Result<DivisionOutcome> {
    if k0 == 0 {
        return Err(Error::InvalidArgument("index must be positive".into()));
    }
    let divisor = UniPoly::from_ints(chi.variable(), &(0..k0).map(|j| if j % 2 == 0 { 1 } else { -1 }).collect::<Vec<_>>());
    let (q, r) = chi.div_rem(&divisor)?;
    Ok(if r.is_zero() { DivisionOutcome::Quotient(q) } else { DivisionOutcome::Remainder(r) })
}

/// How `G_{0,N}` enters the index sums of the general identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroIndexConvention {
    /// `G_0 = 1`, the constant term of the level-`N` series.
    GZeroIsOne,
    /// Indices `j_i = 0` are left out of the sums.
    OmitZero,
}

impl fmt::Display for ZeroIndexConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ZeroIndexConvention::GZeroIsOne => "G_0 = 1",
            ZeroIndexConvention::OmitZero => "zero indices omitted",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneralRelationReport {
    pub n: usize,
    pub level: u32,
    pub k: u32,
    pub precision: u32,
    /// Conventions tried, in order, with whether the identity held.
    pub attempts: Vec<(ZeroIndexConvention, bool)>,
    /// The convention under which the identity held, if any.
    pub convention: Option<ZeroIndexConvention>,
    pub lhs: QSeries,
    pub rhs: QSeries,
}

impl GeneralRelationReport {
    pub fn holds(&self) -> bool {
        self.convention.is_some()
    }
}

/// `[x^0..=x^k]` of `Q^n` where `Q = Σ_j G_{j,N} x^j`.
fn power_coeffs(n: usize, level: u32, k: u32, precision: u32, conv: ZeroIndexConvention) -> Result<Vec<QSeries>> {
    let ctx = q_ctx(level, precision);
    let mut q = Vec::with_capacity(k as usize + 1);
    q.push(match conv {
        ZeroIndexConvention::GZeroIsOne => QSeries::one(ctx.clone()),
        ZeroIndexConvention::OmitZero => QSeries::zero(ctx.clone()),
    });
    for j in 1..=k {
        q.push((*eisenstein(j, level as i64, precision)?).clone());
    }
    let mut acc: Vec<QSeries> = (0..=k).map(|i| if i == 0 { QSeries::one(ctx.clone()) } else { QSeries::zero(ctx.clone()) }).collect();
    for _ in 0..n {
        let mut next: Vec<QSeries> = vec![QSeries::zero(ctx.clone()); k as usize + 1];
        for (i, a) in acc.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in q.iter().enumerate().take(k as usize + 1 - i) {
                if !b.is_zero() {
                    next[i + j] = next[i + j].try_add(&a.try_mul(b)?)?;
                }
            }
        }
        acc = next;
    }
    Ok(acc)
}

fn sides(n: usize, level: u32, k: u32, precision: u32, conv: ZeroIndexConvention) -> Result<(QSeries, QSeries)> {
    let pc = power_coeffs(n, level, k, precision, conv)?;
    let sign = if (n as u32 + k + 1).is_multiple_of(2) { 1 } else { -1 };
    let lhs = pc[k as usize].scale_by(&Rational::from_integer(sign.into()));
    let mut rhs = QSeries::zero(q_ctx(level, precision));
    for l in 0..n as i64 {
        let c = binomial(k as i64 - l - 1, n as i64 - l - 1);
        if c.is_zero() || pc[l as usize].is_zero() {
            continue;
        }
        let g = eisenstein(k - l as u32, level as i64, precision)?;
        rhs = rhs.try_add(&g.try_mul(&pc[l as usize])?.scale_by(&Rational::from_integer(c)))?;
    }
    Ok((lhs, rhs))
}

/// Checks the closed-form identity among level-`N` Eisenstein series that the
/// vanishing genus of `CP^n` produces in weight `k`.
///
/// `G_0 = 1` is tried first; if it fails, the identity is retried with
/// zero indices omitted. The report records which one held.
pub fn general_relation_cpn(n: usize, level: u32, k: u32, precision: u32) -> Result<GeneralRelationReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if level < 2 || !(n as u32 + 1).is_multiple_of(level) {
        return Err(Error::InvalidArgument(format!("N = {level} must be at least 2 and divide n + 1 = {}", n + 1)));
    }
    if (k as usize) < n {
        return Err(Error::BelowLocalizationDegree { k: k as usize, n });
    }
    let mut attempts = Vec::new();
    let mut last = None;
    for conv in [ZeroIndexConvention::GZeroIsOne, ZeroIndexConvention::OmitZero] {
        let (lhs, rhs) = sides(n, level, k, precision, conv)?;
        let ok = lhs.try_sub(&rhs)?.is_zero();
        attempts.push((conv, ok));
        if ok {
            return Ok(GeneralRelationReport { n, level, k, precision, attempts, convention: Some(conv), lhs, rhs });
        }
        last = Some((lhs, rhs));
    }
    let (lhs, rhs) = last.expect("two conventions tried");
    Ok(GeneralRelationReport { n, level, k, precision, attempts, convention: None, lhs, rhs })
}
