use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::FixedPointData;
use crate::arith::{factorial, int, Rational, SeriesCtx, TruncSeries, UniPoly};
use crate::error::{Error, Result};

/// `Σ c·t^a` with rational exponents `a`, as `(a, c)` pairs.
pub type LaurentNumerator = Vec<(Rational, Rational)>;

type SSeries = TruncSeries<Rational>;

/// `(1 - e^{-cs}) / (cs) = Σ_i (-c)^i s^i / (i+1)!`.
fn unit_factor(ctx: &SeriesCtx<Rational>, c: &Rational) -> SSeries {
    let mut power = Rational::one();
    let mut terms = Vec::new();
    for i in 0..ctx.order.max(0) {
        terms.push((i, &power / Rational::from_integer(factorial(i as u64 + 1))));
        power *= -c;
    }
    SSeries::from_coeffs(ctx.clone(), terms)
}

/// Value at `t = 1` of `Σ_P N_P(t) / Π_j (1 - t^{-w_j(P)})`.
///
/// Exponents are cleared to integers with `t = u^D`, then `u = e^s`. Each
/// denominator factor is `cs` times a unit, so every point contributes
/// `s^{-n}` times a power series. The negative powers must cancel across
/// points; the `s^0` coefficient is the answer.
pub fn equivariant_index_limit(fpd: &FixedPointData, numerators: &[LaurentNumerator]) -> Result<Rational> {
    fpd.validate()?;
    if numerators.len() != fpd.num_points() {
        return Err(Error::LengthMismatch { expected: fpd.num_points(), got: numerators.len() });
    }
    let d = numerators
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, (a, _)| acc.lcm(a.denom()));
    let d = Rational::from_integer(d);
    let n = fpd.n as i64;
    // One guard term past s^n. Arithmetic is exact, so the guard never moves
    // the answer and no retry at a larger order is needed.
    let ctx = SeriesCtx::<Rational>::new("s", n + 2, ());
    let mut total = vec![Rational::zero(); fpd.n + 1];
    for (p, num) in fpd.points.iter().zip(numerators) {
        let mut series = SSeries::zero(ctx.clone());
        for (a, c) in num {
            series = series.try_add(&SSeries::exp_linear(ctx.clone(), &(a * &d)).scale_by(c))?;
        }
        let mut scale = Rational::one();
        for &w in &p.weights {
            let c = int(w) * &d;
            series = series.try_mul(&unit_factor(&ctx, &c).try_inverse()?)?;
            scale *= c;
        }
        let series = series.scale_by(&scale.recip());
        for (j, slot) in total.iter_mut().enumerate() {
            *slot += series.coeff(j as i64);
        }
    }
    if let Some(j) = total[..fpd.n].iter().position(|c| !c.is_zero()) {
        return Err(Error::PoleAtOne { exponent: j as i64 - n, coefficient: total[j].to_string() });
    }
    Ok(total.pop().expect("n + 1 slots"))
}

/// `Σ_{|S| = m} t^{-kW(P)/N - Σ_{j∈S} w_j}` at every point, where `W(P)` is
/// the weight sum: the numerators of `ind(Λ^m T^* ⊗ L^k)` for `L^N = K^{-1}`.
pub fn hilbert_numerators(fpd: &FixedPointData, level: u32, m: usize, k: i64) -> Vec<LaurentNumerator> {
    fpd.points
        .iter()
        .map(|p| {
            let shift = -Rational::new(BigInt::from(k * p.weights.iter().sum::<i64>()), BigInt::from(level));
            let mut out: LaurentNumerator = Vec::new();
            let n = p.weights.len();
            for mask in 0u64..(1 << n) {
                if mask.count_ones() as usize != m {
                    continue;
                }
                let s: i64 = (0..n).filter(|j| mask >> j & 1 == 1).map(|j| p.weights[j]).sum();
                out.push((&shift - int(s), Rational::one()));
            }
            out
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertData {
    pub n: usize,
    pub m: usize,
    pub level: u32,
    /// `H_m(x)`, of degree at most `n`.
    pub polynomial: UniPoly,
}

/// Interpolates `H_m(k) = ind(Λ^m T^* ⊗ L^k)` through `k = 1 … n+1` and
/// confirms the interpolant at `k = n+2`.
pub fn hilbert_polynomial(fpd: &FixedPointData, level: u32, m: usize) -> Result<HilbertData> {
    fpd.validate()?;
    if level == 0 {
        return Err(Error::InvalidArgument("N must be at least 1".into()));
    }
    if m > fpd.n {
        return Err(Error::InvalidArgument(format!("m = {m} exceeds n = {}", fpd.n)));
    }
    let value = |k: i64| equivariant_index_limit(fpd, &hilbert_numerators(fpd, level, m, k));
    let nodes = (1..=fpd.n as i64 + 1)
        .map(|k| Ok((int(k), value(k)?)))
        .collect::<Result<Vec<_>>>()?;
    let polynomial = UniPoly::interpolate('x', &nodes);
    let check = fpd.n as i64 + 2;
    let (predicted, actual) = (polynomial.eval(&int(check)), value(check)?);
    if predicted != actual {
        return Err(Error::NotPolynomial { node: check, predicted: predicted.to_string(), actual: actual.to_string() });
    }
    Ok(HilbertData { n: fpd.n, m, level, polynomial })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localization::cpn_fixed_points;

    fn closed_form(n: usize, m: usize) -> UniPoly {
        let mut roots: Vec<Rational> = (1..=(n - m) as i64).map(int).collect();
        roots.extend((1..=m as i64).map(|i| int(-i)));
        let sign = if n.is_multiple_of(2) { 1 } else { -1 };
        let c = Rational::new(BigInt::from(sign), factorial(m as u64) * factorial((n - m) as u64));
        UniPoly::from_roots('x', &roots).scale_by(&c)
    }

    #[test]
    fn euler_characteristic_from_trivial_numerators() {
        let cp2 = cpn_fixed_points(2, &[1, 2]).unwrap();
        // Numerator Π(1 - t^{-w}) gives 1 per point.
        let nums: Vec<LaurentNumerator> = cp2
            .points
            .iter()
            .map(|p| {
                let mut poly: LaurentNumerator = vec![(int(0), int(1))];
                for &w in &p.weights {
                    let mut next = Vec::new();
                    for (a, c) in &poly {
                        next.push((a.clone(), c.clone()));
                        next.push((a - int(w), -c.clone()));
                    }
                    poly = next;
                }
                poly
            })
            .collect();
        assert_eq!(equivariant_index_limit(&cp2, &nums).unwrap(), int(3));
    }

    #[test]
    fn todd_genus_and_poles() {
        let cp2 = cpn_fixed_points(2, &[1, 2]).unwrap();
        let ones = vec![vec![(int(0), int(1))]; 3];
        assert_eq!(equivariant_index_limit(&cp2, &ones).unwrap(), int(1));
        let lone = FixedPointData::from_weights(1, vec![vec![1]]).unwrap();
        assert!(matches!(
            equivariant_index_limit(&lone, &[vec![(int(0), int(1))]]),
            Err(Error::PoleAtOne { exponent: -1, .. })
        ));
    }

    #[test]
    fn projective_space_hilbert_polynomials() {
        for (n, w) in [(1usize, vec![3i64]), (2, vec![1, 2]), (3, vec![1, 3, 7])] {
            let fpd = cpn_fixed_points(n, &w).unwrap();
            for m in 0..=n {
                let h = hilbert_polynomial(&fpd, n as u32 + 1, m).unwrap();
                assert_eq!(h.polynomial, closed_form(n, m), "n = {n}, m = {m}");
            }
        }
    }
}
