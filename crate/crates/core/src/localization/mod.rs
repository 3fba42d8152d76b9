//! Manifolds with a circle action, modeled by the weights at their isolated
//! fixed points, and everything localization computes from that data.

mod cpn;
mod index;
mod relation;

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{int, Rational, UniPoly};
use crate::error::{Error, Result};
use crate::symfunc::{monomial_sym_eval, partitions_at_most, Partition};

pub use cpn::{cpn_fixed_points, divides_chi_y, general_relation_cpn, DivisionOutcome, GeneralRelationReport, ZeroIndexConvention};
pub use index::{equivariant_index_limit, hilbert_numerators, hilbert_polynomial, HilbertData, LaurentNumerator};
pub use relation::{build_relation, genus_qexp, verify_relation, Relation, RelationCheck, RelationTerm};

/// One isolated fixed point and the weights of the action on its tangent space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPoint {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub weights: Vec<i64>,
}

/// A `2n`-manifold with a circle action, known only through its fixed points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPointData {
    pub n: usize,
    pub points: Vec<FixedPoint>,
    /// Index `k_0` the caller vouches for; it cannot be derived from weights.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub asserted_index: Option<u32>,
}

impl FixedPointData {
    /// Builds and validates unlabeled data.
    pub fn from_weights(n: usize, weights: Vec<Vec<i64>>) -> Result<Self> {
        let fpd = FixedPointData {
            n,
            points: weights.into_iter().map(|weights| FixedPoint { label: None, weights }).collect(),
            asserted_index: None,
        };
        fpd.validate()?;
        Ok(fpd)
    }

    pub fn with_index(mut self, k0: u32) -> Self {
        self.asserted_index = Some(k0);
        self
    }

    /// Checks that there is at least one point, every point has `n` weights
    /// and no weight is zero.
    pub fn validate(&self) -> Result<()> {
        if self.points.is_empty() {
            return Err(Error::NoFixedPoints);
        }
        if self.n == 0 {
            return Err(Error::InvalidArgument("dimension n must be at least 1".into()));
        }
        for (i, p) in self.points.iter().enumerate() {
            if p.weights.len() != self.n {
                return Err(Error::RaggedWeights { point: i, expected: self.n, got: p.weights.len() });
            }
            if let Some(slot) = p.weights.iter().position(|&w| w == 0) {
                return Err(Error::ZeroWeight { point: i, slot });
            }
        }
        Ok(())
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let fpd: FixedPointData = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        fpd.validate()?;
        Ok(fpd)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("fixed-point data serializes")
    }

    /// Fixed points of `M × M'` under the diagonal action: all pairs, with
    /// weights concatenated.
    pub fn product(&self, other: &FixedPointData) -> Result<FixedPointData> {
        self.validate()?;
        other.validate()?;
        let mut points = Vec::with_capacity(self.points.len() * other.points.len());
        for p in &self.points {
            for q in &other.points {
                let label = match (&p.label, &q.label) {
                    (Some(a), Some(b)) => Some(format!("{a}x{b}")),
                    _ => None,
                };
                points.push(FixedPoint { label, weights: [p.weights.clone(), q.weights.clone()].concat() });
            }
        }
        let asserted_index = match (self.asserted_index, other.asserted_index) {
            (Some(a), Some(b)) => Some(num_integer::gcd(a, b)),
            _ => None,
        };
        Ok(FixedPointData { n: self.n + other.n, points, asserted_index })
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    fn weights(&self) -> impl Iterator<Item = &[i64]> {
        self.points.iter().map(|p| p.weights.as_slice())
    }

    /// Fixed points with every weight list sorted, for comparisons up to
    /// reordering within a point and of the points themselves.
    pub fn canonical_weights(&self) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = self
            .weights()
            .map(|w| {
                let mut w = w.to_vec();
                w.sort_unstable();
                w
            })
            .collect();
        out.sort();
        out
    }
}

/// Whether `Σ_j w_j(P) mod N` is the same at every fixed point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ActionType {
    /// The action is `N`-balanced; the common residue is its type.
    Balanced { residue: i64 },
    /// Two points whose weight sums differ mod `N`, as `(point, residue)`.
    Unbalanced { first: (usize, i64), second: (usize, i64) },
}

pub fn action_type(fpd: &FixedPointData, level: u32) -> Result<ActionType> {
    if level == 0 {
        return Err(Error::InvalidArgument("N must be at least 1".into()));
    }
    let m = level as i64;
    let residues: Vec<i64> = fpd.weights().map(|w| w.iter().sum::<i64>().rem_euclid(m)).collect();
    let r0 = *residues.first().ok_or(Error::NoFixedPoints)?;
    match residues.iter().position(|&r| r != r0) {
        None => Ok(ActionType::Balanced { residue: r0 }),
        Some(j) => Ok(ActionType::Unbalanced { first: (0, r0), second: (j, residues[j]) }),
    }
}

/// `e_0 … e_n` of the given integers.
pub(crate) fn elementary_values(w: &[i64]) -> Vec<Rational> {
    let mut e = vec![Rational::zero(); w.len() + 1];
    e[0] = Rational::one();
    for (i, &x) in w.iter().enumerate() {
        for j in (1..=i + 1).rev() {
            let t = &e[j - 1] * int(x);
            e[j] += t;
        }
    }
    e
}

fn weight_product(w: &[i64]) -> Rational {
    w.iter().fold(Rational::one(), |acc, &x| acc * int(x))
}

/// `C_λ = Σ_P Π_i e_{λ_i}(w(P)) / Π_j w_j(P)`; must be an integer.
pub fn chern_number(fpd: &FixedPointData, lambda: &Partition) -> Result<Rational> {
    fpd.validate()?;
    if lambda.weight() as usize != fpd.n {
        return Err(Error::InvalidArgument(format!(
            "Chern numbers need |λ| = n; got λ = {lambda} with n = {}",
            fpd.n
        )));
    }
    let mut acc = Rational::zero();
    for w in fpd.weights() {
        let e = elementary_values(w);
        let num = lambda.parts().iter().fold(Rational::one(), |a, &p| a * &e[p as usize]);
        acc += num / weight_product(w);
    }
    if !acc.is_integer() {
        return Err(Error::IntegralityViolated(format!("C_{lambda} = {acc}")));
    }
    Ok(acc)
}

/// All Chern numbers `C_λ`, `λ ⊢ n`.
pub fn chern_numbers(fpd: &FixedPointData) -> Result<BTreeMap<Partition, Rational>> {
    partitions_at_most(fpd.n as u32, fpd.n)
        .into_iter()
        .map(|l| Ok((l.clone(), chern_number(fpd, &l)?)))
        .collect()
}

/// `χ_y = Σ_P (-y)^{#negative weights at P}`.
pub fn chi_y_from_counts(fpd: &FixedPointData) -> Result<UniPoly> {
    fpd.validate()?;
    let mut counts = vec![Rational::zero(); fpd.n + 1];
    for w in fpd.weights() {
        let neg = w.iter().filter(|&&x| x < 0).count();
        counts[neg] += if neg % 2 == 0 { int(1) } else { int(-1) };
    }
    Ok(UniPoly::new('y', counts))
}

/// `q_I = Σ_P m_I(w(P)) / Π_j w_j(P)`, the coefficient of `G_{I,N}` in the
/// relation of weight `|I|`.
pub fn relation_coefficient(fpd: &FixedPointData, partition: &Partition) -> Result<Rational> {
    fpd.validate()?;
    if partition.len() > fpd.n {
        return Ok(Rational::zero());
    }
    let mut acc = Rational::zero();
    for w in fpd.weights() {
        let vals: Vec<Rational> = w.iter().map(|&x| int(x)).collect();
        acc += monomial_sym_eval(partition, &vals)? / weight_product(w);
    }
    Ok(acc)
}
