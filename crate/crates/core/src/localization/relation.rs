use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{relation_coefficient, FixedPointData};
use crate::arith::{parse_rational, Rational};
use crate::error::{Error, Result};
use crate::modular::{eisenstein_product, q_ctx, QSeries};
use crate::symfunc::{partitions_at_most, Partition};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationTerm {
    pub partition: Partition,
    pub coefficient: Rational,
}

/// `Σ_I q_I Π_i G_{I_i,N} = 0` over partitions `I` of `k` with at most `n` parts.
///
/// Terms are kept in [`Partition`] order, zero coefficients included.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RelationJson", into = "RelationJson")]
pub struct Relation {
    pub n: usize,
    pub k: u32,
    pub level: u32,
    pub terms: Vec<RelationTerm>,
    pub provenance: String,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    partition: Partition,
    coefficient: String,
}

#[derive(Serialize, Deserialize)]
struct RelationJson {
    n: usize,
    k: u32,
    #[serde(rename = "N")]
    level: u32,
    terms: Vec<TermJson>,
    provenance: String,
}

impl TryFrom<RelationJson> for Relation {
    type Error = Error;

    fn try_from(j: RelationJson) -> Result<Self> {
        let mut terms = j
            .terms
            .into_iter()
            .map(|t| Ok(RelationTerm { partition: t.partition, coefficient: parse_rational(&t.coefficient)? }))
            .collect::<Result<Vec<_>>>()?;
        if let Some(bad) = terms.iter().find(|t| t.partition.weight() != j.k || t.partition.len() > j.n) {
            return Err(Error::Parse(format!("term {} does not belong to weight {} with n = {}", bad.partition, j.k, j.n)));
        }
        terms.sort_by(|a, b| a.partition.cmp(&b.partition));
        Ok(Relation { n: j.n, k: j.k, level: j.level, terms, provenance: j.provenance })
    }
}

impl From<Relation> for RelationJson {
    fn from(r: Relation) -> Self {
        RelationJson {
            n: r.n,
            k: r.k,
            level: r.level,
            terms: r
                .terms
                .into_iter()
                .map(|t| TermJson { partition: t.partition, coefficient: t.coefficient.to_string() })
                .collect(),
            provenance: r.provenance,
        }
    }
}

impl Relation {
    pub fn coefficient(&self, partition: &Partition) -> Rational {
        self.terms
            .iter()
            .find(|t| &t.partition == partition)
            .map(|t| t.coefficient.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_trivial(&self) -> bool {
        self.terms.iter().all(|t| t.coefficient.is_zero())
    }

    /// The same relation scaled to coprime integer coefficients, signed so
    /// the last nonzero term in display order (normally `G_k` alone) is positive.
    ///
    /// Coefficients of degree `k > n` are homogeneous of degree `k - n` in
    /// the weights, so two weight choices only agree after this step.
    pub fn primitive(&self) -> Relation {
        let nonzero: Vec<&Rational> = self.terms.iter().map(|t| &t.coefficient).filter(|c| !c.is_zero()).collect();
        if nonzero.is_empty() {
            return self.clone();
        }
        let den_lcm = nonzero.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.terms.iter().map(|t| (&t.coefficient * Rational::from_integer(den_lcm.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let lead_negative = self
            .display_order()
            .into_iter()
            .rev()
            .map(|i| &ints[i])
            .find(|c| !c.is_zero())
            .is_some_and(|c| c.is_negative());
        let unit = if lead_negative { -g } else { g };
        let mut out = self.clone();
        for (t, c) in out.terms.iter_mut().zip(ints) {
            t.coefficient = Rational::from_integer(c / &unit);
        }
        out
    }

    /// Term indices with more factors first, then larger leading parts first.
    fn display_order(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.terms.len()).collect();
        idx.sort_by(|&a, &b| {
            let (pa, pb) = (&self.terms[a].partition, &self.terms[b].partition);
            match pb.len().cmp(&pa.len()) {
                Ordering::Equal => pb.parts().cmp(pa.parts()),
                o => o,
            }
        });
        idx
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("relation serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn render_monomial(p: &Partition, level: u32) -> String {
    let mut parts = p.parts().to_vec();
    parts.sort_unstable();
    let mut out: Vec<String> = Vec::new();
    let mut i = 0;
    while i < parts.len() {
        let mut j = i;
        while j < parts.len() && parts[j] == parts[i] {
            j += 1;
        }
        let g = format!("G[{},{}]", parts[i], level);
        out.push(if j - i > 1 { format!("{g}^{}", j - i) } else { g });
        i = j;
    }
    out.join("*")
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for i in self.display_order() {
            let t = &self.terms[i];
            if t.coefficient.is_zero() {
                continue;
            }
            let neg = t.coefficient.is_negative();
            let mag = t.coefficient.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "{}", render_monomial(&t.partition, self.level))?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " = 0")
    }
}

/// The weight-`k` relation among level-`N` Eisenstein series forced by the
/// vanishing of the level-`N` elliptic genus on the given data.
///
/// Only meaningful when `N` divides the index; that is the caller's claim,
/// recorded in the provenance string.
pub fn build_relation(fpd: &FixedPointData, level: u32, k: u32) -> Result<Relation> {
    fpd.validate()?;
    if (k as usize) < fpd.n {
        return Err(Error::BelowLocalizationDegree { k: k as usize, n: fpd.n });
    }
    let terms = partitions_at_most(k, fpd.n)
        .into_iter()
        .map(|p| Ok(RelationTerm { coefficient: relation_coefficient(fpd, &p)?, partition: p }))
        .collect::<Result<Vec<_>>>()?;
    let index = match fpd.asserted_index {
        Some(k0) => format!("index {k0} asserted by caller"),
        None => "caller asserts N divides the index".to_string(),
    };
    Ok(Relation {
        n: fpd.n,
        k,
        level,
        terms,
        provenance: format!("localization over {} fixed points; {index}", fpd.num_points()),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct RelationCheck {
    pub residual: QSeries,
    pub precision: u32,
}

impl RelationCheck {
    pub fn passed(&self) -> bool {
        self.residual.is_zero()
    }
}

/// Substitutes q-expansions into a relation and returns what is left.
pub fn verify_relation(rel: &Relation, precision: u32) -> Result<RelationCheck> {
    let mut acc = QSeries::zero(q_ctx(rel.level, precision));
    for t in rel.terms.iter().filter(|t| !t.coefficient.is_zero()) {
        let prod = eisenstein_product(t.partition.parts(), rel.level, precision)?;
        acc = acc.try_add(&prod.scale_by(&t.coefficient))?;
    }
    Ok(RelationCheck { residual: acc, precision })
}

/// `Σ_{I ⊢ n} q_I G_I`, which equals the level-`N` elliptic genus.
pub fn genus_qexp(fpd: &FixedPointData, level: u32, precision: u32) -> Result<QSeries> {
    let rel = build_relation(fpd, level, fpd.n as u32)?;
    let mut acc = QSeries::zero(q_ctx(level, precision));
    for t in rel.terms.iter().filter(|t| !t.coefficient.is_zero()) {
        let prod = eisenstein_product(t.partition.parts(), level, precision)?;
        acc = acc.try_add(&prod.scale_by(&t.coefficient))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn cp2(x: i64, y: i64) -> FixedPointData {
        FixedPointData::from_weights(2, vec![vec![x, y], vec![-x, y - x], vec![-y, x - y]]).unwrap()
    }

    #[test]
    fn cp2_relations_match_reference_strings() {
        let expected = [
            (4, "4*G[1,3]*G[3,3] + G[2,3]^2 + 5*G[4,3] = 0"),
            (5, "-G[2,3]*G[3,3] + G[5,3] = 0"),
            (6, "4*G[1,3]*G[5,3] + 2*G[2,3]*G[4,3] + G[3,3]^2 + 7*G[6,3] = 0"),
            (7, "-G[2,3]*G[5,3] - G[3,3]*G[4,3] + 2*G[7,3] = 0"),
        ];
        // (1, 2) is symmetric under negation, which kills every odd k.
        assert!(build_relation(&cp2(1, 2), 3, 5).unwrap().is_trivial());
        for (x, y) in [(1, 3), (2, 5), (-1, 4)] {
            for (k, s) in expected {
                let rel = build_relation(&cp2(x, y), 3, k).unwrap().primitive();
                assert_eq!(rel.to_string(), s, "weights ({x},{y}), k = {k}");
            }
        }
    }

    #[test]
    fn relations_hold_on_q_expansions() {
        for k in 4..=7 {
            let rel = build_relation(&cp2(1, 2), 3, k).unwrap();
            assert!(verify_relation(&rel, 8).unwrap().passed(), "k = {k}");
        }
        let wrong = build_relation(&cp2(1, 2), 4, 4).unwrap();
        assert!(!verify_relation(&wrong, 8).unwrap().passed());
    }

    #[test]
    fn genus_vanishes_for_cp2_at_level_3() {
        assert!(genus_qexp(&cp2(1, 2), 3, 8).unwrap().is_zero());
        assert!(!genus_qexp(&cp2(1, 2), 2, 8).unwrap().is_zero());
    }

    #[test]
    fn below_degree_and_json() {
        assert_eq!(build_relation(&cp2(1, 2), 3, 1), Err(Error::BelowLocalizationDegree { k: 1, n: 2 }));
        let rel = build_relation(&cp2(1, 2), 3, 6).unwrap();
        let back = Relation::from_json(&rel.to_json()).unwrap();
        assert_eq!(back, rel);
        assert!(rel.to_json().contains("\"N\": 3"));
        assert_eq!(rel.primitive().coefficient(&Partition::new(vec![6]).unwrap()), int(7));
    }
}
