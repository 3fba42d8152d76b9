//! Partitions, monomial and elementary symmetric polynomials, and the
//! construction of a multiplicative genus from its characteristic power
//! series `Q(x) = a_0 + a_1 x + a_2 x^2 + …`.
//!
//! The genus of a `2n`-manifold is `Σ_λ f_λ C_λ` over partitions `λ` of `n`,
//! where `f_λ` is the coefficient of `σ_{λ_1}⋯σ_{λ_ℓ}` in `Q_n(σ_1, …, σ_n)`.
//! The `f_λ` are first computed as polynomials in indeterminates
//! `a_0, …, a_n` and only then specialized, so one table serves every genus.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{bernoulli, factorial, Coefficient, Monomial, Rational, SparsePoly, TruncSeries, UniPoly};
use crate::error::{Error, Result};
use crate::modular::{eisenstein, q_ctx, QSeries};

/// Integer partition with non-increasing positive parts.
///
/// Ordered by weight, then number of parts, then reverse-lexicographically
/// on the parts, e.g. `[6] < [5,1] < [4,2] < [3,3] < [4,1,1] < …`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Accepts parts in any order; rejects zero parts.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidArgument(format!("partition parts must be positive: {parts:?}")));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parts padded with zeros to length `n`.
    pub fn padded(&self, n: usize) -> Vec<u32> {
        let mut v = self.0.clone();
        v.resize(n.max(v.len()), 0);
        v
    }

    /// The conjugate partition.
    pub fn conjugate(&self) -> Partition {
        let largest = self.0.first().copied().unwrap_or(0);
        Partition((1..=largest).map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32).collect())
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then(self.len().cmp(&other.len()))
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// All partitions of `k` with at most `n` parts, in [`Partition`] order.
pub fn partitions_at_most(k: u32, n: usize) -> Vec<Partition> {
    fn go(remaining: u32, max_part: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if slots == 0 {
            return;
        }
        for p in (1..=max_part.min(remaining)).rev() {
            cur.push(p);
            go(remaining - p, p, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, k, n, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Distinct rearrangements of a multiset of exponents.
fn distinct_permutations(exps: &[u32]) -> Vec<Vec<u32>> {
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for &e in exps {
        *counts.entry(e).or_default() += 1;
    }
    let mut counts: Vec<(u32, usize)> = counts.into_iter().collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(exps.len());
    fn go(counts: &mut [(u32, usize)], n: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..counts.len() {
            if counts[i].1 == 0 {
                continue;
            }
            counts[i].1 -= 1;
            cur.push(counts[i].0);
            go(counts, n, cur, out);
            cur.pop();
            counts[i].1 += 1;
        }
    }
    go(&mut counts, exps.len(), &mut cur, &mut out);
    out
}

/// `m_I(values)`: the sum of all distinct monomials `x^J` with `J` a
/// rearrangement of `I` padded by zeros.
pub fn monomial_sym_eval(partition: &Partition, values: &[Rational]) -> Result<Rational> {
    if values.len() < partition.len() {
        return Err(Error::TooFewValues { needed: partition.len(), got: values.len() });
    }
    // Powers are reused across the permutations.
    let top = partition.0.first().copied().unwrap_or(0) as usize;
    let powers: Vec<Vec<Rational>> = values
        .iter()
        .map(|v| {
            let mut p = vec![Rational::one()];
            for i in 0..top {
                let next = &p[i] * v;
                p.push(next);
            }
            p
        })
        .collect();
    let mut acc = Rational::zero();
    for perm in distinct_permutations(&partition.padded(values.len())) {
        let mut t = Rational::one();
        for (i, &e) in perm.iter().enumerate() {
            if e > 0 {
                t *= &powers[i][e as usize];
            }
        }
        acc += t;
    }
    Ok(acc)
}

/// `m_I(x_1, …, x_n)` as a polynomial.
pub fn monomial_sym_poly(partition: &Partition, vars: Arc<Vec<String>>) -> Result<SparsePoly> {
    let n = vars.len();
    if n < partition.len() {
        return Err(Error::TooFewValues { needed: partition.len(), got: n });
    }
    let terms = distinct_permutations(&partition.padded(n)).into_iter().map(|e| (Monomial(e), Rational::one()));
    Ok(SparsePoly::from_terms(vars, terms))
}

/// `e_j(x_1, …, x_n)` as a polynomial.
pub fn elementary_poly(j: usize, vars: Arc<Vec<String>>) -> SparsePoly {
    let n = vars.len();
    if j > n {
        return SparsePoly::zero(vars);
    }
    let mut e = vec![1; j];
    e.resize(n, 0);
    let terms = distinct_permutations(&e).into_iter().map(|e| (Monomial(e), Rational::one()));
    SparsePoly::from_terms(vars, terms)
}

/// Expresses `m_I` in `n` variables as a polynomial `Q_I(e_1, …, e_n)`.
///
/// Triangular elimination: the graded-lex leading term of a symmetric
/// polynomial is `c·x^α` with `α` a partition, and `e_{α'}` (conjugate)
/// has the same leading monomial, so subtracting `c·e_{α'}` strictly lowers
/// the leading term.
pub fn monomial_to_elementary(partition: &Partition, n: usize) -> Result<SparsePoly> {
    let xs = SparsePoly::indexed_vars("x", n);
    let es = SparsePoly::indexed_vars("e", n);
    let e_polys: Vec<SparsePoly> = (1..=n).map(|j| elementary_poly(j, xs.clone())).collect();
    let mut rest = monomial_sym_poly(partition, xs.clone())?;
    let mut out = SparsePoly::zero(es.clone());
    while let Some((lead, c)) = rest.leading() {
        let alpha = Partition(lead.0.iter().copied().filter(|&e| e > 0).collect());
        let conj = alpha.conjugate();
        let mut e_exp = vec![0u32; n];
        let mut product = SparsePoly::constant(xs.clone(), c.clone());
        for &part in conj.parts() {
            e_exp[part as usize - 1] += 1;
            product = &product * &e_polys[part as usize - 1];
        }
        out.add_term(Monomial(e_exp), c.clone());
        rest = &rest - &product;
    }
    Ok(out)
}

/// Characteristic power series `a_0 + a_1 x + … + a_n x^n` of a genus,
/// with coefficients in some domain.
#[derive(Clone, Debug, PartialEq)]
pub struct GenusSpec<C: Coefficient> {
    pub ctx: C::Ctx,
    pub coeffs: Vec<C>,
}

impl<C: Coefficient> GenusSpec<C> {
    pub fn new(ctx: C::Ctx, coeffs: Vec<C>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("a genus needs at least a_0".into()));
        }
        Ok(GenusSpec { ctx, coeffs })
    }

    pub fn is_normalized(&self) -> bool {
        self.coeffs[0] == C::one_in(&self.ctx)
    }

    fn coeff(&self, k: usize) -> Result<C> {
        self.coeffs.get(k).cloned().ok_or_else(|| {
            Error::InvalidArgument(format!("genus series lacks a_{k} (only {} coefficients)", self.coeffs.len()))
        })
    }
}

/// Symbolic data for dimension `n`: `Q_1 … Q_n` over variables
/// `a0 … an, y1 … yn`, with `y_j` standing for `σ_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct GenusPolynomials {
    pub n: usize,
    pub vars: Arc<Vec<String>>,
    pub q: Vec<SparsePoly>,
}

impl GenusPolynomials {
    /// Index of `a_i` in [`Self::vars`].
    pub fn a_index(&self, i: usize) -> usize {
        i
    }

    /// Index of `y_j` (1-based `j`) in [`Self::vars`].
    pub fn y_index(&self, j: usize) -> usize {
        self.n + j
    }

    /// `f_λ` for `λ ⊢ n` as polynomials in `a_0 … a_n` (over the full
    /// variable list, with all `y` exponents zero).
    pub fn f_lambda(&self) -> BTreeMap<Partition, SparsePoly> {
        let mut out: BTreeMap<Partition, SparsePoly> = partitions_at_most(self.n as u32, self.n)
            .into_iter()
            .map(|p| (p, SparsePoly::zero(self.vars.clone())))
            .collect();
        let Some(qn) = self.q.last() else { return out };
        for (m, c) in qn.terms() {
            let mut parts = Vec::new();
            let mut a_part = m.0.clone();
            for j in 1..=self.n {
                let e = std::mem::take(&mut a_part[self.y_index(j)]);
                parts.extend(std::iter::repeat_n(j as u32, e as usize));
            }
            let lambda = Partition::new(parts).expect("parts are positive");
            out.entry(lambda)
                .or_insert_with(|| SparsePoly::zero(self.vars.clone()))
                .add_term(Monomial(a_part), c.clone());
        }
        out
    }
}

/// `Q_k` with `p_k(x) = Q_k(σ_1, …, σ_k)`, where `p_k` is the weight-`k`
/// part of `Q(x_1)⋯Q(x_n)`, computed for symbolic `a_0 … a_n`.
///
/// The weight-`k` part is `Σ_{I ⊢ k, ℓ(I) ≤ n} a_0^{n-ℓ(I)} a_I m_I`, so no
/// `n`-fold product is ever expanded.
pub fn genus_polynomials_symbolic(n: usize) -> Result<GenusPolynomials> {
    let mut names: Vec<String> = (0..=n).map(|i| format!("a{i}")).collect();
    names.extend((1..=n).map(|j| format!("y{j}")));
    let vars = Arc::new(names);
    let y_images: Vec<SparsePoly> = (1..=n).map(|j| SparsePoly::var(vars.clone(), n + j)).collect();
    let mut q = Vec::with_capacity(n);
    for k in 1..=n as u32 {
        let mut acc = SparsePoly::zero(vars.clone());
        for part in partitions_at_most(k, n) {
            let mut a = vec![0u32; vars.len()];
            a[0] = (n - part.len()) as u32;
            for &p in part.parts() {
                a[p as usize] += 1;
            }
            let coeff = SparsePoly::from_terms(vars.clone(), [(Monomial(a), Rational::one())]);
            let in_y = monomial_to_elementary(&part, n)?.substitute(&y_images);
            acc = &acc + &(&coeff * &in_y);
        }
        q.push(acc);
    }
    Ok(GenusPolynomials { n, vars, q })
}

/// `Q_1 … Q_n` for a rational genus, as polynomials in `y1 … yn`.
pub fn genus_polynomials(spec: &GenusSpec<Rational>, n: usize) -> Result<Vec<SparsePoly>> {
    let sym = genus_polynomials_symbolic(n)?;
    let ys = SparsePoly::indexed_vars("y", n);
    let mut images: Vec<SparsePoly> = Vec::with_capacity(sym.vars.len());
    for i in 0..=n {
        images.push(SparsePoly::constant(ys.clone(), spec.coeff(i)?));
    }
    images.extend((0..n).map(|j| SparsePoly::var(ys.clone(), j)));
    Ok(sym.q.iter().map(|p| p.substitute(&images)).collect())
}

/// `f_λ` for all `λ ⊢ n`, specialized to the coefficients of `spec`.
pub fn f_lambda<C: Coefficient>(spec: &GenusSpec<C>, n: usize) -> Result<BTreeMap<Partition, C>> {
    let sym = genus_polynomials_symbolic(n)?;
    let mut values: Vec<C> = (0..=n).map(|i| spec.coeff(i)).collect::<Result<_>>()?;
    values.extend((0..n).map(|_| C::zero_in(&spec.ctx)));
    sym.f_lambda()
        .into_iter()
        .map(|(lambda, poly)| Ok((lambda, poly.eval_in(&values, &spec.ctx)?)))
        .collect()
}

/// `φ_Q(M) = Σ_λ f_λ C_λ(M)`.
pub fn genus_value<C: Coefficient>(spec: &GenusSpec<C>, chern: &BTreeMap<Partition, Rational>, n: usize) -> Result<C> {
    let mut acc = C::zero_in(&spec.ctx);
    for (lambda, f) in f_lambda(spec, n)? {
        let c = chern.get(&lambda).ok_or_else(|| Error::MissingChernNumber(lambda.to_string()))?;
        acc = acc.add(&f.scale(c))?;
    }
    Ok(acc)
}

/// The χ_y series `x(1 + y e^{-x})/(1 - e^{-x})` with coefficients
/// `a_0 = 1 + y` and `a_k = Σ_{m≤k} B_m/(m!(k-m)!) + y B_k/k!`.
pub fn chi_y_power_series(k_max: usize) -> GenusSpec<UniPoly> {
    let coeffs = (0..=k_max)
        .map(|k| {
            let mut constant = Rational::zero();
            for m in 0..=k {
                constant += bernoulli(m) / Rational::from_integer(factorial(m as u64) * factorial((k - m) as u64));
            }
            let linear = bernoulli(k) / Rational::from_integer(factorial(k as u64));
            UniPoly::new('y', vec![constant, linear])
        })
        .collect();
    GenusSpec { ctx: 'y', coeffs }
}

/// Genus spec of the level-`N` elliptic genus: `a_0 = 1`, `a_k = G_{k,N}`.
pub fn elliptic_genus_spec(level: u32, n: usize, precision: u32) -> Result<GenusSpec<QSeries>> {
    let ctx = q_ctx(level, precision);
    let mut coeffs = vec![TruncSeries::one(ctx.clone())];
    for k in 1..=n as u32 {
        coeffs.push((*eisenstein(k, level as i64, precision)?).clone());
    }
    GenusSpec::new(ctx, coeffs)
}

/// The table of `f_λ(τ)` for the level-`N` elliptic genus in dimension `n`.
pub fn f_lambda_table(level: u32, n: usize, precision: u32) -> Result<BTreeMap<Partition, QSeries>> {
    f_lambda(&elliptic_genus_spec(level, n, precision)?, n)
}

/// CSV with columns `level,partition,coefficients`; the coefficient list
/// holds `c_0 … c_{T-1}` separated by `;`.
pub fn f_lambda_csv(tables: &[(u32, BTreeMap<Partition, QSeries>)]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::InvalidArgument(format!("csv: {e}"));
    w.write_record(["level", "partition", "coefficients"]).map_err(io)?;
    for (level, table) in tables {
        for (lambda, series) in table {
            let coeffs: Vec<String> = (0..series.order()).map(|e| series.coeff(e).render_plain()).collect();
            w.write_record([level.to_string(), lambda.to_string(), coeffs.join(";")]).map_err(io)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::InvalidArgument(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::InvalidArgument(format!("csv: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use std::collections::HashSet;

    fn rational_series(values: &[i64]) -> Vec<Rational> {
        values.iter().map(|&v| int(v)).collect()
    }

    fn part(p: &[u32]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn partition_enumeration() {
        assert_eq!(partitions_at_most(3, 2), vec![part(&[3]), part(&[2, 1])]);
        assert_eq!(partitions_at_most(2, 2), vec![part(&[2]), part(&[1, 1])]);
        let six: Vec<String> = partitions_at_most(6, 3).iter().map(ToString::to_string).collect();
        assert_eq!(six, ["[6]", "[5,1]", "[4,2]", "[3,3]", "[4,1,1]", "[3,2,1]", "[2,2,2]"]);
        assert_eq!(partitions_at_most(0, 3), vec![Partition::empty()]);
        assert_eq!(part(&[3, 1]).conjugate(), part(&[2, 1, 1]));
    }

    fn m_oracle(p: &Partition, values: &[Rational]) -> Rational {
        // All n! orderings, deduplicated as exponent vectors.
        let n = values.len();
        let exps = p.padded(n);
        let mut seen = HashSet::new();
        let mut idx: Vec<usize> = (0..n).collect();
        let mut acc = Rational::zero();
        fn heap(k: usize, idx: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
            if k == 1 {
                visit(idx);
                return;
            }
            for i in 0..k {
                heap(k - 1, idx, visit);
                let j = if k.is_multiple_of(2) { i } else { 0 };
                idx.swap(j, k - 1);
            }
        }
        heap(n, &mut idx, &mut |perm| {
            let e: Vec<u32> = perm.iter().map(|&i| exps[i]).collect();
            if seen.insert(e.clone()) {
                let mut t = Rational::one();
                for (v, &k) in values.iter().zip(&e) {
                    for _ in 0..k {
                        t *= v;
                    }
                }
                acc += t;
            }
        });
        acc
    }

    #[test]
    fn monomial_evaluation() {
        assert_eq!(monomial_sym_eval(&part(&[1, 1]), &[int(2), int(3)]).unwrap(), int(6));
        assert_eq!(monomial_sym_eval(&part(&[2]), &[int(2), int(3)]).unwrap(), int(13));
        let vals = [int(1), int(2), int(3)];
        assert_eq!(monomial_sym_eval(&part(&[2, 1]), &vals).unwrap(), m_oracle(&part(&[2, 1]), &vals));
        assert!(matches!(
            monomial_sym_eval(&part(&[1, 1, 1]), &[int(1)]),
            Err(Error::TooFewValues { needed: 3, got: 1 })
        ));
        let vals = [rat(1, 2), int(-3), int(5), int(7)];
        for p in partitions_at_most(5, 4) {
            assert_eq!(monomial_sym_eval(&p, &vals).unwrap(), m_oracle(&p, &vals), "{p}");
        }
    }

    #[test]
    fn monomial_to_elementary_examples() {
        assert_eq!(monomial_to_elementary(&part(&[1, 1]), 2).unwrap().to_string(), "e2");
        assert_eq!(monomial_to_elementary(&part(&[2]), 2).unwrap().to_string(), "e1^2 - 2*e2");
        assert_eq!(monomial_to_elementary(&part(&[2, 1]), 3).unwrap().to_string(), "e1*e2 - 3*e3");
    }

    #[test]
    fn genus_polynomials_match_displayed_formulas() {
        let sym = genus_polynomials_symbolic(3).unwrap();
        assert_eq!(sym.q[0].to_string(), "a0^2*a1*y1");
        assert_eq!(sym.q[1].to_string(), "a0^2*a2*y1^2 - 2*a0^2*a2*y2 + a0*a1^2*y2");
        let spec = GenusSpec::new((), rational_series(&[1, 2, 3, 5])).unwrap();
        let q = genus_polynomials(&spec, 3).unwrap();
        // a1 y1; a2 y1^2 + (a1^2 - 2 a2) y2; a3 y1^3 + (a1 a2 - 3 a3) y1 y2 + (a1^3 + 3 a3 - 3 a1 a2) y3
        assert_eq!(q[0].to_string(), "2*y1");
        assert_eq!(q[1].to_string(), "3*y1^2 - 2*y2");
        assert_eq!(q[2].to_string(), "5*y1^3 - 9*y1*y2 + 5*y3");
    }

    #[test]
    fn chi_y_series_and_cp2() {
        let spec = chi_y_power_series(4);
        assert_eq!(spec.coeffs[0].to_string(), "1 + y");
        assert_eq!(spec.coeffs[1].to_string(), "1/2 - 1/2*y");
        assert_eq!(spec.coeffs[2].to_string(), "1/12 + 1/12*y");
        let chern: BTreeMap<_, _> = [(part(&[1, 1]), int(9)), (part(&[2]), int(3))].into();
        let chi = genus_value(&spec, &chern, 2).unwrap();
        assert_eq!(chi, UniPoly::from_ints('y', &[1, -1, 1]));
        assert_eq!(chi.eval(&int(-1)), int(3));
        let zero: BTreeMap<_, _> = [(part(&[1, 1]), int(0)), (part(&[2]), int(0))].into();
        assert!(genus_value(&spec, &zero, 2).unwrap().is_zero());
        let missing: BTreeMap<_, _> = [(part(&[2]), int(3))].into();
        assert_eq!(genus_value(&spec, &missing, 2), Err(Error::MissingChernNumber("[1,1]".into())));
    }

    #[test]
    fn f_lambda_weights_are_homogeneous() {
        let sym = genus_polynomials_symbolic(4).unwrap();
        for (lambda, f) in sym.f_lambda() {
            for (m, _) in f.terms() {
                let weight: u32 = (0..=4).map(|i| i as u32 * m.0[i]).sum();
                assert_eq!(weight, 4, "{lambda}: {f}");
            }
        }
    }

    #[test]
    fn f_lambda_table_levels_two_and_three() {
        let render = |t: &BTreeMap<Partition, QSeries>, p: &[u32]| t[&part(p)].to_string();
        let t2 = f_lambda_table(2, 2, 6).unwrap();
        assert_eq!(render(&t2, &[2]), "-1/6 - 4*q - 4*q^2 - 16*q^3 - 4*q^4 - 24*q^5 + O(q^6)");
        assert_eq!(render(&t2, &[1, 1]), "1/12 + 2*q + 2*q^2 + 8*q^3 + 2*q^4 + 12*q^5 + O(q^6)");
        let t3 = f_lambda_table(3, 2, 6).unwrap();
        assert_eq!(render(&t3, &[2]), "-1/4 - 3*q - 9*q^2 - 3*q^3 - 21*q^4 - 18*q^5 + O(q^6)");
        assert_eq!(render(&t3, &[1, 1]), "1/12 + q + 3*q^2 + q^3 + 7*q^4 + 6*q^5 + O(q^6)");
    }
}
