//! Root systems of types A and B, their Weyl groups, divided differences,
//! and the two independent routes to `q_I` of a coadjoint orbit.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::arith::{int, Rational, SparsePoly};
use crate::error::{Error, Result};
use crate::localization::{relation_coefficient, FixedPoint, FixedPointData};
use crate::symfunc::{monomial_sym_poly, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
}

/// `A_m` lives in `m + 1` coordinates (no quotient by the diagonal), `B_m` in `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSystem {
    pub family: Family,
    pub rank: usize,
}

/// `w(e_i) = signs[i] · e_{perm[i]}`, with a reduced word `w = s_{j_1} ⋯ s_{j_l}`
/// (1-based simple indices).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    perm: Vec<usize>,
    signs: Vec<i8>,
    word: Vec<usize>,
}

impl WeylElement {
    fn identity(dim: usize) -> Self {
        WeylElement { perm: (0..dim).collect(), signs: vec![1; dim], word: Vec::new() }
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// `self ∘ other` as a signed permutation; the word is left empty and
    /// filled in by [`RootSystem::element`].
    fn compose_raw(&self, other: &Self) -> (Vec<usize>, Vec<i8>) {
        let perm = other.perm.iter().map(|&p| self.perm[p]).collect();
        let signs = other.perm.iter().zip(&other.signs).map(|(&p, &s)| s * self.signs[p]).collect();
        (perm, signs)
    }

    pub fn apply_root(&self, root: &[i64]) -> Vec<i64> {
        let mut out = vec![0; root.len()];
        for (i, &c) in root.iter().enumerate() {
            out[self.perm[i]] += c * self.signs[i] as i64;
        }
        out
    }

    /// The induced algebra automorphism `x_i ↦ w(x_i)`.
    pub fn act(&self, p: &SparsePoly) -> SparsePoly {
        p.signed_permute(&self.perm, &self.signs)
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "e");
        }
        let letters: Vec<String> = self.word.iter().map(|j| format!("s{j}")).collect();
        write!(f, "{}", letters.join(""))
    }
}

fn is_positive(root: &[i64]) -> bool {
    root.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0)
}

pub fn render_root(root: &[i64]) -> String {
    let mut out = String::new();
    for (i, &c) in root.iter().enumerate().filter(|(_, &c)| c != 0) {
        let sign = if c < 0 { "-" } else if out.is_empty() { "" } else { "+" };
        let mag = if c.abs() == 1 { String::new() } else { format!("{}*", c.abs()) };
        out.push_str(&format!("{sign}{mag}x{}", i + 1));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

static WEYL_MEMO: Mutex<Option<HashMap<RootSystem, Arc<Vec<WeylElement>>>>> = Mutex::new(None);

impl RootSystem {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidArgument("rank must be at least 1".into()));
        }
        Ok(RootSystem { family, rank })
    }

    pub fn dim(&self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            Family::B => self.rank,
        }
    }

    pub fn vars(&self) -> Arc<Vec<String>> {
        SparsePoly::indexed_vars("x", self.dim())
    }

    fn unit(&self, i: usize) -> Vec<i64> {
        let mut v = vec![0; self.dim()];
        v[i] = 1;
        v
    }

    /// `α_j` for `j = 1 … rank`.
    pub fn simple_root(&self, j: usize) -> Vec<i64> {
        assert!((1..=self.rank).contains(&j), "simple root index out of range");
        let mut v = self.unit(j - 1);
        if self.family == Family::A || j < self.rank {
            v[j] = -1;
        }
        v
    }

    pub fn simple_roots(&self) -> Vec<Vec<i64>> {
        (1..=self.rank).map(|j| self.simple_root(j)).collect()
    }

    pub fn positive_roots(&self) -> Vec<Vec<i64>> {
        let d = self.dim();
        let mut out = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                let mut minus = self.unit(i);
                minus[j] = -1;
                out.push(minus);
                if self.family == Family::B {
                    let mut plus = self.unit(i);
                    plus[j] = 1;
                    out.push(plus);
                }
            }
        }
        if self.family == Family::B {
            out.extend((0..d).map(|i| self.unit(i)));
        }
        out
    }

    fn reflection_raw(&self, j: usize) -> WeylElement {
        let mut s = WeylElement::identity(self.dim());
        if self.family == Family::B && j == self.rank {
            s.signs[j - 1] = -1;
        } else {
            s.perm.swap(j - 1, j);
        }
        s
    }

    /// Number of positive roots sent to negative roots.
    fn length_of(&self, w: &WeylElement) -> usize {
        self.positive_roots().iter().filter(|r| !is_positive(&w.apply_root(r))).count()
    }

    /// Completes a signed permutation with its reduced word, peeling off the
    /// smallest-index right descent each time.
    fn element(&self, perm: Vec<usize>, signs: Vec<i8>) -> WeylElement {
        let mut w = WeylElement { perm, signs, word: Vec::new() };
        let mut cur = w.clone();
        let mut letters = Vec::new();
        let mut len = self.length_of(&cur);
        while len > 0 {
            let (j, next, next_len) = (1..=self.rank)
                .map(|j| {
                    let (p, s) = cur.compose_raw(&self.reflection_raw(j));
                    let next = WeylElement { perm: p, signs: s, word: Vec::new() };
                    let l = self.length_of(&next);
                    (j, next, l)
                })
                .find(|(_, _, l)| *l < len)
                .expect("a nontrivial element has a descent");
            letters.push(j);
            cur = next;
            len = next_len;
        }
        letters.reverse();
        w.word = letters;
        w
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement::identity(self.dim())
    }

    pub fn simple_reflection(&self, j: usize) -> WeylElement {
        let mut s = self.reflection_raw(j);
        s.word = vec![j];
        s
    }

    pub fn compose(&self, v: &WeylElement, w: &WeylElement) -> WeylElement {
        let (p, s) = v.compose_raw(w);
        self.element(p, s)
    }

    /// Product of simple reflections along a word.
    pub fn from_word(&self, word: &[usize]) -> Result<WeylElement> {
        let mut acc = self.identity();
        for &j in word {
            if !(1..=self.rank).contains(&j) {
                return Err(Error::InvalidArgument(format!("simple index {j} out of range 1..={}", self.rank)));
            }
            let (p, s) = acc.compose_raw(&self.reflection_raw(j));
            acc = WeylElement { perm: p, signs: s, word: Vec::new() };
        }
        Ok(self.element(acc.perm, acc.signs))
    }

    /// Subgroup generated by the given simple reflections, by breadth-first search.
    fn generate(&self, gens: &[usize]) -> Vec<WeylElement> {
        let mut seen: BTreeSet<(Vec<usize>, Vec<i8>)> = BTreeSet::new();
        let id = self.identity();
        seen.insert((id.perm.clone(), id.signs.clone()));
        let mut queue = VecDeque::from([id]);
        let mut out = Vec::new();
        while let Some(w) = queue.pop_front() {
            for &j in gens {
                let (p, s) = w.compose_raw(&self.reflection_raw(j));
                if seen.insert((p.clone(), s.clone())) {
                    queue.push_back(WeylElement { perm: p, signs: s, word: Vec::new() });
                }
            }
            out.push(w);
        }
        out
    }

    /// All of `W`, ordered by length and then by word. Memoized.
    pub fn weyl_group(&self) -> Arc<Vec<WeylElement>> {
        let mut guard = WEYL_MEMO.lock().unwrap_or_else(|e| e.into_inner());
        let memo = guard.get_or_insert_with(HashMap::new);
        if let Some(hit) = memo.get(self) {
            return hit.clone();
        }
        let gens: Vec<usize> = (1..=self.rank).collect();
        let mut all: Vec<WeylElement> =
            self.generate(&gens).into_iter().map(|w| self.element(w.perm, w.signs)).collect();
        all.sort_by(|a, b| a.word.len().cmp(&b.word.len()).then_with(|| a.word.cmp(&b.word)));
        let all = Arc::new(all);
        memo.insert(*self, all.clone());
        all
    }

    pub fn root_poly(&self, root: &[i64]) -> SparsePoly {
        SparsePoly::linear(self.vars(), root)
    }
}

/// `∂_j P = (P - s_j P) / α_j`.
pub fn divided_difference(rs: &RootSystem, j: usize, p: &SparsePoly) -> Result<SparsePoly> {
    if !(1..=rs.rank).contains(&j) {
        return Err(Error::InvalidArgument(format!("simple index {j} out of range 1..={}", rs.rank)));
    }
    let num = p - &rs.simple_reflection(j).act(p);
    if num.is_zero() {
        return Ok(num);
    }
    num.div_exact(&rs.root_poly(&rs.simple_root(j)))
        .map_err(|_| Error::InexactDivision(format!("∂_{j} of {p} left a remainder")))
}

/// `∂_w = ∂_{j_1} ∘ ⋯ ∘ ∂_{j_l}` for `w = s_{j_1} ⋯ s_{j_l}`, so the last
/// letter acts first.
pub fn divided_difference_word(rs: &RootSystem, word: &[usize], p: &SparsePoly) -> Result<SparsePoly> {
    word.iter().rev().try_fold(p.clone(), |acc, &j| divided_difference(rs, j, &acc))
}

#[derive(Serialize, Deserialize)]
struct OrbitJson {
    family: Family,
    rank: usize,
    #[serde(rename = "J")]
    j: Vec<usize>,
}

/// A (partial) coadjoint orbit: a root system and the simple roots `J` whose
/// hyperplanes contain the base point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitSpec {
    pub root_system: RootSystem,
    pub j: Vec<usize>,
    /// `R⁺ ∖ ⟨J⟩`.
    pub complement: Vec<Vec<i64>>,
    /// Minimal-length representatives of `W/W_J`.
    pub cosets: Vec<WeylElement>,
    /// Representative of the longest coset.
    pub longest: WeylElement,
    pub parabolic_order: usize,
}

impl OrbitSpec {
    pub fn new(root_system: RootSystem, j: &[usize]) -> Result<Self> {
        let rs = root_system;
        let j: Vec<usize> = j.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        if let Some(bad) = j.iter().find(|&&x| !(1..=rs.rank).contains(&x)) {
            return Err(Error::InvalidArgument(format!("J contains {bad}, outside 1..={}", rs.rank)));
        }
        let wj = rs.generate(&j);
        let span: BTreeSet<Vec<i64>> = wj
            .iter()
            .flat_map(|w| j.iter().map(move |&a| w.apply_root(&rs.simple_root(a))))
            .filter(|r| is_positive(r))
            .collect();
        let complement: Vec<Vec<i64>> = rs.positive_roots().into_iter().filter(|r| !span.contains(r)).collect();
        let cosets: Vec<WeylElement> = rs
            .weyl_group()
            .iter()
            .filter(|w| {
                j.iter().all(|&a| {
                    let (p, s) = w.compose_raw(&rs.reflection_raw(a));
                    rs.length_of(&WeylElement { perm: p, signs: s, word: Vec::new() }) > w.length()
                })
            })
            .cloned()
            .collect();
        let longest = cosets.iter().max_by_key(|w| w.length()).cloned().expect("identity is always a representative");
        Ok(OrbitSpec { root_system: rs, j, complement, cosets, longest, parabolic_order: wj.len() })
    }

    /// `CP^n` as the orbit of type `A_n` with `J = {α_2, …, α_n}`.
    pub fn projective_space(n: usize) -> Result<Self> {
        Self::new(RootSystem::new(Family::A, n)?, &(2..=n).collect::<Vec<_>>())
    }

    /// The Grassmannian of oriented 2-planes in `R^{2m+1}`: type `B_m`, `J = {α_2, …, α_m}`.
    pub fn oriented_grassmannian(m: usize) -> Result<Self> {
        Self::new(RootSystem::new(Family::B, m)?, &(2..=m).collect::<Vec<_>>())
    }

    /// Half the real dimension, `|R⁺ ∖ ⟨J⟩|`.
    pub fn n(&self) -> usize {
        self.complement.len()
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: OrbitJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::new(RootSystem::new(j.family, j.rank)?, &j.j)
    }

    pub fn to_json(&self) -> String {
        let j = OrbitJson { family: self.root_system.family, rank: self.root_system.rank, j: self.j.clone() };
        serde_json::to_string(&j).expect("orbit serializes")
    }
}

/// `∂_{w̄} m_I(R⁺ ∖ ⟨J⟩)`, a polynomial of degree `|I| - n` in the ambient coordinates.
pub fn q_i_via_divided_diff(orbit: &OrbitSpec, partition: &Partition) -> Result<SparsePoly> {
    let rs = &orbit.root_system;
    let n = orbit.n();
    if partition.len() > n {
        return Ok(SparsePoly::zero(rs.vars()));
    }
    let m = monomial_sym_poly(partition, SparsePoly::indexed_vars("y", n))?;
    let roots: Vec<SparsePoly> = orbit.complement.iter().map(|r| rs.root_poly(r)).collect();
    divided_difference_word(rs, orbit.longest.word(), &m.substitute(&roots))
}

fn pairing(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// One fixed point per coset `[w]`, with weights `⟨w(α), ξ⟩` for `α ∈ R⁺ ∖ ⟨J⟩`.
pub fn orbit_fixed_points(orbit: &OrbitSpec, xi: &[i64]) -> Result<FixedPointData> {
    let rs = &orbit.root_system;
    if xi.len() != rs.dim() {
        return Err(Error::LengthMismatch { expected: rs.dim(), got: xi.len() });
    }
    let mut points = Vec::with_capacity(orbit.cosets.len());
    for (c, w) in orbit.cosets.iter().enumerate() {
        let mut weights = Vec::with_capacity(orbit.n());
        for alpha in &orbit.complement {
            let image = w.apply_root(alpha);
            let p = pairing(&image, xi);
            if p == 0 {
                return Err(Error::NonGenericDirection { coset: c, root: render_root(&image) });
            }
            weights.push(p);
        }
        points.push(FixedPoint { label: Some(w.to_string()), weights });
    }
    let fpd = FixedPointData { n: orbit.n(), points, asserted_index: None };
    fpd.validate()?;
    Ok(fpd)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrosscheckReport {
    pub partition: Partition,
    pub divided_difference: Rational,
    pub localization: Rational,
}

impl CrosscheckReport {
    pub fn passed(&self) -> bool {
        self.divided_difference == self.localization
    }
}

/// Compares the divided-difference value at `x = ξ` with the localization sum.
pub fn crosscheck_qi(orbit: &OrbitSpec, partition: &Partition, xi: &[i64]) -> Result<CrosscheckReport> {
    let fpd = orbit_fixed_points(orbit, xi)?;
    let values: Vec<Rational> = xi.iter().map(|&v| int(v)).collect();
    Ok(CrosscheckReport {
        partition: partition.clone(),
        divided_difference: q_i_via_divided_diff(orbit, partition)?.eval(&values),
        localization: relation_coefficient(&fpd, partition)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localization::cpn_fixed_points;
    use crate::symfunc::partitions_at_most;

    fn part(p: &[u32]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn positive_roots_and_group_orders() {
        let b2 = RootSystem::new(Family::B, 2).unwrap();
        assert_eq!(b2.positive_roots(), vec![vec![1, -1], vec![1, 1], vec![1, 0], vec![0, 1]]);
        assert_eq!(RootSystem::new(Family::A, 2).unwrap().positive_roots().len(), 3);
        assert_eq!(b2.simple_roots(), vec![vec![1, -1], vec![0, 1]]);
        for (fam, r, order) in [(Family::A, 1, 2), (Family::A, 3, 24), (Family::B, 2, 8), (Family::B, 3, 48)] {
            assert_eq!(RootSystem::new(fam, r).unwrap().weyl_group().len(), order);
        }
    }

    #[test]
    fn words_reproduce_elements() {
        for rs in [RootSystem::new(Family::A, 3).unwrap(), RootSystem::new(Family::B, 3).unwrap()] {
            for w in rs.weyl_group().iter() {
                let rebuilt = rs.from_word(w.word()).unwrap();
                assert_eq!((rebuilt.perm(), rebuilt.signs()), (w.perm(), w.signs()));
                assert_eq!(rs.length_of(w), w.length());
            }
        }
    }

    #[test]
    fn divided_difference_examples() {
        let a1 = RootSystem::new(Family::A, 1).unwrap();
        let x1 = SparsePoly::var(a1.vars(), 0);
        assert_eq!(divided_difference(&a1, 1, &x1).unwrap().as_constant(), Some(int(1)));
        let sq = divided_difference(&a1, 1, &x1.pow(2)).unwrap();
        assert_eq!(sq, &x1 + &SparsePoly::var(a1.vars(), 1));
        let sym = &x1 + &SparsePoly::var(a1.vars(), 1);
        assert!(divided_difference(&a1, 1, &sym).unwrap().is_zero());
    }

    #[test]
    fn orbit_shapes_and_reference_words() {
        let cp3 = OrbitSpec::projective_space(3).unwrap();
        assert_eq!(cp3.n(), 3);
        assert_eq!(cp3.complement, vec![vec![1, -1, 0, 0], vec![1, 0, -1, 0], vec![1, 0, 0, -1]]);
        assert_eq!(cp3.cosets.len(), 4);
        assert_eq!(cp3.longest.word(), &[3, 2, 1]);
        for m in [2, 3] {
            let gr = OrbitSpec::oriented_grassmannian(m).unwrap();
            assert_eq!(gr.n(), 2 * m - 1);
            assert_eq!(gr.longest.length(), gr.n());
            assert_eq!(gr.cosets.len() * gr.parabolic_order, gr.root_system.weyl_group().len());
            let expected: Vec<usize> = (1..m).chain([m]).chain((1..m).rev()).collect();
            let reference = gr.root_system.from_word(&expected).unwrap();
            assert_eq!((reference.perm(), reference.signs()), (gr.longest.perm(), gr.longest.signs()));
        }
    }

    #[test]
    fn projective_orbit_matches_direct_fixed_points() {
        let w = [2, 5, 11];
        let orbit = OrbitSpec::projective_space(3).unwrap();
        let xi = [0, -w[0], -w[1], -w[2]];
        let a = orbit_fixed_points(&orbit, &xi).unwrap();
        let b = cpn_fixed_points(3, &w).unwrap();
        assert_eq!(a.canonical_weights(), b.canonical_weights());
        assert!(matches!(orbit_fixed_points(&orbit, &[0, 1, 1, 2]), Err(Error::NonGenericDirection { .. })));
    }

    #[test]
    fn small_crosschecks() {
        let cp1 = OrbitSpec::projective_space(1).unwrap();
        assert_eq!(q_i_via_divided_diff(&cp1, &part(&[1])).unwrap().as_constant(), Some(int(2)));
        let gr5 = OrbitSpec::oriented_grassmannian(2).unwrap();
        assert_eq!(orbit_fixed_points(&gr5, &[3, 1]).unwrap().num_points(), 4);
        for k in 1..=5 {
            for p in partitions_at_most(k, gr5.n()) {
                let r = crosscheck_qi(&gr5, &p, &[3, 1]).unwrap();
                assert!(r.passed(), "{p}: {} vs {}", r.divided_difference, r.localization);
            }
        }
        let cp2 = OrbitSpec::projective_space(2).unwrap();
        for xi in [[0, 1, 3], [5, -2, 7]] {
            assert!(crosscheck_qi(&cp2, &part(&[2, 1]), &xi).unwrap().passed());
        }
    }
}
