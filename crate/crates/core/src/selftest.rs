//! The built-in verification suite: ten checks, each exact, each self-contained.
//!
//! Randomized checks draw from a seeded [`StdRng`], so a report can be
//! replayed from its seed.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use crate::arith::{factorial, int, Rational, UniPoly};
use crate::coadjoint::{crosscheck_qi, orbit_fixed_points, Family, OrbitSpec, RootSystem};
use crate::localization::{
    build_relation, chern_number, chern_numbers, chi_y_from_counts, cpn_fixed_points, general_relation_cpn,
    genus_qexp, hilbert_polynomial, relation_coefficient, verify_relation, DivisionOutcome, FixedPointData,
    ZeroIndexConvention,
};
use crate::modular::verify_lemma_eisenstein;
use crate::polytope::{
    betti_pattern, combinatorial_index, cube_f, h_divisibility, h_from_f, simplex_edges, simplex_f, BettiVerdict,
};
use crate::symfunc::{chi_y_power_series, f_lambda_table, genus_value, partitions_at_most, Partition};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} [{:>2}] {}: {}", self.id, self.name, self.detail)
    }
}

type Check = fn(&mut StdRng) -> Result<String, String>;

const CRITERIA: [(u8, &str, Check); 10] = [
    (1, "f_lambda tables", f_lambda_tables),
    (2, "CP^2 relations", cp2_relations),
    (3, "Q_N coefficients are Eisenstein series", lemma_eisenstein),
    (4, "chi_y and Chern numbers of CP^2", chi_y_cp2),
    (5, "Hilbert polynomials of CP^n", hilbert_suite),
    (6, "vanishing genus and relations of CP^n", rigidity_suite),
    (7, "degree vanishing", degree_vanishing),
    (8, "divided differences agree with localization", coadjoint_crosscheck),
    (9, "general CP^n identity", general_identity),
    (10, "polytope suite", polytope_suite),
];

pub fn criterion_ids() -> impl Iterator<Item = u8> {
    CRITERIA.iter().map(|c| c.0)
}

/// Runs one criterion with its own generator seeded from `seed` and the id.
pub fn run_criterion(id: u8, seed: u64) -> Option<CriterionReport> {
    let &(id, name, check) = CRITERIA.iter().find(|c| c.0 == id)?;
    let mut rng = StdRng::seed_from_u64(seed ^ (id as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let (passed, detail) = match check(&mut rng) {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Some(CriterionReport { id, name, passed, detail })
}

/// All criteria, run concurrently, reported in id order.
pub fn run_all(seed: u64) -> Vec<CriterionReport> {
    std::thread::scope(|s| {
        let handles: Vec<_> = criterion_ids().map(|id| s.spawn(move || run_criterion(id, seed))).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("criterion thread panicked").expect("known id"))
            .collect()
    })
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: crate::Error) -> String {
    e.to_string()
}

fn part(p: &[u32]) -> Partition {
    Partition::new(p.to_vec()).expect("valid partition")
}

/// Distinct nonzero integers in `[-bound, bound]`.
fn random_weights(rng: &mut StdRng, n: usize, bound: i64) -> Vec<i64> {
    let mut pool: Vec<i64> = (-bound..=bound).filter(|&w| w != 0).collect();
    pool.shuffle(rng);
    pool.truncate(n);
    pool
}

fn f_lambda_tables(_: &mut StdRng) -> Result<String, String> {
    let expected = [
        (2, &[2][..], "-1/6 - 4*q - 4*q^2 - 16*q^3 - 4*q^4 - 24*q^5 + O(q^6)"),
        (2, &[1, 1][..], "1/12 + 2*q + 2*q^2 + 8*q^3 + 2*q^4 + 12*q^5 + O(q^6)"),
        (3, &[2][..], "-1/4 - 3*q - 9*q^2 - 3*q^3 - 21*q^4 - 18*q^5 + O(q^6)"),
        (3, &[1, 1][..], "1/12 + q + 3*q^2 + q^3 + 7*q^4 + 6*q^5 + O(q^6)"),
    ];
    for level in [2u32, 3] {
        let table = f_lambda_table(level, 2, 6).map_err(err)?;
        for (l, p, want) in expected.iter().filter(|e| e.0 == level) {
            let got = table.get(&part(p)).map(|s| s.to_string()).unwrap_or_default();
            ensure(&got == want, || format!("N={l} f_{}: got {got}, want {want}", part(p)))?;
        }
        if level == 3 {
            // CP^2 has C_[2] = 3, C_[1,1] = 9 and index 3, so its level-3 genus vanishes.
            let s = table[&part(&[2])].scale_by(&int(3)).try_add(&table[&part(&[1, 1])].scale_by(&int(9))).map_err(err)?;
            ensure(s.is_zero(), || format!("3 f_[2] + 9 f_[1,1] = {s}"))?;
        }
    }
    Ok("4 series through q^5 match; 3 f_[2] + 9 f_[1,1] = 0 at N=3".into())
}

fn cp2_relations(_: &mut StdRng) -> Result<String, String> {
    let expected = [
        (4, "4*G[1,3]*G[3,3] + G[2,3]^2 + 5*G[4,3] = 0"),
        (5, "-G[2,3]*G[3,3] + G[5,3] = 0"),
        (6, "4*G[1,3]*G[5,3] + 2*G[2,3]*G[4,3] + G[3,3]^2 + 7*G[6,3] = 0"),
        (7, "-G[2,3]*G[5,3] - G[3,3]*G[4,3] + 2*G[7,3] = 0"),
    ];
    let (x, y) = (1, 3);
    let fpd = FixedPointData::from_weights(2, vec![vec![x, y], vec![-x, y - x], vec![-y, x - y]]).map_err(err)?;
    for (k, want) in expected {
        let rel = build_relation(&fpd, 3, k).map_err(err)?;
        let got = rel.primitive().to_string();
        ensure(got == want, || format!("k={k}: got {got}"))?;
        let check = verify_relation(&rel, 21).map_err(err)?;
        ensure(check.passed(), || format!("k={k}: residual {}", check.residual))?;
    }
    Ok("k=4..7 reproduced, residuals zero through q^20".into())
}

fn lemma_eisenstein(_: &mut StdRng) -> Result<String, String> {
    for level in [2u32, 3, 4] {
        let rep = verify_lemma_eisenstein(level, 6, 11).map_err(err)?;
        ensure(rep.passed(), || format!("N={level}: {:?}", rep.mismatch))?;
    }
    Ok("k<=6, N in {2,3,4}, through q^10".into())
}

fn chi_y_cp2(_: &mut StdRng) -> Result<String, String> {
    let fpd = cpn_fixed_points(2, &[1, 2]).map_err(err)?;
    let c11 = chern_number(&fpd, &part(&[1, 1])).map_err(err)?;
    let c2 = chern_number(&fpd, &part(&[2])).map_err(err)?;
    ensure(c11 == int(9) && c2 == int(3), || format!("C_[1,1] = {c11}, C_[2] = {c2}"))?;
    let want = UniPoly::from_ints('y', &[1, -1, 1]);
    let counts = chi_y_from_counts(&fpd).map_err(err)?;
    let genus = genus_value(&chi_y_power_series(2), &chern_numbers(&fpd).map_err(err)?, 2).map_err(err)?;
    ensure(counts == want, || format!("counts give {counts}"))?;
    ensure(genus == want, || format!("genus machinery gives {genus}"))?;
    let euler = counts.eval(&int(-1));
    ensure(euler == int(fpd.num_points() as i64), || format!("chi_(-1) = {euler}"))?;
    Ok(format!("C = 9, 3; chi_y = {want} both ways; chi_(-1) = 3"))
}

/// `(-1)^n/(m!(n-m)!) · Π_{i≤n-m}(x-i) · Π_{i≤m}(x+i)`.
fn hilbert_closed_form(n: usize, m: usize) -> UniPoly {
    let mut roots: Vec<Rational> = (1..=(n - m) as i64).map(int).collect();
    roots.extend((1..=m as i64).map(|i| int(-i)));
    let sign = if n.is_multiple_of(2) { 1 } else { -1 };
    let c = Rational::new(sign.into(), factorial(m as u64) * factorial((n - m) as u64));
    UniPoly::from_roots('x', &roots).scale_by(&c)
}

fn hilbert_suite(rng: &mut StdRng) -> Result<String, String> {
    for n in 1..=4usize {
        let w = random_weights(rng, n, 9);
        let fpd = cpn_fixed_points(n, &w).map_err(err)?;
        let hs: Vec<UniPoly> = (0..=n)
            .map(|m| hilbert_polynomial(&fpd, n as u32 + 1, m).map(|h| h.polynomial))
            .collect::<crate::Result<_>>()
            .map_err(err)?;
        let mut alt = UniPoly::zero('x');
        for (m, h) in hs.iter().enumerate() {
            ensure(*h == hilbert_closed_form(n, m), || format!("n={n} m={m} weights {w:?}: H = {h}"))?;
            let sign = if m % 2 == 0 { 1 } else { -1 };
            ensure(h.eval(&Rational::zero()) == int(sign), || format!("n={n} m={m}: H(0) = {}", h.eval(&Rational::zero())))?;
            let mirrored = hs[n - m].reflect().scale_by(&int(if n % 2 == 0 { 1 } else { -1 }));
            ensure(*h == mirrored, || format!("n={n} m={m}: symmetry fails"))?;
            alt = alt.add_poly(&h.scale_by(&int(sign)));
        }
        ensure(alt == UniPoly::constant('x', int(n as i64 + 1)), || format!("n={n}: alternating sum {alt}"))?;
    }
    Ok("n<=4: closed form, H_m(0), symmetry, alternating sum".into())
}

fn rigidity_suite(rng: &mut StdRng) -> Result<String, String> {
    let mut checked = 0;
    for n in 1..=4usize {
        let levels: Vec<u32> = (2..=n as u32 + 1).filter(|l| (n as u32 + 1).is_multiple_of(*l)).collect();
        let mut seen = BTreeSet::new();
        while seen.len() < 3 {
            let w = random_weights(rng, n, 9);
            let mut key = w.clone();
            key.sort_unstable();
            if !seen.insert(key) {
                continue;
            }
            let fpd = cpn_fixed_points(n, &w).map_err(err)?;
            for &level in &levels {
                let g = genus_qexp(&fpd, level, 16).map_err(err)?;
                ensure(g.is_zero(), || format!("CP^{n} N={level} weights {w:?}: genus {g}"))?;
                for k in n as u32 + 1..=n as u32 + 4 {
                    let rel = build_relation(&fpd, level, k).map_err(err)?;
                    let check = verify_relation(&rel, 16).map_err(err)?;
                    ensure(check.passed(), || format!("CP^{n} N={level} k={k} weights {w:?}: {rel}"))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} relations and all genera vanish through q^15 (3 weight vectors per n)"))
}

/// Fixed-point data of a random closed manifold of dimension at most 8,
/// with every weight in `[-9, 9]`.
fn random_manifold(rng: &mut StdRng) -> crate::Result<FixedPointData> {
    loop {
        let fpd = match rng.gen_range(0..4) {
            0 => {
                let n = rng.gen_range(1..=4);
                cpn_fixed_points(n, &random_weights(rng, n, 4))?
            }
            1 => {
                let a = rng.gen_range(1..=2);
                let b = rng.gen_range(1..=4 - a);
                cpn_fixed_points(a, &random_weights(rng, a, 4))?.product(&cpn_fixed_points(b, &random_weights(rng, b, 4))?)?
            }
            2 => {
                let (rs, j): (RootSystem, &[usize]) = match rng.gen_range(0..4) {
                    0 => (RootSystem::new(Family::A, 2)?, &[]),
                    1 => (RootSystem::new(Family::B, 2)?, &[]),
                    2 => (RootSystem::new(Family::B, 2)?, &[1]),
                    _ => (RootSystem::new(Family::B, 2)?, &[2]),
                };
                let orbit = OrbitSpec::new(rs, j)?;
                let xi: Vec<i64> = (0..rs.dim()).map(|_| rng.gen_range(-3..=3)).collect();
                match orbit_fixed_points(&orbit, &xi) {
                    Ok(f) => f,
                    Err(_) => continue,
                }
            }
            _ => {
                let orbit = OrbitSpec::new(RootSystem::new(Family::A, 2)?, &[])?;
                let xi: Vec<i64> = (0..3).map(|_| rng.gen_range(-2..=2)).collect();
                match orbit_fixed_points(&orbit, &xi) {
                    Ok(f) => f.product(&cpn_fixed_points(1, &random_weights(rng, 1, 4))?)?,
                    Err(_) => continue,
                }
            }
        };
        if fpd.n <= 4 && fpd.points.iter().flat_map(|p| &p.weights).all(|w| w.abs() <= 9) {
            return Ok(fpd);
        }
    }
}

fn degree_vanishing(rng: &mut StdRng) -> Result<String, String> {
    let mut checked = 0;
    for trial in 0..50 {
        let fpd = random_manifold(rng).map_err(err)?;
        for k in 0..fpd.n as u32 {
            for p in partitions_at_most(k, fpd.n) {
                let q = relation_coefficient(&fpd, &p).map_err(err)?;
                ensure(q.is_zero(), || format!("instance {trial} {:?}: q_{p} = {q}", fpd.canonical_weights()))?;
                checked += 1;
            }
        }
        for p in partitions_at_most(fpd.n as u32, fpd.n) {
            let q = relation_coefficient(&fpd, &p).map_err(err)?;
            ensure(q.is_integer(), || format!("instance {trial}: q_{p} = {q} is not an integer"))?;
        }
    }
    Ok(format!("50 random manifold models, {checked} coefficients with |I| < n all zero"))
}

fn generic_direction(rng: &mut StdRng, orbit: &OrbitSpec, bound: i64) -> Vec<i64> {
    loop {
        let xi: Vec<i64> = (0..orbit.root_system.dim()).map(|_| rng.gen_range(-bound..=bound)).collect();
        if orbit_fixed_points(orbit, &xi).is_ok() {
            return xi;
        }
    }
}

fn coadjoint_crosscheck(rng: &mut StdRng) -> Result<String, String> {
    let mut orbits = Vec::new();
    for n in 1..=3 {
        orbits.push((format!("CP^{n}"), OrbitSpec::projective_space(n).map_err(err)?));
    }
    orbits.push(("Gr2+(R^5)".into(), OrbitSpec::oriented_grassmannian(2).map_err(err)?));
    orbits.push(("Gr2+(R^7)".into(), OrbitSpec::oriented_grassmannian(3).map_err(err)?));
    let mut checked = 0;
    for (name, orbit) in &orbits {
        let n = orbit.n() as u32;
        for _ in 0..3 {
            let xi = generic_direction(rng, orbit, 6);
            for k in n..=n + 3 {
                for p in partitions_at_most(k, orbit.n()) {
                    let r = crosscheck_qi(orbit, &p, &xi).map_err(err)?;
                    ensure(r.passed(), || {
                        format!("{name} xi={xi:?} I={p}: {} vs {}", r.divided_difference, r.localization)
                    })?;
                    checked += 1;
                }
            }
        }
    }
    for n in 1..=3 {
        let w = random_weights(rng, n, 9);
        let orbit = OrbitSpec::projective_space(n).map_err(err)?;
        let xi: Vec<i64> = std::iter::once(0).chain(w.iter().map(|v| -v)).collect();
        let a = orbit_fixed_points(&orbit, &xi).map_err(err)?;
        let b = cpn_fixed_points(n, &w).map_err(err)?;
        ensure(a.canonical_weights() == b.canonical_weights(), || format!("CP^{n} weights {w:?}: orbit data differs"))?;
    }
    Ok(format!("{checked} crosschecks over 5 orbits; A-type orbit data equals CP^n data"))
}

fn general_identity(_: &mut StdRng) -> Result<String, String> {
    let mut checked = 0;
    for (n, level) in [(1usize, 2u32), (2, 3), (3, 2), (3, 4)] {
        for k in n as u32..=n as u32 + 4 {
            let rep = general_relation_cpn(n, level, k, 16).map_err(err)?;
            ensure(rep.convention == Some(ZeroIndexConvention::GZeroIsOne), || {
                format!("n={n} N={level} k={k}: attempts {:?}", rep.attempts)
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} cases hold through q^15 with G_0 = 1"))
}

fn polytope_suite(_: &mut StdRng) -> Result<String, String> {
    for n in 1..=5 {
        let h = h_from_f(&simplex_f(n), n).map_err(err)?;
        ensure(h.iter().all(|&x| x == 1), || format!("simplex n={n}: h = {h:?}"))?;
        let idx = combinatorial_index(&simplex_edges(n, n as i64 + 1)).map_err(err)?;
        ensure(idx == n as i64 + 1, || format!("dilated simplex n={n}: index {idx}"))?;
    }
    let cube = h_from_f(&cube_f(3), 3).map_err(err)?;
    ensure(cube == vec![1, 3, 3, 1], || format!("3-cube: h = {cube:?}"))?;
    for (h, k0, q) in [(&[1, 1, 1, 1][..], 4, &[1][..]), (&[1, 3, 3, 1], 2, &[1, 2, 1]), (&[1, 2, 1], 2, &[1, 1])] {
        let got = h_divisibility(h, k0).map_err(err)?;
        ensure(got == DivisionOutcome::Quotient(UniPoly::from_ints('y', q)), || format!("h={h:?} k0={k0}: {got:?}"))?;
    }
    let cases: [(usize, u32, &[i64], BettiVerdict); 5] = [
        (3, 4, &[1, 1, 1, 1], BettiVerdict::Case { case: 1, m: None }),
        (3, 3, &[1, 2, 2, 1], BettiVerdict::Case { case: 2, m: None }),
        (4, 3, &[1, 2, 3, 2, 1], BettiVerdict::Case { case: 3, m: Some(1) }),
        (5, 4, &[1, 3, 4, 4, 3, 1], BettiVerdict::Case { case: 3, m: Some(2) }),
        (6, 4, &[1, 2, 3, 4, 3, 2, 1], BettiVerdict::Case { case: 4, m: Some(1) }),
    ];
    for (n, k0, b, want) in cases {
        let got = betti_pattern(n, k0, b);
        ensure(got == want, || format!("n={n} k0={k0} b={b:?}: {got:?}"))?;
    }
    Ok("h-vectors, divisibility, indices and Betti cases (1)-(4)".into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cheap_criteria_pass() {
        for id in [1, 4, 10] {
            let r = run_criterion(id, DEFAULT_SEED).unwrap();
            assert!(r.passed, "{r}");
        }
        assert!(run_criterion(11, 0).is_none());
    }

    #[test]
    fn random_manifolds_are_bounded() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..20 {
            let fpd = random_manifold(&mut rng).unwrap();
            assert!(fpd.n <= 4);
        }
    }
}
