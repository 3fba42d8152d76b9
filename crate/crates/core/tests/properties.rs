//! Randomized invariants, each checked against an independent computation.

use std::collections::BTreeMap;

use genus_forge::arith::{int, CyclotomicNumber, Monomial, Rational, SeriesCtx, SparsePoly, TruncSeries, UniPoly};
use genus_forge::coadjoint::{divided_difference, divided_difference_word, Family, RootSystem};
use genus_forge::localization::{
    build_relation, chern_number, chern_numbers, cpn_fixed_points, genus_qexp, relation_coefficient, DivisionOutcome,
    FixedPointData, Relation,
};
use genus_forge::modular::{q_ctx, QSeries, QSeriesJson};
use genus_forge::polytope::{f_from_h, h_divisibility, h_from_f};
use genus_forge::symfunc::{
    elementary_poly, f_lambda_table, monomial_sym_poly, monomial_to_elementary, partitions_at_most, Partition,
};
use num_traits::{One, Zero};
use proptest::prelude::*;

type RSeries = TruncSeries<Rational>;

fn cyclo(level: u32, raw: &[i64]) -> CyclotomicNumber {
    CyclotomicNumber::from_poly_coeffs(level, raw.iter().map(|&c| int(c)).collect())
}

fn cyclo_strategy() -> impl Strategy<Value = (u32, Vec<i64>, Vec<i64>, Vec<i64>)> {
    (2u32..=12).prop_flat_map(|level| {
        let v = || prop::collection::vec(-5i64..=5, 0..level as usize + 2);
        (Just(level), v(), v(), v())
    })
}

fn rseries(order: i64, coeffs: &[i64]) -> RSeries {
    let ctx = SeriesCtx::<Rational>::new("x", order, ());
    RSeries::from_coeffs(ctx, coeffs.iter().enumerate().map(|(e, &c)| (e as i64, int(c))))
}

/// Distinct nonzero weights.
fn weights(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::btree_set((-9i64..=9).prop_filter("nonzero", |w| *w != 0), n)
        .prop_map(|s| s.into_iter().collect::<Vec<_>>())
        .prop_shuffle()
}

fn cpn_strategy() -> impl Strategy<Value = FixedPointData> {
    (1usize..=3).prop_flat_map(|n| weights(n).prop_map(move |w| cpn_fixed_points(n, &w).unwrap()))
}

fn random_poly(vars: std::sync::Arc<Vec<String>>, terms: &[(Vec<u32>, i64)]) -> SparsePoly {
    let n = vars.len();
    SparsePoly::from_terms(
        vars,
        terms.iter().map(|(e, c)| (Monomial(e.iter().copied().cycle().take(n).collect()), int(*c))),
    )
}

fn poly_terms() -> impl Strategy<Value = Vec<(Vec<u32>, i64)>> {
    prop::collection::vec((prop::collection::vec(0u32..=3, 3), -4i64..=4), 0..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cyclotomic_ring_axioms((level, a, b, c) in cyclo_strategy()) {
        let (a, b, c) = (cyclo(level, &a), cyclo(level, &b), cyclo(level, &c));
        let ab = a.try_mul(&b).unwrap();
        prop_assert_eq!(&ab, &b.try_mul(&a).unwrap());
        prop_assert_eq!(ab.try_mul(&c).unwrap(), a.try_mul(&b.try_mul(&c).unwrap()).unwrap());
        let lhs = a.try_mul(&b.try_add(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, ab.try_add(&a.try_mul(&c).unwrap()).unwrap());
        prop_assert!(a.try_add(&a.negate()).unwrap().is_zero());
        if !a.is_zero() {
            let one = a.try_mul(&a.try_inverse().unwrap()).unwrap();
            prop_assert_eq!(one.as_rational(), Some(Rational::one()));
        }
        prop_assert_eq!(CyclotomicNumber::zeta_pow(level, level as i64).as_rational(), Some(Rational::one()));
    }

    #[test]
    fn series_product_is_truncated_convolution(
        order in 1i64..10,
        a in prop::collection::vec(-6i64..=6, 0..12),
        b in prop::collection::vec(-6i64..=6, 0..12),
    ) {
        let p = rseries(order, &a).try_mul(&rseries(order, &b)).unwrap();
        for e in 0..order {
            let brute: i64 = (0..=e as usize)
                .map(|i| a.get(i).copied().unwrap_or(0) * b.get(e as usize - i).copied().unwrap_or(0))
                .sum();
            prop_assert_eq!(p.coeff(e), int(brute));
        }
        prop_assert!(p.coeff(order).is_zero());
    }

    #[test]
    fn double_inversion(order in 1i64..9, c0 in prop::sample::select(vec![-3i64, -1, 1, 2, 5]), rest in prop::collection::vec(-4i64..=4, 0..9)) {
        let mut coeffs = vec![c0];
        coeffs.extend(rest);
        let s = rseries(order, &coeffs);
        let inv = s.try_inverse().unwrap();
        prop_assert_eq!(s.try_mul(&inv).unwrap(), RSeries::one(s.ctx().clone()));
        prop_assert_eq!(inv.try_inverse().unwrap(), s);
    }

    #[test]
    fn monomial_to_elementary_round_trip(k in 1u32..=6, n in 1usize..=4) {
        let xs = SparsePoly::indexed_vars("x", n);
        let es: Vec<SparsePoly> = (1..=n).map(|j| elementary_poly(j, xs.clone())).collect();
        for p in partitions_at_most(k, n) {
            let q = monomial_to_elementary(&p, n).unwrap();
            prop_assert_eq!(q.substitute(&es), monomial_sym_poly(&p, xs.clone()).unwrap());
        }
    }

    #[test]
    fn divided_differences_square_to_zero(family in prop::sample::select(vec![Family::A, Family::B]), terms in poly_terms()) {
        let rs = RootSystem::new(family, 2).unwrap();
        let p = random_poly(rs.vars(), &terms);
        for j in 1..=2 {
            let once = divided_difference(&rs, j, &p).unwrap();
            prop_assert!(divided_difference(&rs, j, &once).unwrap().is_zero());
        }
    }

    #[test]
    fn braid_words_give_the_same_operator(terms in poly_terms()) {
        let a2 = RootSystem::new(Family::A, 2).unwrap();
        let p = random_poly(a2.vars(), &terms);
        prop_assert_eq!(
            divided_difference_word(&a2, &[1, 2, 1], &p).unwrap(),
            divided_difference_word(&a2, &[2, 1, 2], &p).unwrap()
        );
        let b2 = RootSystem::new(Family::B, 2).unwrap();
        let p = random_poly(b2.vars(), &terms);
        prop_assert_eq!(
            divided_difference_word(&b2, &[1, 2, 1, 2], &p).unwrap(),
            divided_difference_word(&b2, &[2, 1, 2, 1], &p).unwrap()
        );
    }

    #[test]
    fn weyl_action_is_a_homomorphism(family in prop::sample::select(vec![Family::A, Family::B]), i in 0usize..48, j in 0usize..48, terms in poly_terms()) {
        let rs = RootSystem::new(family, 2).unwrap();
        let group = rs.weyl_group();
        let (v, w) = (&group[i % group.len()], &group[j % group.len()]);
        let p = random_poly(rs.vars(), &terms);
        prop_assert_eq!(rs.compose(v, w).act(&p), v.act(&w.act(&p)));
    }

    #[test]
    fn fixed_point_json_round_trip(fpd in cpn_strategy()) {
        prop_assert_eq!(FixedPointData::from_json(&fpd.to_json()).unwrap(), fpd);
    }

    #[test]
    fn relation_json_round_trip(w in weights(2), k in 2u32..=6) {
        let rel = build_relation(&cpn_fixed_points(2, &w).unwrap(), 3, k).unwrap();
        prop_assert_eq!(Relation::from_json(&rel.to_json()).unwrap(), rel);
    }

    #[test]
    fn qseries_json_round_trip((level, a, b, c) in cyclo_strategy()) {
        let terms = [a, b, c].iter().enumerate().map(|(e, raw)| (2 * e as i64, cyclo(level, raw))).collect::<Vec<_>>();
        let s = QSeries::from_coeffs(q_ctx(level, 6), terms);
        let json = serde_json::to_string(&QSeriesJson::from_series(&s)).unwrap();
        let back: QSeriesJson = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back.to_series().unwrap(), s);
    }

    #[test]
    fn h_and_f_vectors_invert(h in prop::collection::vec(-20i64..=20, 1..7)) {
        let n = h.len() - 1;
        let f = f_from_h(&h, n).unwrap();
        prop_assert_eq!(h_from_f(&f, n).unwrap(), h.clone());
        prop_assert_eq!(h_divisibility(&h, 1).unwrap(), DivisionOutcome::Quotient(UniPoly::from_ints('y', &h)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// Σ_I q_I G_I from fixed points equals Σ_λ f_λ C_λ from Chern numbers.
    #[test]
    fn genus_two_routes_agree(fpd in cpn_strategy(), level in 2u32..=4) {
        let chern: BTreeMap<Partition, Rational> = chern_numbers(&fpd).unwrap();
        let table = f_lambda_table(level, fpd.n, 5).unwrap();
        let mut via_chern = QSeries::zero(q_ctx(level, 5));
        for (lambda, f) in &table {
            via_chern = via_chern.try_add(&f.scale_by(&chern[lambda])).unwrap();
        }
        prop_assert_eq!(genus_qexp(&fpd, level, 5).unwrap(), via_chern);
    }

    #[test]
    fn degree_n_data_ignores_weights((n, a, b) in (1usize..=3).prop_flat_map(|n| (Just(n), weights(n), weights(n)))) {
        let (x, y) = (cpn_fixed_points(n, &a).unwrap(), cpn_fixed_points(n, &b).unwrap());
        for p in partitions_at_most(n as u32, n) {
            prop_assert_eq!(relation_coefficient(&x, &p).unwrap(), relation_coefficient(&y, &p).unwrap());
            prop_assert_eq!(chern_number(&x, &p).unwrap(), chern_number(&y, &p).unwrap());
        }
    }

    #[test]
    fn chern_numbers_are_integers(fpd in cpn_strategy(), other in cpn_strategy()) {
        let product = fpd.product(&other).unwrap();
        for (_, c) in chern_numbers(&product).unwrap() {
            prop_assert!(c.is_integer());
        }
    }
}
