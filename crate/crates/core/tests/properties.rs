use std::sync::Arc;

use proptest::prelude::*;

use qverify::borel::borel_apply;
use qverify::lpi::{BlockChain, LpiSpec};
use qverify::multisum::{BetaVec, MultiSum, MultiSumSpec, Plan, SumNode};
use qverify::partitions::{enum_set, quinvariate_vars, Overpartition, Part, SetId};
use qverify::products::{euler1, euler2, poch_finite, poch_inf, qbinom};
use qverify::series::{Monomial, Series, Term, VarSet};

const ORDER: u32 = 8;

fn vars() -> Arc<VarSet> {
    VarSet::new(&["q", "x", "y"]).unwrap()
}

fn monomial() -> impl Strategy<Value = Monomial> {
    (0u32..=ORDER, 0u32..4, 0u32..3).prop_map(|(q, x, y)| Monomial::from_exponents(&[q, x, y]).unwrap())
}

/// Random series over `{q, x, y}` with small coefficients.
fn series() -> impl Strategy<Value = Series> {
    prop::collection::vec((monomial(), -5i64..=5), 0..10).prop_map(|terms| Series::make(&vars(), ORDER, terms).unwrap())
}

/// Invertible series: constant term `+-1`, every other term of positive q-degree.
fn unit_series() -> impl Strategy<Value = Series> {
    (
        prop::bool::ANY,
        prop::collection::vec(((1u32..=ORDER, 0u32..3, 0u32..3), -4i64..=4), 0..8),
    )
        .prop_map(|(neg, rest)| {
            let v = vars();
            let lead = (v.one(), if neg { -1 } else { 1 });
            let tail = rest
                .into_iter()
                .map(|((q, x, y), c)| (Monomial::from_exponents(&[q, x, y]).unwrap(), c));
            Series::make(&v, ORDER, std::iter::once(lead).chain(tail)).unwrap()
        })
}

fn positive_term() -> impl Strategy<Value = Term> {
    ((1u32..=4, 0u32..3, 0u32..2), prop::bool::ANY)
        .prop_map(|((q, x, y), neg)| Term::new(if neg { -1 } else { 1 }, Monomial::from_exponents(&[q, x, y]).unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn ring_axioms(a in series(), b in series(), c in series()) {
        let zero = Series::zero(&vars(), ORDER);
        let one = Series::one(&vars(), ORDER);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &zero, a.clone());
        prop_assert_eq!(&a * &one, a.clone());
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&a + &(-&a), zero);
    }

    #[test]
    fn truncation_commutes_with_arithmetic(a in series(), b in series(), m in 0u32..=ORDER) {
        prop_assert_eq!((&a * &b).truncate(m).unwrap(), &a.truncate(m).unwrap() * &b.truncate(m).unwrap());
        prop_assert_eq!((&a + &b).truncate(m).unwrap(), &a.truncate(m).unwrap() + &b.truncate(m).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn invert_is_two_sided(a in unit_series()) {
        let inv = a.invert().unwrap();
        let one = Series::one(&vars(), ORDER);
        prop_assert_eq!(&a * &inv, one.clone());
        prop_assert_eq!(&inv * &a, one);
    }

    #[test]
    fn substitution_is_a_ring_map(a in series(), b in series(), s in 0u32..3, into_y in prop::bool::ANY) {
        let v = vars();
        let image = if into_y { v.parse_monomial("y").unwrap() } else { v.parse_monomial("x").unwrap() };
        let image = image.with(0, s);
        let f = |t: &Series| t.substitute("x", &image).unwrap();
        prop_assert_eq!(f(&(&a * &b)), &f(&a) * &f(&b));
        prop_assert_eq!(f(&(&a + &b)), &f(&a) + &f(&b));
    }

    #[test]
    fn product_forms_of_euler_sums(z in positive_term(), a in positive_term(), m in 1u32..=4) {
        let v = vars();
        let z = Term::new(1, z.mono);
        let one = Series::one(&v, ORDER);
        prop_assert_eq!(&euler1(&z, m, &v, ORDER).unwrap() * &poch_inf(&z, m, &v, ORDER).unwrap(), one);
        prop_assert_eq!(euler2(&z, m, &v, ORDER).unwrap(), poch_inf(&-z, m, &v, ORDER).unwrap());
        let az = Term::new(a.coeff, a.mono.mul(&z.mono));
        prop_assert_eq!(
            &qbinom(&a, &z, m, &v, ORDER).unwrap() * &poch_inf(&z, m, &v, ORDER).unwrap(),
            poch_inf(&az, m, &v, ORDER).unwrap()
        );
    }

    #[test]
    fn finite_product_recurrence(arg in positive_term(), m in 1u32..=3, n in 0u32..5) {
        let v = vars();
        let next = poch_finite(&arg, m, n + 1, &v, ORDER).unwrap();
        let factor = Series::make(
            &v,
            ORDER,
            [(v.one(), 1), (arg.mono.with(0, arg.mono.get(0) + m * n), -arg.coeff)],
        )
        .unwrap();
        prop_assert_eq!(next, &poch_finite(&arg, m, n, &v, ORDER).unwrap() * &factor);
    }

    #[test]
    fn borel_is_linear_and_commutes_with_q_powers(a in series(), b in series(), k in 0u32..3) {
        prop_assert_eq!(borel_apply(&(&a + &b)).unwrap(), &borel_apply(&a).unwrap() + &borel_apply(&b).unwrap());
        let qk = vars().one().with(0, k);
        prop_assert_eq!(
            borel_apply(&a.mul_monomial(&qk).unwrap()).unwrap(),
            borel_apply(&a).unwrap().mul_monomial(&qk).unwrap()
        );
    }
}

const H_ORDER: u32 = 14;

fn overpartition_sum() -> MultiSum {
    MultiSum::bind(MultiSumSpec::overpartition(), &quinvariate_vars()).unwrap()
}

fn beta() -> impl Strategy<Value = BetaVec> {
    prop::collection::vec(0i64..=10, 4).prop_map(BetaVec)
}

fn plan(depth: u32) -> impl Strategy<Value = Plan> {
    let leaf = Just(Plan::Leaf);
    leaf.prop_recursive(depth, 12, 2, |inner| {
        prop_oneof![
            1 => Just(Plan::Leaf),
            3 => (0usize..4, inner.clone(), inner).prop_map(|(coord, first, second)| Plan::Split {
                coord,
                first: Box::new(first),
                second: Box::new(second),
            }),
        ]
    })
}

fn sum_leaves(ms: &MultiSum, leaves: &[SumNode], order: u32) -> Series {
    leaves.iter().fold(Series::zero(ms.vars(), order), |acc, l| {
        &acc + &ms.eval_node(l, order).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn rec_step_conserves_value(b in beta(), r in 0usize..4) {
        let ms = overpartition_sum();
        // A zero coordinate would let the q-free second child appear only
        // when alpha_rr > 0, which holds for this family.
        let node = SumNode { weight: ms.vars().one(), beta: b };
        let (c1, c2) = ms.rec_step(&node, r).unwrap();
        let parent = ms.eval_node(&node, H_ORDER).unwrap();
        prop_assert_eq!(parent, &ms.eval_node(&c1, H_ORDER).unwrap() + &ms.eval_node(&c2, H_ORDER).unwrap());
    }

    #[test]
    fn expansion_trees_conserve_value(b in beta(), p in plan(6)) {
        prop_assume!(p.depth() <= 6);
        let ms = overpartition_sum();
        let leaves = ms.expand_tree(&b, &p).unwrap();
        prop_assert_eq!(ms.eval(&b, H_ORDER).unwrap(), sum_leaves(&ms, &leaves, H_ORDER));
    }

    #[test]
    fn x_shift_matches_substitution(b in beta(), s in prop::sample::select(vec![2u32, 4])) {
        let ms = overpartition_sum();
        let v = ms.vars().clone();
        let image = v.parse_monomial("x").unwrap().with(0, s);
        prop_assert_eq!(
            ms.eval(&ms.shift_beta_for_x(&b, s), H_ORDER).unwrap(),
            ms.eval(&b, H_ORDER).unwrap().substitute("x", &image).unwrap()
        );
    }

    #[test]
    fn eval_is_stable_under_truncation(b in beta(), m in 0u32..H_ORDER) {
        let ms = overpartition_sum();
        prop_assert_eq!(ms.eval(&b, H_ORDER).unwrap().truncate(m).unwrap(), ms.eval(&b, m).unwrap());
    }
}

fn chain() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..7, 0..8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn decompose_inverts_compose(raw in chain()) {
        let spec = LpiSpec::paper_spec();
        let c = BlockChain(raw);
        if let Ok(lambda) = spec.compose(&c) {
            prop_assert_eq!(spec.decompose(&lambda).unwrap(), c);
        } else {
            prop_assert!(spec.check_chain(&c).is_err());
        }
    }

    #[test]
    fn stats_add_over_disjoint_merges(a in prop::collection::btree_set(1u32..20, 0..5),
                                      b in prop::collection::btree_set(20u32..40, 0..5),
                                      over in prop::collection::vec(prop::bool::ANY, 10)) {
        let mk = |vals: &std::collections::BTreeSet<u32>, off: usize| {
            Overpartition::new(vals.iter().enumerate().map(|(i, &v)| Part { value: v, overlined: over[(i + off) % 10] }).collect()).unwrap()
        };
        let (x, y) = (mk(&a, 0), mk(&b, 5));
        prop_assert_eq!(x.merge(&y).unwrap().stats(), x.stats() + y.stats());
    }
}

#[test]
fn compose_inverts_decompose_on_a() {
    let spec = LpiSpec::paper_spec();
    for n in 0..=30 {
        for lambda in enum_set(SetId::A, n) {
            let c = spec.decompose(&lambda).unwrap();
            assert_eq!(spec.compose(&c).unwrap(), lambda);
        }
    }
}

#[test]
fn every_short_chain_round_trips() {
    let spec = LpiSpec::paper_spec();
    let chains = spec.chains(30);
    assert!(chains.len() > 100);
    for c in chains {
        let lambda = spec.compose(&c).unwrap();
        assert!(lambda.size() <= 30);
        assert_eq!(spec.decompose(&lambda).unwrap(), c);
    }
}
