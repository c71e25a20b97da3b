use nestfock::fock::{annihilation, b2_keys, creation, pair_b1, pair_b2};
use nestfock::incidence::{derive_lambda, enumerate_incidence_pairs, h_pair, h_plus};
use nestfock::partitions::{dominance_le, enumerate_partitions, hook_product, step_length};
use nestfock::ring::{star_b1, star_tilde};
use nestfock::scalar::{factorial, ratio, Scalar};
use nestfock::symfunc::{character, m_in_p, p_in_m, schur_in_p};
use nestfock::{B2Key, Engine, FockVector, IncidencePair, Partition};
use num_traits::Zero;
use proptest::prelude::*;

fn any_partition(max: usize) -> impl Strategy<Value = Partition> {
    (0..=max).prop_flat_map(|n| {
        let all = enumerate_partitions(n);
        (0..all.len()).prop_map(move |i| all[i].clone())
    })
}

fn any_pair(max: usize) -> impl Strategy<Value = IncidencePair> {
    (0..=max).prop_flat_map(|n| {
        let all = enumerate_incidence_pairs(n);
        (0..all.len()).prop_map(move |i| all[i].clone())
    })
}

fn coeff() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| ratio(p, q))
}

/// A random homogeneous class of degree `n` in the operator basis.
fn b2_vector(n: usize) -> impl Strategy<Value = FockVector<B2Key>> {
    let keys = b2_keys(n);
    proptest::collection::vec(coeff(), keys.len())
        .prop_map(move |cs| FockVector::from_terms(keys.iter().cloned().zip(cs)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugation_is_an_involution(l in any_partition(12)) {
        let c = l.conjugate();
        prop_assert_eq!(c.size(), l.size());
        prop_assert_eq!(c.conjugate(), l.clone());
        prop_assert_eq!(hook_product(&c), hook_product(&l));
    }

    #[test]
    fn hook_length_formula_counts_tableaux(l in any_partition(9)) {
        // n!/h(λ) is the dimension χ^λ(1^n), computed independently by Murnaghan–Nakayama
        let n = l.size();
        let ones = Partition::from_parts(vec![1; n]);
        prop_assert_eq!(factorial(n) / hook_product(&l), character(&l, &ones));
    }

    #[test]
    fn key_order_extends_dominance(a in any_partition(8), b in any_partition(8)) {
        if a.size() == b.size() && dominance_le(&a, &b) {
            prop_assert!(a <= b);
        }
    }

    #[test]
    fn incidence_pairs_are_recovered_from_mu(p in any_pair(9)) {
        prop_assert_eq!(&derive_lambda(p.mu(), p.distinguished() + 1).unwrap(), p.lambda());
        prop_assert_eq!(p.mu().size(), p.lambda().size() + 1);
        prop_assert!(h_plus(&p).unwrap() > 0.into());
        prop_assert!(h_pair(&p).unwrap() > 0.into());
    }

    #[test]
    fn heisenberg_on_random_classes(v in (0usize..=4).prop_flat_map(b2_vector), p in 1usize..=4, q in 1usize..=4) {
        let ap_aq = annihilation(p, &creation(q, &v).unwrap()).unwrap();
        let aq_ap = creation(q, &annihilation(p, &v).unwrap()).unwrap();
        let expected = if p == q { v.scale(&Scalar::from_integer((p as i64).into())) } else { FockVector::zero() };
        prop_assert_eq!(&ap_aq - &aq_ap, expected);
    }

    #[test]
    fn basis_change_preserves_pairing(n in 0usize..=4, seed in any::<u64>()) {
        let e = Engine::new();
        let keys = b2_keys(n);
        let pick = |s: u64| FockVector::from_terms(
            keys.iter().enumerate().map(|(j, k)| (k.clone(), ratio(((s >> (3 * j % 60)) & 7) as i64 - 3, 1)))
        );
        let (v, w) = (pick(seed), pick(seed.rotate_left(17)));
        let lhs = pair_b1(&e.b2_to_b1(&v).unwrap(), &e.b2_to_b1(&w).unwrap()).unwrap();
        prop_assert_eq!(lhs, pair_b2(&v, &w));
        prop_assert_eq!(e.b1_to_b2(&e.b2_to_b1(&v).unwrap()).unwrap(), v);
    }

    #[test]
    fn star_tilde_is_commutative_with_unit(
        (n, v, w) in (0usize..=3).prop_flat_map(|n| (Just(n), b2_vector(n), b2_vector(n)))
    ) {
        let e = Engine::new();
        prop_assert_eq!(star_tilde(&e, &v, &w).unwrap(), star_tilde(&e, &w, &v).unwrap());
        // the sum of all fixed points with coefficient 1/((−1)^{n+1}h) is the unit of ⋆̃
        let mut unit = FockVector::zero();
        for p in enumerate_incidence_pairs(n) {
            let h = Scalar::from_integer(h_pair(&p).unwrap());
            let s = if n % 2 == 0 { -1 } else { 1 };
            unit.add_term(p, ratio(s, 1) / h);
        }
        let x = e.b2_to_b1(&v).unwrap();
        prop_assert_eq!(star_b1(&x, &unit, n).unwrap(), x);
    }
}

#[test]
fn incidence_pairs_count_step_lengths() {
    for n in 0..=10 {
        let expected: usize = enumerate_partitions(n + 1).iter().map(step_length).sum();
        assert_eq!(enumerate_incidence_pairs(n).len(), expected);
    }
}

#[test]
fn monomial_and_power_sum_transitions_are_inverse() {
    for n in 0..=7 {
        for l in enumerate_partitions(n) {
            let back = p_in_m(&l).iter().fold(FockVector::zero(), |mut acc, (m, c)| {
                acc.add_scaled(&m_in_p(m).0, c);
                acc
            });
            assert_eq!(back, FockVector::basis(l.clone()), "p_{l}");
        }
    }
}

#[test]
fn schur_functions_are_orthonormal() {
    for n in 0..=7 {
        let keys = enumerate_partitions(n);
        for a in &keys {
            for b in &keys {
                let s = schur_in_p(a).hall(&schur_in_p(b));
                let want = if a == b {
                    Scalar::from_integer(1.into())
                } else {
                    Scalar::zero()
                };
                assert_eq!(s, want, "{a} / {b}");
            }
        }
    }
}
