use super::*;
use crate::scalar::{int, ratio};

fn pair(l: &[usize], m: &[usize]) -> IncidencePair {
    IncidencePair::new(
        Partition::from_parts(l.to_vec()),
        Partition::from_parts(m.to_vec()),
    )
    .unwrap()
}

fn b2(i: usize, nu: &[usize]) -> B2Key {
    B2Key::new(i, Partition::from_parts(nu.to_vec()))
}

fn part(v: &[usize]) -> Partition {
    Partition::from_parts(v.to_vec())
}

#[test]
fn b3_in_b2_examples() {
    let e = Engine::new();
    assert_eq!(
        e.b3_in_b2(&pair(&[], &[1])).unwrap(),
        FockVector::basis(b2(0, &[]))
    );
    assert_eq!(
        e.b3_in_b2(&pair(&[2], &[3])).unwrap(),
        FockVector::basis(b2(2, &[]))
    );
    assert_eq!(
        e.b3_in_b2(&pair(&[2], &[2, 1])).unwrap(),
        FockVector::from_terms([(b2(0, &[2]), int(1)), (b2(2, &[]), int(-1))])
    );
    assert_eq!(
        e.b3_in_b2(&pair(&[1, 1], &[2, 1])).unwrap(),
        FockVector::from_terms([(b2(1, &[1]), int(1)), (b2(2, &[]), int(-1))])
    );
    assert_eq!(
        e.b3_in_b2(&pair(&[1, 1], &[1, 1, 1])).unwrap(),
        FockVector::from_terms([
            (b2(0, &[1, 1]), ratio(1, 2)),
            (b2(0, &[2]), ratio(-1, 2)),
            (b2(1, &[1]), int(-1)),
            (b2(2, &[]), int(1)),
        ])
    );
}

#[test]
fn shared_part_choice_does_not_matter() {
    let large = Engine::new();
    let small = Engine::new().with_shared_part(SharedPart::Smallest);
    for n in 0..=7 {
        for p in enumerate_incidence_pairs(n) {
            assert_eq!(large.b3_in_b2(&p).unwrap(), small.b3_in_b2(&p).unwrap(), "{p}");
        }
    }
}

#[test]
fn gram_examples() {
    let e = Engine::new();
    assert_eq!(e.gram_b3(0).unwrap(), vec![vec![int(1)]]);
    // pair order for n = 1 is ((1),(2)), ((1),(1,1))
    assert_eq!(
        e.gram_b3(1).unwrap(),
        vec![vec![int(1), int(-1)], vec![int(-1), int(2)]]
    );
    let g = e.gram_b3(2).unwrap();
    let diag: Vec<Scalar> = (0..4).map(|j| g[j][j].clone()).collect();
    assert_eq!(diag, vec![int(1), int(3), int(2), int(3)]);
}

#[test]
fn b3_in_b1_examples() {
    let e = Engine::new();
    let m = e.b3_in_b1(1).unwrap();
    assert_eq!(
        m.row_vector::<IncidencePair>(0),
        FockVector::from_terms([
            (pair(&[1], &[2]), ratio(1, 2)),
            (pair(&[1], &[1, 1]), ratio(-1, 2))
        ])
    );
    assert_eq!(
        m.row_vector::<IncidencePair>(1),
        FockVector::basis(pair(&[1], &[1, 1]))
    );

    let m = e.b3_in_b1(2).unwrap();
    let row = |p: &IncidencePair| {
        let r = m
            .source_keys
            .iter()
            .position(|k| *k == BasisKey::Pair(p.clone()))
            .unwrap();
        m.row_vector::<IncidencePair>(r)
    };
    assert_eq!(
        row(&pair(&[2], &[2, 1])),
        FockVector::from_terms([
            (pair(&[2], &[2, 1]), ratio(1, 2)),
            (pair(&[1, 1], &[2, 1]), ratio(-1, 6)),
            (pair(&[1, 1], &[1, 1, 1]), ratio(-1, 3)),
        ])
    );
    assert_eq!(
        row(&pair(&[1, 1], &[1, 1, 1])),
        FockVector::term(pair(&[1, 1], &[1, 1, 1]), ratio(1, 2))
    );
}

#[test]
fn b2_in_b1_examples() {
    let e = Engine::new();
    let to_b1 = |k: B2Key| e.b2_to_b1(&FockVector::basis(k)).unwrap();
    assert_eq!(
        to_b1(b2(0, &[1])),
        FockVector::from_terms([
            (pair(&[1], &[2]), ratio(1, 2)),
            (pair(&[1], &[1, 1]), ratio(1, 2))
        ])
    );
    assert_eq!(
        to_b1(b2(1, &[])),
        FockVector::from_terms([
            (pair(&[1], &[2]), ratio(1, 2)),
            (pair(&[1], &[1, 1]), ratio(-1, 2))
        ])
    );
    assert_eq!(
        to_b1(b2(2, &[])),
        FockVector::from_terms([
            (pair(&[2], &[3]), ratio(1, 6)),
            (pair(&[2], &[2, 1]), ratio(-1, 6)),
            (pair(&[1, 1], &[2, 1]), ratio(-1, 6)),
            (pair(&[1, 1], &[1, 1, 1]), ratio(1, 6)),
        ])
    );
    assert_eq!(
        to_b1(b2(0, &[1, 1])),
        FockVector::from_terms([
            (pair(&[2], &[3]), ratio(1, 6)),
            (pair(&[2], &[2, 1]), ratio(1, 3)),
            (pair(&[1, 1], &[2, 1]), ratio(1, 3)),
            (pair(&[1, 1], &[1, 1, 1]), ratio(1, 6)),
        ])
    );
}

#[test]
fn round_trip_and_triangularity() {
    let e = Engine::new();
    for n in 0..=6 {
        let there = e.b2_in_b1(n).unwrap();
        let back = e.b1_in_b2(n).unwrap();
        assert!(is_identity(&mat_mul(&back.rows, &there.rows)));
        // triangularity is enforced inside the solve; check the metadata
        assert!(e.b3_in_b1(n).unwrap().triangularity.is_some());
    }
}

#[test]
fn literal_rule_is_inconsistent() {
    let e = Engine::new().with_rule(CoefficientRule::Literal);
    let failed = (0..=3).any(|n| e.b3_in_b1(n).is_err());
    assert!(failed);
}

#[test]
fn hilbert_examples() {
    let e = Engine::new();
    assert_eq!(
        e.hilb_l_in_p(&part(&[1, 1])).unwrap(),
        FockVector::from_terms([(part(&[1, 1]), ratio(1, 2)), (part(&[2]), ratio(-1, 2))])
    );
    let fixed = |l: &[usize]| e.hilb_fixed_to_p(&FockVector::basis(part(l))).unwrap();
    assert_eq!(fixed(&[1]), FockVector::basis(part(&[1])));
    assert_eq!(
        fixed(&[2]),
        FockVector::from_terms([(part(&[1, 1]), int(1)), (part(&[2]), int(1))])
    );
    assert_eq!(
        fixed(&[1, 1]),
        FockVector::from_terms([(part(&[1, 1]), int(1)), (part(&[2]), int(-1))])
    );
}

#[test]
fn cross_family_transition_is_rejected() {
    let e = Engine::new();
    assert!(e.matrix(BasisTag::B1, BasisTag::HilbP, 1).is_err());
}

#[test]
fn cache_round_trip_through_engine() {
    let dir = tempfile::tempdir().unwrap();
    let cold = Engine::new().with_cache(MatrixCache::new(dir.path()));
    let a = cold.b2_in_b1(3).unwrap();
    let warm = Engine::new().with_cache(MatrixCache::new(dir.path()));
    assert!(MatrixCache::new(dir.path())
        .load(BasisTag::B2, BasisTag::B1, 3)
        .unwrap()
        .is_some());
    assert_eq!(*warm.b2_in_b1(3).unwrap(), *a);
}

#[test]
fn b1_operators_satisfy_heisenberg_relations() {
    let e = Engine::new();
    for d in 0..=4 {
        for p in enumerate_incidence_pairs(d) {
            let v = FockVector::basis(p);
            let up = e.apply_b1(B1Op::Create(1), &v).unwrap();
            let down_up = e.apply_b1(B1Op::Annihilate(1), &up).unwrap();
            let up_down = e
                .apply_b1(B1Op::Create(1), &e.apply_b1(B1Op::Annihilate(1), &v).unwrap())
                .unwrap();
            assert_eq!(&down_up - &up_down, v);
            let tt = e
                .apply_b1(B1Op::Cotranslate, &e.apply_b1(B1Op::Translate, &v).unwrap())
                .unwrap();
            assert_eq!(tt, v);
        }
    }
}
