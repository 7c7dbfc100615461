//! Property tests for the symmetric-function layer.

use brion_core::coxeter::{enumerate_group, twisted_involutions};
use brion_core::symfunc::{
    inv_schubert_stanley, schur_qps, IntPolynomial, InvFlavor, SchurKind, StanleyEngine, StanleyType, StrictPartition,
    SymLevel,
};
use brion_core::{Automorphism, WeylElement, WeylKind};
use proptest::prelude::*;

fn strict_partition() -> impl Strategy<Value = StrictPartition> {
    proptest::collection::btree_set(1u32..=5, 0..=3)
        .prop_map(|s| StrictPartition::new(s.into_iter().rev().collect()).expect("strict"))
}

fn group_element(kind: WeylKind) -> impl Strategy<Value = WeylElement> {
    let elements = enumerate_group(kind).expect("group");
    proptest::sample::select(elements)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn q_functions_are_symmetric_and_stable(lambda in strict_partition(), m in 1usize..=3) {
        let big = schur_qps(SchurKind::Q, &lambda, None, m + 1).unwrap();
        prop_assert!(big.is_symmetric());
        prop_assert_eq!(big.truncate(m), schur_qps(SchurKind::Q, &lambda, None, m).unwrap());
        let p = schur_qps(SchurKind::P, &lambda, None, m + 1).unwrap();
        prop_assert_eq!(p.scale(1 << lambda.len()), big);
    }

    #[test]
    fn s_functions_are_symmetric(lambda in strict_partition(), m in 1usize..=3) {
        let s = schur_qps(SchurKind::S, &lambda, None, m).unwrap();
        prop_assert!(s.is_symmetric());
        if !s.is_zero() {
            prop_assert_eq!(s.degree(), Some(lambda.size()));
        }
    }

    #[test]
    fn polynomial_text_and_json_round_trip(lambda in strict_partition(), m in 1usize..=3) {
        let q = schur_qps(SchurKind::Q, &lambda, None, m).unwrap();
        let parsed: IntPolynomial = q.to_string().parse().unwrap();
        prop_assert_eq!(parsed.extend(m.max(parsed.nvars())).truncate(m), q.clone());
        prop_assert_eq!(IntPolynomial::from_json(&q.to_json()).unwrap(), q);
    }

    #[test]
    fn type_a_stanley_symmetric_and_stable(w in group_element(WeylKind::A(4))) {
        let f3 = StanleyEngine::new(StanleyType::A, WeylKind::A(4), 3).unwrap().eval(&w).unwrap();
        let f4 = StanleyEngine::new(StanleyType::A, WeylKind::A(4), 4).unwrap().eval(&w).unwrap();
        prop_assert!(f4.is_symmetric());
        prop_assert_eq!(f4.truncate(3), f3);
    }

    #[test]
    fn type_c_and_b_stanley_symmetric_and_related(w in group_element(WeylKind::BC(4))) {
        let c = StanleyEngine::new(StanleyType::C, WeylKind::BC(4), 3).unwrap().eval(&w).unwrap();
        let b = StanleyEngine::new(StanleyType::B, WeylKind::BC(4), 3).unwrap().eval(&w).unwrap();
        prop_assert!(c.is_symmetric());
        prop_assert_eq!(b.scale(1 << w.ell0()), c);
    }

    #[test]
    fn type_d_stanley_symmetric_and_stable(w in group_element(WeylKind::D(4))) {
        let f2 = StanleyEngine::new(StanleyType::D, WeylKind::D(4), 2).unwrap().eval(&w).unwrap();
        let f3 = StanleyEngine::new(StanleyType::D, WeylKind::D(4), 3).unwrap().eval(&w).unwrap();
        prop_assert!(f3.is_symmetric());
        prop_assert_eq!(f3.truncate(2), f2);
    }
}

#[test]
fn involution_stanley_functions_are_symmetric() {
    let cases = [
        (InvFlavor::AI, WeylKind::A(3), Automorphism::Identity),
        (InvFlavor::AIII, WeylKind::A(3), Automorphism::Star),
        (InvFlavor::BI, WeylKind::BC(3), Automorphism::Identity),
        (InvFlavor::CI, WeylKind::BC(3), Automorphism::Identity),
        (InvFlavor::DI, WeylKind::D(3), Automorphism::Identity),
        (InvFlavor::DII, WeylKind::D(3), Automorphism::Diamond),
    ];
    for (flavor, kind, theta) in cases {
        for z in twisted_involutions(kind, theta).unwrap() {
            match inv_schubert_stanley(flavor, &z, 3, SymLevel::Stanley) {
                Ok(f) => assert!(f.is_symmetric() && (f.is_nonnegative() || f.is_zero()), "{flavor} {z}"),
                Err(e) => panic!("{flavor} {z}: {e}"),
            }
        }
    }
}

#[test]
fn involution_schubert_polynomials_are_positive() {
    for z in twisted_involutions(WeylKind::A(3), Automorphism::Identity).unwrap() {
        let s = inv_schubert_stanley(InvFlavor::AI, &z, 0, SymLevel::Schubert).unwrap();
        assert!(s.is_nonnegative() && !s.is_zero(), "{z}");
    }
}
