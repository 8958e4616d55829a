//! Both strategies must give identical results.

use proptest::prelude::*;
use schroq_core::fdim::{build_l, functor_g, multiplicities, random_reps, AModule, Field};
use schroq_core::pbw::Generator;
use schroq_core::verma::{build_verma_sl2, build_verma_with};
use schroq_core::wmod::{check_relations_with, defining_relations, find_intertwiners_with};
use schroq_core::{Scalar, Strategy, Weight};

fn summary(r: &schroq_core::wmod::RelationReport) -> Vec<(String, bool, usize, usize)> {
    r.results
        .iter()
        .map(|x| (x.name.clone(), x.passed, x.checked, x.skipped))
        .collect()
}

#[test]
fn relation_reports_agree() {
    let rels = defining_relations();
    let m = build_verma_with(&Weight::q_half(-3), &Scalar::z(), 7, Strategy::Sequential);
    let p = build_verma_with(&Weight::q_half(-3), &Scalar::z(), 7, Strategy::Parallel);
    assert_eq!(m.dims(), p.dims());
    for g in Generator::ALL {
        for n in 0..=m.depth() {
            assert_eq!(m.slice(g, n), p.slice(g, n));
        }
    }
    let a = check_relations_with(&m, &rels, Strategy::Sequential);
    let b = check_relations_with(&m, &rels, Strategy::Parallel);
    assert!(a.all_passed());
    assert_eq!(summary(&a), summary(&b));
}

#[test]
fn intertwiners_agree() {
    let src = build_verma_sl2(&Weight::q_half(2), 4);
    let dst = build_l(1);
    let a = find_intertwiners_with(&src, &dst, 0, &Generator::SL2, Strategy::Sequential);
    let b = find_intertwiners_with(&src, &dst, 0, &Generator::SL2, Strategy::Parallel);
    assert_eq!(a.len(), 1);
    assert_eq!(a, b);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn random_reps_do_not_depend_on_strategy(seed in any::<u64>(), count in 1usize..12) {
        let a = random_reps(seed, count, 3, 4, Field::Rationals, Strategy::Sequential);
        let b = random_reps(seed, count, 3, 4, Field::Rationals, Strategy::Parallel);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn multiplicities_do_not_depend_on_strategy(seed in any::<u64>()) {
        let rep = random_reps(seed, 1, 2, 3, Field::Rationals, Strategy::Sequential).remove(0);
        let g: AModule = functor_g(&rep).unwrap();
        prop_assert_eq!(
            multiplicities(&g, Strategy::Sequential),
            multiplicities(&g, Strategy::Parallel)
        );
    }
}
