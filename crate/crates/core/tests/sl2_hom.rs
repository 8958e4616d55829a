//! Hom spaces between sl2 Verma modules and finite-dimensional simples.
//!
//! Oracle: a map out of a Verma module is fixed by the image of its top
//! vector, which must be a vector of the same weight killed by E. In `L(d)`
//! the only such vectors are multiples of the top, so
//! `dim Hom(Delta(q^a), L(d)) = [a == d]`. Into `Delta(q^d)` the candidates
//! are the top and `F^{d+1} v`, so `Delta(q^{-d-2})` maps in with dimension one.

use schroq_core::fdim::build_l;
use schroq_core::pbw::Generator;
use schroq_core::verma::build_verma_sl2;
use schroq_core::wmod::{find_intertwiners_with, weight_shift, GradedVec};
use schroq_core::{Strategy, Weight};

fn hom_dim(
    src: &schroq_core::wmod::GradedWeightModule,
    dst: &schroq_core::wmod::GradedWeightModule,
) -> usize {
    match weight_shift(src, dst) {
        Some(s) => find_intertwiners_with(src, dst, s, &Generator::SL2, Strategy::default()).len(),
        None => 0,
    }
}

#[test]
fn verma_into_finite_simple() {
    for d in 0..4usize {
        let l = build_l(d);
        for a in -(d as i64) - 2..=d as i64 + 2 {
            let src = build_verma_sl2(&Weight::q_half(2 * a), 2 * d + 6);
            let expected = usize::from(a == d as i64);
            assert_eq!(hom_dim(&src, &l), expected, "a = {a}, d = {d}");
        }
    }
}

#[test]
fn the_surjection_hits_the_top() {
    let src = build_verma_sl2(&Weight::q_half(4), 8);
    let l = build_l(2);
    let maps = find_intertwiners_with(&src, &l, 0, &Generator::SL2, Strategy::Sequential);
    let image = maps[0].apply(&GradedVec::basis(0, 0)).unwrap();
    assert!(!image.is_zero());
    // F^3 v generates the kernel.
    assert!(maps[0].apply(&GradedVec::basis(6, 0)).unwrap().is_zero());
}

#[test]
fn verma_into_verma() {
    for d in 0..3i64 {
        let dst = build_verma_sl2(&Weight::q_half(2 * d), 2 * d as usize + 8);
        let lower = build_verma_sl2(&Weight::q_half(-2 * d - 4), 4);
        assert_eq!(hom_dim(&lower, &dst), 1, "d = {d}");
        let off = build_verma_sl2(&Weight::q_half(-2 * d - 6), 4);
        assert_eq!(hom_dim(&off, &dst), 0, "d = {d}");
    }
}
