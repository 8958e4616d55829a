use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::exec::Strategy;
use crate::linalg::span_basis;
use crate::scalars::Weight;
use crate::verma::build_verma;
use crate::wmod::{find_intertwiners_with, joint_kernel};

fn rep(dims: &[usize], a: &[&[i64]], b: &[&[i64]]) -> QuiverRep {
    let mats = |ms: &[&[i64]], tr: bool| -> Vec<Matrix> {
        ms.iter()
            .enumerate()
            .map(|(i, e)| {
                let (r, c) = if tr {
                    (dims[i], dims[i + 1])
                } else {
                    (dims[i + 1], dims[i])
                };
                Matrix::from_ints(r, c, e)
            })
            .collect()
    };
    QuiverRep::new(
        dims.to_vec(),
        mats(a, false),
        mats(b, true),
        Field::Rationals,
    )
    .unwrap()
}

fn samples() -> Vec<QuiverRep> {
    random_reps(7, 12, 3, 5, Field::Rationals, Strategy::default())
}

#[test]
fn simple_sl2_modules() {
    let l0 = build_l(0);
    assert_eq!(l0.dims(), &[1]);
    assert!(l0.apply_basis(Generator::E, 0, 0).unwrap().is_zero());
    assert_eq!(l0.top_weight(), &Weight::q_half(0));
    // On span{X, Y}: v = X, Fv = Y, so K X = qX, F X = Y, E Y = X.
    let l1 = build_l(1);
    assert_eq!(
        l1.apply_basis(Generator::K, 0, 0).unwrap().vec.get(0),
        Scalar::q()
    );
    assert_eq!(
        l1.apply_basis(Generator::F, 0, 0).unwrap(),
        GradedVec::basis(2, 0)
    );
    assert_eq!(
        l1.apply_basis(Generator::E, 2, 0).unwrap(),
        GradedVec::basis(0, 0)
    );
    assert_eq!(build_l(4).total_dim(), 5);
}

#[test]
fn quiver_check_examples() {
    assert!(quiver_relation_check(&rep(&[1, 1], &[&[1]], &[&[0]])).all_passed());
    let bad = quiver_relation_check(&rep(&[1, 1], &[&[1]], &[&[1]]));
    assert!(!bad.results[0].passed);
    assert_eq!(bad.results[0].name, "b0a0 = 0");
    assert!(bad.results[0].witness.is_some());
    assert!(quiver_relation_check(&rep(&[1, 1, 1], &[&[1], &[1]], &[&[0], &[0]])).all_passed());
    // a_1 b_1 must vanish at the last vertex.
    assert!(!quiver_relation_check(&rep(&[0, 1, 1], &[&[], &[1]], &[&[], &[1]])).all_passed());
}

#[test]
fn quiver_json_round_trip() {
    for r in samples() {
        let back = QuiverRep::from_json_str(&r.to_json_string()).unwrap();
        assert_eq!(back, r);
    }
    assert!(
        QuiverRep::from_json_str(r#"{"dims":[1,1],"a":[[["1"]]],"b":[],"field":"Q"}"#).is_err()
    );
}

#[test]
fn g_on_the_basic_example() {
    let v = functor_g(&rep(&[1, 1], &[&[1]], &[&[0]])).unwrap();
    let m = v.module();
    assert_eq!(v.top_exponent(), 1);
    // theta_0 (x) v_0 sits at depth 1; theta_1 (x) v_1 at 0 and theta_1 (x) F v_1 at 2.
    assert_eq!(m.label(1, 0), "t0.0*F^0v0");
    assert_eq!(
        m.apply_basis(Generator::X, 1, 0).unwrap(),
        GradedVec::basis(0, 0)
    );
    assert_eq!(
        m.apply_basis(Generator::Y, 1, 0).unwrap(),
        GradedVec::basis(2, 0)
    );
    assert!(AModule::new(m.clone()).is_ok());
}

#[test]
fn g_of_trivial_rep_is_trivial() {
    let v = functor_g(&rep(&[1], &[], &[])).unwrap();
    assert_eq!(v.module().dims(), &[1]);
    for g in [Generator::X, Generator::Y, Generator::E, Generator::F] {
        assert!(v.module().apply_basis(g, 0, 0).unwrap().is_zero());
    }
    let f = functor_f(&v);
    assert_eq!(f.dims, vec![1]);
}

#[test]
fn g_rejects_invalid_reps() {
    assert_eq!(
        functor_g(&rep(&[1, 1], &[&[1]], &[&[1]])),
        Err(Error::RelationViolation("b0a0 = 0".into()))
    );
}

#[test]
fn amodule_validation() {
    assert!(AModule::new(build_verma(&Weight::generic(), &Scalar::zero(), 3)).is_err());
    assert!(AModule::new(build_l(3)).is_ok());
    assert!(AModule::new(crate::verma::build_simple_sl2(-1, 2)).is_err());
}

#[test]
fn g_satisfies_all_relations() {
    for r in samples() {
        let v = functor_g(&r).unwrap();
        let report = check_relations(v.module());
        assert!(report.all_passed(), "{:?}", report.failures().next());
    }
}

#[test]
fn g_over_rational_functions() {
    let reps = random_reps(3, 4, 2, 4, Field::RationalFunctions, Strategy::default());
    for r in reps {
        let v = AModule::new(functor_g(&r).unwrap().into_module()).unwrap();
        roundtrip_iso(&r).unwrap();
        assert_eq!(functor_f(&v).dims, r.trimmed().dims);
    }
}

#[test]
fn round_trip_and_multiplicities() {
    for r in samples() {
        let rt = roundtrip_iso(&r).unwrap();
        assert!(rt.image_relations_hold);
        assert!(is_morphism(&rt.iso, &r.trimmed(), &rt.image));
        let v = functor_g(&r).unwrap();
        let mult = multiplicities(&v, Strategy::default());
        let t = r.trimmed();
        for (i, d) in mult.iter().enumerate() {
            assert_eq!(*d, t.dim(i), "vertex {i} of {:?}", t.dims);
        }
    }
}

#[test]
fn natural_iso_is_an_isomorphism() {
    for r in samples() {
        let iso = natural_iso(&r).unwrap();
        let image = functor_f(&functor_g(&r).unwrap());
        assert!(is_morphism(&iso, &r.trimmed(), &image));
        assert!(iso.iter().all(|m| m.rows() == 0 || m.inverse().is_some()));
    }
}

#[test]
fn roundtrip_of_zero_rep() {
    let rt = roundtrip_iso(&QuiverRep::zero()).unwrap();
    assert_eq!(rt.image.total_dim(), 0);
    assert!(rt.iso.iter().all(|m| m.rows() == 0));
}

#[test]
fn functoriality() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for r in samples().into_iter().take(6) {
        let r = r.trimmed();
        let g = random_morphism(&r, &r, &mut rng);
        let v = functor_g(&r).unwrap();
        let gg = functor_g_morphism(&g, &r, &r).unwrap();
        assert!(gg.commutes_with(v.module(), v.module(), &Generator::ALL));
        // F(G(g)) is g transported along the natural isomorphism.
        let iso = natural_iso(&r).unwrap();
        let fg = functor_f_morphism(&gg, &v, &v).unwrap();
        for i in 0..r.dims.len() {
            assert_eq!(fg[i].mul(&iso[i]), iso[i].mul(&g[i]));
        }
    }
}

#[test]
fn functor_g_morphism_between_different_tops() {
    // The inclusion of the vertex-0 part: rep (1) -> rep (1, 1) with b0 = 0.
    let small = rep(&[1], &[], &[]);
    let big = rep(&[1, 1], &[&[0]], &[&[1]]);
    let g = vec![Matrix::identity(1)];
    assert!(is_morphism(&g, &small, &big));
    let map = functor_g_morphism(&g, &small, &big).unwrap();
    assert_eq!(map.shift, 1);
    let (s, b) = (functor_g(&small).unwrap(), functor_g(&big).unwrap());
    assert!(map.commutes_with(s.module(), b.module(), &Generator::ALL));
    assert!(functor_g_morphism(&[Matrix::identity(1)], &big, &small).is_err());
}

#[test]
fn clebsch_gordan_embeddings() {
    for i in 1..=6 {
        let cg = cg_embeddings(i);
        let m = &cg.tensor.module;
        let top = GradedVec::new(0, cg.top.clone());
        let lower = GradedVec::new(2, cg.lower.clone().unwrap());
        assert!(m.apply_gen(Generator::E, &top).unwrap().is_zero());
        assert!(m.apply_gen(Generator::E, &lower).unwrap().is_zero());
        assert_eq!(m.weight_at(0), Weight::q_half(2 * (i as i64 + 1)));
        assert_eq!(m.weight_at(2), Weight::q_half(2 * (i as i64 - 1)));
        let (up, down) = (cg.t_up, cg.t_down.unwrap());
        assert!(up.commutes_with(&build_l(i + 1), m, &Generator::SL2));
        assert!(down.commutes_with(&build_l(i - 1), m, &Generator::SL2));
        let mut images = image_vectors(&up, &build_l(i + 1), m);
        images.extend(image_vectors(&down, &build_l(i - 1), m));
        assert_eq!(images.len(), 2 * (i + 1));
        assert_eq!(span_basis(&images, m.total_dim()).rank(), 2 * (i + 1));
    }
    let cg = cg_embeddings(0);
    assert!(cg.t_down.is_none());
    assert_eq!(cg.tensor.module.total_dim(), 2);
}

#[test]
fn t_prime_zero_on_l1() {
    // [1] = 1: the vector is Y (x) v_1 - q^-1 X (x) F v_1.
    let cg = cg_embeddings(1);
    let w = cg.lower.unwrap();
    assert_eq!(w.get(cg.tensor.index(2, 0, 0, 0)), Scalar::one());
    assert_eq!(w.get(cg.tensor.index(0, 0, 2, 0)), -Scalar::q_pow(-1));
}

#[test]
fn triple_tensor_vectors_are_highest() {
    for i in 1..=4 {
        let (t, vs) = triple_tensor_vectors(i);
        for v in vs {
            let g = GradedVec::new(2, v);
            assert!(t.module.apply_gen(Generator::E, &g).unwrap().is_zero());
        }
        assert_eq!(t.module.weight_at(2), Weight::q_half(2 * i as i64));
    }
}

#[test]
fn tau_is_an_intertwiner() {
    for r in samples().into_iter().take(5) {
        let v = functor_g(&r).unwrap();
        let h = hw_bases(&v);
        for (i, basis) in h.iter().enumerate() {
            for w in basis {
                let d = v.depth_of(i as i64).unwrap();
                let theta = string_map(i, v.module(), d, w);
                assert!(theta.commutes_with(&build_l(i), v.module(), &Generator::SL2));
                let t = tau(&theta, i, &v);
                let tensor = sl2_tensor(&build_l(1), &build_l(i)).unwrap();
                assert!(t.commutes_with(&tensor.module, v.module(), &Generator::SL2));
                // tau(theta)(X (x) v) = X theta(v)
                let lhs = t
                    .apply(&GradedVec::basis(0, tensor.index(0, 0, 0, 0)))
                    .unwrap();
                let rhs = v
                    .module()
                    .apply_gen(Generator::X, &GradedVec::new(d as i64, w.clone()))
                    .unwrap();
                assert_eq!(lhs.vec, rhs.vec);
            }
        }
    }
    let v = functor_g(&rep(&[1, 1], &[&[1]], &[&[0]])).unwrap();
    let zero = GradedMap {
        shift: 1,
        blocks: vec![Some(Matrix::zeros(1, 1))],
    };
    assert!(tau(&zero, 0, &v).is_zero());
}

#[test]
fn formal_identities() {
    let checks = appendix_formal_suite(4);
    assert_eq!(checks.len(), 15 * crate::wmod::defining_relations().len());
    let bad: Vec<_> = checks.iter().filter(|c| !c.passed).collect();
    assert!(bad.is_empty(), "{bad:?}");
}

#[test]
fn hom_spaces_match_highest_weight_vectors() {
    let r = &samples()[3];
    let v = functor_g(r).unwrap();
    for (i, h) in hw_bases(&v).iter().enumerate() {
        let d = v.depth_of(i as i64).unwrap();
        assert_eq!(
            h.len(),
            joint_kernel(v.module(), d, &[Generator::E]).unwrap().len()
        );
        let maps = find_intertwiners_with(
            &build_l(i),
            v.module(),
            d as i64,
            &Generator::SL2,
            Strategy::Sequential,
        );
        assert_eq!(maps.len(), h.len());
    }
}
