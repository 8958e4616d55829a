use proptest::prelude::*;

use super::*;
use crate::scalars::{qint, Scalar};

fn nf(text: &str) -> PbwElement {
    parse_expr(text).unwrap()
}

fn q(k: i64) -> Scalar {
    Scalar::q_pow(k)
}

fn mono(y: u32, f: u32, k: i32, z: u32, x: u32, e: u32) -> PbwMono {
    PbwMono { y, f, k, z, x, e }
}

fn sum(terms: &[(PbwMono, Scalar)]) -> PbwElement {
    let mut out = PbwElement::zero();
    for (m, c) in terms {
        out.add_term(*m, c);
    }
    out
}

#[test]
fn basic_normal_forms() {
    assert_eq!(
        nf("X*Y"),
        sum(&[
            (mono(1, 0, 0, 0, 1, 0), q(1)),
            (mono(0, 0, 0, 1, 0, 0), Scalar::from_int(-1))
        ])
    );
    let c = (q(1) - q(-1)).inv().unwrap();
    let ef = sum(&[
        (mono(0, 1, 0, 0, 0, 1), Scalar::one()),
        (mono(0, 0, 1, 0, 0, 0), c.clone()),
        (mono(0, 0, -1, 0, 0, 0), -c),
    ]);
    assert_eq!(nf("E*F"), ef);
    assert_eq!(nf("K*Kinv"), PbwElement::one());
    assert_eq!(nf("K^-1*K"), PbwElement::one());
    assert_eq!(nf("Z*X - X*Z"), PbwElement::zero());
}

#[test]
fn commutator_ef() {
    assert_eq!(nf("E*F - F*E"), nf("(K - Kinv)/(q - q^-1)"));
}

#[test]
fn e_times_y_squared() {
    // EY^2 = q^-2 Y^2 E + [2] Y X - Z
    let expected = sum(&[
        (mono(2, 0, 0, 0, 0, 1), q(-2)),
        (mono(1, 0, 0, 0, 1, 0), qint(2)),
        (mono(0, 0, 0, 1, 0, 0), Scalar::from_int(-1)),
    ]);
    assert_eq!(nf("E*Y^2"), expected);
}

#[test]
fn multiply_examples() {
    let y = PbwElement::generator(Generator::Y);
    let f = PbwElement::generator(Generator::F);
    assert_eq!(multiply(&y, &f), multiply(&f, &y));
    let e = PbwElement::generator(Generator::E);
    let x = PbwElement::generator(Generator::X);
    assert_eq!(
        multiply(&e, &x),
        PbwElement::monomial(mono(0, 0, 0, 0, 1, 1), q(1))
    );
    assert_eq!(multiply(&PbwElement::one(), &e), e);
}

#[test]
fn defining_relations_vanish() {
    for rel in [
        "E*F - F*E - (K - Kinv)/(q - q^-1)",
        "K*X*Kinv - q*X",
        "K*E*Kinv - q^2*E",
        "K*F*Kinv - q^-2*F",
        "K*Y*Kinv - q^-1*Y",
        "q*Y*X - X*Y - Z",
        "E*X - q*X*E",
        "E*Y - X - q^-1*Y*E",
        "F*X - Y*Kinv - X*F",
        "F*Y - Y*F",
    ] {
        assert!(nf(rel).is_zero(), "{rel} -> {}", nf(rel));
    }
}

#[test]
fn z_is_central() {
    for g in Generator::ALL {
        let text = format!("Z*{g} - {g}*Z");
        assert!(nf(&text).is_zero(), "{text}");
    }
}

#[test]
fn e_times_f_power() {
    // EF^s = F^s E + [s] F^{s-1} (q^{-(s-1)} K - q^{s-1} K^-1)/(q - q^-1)
    let c = (q(1) - q(-1)).inv().unwrap();
    for s in 1..=6u32 {
        let si = s as i64;
        let expected = sum(&[
            (mono(0, s, 0, 0, 0, 1), Scalar::one()),
            (mono(0, s - 1, 1, 0, 0, 0), &qint(si) * &q(-(si - 1)) * &c),
            (mono(0, s - 1, -1, 0, 0, 0), -(&qint(si) * &q(si - 1) * &c)),
        ]);
        assert_eq!(nf(&format!("E*F^{s}")), expected, "s = {s}");
    }
}

#[test]
fn e_times_y_power() {
    // EY^i = q^-i Y^i E + [i] Y^{i-1} X - (q^i-1)(q^{i-1}-1)/(q^{i-2}(q^2-1)(q-1)) Z Y^{i-2}
    for i in 1..=6u32 {
        let ii = i as i64;
        let mut terms = vec![
            (mono(i, 0, 0, 0, 0, 1), q(-ii)),
            (mono(i - 1, 0, 0, 0, 1, 0), qint(ii)),
        ];
        if i >= 2 {
            let num = (q(ii) - Scalar::one()) * (q(ii - 1) - Scalar::one());
            let den = q(ii - 2) * (q(2) - Scalar::one()) * (q(1) - Scalar::one());
            terms.push((mono(i - 2, 0, 0, 1, 0, 0), -(num / den)));
        }
        assert_eq!(nf(&format!("E*Y^{i}")), sum(&terms), "i = {i}");
    }
}

#[test]
fn printing_reparses() {
    for text in ["E*F*Y", "X^2*F - Y^2*E*Kinv", "K^-3*Z + 7", "(q + z)*F*E"] {
        let p = nf(text);
        assert_eq!(parse_expr(&p.to_string()).unwrap(), p, "{p}");
    }
}

#[test]
fn parse_errors() {
    assert!(parse_expr("E^-1").is_err());
    assert!(parse_expr("E/F").is_err());
    assert!(parse_expr("E * * F").is_err());
    assert!(parse_expr("G").is_err());
}

fn word_strategy(max: usize) -> impl Strategy<Value = Vec<Generator>> {
    prop::collection::vec(prop::sample::select(Generator::ALL.to_vec()), 0..=max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_is_associative(a in word_strategy(2), b in word_strategy(2), c in word_strategy(2)) {
        let na = FreeExpr::word(a).normal_form();
        let nb = FreeExpr::word(b).normal_form();
        let nc = FreeExpr::word(c).normal_form();
        prop_assert_eq!(multiply(&na, &multiply(&nb, &nc)), multiply(&multiply(&na, &nb), &nc));
    }

    #[test]
    fn normal_form_is_idempotent(w in word_strategy(6)) {
        let p = FreeExpr::word(w).normal_form();
        prop_assert_eq!(p.to_free().normal_form(), p);
    }

    #[test]
    fn splitting_a_word_anywhere_agrees(w in word_strategy(6), cut in 0usize..7) {
        let cut = cut.min(w.len());
        let whole = FreeExpr::word(w.clone()).normal_form();
        let left = FreeExpr::word(w[..cut].to_vec()).normal_form();
        let right = FreeExpr::word(w[cut..].to_vec()).normal_form();
        prop_assert_eq!(multiply(&left, &right), whole);
    }
}
