//! The acceptance suite: twelve exact checks over the whole library.

use std::time::{Duration, Instant};

use schroq_core::central::{
    classify_block, hw_eigenvalue, tie_partner, tilde_c, BlockKind, BlockLabel, SimpleKind,
};
use schroq_core::fdim::{
    appendix_formal_suite, build_l, cg_embeddings, functor_g, image_vectors, multiplicities,
    quiver_relation_check, random_reps, roundtrip_iso, triple_tensor_vectors, Field, QuiverRep,
};
use schroq_core::linalg::span_basis;
use schroq_core::pbw::Generator;
use schroq_core::scalars::parse_scalar;
use schroq_core::tensorfun::{hom_bijection_check, tensor_with_b};
use schroq_core::verma::{
    build_b_tilde, build_simple_sl2, build_verma, build_verma_sl2, reducibility_verdict,
};
use schroq_core::wmod::{
    act, check_relations, defining_relations, find_intertwiners, GradedVec, GradedWeightModule,
};
use schroq_core::{Scalar, Strategy, Weight};

/// Seed of the random quiver representations used by criteria 1, 10 and 11.
pub const QUIVER_SEED: u64 = 2024;

#[derive(Clone, Debug)]
pub struct Outcome {
    pub passed: bool,
    pub detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Outcome {
        Outcome {
            passed,
            detail: detail.into(),
        }
    }
}

pub struct Criterion {
    pub id: u32,
    pub name: &'static str,
    pub tags: &'static [&'static str],
    pub run: fn() -> Outcome,
}

impl Criterion {
    /// Whether the criterion is selected by `filter`: its number, or a
    /// substring of its name or of one of its tags.
    pub fn matches(&self, filter: &str) -> bool {
        let f = filter.to_lowercase();
        f == self.id.to_string()
            || self.name.to_lowercase().contains(&f)
            || self.tags.iter().any(|t| t.contains(&f))
    }
}

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub outcome: Outcome,
    pub elapsed: Duration,
}

impl CriterionResult {
    /// One line: `[PASS] 3 centrality of C~ (...)`.
    pub fn line(&self) -> String {
        format!(
            "[{}] {:>2} {} ({})",
            if self.outcome.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.outcome.detail
        )
    }
}

pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion {
            id: 1,
            name: "relation suite",
            tags: &["relcheck", "verma", "bmod", "quiver"],
            run: relation_suite,
        },
        Criterion {
            id: 2,
            name: "B~ identity triple",
            tags: &["bmod"],
            run: b_tilde_triple,
        },
        Criterion {
            id: 3,
            name: "centrality of C~",
            tags: &["casimir", "central"],
            run: centrality,
        },
        Criterion {
            id: 4,
            name: "eigenvalue formula",
            tags: &["casimir", "central"],
            run: eigenvalue,
        },
        Criterion {
            id: 5,
            name: "tie law",
            tags: &["casimir", "central"],
            run: tie_law,
        },
        Criterion {
            id: 6,
            name: "reducibility",
            tags: &["verma", "singvec"],
            run: reducibility,
        },
        Criterion {
            id: 7,
            name: "tensor realization",
            tags: &["tensor"],
            run: tensor_realization,
        },
        Criterion {
            id: 8,
            name: "Hom bijection",
            tags: &["tensor"],
            run: hom_bijection,
        },
        Criterion {
            id: 9,
            name: "Clebsch-Gordan",
            tags: &["fdim", "cg"],
            run: clebsch_gordan,
        },
        Criterion {
            id: 10,
            name: "quiver round trip",
            tags: &["quiver", "fdim"],
            run: quiver_round_trip,
        },
        Criterion {
            id: 11,
            name: "appendix identities",
            tags: &["quiver", "fdim"],
            run: appendix,
        },
        Criterion {
            id: 12,
            name: "block classifier",
            tags: &["casimir", "central", "block"],
            run: block_table,
        },
    ]
}

/// Runs the selected criteria in order.
pub fn run(filter: Option<&str>) -> Vec<CriterionResult> {
    criteria()
        .into_iter()
        .filter(|c| filter.is_none_or(|f| c.matches(f)))
        .map(|c| {
            let start = Instant::now();
            let outcome = (c.run)();
            CriterionResult {
                id: c.id,
                name: c.name,
                outcome,
                elapsed: start.elapsed(),
            }
        })
        .collect()
}

fn quiver_samples(count: usize) -> Vec<QuiverRep> {
    random_reps(
        QUIVER_SEED,
        count,
        3,
        5,
        Field::Rationals,
        Strategy::default(),
    )
}

fn first_failure(m: &GradedWeightModule) -> Option<String> {
    check_relations(m).failures().next().map(|f| f.name.clone())
}

fn relation_suite() -> Outcome {
    let start = Instant::now();
    let z = Scalar::z();
    if let Some(f) = first_failure(&build_verma(&Weight::generic(), &z, 12)) {
        return Outcome::new(false, format!("Delta(w, z): {f}"));
    }
    let b = build_b_tilde(&z, 12).expect("z != 0");
    if let Some(f) = first_failure(&b) {
        return Outcome::new(false, format!("B~_z: {f}"));
    }
    for (k, rep) in quiver_samples(20).iter().enumerate() {
        let v = functor_g(rep).expect("random reps satisfy the relations");
        if let Some(f) = first_failure(v.module()) {
            return Outcome::new(false, format!("G(rep #{k}): {f}"));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Outcome::new(
        secs < 60.0,
        format!("Delta(w,z) and B~_z to depth 12, G(rep) for 20 reps; {secs:.1} s"),
    )
}

/// The three displayed identities on `v_i`, `i = 0..=upto`, of a module presenting `B~_z`.
pub fn b_tilde_identities(m: &GradedWeightModule, upto: usize) -> Outcome {
    let names = [
        "EF - FE = (K - K^-1)/(q - q^-1)",
        "EY = X + q^-1 YE",
        "FX = YK^-1 + XF",
    ];
    let rels = defining_relations();
    for name in names {
        let rel = rels
            .iter()
            .find(|r| r.name == name)
            .expect("known relation");
        for i in 0..=upto {
            let v = GradedVec::basis(i, 0);
            let (l, r) = (m.apply_free(&rel.lhs, &v), m.apply_free(&rel.rhs, &v));
            match (l, r) {
                (Ok(l), Ok(r)) if l == r => {}
                _ => return Outcome::new(false, format!("{name} fails on v_{i}")),
            }
        }
    }
    Outcome::new(true, format!("3 identities on v_0..v_{upto}"))
}

fn b_tilde_triple() -> Outcome {
    b_tilde_identities(&build_b_tilde(&Scalar::z(), 12).expect("z != 0"), 10)
}

fn centrality() -> Outcome {
    let bad = tilde_c().non_commuting(&Generator::ALL);
    Outcome::new(
        bad.is_empty(),
        if bad.is_empty() {
            "[C~, g] = 0 for all 7 generators".to_string()
        } else {
            format!("fails for {bad:?}")
        },
    )
}

fn eigenvalue() -> Outcome {
    let m = build_verma(&Weight::generic(), &Scalar::z(), 4);
    let out = act(&m, &tilde_c().pbw_form, &GradedVec::basis(0, 0)).expect("depth 0 stays inside");
    let want = parse_scalar("z*((q + q^2)*w + (q^-1 + q^-2)*w^-1)/(q - q^-1)^2").expect("formula");
    let got = out.get(&0).map(|v| v.get(0)).unwrap_or_else(Scalar::zero);
    let only_top = out.keys().all(|&d| d == 0) && out.get(&0).is_some_and(|v| v.nnz() == 1);
    Outcome::new(got == want && only_top, format!("C~ v_lambda = {got}"))
}

fn tie_law() -> Outcome {
    let mut checked = 0;
    for m in -12..=12i64 {
        for sign in [1, -1] {
            let l = Weight::signed_half_power(sign, m);
            for k in 0..=12 {
                // lambda^2 = q^m, so the law reads m = k - 3.
                if tie_partner(&l, k) != (m == k - 3) {
                    return Outcome::new(false, format!("lambda = {l}, k = {k}"));
                }
                checked += 1;
            }
        }
    }
    let z = Scalar::z();
    for n in 0..=4i64 {
        let l = Weight::q_half(2 * n - 1);
        let partner = Weight::q_half(-2 * n - 5);
        if !tie_partner(&l, 2 * n + 2) || hw_eigenvalue(&l, &z) != hw_eigenvalue(&partner, &z) {
            return Outcome::new(false, format!("pairing {l} <-> {partner}"));
        }
    }
    let ok = tie_partner(&Weight::q_half(-3), 0);
    Outcome::new(
        ok,
        format!("{checked} (lambda, k) pairs, 5 half-family pairs, self-pairing at q^(-3/2)"),
    )
}

fn reducibility() -> Outcome {
    let z = Scalar::z();
    for d in 0..=3i64 {
        for sign in [1, -1] {
            let l = Weight::signed_half_power(sign, 2 * d - 1);
            let v = reducibility_verdict(&l, &z, 12).expect("z != 0");
            let want = Weight::signed_half_power(sign, -2 * d - 5).to_string();
            let ok = v.singular.len() == 1
                && v.singular[0].depth == (2 * d + 2) as usize
                && v.singular[0].multiplicity == 1
                && v.singular[0].weight == want;
            if !ok {
                return Outcome::new(false, format!("Delta({l}): {:?}", v.singular));
            }
        }
    }
    let mut simple = vec![Weight::generic()];
    for n in 0..=3 {
        simple.push(Weight::signed_half_power(1, 2 * n));
        simple.push(Weight::signed_half_power(-1, 2 * n));
    }
    for l in &simple {
        let v = reducibility_verdict(l, &z, 12).expect("z != 0");
        if v.reducible {
            return Outcome::new(false, format!("Delta({l}) has {:?}", v.singular));
        }
    }
    Outcome::new(
        true,
        "8 half-integral Vermas with one singular line each, 9 simple Vermas, depth 12",
    )
}

fn tensor_realization() -> Outcome {
    let z = Scalar::z();
    for l in [Weight::generic(), Weight::q_half(-1)] {
        let n = build_verma_sl2(&l.shift_half_steps(1), 8);
        let t = tensor_with_b(&n, &z, 8).expect("z != 0");
        let maps = find_intertwiners(&build_verma(&l, &z, 8), &t.module);
        if maps.len() != 1 || !maps[0].invertible_upto(8) {
            return Outcome::new(false, format!("lambda = {l}: {} maps", maps.len()));
        }
    }
    Outcome::new(true, "Hom is 1-dim and invertible for lambda = w, q^(-1/2)")
}

fn hom_bijection() -> Outcome {
    let l = |d| build_simple_sl2(1, d);
    let pairs = vec![
        ("L(1), L(1)", l(1), l(1)),
        ("L(0), L(2)", l(0), l(2)),
        ("L(2), L(2)", l(2), l(2)),
        (
            "Delta(q^-3), Delta(q)",
            build_verma_sl2(&Weight::q_half(-6), 6),
            build_verma_sl2(&Weight::q_half(2), 10),
        ),
        (
            "Delta(w), Delta(w)",
            build_verma_sl2(&Weight::generic(), 6),
            build_verma_sl2(&Weight::generic(), 6),
        ),
        (
            "Delta(q), L(1)",
            build_verma_sl2(&Weight::q_half(2), 6),
            l(1),
        ),
    ];
    let z = Scalar::z();
    let mut dims = Vec::new();
    for (name, m, n) in &pairs {
        let r = hom_bijection_check(m, n, &z, 6).expect("z != 0");
        if !r.agrees() {
            return Outcome::new(false, format!("{name}: {} vs {}", r.sl2_dim, r.lifted_dim));
        }
        dims.push(r.sl2_dim);
    }
    Outcome::new(true, format!("6 pairs, dim Hom = {dims:?} on both sides"))
}

fn clebsch_gordan() -> Outcome {
    for i in 1..=6usize {
        let cg = cg_embeddings(i);
        let m = &cg.tensor.module;
        let lower = cg.lower.clone().expect("i >= 1");
        let killed = |depth: i64, v| {
            m.apply_gen(Generator::E, &GradedVec::new(depth, v))
                .is_ok_and(|w| w.is_zero())
        };
        let weights = m.weight_at(0) == Weight::q_half(2 * (i as i64 + 1))
            && m.weight_at(2) == Weight::q_half(2 * (i as i64 - 1));
        let down = cg.t_down.as_ref().expect("i >= 1");
        let mut images = image_vectors(&cg.t_up, &build_l(i + 1), m);
        images.extend(image_vectors(down, &build_l(i - 1), m));
        let complementary = span_basis(&images, m.total_dim()).rank() == 2 * (i + 1);
        let maps = cg.t_up.commutes_with(&build_l(i + 1), m, &Generator::SL2)
            && down.commutes_with(&build_l(i - 1), m, &Generator::SL2);
        if !(killed(0, cg.top.clone()) && killed(2, lower) && weights && complementary && maps) {
            return Outcome::new(false, format!("L(1) (x) L({i})"));
        }
    }
    for i in 1..=4 {
        let (t, vs) = triple_tensor_vectors(i);
        for v in vs {
            let e = t.module.apply_gen(Generator::E, &GradedVec::new(2, v));
            if !e.is_ok_and(|w| w.is_zero()) {
                return Outcome::new(false, format!("triple tensor, i = {i}"));
            }
        }
    }
    Outcome::new(
        true,
        "i = 1..6 embeddings, triple tensor vectors for i = 1..4",
    )
}

fn quiver_round_trip() -> Outcome {
    let reps = quiver_samples(50);
    for (k, rep) in reps.iter().enumerate() {
        let rt = match roundtrip_iso(rep) {
            Ok(rt) => rt,
            Err(e) => return Outcome::new(false, format!("rep #{k}: {e}")),
        };
        if !rt.image_relations_hold || !quiver_relation_check(&rt.image).all_passed() {
            return Outcome::new(false, format!("rep #{k}: F(G(rep)) violates the relations"));
        }
        let v = functor_g(rep).expect("valid rep");
        let mult = multiplicities(&v, Strategy::default());
        let t = rep.trimmed();
        if (0..mult.len().max(t.dims.len())).any(|i| mult.get(i).copied().unwrap_or(0) != t.dim(i))
        {
            return Outcome::new(
                false,
                format!("rep #{k}: multiplicities {mult:?} vs {:?}", t.dims),
            );
        }
    }
    Outcome::new(
        true,
        "50 reps: isomorphisms found, relations hold, multiplicities match",
    )
}

fn appendix() -> Outcome {
    let names = [
        "qYX - XY = Z",
        "EX = qXE",
        "EY = X + q^-1 YE",
        "FX = YK^-1 + XF",
        "FY = YF",
        "KXK^-1 = qX",
        "KEK^-1 = q^2 E",
        "KFK^-1 = q^-2 F",
        "KYK^-1 = q^-1 Y",
    ];
    for (k, rep) in quiver_samples(50).iter().enumerate() {
        let v = functor_g(rep).expect("valid rep");
        let report = check_relations(v.module());
        for name in names {
            if !report.get(name).is_some_and(|r| r.passed) {
                return Outcome::new(false, format!("G(rep #{k}): {name}"));
            }
        }
    }
    let formal = appendix_formal_suite(4);
    if let Some(bad) = formal.iter().find(|c| !c.passed) {
        return Outcome::new(
            false,
            format!("formal theta_{} (x) F^{} v: {}", bad.i, bad.s, bad.relation),
        );
    }
    Outcome::new(
        true,
        format!(
            "9 identities on 50 G(rep); {} formal checks for i <= 4",
            formal.len()
        ),
    )
}

struct BlockCase {
    rep: Weight,
    lambda: Weight,
    kind: BlockKind,
    simples: Vec<(Weight, SimpleKind)>,
    warning: bool,
}

fn block_cases() -> Vec<BlockCase> {
    use BlockKind::*;
    use SimpleKind::*;
    let h = Weight::q_half;
    let s = Weight::signed_half_power;
    let w = Weight::generic;
    let case = |rep: Weight, lambda: Weight, kind, simples: Vec<(Weight, SimpleKind)>, warning| {
        BlockCase {
            rep,
            lambda,
            kind,
            simples,
            warning,
        }
    };
    vec![
        case(
            h(-3),
            h(-3),
            SemisimpleOneSimple,
            vec![(h(-3), Verma)],
            false,
        ),
        case(
            h(1),
            h(1),
            TwoSimplesQuiverAB0,
            vec![(h(-7), Verma), (h(1), SimpleQuotient)],
            false,
        ),
        case(
            h(3),
            h(3),
            TwoSimplesQuiverAB0,
            vec![(h(-9), Verma), (h(3), SimpleQuotient)],
            false,
        ),
        case(
            h(1),
            h(-7),
            TwoSimplesQuiverAB0,
            vec![(h(-7), Verma), (h(1), SimpleQuotient)],
            false,
        ),
        case(
            s(-1, 1),
            s(-1, 1),
            TwoSimplesQuiverAB0,
            vec![(s(-1, -7), Verma), (s(-1, 1), SimpleQuotient)],
            false,
        ),
        case(
            h(0),
            h(0),
            TwoSimplesSplit,
            vec![(h(0), Verma), (h(-6), Verma)],
            true,
        ),
        case(
            h(0),
            h(4),
            TwoSimplesSplit,
            vec![(h(4), Verma), (h(-10), Verma)],
            true,
        ),
        case(
            s(-1, 2),
            s(-1, 2),
            TwoSimplesSplit,
            vec![(s(-1, 2), Verma), (s(-1, -8), Verma)],
            true,
        ),
        case(w(), w(), SemisimpleOneSimple, vec![(w(), Verma)], false),
        case(
            w(),
            w().shift_q(1),
            SemisimpleOneSimple,
            vec![(w().shift_q(1), Verma)],
            false,
        ),
    ]
}

fn block_table() -> Outcome {
    let z = Scalar::z();
    let cases = block_cases();
    for c in &cases {
        let label = BlockLabel {
            coset_rep: c.rep.clone(),
            c_tilde: hw_eigenvalue(&c.lambda, &z),
            z: z.clone(),
        };
        let got = match classify_block(&label) {
            Ok(b) => b,
            Err(e) => return Outcome::new(false, format!("lambda = {}: {e}", c.lambda)),
        };
        let simples: Vec<(Weight, SimpleKind)> = got
            .simples
            .iter()
            .map(|s| (s.weight.clone(), s.kind))
            .collect();
        if got.kind != c.kind || simples != c.simples || got.warnings.is_empty() == c.warning {
            return Outcome::new(false, format!("lambda = {}: got {got:?}", c.lambda));
        }
    }
    Outcome::new(
        true,
        format!(
            "{} labeled blocks; integral blocks carry the partner warning",
            cases.len()
        ),
    )
}
