use serde::Serialize;

use super::{GradedVec, GradedWeightModule};
use crate::error::Error;
use crate::exec::Strategy;
use crate::pbw::{parse_word_expr, FreeExpr};

/// An identity `lhs = rhs` between sums of words.
#[derive(Clone, Debug)]
pub struct Relation {
    pub name: String,
    pub lhs: FreeExpr,
    pub rhs: FreeExpr,
}

impl Relation {
    pub fn parse(name: &str, lhs: &str, rhs: &str) -> Relation {
        Relation {
            name: name.to_string(),
            lhs: parse_word_expr(lhs).expect("built-in relation parses"),
            rhs: parse_word_expr(rhs).expect("built-in relation parses"),
        }
    }
}

/// The ten defining relations, followed by `K K^-1 = K^-1 K = 1` and the
/// centrality of `Z`.
pub fn defining_relations() -> Vec<Relation> {
    let mut rels = vec![
        Relation::parse(
            "EF - FE = (K - K^-1)/(q - q^-1)",
            "E*F - F*E",
            "(K - Kinv)/(q - q^-1)",
        ),
        Relation::parse("KXK^-1 = qX", "K*X*Kinv", "q*X"),
        Relation::parse("KEK^-1 = q^2 E", "K*E*Kinv", "q^2*E"),
        Relation::parse("KFK^-1 = q^-2 F", "K*F*Kinv", "q^-2*F"),
        Relation::parse("KYK^-1 = q^-1 Y", "K*Y*Kinv", "q^-1*Y"),
        Relation::parse("qYX - XY = Z", "q*Y*X - X*Y", "Z"),
        Relation::parse("EX = qXE", "E*X", "q*X*E"),
        Relation::parse("EY = X + q^-1 YE", "E*Y", "X + q^-1*Y*E"),
        Relation::parse("FX = YK^-1 + XF", "F*X", "Y*Kinv + X*F"),
        Relation::parse("FY = YF", "F*Y", "Y*F"),
        Relation::parse("KK^-1 = 1", "K*Kinv", "1"),
        Relation::parse("K^-1K = 1", "Kinv*K", "1"),
    ];
    for g in ["E", "F", "K", "X", "Y"] {
        rels.push(Relation::parse(
            &format!("Z{g} = {g}Z"),
            &format!("Z*{g}"),
            &format!("{g}*Z"),
        ));
    }
    rels
}

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub depth: usize,
    pub basis: usize,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationResult {
    pub name: String,
    pub passed: bool,
    /// Basis vectors on which the identity was checkable.
    pub checked: usize,
    /// Basis vectors skipped because a word left the truncation.
    pub skipped: usize,
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub results: Vec<RelationResult>,
}

impl RelationReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationResult> {
        self.results.iter().filter(|r| !r.passed)
    }

    pub fn get(&self, name: &str) -> Option<&RelationResult> {
        self.results.iter().find(|r| r.name == name)
    }
}

struct DepthOutcome {
    checked: usize,
    skipped: usize,
    counterexample: Option<Counterexample>,
}

fn check_at_depth(m: &GradedWeightModule, rel: &Relation, n: usize) -> DepthOutcome {
    let mut out = DepthOutcome {
        checked: 0,
        skipped: 0,
        counterexample: None,
    };
    for j in 0..m.dims()[n] {
        let v = GradedVec::basis(n, j);
        match (m.apply_free(&rel.lhs, &v), m.apply_free(&rel.rhs, &v)) {
            (Ok(l), Ok(r)) => {
                out.checked += 1;
                if l != r && out.counterexample.is_none() {
                    out.counterexample = Some(Counterexample {
                        depth: n,
                        basis: j,
                        lhs: format!("{l:?}"),
                        rhs: format!("{r:?}"),
                    });
                }
            }
            (Err(Error::TruncationOverflow { .. }), _)
            | (_, Err(Error::TruncationOverflow { .. })) => out.skipped += 1,
            (Err(e), _) | (_, Err(e)) => panic!("unexpected error in relation check: {e}"),
        }
    }
    out
}

/// Checks the given relations on every checkable basis vector.
pub fn check_relations_with(
    m: &GradedWeightModule,
    rels: &[Relation],
    strategy: Strategy,
) -> RelationReport {
    let jobs: Vec<(usize, usize)> = (0..rels.len())
        .flat_map(|r| (0..=m.depth()).map(move |n| (r, n)))
        .collect();
    let outcomes = strategy.map(&jobs, |&(r, n)| check_at_depth(m, &rels[r], n));
    let mut results: Vec<RelationResult> = rels
        .iter()
        .map(|r| RelationResult {
            name: r.name.clone(),
            passed: true,
            checked: 0,
            skipped: 0,
            counterexample: None,
        })
        .collect();
    for ((r, _), o) in jobs.into_iter().zip(outcomes) {
        let res = &mut results[r];
        res.checked += o.checked;
        res.skipped += o.skipped;
        if let Some(c) = o.counterexample {
            res.passed = false;
            if res.counterexample.is_none() {
                res.counterexample = Some(c);
            }
        }
    }
    RelationReport { results }
}

/// Checks all defining relations.
pub fn check_relations(m: &GradedWeightModule) -> RelationReport {
    check_relations_with(m, &defining_relations(), Strategy::default())
}
