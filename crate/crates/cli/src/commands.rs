//! Subcommand implementations. Each returns a [`Report`]; invalid input is an [`InputError`].

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Subcommand, ValueEnum};
use serde_json::{json, Value};

use schroq_core::central::{casimir_c, classify_block, hw_eigenvalue, tilde_c, BlockLabel};
use schroq_core::fdim::{
    functor_f, functor_g, quiver_relation_check, roundtrip_iso, AModule, QuiverRep,
};
use schroq_core::pbw::Generator;
use schroq_core::scalars::parse_scalar;
use schroq_core::tensorfun::tensor_with_b;
use schroq_core::verma::{
    build_b, build_b_tilde, build_verma, build_verma_sl2, reducibility_verdict,
};
use schroq_core::wmod::{act, check_relations, find_intertwiners, GradedVec, GradedWeightModule};
use schroq_core::{Error, Scalar, Weight};

use crate::acceptance::{self, b_tilde_identities};
use crate::report::{Check, Report};

/// Bad arguments or unreadable input; exits with status 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl From<Error> for InputError {
    fn from(e: Error) -> InputError {
        InputError(e.to_string())
    }
}

type Result<T> = std::result::Result<T, InputError>;

#[derive(Args, Clone, Debug)]
pub struct Common {
    /// Highest weight, e.g. `w`, `q^2`, `-q^(1/2)`.
    #[arg(long, default_value = "w")]
    pub lambda: String,
    /// Central charge.
    #[arg(long, default_value = "z")]
    pub z: String,
    /// Truncation depth.
    #[arg(long, env = "SCHROQ_DEPTH", default_value_t = 10)]
    pub depth: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModuleKind {
    /// The Verma module Delta(lambda, z).
    Verma,
    /// The module B~_z.
    Btilde,
    /// The sl2 Verma module Delta_sl2(lambda), X = Y = Z = 0.
    Sl2Verma,
    /// A module read from JSON (`--input`).
    Json,
}

#[derive(Subcommand, Clone, Debug)]
pub enum Command {
    /// Check the defining relations on a module.
    Relcheck {
        #[arg(long, value_enum, default_value = "verma")]
        module: ModuleKind,
        #[arg(long)]
        input: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Build a Verma module; optionally write it as JSON.
    Verma {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check B_z and B~_z.
    Bmod {
        #[command(flatten)]
        common: Common,
    },
    /// Search a Verma module for singular vectors.
    Singvec {
        #[command(flatten)]
        common: Common,
    },
    /// Compare Delta(lambda, z) with Delta_sl2(lambda q^(1/2)) (x) B~_z.
    Tensor {
        #[command(flatten)]
        common: Common,
    },
    /// Centrality of C and C~ and the eigenvalue of C~ on v_lambda.
    Casimir {
        #[command(flatten)]
        common: Common,
    },
    /// Classify a block.
    Block {
        /// The coset, `q^(Z)` or `<weight>*q^(Z)`.
        #[arg(long, default_value = "q^(Z)")]
        xi: String,
        /// A weight of the coset; the block is labelled by its C~ eigenvalue.
        #[arg(long)]
        lambda: Option<String>,
        /// The C~ eigenvalue, instead of `--lambda`.
        #[arg(long)]
        c_tilde: Option<String>,
        #[arg(long, default_value = "z")]
        z: String,
    },
    /// Quiver representations and the functors F, G.
    Quiver {
        #[command(subcommand)]
        action: QuiverAction,
    },
    /// Run the acceptance suite.
    Accept {
        /// Criterion number, or substring of a name or tag.
        #[arg(long)]
        filter: Option<String>,
    },
}

#[derive(Subcommand, Clone, Debug)]
pub enum QuiverAction {
    /// Check the quiver relations.
    Check { rep: PathBuf },
    /// Build G(rep).
    G {
        rep: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute F(V) of a module JSON.
    F { module: PathBuf },
    /// Check F(G(rep)) is isomorphic to rep.
    Roundtrip { rep: PathBuf },
}

fn scalar(name: &str, text: &str) -> Result<Scalar> {
    parse_scalar(text).map_err(|e| InputError(format!("--{name} {text:?}: {e}")))
}

/// The canonical printing of a scalar argument, or the text itself if it does not parse.
fn canon(text: &str) -> String {
    parse_scalar(text).map_or_else(|_| text.to_string(), |s| s.to_string())
}

fn weight(text: &str) -> Result<Weight> {
    Ok(Weight::new(scalar("lambda", text)?)?)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn read_rep(path: &Path) -> Result<QuiverRep> {
    Ok(QuiverRep::from_json_str(&read(path)?)?)
}

fn relation_checks(report: &mut Report, prefix: &str, m: &GradedWeightModule) {
    for r in check_relations(m).results {
        let witness = json!(r.counterexample.as_ref().map(|c| json!({
            "depth": c.depth,
            "basis": c.basis,
            "lhs": c.lhs,
            "rhs": c.rhs,
        })));
        report.check(Check::new(format!("{prefix}{}", r.name), r.passed).with_witness(witness));
    }
}

fn module_summary(m: &GradedWeightModule) -> Value {
    json!({
        "top_weight": m.top_weight().to_string(),
        "central_charge": m.central_charge().to_string(),
        "dims": m.dims(),
        "finite": m.is_finite(),
    })
}

pub fn execute(cmd: &Command) -> Result<Report> {
    match cmd {
        Command::Relcheck {
            module,
            input,
            common,
        } => relcheck(*module, input.as_deref(), common),
        Command::Verma { common, out } => verma(common, out.as_deref()),
        Command::Bmod { common } => bmod(common),
        Command::Singvec { common } => singvec(common),
        Command::Tensor { common } => tensor(common),
        Command::Casimir { common } => casimir(common),
        Command::Block {
            xi,
            lambda,
            c_tilde,
            z,
        } => block(xi, lambda.as_deref(), c_tilde.as_deref(), z),
        Command::Quiver { action } => quiver(action),
        Command::Accept { filter } => Ok(accept(filter.as_deref())),
    }
}

fn relcheck(kind: ModuleKind, input: Option<&Path>, c: &Common) -> Result<Report> {
    let mut report = Report::new("relcheck").input("module", format!("{kind:?}").to_lowercase());
    let m = match kind {
        ModuleKind::Verma => {
            report = report
                .input("lambda", canon(&c.lambda))
                .input("z", canon(&c.z))
                .input("depth", c.depth);
            build_verma(&weight(&c.lambda)?, &scalar("z", &c.z)?, c.depth)
        }
        ModuleKind::Btilde => {
            report = report.input("z", canon(&c.z)).input("depth", c.depth);
            build_b_tilde(&scalar("z", &c.z)?, c.depth)?
        }
        ModuleKind::Sl2Verma => {
            report = report
                .input("lambda", canon(&c.lambda))
                .input("depth", c.depth);
            build_verma_sl2(&weight(&c.lambda)?, c.depth)
        }
        ModuleKind::Json => {
            let path = input.ok_or_else(|| InputError("--module json needs --input".into()))?;
            report = report.input("input", path.display());
            GradedWeightModule::from_json_str(&read(path)?)?
        }
    };
    relation_checks(&mut report, "", &m);
    report.data = module_summary(&m);
    Ok(report)
}

fn verma(c: &Common, out: Option<&Path>) -> Result<Report> {
    let m = build_verma(&weight(&c.lambda)?, &scalar("z", &c.z)?, c.depth);
    let mut report = Report::new("verma")
        .input("lambda", canon(&c.lambda))
        .input("z", canon(&c.z))
        .input("depth", c.depth);
    let mut data = module_summary(&m);
    data["labels"] = json!(m.labels());
    if let Some(path) = out {
        write(path, &m.to_json_string())?;
        data["written"] = json!(path.display().to_string());
    }
    report.data = data;
    Ok(report)
}

fn bmod(c: &Common) -> Result<Report> {
    let z = scalar("z", &c.z)?;
    let mut report = Report::new("bmod")
        .input("z", canon(&c.z))
        .input("depth", c.depth);
    let b = build_b(&z, c.depth);
    let bad = b.check_weyl_relation();
    report.check(
        Check::new("B_z: qYX - XY = Z", bad.is_none()).with_witness(json!({ "index": bad })),
    );
    let bt = build_b_tilde(&z, c.depth)?;
    let triple = b_tilde_identities(&bt, c.depth.saturating_sub(2));
    report.check(
        Check::new("B~_z: identity triple", triple.passed).with_witness(json!(triple.detail)),
    );
    relation_checks(&mut report, "B~_z: ", &bt);
    report.data = module_summary(&bt);
    Ok(report)
}

fn singvec(c: &Common) -> Result<Report> {
    let lambda = weight(&c.lambda)?;
    let z = scalar("z", &c.z)?;
    let verdict = reducibility_verdict(&lambda, &z, c.depth)?;
    let mut report = Report::new("singvec")
        .input("lambda", canon(&c.lambda))
        .input("z", canon(&c.z))
        .input("depth", c.depth);
    report.data = serde_json::to_value(&verdict).expect("plain data");
    Ok(report)
}

fn tensor(c: &Common) -> Result<Report> {
    let lambda = weight(&c.lambda)?;
    let z = scalar("z", &c.z)?;
    let n = build_verma_sl2(&lambda.shift_half_steps(1), c.depth);
    let t = tensor_with_b(&n, &z, c.depth)?;
    let d = build_verma(&lambda, &z, c.depth);
    let maps = find_intertwiners(&d, &t.module);
    let mut report = Report::new("tensor")
        .input("lambda", canon(&c.lambda))
        .input("z", canon(&c.z))
        .input("depth", c.depth);
    report.check(Check::new("Hom is one-dimensional", maps.len() == 1));
    let inv = maps.len() == 1 && maps[0].invertible_upto(c.depth);
    report.check(Check::new(
        "the map is invertible up to the truncation",
        inv,
    ));
    report.data = json!({
        "hom_dim": maps.len(),
        "tensor_dims": t.module.dims(),
        "top_weight": t.module.top_weight().to_string(),
    });
    Ok(report)
}

fn casimir(c: &Common) -> Result<Report> {
    let lambda = weight(&c.lambda)?;
    let z = scalar("z", &c.z)?;
    let mut report = Report::new("casimir")
        .input("lambda", canon(&c.lambda))
        .input("z", canon(&c.z));
    let bad = casimir_c().non_commuting(&Generator::SL2);
    report.check(
        Check::new("C is central in U_q(sl2)", bad.is_empty())
            .with_witness(json!(format!("{bad:?}"))),
    );
    let bad = tilde_c().non_commuting(&Generator::ALL);
    report
        .check(Check::new("C~ is central", bad.is_empty()).with_witness(json!(format!("{bad:?}"))));
    let m = build_verma(&lambda, &z, 4);
    let out = act(&m, &tilde_c().pbw_form, &GradedVec::basis(0, 0))?;
    let got = out.get(&0).map(|v| v.get(0)).unwrap_or_else(Scalar::zero);
    let want = hw_eigenvalue(&lambda, &z);
    report.check(
        Check::new("C~ v_lambda = c~_lambda v_lambda", got == want)
            .with_witness(json!({"action": got.to_string(), "formula": want.to_string()})),
    );
    report.data = json!({ "c_tilde": want.to_string() });
    Ok(report)
}

/// The representative in `<weight>*q^(Z)`.
fn coset_rep(xi: &str) -> Result<Weight> {
    let t = xi.replace(' ', "");
    let base = t
        .strip_suffix("q^(Z)")
        .ok_or_else(|| InputError(format!("--xi {xi:?}: expected q^(Z) or <weight>*q^(Z)")))?;
    match base.strip_suffix('*') {
        Some(b) => weight(b),
        None if base.is_empty() => Ok(Weight::q_half(0)),
        None => Err(InputError(format!("--xi {xi:?}: expected <weight>*q^(Z)"))),
    }
}

fn block(xi: &str, lambda: Option<&str>, c_tilde: Option<&str>, z: &str) -> Result<Report> {
    let rep = coset_rep(xi)?;
    let zs = scalar("z", z)?;
    let mut report = Report::new("block").input("xi", xi).input("z", canon(z));
    let ct = match (lambda, c_tilde) {
        (Some(l), None) => {
            report = report.input("lambda", canon(l));
            let l = weight(l)?;
            if l.half_step_offset(&rep).is_none_or(|k| k % 2 != 0) {
                return Err(InputError(format!("{l} is not in the coset {xi}")));
            }
            hw_eigenvalue(&l, &zs)
        }
        (None, Some(c)) => {
            report = report.input("c_tilde", canon(c));
            scalar("c-tilde", c)?
        }
        _ => return Err(InputError("give exactly one of --lambda, --c-tilde".into())),
    };
    let label = BlockLabel {
        coset_rep: rep,
        c_tilde: ct,
        z: zs,
    };
    let b = classify_block(&label)?;
    report.data = serde_json::to_value(&b).expect("plain data");
    Ok(report)
}

fn quiver(action: &QuiverAction) -> Result<Report> {
    match action {
        QuiverAction::Check { rep } => {
            let r = read_rep(rep)?;
            let mut report = Report::new("quiver check").input("rep", rep.display());
            for res in quiver_relation_check(&r).results {
                let w = serde_json::to_value(&res.witness).expect("plain data");
                report.check(Check::new(res.name, res.passed).with_witness(w));
            }
            report.data = json!({ "dims": r.dims });
            Ok(report)
        }
        QuiverAction::G { rep, out } => {
            let r = read_rep(rep)?;
            let mut report = Report::new("quiver g").input("rep", rep.display());
            let v = match functor_g(&r) {
                Ok(v) => v,
                Err(e @ Error::RelationViolation(_)) => return Ok(violation(report, &r, e)),
                Err(e) => return Err(e.into()),
            };
            relation_checks(&mut report, "", v.module());
            let mut data = module_summary(v.module());
            if let Some(path) = out {
                write(path, &v.module().to_json_string())?;
                data["written"] = json!(path.display().to_string());
            }
            report.data = data;
            Ok(report)
        }
        QuiverAction::F { module } => {
            let m = GradedWeightModule::from_json_str(&read(module)?)?;
            let v = AModule::new(m)?;
            let r = functor_f(&v);
            let mut report = Report::new("quiver f").input("module", module.display());
            for res in quiver_relation_check(&r).results {
                report.check(Check::new(res.name, res.passed));
            }
            report.data = serde_json::to_value(r.to_json()).expect("plain data");
            Ok(report)
        }
        QuiverAction::Roundtrip { rep } => {
            let r = read_rep(rep)?;
            let mut report = Report::new("quiver roundtrip").input("rep", rep.display());
            let rt = match roundtrip_iso(&r) {
                Ok(rt) => rt,
                Err(e @ Error::RelationViolation(_)) => return Ok(violation(report, &r, e)),
                Err(e @ Error::NoIsoFound(_)) => {
                    report.check(
                        Check::new("F(G(rep)) is isomorphic to rep", false)
                            .with_witness(json!(e.to_string())),
                    );
                    return Ok(report);
                }
                Err(e) => return Err(e.into()),
            };
            report.check(Check::new(
                "F(G(rep)) satisfies the relations",
                rt.image_relations_hold,
            ));
            report.check(Check::new("F(G(rep)) is isomorphic to rep", true));
            let iso: Vec<Vec<Vec<String>>> = rt
                .iso
                .iter()
                .map(|m| {
                    (0..m.rows())
                        .map(|i| m.row(i).iter().map(|x| x.to_string()).collect())
                        .collect()
                })
                .collect();
            report.data = json!({
                "dims": rt.dims,
                "image_dims": rt.image_dims,
                "iso": iso,
            });
            Ok(report)
        }
    }
}

/// A report for an input representation that fails the quiver relations.
fn violation(mut report: Report, r: &QuiverRep, e: Error) -> Report {
    for res in quiver_relation_check(r).results {
        let w = serde_json::to_value(&res.witness).expect("plain data");
        report.check(Check::new(res.name, res.passed).with_witness(w));
    }
    report.data = json!({ "error": e.to_string() });
    report
}

fn accept(filter: Option<&str>) -> Report {
    let mut report = Report::new("accept");
    if let Some(f) = filter {
        report = report.input("filter", f);
    }
    for r in acceptance::run(filter) {
        report.check(
            Check::new(format!("{:>2} {}", r.id, r.name), r.outcome.passed)
                .with_witness(json!(r.outcome.detail)),
        );
    }
    report
}
