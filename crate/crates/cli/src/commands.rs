use std::io::{self, Write};

use serde_json::{json, Value};

use gvdual::dsl::to_dsl;
use gvdual::fman::{
    check_coisotropy, check_f_structure, commutator_identity_3_8, dubrovin_dual, eventual_group_check, fiber_algebra,
    is_eventual_identity, is_semisimple_fiber, CheckConfig, FStructure, DEFAULT_CAP,
};
use gvdual::gv::{run_on, run_suite, GvConfig, GvInstance, GvReport, Samples};
use gvdual::io::{FJson, QaJson, QoJson};
use gvdual::operad::{op_black, op_dual, op_white, QoInstance, QuadOperad, QO_TRIPLE_SIZE_BOUND};
use gvdual::qa::{hilbert_dims, qa_black, qa_dual, qa_white, QaInstance, QuadAlgebra};
use gvdual::Error;

use crate::input::{self, InputError};
use crate::render;
use crate::{Cli, Command, FmCmd, OpCmd, QaCmd, RunConfig};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_INPUT: u8 = 2;

/// What a command produced: text for people, a value for `--json`.
struct Outcome {
    passed: bool,
    text: String,
    report: Value,
}

impl Outcome {
    fn ok(text: String, report: Value) -> Self {
        Outcome { passed: true, text, report }
    }
}

enum Failure {
    Input(String),
    /// The computation itself established that a hypothesis fails.
    Math(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e.0)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotInvertible | Error::NotEventualIdentity(_) | Error::NotUnit => Failure::Math(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

pub fn run(cli: &Cli) -> u8 {
    let name = command_name(&cli.command);
    let result = match &cli.command {
        Command::Qa(c) => qa(c, &cli.run),
        Command::Op(c) => op(c, &cli.run),
        Command::Fm(c) => fm(c, &cli.run),
    };
    match result {
        Ok(out) => {
            if cli.run.json {
                let report = json!({ "command": name, "passed": out.passed, "result": out.report });
                emit(&format!("{}\n", serde_json::to_string_pretty(&report).expect("serializable")));
            } else {
                emit(&out.text);
            }
            if out.passed {
                EXIT_PASS
            } else {
                EXIT_CHECK_FAILED
            }
        }
        Err(Failure::Math(msg)) => {
            if cli.run.json {
                let report = json!({ "command": name, "passed": false, "error": msg });
                emit(&format!("{}\n", serde_json::to_string_pretty(&report).expect("serializable")));
            } else {
                emit(&format!("FAIL: {msg}\n"));
            }
            EXIT_CHECK_FAILED
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            EXIT_INPUT
        }
    }
}

/// Writes to stdout; a closed pipe is not an error worth reporting.
fn emit(s: &str) {
    let _ = io::stdout().lock().write_all(s.as_bytes());
}

fn command_name(c: &Command) -> String {
    let (group, sub) = match c {
        Command::Qa(q) => ("qa", format!("{q:?}")),
        Command::Op(o) => ("op", format!("{o:?}")),
        Command::Fm(f) => ("fm", format!("{f:?}")),
    };
    let sub = sub.split([' ', '{']).next().unwrap_or_default().to_lowercase();
    format!("{group} {sub}")
}

fn files(run: &RunConfig, want: usize, what: &str) -> Result<Vec<String>, Failure> {
    if run.files.len() != want {
        return Err(Failure::Input(format!("{what} takes {want} input(s) via -f, got {}", run.files.len())));
    }
    Ok(run.files.clone())
}

fn cap(run: &RunConfig) -> Result<u32, Failure> {
    match run.cap {
        None => Ok(DEFAULT_CAP),
        Some(c) => u32::try_from(c).map_err(|_| Failure::Input(format!("--cap {c} is too large"))),
    }
}

fn gv_outcome(report: GvReport) -> Outcome {
    Outcome {
        passed: report.all_passed(),
        text: report.to_text(),
        report: serde_json::to_value(&report).expect("serializable"),
    }
}

fn gvcheck<I: GvInstance>(inst: &I, given: Vec<I::Obj>, cfg: &GvConfig) -> Outcome
where
    I::Obj: Clone,
{
    let report = if given.is_empty() {
        run_suite(inst, cfg)
    } else {
        let samples = Samples::exhaustive(inst, given, cfg.triple_size_bound);
        run_on(inst, &samples, cfg.seed)
    };
    gv_outcome(report)
}

fn algebra_outcome(name: &str, a: &QuadAlgebra) -> Outcome {
    Outcome::ok(
        to_dsl(name, a),
        json!({ "name": name, "algebra": QaJson::from(a) }),
    )
}

/// Generators of a product are named `x_u` for the pair `(x, u)` when the
/// names stay distinct.
fn product_names(a: &QuadAlgebra, b: &QuadAlgebra, ab: QuadAlgebra) -> QuadAlgebra {
    let names: Vec<String> = a
        .display_names()
        .iter()
        .flat_map(|x| b.display_names().into_iter().map(move |u| format!("{x}_{u}")))
        .collect();
    ab.clone().with_names(names).unwrap_or(ab)
}

fn qa(cmd: &QaCmd, run: &RunConfig) -> Result<Outcome, Failure> {
    match cmd {
        QaCmd::Dual => {
            let (name, a) = input::algebra(&files(run, 1, "qa dual")?[0])?;
            Ok(algebra_outcome(&format!("{name}_dual"), &qa_dual(&a).with_names(a.display_names())?))
        }
        QaCmd::Black | QaCmd::White => {
            let fs = files(run, 2, "a product")?;
            let (na, a) = input::algebra(&fs[0])?;
            let (nb, b) = input::algebra(&fs[1])?;
            let (ab, tag) = match cmd {
                QaCmd::Black => (qa_black(&a, &b), "black"),
                _ => (qa_white(&a, &b), "white"),
            };
            Ok(algebra_outcome(&format!("{na}_{tag}_{nb}"), &product_names(&a, &b, ab)))
        }
        QaCmd::Hilbert => {
            let (name, a) = input::algebra(&files(run, 1, "qa hilbert")?[0])?;
            let maxdeg = run.maxdeg.unwrap_or(6);
            let dims = hilbert_dims(&a, maxdeg)?;
            let shown: Vec<String> = dims.iter().map(u64::to_string).collect();
            Ok(Outcome::ok(
                format!("{name}: dims of degrees 0..={maxdeg}: {}\n", shown.join(", ")),
                json!({ "name": name, "maxdeg": maxdeg, "dims": dims }),
            ))
        }
        QaCmd::Gvcheck => {
            let given = run
                .files
                .iter()
                .map(|f| input::algebra(f).map(|(_, a)| a))
                .collect::<Result<Vec<_>, _>>()?;
            let inst = QaInstance {
                samples: run.samples.unwrap_or(50),
                ..QaInstance::default()
            };
            let cfg = GvConfig {
                seed: run.seed,
                ..GvConfig::default()
            };
            Ok(gvcheck(&inst, given, &cfg))
        }
    }
}

fn operad_outcome(name: &str, p: &QuadOperad) -> Outcome {
    Outcome::ok(render::operad(name, p), json!({ "name": name, "operad": QoJson::from(p) }))
}

fn op(cmd: &OpCmd, run: &RunConfig) -> Result<Outcome, Failure> {
    match cmd {
        OpCmd::Dual => {
            let (name, p) = input::operad(&files(run, 1, "op dual")?[0])?;
            Ok(operad_outcome(&format!("{name}!"), &op_dual(&p)))
        }
        OpCmd::Black | OpCmd::White => {
            let fs = files(run, 2, "a product")?;
            let (np, p) = input::operad(&fs[0])?;
            let (nq, q) = input::operad(&fs[1])?;
            let (pq, sym) = match cmd {
                OpCmd::Black => (op_black(&p, &q), "•"),
                _ => (op_white(&p, &q), "∘"),
            };
            Ok(operad_outcome(&format!("{np} {sym} {nq}"), &pq))
        }
        OpCmd::Gvcheck => {
            let given = run
                .files
                .iter()
                .map(|f| input::operad(f).map(|(_, p)| p))
                .collect::<Result<Vec<_>, _>>()?;
            let inst = QoInstance {
                samples: run.samples.unwrap_or(50),
                ..QoInstance::default()
            };
            let cfg = GvConfig {
                seed: run.seed,
                triple_size_bound: QO_TRIPLE_SIZE_BOUND,
                ..GvConfig::default()
            };
            Ok(gvcheck(&inst, given, &cfg))
        }
    }
}

fn check_config(run: &RunConfig) -> CheckConfig {
    CheckConfig {
        samples: run.samples.unwrap_or(100),
        seed: run.seed,
    }
}

fn fstructure_outcome(f: &FStructure, extra: Value) -> Outcome {
    Outcome::ok(render::fstructure(f), json!({ "structure": FJson::from(f), "input": extra }))
}

fn fm(cmd: &FmCmd, run: &RunConfig) -> Result<Outcome, Failure> {
    let f = input::fstructure(&files(run, 1, "an fm command")?[0], cap(run)?)?;
    let cfg = check_config(run);
    match cmd {
        FmCmd::Check => {
            let r = check_f_structure(&f, &cfg)?;
            let mut text = format!(
                "commutative: {}\nassociative: {}\nunit: {}\nF-identity: {} ({} coordinate and {} random quadruples)\n",
                r.commutative, r.associative, r.identity, r.defect_zero, r.coordinate_quadruples, r.random_quadruples
            );
            for fail in &r.failures {
                text.push_str(&format!("  counterexample: {fail}\n"));
            }
            text.push_str(verdict(r.passed()));
            Ok(Outcome {
                passed: r.passed(),
                text,
                report: serde_json::to_value(&r).expect("serializable"),
            })
        }
        FmCmd::Eventual { eps, eps2 } => {
            let e1 = input::vfield(eps, &f)?;
            let r = is_eventual_identity(&f, &e1, &cfg)?;
            let mut text = format!(
                "invertible: {}\neventual criterion: {} ({} pairs)\n",
                r.invertible, r.criterion, r.pairs_checked
            );
            for fail in &r.failures {
                text.push_str(&format!("  counterexample: {fail}\n"));
            }
            let mut passed = r.passed();
            let mut report = json!({ "eventual": r });
            if let Some(eps2) = eps2 {
                let e2 = input::vfield(eps2, &f)?;
                let g = eventual_group_check(&f, &e1, &e2, &cfg)?;
                text.push_str(&format!(
                    "group: inputs {}, product {}, commutator invertible {}, commutator {}, inverse {}\n",
                    g.inputs_eventual,
                    g.product_eventual,
                    g.commutator_invertible,
                    g.commutator_eventual.map_or("n/a".to_string(), |b| b.to_string()),
                    g.inverse_eventual
                ));
                passed &= g.passed();
                report["group"] = serde_json::to_value(&g).expect("serializable");
            }
            text.push_str(verdict(passed));
            Ok(Outcome { passed, text, report })
        }
        FmCmd::Dual { eps } => {
            let e = input::vfield(eps, &f)?;
            let dual = dubrovin_dual(&f, &e, &cfg)?;
            Ok(fstructure_outcome(&dual, json!({ "eps": gvdual::io::vfield_to_json(&e) })))
        }
        FmCmd::Ex38 { eps, pow_n, pow_m } => {
            let e = input::vfield(eps, &f)?;
            let holds = commutator_identity_3_8(&f, &e, *pow_n, *pow_m)?;
            Ok(Outcome {
                passed: holds,
                text: format!(
                    "[e^n, e^m] = (m - n) e^(n+m-1) with n = {pow_n}, m = {pow_m}, e = {}: {}",
                    render::vfield(&e),
                    verdict(holds)
                ),
                report: json!({ "n": pow_n, "m": pow_m, "holds": holds }),
            })
        }
        FmCmd::Coisotropy => {
            let r = check_coisotropy(&f)?;
            let mut text = format!(
                "{} generators, {} brackets checked, rank at origin {} of {}\n",
                r.generators, r.pairs_checked, r.rank.found, r.rank.expected
            );
            for (a, b) in &r.failing_pairs {
                text.push_str(&format!("  counterexample: bracket of generators {a} and {b} leaves the ideal\n"));
            }
            text.push_str(verdict(r.passed()));
            Ok(Outcome {
                passed: r.passed(),
                text,
                report: serde_json::to_value(&r).expect("serializable"),
            })
        }
        FmCmd::Fiber { point } => {
            let u0 = input::point(point, f.n())?;
            let alg = fiber_algebra(&f, &u0)?;
            let ss = is_semisimple_fiber(&alg);
            let form = alg.trace_form();
            Ok(Outcome {
                passed: ss,
                text: format!(
                    "trace form {} (rank {} of {})\nsemisimple: {ss}\n",
                    render::matrix(&form),
                    form.rank(),
                    alg.n
                ),
                report: json!({
                    "point": u0.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "algebra": alg,
                    "trace_form_rank": form.rank(),
                    "semisimple": ss,
                }),
            })
        }
    }
}

fn verdict(passed: bool) -> &'static str {
    if passed {
        "PASS\n"
    } else {
        "FAIL\n"
    }
}
