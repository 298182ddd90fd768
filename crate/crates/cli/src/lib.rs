//! Batch front end: a JSON problem file describes one `(G, Φ, R, action, L)`
//! instance; tasks build, verify and query it and produce a deterministic
//! report.

pub mod expr;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path as FsPath, PathBuf};

use clap::{Parser, ValueEnum};
use hopfquiver::exactfield::{FieldError, ScalarRepr};
use hopfquiver::group::{groups, standard_cyclic_cocycle_on, verify_cocycle, GroupError};
use hopfquiver::majid::{solve_monomial_action, taft_action, verify_bimodule, verify_majid_axioms, MajidError};
use hopfquiver::quiver::QuiverError;
use hopfquiver::structure::{self, ThetaReading};
use hopfquiver::{
    BimoduleAction, Cocycle3, Field, FiniteGroup, HopfQuiver, MajidStructure, RamificationData, Scalar,
    VerificationReport,
};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use expr::{Context, ExprError};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Task {
    Verify,
    Multiply,
    Antipode,
    Decompose,
    CrossedProduct,
    Primitives,
    Report,
    ExportQuiver,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QuiverFormat {
    Dot,
    Json,
}

/// Build and verify graded Majid algebras on Hopf quivers.
///
/// Element expressions (--lhs, --rhs, --arg and action values in the spec):
/// `v3` is a vertex, `a2.a0` the path traversing a0 then a2, `z` the root of
/// unity of the field, `*` the Majid product (left associative), `+` and
/// `-` sums, integers and `p/q` rationals as scalars.
///
/// Exit codes: 0 all checks pass, 1 a verification failed, 2 the spec or an
/// expression could not be parsed, 3 internal error.
#[derive(Debug, Clone, Parser)]
#[command(name = "hopfquiver", version)]
pub struct Args {
    /// Problem file (JSON, "schema": 1).
    #[arg(long)]
    pub spec: PathBuf,
    /// Task to run; repeatable. Defaults to the tasks listed in the spec.
    #[arg(long = "task", value_enum)]
    pub tasks: Vec<Task>,
    /// Overrides the degree cap of the spec.
    #[arg(long)]
    pub degree_cap: Option<usize>,
    /// Directory for report.json, summary.txt and exported quivers.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Left factor for `multiply`.
    #[arg(long)]
    pub lhs: Option<String>,
    /// Right factor for `multiply`.
    #[arg(long)]
    pub rhs: Option<String>,
    /// Argument for `antipode`.
    #[arg(long)]
    pub arg: Option<String>,
    #[arg(long, value_enum, default_value = "dot")]
    pub quiver_format: QuiverFormat,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("malformed spec: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema version {0}")]
    Schema(u32),
    #[error("spec lists no tasks")]
    NoTasks,
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Majid(#[from] MajidError),
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("task {0} needs --{1}")]
    MissingArgument(&'static str, &'static str),
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Write { .. } => EXIT_INTERNAL,
            _ => EXIT_PARSE,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Table { mult: Vec<Vec<usize>> },
    Cyclic { cyclic: usize },
}

/// Scalar in a spec: an expression string like `"-1"`, `"1/2"`, `"z^3"`, or
/// an array of power-basis coordinates.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ScalarSpec {
    Expr(String),
    Coords(Vec<String>),
}

#[derive(Debug, Clone, Deserialize)]
pub struct CocycleEntry {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub value: ScalarSpec,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CocycleSpec {
    Trivial,
    /// `ζ^{a⌊(b+c)/n⌋}` with `ζ = z^zeta_power`, exponents against `generator`.
    CyclicStandard {
        #[serde(default = "one")]
        generator: usize,
        #[serde(default = "one_i64")]
        zeta_power: i64,
    },
    /// Dense `values` in `(a, b, c)` order, or sparse `entries` over the
    /// constant 1.
    Table {
        #[serde(default)]
        values: Vec<ScalarSpec>,
        #[serde(default)]
        entries: Vec<CocycleEntry>,
    },
}

fn one() -> usize {
    1
}

fn one_i64() -> i64 {
    1
}

#[derive(Debug, Clone, Deserialize)]
pub struct RamEntry {
    pub class_rep: usize,
    pub mult: usize,
}

#[derive(Debug, Clone, Deserialize)]
pub struct LeftEntry {
    pub g: usize,
    pub arrow: usize,
    pub value: String,
}

#[derive(Debug, Clone, Deserialize)]
pub struct RightEntry {
    pub arrow: usize,
    pub g: usize,
    pub value: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ActionSpec {
    /// `f.a = χ(f) a'`, `a.f = a''`.
    Taft { taft: Vec<ScalarSpec> },
    /// Runs the monomial solver.
    Solve { solve: bool },
    Tables {
        #[serde(default)]
        left: Vec<LeftEntry>,
        #[serde(default)]
        right: Vec<RightEntry>,
    },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub schema: u32,
    #[serde(default = "one_u32")]
    pub field_order: u32,
    pub group: GroupSpec,
    pub cocycle: CocycleSpec,
    #[serde(default)]
    pub ramification: Vec<RamEntry>,
    #[serde(default = "empty_action")]
    pub action: ActionSpec,
    pub degree_cap: usize,
    #[serde(default)]
    pub tasks: Vec<Task>,
}

fn one_u32() -> u32 {
    1
}

fn empty_action() -> ActionSpec {
    ActionSpec::Tables {
        left: Vec::new(),
        right: Vec::new(),
    }
}

impl ProblemSpec {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let spec: ProblemSpec = serde_json::from_str(text)?;
        if spec.schema != 1 {
            return Err(CliError::Schema(spec.schema));
        }
        Ok(spec)
    }
}

/// Everything a spec describes, validated shape-wise.
pub struct Instance {
    pub field: Field,
    pub group: FiniteGroup,
    pub phi: Cocycle3,
    pub quiver: HopfQuiver,
    pub action: BimoduleAction,
    pub degree_cap: usize,
}

fn scalar_of(spec: &ScalarSpec, ctx: &Context<'_>) -> Result<Scalar, CliError> {
    match spec {
        ScalarSpec::Expr(s) => Ok(expr::scalar(s, ctx)?),
        ScalarSpec::Coords(c) => Ok(ctx.field.parse(&ScalarRepr::Coords(c.clone()))?),
    }
}

impl Instance {
    pub fn build(spec: &ProblemSpec, degree_cap: Option<usize>) -> Result<Instance, CliError> {
        let field = Field::new(spec.field_order)?;
        let group = match &spec.group {
            GroupSpec::Table { mult } => FiniteGroup::from_table(mult.clone())?,
            GroupSpec::Cyclic { cyclic } => {
                if *cyclic == 0 {
                    return Err(CliError::Invalid("cyclic group of order 0".into()));
                }
                groups::cyclic(*cyclic)
            }
        };
        let n = group.order();
        let reps: Vec<(usize, usize)> = spec.ramification.iter().map(|r| (r.class_rep, r.mult)).collect();
        let ram = RamificationData::from_reps(&group, &reps)?;
        let quiver = HopfQuiver::new(group.clone(), ram)?;
        let ctx = Context {
            quiver: quiver.quiver(),
            field: &field,
            identity: group.identity(),
            structure: None,
        };

        let phi = match &spec.cocycle {
            CocycleSpec::Trivial => Cocycle3::trivial(n, &field),
            CocycleSpec::CyclicStandard { generator, zeta_power } => {
                let generator = if n == 1 { 0 } else { *generator };
                standard_cyclic_cocycle_on(&group, generator, &field.zeta_pow(*zeta_power))?
            }
            CocycleSpec::Table { values, entries } => {
                let mut phi = if values.is_empty() {
                    Cocycle3::trivial(n, &field)
                } else {
                    let vals = values.iter().map(|v| scalar_of(v, &ctx)).collect::<Result<Vec<_>, _>>()?;
                    Cocycle3::from_values(n, vals)?
                };
                for e in entries {
                    if e.a >= n || e.b >= n || e.c >= n {
                        return Err(CliError::Invalid(format!("cocycle entry ({}, {}, {}) out of range", e.a, e.b, e.c)));
                    }
                    phi.set(e.a, e.b, e.c, scalar_of(&e.value, &ctx)?);
                }
                phi
            }
        };

        let action = match &spec.action {
            ActionSpec::Tables { left, right } => {
                let mut action = BimoduleAction::new();
                let arrows = quiver.arrow_count();
                for e in left {
                    if e.g >= n || e.arrow >= arrows {
                        return Err(CliError::Invalid(format!("left action entry ({}, {}) out of range", e.g, e.arrow)));
                    }
                    action.set_left(e.g, e.arrow, expr::element(&e.value, &ctx)?);
                }
                for e in right {
                    if e.g >= n || e.arrow >= arrows {
                        return Err(CliError::Invalid(format!("right action entry ({}, {}) out of range", e.arrow, e.g)));
                    }
                    action.set_right(e.arrow, e.g, expr::element(&e.value, &ctx)?);
                }
                action
            }
            ActionSpec::Taft { taft } => {
                if taft.len() != n {
                    return Err(CliError::Invalid(format!("character has {} values for a group of order {n}", taft.len())));
                }
                let chi = taft.iter().map(|v| scalar_of(v, &ctx)).collect::<Result<Vec<_>, _>>()?;
                taft_action(&quiver, &chi)
            }
            ActionSpec::Solve { solve: true } => solve_monomial_action(&quiver, &phi)?.action,
            ActionSpec::Solve { solve: false } => BimoduleAction::new(),
        };
        Ok(Instance {
            field,
            group,
            phi,
            quiver,
            action,
            degree_cap: degree_cap.unwrap_or(spec.degree_cap),
        })
    }

    pub fn structure(&self) -> Result<MajidStructure, CliError> {
        Ok(MajidStructure::new(
            self.quiver.clone(),
            self.phi.clone(),
            self.action.clone(),
            self.degree_cap,
        )?)
    }
}

/// Result of one task.
#[derive(Debug, Clone, Serialize)]
pub struct TaskOutput {
    pub task: Task,
    pub passed: bool,
    pub data: Value,
    #[serde(skip)]
    pub text: String,
    #[serde(skip)]
    pub files: Vec<(String, String)>,
}

/// What a run produced: an exit code, the document printed on stdout and
/// files for `--out`.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub files: Vec<(String, String)>,
}

fn report_output(task: Task, reports: Vec<VerificationReport>, extra: Value) -> TaskOutput {
    let passed = reports.iter().all(VerificationReport::passed);
    let mut text = String::new();
    for r in &reports {
        let _ = write!(text, "{r}");
    }
    TaskOutput {
        task,
        passed,
        data: json!({ "reports": reports, "details": extra }),
        text,
        files: Vec::new(),
    }
}

fn run_task(task: Task, inst: &Instance, h: &MajidStructure, args: &Args) -> Result<TaskOutput, CliError> {
    let ctx = Context {
        quiver: inst.quiver.quiver(),
        field: &inst.field,
        identity: inst.group.identity(),
        structure: Some(h),
    };
    Ok(match task {
        Task::Verify => {
            let cocycle = verify_cocycle(&inst.group, &inst.phi)?;
            let bimodule = verify_bimodule(&inst.quiver, &inst.phi, &inst.action)?;
            let axioms = verify_majid_axioms(h);
            let mut out = report_output(task, vec![cocycle, bimodule, axioms], json!({ "degree_cap": h.degree_cap() }));
            if out.passed {
                let _ = writeln!(out.text, "all axioms pass at L={}", h.degree_cap());
            }
            out
        }
        Task::Multiply => {
            let lhs = args.lhs.as_deref().ok_or(CliError::MissingArgument("multiply", "lhs"))?;
            let rhs = args.rhs.as_deref().ok_or(CliError::MissingArgument("multiply", "rhs"))?;
            let x = expr::element(lhs, &ctx)?;
            let y = expr::element(rhs, &ctx)?;
            let xy = h.multiply(&x, &y)?;
            let rendered = expr::render(&xy);
            TaskOutput {
                task,
                passed: true,
                data: json!({ "lhs": lhs, "rhs": rhs, "product": rendered, "terms": xy }),
                text: format!("{rendered}\n"),
                files: Vec::new(),
            }
        }
        Task::Antipode => {
            let arg = args.arg.as_deref().ok_or(CliError::MissingArgument("antipode", "arg"))?;
            let x = expr::element(arg, &ctx)?;
            let s = h.antipode(&x)?;
            let rendered = expr::render(&s);
            TaskOutput {
                task,
                passed: true,
                data: json!({ "arg": arg, "antipode": rendered, "terms": s }),
                text: format!("{rendered}\n"),
                files: Vec::new(),
            }
        }
        Task::Decompose => {
            let b = structure::blocks(h);
            let tr = structure::translation_check(h, &b);
            let bp = structure::block_product_check(h, &b);
            let cosets: Vec<Value> = b
                .blocks
                .iter()
                .map(|blk| json!({ "rep": blk.rep, "vertices": blk.vertices, "paths": blk.paths.len() }))
                .collect();
            let mut out = report_output(
                task,
                vec![tr, bp],
                json!({ "normal_subgroup": b.normal_subgroup, "blocks": cosets, "block_of": b.block_of }),
            );
            let _ = writeln!(out.text, "normal subgroup {:?}, {} blocks", b.normal_subgroup, b.count());
            out
        }
        Task::CrossedProduct => {
            let b = structure::blocks(h);
            let literal = structure::transport_report(h, ThetaReading::Literal, &b);
            let derived = structure::transport_report(h, ThetaReading::Derived, &b);
            let derived_passed = derived.passed();
            let cp = structure::crossed_product(h, ThetaReading::Literal).ok();
            let literal_passed = literal.passed();
            let mut out = report_output(
                task,
                vec![literal],
                json!({
                    "crossed_product": cp,
                    "derived_reading": { "passed": derived_passed, "report": derived },
                }),
            );
            let _ = writeln!(
                out.text,
                "literal theta: {}, derived theta: {}",
                verdict(literal_passed),
                verdict(derived_passed)
            );
            out
        }
        Task::Primitives => {
            let (cocommutative, witness) = structure::cocommutative_check(h);
            let lie = structure::primitives(h);
            let (reports, lie_json) = match lie {
                Ok(l) => {
                    let brackets: BTreeMap<String, String> = l
                        .brackets
                        .iter()
                        .map(|((i, j), e)| (format!("{i},{j}"), expr::render(e)))
                        .collect();
                    (vec![l.report.clone()], json!({ "basis": l.basis, "brackets": brackets }))
                }
                Err(e) => (Vec::new(), json!({ "error": e.to_string() })),
            };
            let mut out = report_output(
                task,
                reports,
                json!({ "cocommutative": cocommutative, "witness": witness, "lie": lie_json }),
            );
            let _ = writeln!(
                out.text,
                "cocommutative: {cocommutative}{}",
                witness.map(|w| format!(" (witness {})", expr::render(&h.basis(w)))).unwrap_or_default()
            );
            out
        }
        Task::Report => {
            let per_degree: Vec<usize> = inst.quiver.paths_up_to(h.degree_cap()).iter().map(Vec::len).collect();
            let beta: Vec<String> = inst.group.elements().map(|g| h.beta(&hopfquiver::Path::vertex(g)).to_string()).collect();
            let data = json!({
                "field_order": inst.field.order(),
                "group_order": inst.group.order(),
                "classes": inst.group.classes(),
                "ramification": inst.quiver.ramification().multiplicities,
                "vertices": inst.quiver.vertex_count(),
                "arrows": inst.quiver.arrow_count(),
                "paths_per_degree": per_degree,
                "components": inst.quiver.connected_components().count(),
                "cocycle_trivial": inst.phi.is_trivial(),
                "beta": beta,
                "degree_cap": h.degree_cap(),
            });
            let text = format!(
                "Q(zeta_{}), |G| = {}, {} arrows, {} components, paths per degree {:?}\n",
                inst.field.order(),
                inst.group.order(),
                inst.quiver.arrow_count(),
                inst.quiver.connected_components().count(),
                per_degree
            );
            TaskOutput {
                task,
                passed: true,
                data,
                text,
                files: Vec::new(),
            }
        }
        Task::ExportQuiver => {
            let (name, body) = match args.quiver_format {
                QuiverFormat::Dot => ("quiver.dot", inst.quiver.to_dot(|v| format!("v{v}"))),
                QuiverFormat::Json => {
                    let arrows: Vec<Value> = (0..inst.quiver.arrow_count())
                        .map(|a| {
                            let ends = inst.quiver.arrow(a);
                            let l = inst.quiver.label(a);
                            json!({
                                "id": a,
                                "source": ends.source,
                                "target": ends.target,
                                "class_element": l.class_element,
                                "slot": l.slot,
                            })
                        })
                        .collect();
                    let doc = json!({ "vertices": inst.quiver.vertex_count(), "arrows": arrows });
                    ("quiver.json", serde_json::to_string_pretty(&doc)? + "\n")
                }
            };
            TaskOutput {
                task,
                passed: true,
                data: json!({ "file": name, "content": body }),
                text: body.clone(),
                files: vec![(name.to_string(), body)],
            }
        }
    })
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Runs every task on an already-read spec.
pub fn run_spec(text: &str, args: &Args) -> Result<Outcome, CliError> {
    let spec = ProblemSpec::from_json(text)?;
    let tasks = if args.tasks.is_empty() { spec.tasks.clone() } else { args.tasks.clone() };
    if tasks.is_empty() {
        return Err(CliError::NoTasks);
    }
    let inst = Instance::build(&spec, args.degree_cap)?;
    let h = inst.structure()?;
    let mut outputs = Vec::new();
    for &t in &tasks {
        outputs.push(run_task(t, &inst, &h, args)?);
    }
    let passed = outputs.iter().all(|o| o.passed);
    let doc = json!({
        "schema": 1,
        "passed": passed,
        "degree_cap": inst.degree_cap,
        "tasks": outputs,
    });
    let json_text = serde_json::to_string_pretty(&doc)? + "\n";
    let mut summary = String::new();
    for o in &outputs {
        let _ = writeln!(summary, "== {} ==", serde_json::to_value(o.task)?.as_str().unwrap_or_default());
        summary.push_str(&o.text);
    }
    let _ = writeln!(summary, "overall: {}", verdict(passed));

    let stdout = match args.format {
        Format::Json => json_text.clone(),
        Format::Text => summary.clone(),
    };
    let mut files = vec![("report.json".to_string(), json_text), ("summary.txt".to_string(), summary)];
    for o in outputs {
        files.extend(o.files);
    }
    Ok(Outcome {
        code: if passed { EXIT_PASS } else { EXIT_FAIL },
        stdout,
        files,
    })
}

fn write_files(dir: &FsPath, files: &[(String, String)]) -> Result<(), CliError> {
    let err = |p: &FsPath, source| CliError::Write {
        path: p.display().to_string(),
        source,
    };
    std::fs::create_dir_all(dir).map_err(|e| err(dir, e))?;
    for (name, body) in files {
        let p = dir.join(name);
        std::fs::write(&p, body).map_err(|e| err(&p, e))?;
    }
    Ok(())
}

/// Full run: reads the spec, runs the tasks, writes `--out` files. Errors
/// are folded into the outcome with their exit codes.
pub fn run(args: &Args) -> Outcome {
    let failure = |e: CliError| Outcome {
        code: e.exit_code(),
        stdout: format!("error: {e}\n"),
        files: Vec::new(),
    };
    let text = match std::fs::read_to_string(&args.spec) {
        Ok(t) => t,
        Err(source) => {
            return failure(CliError::Read {
                path: args.spec.display().to_string(),
                source,
            })
        }
    };
    let outcome = match std::panic::catch_unwind(|| run_spec(&text, args)) {
        Ok(Ok(o)) => o,
        Ok(Err(e)) => return failure(e),
        Err(_) => {
            return Outcome {
                code: EXIT_INTERNAL,
                stdout: "error: internal failure\n".to_string(),
                files: Vec::new(),
            }
        }
    };
    if let Some(dir) = &args.out {
        if let Err(e) = write_files(dir, &outcome.files) {
            return failure(e);
        }
    }
    outcome
}
