//! Command-line front end. Every invocation is turned into a [`Request`]
//! (from flags or from a `--json` envelope), dispatched, and answered with
//! one JSON document on stdout. Errors go to stderr as one JSON line.

use std::io::Read;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::injectives::{minimal_injective_resolution, r_gamma, triangle_decompose, InjError};
use crate::json::JsonU64;
use crate::oracles::{w_pair_by_definition, OracleError};
use crate::spec_model::wire::{min_set_json, ClosedSetWire, IdealWire, PosetWire};
use crate::spec_model::{
    v_of_ideal, w_pair, IdealZ, Point, PosetSpec, PrimeZ, SpecClosedSet, SpecError,
    DEFAULT_MIN_BOUND,
};
use crate::verify::{self, Suite, VerifyParams};
use crate::zmodules::{
    ann_preradical_apply, closure, gamma_w, module_from_presentation, smith_normal_form, support,
    torsion_pair, w_of_preradical, DescriptorWire, FgModule, ModuleError, PresentationMatrix,
    PresentationWire, Submodule,
};

#[derive(Debug, Parser)]
#[command(
    name = "lcoh",
    version,
    about = "Specialization-closed supports and local cohomology over Spec Z and finite posets"
)]
pub struct Cli {
    /// Read the whole request from a JSON envelope (`-` for stdin).
    #[arg(long, global = true, value_name = "FILE|-")]
    json: Option<String>,
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Lattice operations on specialization-closed sets.
    Spec {
        #[arg(value_enum)]
        op: SpecOp,
        /// Operands: JSON sets, `whole`, `empty`, integers or point names.
        args: Vec<String>,
        #[arg(long, value_enum)]
        backend: Option<BackendName>,
        /// Poset as `{"points":[...],"leq":[[q,p],...]}`.
        #[arg(long)]
        poset: Option<String>,
        /// Enumeration bound for infinite `min` results.
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Section functors and local cohomology of finitely generated groups.
    Lc {
        #[arg(value_enum)]
        op: LcOp,
        /// `whole`, `empty` or a JSON set over `Spec Z`.
        #[arg(long)]
        w: Option<String>,
        /// `{"rank":r,"torsion":[[p,e],...]}`.
        #[arg(long)]
        module: Option<String>,
        /// Ideal generator, or `{"gen":n}`.
        #[arg(long)]
        ideal: Option<String>,
        /// Preradical descriptor tree.
        #[arg(long)]
        descriptor: Option<String>,
        /// `{"rows":r,"cols":c,"entries":[[...],...]}`.
        #[arg(long)]
        presentation: Option<String>,
    },
    /// `W((a),(b))`, with a membership report by definition.
    Wij {
        a: String,
        b: String,
        #[arg(long)]
        prime_bound: Option<u64>,
        #[arg(long)]
        power_bound: Option<u32>,
    },
    /// Run the seeded invariant suites; exits 1 on any failure.
    Verify {
        #[arg(long)]
        suite: Option<Suite>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        poset_size: Option<usize>,
        #[arg(long)]
        cases: Option<usize>,
        #[arg(long)]
        prime_bound: Option<u64>,
        #[arg(long)]
        power_bound: Option<u32>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CommandName {
    Spec,
    Lc,
    Wij,
    Verify,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BackendName {
    Z,
    Poset,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpecOp {
    Union,
    Intersect,
    Quotient,
    V,
    Wij,
    Min,
    Closed,
    Chain,
    Contains,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LcOp {
    Gamma,
    Pair,
    Rgamma,
    Ann,
    Closure,
    Module,
    Support,
    Resolution,
    Triangle,
}

/// The request envelope accepted by `--json`; flag invocations are
/// converted to the same shape.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Request {
    pub command: Option<CommandName>,
    #[serde(default)]
    pub op: Option<String>,
    #[serde(default)]
    pub backend: Option<BackendName>,
    #[serde(default)]
    pub poset: Option<Value>,
    #[serde(default)]
    pub args: Vec<Value>,
    #[serde(default)]
    pub w: Option<Value>,
    #[serde(default)]
    pub module: Option<Value>,
    #[serde(default)]
    pub ideal: Option<Value>,
    #[serde(default)]
    pub descriptor: Option<Value>,
    #[serde(default)]
    pub presentation: Option<Value>,
    #[serde(default)]
    pub bound: Option<JsonU64>,
    #[serde(default)]
    pub suite: Option<String>,
    #[serde(default)]
    pub seed: Option<JsonU64>,
    #[serde(default)]
    pub poset_size: Option<usize>,
    #[serde(default)]
    pub cases: Option<usize>,
    #[serde(default)]
    pub prime_bound: Option<JsonU64>,
    #[serde(default)]
    pub power_bound: Option<u32>,
}

/// Exit status and one-line reason.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Malformed input: exit 2.
    Schema(String),
    /// Well-formed input violating an operation's precondition: exit 3.
    Precondition(String),
    /// A verification suite reported failures: exit 1.
    VerifyFailed,
    /// A result failed its own cross-check: exit 1.
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Schema(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::VerifyFailed | CliError::Internal(_) => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        let (kind, msg) = match self {
            CliError::Schema(m) => ("schema", m.as_str()),
            CliError::Precondition(m) => ("precondition", m.as_str()),
            CliError::VerifyFailed => ("verify", "one or more properties failed"),
            CliError::Internal(m) => ("internal", m.as_str()),
        };
        json!({ "error": kind, "message": msg })
    }
}

impl From<SpecError> for CliError {
    fn from(e: SpecError) -> Self {
        if e.is_precondition() {
            CliError::Precondition(e.to_string())
        } else {
            CliError::Schema(e.to_string())
        }
    }
}

impl From<ModuleError> for CliError {
    fn from(e: ModuleError) -> Self {
        match e {
            ModuleError::Spec(s) => s.into(),
            ModuleError::NotZBackend => CliError::Precondition(e.to_string()),
            other => CliError::Schema(other.to_string()),
        }
    }
}

impl From<InjError> for CliError {
    fn from(e: InjError) -> Self {
        match e {
            InjError::Module(m) => m.into(),
            InjError::NotZBackend | InjError::NotFinitelyGenerated => {
                CliError::Precondition(e.to_string())
            }
            InjError::CrossCheck(_) | InjError::InconsistentComplex => {
                CliError::Internal(e.to_string())
            }
            other => CliError::Schema(other.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::NotContained => CliError::Precondition(e.to_string()),
            other => CliError::Schema(other.to_string()),
        }
    }
}

fn schema(msg: impl Into<String>) -> CliError {
    CliError::Schema(msg.into())
}

/// Flag strings are taken as JSON when they parse, else as bare strings.
fn loose(s: &str) -> Value {
    serde_json::from_str(s).unwrap_or_else(|_| Value::String(s.to_string()))
}

fn loose_opt(s: Option<String>) -> Option<Value> {
    s.map(|s| loose(&s))
}

impl Cli {
    pub fn into_request(self) -> Result<Request, CliError> {
        if let Some(src) = &self.json {
            if self.command.is_some() {
                return Err(schema("--json replaces the subcommand, do not give both"));
            }
            let text = if src == "-" {
                let mut s = String::new();
                std::io::stdin()
                    .read_to_string(&mut s)
                    .map_err(|e| schema(format!("stdin: {e}")))?;
                s
            } else {
                std::fs::read_to_string(src).map_err(|e| schema(format!("{src}: {e}")))?
            };
            return serde_json::from_str(&text).map_err(|e| schema(format!("request: {e}")));
        }
        let command = self
            .command
            .ok_or_else(|| schema("missing subcommand (spec, lc, wij, verify) or --json"))?;
        Ok(match command {
            Command::Spec {
                op,
                args,
                backend,
                poset,
                bound,
            } => Request {
                command: Some(CommandName::Spec),
                op: Some(
                    op.to_possible_value()
                        .expect("no skipped variants")
                        .get_name()
                        .to_string(),
                ),
                backend,
                poset: loose_opt(poset),
                args: args.iter().map(|a| loose(a)).collect(),
                bound: bound.map(JsonU64),
                ..Default::default()
            },
            Command::Lc {
                op,
                w,
                module,
                ideal,
                descriptor,
                presentation,
            } => Request {
                command: Some(CommandName::Lc),
                op: Some(
                    op.to_possible_value()
                        .expect("no skipped variants")
                        .get_name()
                        .to_string(),
                ),
                w: loose_opt(w),
                module: loose_opt(module),
                ideal: loose_opt(ideal),
                descriptor: loose_opt(descriptor),
                presentation: loose_opt(presentation),
                ..Default::default()
            },
            Command::Wij {
                a,
                b,
                prime_bound,
                power_bound,
            } => Request {
                command: Some(CommandName::Wij),
                args: vec![loose(&a), loose(&b)],
                prime_bound: prime_bound.map(JsonU64),
                power_bound,
                ..Default::default()
            },
            Command::Verify {
                suite,
                seed,
                poset_size,
                cases,
                prime_bound,
                power_bound,
            } => Request {
                command: Some(CommandName::Verify),
                suite: suite.map(|s| s.name().to_string()),
                seed: seed.map(JsonU64),
                poset_size,
                cases,
                prime_bound: prime_bound.map(JsonU64),
                power_bound,
                ..Default::default()
            },
        })
    }
}

fn parse_op<T: ValueEnum>(op: Option<&str>, command: &str) -> Result<T, CliError> {
    let op = op.ok_or_else(|| schema(format!("{command}: missing op")))?;
    T::from_str(op, false).map_err(|_| schema(format!("{command}: unknown op {op:?}")))
}

fn decode<T: for<'de> Deserialize<'de>>(v: &Value, what: &str) -> Result<T, CliError> {
    T::deserialize(v).map_err(|e| schema(format!("{what}: {e}")))
}

fn ideal_of(v: &Value) -> Result<IdealZ, CliError> {
    match v {
        Value::Object(_) => Ok(decode::<IdealWire>(v, "ideal")?.into()),
        Value::Number(n) if n.is_i64() && n.as_i64().is_some_and(|x| x < 0) => {
            Ok(IdealZ::from_signed(n.as_i64().expect("checked")))
        }
        _ => Ok(IdealZ::new(decode::<JsonU64>(v, "ideal generator")?.0)),
    }
}

struct SetContext {
    backend: BackendName,
    poset: Option<Arc<PosetSpec>>,
}

impl SetContext {
    fn new(req: &Request) -> Result<Self, CliError> {
        let poset = match &req.poset {
            Some(p) => Some(Arc::new(decode::<PosetWire>(p, "poset")?.build()?)),
            None => None,
        };
        let backend = req.backend.unwrap_or(if poset.is_some() {
            BackendName::Poset
        } else {
            BackendName::Z
        });
        if backend == BackendName::Poset && poset.is_none() {
            return Err(schema("--backend poset needs --poset"));
        }
        Ok(SetContext { backend, poset })
    }

    fn set(&self, v: &Value) -> Result<SpecClosedSet, CliError> {
        match (v, self.backend) {
            (Value::String(s), BackendName::Z) if s == "whole" => Ok(SpecClosedSet::z_whole()),
            (Value::String(s), BackendName::Z) if s == "empty" => Ok(SpecClosedSet::z_empty()),
            (Value::String(s), BackendName::Poset) if s == "whole" => Ok(
                SpecClosedSet::poset_whole(self.poset.as_ref().expect("checked")),
            ),
            (Value::String(s), BackendName::Poset) if s == "empty" => Ok(
                SpecClosedSet::poset_empty(self.poset.as_ref().expect("checked")),
            ),
            (Value::Object(_), _) => {
                let wire: ClosedSetWire = decode(v, "closed set")?;
                let w = wire.decode(self.poset.as_ref())?;
                let got = match w {
                    SpecClosedSet::Poset(_) => BackendName::Poset,
                    _ => BackendName::Z,
                };
                if got != self.backend {
                    return Err(CliError::Precondition(format!(
                        "backend mismatch: set is {} but the request uses {}",
                        w.backend().name(),
                        if self.backend == BackendName::Z {
                            "z"
                        } else {
                            "poset"
                        }
                    )));
                }
                Ok(w)
            }
            _ => Err(schema(format!(
                "expected a closed set, `whole` or `empty`, got {v}"
            ))),
        }
    }

    fn point(&self, v: &Value) -> Result<Point, CliError> {
        match self.backend {
            BackendName::Z => {
                let n = decode::<JsonU64>(v, "point")?.0;
                Ok(Point::Z(if n == 0 {
                    PrimeZ::Zero
                } else {
                    PrimeZ::max(n)?
                }))
            }
            BackendName::Poset => {
                let poset = self.poset.as_ref().expect("checked");
                let id = v
                    .as_str()
                    .ok_or_else(|| schema("poset points are named by strings"))?;
                poset
                    .index_of(id)
                    .map(Point::Poset)
                    .ok_or_else(|| SpecError::UnknownPoint(id.into()).into())
            }
        }
    }
}

fn set_result(w: &SpecClosedSet) -> Value {
    json!({ "result": w, "closed": w.is_closed() })
}

fn arity(args: &[Value], n: usize, op: &str) -> Result<(), CliError> {
    if args.len() != n {
        return Err(schema(format!(
            "{op} takes {n} operand(s), got {}",
            args.len()
        )));
    }
    Ok(())
}

fn cmd_spec(req: &Request) -> Result<Value, CliError> {
    let op: SpecOp = parse_op(req.op.as_deref(), "spec")?;
    let ctx = SetContext::new(req)?;
    let args = &req.args;
    let sets = || {
        args.iter()
            .map(|a| ctx.set(a))
            .collect::<Result<Vec<_>, _>>()
    };
    Ok(match op {
        SpecOp::Union => set_result(&SpecClosedSet::union_all(&sets()?)?),
        SpecOp::Intersect => set_result(&SpecClosedSet::intersect_all(&sets()?)?),
        SpecOp::Quotient => {
            arity(args, 2, "quotient")?;
            let s = sets()?;
            set_result(&SpecClosedSet::quotient(&s[0], &s[1])?)
        }
        SpecOp::V => {
            arity(args, 1, "v")?;
            set_result(&v_of_ideal(ideal_of(&args[0])?))
        }
        SpecOp::Wij => {
            arity(args, 2, "wij")?;
            set_result(&w_pair(ideal_of(&args[0])?, ideal_of(&args[1])?))
        }
        SpecOp::Min => {
            arity(args, 1, "min")?;
            let w = ctx.set(&args[0])?;
            let bound = req.bound.map_or(DEFAULT_MIN_BOUND, |b| b.0);
            json!({ "result": min_set_json(&w.min_elements_bounded(bound), ctx.poset.as_deref()) })
        }
        SpecOp::Closed => {
            arity(args, 1, "closed")?;
            json!({ "result": ctx.set(&args[0])?.is_closed() })
        }
        SpecOp::Chain => {
            arity(args, 2, "chain")?;
            let w = ctx.set(&args[0])?;
            let n = decode::<usize>(&args[1], "chain length")?;
            json!({ "result": w.acc_witness_chain(n)? })
        }
        SpecOp::Contains => {
            arity(args, 2, "contains")?;
            let w = ctx.set(&args[0])?;
            json!({ "result": w.contains(ctx.point(&args[1])?)? })
        }
    })
}

fn need<'a>(v: &'a Option<Value>, flag: &str, op: &str) -> Result<&'a Value, CliError> {
    v.as_ref()
        .ok_or_else(|| schema(format!("lc {op} needs --{flag}")))
}

fn z_set(v: &Value) -> Result<SpecClosedSet, CliError> {
    SetContext {
        backend: BackendName::Z,
        poset: None,
    }
    .set(v)
}

fn submodule_json(s: &Submodule) -> Value {
    json!({ "result": s.module(), "surviving": s.surviving(), "embedding": s.embedding() })
}

fn cmd_lc(req: &Request) -> Result<Value, CliError> {
    let op: LcOp = parse_op(req.op.as_deref(), "lc")?;
    let name = req.op.as_deref().unwrap_or_default();
    let w = || z_set(need(&req.w, "w", name)?);
    let module = || decode::<FgModule>(need(&req.module, "module", name)?, "module");
    Ok(match op {
        LcOp::Gamma => submodule_json(&gamma_w(&w()?, &module()?)?),
        LcOp::Pair => {
            let pair = torsion_pair(&w()?, &module()?)?;
            json!({
                "torsion": pair.torsion.module(),
                "torsion_free": pair.torsion_free,
                "surviving": pair.torsion.surviving(),
            })
        }
        LcOp::Rgamma => serde_json::to_value(r_gamma(&w()?, &module()?)?).expect("serializable"),
        LcOp::Ann => {
            let ideal = ideal_of(need(&req.ideal, "ideal", name)?)?;
            submodule_json(&ann_preradical_apply(ideal, &module()?))
        }
        LcOp::Closure => {
            let d =
                decode::<DescriptorWire>(need(&req.descriptor, "descriptor", name)?, "descriptor")?
                    .decode()?;
            let cl = closure(&d)?;
            let mut out = json!({ "result": DescriptorWire::from(&cl), "w": w_of_preradical(&d)? });
            if req.module.is_some() {
                let m = module()?;
                let applied = d.apply(&m)?;
                let closed = cl.apply(&m)?;
                out["applied"] = submodule_json(&applied);
                out["closure_applied"] = submodule_json(&closed);
                out["contained"] = json!(applied.is_subset(&closed));
            }
            out
        }
        LcOp::Module => {
            let wire = decode::<PresentationWire>(
                need(&req.presentation, "presentation", name)?,
                "presentation",
            )?;
            let a = PresentationMatrix::try_from(wire)?;
            let snf = smith_normal_form(&a);
            let diagonal: Vec<String> = snf.diagonal.iter().map(|d| d.to_string()).collect();
            json!({ "result": module_from_presentation(&a)?, "diagonal": diagonal })
        }
        LcOp::Support => set_result(&support(&module()?)),
        LcOp::Resolution => {
            serde_json::to_value(minimal_injective_resolution(&module()?)).expect("serializable")
        }
        LcOp::Triangle => {
            serde_json::to_value(triangle_decompose(&w()?, &module()?)?).expect("serializable")
        }
    })
}

/// Default prime bound for the `wij` membership report.
const WIJ_PRIME_BOUND: u64 = 100;
const WIJ_POWER_BOUND: u32 = 64;

fn cmd_wij(req: &Request) -> Result<Value, CliError> {
    arity(&req.args, 2, "wij")?;
    let (i, j) = (ideal_of(&req.args[0])?, ideal_of(&req.args[1])?);
    let w = w_pair(i, j);
    let report = w_pair_by_definition(
        i.generator(),
        j.generator(),
        req.prime_bound.map_or(WIJ_PRIME_BOUND, |b| b.0),
        req.power_bound.unwrap_or(WIJ_POWER_BOUND),
    )?;
    Ok(json!({
        "result": w,
        "closed": w.is_closed(),
        "min": min_set_json(&w.min_elements_bounded(DEFAULT_MIN_BOUND.min(100)), None),
        "definition": report,
    }))
}

fn cmd_verify(req: &Request) -> Result<(Value, bool), CliError> {
    let suite = match &req.suite {
        Some(s) => s.parse::<Suite>().map_err(CliError::Schema)?,
        None => Suite::All,
    };
    let d = VerifyParams::default();
    let params = VerifyParams {
        seed: req.seed.map_or(d.seed, |s| s.0),
        poset_size: req.poset_size.unwrap_or(d.poset_size),
        cases: req.cases.unwrap_or(d.cases),
        prime_bound: req.prime_bound.map_or(d.prime_bound, |b| b.0),
        power_bound: req.power_bound.unwrap_or(d.power_bound),
    };
    if params.poset_size > crate::oracles::MAX_SEARCH_POINTS {
        return Err(schema(format!(
            "--poset-size is limited to {}",
            crate::oracles::MAX_SEARCH_POINTS
        )));
    }
    if params.prime_bound < 2 || params.power_bound == 0 {
        return Err(schema(
            "--prime-bound must be at least 2 and --power-bound positive",
        ));
    }
    let report = verify::run(suite, &params);
    Ok((
        serde_json::to_value(&report).expect("serializable"),
        report.pass,
    ))
}

/// Answers a request. `Ok((value, false))` is a completed run that found
/// failures.
pub fn dispatch(req: &Request) -> Result<(Value, bool), CliError> {
    match req
        .command
        .ok_or_else(|| schema("request is missing \"command\""))?
    {
        CommandName::Spec => cmd_spec(req).map(|v| (v, true)),
        CommandName::Lc => cmd_lc(req).map(|v| (v, true)),
        CommandName::Wij => cmd_wij(req).map(|v| (v, true)),
        CommandName::Verify => cmd_verify(req),
    }
}

fn render(v: &Value, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(v).expect("serializable")
    } else {
        serde_json::to_string(v).expect("serializable")
    }
}

/// Runs the binary and returns its exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            let msg = e.to_string();
            let first = msg
                .lines()
                .next()
                .unwrap_or_default()
                .trim_start_matches("error: ")
                .to_string();
            eprintln!("{}", CliError::Schema(first).to_json());
            return 2;
        }
    };
    let pretty = cli.pretty;
    let outcome = cli.into_request().and_then(|req| dispatch(&req));
    match outcome {
        Ok((v, true)) => {
            println!("{}", render(&v, pretty));
            0
        }
        Ok((v, false)) => {
            println!("{}", render(&v, pretty));
            eprintln!("{}", CliError::VerifyFailed.to_json());
            CliError::VerifyFailed.exit_code()
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Result<Value, CliError> {
        let cli = Cli::try_parse_from(std::iter::once("lcoh").chain(args.iter().copied())).unwrap();
        dispatch(&cli.into_request()?).map(|(v, _)| v)
    }

    #[test]
    fn spec_examples() {
        let v = run(&[
            "spec",
            "--backend",
            "z",
            "quotient",
            r#"{"kind":"finite","primes":[]}"#,
            r#"{"kind":"finite","primes":[3]}"#,
        ])
        .unwrap();
        assert_eq!(
            v["result"],
            json!({"backend":"z","kind":"cofinite","primes":[3]})
        );
        let v = run(&["spec", "wij", "2", "3"]).unwrap();
        assert_eq!(v["result"]["kind"], "cofinite");
        assert_eq!(v["closed"], false);
        let v = run(&["spec", "v", "0"]).unwrap();
        assert_eq!(v["result"]["kind"], "whole");
    }

    #[test]
    fn precondition_and_schema_errors() {
        let e = run(&[
            "spec",
            "quotient",
            r#"{"kind":"finite","primes":[3]}"#,
            "empty",
        ])
        .unwrap_err();
        assert_eq!(e.exit_code(), 3);
        assert!(e.to_json()["message"]
            .as_str()
            .unwrap()
            .contains("not contained"));
        let e = run(&[
            "spec",
            "quotient",
            r#"{"kind":"finite","primes":[4]}"#,
            "whole",
        ])
        .unwrap_err();
        assert_eq!(e.exit_code(), 2);
        let e = run(&["spec", "union", r#"{"kind":"finite","bogus":[]}"#]).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        let e = run(&["spec", "chain", r#"{"kind":"finite","primes":[2]}"#, "3"]).unwrap_err();
        assert_eq!(e.exit_code(), 3);
    }

    #[test]
    fn poset_backend() {
        let poset = r#"{"points":["q","p"],"leq":[["q","p"]]}"#;
        let v = run(&[
            "spec",
            "--poset",
            poset,
            "quotient",
            r#"{"members":["p"]}"#,
            r#"{"members":["p"]}"#,
        ])
        .unwrap();
        assert_eq!(v["result"]["members"], json!(["q", "p"]));
        let v = run(&[
            "spec",
            "--poset",
            poset,
            "contains",
            r#"{"members":["p"]}"#,
            "q",
        ])
        .unwrap();
        assert_eq!(v["result"], false);
        let e = run(&["spec", "--backend", "poset", "union", "whole"]).unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn lc_examples() {
        let v = run(&[
            "lc",
            "rgamma",
            "--w",
            r#"{"kind":"finite","primes":[2]}"#,
            "--module",
            r#"{"rank":1,"torsion":[]}"#,
        ])
        .unwrap();
        assert_eq!(v["h0"], json!({"rank":0,"torsion":[]}));
        assert_eq!(
            v["h1"],
            json!({"q":0,"pruefer":{"default":0,"except":{"2":1}}})
        );
        let m = r#"{"rank":1,"torsion":[[2,2],[3,1]]}"#;
        let v = run(&["lc", "gamma", "--w", "whole", "--module", m]).unwrap();
        assert_eq!(v["result"], loose(m));
        let v = run(&["lc", "pair", "--w", "empty", "--module", m]).unwrap();
        assert_eq!(v["torsion"], json!({"rank":0,"torsion":[]}));
        assert_eq!(v["torsion_free"], loose(m));
        let e = run(&["lc", "gamma", "--module", m]).unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn envelope_rejects_unknown_fields() {
        let req: Result<Request, _> =
            serde_json::from_str(r#"{"command":"spec","op":"v","args":[6]}"#);
        let (v, _) = dispatch(&req.unwrap()).unwrap();
        assert_eq!(v["result"]["primes"], json!([2, 3]));
        assert!(serde_json::from_str::<Request>(r#"{"command":"spec","extra":1}"#).is_err());
    }
}
