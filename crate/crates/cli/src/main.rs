//! `genflag`: batch front end for the flag and operator library.
//!
//! Exit codes: 0 success, 1 a membership query answered false, 2 input that
//! could not be read or used, 3 a failed verification or internal error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use genflag_core::document::{self, OperatorDoc, PointDoc, SchemaDoc};
use genflag_core::isotropic::exclusion_warning;
use genflag_core::verify::Suite;
use genflag_core::{
    act, act_direct, dual_schema, duality_map, in_stabilizer, is_isotropic_flag, is_symmetric, preserves_form, CutId,
    Error, FlagPoint, FlagSchema, FormKind, IndexKind, Scenario, StructuredOperator, Window,
};

#[derive(Parser)]
#[command(name = "genflag", version, about = "Exact computations with generalized flags and their operators")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Built-in scenario (ex2_1 ... ex2_5, sato). Defaults to sato.
    #[arg(long, global = true, conflicts_with = "schema")]
    scenario: Option<String>,

    /// Schema document.
    #[arg(long, global = true)]
    schema: Option<PathBuf>,

    /// Operator document.
    #[arg(long, global = true)]
    op: Option<PathBuf>,

    /// Point document, or `reference`.
    #[arg(long, global = true)]
    point: Option<String>,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[arg(long, global = true)]
    trials: Option<usize>,

    /// Window `lo:hi` for the reference point.
    #[arg(long, global = true, allow_hyphen_values = true)]
    window: Option<String>,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the schema and any operator or point given with it.
    Validate,
    /// Whether the operator belongs to a group.
    Member {
        #[arg(long, value_enum)]
        group: Group,
    },
    /// Degrees of the operator at the cuts near its window.
    Degree,
    /// Image of the point under the operator.
    Act {
        /// Push subspaces forward instead of going through annihilators.
        #[arg(long)]
        direct: bool,
    },
    /// The dual schema, or with a point its image under the duality map.
    Dual,
    /// Whether the schema is symmetric.
    Symmetric,
    /// Run a property suite.
    Verify { suite: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Group {
    Mackey,
    EventuallyIdentity,
    WAligned,
    Eligible,
    Stabilizer,
    Orthogonal,
    Symplectic,
}

/// Why a command did not produce its normal report.
enum Failure {
    Input(anyhow::Error),
    Internal(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.into())
    }
}

struct Report {
    body: Value,
    code: u8,
}

impl Report {
    fn ok(body: Value) -> Report {
        Report { body, code: 0 }
    }
}

struct Inputs<'a> {
    cli: &'a Cli,
    scenario: Option<Scenario>,
    schema: FlagSchema,
}

impl<'a> Inputs<'a> {
    fn load(cli: &'a Cli) -> Result<Inputs<'a>, Failure> {
        let (scenario, schema) = match (&cli.scenario, &cli.schema) {
            (_, Some(path)) => (None, document::schema_from_json(&read(path)?)?),
            (Some(name), None) => {
                let s: Scenario = name.parse()?;
                (Some(s), s.schema())
            }
            (None, None) => (Some(Scenario::Sato), Scenario::Sato.schema()),
        };
        Ok(Inputs { cli, scenario, schema })
    }

    fn operator(&self) -> Result<StructuredOperator, Failure> {
        let path = self.cli.op.as_ref().ok_or_else(|| anyhow!("--op is required"))?;
        let text = read(path)?;
        Ok(document::operator_from_json(&self.schema, &text).with_context(|| format!("reading {}", path.display()))?)
    }

    fn window(&self) -> Result<Option<Window>, Failure> {
        let Some(text) = &self.cli.window else {
            return Ok(None);
        };
        let (lo, hi) = text.split_once(':').ok_or_else(|| anyhow!("--window must look like lo:hi"))?;
        let lo: i64 = lo.trim().parse().context("window lower bound")?;
        let hi: i64 = hi.trim().parse().context("window upper bound")?;
        if lo > hi {
            return Err(anyhow!("window {lo}:{hi} is empty").into());
        }
        Ok(Some(Window::new(self.schema.kind(), lo, hi)))
    }

    fn default_window(&self) -> Window {
        match self.scenario {
            Some(s) => s.default_window(),
            None => Window::new(self.schema.kind(), -2, 4),
        }
    }

    fn point(&self) -> Result<FlagPoint, Failure> {
        let window = self.window()?;
        match self.cli.point.as_deref() {
            None | Some("reference") => {
                Ok(FlagPoint::reference(&self.schema, window.unwrap_or_else(|| self.default_window())))
            }
            Some(path) => {
                let text = read(&PathBuf::from(path))?;
                let p = document::point_from_json(&self.schema, &text).with_context(|| format!("reading {path}"))?;
                match window {
                    Some(w) => Ok(p.enlarge_window(&w.hull(&p.window()))?),
                    None => Ok(p),
                }
            }
        }
    }

    fn form(&self, symplectic: bool) -> Result<FormKind, Failure> {
        match (self.schema.kind(), symplectic) {
            (IndexKind::AllInts, false) => Ok(FormKind::OrthogonalAllInts),
            (IndexKind::SatoSplit, false) => Ok(FormKind::OrthogonalSato),
            (IndexKind::SatoSplit, true) => Ok(FormKind::SymplecticSato),
            (kind, _) => {
                let which = if symplectic { "symplectic" } else { "symmetric" };
                Err(anyhow!("no {which} form is defined on index kind {kind}").into())
            }
        }
    }
}

fn read(path: &PathBuf) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn cut_map(entries: impl IntoIterator<Item = (CutId, i64)>) -> Value {
    let map: Map<String, Value> = entries.into_iter().map(|(c, d)| (c.after.to_string(), json!(d))).collect();
    Value::Object(map)
}

fn validate(inputs: &Inputs) -> Result<Report, Failure> {
    let schema = &inputs.schema;
    let mut body = json!({
        "valid": true,
        "schema": SchemaDoc::from_schema(schema),
        "symmetric": is_symmetric(schema),
    });
    if inputs.cli.op.is_some() {
        let f = inputs.operator()?;
        body["operator"] = json!(OperatorDoc::from_operator(&f));
    }
    if inputs.cli.point.is_some() {
        let p = inputs.point()?;
        body["point"] = json!(PointDoc::from_point(&p));
        body["relative_position"] = cut_map(p.relative_position());
        let mut isotropic = Map::new();
        let mut warnings = Vec::new();
        for form in FormKind::ALL.into_iter().filter(|f| f.index_kind() == schema.kind()) {
            isotropic.insert(form.name().into(), json!(is_isotropic_flag(&p, form)?));
            if let Some(w) = exclusion_warning(&p, form) {
                warnings.push(json!(format!("{}: {w}", form.name())));
            }
        }
        if !isotropic.is_empty() {
            body["isotropic"] = Value::Object(isotropic);
        }
        if !warnings.is_empty() {
            body["warnings"] = Value::Array(warnings);
        }
    }
    Ok(Report::ok(body))
}

fn member(inputs: &Inputs, group: Group) -> Result<Report, Failure> {
    let f = inputs.operator()?;
    let (name, answer) = match group {
        Group::Mackey => ("mackey", f.is_mackey()),
        Group::EventuallyIdentity => ("eventually-identity", f.is_eventually_identity()),
        Group::WAligned => ("w-aligned", f.is_w_aligned()),
        Group::Eligible => ("eligible", f.is_eligible()?),
        Group::Stabilizer => ("stabilizer", in_stabilizer(&f, &inputs.point()?)?),
        Group::Orthogonal | Group::Symplectic => {
            let symplectic = matches!(group, Group::Symplectic);
            let form = inputs.form(symplectic)?;
            let answer = match preserves_form(&f, form) {
                Err(Error::NonzeroTail(_)) => false,
                other => other?,
            };
            (if symplectic { "symplectic" } else { "orthogonal" }, answer)
        }
    };
    Ok(Report { body: json!({"group": name, "member": answer}), code: if answer { 0 } else { 1 } })
}

fn degree(inputs: &Inputs) -> Result<Report, Failure> {
    let f = inputs.operator()?;
    let report = f.degree()?;
    Ok(Report::ok(json!({
        "per_cut": cut_map(report.per_cut.iter().map(|(c, d)| (*c, *d))),
        "uniform_tail_degree": report.uniform_tail_degree,
        "w_aligned": f.is_w_aligned(),
        "eligible": f.is_eligible()?,
    })))
}

fn action(inputs: &Inputs, direct: bool) -> Result<Report, Failure> {
    let f = inputs.operator()?;
    let p = inputs.point()?;
    let q = if direct { act_direct(&f, &p)? } else { act(&f, &p)? };
    Ok(Report::ok(json!({
        "point": PointDoc::from_point(&q),
        "relative_position": cut_map(q.relative_position()),
        "commensurable_with_input": q.is_commensurable(&p)?,
    })))
}

fn dual(inputs: &Inputs) -> Result<Report, Failure> {
    if inputs.cli.point.is_some() {
        let q = duality_map(&inputs.point()?)?;
        return Ok(Report::ok(json!({"point": PointDoc::from_point(&q)})));
    }
    Ok(Report::ok(json!({"schema": SchemaDoc::from_schema(&dual_schema(&inputs.schema))})))
}

fn verify(cli: &Cli, suite: &str) -> Result<Report, Failure> {
    let Ok(suite) = suite.parse::<Suite>() else {
        let known: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
        return Err(anyhow!("unknown suite {suite:?}; known suites: {}", known.join(", ")).into());
    };
    let report = suite.run(cli.seed, cli.trials);
    let code = if report.passed { 0 } else { 3 };
    Ok(Report { body: json!(report), code })
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    if let Command::Verify { suite } = &cli.command {
        return verify(cli, suite);
    }
    let inputs = Inputs::load(cli)?;
    match &cli.command {
        Command::Validate => validate(&inputs),
        Command::Member { group } => member(&inputs, *group),
        Command::Degree => degree(&inputs),
        Command::Act { direct } => action(&inputs, *direct),
        Command::Dual => dual(&inputs),
        Command::Symmetric => Ok(Report::ok(json!({"symmetric": is_symmetric(&inputs.schema)}))),
        Command::Verify { .. } => unreachable!("handled above"),
    }
}

fn emit(cli: &Cli, body: &Value) -> anyhow::Result<()> {
    let mut text = serde_json::to_string_pretty(body)?;
    text.push('\n');
    match &cli.out {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| run(&cli)))
        .unwrap_or_else(|_| Err(Failure::Internal(anyhow!("internal error"))));
    let result = outcome.and_then(|report| {
        emit(&cli, &report.body).map_err(Failure::Input)?;
        Ok(report.code)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arguments_parse() {
        let cli =
            Cli::try_parse_from(["genflag", "act", "--direct", "--window", "-3:2", "--point", "reference"]).unwrap();
        assert!(matches!(cli.command, Command::Act { direct: true }));
        assert_eq!(cli.window.as_deref(), Some("-3:2"));
        assert!(Cli::try_parse_from(["genflag", "member", "--group", "nope"]).is_err());
        assert!(Cli::try_parse_from(["genflag", "symmetric", "--scenario", "sato", "--schema", "x.json"]).is_err());
    }
}
