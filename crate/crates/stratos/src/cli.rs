//! The query surface: model loading plus the `validate`, `eval`, `valid`,
//! `axioms`, `can`, `plans`, `entropy`, `simulate`, and `what-if` verbs.
//!
//! Results are printed as JSON with a stable field order (or aligned text
//! with `--format text`). Output is byte-identical across runs: timing is
//! reported only when `--timing` is passed. Exit codes: 0 when the query
//! was answered, 1 when a boolean verb answered false under `--strict`,
//! 2 for usage or model errors.

use std::collections::BTreeMap;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::ability::{self, Space};
use crate::axioms;
use crate::entropy;
use crate::error::{Error, Result};
use crate::info;
use crate::intention;
use crate::logic::Formula;
use crate::model::{parse_vertex_addr, Model, RawStrategy, RawStrategySet, StrategySetSpec};
use crate::pragmatics;
use crate::strategy::PureStrategy;
use crate::world::{Time, VertexIx};

#[derive(Parser)]
#[command(
    name = "stratos",
    version,
    about = "Explicit-state workbench for multi-agent dynamic possible-world models"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// Path to the model file.
    #[arg(long)]
    model: String,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Exit with code 1 when a boolean verdict is false.
    #[arg(long)]
    strict: bool,
    /// Include wall-clock timing in the output.
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CanForm {
    O,
    S,
    Co,
    Coop,
    Cocoop,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CanMode {
    Bool,
    Pess,
    Opt,
    Prob,
    Xu,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PlanKind {
    Plans,
    Co,
    Group,
    Will,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EntropyKind {
    State,
    Control,
    Conditional,
    Strategic,
}

#[derive(Subcommand)]
enum Cmd {
    /// Load a model and report every ensemble property verdict.
    Validate {
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate a formula at a vertex.
    Eval {
        #[command(flatten)]
        common: Common,
        /// Vertex address (`H0@1` or `s0>s1`).
        #[arg(long)]
        at: String,
        formula: String,
    },
    /// Check a formula at every (history, time) point.
    Valid {
        #[command(flatten)]
        common: Common,
        formula: String,
    },
    /// Run the information-condition axiom schema suites.
    Axioms {
        #[command(flatten)]
        common: Common,
        /// Which suite to run.
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Decide an ability operator.
    Can {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        at: String,
        /// Acting agent (forms o, s, co).
        #[arg(long)]
        agent: Option<String>,
        /// Acting group, comma separated (forms coop, cocoop).
        #[arg(long)]
        group: Option<String>,
        /// Second group whose intentions are known (forms co, cocoop;
        /// defaults to everyone else).
        #[arg(long)]
        group2: Option<String>,
        #[arg(long, value_enum, default_value_t = CanForm::O)]
        form: CanForm,
        #[arg(long, value_enum, default_value_t = CanMode::Bool)]
        mode: CanMode,
        formula: String,
    },
    /// Decide an intention operator.
    Plans {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        at: String,
        #[arg(long)]
        agent: Option<String>,
        #[arg(long, value_enum, default_value_t = PlanKind::Plans)]
        kind: PlanKind,
        /// Subject agent for third-person `will`.
        #[arg(long)]
        subject: Option<String>,
        /// Group, comma separated (kinds co and group; co defaults to
        /// everyone else).
        #[arg(long)]
        group: Option<String>,
        /// Check the probabilistic form against this probability.
        #[arg(long)]
        prob: Option<f64>,
        /// Check the utilitarian form at this commitment threshold.
        #[arg(long)]
        utility: Option<f64>,
        formula: String,
    },
    /// Compute an entropy.
    Entropy {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        kind: EntropyKind,
        #[arg(long)]
        agent: Option<String>,
        /// Vertex anchoring the information cell / plan state.
        #[arg(long)]
        at: Option<String>,
        /// Named information cell (state entropy).
        #[arg(long)]
        cell: Option<String>,
        /// Conditioned agent (conditional entropy).
        #[arg(long)]
        subject: Option<String>,
        /// Joint distribution file (conditional entropy): `{"weights": [[..], ..]}`.
        #[arg(long)]
        joint_file: Option<String>,
        /// Inline strategy JSON (strategic entropy).
        #[arg(long)]
        strategy: Option<String>,
    },
    /// Replay a scenario's message sequence.
    Simulate {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        scenario: String,
        /// Downgrade rejected messages to warnings.
        #[arg(long)]
        lenient: bool,
    },
    /// Possible futures if an agent adopts a candidate plan.
    WhatIf {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        at: String,
        #[arg(long)]
        agent: String,
        /// `all` or inline JSON strategy list.
        #[arg(long)]
        candidate: String,
        /// Group whose intentions inform the scenario (defaults to everyone
        /// else).
        #[arg(long)]
        group: Option<String>,
    },
}

/// Stable-order query result.
#[derive(Serialize)]
struct QueryResult {
    verb: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    verdict: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<Value>,
    witnesses: Vec<Value>,
    warnings: Vec<String>,
    timing_ms: Option<u128>,
}

impl QueryResult {
    fn new(verb: &str) -> Self {
        QueryResult {
            verb: verb.into(),
            verdict: None,
            value: None,
            witnesses: Vec::new(),
            warnings: Vec::new(),
            timing_ms: None,
        }
    }
}

/// Entry point used by the binary and by tests; writes to the given sinks
/// and returns the process exit code.
pub fn run_from<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are successful output, not errors.
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{e}");
                    2
                }
            };
        }
    };
    match dispatch(cli, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    let started = std::time::Instant::now();
    let (common, result) = match &cli.cmd {
        Cmd::Validate { common } => (common, validate(common)?),
        Cmd::Eval { common, at, formula } => (common, eval(common, at, formula)?),
        Cmd::Valid { common, formula } => (common, valid(common, formula)?),
        Cmd::Axioms { common, suite } => (common, run_axioms(common, suite)?),
        Cmd::Can {
            common,
            at,
            agent,
            group,
            group2,
            form,
            mode,
            formula,
        } => (
            common,
            can(common, at, agent, group, group2, *form, *mode, formula)?,
        ),
        Cmd::Plans {
            common,
            at,
            agent,
            kind,
            subject,
            group,
            prob,
            utility,
            formula,
        } => (
            common,
            plans(common, at, agent, *kind, subject, group, *prob, *utility, formula)?,
        ),
        Cmd::Entropy {
            common,
            kind,
            agent,
            at,
            cell,
            subject,
            joint_file,
            strategy,
        } => (
            common,
            run_entropy(common, *kind, agent, at, cell, subject, joint_file, strategy)?,
        ),
        Cmd::Simulate {
            common,
            scenario,
            lenient,
        } => (common, simulate(common, scenario, *lenient)?),
        Cmd::WhatIf {
            common,
            at,
            agent,
            candidate,
            group,
        } => (common, what_if(common, at, agent, candidate, group)?),
    };

    let mut result = result;
    if common.timing {
        result.timing_ms = Some(started.elapsed().as_millis());
    }
    match common.format {
        Format::Json => {
            let text = serde_json::to_string_pretty(&result).expect("serializable result");
            writeln!(out, "{text}").map_err(io_sink)?;
        }
        Format::Text => {
            write_text(out, &result).map_err(io_sink)?;
        }
    }
    Ok(if common.strict && result.verdict == Some(false) {
        1
    } else {
        0
    })
}

fn io_sink(source: std::io::Error) -> Error {
    Error::Io {
        path: "<stdout>".into(),
        source,
    }
}

fn write_text(out: &mut dyn Write, r: &QueryResult) -> std::io::Result<()> {
    writeln!(out, "verb:     {}", r.verb)?;
    if let Some(v) = r.verdict {
        writeln!(out, "verdict:  {v}")?;
    }
    if let Some(value) = &r.value {
        writeln!(out, "value:    {value}")?;
    }
    for w in &r.witnesses {
        writeln!(out, "witness:  {w}")?;
    }
    for w in &r.warnings {
        writeln!(out, "warning:  {w}")?;
    }
    if let Some(ms) = r.timing_ms {
        writeln!(out, "timing:   {ms} ms")?;
    }
    Ok(())
}

fn load(common: &Common) -> Result<Model> {
    Model::load(&common.model)
}

fn parse_formula(model: &Model, text: &str) -> Result<Formula> {
    let f = crate::parser::parse(text)?;
    model.ctx().resolve(&f)?;
    Ok(f)
}

fn vertex(model: &Model, addr: &str) -> Result<(VertexIx, crate::world::HistoryIx, Time)> {
    let v = parse_vertex_addr(&model.universe, addr)?;
    let data = model.universe.vertex_data(v);
    Ok((v, data.repr(), data.cut))
}

fn split_group(model: &Model, spec: &str) -> Result<Vec<String>> {
    let group: Vec<String> = spec
        .split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect();
    if group.is_empty() {
        return Err(Error::Usage("empty group".into()));
    }
    for agent in &group {
        model.check_agent(agent)?;
    }
    Ok(group)
}

fn validate(common: &Common) -> Result<QueryResult> {
    let model = load(common)?;
    let u = &model.universe;
    let mut agents = BTreeMap::new();
    for (agent, ensemble) in &model.ensembles {
        let straight = ensemble
            .cells()
            .iter()
            .filter(|c| info::is_straight(u, c))
            .count();
        let space = match model.strategy_context(agent)?.space_size() {
            n if n > model.strategy_cap => {
                format!("{n} (exceeds cap {})", model.strategy_cap)
            }
            n => n.to_string(),
        };
        agents.insert(
            agent.clone(),
            json!({
                "cells": ensemble.cells().len(),
                "straight_cells": straight,
                "slanted_cells": ensemble.cells().len() - straight,
                "thin": ensemble.cells().iter().all(|c| info::is_thin(u, c)),
                "ndi": info::has_ndi(u, ensemble),
                "perfect_info": info::has_perfect_info(ensemble),
                "relation_backwards_consistent": info::relation_backwards_consistent(u, ensemble),
                "relation_backwards_identical": info::relation_backwards_identical(u, ensemble),
                "strategy_space": space,
            }),
        );
    }
    let mut r = QueryResult::new("validate");
    r.verdict = Some(true);
    r.value = Some(json!({
        "t_max": u.t_max(),
        "states": u.states().len(),
        "histories": u.n_histories(),
        "vertices": u.n_vertices(),
        "propositions": u.alphabet().iter().collect::<Vec<_>>(),
        "agents": agents,
    }));
    Ok(r)
}

fn eval(common: &Common, at: &str, formula: &str) -> Result<QueryResult> {
    let model = load(common)?;
    let f = parse_formula(&model, formula)?;
    let (_, h, t) = vertex(&model, at)?;
    let mut r = QueryResult::new("eval");
    r.verdict = Some(model.ctx().eval(&f, h, t)?);
    Ok(r)
}

fn valid(common: &Common, formula: &str) -> Result<QueryResult> {
    let model = load(common)?;
    let f = parse_formula(&model, formula)?;
    let v = model.ctx().valid(&f)?;
    let mut r = QueryResult::new("valid");
    r.verdict = Some(v.holds);
    if let Some((h, t)) = v.witness {
        r.witnesses.push(json!({
            "history": model.universe.history_id(h),
            "trajectory": model.universe.trajectory_id(h),
            "time": t,
        }));
    }
    Ok(r)
}

fn run_axioms(common: &Common, suite: &str) -> Result<QueryResult> {
    let model = load(common)?;
    let reports = match suite {
        "ndi" => vec![axioms::check_ndi_axioms(&model)?],
        "pi" => vec![axioms::check_pi_axioms(&model)?],
        "all" => vec![
            axioms::check_ndi_axioms(&model)?,
            axioms::check_pi_axioms(&model)?,
        ],
        other => {
            return Err(Error::Usage(format!(
                "unknown suite `{other}` (expected all, ndi, or pi)"
            )))
        }
    };
    let mut r = QueryResult::new("axioms");
    // The theorems under test: whenever the information condition holds,
    // the schema instances must all be valid.
    r.verdict = Some(
        reports
            .iter()
            .flat_map(|rep| &rep.schemas)
            .all(|s| !s.condition_holds || s.valid),
    );
    r.value = Some(serde_json::to_value(&reports).expect("serializable report"));
    Ok(r)
}

#[allow(clippy::too_many_arguments)]
fn can(
    common: &Common,
    at: &str,
    agent: &Option<String>,
    group: &Option<String>,
    group2: &Option<String>,
    form: CanForm,
    mode: CanMode,
    formula: &str,
) -> Result<QueryResult> {
    let model = load(common)?;
    let f = parse_formula(&model, formula)?;
    let (_, h, t) = vertex(&model, at)?;

    let need_agent = || -> Result<String> {
        agent
            .clone()
            .ok_or_else(|| Error::Usage("this form needs --agent".into()))
    };
    let mut r = QueryResult::new("can");

    match mode {
        CanMode::Bool => {
            let outcome = match form {
                CanForm::O => ability::can(&model, &need_agent()?, &f, h, t, Space::Objective)?,
                CanForm::S => ability::can(&model, &need_agent()?, &f, h, t, Space::Subjective)?,
                CanForm::Co => {
                    let a = need_agent()?;
                    let others = match group2 {
                        Some(g) => split_group(&model, g)?,
                        None => intention::others(&model, &a),
                    };
                    ability::co_can(&model, &a, &others, &f, h, t, Space::Subjective)?
                }
                CanForm::Coop => {
                    let g = group
                        .as_ref()
                        .ok_or_else(|| Error::Usage("coop form needs --group".into()))?;
                    ability::coop_can(&model, &split_group(&model, g)?, &f, h, t, Space::Subjective)?
                }
                CanForm::Cocoop => {
                    let g = group
                        .as_ref()
                        .ok_or_else(|| Error::Usage("cocoop form needs --group".into()))?;
                    let g1 = split_group(&model, g)?;
                    let g2 = match group2 {
                        Some(g2) => split_group(&model, g2)?,
                        None => model
                            .agents
                            .iter()
                            .filter(|a| !g1.contains(a))
                            .cloned()
                            .collect(),
                    };
                    ability::co_coop_can(&model, &g1, &g2, &f, h, t, Space::Subjective)?
                }
            };
            r.verdict = Some(outcome.verdict);
            if let Some(w) = outcome.witness {
                r.witnesses.push(Value::String(w));
            }
            r.warnings = outcome.warnings;
        }
        CanMode::Pess | CanMode::Opt => {
            let space = form_space(form)?;
            let outcome = ability::u_can(
                &model,
                &need_agent()?,
                &f,
                h,
                t,
                mode == CanMode::Pess,
                space,
            )?;
            r.verdict = Some(outcome.value.is_some());
            r.value = outcome.value.map(|v| json!(v));
            if let Some(w) = outcome.witness {
                r.witnesses.push(Value::String(w));
            }
            r.warnings = outcome.warnings;
        }
        CanMode::Prob => {
            let space = form_space(form)?;
            let outcome = ability::p_can(&model, &need_agent()?, &f, h, t, space)?;
            r.value = Some(json!(outcome.probability));
            if let Some(w) = outcome.witness {
                r.witnesses.push(Value::String(w));
            }
            r.warnings = outcome.warnings;
        }
        CanMode::Xu => {
            let space = form_space(form)?;
            let outcome = ability::xu_can(&model, &need_agent()?, &f, h, t, space)?;
            r.verdict = Some(outcome.result.is_some());
            r.value = outcome
                .result
                .map(|(p, xu)| json!({"probability": p, "expected_utility": xu}));
            if let Some(w) = outcome.witness {
                r.witnesses.push(Value::String(w));
            }
            r.warnings = outcome.warnings;
        }
    }
    Ok(r)
}

/// Utility and probabilistic modes exist for the plain objective and
/// subjective forms.
fn form_space(form: CanForm) -> Result<Space> {
    match form {
        CanForm::O => Ok(Space::Objective),
        CanForm::S => Ok(Space::Subjective),
        _ => Err(Error::Usage(
            "utility and probability modes apply to forms o and s".into(),
        )),
    }
}

#[allow(clippy::too_many_arguments)]
fn plans(
    common: &Common,
    at: &str,
    agent: &Option<String>,
    kind: PlanKind,
    subject: &Option<String>,
    group: &Option<String>,
    prob: Option<f64>,
    utility: Option<f64>,
    formula: &str,
) -> Result<QueryResult> {
    let model = load(common)?;
    let f = parse_formula(&model, formula)?;
    let (_, h, t) = vertex(&model, at)?;
    let need_agent = || -> Result<String> {
        agent
            .clone()
            .ok_or_else(|| Error::Usage("this kind needs --agent".into()))
    };

    let mut r = QueryResult::new("plans");
    if (prob.is_some() || utility.is_some()) && kind != PlanKind::Plans {
        return Err(Error::Usage(
            "--prob and --utility apply to the plain plans kind".into(),
        ));
    }
    if let Some(threshold) = utility {
        r.verdict = Some(intention::plans_u(&model, &need_agent()?, &f, h, t, threshold)?);
        return Ok(r);
    }
    match (kind, prob) {
        (PlanKind::Plans, Some(p)) => {
            let computed = intention::plans_p(&model, &need_agent()?, &f, h, t)?;
            r.verdict = Some((computed - p).abs() <= 1e-9);
            r.value = Some(json!(computed));
        }
        (PlanKind::Plans, None) => {
            r.verdict = Some(intention::plans(&model, &need_agent()?, &f, h, t)?);
        }
        (PlanKind::Co, _) => {
            let a = need_agent()?;
            let others = match group {
                Some(g) => split_group(&model, g)?,
                None => intention::others(&model, &a),
            };
            r.verdict = Some(intention::co_plans(&model, &a, &others, &f, h, t)?);
        }
        (PlanKind::Group, _) => {
            let g = group
                .as_ref()
                .ok_or_else(|| Error::Usage("group kind needs --group".into()))?;
            r.verdict = Some(intention::group_plans(&model, &split_group(&model, g)?, &f, h, t)?);
        }
        (PlanKind::Will, _) => {
            let observer = need_agent()?;
            let subject = subject
                .clone()
                .ok_or_else(|| Error::Usage("will kind needs --subject".into()))?;
            r.verdict = Some(intention::will(&model, &observer, &subject, &f, h, t)?);
        }
    }
    Ok(r)
}

#[allow(clippy::too_many_arguments)]
fn run_entropy(
    common: &Common,
    kind: EntropyKind,
    agent: &Option<String>,
    at: &Option<String>,
    cell: &Option<String>,
    subject: &Option<String>,
    joint_file: &Option<String>,
    strategy: &Option<String>,
) -> Result<QueryResult> {
    let model = load(common)?;
    let need_agent = || -> Result<String> {
        agent
            .clone()
            .ok_or_else(|| Error::Usage("entropy needs --agent".into()))
    };
    let mut r = QueryResult::new("entropy");
    let bits = match kind {
        EntropyKind::State => {
            let a = need_agent()?;
            model.check_agent(&a)?;
            let ensemble = &model.ensembles[&a];
            let cell = match (cell, at) {
                (Some(name), _) => {
                    let ix = ensemble.cell_by_name(name).ok_or_else(|| {
                        Error::Domain(format!("no cell named `{name}` for `{a}`"))
                    })?;
                    ensemble.cell(ix).clone()
                }
                (None, Some(addr)) => {
                    let (v, _, _) = vertex(&model, addr)?;
                    ensemble.cell_of(v).clone()
                }
                (None, None) => {
                    return Err(Error::Usage("state entropy needs --cell or --at".into()))
                }
            };
            entropy::state_entropy(&cell, None)?
        }
        EntropyKind::Control => {
            let a = need_agent()?;
            let addr = at
                .as_ref()
                .ok_or_else(|| Error::Usage("control entropy needs --at".into()))?;
            let (v, _, _) = vertex(&model, addr)?;
            let plan = model.plan_state_at(&a, v)?;
            entropy::control_entropy(&plan, None)?
        }
        EntropyKind::Conditional => {
            let a = need_agent()?;
            let b = subject
                .clone()
                .ok_or_else(|| Error::Usage("conditional entropy needs --subject".into()))?;
            let addr = at
                .as_ref()
                .ok_or_else(|| Error::Usage("conditional entropy needs --at".into()))?;
            let path = joint_file
                .as_ref()
                .ok_or_else(|| Error::Usage("conditional entropy needs --joint-file".into()))?;
            let (v, _, _) = vertex(&model, addr)?;
            let plan_a = model.plan_state_at(&a, v)?;
            let plan_b = model.plan_state_at(&b, v)?;
            let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
                path: path.clone(),
                source,
            })?;
            #[derive(serde::Deserialize)]
            struct JointFile {
                weights: Vec<Vec<f64>>,
            }
            let raw: JointFile = serde_json::from_str(&text).map_err(|source| Error::Json {
                path: path.clone(),
                source,
            })?;
            let rows = raw.weights.len();
            let cols = raw.weights.first().map_or(0, |r| r.len());
            let joint = entropy::JointDistribution::new(
                rows,
                cols,
                raw.weights.into_iter().flatten().collect(),
            )?;
            entropy::conditional_control_entropy(&plan_a, &plan_b, &joint)?
        }
        EntropyKind::Strategic => {
            let a = need_agent()?;
            let json = strategy
                .as_ref()
                .ok_or_else(|| Error::Usage("strategic entropy needs --strategy".into()))?;
            let list = strategies_from_json(&model, &a, json)?;
            let s = list
                .into_iter()
                .next()
                .ok_or_else(|| Error::Usage("strategic entropy needs one strategy".into()))?;
            entropy::strategic_entropy(&model, &s, model.prior()?)?
        }
    };
    r.value = Some(json!(bits));
    Ok(r)
}

fn simulate(common: &Common, scenario: &str, lenient: bool) -> Result<QueryResult> {
    let model = load(common)?;
    let scenario = model.scenario(scenario)?;
    let outcome = pragmatics::replay(&model, scenario, lenient)?;
    let mut r = QueryResult::new("simulate");
    r.verdict = Some(true);
    r.warnings = outcome.report.warnings.clone();
    r.value = Some(serde_json::to_value(&outcome.report).expect("serializable report"));
    Ok(r)
}

fn what_if(
    common: &Common,
    at: &str,
    agent: &str,
    candidate: &str,
    group: &Option<String>,
) -> Result<QueryResult> {
    let model = load(common)?;
    model.check_agent(agent)?;
    let (_, h, t) = vertex(&model, at)?;
    let plan = if candidate == "all" {
        model.full_space(agent)?
    } else {
        crate::strategy::PlanState::new(agent, strategies_from_json(&model, agent, candidate)?)?
    };
    let others = match group {
        Some(g) => split_group(&model, g)?,
        None => intention::others(&model, agent),
    };
    let set = intention::what_if(&model, agent, &plan, h, t, &others)?;
    let mut r = QueryResult::new("what-if");
    r.value = Some(json!({
        "count": set.count(),
        "histories": set
            .iter()
            .map(|k| model.universe.trajectory_id(k))
            .collect::<Vec<_>>(),
    }));
    Ok(r)
}

/// Parses an inline JSON strategy list against the model.
pub fn strategies_from_json(model: &Model, agent: &str, json: &str) -> Result<Vec<PureStrategy>> {
    let raw: Vec<RawStrategy> = serde_json::from_str(json).map_err(|source| Error::Json {
        path: "<arg>".into(),
        source,
    })?;
    match model.resolve_strategy_set_pub(agent, &RawStrategySet::Listed(raw), "/arg")? {
        StrategySetSpec::Listed(list) => Ok(list),
        StrategySetSpec::All => unreachable!("listed input resolves to listed"),
    }
}
