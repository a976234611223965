//! Axiom schema suites tying information conditions to valid formulas.
//!
//! Two schema families are checked per agent over a bounded, deterministic
//! instance generator:
//!
//!   * nondiminishing information: `[](A,t) b -> [](A,t') b` for `t <= t'`
//!     over timed bodies, and `P [](A) b -> [](A) P b` over tensed bodies;
//!   * perfect information: `b@t -> [](A,t') b@t` for `t <= t'` over timed
//!     bodies about `t`, and `b -> [](A) b` over tensed bodies.
//!
//! Tensed bodies are restricted to future-tense-free, modality-free
//! formulas (atoms combined with `!`, `&`, `|`, and `P` to depth two);
//! timed bodies are timed atoms, their negations, and same-time pairwise
//! conjunctions and disjunctions, in alphabet-then-time order. A schema
//! suite passes when every instance is valid at every evaluation point.

use serde::Serialize;

use crate::error::Result;
use crate::info::{has_ndi, has_perfect_info};
use crate::logic::Formula;
use crate::model::Model;

/// Number of counterexample instances kept per schema.
const MAX_WITNESSES: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Schema {
    NdiIndexed,
    NdiTensed,
    PiIndexed,
    PiTensed,
}

/// One failing instance, pinned to its first failing evaluation point.
#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub formula: String,
    pub history: String,
    pub time: usize,
}

/// Verdict for one schema and one agent.
#[derive(Debug, Clone, Serialize)]
pub struct SchemaReport {
    pub schema: Schema,
    pub agent: String,
    /// Whether the information condition the schema is tied to holds for
    /// this agent's ensemble.
    pub condition_holds: bool,
    pub instances: usize,
    pub valid: bool,
    pub counterexamples: Vec<Counterexample>,
}

/// All schema verdicts of one suite.
#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub suite: String,
    pub schemas: Vec<SchemaReport>,
}

/// Timed bodies in deterministic order: for each proposition and time, the
/// timed atom and its negation; then same-time conjunctions and
/// disjunctions of the first two propositions.
fn timed_bodies(model: &Model) -> Vec<Formula> {
    let props: Vec<&String> = model.universe.alphabet().iter().collect();
    let mut out = Vec::new();
    for p in &props {
        for t in model.universe.times() {
            out.push(Formula::atom_at(p, t));
            out.push(Formula::not(Formula::atom_at(p, t)));
        }
    }
    if props.len() >= 2 {
        let (p, q) = (props[0], props[1]);
        for t in model.universe.times() {
            out.push(Formula::and(Formula::atom_at(p, t), Formula::atom_at(q, t)));
            out.push(Formula::or(Formula::atom_at(p, t), Formula::atom_at(q, t)));
        }
    }
    out
}

/// Timed bodies that talk about one fixed time, for the indexed
/// perfect-information schema.
fn timed_bodies_at(model: &Model, t: usize) -> Vec<Formula> {
    let props: Vec<&String> = model.universe.alphabet().iter().collect();
    let mut out = Vec::new();
    for p in &props {
        out.push(Formula::atom_at(p, t));
        out.push(Formula::not(Formula::atom_at(p, t)));
    }
    if props.len() >= 2 {
        let (p, q) = (props[0], props[1]);
        out.push(Formula::and(Formula::atom_at(p, t), Formula::atom_at(q, t)));
        out.push(Formula::or(Formula::atom_at(p, t), Formula::atom_at(q, t)));
    }
    out
}

/// Future-tense-free, modality-free tensed bodies to depth two.
fn tensed_bodies(model: &Model) -> Vec<Formula> {
    let props: Vec<&String> = model.universe.alphabet().iter().collect();
    let mut out = Vec::new();
    for p in &props {
        out.push(Formula::atom(p));
        out.push(Formula::not(Formula::atom(p)));
        out.push(Formula::past(Formula::atom(p)));
        out.push(Formula::past(Formula::not(Formula::atom(p))));
    }
    if props.len() >= 2 {
        let (p, q) = (props[0], props[1]);
        out.push(Formula::and(Formula::atom(p), Formula::atom(q)));
        out.push(Formula::or(Formula::atom(p), Formula::atom(q)));
    }
    // The tensed schemata carry the side condition that bodies contain no
    // future tense.
    out.retain(|b| !b.has_future_tense());
    out
}

fn check_schema(
    model: &Model,
    schema: Schema,
    agent: &str,
    condition_holds: bool,
    instances: Vec<Formula>,
) -> Result<SchemaReport> {
    let ctx = model.ctx();
    let mut counterexamples = Vec::new();
    let total = instances.len();
    for f in instances {
        let v = ctx.valid(&f)?;
        if !v.holds {
            if counterexamples.len() < MAX_WITNESSES {
                let (h, t) = v.witness.expect("invalid formula has a witness");
                counterexamples.push(Counterexample {
                    formula: f.to_string(),
                    history: model.universe.history_id(h),
                    time: t,
                });
            } else {
                break;
            }
        }
    }
    Ok(SchemaReport {
        schema,
        agent: agent.to_string(),
        condition_holds,
        instances: total,
        valid: counterexamples.is_empty(),
        counterexamples,
    })
}

/// Checks both nondiminishing-information schemata for every agent.
pub fn check_ndi_axioms(model: &Model) -> Result<AxiomReport> {
    let mut schemas = Vec::new();
    for agent in &model.agents {
        let condition = has_ndi(&model.universe, &model.ensembles[agent]);

        let mut indexed = Vec::new();
        for t in model.universe.times() {
            for t_later in t..=model.universe.t_max() {
                for body in timed_bodies(model) {
                    indexed.push(Formula::implies(
                        Formula::nec_at(agent, t, body.clone()),
                        Formula::nec_at(agent, t_later, body),
                    ));
                }
            }
        }
        schemas.push(check_schema(model, Schema::NdiIndexed, agent, condition, indexed)?);

        let tensed = tensed_bodies(model)
            .into_iter()
            .map(|body| {
                Formula::implies(
                    Formula::past(Formula::nec(agent, body.clone())),
                    Formula::nec(agent, Formula::past(body)),
                )
            })
            .collect();
        schemas.push(check_schema(model, Schema::NdiTensed, agent, condition, tensed)?);
    }
    Ok(AxiomReport {
        suite: "ndi".into(),
        schemas,
    })
}

/// Checks both perfect-information schemata for every agent.
pub fn check_pi_axioms(model: &Model) -> Result<AxiomReport> {
    let mut schemas = Vec::new();
    for agent in &model.agents {
        let condition = has_perfect_info(&model.ensembles[agent]);

        let mut indexed = Vec::new();
        for t in model.universe.times() {
            for t_later in t..=model.universe.t_max() {
                for body in timed_bodies_at(model, t) {
                    indexed.push(Formula::implies(
                        body.clone(),
                        Formula::nec_at(agent, t_later, body),
                    ));
                }
            }
        }
        schemas.push(check_schema(model, Schema::PiIndexed, agent, condition, indexed)?);

        let tensed = tensed_bodies(model)
            .into_iter()
            .map(|body| Formula::implies(body.clone(), Formula::nec(agent, body)))
            .collect();
        schemas.push(check_schema(model, Schema::PiTensed, agent, condition, tensed)?);
    }
    Ok(AxiomReport {
        suite: "pi".into(),
        schemas,
    })
}
