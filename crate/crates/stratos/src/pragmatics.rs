//! Representational states and pragmatic message operators.
//!
//! An agent's representational state bundles its information set, its plan
//! state, and its evaluative table. A message transforms the component its
//! force focuses on: assertives filter the information set (possibilities
//! are removed, never added), directives filter the plan state down to the
//! strategies that force the goal, and evaluatives shift the utility table.
//! Each agent interprets message tokens through its own pragmatics profile,
//! so the same token can transform two agents differently.
//!
//! Scenario replay additionally splits the addressee's information cell
//! against each accepted assertion so that the necessity operator reflects
//! post-message knowledge. Strategies stay keyed to the declared ensembles;
//! only formula evaluation sees the refined cells.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::info::{Ensemble, InfoSet};
use crate::logic::{EvalContext, Formula};
use crate::model::Model;
use crate::strategy::PlanState;
use crate::world::{Time, VertexIx};

/// The three speech-act forces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Force {
    Assertive,
    Directive,
    Evaluative,
}

/// The component of a representational state a transformation touches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Component {
    Info,
    Plan,
    Values,
}

/// Message content: a formula for assertives and directive goals, a
/// per-history utility delta for evaluatives.
#[derive(Debug, Clone)]
pub enum ContentSpec {
    Formula(Formula),
    Delta(Vec<f64>),
}

/// An agent's local interpretation table: token -> force plus content.
#[derive(Debug, Clone, Default)]
pub struct PragProfile {
    pub remap: BTreeMap<String, (Force, ContentSpec)>,
}

/// A scenario message before interpretation: either a bare token the
/// addressee must interpret, or inline force plus content.
#[derive(Debug, Clone)]
pub enum RawMessage {
    Token(String),
    Inline((Force, ContentSpec)),
}

#[derive(Debug, Clone)]
pub struct ScenarioMessage {
    pub speaker: String,
    pub addressee: String,
    pub content: RawMessage,
}

/// An ordered message list replayed against agents' representational states.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub name: String,
    pub at: VertexIx,
    pub participants: Vec<String>,
    pub messages: Vec<ScenarioMessage>,
}

/// A fully interpreted message.
#[derive(Debug, Clone)]
pub struct Message {
    pub speaker: String,
    pub addressee: String,
    pub force: Force,
    pub content: ContentSpec,
}

/// An agent's (information, plan, values) triple.
#[derive(Debug, Clone)]
pub struct RepresentationalState {
    pub agent: String,
    pub info: InfoSet,
    pub plan: PlanState,
    pub values: Vec<f64>,
}

impl RepresentationalState {
    /// The state of an agent standing at a vertex: its information cell
    /// there, its declared plan state (falling back to the full strategy
    /// space), and its utility slice.
    pub fn at(model: &Model, agent: &str, v: VertexIx) -> Result<Self> {
        model.check_agent(agent)?;
        let info = model.ensembles[agent].cell_of(v).clone();
        let plan = match model.plan_state_at(agent, v) {
            Ok(plan) => plan,
            Err(Error::MissingIntention(_)) => model.full_space(agent)?,
            Err(e) => return Err(e),
        };
        let values = model.utility_table(agent)?;
        Ok(RepresentationalState {
            agent: agent.to_string(),
            info,
            plan,
            values,
        })
    }
}

/// What one message application changed.
#[derive(Debug, Clone, Serialize)]
pub struct ChangeReport {
    pub force: Force,
    pub primary_focus: Component,
    pub changed: Vec<Component>,
    pub info_size: usize,
    pub plan_size: usize,
    pub warnings: Vec<String>,
}

/// The declared force of a message and the component it primarily focuses.
pub fn force_of(m: &Message) -> (Force, Component) {
    (m.force, primary_focus(m.force))
}

pub fn primary_focus(force: Force) -> Component {
    match force {
        Force::Assertive => Component::Info,
        Force::Directive => Component::Plan,
        Force::Evaluative => Component::Values,
    }
}

/// Interprets a raw message for its addressee, resolving tokens through the
/// addressee's pragmatics profile.
pub fn resolve_message(model: &Model, m: &ScenarioMessage) -> Result<Message> {
    resolve_message_via(model.profiles.get(&m.addressee), m)
}

/// Interprets a raw message through an explicit profile (used to compare
/// different agents' interpretations of one token).
pub fn resolve_message_via(profile: Option<&PragProfile>, m: &ScenarioMessage) -> Result<Message> {
    let (force, content) = match &m.content {
        RawMessage::Inline((force, content)) => (*force, content.clone()),
        RawMessage::Token(token) => {
            let entry = profile
                .and_then(|p| p.remap.get(token))
                .ok_or_else(|| Error::UnknownToken {
                    agent: m.addressee.clone(),
                    token: token.clone(),
                })?;
            (entry.0, entry.1.clone())
        }
    };
    Ok(Message {
        speaker: m.speaker.clone(),
        addressee: m.addressee.clone(),
        force,
        content,
    })
}

/// Applies one message to a representational state, using the model's
/// declared ensembles for formula evaluation.
pub fn prag_apply(
    model: &Model,
    r: &RepresentationalState,
    m: &Message,
    lenient: bool,
) -> Result<(RepresentationalState, ChangeReport)> {
    prag_apply_in(model, &model.ctx(), r, m, lenient)
}

/// As [`prag_apply`], with an explicit evaluation context (scenario replay
/// evaluates against assertion-refined ensembles).
pub fn prag_apply_in(
    model: &Model,
    ctx: &EvalContext,
    r: &RepresentationalState,
    m: &Message,
    lenient: bool,
) -> Result<(RepresentationalState, ChangeReport)> {
    let mut out = r.clone();
    let mut changed = BTreeSet::new();
    let mut warnings = Vec::new();

    match (&m.force, &m.content) {
        (Force::Assertive, ContentSpec::Formula(f)) => {
            let kept = filter_info(ctx, &r.info, f)?;
            if kept.members.is_empty() {
                if lenient {
                    warnings.push(format!(
                        "assertion `{f}` inconsistent with the information state; kept unchanged"
                    ));
                } else {
                    return Err(Error::RejectedMessage(f.to_string()));
                }
            } else {
                if kept.members != r.info.members {
                    changed.insert(Component::Info);
                }
                out.info = kept;
            }
        }
        (Force::Directive, ContentSpec::Formula(goal)) => {
            let t = directive_time(ctx, &r.info)?;
            let sctx = model.strategy_context(&r.agent)?;
            let goal_set = ctx.eval_set(goal, t)?;
            let mut kept = Vec::new();
            for s in r.plan.strategies() {
                if sctx.potential(s)?.is_subset(&goal_set) {
                    kept.push(s.clone());
                }
            }
            if kept.is_empty() {
                if lenient {
                    warnings.push(format!(
                        "no strategy in the plan state forces `{goal}`; kept unchanged"
                    ));
                } else {
                    return Err(Error::RejectedDirective(goal.to_string()));
                }
            } else {
                if kept.len() != r.plan.len() {
                    changed.insert(Component::Plan);
                }
                out.plan = PlanState::new(&r.agent, kept)?;
            }
        }
        (Force::Evaluative, ContentSpec::Delta(delta)) => {
            if delta.iter().any(|d| *d != 0.0) {
                changed.insert(Component::Values);
            }
            for (v, d) in out.values.iter_mut().zip(delta) {
                *v += d;
            }
        }
        _ => {
            return Err(Error::Domain(
                "message content does not match its force".into(),
            ))
        }
    }

    let report = ChangeReport {
        force: m.force,
        primary_focus: primary_focus(m.force),
        changed: changed.into_iter().collect(),
        info_size: out.info.members.len(),
        plan_size: out.plan.len(),
        warnings,
    };
    Ok((out, report))
}

/// Possibilities the assertion keeps: members whose representative history
/// satisfies the content at the member's cut.
fn filter_info(ctx: &EvalContext, info: &InfoSet, f: &Formula) -> Result<InfoSet> {
    let mut members = BTreeSet::new();
    for &v in &info.members {
        let data = ctx.universe.vertex_data(v);
        if ctx.eval(f, data.repr(), data.cut)? {
            members.insert(v);
        }
    }
    Ok(InfoSet::new(info.name.clone(), members))
}

/// Directives are evaluated at the agent's present time, which requires a
/// straight information set.
fn directive_time(ctx: &EvalContext, info: &InfoSet) -> Result<Time> {
    let mut cuts: BTreeSet<Time> = BTreeSet::new();
    for &v in &info.members {
        cuts.insert(ctx.universe.vertex_data(v).cut);
    }
    if cuts.len() != 1 {
        return Err(Error::Domain(
            "directive received at a slanted information set has no unique present time".into(),
        ));
    }
    Ok(cuts.into_iter().next().expect("nonempty info set"))
}

/// Applies a written chain of operators: the last message in the list is
/// applied first, mirroring operator composition.
pub fn apply_sequence(
    model: &Model,
    r: &RepresentationalState,
    messages: &[Message],
    lenient: bool,
) -> Result<(RepresentationalState, Vec<ChangeReport>)> {
    let mut state = r.clone();
    let mut reports = Vec::new();
    for (pos, m) in messages.iter().enumerate().rev() {
        match prag_apply(model, &state, m, lenient) {
            Ok((next, report)) => {
                state = next;
                reports.push(report);
            }
            Err(e) => {
                return Err(Error::Domain(format!(
                    "message {pos} aborted the sequence: {e}"
                )))
            }
        }
    }
    Ok((state, reports))
}

/// Whether two interpretation profiles transform the same representational
/// state differently on one message. A message only one of them can accept
/// counts as divergence.
pub fn prag_divergence(
    model: &Model,
    profile_a: Option<&PragProfile>,
    profile_b: Option<&PragProfile>,
    raw: &ScenarioMessage,
    r: &RepresentationalState,
) -> Result<bool> {
    let apply = |profile: Option<&PragProfile>| -> Result<Option<RepresentationalState>> {
        let m = match resolve_message_via(profile, raw) {
            Ok(m) => m,
            Err(Error::UnknownToken { .. }) => return Ok(None),
            Err(e) => return Err(e),
        };
        match prag_apply(model, r, &m, false) {
            Ok((next, _)) => Ok(Some(next)),
            Err(Error::RejectedMessage(_)) | Err(Error::RejectedDirective(_)) => Ok(None),
            Err(e) => Err(e),
        }
    };
    let a = apply(profile_a)?;
    let b = apply(profile_b)?;
    Ok(match (a, b) {
        (None, None) => false,
        (Some(ra), Some(rb)) => {
            ra.info.members != rb.info.members
                || ra.plan != rb.plan
                || ra.values != rb.values
        }
        _ => true,
    })
}

/// One step of a scenario replay.
#[derive(Debug, Clone, Serialize)]
pub struct StepReport {
    pub step: usize,
    pub speaker: String,
    pub addressee: String,
    #[serde(flatten)]
    pub change: ChangeReport,
}

/// The replayed scenario: initial sizes plus one report per message.
#[derive(Debug, Clone, Serialize)]
pub struct ScenarioReport {
    pub scenario: String,
    pub at: String,
    pub initial: BTreeMap<String, (usize, usize)>,
    pub steps: Vec<StepReport>,
    pub warnings: Vec<String>,
}

/// Everything a replay produces: the printable report plus the final
/// representational states and the assertion-refined ensembles.
#[derive(Debug, Clone)]
pub struct ReplayOutcome {
    pub report: ScenarioReport,
    pub states: BTreeMap<String, RepresentationalState>,
    pub ensembles: BTreeMap<String, Ensemble>,
}

/// Replays a scenario chronologically. Accepted assertions additionally
/// split the addressee's information cell, so later necessity formulas see
/// the refined ensemble.
pub fn replay(model: &Model, scenario: &Scenario, lenient: bool) -> Result<ReplayOutcome> {
    let mut ensembles: BTreeMap<String, Ensemble> = model.ensembles.clone();
    let mut states: BTreeMap<String, RepresentationalState> = BTreeMap::new();
    let mut warnings = Vec::new();
    let mut initial = BTreeMap::new();
    for agent in &scenario.participants {
        let r = RepresentationalState::at(model, agent, scenario.at)?;
        if model
            .plan_decls
            .get(agent)
            .and_then(|d| d.lookup(scenario.at))
            .is_none()
        {
            warnings.push(format!(
                "no plan state declared for `{agent}` at the scenario vertex; using the full strategy space"
            ));
        }
        initial.insert(agent.clone(), (r.info.members.len(), r.plan.len()));
        states.insert(agent.clone(), r);
    }

    let mut steps = Vec::new();
    for (i, raw) in scenario.messages.iter().enumerate() {
        let m = resolve_message(model, raw)?;
        let r = states.get(&m.addressee).ok_or_else(|| {
            Error::Domain(format!(
                "message {i} addressed to `{}`, who is not a scenario participant",
                m.addressee
            ))
        })?;
        let ctx = EvalContext::new(&model.universe, &ensembles);
        let (next, change) = prag_apply_in(model, &ctx, r, &m, lenient)?;

        if m.force == Force::Assertive && change.changed.contains(&Component::Info) {
            let refined = split_cell(&model.universe, &ensembles[&m.addressee], &r.info, &next.info)?;
            ensembles.insert(m.addressee.clone(), refined);
        }

        steps.push(StepReport {
            step: i,
            speaker: m.speaker.clone(),
            addressee: m.addressee.clone(),
            change,
        });
        states.insert(m.addressee.clone(), next);
    }

    Ok(ReplayOutcome {
        report: ScenarioReport {
            scenario: scenario.name.clone(),
            at: model.universe.vertex_id(scenario.at),
            initial,
            steps,
            warnings,
        },
        states,
        ensembles,
    })
}

/// Replaces `cell` by the accepted part and (when nonempty) the complement.
fn split_cell(
    universe: &crate::world::Universe,
    ensemble: &Ensemble,
    cell: &InfoSet,
    kept: &InfoSet,
) -> Result<Ensemble> {
    let mut cells = Vec::new();
    for existing in ensemble.cells() {
        if existing.members == cell.members {
            let rest: BTreeSet<VertexIx> = existing
                .members
                .difference(&kept.members)
                .copied()
                .collect();
            cells.push(InfoSet::new(existing.name.clone(), kept.members.clone()));
            if !rest.is_empty() {
                cells.push(InfoSet::new(format!("{}'", existing.name), rest));
            }
        } else {
            cells.push(existing.clone());
        }
    }
    Ensemble::new(universe, ensemble.agent.clone(), cells)
}

impl fmt::Display for Force {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Force::Assertive => write!(f, "assertive"),
            Force::Directive => write!(f, "directive"),
            Force::Evaluative => write!(f, "evaluative"),
        }
    }
}
