//! Plan states over information sets, group potentials, what-if scenarios,
//! and the intention operators.
//!
//! An agent plans a goal when every history allowed by its plan state
//! satisfies the goal; the coordinated, group, and third-person variants
//! swap in the appropriate potentials. The probabilistic form reports the
//! conditional probability of the goal within the plan-state potential, and
//! the utilitarian form tolerates failure exactly on histories whose
//! utility falls below the commitment threshold.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::histset::HistorySet;
use crate::info::InfoSet;
use crate::logic::Formula;
use crate::model::Model;
use crate::strategy::{plan_state_potential, PlanState};
use crate::world::{HistoryIx, Time, Vertex, VertexIx};

/// The plan state of `subject` as known at an information set of `holder`.
///
/// For a self query (`holder == subject`) the plan state must be constant
/// across the cell and the common value is returned; otherwise the union of
/// the per-vertex declarations is taken.
pub fn plan_state_at_info(
    model: &Model,
    holder: &str,
    subject: &str,
    cell: &InfoSet,
) -> Result<PlanState> {
    let mut all = Vec::new();
    let mut per_vertex: Vec<PlanState> = Vec::new();
    for &v in &cell.members {
        let s = if holder == subject {
            model.plan_state_at(subject, v)?
        } else {
            model.nested_plan_state_at(holder, subject, v)?
        };
        per_vertex.push(s.clone());
        all.extend(s.strategies().iter().cloned());
    }
    if holder == subject {
        if let Some(first) = per_vertex.first() {
            if per_vertex.iter().any(|s| s != first) {
                return Err(Error::InconsistentSelfPlan {
                    agent: holder.to_string(),
                    cell: cell.name.clone(),
                });
            }
        }
    }
    PlanState::new(subject, all)
}

/// The worlds possible under the members' combined plans: the union over
/// member-strategy tuples of the joint potential. For a single member this
/// is exactly the member's plan-state potential; across members it refines
/// the intersection of individual potentials by per-step joint consistency,
/// so simultaneous-action interference is respected.
pub fn group_potential(model: &Model, members: &[(String, PlanState)]) -> Result<HistorySet> {
    if members.is_empty() {
        return Ok(model.universe.full_set());
    }
    let mut tuples: u128 = 1;
    for (_, plan) in members {
        tuples = tuples.saturating_mul(plan.len() as u128);
    }
    if tuples > model.strategy_cap {
        return Err(Error::EnumerationLimit {
            agent: "group".into(),
            size: tuples,
            cap: model.strategy_cap,
        });
    }
    let mut out = HistorySet::empty(model.universe.n_histories());
    let mut counter = vec![0usize; members.len()];
    loop {
        let participants: Vec<_> = members
            .iter()
            .zip(&counter)
            .map(|((agent, plan), &k)| (&model.ensembles[agent], &plan.strategies()[k]))
            .collect();
        out.union_with(&crate::strategy::joint_potential(
            &model.universe,
            &model.actions,
            &participants,
        )?);
        let mut pos = members.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            counter[pos] += 1;
            if counter[pos] < members[pos].1.len() {
                break;
            }
            counter[pos] = 0;
        }
    }
}

/// What `holder` knows about the plans of a whole group, as a potential:
/// the combined plans of the subjects as known at the holder's cell.
pub fn nested_group_potential(
    model: &Model,
    holder: &str,
    group: &[String],
    cell: &InfoSet,
) -> Result<HistorySet> {
    let mut members = Vec::new();
    for subject in group {
        members.push((
            subject.clone(),
            plan_state_at_info(model, holder, subject, cell)?,
        ));
    }
    group_potential(model, &members)
}

/// Whether the holder's strategic information about the subject is correct
/// at a vertex: the subject's actual plan state is contained in what the
/// holder thinks it might be.
pub fn nested_correct(model: &Model, holder: &str, subject: &str, v: VertexIx) -> Result<bool> {
    let actual = model.plan_state_at(subject, v)?;
    let believed = model.nested_plan_state_at(holder, subject, v)?;
    Ok(actual.is_subset_of(&believed))
}

/// Every agent other than `agent`, in declaration order.
pub fn others(model: &Model, agent: &str) -> Vec<String> {
    model
        .agents
        .iter()
        .filter(|a| *a != agent)
        .cloned()
        .collect()
}

/// The futures possible if the agent adopts a candidate plan: candidate
/// potential intersected with the self plan-state potential and the nested
/// group potential at the agent's current cell.
pub fn what_if(
    model: &Model,
    agent: &str,
    candidate: &PlanState,
    h: HistoryIx,
    t: Time,
    group: &[String],
) -> Result<HistorySet> {
    if candidate.is_empty() {
        return Err(Error::Domain("what-if candidate plan is empty".into()));
    }
    model.check_agent(agent)?;
    let v = model.universe.vertex_ix(Vertex { history: h, cut: t })?;
    let cell = model.ensembles[agent].cell_of(v).clone();
    let ctx = model.strategy_context(agent)?;
    let mut out = plan_state_potential(&ctx, candidate)?;
    let own = plan_state_at_info(model, agent, agent, &cell)?;
    out.intersect_with(&plan_state_potential(&ctx, &own)?);
    out.intersect_with(&nested_group_potential(model, agent, group, &cell)?);
    Ok(out)
}

fn own_potential_at(model: &Model, agent: &str, h: HistoryIx, t: Time) -> Result<HistorySet> {
    model.check_agent(agent)?;
    let v = model.universe.vertex_ix(Vertex { history: h, cut: t })?;
    let cell = model.ensembles[agent].cell_of(v).clone();
    let plan = plan_state_at_info(model, agent, agent, &cell)?;
    let ctx = model.strategy_context(agent)?;
    plan_state_potential(&ctx, &plan)
}

/// Whether the goal holds in every history the agent's plan state allows.
pub fn plans(model: &Model, agent: &str, goal: &Formula, h: HistoryIx, t: Time) -> Result<bool> {
    let potential = own_potential_at(model, agent, h, t)?;
    let goal_set = model.ctx().eval_set(goal, t)?;
    Ok(potential.is_subset(&goal_set))
}

/// Whether the goal holds in every history allowed jointly by the agent's
/// own plan state and its knowledge of the group's intentions.
pub fn co_plans(
    model: &Model,
    agent: &str,
    group: &[String],
    goal: &Formula,
    h: HistoryIx,
    t: Time,
) -> Result<bool> {
    model.check_agent(agent)?;
    let v = model.universe.vertex_ix(Vertex { history: h, cut: t })?;
    let cell = model.ensembles[agent].cell_of(v).clone();
    let mut potential = own_potential_at(model, agent, h, t)?;
    potential.intersect_with(&nested_group_potential(model, agent, group, &cell)?);
    let goal_set = model.ctx().eval_set(goal, t)?;
    Ok(potential.is_subset(&goal_set))
}

/// Whether the goal holds in every history allowed by the group's combined
/// plan states, each member taken at its own information cell.
pub fn group_plans(
    model: &Model,
    group: &[String],
    goal: &Formula,
    h: HistoryIx,
    t: Time,
) -> Result<bool> {
    let v = model.universe.vertex_ix(Vertex { history: h, cut: t })?;
    let mut members = Vec::new();
    for agent in group {
        model.check_agent(agent)?;
        let cell = model.ensembles[agent].cell_of(v).clone();
        members.push((agent.clone(), plan_state_at_info(model, agent, agent, &cell)?));
    }
    let potential = group_potential(model, &members)?;
    let goal_set = model.ctx().eval_set(goal, t)?;
    Ok(potential.is_subset(&goal_set))
}

/// Third-person prediction: from `observer`'s perspective, `subject` will
/// bring the goal about, judged by the observer's strategic information
/// about the subject.
pub fn will(
    model: &Model,
    observer: &str,
    subject: &str,
    goal: &Formula,
    h: HistoryIx,
    t: Time,
) -> Result<bool> {
    model.check_agent(observer)?;
    model.check_agent(subject)?;
    let v = model.universe.vertex_ix(Vertex { history: h, cut: t })?;
    let cell = model.ensembles[observer].cell_of(v).clone();
    let plan = plan_state_at_info(model, observer, subject, &cell)?;
    let ctx = model.strategy_context(subject)?;
    let potential = plan_state_potential(&ctx, &plan)?;
    let goal_set = model.ctx().eval_set(goal, t)?;
    Ok(potential.is_subset(&goal_set))
}

/// The probability that the plan state forces the goal: the prior mass of
/// goal histories within the plan-state potential, renormalized.
pub fn plans_p(model: &Model, agent: &str, goal: &Formula, h: HistoryIx, t: Time) -> Result<f64> {
    let prior = model.prior()?;
    let potential = own_potential_at(model, agent, h, t)?;
    let total = prior.mass(&potential);
    if total <= 0.0 {
        return Err(Error::UndefinedConditional(format!(
            "the plan-state potential of `{agent}`"
        )));
    }
    let mut goal_part = model.ctx().eval_set(goal, t)?;
    goal_part.intersect_with(&potential);
    Ok(prior.mass(&goal_part) / total)
}

/// Utilitarian intention: the agent is committed to the goal exactly on the
/// allowed histories whose utility stays at or above the threshold.
pub fn plans_u(
    model: &Model,
    agent: &str,
    goal: &Formula,
    h: HistoryIx,
    t: Time,
    threshold: f64,
) -> Result<bool> {
    let table = model.utility_table(agent)?;
    let potential = own_potential_at(model, agent, h, t)?;
    let goal_set = model.ctx().eval_set(goal, t)?;
    for k in potential.iter() {
        if table[k.0] >= threshold && !goal_set.contains(k) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Resolved per-member plan states for a declared group at one vertex.
pub fn group_members_at(
    model: &Model,
    group: &[String],
    v: VertexIx,
) -> Result<BTreeMap<String, PlanState>> {
    let mut out = BTreeMap::new();
    for agent in group {
        out.insert(agent.clone(), model.plan_state_at(agent, v)?);
    }
    Ok(out)
}
