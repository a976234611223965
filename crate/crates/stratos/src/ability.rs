//! Ability operators: forcing, objective and subjective can, the
//! coordinative and cooperative variants, and the utilitarian and
//! probabilistic forms.
//!
//! Every operator searches strategy candidates for one that forces the goal
//! over its forcing domain: the strategy potential intersected with the
//! futures of the query vertex, and, for the coordinated forms, with the
//! relevant knowledge-of-intentions potentials. An empty forcing domain
//! counts vacuously but is always surfaced as a warning. Searches are
//! deterministic: candidates are enumerated in a fixed order and the first
//! witness is reported.

use crate::error::{Error, Result};
use crate::histset::HistorySet;
use crate::intention::nested_group_potential;
use crate::logic::Formula;
use crate::model::Model;
use crate::strategy::{PlanState, PureStrategy, StrategyContext};
use crate::world::{HistoryIx, Time, Vertex};

/// Strategy-space selector: the full logical space or the agent's declared
/// repertoire.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    Objective,
    Subjective,
}

/// Outcome of a boolean ability query.
#[derive(Debug, Clone)]
pub struct BoolCan {
    pub verdict: bool,
    pub witness: Option<String>,
    pub warnings: Vec<String>,
}

/// Outcome of a utilitarian ability query; `value` is absent when no
/// strategy forces the goal.
#[derive(Debug, Clone)]
pub struct UtilCan {
    pub value: Option<f64>,
    pub witness: Option<String>,
    pub warnings: Vec<String>,
}

/// Outcome of a probabilistic ability query.
#[derive(Debug, Clone)]
pub struct ProbCan {
    pub probability: f64,
    pub witness: Option<String>,
    pub warnings: Vec<String>,
}

/// Outcome of an expected-utility ability query.
#[derive(Debug, Clone)]
pub struct XuCan {
    pub result: Option<(f64, f64)>,
    pub witness: Option<String>,
    pub warnings: Vec<String>,
}

/// Whether the strategy forces the goal: the goal holds at `t` in every
/// history the strategy allows.
pub fn forces(
    model: &Model,
    ctx: &StrategyContext,
    s: &PureStrategy,
    goal: &Formula,
    t: Time,
) -> Result<bool> {
    let goal_set = model.ctx().eval_set(goal, t)?;
    Ok(ctx.potential(s)?.is_subset(&goal_set))
}

fn candidates(model: &Model, agent: &str, space: Space) -> Result<PlanState> {
    match space {
        Space::Objective => model.full_space(agent),
        Space::Subjective => model.repertoire(agent),
    }
}

struct SingleSearch<'m> {
    ctx: StrategyContext<'m>,
    pool: PlanState,
    futures: HistorySet,
    goal_set: HistorySet,
}

impl<'m> SingleSearch<'m> {
    fn new(
        model: &'m Model,
        agent: &str,
        goal: &Formula,
        h: HistoryIx,
        t: Time,
        space: Space,
        extra: Option<&HistorySet>,
    ) -> Result<Self> {
        let ctx = model.strategy_context(agent)?;
        let pool = candidates(model, agent, space)?;
        let mut futures = model.universe.futures_of(h, t)?;
        if let Some(extra) = extra {
            futures.intersect_with(extra);
        }
        let goal_set = model.ctx().eval_set(goal, t)?;
        Ok(SingleSearch {
            ctx,
            pool,
            futures,
            goal_set,
        })
    }

    /// The forcing domain of one candidate.
    fn domain(&self, s: &PureStrategy) -> Result<HistorySet> {
        let mut d = self.ctx.potential(s)?;
        d.intersect_with(&self.futures);
        Ok(d)
    }

    fn forcing(&self, s: &PureStrategy) -> Result<(bool, bool)> {
        let d = self.domain(s)?;
        Ok((d.is_subset(&self.goal_set), d.is_empty()))
    }
}

fn search_bool(search: &SingleSearch) -> Result<BoolCan> {
    let mut warnings = Vec::new();
    for s in search.pool.strategies() {
        let (forces, vacuous) = search.forcing(s)?;
        if forces {
            let witness = s.describe(search.ctx.ensemble);
            if vacuous {
                warnings.push(format!(
                    "witness `{witness}` forces vacuously: its potential excludes every future of the query vertex"
                ));
            }
            return Ok(BoolCan {
                verdict: true,
                witness: Some(witness),
                warnings,
            });
        }
    }
    Ok(BoolCan {
        verdict: false,
        witness: None,
        warnings,
    })
}

/// `o-can` (`space = Objective`) and `s-can` (`space = Subjective`): some
/// strategy in the space forces the goal no matter what the others do.
pub fn can(
    model: &Model,
    agent: &str,
    goal: &Formula,
    h: HistoryIx,
    t: Time,
    space: Space,
) -> Result<BoolCan> {
    let search = SingleSearch::new(model, agent, goal, h, t, space, None)?;
    search_bool(&search)
}

/// Coordinative ability: the agent's strategy need only force the goal over
/// the histories compatible with what it knows of the group's intentions.
pub fn co_can(
    model: &Model,
    agent: &str,
    group: &[String],
    goal: &Formula,
    h: HistoryIx,
    t: Time,
    space: Space,
) -> Result<BoolCan> {
    model.check_agent(agent)?;
    let v = model.universe.vertex_ix(Vertex { history: h, cut: t })?;
    let cell = model.ensembles[agent].cell_of(v).clone();
    let nested = nested_group_potential(model, agent, group, &cell)?;
    let search = SingleSearch::new(model, agent, goal, h, t, space, Some(&nested))?;
    let mut out = search_bool(&search)?;
    if nested.is_empty() {
        out.warnings.push(
            "knowledge of the group's intentions is contradictory (empty potential); the query is vacuous"
                .to_string(),
        );
    }
    Ok(out)
}

struct GroupSearch<'m> {
    model: &'m Model,
    agents: Vec<String>,
    pools: Vec<PlanState>,
    /// Per-member extra intersection (futures and any nested potentials).
    extras: Vec<HistorySet>,
    goal_set: HistorySet,
}

impl<'m> GroupSearch<'m> {
    fn check_cap(&self, model: &Model) -> Result<()> {
        let mut size: u128 = 1;
        for pool in &self.pools {
            size = size.saturating_mul(pool.len() as u128);
        }
        if size > model.strategy_cap {
            return Err(Error::EnumerationLimit {
                agent: "group".into(),
                size,
                cap: model.strategy_cap,
            });
        }
        Ok(())
    }

    /// Searches all strategy tuples for one whose combined domain forces the
    /// goal. A tuple's domain is its joint potential (respecting
    /// simultaneous-action interference) cut down by the members' extras.
    fn run(&self) -> Result<BoolCan> {
        let n = self.pools.len();
        let mut counter = vec![0usize; n];
        let mut warnings = Vec::new();
        loop {
            let participants: Vec<_> = self
                .agents
                .iter()
                .zip(self.pools.iter().zip(&counter))
                .map(|(agent, (pool, &k))| {
                    (&self.model.ensembles[agent], &pool.strategies()[k])
                })
                .collect();
            let mut domain = crate::strategy::joint_potential(
                &self.model.universe,
                &self.model.actions,
                &participants,
            )?;
            for extra in &self.extras {
                domain.intersect_with(extra);
            }
            if domain.is_subset(&self.goal_set) {
                let vacuous = domain.is_empty();
                let witness = self
                    .pools
                    .iter()
                    .enumerate()
                    .map(|(i, pool)| {
                        pool.strategies()[counter[i]]
                            .describe(&self.model.ensembles[&self.agents[i]])
                    })
                    .collect::<Vec<_>>()
                    .join(" + ");
                if vacuous {
                    warnings.push(format!(
                        "witness `{witness}` forces vacuously: the combined potential is empty"
                    ));
                }
                return Ok(BoolCan {
                    verdict: true,
                    witness: Some(witness),
                    warnings,
                });
            }
            let mut pos = n;
            loop {
                if pos == 0 {
                    return Ok(BoolCan {
                        verdict: false,
                        witness: None,
                        warnings,
                    });
                }
                pos -= 1;
                counter[pos] += 1;
                if counter[pos] < self.pools[pos].len() {
                    break;
                }
                counter[pos] = 0;
            }
        }
    }
}

/// Cooperative ability: each member contributes a strategy, and the
/// superimposed potentials force the goal.
pub fn coop_can(
    model: &Model,
    group: &[String],
    goal: &Formula,
    h: HistoryIx,
    t: Time,
    space: Space,
) -> Result<BoolCan> {
    group_search(model, group, None, goal, h, t, space)
}

/// Cooperative ability informed by each member's knowledge of a second
/// group's intentions.
pub fn co_coop_can(
    model: &Model,
    group1: &[String],
    group2: &[String],
    goal: &Formula,
    h: HistoryIx,
    t: Time,
    space: Space,
) -> Result<BoolCan> {
    group_search(model, group1, Some(group2), goal, h, t, space)
}

fn group_search(
    model: &Model,
    group: &[String],
    group2: Option<&[String]>,
    goal: &Formula,
    h: HistoryIx,
    t: Time,
    space: Space,
) -> Result<BoolCan> {
    if group.is_empty() {
        return Err(Error::Usage("group ability needs a nonempty group".into()));
    }
    let v = model.universe.vertex_ix(Vertex { history: h, cut: t })?;
    let futures = model.universe.futures_of(h, t)?;
    let mut pools = Vec::new();
    let mut extras = Vec::new();
    for agent in group {
        pools.push(candidates(model, agent, space)?);
        let mut extra = futures.clone();
        if let Some(group2) = group2 {
            let cell = model.ensembles[agent].cell_of(v).clone();
            extra.intersect_with(&nested_group_potential(model, agent, group2, &cell)?);
        }
        extras.push(extra);
    }
    let goal_set = model.ctx().eval_set(goal, t)?;
    let search = GroupSearch {
        model,
        agents: group.to_vec(),
        pools,
        extras,
        goal_set,
    };
    search.check_cap(model)?;
    search.run()
}

/// Utilitarian ability: the best guarantee over forcing strategies, taking
/// the worst allowed history when `pessimistic` and the best otherwise.
/// Vacuously forcing strategies carry no utility and are skipped.
pub fn u_can(
    model: &Model,
    agent: &str,
    goal: &Formula,
    h: HistoryIx,
    t: Time,
    pessimistic: bool,
    space: Space,
) -> Result<UtilCan> {
    let table = model.utility_table(agent)?;
    let search = SingleSearch::new(model, agent, goal, h, t, space, None)?;
    let mut best: Option<(f64, String)> = None;
    let mut warnings = Vec::new();
    for s in search.pool.strategies() {
        let domain = search.domain(s)?;
        if !domain.is_subset(&search.goal_set) {
            continue;
        }
        if domain.is_empty() {
            warnings.push(format!(
                "strategy `{s}` forces vacuously and carries no utility guarantee; skipped"
            ));
            continue;
        }
        let utilities = domain.iter().map(|k| table[k.0]);
        let value = if pessimistic {
            utilities.fold(f64::INFINITY, f64::min)
        } else {
            utilities.fold(f64::NEG_INFINITY, f64::max)
        };
        if best.as_ref().is_none_or(|(b, _)| value > *b) {
            best = Some((value, s.describe(search.ctx.ensemble)));
        }
    }
    Ok(match best {
        Some((value, witness)) => UtilCan {
            value: Some(value),
            witness: Some(witness),
            warnings,
        },
        None => UtilCan {
            value: None,
            witness: None,
            warnings,
        },
    })
}

/// Probabilistic ability: the largest conditional probability of the goal
/// within a strategy's allowed futures, over the whole space.
pub fn p_can(
    model: &Model,
    agent: &str,
    goal: &Formula,
    h: HistoryIx,
    t: Time,
    space: Space,
) -> Result<ProbCan> {
    let prior = model.prior()?.clone();
    let search = SingleSearch::new(model, agent, goal, h, t, space, None)?;
    let mut best: Option<(f64, String)> = None;
    let mut skipped = 0usize;
    for s in search.pool.strategies() {
        let domain = search.domain(s)?;
        let total = prior.mass(&domain);
        if total <= 0.0 {
            skipped += 1;
            continue;
        }
        let mut goal_part = domain.clone();
        goal_part.intersect_with(&search.goal_set);
        let p = prior.mass(&goal_part) / total;
        if best.as_ref().is_none_or(|(b, _)| p > *b) {
            best = Some((p, s.describe(search.ctx.ensemble)));
        }
    }
    let mut warnings = Vec::new();
    if skipped > 0 {
        warnings.push(format!(
            "{skipped} strategies skipped: zero prior mass on their allowed futures"
        ));
    }
    match best {
        Some((probability, witness)) => Ok(ProbCan {
            probability,
            witness: Some(witness),
            warnings,
        }),
        None => Err(Error::UndefinedConditional(format!(
            "every strategy of `{agent}` has zero prior mass on the futures of the query vertex"
        ))),
    }
}

/// Expected-utility ability: over forcing strategies with positive-mass
/// domains, the `(probability, expected utility)` pair of the strategy
/// maximizing expected utility under the renormalized prior.
pub fn xu_can(
    model: &Model,
    agent: &str,
    goal: &Formula,
    h: HistoryIx,
    t: Time,
    space: Space,
) -> Result<XuCan> {
    let prior = model.prior()?.clone();
    let table = model.utility_table(agent)?;
    let search = SingleSearch::new(model, agent, goal, h, t, space, None)?;
    let mut best: Option<(f64, f64, String)> = None;
    let mut warnings = Vec::new();
    for s in search.pool.strategies() {
        let domain = search.domain(s)?;
        if !domain.is_subset(&search.goal_set) {
            continue;
        }
        let total = prior.mass(&domain);
        if total <= 0.0 {
            warnings.push(format!(
                "forcing strategy `{s}` skipped: zero prior mass on its allowed futures"
            ));
            continue;
        }
        let mut goal_part = domain.clone();
        goal_part.intersect_with(&search.goal_set);
        let p = prior.mass(&goal_part) / total;
        let xu: f64 = domain
            .iter()
            .map(|k| prior.weights[k.0] / total * table[k.0])
            .sum();
        if best.as_ref().is_none_or(|(_, b, _)| xu > *b) {
            best = Some((p, xu, s.describe(search.ctx.ensemble)));
        }
    }
    Ok(match best {
        Some((p, xu, witness)) => XuCan {
            result: Some((p, xu)),
            witness: Some(witness),
            warnings,
        },
        None => XuCan {
            result: None,
            witness: None,
            warnings,
        },
    })
}
