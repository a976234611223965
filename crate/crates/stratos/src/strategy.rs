//! Pure strategies, potentials, plan states, and repertoires.
//!
//! A pure strategy assigns one alternative to each information set where the
//! agent has choices. Its potential is the set of histories not excluded by
//! the strategy: at every step, the next state must be reachable under the
//! assigned alternative given what the other agents might do. Plan states
//! are nonempty sets of strategies; their potential is the union of member
//! potentials, so larger plan states mean more uncertainty about control.

use std::collections::BTreeMap;
use std::fmt;

use crate::action::{ActionSystem, Alternative};
use crate::error::{Error, Result};
use crate::histset::HistorySet;
use crate::info::Ensemble;
use crate::world::{HistoryIx, Universe, Vertex};

/// A total assignment of alternatives to the agent's acting cells, keyed by
/// cell index in the agent's ensemble.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PureStrategy {
    pub agent: String,
    pub assignment: BTreeMap<usize, Alternative>,
}

/// A nonempty set of strategies of one agent, kept sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanState {
    pub agent: String,
    strategies: Vec<PureStrategy>,
}

impl PlanState {
    pub fn new(agent: impl Into<String>, mut strategies: Vec<PureStrategy>) -> Result<Self> {
        let agent = agent.into();
        if strategies.is_empty() {
            return Err(Error::Domain(format!("plan state of `{agent}` is empty")));
        }
        if let Some(s) = strategies.iter().find(|s| s.agent != agent) {
            return Err(Error::Domain(format!(
                "plan state of `{agent}` contains a strategy of `{}`",
                s.agent
            )));
        }
        strategies.sort();
        strategies.dedup();
        Ok(PlanState { agent, strategies })
    }

    pub fn strategies(&self) -> &[PureStrategy] {
        &self.strategies
    }

    pub fn len(&self) -> usize {
        self.strategies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strategies.is_empty()
    }

    pub fn contains(&self, s: &PureStrategy) -> bool {
        self.strategies.binary_search(s).is_ok()
    }

    pub fn is_subset_of(&self, other: &PlanState) -> bool {
        self.strategies.iter().all(|s| other.contains(s))
    }
}

/// The dynamically available strategies of an agent: a nonempty subset of
/// the full strategy space.
#[derive(Debug, Clone)]
pub struct Repertoire {
    pub agent: String,
    pub strategies: PlanState,
}

/// Strategy-space machinery for one agent against one ensemble.
pub struct StrategyContext<'a> {
    pub universe: &'a Universe,
    pub actions: &'a ActionSystem,
    pub ensemble: &'a Ensemble,
    pub agent: String,
    acting: Vec<(usize, Vec<Alternative>)>,
}

impl<'a> StrategyContext<'a> {
    pub fn new(
        universe: &'a Universe,
        actions: &'a ActionSystem,
        ensemble: &'a Ensemble,
        agent: impl Into<String>,
    ) -> Result<Self> {
        let agent = agent.into();
        let mut acting = Vec::new();
        for (ix, _) in ensemble.cells().iter().enumerate() {
            let alts = alternatives(universe, actions, ensemble, &agent, ix)?;
            if alts.len() > 1 || !alts[0].selection.is_empty() {
                acting.push((ix, alts));
            }
        }
        Ok(StrategyContext {
            universe,
            actions,
            ensemble,
            agent,
            acting,
        })
    }

    /// Cells where the agent has real choices, with their alternatives.
    pub fn acting_cells(&self) -> &[(usize, Vec<Alternative>)] {
        &self.acting
    }

    /// `|Π|`: the product of alternative counts over acting cells.
    pub fn space_size(&self) -> u128 {
        self.acting
            .iter()
            .map(|(_, alts)| alts.len() as u128)
            .product()
    }

    /// Enumerates the full strategy space in deterministic order (a
    /// mixed-radix counter over acting cells), guarded by the cap.
    pub fn enumerate(&self, cap: u128) -> Result<Vec<PureStrategy>> {
        let size = self.space_size();
        if size > cap {
            return Err(Error::EnumerationLimit {
                agent: self.agent.clone(),
                size,
                cap,
            });
        }
        let mut out = Vec::with_capacity(size as usize);
        let mut counter = vec![0usize; self.acting.len()];
        loop {
            let assignment = self
                .acting
                .iter()
                .zip(&counter)
                .map(|((cell, alts), &k)| (*cell, alts[k].clone()))
                .collect();
            out.push(PureStrategy {
                agent: self.agent.clone(),
                assignment,
            });
            let mut pos = self.acting.len();
            loop {
                if pos == 0 {
                    return Ok(out);
                }
                pos -= 1;
                counter[pos] += 1;
                if counter[pos] < self.acting[pos].1.len() {
                    break;
                }
                counter[pos] = 0;
            }
        }
    }

    /// Checks that the assignment covers exactly the acting cells with valid
    /// alternatives.
    pub fn validate_strategy(&self, s: &PureStrategy) -> Result<()> {
        for (cell, alts) in &self.acting {
            match s.assignment.get(cell) {
                None => {
                    return Err(Error::IncompleteStrategy {
                        agent: self.agent.clone(),
                        cell: self.ensemble.cell(*cell).name.clone(),
                    })
                }
                Some(alt) if !alts.contains(alt) => {
                    return Err(Error::Domain(format!(
                        "strategy of `{}` picks an unavailable alternative at cell `{}`",
                        self.agent,
                        self.ensemble.cell(*cell).name
                    )))
                }
                _ => {}
            }
        }
        if let Some((cell, _)) = s
            .assignment
            .iter()
            .find(|(cell, _)| !self.acting.iter().any(|(c, _)| c == *cell))
        {
            return Err(Error::Domain(format!(
                "strategy of `{}` assigns at cell `{}` where the agent has no choices",
                self.agent,
                self.ensemble.cell(*cell).name
            )));
        }
        Ok(())
    }

    /// The histories compatible with the strategy: at every time, the next
    /// state lies among the outcomes of the assigned alternative.
    pub fn potential(&self, s: &PureStrategy) -> Result<HistorySet> {
        let n = self.universe.n_histories();
        let mut set = HistorySet::empty(n);
        'hist: for h in 0..n {
            let h = HistoryIx(h);
            for t in 0..self.universe.t_max() {
                let v = self.universe.vertex_ix(Vertex { history: h, cut: t })?;
                let cell = self.ensemble.cell_ix_of(v);
                let alt = match s.assignment.get(&cell) {
                    Some(alt) => alt.clone(),
                    None => {
                        if self.acting.iter().any(|(c, _)| *c == cell) {
                            return Err(Error::IncompleteStrategy {
                                agent: self.agent.clone(),
                                cell: self.ensemble.cell(cell).name.clone(),
                            });
                        }
                        Alternative::null(&self.agent)
                    }
                };
                let state = self.universe.state_at(h, t);
                let outcomes =
                    self.actions
                        .outcomes(self.universe.states(), &self.agent, &alt, state)?;
                if !outcomes.contains(&self.universe.state_at(h, t + 1)) {
                    continue 'hist;
                }
            }
            set.insert(h);
        }
        Ok(set)
    }
}

/// The alternatives available to the agent at a cell: every uniform complete
/// choice over the cell's frontier states. An agent without choice points at
/// the cell has exactly the null alternative. Frontier states of final-time
/// vertices are skipped: no action leaves the last time point.
pub fn alternatives(
    universe: &Universe,
    actions: &ActionSystem,
    ensemble: &Ensemble,
    agent: &str,
    cell_ix: usize,
) -> Result<Vec<Alternative>> {
    let cell = ensemble.cell(cell_ix);
    let mut structure: Option<BTreeMap<String, Vec<String>>> = None;
    for &v in &cell.members {
        let data = universe.vertex_data(v);
        if data.cut >= universe.t_max() {
            continue;
        }
        let state = universe.state_at(data.repr(), data.cut);
        let points = actions.choice_points(state, agent);
        match &structure {
            None => structure = Some(points),
            Some(prev) if *prev != points => {
                return Err(Error::IllFormedEnsemble(format!(
                    "cell `{}` mixes frontier states with different choice-point structure for `{agent}`",
                    cell.name
                )))
            }
            _ => {}
        }
    }
    let points = structure.unwrap_or_default();
    if points.is_empty() {
        return Ok(vec![Alternative::null(agent)]);
    }
    let ids: Vec<&String> = points.keys().collect();
    let mut out = Vec::new();
    let mut counter = vec![0usize; ids.len()];
    loop {
        let selection = ids
            .iter()
            .zip(&counter)
            .map(|(id, &k)| ((*id).clone(), points[*id][k].clone()))
            .collect();
        out.push(Alternative {
            agent: agent.to_string(),
            selection,
        });
        let mut pos = ids.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            counter[pos] += 1;
            if counter[pos] < points[ids[pos]].len() {
                break;
            }
            counter[pos] = 0;
        }
    }
}

/// The histories compatible with several agents playing their strategies at
/// once: at every step some single joint choice extending all the fixed
/// selections reaches the next state. This respects interference between
/// simultaneous choices, which intersecting the agents' individual
/// potentials would not.
pub fn joint_potential(
    universe: &Universe,
    actions: &ActionSystem,
    participants: &[(&Ensemble, &PureStrategy)],
) -> Result<HistorySet> {
    let contexts: Vec<StrategyContext> = participants
        .iter()
        .map(|(ensemble, s)| {
            StrategyContext::new(universe, actions, ensemble, s.agent.clone())
        })
        .collect::<Result<_>>()?;
    let n = universe.n_histories();
    let mut set = HistorySet::empty(n);
    'hist: for h in 0..n {
        let h = HistoryIx(h);
        for t in 0..universe.t_max() {
            let v = universe.vertex_ix(Vertex { history: h, cut: t })?;
            let mut fixed: BTreeMap<&str, &BTreeMap<String, String>> = BTreeMap::new();
            for ((ensemble, s), ctx) in participants.iter().zip(&contexts) {
                let cell = ensemble.cell_ix_of(v);
                match s.assignment.get(&cell) {
                    Some(alt) => {
                        fixed.insert(s.agent.as_str(), &alt.selection);
                    }
                    None => {
                        if ctx.acting_cells().iter().any(|(c, _)| *c == cell) {
                            return Err(Error::IncompleteStrategy {
                                agent: s.agent.clone(),
                                cell: ensemble.cell(cell).name.clone(),
                            });
                        }
                    }
                }
            }
            let state = universe.state_at(h, t);
            let outcomes = actions.joint_outcomes(universe.states(), &fixed, state)?;
            if !outcomes.contains(&universe.state_at(h, t + 1)) {
                continue 'hist;
            }
        }
        set.insert(h);
    }
    Ok(set)
}

/// The strategy potential restricted by an information set: the histories
/// both allowed by the strategy and intersected by the set.
pub fn potential_given_info(
    ctx: &StrategyContext,
    s: &PureStrategy,
    info_star: &HistorySet,
) -> Result<HistorySet> {
    let mut p = ctx.potential(s)?;
    p.intersect_with(info_star);
    Ok(p)
}

/// The union of member potentials: the worlds allowed by the plan state.
pub fn plan_state_potential(ctx: &StrategyContext, plan: &PlanState) -> Result<HistorySet> {
    let mut out = HistorySet::empty(ctx.universe.n_histories());
    for s in plan.strategies() {
        out.union_with(&ctx.potential(s)?);
    }
    Ok(out)
}

/// Whether every history the strategy allows lies inside the expected
/// consequence set.
pub fn expectations_correct(expected: &HistorySet, potential: &HistorySet) -> bool {
    potential.is_subset(expected)
}

impl PureStrategy {
    /// Rendered with the cell names of the agent's ensemble, e.g.
    /// `A{s0@0: a=h; s0>s_bh@1: a=t}`.
    pub fn describe(&self, ensemble: &Ensemble) -> String {
        let cells: Vec<String> = self
            .assignment
            .iter()
            .map(|(cell, alt)| {
                let picks: Vec<String> = alt
                    .selection
                    .iter()
                    .map(|(cp, label)| format!("{cp}={label}"))
                    .collect();
                format!("{}: {}", ensemble.cell(*cell).name, picks.join(","))
            })
            .collect();
        format!("{}{{{}}}", self.agent, cells.join("; "))
    }
}

impl fmt::Display for PureStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{{", self.agent)?;
        let mut first = true;
        for (cell, alt) in &self.assignment {
            if !first {
                write!(f, "; ")?;
            }
            first = false;
            write!(f, "cell{}:", cell)?;
            let mut inner = true;
            for (cp, label) in &alt.selection {
                if !inner {
                    write!(f, ",")?;
                }
                inner = false;
                write!(f, "{cp}={label}")?;
            }
        }
        write!(f, "}}")
    }
}
