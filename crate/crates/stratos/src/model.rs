//! Model files: the JSON document schema, loading, cross-reference
//! resolution, and the aggregate [`Model`] every query runs against.
//!
//! The published schema lives in `docs/schema.md`. Vertices are addressed
//! either by generated history id plus cut (`H0@1`) or, more robustly, by
//! the shared trajectory prefix (`s0>s_hh`, cut implied by length).
//! Histories are addressed by id (`H0`) or full trajectory (`s0>s_hh`).

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::action::{ActionSystem, Alternative, MicroTimeTree, TreeNode, WORLD};
use crate::error::{Error, Result};
use crate::info::{Ensemble, InfoSet};
use crate::pragmatics::{ContentSpec, Force, PragProfile, RawMessage, Scenario};
use crate::strategy::{PlanState, PureStrategy, StrategyContext};
use crate::world::{HistoryIx, Time, Universe, Vertex, VertexIx, WorldState};

pub const SCHEMA_VERSION: &str = "1";
pub const DEFAULT_STRATEGY_CAP: u128 = 1_000_000;
pub const STRATEGY_CAP_ENV: &str = "STRATOS_STRATEGY_CAP";

// ---------------------------------------------------------------------------
// Raw document (serde side)
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub schema_version: String,
    pub times: RawTimes,
    pub agents: Vec<String>,
    pub states: Vec<RawState>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub trees: BTreeMap<String, RawNode>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub ensembles: BTreeMap<String, RawEnsemble>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub repertoires: BTreeMap<String, RawStrategySet>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub plan_states: BTreeMap<String, BTreeMap<String, RawStrategySet>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub nested_plan_states: BTreeMap<String, BTreeMap<String, BTreeMap<String, RawStrategySet>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prior: Option<RawPrior>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub utilities: BTreeMap<String, BTreeMap<String, f64>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub pragmatics_profiles: BTreeMap<String, BTreeMap<String, RawContent>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub scenarios: Vec<RawScenario>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawTimes {
    pub t_max: Time,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawState {
    pub id: String,
    #[serde(default)]
    pub labels: Vec<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub initial: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawNode {
    Leaf {
        leaf: String,
    },
    Choice {
        owner: String,
        id: String,
        moves: BTreeMap<String, RawNode>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawEnsemble {
    /// `"perfect"`: generate the perfect-information ensemble.
    Generator(String),
    Cells(Vec<RawCell>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawCell {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub members: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawStrategySet {
    /// `"all"`: the full strategy space.
    All(String),
    Listed(Vec<RawStrategy>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawStrategy {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub assign: BTreeMap<String, BTreeMap<String, String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawPrior {
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub uniform: bool,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub weights: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawContent {
    pub force: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub formula: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<BTreeMap<String, f64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawScenario {
    pub name: String,
    pub at: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub participants: Vec<String>,
    pub messages: Vec<RawScenarioMessage>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawScenarioMessage {
    pub speaker: String,
    pub addressee: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub token: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub force: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub formula: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<BTreeMap<String, f64>>,
}

// ---------------------------------------------------------------------------
// Resolved model
// ---------------------------------------------------------------------------

/// A strategy-set declaration, resolved lazily against the cap for `All`.
#[derive(Debug, Clone)]
pub enum StrategySetSpec {
    All,
    Listed(Vec<PureStrategy>),
}

/// Plan-state declarations of one (holder, subject) pair: per-vertex entries
/// plus an optional default for undeclared vertices.
#[derive(Debug, Clone, Default)]
pub struct PlanDecl {
    pub default: Option<StrategySetSpec>,
    pub at: BTreeMap<VertexIx, StrategySetSpec>,
}

impl PlanDecl {
    pub fn lookup(&self, v: VertexIx) -> Option<&StrategySetSpec> {
        self.at.get(&v).or(self.default.as_ref())
    }
}

/// A probability distribution over the histories of the universe.
#[derive(Debug, Clone)]
pub struct Prior {
    pub weights: Vec<f64>,
}

impl Prior {
    pub fn uniform(n: usize) -> Self {
        Prior {
            weights: vec![1.0 / n as f64; n],
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.weights.iter().any(|w| *w < 0.0 || !w.is_finite()) {
            return Err(Error::Domain("prior weights must be finite and nonnegative".into()));
        }
        let sum: f64 = self.weights.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::Domain(format!(
                "prior weights sum to {sum}, expected 1 within 1e-9"
            )));
        }
        Ok(())
    }

    /// Total mass of a history set.
    pub fn mass(&self, set: &crate::histset::HistorySet) -> f64 {
        set.iter().map(|h| self.weights[h.0]).sum()
    }
}

/// A fully validated model: the built universe plus every declared section.
pub struct Model {
    pub universe: Universe,
    pub actions: ActionSystem,
    pub agents: Vec<String>,
    pub ensembles: BTreeMap<String, Ensemble>,
    pub repertoires: BTreeMap<String, StrategySetSpec>,
    pub plan_decls: BTreeMap<String, PlanDecl>,
    pub nested_decls: BTreeMap<String, BTreeMap<String, PlanDecl>>,
    pub prior: Option<Prior>,
    pub utilities: BTreeMap<String, Vec<f64>>,
    pub profiles: BTreeMap<String, PragProfile>,
    pub scenarios: Vec<Scenario>,
    pub strategy_cap: u128,
}

impl Model {
    /// Reads, parses, and fully validates a model file. The strategy cap
    /// comes from `STRATOS_STRATEGY_CAP` when set.
    pub fn load(path: impl AsRef<Path>) -> Result<Model> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        let doc: Document = serde_json::from_str(&text).map_err(|source| Error::Json {
            path: path.display().to_string(),
            source,
        })?;
        Model::resolve(doc)
    }

    pub fn strategy_cap_from_env() -> u128 {
        std::env::var(STRATEGY_CAP_ENV)
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(DEFAULT_STRATEGY_CAP)
    }

    /// Resolves a raw document into a validated model.
    pub fn resolve(doc: Document) -> Result<Model> {
        if doc.schema_version != SCHEMA_VERSION {
            return Err(Error::Schema {
                pointer: "/schema_version".into(),
                message: format!(
                    "unsupported schema version `{}`, expected `{SCHEMA_VERSION}`",
                    doc.schema_version
                ),
            });
        }
        if doc.states.is_empty() {
            return Err(Error::Schema {
                pointer: "/states".into(),
                message: "state list is empty".into(),
            });
        }
        let mut agents = doc.agents.clone();
        agents.sort();
        agents.dedup();
        if agents.iter().any(|a| a == WORLD) {
            return Err(Error::Schema {
                pointer: "/agents".into(),
                message: format!("`{WORLD}` is reserved for nature and cannot be declared"),
            });
        }

        let states: Vec<WorldState> = doc
            .states
            .iter()
            .map(|s| WorldState {
                id: s.id.clone(),
                labels: s.labels.iter().cloned().collect(),
                initial: s.initial,
            })
            .collect();

        let mut trees: Vec<Option<MicroTimeTree>> = vec![None; states.len()];
        for (state_id, node) in &doc.trees {
            let ix = states
                .iter()
                .position(|s| s.id == *state_id)
                .ok_or_else(|| Error::DanglingReference {
                    pointer: format!("/trees/{state_id}"),
                    message: format!("tree attached to unknown state `{state_id}`"),
                })?;
            trees[ix] = Some(MicroTimeTree {
                root: resolve_node(node),
            });
        }
        let actions = ActionSystem::new(trees);
        let universe = actions.build_universe(states, doc.times.t_max)?;

        // Tree owners must be declared agents or nature.
        for state in universe.states() {
            let six = universe.state_by_id(&state.id)?;
            if let Some(tree) = actions.tree(six) {
                for owner in tree_owners(&tree.root) {
                    if owner != WORLD && !agents.contains(&owner) {
                        return Err(Error::DanglingReference {
                            pointer: format!("/trees/{}", state.id),
                            message: format!("choice point owned by undeclared agent `{owner}`"),
                        });
                    }
                }
            }
        }

        let mut ensembles = BTreeMap::new();
        for agent in &agents {
            let raw = doc.ensembles.get(agent).ok_or_else(|| Error::Schema {
                pointer: format!("/ensembles/{agent}"),
                message: format!("no ensemble declared for agent `{agent}`"),
            })?;
            let ensemble = match raw {
                RawEnsemble::Generator(kind) if kind == "perfect" => {
                    Ensemble::perfect(&universe, agent.clone())
                }
                RawEnsemble::Generator(kind) => {
                    return Err(Error::Schema {
                        pointer: format!("/ensembles/{agent}"),
                        message: format!("unknown ensemble generator `{kind}`"),
                    })
                }
                RawEnsemble::Cells(cells) => {
                    let mut resolved = Vec::new();
                    for (i, cell) in cells.iter().enumerate() {
                        let mut members = BTreeSet::new();
                        for addr in &cell.members {
                            members.insert(parse_vertex_addr(&universe, addr)?);
                        }
                        resolved.push(InfoSet::new(
                            cell.name.clone().unwrap_or_else(|| format!("I{i}")),
                            members,
                        ));
                    }
                    Ensemble::new(&universe, agent.clone(), resolved)?
                }
            };
            ensembles.insert(agent.clone(), ensemble);
        }
        for agent in doc.ensembles.keys() {
            if !agents.contains(agent) {
                return Err(Error::DanglingReference {
                    pointer: format!("/ensembles/{agent}"),
                    message: format!("ensemble declared for undeclared agent `{agent}`"),
                });
            }
        }

        let mut model = Model {
            universe,
            actions,
            agents,
            ensembles,
            repertoires: BTreeMap::new(),
            plan_decls: BTreeMap::new(),
            nested_decls: BTreeMap::new(),
            prior: None,
            utilities: BTreeMap::new(),
            profiles: BTreeMap::new(),
            scenarios: Vec::new(),
            strategy_cap: Model::strategy_cap_from_env(),
        };

        for (agent, raw) in &doc.repertoires {
            model.check_agent(agent)?;
            let spec = model.resolve_strategy_set(agent, raw, &format!("/repertoires/{agent}"))?;
            if let StrategySetSpec::Listed(list) = &spec {
                if list.is_empty() {
                    return Err(Error::Schema {
                        pointer: format!("/repertoires/{agent}"),
                        message: "repertoire must be nonempty".into(),
                    });
                }
            }
            model.repertoires.insert(agent.clone(), spec);
        }

        for (agent, per_vertex) in &doc.plan_states {
            model.check_agent(agent)?;
            let decl = model.resolve_plan_decl(agent, per_vertex, &format!("/plan_states/{agent}"))?;
            model.plan_decls.insert(agent.clone(), decl);
        }

        for (holder, subjects) in &doc.nested_plan_states {
            model.check_agent(holder)?;
            let mut per_subject = BTreeMap::new();
            for (subject, per_vertex) in subjects {
                model.check_agent(subject)?;
                let decl = model.resolve_plan_decl(
                    subject,
                    per_vertex,
                    &format!("/nested_plan_states/{holder}/{subject}"),
                )?;
                per_subject.insert(subject.clone(), decl);
            }
            model.nested_decls.insert(holder.clone(), per_subject);
        }

        if let Some(raw) = &doc.prior {
            let n = model.universe.n_histories();
            let prior = if raw.uniform {
                if !raw.weights.is_empty() {
                    return Err(Error::Schema {
                        pointer: "/prior".into(),
                        message: "prior cannot be both uniform and weighted".into(),
                    });
                }
                Prior::uniform(n)
            } else {
                let mut weights = vec![0.0; n];
                for (addr, w) in &raw.weights {
                    let h = parse_history_addr(&model.universe, addr)?;
                    weights[h.0] = *w;
                }
                let prior = Prior { weights };
                prior.validate()?;
                prior
            };
            model.prior = Some(prior);
        }

        for (agent, per_history) in &doc.utilities {
            model.check_agent(agent)?;
            let mut table = vec![0.0; model.universe.n_histories()];
            for (addr, u) in per_history {
                let h = parse_history_addr(&model.universe, addr)?;
                table[h.0] = *u;
            }
            model.utilities.insert(agent.clone(), table);
        }

        for (agent, entries) in &doc.pragmatics_profiles {
            model.check_agent(agent)?;
            let mut remap = BTreeMap::new();
            for (token, raw) in entries {
                let content = model.resolve_content(
                    raw,
                    &format!("/pragmatics_profiles/{agent}/{token}"),
                )?;
                remap.insert(token.clone(), content);
            }
            model.profiles.insert(agent.clone(), PragProfile { remap });
        }

        for (i, raw) in doc.scenarios.iter().enumerate() {
            let pointer = format!("/scenarios/{i}");
            let at = parse_vertex_addr(&model.universe, &raw.at)?;
            let participants = if raw.participants.is_empty() {
                model.agents.clone()
            } else {
                for p in &raw.participants {
                    model.check_agent(p)?;
                }
                raw.participants.clone()
            };
            let mut messages = Vec::new();
            for (j, m) in raw.messages.iter().enumerate() {
                model.check_agent(&m.addressee)?;
                let content = match (&m.token, &m.force) {
                    (Some(token), None) => RawMessage::Token(token.clone()),
                    (None, Some(force)) => RawMessage::Inline(model.resolve_content(
                        &RawContent {
                            force: force.clone(),
                            formula: m.formula.clone(),
                            delta: m.delta.clone(),
                        },
                        &format!("{pointer}/messages/{j}"),
                    )?),
                    _ => {
                        return Err(Error::Schema {
                            pointer: format!("{pointer}/messages/{j}"),
                            message: "message needs either a token or an inline force".into(),
                        })
                    }
                };
                messages.push(crate::pragmatics::ScenarioMessage {
                    speaker: m.speaker.clone(),
                    addressee: m.addressee.clone(),
                    content,
                });
            }
            model.scenarios.push(Scenario {
                name: raw.name.clone(),
                at,
                participants,
                messages,
            });
        }

        Ok(model)
    }

    fn resolve_content(&self, raw: &RawContent, pointer: &str) -> Result<(Force, ContentSpec)> {
        let force = match raw.force.as_str() {
            "assertive" => Force::Assertive,
            "directive" => Force::Directive,
            "evaluative" => Force::Evaluative,
            other => {
                return Err(Error::Schema {
                    pointer: pointer.into(),
                    message: format!("unknown force `{other}`"),
                })
            }
        };
        match force {
            Force::Assertive | Force::Directive => {
                let text = raw.formula.as_ref().ok_or_else(|| Error::Schema {
                    pointer: pointer.into(),
                    message: format!("{:?} content needs a formula", force),
                })?;
                if raw.delta.is_some() {
                    return Err(Error::Schema {
                        pointer: pointer.into(),
                        message: "formula content cannot carry a utility delta".into(),
                    });
                }
                let formula = crate::parser::parse(text)?;
                self.ctx().resolve(&formula)?;
                Ok((force, ContentSpec::Formula(formula)))
            }
            Force::Evaluative => {
                let delta = raw.delta.as_ref().ok_or_else(|| Error::Schema {
                    pointer: pointer.into(),
                    message: "evaluative content needs a utility delta".into(),
                })?;
                if raw.formula.is_some() {
                    return Err(Error::Schema {
                        pointer: pointer.into(),
                        message: "evaluative content cannot carry a formula".into(),
                    });
                }
                let mut by_history = vec![0.0; self.universe.n_histories()];
                for (addr, d) in delta {
                    let h = parse_history_addr(&self.universe, addr)?;
                    by_history[h.0] = *d;
                }
                Ok((force, ContentSpec::Delta(by_history)))
            }
        }
    }

    fn resolve_plan_decl(
        &self,
        agent: &str,
        per_vertex: &BTreeMap<String, RawStrategySet>,
        pointer: &str,
    ) -> Result<PlanDecl> {
        let mut decl = PlanDecl::default();
        for (addr, raw) in per_vertex {
            let spec = self.resolve_strategy_set(agent, raw, &format!("{pointer}/{addr}"))?;
            if addr == "default" {
                decl.default = Some(spec);
            } else {
                let v = parse_vertex_addr(&self.universe, addr)?;
                decl.at.insert(v, spec);
            }
        }
        Ok(decl)
    }

    /// Resolves a raw strategy-set declaration against this model (also the
    /// entry point for inline strategy JSON from the CLI).
    pub fn resolve_strategy_set_pub(
        &self,
        agent: &str,
        raw: &RawStrategySet,
        pointer: &str,
    ) -> Result<StrategySetSpec> {
        self.resolve_strategy_set(agent, raw, pointer)
    }

    fn resolve_strategy_set(
        &self,
        agent: &str,
        raw: &RawStrategySet,
        pointer: &str,
    ) -> Result<StrategySetSpec> {
        match raw {
            RawStrategySet::All(word) if word == "all" => Ok(StrategySetSpec::All),
            RawStrategySet::All(word) => Err(Error::Schema {
                pointer: pointer.into(),
                message: format!("expected `all` or a strategy list, found `{word}`"),
            }),
            RawStrategySet::Listed(list) => {
                let ctx = self.strategy_context(agent)?;
                let mut out = Vec::new();
                for raw_strategy in list {
                    let s = self.resolve_strategy(&ctx, agent, raw_strategy, pointer)?;
                    out.push(s);
                }
                Ok(StrategySetSpec::Listed(out))
            }
        }
    }

    fn resolve_strategy(
        &self,
        ctx: &StrategyContext,
        agent: &str,
        raw: &RawStrategy,
        pointer: &str,
    ) -> Result<PureStrategy> {
        let ensemble = &self.ensembles[agent];
        let mut assignment = BTreeMap::new();
        for (cell_name, selection) in &raw.assign {
            let cell_ix = ensemble.cell_by_name(cell_name).ok_or_else(|| Error::DanglingReference {
                pointer: pointer.into(),
                message: format!("strategy references unknown cell `{cell_name}` of `{agent}`"),
            })?;
            assignment.insert(
                cell_ix,
                Alternative {
                    agent: agent.to_string(),
                    selection: selection.clone(),
                },
            );
        }
        let s = PureStrategy {
            agent: agent.to_string(),
            assignment,
        };
        ctx.validate_strategy(&s)?;
        Ok(s)
    }

    pub fn check_agent(&self, agent: &str) -> Result<()> {
        if !self.agents.iter().any(|a| a == agent) {
            return Err(Error::UnknownAgent(agent.to_string()));
        }
        Ok(())
    }

    /// Evaluation context over the model's declared ensembles.
    pub fn ctx(&self) -> crate::logic::EvalContext<'_> {
        crate::logic::EvalContext::new(&self.universe, &self.ensembles)
    }

    /// Strategy-space machinery for one agent.
    pub fn strategy_context(&self, agent: &str) -> Result<StrategyContext<'_>> {
        self.check_agent(agent)?;
        StrategyContext::new(&self.universe, &self.actions, &self.ensembles[agent], agent)
    }

    /// Resolves a strategy-set spec into a concrete plan state.
    pub fn resolve_set(&self, agent: &str, spec: &StrategySetSpec) -> Result<PlanState> {
        match spec {
            StrategySetSpec::All => {
                let ctx = self.strategy_context(agent)?;
                PlanState::new(agent, ctx.enumerate(self.strategy_cap)?)
            }
            StrategySetSpec::Listed(list) => PlanState::new(agent, list.clone()),
        }
    }

    /// The full strategy space of an agent.
    pub fn full_space(&self, agent: &str) -> Result<PlanState> {
        self.resolve_set(agent, &StrategySetSpec::All)
    }

    /// The declared repertoire, defaulting to the full space.
    pub fn repertoire(&self, agent: &str) -> Result<PlanState> {
        match self.repertoires.get(agent) {
            Some(spec) => self.resolve_set(agent, spec),
            None => self.full_space(agent),
        }
    }

    /// The declared own plan state of `agent` at a vertex.
    pub fn plan_state_at(&self, agent: &str, v: VertexIx) -> Result<PlanState> {
        self.check_agent(agent)?;
        let spec = self
            .plan_decls
            .get(agent)
            .and_then(|d| d.lookup(v))
            .ok_or_else(|| {
                Error::MissingIntention(format!(
                    "`{agent}` at vertex {}",
                    self.universe.vertex_id(v)
                ))
            })?;
        self.resolve_set(agent, spec)
    }

    /// The declared nested plan state: what `holder` knows about `subject`'s
    /// plans at a vertex.
    pub fn nested_plan_state_at(&self, holder: &str, subject: &str, v: VertexIx) -> Result<PlanState> {
        self.check_agent(holder)?;
        self.check_agent(subject)?;
        let spec = self
            .nested_decls
            .get(holder)
            .and_then(|per| per.get(subject))
            .and_then(|d| d.lookup(v))
            .ok_or_else(|| {
                Error::MissingIntention(format!(
                    "`{holder}` about `{subject}` at vertex {}",
                    self.universe.vertex_id(v)
                ))
            })?;
        self.resolve_set(subject, spec)
    }

    /// The agent's utility table over histories (default all zero).
    pub fn utility_table(&self, agent: &str) -> Result<Vec<f64>> {
        self.check_agent(agent)?;
        Ok(self
            .utilities
            .get(agent)
            .cloned()
            .unwrap_or_else(|| vec![0.0; self.universe.n_histories()]))
    }

    pub fn prior(&self) -> Result<&Prior> {
        self.prior
            .as_ref()
            .ok_or_else(|| Error::Domain("no prior declared in the model".into()))
    }

    pub fn scenario(&self, name: &str) -> Result<&Scenario> {
        self.scenarios
            .iter()
            .find(|s| s.name == name)
            .ok_or_else(|| Error::Domain(format!("unknown scenario `{name}`")))
    }
}

fn resolve_node(raw: &RawNode) -> TreeNode {
    match raw {
        RawNode::Leaf { leaf } => TreeNode::Leaf { state: leaf.clone() },
        RawNode::Choice { owner, id, moves } => TreeNode::Choice {
            owner: owner.clone(),
            id: id.clone(),
            moves: moves
                .iter()
                .map(|(label, child)| (label.clone(), resolve_node(child)))
                .collect(),
        },
    }
}

fn tree_owners(node: &TreeNode) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    fn walk(node: &TreeNode, out: &mut BTreeSet<String>) {
        if let TreeNode::Choice { owner, moves, .. } = node {
            out.insert(owner.clone());
            for (_, child) in moves {
                walk(child, out);
            }
        }
    }
    walk(node, &mut out);
    out
}

/// Parses a vertex address: a trajectory prefix (`s0>s1`, cut implied by
/// length; an explicit `@cut` suffix is accepted and checked) or a history
/// id plus cut (`H3@1`).
pub fn parse_vertex_addr(universe: &Universe, addr: &str) -> Result<VertexIx> {
    let (path, declared_cut) = match addr.rsplit_once('@') {
        Some((path, cut_text)) => {
            let cut: Time = cut_text.parse().map_err(|_| Error::Schema {
                pointer: String::new(),
                message: format!("bad cut in vertex address `{addr}`"),
            })?;
            (path, Some(cut))
        }
        None => (addr, None),
    };
    let parts: Vec<&str> = path.split('>').collect();
    if parts.iter().all(|p| universe.state_by_id(p).is_ok()) {
        let cut = parts.len() - 1;
        if let Some(declared) = declared_cut {
            if declared != cut {
                return Err(Error::Schema {
                    pointer: String::new(),
                    message: format!(
                        "vertex address `{addr}` declares cut {declared} but lists {} states",
                        parts.len()
                    ),
                });
            }
        }
        universe.check_time(cut)?;
        let want: Vec<_> = parts
            .iter()
            .map(|p| universe.state_by_id(p))
            .collect::<Result<_>>()?;
        for h in 0..universe.n_histories() {
            if (0..=cut).all(|t| universe.state_at(HistoryIx(h), t) == want[t]) {
                return universe.vertex_ix(Vertex {
                    history: HistoryIx(h),
                    cut,
                });
            }
        }
        return Err(Error::DanglingReference {
            pointer: String::new(),
            message: format!("no history starts with `{addr}`"),
        });
    }
    match (universe.history_by_id(path), declared_cut) {
        (Ok(history), Some(cut)) => universe.vertex_ix(Vertex { history, cut }),
        _ => Err(Error::DanglingReference {
            pointer: String::new(),
            message: format!("unresolvable vertex address `{addr}`"),
        }),
    }
}

/// Parses `H3` or a full trajectory `s0>s1>s2` into a history.
pub fn parse_history_addr(universe: &Universe, addr: &str) -> Result<HistoryIx> {
    if !addr.contains('>') {
        if let Ok(h) = universe.history_by_id(addr) {
            return Ok(h);
        }
    }
    let parts: Vec<&str> = addr.split('>').collect();
    if parts.len() != universe.t_max() + 1 {
        return Err(Error::UnknownHistory(addr.to_string()));
    }
    let want: Vec<_> = parts
        .iter()
        .map(|p| universe.state_by_id(p))
        .collect::<Result<_>>()?;
    for h in 0..universe.n_histories() {
        if universe.history(HistoryIx(h)).trajectory == want {
            return Ok(HistoryIx(h));
        }
    }
    Err(Error::UnknownHistory(addr.to_string()))
}
