//! Seeded random desk-scale models for property suites.
//!
//! The sampler builds a raw model document and runs it through the ordinary
//! loader, so sampled models exercise exactly the code path files do. Every
//! model is a function of its seed alone.

use std::collections::BTreeMap;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::model::{
    Document, Model, RawCell, RawEnsemble, RawNode, RawPrior, RawState, RawStrategy,
    RawStrategySet, RawTimes,
};
use crate::world::HistoryIx;

/// Bounds for sampled models.
#[derive(Debug, Clone)]
pub struct SamplerConfig {
    pub max_states: usize,
    pub max_t: usize,
    pub agents: Vec<String>,
    pub props: Vec<String>,
    /// Allow nature to own choice points.
    pub with_nature: bool,
    /// Keep strategy spaces small enough for exhaustive operator searches.
    pub small_strategy_spaces: bool,
    /// Attach a uniform-or-random prior and random utilities.
    pub with_prior_and_utilities: bool,
}

impl SamplerConfig {
    /// Corpus for axiom and relation theorems: richer trees, no strategy
    /// machinery needed.
    pub fn axioms() -> Self {
        SamplerConfig {
            max_states: 4,
            max_t: 3,
            agents: vec!["A".into(), "B".into()],
            props: vec!["p".into(), "q".into()],
            with_nature: true,
            small_strategy_spaces: false,
            with_prior_and_utilities: false,
        }
    }

    /// Corpus for operator-lattice properties: bounded so full strategy
    /// spaces stay enumerable.
    pub fn abilities() -> Self {
        SamplerConfig {
            max_states: 3,
            max_t: 2,
            agents: vec!["A".into(), "B".into()],
            props: vec!["p".into(), "q".into()],
            with_nature: true,
            small_strategy_spaces: true,
            with_prior_and_utilities: true,
        }
    }
}

/// Deterministically samples one valid model from a seed.
pub fn sample_model(seed: u64, cfg: &SamplerConfig) -> Model {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let doc = sample_document(&mut rng, cfg);
    Model::resolve(doc).expect("sampled documents are valid by construction")
}

fn sample_document(rng: &mut ChaCha8Rng, cfg: &SamplerConfig) -> Document {
    let n_states = rng.gen_range(2..=cfg.max_states);
    let t_max = rng.gen_range(1..=cfg.max_t);
    let state_ids: Vec<String> = (0..n_states).map(|i| format!("s{i}")).collect();

    let states: Vec<RawState> = state_ids
        .iter()
        .enumerate()
        .map(|(i, id)| RawState {
            id: id.clone(),
            labels: cfg
                .props
                .iter()
                .filter(|_| rng.gen_bool(0.5))
                .cloned()
                .collect(),
            initial: i == 0,
        })
        .collect();

    let mut trees = BTreeMap::new();
    for id in &state_ids {
        if rng.gen_bool(0.25) {
            continue; // absorbing
        }
        trees.insert(id.clone(), sample_tree(rng, cfg, &state_ids));
    }

    // Build once to learn the vertex structure, then attach ensembles.
    let skeleton = Document {
        schema_version: "1".into(),
        times: RawTimes { t_max },
        agents: cfg.agents.clone(),
        states: states.clone(),
        trees: trees.clone(),
        ensembles: cfg
            .agents
            .iter()
            .map(|a| (a.clone(), RawEnsemble::Generator("perfect".into())))
            .collect(),
        repertoires: BTreeMap::new(),
        plan_states: BTreeMap::new(),
        nested_plan_states: BTreeMap::new(),
        prior: None,
        utilities: BTreeMap::new(),
        pragmatics_profiles: BTreeMap::new(),
        scenarios: Vec::new(),
    };
    let base = Model::resolve(skeleton.clone()).expect("skeleton is valid");

    let mut ensembles = BTreeMap::new();
    for agent in &cfg.agents {
        ensembles.insert(
            agent.clone(),
            sample_ensemble(rng, &base, cfg.small_strategy_spaces),
        );
    }

    let mut doc = skeleton;
    doc.ensembles = ensembles;

    if cfg.with_prior_and_utilities {
        let n = base.universe.n_histories();
        doc.prior = Some(if rng.gen_bool(0.5) {
            RawPrior {
                uniform: true,
                weights: BTreeMap::new(),
            }
        } else {
            let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
            let total: f64 = raw.iter().sum();
            RawPrior {
                uniform: false,
                weights: (0..n)
                    .map(|h| {
                        (
                            base.universe.trajectory_id(HistoryIx(h)),
                            raw[h] / total,
                        )
                    })
                    .collect(),
            }
        });
        let mut utilities = BTreeMap::new();
        for agent in &cfg.agents {
            let table: BTreeMap<String, f64> = (0..n)
                .map(|h| {
                    (
                        base.universe.trajectory_id(HistoryIx(h)),
                        rng.gen_range(-3i32..=3) as f64,
                    )
                })
                .collect();
            utilities.insert(agent.clone(), table);
        }
        doc.utilities = utilities;
    }

    // Repertoires and plan states need the final ensembles, so resolve the
    // document again and enumerate against it.
    let with_info = Model::resolve(doc.clone()).expect("ensemble sampling preserves validity");
    if cfg.small_strategy_spaces {
        let mut repertoires = BTreeMap::new();
        let mut plan_states = BTreeMap::new();
        let mut nested: BTreeMap<String, BTreeMap<String, BTreeMap<String, RawStrategySet>>> =
            BTreeMap::new();
        for agent in &cfg.agents {
            let space = with_info
                .full_space(agent)
                .expect("sampled spaces stay under the cap");
            let all: Vec<RawStrategy> = space
                .strategies()
                .iter()
                .map(|s| to_raw_strategy(&with_info, s))
                .collect();

            let delta: Vec<RawStrategy> = pick_nonempty(rng, &all);
            // Half the time the plan state sits inside the repertoire, so
            // plans-implies-can has bite.
            let plan: Vec<RawStrategy> = if rng.gen_bool(0.5) {
                pick_nonempty(rng, &delta)
            } else {
                pick_nonempty(rng, &all)
            };
            repertoires.insert(agent.clone(), RawStrategySet::Listed(delta));
            plan_states.insert(
                agent.clone(),
                [("default".to_string(), RawStrategySet::Listed(plan))].into(),
            );
            let mut about = BTreeMap::new();
            for other in cfg.agents.iter().filter(|a| *a != agent) {
                let other_space = with_info.full_space(other).expect("under cap");
                let other_all: Vec<RawStrategy> = other_space
                    .strategies()
                    .iter()
                    .map(|s| to_raw_strategy(&with_info, s))
                    .collect();
                about.insert(
                    other.clone(),
                    [(
                        "default".to_string(),
                        RawStrategySet::Listed(pick_nonempty(rng, &other_all)),
                    )]
                    .into(),
                );
            }
            nested.insert(agent.clone(), about);
        }
        doc.repertoires = repertoires;
        doc.plan_states = plan_states;
        doc.nested_plan_states = nested;
    }

    doc
}

fn pick_nonempty(rng: &mut ChaCha8Rng, from: &[RawStrategy]) -> Vec<RawStrategy> {
    let mut out: Vec<RawStrategy> = from
        .iter()
        .filter(|_| rng.gen_bool(0.6))
        .cloned()
        .collect();
    if out.is_empty() {
        out.push(from[rng.gen_range(0..from.len())].clone());
    }
    out
}

fn to_raw_strategy(model: &Model, s: &crate::strategy::PureStrategy) -> RawStrategy {
    let ensemble = &model.ensembles[&s.agent];
    RawStrategy {
        name: None,
        assign: s
            .assignment
            .iter()
            .map(|(cell, alt)| {
                (
                    ensemble.cell(*cell).name.clone(),
                    alt.selection.clone(),
                )
            })
            .collect(),
    }
}

fn sample_tree(rng: &mut ChaCha8Rng, cfg: &SamplerConfig, state_ids: &[String]) -> RawNode {
    let mut owners: Vec<String> = Vec::new();
    if cfg.with_nature && rng.gen_bool(0.3) {
        owners.push(crate::action::WORLD.to_string());
    }
    for agent in &cfg.agents {
        if rng.gen_bool(if cfg.small_strategy_spaces { 0.5 } else { 0.6 }) {
            owners.push(agent.clone());
        }
    }
    if owners.is_empty() {
        owners.push(cfg.agents[rng.gen_range(0..cfg.agents.len())].clone());
    }
    build_layers(rng, &owners, 0, state_ids)
}

fn build_layers(
    rng: &mut ChaCha8Rng,
    owners: &[String],
    depth: usize,
    state_ids: &[String],
) -> RawNode {
    if depth == owners.len() {
        return RawNode::Leaf {
            leaf: state_ids[rng.gen_range(0..state_ids.len())].clone(),
        };
    }
    let labels = ["a", "b"];
    let moves: BTreeMap<String, RawNode> = labels
        .iter()
        .map(|l| {
            (
                l.to_string(),
                build_layers(rng, owners, depth + 1, state_ids),
            )
        })
        .collect();
    RawNode::Choice {
        owner: owners[depth].clone(),
        id: format!("cp_{}", owners[depth]),
        moves,
    }
}

/// Coarsens the perfect ensemble by merging same-time cells. Early merges
/// keep information nondiminishing; late merges re-open settled
/// distinctions and typically break it. With `uniform_by_state` the merge
/// groups are same-(time, frontier state) classes, which keeps the
/// choice-point structure of every merged cell uniform for every agent.
fn sample_ensemble(rng: &mut ChaCha8Rng, base: &Model, uniform_by_state: bool) -> RawEnsemble {
    let mode = rng.gen_range(0..4u8);
    if mode == 0 {
        return RawEnsemble::Generator("perfect".into());
    }
    let u = &base.universe;
    // Candidate merge groups, keyed by time (and frontier state when
    // structural uniformity is required).
    let mut groups: BTreeMap<(usize, Option<usize>), Vec<String>> = BTreeMap::new();
    for v in u.vertex_ixs() {
        let data = u.vertex_data(v);
        let state_key = if uniform_by_state {
            Some(u.state_at(data.repr(), data.cut).0)
        } else {
            None
        };
        groups
            .entry((data.cut, state_key))
            .or_default()
            .push(u.vertex_id(v));
    }
    let mut cells: Vec<Vec<String>> = Vec::new();
    for ((t, _), vertices) in groups {
        let merge_here = match mode {
            1 => t <= u.t_max() / 2,           // early merges: no forgetting
            2 => t > u.t_max() / 2,            // late merges: forgetting
            _ => rng.gen_bool(0.5),            // arbitrary same-time merges
        };
        if merge_here && vertices.len() > 1 {
            // Split the group into one or two cells.
            let split_at = if vertices.len() > 2 && rng.gen_bool(0.5) {
                rng.gen_range(1..vertices.len())
            } else {
                vertices.len()
            };
            cells.push(vertices[..split_at].to_vec());
            if split_at < vertices.len() {
                cells.push(vertices[split_at..].to_vec());
            }
        } else {
            for v in vertices {
                cells.push(vec![v.clone()]);
            }
        }
    }
    RawEnsemble::Cells(
        cells
            .into_iter()
            .map(|members| RawCell {
                name: None,
                members,
            })
            .collect(),
    )
}
