//! Micro-time trees, micro-actions, complete choices, joint-choice
//! resolution, and universe generation.
//!
//! Each macro time step has internal structure: a tree of micro-choice points
//! attached to the current state, each owned by an agent (nature is the
//! reserved agent [`WORLD`]), whose leaves name the possible next states.
//! Interference between simultaneous actions is encoded purely by leaf
//! placement. A state without a tree is absorbing: it self-loops under an
//! implicit null joint choice.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::world::{StateIx, Time, Universe, WorldState};

/// Reserved agent id for nature's moves.
pub const WORLD: &str = "world";

/// One node of a micro-time tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeNode {
    Leaf {
        state: String,
    },
    Choice {
        owner: String,
        /// Choice-point id, unique per (owner, position); the same id may
        /// recur on parallel branches when the owner cannot observe earlier
        /// micro-moves, in which case the label sets must agree.
        id: String,
        moves: Vec<(String, TreeNode)>,
    },
}

/// The micro-time tree attached to one world state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MicroTimeTree {
    pub root: TreeNode,
}

impl MicroTimeTree {
    /// Validates the structural invariants: internal nodes have at least one
    /// outgoing micro-action, no path visits one choice point twice, and
    /// recurring ids carry a consistent owner and label set.
    pub fn validate(&self, state_id: &str) -> Result<BTreeMap<String, (String, Vec<String>)>> {
        let mut points: BTreeMap<String, (String, Vec<String>)> = BTreeMap::new();
        let mut path: Vec<String> = Vec::new();
        self.walk_validate(&self.root, state_id, &mut points, &mut path)?;
        Ok(points)
    }

    fn walk_validate(
        &self,
        node: &TreeNode,
        state_id: &str,
        points: &mut BTreeMap<String, (String, Vec<String>)>,
        path: &mut Vec<String>,
    ) -> Result<()> {
        match node {
            TreeNode::Leaf { .. } => Ok(()),
            TreeNode::Choice { owner, id, moves } => {
                if moves.is_empty() {
                    return Err(Error::Schema {
                        pointer: format!("/trees/{state_id}"),
                        message: format!("choice point `{id}` has no outgoing micro-action"),
                    });
                }
                let mut labels: Vec<String> = moves.iter().map(|(l, _)| l.clone()).collect();
                let mut seen = BTreeSet::new();
                for l in &labels {
                    if !seen.insert(l.clone()) {
                        return Err(Error::Schema {
                            pointer: format!("/trees/{state_id}"),
                            message: format!("duplicate micro-action `{l}` at choice point `{id}`"),
                        });
                    }
                }
                labels.sort();
                if path.contains(id) {
                    return Err(Error::Schema {
                        pointer: format!("/trees/{state_id}"),
                        message: format!("choice point `{id}` revisited along one path"),
                    });
                }
                match points.get(id) {
                    Some((o, ls)) if o != owner || *ls != labels => {
                        return Err(Error::Schema {
                            pointer: format!("/trees/{state_id}"),
                            message: format!(
                                "choice point `{id}` redeclared with a different owner or label set"
                            ),
                        });
                    }
                    _ => {
                        points.insert(id.clone(), (owner.clone(), labels));
                    }
                }
                path.push(id.clone());
                for (_, child) in moves {
                    self.walk_validate(child, state_id, points, path)?;
                }
                path.pop();
                Ok(())
            }
        }
    }

    /// All leaf state ids of the tree.
    pub fn leaf_states(&self) -> BTreeSet<String> {
        fn collect(node: &TreeNode, out: &mut BTreeSet<String>) {
            match node {
                TreeNode::Leaf { state } => {
                    out.insert(state.clone());
                }
                TreeNode::Choice { moves, .. } => {
                    for (_, child) in moves {
                        collect(child, out);
                    }
                }
            }
        }
        let mut out = BTreeSet::new();
        collect(&self.root, &mut out);
        out
    }
}

/// One agent's selection of a micro-action at each of its choice points in a
/// tree: a complete single-agent choice.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CompleteChoice {
    pub agent: String,
    pub selection: BTreeMap<String, String>,
}

/// A complete choice per agent (including nature); resolves to one leaf.
#[derive(Debug, Clone, Default)]
pub struct JointChoice {
    pub choices: BTreeMap<String, CompleteChoice>,
}

impl JointChoice {
    fn pick(&self, owner: &str, id: &str) -> Option<&str> {
        self.choices
            .get(owner)
            .and_then(|c| c.selection.get(id))
            .map(|s| s.as_str())
    }
}

/// A complete choice applied uniformly across the frontier of an information
/// set. The selection maps each of the agent's choice-point ids to a label.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Alternative {
    pub agent: String,
    pub selection: BTreeMap<String, String>,
}

impl Alternative {
    /// The do-nothing alternative of an agent with no choice points.
    pub fn null(agent: &str) -> Self {
        Alternative {
            agent: agent.to_string(),
            selection: BTreeMap::new(),
        }
    }
}

/// Micro-time trees attached per state. Immutable after load.
#[derive(Debug, Clone, Default)]
pub struct ActionSystem {
    trees: Vec<Option<MicroTimeTree>>,
}

impl ActionSystem {
    pub fn new(trees: Vec<Option<MicroTimeTree>>) -> Self {
        ActionSystem { trees }
    }

    pub fn tree(&self, s: StateIx) -> Option<&MicroTimeTree> {
        self.trees.get(s.0).and_then(|t| t.as_ref())
    }

    /// The agent's choice points in the tree at `s`: id -> sorted labels.
    /// Empty both for absorbing states and for agents that do not act there.
    pub fn choice_points(&self, s: StateIx, agent: &str) -> BTreeMap<String, Vec<String>> {
        let mut out = BTreeMap::new();
        if let Some(tree) = self.tree(s) {
            collect_points(&tree.root, agent, &mut out);
        }
        out
    }

    /// Resolves a total joint choice at `s` to the unique leaf state reached
    /// by following each owner's selection.
    pub fn next_state(&self, states: &[WorldState], s: StateIx, j: &JointChoice) -> Result<StateIx> {
        let Some(tree) = self.tree(s) else {
            return Ok(s); // absorbing self-loop under the null joint choice
        };
        let mut node = &tree.root;
        loop {
            match node {
                TreeNode::Leaf { state } => {
                    return lookup_state(states, state);
                }
                TreeNode::Choice { owner, id, moves } => {
                    let label = j
                        .pick(owner, id)
                        .ok_or_else(|| Error::IncompleteChoice(id.clone(), owner.clone()))?;
                    node = moves
                        .iter()
                        .find(|(l, _)| l == label)
                        .map(|(_, child)| child)
                        .ok_or_else(|| Error::IncompleteChoice(id.clone(), owner.clone()))?;
                }
            }
        }
    }

    /// The set of next states reachable from `s` when the agent follows the
    /// given alternative and every other agent (and nature) plays anything.
    pub fn outcomes(
        &self,
        states: &[WorldState],
        agent: &str,
        alt: &Alternative,
        s: StateIx,
    ) -> Result<BTreeSet<StateIx>> {
        let Some(tree) = self.tree(s) else {
            return Ok([s].into());
        };
        let mut out = BTreeSet::new();
        collect_outcomes(&tree.root, states, agent, &alt.selection, &mut out)?;
        Ok(out)
    }

    /// All states reachable from `s` by some joint choice.
    pub fn successors(&self, states: &[WorldState], s: StateIx) -> Result<BTreeSet<StateIx>> {
        self.outcomes(states, "", &Alternative::null(""), s)
    }

    /// Next states reachable from `s` when several agents' selections are
    /// fixed at once and everyone else (including nature) plays anything.
    /// Unlike intersecting per-agent [`ActionSystem::outcomes`] sets, this
    /// respects interference between the fixed choices.
    pub fn joint_outcomes(
        &self,
        states: &[WorldState],
        fixed: &BTreeMap<&str, &BTreeMap<String, String>>,
        s: StateIx,
    ) -> Result<BTreeSet<StateIx>> {
        let Some(tree) = self.tree(s) else {
            return Ok([s].into());
        };
        let mut out = BTreeSet::new();
        collect_joint_outcomes(&tree.root, states, fixed, &mut out)?;
        Ok(out)
    }

    /// Unrolls the trees into the universe of total histories from the
    /// initial states, deduplicated and ordered lexicographically by
    /// trajectory.
    pub fn build_universe(&self, states: Vec<WorldState>, t_max: Time) -> Result<Universe> {
        for (i, tree) in self.trees.iter().enumerate() {
            if let Some(tree) = tree {
                tree.validate(&states[i].id)?;
                for leaf in tree.leaf_states() {
                    if !states.iter().any(|st| st.id == leaf) {
                        return Err(Error::DanglingReference {
                            pointer: format!("/trees/{}", states[i].id),
                            message: format!("leaf names unknown state `{leaf}`"),
                        });
                    }
                }
            }
        }
        let initial: Vec<StateIx> = states
            .iter()
            .enumerate()
            .filter(|(_, s)| s.initial)
            .map(|(i, _)| StateIx(i))
            .collect();
        if initial.is_empty() {
            return Err(Error::Schema {
                pointer: "/states".into(),
                message: "no initial state declared".into(),
            });
        }

        let mut succ: BTreeMap<StateIx, Vec<StateIx>> = BTreeMap::new();
        let mut frontier: Vec<StateIx> = initial.clone();
        while let Some(s) = frontier.pop() {
            if succ.contains_key(&s) {
                continue;
            }
            let next: Vec<StateIx> = self.successors(&states, s)?.into_iter().collect();
            frontier.extend(next.iter().copied());
            succ.insert(s, next);
        }

        let mut trajectories: BTreeSet<Vec<StateIx>> = BTreeSet::new();
        let mut stack: Vec<Vec<StateIx>> = initial.into_iter().map(|s| vec![s]).collect();
        while let Some(prefix) = stack.pop() {
            if prefix.len() == t_max + 1 {
                trajectories.insert(prefix);
                continue;
            }
            let last = *prefix.last().expect("nonempty prefix");
            for &n in &succ[&last] {
                let mut ext = prefix.clone();
                ext.push(n);
                stack.push(ext);
            }
        }
        Universe::from_trajectories(states, t_max, trajectories)
    }
}

fn lookup_state(states: &[WorldState], id: &str) -> Result<StateIx> {
    states
        .iter()
        .position(|s| s.id == id)
        .map(StateIx)
        .ok_or_else(|| Error::UnknownState(id.to_string()))
}

fn collect_points(node: &TreeNode, agent: &str, out: &mut BTreeMap<String, Vec<String>>) {
    if let TreeNode::Choice { owner, id, moves } = node {
        if owner == agent {
            let mut labels: Vec<String> = moves.iter().map(|(l, _)| l.clone()).collect();
            labels.sort();
            out.insert(id.clone(), labels);
        }
        for (_, child) in moves {
            collect_points(child, agent, out);
        }
    }
}

fn collect_joint_outcomes(
    node: &TreeNode,
    states: &[WorldState],
    fixed: &BTreeMap<&str, &BTreeMap<String, String>>,
    out: &mut BTreeSet<StateIx>,
) -> Result<()> {
    match node {
        TreeNode::Leaf { state } => {
            out.insert(lookup_state(states, state)?);
            Ok(())
        }
        TreeNode::Choice { owner, id, moves } => {
            if let Some(selection) = fixed.get(owner.as_str()) {
                let label = selection.get(id).ok_or_else(|| Error::IncompleteChoice(
                    id.clone(),
                    owner.clone(),
                ))?;
                let (_, child) = moves
                    .iter()
                    .find(|(l, _)| l == label)
                    .ok_or_else(|| Error::IncompleteChoice(id.clone(), owner.clone()))?;
                collect_joint_outcomes(child, states, fixed, out)
            } else {
                for (_, child) in moves {
                    collect_joint_outcomes(child, states, fixed, out)?;
                }
                Ok(())
            }
        }
    }
}

fn collect_outcomes(
    node: &TreeNode,
    states: &[WorldState],
    agent: &str,
    selection: &BTreeMap<String, String>,
    out: &mut BTreeSet<StateIx>,
) -> Result<()> {
    match node {
        TreeNode::Leaf { state } => {
            out.insert(lookup_state(states, state)?);
            Ok(())
        }
        TreeNode::Choice { owner, id, moves } => {
            if owner == agent {
                let label = selection.get(id).ok_or_else(|| Error::IncompleteChoice(
                    id.clone(),
                    owner.clone(),
                ))?;
                let (_, child) = moves
                    .iter()
                    .find(|(l, _)| l == label)
                    .ok_or_else(|| Error::IncompleteChoice(id.clone(), owner.clone()))?;
                collect_outcomes(child, states, agent, selection, out)
            } else {
                for (_, child) in moves {
                    collect_outcomes(child, states, agent, selection, out)?;
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn leaf(state: &str) -> TreeNode {
        TreeNode::Leaf { state: state.into() }
    }

    fn choice(owner: &str, id: &str, moves: Vec<(&str, TreeNode)>) -> TreeNode {
        TreeNode::Choice {
            owner: owner.into(),
            id: id.into(),
            moves: moves.into_iter().map(|(l, n)| (l.to_string(), n)).collect(),
        }
    }

    fn state(id: &str, labels: &[&str], initial: bool) -> WorldState {
        WorldState {
            id: id.into(),
            labels: labels.iter().map(|s| s.to_string()).collect(),
            initial,
        }
    }

    /// Simultaneous matching pennies: A and B pick heads or tails inside one
    /// time point; B's choice point recurs on both branches under one id.
    fn pennies() -> (Vec<WorldState>, ActionSystem) {
        let states = vec![
            state("s0", &[], true),
            state("s_hh", &["match"], false),
            state("s_ht", &[], false),
            state("s_th", &[], false),
            state("s_tt", &["match"], false),
        ];
        let tree = MicroTimeTree {
            root: choice(
                "A",
                "a",
                vec![
                    (
                        "h",
                        choice("B", "b", vec![("h", leaf("s_hh")), ("t", leaf("s_ht"))]),
                    ),
                    (
                        "t",
                        choice("B", "b", vec![("h", leaf("s_th")), ("t", leaf("s_tt"))]),
                    ),
                ],
            ),
        };
        let actions = ActionSystem::new(vec![Some(tree), None, None, None, None]);
        (states, actions)
    }

    #[test]
    fn next_state_walks_joint_choices() {
        let (states, actions) = pennies();
        let j = JointChoice {
            choices: [
                (
                    "A".to_string(),
                    CompleteChoice {
                        agent: "A".into(),
                        selection: [("a".to_string(), "h".to_string())].into(),
                    },
                ),
                (
                    "B".to_string(),
                    CompleteChoice {
                        agent: "B".into(),
                        selection: [("b".to_string(), "h".to_string())].into(),
                    },
                ),
            ]
            .into(),
        };
        let next = actions.next_state(&states, StateIx(0), &j).unwrap();
        assert_eq!(states[next.0].id, "s_hh");

        // Missing B selection is an incomplete-choice error.
        let mut partial = j.clone();
        partial.choices.remove("B");
        assert!(matches!(
            actions.next_state(&states, StateIx(0), &partial),
            Err(Error::IncompleteChoice(_, _))
        ));
    }

    #[test]
    fn absorbing_state_self_loops() {
        let (states, actions) = pennies();
        let j = JointChoice::default();
        assert_eq!(actions.next_state(&states, StateIx(1), &j).unwrap(), StateIx(1));
    }

    #[test]
    fn outcomes_branch_over_other_agents() {
        let (states, actions) = pennies();
        let alt = Alternative {
            agent: "A".into(),
            selection: [("a".to_string(), "h".to_string())].into(),
        };
        let outs = actions.outcomes(&states, "A", &alt, StateIx(0)).unwrap();
        let ids: Vec<&str> = outs.iter().map(|s| states[s.0].id.as_str()).collect();
        assert_eq!(ids, vec!["s_hh", "s_ht"]);
    }

    #[test]
    fn nature_only_tree_ignores_agent_alternative() {
        let states = vec![
            state("s0", &[], true),
            state("x", &[], false),
            state("y", &[], false),
            state("z", &[], false),
        ];
        let tree = MicroTimeTree {
            root: choice(
                WORLD,
                "w",
                vec![("a", leaf("x")), ("b", leaf("y")), ("c", leaf("z"))],
            ),
        };
        let actions = ActionSystem::new(vec![Some(tree), None, None, None]);
        let outs = actions
            .outcomes(&states, "A", &Alternative::null("A"), StateIx(0))
            .unwrap();
        assert_eq!(outs.len(), 3);
    }

    #[test]
    fn couch_lift_interference_is_leaf_placement() {
        let states = vec![
            state("s0", &[], true),
            state("s_lifted", &["lifted"], false),
            state("s_unlifted", &[], false),
        ];
        let tree = MicroTimeTree {
            root: choice(
                "A",
                "ray",
                vec![
                    (
                        "lift",
                        choice(
                            "B",
                            "joe",
                            vec![("lift", leaf("s_lifted")), ("null", leaf("s_unlifted"))],
                        ),
                    ),
                    (
                        "null",
                        choice(
                            "B",
                            "joe",
                            vec![("lift", leaf("s_unlifted")), ("null", leaf("s_unlifted"))],
                        ),
                    ),
                ],
            ),
        };
        let actions = ActionSystem::new(vec![Some(tree), None, None]);
        let joint = |a: &str, b: &str| JointChoice {
            choices: [
                (
                    "A".to_string(),
                    CompleteChoice {
                        agent: "A".into(),
                        selection: [("ray".to_string(), a.to_string())].into(),
                    },
                ),
                (
                    "B".to_string(),
                    CompleteChoice {
                        agent: "B".into(),
                        selection: [("joe".to_string(), b.to_string())].into(),
                    },
                ),
            ]
            .into(),
        };
        let lifted = actions.next_state(&states, StateIx(0), &joint("lift", "lift")).unwrap();
        assert_eq!(states[lifted.0].id, "s_lifted");
        let alone = actions.next_state(&states, StateIx(0), &joint("lift", "null")).unwrap();
        assert_eq!(states[alone.0].id, "s_unlifted");
    }

    /// One agent lifting a vase needs both hands at once: two choice points
    /// owned by the same agent inside one tree.
    #[test]
    fn vase_lift_two_choice_points_same_agent() {
        let states = vec![
            state("s0", &[], true),
            state("up", &["vase_up"], false),
            state("down", &[], false),
        ];
        let tree = MicroTimeTree {
            root: choice(
                "dany",
                "left",
                vec![
                    (
                        "lift",
                        choice("dany", "right", vec![("lift", leaf("up")), ("hold", leaf("down"))]),
                    ),
                    (
                        "hold",
                        choice("dany", "right", vec![("lift", leaf("down")), ("hold", leaf("down"))]),
                    ),
                ],
            ),
        };
        let actions = ActionSystem::new(vec![Some(tree), None, None]);
        let both = Alternative {
            agent: "dany".into(),
            selection: [
                ("left".to_string(), "lift".to_string()),
                ("right".to_string(), "lift".to_string()),
            ]
            .into(),
        };
        let outs = actions.outcomes(&states, "dany", &both, StateIx(0)).unwrap();
        assert_eq!(outs, [StateIx(1)].into());
        let one = Alternative {
            agent: "dany".into(),
            selection: [
                ("left".to_string(), "lift".to_string()),
                ("right".to_string(), "hold".to_string()),
            ]
            .into(),
        };
        let outs = actions.outcomes(&states, "dany", &one, StateIx(0)).unwrap();
        assert_eq!(outs, [StateIx(2)].into());
    }

    #[test]
    fn build_universe_counts_unrollings() {
        let (states, actions) = pennies();
        let u = actions.build_universe(states, 1).unwrap();
        assert_eq!(u.n_histories(), 4);

        // Independent count: dynamic programming over (state, t).
        let (states, actions) = pennies();
        let mut per_state: BTreeMap<StateIx, u64> = [(StateIx(0), 1)].into();
        for _ in 0..1 {
            let mut next: BTreeMap<StateIx, u64> = BTreeMap::new();
            for (s, n) in per_state {
                for succ in actions.successors(&states, s).unwrap() {
                    *next.entry(succ).or_insert(0) += n;
                }
            }
            per_state = next;
        }
        assert_eq!(per_state.values().sum::<u64>(), 4);
    }

    #[test]
    fn single_absorbing_state_gives_one_history() {
        let states = vec![state("s0", &[], true)];
        let actions = ActionSystem::new(vec![None]);
        let u = actions.build_universe(states, 3).unwrap();
        assert_eq!(u.n_histories(), 1);
    }

    #[test]
    fn dangling_leaf_is_a_model_error() {
        let states = vec![state("s0", &[], true)];
        let tree = MicroTimeTree {
            root: choice("A", "a", vec![("go", leaf("missing"))]),
        };
        let actions = ActionSystem::new(vec![Some(tree)]);
        assert!(matches!(
            actions.build_universe(states, 1),
            Err(Error::DanglingReference { .. })
        ));
    }

    #[test]
    fn inconsistent_shared_id_is_rejected() {
        let tree = MicroTimeTree {
            root: choice(
                "A",
                "a",
                vec![
                    ("x", choice("B", "b", vec![("h", leaf("s0")), ("t", leaf("s0"))])),
                    ("y", choice("B", "b", vec![("h", leaf("s0"))])),
                ],
            ),
        };
        assert!(tree.validate("s0").is_err());
    }
}
