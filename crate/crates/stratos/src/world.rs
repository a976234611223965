//! Times, world states, histories, vertices, situations, and events.
//!
//! A universe is a finite set of total histories over the discrete time axis
//! `0..=t_max`. A vertex is a history truncated at a cut time; two vertices
//! are the same vertex exactly when their histories agree at every time up to
//! and including the cut, so vertices are prefix classes rather than
//! `(history, time)` pairs. The vertex table built here is the unit of
//! epistemic indistinguishability used by everything downstream.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::histset::HistorySet;

/// Discrete time point on the axis `0..=t_max`.
pub type Time = usize;

/// Index into the state catalogue of a universe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateIx(pub usize);

/// Index into the (sorted) history table of a universe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HistoryIx(pub usize);

/// Index into the canonical vertex table of a universe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexIx(pub usize);

/// A total description of the world at one instant: an id plus the set of
/// atomic propositions true in it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorldState {
    pub id: String,
    pub labels: BTreeSet<String>,
    /// Whether trajectories may start here.
    pub initial: bool,
}

/// A total map from every time point to a world state.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct History {
    pub trajectory: Vec<StateIx>,
}

/// A partial history: a history cut off after `cut`.
///
/// Values may name any member history of the prefix class; equality is
/// prefix equality, decided by [`Universe::vertex_equal`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Vertex {
    pub history: HistoryIx,
    pub cut: Time,
}

/// A partial two-valued description of a single instant. Propositions absent
/// from the assignment are unconstrained.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Situation {
    pub assignment: BTreeMap<String, bool>,
}

/// A partial function from times to situations; the span is the key set.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Event {
    pub content: BTreeMap<Time, Situation>,
}

/// One canonical prefix class in the vertex table.
#[derive(Debug, Clone)]
pub struct VertexData {
    pub cut: Time,
    /// Histories passing through this vertex, ascending. The first member is
    /// the canonical representative.
    pub members: Vec<HistoryIx>,
}

impl VertexData {
    pub fn repr(&self) -> HistoryIx {
        self.members[0]
    }
}

/// The finite set of total histories, with its state catalogue and canonical
/// vertex table. Immutable once built.
#[derive(Debug, Clone)]
pub struct Universe {
    states: Vec<WorldState>,
    state_by_id: BTreeMap<String, StateIx>,
    t_max: Time,
    histories: Vec<History>,
    vertices: Vec<VertexData>,
    vertex_at: Vec<Vec<VertexIx>>,
    alphabet: BTreeSet<String>,
}

impl Universe {
    /// Assembles a universe from an explicit state catalogue and a set of
    /// trajectories. Trajectories are deduplicated and ordered
    /// lexicographically by their state-index sequences, and the vertex table
    /// is built under prefix equality.
    pub fn from_trajectories(
        states: Vec<WorldState>,
        t_max: Time,
        trajectories: BTreeSet<Vec<StateIx>>,
    ) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::Schema {
                pointer: "/states".into(),
                message: "state catalogue is empty".into(),
            });
        }
        let mut state_by_id = BTreeMap::new();
        for (i, s) in states.iter().enumerate() {
            if state_by_id.insert(s.id.clone(), StateIx(i)).is_some() {
                return Err(Error::Schema {
                    pointer: format!("/states/{i}/id"),
                    message: format!("duplicate state id `{}`", s.id),
                });
            }
        }
        if trajectories.is_empty() {
            return Err(Error::Domain("universe has no histories".into()));
        }
        for tr in &trajectories {
            debug_assert_eq!(tr.len(), t_max + 1);
        }
        let histories: Vec<History> = trajectories
            .into_iter()
            .map(|trajectory| History { trajectory })
            .collect();
        let alphabet = states.iter().flat_map(|s| s.labels.iter().cloned()).collect();

        let mut u = Universe {
            states,
            state_by_id,
            t_max,
            histories,
            vertices: Vec::new(),
            vertex_at: Vec::new(),
            alphabet,
        };
        u.build_vertex_table();
        Ok(u)
    }

    /// Groups `(history, t)` pairs into prefix classes, time by time.
    fn build_vertex_table(&mut self) {
        let n = self.histories.len();
        self.vertex_at = vec![vec![VertexIx(0); self.t_max + 1]; n];
        for t in 0..=self.t_max {
            let mut classes: BTreeMap<&[StateIx], Vec<usize>> = BTreeMap::new();
            for (h, hist) in self.histories.iter().enumerate() {
                classes.entry(&hist.trajectory[..=t]).or_default().push(h);
            }
            for (_, members) in classes {
                let ix = VertexIx(self.vertices.len());
                for &h in &members {
                    self.vertex_at[h][t] = ix;
                }
                self.vertices.push(VertexData {
                    cut: t,
                    members: members.into_iter().map(HistoryIx).collect(),
                });
            }
        }
    }

    pub fn t_max(&self) -> Time {
        self.t_max
    }

    pub fn times(&self) -> impl Iterator<Item = Time> {
        0..=self.t_max
    }

    pub fn states(&self) -> &[WorldState] {
        &self.states
    }

    pub fn state(&self, ix: StateIx) -> &WorldState {
        &self.states[ix.0]
    }

    pub fn state_by_id(&self, id: &str) -> Result<StateIx> {
        self.state_by_id
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownState(id.to_string()))
    }

    pub fn histories(&self) -> &[History] {
        &self.histories
    }

    pub fn n_histories(&self) -> usize {
        self.histories.len()
    }

    pub fn history(&self, h: HistoryIx) -> &History {
        &self.histories[h.0]
    }

    /// Stable printable id of a history ("H0", "H1", ... in trajectory order).
    pub fn history_id(&self, h: HistoryIx) -> String {
        format!("H{}", h.0)
    }

    pub fn history_by_id(&self, id: &str) -> Result<HistoryIx> {
        let n: usize = id
            .strip_prefix('H')
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::UnknownHistory(id.to_string()))?;
        if n >= self.histories.len() {
            return Err(Error::UnknownHistory(id.to_string()));
        }
        Ok(HistoryIx(n))
    }

    /// The trajectory rendered as `s0>s1>s2`.
    pub fn trajectory_id(&self, h: HistoryIx) -> String {
        self.histories[h.0]
            .trajectory
            .iter()
            .map(|s| self.states[s.0].id.as_str())
            .collect::<Vec<_>>()
            .join(">")
    }

    pub fn state_at(&self, h: HistoryIx, t: Time) -> StateIx {
        self.histories[h.0].trajectory[t]
    }

    pub fn check_time(&self, t: Time) -> Result<()> {
        if t > self.t_max {
            return Err(Error::TimeOutOfRange(t, self.t_max));
        }
        Ok(())
    }

    pub fn check_history(&self, h: HistoryIx) -> Result<()> {
        if h.0 >= self.histories.len() {
            return Err(Error::UnknownHistory(format!("H{}", h.0)));
        }
        Ok(())
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_data(&self, v: VertexIx) -> &VertexData {
        &self.vertices[v.0]
    }

    pub fn vertex_ixs(&self) -> impl Iterator<Item = VertexIx> {
        (0..self.vertices.len()).map(VertexIx)
    }

    /// Canonical prefix class of a `(history, cut)` pair.
    pub fn vertex_ix(&self, v: Vertex) -> Result<VertexIx> {
        self.check_history(v.history)?;
        self.check_time(v.cut)?;
        Ok(self.vertex_at[v.history.0][v.cut])
    }

    /// Printable vertex id: the shared trajectory prefix plus the cut, e.g.
    /// `s0>s1@1`.
    pub fn vertex_id(&self, v: VertexIx) -> String {
        let data = &self.vertices[v.0];
        let repr = data.repr();
        let prefix = self.histories[repr.0].trajectory[..=data.cut]
            .iter()
            .map(|s| self.states[s.0].id.as_str())
            .collect::<Vec<_>>()
            .join(">");
        format!("{prefix}@{}", data.cut)
    }

    /// Prefix equality of partial histories: equal cuts and trajectories that
    /// agree at all times up to the cut.
    pub fn vertex_equal(&self, a: Vertex, b: Vertex) -> Result<bool> {
        Ok(self.vertex_ix(a)? == self.vertex_ix(b)?)
    }

    /// Whether `h` and `k` agree at every time up to and including `t`.
    pub fn backwards_identical(&self, h: HistoryIx, k: HistoryIx, t: Time) -> Result<bool> {
        self.check_history(h)?;
        self.check_history(k)?;
        self.check_time(t)?;
        Ok(self.vertex_at[h.0][t] == self.vertex_at[k.0][t])
    }

    /// The histories extending the vertex at `(h, t)`, as a set.
    pub fn futures_of(&self, h: HistoryIx, t: Time) -> Result<HistorySet> {
        let v = self.vertex_ix(Vertex { history: h, cut: t })?;
        let mut set = HistorySet::empty(self.histories.len());
        for &m in &self.vertices[v.0].members {
            set.insert(m);
        }
        Ok(set)
    }

    pub fn full_set(&self) -> HistorySet {
        HistorySet::full(self.histories.len())
    }

    pub fn alphabet(&self) -> &BTreeSet<String> {
        &self.alphabet
    }

    pub fn check_proposition(&self, p: &str) -> Result<()> {
        if !self.alphabet.contains(p) {
            return Err(Error::UnknownProposition(p.to_string()));
        }
        Ok(())
    }

    /// Whether proposition `p` labels the state of `h` at `t`.
    pub fn holds_at(&self, p: &str, h: HistoryIx, t: Time) -> bool {
        self.states[self.state_at(h, t).0].labels.contains(p)
    }

    /// Whether the history realizes the event: at every time in the span the
    /// situation's assignment agrees with the state labels there.
    pub fn realizes(&self, e: &Event, h: HistoryIx) -> Result<bool> {
        self.check_history(h)?;
        for (&t, situation) in &e.content {
            self.check_time(t)?;
            let labels = &self.states[self.state_at(h, t).0].labels;
            for (p, &want) in &situation.assignment {
                self.check_proposition(p)?;
                if labels.contains(p) != want {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}
