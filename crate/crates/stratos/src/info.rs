//! Information sets, information ensembles, their property classifications,
//! and the dynamic accessibility relation they generate.
//!
//! An information set collects the vertices an agent cannot tell apart; an
//! ensemble is the agent's complete partition of all vertices. The relation
//! slice at `t` relates `H` to every history the agent still considers
//! possible at `(H, t)`, and its dynamic properties (backwards consistency
//! and backwards identity) mirror the nondiminishing-information and
//! perfect-information conditions on ensembles.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::histset::HistorySet;
use crate::world::{HistoryIx, Time, Universe, VertexIx};

/// A nonempty set of vertices an agent cannot distinguish.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfoSet {
    pub name: String,
    pub members: BTreeSet<VertexIx>,
}

impl InfoSet {
    pub fn new(name: impl Into<String>, members: BTreeSet<VertexIx>) -> Self {
        InfoSet {
            name: name.into(),
            members,
        }
    }
}

/// The histories intersected by an information set.
pub fn i_star(universe: &Universe, info: &InfoSet) -> HistorySet {
    let mut set = HistorySet::empty(universe.n_histories());
    for &v in &info.members {
        for &h in &universe.vertex_data(v).members {
            set.insert(h);
        }
    }
    set
}

/// Whether all member cuts are equal (perfect temporal information). A set
/// that is not straight is slanted.
pub fn is_straight(universe: &Universe, info: &InfoSet) -> bool {
    let mut cuts = info.members.iter().map(|&v| universe.vertex_data(v).cut);
    match cuts.next() {
        None => true,
        Some(first) => cuts.all(|c| c == first),
    }
}

/// Whether no history passes through the set at two distinct cuts. This is
/// an enforced invariant of every validated information set; the check is
/// kept as an integrity query.
pub fn is_thin(universe: &Universe, info: &InfoSet) -> bool {
    let mut seen: BTreeMap<HistoryIx, Time> = BTreeMap::new();
    for &v in &info.members {
        let data = universe.vertex_data(v);
        for &h in &data.members {
            if let Some(&prev) = seen.get(&h) {
                if prev != data.cut {
                    return false;
                }
            } else {
                seen.insert(h, data.cut);
            }
        }
    }
    true
}

/// One agent's complete partition of the vertices into information sets.
#[derive(Debug, Clone)]
pub struct Ensemble {
    pub agent: String,
    cells: Vec<InfoSet>,
    cell_by_vertex: Vec<usize>,
    cell_star: Vec<HistorySet>,
}

impl Ensemble {
    /// Validates the partition conditions: every cell nonempty and thin,
    /// cells pairwise disjoint, and every vertex covered.
    pub fn new(universe: &Universe, agent: impl Into<String>, cells: Vec<InfoSet>) -> Result<Self> {
        let agent = agent.into();
        let mut cell_by_vertex = vec![usize::MAX; universe.n_vertices()];
        for (i, cell) in cells.iter().enumerate() {
            if cell.members.is_empty() {
                return Err(Error::PartitionViolation {
                    agent,
                    message: format!("cell `{}` is empty", cell.name),
                });
            }
            if !is_thin(universe, cell) {
                return Err(Error::NotThin(
                    cell.name.clone(),
                    "a history passes through the cell at two distinct cuts".into(),
                ));
            }
            for &v in &cell.members {
                if v.0 >= cell_by_vertex.len() {
                    return Err(Error::VertexOutOfRange(v.0));
                }
                if cell_by_vertex[v.0] != usize::MAX {
                    return Err(Error::PartitionViolation {
                        agent,
                        message: format!(
                            "vertex {} belongs to both `{}` and `{}`",
                            universe.vertex_id(v),
                            cells[cell_by_vertex[v.0]].name,
                            cell.name
                        ),
                    });
                }
                cell_by_vertex[v.0] = i;
            }
        }
        if let Some(missing) = cell_by_vertex.iter().position(|&c| c == usize::MAX) {
            return Err(Error::PartitionViolation {
                agent,
                message: format!(
                    "vertex {} belongs to no cell",
                    universe.vertex_id(VertexIx(missing))
                ),
            });
        }
        let cell_star = cells.iter().map(|c| i_star(universe, c)).collect();
        Ok(Ensemble {
            agent,
            cells,
            cell_by_vertex,
            cell_star,
        })
    }

    /// The perfect-information ensemble: one unit cell per vertex, named by
    /// the vertex id.
    pub fn perfect(universe: &Universe, agent: impl Into<String>) -> Self {
        let cells = universe
            .vertex_ixs()
            .map(|v| InfoSet::new(universe.vertex_id(v), [v].into()))
            .collect();
        Self::new(universe, agent, cells).expect("unit cells always partition")
    }

    pub fn cells(&self) -> &[InfoSet] {
        &self.cells
    }

    pub fn cell(&self, ix: usize) -> &InfoSet {
        &self.cells[ix]
    }

    pub fn cell_by_name(&self, name: &str) -> Option<usize> {
        self.cells.iter().position(|c| c.name == name)
    }

    /// The unique cell containing the vertex.
    pub fn cell_ix_of(&self, v: VertexIx) -> usize {
        self.cell_by_vertex[v.0]
    }

    pub fn cell_of(&self, v: VertexIx) -> &InfoSet {
        &self.cells[self.cell_by_vertex[v.0]]
    }

    /// Cached `I(cell)*`.
    pub fn cell_star(&self, cell_ix: usize) -> &HistorySet {
        &self.cell_star[cell_ix]
    }

    /// `I(H^t)*`: the histories the agent considers possible at `(h, t)`.
    pub fn slice(&self, universe: &Universe, h: HistoryIx, t: Time) -> Result<&HistorySet> {
        let v = universe.vertex_ix(crate::world::Vertex { history: h, cut: t })?;
        Ok(&self.cell_star[self.cell_by_vertex[v.0]])
    }
}

/// Whether the agent never loses information: for `t <= t'`,
/// `I(H^t')* ⊆ I(H^t)*` for every history.
pub fn has_ndi(universe: &Universe, ensemble: &Ensemble) -> bool {
    for h in 0..universe.n_histories() {
        let h = HistoryIx(h);
        for t in universe.times() {
            for t_later in t..=universe.t_max() {
                let earlier = ensemble.slice(universe, h, t).expect("valid point");
                let later = ensemble.slice(universe, h, t_later).expect("valid point");
                if !later.is_subset(earlier) {
                    return false;
                }
            }
        }
    }
    true
}

/// Whether every cell is a unit set under vertex (prefix) equality.
pub fn has_perfect_info(ensemble: &Ensemble) -> bool {
    ensemble.cells.iter().all(|c| c.members.len() == 1)
}

/// The information relation at one time: `H` relates to `K` iff `K` is in
/// `I(H^t)*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationSlice {
    pub time: Time,
    pub pairs: BTreeSet<(HistoryIx, HistoryIx)>,
}

/// Computes the relation slice at `t` exactly from the definition.
pub fn info_relation(universe: &Universe, ensemble: &Ensemble, t: Time) -> Result<RelationSlice> {
    universe.check_time(t)?;
    let mut pairs = BTreeSet::new();
    for h in 0..universe.n_histories() {
        let h = HistoryIx(h);
        let star = ensemble.slice(universe, h, t)?;
        for k in star.iter() {
            pairs.insert((h, k));
        }
    }
    Ok(RelationSlice { time: t, pairs })
}

/// One row of the relation at `(h, t)`, rebuilt from the vertex table
/// rather than the ensemble's cached star sets, so the relation property
/// checkers stay an independent route from [`has_ndi`] and
/// [`has_perfect_info`].
fn relation_row(universe: &Universe, ensemble: &Ensemble, h: HistoryIx, t: Time) -> HistorySet {
    let v = universe
        .vertex_ix(crate::world::Vertex { history: h, cut: t })
        .expect("valid point");
    let mut row = HistorySet::empty(universe.n_histories());
    for &member in &ensemble.cell_of(v).members {
        for &k in &universe.vertex_data(member).members {
            row.insert(k);
        }
    }
    row
}

/// Whether the generated relation never grows: for `t <= t'`, every pair
/// related at `t'` is related at `t`. Checked row by row on per-history
/// possibility sets rather than on materialized pair sets.
pub fn relation_backwards_consistent(universe: &Universe, ensemble: &Ensemble) -> bool {
    for h in 0..universe.n_histories() {
        let h = HistoryIx(h);
        let rows: Vec<HistorySet> = universe
            .times()
            .map(|t| relation_row(universe, ensemble, h, t))
            .collect();
        for t in universe.times() {
            for t_later in t..=universe.t_max() {
                if !rows[t_later].is_subset(&rows[t]) {
                    return false;
                }
            }
        }
    }
    true
}

/// Whether the generated relation relates exactly the histories that agree
/// up to each time: at every point, the possibility row equals the futures
/// of the vertex there.
pub fn relation_backwards_identical(universe: &Universe, ensemble: &Ensemble) -> bool {
    for h in 0..universe.n_histories() {
        let h = HistoryIx(h);
        for t in universe.times() {
            let row = relation_row(universe, ensemble, h, t);
            let futures = universe.futures_of(h, t).expect("valid point");
            if row != futures {
                return false;
            }
        }
    }
    true
}
