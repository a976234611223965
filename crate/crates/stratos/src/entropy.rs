//! State, control, conditional-control, and strategic entropies.
//!
//! All entropies are Shannon entropies in bits (log base 2) with the
//! `0 log 0 = 0` convention. Without declared probabilities the uniform
//! distribution over the support is used, so the entropy reduces to the log
//! of the support size.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::info::InfoSet;
use crate::model::{Model, Prior};
use crate::strategy::{PlanState, PureStrategy};
use crate::world::VertexIx;

const TOL: f64 = 1e-9;

/// Shannon entropy in bits of a probability vector. The weights must be
/// nonnegative and sum to one within tolerance.
pub fn shannon_bits(weights: &[f64]) -> Result<f64> {
    if weights.iter().any(|w| *w < 0.0 || !w.is_finite()) {
        return Err(Error::Domain(
            "distribution weights must be finite and nonnegative".into(),
        ));
    }
    let sum: f64 = weights.iter().sum();
    if (sum - 1.0).abs() > TOL {
        return Err(Error::Domain(format!(
            "distribution weights sum to {sum}, expected 1 within 1e-9"
        )));
    }
    let bits: f64 = weights
        .iter()
        .map(|&p| if p > 0.0 { -p * p.log2() } else { 0.0 })
        .sum();
    // Normalize the IEEE negative zero a degenerate distribution produces.
    Ok(if bits == 0.0 { 0.0 } else { bits })
}

fn uniform(n: usize) -> Vec<f64> {
    vec![1.0 / n as f64; n]
}

/// Entropy of an information set under the given weights (uniform when
/// absent). The support must be exactly the members of the set.
pub fn state_entropy(
    info: &InfoSet,
    weights: Option<&BTreeMap<VertexIx, f64>>,
) -> Result<f64> {
    match weights {
        None => shannon_bits(&uniform(info.members.len())),
        Some(map) => {
            if map.len() != info.members.len()
                || !info.members.iter().all(|v| map.contains_key(v))
            {
                return Err(Error::Domain(
                    "state-entropy support does not match the information set".into(),
                ));
            }
            let w: Vec<f64> = info.members.iter().map(|v| map[v]).collect();
            shannon_bits(&w)
        }
    }
}

/// Entropy of a plan state: the uncertainty about which strategy guides the
/// agent. Weights parallel the plan state's strategy order; uniform when
/// absent.
pub fn control_entropy(plan: &PlanState, weights: Option<&[f64]>) -> Result<f64> {
    match weights {
        None => shannon_bits(&uniform(plan.len())),
        Some(w) => {
            if w.len() != plan.len() {
                return Err(Error::Domain(
                    "control-entropy support does not match the plan state".into(),
                ));
            }
            shannon_bits(w)
        }
    }
}

/// A joint distribution over strategy pairs, row-major: `rows` strategies of
/// the conditioning agent, `cols` of the conditioned one.
#[derive(Debug, Clone)]
pub struct JointDistribution {
    pub rows: usize,
    pub cols: usize,
    pub weights: Vec<f64>,
}

impl JointDistribution {
    pub fn new(rows: usize, cols: usize, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != rows * cols {
            return Err(Error::Domain(format!(
                "joint distribution needs {rows}x{cols} weights, got {}",
                weights.len()
            )));
        }
        let j = JointDistribution { rows, cols, weights };
        shannon_bits(&j.weights)?; // validates nonnegativity and total mass
        Ok(j)
    }

    pub fn row_marginal(&self, row: usize) -> f64 {
        self.weights[row * self.cols..(row + 1) * self.cols]
            .iter()
            .sum()
    }

    pub fn col_marginals(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.cols];
        for row in 0..self.rows {
            for (col, total) in out.iter_mut().enumerate() {
                *total += self.weights[row * self.cols + col];
            }
        }
        out
    }

    /// Entropy of the column variable alone.
    pub fn marginal_entropy(&self) -> Result<f64> {
        shannon_bits(&self.col_marginals())
    }
}

/// Average remaining uncertainty about the second agent's plan given the
/// first agent's: the marginal-weighted entropy of the conditional rows.
/// Rows with zero marginal mass contribute nothing.
pub fn conditional_control_entropy(
    plan_a: &PlanState,
    plan_b: &PlanState,
    joint: &JointDistribution,
) -> Result<f64> {
    if joint.rows != plan_a.len() || joint.cols != plan_b.len() {
        return Err(Error::Domain(format!(
            "joint distribution is {}x{}, plan states are {}x{}",
            joint.rows,
            joint.cols,
            plan_a.len(),
            plan_b.len()
        )));
    }
    let mut total = 0.0;
    for row in 0..joint.rows {
        let mass = joint.row_marginal(row);
        if mass <= 0.0 {
            continue;
        }
        let conditional: Vec<f64> = joint.weights[row * joint.cols..(row + 1) * joint.cols]
            .iter()
            .map(|w| w / mass)
            .collect();
        total += mass * shannon_bits(&conditional)?;
    }
    Ok(total)
}

/// Entropy of a strategy due to multi-agent side effects: the entropy of
/// the prior renormalized over the strategy's potential.
pub fn strategic_entropy(model: &Model, strategy: &PureStrategy, prior: &Prior) -> Result<f64> {
    let ctx = model.strategy_context(&strategy.agent)?;
    let potential = ctx.potential(strategy)?;
    let mass = prior.mass(&potential);
    if mass <= 0.0 {
        return Err(Error::UndefinedConditional(format!(
            "the potential of strategy `{strategy}`"
        )));
    }
    let weights: Vec<f64> = potential.iter().map(|h| prior.weights[h.0] / mass).collect();
    shannon_bits(&weights)
}
