//! The temporal-modal formula language and its evaluation.
//!
//! Atoms are read off state labels: `p` holds at `(H, t)` iff `p` labels
//! `H_t`, and the timed atom `p@t'` holds anywhere iff `p` labels `H_t'`.
//! `P` and `F` are strict past and future existentials. The tensed necessity
//! `[](A)` quantifies over the agent's information relation at the
//! evaluation time; the indexed form `[](A,t)` ignores the evaluation time
//! and uses the slice at `t`. `<>(A)` is the dual of `[](A)`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::histset::HistorySet;
use crate::info::Ensemble;
use crate::world::{HistoryIx, Time, Universe};

/// AST of the query language.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    True,
    False,
    Atom(String),
    AtomAt(String, Time),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    /// It was the case that (strict past).
    Past(Box<Formula>),
    /// It will be the case that (strict future).
    Future(Box<Formula>),
    /// Tensed agent-indexed necessity.
    Nec(String, Box<Formula>),
    /// Tensed agent-indexed possibility (dual of `Nec`).
    Pos(String, Box<Formula>),
    /// Agent- and time-indexed necessity.
    NecAt(String, Time, Box<Formula>),
    /// Agent- and time-indexed possibility (dual of `NecAt`).
    PosAt(String, Time, Box<Formula>),
}

impl Formula {
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }
    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }
    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }
    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }
    pub fn past(f: Formula) -> Formula {
        Formula::Past(Box::new(f))
    }
    pub fn future(f: Formula) -> Formula {
        Formula::Future(Box::new(f))
    }
    pub fn nec(agent: &str, f: Formula) -> Formula {
        Formula::Nec(agent.to_string(), Box::new(f))
    }
    pub fn pos(agent: &str, f: Formula) -> Formula {
        Formula::Pos(agent.to_string(), Box::new(f))
    }
    pub fn nec_at(agent: &str, t: Time, f: Formula) -> Formula {
        Formula::NecAt(agent.to_string(), t, Box::new(f))
    }
    pub fn pos_at(agent: &str, t: Time, f: Formula) -> Formula {
        Formula::PosAt(agent.to_string(), t, Box::new(f))
    }
    pub fn atom(p: &str) -> Formula {
        Formula::Atom(p.to_string())
    }
    pub fn atom_at(p: &str, t: Time) -> Formula {
        Formula::AtomAt(p.to_string(), t)
    }

    /// Whether the formula contains a future-tense operator.
    pub fn has_future_tense(&self) -> bool {
        match self {
            Formula::Future(_) => true,
            Formula::True | Formula::False | Formula::Atom(_) | Formula::AtomAt(_, _) => false,
            Formula::Not(f) | Formula::Past(f) => f.has_future_tense(),
            Formula::Nec(_, f) | Formula::Pos(_, f) => f.has_future_tense(),
            Formula::NecAt(_, _, f) | Formula::PosAt(_, _, f) => f.has_future_tense(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.has_future_tense() || b.has_future_tense()
            }
        }
    }
}

/// Verdict of a validity check, with one counterexample point when it fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Validity {
    pub holds: bool,
    pub witness: Option<(HistoryIx, Time)>,
}

/// Everything needed to evaluate formulas: the universe plus one ensemble
/// per agent index used.
pub struct EvalContext<'a> {
    pub universe: &'a Universe,
    pub ensembles: &'a BTreeMap<String, Ensemble>,
}

impl<'a> EvalContext<'a> {
    pub fn new(universe: &'a Universe, ensembles: &'a BTreeMap<String, Ensemble>) -> Self {
        EvalContext { universe, ensembles }
    }

    fn ensemble(&self, agent: &str) -> Result<&Ensemble> {
        self.ensembles
            .get(agent)
            .ok_or_else(|| Error::UnknownAgent(agent.to_string()))
    }

    /// Checks that every agent, time, and proposition in the formula is
    /// declared in the model.
    pub fn resolve(&self, f: &Formula) -> Result<()> {
        match f {
            Formula::True | Formula::False => Ok(()),
            Formula::Atom(p) => self.universe.check_proposition(p),
            Formula::AtomAt(p, t) => {
                self.universe.check_proposition(p)?;
                self.universe.check_time(*t)
            }
            Formula::Not(f) | Formula::Past(f) | Formula::Future(f) => self.resolve(f),
            Formula::Nec(a, f) | Formula::Pos(a, f) => {
                self.ensemble(a)?;
                self.resolve(f)
            }
            Formula::NecAt(a, t, f) | Formula::PosAt(a, t, f) => {
                self.ensemble(a)?;
                self.universe.check_time(*t)?;
                self.resolve(f)
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                self.resolve(a)?;
                self.resolve(b)
            }
        }
    }

    /// The set of histories where `f` holds at evaluation time `t`.
    pub fn eval_set(&self, f: &Formula, t: Time) -> Result<HistorySet> {
        let n = self.universe.n_histories();
        match f {
            Formula::True => Ok(HistorySet::full(n)),
            Formula::False => Ok(HistorySet::empty(n)),
            Formula::Atom(p) => {
                self.universe.check_proposition(p)?;
                let mut set = HistorySet::empty(n);
                for h in 0..n {
                    if self.universe.holds_at(p, HistoryIx(h), t) {
                        set.insert(HistoryIx(h));
                    }
                }
                Ok(set)
            }
            Formula::AtomAt(p, at) => {
                self.universe.check_time(*at)?;
                self.eval_set(&Formula::Atom(p.clone()), *at)
            }
            Formula::Not(f) => {
                let mut set = self.eval_set(f, t)?;
                set.negate();
                Ok(set)
            }
            Formula::And(a, b) => {
                let mut set = self.eval_set(a, t)?;
                set.intersect_with(&self.eval_set(b, t)?);
                Ok(set)
            }
            Formula::Or(a, b) => {
                let mut set = self.eval_set(a, t)?;
                set.union_with(&self.eval_set(b, t)?);
                Ok(set)
            }
            Formula::Implies(a, b) => {
                let mut set = self.eval_set(a, t)?;
                set.negate();
                set.union_with(&self.eval_set(b, t)?);
                Ok(set)
            }
            Formula::Past(f) => {
                let mut set = HistorySet::empty(n);
                for earlier in 0..t {
                    set.union_with(&self.eval_set(f, earlier)?);
                }
                Ok(set)
            }
            Formula::Future(f) => {
                let mut set = HistorySet::empty(n);
                for later in t + 1..=self.universe.t_max() {
                    set.union_with(&self.eval_set(f, later)?);
                }
                Ok(set)
            }
            Formula::Nec(agent, f) => self.nec_set(agent, t, f, t),
            Formula::NecAt(agent, slice_t, f) => {
                self.universe.check_time(*slice_t)?;
                self.nec_set(agent, *slice_t, f, t)
            }
            Formula::Pos(agent, f) => {
                self.eval_set(&Formula::not(Formula::nec(agent, Formula::not((**f).clone()))), t)
            }
            Formula::PosAt(agent, slice_t, f) => self.eval_set(
                &Formula::not(Formula::nec_at(agent, *slice_t, Formula::not((**f).clone()))),
                t,
            ),
        }
    }

    /// Universal quantification over the agent's relation slice: `h` is in
    /// the result iff the body holds (at `body_t`) in every history the
    /// agent considers possible at `(h, slice_t)`.
    fn nec_set(&self, agent: &str, slice_t: Time, body: &Formula, body_t: Time) -> Result<HistorySet> {
        let ensemble = self.ensemble(agent)?;
        let body_set = self.eval_set(body, body_t)?;
        let n = self.universe.n_histories();
        let mut set = HistorySet::empty(n);
        for h in 0..n {
            let slice = ensemble.slice(self.universe, HistoryIx(h), slice_t)?;
            if slice.is_subset(&body_set) {
                set.insert(HistoryIx(h));
            }
        }
        Ok(set)
    }

    /// Recursive truth value at one point.
    pub fn eval(&self, f: &Formula, h: HistoryIx, t: Time) -> Result<bool> {
        self.universe.check_history(h)?;
        self.universe.check_time(t)?;
        Ok(self.eval_set(f, t)?.contains(h))
    }

    /// Universal closure over every `(history, time)` point; returns the
    /// first failing point in deterministic order as witness.
    pub fn valid(&self, f: &Formula) -> Result<Validity> {
        for t in self.universe.times() {
            let set = self.eval_set(f, t)?;
            for h in 0..self.universe.n_histories() {
                if !set.contains(HistoryIx(h)) {
                    return Ok(Validity {
                        holds: false,
                        witness: Some((HistoryIx(h), t)),
                    });
                }
            }
        }
        Ok(Validity {
            holds: true,
            witness: None,
        })
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

impl Formula {
    /// Precedence levels: 0 implies, 1 or, 2 and, 3 unary/primary.
    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, level: u8) -> fmt::Result {
        let my_level = match self {
            Formula::Implies(_, _) => 0,
            Formula::Or(_, _) => 1,
            Formula::And(_, _) => 2,
            _ => 3,
        };
        let parens = my_level < level;
        if parens {
            write!(f, "(")?;
        }
        match self {
            Formula::True => write!(f, "true")?,
            Formula::False => write!(f, "false")?,
            Formula::Atom(p) => write!(f, "{p}")?,
            Formula::AtomAt(p, t) => write!(f, "{p}@{t}")?,
            Formula::Not(x) => {
                write!(f, "!")?;
                x.fmt_prec(f, 3)?;
            }
            Formula::Past(x) => {
                write!(f, "P ")?;
                x.fmt_prec(f, 3)?;
            }
            Formula::Future(x) => {
                write!(f, "F ")?;
                x.fmt_prec(f, 3)?;
            }
            Formula::Nec(a, x) => {
                write!(f, "[]({a}) ")?;
                x.fmt_prec(f, 3)?;
            }
            Formula::Pos(a, x) => {
                write!(f, "<>({a}) ")?;
                x.fmt_prec(f, 3)?;
            }
            Formula::NecAt(a, t, x) => {
                write!(f, "[]({a},{t}) ")?;
                x.fmt_prec(f, 3)?;
            }
            Formula::PosAt(a, t, x) => {
                write!(f, "<>({a},{t}) ")?;
                x.fmt_prec(f, 3)?;
            }
            Formula::And(a, b) => {
                a.fmt_prec(f, 2)?;
                write!(f, " & ")?;
                b.fmt_prec(f, 3)?;
            }
            Formula::Or(a, b) => {
                a.fmt_prec(f, 1)?;
                write!(f, " | ")?;
                b.fmt_prec(f, 2)?;
            }
            Formula::Implies(a, b) => {
                a.fmt_prec(f, 1)?;
                write!(f, " -> ")?;
                b.fmt_prec(f, 0)?;
            }
        }
        if parens {
            write!(f, ")")?;
        }
        Ok(())
    }
}
