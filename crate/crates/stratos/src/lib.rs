//! An explicit-state workbench for finite multi-agent dynamic possible-world
//! models.
//!
//! The library builds universes of total histories from per-state micro-time
//! action trees, validates agents' information ensembles and their
//! properties (thinness, straightness, nondiminishing and perfect
//! information), evaluates a temporal-modal formula language over the
//! generated information relation, decides strategic ability and intention
//! operators by explicit enumeration of pure strategies, applies pragmatic
//! message operators to representational states, and computes state,
//! control, conditional-control, and strategic entropies.
//!
//! Models are ordinary JSON files (see `docs/schema.md`); [`model::Model`]
//! is the aggregate every query runs against. Each major capability has a
//! runnable example under `examples/`:
//!
//! ```text
//! cargo run --example build_universe   # micro-time trees -> histories
//! cargo run --example information      # ensembles, NDI, perfect info
//! cargo run --example formulas         # parse, eval, valid
//! cargo run --example axiom_suites     # NDI/PI schema checks
//! cargo run --example abilities        # o/s/co/coop-can and friends
//! cargo run --example intentions       # plans, co-plans, will
//! cargo run --example entropies        # state/control/strategic entropy
//! cargo run --example card_game        # assertion update on the card deal
//! cargo run --example brick_game       # directive update, scenario replay
//! ```
//!
//! The `stratos` binary exposes the same queries over model files:
//! `validate`, `eval`, `valid`, `axioms`, `can`, `plans`, `entropy`,
//! `simulate`, and `what-if`.

pub mod ability;
pub mod action;
pub mod axioms;
pub mod cli;
pub mod entropy;
pub mod error;
pub mod histset;
pub mod info;
pub mod intention;
pub mod logic;
pub mod model;
pub mod parser;
pub mod pragmatics;
pub mod sampling;
pub mod strategy;
pub mod world;

pub use error::{Error, Result};
pub use model::Model;
