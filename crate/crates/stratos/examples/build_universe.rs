//! Builds universes of histories from micro-time action trees: the
//! simultaneous matching-pennies tree, interference by leaf placement, and
//! an absorbing state.
//!
//! Run with: cargo run --example build_universe

use stratos::model::Model;
use stratos::world::HistoryIx;

fn fixture(name: &str) -> Model {
    Model::load(format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn main() {
    // Two agents pick heads or tails inside a single macro time point; the
    // micro-time tree orders the picks virtually but neither sees the other.
    let pennies = fixture("pennies_sim.json");
    println!("simultaneous matching pennies, t_max = {}", pennies.universe.t_max());
    println!("histories ({} total):", pennies.universe.n_histories());
    for h in 0..pennies.universe.n_histories() {
        println!(
            "  {} = {}",
            pennies.universe.history_id(HistoryIx(h)),
            pennies.universe.trajectory_id(HistoryIx(h))
        );
    }
    println!("vertices (prefix classes): {}", pennies.universe.n_vertices());

    // Interference is pure leaf placement: the couch rises only when both
    // lift at once.
    let couch = fixture("couch.json");
    println!("\ncouch lift histories:");
    for h in 0..couch.universe.n_histories() {
        println!("  {}", couch.universe.trajectory_id(HistoryIx(h)));
    }

    // A state without a tree self-loops: one history regardless of t_max.
    let card = fixture("card.json");
    println!("\ncard deal (absorbing states): {} histories", card.universe.n_histories());
    for h in 0..card.universe.n_histories() {
        println!("  {}", card.universe.trajectory_id(HistoryIx(h)));
    }
}
