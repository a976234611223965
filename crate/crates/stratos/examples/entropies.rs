//! State, control, conditional-control, and strategic entropies in bits.
//!
//! Run with: cargo run --example entropies

use stratos::entropy::{
    conditional_control_entropy, control_entropy, state_entropy, strategic_entropy,
    JointDistribution,
};
use stratos::model::{Model, Prior};
use stratos::world::VertexIx;

fn fixture(name: &str) -> Model {
    Model::load(format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn main() {
    // State entropy: Mary's uncertainty about the deal is one bit until the
    // tell.
    let card = fixture("card.json");
    let i1 = card.ensembles["mary"].cell(0);
    println!("state entropy of I1: {} bits", state_entropy(i1, None).unwrap());

    // Control entropy: total plan uncertainty over 8 strategies is 3 bits.
    let brick = fixture("brick.json");
    let plan = brick.plan_state_at("apprentice", VertexIx(0)).unwrap();
    println!(
        "control entropy of the apprentice's full plan state: {} bits",
        control_entropy(&plan, None).unwrap()
    );

    // Conditional control entropy: a diagonal joint removes all uncertainty,
    // an independent joint removes none.
    let sim = fixture("pennies_sim.json");
    let a = sim.full_space("A").unwrap();
    let b = sim.full_space("B").unwrap();
    let diagonal = JointDistribution::new(2, 2, vec![0.5, 0.0, 0.0, 0.5]).unwrap();
    let independent = JointDistribution::new(2, 2, vec![0.25, 0.25, 0.25, 0.25]).unwrap();
    println!(
        "conditional control entropy, diagonal joint: {} bits",
        conditional_control_entropy(&a, &b, &diagonal).unwrap()
    );
    println!(
        "conditional control entropy, independent joint: {} bits (marginal {})",
        conditional_control_entropy(&a, &b, &independent).unwrap(),
        independent.marginal_entropy().unwrap()
    );

    // Strategic entropy: what the other agents still decide.
    let play_h = &a.strategies()[0];
    println!(
        "strategic entropy of playing heads: {} bits",
        strategic_entropy(&sim, play_h, sim.prior().unwrap()).unwrap()
    );
    let deliver = brick
        .full_space("apprentice")
        .unwrap()
        .strategies()
        .iter()
        .find(|s| {
            let ctx = brick.strategy_context("apprentice").unwrap();
            ctx.potential(s).unwrap().count() == 1
        })
        .cloned()
        .unwrap();
    let uniform = Prior::uniform(brick.universe.n_histories());
    println!(
        "strategic entropy of a solitary deterministic strategy: {} bits",
        strategic_entropy(&brick, &deliver, &uniform).unwrap()
    );
}
