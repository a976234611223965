//! The brick language game: "Brick!" interpreted through the apprentice's
//! pragmatics profile becomes a directive that filters the plan state down
//! to delivering strategies; the same token means something else to the
//! mason.
//!
//! Run with: cargo run --example brick_game

use stratos::model::Model;
use stratos::pragmatics::{prag_divergence, replay, RawMessage, RepresentationalState, ScenarioMessage};

fn main() {
    let model = Model::load(format!(
        "{}/fixtures/brick.json",
        env!("CARGO_MANIFEST_DIR")
    ))
    .unwrap();

    let scenario = model.scenario("brick").unwrap();
    let outcome = replay(&model, scenario, false).unwrap();
    let (info0, plan0) = outcome.report.initial["apprentice"];
    println!("apprentice starts with |info| = {info0}, |plan| = {plan0}");
    for step in &outcome.report.steps {
        println!(
            "step {}: {} from {} -> focus {:?}, |plan| = {}, changed {:?}",
            step.step, step.change.force, step.speaker, step.change.primary_focus,
            step.change.plan_size, step.change.changed,
        );
    }
    println!("surviving strategies:");
    for s in outcome.states["apprentice"].plan.strategies() {
        println!("  {}", s.describe(&model.ensembles["apprentice"]));
    }

    // The same token under two profiles transforms the state differently.
    let token = ScenarioMessage {
        speaker: "mason".into(),
        addressee: "apprentice".into(),
        content: RawMessage::Token("Brick!".into()),
    };
    let r = RepresentationalState::at(&model, "apprentice", scenario.at).unwrap();
    println!(
        "`Brick!` under apprentice vs mason profiles diverges: {}",
        prag_divergence(
            &model,
            model.profiles.get("apprentice"),
            model.profiles.get("mason"),
            &token,
            &r
        )
        .unwrap()
    );

    // A directive nobody can satisfy is rejected, or downgraded when
    // replayed leniently.
    let impossible = model.scenario("impossible").unwrap();
    match replay(&model, impossible, false) {
        Err(e) => println!("impossible directive: {e}"),
        Ok(_) => unreachable!(),
    }
    let lenient = replay(&model, impossible, true).unwrap();
    println!(
        "lenient replay keeps |plan| = {} with warning: {}",
        lenient.states["apprentice"].plan.len(),
        lenient.report.steps[0].change.warnings[0]
    );
}
