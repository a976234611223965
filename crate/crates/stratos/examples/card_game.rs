//! The card deal: an assertion removes possibilities from Mary's
//! information set, never adds them, and the refined ensemble is what the
//! necessity operator sees afterwards.
//!
//! Run with: cargo run --example card_game

use stratos::entropy::state_entropy;
use stratos::logic::EvalContext;
use stratos::model::Model;
use stratos::parser::parse;
use stratos::pragmatics::{prag_apply, replay, resolve_message, RepresentationalState};
use stratos::world::HistoryIx;

fn main() {
    let model = Model::load(format!(
        "{}/fixtures/card.json",
        env!("CARGO_MANIFEST_DIR")
    ))
    .unwrap();

    let scenario = model.scenario("tell").unwrap();
    let mary = RepresentationalState::at(&model, "mary", scenario.at).unwrap();
    println!(
        "before: |I1| = {}, state entropy {} bits",
        mary.info.members.len(),
        state_entropy(&mary.info, None).unwrap()
    );

    // Apply the assertion directly.
    let told = resolve_message(&model, &scenario.messages[0]).unwrap();
    let (after, report) = prag_apply(&model, &mary, &told, false).unwrap();
    println!(
        "after `joe_has_kh`: |I2| = {}, state entropy {} bits, changed {:?}",
        after.info.members.len(),
        state_entropy(&after.info, None).unwrap(),
        report.changed,
    );

    // Applying the same assertion again changes nothing.
    let (again, report) = prag_apply(&model, &after, &told, false).unwrap();
    println!(
        "idempotent: |I2| still {}, changed {:?}",
        again.info.members.len(),
        report.changed
    );

    // The scenario replay also splits Mary's cell, so the box reflects the
    // new knowledge.
    let know = parse("[](mary) joe_has_kh").unwrap();
    let actual_deal = HistoryIx(1); // s_k > s_k
    println!(
        "before the tell, [](mary) joe_has_kh at the actual deal: {}",
        model.ctx().eval(&know, actual_deal, 0).unwrap()
    );
    let outcome = replay(&model, scenario, false).unwrap();
    let refined = EvalContext::new(&model.universe, &outcome.ensembles);
    println!(
        "after the tell: {}",
        refined.eval(&know, actual_deal, 0).unwrap()
    );

    // An assertion inconsistent with the information state is rejected.
    let contradiction = model.scenario("contradiction").unwrap();
    match replay(&model, contradiction, false) {
        Err(e) => println!("contradictory assertion: {e}"),
        Ok(_) => unreachable!(),
    }
}
