//! The ability operators across the story fixtures: objective vs subjective
//! can, coordination on known intentions, group cooperation, and the
//! utilitarian and probabilistic forms.
//!
//! Run with: cargo run --example abilities

use stratos::ability::{can, co_can, coop_can, p_can, u_can, xu_can, Space};
use stratos::model::Model;
use stratos::parser::parse;
use stratos::world::HistoryIx;

fn fixture(name: &str) -> Model {
    Model::load(format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn main() {
    let h0 = HistoryIx(0);

    // Matching pennies: moving second wins; moving simultaneously does not.
    let seq = fixture("pennies_seq.json");
    let sim = fixture("pennies_sim.json");
    let goal = parse("F match").unwrap();
    println!(
        "sequential pennies, o-can(A, F match): {}",
        can(&seq, "A", &goal, h0, 0, Space::Objective).unwrap().verdict
    );
    println!(
        "simultaneous pennies, o-can(A, F match): {}",
        can(&sim, "A", &goal, h0, 0, Space::Objective).unwrap().verdict
    );
    println!(
        "simultaneous pennies, p-can(A, F match): {}",
        p_can(&sim, "A", &goal, h0, 0, Space::Objective).unwrap().probability
    );

    // Boris has the winning line only objectively.
    let boris = fixture("boris.json");
    let win = parse("F win").unwrap();
    println!(
        "boris: o-can {} / s-can {}",
        can(&boris, "boris", &win, h0, 0, Space::Objective).unwrap().verdict,
        can(&boris, "boris", &win, h0, 0, Space::Subjective).unwrap().verdict,
    );

    // Henry meets Sue only through his knowledge of her intentions.
    let tournament = fixture("tournament.json");
    let meet = parse("F meet").unwrap();
    println!(
        "henry: s-can(meet) {} / co-can(meet | knows sue attends) {}",
        can(&tournament, "henry", &meet, h0, 0, Space::Subjective).unwrap().verdict,
        co_can(&tournament, "henry", &["sue".into()], &meet, h0, 0, Space::Subjective)
            .unwrap()
            .verdict,
    );

    // The couch rises only under joint strategies.
    let couch = fixture("couch.json");
    let lifted = parse("F lifted").unwrap();
    println!(
        "couch: s-can(ray, lifted) {} / coop-can({{ray, joe}}, lifted) {}",
        can(&couch, "ray", &lifted, h0, 0, Space::Subjective).unwrap().verdict,
        coop_can(
            &couch,
            &["ray".into(), "joe".into()],
            &lifted,
            h0,
            0,
            Space::Subjective
        )
        .unwrap()
        .verdict,
    );

    // Utilitarian guarantees of the matching strategy.
    let pess = u_can(&seq, "A", &goal, h0, 0, true, Space::Objective).unwrap();
    let opt = u_can(&seq, "A", &goal, h0, 0, false, Space::Objective).unwrap();
    let xu = xu_can(&seq, "A", &goal, h0, 0, Space::Objective).unwrap();
    println!(
        "sequential pennies utilities: pessimistic {:?}, expected {:?}, optimistic {:?}",
        pess.value,
        xu.result.map(|(_, v)| v),
        opt.value,
    );
}
