//! The intention operators: plans, coordinated and group plans, third-person
//! predictions, probabilistic and utilitarian commitment, and what-if
//! scenarios over candidate plans.
//!
//! Run with: cargo run --example intentions

use stratos::intention::{co_plans, group_plans, plans, plans_p, plans_u, what_if, will};
use stratos::model::Model;
use stratos::parser::parse;
use stratos::strategy::PlanState;
use stratos::world::HistoryIx;

fn fixture(name: &str) -> Model {
    Model::load(format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn main() {
    let h0 = HistoryIx(0);

    // A's plan state holds only the matching strategy: the match is planned.
    let seq = fixture("pennies_seq.json");
    let goal = parse("F match").unwrap();
    println!("sequential pennies, plans(A, F match): {}", plans(&seq, "A", &goal, h0, 0).unwrap());

    // Under total plan uncertainty only inevitabilities are planned.
    let sim = fixture("pennies_sim.json");
    println!(
        "simultaneous pennies, plans(B, F match): {}, plans(B, true): {}",
        plans(&sim, "B", &goal, h0, 0).unwrap(),
        plans(&sim, "B", &parse("true").unwrap(), h0, 0).unwrap(),
    );
    println!(
        "simultaneous pennies, plans_p(A, F match): {}",
        plans_p(&sim, "A", &goal, h0, 0).unwrap()
    );

    // Sue will be at the tournament from Henry's perspective, while she
    // plans no meeting herself.
    let tournament = fixture("tournament.json");
    println!(
        "will(henry about sue, F sue_there): {}",
        will(&tournament, "henry", "sue", &parse("F sue_there").unwrap(), h0, 0).unwrap()
    );
    println!(
        "plans(sue, F meet): {}",
        plans(&tournament, "sue", &parse("F meet").unwrap(), h0, 0).unwrap()
    );
    println!(
        "co-plans(henry | sue attends, F sue_there): {}",
        co_plans(
            &tournament,
            "henry",
            &["sue".into()],
            &parse("F sue_there").unwrap(),
            h0,
            0
        )
        .unwrap()
    );
    println!(
        "group-plans({{henry, sue}}, F meet): {}",
        group_plans(
            &tournament,
            &["henry".into(), "sue".into()],
            &parse("F meet").unwrap(),
            h0,
            0
        )
        .unwrap()
    );

    // What if Henry adopts going to the tournament?
    let go = tournament
        .full_space("henry")
        .unwrap()
        .strategies()
        .iter()
        .find(|s| s.assignment.values().any(|alt| alt.selection.values().any(|l| l == "go")))
        .cloned()
        .unwrap();
    let candidate = PlanState::new("henry", vec![go]).unwrap();
    let futures = what_if(&tournament, "henry", &candidate, h0, 0, &["sue".into()]).unwrap();
    println!(
        "what-if henry adopts going: {{{}}}",
        futures
            .iter()
            .map(|k| tournament.universe.trajectory_id(k))
            .collect::<Vec<_>>()
            .join(", ")
    );

    // Utilitarian commitment tolerates failure below the threshold.
    let brick = fixture("brick.json");
    let delivered = parse("F brick_delivered").unwrap();
    println!(
        "apprentice plans_u(deliver, u=1): {}, plans_u(deliver, u=0): {}",
        plans_u(&brick, "apprentice", &delivered, h0, 0, 1.0).unwrap(),
        plans_u(&brick, "apprentice", &delivered, h0, 0, 0.0).unwrap(),
    );
}
