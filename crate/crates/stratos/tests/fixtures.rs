//! Integration tests over the shipped fixture models: every story example
//! pinned to the values derived by hand or by the independent oracles in
//! this file.

use std::collections::BTreeMap;

use stratos::ability::{self, Space};
use stratos::axioms::{self, Schema};
use stratos::entropy;
use stratos::error::Error;
use stratos::info;
use stratos::intention;
use stratos::logic::Formula;
use stratos::model::{Model, Prior};
use stratos::parser::parse;
use stratos::pragmatics::{self, Component, RepresentationalState};
use stratos::strategy::{plan_state_potential, potential_given_info, PlanState, PureStrategy};
use stratos::world::{HistoryIx, StateIx, Vertex};

fn fixture(name: &str) -> Model {
    let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    Model::load(path).expect("fixture loads")
}

fn h(n: usize) -> HistoryIx {
    HistoryIx(n)
}

/// Finds the strategy assigning the given (cell name, choice point, label)
/// triples, to pin tests to meaningful strategies rather than enumeration
/// order.
fn strategy_where(model: &Model, agent: &str, picks: &[(&str, &str, &str)]) -> PureStrategy {
    let ensemble = &model.ensembles[agent];
    model
        .full_space(agent)
        .unwrap()
        .strategies()
        .iter()
        .find(|s| {
            picks.iter().all(|(cell, cp, label)| {
                let ix = ensemble.cell_by_name(cell).expect("cell exists");
                s.assignment
                    .get(&ix)
                    .map(|alt| alt.selection.get(*cp).map(String::as_str) == Some(*label))
                    .unwrap_or(false)
            })
        })
        .expect("strategy exists")
        .clone()
}

/// Independent history count: dynamic programming over (state, time),
/// never touching the universe builder.
fn count_unrollings(model: &Model) -> u64 {
    let u = &model.universe;
    let mut per_state: BTreeMap<StateIx, u64> = u
        .states()
        .iter()
        .enumerate()
        .filter(|(_, s)| s.initial)
        .map(|(i, _)| (StateIx(i), 1))
        .collect();
    for _ in 0..u.t_max() {
        let mut next: BTreeMap<StateIx, u64> = BTreeMap::new();
        for (s, n) in per_state {
            for succ in model.actions.successors(u.states(), s).unwrap() {
                *next.entry(succ).or_insert(0) += n;
            }
        }
        per_state = next;
    }
    per_state.values().sum()
}

// ---------------------------------------------------------------------------
// Matching pennies
// ---------------------------------------------------------------------------

#[test]
fn pennies_universe_sizes_cross_checked() {
    for (name, expected) in [("pennies_sim.json", 4), ("pennies_seq.json", 4)] {
        let model = fixture(name);
        assert_eq!(model.universe.n_histories(), expected, "{name}");
        assert_eq!(count_unrollings(&model) as usize, expected, "{name}");
    }
}

#[test]
fn pennies_realizes_the_match_event() {
    use stratos::world::{Event, Situation};
    let model = fixture("pennies_sim.json");
    let mut event = Event::default();
    event.content.insert(
        1,
        Situation {
            assignment: [("match".to_string(), true)].into(),
        },
    );
    // H0 ends in s_hh (labeled match), H1 in s_ht (not).
    assert!(model.universe.realizes(&event, h(0)).unwrap());
    assert!(!model.universe.realizes(&event, h(1)).unwrap());
}

#[test]
fn pennies_info_set_covering_three_histories() {
    let model = fixture("pennies_sim.json");
    let u = &model.universe;
    let members: std::collections::BTreeSet<_> = (0..3)
        .map(|n| u.vertex_ix(Vertex { history: h(n), cut: 1 }).unwrap())
        .collect();
    let three = stratos::info::InfoSet::new("three", members);
    assert_eq!(stratos::info::i_star(u, &three).count(), 3);
}

#[test]
fn agent_without_choices_gets_the_null_alternative() {
    let model = fixture("brick.json");
    let ensemble = &model.ensembles["mason"];
    let v0 = model
        .universe
        .vertex_ix(Vertex { history: h(0), cut: 0 })
        .unwrap();
    let alts = stratos::strategy::alternatives(
        &model.universe,
        &model.actions,
        ensemble,
        "mason",
        ensemble.cell_ix_of(v0),
    )
    .unwrap();
    assert_eq!(alts, vec![stratos::action::Alternative::null("mason")]);
}

#[test]
fn brick_expected_utility_of_a_deterministic_potential() {
    // The forcing strategies all pin the single delivering history, so the
    // expected utility is exactly that history's utility.
    let model = fixture("brick.json");
    let goal = parse("F brick_delivered").unwrap();
    let xu = ability::xu_can(&model, "apprentice", &goal, h(0), 0, Space::Objective).unwrap();
    let (p, xu) = xu.result.unwrap();
    assert_eq!(p, 1.0);
    assert_eq!(xu, 1.0);
}

#[test]
fn perfect_information_says_nothing_about_the_future() {
    // The settled past stays known, but the converse schema about future
    // facts must fail even under perfect information.
    let model = fixture("pennies_seq.json");
    let forward = parse("match@2 -> [](A,0) match@2").unwrap();
    let v = model.ctx().valid(&forward).unwrap();
    assert!(!v.holds, "foreknowledge is not implied by perfect information");
    let backward = parse("match@2 -> [](A,2) match@2").unwrap();
    assert!(model.ctx().valid(&backward).unwrap().holds);
}

#[test]
fn pennies_sim_backwards_identity() {
    let model = fixture("pennies_sim.json");
    let u = &model.universe;
    // H0 = s0>s_hh, H1 = s0>s_ht share only the root.
    assert!(u.backwards_identical(h(0), h(1), 0).unwrap());
    assert!(!u.backwards_identical(h(0), h(1), 1).unwrap());
}

#[test]
fn pennies_sim_cells_lump_the_opponent_move() {
    let model = fixture("pennies_sim.json");
    let u = &model.universe;
    let v = u.vertex_ix(Vertex { history: h(0), cut: 1 }).unwrap();
    let cell = model.ensembles["A"].cell_of(v);
    assert_eq!(cell.name, "A_h");
    assert_eq!(cell.members.len(), 2);
}

#[test]
fn pennies_sim_alternatives_and_outcomes() {
    let model = fixture("pennies_sim.json");
    let ctx = model.strategy_context("A").unwrap();
    // A acts only at the start cell, with two alternatives.
    assert_eq!(ctx.acting_cells().len(), 1);
    assert_eq!(ctx.acting_cells()[0].1.len(), 2);
    assert_eq!(ctx.space_size(), 2);

    // Playing heads leaves both of B's replies possible.
    let play_h = strategy_where(&model, "A", &[("start", "a", "h")]);
    let potential = ctx.potential(&play_h).unwrap();
    let ids: Vec<String> = potential.iter().map(|k| model.universe.trajectory_id(k)).collect();
    assert_eq!(ids, vec!["s0>s_hh", "s0>s_ht"]);
}

#[test]
fn pennies_ability_split_between_variants() {
    let sim = fixture("pennies_sim.json");
    let goal = parse("F match").unwrap();
    let o = ability::can(&sim, "A", &goal, h(0), 0, Space::Objective).unwrap();
    assert!(!o.verdict);

    let seq = fixture("pennies_seq.json");
    let o = ability::can(&seq, "A", &goal, h(0), 0, Space::Objective).unwrap();
    assert!(o.verdict);
    // The full repertoire makes the subjective form agree.
    let s = ability::can(&seq, "A", &goal, h(0), 0, Space::Subjective).unwrap();
    assert_eq!(s.verdict, o.verdict);
}

#[test]
fn pennies_sim_probabilistic_ability_is_half() {
    let model = fixture("pennies_sim.json");
    let goal = parse("F match").unwrap();
    let p = ability::p_can(&model, "A", &goal, h(0), 0, Space::Objective).unwrap();
    assert!((p.probability - 0.5).abs() <= 1e-9);

    // Trivial endpoints: a tautology gets mass 1, a contradiction 0.
    let top = ability::p_can(&model, "A", &Formula::True, h(0), 0, Space::Objective).unwrap();
    assert_eq!(top.probability, 1.0);
    let bot = ability::p_can(&model, "A", &Formula::False, h(0), 0, Space::Objective).unwrap();
    assert_eq!(bot.probability, 0.0);
}

#[test]
fn pennies_seq_forcing_and_utilities() {
    let model = fixture("pennies_seq.json");
    let goal = parse("F match").unwrap();
    let ctx = model.strategy_context("A").unwrap();
    let matcher = strategy_where(
        &model,
        "A",
        &[("s0>s_bh@1", "a", "h"), ("s0>s_bt@1", "a", "t")],
    );
    let always_h = strategy_where(
        &model,
        "A",
        &[("s0>s_bh@1", "a", "h"), ("s0>s_bt@1", "a", "h")],
    );
    assert!(ability::forces(&model, &ctx, &matcher, &goal, 0).unwrap());
    assert!(!ability::forces(&model, &ctx, &always_h, &goal, 0).unwrap());
    // Tautologies are forced by anything.
    assert!(ability::forces(&model, &ctx, &always_h, &Formula::True, 0).unwrap());

    // Guarantees of the only forcing strategy: worst match is worth 1,
    // best 3; the expected utility under the renormalized uniform prior
    // sits between them.
    let pess = ability::u_can(&model, "A", &goal, h(0), 0, true, Space::Objective).unwrap();
    assert_eq!(pess.value, Some(1.0));
    let opt = ability::u_can(&model, "A", &goal, h(0), 0, false, Space::Objective).unwrap();
    assert_eq!(opt.value, Some(3.0));
    let xu = ability::xu_can(&model, "A", &goal, h(0), 0, Space::Objective).unwrap();
    let (p, xu) = xu.result.unwrap();
    assert!((p - 1.0).abs() <= 1e-9);
    assert!((xu - 2.0).abs() <= 1e-9);

    // Unforceable goals have no utilitarian guarantee.
    let never = ability::u_can(&model, "A", &Formula::False, h(0), 0, true, Space::Objective).unwrap();
    assert_eq!(never.value, None);
}

#[test]
fn pennies_seq_strategy_potentials() {
    let model = fixture("pennies_seq.json");
    let ctx = model.strategy_context("A").unwrap();
    let matcher = strategy_where(
        &model,
        "A",
        &[("s0>s_bh@1", "a", "h"), ("s0>s_bt@1", "a", "t")],
    );
    let potential = ctx.potential(&matcher).unwrap();
    let ids: Vec<String> = potential.iter().map(|k| model.universe.trajectory_id(k)).collect();
    assert_eq!(ids, vec!["s0>s_bh>s_hh", "s0>s_bt>s_tt"]);

    // pi*[I] with a disjoint information set is empty and not an error.
    let tt_vertex = model
        .universe
        .vertex_ix(Vertex { history: h(3), cut: 2 })
        .unwrap();
    let always_h = strategy_where(
        &model,
        "A",
        &[("s0>s_bh@1", "a", "h"), ("s0>s_bt@1", "a", "h")],
    );
    let info_star = info::i_star(
        &model.universe,
        model.ensembles["A"].cell_of(tt_vertex),
    );
    let restricted = potential_given_info(&ctx, &always_h, &info_star).unwrap();
    assert!(restricted.is_empty());

    // A neutral strategy restricted to an information set is exactly it.
    let mason_like = PlanState::new("B", model.full_space("B").unwrap().strategies().to_vec()).unwrap();
    let all_b = plan_state_potential(&model.strategy_context("B").unwrap(), &mason_like).unwrap();
    assert_eq!(all_b, model.universe.full_set());
}

#[test]
fn pennies_seq_plans_and_probabilistic_plans() {
    let seq = fixture("pennies_seq.json");
    let goal = parse("F match").unwrap();
    // S_A = { matcher } plans the match.
    assert!(intention::plans(&seq, "A", &goal, h(0), 0).unwrap());

    // Total plan uncertainty plans nothing contingent.
    let sim = fixture("pennies_sim.json");
    assert!(!intention::plans(&sim, "B", &goal, h(0), 0).unwrap());
    assert!(intention::plans(&sim, "B", &Formula::True, h(0), 0).unwrap());

    // S_A = { play heads } wins exactly half the mass.
    let p = intention::plans_p(&sim, "A", &goal, h(0), 0).unwrap();
    assert!((p - 0.5).abs() <= 1e-9);
    let certain = intention::plans_p(&seq, "A", &goal, h(0), 0).unwrap();
    assert!((certain - 1.0).abs() <= 1e-9);
}

#[test]
fn pennies_seq_vacuous_coordination_warns() {
    let model = fixture("pennies_seq.json");
    // Queried from a history where B played tails, while A's strategic
    // information says B plays heads: every forcing domain is empty.
    let outcome = ability::co_can(
        &model,
        "A",
        &["B".to_string()],
        &Formula::False,
        h(3),
        1,
        Space::Subjective,
    )
    .unwrap();
    assert!(outcome.verdict);
    assert!(!outcome.warnings.is_empty());
}

#[test]
fn pennies_group_potentials() {
    let model = fixture("pennies_sim.json");
    let a_h = PlanState::new("A", vec![strategy_where(&model, "A", &[("start", "a", "h")])]).unwrap();
    let b_h = PlanState::new("B", vec![strategy_where(&model, "B", &[("start", "b", "h")])]).unwrap();
    let both = intention::group_potential(
        &model,
        &[("A".to_string(), a_h.clone()), ("B".to_string(), b_h)],
    )
    .unwrap();
    let ids: Vec<String> = both.iter().map(|k| model.universe.trajectory_id(k)).collect();
    assert_eq!(ids, vec!["s0>s_hh"]);

    // A single-member group is just that member's potential.
    let solo = intention::group_potential(&model, &[("A".to_string(), a_h.clone())]).unwrap();
    let ctx = model.strategy_context("A").unwrap();
    assert_eq!(solo, plan_state_potential(&ctx, &a_h).unwrap());
}

// ---------------------------------------------------------------------------
// The card deal
// ---------------------------------------------------------------------------

#[test]
fn card_information_conditions() {
    let model = fixture("card.json");
    let u = &model.universe;
    let mary = &model.ensembles["mary"];
    let joe = &model.ensembles["joe"];

    // I1 intersects both deals.
    let i1 = mary.cell(0);
    assert_eq!(i1.name, "I1");
    assert_eq!(info::i_star(u, i1).count(), 2);

    assert!(info::has_ndi(u, mary));
    assert!(!info::has_perfect_info(mary));
    assert!(info::has_perfect_info(joe));
    assert!(info::has_ndi(u, joe));

    // Mary's relation at the deal: the actual deal relates to both.
    let slice = info::info_relation(u, mary, 0).unwrap();
    assert!(slice.pairs.contains(&(h(1), h(0))));
    assert!(slice.pairs.contains(&(h(1), h(1))));

    assert!(info::relation_backwards_consistent(u, mary));
    assert!(!info::relation_backwards_identical(u, mary));
    assert!(info::relation_backwards_identical(u, joe));
}

#[test]
fn card_assertion_shrinks_info_and_entropy() {
    let model = fixture("card.json");
    let scenario = model.scenario("tell").unwrap();

    let before = RepresentationalState::at(&model, "mary", scenario.at).unwrap();
    assert_eq!(before.info.members.len(), 2);
    assert_eq!(entropy::state_entropy(&before.info, None).unwrap(), 1.0);

    let outcome = pragmatics::replay(&model, scenario, false).unwrap();
    let after = &outcome.states["mary"];
    assert_eq!(after.info.members.len(), 1);
    assert_eq!(entropy::state_entropy(&after.info, None).unwrap(), 0.0);

    // Before the tell Mary does not know the king; afterwards, under the
    // refined ensemble, she does.
    let know = parse("[](mary) joe_has_kh").unwrap();
    assert!(!model.ctx().eval(&know, h(1), 0).unwrap());
    let refined = stratos::logic::EvalContext::new(&model.universe, &outcome.ensembles);
    assert!(refined.eval(&know, h(1), 0).unwrap());
}

#[test]
fn card_contradictory_assertion_is_rejected() {
    let model = fixture("card.json");
    let scenario = model.scenario("contradiction").unwrap();
    match pragmatics::replay(&model, scenario, false) {
        Err(Error::RejectedMessage(_)) => {}
        other => panic!("expected rejection, got {other:?}"),
    }
    let lenient = pragmatics::replay(&model, scenario, true).unwrap();
    assert_eq!(lenient.states["mary"].info.members.len(), 2);
    assert!(!lenient.report.steps[0].change.warnings.is_empty());
}

#[test]
fn card_axiom_suites() {
    let model = fixture("card.json");
    let ndi = axioms::check_ndi_axioms(&model).unwrap();
    for schema in &ndi.schemas {
        assert!(schema.condition_holds, "both ensembles are NDI");
        assert!(schema.valid, "{:?} for {}", schema.schema, schema.agent);
    }
    let pi = axioms::check_pi_axioms(&model).unwrap();
    for schema in &pi.schemas {
        match (schema.agent.as_str(), schema.schema) {
            ("joe", _) => {
                assert!(schema.condition_holds);
                assert!(schema.valid);
            }
            ("mary", Schema::PiTensed) => {
                assert!(!schema.condition_holds);
                assert!(!schema.valid, "imperfect information breaks the tensed PI schema");
                assert!(!schema.counterexamples.is_empty());
            }
            ("mary", _) => assert!(!schema.condition_holds),
            other => panic!("unexpected schema row {other:?}"),
        }
    }
}

// ---------------------------------------------------------------------------
// The tournament story
// ---------------------------------------------------------------------------

#[test]
fn tournament_coordination_beats_objectivity() {
    let model = fixture("tournament.json");
    let meet = parse("F meet").unwrap();
    let sue = vec!["sue".to_string()];

    let alone = ability::can(&model, "henry", &meet, h(0), 0, Space::Objective).unwrap();
    assert!(!alone.verdict);
    let informed = ability::co_can(&model, "henry", &sue, &meet, h(0), 0, Space::Subjective).unwrap();
    assert!(informed.verdict);
    assert!(informed.warnings.is_empty());

    // With no knowledge of anyone's intentions, co-can degenerates to s-can.
    let bare = ability::co_can(&model, "henry", &[], &meet, h(0), 0, Space::Subjective).unwrap();
    let s = ability::can(&model, "henry", &meet, h(0), 0, Space::Subjective).unwrap();
    assert_eq!(bare.verdict, s.verdict);
}

#[test]
fn tournament_cooperation() {
    let model = fixture("tournament.json");
    let meet = parse("F meet").unwrap();
    let group = vec!["henry".to_string(), "sue".to_string()];
    let coop = ability::coop_can(&model, &group, &meet, h(0), 0, Space::Subjective).unwrap();
    assert!(coop.verdict);

    // Neither agent can force the meeting alone.
    for agent in ["henry", "sue"] {
        let solo = ability::can(&model, agent, &meet, h(0), 0, Space::Subjective).unwrap();
        assert!(!solo.verdict, "{agent}");
        // Singleton-group cooperation is exactly the single-agent form.
        let single = ability::coop_can(&model, &[agent.to_string()], &meet, h(0), 0, Space::Subjective)
            .unwrap();
        assert_eq!(single.verdict, solo.verdict);
    }

    // Group1 = {henry} using its knowledge of group2 = {sue} is co-can.
    let cocoop = ability::co_coop_can(
        &model,
        &["henry".to_string()],
        &["sue".to_string()],
        &meet,
        h(0),
        0,
        Space::Subjective,
    )
    .unwrap();
    assert!(cocoop.verdict);
}

#[test]
fn tournament_third_person_and_own_plans() {
    let model = fixture("tournament.json");
    // Henry knows Sue will be at the tournament...
    assert!(intention::will(&model, "henry", "sue", &parse("F sue_there").unwrap(), h(0), 0).unwrap());
    // ...while Sue herself does not plan the meeting.
    assert!(!intention::plans(&model, "sue", &parse("F meet").unwrap(), h(0), 0).unwrap());
    // Henry coordinates on it.
    assert!(intention::co_plans(
        &model,
        "henry",
        &["sue".to_string()],
        &parse("F sue_there").unwrap(),
        h(0),
        0
    )
    .unwrap());
}

#[test]
fn tournament_what_if() {
    let model = fixture("tournament.json");
    let sue = vec!["sue".to_string()];
    let go = PlanState::new(
        "henry",
        vec![strategy_where(&model, "henry", &[("s0@0", "h_go", "go")])],
    )
    .unwrap();
    let futures = intention::what_if(&model, "henry", &go, h(0), 0, &sue).unwrap();
    let ids: Vec<String> = futures.iter().map(|k| model.universe.trajectory_id(k)).collect();
    assert_eq!(ids, vec!["s0>s_both"], "adopting go-to-tournament leaves only the meeting");

    // Keeping the current (total) plan changes nothing beyond what is
    // already known of Sue.
    let current = model.full_space("henry").unwrap();
    let unchanged = intention::what_if(&model, "henry", &current, h(0), 0, &sue).unwrap();
    let mut expected = intention::nested_group_potential(
        &model,
        "henry",
        &sue,
        model.ensembles["henry"].cell_of(
            model.universe.vertex_ix(Vertex { history: h(0), cut: 0 }).unwrap(),
        ),
    )
    .unwrap();
    expected.intersect_with(&model.universe.full_set());
    assert_eq!(unchanged, expected);

    // The empty candidate is rejected outright.
    let empty = PlanState::new("henry", vec![]);
    assert!(empty.is_err());
}

#[test]
fn tournament_nested_information_is_correct() {
    // Henry's strategic information about Sue contains her actual plan.
    let model = fixture("tournament.json");
    let v0 = model
        .universe
        .vertex_ix(Vertex { history: h(0), cut: 0 })
        .unwrap();
    assert!(intention::nested_correct(&model, "henry", "sue", v0).unwrap());
}

#[test]
fn assertion_updates_are_local_to_the_addressee() {
    let model = fixture("card.json");
    let outcome = pragmatics::replay(&model, model.scenario("tell").unwrap(), false).unwrap();
    // Mary's ensemble was refined; Joe's is untouched.
    assert_eq!(
        outcome.ensembles["joe"].cells().len(),
        model.ensembles["joe"].cells().len()
    );
    assert_eq!(
        outcome.ensembles["mary"].cells().len(),
        model.ensembles["mary"].cells().len() + 1
    );
}

#[test]
fn tournament_group_plans_and_expectations() {
    let model = fixture("tournament.json");
    // Sue attends but Henry's plans are open: the group does not yet plan
    // the meeting.
    assert!(!intention::group_plans(
        &model,
        &["henry".to_string(), "sue".to_string()],
        &parse("F meet").unwrap(),
        h(0),
        0
    )
    .unwrap());

    let ctx = model.strategy_context("henry").unwrap();
    let go = strategy_where(&model, "henry", &[("s0@0", "h_go", "go")]);
    let potential = ctx.potential(&go).unwrap();
    // Expectations covering everything are correct; dropping a realizable
    // history breaks correctness.
    assert!(stratos::strategy::expectations_correct(&model.universe.full_set(), &potential));
    assert!(stratos::strategy::expectations_correct(&potential, &potential));
    let mut too_small = potential.clone();
    too_small.remove(potential.iter().next().unwrap());
    assert!(!stratos::strategy::expectations_correct(&too_small, &potential));
}

// ---------------------------------------------------------------------------
// Couch and Boris
// ---------------------------------------------------------------------------

#[test]
fn couch_needs_cooperation() {
    let model = fixture("couch.json");
    let lifted = parse("F lifted").unwrap();
    let group = vec!["ray".to_string(), "joe".to_string()];
    assert!(ability::coop_can(&model, &group, &lifted, h(0), 0, Space::Subjective)
        .unwrap()
        .verdict);
    assert!(!ability::can(&model, "ray", &lifted, h(0), 0, Space::Subjective)
        .unwrap()
        .verdict);
    assert!(!ability::can(&model, "ray", &lifted, h(0), 0, Space::Objective)
        .unwrap()
        .verdict);
}

#[test]
fn boris_objectively_but_not_subjectively_wins() {
    let model = fixture("boris.json");
    let win = parse("F win").unwrap();
    let o = ability::can(&model, "boris", &win, h(0), 0, Space::Objective).unwrap();
    assert!(o.verdict);
    let s = ability::can(&model, "boris", &win, h(0), 0, Space::Subjective).unwrap();
    assert!(!s.verdict, "the winning line is outside Boris's repertoire");
}

// ---------------------------------------------------------------------------
// Forgetting
// ---------------------------------------------------------------------------

#[test]
fn forgetting_breaks_ndi_and_its_schema() {
    let model = fixture("forgetting.json");
    let u = &model.universe;
    let amy = &model.ensembles["amy"];
    assert!(!info::has_ndi(u, amy));
    assert!(!info::relation_backwards_consistent(u, amy));

    let report = axioms::check_ndi_axioms(&model).unwrap();
    let indexed = report
        .schemas
        .iter()
        .find(|s| s.schema == Schema::NdiIndexed)
        .unwrap();
    assert!(!indexed.condition_holds);
    assert!(!indexed.valid);
    let witness = &indexed.counterexamples[0];
    assert!(witness.formula.contains("->"), "a concrete instance: {}", witness.formula);
}

// ---------------------------------------------------------------------------
// The brick game
// ---------------------------------------------------------------------------

#[test]
fn brick_directive_filters_the_plan_state() {
    let model = fixture("brick.json");
    let scenario = model.scenario("brick").unwrap();
    let outcome = pragmatics::replay(&model, scenario, false).unwrap();

    assert_eq!(outcome.report.initial["apprentice"], (1, 8));
    let step0 = &outcome.report.steps[0];
    assert_eq!(step0.change.plan_size, 2);
    assert_eq!(step0.change.primary_focus, Component::Plan);
    assert_eq!(step0.change.changed, vec![Component::Plan]);

    // Exactly the fetch-then-deliver strategies survive.
    let ensemble = &model.ensembles["apprentice"];
    for s in outcome.states["apprentice"].plan.strategies() {
        let at = |cell: &str, cp: &str| {
            let ix = ensemble.cell_by_name(cell).unwrap();
            s.assignment[&ix].selection[cp].clone()
        };
        assert_eq!(at("s0@0", "act0"), "fetch");
        assert_eq!(at("s0>s_fetched@1", "act1"), "deliver");
    }

    // The evaluative step shifts only the value table: declared utility 1
    // plus the praised delta 2 on the delivering history.
    let step1 = &outcome.report.steps[1];
    assert_eq!(step1.change.changed, vec![Component::Values]);
    let delivered = stratos::model::parse_history_addr(&model.universe, "s0>s_fetched>s_done").unwrap();
    assert_eq!(outcome.states["apprentice"].values[delivered.0], 3.0);
}

#[test]
fn brick_impossible_directive_is_rejected() {
    let model = fixture("brick.json");
    let scenario = model.scenario("impossible").unwrap();
    match pragmatics::replay(&model, scenario, false) {
        Err(Error::RejectedDirective(_)) => {}
        other => panic!("expected directive rejection, got {other:?}"),
    }
    let lenient = pragmatics::replay(&model, scenario, true).unwrap();
    assert_eq!(lenient.states["apprentice"].plan.len(), 8);
}

#[test]
fn brick_profiles_diverge() {
    let model = fixture("brick.json");
    let raw = stratos::pragmatics::ScenarioMessage {
        speaker: "mason".into(),
        addressee: "apprentice".into(),
        content: stratos::pragmatics::RawMessage::Token("Brick!".into()),
    };
    let at = model.scenario("brick").unwrap().at;
    let r = RepresentationalState::at(&model, "apprentice", at).unwrap();
    // The mason hears the token as a trivial goal; the apprentice as the
    // delivery goal.
    let diverges = pragmatics::prag_divergence(
        &model,
        model.profiles.get("apprentice"),
        model.profiles.get("mason"),
        &raw,
        &r,
    )
    .unwrap();
    assert!(diverges);
    let same = pragmatics::prag_divergence(
        &model,
        model.profiles.get("apprentice"),
        model.profiles.get("apprentice"),
        &raw,
        &r,
    )
    .unwrap();
    assert!(!same);
}

#[test]
fn brick_message_chaining() {
    let model = fixture("brick.json");
    let at = model.scenario("brick").unwrap().at;
    let r = RepresentationalState::at(&model, "apprentice", at).unwrap();

    // The empty chain is the identity.
    let (same, reports) = pragmatics::apply_sequence(&model, &r, &[], false).unwrap();
    assert_eq!(same.plan.len(), r.plan.len());
    assert!(reports.is_empty());

    // A written chain applies its rightmost operator first and equals the
    // explicit composition.
    let directive = pragmatics::resolve_message(
        &model,
        &stratos::pragmatics::ScenarioMessage {
            speaker: "mason".into(),
            addressee: "apprentice".into(),
            content: stratos::pragmatics::RawMessage::Token("Brick!".into()),
        },
    )
    .unwrap();
    let praise = pragmatics::Message {
        speaker: "mason".into(),
        addressee: "apprentice".into(),
        force: pragmatics::Force::Evaluative,
        content: pragmatics::ContentSpec::Delta(vec![0.0, 0.0, 0.0, 1.0]),
    };
    let chain = [praise.clone(), directive.clone()];
    let (chained, _) = pragmatics::apply_sequence(&model, &r, &chain, false).unwrap();
    let (step1, _) = pragmatics::prag_apply(&model, &r, &directive, false).unwrap();
    let (step2, _) = pragmatics::prag_apply(&model, &step1, &praise, false).unwrap();
    assert_eq!(chained.plan, step2.plan);
    assert_eq!(chained.values, step2.values);

    // A zero delta is the identity operator.
    let zero = pragmatics::Message {
        speaker: "mason".into(),
        addressee: "apprentice".into(),
        force: pragmatics::Force::Evaluative,
        content: pragmatics::ContentSpec::Delta(vec![0.0; 4]),
    };
    let (unchanged, report) = pragmatics::prag_apply(&model, &r, &zero, false).unwrap();
    assert_eq!(unchanged.values, r.values);
    assert!(report.changed.is_empty());
}

#[test]
fn brick_utilitarian_intention() {
    let model = fixture("brick.json");
    // The apprentice's plan allows idle histories, but they all fall below
    // the commitment threshold, so the utilitarian intention stands.
    let goal = parse("F brick_delivered").unwrap();
    assert!(intention::plans_u(&model, "apprentice", &goal, h(0), 0, 1.0).unwrap());
    // At threshold zero every allowed history must satisfy the goal.
    assert!(!intention::plans_u(&model, "apprentice", &goal, h(0), 0, 0.0).unwrap());
    // Plain plans is false under total plan uncertainty.
    assert!(!intention::plans(&model, "apprentice", &goal, h(0), 0).unwrap());
}

// ---------------------------------------------------------------------------
// Entropy across fixtures
// ---------------------------------------------------------------------------

#[test]
fn strategic_entropy_tracks_agent_count() {
    // Deterministic world: a single agent fully controls the outcome.
    let brick = fixture("brick.json");
    let fetch_deliver = strategy_where(
        &brick,
        "apprentice",
        &[
            ("s0@0", "act0", "fetch"),
            ("s0>s0@1", "act0", "fetch"),
            ("s0>s_fetched@1", "act1", "deliver"),
        ],
    );
    let uniform = Prior::uniform(brick.universe.n_histories());
    let bits = entropy::strategic_entropy(&brick, &fetch_deliver, &uniform).unwrap();
    assert_eq!(bits, 0.0);

    // One opponent: one bit of side-effect uncertainty.
    let sim = fixture("pennies_sim.json");
    let play_h = strategy_where(&sim, "A", &[("start", "a", "h")]);
    let bits_two = entropy::strategic_entropy(&sim, &play_h, sim.prior().unwrap()).unwrap();
    assert_eq!(bits_two, 1.0);
    assert!(bits <= bits_two);

    // Control entropy of the shipped plan states.
    let mary_plan = fixture("card.json");
    let plan = mary_plan.plan_state_at("mary", stratos::world::VertexIx(0)).unwrap();
    assert_eq!(entropy::control_entropy(&plan, None).unwrap(), 0.0);
    let apprentice = brick.plan_state_at("apprentice", stratos::world::VertexIx(0)).unwrap();
    assert_eq!(entropy::control_entropy(&apprentice, None).unwrap(), 3.0);
}
