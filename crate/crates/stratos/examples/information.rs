//! Information sets, ensembles, and the properties that tie them to the
//! generated accessibility relation: nondiminishing information, perfect
//! information, and what forgetting breaks.
//!
//! Run with: cargo run --example information

use stratos::info;
use stratos::model::Model;

fn fixture(name: &str) -> Model {
    Model::load(format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn describe(model: &Model, title: &str) {
    println!("{title}");
    let u = &model.universe;
    for (agent, ensemble) in &model.ensembles {
        println!(
            "  {agent}: {} cells, ndi {}, perfect {}, backwards-consistent {}, backwards-identical {}",
            ensemble.cells().len(),
            info::has_ndi(u, ensemble),
            info::has_perfect_info(ensemble),
            info::relation_backwards_consistent(u, ensemble),
            info::relation_backwards_identical(u, ensemble),
        );
        for cell in ensemble.cells() {
            println!(
                "    {} = {{{}}} straight={} |I*|={}",
                cell.name,
                cell.members
                    .iter()
                    .map(|&v| u.vertex_id(v))
                    .collect::<Vec<_>>()
                    .join(", "),
                info::is_straight(u, cell),
                info::i_star(u, cell).count(),
            );
        }
    }
}

fn main() {
    // Mary cannot tell the two deals apart; Joe sees his own hand.
    let card = fixture("card.json");
    describe(&card, "card deal:");

    // An agent that learns nature's move at t=1 and loses it again at t=2.
    let forgetting = fixture("forgetting.json");
    describe(&forgetting, "\nforgetting agent:");

    // The relation slice at the moment of forgetting grows back.
    let amy = &forgetting.ensembles["amy"];
    for t in forgetting.universe.times() {
        let slice = info::info_relation(&forgetting.universe, amy, t).unwrap();
        println!("  relation slice at t={t}: {} pairs", slice.pairs.len());
    }
}
