//! The formula language: parsing, evaluation at a point, and validity over
//! the whole (history, time) grid.
//!
//! Run with: cargo run --example formulas

use stratos::model::{parse_vertex_addr, Model};
use stratos::parser::parse;
use stratos::world::HistoryIx;

fn main() {
    let model = Model::load(format!(
        "{}/fixtures/pennies_seq.json",
        env!("CARGO_MANIFEST_DIR")
    ))
    .unwrap();
    let ctx = model.ctx();

    for text in [
        "F match",
        "P [](A) match",
        "[](A,1) match@2 -> [](A,2) match@2",
        "<>(B) F match",
        "match | !match",
    ] {
        let f = parse(text).unwrap();
        println!("parsed `{text}` as `{f}`");
        let at_root = ctx.eval(&f, HistoryIx(0), 0).unwrap();
        println!("  holds at (H0, 0): {at_root}");
        let v = ctx.valid(&f).unwrap();
        match v.witness {
            None => println!("  valid everywhere"),
            Some((h, t)) => println!(
                "  fails at ({}, {t})",
                model.universe.trajectory_id(h)
            ),
        }
    }

    // Vertices address evaluation points by trajectory prefix.
    let v = parse_vertex_addr(&model.universe, "s0>s_bh").unwrap();
    let data = model.universe.vertex_data(v);
    let known = parse("[](A) match@2 | [](A) !match@2").unwrap();
    println!(
        "after seeing B play heads, A knows the outcome of matching heads: {}",
        ctx.eval(&known, data.repr(), data.cut).unwrap()
    );

    // Syntax errors carry the offending column.
    match parse("((") {
        Err(e) => println!("parse error: {e}"),
        Ok(_) => unreachable!(),
    }
}
