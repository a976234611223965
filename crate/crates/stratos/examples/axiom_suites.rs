//! The axiom schema suites: which temporal-modal schemata are valid under
//! which information conditions.
//!
//! Run with: cargo run --example axiom_suites

use stratos::axioms::{check_ndi_axioms, check_pi_axioms};
use stratos::model::Model;

fn fixture(name: &str) -> Model {
    Model::load(format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn show(model: &Model, title: &str) {
    println!("{title}");
    for suite in [check_ndi_axioms(model).unwrap(), check_pi_axioms(model).unwrap()] {
        for schema in &suite.schemas {
            println!(
                "  {:?} [{}]: condition {} -> {} ({} instances)",
                schema.schema,
                schema.agent,
                if schema.condition_holds { "holds" } else { "absent" },
                if schema.valid { "all valid" } else { "counterexamples" },
                schema.instances,
            );
            for c in &schema.counterexamples {
                println!("    fails: {} at ({}, {})", c.formula, c.history, c.time);
            }
        }
    }
}

fn main() {
    // Joe has perfect information: every schema passes for him. Mary's
    // imperfect-but-nondiminishing information keeps the NDI schemata and
    // breaks the PI ones.
    show(&fixture("card.json"), "card deal:");

    // Forgetting breaks even the nondiminishing-information schema, with a
    // concrete (t, t', body) instance as witness.
    show(&fixture("forgetting.json"), "\nforgetting agent:");
}
