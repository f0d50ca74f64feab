//! Enumerate distinct models with another-solution constraints and verify
//! the list against the exhaustive oracle.

use vecasp::oracle::{enumerate_models, Semantics};
use vecasp::parser::parse_program;
use vecasp::solver::{enumerate, SolverOptions};

fn main() {
    // even cycle of negations: two alternating supported models
    let program = parse_program(
        "a :- not b.\n\
         b :- not c.\n\
         c :- not d.\n\
         d :- not a.\n",
    )
    .unwrap();

    let opts = SolverOptions { max_try: 100, seed: 0, ..SolverOptions::default() };
    let mut found = enumerate(&program, &opts, 10).unwrap();
    found.sort();
    for m in &found {
        println!("{:?}", m.true_names(&program.atoms));
    }

    let truth = enumerate_models(&program, Semantics::Supported, true).unwrap();
    assert_eq!(found, truth.models);
    println!("matches the exhaustive sweep ({} models)", truth.len());
}
