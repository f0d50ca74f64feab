//! Find a supported model of a small program by gradient search.
//!
//! ```text
//! cargo run --example supported_models
//! ```

use vecasp::parser::parse_program;
use vecasp::solver::{solve, SolverOptions};

fn main() {
    let program = parse_program(
        "p :- q, not r.\n\
         p :- not q.\n\
         q.\n",
    )
    .unwrap();

    let opts = SolverOptions { seed: 1, ..SolverOptions::default() };
    let result = solve(&program, &opts).unwrap();

    match result.model {
        Some(m) => {
            println!("model: {:?}", m.true_names(&program.atoms));
            println!("stable: {}", result.stable);
            println!("tries: {}, {:.3}s", result.tries, result.seconds);
        }
        None => println!("no model within budget"),
    }
}
