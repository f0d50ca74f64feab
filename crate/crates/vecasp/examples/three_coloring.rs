//! Enumerate every 3-coloring of a small graph.
//!
//! Colorings of vertex i are the atoms col(i,1..3); the another-solution
//! constraint excludes each found model and the search repeats.

use vecasp::generators::{g1_edges, gen_3col};
use vecasp::solver::{enumerate, SolverOptions};

fn main() {
    let program = gen_3col(4, &g1_edges()).unwrap();
    println!(
        "{} atoms, {} rules, {} constraints",
        program.atom_count(),
        program.rule_count(),
        program.constraints.len()
    );

    let opts = SolverOptions { max_try: 100, seed: 7, ..SolverOptions::default() };
    let models = enumerate(&program, &opts, 10).unwrap();
    println!("{} colorings:", models.len());
    for m in &models {
        println!("  {:?}", m.true_names(&program.atoms));
    }
}
