//! Shrink a program by removing atoms that are false in every stable model,
//! then solve the reduced program and lift the answer back.

use vecasp::generators::gen_p5;
use vecasp::precompute::precompute;
use vecasp::solver::{solve, LfHeuristic, Mode, SolverOptions};

fn main() {
    let program = gen_p5(10, 10).unwrap();
    let res = precompute(&program);
    println!(
        "atoms {} -> {}, rules {} -> {}",
        program.atom_count(),
        res.reduced.atom_count(),
        program.rule_count(),
        res.reduced.rule_count()
    );
    println!(
        "removed: {:?}",
        res.false_atoms.iter().map(|&a| program.atoms.name(a)).collect::<Vec<_>>()
    );

    // solve() applies the same reduction when use_precompute is set and
    // returns models over the original atom table
    let opts = SolverOptions {
        mode: Mode::Stable,
        lf_heuristic: LfHeuristic::Max,
        use_precompute: true,
        max_try: 100,
        seed: 2,
        ..SolverOptions::default()
    };
    let result = solve(&program, &opts).unwrap();
    println!("stable model: {:?}", result.model.unwrap().true_names(&program.atoms));
}
