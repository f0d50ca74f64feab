//! Loops of the positive dependency graph and their effect on the cost.
//!
//! Supported models that are not stable sit at roots of the base cost; the
//! loop-formula term lifts those roots so only stable models remain at zero.

use vecasp::costs::{cost_total, CostWeights};
use vecasp::generators::gen_p4;
use vecasp::loops::{loops_all, loops_cycles, loops_scc, LoopSet};
use vecasp::matricize::matricize;
use vecasp::oracle::{enumerate_models, Semantics};

fn main() {
    let program = gen_p4(4).unwrap();
    let names = |atoms: &[usize]| {
        atoms.iter().map(|&i| program.atoms.name(i)).collect::<Vec<_>>()
    };

    for (label, set) in [
        ("scc", loops_scc(&program)),
        ("cycles", loops_cycles(&program, 1000)),
        ("all", loops_all(&program, 1000)),
    ] {
        println!("{label}: {} loops", set.loops.len());
        for info in &set.loops {
            println!("  {:?} supported by {} rules", names(&info.atoms), info.support_rules.len());
        }
    }

    let (mp, cm) = matricize(&program);
    let loops = loops_all(&program, 1000);
    let weights = CostWeights::default();
    let supported = enumerate_models(&program, Semantics::Supported, true).unwrap();
    for m in &supported.models {
        let u = m.to_f64();
        let without = cost_total(&mp, &cm, &LoopSet::default(), weights, &u).unwrap();
        let with = cost_total(&mp, &cm, &loops, weights, &u).unwrap();
        println!(
            "{:?}: base cost {:.1}, with loop formulas {:.1}",
            m.true_names(&program.atoms),
            without.total,
            with.total
        );
    }
}
