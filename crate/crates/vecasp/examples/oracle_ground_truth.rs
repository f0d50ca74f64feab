//! Exhaustive model enumeration for small programs.
//!
//! The oracle sweeps all 2^n interpretations and is the reference the
//! gradient solver is tested against.

use vecasp::generators::gen_p4;
use vecasp::oracle::{enumerate_models, Semantics};

fn main() {
    let program = gen_p4(4).unwrap();

    let supported = enumerate_models(&program, Semantics::Supported, true).unwrap();
    println!("{} supported models:", supported.len());
    for m in &supported.models {
        println!("  {:?}", m.true_names(&program.atoms));
    }

    let stable = enumerate_models(&program, Semantics::Stable, true).unwrap();
    println!("{} stable model(s):", stable.len());
    for m in &stable.models {
        println!("  {:?}", m.true_names(&program.atoms));
    }
}
