//! Parse a program text and inspect its matrix encoding.

use vecasp::matricize::{matricize, relu_view};
use vecasp::parser::parse_program;
use vecasp::semantics::{eval_vectors, min1};

fn main() {
    let program = parse_program(
        "a :- b, not c.\n\
         a :- not b.\n\
         b :- a.\n\
         c :- not a.\n\
         :- b, c.\n",
    )
    .unwrap();

    let (mp, cm) = matricize(&program);
    println!("n = {} atoms, m = {} rule bodies", mp.n, mp.m);
    println!("D:\n{}", mp.d.to_triplet_text());
    println!("Q1:\n{}", mp.q1.to_triplet_text());
    println!("Q2:\n{}", mp.q2.to_triplet_text());
    println!("{} constraint rows", cm.k);

    // evaluate a relaxed assignment two ways: the counting chain and the
    // equivalent ReLU network min1(D relu(Wu + b))
    let u = vec![0.8, 0.3, 0.1];
    let ev = eval_vectors(&mp, &u).unwrap();
    let rv = relu_view(&mp);
    let via_relu: Vec<f64> = mp.d.mul_vec(&rv.forward(&u)).into_iter().map(min1).collect();
    println!("u       = {u:?}");
    println!("min1(d) = {:?}", ev.disjunct_counts.iter().map(|&x| min1(x)).collect::<Vec<_>>());
    println!("relu    = {via_relu:?}");
}
