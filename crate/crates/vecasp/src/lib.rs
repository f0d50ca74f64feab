//! Answer set programming in vector spaces.
//!
//! `vecasp` computes supported and stable models of propositional normal
//! logic programs with constraints by encoding a program as a pair of
//! sparse binary matrices and minimizing a differentiable cost whose roots
//! are exactly the models. Loop formulas (Lin-Zhao) guide the search on
//! non-tight programs, and a linear-time precomputation pass shrinks the
//! program by the atoms that are false in every stable model.
//!
//! Typical use:
//!
//! ```
//! use vecasp::parser::parse_program;
//! use vecasp::solver::{solve, SolverOptions};
//!
//! let program = parse_program("p :- q, not r.\np :- not q.\nq.").unwrap();
//! let result = solve(&program, &SolverOptions::default()).unwrap();
//! let model = result.model.unwrap();
//! assert_eq!(model.true_names(&program.atoms), vec!["p", "q"]);
//! ```
//!
//! The `examples/` directory walks through each capability; the `vecasp`
//! binary exposes the same functionality as subcommands.

pub mod cli;
pub mod costs;
pub mod generators;
pub mod loops;
pub mod matricize;
pub mod model;
pub mod oracle;
pub mod parser;
pub mod precompute;
pub mod semantics;
pub mod solver;

pub use costs::{cost_total, CostBreakdown, CostWeights};
pub use matricize::{matricize, ConstraintMatrix, MatricizedProgram};
pub use model::{Model, Program};
pub use parser::{parse_program, render_program};
pub use precompute::{precompute, PrecomputeResult};
pub use solver::{enumerate, solve, LfHeuristic, Mode, SolveResult, SolverOptions};
