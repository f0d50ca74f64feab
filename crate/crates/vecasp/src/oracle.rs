//! Exact reference semantics by exhaustive enumeration.
//!
//! Everything here works on the symbolic program, never on matrices, so it
//! serves as independent ground truth for the vector-space machinery.

use thiserror::Error;

use crate::model::{completion_bodies, gl_reduct, Model, Program};
use crate::precompute::least_model;

#[derive(Debug, Error, PartialEq)]
pub enum OracleError {
    #[error("program has {n} atoms; exhaustive enumeration is limited to {limit}")]
    TooManyAtoms { n: usize, limit: usize },
}

/// Hard guard for the 2^n sweep.
pub const MAX_SWEEP_ATOMS: usize = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Semantics {
    Supported,
    Stable,
}

/// Canonically ordered, duplicate-free model list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelSet {
    pub models: Vec<Model>,
}

impl ModelSet {
    fn new(mut models: Vec<Model>) -> Self {
        models.sort();
        models.dedup();
        ModelSet { models }
    }

    pub fn len(&self) -> usize {
        self.models.len()
    }

    pub fn is_empty(&self) -> bool {
        self.models.is_empty()
    }

    pub fn contains(&self, m: &Model) -> bool {
        self.models.binary_search(m).is_ok()
    }
}

/// Completion check: `model(a) = 1` iff some rule for `a` has a true body.
pub fn is_supported(program: &Program, model: &Model) -> bool {
    if model.len() != program.atom_count() {
        return false;
    }
    for atom in 0..program.atom_count() {
        let derivable = completion_bodies(program, atom)
            .expect("atom index in range")
            .into_iter()
            .any(|j| program.rules[j].body_holds_in(&model.bits));
        if model.bits[atom] != derivable {
            return false;
        }
    }
    true
}

/// Reduct check: `model` equals the least model of its Gelfond-Lifschitz
/// reduct.
pub fn is_stable(program: &Program, model: &Model) -> bool {
    if model.len() != program.atom_count() {
        return false;
    }
    let reduct = gl_reduct(program, model).expect("length checked");
    let lm = least_model(&reduct).expect("reduct is definite");
    lm == *model
}

/// All models of the requested semantics by a plain 2^n sweep.
pub fn enumerate_models(
    program: &Program,
    semantics: Semantics,
    respect_constraints: bool,
) -> Result<ModelSet, OracleError> {
    let n = program.atom_count();
    if n > MAX_SWEEP_ATOMS {
        return Err(OracleError::TooManyAtoms { n, limit: MAX_SWEEP_ATOMS });
    }
    let mut out = Vec::new();
    for code in 0u64..(1u64 << n) {
        let model = Model::new((0..n).map(|i| code >> i & 1 == 1).collect());
        if respect_constraints && !model.satisfies_constraints(program) {
            continue;
        }
        let ok = match semantics {
            Semantics::Supported => is_supported(program, &model),
            Semantics::Stable => is_stable(program, &model),
        };
        if ok {
            out.push(model);
        }
    }
    Ok(ModelSet::new(out))
}
