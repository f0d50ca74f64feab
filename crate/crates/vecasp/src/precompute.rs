//! Program shrinking before search.
//!
//! Atoms outside the least model of the positivized program are false in
//! every stable model, so rules and constraints mentioning them can be
//! simplified away up front. The least model itself is computed with the
//! Dowling-Gallier counting scheme in time linear in program size.

use std::collections::VecDeque;

use crate::model::{AtomTable, Constraint, Literal, Model, ModelError, Program, Rule};

/// Least model of a definite program (no negative body literals).
///
/// Each rule keeps a counter of not-yet-derived positive body atoms; an atom
/// enters the model when some rule for it reaches zero.
pub fn least_model(program: &Program) -> Result<Model, ModelError> {
    if let Some(j) = program
        .rules
        .iter()
        .position(|r| r.body.iter().any(|l| l.negated))
    {
        return Err(ModelError::NotDefinite { rule: j });
    }
    let n = program.atom_count();
    let mut counters: Vec<usize> = program.rules.iter().map(|r| r.body.len()).collect();
    // rules watching each atom
    let mut watchers: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (j, r) in program.rules.iter().enumerate() {
        for a in r.positive_body() {
            watchers[a].push(j);
        }
    }
    let mut truth = vec![false; n];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for (j, r) in program.rules.iter().enumerate() {
        if counters[j] == 0 && !truth[r.head] {
            truth[r.head] = true;
            queue.push_back(r.head);
        }
    }
    while let Some(a) = queue.pop_front() {
        for &j in &watchers[a] {
            // a rule may watch the same atom once per distinct occurrence;
            // bodies are duplicate-free so one decrement per atom suffices
            counters[j] -= 1;
            let h = program.rules[j].head;
            if counters[j] == 0 && !truth[h] {
                truth[h] = true;
                queue.push_back(h);
            }
        }
    }
    Ok(Model::new(truth))
}

/// Drops every negative literal from rule bodies. Constraints are dropped
/// too: they never derive atoms.
pub fn positivize(program: &Program) -> Program {
    let rules = program
        .rules
        .iter()
        .map(|r| Rule {
            head: r.head,
            body: r.body.iter().copied().filter(|l| !l.negated).collect(),
        })
        .collect();
    Program { atoms: program.atoms.clone(), rules, constraints: Vec::new() }
}

/// Atoms false in every stable model: the complement of `LM(positivize(P))`.
pub fn stable_false_atoms(program: &Program) -> Vec<usize> {
    let lm = least_model(&positivize(program)).expect("positivized program is definite");
    (0..program.atom_count()).filter(|&a| !lm.bits[a]).collect()
}

/// Outcome of shrinking. `kept_atoms[i]` is the original index of reduced
/// atom `i`; `infeasible` is set when some constraint body became empty
/// (i.e. it is violated by every stable model of the original program).
#[derive(Debug, Clone)]
pub struct PrecomputeResult {
    pub reduced: Program,
    pub kept_atoms: Vec<usize>,
    pub false_atoms: Vec<usize>,
    pub original_atoms: usize,
    pub infeasible: bool,
}

impl PrecomputeResult {
    /// Lifts a model of the reduced program back to the original atom set,
    /// with every removed atom false.
    pub fn expand_model(&self, reduced_model: &Model) -> Result<Model, ModelError> {
        if reduced_model.len() != self.kept_atoms.len() {
            return Err(ModelError::ModelLengthMismatch {
                got: reduced_model.len(),
                want: self.kept_atoms.len(),
            });
        }
        let mut bits = vec![false; self.original_atoms];
        for (i, &orig) in self.kept_atoms.iter().enumerate() {
            bits[orig] = reduced_model.bits[i];
        }
        Ok(Model::new(bits))
    }
}

/// Shrinks a program by the stable-false atoms `F`:
///
/// - rules with head in `F` or a positive body atom in `F` are dropped;
/// - negative literals over `F` are removed from surviving bodies (true);
/// - constraints with a positive atom in `F` are dropped (never violated);
/// - a constraint whose body empties out marks the program infeasible.
///
/// Stable models are preserved bijectively. Supported models of the reduced
/// program are still supported in the original, but supported models that
/// set an `F` atom true are lost.
pub fn precompute(program: &Program) -> PrecomputeResult {
    let false_atoms = stable_false_atoms(program);
    let n = program.atom_count();
    let mut is_false = vec![false; n];
    for &a in &false_atoms {
        is_false[a] = true;
    }
    let kept_atoms: Vec<usize> = (0..n).filter(|&a| !is_false[a]).collect();
    let mut remap = vec![usize::MAX; n];
    for (i, &orig) in kept_atoms.iter().enumerate() {
        remap[orig] = i;
    }

    let mut atoms = AtomTable::new();
    for &orig in &kept_atoms {
        atoms.intern(program.atoms.name(orig));
    }

    let mut rules = Vec::new();
    for r in &program.rules {
        if is_false[r.head] || r.positive_body().any(|a| is_false[a]) {
            continue;
        }
        let body: Vec<Literal> = r
            .body
            .iter()
            .filter(|l| !is_false[l.atom])
            .map(|l| Literal { atom: remap[l.atom], negated: l.negated })
            .collect();
        rules.push(Rule { head: remap[r.head], body });
    }

    let mut constraints = Vec::new();
    let mut infeasible = false;
    for c in &program.constraints {
        if c.body.iter().any(|l| !l.negated && is_false[l.atom]) {
            continue;
        }
        let body: Vec<Literal> = c
            .body
            .iter()
            .filter(|l| !is_false[l.atom])
            .map(|l| Literal { atom: remap[l.atom], negated: l.negated })
            .collect();
        if body.is_empty() {
            infeasible = true;
            continue;
        }
        constraints.push(Constraint { body });
    }

    let reduced = Program { atoms, rules, constraints };
    debug_assert!(reduced.validate().is_ok());
    PrecomputeResult {
        reduced,
        kept_atoms,
        false_atoms,
        original_atoms: n,
        infeasible,
    }
}
