//! Symbolic representation of ground normal logic programs.
//!
//! A program is a set of rules `a <- G` with an atomic head and a body of
//! literals, plus headless constraints `<- G`. Atom and rule ordering is
//! fixed at construction because the matrix encoding depends on it.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("atom index {index} out of range for atom table of size {size}")]
    AtomOutOfRange { index: usize, size: usize },
    #[error("model has {got} bits but the program has {want} atoms")]
    ModelLengthMismatch { got: usize, want: usize },
    #[error("constraint body must be non-empty")]
    EmptyConstraint,
    #[error("program is not definite: rule {rule} has a negative body literal")]
    NotDefinite { rule: usize },
}

/// Ordered atom table. The position of an atom never changes once interned;
/// matrix columns and model vectors are laid out in this order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AtomTable {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl AtomTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the index of `name`, interning it at the next position if new.
    pub fn intern(&mut self, name: &str) -> usize {
        if let Some(&i) = self.index.get(name) {
            return i;
        }
        let i = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), i);
        i
    }

    pub fn get(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

/// An atom or its negation, by atom index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub atom: usize,
    pub negated: bool,
}

impl Literal {
    pub fn pos(atom: usize) -> Self {
        Literal { atom, negated: false }
    }

    pub fn neg(atom: usize) -> Self {
        Literal { atom, negated: true }
    }

    /// Truth value of the literal under a binary assignment.
    pub fn holds_in(&self, bits: &[bool]) -> bool {
        bits[self.atom] != self.negated
    }
}

/// A rule `head <- body`. An empty body is a fact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub head: usize,
    pub body: Vec<Literal>,
}

impl Rule {
    /// Builds a rule, collapsing duplicate body literals. A body containing
    /// both `a` and `not a` is kept as-is; it is simply never satisfiable.
    pub fn new(head: usize, body: Vec<Literal>) -> Self {
        let mut seen = Vec::new();
        for lit in body {
            if !seen.contains(&lit) {
                seen.push(lit);
            }
        }
        Rule { head, body: seen }
    }

    pub fn fact(head: usize) -> Self {
        Rule { head, body: Vec::new() }
    }

    pub fn body_holds_in(&self, bits: &[bool]) -> bool {
        self.body.iter().all(|l| l.holds_in(bits))
    }

    /// Positive body atoms.
    pub fn positive_body(&self) -> impl Iterator<Item = usize> + '_ {
        self.body.iter().filter(|l| !l.negated).map(|l| l.atom)
    }
}

/// A headless rule `<- body`; models must falsify the body.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub body: Vec<Literal>,
}

impl Constraint {
    pub fn new(body: Vec<Literal>) -> Result<Self, ModelError> {
        if body.is_empty() {
            return Err(ModelError::EmptyConstraint);
        }
        let mut seen = Vec::new();
        for lit in body {
            if !seen.contains(&lit) {
                seen.push(lit);
            }
        }
        Ok(Constraint { body: seen })
    }

    /// A constraint is violated when its body is true.
    pub fn violated_by(&self, bits: &[bool]) -> bool {
        self.body.iter().all(|l| l.holds_in(bits))
    }
}

/// A propositional normal logic program with constraints.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Program {
    pub atoms: AtomTable,
    pub rules: Vec<Rule>,
    pub constraints: Vec<Constraint>,
}

impl Program {
    pub fn new(
        atoms: AtomTable,
        rules: Vec<Rule>,
        constraints: Vec<Constraint>,
    ) -> Result<Self, ModelError> {
        let p = Program { atoms, rules, constraints };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        let n = self.atoms.len();
        let check = |index: usize| {
            if index < n {
                Ok(())
            } else {
                Err(ModelError::AtomOutOfRange { index, size: n })
            }
        };
        for r in &self.rules {
            check(r.head)?;
            for l in &r.body {
                check(l.atom)?;
            }
        }
        for c in &self.constraints {
            for l in &c.body {
                check(l.atom)?;
            }
        }
        Ok(())
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn rule_count(&self) -> usize {
        self.rules.len()
    }

    /// True when no rule body contains a negative literal.
    pub fn is_definite(&self) -> bool {
        self.rules.iter().all(|r| r.body.iter().all(|l| !l.negated))
    }
}

/// A binary assignment over the atoms of a program.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Model {
    pub bits: Vec<bool>,
}

impl Model {
    pub fn new(bits: Vec<bool>) -> Self {
        Model { bits }
    }

    pub fn all_false(n: usize) -> Self {
        Model { bits: vec![false; n] }
    }

    /// Model from the set of true atom indices.
    pub fn from_true_atoms(n: usize, true_atoms: &[usize]) -> Self {
        let mut bits = vec![false; n];
        for &a in true_atoms {
            bits[a] = true;
        }
        Model { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn true_atoms(&self) -> Vec<usize> {
        (0..self.bits.len()).filter(|&i| self.bits[i]).collect()
    }

    /// Atom names that are true, in table order.
    pub fn true_names(&self, atoms: &AtomTable) -> Vec<String> {
        self.true_atoms().iter().map(|&i| atoms.name(i).to_string()).collect()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.bits.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect()
    }

    pub fn satisfies_constraints(&self, program: &Program) -> bool {
        program.constraints.iter().all(|c| !c.violated_by(&self.bits))
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, b) in self.bits.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", u8::from(*b))?;
        }
        write!(f, "]")
    }
}

/// Indices of all rules whose head is `atom`, in program order. An empty
/// result means the completed rule for the atom is `a <-> false`.
pub fn completion_bodies(program: &Program, atom: usize) -> Result<Vec<usize>, ModelError> {
    if atom >= program.atom_count() {
        return Err(ModelError::AtomOutOfRange { index: atom, size: program.atom_count() });
    }
    Ok((0..program.rules.len()).filter(|&j| program.rules[j].head == atom).collect())
}

/// Gelfond-Lifschitz reduct: drop every rule whose body has a negative
/// literal false in `model`, then delete all negative literals from the
/// remaining rules. The result is definite and carries no constraints.
pub fn gl_reduct(program: &Program, model: &Model) -> Result<Program, ModelError> {
    if model.len() != program.atom_count() {
        return Err(ModelError::ModelLengthMismatch {
            got: model.len(),
            want: program.atom_count(),
        });
    }
    let mut rules = Vec::new();
    for r in &program.rules {
        let blocked = r.body.iter().any(|l| l.negated && model.bits[l.atom]);
        if blocked {
            continue;
        }
        let body: Vec<Literal> = r.body.iter().copied().filter(|l| !l.negated).collect();
        rules.push(Rule { head: r.head, body });
    }
    Ok(Program { atoms: program.atoms.clone(), rules, constraints: Vec::new() })
}
