//! Text format for ground programs (`.lp` files).
//!
//! Grammar:
//!
//! ```text
//! statement  := rule | constraint
//! rule       := atom (":-" body)? "."
//! constraint := ":-" body "."
//! body       := literal ("," literal)*
//! literal    := ("not" ws)? atom
//! atom       := [a-z][A-Za-z0-9_]* ( "(" args ")" )?
//! ```
//!
//! A parenthesized argument list is treated as part of the opaque atom name,
//! so `h(1,2)` is a single atom. `%` starts a comment to end of line.
//! Atoms are ordered by first textual occurrence.

use std::fmt;

use thiserror::Error;

use crate::model::{AtomTable, Constraint, Literal, Program, Rule};

/// Syntax error with a 1-based source location.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at {line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

struct Scanner<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    column: usize,
}

impl<'a> Scanner<'a> {
    fn new(src: &'a str) -> Self {
        Scanner { src: src.as_bytes(), pos: 0, line: 1, column: 1 }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError { line: self.line, column: self.column, message: message.into() }
    }

    fn skip_trivia(&mut self) {
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_whitespace() => {
                    self.bump();
                }
                Some(b'%') => {
                    while let Some(c) = self.peek() {
                        if c == b'\n' {
                            break;
                        }
                        self.bump();
                    }
                }
                _ => break,
            }
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8, what: &str) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    /// `":-"` if present.
    fn eat_arrow(&mut self) -> bool {
        if self.src[self.pos..].starts_with(b":-") {
            self.bump();
            self.bump();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_lowercase() => {}
            _ => return Err(self.error("expected atom (lowercase identifier)")),
        }
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == b'_' {
                self.bump();
            } else {
                break;
            }
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn atom(&mut self) -> Result<String, ParseError> {
        let mut name = self.ident()?;
        if self.peek() == Some(b'(') {
            let start = self.pos;
            self.bump();
            loop {
                match self.peek() {
                    Some(b')') => {
                        self.bump();
                        break;
                    }
                    Some(b'(') | Some(b'\n') | None => {
                        return Err(self.error("unterminated atom argument list"));
                    }
                    _ => {
                        self.bump();
                    }
                }
            }
            name.push_str(&String::from_utf8_lossy(&self.src[start..self.pos]));
        }
        Ok(name)
    }

    fn literal(&mut self, atoms: &mut AtomTable) -> Result<Literal, ParseError> {
        let name = self.atom()?;
        if name == "not" {
            self.skip_trivia();
            let inner = self.atom()?;
            if inner == "not" {
                return Err(self.error("'not' is a keyword, not an atom"));
            }
            Ok(Literal::neg(atoms.intern(&inner)))
        } else {
            Ok(Literal::pos(atoms.intern(&name)))
        }
    }

    fn body(&mut self, atoms: &mut AtomTable) -> Result<Vec<Literal>, ParseError> {
        let mut lits = vec![self.literal(atoms)?];
        loop {
            self.skip_trivia();
            if self.eat(b',') {
                self.skip_trivia();
                lits.push(self.literal(atoms)?);
            } else {
                break;
            }
        }
        Ok(lits)
    }
}

/// Parses a textual ground program.
pub fn parse_program(source: &str) -> Result<Program, ParseError> {
    let mut sc = Scanner::new(source);
    let mut atoms = AtomTable::new();
    let mut rules = Vec::new();
    let mut constraints = Vec::new();

    loop {
        sc.skip_trivia();
        if sc.peek().is_none() {
            break;
        }
        if sc.eat_arrow() {
            sc.skip_trivia();
            let body = sc.body(&mut atoms)?;
            sc.skip_trivia();
            sc.expect(b'.', "'.' to terminate constraint")?;
            constraints.push(
                Constraint::new(body)
                    .map_err(|_| sc.error("constraint body must be non-empty"))?,
            );
        } else {
            let head_name = sc.atom()?;
            if head_name == "not" {
                return Err(sc.error("'not' is a keyword, not an atom"));
            }
            let head = atoms.intern(&head_name);
            sc.skip_trivia();
            let body = if sc.eat_arrow() {
                sc.skip_trivia();
                sc.body(&mut atoms)?
            } else {
                Vec::new()
            };
            sc.skip_trivia();
            sc.expect(b'.', "'.' to terminate rule")?;
            rules.push(Rule::new(head, body));
        }
    }

    Ok(Program { atoms, rules, constraints })
}

fn write_literal(out: &mut String, atoms: &AtomTable, lit: &Literal) {
    if lit.negated {
        out.push_str("not ");
    }
    out.push_str(atoms.name(lit.atom));
}

fn write_body(out: &mut String, atoms: &AtomTable, body: &[Literal]) {
    for (i, lit) in body.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        write_literal(out, atoms, lit);
    }
}

/// Serializes a program so that `parse_program(render_program(p))` is
/// structurally identical to `p`, provided the atom table order equals the
/// order of first occurrence in rules/constraints (true of everything this
/// crate constructs).
pub fn render_program(program: &Program) -> String {
    let mut out = String::new();
    for r in &program.rules {
        out.push_str(program.atoms.name(r.head));
        if !r.body.is_empty() {
            out.push_str(" :- ");
            write_body(&mut out, &program.atoms, &r.body);
        }
        out.push_str(".\n");
    }
    for c in &program.constraints {
        out.push_str(":- ");
        write_body(&mut out, &program.atoms, &c.body);
        out.push_str(".\n");
    }
    out
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_program(self))
    }
}
