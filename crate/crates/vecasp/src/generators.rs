//! Instance generators for the benchmark families.
//!
//! - 3-coloring: three color atoms per vertex in an XOR pattern, plus
//!   color-clash constraints per edge;
//! - Hamiltonian cycle: Zhou's SAT-style conditions as a tight program
//!   (edge choice + visit-time propagation) with exclusion constraints;
//! - the `p4`/`p5` families: small non-tight programs with exponentially
//!   many supported models but a single stable model.

use rand::Rng;
use thiserror::Error;

use crate::model::{AtomTable, Constraint, Literal, Program, Rule};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("self-loop edge {v}->{v} is not 3-colorable")]
    SelfLoop { v: usize },
    #[error("vertex {v} out of range 1..={n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("n must be even and >= 2, got {n}")]
    BadN { n: usize },
    #[error("k must be >= 1, got {k}")]
    BadK { k: usize },
    #[error("edge list must be non-empty")]
    NoEdges,
    #[error("vertex count must be >= 1")]
    NoVertices,
}

/// Edges of the n-cycle 1-2-...-n-1.
pub fn cycle_graph(n: usize) -> Vec<(usize, usize)> {
    (1..n).map(|i| (i, i + 1)).chain(std::iter::once((n, 1))).collect()
}

/// The four-vertex graph used as the running 3-coloring example
/// (edges 1-2, 1-3, 2-3, 2-4, 4-3); it has six proper 3-colorings.
pub fn g1_edges() -> Vec<(usize, usize)> {
    vec![(1, 2), (1, 3), (2, 3), (2, 4), (4, 3)]
}

/// 3-coloring of an undirected graph on vertices `1..=n_vertices`: atoms
/// `col(i,k)` for colors `k` in 1..3, one XOR rule triple per vertex, and
/// per edge three clash constraints.
pub fn gen_3col(n_vertices: usize, edges: &[(usize, usize)]) -> Result<Program, GenError> {
    if n_vertices == 0 {
        return Err(GenError::NoVertices);
    }
    for &(a, b) in edges {
        if a == b {
            return Err(GenError::SelfLoop { v: a });
        }
        for v in [a, b] {
            if v == 0 || v > n_vertices {
                return Err(GenError::VertexOutOfRange { v, n: n_vertices });
            }
        }
    }
    let mut atoms = AtomTable::new();
    let col = |atoms: &mut AtomTable, i: usize, k: usize| atoms.intern(&format!("col({i},{k})"));
    for i in 1..=n_vertices {
        for k in 1..=3 {
            col(&mut atoms, i, k);
        }
    }
    let mut rules = Vec::new();
    for i in 1..=n_vertices {
        // col(i,k) <- not col(i,k+1), not col(i,k+2)  (indices mod 3)
        for k in 0..3 {
            let head = col(&mut atoms, i, k + 1);
            let body = vec![
                Literal::neg(col(&mut atoms, i, (k + 1) % 3 + 1)),
                Literal::neg(col(&mut atoms, i, (k + 2) % 3 + 1)),
            ];
            rules.push(Rule::new(head, body));
        }
    }
    let mut constraints = Vec::new();
    for &(a, b) in edges {
        for k in 1..=3 {
            let body = vec![
                Literal::pos(col(&mut atoms, a, k)),
                Literal::pos(col(&mut atoms, b, k)),
            ];
            constraints.push(Constraint::new(body).expect("two literals"));
        }
    }
    Program::new(atoms, rules, constraints).map_err(|_| GenError::NoVertices)
}

/// XOR choice rules over `group`: each atom holds iff all others are false.
fn one_of_rules(group: &[usize], rules: &mut Vec<Rule>) {
    for (t, &head) in group.iter().enumerate() {
        let body = group
            .iter()
            .enumerate()
            .filter(|&(s, _)| s != t)
            .map(|(_, &a)| Literal::neg(a))
            .collect();
        rules.push(Rule::new(head, body));
    }
}

/// At-most-one plus at-least-one constraints over `group`.
fn one_of_constraints(group: &[usize], constraints: &mut Vec<Constraint>) {
    for s in 0..group.len() {
        for t in s + 1..group.len() {
            constraints.push(
                Constraint::new(vec![Literal::pos(group[s]), Literal::pos(group[t])])
                    .expect("two literals"),
            );
        }
    }
    constraints.push(
        Constraint::new(group.iter().map(|&a| Literal::neg(a)).collect())
            .expect("group is non-empty"),
    );
}

/// Hamiltonian cycle encoding for a digraph on vertices `1..=n_vertices`
/// with the given edges. Atoms `h(i,j)` (edge in the cycle) and `u(j,q)`
/// (vertex `j` visited at time `q`); rules pick one outgoing edge per
/// vertex and propagate visit times from the fact `u(1,1)`; constraints
/// demand one incoming edge per vertex, a return to vertex 1 at time N,
/// and exactly one visit time per vertex.
///
/// A vertex with no outgoing (or no incoming) edge admits no cycle; that is
/// expressed by the always-violated constraint `<- u(1,1)` since `u(1,1)`
/// is a fact.
pub fn gen_hc(n_vertices: usize, edges: &[(usize, usize)]) -> Result<Program, GenError> {
    if n_vertices == 0 {
        return Err(GenError::NoVertices);
    }
    if edges.is_empty() {
        return Err(GenError::NoEdges);
    }
    for &(a, b) in edges {
        for v in [a, b] {
            if v == 0 || v > n_vertices {
                return Err(GenError::VertexOutOfRange { v, n: n_vertices });
            }
        }
    }
    let mut edge_list: Vec<(usize, usize)> = Vec::new();
    for &e in edges {
        if !edge_list.contains(&e) {
            edge_list.push(e);
        }
    }

    let nv = n_vertices;
    let mut atoms = AtomTable::new();
    let h = |atoms: &mut AtomTable, i: usize, j: usize| atoms.intern(&format!("h({i},{j})"));
    let u = |atoms: &mut AtomTable, j: usize, q: usize| atoms.intern(&format!("u({j},{q})"));
    for &(i, j) in &edge_list {
        h(&mut atoms, i, j);
    }
    for j in 1..=nv {
        for q in 1..=nv {
            u(&mut atoms, j, q);
        }
    }

    let mut rules = Vec::new();
    let mut constraints = Vec::new();
    let falsum = |atoms: &mut AtomTable| {
        Constraint::new(vec![Literal::pos(u(atoms, 1, 1))]).expect("one literal")
    };

    // (1) one outgoing edge per vertex, as XOR rules
    for i in 1..=nv {
        let outgoing: Vec<usize> = edge_list
            .iter()
            .filter(|&&(a, _)| a == i)
            .map(|&(a, b)| h(&mut atoms, a, b))
            .collect();
        if outgoing.is_empty() {
            constraints.push(falsum(&mut atoms));
        } else {
            one_of_rules(&outgoing, &mut rules);
        }
    }
    // (2) visit-time propagation
    for &(i, j) in &edge_list {
        for q in 2..=nv {
            let head = u(&mut atoms, j, q);
            let body = vec![
                Literal::pos(h(&mut atoms, i, j)),
                Literal::pos(u(&mut atoms, i, q - 1)),
            ];
            rules.push(Rule::new(head, body));
        }
    }
    // (3) the start
    rules.push(Rule::fact(u(&mut atoms, 1, 1)));

    // (4) one incoming edge per vertex
    for j in 1..=nv {
        let incoming: Vec<usize> = edge_list
            .iter()
            .filter(|&&(_, b)| b == j)
            .map(|&(a, b)| h(&mut atoms, a, b))
            .collect();
        if incoming.is_empty() {
            constraints.push(falsum(&mut atoms));
        } else {
            one_of_constraints(&incoming, &mut constraints);
        }
    }
    // (5) the chosen edge back to 1 closes the cycle at time N
    for &(i, j) in &edge_list {
        if j == 1 && i != 1 {
            let body = vec![
                Literal::pos(h(&mut atoms, i, 1)),
                Literal::neg(u(&mut atoms, i, nv)),
            ];
            constraints.push(Constraint::new(body).expect("two literals"));
        }
    }
    // (6) one visit time per vertex
    for i in 1..=nv {
        let times: Vec<usize> = (1..=nv).map(|q| u(&mut atoms, i, q)).collect();
        one_of_constraints(&times, &mut constraints);
    }

    Program::new(atoms, rules, constraints).map_err(|_| GenError::NoVertices)
}

/// All Hamiltonian cycles of the digraph by direct backtracking, each as
/// the edge list of the cycle starting from vertex 1.
pub fn hamiltonian_cycles(n_vertices: usize, edges: &[(usize, usize)]) -> Vec<Vec<(usize, usize)>> {
    if n_vertices == 0 {
        return Vec::new();
    }
    let mut adj = vec![Vec::new(); n_vertices + 1];
    for &(a, b) in edges {
        if a >= 1 && a <= n_vertices && b >= 1 && b <= n_vertices && !adj[a].contains(&b) {
            adj[a].push(b);
        }
    }
    for row in &mut adj {
        row.sort_unstable();
    }
    let mut visited = vec![false; n_vertices + 1];
    visited[1] = true;
    let mut path = vec![1usize];
    let mut found = Vec::new();
    fn extend(
        adj: &[Vec<usize>],
        visited: &mut [bool],
        path: &mut Vec<usize>,
        n: usize,
        found: &mut Vec<Vec<(usize, usize)>>,
    ) {
        let v = *path.last().unwrap();
        if path.len() == n {
            if adj[v].contains(&1) {
                let mut cycle: Vec<(usize, usize)> =
                    path.windows(2).map(|w| (w[0], w[1])).collect();
                cycle.push((v, 1));
                found.push(cycle);
            }
            return;
        }
        for &w in &adj[v] {
            if !visited[w] {
                visited[w] = true;
                path.push(w);
                extend(adj, visited, path, n, found);
                path.pop();
                visited[w] = false;
            }
        }
    }
    extend(&adj, &mut visited, &mut path, n_vertices, &mut found);
    found
}

fn p_family(n: usize, k: usize, neg_group: bool) -> Program {
    // shared skeleton of the p4 (k=1, single negative guard) and p5
    // (k self-loops, conjunctive negative guard) families
    let mut atoms = AtomTable::new();
    let a = |atoms: &mut AtomTable, i: usize| atoms.intern(&format!("a{i}"));
    for i in 0..=n + k {
        a(&mut atoms, i);
    }
    let mut rules = Vec::new();
    rules.push(Rule::new(0, (1..=n).map(Literal::pos).collect()));
    if neg_group {
        rules.push(Rule::new(0, (n + 1..=n + k).map(Literal::neg).collect()));
    } else {
        rules.push(Rule::new(0, vec![Literal::neg(n + 1)]));
    }
    for i in 1..=n / 2 {
        rules.push(Rule::new(2 * i - 1, vec![Literal::pos(0)]));
        rules.push(Rule::new(2 * i - 1, vec![Literal::pos(2 * i)]));
        rules.push(Rule::new(2 * i, vec![Literal::pos(0)]));
        rules.push(Rule::new(2 * i, vec![Literal::pos(2 * i - 1)]));
    }
    for j in 1..=k {
        rules.push(Rule::new(n + j, vec![Literal::pos(n + j)]));
    }
    Program::new(atoms, rules, Vec::new()).expect("indices in range")
}

/// The `p4` family: `n+2` atoms, one guarded top atom over `n` mutually
/// supporting atoms, and one self-loop atom. `2^{n/2}+1` supported models,
/// one stable model `{a0..an}`.
pub fn gen_p4(n: usize) -> Result<Program, GenError> {
    if n < 2 || n % 2 != 0 {
        return Err(GenError::BadN { n });
    }
    Ok(p_family(n, 1, false))
}

/// The `p5` family: like `p4` but with `k` self-loop atoms guarding `a0`
/// conjunctively. `n+k+1` atoms, `(2^{n/2}-1)(2^k-1)+1` supported models,
/// one stable model.
pub fn gen_p5(n: usize, k: usize) -> Result<Program, GenError> {
    if n < 2 || n % 2 != 0 {
        return Err(GenError::BadN { n });
    }
    if k < 1 {
        return Err(GenError::BadK { k });
    }
    Ok(p_family(n, k, true))
}

/// Random program over `n` atoms for property tests: each atom gets up to
/// `max_rules_per_atom` rules with random bodies, plus `n_constraints`
/// random constraints. Deterministic in the RNG.
pub fn random_program<R: Rng>(
    n: usize,
    max_rules_per_atom: usize,
    n_constraints: usize,
    rng: &mut R,
) -> Program {
    let mut atoms = AtomTable::new();
    for i in 0..n {
        atoms.intern(&format!("x{i}"));
    }
    let random_body = |rng: &mut R| -> Vec<Literal> {
        let len = rng.gen_range(0..=3.min(n));
        (0..len)
            .map(|_| {
                let atom = rng.gen_range(0..n);
                if rng.gen_bool(0.5) {
                    Literal::pos(atom)
                } else {
                    Literal::neg(atom)
                }
            })
            .collect()
    };
    let mut rules = Vec::new();
    for head in 0..n {
        for _ in 0..rng.gen_range(0..=max_rules_per_atom) {
            let body = random_body(rng);
            rules.push(Rule::new(head, body));
        }
    }
    let mut constraints = Vec::new();
    while constraints.len() < n_constraints {
        let mut body = random_body(rng);
        if body.is_empty() {
            body.push(Literal::pos(rng.gen_range(0..n)));
        }
        constraints.push(Constraint::new(body).expect("non-empty"));
    }
    Program::new(atoms, rules, constraints).expect("indices in range")
}
