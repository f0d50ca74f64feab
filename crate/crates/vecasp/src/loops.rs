//! Positive dependency graph and loop extraction.
//!
//! A loop is a set of atoms that is strongly connected in the positive
//! dependency graph (singletons count only with a self-loop edge). Three
//! extraction strategies of increasing cost: one loop per nontrivial SCC
//! (Tarjan), one loop per elementary cycle (Johnson-style enumeration with
//! blocking), and exhaustively every loop (per-SCC subset sweep).
//!
//! Each loop carries its support rules: rules whose head lies inside the
//! loop and whose positive body lies entirely outside it.

use std::collections::BTreeSet;

use crate::model::Program;

/// Positive dependency graph: edge `head -> b` for every positive body atom
/// `b` of a rule for `head`.
#[derive(Debug, Clone)]
pub struct Pdg {
    pub n: usize,
    /// Sorted, duplicate-free adjacency per vertex.
    pub adj: Vec<Vec<usize>>,
}

pub fn build_pdg(program: &Program) -> Pdg {
    let n = program.atom_count();
    let mut adj = vec![Vec::new(); n];
    for r in &program.rules {
        for b in r.positive_body() {
            adj[r.head].push(b);
        }
    }
    for row in &mut adj {
        row.sort_unstable();
        row.dedup();
    }
    Pdg { n, adj }
}

impl Pdg {
    pub fn has_self_loop(&self, v: usize) -> bool {
        self.adj[v].binary_search(&v).is_ok()
    }

    /// Strongly connected components in reverse topological order
    /// (iterative Tarjan).
    pub fn sccs(&self) -> Vec<Vec<usize>> {
        const UNSET: usize = usize::MAX;
        let n = self.n;
        let mut index = vec![UNSET; n];
        let mut low = vec![0usize; n];
        let mut on_stack = vec![false; n];
        let mut stack: Vec<usize> = Vec::new();
        let mut next_index = 0usize;
        let mut comps = Vec::new();

        for root in 0..n {
            if index[root] != UNSET {
                continue;
            }
            // (vertex, next adjacency position)
            let mut call: Vec<(usize, usize)> = vec![(root, 0)];
            index[root] = next_index;
            low[root] = next_index;
            next_index += 1;
            stack.push(root);
            on_stack[root] = true;

            while let Some(&mut (v, ref mut ei)) = call.last_mut() {
                if *ei < self.adj[v].len() {
                    let w = self.adj[v][*ei];
                    *ei += 1;
                    if index[w] == UNSET {
                        index[w] = next_index;
                        low[w] = next_index;
                        next_index += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        call.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                } else {
                    call.pop();
                    if let Some(&(parent, _)) = call.last() {
                        low[parent] = low[parent].min(low[v]);
                    }
                    if low[v] == index[v] {
                        let mut comp = Vec::new();
                        loop {
                            let w = stack.pop().unwrap();
                            on_stack[w] = false;
                            comp.push(w);
                            if w == v {
                                break;
                            }
                        }
                        comp.sort_unstable();
                        comps.push(comp);
                    }
                }
            }
        }
        comps
    }
}

/// One loop: its atoms (sorted) and the indices of its support rules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopInfo {
    pub atoms: Vec<usize>,
    pub support_rules: Vec<usize>,
}

/// A collection of loops; `truncated` is set when an enumeration cap was
/// hit, so the set may be incomplete.
#[derive(Debug, Clone, Default)]
pub struct LoopSet {
    pub loops: Vec<LoopInfo>,
    pub truncated: bool,
}

impl LoopSet {
    pub fn len(&self) -> usize {
        self.loops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.loops.is_empty()
    }
}

/// Attaches support rules and fixes a deterministic order.
fn finish(program: &Program, mut atom_sets: Vec<Vec<usize>>, truncated: bool) -> LoopSet {
    atom_sets.sort();
    atom_sets.dedup();
    let n = program.atom_count();
    let mut member = vec![false; n];
    let loops = atom_sets
        .into_iter()
        .map(|atoms| {
            for &a in &atoms {
                member[a] = true;
            }
            let support_rules = (0..program.rules.len())
                .filter(|&j| {
                    let r = &program.rules[j];
                    member[r.head] && !r.positive_body().any(|b| member[b])
                })
                .collect();
            for &a in &atoms {
                member[a] = false;
            }
            LoopInfo { atoms, support_rules }
        })
        .collect();
    LoopSet { loops, truncated }
}

/// One loop per SCC of size ≥ 2, plus singleton SCCs with a self-loop.
pub fn loops_scc(program: &Program) -> LoopSet {
    let pdg = build_pdg(program);
    let sets: Vec<Vec<usize>> = pdg
        .sccs()
        .into_iter()
        .filter(|c| c.len() >= 2 || pdg.has_self_loop(c[0]))
        .collect();
    finish(program, sets, false)
}

/// One loop per elementary cycle of the pdg, deduplicated by vertex set.
/// Enumeration stops (and flags truncation) after `max_cycles` cycles.
pub fn loops_cycles(program: &Program, max_cycles: usize) -> LoopSet {
    assert!(max_cycles >= 1);
    let pdg = build_pdg(program);
    let mut enumerator = CycleEnumerator {
        pdg: &pdg,
        blocked: vec![false; pdg.n],
        b_lists: vec![BTreeSet::new(); pdg.n],
        path: Vec::new(),
        found: Vec::new(),
        remaining: max_cycles,
        truncated: false,
    };
    enumerator.run();
    let CycleEnumerator { found, truncated, .. } = enumerator;
    finish(program, found, truncated)
}

struct CycleEnumerator<'a> {
    pdg: &'a Pdg,
    blocked: Vec<bool>,
    b_lists: Vec<BTreeSet<usize>>,
    path: Vec<usize>,
    found: Vec<Vec<usize>>,
    remaining: usize,
    truncated: bool,
}

impl CycleEnumerator<'_> {
    /// Johnson's scheme: for each start vertex `s` in increasing order,
    /// enumerate the cycles through `s` confined to the SCC of `s` in the
    /// subgraph induced by vertices ≥ `s`.
    fn run(&mut self) {
        let mut radj = vec![Vec::new(); self.pdg.n];
        for (v, row) in self.pdg.adj.iter().enumerate() {
            for &w in row {
                radj[w].push(v);
            }
        }
        for s in 0..self.pdg.n {
            if self.truncated {
                return;
            }
            let Some(scc) = scc_containing(self.pdg, &radj, s) else { continue };
            let mut in_scc = vec![false; self.pdg.n];
            for &v in &scc {
                in_scc[v] = true;
            }
            for v in &scc {
                self.blocked[*v] = false;
                self.b_lists[*v].clear();
            }
            self.circuit(s, s, &in_scc);
        }
    }

    fn circuit(&mut self, v: usize, s: usize, in_scc: &[bool]) -> bool {
        if self.truncated {
            return true;
        }
        let mut closed = false;
        self.path.push(v);
        self.blocked[v] = true;
        for i in 0..self.pdg.adj[v].len() {
            let w = self.pdg.adj[v][i];
            if w < s || !in_scc[w] {
                continue;
            }
            if w == s {
                let mut cyc = self.path.clone();
                cyc.sort_unstable();
                self.found.push(cyc);
                closed = true;
                self.remaining -= 1;
                if self.remaining == 0 {
                    self.truncated = true;
                    break;
                }
            } else if !self.blocked[w] && self.circuit(w, s, in_scc) {
                closed = true;
                if self.truncated {
                    break;
                }
            }
        }
        if closed {
            self.unblock(v);
        } else {
            for i in 0..self.pdg.adj[v].len() {
                let w = self.pdg.adj[v][i];
                if w >= s && in_scc[w] {
                    self.b_lists[w].insert(v);
                }
            }
        }
        self.path.pop();
        closed
    }

    fn unblock(&mut self, v: usize) {
        self.blocked[v] = false;
        let pending: Vec<usize> = self.b_lists[v].iter().copied().collect();
        self.b_lists[v].clear();
        for w in pending {
            if self.blocked[w] {
                self.unblock(w);
            }
        }
    }
}

/// SCC of vertex `s` within the subgraph induced by vertices ≥ `s`, or
/// `None` when that SCC is trivial (size 1 without a self-loop).
fn scc_containing(pdg: &Pdg, radj: &[Vec<usize>], s: usize) -> Option<Vec<usize>> {
    let sweep = |edges: &[Vec<usize>]| -> Vec<bool> {
        let mut seen = vec![false; pdg.n];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &w in &edges[v] {
                if w >= s && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    };
    let fwd = sweep(&pdg.adj);
    let bwd = sweep(radj);
    let scc: Vec<usize> = (s..pdg.n).filter(|&v| fwd[v] && bwd[v]).collect();
    if scc.len() == 1 && !pdg.has_self_loop(s) {
        None
    } else {
        Some(scc)
    }
}

/// Cap on subsets examined per SCC by `loops_all`.
const ALL_LOOPS_WORK_CAP: u64 = 1 << 22;

/// Every loop of the program: for each SCC, all vertex subsets that induce
/// a strongly connected subgraph. Exponential; guarded by `max_loops` and a
/// per-SCC work cap, both reported through the truncation flag.
pub fn loops_all(program: &Program, max_loops: usize) -> LoopSet {
    let pdg = build_pdg(program);
    let mut sets: Vec<Vec<usize>> = Vec::new();
    let mut truncated = false;
    'outer: for comp in pdg.sccs() {
        if comp.len() == 1 {
            if pdg.has_self_loop(comp[0]) {
                if sets.len() == max_loops {
                    truncated = true;
                    break;
                }
                sets.push(comp);
            }
            continue;
        }
        if comp.len() as u32 >= 63 || (1u64 << comp.len()) > ALL_LOOPS_WORK_CAP {
            truncated = true;
            continue;
        }
        for mask in 1u64..(1u64 << comp.len()) {
            let subset: Vec<usize> = (0..comp.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| comp[i])
                .collect();
            if subset.len() == 1 && !pdg.has_self_loop(subset[0]) {
                continue;
            }
            if strongly_connected(&pdg, &subset) {
                if sets.len() == max_loops {
                    truncated = true;
                    break 'outer;
                }
                sets.push(subset);
            }
        }
    }
    finish(program, sets, truncated)
}

/// Is the subgraph induced by `subset` (sorted) strongly connected?
fn strongly_connected(pdg: &Pdg, subset: &[usize]) -> bool {
    // forward reachability from subset[0], then backward
    for forward in [true, false] {
        let mut seen = vec![false; subset.len()];
        seen[0] = true;
        let mut stack = vec![subset[0]];
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for (wi, &w) in subset.iter().enumerate() {
                if seen[wi] {
                    continue;
                }
                let edge = if forward {
                    pdg.adj[v].binary_search(&w).is_ok()
                } else {
                    pdg.adj[w].binary_search(&v).is_ok()
                };
                if edge {
                    seen[wi] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        if count != subset.len() {
            return false;
        }
    }
    true
}
