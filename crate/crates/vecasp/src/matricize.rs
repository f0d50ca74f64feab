//! Matrix encoding of programs.
//!
//! A program with `m` rules over `n` atoms becomes a pair `(D, Q)`:
//! `D` is an `n x m` binary matrix mapping rules to their head atoms
//! (the disjunction structure of the completion), and `Q = [Q1 Q2]` is an
//! `m x 2n` binary matrix where row `j` marks the positive (`Q1`) and
//! negative (`Q2`) body atoms of rule `j`. Constraints get the same body
//! encoding in a separate `k x 2n` matrix.

use std::fmt::Write as _;

use crate::model::Program;

/// Row-compressed sparse boolean matrix: each row is a sorted list of the
/// column indices holding a 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseBoolMat {
    nrows: usize,
    ncols: usize,
    rows: Vec<Vec<usize>>,
}

impl SparseBoolMat {
    pub fn from_rows(nrows: usize, ncols: usize, mut rows: Vec<Vec<usize>>) -> Self {
        assert_eq!(rows.len(), nrows);
        for r in &mut rows {
            r.sort_unstable();
            r.dedup();
            debug_assert!(r.iter().all(|&c| c < ncols));
        }
        SparseBoolMat { nrows, ncols, rows }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, i: usize) -> &[usize] {
        &self.rows[i]
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].binary_search(&j).is_ok()
    }

    /// y = A x
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.ncols);
        self.rows.iter().map(|r| r.iter().map(|&c| x[c]).sum()).collect()
    }

    /// y = A^T x
    pub fn tr_mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.nrows);
        let mut y = vec![0.0; self.ncols];
        for (i, r) in self.rows.iter().enumerate() {
            let xi = x[i];
            if xi != 0.0 {
                for &c in r {
                    y[c] += xi;
                }
            }
        }
        y
    }

    pub fn row_sums(&self) -> Vec<usize> {
        self.rows.iter().map(Vec::len).collect()
    }

    /// Plain-text triplet dump: header `nrows ncols nnz`, then one
    /// `row col 1` line per nonzero (0-based). Debug aid only.
    pub fn to_triplet_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {} {}", self.nrows, self.ncols, self.nnz());
        for (i, r) in self.rows.iter().enumerate() {
            for &c in r {
                let _ = writeln!(out, "{i} {c} 1");
            }
        }
        out
    }
}

/// The pair `(D, Q1, Q2)` for a program, with `n` atoms and `m` rules.
#[derive(Debug, Clone)]
pub struct MatricizedProgram {
    /// `n x m`; `d[i][j] = 1` iff rule `j`'s head is atom `i`.
    pub d: SparseBoolMat,
    /// `m x n`; positive body occurrences.
    pub q1: SparseBoolMat,
    /// `m x n`; negative body occurrences.
    pub q2: SparseBoolMat,
    pub n: usize,
    pub m: usize,
}

/// Constraint bodies, same convention as `Q1`/`Q2`.
#[derive(Debug, Clone)]
pub struct ConstraintMatrix {
    pub qc1: SparseBoolMat,
    pub qc2: SparseBoolMat,
    pub k: usize,
    pub n: usize,
}

impl ConstraintMatrix {
    pub fn empty(n: usize) -> Self {
        ConstraintMatrix {
            qc1: SparseBoolMat::from_rows(0, n, vec![]),
            qc2: SparseBoolMat::from_rows(0, n, vec![]),
            k: 0,
            n,
        }
    }
}

/// Builds the matrix encoding of a program and its constraints.
pub fn matricize(program: &Program) -> (MatricizedProgram, ConstraintMatrix) {
    let n = program.atom_count();
    let m = program.rule_count();

    let mut d_rows = vec![Vec::new(); n];
    let mut q1_rows = Vec::with_capacity(m);
    let mut q2_rows = Vec::with_capacity(m);
    for (j, rule) in program.rules.iter().enumerate() {
        d_rows[rule.head].push(j);
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for lit in &rule.body {
            if lit.negated {
                neg.push(lit.atom);
            } else {
                pos.push(lit.atom);
            }
        }
        q1_rows.push(pos);
        q2_rows.push(neg);
    }

    let mut qc1_rows = Vec::with_capacity(program.constraints.len());
    let mut qc2_rows = Vec::with_capacity(program.constraints.len());
    for c in &program.constraints {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for lit in &c.body {
            if lit.negated {
                neg.push(lit.atom);
            } else {
                pos.push(lit.atom);
            }
        }
        qc1_rows.push(pos);
        qc2_rows.push(neg);
    }
    let k = program.constraints.len();

    (
        MatricizedProgram {
            d: SparseBoolMat::from_rows(n, m, d_rows),
            q1: SparseBoolMat::from_rows(m, n, q1_rows),
            q2: SparseBoolMat::from_rows(m, n, q2_rows),
            n,
            m,
        },
        ConstraintMatrix {
            qc1: SparseBoolMat::from_rows(k, n, qc1_rows),
            qc2: SparseBoolMat::from_rows(k, n, qc2_rows),
            k,
            n,
        },
    )
}

/// The body evaluation `M = 1 - min1(Q(1-u^delta))` rewritten as a single
/// ReLU layer: `M = ReLU(W u + b)` with `W = Q1 - Q2` and `b = 1 - Q1*1`.
#[derive(Debug, Clone)]
pub struct ReluView {
    /// Sparse rows of `W`; entries are -1, 0 (absent), or +1.
    pub w: Vec<Vec<(usize, i32)>>,
    pub b: Vec<i64>,
    pub m: usize,
    pub n: usize,
}

impl ReluView {
    /// `ReLU(W u + b)` component-wise.
    pub fn forward(&self, u: &[f64]) -> Vec<f64> {
        assert_eq!(u.len(), self.n);
        self.w
            .iter()
            .zip(&self.b)
            .map(|(row, &b)| {
                let z: f64 = row.iter().map(|&(c, w)| f64::from(w) * u[c]).sum::<f64>() + b as f64;
                z.max(0.0)
            })
            .collect()
    }
}

/// Extracts the ReLU-network view of a matricized program.
pub fn relu_view(mp: &MatricizedProgram) -> ReluView {
    let mut w = Vec::with_capacity(mp.m);
    let mut b = Vec::with_capacity(mp.m);
    for j in 0..mp.m {
        let mut row: Vec<(usize, i32)> = Vec::new();
        for &c in mp.q1.row(j) {
            row.push((c, 1));
        }
        for &c in mp.q2.row(j) {
            // a body with both `a` and `not a` cancels to weight 0
            match row.iter_mut().find(|(rc, _)| *rc == c) {
                Some(entry) => entry.1 -= 1,
                None => row.push((c, -1)),
            }
        }
        row.retain(|&(_, v)| v != 0);
        row.sort_unstable_by_key(|&(c, _)| c);
        w.push(row);
        b.push(1 - mp.q1.row(j).len() as i64);
    }
    ReluView { w, b, m: mp.m, n: mp.n }
}
