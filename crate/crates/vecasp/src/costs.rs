//! Differentiable cost functions whose roots are the models.
//!
//! For a relaxed assignment `u`:
//!
//! - the supported-model cost is `0.5(||u - min1(d)||^2 + l2 ||u(1-u)||^2)`,
//!   zero on binary `u` exactly at supported models;
//! - the constraint cost adds `1 - min1(Nc)` per constraint, zero when some
//!   body literal is false;
//! - the loop cost adds `1 - min1(A_s)` per loop `s`, where
//!   `A_s = sum_{i in L_s}(1 - u_i) + sum_{j in sup(L_s)} M_j`, zero when
//!   `u` satisfies the loop formula (some loop atom false, or some support
//!   body true).
//!
//! Gradients follow the chain rule with the one-sided convention
//! `[x <= 1]` for the slope of `min1` at the kink. All evaluation is
//! sparse-aware: cost is linear in the number of matrix nonzeros.

use crate::loops::LoopSet;
use crate::matricize::{ConstraintMatrix, MatricizedProgram};
use crate::semantics::{false_counts, min1, SemanticsError};

/// Weights `(l2, l3, l4)` for the regularizer, constraint, and loop terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostWeights {
    pub l2: f64,
    pub l3: f64,
    pub l4: f64,
}

impl Default for CostWeights {
    fn default() -> Self {
        CostWeights { l2: 0.1, l3: 0.1, l4: 1.0 }
    }
}

/// Cost parts and gradient at one point. `j_sq` and `j_nrm` are stored
/// unhalved, so `total = 0.5 (j_sq + l2 j_nrm) + l3 j_c + l4 j_lf`.
#[derive(Debug, Clone)]
pub struct CostBreakdown {
    pub total: f64,
    pub j_sq: f64,
    pub j_nrm: f64,
    pub j_c: f64,
    pub j_lf: f64,
    pub grad: Vec<f64>,
}

fn check_len(n: usize, u: &[f64]) -> Result<(), SemanticsError> {
    if u.len() != n {
        return Err(SemanticsError::LengthMismatch { got: u.len(), want: n });
    }
    Ok(())
}

#[inline]
fn slope(x: f64) -> f64 {
    if x <= 1.0 {
        1.0
    } else {
        0.0
    }
}

struct SuParts {
    j_sq: f64,
    j_nrm: f64,
    /// gradient of `0.5 (j_sq + l2 j_nrm)`
    grad: Vec<f64>,
    /// `N` saved for reuse by the loop term
    n_vec: Vec<f64>,
}

fn su_parts(mp: &MatricizedProgram, u: &[f64], l2: f64) -> SuParts {
    let n_vec = false_counts(mp, u);
    let m_vec: Vec<f64> = n_vec.iter().map(|&x| 1.0 - min1(x)).collect();
    let d_vec = mp.d.mul_vec(&m_vec);

    // E = min1(d) - u, F = u(1-u)
    let e: Vec<f64> = d_vec.iter().zip(u).map(|(&d, &ui)| min1(d) - ui).collect();
    let f: Vec<f64> = u.iter().map(|&ui| ui * (1.0 - ui)).collect();
    let j_sq: f64 = e.iter().map(|&x| x * x).sum();
    let j_nrm: f64 = f.iter().map(|&x| x * x).sum();

    // grad = (Q1-Q2)^T ([N<=1] .* D^T ([d<=1] .* E)) - E + l2 (1-2u) .* F
    let t1: Vec<f64> = d_vec.iter().zip(&e).map(|(&d, &ei)| slope(d) * ei).collect();
    let t2 = mp.d.tr_mul_vec(&t1);
    let t3: Vec<f64> = n_vec.iter().zip(&t2).map(|(&nj, &tj)| slope(nj) * tj).collect();
    let g1 = mp.q1.tr_mul_vec(&t3);
    let g2 = mp.q2.tr_mul_vec(&t3);
    let grad: Vec<f64> = (0..mp.n)
        .map(|i| g1[i] - g2[i] - e[i] + l2 * (1.0 - 2.0 * u[i]) * f[i])
        .collect();
    SuParts { j_sq, j_nrm, grad, n_vec }
}

/// Supported-model cost and its gradient.
pub fn cost_su(
    mp: &MatricizedProgram,
    u: &[f64],
    l2: f64,
) -> Result<(f64, Vec<f64>), SemanticsError> {
    check_len(mp.n, u)?;
    let parts = su_parts(mp, u, l2);
    Ok((0.5 * (parts.j_sq + l2 * parts.j_nrm), parts.grad))
}

/// Constraint cost `sum_c (1 - min1(Nc))` and its gradient.
pub fn cost_constraints(
    cm: &ConstraintMatrix,
    u: &[f64],
) -> Result<(f64, Vec<f64>), SemanticsError> {
    check_len(cm.n, u)?;
    let one_minus_u: Vec<f64> = u.iter().map(|v| 1.0 - v).collect();
    let mut nc = cm.qc1.mul_vec(&one_minus_u);
    for (a, b) in nc.iter_mut().zip(cm.qc2.mul_vec(u)) {
        *a += b;
    }
    let value: f64 = nc.iter().map(|&x| 1.0 - min1(x)).sum();
    // grad = (Qc1 - Qc2)^T [Nc <= 1]
    let active: Vec<f64> = nc.iter().map(|&x| slope(x)).collect();
    let g1 = cm.qc1.tr_mul_vec(&active);
    let g2 = cm.qc2.tr_mul_vec(&active);
    let grad = (0..cm.n).map(|i| g1[i] - g2[i]).collect();
    Ok((value, grad))
}

fn lf_parts(mp: &MatricizedProgram, loops: &LoopSet, u: &[f64], n_vec: &[f64]) -> (f64, Vec<f64>) {
    let m_vec: Vec<f64> = n_vec.iter().map(|&x| 1.0 - min1(x)).collect();
    let mut value = 0.0;
    let mut grad = vec![0.0; mp.n];
    for info in &loops.loops {
        let a_s: f64 = info.atoms.iter().map(|&i| 1.0 - u[i]).sum::<f64>()
            + info.support_rules.iter().map(|&j| m_vec[j]).sum::<f64>();
        value += 1.0 - min1(a_s);
        let act = slope(a_s);
        if act == 0.0 {
            continue;
        }
        for &i in &info.atoms {
            grad[i] += act;
        }
        for &j in &info.support_rules {
            if n_vec[j] <= 1.0 {
                for &c in mp.q1.row(j) {
                    grad[c] -= act;
                }
                for &c in mp.q2.row(j) {
                    grad[c] += act;
                }
            }
        }
    }
    (value, grad)
}

/// Loop-formula cost `sum_s (1 - min1(A_s))` and its gradient.
pub fn cost_lf(
    mp: &MatricizedProgram,
    loops: &LoopSet,
    u: &[f64],
) -> Result<(f64, Vec<f64>), SemanticsError> {
    check_len(mp.n, u)?;
    let n_vec = false_counts(mp, u);
    Ok(lf_parts(mp, loops, u, &n_vec))
}

/// Full objective `0.5(j_sq + l2 j_nrm) + l3 j_c + l4 j_lf` with gradient.
/// An empty constraint matrix or loop set simply drops its term.
pub fn cost_total(
    mp: &MatricizedProgram,
    cm: &ConstraintMatrix,
    loops: &LoopSet,
    weights: CostWeights,
    u: &[f64],
) -> Result<CostBreakdown, SemanticsError> {
    check_len(mp.n, u)?;
    check_len(cm.n, u)?;
    let su = su_parts(mp, u, weights.l2);
    let (j_c, g_c) = if cm.k == 0 {
        (0.0, vec![0.0; mp.n])
    } else {
        cost_constraints(cm, u)?
    };
    let (j_lf, g_lf) = if loops.is_empty() {
        (0.0, vec![0.0; mp.n])
    } else {
        lf_parts(mp, loops, u, &su.n_vec)
    };
    let total = 0.5 * (su.j_sq + weights.l2 * su.j_nrm) + weights.l3 * j_c + weights.l4 * j_lf;
    let grad = (0..mp.n)
        .map(|i| su.grad[i] + weights.l3 * g_c[i] + weights.l4 * g_lf[i])
        .collect();
    Ok(CostBreakdown { total, j_sq: su.j_sq, j_nrm: su.j_nrm, j_c, j_lf, grad })
}
