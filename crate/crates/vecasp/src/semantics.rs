//! Vector-space evaluation of programs.
//!
//! The central chain, for an assignment vector `u` of length `n`:
//!
//! ```text
//! u_delta = [u; 1-u]
//! N = Q1(1-u) + Q2 u          false-literal counts per rule body
//! M = 1 - min1(N)             body truth values
//! d = D M                     true-disjunct counts per atom
//! ```
//!
//! For binary `u`, `u = min1(d)` holds exactly when `u` is a supported
//! model, and the same test through the reduct (`d+`) gives the same
//! answer, so either residual can drive the search.

use thiserror::Error;

use crate::matricize::MatricizedProgram;

#[derive(Debug, Error, PartialEq)]
pub enum SemanticsError {
    #[error("vector has length {got} but the program has {want} atoms")]
    LengthMismatch { got: usize, want: usize },
    #[error("vector component {index} = {value} is not binary")]
    NotBinary { index: usize, value: f64 },
}

/// `min(x, 1)` component activation. No clamping below zero: the cost
/// formulas never produce negative counts on valid inputs, and out-of-range
/// relaxed assignments are handled by the solver's perturbation instead.
#[inline]
pub fn min1(x: f64) -> f64 {
    x.min(1.0)
}

pub fn min1_vec(x: &[f64]) -> Vec<f64> {
    x.iter().map(|&v| min1(v)).collect()
}

/// `[u; 1-u]`.
pub fn dualize(u: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(2 * u.len());
    out.extend_from_slice(u);
    out.extend(u.iter().map(|v| 1.0 - v));
    out
}

/// Intermediate vectors of the evaluation chain.
#[derive(Debug, Clone)]
pub struct EvalVectors {
    pub u: Vec<f64>,
    pub u_delta: Vec<f64>,
    /// `N`: per-rule counts of false body literals.
    pub false_counts: Vec<f64>,
    /// `M = 1 - min1(N)`: per-rule body truth values.
    pub body_truth: Vec<f64>,
    /// `d = D M`: per-atom counts of true disjuncts.
    pub disjunct_counts: Vec<f64>,
}

fn check_len(mp: &MatricizedProgram, u: &[f64]) -> Result<(), SemanticsError> {
    if u.len() != mp.n {
        return Err(SemanticsError::LengthMismatch { got: u.len(), want: mp.n });
    }
    Ok(())
}

fn check_binary(u: &[f64]) -> Result<(), SemanticsError> {
    for (i, &v) in u.iter().enumerate() {
        if v != 0.0 && v != 1.0 {
            return Err(SemanticsError::NotBinary { index: i, value: v });
        }
    }
    Ok(())
}

/// `N = Q1(1-u) + Q2 u` without materializing the dual vector.
pub fn false_counts(mp: &MatricizedProgram, u: &[f64]) -> Vec<f64> {
    let one_minus_u: Vec<f64> = u.iter().map(|v| 1.0 - v).collect();
    let mut n = mp.q1.mul_vec(&one_minus_u);
    let n2 = mp.q2.mul_vec(u);
    for (a, b) in n.iter_mut().zip(n2) {
        *a += b;
    }
    n
}

/// Runs the evaluation chain on a (possibly relaxed) assignment.
pub fn eval_vectors(mp: &MatricizedProgram, u: &[f64]) -> Result<EvalVectors, SemanticsError> {
    check_len(mp, u)?;
    let n_vec = false_counts(mp, u);
    let body_truth: Vec<f64> = n_vec.iter().map(|&x| 1.0 - min1(x)).collect();
    let disjunct_counts = mp.d.mul_vec(&body_truth);
    Ok(EvalVectors {
        u: u.to_vec(),
        u_delta: dualize(u),
        false_counts: n_vec,
        body_truth,
        disjunct_counts,
    })
}

/// `|| u - min1(d) ||_2` for a binary assignment; zero exactly on supported
/// models.
pub fn supported_residual(mp: &MatricizedProgram, u: &[f64]) -> Result<f64, SemanticsError> {
    check_len(mp, u)?;
    check_binary(u)?;
    let ev = eval_vectors(mp, u)?;
    let sq: f64 = ev
        .disjunct_counts
        .iter()
        .zip(u)
        .map(|(&d, &ui)| {
            let e = ui - min1(d);
            e * e
        })
        .sum();
    Ok(sq.sqrt())
}

/// Same test routed through the reduct: `M2 = 1 - min1(Q2 u)` marks rules
/// surviving the reduct, `M1 = M2 .* (1 - min1(Q1(1-u)))` their body truth,
/// and `d+ = D M1` replaces `d`.
pub fn reduct_residual(mp: &MatricizedProgram, u: &[f64]) -> Result<f64, SemanticsError> {
    check_len(mp, u)?;
    check_binary(u)?;
    let m2: Vec<f64> = mp.q2.mul_vec(u).iter().map(|&x| 1.0 - min1(x)).collect();
    let one_minus_u: Vec<f64> = u.iter().map(|v| 1.0 - v).collect();
    let m1: Vec<f64> = mp
        .q1
        .mul_vec(&one_minus_u)
        .iter()
        .zip(&m2)
        .map(|(&x, &m2j)| m2j * (1.0 - min1(x)))
        .collect();
    let d_plus = mp.d.mul_vec(&m1);
    let sq: f64 = d_plus
        .iter()
        .zip(u)
        .map(|(&d, &ui)| {
            let e = ui - min1(d);
            e * e
        })
        .sum();
    Ok(sq.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matricize::matricize;
    use crate::parser::parse_program;

    fn p0_mats() -> MatricizedProgram {
        let p = parse_program("p :- q, not r.\np :- not q.\nq.").unwrap();
        matricize(&p).0
    }

    #[test]
    fn dualize_examples() {
        assert_eq!(dualize(&[1.0, 1.0, 0.0]), vec![1.0, 1.0, 0.0, 0.0, 0.0, 1.0]);
        assert_eq!(dualize(&[]), Vec::<f64>::new());
        assert_eq!(dualize(&[0.5]), vec![0.5, 0.5]);
    }

    #[test]
    fn eval_vectors_p0_at_supported_model() {
        let mp = p0_mats();
        let ev = eval_vectors(&mp, &[1.0, 1.0, 0.0]).unwrap();
        assert_eq!(ev.false_counts, vec![0.0, 1.0, 0.0]);
        assert_eq!(ev.body_truth, vec![1.0, 0.0, 1.0]);
        assert_eq!(ev.disjunct_counts, vec![1.0, 1.0, 0.0]);
    }

    #[test]
    fn eval_vectors_p0_all_false() {
        let mp = p0_mats();
        let ev = eval_vectors(&mp, &[0.0, 0.0, 0.0]).unwrap();
        assert_eq!(ev.disjunct_counts, vec![1.0, 1.0, 0.0]);
    }

    #[test]
    fn facts_only_bodies_all_true() {
        let p = parse_program("a.\nb.").unwrap();
        let (mp, _) = matricize(&p);
        let ev = eval_vectors(&mp, &[0.3, 0.9]).unwrap();
        assert_eq!(ev.body_truth, vec![1.0, 1.0]);
    }

    #[test]
    fn supported_residual_examples() {
        let mp = p0_mats();
        assert_eq!(supported_residual(&mp, &[1.0, 1.0, 0.0]).unwrap(), 0.0);
        let r = supported_residual(&mp, &[0.0, 0.0, 0.0]).unwrap();
        assert!((r - 2.0_f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn supported_residual_empty_program() {
        let (mp, _) = matricize(&parse_program("").unwrap());
        assert_eq!(supported_residual(&mp, &[]).unwrap(), 0.0);
    }

    #[test]
    fn residuals_reject_non_binary() {
        let mp = p0_mats();
        assert!(supported_residual(&mp, &[0.5, 0.0, 0.0]).is_err());
        assert!(reduct_residual(&mp, &[0.5, 0.0, 0.0]).is_err());
        assert!(supported_residual(&mp, &[1.0]).is_err());
    }

    #[test]
    fn reduct_residual_p0() {
        let mp = p0_mats();
        assert_eq!(reduct_residual(&mp, &[1.0, 1.0, 0.0]).unwrap(), 0.0);
    }

    #[test]
    fn residuals_agree_on_all_binary_vectors() {
        let p = parse_program(
            "a :- b, not c.\nb :- not a.\nc :- c, not b.\nd :- a, c.\nb :- d, not d.",
        )
        .unwrap();
        let (mp, _) = matricize(&p);
        for bits in 0..16u32 {
            let u: Vec<f64> = (0..4).map(|i| f64::from(bits >> i & 1)).collect();
            assert_eq!(
                supported_residual(&mp, &u).unwrap(),
                reduct_residual(&mp, &u).unwrap()
            );
        }
    }

    #[test]
    fn adding_a_true_bodied_rule_increases_d() {
        let before = parse_program("a :- b.\nb.").unwrap();
        let after = parse_program("a :- b.\nb.\na.").unwrap();
        let u = [0.0, 1.0];
        let d0 = eval_vectors(&matricize(&before).0, &u).unwrap().disjunct_counts;
        let d1 = eval_vectors(&matricize(&after).0, &u).unwrap().disjunct_counts;
        assert!(d1[0] > d0[0]);
    }
}
