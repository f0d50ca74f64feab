//! Cost-minimization search for supported and stable models.
//!
//! The search runs Newton-style updates `u <- u - alpha (J / g.g) g` on the
//! total cost, thresholding the relaxed vector into binary candidates on a
//! grid after every iteration. A candidate with zero error is a supported
//! model of the working program satisfying its constraints; in stable mode
//! it is additionally verified with the exact reduct check, so accepted
//! models are always sound regardless of which loop heuristic guided the
//! gradient. Restarts perturb the current vector with fresh noise drawn
//! from a per-try RNG stream.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use thiserror::Error;

use crate::costs::{cost_total, CostWeights};
use crate::loops::{loops_all, loops_cycles, loops_scc, LoopSet};
use crate::matricize::{matricize, MatricizedProgram};
use crate::model::{Constraint, Literal, Model, Program};
use crate::oracle::{is_stable, is_supported};
use crate::precompute::precompute;
use crate::semantics::min1;

#[derive(Debug, Error, PartialEq)]
pub enum SolverError {
    #[error("invalid solver options: {0}")]
    InvalidOptions(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Supported,
    Stable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LfHeuristic {
    None,
    Max,
    Min,
    All,
}

#[derive(Debug, Clone)]
pub struct SolverOptions {
    pub mode: Mode,
    pub lf_heuristic: LfHeuristic,
    pub use_precompute: bool,
    pub max_itr: usize,
    pub max_try: usize,
    pub weights: CostWeights,
    pub alpha: f64,
    pub seed: u64,
    pub max_cycles: usize,
    pub notches: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            mode: Mode::Supported,
            lf_heuristic: LfHeuristic::None,
            use_precompute: false,
            max_itr: 50,
            max_try: 20,
            weights: CostWeights::default(),
            alpha: 1.0,
            seed: 0,
            max_cycles: 100_000,
            notches: 20,
        }
    }
}

impl SolverOptions {
    fn validate(&self) -> Result<(), SolverError> {
        if self.max_itr < 1 {
            return Err(SolverError::InvalidOptions("max_itr must be >= 1".into()));
        }
        if self.max_try < 1 {
            return Err(SolverError::InvalidOptions("max_try must be >= 1".into()));
        }
        if !(self.alpha > 0.0) {
            return Err(SolverError::InvalidOptions("alpha must be > 0".into()));
        }
        if self.notches < 2 {
            return Err(SolverError::InvalidOptions("notches must be >= 2".into()));
        }
        Ok(())
    }
}

/// One line of the per-iteration trace.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    pub try_index: usize,
    pub itr: usize,
    pub total: f64,
    pub j_sq: f64,
    pub j_nrm: f64,
    pub j_c: f64,
    pub j_lf: f64,
    pub cand_err: f64,
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    /// Accepted model over the *original* atom set, if any.
    pub model: Option<Model>,
    /// Whether the accepted model passed the exact reduct check.
    pub stable: bool,
    /// Tries consumed (1-based count).
    pub tries: usize,
    pub seconds: f64,
    pub trace: Vec<TraceRow>,
    /// The loop set used for guidance was truncated.
    pub loops_truncated: bool,
    /// Precomputation proved the program has no stable model.
    pub infeasible: bool,
}

fn build_loops(program: &Program, opts: &SolverOptions) -> LoopSet {
    match opts.lf_heuristic {
        LfHeuristic::None => LoopSet::default(),
        LfHeuristic::Max => loops_scc(program),
        LfHeuristic::Min => loops_cycles(program, opts.max_cycles),
        LfHeuristic::All => loops_all(program, opts.max_cycles),
    }
}

/// Squared supported-model error of a binary candidate plus its violated
/// constraint count, both on the working program.
fn candidate_error(mp: &MatricizedProgram, work: &Program, bits: &[bool]) -> f64 {
    let u: Vec<f64> = bits.iter().map(|&b| f64::from(u8::from(b))).collect();
    let one_minus_u: Vec<f64> = u.iter().map(|v| 1.0 - v).collect();
    let mut n_vec = mp.q1.mul_vec(&one_minus_u);
    for (a, b) in n_vec.iter_mut().zip(mp.q2.mul_vec(&u)) {
        *a += b;
    }
    let m_vec: Vec<f64> = n_vec.iter().map(|&x| 1.0 - min1(x)).collect();
    let d_vec = mp.d.mul_vec(&m_vec);
    let sq: f64 = d_vec
        .iter()
        .zip(&u)
        .map(|(&d, &ui)| {
            let e = ui - min1(d);
            e * e
        })
        .sum();
    let violations = work.constraints.iter().filter(|c| c.violated_by(bits)).count();
    sq + violations as f64
}

/// Threshold grid over `[min(u), max(u)]`, plus the all-false candidate
/// (unreachable by any grid threshold).
fn candidates(u: &[f64], notches: usize) -> Vec<Vec<bool>> {
    let lo = u.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = u.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut out: Vec<Vec<bool>> = Vec::new();
    for t in 0..notches {
        let theta = if hi > lo {
            lo + (hi - lo) * t as f64 / (notches - 1) as f64
        } else {
            lo
        };
        let bits: Vec<bool> = u.iter().map(|&x| x >= theta).collect();
        if !out.contains(&bits) {
            out.push(bits);
        }
    }
    let all_false = vec![false; u.len()];
    if !out.contains(&all_false) {
        out.push(all_false);
    }
    out
}

struct Acceptance<'a> {
    original: &'a Program,
    mode: Mode,
    expand: Option<&'a crate::precompute::PrecomputeResult>,
}

impl Acceptance<'_> {
    /// Lifts a zero-error candidate of the working program to the original
    /// atoms and re-verifies it there. Returns the final model and its
    /// stability when it passes.
    fn accept(&self, work: &Program, bits: Vec<bool>) -> Option<(Model, bool)> {
        let reduced = Model::new(bits);
        if self.mode == Mode::Stable && !is_stable(work, &reduced) {
            return None;
        }
        let full = match self.expand {
            Some(pre) => pre.expand_model(&reduced).expect("length checked"),
            None => reduced,
        };
        if !is_supported(self.original, &full) || !full.satisfies_constraints(self.original) {
            return None;
        }
        let stable = is_stable(self.original, &full);
        if self.mode == Mode::Stable && !stable {
            return None;
        }
        Some((full, stable))
    }
}

/// Searches for one model of `program` under `opts`.
pub fn solve(program: &Program, opts: &SolverOptions) -> Result<SolveResult, SolverError> {
    opts.validate()?;
    let start = Instant::now();
    let mut result = SolveResult {
        model: None,
        stable: false,
        tries: 0,
        seconds: 0.0,
        trace: Vec::new(),
        loops_truncated: false,
        infeasible: false,
    };

    let pre = if opts.use_precompute { Some(precompute(program)) } else { None };
    if let Some(p) = &pre {
        if p.infeasible {
            result.infeasible = true;
            result.seconds = start.elapsed().as_secs_f64();
            return Ok(result);
        }
    }
    let owned;
    let work: &Program = match &pre {
        Some(p) => &p.reduced,
        None => {
            owned = program.clone();
            &owned
        }
    };
    let acceptance = Acceptance { original: program, mode: opts.mode, expand: pre.as_ref() };

    if work.atom_count() == 0 {
        result.tries = 1;
        if let Some((m, stable)) = acceptance.accept(work, vec![]) {
            result.model = Some(m);
            result.stable = stable;
        }
        result.seconds = start.elapsed().as_secs_f64();
        return Ok(result);
    }

    let (mp, cm) = matricize(work);
    let loops = build_loops(work, opts);
    result.loops_truncated = loops.truncated;

    let n = work.atom_count();
    let mut u = vec![0.0; n];
    'tries: for try_index in 0..opts.max_try {
        result.tries = try_index + 1;
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        rng.set_stream(try_index as u64);
        if try_index == 0 {
            for ui in u.iter_mut() {
                let z: f64 = StandardNormal.sample(&mut rng);
                *ui = z + 0.5;
            }
        } else {
            for ui in u.iter_mut() {
                let z: f64 = StandardNormal.sample(&mut rng);
                *ui = 0.5 * (*ui + z + 0.5);
            }
        }

        for itr in 0..opts.max_itr {
            let b = cost_total(&mp, &cm, &loops, opts.weights, &u)
                .expect("dimensions fixed at build time");

            let mut best_err = f64::INFINITY;
            let mut accepted = None;
            for bits in candidates(&u, opts.notches) {
                let err = candidate_error(&mp, work, &bits);
                best_err = best_err.min(err);
                // every zero-error candidate is a constrained supported
                // model of the working program; in stable mode several may
                // exist on the grid but fail the reduct check, so keep
                // scanning until one is accepted
                if err == 0.0 && accepted.is_none() {
                    accepted = acceptance.accept(work, bits);
                }
            }
            result.trace.push(TraceRow {
                try_index: try_index + 1,
                itr: itr + 1,
                total: b.total,
                j_sq: b.j_sq,
                j_nrm: b.j_nrm,
                j_c: b.j_c,
                j_lf: b.j_lf,
                cand_err: best_err,
            });
            if let Some((m, stable)) = accepted {
                result.model = Some(m);
                result.stable = stable;
                break 'tries;
            }

            let gg: f64 = b.grad.iter().map(|g| g * g).sum();
            if !gg.is_finite() || !b.total.is_finite() {
                break;
            }
            if gg < 1e-12 {
                // flat spot: the update is undefined, restart with noise
                break;
            }
            let step = opts.alpha * b.total / gg;
            for (ui, gi) in u.iter_mut().zip(&b.grad) {
                *ui -= step * gi;
            }
        }
    }

    result.seconds = start.elapsed().as_secs_f64();
    Ok(result)
}

/// Finds up to `limit` distinct models by re-solving with an
/// another-solution constraint (the full literal conjunction of each found
/// model) appended after every success. The seed advances per round.
pub fn enumerate(
    program: &Program,
    opts: &SolverOptions,
    limit: usize,
) -> Result<Vec<Model>, SolverError> {
    if limit < 1 {
        return Err(SolverError::InvalidOptions("limit must be >= 1".into()));
    }
    let mut work = program.clone();
    let mut found = Vec::new();
    for round in 0..u64::MAX {
        let mut o = opts.clone();
        o.seed = opts.seed.wrapping_add(round);
        let res = solve(&work, &o)?;
        let Some(m) = res.model else { break };
        found.push(m.clone());
        if found.len() == limit || work.atom_count() == 0 {
            break;
        }
        let body: Vec<Literal> = (0..m.len())
            .map(|i| if m.bits[i] { Literal::pos(i) } else { Literal::neg(i) })
            .collect();
        work.constraints.push(Constraint::new(body).expect("atom set is non-empty"));
    }
    Ok(found)
}
