//! Geometric threshold ladder: the full relative-error Hamming protocol.
//!
//! The referee runs the equality step at threshold 0 and the sketch
//! subroutine at thresholds 1, (1+eps), (1+eps)^2, ... and outputs the
//! minimal accepting threshold. If every subroutine answers correctly on
//! its side of the gap, the output sandwiches the true distance within
//! relative error eps.

use statrs::distribution::{Binomial, Discrete, DiscreteCDF};

use crate::bits::{hamming_distance, BitString};
use crate::error::{Error, Result};
use crate::fingerprint::copies_needed;
use crate::seed;
use crate::sketch::{
    decide_threshold, decide_zero, equality_sketch_size, row_one_prob, EqualityAnswer, SketchMode,
    ThresholdAnswer, ThresholdParams, EQUALITY_EPS_EST,
};

/// Threshold schedule 0, 1, 1+eps, (1+eps)^2, ...
#[derive(Debug, Clone)]
pub struct LadderSchedule {
    pub eps: f64,
    pub values: Vec<f64>,
    pub stop_bound: f64,
}

/// Schedule whose last nonzero value v satisfies v * (1+eps) > stop_bound.
pub fn build_schedule(stop_bound: f64, eps: f64) -> Result<LadderSchedule> {
    if stop_bound < 1.0 {
        return Err(Error::BadParameter(format!("stop bound {stop_bound} < 1")));
    }
    if eps <= 0.0 {
        return Err(Error::BadParameter(format!("eps = {eps} <= 0")));
    }
    let mut values = vec![0.0, 1.0];
    let mut cur = 1.0;
    while cur * (1.0 + eps) <= stop_bound {
        cur *= 1.0 + eps;
        values.push(cur);
    }
    Ok(LadderSchedule {
        eps,
        values,
        stop_bound,
    })
}

/// True when eps is below the regime the complexity statement assumes;
/// callers should warn but proceed.
pub fn below_recommended_eps(stop_bound: f64, eps: f64) -> bool {
    stop_bound > 2.0 && eps < 1.0 / stop_bound.log2()
}

/// Splits a total failure budget evenly over the schedule steps.
pub fn per_step_failure(schedule_len: usize, total_fail: f64) -> Result<f64> {
    if !(total_fail > 0.0 && total_fail < 1.0) {
        return Err(Error::BadParameter(format!(
            "total_fail {total_fail} not in (0, 1)"
        )));
    }
    Ok(total_fail / schedule_len as f64)
}

/// Knobs shared by every ladder run.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct LadderConfig {
    pub total_fail: f64,
    /// Union-bound budget for sampling each sketch matrix.
    pub matrix_fail: f64,
    pub sketch_mode: SketchMode,
}

impl Default for LadderConfig {
    fn default() -> Self {
        LadderConfig {
            total_fail: 0.05,
            matrix_fail: 1e-3,
            sketch_mode: SketchMode::Analytic,
        }
    }
}

/// Per-step transmission cost.
#[derive(Debug, Clone, serde::Serialize)]
pub struct StepCost {
    pub threshold: f64,
    pub n_rows: usize,
    pub copies_k: u64,
    pub qubits_per_copy: u32,
}

/// Aggregate cost of one protocol run. Both players send `copies_k`
/// fingerprints per step, hence the factor 2 in every total.
#[derive(Debug, Clone, Default, serde::Serialize)]
pub struct CostReport {
    pub qubits_total: u64,
    pub copies_total: u64,
    pub swap_tests_total: u64,
    pub steps: Vec<StepCost>,
}

impl CostReport {
    pub fn push(&mut self, step: StepCost) {
        self.qubits_total += 2 * step.copies_k * step.qubits_per_copy as u64;
        self.copies_total += 2 * step.copies_k;
        self.swap_tests_total += step.copies_k;
        self.steps.push(step);
    }
}

/// Outcome of one ladder run, with the truth-aware fields filled in by the
/// simulator (which sees both inputs).
#[derive(Debug, Clone, serde::Serialize)]
pub struct ProtocolResult {
    pub estimate: f64,
    pub true_distance: Option<f64>,
    pub relative_error: Option<f64>,
    pub succeeded: Option<bool>,
    pub cost: CostReport,
}

impl ProtocolResult {
    pub fn with_truth(mut self, truth: f64, eps: f64) -> Self {
        self.true_distance = Some(truth);
        if truth == 0.0 {
            self.relative_error = Some(if self.estimate == 0.0 { 0.0 } else { f64::INFINITY });
            self.succeeded = Some(self.estimate == 0.0);
        } else {
            self.relative_error = Some((self.estimate - truth).abs() / truth);
            self.succeeded =
                Some((1.0 - eps) * truth <= self.estimate && self.estimate <= (1.0 + eps) * truth);
        }
        self
    }
}

/// Per-step answers as seen by the referee.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepAnswer {
    /// The step accepted: "d(x,y) <= threshold".
    Accept,
    Reject,
}

/// Referee rule: minimal accepting threshold, or the largest threshold
/// scaled by (1+eps) when nothing accepted.
pub fn referee_estimate(schedule: &LadderSchedule, answers: &[StepAnswer]) -> f64 {
    debug_assert_eq!(answers.len(), schedule.values.len());
    for (v, a) in schedule.values.iter().zip(answers) {
        if *a == StepAnswer::Accept {
            return *v;
        }
    }
    schedule.values.last().unwrap() * (1.0 + schedule.eps)
}

/// Runs the ladder on bitstring labels whose Hamming metric is `scale_k`
/// times the output metric. Thresholds are scaled up for the sketch
/// subroutine; the reported estimate stays on the output scale.
pub fn run_scaled_ladder(
    x: &BitString,
    y: &BitString,
    schedule: &LadderSchedule,
    scale_k: u32,
    config: &LadderConfig,
    master_seed: u64,
) -> Result<ProtocolResult> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    let n = x.len();
    let delta = per_step_failure(schedule.values.len(), config.total_fail)?;
    let mut answers = Vec::with_capacity(schedule.values.len());
    let mut cost = CostReport::default();

    for (idx, &value) in schedule.values.iter().enumerate() {
        let matrix_seed = seed::derive(master_seed, &[seed::tag::MATRIX, idx as u64]);
        let mut rng = seed::stream(master_seed, &[seed::tag::SWAP, idx as u64]);
        if idx == 0 {
            let out = decide_zero(
                x,
                y,
                config.matrix_fail,
                delta,
                config.sketch_mode,
                matrix_seed,
                &mut rng,
            )?;
            answers.push(match out.answer {
                EqualityAnswer::Equal => StepAnswer::Accept,
                EqualityAnswer::Unequal => StepAnswer::Reject,
            });
            cost.push(StepCost {
                threshold: 0.0,
                n_rows: out.n_rows,
                copies_k: out.copies_k,
                qubits_per_copy: out.qubits_per_copy,
            });
        } else {
            let d_label = value * scale_k as f64;
            let params = ThresholdParams::new(n, d_label, schedule.eps, config.matrix_fail)?;
            let out = decide_threshold(
                x,
                y,
                &params,
                config.sketch_mode,
                matrix_seed,
                delta,
                &mut rng,
            )?;
            answers.push(match out.answer {
                ThresholdAnswer::AtMostD => StepAnswer::Accept,
                ThresholdAnswer::AtLeastScaledD => StepAnswer::Reject,
            });
            cost.push(StepCost {
                threshold: d_label,
                n_rows: out.n_rows,
                copies_k: out.copies_k,
                qubits_per_copy: out.qubits_per_copy,
            });
        }
    }

    let estimate = referee_estimate(schedule, &answers);
    let truth = hamming_distance(x, y)? as f64 / scale_k as f64;
    Ok(ProtocolResult {
        estimate,
        true_distance: None,
        relative_error: None,
        succeeded: None,
        cost,
    }
    .with_truth(truth, schedule.eps))
}

/// Full protocol for plain Hamming distance on n-bit strings.
pub fn run_ham_epsilon(
    x: &BitString,
    y: &BitString,
    eps: f64,
    config: &LadderConfig,
    master_seed: u64,
) -> Result<ProtocolResult> {
    let schedule = build_schedule(x.len().max(1) as f64, eps)?;
    run_scaled_ladder(x, y, &schedule, 1, config, master_seed)
}

fn binom_cdf(k: u64, p: f64, s: i64) -> f64 {
    if s < 0 {
        return 0.0;
    }
    if p <= 0.0 {
        return 1.0;
    }
    Binomial::new(p.min(1.0), k).expect("valid parameters").cdf(s as u64)
}

/// P[S < cut] for S ~ Binomial(k, p).
fn binom_below(k: u64, p: f64, cut: f64) -> f64 {
    let s = if cut.fract() == 0.0 {
        cut as i64 - 1
    } else {
        cut.floor() as i64
    };
    binom_cdf(k, p, s)
}

/// P[S > cut] for S ~ Binomial(k, p).
fn binom_above(k: u64, p: f64, cut: f64) -> f64 {
    1.0 - binom_cdf(k, p, cut.floor() as i64)
}

/// Probability the swap-test estimate lands on the wrong side of the
/// decision threshold, given a fixed sketch weight `w`.
///
/// d_tilde <= threshold  <=>  S <= k (1 - (1 - threshold/N)^2) / 2.
fn swap_error_given_weight(
    w: u64,
    n_rows: usize,
    threshold: f64,
    k: u64,
    must_accept: bool,
    strict_accept: bool,
) -> f64 {
    let overlap = 1.0 - w as f64 / n_rows as f64;
    let p = (1.0 - overlap * overlap) / 2.0;
    let c = 1.0 - threshold / n_rows as f64;
    let s_acc = k as f64 * (1.0 - c * c) / 2.0;
    if must_accept {
        if strict_accept {
            // accept requires d_tilde < threshold, i.e. S < s_acc
            1.0 - binom_below(k, p, s_acc)
        } else {
            binom_above(k, p, s_acc)
        }
    } else if strict_accept {
        binom_below(k, p, s_acc)
    } else {
        binom_cdf(k, p, s_acc.floor() as i64)
    }
}

/// Wrong-answer probability marginalized over the sketch weight
/// distribution Binomial(N, q), truncated at 12 sigma (the clipped mass is
/// added, keeping the result an upper bound).
fn swap_error_marginal(
    n_rows: usize,
    q: f64,
    threshold: f64,
    k: u64,
    must_accept: bool,
    strict_accept: bool,
) -> f64 {
    let n = n_rows as u64;
    let mean = n as f64 * q;
    let sigma = (n as f64 * q * (1.0 - q)).sqrt();
    let lo = ((mean - 12.0 * sigma).floor().max(0.0)) as u64;
    let hi = ((mean + 12.0 * sigma).ceil() as u64).min(n);
    let dist = Binomial::new(q, n).expect("valid parameters");
    let mut total = 0.0;
    let mut mass = 0.0;
    for w in lo..=hi {
        let pw = dist.pmf(w);
        mass += pw;
        total += pw * swap_error_given_weight(w, n_rows, threshold, k, must_accept, strict_accept);
    }
    total + (1.0 - mass).max(0.0)
}

/// Exact (no sampling) upper bound on the probability that the ladder
/// output violates the relative-error guarantee, by union bound over the
/// steps whose contract pins an answer; thresholds inside the open gap
/// (d, (1+eps) d) are excluded.
pub fn exact_failure_probability(
    x: &BitString,
    y: &BitString,
    eps: f64,
    config: &LadderConfig,
    master_seed: u64,
) -> Result<f64> {
    let schedule = build_schedule(x.len().max(1) as f64, eps)?;
    exact_failure_probability_scaled(x, y, &schedule, 1, config, master_seed)
}

pub fn exact_failure_probability_scaled(
    x: &BitString,
    y: &BitString,
    schedule: &LadderSchedule,
    scale_k: u32,
    config: &LadderConfig,
    master_seed: u64,
) -> Result<f64> {
    let n = x.len();
    let d_true = hamming_distance(x, y)? as f64;
    let delta = per_step_failure(schedule.values.len(), config.total_fail)?;
    let mut bound = 0.0;

    for (idx, &value) in schedule.values.iter().enumerate() {
        let d_label = value * scale_k as f64;
        if idx == 0 {
            // equality step: errs only by answering EQUAL on unequal inputs
            // (on equal inputs the acceptance probability is exactly zero)
            if d_true > 0.0 {
                let n0 = equality_sketch_size(n, config.matrix_fail);
                let k = copies_needed(EQUALITY_EPS_EST, delta)?;
                let t0 = n0 as f64 / 4.0;
                bound += match config.sketch_mode {
                    SketchMode::Analytic => {
                        swap_error_marginal(n0, 0.5, t0, k, false, true)
                    }
                    SketchMode::Explicit => {
                        // reconstruct the dense sketch weight bit-exactly
                        let matrix_seed = seed::derive(master_seed, &[seed::tag::MATRIX, 0]);
                        let w = dense_sketch_weight(&x.xor(y)?, n0, matrix_seed);
                        swap_error_given_weight(w, n0, t0, k, false, true)
                    }
                };
            }
            continue;
        }
        let must_accept = d_true <= d_label;
        let must_reject = d_true >= (1.0 + schedule.eps) * d_label;
        if !must_accept && !must_reject {
            continue; // open gap: either answer is allowed
        }
        let params = ThresholdParams::new(n, d_label, schedule.eps, config.matrix_fail)?;
        let k = copies_needed(params.eta, delta)?;
        bound += match config.sketch_mode {
            SketchMode::Analytic => {
                let q = row_one_prob(params.d, d_true as usize);
                swap_error_marginal(
                    params.n_rows,
                    q,
                    params.decision_threshold,
                    k,
                    must_accept,
                    false,
                )
            }
            SketchMode::Explicit => {
                let matrix_seed = seed::derive(master_seed, &[seed::tag::MATRIX, idx as u64]);
                let a = crate::sketch::sample_sparse_matrix(
                    params.n_rows,
                    n,
                    params.d,
                    matrix_seed,
                );
                let w = crate::sketch::gf2_matvec(&a, &x.xor(y)?)?.weight() as u64;
                swap_error_given_weight(
                    w,
                    params.n_rows,
                    params.decision_threshold,
                    k,
                    must_accept,
                    false,
                )
            }
        };
    }
    Ok(bound.min(1.0))
}

/// Weight of the dense equality sketch of `z`, reconstructed bit-exactly
/// from the matrix seed (matches the sampling path in `decide_zero`).
fn dense_sketch_weight(z: &BitString, n0: usize, matrix_seed: u64) -> u64 {
    use rand::Rng;
    let mut mrng = seed::stream(matrix_seed, &[seed::tag::MATRIX, 0]);
    let mut count = 0u64;
    for _ in 0..n0 {
        let parity = (0..z.len())
            .filter(|&j| z.get(j) && mrng.random::<bool>())
            .count()
            % 2;
        count += parity as u64;
    }
    count
}
