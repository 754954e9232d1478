//! Sparse GF(2) sketching for threshold decisions on Hamming distance.
//!
//! A random N x n matrix with entry density 1/(4d) maps strings with
//! |z| <= d and |z| >= (1+eps)d to sketches whose weights concentrate on
//! opposite sides of a fixed threshold. A swap-test estimate of the
//! sketch distance then decides which side the pair is on. The d = 0 case
//! uses a dense density-1/2 equality sketch instead.

use rand::Rng;
use rand_distr::{Binomial, Distribution};

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::fingerprint::{
    copies_needed, qubits_per_copy, sample_swap_tests, swap_accept_prob, SwapTestEstimate,
};
use crate::seed;

/// Random N x n matrix over GF(2), stored as per-row column-index lists.
#[derive(Debug, Clone)]
pub struct SparseGF2Matrix {
    pub rows: Vec<Vec<u32>>,
    pub n_cols: usize,
    pub density_d: f64,
    pub seed: u64,
}

/// Closed-form bounds on the per-row one-probability for the two weight
/// classes: delta1 at |z| = d and delta2 at |z| = (1+eps)d.
pub fn delta_bounds(d: f64, eps: f64) -> Result<(f64, f64)> {
    if d < 1.0 {
        return Err(Error::BadParameter(format!("density parameter d = {d} < 1")));
    }
    if eps <= 0.0 {
        return Err(Error::BadParameter(format!("eps = {eps} <= 0")));
    }
    let base = 1.0 - 1.0 / (2.0 * d);
    let delta1 = 0.5 * (1.0 - base.powf(d));
    let delta2 = 0.5 * (1.0 - base.powf((1.0 + eps) * d));
    Ok((delta1, delta2))
}

/// Probability that one sketch row is 1 for a string of weight `w`.
pub fn row_one_prob(d: f64, w: usize) -> f64 {
    0.5 * (1.0 - (1.0 - 1.0 / (2.0 * d)).powi(w as i32))
}

/// Sketch length making both union-bound failure events together <= `fail`.
pub fn size_sketch(n: usize, d: f64, eps: f64, fail: f64) -> Result<usize> {
    if !(fail > 0.0 && fail < 1.0) {
        return Err(Error::BadParameter(format!("fail {fail} not in (0, 1)")));
    }
    let (delta1, delta2) = delta_bounds(d, eps)?;
    let eta = (delta2 - delta1) / 4.0;
    let num = n as f64 * std::f64::consts::LN_2 + (2.0 / fail).ln();
    Ok((num / (2.0 * eta * eta)).ceil() as usize)
}

/// Derived decision parameters for one threshold value.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct ThresholdParams {
    pub d: f64,
    pub eps: f64,
    pub n_cols: usize,
    pub delta1: f64,
    pub delta2: f64,
    /// Concentration half-gap (delta2 - delta1) / 4; also the additive
    /// Hamming accuracy target N * eta for the swap-test estimate.
    pub eta: f64,
    pub n_rows: usize,
    /// Midpoint N (delta1 + delta2) / 2.
    pub decision_threshold: f64,
}

impl ThresholdParams {
    pub fn new(n_cols: usize, d: f64, eps: f64, matrix_fail: f64) -> Result<Self> {
        let (delta1, delta2) = delta_bounds(d, eps)?;
        let eta = (delta2 - delta1) / 4.0;
        let n_rows = size_sketch(n_cols, d, eps, matrix_fail)?;
        Ok(ThresholdParams {
            d,
            eps,
            n_cols,
            delta1,
            delta2,
            eta,
            n_rows,
            decision_threshold: n_rows as f64 * (delta1 + delta2) / 2.0,
        })
    }
}

/// Deterministic sample of the sparse sketch matrix. Entries are 1 with
/// probability 1/(4d): the parity of a weight-w input over such a row is
/// one with probability (1 - (1 - 2/(4d))^w) / 2, which is exactly the
/// closed form `row_one_prob` that the delta bounds are built from.
pub fn sample_sparse_matrix(n_rows: usize, n_cols: usize, d: f64, seed: u64) -> SparseGF2Matrix {
    let q = 1.0 / (4.0 * d);
    let mut rng = seed::stream(seed, &[seed::tag::MATRIX]);
    let rows = (0..n_rows)
        .map(|_| {
            (0..n_cols as u32)
                .filter(|_| rng.random::<f64>() < q)
                .collect()
        })
        .collect();
    SparseGF2Matrix {
        rows,
        n_cols,
        density_d: d,
        seed,
    }
}

/// Matrix-vector product over GF(2): bit i is the parity of z on row i's support.
pub fn gf2_matvec(a: &SparseGF2Matrix, z: &BitString) -> Result<BitString> {
    if z.len() != a.n_cols {
        return Err(Error::DimensionMismatch {
            expected: a.n_cols,
            actual: z.len(),
        });
    }
    let mut out = BitString::zeros(a.rows.len());
    for (i, row) in a.rows.iter().enumerate() {
        let parity = row.iter().filter(|&&j| z.get(j as usize)).count() % 2;
        if parity == 1 {
            out.set(i, true);
        }
    }
    Ok(out)
}

/// Exhaustive small-n oracle: true iff every z with |z| <= d sketches
/// strictly below the decision midpoint and every z with |z| >= (1+eps)d
/// strictly above it.
pub fn verify_separation(a: &SparseGF2Matrix, d: f64, eps: f64) -> Result<bool> {
    const LIMIT: usize = 20;
    let n = a.n_cols;
    if n > LIMIT {
        return Err(Error::TooLarge(n, LIMIT));
    }
    let (delta1, delta2) = delta_bounds(d, eps)?;
    let n_rows = a.rows.len();
    let midpoint = n_rows as f64 * (delta1 + delta2) / 2.0;

    // column bitmaps so one input-bit flip is a single XOR pass
    let mut cols = vec![BitString::zeros(n_rows); n];
    for (i, row) in a.rows.iter().enumerate() {
        for &j in row {
            cols[j as usize].set(i, true);
        }
    }

    let mut acc = BitString::zeros(n_rows);
    // Gray-code walk over all 2^n inputs; z = i ^ (i >> 1)
    for i in 1u64..(1u64 << n) {
        let flipped = i.trailing_zeros() as usize;
        acc.xor_assign(&cols[flipped]);
        let wz = (i ^ (i >> 1)).count_ones() as f64;
        if wz <= d {
            if acc.weight() as f64 >= midpoint {
                return Ok(false);
            }
        } else if wz >= (1.0 + eps) * d && acc.weight() as f64 <= midpoint {
            return Ok(false);
        }
    }
    Ok(true)
}

/// How the sketch weight |A(x xor y)| is obtained during a protocol run.
///
/// `Explicit` materializes the matrix; `Analytic` draws the weight from
/// its exact distribution Binomial(N, q(|z|)), which is identical because
/// sketch rows are i.i.d. for a fixed input pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum SketchMode {
    Explicit,
    Analytic,
}

/// Two-sided answer of the threshold subroutine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum ThresholdAnswer {
    AtMostD,
    AtLeastScaledD,
}

/// One subroutine run: answer plus the raw estimate and cost inputs.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ThresholdOutcome {
    pub answer: ThresholdAnswer,
    pub estimate: SwapTestEstimate,
    pub sketch_weight: u64,
    pub n_rows: usize,
    pub copies_k: u64,
    pub qubits_per_copy: u32,
}

/// Sketch weight for the pair (x, y) under the chosen mode.
pub fn sketch_weight(
    x: &BitString,
    y: &BitString,
    params: &ThresholdParams,
    mode: SketchMode,
    matrix_seed: u64,
    rng: &mut impl Rng,
) -> Result<u64> {
    let z = x.xor(y)?;
    match mode {
        SketchMode::Explicit => {
            let a = sample_sparse_matrix(params.n_rows, params.n_cols, params.d, matrix_seed);
            Ok(gf2_matvec(&a, &z)?.weight() as u64)
        }
        SketchMode::Analytic => {
            let q = row_one_prob(params.d, z.weight());
            Ok(Binomial::new(params.n_rows as u64, q)
                .expect("valid binomial parameters")
                .sample(rng))
        }
    }
}

/// Threshold subroutine: decide d(x,y) <= d versus d(x,y) >= (1+eps)d.
pub fn decide_threshold(
    x: &BitString,
    y: &BitString,
    params: &ThresholdParams,
    mode: SketchMode,
    matrix_seed: u64,
    delta: f64,
    rng: &mut impl Rng,
) -> Result<ThresholdOutcome> {
    let w = sketch_weight(x, y, params, mode, matrix_seed, rng)?;
    let n_rows = params.n_rows;
    let overlap = 1.0 - w as f64 / n_rows as f64;
    let p = swap_accept_prob(overlap)?;
    // overlap accuracy eta gives Hamming accuracy N * eta, the margin to
    // the midpoint threshold on each side
    let k = copies_needed(params.eta, delta)?;
    let estimate = sample_swap_tests(p, k, n_rows, rng);
    let answer = if estimate.d_tilde <= params.decision_threshold {
        ThresholdAnswer::AtMostD
    } else {
        ThresholdAnswer::AtLeastScaledD
    };
    Ok(ThresholdOutcome {
        answer,
        estimate,
        sketch_weight: w,
        n_rows,
        copies_k: k,
        qubits_per_copy: qubits_per_copy(n_rows),
    })
}

/// Equality answer of the d = 0 fingerprinting step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum EqualityAnswer {
    Equal,
    Unequal,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct EqualityOutcome {
    pub answer: EqualityAnswer,
    pub estimate: SwapTestEstimate,
    pub n_rows: usize,
    pub copies_k: u64,
    pub qubits_per_copy: u32,
}

/// Sketch length of the density-1/2 equality sketch.
pub fn equality_sketch_size(n: usize, fail: f64) -> usize {
    ((n as f64 * std::f64::consts::LN_2 + (2.0 / fail).ln()) * 8.0).ceil() as usize
}

/// Overlap accuracy budget of the equality step: any unequal pair sketches
/// to expected distance N0/2, so a margin of N0/4 suffices.
pub const EQUALITY_EPS_EST: f64 = 0.25;

/// Standard fingerprinting equality test (the d = 0 ladder step).
///
/// Every output bit of the dense sketch is exactly Bernoulli(1/2) for any
/// nonzero difference, giving a fixed gap of 1/4 around the N0/4 threshold.
pub fn decide_zero(
    x: &BitString,
    y: &BitString,
    fail: f64,
    delta: f64,
    mode: SketchMode,
    matrix_seed: u64,
    rng: &mut impl Rng,
) -> Result<EqualityOutcome> {
    let z = x.xor(y)?;
    let n0 = equality_sketch_size(x.len(), fail);
    let w: u64 = if z.weight() == 0 {
        0
    } else {
        match mode {
            SketchMode::Explicit => {
                // dense matrix: per-entry probability 1/2
                let mut mrng = seed::stream(matrix_seed, &[seed::tag::MATRIX, 0]);
                let mut count = 0u64;
                for _ in 0..n0 {
                    let parity = (0..x.len())
                        .filter(|&j| z.get(j) && mrng.random::<bool>())
                        .count()
                        % 2;
                    count += parity as u64;
                }
                count
            }
            SketchMode::Analytic => Binomial::new(n0 as u64, 0.5)
                .expect("valid binomial parameters")
                .sample(rng),
        }
    };
    let overlap = 1.0 - w as f64 / n0 as f64;
    let p = swap_accept_prob(overlap)?;
    let k = copies_needed(EQUALITY_EPS_EST, delta)?;
    let estimate = sample_swap_tests(p, k, n0, rng);
    let answer = if estimate.d_tilde < n0 as f64 / 4.0 {
        EqualityAnswer::Equal
    } else {
        EqualityAnswer::Unequal
    };
    Ok(EqualityOutcome {
        answer,
        estimate,
        n_rows: n0,
        copies_k: k,
        qubits_per_copy: qubits_per_copy(n0),
    })
}
