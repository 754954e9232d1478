//! Fingerprint states, the swap test, and the Hamming-distance estimator.
//!
//! A length-N string z is encoded as the uniform superposition over
//! (index, bit) pairs. Overlaps between two such states are affine in the
//! Hamming distance, so counting swap-test acceptances yields an estimate
//! of the distance. Swap outcomes are sampled from the analytic acceptance
//! probability; `swap_accept_prob_dense` cross-checks that probability from
//! explicit amplitude vectors for small N.

use rand::Rng;
use rand_distr::{Binomial, Distribution};

use crate::bits::{hamming_distance, BitString};
use crate::error::{Error, Result};

const OVERLAP_TOL: f64 = 1e-9;

/// Tallies from `k` swap tests plus the derived estimators.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct SwapTestEstimate {
    pub copies_k: u64,
    pub ones_count: u64,
    /// Estimated overlap magnitude, radicand clamped at zero.
    pub eta_tilde: f64,
    /// Estimated Hamming distance N * (1 - eta_tilde).
    pub d_tilde: f64,
}

/// Overlap of the fingerprint states of `x` and `y`: 1 - d(x,y)/N.
pub fn fingerprint_overlap(x: &BitString, y: &BitString) -> Result<f64> {
    if x.is_empty() {
        return Err(Error::BadParameter("empty fingerprint source".into()));
    }
    let d = hamming_distance(x, y)?;
    Ok(1.0 - d as f64 / x.len() as f64)
}

/// Swap-test acceptance probability (1 - overlap^2) / 2.
pub fn swap_accept_prob(overlap: f64) -> Result<f64> {
    if overlap.abs() > 1.0 + OVERLAP_TOL {
        return Err(Error::BadParameter(format!(
            "overlap {overlap} outside [-1, 1]"
        )));
    }
    let ov = overlap.clamp(-1.0, 1.0);
    Ok((1.0 - ov * ov) / 2.0)
}

/// Acceptance probability recomputed from explicit amplitude vectors.
///
/// Cross-check path for small N; builds the 2N-dimensional states and
/// evaluates the same (1 - overlap^2)/2 expression from their dot product.
pub fn swap_accept_prob_dense(x: &BitString, y: &BitString) -> Result<f64> {
    const DENSE_LIMIT: usize = 32;
    if x.len() > DENSE_LIMIT {
        return Err(Error::TooLarge(x.len(), DENSE_LIMIT));
    }
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    let n = x.len();
    let amp = 1.0 / (n as f64).sqrt();
    let state = |s: &BitString| {
        let mut v = vec![0.0; 2 * n];
        for i in 0..n {
            v[2 * i + s.get(i) as usize] = amp;
        }
        v
    };
    let (vx, vy) = (state(x), state(y));
    let overlap: f64 = vx.iter().zip(&vy).map(|(a, b)| a * b).sum();
    swap_accept_prob(overlap)
}

/// Draws `k` swap-test outcomes at acceptance probability `p` and forms
/// the estimators for a fingerprint of dimension `n_dim`.
pub fn sample_swap_tests(p: f64, k: u64, n_dim: usize, rng: &mut impl Rng) -> SwapTestEstimate {
    debug_assert!((0.0..=0.5 + OVERLAP_TOL).contains(&p));
    let ones_count = Binomial::new(k, p.clamp(0.0, 1.0))
        .expect("valid binomial parameters")
        .sample(rng);
    estimate_from_counts(k, ones_count, n_dim)
}

/// Forms eta_tilde and d_tilde from raw swap tallies.
pub fn estimate_from_counts(copies_k: u64, ones_count: u64, n_dim: usize) -> SwapTestEstimate {
    let radicand = 1.0 - 2.0 * ones_count as f64 / copies_k as f64;
    let eta_tilde = radicand.max(0.0).sqrt();
    SwapTestEstimate {
        copies_k,
        ones_count,
        eta_tilde,
        d_tilde: n_dim as f64 * (1.0 - eta_tilde),
    }
}

/// Copies needed so the tail bound 2 exp(-k eps^4 / 32) drops below `delta`.
pub fn copies_needed(eps_est: f64, delta: f64) -> Result<u64> {
    if !(eps_est > 0.0 && eps_est <= 1.0) {
        return Err(Error::BadParameter(format!("eps_est {eps_est} not in (0, 1]")));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::BadParameter(format!("delta {delta} not in (0, 1)")));
    }
    let k = (32.0 * (2.0 / delta).ln() / eps_est.powi(4)).ceil();
    Ok(k.max(1.0) as u64)
}

/// Qubits per fingerprint copy: index register plus the bit register.
pub fn qubits_per_copy(n_dim: usize) -> u32 {
    debug_assert!(n_dim >= 1);
    ceil_log2(n_dim) + 1
}

/// Qubits per copy for a compressed state of real dimension `m`.
pub fn qubits_per_copy_compressed(m: usize) -> u32 {
    debug_assert!(m >= 1);
    ceil_log2(m).max(1)
}

fn ceil_log2(n: usize) -> u32 {
    (n.max(1)).next_power_of_two().trailing_zeros()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed;

    #[test]
    fn overlap_basics() {
        let x = BitString::parse("1010").unwrap();
        assert_eq!(fingerprint_overlap(&x, &x).unwrap(), 1.0);
        let y = BitString::parse("0101").unwrap();
        assert_eq!(fingerprint_overlap(&x, &y).unwrap(), 0.0);
        let z = BitString::parse("1011").unwrap();
        assert_eq!(fingerprint_overlap(&x, &z).unwrap(), 0.75);
    }

    #[test]
    fn swap_prob_basics() {
        assert_eq!(swap_accept_prob(1.0).unwrap(), 0.0);
        assert_eq!(swap_accept_prob(0.0).unwrap(), 0.5);
        assert_eq!(swap_accept_prob(0.75).unwrap(), 0.21875);
        assert!(swap_accept_prob(1.1).is_err());
    }

    #[test]
    fn dense_amplitudes_agree_with_closed_form() {
        let mut rng = seed::stream(3, &[]);
        for _ in 0..20 {
            let x = BitString::random(17, &mut rng);
            let y = BitString::random(17, &mut rng);
            let analytic = swap_accept_prob(fingerprint_overlap(&x, &y).unwrap()).unwrap();
            let dense = swap_accept_prob_dense(&x, &y).unwrap();
            assert!((analytic - dense).abs() < 1e-12);
        }
    }

    #[test]
    fn estimator_values() {
        let e = estimate_from_counts(8, 1, 16);
        assert!((e.eta_tilde - 0.75f64.sqrt()).abs() < 1e-12);
        assert!((e.d_tilde - 16.0 * (1.0 - 0.75f64.sqrt())).abs() < 1e-12);
        assert!((e.d_tilde - 2.1436).abs() < 1e-3);
        // boundary: half the tests accept -> radicand 0 -> d_tilde = N
        let b = estimate_from_counts(8, 4, 16);
        assert_eq!(b.eta_tilde, 0.0);
        assert_eq!(b.d_tilde, 16.0);
        // clamp: more than half accept
        let c = estimate_from_counts(8, 7, 16);
        assert_eq!(c.eta_tilde, 0.0);
    }

    #[test]
    fn zero_probability_is_deterministic() {
        let mut rng = seed::stream(5, &[]);
        let e = sample_swap_tests(0.0, 100, 32, &mut rng);
        assert_eq!(e.ones_count, 0);
        assert_eq!(e.eta_tilde, 1.0);
        assert_eq!(e.d_tilde, 0.0);
    }

    #[test]
    fn copies_needed_matches_tail_bound() {
        assert_eq!(copies_needed(1.0, 2.0 / std::f64::consts::E).unwrap(), 32);
        assert_eq!(copies_needed(1.0, 0.05).unwrap(), 119);
        assert_eq!(copies_needed(1.0, 0.9999999).unwrap(), 23);
        assert!(copies_needed(0.0, 0.1).is_err());
        assert!(copies_needed(0.5, 1.0).is_err());
    }

    #[test]
    fn qubit_counts() {
        assert_eq!(qubits_per_copy(1), 1);
        assert_eq!(qubits_per_copy(1024), 11);
        assert_eq!(qubits_per_copy(1000), 11);
        assert_eq!(qubits_per_copy_compressed(64), 6);
    }
}
