//! Random-projection compression of fingerprint vectors.
//!
//! A seeded Gaussian map is sampled, then verified against the actual
//! vector set (which is known in advance), retrying with a derived seed on
//! failure. A verified map preserves every pairwise inner product to
//! within 4 eps, which widens the swap-test tolerance by a factor of 5.

use rand_distr::{Distribution, StandardNormal};

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::seed;

const UNIT_TOL: f64 = 1e-9;
const DEGENERATE_TOL: f64 = 1e-12;

/// Default constant in the projection dimension formula.
pub const JL_CONSTANT: f64 = 24.0;

/// Seeded Gaussian projection matrix, entries N(0, 1/m).
#[derive(Debug, Clone)]
pub struct JLMap {
    pub seed: u64,
    pub in_dim: usize,
    pub out_dim: usize,
    pub eps_jl: f64,
    /// Row-major out_dim x in_dim.
    entries: Vec<f64>,
}

/// Projection dimension ceil(c ln(num_vectors + 1) / eps^2); the +1
/// accounts for the 0-vector joined to the set for the inner-product
/// guarantee.
pub fn jl_dimension_with(constant: f64, num_vectors: usize, eps_jl: f64) -> Result<usize> {
    if num_vectors == 0 {
        return Err(Error::BadParameter("empty vector set".into()));
    }
    if !(eps_jl > 0.0 && eps_jl < 0.5) {
        return Err(Error::BadParameter(format!("eps_jl {eps_jl} not in (0, 1/2)")));
    }
    Ok((constant * ((num_vectors + 1) as f64).ln() / (eps_jl * eps_jl)).ceil() as usize)
}

pub fn jl_dimension(num_vectors: usize, eps_jl: f64) -> Result<usize> {
    jl_dimension_with(JL_CONSTANT, num_vectors, eps_jl)
}

/// Deterministic sample of the projection matrix.
pub fn sample_jl_map(in_dim: usize, out_dim: usize, eps_jl: f64, map_seed: u64) -> JLMap {
    let mut rng = seed::stream(map_seed, &[seed::tag::JL]);
    let scale = 1.0 / (out_dim as f64).sqrt();
    let entries = (0..in_dim * out_dim)
        .map(|_| scale * <StandardNormal as Distribution<f64>>::sample(&StandardNormal, &mut rng))
        .collect();
    JLMap {
        seed: map_seed,
        in_dim,
        out_dim,
        eps_jl,
        entries,
    }
}

impl JLMap {
    /// Raw linear image f(v).
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        debug_assert_eq!(v.len(), self.in_dim);
        let mut out = vec![0.0; self.out_dim];
        for (j, &x) in v.iter().enumerate() {
            if x == 0.0 {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                *o += self.entries[i * self.in_dim + j] * x;
            }
        }
        out
    }
}

/// Projects a unit vector and renormalizes the image.
pub fn apply_and_normalize(map: &JLMap, v: &[f64]) -> Result<Vec<f64>> {
    if v.len() != map.in_dim {
        return Err(Error::DimensionMismatch {
            expected: map.in_dim,
            actual: v.len(),
        });
    }
    let norm = norm2(v).sqrt();
    if (norm - 1.0).abs() > UNIT_TOL {
        return Err(Error::BadParameter(format!("input norm {norm} not 1")));
    }
    let mut image = map.apply(v);
    let inorm = norm2(&image).sqrt();
    if inorm < DEGENERATE_TOL {
        return Err(Error::DegenerateProjection);
    }
    for x in &mut image {
        *x /= inorm;
    }
    Ok(image)
}

/// Real encoding of the fingerprint state of `z`: coordinate (2i + z_i)
/// carries amplitude 1/sqrt(N). Dimension 2N, unit norm.
pub fn raw_fingerprint_vector(z: &BitString) -> Vec<f64> {
    let n = z.len();
    assert!(n >= 1);
    let amp = 1.0 / (n as f64).sqrt();
    let mut v = vec![0.0; 2 * n];
    for i in 0..n {
        v[2 * i + z.get(i) as usize] = amp;
    }
    v
}

/// True iff every pairwise squared distance (including against the
/// 0-vector, i.e. the norms) is distorted by at most a 1 +- eps factor.
pub fn verify_jl(map: &JLMap, vectors: &[Vec<f64>], eps_jl: f64) -> bool {
    let images: Vec<Vec<f64>> = vectors.iter().map(|v| map.apply(v)).collect();
    let lo = 1.0 - eps_jl;
    let hi = 1.0 + eps_jl;
    for i in 0..vectors.len() {
        let n2 = norm2(&images[i]);
        let orig = norm2(&vectors[i]);
        if orig == 0.0 {
            if n2 != 0.0 {
                return false;
            }
            continue;
        }
        if n2 / orig < lo || n2 / orig > hi {
            return false;
        }
        for j in (i + 1)..vectors.len() {
            let orig = dist2(&vectors[i], &vectors[j]);
            if orig == 0.0 {
                continue; // identical vectors map identically by linearity
            }
            let proj = dist2(&images[i], &images[j]);
            if proj / orig < lo || proj / orig > hi {
                return false;
            }
        }
    }
    true
}

/// Samples maps from derived seeds until one verifies, up to `retries`.
pub fn find_verified_map(
    in_dim: usize,
    out_dim: usize,
    vectors: &[Vec<f64>],
    eps_jl: f64,
    base_seed: u64,
    retries: usize,
) -> Result<JLMap> {
    for attempt in 0..retries.max(1) as u64 {
        let map_seed = seed::derive(base_seed, &[seed::tag::JL, attempt]);
        let map = sample_jl_map(in_dim, out_dim, eps_jl, map_seed);
        if verify_jl(&map, vectors, eps_jl) {
            return Ok(map);
        }
    }
    Err(Error::BadParameter(format!(
        "no verified projection after {retries} attempts"
    )))
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum()
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
