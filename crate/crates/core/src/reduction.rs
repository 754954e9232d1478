//! Greater-than from an approximate distance oracle.
//!
//! Two queries to any oracle returning |x - y| up to relative error
//! eps < 1/4 decide whether x >= y: query z0 = O(x, y), then
//! z1 = O(x, y + z0), and answer "x >= y" unless z1 > z0. On an instance
//! built from a path graph this transfers lower bounds for greater-than
//! to the vertex-distance problem.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::seed;

pub const GT_EPS_LIMIT: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum OracleMode {
    /// Returns |x - y| exactly.
    Exact,
    /// Uniform multiplicative noise in [1 - eps, 1 + eps].
    RandomRelative,
    /// Always underestimates by the full factor 1 - eps.
    AdversarialLow,
    /// Always overestimates by the full factor 1 + eps.
    AdversarialHigh,
}

impl std::str::FromStr for OracleMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(OracleMode::Exact),
            "random" => Ok(OracleMode::RandomRelative),
            "low" => Ok(OracleMode::AdversarialLow),
            "high" => Ok(OracleMode::AdversarialHigh),
            other => Err(Error::Parse(format!(
                "unknown oracle mode {other:?} (expected exact, random, low, high)"
            ))),
        }
    }
}

/// Approximate distance oracle with a query counter.
#[derive(Debug, Clone)]
pub struct ModOracle {
    pub mode: OracleMode,
    pub eps: f64,
    pub queries: u64,
    rng: ChaCha8Rng,
}

impl ModOracle {
    pub fn new(mode: OracleMode, eps: f64, master_seed: u64) -> Result<Self> {
        if !(0.0..1.0).contains(&eps) {
            return Err(Error::BadParameter(format!("oracle eps {eps} not in [0, 1)")));
        }
        Ok(ModOracle {
            mode,
            eps,
            queries: 0,
            rng: seed::stream(master_seed, &[seed::tag::ORACLE]),
        })
    }

    pub fn query(&mut self, x: f64, y: f64) -> f64 {
        self.queries += 1;
        let exact = (x - y).abs();
        match self.mode {
            OracleMode::Exact => exact,
            OracleMode::RandomRelative => {
                let u: f64 = self.rng.random_range(-self.eps..=self.eps);
                exact * (1.0 + u)
            }
            OracleMode::AdversarialLow => exact * (1.0 - self.eps),
            OracleMode::AdversarialHigh => exact * (1.0 + self.eps),
        }
    }
}

/// Ground truth x >= y.
pub fn gt(x: f64, y: f64) -> bool {
    x >= y
}

/// Decides x >= y with two oracle queries; requires eps < 1/4.
pub fn gt_via_mod(x: f64, y: f64, oracle: &mut ModOracle) -> Result<bool> {
    if oracle.eps >= GT_EPS_LIMIT {
        return Err(Error::BadParameter(format!(
            "oracle eps {} >= {GT_EPS_LIMIT} breaks the reduction",
            oracle.eps
        )));
    }
    let z0 = oracle.query(x, y);
    let z1 = oracle.query(x, y + z0);
    // x < y pushes the second point further away (z1 > z0); x >= y lands
    // the second point within eps |x - y| of x (z1 <= z0, ties included)
    Ok(z1 <= z0)
}

/// Path on 2^m vertices whose shortest-path metric is |u - v| on the
/// labels 0..2^m - 1: m-bit greater-than becomes a vertex-distance
/// instance.
pub fn path_graph_instance(m_bits: u32) -> Result<(Graph, Vec<u64>)> {
    if !(1..=20).contains(&m_bits) {
        return Err(Error::BadParameter(format!("bits {m_bits} not in 1..=20")));
    }
    let n = 1usize << m_bits;
    Ok((Graph::path(n), (0..n as u64).collect()))
}
