//! l1 vector distance through unary encoding.
//!
//! Each coordinate z in [-1, 1] on the grid of step 2^-(k-1) maps to the
//! 2^k-bit string whose first (z+1) 2^(k-1) bits are ones. Prefix strings
//! differ in exactly |x - y| 2^(k-1) positions, so the l1 distance of two
//! vectors equals the Hamming distance of their concatenated encodings
//! divided by 2^(k-1). Vectors outside the unit box are handled by an
//! explicit scale factor M carried with the vector.

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::ladder::{build_schedule, run_scaled_ladder, LadderConfig, ProtocolResult};

/// Encodings above this total length are refused.
const MAX_ENCODING_BITS: usize = 1 << 26;

const GRID_TOL: f64 = 1e-9;

/// Default quantization depth for dimension `dim`: enough that the full
/// grid of one coordinate outnumbers the coordinates, plus headroom.
pub fn suggested_bits(dim: usize) -> u32 {
    dim.max(2).next_power_of_two().trailing_zeros() + 4
}

/// Real vector with entries on the representable grid
/// scale_m * {-1, -1 + 2^-(k-1), ..., 1}.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantizedVector {
    pub entries: Vec<f64>,
    pub bits_k: u32,
    pub scale_m: f64,
}

/// Grid index (z/M + 1) 2^(k-1) of one entry, or an error when the entry
/// is off-grid or out of range.
fn grid_index(entry: f64, bits_k: u32, scale_m: f64) -> Result<u64> {
    let half = (1u64 << (bits_k - 1)) as f64;
    let z = entry / scale_m;
    let t = (z + 1.0) * half;
    let rounded = t.round();
    if !(0.0..=2.0 * half).contains(&rounded) || (t - rounded).abs() > GRID_TOL * half.max(1.0) {
        return Err(Error::Unrepresentable(entry, bits_k));
    }
    Ok(rounded as u64)
}

impl QuantizedVector {
    pub fn new(entries: Vec<f64>, bits_k: u32, scale_m: f64) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::BadParameter("empty vector".into()));
        }
        if !(1..=24).contains(&bits_k) {
            return Err(Error::BadParameter(format!("bits {bits_k} not in 1..=24")));
        }
        if !(scale_m > 0.0 && scale_m.is_finite()) {
            return Err(Error::BadParameter(format!("scale {scale_m} not positive")));
        }
        let total = entries.len() << bits_k;
        if total > MAX_ENCODING_BITS {
            return Err(Error::TooLarge(total, MAX_ENCODING_BITS));
        }
        for &e in &entries {
            grid_index(e, bits_k, scale_m)?;
        }
        Ok(QuantizedVector {
            entries,
            bits_k,
            scale_m,
        })
    }

    /// Rounds arbitrary entries onto the grid, picking the scale as the
    /// smallest power of two covering the largest magnitude.
    pub fn quantize(entries: &[f64], bits_k: u32) -> Result<Self> {
        let max_abs = entries.iter().fold(0.0f64, |m, e| m.max(e.abs()));
        let mut scale_m = 1.0;
        while scale_m < max_abs {
            scale_m *= 2.0;
        }
        let half = (1u64 << (bits_k - 1)) as f64;
        let rounded: Vec<f64> = entries
            .iter()
            .map(|&e| (((e / scale_m + 1.0) * half).round() / half - 1.0) * scale_m)
            .collect();
        QuantizedVector::new(rounded, bits_k, scale_m)
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// Worst-case rounding error of `quantize` per coordinate.
    pub fn grid_step(&self) -> f64 {
        self.scale_m / (1u64 << (self.bits_k - 1)) as f64
    }

    /// Concatenated unary encoding, dim * 2^k bits.
    pub fn encode(&self) -> Result<BitString> {
        let block = 1usize << self.bits_k;
        let mut out = BitString::zeros(self.dim() * block);
        for (i, &e) in self.entries.iter().enumerate() {
            let ones = grid_index(e, self.bits_k, self.scale_m)? as usize;
            for b in 0..ones {
                out.set(i * block + b, true);
            }
        }
        Ok(out)
    }

    /// Text form: header "dim d bits k scale M", one entry per line.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "dim {} bits {} scale {}\n",
            self.dim(),
            self.bits_k,
            self.scale_m
        );
        for e in &self.entries {
            out.push_str(&format!("{e}\n"));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| {
            let l = l.trim();
            !l.is_empty() && !l.starts_with('#')
        });
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty vector file".into()))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 6 || parts[0] != "dim" || parts[2] != "bits" || parts[4] != "scale" {
            return Err(Error::Parse("expected header 'dim d bits k scale M'".into()));
        }
        let dim: usize = parts[1]
            .parse()
            .map_err(|_| Error::Parse("invalid dim".into()))?;
        let bits_k: u32 = parts[3]
            .parse()
            .map_err(|_| Error::Parse("invalid bits".into()))?;
        let scale_m: f64 = parts[5]
            .parse()
            .map_err(|_| Error::Parse("invalid scale".into()))?;
        let entries: Vec<f64> = lines
            .map(|l| {
                l.trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("invalid entry {:?}", l.trim())))
            })
            .collect::<Result<_>>()?;
        if entries.len() != dim {
            return Err(Error::Parse(format!(
                "header says dim {dim} but found {} entries",
                entries.len()
            )));
        }
        QuantizedVector::new(entries, bits_k, scale_m)
    }
}

/// Unary encoding of a single grid value.
pub fn unary_encode_entry(entry: f64, bits_k: u32, scale_m: f64) -> Result<BitString> {
    let ones = grid_index(entry, bits_k, scale_m)? as usize;
    let mut out = BitString::zeros(1 << bits_k);
    for b in 0..ones {
        out.set(b, true);
    }
    Ok(out)
}

/// Converts a Hamming distance between encodings back to l1 units.
pub fn l1_from_hamming(hamming: f64, bits_k: u32, scale_m: f64) -> f64 {
    scale_m * hamming / (1u64 << (bits_k - 1)) as f64
}

/// Exact l1 distance of the stored (grid) entries.
pub fn l1_distance(a: &QuantizedVector, b: &QuantizedVector) -> Result<f64> {
    check_compatible(a, b)?;
    Ok(a.entries
        .iter()
        .zip(&b.entries)
        .map(|(x, y)| (x - y).abs())
        .sum())
}

fn check_compatible(a: &QuantizedVector, b: &QuantizedVector) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            actual: b.dim(),
        });
    }
    if a.bits_k != b.bits_k || a.scale_m != b.scale_m {
        return Err(Error::BadParameter(format!(
            "incompatible grids: bits {}/{} scale {}/{}",
            a.bits_k, b.bits_k, a.scale_m, b.scale_m
        )));
    }
    Ok(())
}

/// Relative-error l1 distance protocol: the Hamming ladder run on the
/// unary encodings, with the estimate mapped back to l1 units.
pub fn run_l1_epsilon(
    a: &QuantizedVector,
    b: &QuantizedVector,
    eps: f64,
    config: &LadderConfig,
    master_seed: u64,
) -> Result<ProtocolResult> {
    check_compatible(a, b)?;
    let x = a.encode()?;
    let y = b.encode()?;
    let schedule = build_schedule(x.len() as f64, eps)?;
    let inner = run_scaled_ladder(&x, &y, &schedule, 1, config, master_seed)?;
    // the conversion is linear, so the relative-error guarantee carries over
    let mut out = inner;
    out.estimate = l1_from_hamming(out.estimate, a.bits_k, a.scale_m);
    Ok(out.with_truth(l1_distance(a, b)?, eps))
}
