//! Packed bitstrings and the GF(2) arithmetic used by every sketch.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};

/// Fixed-length binary string, packed 64 bits per word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitString {
    words: Vec<u64>,
    len: usize,
}

impl BitString {
    /// All-zeros string of length `n`.
    pub fn zeros(n: usize) -> Self {
        BitString {
            words: vec![0; n.div_ceil(64)],
            len: n,
        }
    }

    /// Builds from explicit bits.
    pub fn from_bits(bits: &[bool]) -> Self {
        let mut s = BitString::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                s.set(i, true);
            }
        }
        s
    }

    /// Parses an ASCII 0/1 string.
    pub fn parse(text: &str) -> Result<Self> {
        let mut s = BitString::zeros(text.len());
        for (i, c) in text.chars().enumerate() {
            match c {
                '0' => {}
                '1' => s.set(i, true),
                other => return Err(Error::Parse(format!("invalid bit character {other:?}"))),
            }
        }
        Ok(s)
    }

    /// Uniformly random string of length `n`.
    pub fn random(n: usize, rng: &mut impl Rng) -> Self {
        let mut words: Vec<u64> = (0..n.div_ceil(64)).map(|_| rng.random()).collect();
        mask_tail(&mut words, n);
        BitString { words, len: n }
    }

    /// Random string at exact Hamming distance `d` from `base`.
    pub fn random_at_distance(base: &BitString, d: usize, rng: &mut impl Rng) -> Self {
        assert!(d <= base.len);
        let mut flipped = base.clone();
        let mut positions: Vec<usize> = (0..base.len).collect();
        // partial Fisher-Yates: pick d distinct positions
        for i in 0..d {
            let j = rng.random_range(i..positions.len());
            positions.swap(i, j);
            let p = positions[i];
            flipped.set(p, !flipped.get(p));
        }
        flipped
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let (w, b) = (i / 64, i % 64);
        if value {
            self.words[w] |= 1 << b;
        } else {
            self.words[w] &= !(1 << b);
        }
    }

    /// Number of 1-entries.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Bitwise XOR; lengths must agree.
    pub fn xor(&self, other: &BitString) -> Result<BitString> {
        self.check_len(other)?;
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a ^ b)
            .collect();
        Ok(BitString {
            words,
            len: self.len,
        })
    }

    /// XOR `other` into `self` in place.
    pub fn xor_assign(&mut self, other: &BitString) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    fn check_len(&self, other: &BitString) -> Result<()> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                left: self.len,
                right: other.len,
            });
        }
        Ok(())
    }
}

fn mask_tail(words: &mut [u64], n: usize) {
    let rem = n % 64;
    if rem != 0 {
        if let Some(last) = words.last_mut() {
            *last &= (1u64 << rem) - 1;
        }
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Number of positions where `a` and `b` differ.
pub fn hamming_distance(a: &BitString, b: &BitString) -> Result<usize> {
    a.check_len(b)?;
    Ok(a.words
        .iter()
        .zip(&b.words)
        .map(|(x, y)| (x ^ y).count_ones() as usize)
        .sum())
}

/// Number of 1-entries of `z`.
pub fn weight(z: &BitString) -> usize {
    z.weight()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand_chacha::rand_core::SeedableRng;

    #[test]
    fn hamming_basics() {
        let a = BitString::parse("0000").unwrap();
        assert_eq!(hamming_distance(&a, &a).unwrap(), 0);
        let b = BitString::parse("0101").unwrap();
        let c = BitString::parse("1010").unwrap();
        assert_eq!(hamming_distance(&b, &c).unwrap(), 4);
        let d = BitString::parse("110100").unwrap();
        let e = BitString::parse("100110").unwrap();
        assert_eq!(hamming_distance(&d, &e).unwrap(), 2);
    }

    #[test]
    fn hamming_rejects_length_mismatch() {
        let a = BitString::parse("01").unwrap();
        let b = BitString::parse("011").unwrap();
        assert!(hamming_distance(&a, &b).is_err());
    }

    #[test]
    fn weight_basics() {
        assert_eq!(BitString::parse("0000").unwrap().weight(), 0);
        assert_eq!(BitString::parse("1111").unwrap().weight(), 4);
        assert_eq!(BitString::parse("101001").unwrap().weight(), 3);
    }

    #[test]
    fn display_round_trip_and_long_strings() {
        let text = "10".repeat(70);
        let s = BitString::parse(&text).unwrap();
        assert_eq!(s.to_string(), text);
        assert_eq!(s.weight(), 70);
    }

    #[test]
    fn random_at_distance_is_exact() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let base = BitString::random(300, &mut rng);
        for d in [0usize, 1, 37, 300] {
            let other = BitString::random_at_distance(&base, d, &mut rng);
            assert_eq!(hamming_distance(&base, &other).unwrap(), d);
        }
    }

    fn arb_pair(n: usize) -> impl Strategy<Value = (BitString, BitString)> {
        (
            prop::collection::vec(any::<bool>(), n),
            prop::collection::vec(any::<bool>(), n),
        )
            .prop_map(|(a, b)| (BitString::from_bits(&a), BitString::from_bits(&b)))
    }

    proptest! {
        #[test]
        fn weight_equals_distance_from_zero(bits in prop::collection::vec(any::<bool>(), 0..200)) {
            let z = BitString::from_bits(&bits);
            let zero = BitString::zeros(bits.len());
            prop_assert_eq!(z.weight(), hamming_distance(&z, &zero).unwrap());
        }

        #[test]
        fn hamming_symmetric_and_triangle(
            (a, b) in arb_pair(96),
            c_bits in prop::collection::vec(any::<bool>(), 96),
        ) {
            let c = BitString::from_bits(&c_bits);
            let dab = hamming_distance(&a, &b).unwrap();
            prop_assert_eq!(dab, hamming_distance(&b, &a).unwrap());
            let dac = hamming_distance(&a, &c).unwrap();
            let dcb = hamming_distance(&c, &b).unwrap();
            prop_assert!(dab <= dac + dcb);
            prop_assert!(dab <= a.len());
        }
    }
}
