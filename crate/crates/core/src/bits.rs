// SPDX-License-Identifier: Apache-2.0

//! Fixed-length bit strings.
//!
//! Bit order is big-endian throughout the crate: index 0 is the leftmost and
//! most significant bit, the first bit consumed by the keyed function, and
//! the first character written to sample files.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;
use core::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::{Rng, RngCore};

use crate::error::{Error, Result};

#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitString {
    bits: Vec<bool>,
}

impl BitString {
    pub fn zeros(len: usize) -> Self {
        Self {
            bits: alloc::vec![false; len],
        }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    /// Big-endian `width`-bit encoding of `value`, zero padded on the left.
    pub fn from_u64(value: u64, width: usize) -> Result<Self> {
        if width < 64 && value >> width != 0 {
            return Err(Error::OutOfRange(alloc::format!(
                "{value} does not fit in {width} bits"
            )));
        }
        let bits = (0..width)
            .map(|i| {
                let shift = width - 1 - i;
                shift < 64 && (value >> shift) & 1 == 1
            })
            .collect();
        Ok(Self { bits })
    }

    /// Big-endian `width`-bit encoding of an arbitrary-precision value.
    pub fn from_biguint(value: &BigUint, width: usize) -> Result<Self> {
        if value.bits() > width as u64 {
            return Err(Error::OutOfRange(alloc::format!(
                "{value} does not fit in {width} bits"
            )));
        }
        let bits = (0..width)
            .map(|i| value.bit((width - 1 - i) as u64))
            .collect();
        Ok(Self { bits })
    }

    pub fn random<R: RngCore + ?Sized>(len: usize, rng: &mut R) -> Self {
        Self {
            bits: (0..len).map(|_| rng.gen::<bool>()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bit(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.bits
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        self.bits.iter().copied()
    }

    pub fn concat(&self, other: &BitString) -> BitString {
        let mut bits = Vec::with_capacity(self.len() + other.len());
        bits.extend_from_slice(&self.bits);
        bits.extend_from_slice(&other.bits);
        Self { bits }
    }

    pub fn slice(&self, range: Range<usize>) -> BitString {
        Self {
            bits: self.bits[range].to_vec(),
        }
    }

    pub fn to_biguint(&self) -> BigUint {
        let mut v = BigUint::zero();
        for &b in &self.bits {
            v <<= 1u32;
            if b {
                v += BigUint::one();
            }
        }
        v
    }

    /// Integer value of the string; `None` when it needs more than 64 bits.
    pub fn to_u64(&self) -> Option<u64> {
        let first_one = self.bits.iter().position(|&b| b).unwrap_or(self.len());
        if self.len() - first_one > 64 {
            return None;
        }
        Some(
            self.bits
                .iter()
                .fold(0u64, |acc, &b| (acc << 1) | u64::from(b)),
        )
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(alloc::format!("unexpected character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::from_bits)
    }
}

impl From<&BitString> for String {
    fn from(b: &BitString) -> String {
        alloc::format!("{b}")
    }
}

/// `BIN_n(v)`: the big-endian `n`-bit encoding of `v`.
pub fn bin_n(value: &BigUint, n: usize) -> Result<BitString> {
    BitString::from_biguint(value, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn bin_n_examples() {
        assert_eq!(bin_n(&BigUint::from(3u32), 3).unwrap(), bs("011"));
        assert_eq!(bin_n(&BigUint::from(0u32), 4).unwrap(), bs("0000"));
        assert!(bin_n(&BigUint::from(7u32), 2).is_err());
        assert_eq!(BitString::from_u64(5, 3).unwrap().to_string(), "101");
        assert!(BitString::from_u64(8, 3).is_err());
    }

    #[test]
    fn parse_rejects_other_chars() {
        assert!("01x".parse::<BitString>().is_err());
        assert_eq!("".parse::<BitString>().unwrap().len(), 0);
    }

    #[test]
    fn wide_values_do_not_fit_u64() {
        let mut s = BitString::zeros(70);
        assert_eq!(s.to_u64(), Some(0));
        s = s.concat(&bs("1"));
        assert_eq!(s.to_u64(), Some(1));
        let mut bits = alloc::vec![false; 70];
        bits[0] = true;
        assert_eq!(BitString::from_bits(bits).to_u64(), None);
    }

    proptest! {
        #[test]
        fn encoding_roundtrips(v in any::<u64>(), extra in 0usize..8) {
            let width = 64 + extra;
            let s = BitString::from_u64(v, width).unwrap();
            prop_assert_eq!(s.len(), width);
            prop_assert_eq!(s.to_u64(), Some(v));
            prop_assert_eq!(s.to_biguint(), BigUint::from(v));
            prop_assert_eq!(bin_n(&BigUint::from(v), width).unwrap(), s.clone());
            prop_assert_eq!(s.to_string().parse::<BitString>().unwrap(), s);
        }

        #[test]
        fn concat_is_associative(a in "[01]{0,12}", b in "[01]{0,12}", c in "[01]{0,12}") {
            let (a, b, c) = (bs(&a), bs(&b), bs(&c));
            let left = a.concat(&b).concat(&c);
            prop_assert_eq!(left.len(), a.len() + b.len() + c.len());
            prop_assert_eq!(left, a.concat(&b.concat(&c)));
        }
    }
}
