//! Elias gamma code for positive integers and the derived self-delimiting
//! string code `γ(s) = gamma(|s| + 1) · s`.

use crate::bits::BitString;
use crate::error::{Error, Result};

/// Append the Elias gamma code of `value` (must be ≥ 1).
pub fn write_gamma(out: &mut BitString, value: u64) {
    assert!(value >= 1, "gamma code is defined for positive integers");
    let width = 64 - value.leading_zeros() as usize;
    for _ in 1..width {
        out.push(false);
    }
    out.extend_from(&BitString::from_uint(value, width));
}

pub fn gamma(value: u64) -> BitString {
    let mut out = BitString::new();
    write_gamma(&mut out, value);
    out
}

pub fn gamma_len(value: u64) -> usize {
    2 * (64 - value.leading_zeros() as usize) - 1
}

/// Append `γ(s)`.
pub fn write_gamma_string(out: &mut BitString, s: &BitString) {
    write_gamma(out, s.len() as u64 + 1);
    out.extend_from(s);
}

/// A read cursor over a bit string.
#[derive(Debug, Clone)]
pub struct BitReader<'a> {
    bits: &'a [bool],
    pos: usize,
}

impl<'a> BitReader<'a> {
    pub fn new(bits: &'a BitString) -> Self {
        Self {
            bits: bits.bits(),
            pos: 0,
        }
    }

    pub fn position(&self) -> usize {
        self.pos
    }

    pub fn remaining(&self) -> usize {
        self.bits.len() - self.pos
    }

    pub fn is_at_end(&self) -> bool {
        self.pos == self.bits.len()
    }

    pub fn read_bit(&mut self) -> Result<bool> {
        let bit = *self
            .bits
            .get(self.pos)
            .ok_or_else(|| Error::MalformedEncoding(format!("truncated at bit {}", self.pos)))?;
        self.pos += 1;
        Ok(bit)
    }

    pub fn read_bits(&mut self, len: usize) -> Result<BitString> {
        if self.remaining() < len {
            return Err(Error::MalformedEncoding(format!(
                "needed {len} bits at position {}, only {} remain",
                self.pos,
                self.remaining()
            )));
        }
        let out = BitString::from_bits(self.bits[self.pos..self.pos + len].to_vec());
        self.pos += len;
        Ok(out)
    }

    pub fn read_gamma(&mut self) -> Result<u64> {
        let mut zeros = 0usize;
        while !self.read_bit()? {
            zeros += 1;
            if zeros >= 64 {
                return Err(Error::MalformedEncoding("gamma prefix too long".into()));
            }
        }
        let mut value = 1u64;
        for _ in 0..zeros {
            value = (value << 1) | self.read_bit()? as u64;
        }
        Ok(value)
    }

    pub fn read_gamma_string(&mut self) -> Result<BitString> {
        let len = self.read_gamma()? - 1;
        let len = usize::try_from(len)
            .map_err(|_| Error::MalformedEncoding("string length overflow".into()))?;
        self.read_bits(len)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::bs;

    #[test]
    fn small_codes() {
        assert_eq!(gamma(1), bs("1"));
        assert_eq!(gamma(2), bs("010"));
        assert_eq!(gamma(3), bs("011"));
        assert_eq!(gamma(4), bs("00100"));
        for v in 1..200 {
            assert_eq!(gamma(v).len(), gamma_len(v));
        }
    }

    #[test]
    fn gamma_round_trip_and_prefix_free() {
        let codes: Vec<_> = (1..300).map(gamma).collect();
        for (i, c) in codes.iter().enumerate() {
            assert_eq!(BitReader::new(c).read_gamma().unwrap(), i as u64 + 1);
            for (j, d) in codes.iter().enumerate() {
                if i != j {
                    assert!(!c.is_prefix_of(d), "{c} prefixes {d}");
                }
            }
        }
    }

    #[test]
    fn truncated_gamma_is_malformed() {
        assert!(BitReader::new(&bs("001")).read_gamma().is_err());
        assert!(BitReader::new(&bs("")).read_gamma().is_err());
    }
}
