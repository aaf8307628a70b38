//! Bit layouts for labels `q = (p, m)` with `p` a halting program of length
//! at most `k` and `1 ≤ m ≤ n`.
//!
//! Both layouts have length exactly `k + ⌊log n⌋ + 1`, so `k` is recovered
//! from the length once `n` is known.
//!
//! * [`Format::Paper`]: `p · 0^(k−|p|+⌊log n⌋−⌊log m⌋) · reverse(bin(m))`.
//!   Not injective in `m`: `reverse(bin(2m)) = 0 · reverse(bin(m))`, so `m`
//!   and `2m` (when both ≤ n) produce the same bits. The decoder picks the
//!   largest consistent `m` and flags the ambiguity.
//! * [`Format::Fixed`]: `p · 0^(k−|p|) · m` with `m` big-endian in
//!   `⌊log n⌋ + 1` bits. Bijective given `n` and the program set.

use std::collections::{BTreeSet, HashSet};
use std::str::FromStr;

use serde::Serialize;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::machine::Program;

/// Largest `n` the codecs accept.
pub const MAX_N: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Paper,
    Fixed,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(Format::Paper),
            "fixed" => Ok(Format::Fixed),
            other => Err(Error::Domain(format!(
                "unknown codec {other:?} (expected paper|fixed)"
            ))),
        }
    }
}

/// A set of codewords that is prefix-free, used to split `p` off the front.
pub trait PrefixCode {
    fn is_codeword(&self, bits: &BitString) -> bool;
}

impl PrefixCode for BTreeSet<Program> {
    fn is_codeword(&self, bits: &BitString) -> bool {
        self.contains(&Program::new(bits.clone()))
    }
}

impl PrefixCode for BTreeSet<BitString> {
    fn is_codeword(&self, bits: &BitString) -> bool {
        self.contains(bits)
    }
}

impl PrefixCode for HashSet<BitString> {
    fn is_codeword(&self, bits: &BitString) -> bool {
        self.contains(bits)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Label {
    pub p: Program,
    pub m: usize,
    pub k: usize,
    pub n: usize,
}

impl Label {
    pub fn new(p: Program, m: usize, k: usize, n: usize) -> Result<Self> {
        let q = Self { p, m, k, n };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        check_n(self.n)?;
        if self.m < 1 || self.m > self.n {
            return Err(Error::Domain(format!(
                "m = {} outside 1..={}",
                self.m, self.n
            )));
        }
        if self.p.len() > self.k {
            return Err(Error::Domain(format!(
                "|p| = {} exceeds k = {}",
                self.p.len(),
                self.k
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecodedLabel {
    pub label: Label,
    pub ambiguous: bool,
    /// Every `m` consistent with the bits, ascending.
    pub candidates: Vec<usize>,
}

fn check_n(n: usize) -> Result<()> {
    if !(2..=MAX_N).contains(&n) {
        return Err(Error::Domain(format!("n = {n} outside 2..={MAX_N}")));
    }
    Ok(())
}

pub fn floor_log2(v: usize) -> usize {
    assert!(v >= 1);
    (usize::BITS - 1 - v.leading_zeros()) as usize
}

/// `k + ⌊log n⌋ + 1`.
pub fn label_length(k: usize, n: usize) -> usize {
    k + floor_log2(n.max(1)) + 1
}

fn bin(m: usize) -> BitString {
    BitString::from_uint(m as u64, floor_log2(m) + 1)
}

pub fn encode_label(q: &Label) -> Result<BitString> {
    q.validate()?;
    let pad = q.k - q.p.len() + floor_log2(q.n) - floor_log2(q.m);
    let mut bits = q.p.code.clone();
    bits.extend_from(&BitString::zeros(pad));
    bits.extend_from(&bin(q.m).reversed());
    debug_assert_eq!(bits.len(), label_length(q.k, q.n));
    Ok(bits)
}

pub fn encode_label_fixed(q: &Label) -> Result<BitString> {
    q.validate()?;
    let mut bits = q.p.code.clone();
    bits.extend_from(&BitString::zeros(q.k - q.p.len()));
    bits.extend_from(&BitString::from_uint(q.m as u64, floor_log2(q.n) + 1));
    Ok(bits)
}

pub fn encode(q: &Label, format: Format) -> Result<BitString> {
    match format {
        Format::Paper => encode_label(q),
        Format::Fixed => encode_label_fixed(q),
    }
}

/// Split `bits` into `(k, p)`: `k` from the length, `p` the unique codeword
/// prefix of at most `k` bits.
fn split_program(
    bits: &BitString,
    n: usize,
    programs: &impl PrefixCode,
) -> Result<(usize, Program)> {
    check_n(n)?;
    let width = floor_log2(n) + 1;
    let k = bits.len().checked_sub(width).ok_or_else(|| {
        Error::MalformedEncoding(format!(
            "{} bits is shorter than the index field ({width})",
            bits.len()
        ))
    })?;
    let p = (0..=k)
        .map(|len| bits.slice(0, len))
        .find(|prefix| programs.is_codeword(prefix))
        .ok_or_else(|| Error::MalformedEncoding("no program prefix".into()))?;
    Ok((k, Program::new(p)))
}

/// Every `m ≤ n` with `rest = 0^pad · reverse(bin(m))` for some `pad ≥ 0`.
pub fn paper_index_candidates(rest: &BitString, n: usize) -> Vec<usize> {
    let bits = rest.bits();
    let zeros = bits.iter().take_while(|b| !**b).count();
    let mut out: Vec<usize> = (0..=zeros.min(bits.len()))
        .filter_map(|split| {
            let tail = &bits[split..];
            if tail.last() != Some(&true) || tail.len() > usize::BITS as usize - 1 {
                return None;
            }
            let m = tail
                .iter()
                .rev()
                .fold(0usize, |acc, &b| (acc << 1) | b as usize);
            (m <= n).then_some(m)
        })
        .collect();
    out.sort_unstable();
    out
}

pub fn decode_label(
    bits: &BitString,
    n: usize,
    programs: &impl PrefixCode,
) -> Result<DecodedLabel> {
    let (k, p) = split_program(bits, n, programs)?;
    let rest = bits.slice(p.len(), bits.len());
    let candidates = paper_index_candidates(&rest, n);
    let &m = candidates
        .last()
        .ok_or_else(|| Error::MalformedEncoding(format!("index field {rest} fits no m ≤ {n}")))?;
    Ok(DecodedLabel {
        label: Label { p, m, k, n },
        ambiguous: candidates.len() > 1,
        candidates,
    })
}

pub fn decode_label_fixed(bits: &BitString, n: usize, programs: &impl PrefixCode) -> Result<Label> {
    let (k, p) = split_program(bits, n, programs)?;
    if !bits.slice(p.len(), k).is_all_zero() {
        return Err(Error::MalformedEncoding("non-zero padding".into()));
    }
    let m = bits.slice(k, bits.len()).to_uint().unwrap_or(0) as usize;
    if m < 1 || m > n {
        return Err(Error::MalformedEncoding(format!(
            "index {m} outside 1..={n}"
        )));
    }
    Ok(Label { p, m, k, n })
}

pub fn decode(
    bits: &BitString,
    n: usize,
    programs: &impl PrefixCode,
    format: Format,
) -> Result<DecodedLabel> {
    match format {
        Format::Paper => decode_label(bits, n, programs),
        Format::Fixed => decode_label_fixed(bits, n, programs).map(|label| DecodedLabel {
            candidates: vec![label.m],
            label,
            ambiguous: false,
        }),
    }
}

/// `Q(k) = P(k) × {1..n}` for the given halting programs (all of length ≤ k).
pub fn label_space<'a>(
    programs: impl IntoIterator<Item = &'a Program> + 'a,
    k: usize,
    n: usize,
) -> impl Iterator<Item = Label> + 'a {
    programs.into_iter().flat_map(move |p| {
        (1..=n).map(move |m| Label {
            p: p.clone(),
            m,
            k,
            n,
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::bs;

    fn prog(s: &str) -> Program {
        Program::new(bs(s))
    }

    fn set(codes: &[&str]) -> BTreeSet<BitString> {
        codes.iter().map(|c| bs(c)).collect()
    }

    #[test]
    fn paper_examples() {
        let q = Label::new(prog("101"), 3, 5, 4).unwrap();
        assert_eq!(encode_label(&q).unwrap(), bs("10100011"));
        let q = Label::new(prog("00"), 1, 3, 2).unwrap();
        assert_eq!(encode_label(&q).unwrap(), bs("00001"));
        let q = Label::new(prog("00"), 4, 4, 4).unwrap();
        assert_eq!(encode_label(&q).unwrap(), bs("0000001"));
    }

    #[test]
    fn fixed_examples() {
        let q = Label::new(prog("101"), 3, 5, 4).unwrap();
        assert_eq!(encode_label_fixed(&q).unwrap(), bs("10100011"));
        let q = Label::new(prog("00"), 4, 4, 4).unwrap();
        assert_eq!(encode_label_fixed(&q).unwrap(), bs("0000100"));
    }

    #[test]
    fn lengths() {
        assert_eq!(label_length(5, 4), 8);
        assert_eq!(label_length(0, 2), 2);
        assert_eq!(label_length(3, 7), 6);
    }

    #[test]
    fn domain_errors() {
        assert!(Label::new(prog("101"), 5, 5, 4).is_err());
        assert!(Label::new(prog("101"), 0, 5, 4).is_err());
        assert!(Label::new(prog("101"), 1, 2, 4).is_err());
        assert!(Label::new(prog("1"), 1, 2, 1).is_err());
        assert!(Label::new(prog("1"), 1, 2, MAX_N + 1).is_err());
        let bad = Label {
            p: prog("101"),
            m: 9,
            k: 5,
            n: 4,
        };
        assert!(encode_label(&bad).is_err());
        assert!(encode_label_fixed(&bad).is_err());
    }

    #[test]
    fn decode_worked_example() {
        let d = decode_label(&bs("10100011"), 4, &set(&["101", "00", "011"])).unwrap();
        assert_eq!(d.label, Label::new(prog("101"), 3, 5, 4).unwrap());
        assert!(!d.ambiguous);
    }

    #[test]
    fn ambiguous_remainder() {
        assert_eq!(paper_index_candidates(&bs("0011"), 6), vec![3, 6]);
        assert_eq!(paper_index_candidates(&bs("0011"), 5), vec![3]);
        assert_eq!(paper_index_candidates(&bs("0011"), 12), vec![3, 6, 12]);
        let d = decode_label(&bs("10011"), 6, &set(&["1"]));
        let d = d.unwrap();
        assert_eq!(d.label.m, 6);
        assert!(d.ambiguous);
        assert_eq!(d.candidates, vec![3, 6]);
    }

    #[test]
    fn malformed_inputs() {
        let programs = set(&["101", "00"]);
        assert!(decode_label(&bs("1"), 4, &programs).is_err());
        assert!(decode_label(&bs("11100011"), 4, &programs).is_err());
        assert!(decode_label(&bs("10100000"), 4, &programs).is_err());
        assert!(decode_label_fixed(&bs("10110011"), 4, &programs).is_err());
        assert!(decode_label_fixed(&bs("10100000"), 4, &programs).is_err());
        assert!(decode_label_fixed(&bs("10100101"), 4, &programs).is_err());
    }

    #[test]
    fn paper_collisions_are_exactly_doublings() {
        let p = prog("00");
        for n in 2..=16 {
            for m1 in 1..=n {
                for m2 in 1..=n {
                    let a = encode_label(&Label::new(p.clone(), m1, 6, n).unwrap()).unwrap();
                    let b = encode_label(&Label::new(p.clone(), m2, 6, n).unwrap()).unwrap();
                    let (lo, hi) = (m1.min(m2), m1.max(m2));
                    let doubling = hi % lo == 0 && (hi / lo).is_power_of_two();
                    assert_eq!(a == b, doubling, "n={n} m1={m1} m2={m2}");
                }
            }
        }
    }

    #[test]
    fn format_parse() {
        assert_eq!("paper".parse::<Format>().unwrap(), Format::Paper);
        assert_eq!("fixed".parse::<Format>().unwrap(), Format::Fixed);
        assert!("hex".parse::<Format>().is_err());
    }
}
