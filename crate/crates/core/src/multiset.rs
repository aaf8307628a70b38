//! Canonical multisets of bit strings and their self-delimiting encoding.
//!
//! Encoding layout: `gamma(n)` followed by `γ(x)` for each member in
//! canonical order, where `γ(x) = gamma(|x| + 1) · x`.

use std::fmt;
use std::io::BufRead;

use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::gamma::{write_gamma, write_gamma_string, BitReader};

/// A multiset of at least two bit strings kept in canonical
/// (length-increasing, then lexicographic) order. Repeats are preserved.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StringMultiset {
    members: Vec<BitString>,
}

/// Sort `items` into canonical order.
pub fn canonicalize(items: impl IntoIterator<Item = BitString>) -> Result<StringMultiset> {
    let mut members: Vec<BitString> = items.into_iter().collect();
    if members.len() < 2 {
        return Err(Error::Cardinality(members.len()));
    }
    members.sort();
    Ok(StringMultiset { members })
}

impl StringMultiset {
    pub fn members(&self) -> &[BitString] {
        &self.members
    }

    pub fn cardinality(&self) -> usize {
        self.members.len()
    }

    /// Members with repeats collapsed, still in canonical order.
    pub fn distinct(&self) -> impl Iterator<Item = &BitString> {
        let mut prev: Option<&BitString> = None;
        self.members.iter().filter(move |m| {
            let fresh = prev != Some(*m);
            prev = Some(*m);
            fresh
        })
    }

    pub fn contains(&self, x: &BitString) -> bool {
        self.members.binary_search(x).is_ok()
    }

    pub fn encode(&self) -> BitString {
        encode_multiset(self)
    }

    /// All multisets of cardinality `n` over strings of length ≤ `max_len`,
    /// in lexicographic order of their canonical member sequences.
    pub fn all_over(max_len: usize, n: usize) -> Vec<StringMultiset> {
        let alphabet: Vec<BitString> = BitString::all_up_to(max_len).collect();
        let mut out = Vec::new();
        let mut idx = vec![0usize; n];
        if n < 2 || alphabet.is_empty() {
            return out;
        }
        loop {
            out.push(StringMultiset {
                members: idx.iter().map(|&i| alphabet[i].clone()).collect(),
            });
            // next non-decreasing index tuple
            let mut pos = n;
            while pos > 0 && idx[pos - 1] == alphabet.len() - 1 {
                pos -= 1;
            }
            if pos == 0 {
                return out;
            }
            idx[pos - 1] += 1;
            let v = idx[pos - 1];
            idx[pos..].iter_mut().for_each(|i| *i = v);
        }
    }
}

impl fmt::Debug for StringMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.members).finish()
    }
}

impl fmt::Display for StringMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if m.is_empty() {
                f.write_str("ε")?;
            } else {
                write!(f, "{m}")?;
            }
        }
        f.write_str("}")
    }
}

pub fn encode_multiset(x: &StringMultiset) -> BitString {
    let mut out = BitString::new();
    write_gamma(&mut out, x.cardinality() as u64);
    for m in &x.members {
        write_gamma_string(&mut out, m);
    }
    out
}

/// Inverse of [`encode_multiset`]. Rejects truncated input, trailing bits,
/// cardinalities below two and members out of canonical order.
pub fn decode_multiset(b: &BitString) -> Result<StringMultiset> {
    let mut reader = BitReader::new(b);
    let n = reader.read_gamma()?;
    if n < 2 {
        return Err(Error::MalformedEncoding(format!("cardinality {n} below 2")));
    }
    // Each member takes at least one bit; bail before allocating absurd counts.
    if n as usize > reader.remaining() {
        return Err(Error::MalformedEncoding(format!(
            "cardinality {n} exceeds remaining {} bits",
            reader.remaining()
        )));
    }
    let mut members = Vec::with_capacity(n as usize);
    for _ in 0..n {
        members.push(reader.read_gamma_string()?);
    }
    if !reader.is_at_end() {
        return Err(Error::MalformedEncoding(format!(
            "{} trailing bits",
            reader.remaining()
        )));
    }
    if members.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::MalformedEncoding(
            "members not in canonical order".into(),
        ));
    }
    Ok(StringMultiset { members })
}

#[derive(Serialize, Deserialize)]
struct JsonMember {
    bits: BitString,
}

impl Serialize for StringMultiset {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.members.iter().map(|m| JsonMember { bits: m.clone() }))
    }
}

impl<'de> Deserialize<'de> for StringMultiset {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<JsonMember>::deserialize(deserializer)?;
        canonicalize(raw.into_iter().map(|m| m.bits)).map_err(serde::de::Error::custom)
    }
}

/// Read the line-oriented text form: one member per line, terminated by a
/// blank line or end of input. The empty string cannot be written in this
/// form; use JSON for multisets containing it.
pub fn read_text<R: BufRead>(reader: R) -> std::io::Result<Result<StringMultiset>> {
    let mut items = Vec::new();
    for line in reader.lines() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            break;
        }
        match line.parse() {
            Ok(b) => items.push(b),
            Err(e) => return Ok(Err(e)),
        }
    }
    Ok(canonicalize(items))
}

pub fn write_text(x: &StringMultiset) -> String {
    let mut s = String::new();
    for m in x.members() {
        s.push_str(&m.to_string());
        s.push('\n');
    }
    s.push('\n');
    s
}
