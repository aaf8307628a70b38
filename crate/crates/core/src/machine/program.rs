//! Program grammar of the toy prefix machine.
//!
//! A program is a single expression, read left to right:
//!
//! ```text
//! 00                      INPUT    the input x
//! 01   lit(s)             LITERAL  s, ignoring the input
//! 100  lit(s)             XOR      x xor (s repeated cyclically to |x|)
//! 101  E1 E2              PAIR     encode_multiset({E1, E2})
//! 110  gamma(n-2) E1..En  BAG      encode_multiset({E1, .., En}), n >= 3
//! 111  lit(s)             SCAN     read x cyclically until s appears; output
//!                                  everything read before the match
//! ```
//!
//! `lit(s)` writes each bit `b` of `s` as `1b` and terminates with `0`, so a
//! literal of length `l` costs `2l + 1` bits. A bit string is a valid program
//! iff it parses as exactly one expression with no bits left over, which
//! makes the valid programs a prefix code.
//!
//! Every length from 2 up has a valid program: `00` covers 2, `LITERAL`
//! covers every odd length from 3 and `XOR` every even length from 4.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::gamma::{write_gamma, BitReader};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Input,
    Literal(BitString),
    Xor(BitString),
    Pair(Box<Expr>, Box<Expr>),
    Bag(Vec<Expr>),
    Scan(BitString),
}

/// A toy-machine program: just its code. Validity is decided by parsing.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Program {
    pub code: BitString,
}

fn write_literal(out: &mut BitString, s: &BitString) {
    for &b in s.bits() {
        out.push(true);
        out.push(b);
    }
    out.push(false);
}

fn read_literal(r: &mut BitReader<'_>) -> Result<BitString> {
    let mut s = BitString::new();
    while r.read_bit()? {
        s.push(r.read_bit()?);
    }
    Ok(s)
}

impl Expr {
    pub fn encode_into(&self, out: &mut BitString) {
        let op = |out: &mut BitString, bits: &[bool]| bits.iter().for_each(|&b| out.push(b));
        match self {
            Expr::Input => op(out, &[false, false]),
            Expr::Literal(s) => {
                op(out, &[false, true]);
                write_literal(out, s);
            }
            Expr::Xor(s) => {
                op(out, &[true, false, false]);
                write_literal(out, s);
            }
            Expr::Pair(a, b) => {
                op(out, &[true, false, true]);
                a.encode_into(out);
                b.encode_into(out);
            }
            Expr::Bag(items) => {
                assert!(items.len() >= 3, "BAG needs at least three operands");
                op(out, &[true, true, false]);
                write_gamma(out, items.len() as u64 - 2);
                items.iter().for_each(|e| e.encode_into(out));
            }
            Expr::Scan(s) => {
                op(out, &[true, true, true]);
                write_literal(out, s);
            }
        }
    }

    pub fn to_program(&self) -> Program {
        let mut code = BitString::new();
        self.encode_into(&mut code);
        Program { code }
    }

    fn parse(r: &mut BitReader<'_>) -> Result<Expr> {
        if !r.read_bit()? {
            return Ok(if r.read_bit()? {
                Expr::Literal(read_literal(r)?)
            } else {
                Expr::Input
            });
        }
        match (r.read_bit()?, r.read_bit()?) {
            (false, false) => Ok(Expr::Xor(read_literal(r)?)),
            (false, true) => {
                let a = Expr::parse(r)?;
                let b = Expr::parse(r)?;
                Ok(Expr::Pair(Box::new(a), Box::new(b)))
            }
            (true, false) => {
                let n = r.read_gamma()? + 2;
                // every operand takes at least two bits
                if n as usize > r.remaining() / 2 {
                    return Err(Error::MalformedEncoding(format!(
                        "BAG of {n} operands cannot fit"
                    )));
                }
                (0..n)
                    .map(|_| Expr::parse(r))
                    .collect::<Result<Vec<_>>>()
                    .map(Expr::Bag)
            }
            (true, true) => Ok(Expr::Scan(read_literal(r)?)),
        }
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Input => f.write_str("INPUT"),
            Expr::Literal(s) => write!(f, "LIT({s})"),
            Expr::Xor(s) => write!(f, "XOR({s})"),
            Expr::Pair(a, b) => write!(f, "PAIR({a:?}, {b:?})"),
            Expr::Bag(items) => {
                f.write_str("BAG(")?;
                for (i, e) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{e:?}")?;
                }
                f.write_str(")")
            }
            Expr::Scan(s) => write!(f, "SCAN({s})"),
        }
    }
}

impl Program {
    pub fn new(code: BitString) -> Self {
        Self { code }
    }

    pub fn len(&self) -> usize {
        self.code.len()
    }

    pub fn is_empty(&self) -> bool {
        self.code.is_empty()
    }

    /// The designated identity program `00`.
    pub fn identity() -> Self {
        Expr::Input.to_program()
    }

    /// The designated print-literal program for `s`.
    pub fn print_literal(s: &BitString) -> Self {
        Expr::Literal(s.clone()).to_program()
    }

    /// Parse the code as exactly one expression.
    pub fn parse(&self) -> Result<Expr> {
        let mut r = BitReader::new(&self.code);
        let expr = Expr::parse(&mut r)?;
        if !r.is_at_end() {
            return Err(Error::MalformedEncoding(format!(
                "{} bits after a complete program",
                r.remaining()
            )));
        }
        Ok(expr)
    }

    pub fn is_valid(&self) -> bool {
        self.parse().is_ok()
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code)
    }
}

impl fmt::Debug for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Program({})", self.code)
    }
}
